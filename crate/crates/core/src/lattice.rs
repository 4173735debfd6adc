//! Enumeration of the integer points that contribute below a q-degree cutoff.
//!
//! Two shapes occur: full ellipsoids `(x-c).A.(x-c) <= r` for lattice sums,
//! and the non-negative orthant cut out by a quadratic exponent for the
//! fermionic sums.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{floor, rat, Rat};

/// All `x` in `Z^n` with `(x - center).A.(x - center) <= bound`.
///
/// Coordinates are fixed from the last to the first using `A = L D L^T`;
/// each coordinate range is a float-padded superset, filtered exactly.
pub fn ellipsoid_points(a: &RationalMatrix, center: &[Rat], bound: Rat) -> Result<Vec<Vec<i64>>> {
    let n = a.dim();
    if center.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: center.len() });
    }
    let (l, d) = a.ldl().ok_or(Error::NotPositiveDefinite)?;
    if d.iter().any(|x| !x.is_positive()) {
        return Err(Error::NotPositiveDefinite);
    }
    let mut out = Vec::new();
    if bound.is_negative() {
        return Ok(out);
    }
    let mut x = vec![0i64; n];
    ellipsoid_rec(&l, &d, center, n, bound, &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn ellipsoid_rec(
    l: &[Vec<Rat>],
    d: &[Rat],
    c: &[Rat],
    level: usize,
    remaining: Rat,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut ctr = c[i];
    for j in i + 1..n {
        ctr -= l[j][i] * (rat(x[j]) - c[j]);
    }
    let s = (to_f64(&(remaining / d[i]))).max(0.0).sqrt();
    let cf = to_f64(&ctr);
    let lo = (cf - s).floor() as i64 - 1;
    let hi = (cf + s).ceil() as i64 + 1;
    for xi in lo..=hi {
        let y = rat(xi) - ctr;
        let used = d[i] * y * y;
        if used <= remaining {
            x[i] = xi;
            ellipsoid_rec(l, d, c, i, remaining - used, x, out);
        }
    }
    x[i] = 0;
}

fn to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `f(m) = m.A.m + lin.m + constant` restricted to `m >= 0`.
#[derive(Clone, Debug)]
pub struct QuadraticExponent {
    pub a: RationalMatrix,
    pub lin: Vec<Rat>,
    pub constant: Rat,
}

impl QuadraticExponent {
    pub fn eval(&self, m: &[i64]) -> Rat {
        let mr: Vec<Rat> = m.iter().copied().map(rat).collect();
        self.a.quad(&mr) + mr.iter().zip(&self.lin).map(|(x, y)| x * y).sum::<Rat>() + self.constant
    }

    /// All `m >= 0` with `f(m) <= cutoff` and `m_i <= caps[i]` where a cap
    /// is given. Fails when some direction is not bounded.
    pub fn nonneg_points(&self, cutoff: Rat, caps: &[Option<i64>]) -> Result<Vec<Vec<i64>>> {
        let n = self.a.dim();
        let caps: Vec<Option<i64>> = if caps.is_empty() { vec![None; n] } else { caps.to_vec() };
        if caps.iter().any(|c| matches!(c, Some(c) if *c < 0)) {
            return Ok(Vec::new());
        }
        if caps.iter().all(Option::is_some) {
            let hi: Vec<i64> = caps.iter().map(|c| c.unwrap()).collect();
            return Ok(self.box_points(&hi, cutoff));
        }
        if let Some(hi) = self.orthant_box(cutoff, &caps)? {
            return Ok(self.box_points(&hi, cutoff));
        }
        if self.a.is_positive_definite() {
            // f(m) = (m + h).A.(m + h) - h.A.h + constant, h = A^{-1} lin / 2
            let inv = self.a.inverse()?;
            let h: Vec<Rat> = inv.mul_vec(&self.lin).into_iter().map(|x| x / rat(2)).collect();
            let center: Vec<Rat> = h.iter().map(|x| -x).collect();
            let bound = cutoff - self.constant + self.a.quad(&h);
            let pts = ellipsoid_points(&self.a, &center, bound)?;
            return Ok(pts
                .into_iter()
                .filter(|m| m.iter().zip(&caps).all(|(&x, c)| x >= 0 && c.map_or(true, |c| x <= c)))
                .filter(|m| self.eval(m) <= cutoff)
                .collect());
        }
        Err(Error::NonTerminating(format!(
            "exponent with quadratic part {} and linear part {:?} is unbounded below the cutoff",
            self.a,
            self.lin.iter().map(crate::rational::format_rat).collect::<Vec<_>>()
        )))
    }

    /// Per-coordinate bounds valid when the off-diagonal part is
    /// non-negative: then `f(m) >= sum_i (A_ii m_i^2 + lin_i m_i)`.
    fn orthant_box(&self, cutoff: Rat, caps: &[Option<i64>]) -> Result<Option<Vec<i64>>> {
        let n = self.a.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.a.get(i, j).is_negative() {
                    return Ok(None);
                }
            }
        }
        let g = |i: usize, m: i64| self.a.get(i, i) * rat(m * m) + self.lin[i] * rat(m);
        let mut mins = Vec::with_capacity(n);
        for i in 0..n {
            let aii = self.a.get(i, i);
            let min = if let Some(cap) = caps[i] {
                (0..=cap).map(|m| g(i, m)).min().unwrap()
            } else if aii.is_positive() {
                let v = floor(&(-self.lin[i] / (rat(2) * aii))).max(0);
                g(i, v).min(g(i, v + 1))
            } else if aii.is_zero() && !self.lin[i].is_negative() {
                Rat::zero()
            } else {
                return Ok(None);
            };
            mins.push(min);
        }
        let total_min: Rat = mins.iter().sum();
        let mut hi = Vec::with_capacity(n);
        for i in 0..n {
            let room = cutoff - self.constant - (total_min - mins[i]);
            if let Some(cap) = caps[i] {
                hi.push(cap);
                continue;
            }
            let aii = self.a.get(i, i);
            if aii.is_zero() && self.lin[i].is_zero() {
                return Ok(None);
            }
            let vertex = if aii.is_positive() {
                floor(&(-self.lin[i] / (rat(2) * aii))).max(0)
            } else {
                0
            };
            // g is decreasing up to `vertex` and increasing after it.
            let mut m = vertex + 1;
            while g(i, m + 1) <= room {
                m += 1;
            }
            if g(i, m) <= room {
                hi.push(m);
            } else if g(i, vertex) <= room {
                hi.push(vertex);
            } else {
                hi.push(-1);
            }
        }
        Ok(Some(hi))
    }

    fn box_points(&self, hi: &[i64], cutoff: Rat) -> Vec<Vec<i64>> {
        let n = hi.len();
        let mut out = Vec::new();
        if hi.iter().any(|&h| h < 0) {
            return out;
        }
        let mut m = vec![0i64; n];
        loop {
            if self.eval(&m) <= cutoff {
                out.push(m.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if m[i] < hi[i] {
                    m[i] += 1;
                    for x in m.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
            }
            if n == 0 {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn brute_ellipsoid(a: &RationalMatrix, c: &[Rat], bound: Rat, r: i64) -> Vec<Vec<i64>> {
        let n = a.dim();
        let mut out = Vec::new();
        let mut x = vec![-r; n];
        loop {
            let y: Vec<Rat> = x.iter().zip(c).map(|(&xi, ci)| rat(xi) - ci).collect();
            if a.quad(&y) <= bound {
                out.push(x.clone());
            }
            let mut i = 0;
            while i < n && x[i] == r {
                x[i] = -r;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn ellipsoid_matches_brute_force() {
        let kinv = RationalMatrix::new(vec![
            vec![ratio(2, 3), ratio(-1, 3)],
            vec![ratio(-1, 3), ratio(2, 3)],
        ])
        .unwrap();
        for bound in [rat(0), ratio(2, 3), rat(4), rat(9)] {
            let c = vec![ratio(1, 2), ratio(-1, 3)];
            assert_eq!(
                ellipsoid_points(&kinv, &c, bound).unwrap(),
                brute_ellipsoid(&kinv, &c, bound, 12)
            );
        }
    }

    #[test]
    fn ellipsoid_rejects_indefinite() {
        let a = RationalMatrix::from_integers(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(ellipsoid_points(&a, &[rat(0), rat(0)], rat(3)), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn orthant_points_are_complete() {
        let form = QuadraticExponent {
            a: RationalMatrix::from_integers(&[vec![1, 1], vec![1, 2]]).unwrap(),
            lin: vec![rat(1), rat(-2)],
            constant: rat(0),
        };
        let pts = form.nonneg_points(rat(9), &[]).unwrap();
        let mut brute = Vec::new();
        for a in 0..20 {
            for b in 0..20 {
                if form.eval(&[a, b]) <= rat(9) {
                    brute.push(vec![a, b]);
                }
            }
        }
        assert_eq!(pts, brute);
    }

    #[test]
    fn unbounded_direction_is_an_error() {
        let form = QuadraticExponent {
            a: RationalMatrix::from_integers(&[vec![0]]).unwrap(),
            lin: vec![rat(0)],
            constant: rat(0),
        };
        assert!(matches!(form.nonneg_points(rat(3), &[]), Err(Error::NonTerminating(_))));
        assert_eq!(form.nonneg_points(rat(3), &[Some(2)]).unwrap().len(), 3);
    }
}
