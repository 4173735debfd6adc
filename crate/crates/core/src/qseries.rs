//! q-Pochhammer symbols and Gaussian binomials as truncated series.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_integer, floor, rat, Rat};
use crate::series::{Series, ZMonomial};

/// Ambient data every series constructor needs: number of z-variables and
/// the inclusive q-degree cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub dim: usize,
    pub cutoff: Rat,
}

impl Ctx {
    pub fn new(dim: usize, cutoff: Rat) -> Self {
        Ctx { dim, cutoff }
    }

    pub fn zero(&self) -> Series {
        Series::zero(self.dim, self.cutoff)
    }

    pub fn one(&self) -> Series {
        Series::one(self.dim, self.cutoff)
    }

    pub fn monomial(&self, coef: i64, q: Rat, z: ZMonomial) -> Series {
        Series::monomial(self.dim, self.cutoff, coef, q, z)
    }

    pub fn with_cutoff(&self, cutoff: Rat) -> Ctx {
        Ctx { dim: self.dim, cutoff }
    }
}

/// A box bound `M`: a non-negative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u64> {
        match self {
            Bound::Finite(m) => Some(m),
            Bound::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Bound::Infinite
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(m) => write!(f, "{m}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "∞" => Ok(Bound::Infinite),
            _ => s
                .parse::<u64>()
                .map(Bound::Finite)
                .map_err(|_| Error::Parse(format!("invalid bound `{s}` (expected a non-negative integer or `inf`)"))),
        }
    }
}

/// `(z q^shift; q)_m = prod_{k=1}^{m} (1 - z q^{shift+k-1})`.
pub fn pochhammer(ctx: Ctx, z: &ZMonomial, shift: Rat, m: u64) -> Series {
    let one = ctx.one();
    let mut acc = ctx.one();
    for k in 0..m {
        let factor = &one - &ctx.monomial(1, shift + rat(k as i64), z.clone());
        acc = &acc * &factor;
    }
    acc
}

/// `(z q^shift; q)_inf`, keeping only the factors whose non-constant term
/// falls at or below the cutoff.
pub fn pochhammer_inf(ctx: Ctx, z: &ZMonomial, shift: Rat) -> Result<Series> {
    if shift.is_negative() {
        return Err(Error::InvalidArgument(
            "infinite product needs a non-negative starting q-shift".into(),
        ));
    }
    let count = if shift > ctx.cutoff { 0 } else { floor(&(ctx.cutoff - shift)) + 1 };
    Ok(pochhammer(ctx, z, shift, count as u64))
}

/// Coefficients of the Gaussian polynomial `[top; bottom]` for integers
/// `0 <= bottom <= top`.
pub fn gaussian_coefficients(top: u64, bottom: u64) -> Vec<BigInt> {
    assert!(bottom <= top);
    let b = bottom.min(top - bottom) as usize;
    let t = top as usize;
    let mut c: Vec<BigInt> = vec![BigInt::from(1)];
    // prod_{k=1}^{b} (1 - q^{t-b+k}) / (1 - q^k)
    for k in 1..=b {
        let e = t - b + k;
        let mut next = vec![BigInt::zero(); c.len() + e];
        for (i, v) in c.iter().enumerate() {
            next[i] += v;
            next[i + e] -= v;
        }
        // exact division by (1 - q^k)
        for i in k..next.len() {
            let prev = next[i - k].clone();
            next[i] += prev;
        }
        while next.last().is_some_and(|x| x.is_zero()) {
            next.pop();
        }
        c = next;
    }
    c
}

/// Gaussian binomial `[top; bottom]`, extended by zero unless both
/// arguments are integers with `0 <= bottom <= top`.
pub fn qbinomial(ctx: Ctx, top: Rat, bottom: Rat) -> Series {
    let mut s = ctx.zero();
    let (Some(t), Some(b)) = (as_integer(&top), as_integer(&bottom)) else {
        return s;
    };
    if b < 0 || b > t {
        return s;
    }
    let z = ZMonomial::one(ctx.dim);
    for (k, c) in gaussian_coefficients(t as u64, b as u64).into_iter().enumerate() {
        s.add_term(rat(k as i64), z.clone(), c);
    }
    s
}

/// `[top; bottom]` continued to every integer `top` through the product
/// `prod_{j=1}^{bottom} (1 - q^{top-bottom+j}) / (1 - q^j)`, as
/// `(lowest exponent, coefficients)`. `None` when it vanishes, which for
/// `top >= 0` is exactly the zero-extension of [`qbinomial`].
pub fn gaussian_continued(top: i64, bottom: i64) -> Option<(i64, Vec<BigInt>)> {
    if bottom < 0 {
        return None;
    }
    if top >= 0 {
        return (bottom <= top).then(|| (0, gaussian_coefficients(top as u64, bottom as u64)));
    }
    // [-x; k] = (-1)^k q^{-kx - k(k-1)/2} [x + k - 1; k]
    let mut c = gaussian_coefficients((bottom - top - 1) as u64, bottom as u64);
    if bottom % 2 == 1 {
        c.iter_mut().for_each(|x| *x = -&*x);
    }
    Some((bottom * top - bottom * (bottom - 1) / 2, c))
}

/// Multiplies `(shift, coefficients)` polynomials in `q`.
pub fn poly_mul(a: &(i64, Vec<BigInt>), b: &(i64, Vec<BigInt>)) -> (i64, Vec<BigInt>) {
    let mut out = vec![BigInt::zero(); a.1.len() + b.1.len() - 1];
    for (i, x) in a.1.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.1.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    (a.0 + b.0, out)
}

/// Lazily extended table of `1 / (z q; q)_n` for one monomial `z` (possibly
/// trivial), with `n = inf` served by the first `n` beyond the cutoff.
#[derive(Clone, Debug)]
pub struct InversePochhammer {
    ctx: Ctx,
    z: ZMonomial,
    table: Vec<Series>,
}

impl InversePochhammer {
    pub fn new(ctx: Ctx, z: ZMonomial) -> Self {
        InversePochhammer { ctx, z, table: vec![ctx.one()] }
    }

    /// `1/(q)_n` tables.
    pub fn q_factorial(ctx: Ctx) -> Self {
        Self::new(ctx, ZMonomial::one(ctx.dim))
    }

    pub fn get(&mut self, n: Bound) -> &Series {
        let limit = floor(&self.ctx.cutoff).max(0) as u64 + 1;
        let n = match n {
            Bound::Finite(n) => n.min(limit),
            Bound::Infinite => limit,
        } as usize;
        while self.table.len() <= n {
            let k = self.table.len() as i64;
            let x = self.ctx.monomial(1, rat(k), self.z.clone());
            let geometric = (&self.ctx.one() - &x).invert().expect("1 - z q^k is a unit");
            let next = &self.table[self.table.len() - 1] * &geometric;
            self.table.push(next);
        }
        &self.table[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx1(c: i64) -> Ctx {
        Ctx::new(1, rat(c))
    }

    fn q_only(c: i64, coeffs: &[i64]) -> Series {
        Series::from_q_coeffs(1, rat(c), coeffs)
    }

    #[test]
    fn finite_pochhammer() {
        let ctx = ctx1(10);
        let q = ZMonomial::one(1);
        assert_eq!(pochhammer(ctx, &q, rat(1), 0), ctx.one());
        assert_eq!(pochhammer(ctx, &q, rat(1), 3), q_only(10, &[1, -1, -1, 0, 1, 1, -1]));
        let z = ZMonomial::var(1, 0);
        let expected = &ctx.one() - &ctx.monomial(1, rat(1), z.clone());
        assert_eq!(pochhammer(ctx, &z, rat(1), 1), expected);
    }

    #[test]
    fn infinite_pochhammer_partitions() {
        let ctx = ctx1(6);
        let inv = pochhammer_inf(ctx, &ZMonomial::one(1), rat(1)).unwrap().invert().unwrap();
        assert_eq!(inv, q_only(6, &[1, 1, 2, 3, 5, 7, 11]));
        assert_eq!(pochhammer_inf(ctx1(0), &ZMonomial::one(1), rat(1)).unwrap(), ctx1(0).one());
    }

    #[test]
    fn two_part_partitions_of_three() {
        let ctx = ctx1(3);
        let z = ZMonomial::var(1, 0);
        let inv = pochhammer_inf(ctx, &z, rat(1)).unwrap().invert().unwrap();
        assert_eq!(inv.coefficient(rat(3), &ZMonomial::new(vec![2])), BigInt::from(1));
    }

    #[test]
    fn gaussian_examples() {
        let ctx = ctx1(20);
        assert_eq!(qbinomial(ctx, rat(2), rat(1)), q_only(20, &[1, 1]));
        assert_eq!(qbinomial(ctx, rat(4), rat(2)), q_only(20, &[1, 1, 2, 1, 1]));
        assert_eq!(qbinomial(ctx, rat(5), rat(0)), ctx.one());
        assert!(qbinomial(ctx, rat(1), rat(2)).is_zero());
        assert!(qbinomial(ctx, rat(-1), rat(0)).is_zero());
        assert!(qbinomial(ctx, crate::rational::ratio(5, 2), rat(1)).is_zero());
    }

    #[test]
    fn gaussian_matches_quotient_of_pochhammers() {
        let ctx = ctx1(40);
        let q = ZMonomial::one(1);
        for t in 0..8u64 {
            for b in 0..=t {
                let num = pochhammer(ctx, &q, rat(1), t);
                let den = &pochhammer(ctx, &q, rat(1), b) * &pochhammer(ctx, &q, rat(1), t - b);
                assert_eq!(qbinomial(ctx, rat(t as i64), rat(b as i64)), &num * &den.invert().unwrap());
            }
        }
    }

    #[test]
    fn inverse_pochhammer_table() {
        let ctx = ctx1(8);
        let z = ZMonomial::var(1, 0);
        let mut t = InversePochhammer::new(ctx, z.clone());
        for n in 0..5u64 {
            let direct = pochhammer(ctx, &z, rat(1), n).invert().unwrap();
            assert_eq!(t.get(Bound::Finite(n)), &direct);
        }
        let inf = pochhammer_inf(ctx, &z, rat(1)).unwrap().invert().unwrap();
        assert_eq!(t.get(Bound::Infinite), &inf);
        assert_eq!(t.get(Bound::Finite(100)), &inf);
    }

    #[test]
    fn bound_parsing() {
        assert_eq!("inf".parse::<Bound>().unwrap(), Bound::Infinite);
        assert_eq!("3".parse::<Bound>().unwrap(), Bound::Finite(3));
        assert!("-1".parse::<Bound>().is_err());
    }

    fn dense(p: Option<(i64, Vec<BigInt>)>) -> std::collections::BTreeMap<i64, BigInt> {
        let mut out = std::collections::BTreeMap::new();
        if let Some((sh, c)) = p {
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    *out.entry(sh + k as i64).or_insert_with(BigInt::zero) += v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    #[test]
    fn continued_binomials() {
        assert_eq!(gaussian_continued(-1, 1), Some((-1, vec![BigInt::from(-1)])));
        assert_eq!(gaussian_continued(-2, 2), Some((-5, vec![1.into(), 1.into(), 1.into()])));
        assert_eq!(gaussian_continued(1, 2), None);
        assert_eq!(gaussian_continued(-3, 0), Some((0, vec![1.into()])));
        for x in -6i64..=6 {
            for k in 1..=5 {
                let lhs = dense(gaussian_continued(x, k));
                let mut rhs = dense(gaussian_continued(x - 1, k));
                for (e, v) in dense(gaussian_continued(x - 1, k - 1)) {
                    *rhs.entry(e + x - k).or_insert_with(BigInt::zero) += v;
                }
                rhs.retain(|_, v| !v.is_zero());
                assert_eq!(lhs, rhs, "[{x}; {k}]");
            }
        }
    }
}
