//! Built-in Durfee systems and their catalog names.

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{rat, ratio, Rat};
use crate::search::{search_system, SearchOptions, SearchOutcome};
use crate::system::{Congruence, DurfeeSystem, Sector};

fn delta(x: i64, y: i64) -> i64 {
    i64::from(x == y)
}

/// The `rs`-sector system for the `1x1` matrix `K = s/r`.
///
/// Sectors are `(0,0)` and `(i,j)` with `1 <= i <= r`, `1 <= j <= s`,
/// `(i,j) != (r,s)`. Each sector sums over `m = i*[j==s] (mod r)`, which
/// for coprime `r, s` is exactly the integrality condition on `n`.
pub fn build_rs_system(r: i64, s: i64) -> Result<DurfeeSystem> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidArgument(format!("r and s must be positive, got ({r},{s})")));
    }
    let mut pairs = vec![(0, 0)];
    for i in 1..=r {
        for j in 1..=s {
            if (i, j) != (r, s) {
                pairs.push((i, j));
            }
        }
    }
    let sectors = pairs
        .into_iter()
        .map(|(i, j)| {
            let djs = delta(j, s);
            let edge = delta(i, 0) + delta(i, r);
            let q = rat(j - 1 + edge) - ratio(s * i * djs, r);
            Sector {
                q: vec![q],
                a: vec![rat(i * (1 - djs))],
                b: vec![rat(1 - edge)],
                restriction: Some(Congruence { modulus: vec![r], residue: vec![(i * djs).rem_euclid(r)] }),
            }
        })
        .collect();
    DurfeeSystem::new(RationalMatrix::scalar(ratio(s, r)), sectors)
}

pub fn build_theorem31() -> DurfeeSystem {
    DurfeeSystem::new(
        RationalMatrix::from_integers(&[vec![1, 1], vec![1, 2]]).unwrap(),
        vec![
            Sector::from_integers(&[0, 0], &[0, 0], &[0, 0]),
            Sector::from_integers(&[0, 1], &[0, 1], &[1, 0]),
        ],
    )
    .unwrap()
}

pub fn build_theorem32() -> DurfeeSystem {
    DurfeeSystem::new(
        RationalMatrix::from_integers(&[vec![2, 1], vec![1, 2]]).unwrap(),
        vec![
            Sector::from_integers(&[0, 0], &[0, 0], &[0, 0]),
            Sector::from_integers(&[0, 1], &[0, 1], &[0, 0]),
            Sector::from_integers(&[1, 1], &[1, 0], &[0, 0]),
        ],
    )
    .unwrap()
}

/// `n x n` matrix with 2 on the diagonal and 1 elsewhere.
pub fn all_ones_plus_identity(n: usize) -> RationalMatrix {
    let rows = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 1 }).collect()).collect::<Vec<_>>();
    RationalMatrix::from_integers(&rows).unwrap()
}

/// Length `n+1` system for [`all_ones_plus_identity`]`(n)`.
pub fn build_theorem33(n: usize) -> Result<DurfeeSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let sectors = (0..=n)
        .map(|k| {
            let q: Vec<i64> = (0..n).map(|i| i64::from(i >= n - k)).collect();
            let a: Vec<i64> = (0..n).map(|i| i64::from(k >= 1 && i == n - k)).collect();
            Sector::from_integers(&q, &a, &vec![0; n])
        })
        .collect();
    DurfeeSystem::new(all_ones_plus_identity(n), sectors)
}

/// System for the deformed identity `1 + M t t^T` in dimension 2.
///
/// With `A = t1^2 M` and `B = t2^2 M` there are `1 + A + B` sectors, all
/// with `b = 0`: the vacuum, `Q = (x, x)` with `a = (1,0)` for
/// `1 <= x <= A`, and one sector `Q = (f(y), y)` with `a = (0,1)` for each
/// `1 <= y <= B`. For `t1 = t2`, `f(y) = y - 1`. Otherwise `f` is found by
/// residual matching at cutoff `2B + 4`, which pins every `f(y)` down.
pub fn build_shift_system(m: i64, t1: i64, t2: i64) -> Result<DurfeeSystem> {
    if m < 0 || t1 < 1 || t2 < 1 {
        return Err(Error::InvalidArgument(format!("need M >= 0 and t >= 1, got M={m}, t=({t1},{t2})")));
    }
    if t1 > t2 {
        return Err(Error::InvalidArgument(format!("need t1 <= t2, got ({t1},{t2})")));
    }
    let k = RationalMatrix::identity(2).shift_deform(m, &[t1, t2])?;
    let (a, b) = (t1 * t1 * m, t2 * t2 * m);
    let mut sectors = vec![Sector::from_integers(&[0, 0], &[0, 0], &[0, 0])];
    for x in 1..=a {
        sectors.push(Sector::from_integers(&[x, x], &[1, 0], &[0, 0]));
    }
    if t1 == t2 {
        for y in 1..=b {
            sectors.push(Sector::from_integers(&[y - 1, y], &[0, 1], &[0, 0]));
        }
        return DurfeeSystem::new(k, sectors);
    }
    let mut opts = SearchOptions::new(b, rat(2 * b + 4), (1 + a + b) as usize);
    opts.b_bound = Some(0);
    opts.seed = sectors;
    match search_system(&k, &opts)? {
        SearchOutcome::Found { system, .. } => Ok(system),
        SearchOutcome::Exhausted { .. } => Err(Error::SearchExhausted(format!(
            "no shift system found for M={m}, t=({t1},{t2})"
        ))),
    }
}

/// `1/(zq)_M = sum_m (zq)^m [M+m-1; m]` read as a system for `K = (0)`.
pub fn build_binomial_expansion() -> DurfeeSystem {
    DurfeeSystem::new(RationalMatrix::scalar(rat(0)), vec![Sector::from_integers(&[0], &[0], &[1])]).unwrap()
}

/// Catalog names accepted by [`catalog_system`].
pub const CATALOG_NAMES: &[&str] = &[
    "theorem2.2:r,s",
    "theorem3.1",
    "theorem3.2",
    "theorem3.3:n",
    "theorem4.1:M,t1,t2",
    "expansion",
];

fn int_args(name: &str, args: &str, count: usize) -> Result<Vec<i64>> {
    let v = args
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad arguments in catalog name `{name}`")))?;
    if v.len() != count {
        return Err(Error::Parse(format!("catalog name `{name}` needs {count} integer argument(s)")));
    }
    Ok(v)
}

/// Looks up a built-in system such as `theorem3.3:2` or `theorem4.1:1,1,2`.
pub fn catalog_system(name: &str) -> Result<DurfeeSystem> {
    let (head, args) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, args) {
        ("theorem2.2", Some(a)) => {
            let v = int_args(name, a, 2)?;
            build_rs_system(v[0], v[1])
        }
        ("theorem3.1", None) => Ok(build_theorem31()),
        ("theorem3.2", None) => Ok(build_theorem32()),
        ("theorem3.3", Some(a)) => {
            let v = int_args(name, a, 1)?;
            let n = usize::try_from(v[0]).map_err(|_| Error::InvalidArgument("n must be positive".into()))?;
            build_theorem33(n)
        }
        ("theorem4.1", Some(a)) => {
            let v = int_args(name, a, 3)?;
            build_shift_system(v[0], v[1], v[2])
        }
        ("expansion", None) => Ok(build_binomial_expansion()),
        _ => Err(Error::Parse(format!(
            "unknown catalog name `{name}` (known: {})",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

/// Every `Q` of a system, for set comparisons.
pub fn q_vectors(system: &DurfeeSystem) -> Vec<Vec<Rat>> {
    system.sectors.iter().map(|s| s.q.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem31_sector_one() {
        let s = build_theorem31();
        assert_eq!(s.sectors[1], Sector::from_integers(&[0, 1], &[0, 1], &[1, 0]));
    }

    #[test]
    fn theorem33_small() {
        let s = build_theorem33(1).unwrap();
        assert_eq!(s.k, RationalMatrix::from_integers(&[vec![2]]).unwrap());
        assert_eq!(
            s.sectors,
            vec![Sector::from_integers(&[0], &[0], &[0]), Sector::from_integers(&[1], &[1], &[0])]
        );
        let s = build_theorem33(3).unwrap();
        assert_eq!(rat(s.len() as i64), s.k.determinant());
        assert_eq!(s.sectors[2], Sector::from_integers(&[0, 1, 1], &[0, 1, 0], &[0, 0, 0]));
        assert!(build_theorem33(0).is_err());
    }

    #[test]
    fn theorem33_two_is_theorem32() {
        assert_eq!(build_theorem33(2).unwrap(), build_theorem32());
    }

    #[test]
    fn rs_lengths() {
        assert_eq!(build_rs_system(1, 1).unwrap().len(), 1);
        assert_eq!(build_rs_system(2, 1).unwrap().len(), 2);
        assert_eq!(build_rs_system(2, 2).unwrap().len(), 4);
        assert_eq!(build_rs_system(3, 2).unwrap().len(), 6);
        assert!(build_rs_system(0, 1).is_err());
    }

    #[test]
    fn shift_system_shapes() {
        let s = build_shift_system(1, 1, 1).unwrap();
        assert_eq!(s.k, RationalMatrix::from_integers(&[vec![2, 1], vec![1, 2]]).unwrap());
        assert_eq!(s.len(), 3);
        let s = build_shift_system(0, 1, 1).unwrap();
        assert_eq!(s.k, RationalMatrix::identity(2));
        assert_eq!(s.len(), 1);
        assert!(build_shift_system(1, 2, 1).is_err());
        let cases = [(0, 2, 3), (1, 1, 2), (1, 2, 2), (1, 3, 3), (2, 1, 2), (2, 2, 2)];
        for (m, t1, t2) in cases {
            let s = build_shift_system(m, t1, t2).unwrap();
            assert_eq!(rat(s.len() as i64), s.k.determinant());
        }
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(catalog_system("theorem3.1").unwrap(), build_theorem31());
        assert_eq!(catalog_system("theorem4.1:1,1,2").unwrap().len(), 6);
        assert_eq!(catalog_system("theorem2.2:2,2").unwrap().len(), 4);
        assert!(catalog_system("theorem3.3").is_err());
        assert!(catalog_system("theorem2.2:1").is_err());
        assert!(catalog_system("nope").is_err());
    }
}
