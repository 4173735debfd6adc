//! Truncated formal series in `q` (rational exponents) and `z_1..z_n`
//! (signed integer exponents) with big-integer coefficients.
//!
//! A series carries an inclusive q-degree cutoff; every coefficient at or
//! below the cutoff is exact, everything above it is unknown and dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rat_full, parse_rat, Rat};

/// Exponent vector of a monomial `z_1^{e_1} ... z_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZMonomial(Vec<i64>);

impl ZMonomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        ZMonomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        ZMonomial(vec![0; dim])
    }

    /// `z_i`
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        ZMonomial(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        ZMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i64) -> ZMonomial {
        ZMonomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

type Key = (Rat, ZMonomial);

/// First coefficient (in term order) at which two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub q: Rat,
    pub z: ZMonomial,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q^{} z^{}: {} vs {}",
            format_rat_full(&self.q),
            self.z,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    dim: usize,
    cutoff: Rat,
    terms: BTreeMap<Key, BigInt>,
}

impl Series {
    pub fn zero(dim: usize, cutoff: Rat) -> Self {
        Series { dim, cutoff, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, cutoff: Rat) -> Self {
        Self::monomial(dim, cutoff, 1, Rat::zero(), ZMonomial::one(dim))
    }

    /// `coef * q^q * z^z`, or zero if `q` lies above the cutoff.
    pub fn monomial(dim: usize, cutoff: Rat, coef: impl Into<BigInt>, q: Rat, z: ZMonomial) -> Self {
        assert_eq!(z.dim(), dim, "monomial dimension");
        let mut s = Self::zero(dim, cutoff);
        s.add_term(q, z, coef.into());
        s
    }

    /// Series in `q` alone from its coefficients at `q^0, q^1, ...`.
    pub fn from_q_coeffs(dim: usize, cutoff: Rat, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(dim, cutoff);
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(Rat::from_integer(k as i64), ZMonomial::one(dim), BigInt::from(c));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> Rat {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &ZMonomial, &BigInt)> {
        self.terms.iter().map(|((q, z), c)| (q, z, c))
    }

    pub fn coefficient(&self, q: Rat, z: &ZMonomial) -> BigInt {
        self.terms.get(&(q, z.clone())).cloned().unwrap_or_default()
    }

    /// Coefficients summed over all z-monomials (the `z = 1` specialization).
    pub fn q_coefficients(&self) -> BTreeMap<Rat, BigInt> {
        let mut out: BTreeMap<Rat, BigInt> = BTreeMap::new();
        for ((q, _), c) in &self.terms {
            *out.entry(*q).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Lowest q-exponent present.
    pub fn min_q(&self) -> Option<Rat> {
        self.terms.keys().next().map(|(q, _)| *q)
    }

    /// Adds one term in place, respecting the cutoff.
    pub fn add_term(&mut self, q: Rat, z: ZMonomial, coef: BigInt) {
        if q > self.cutoff || coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((q, z)) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lowers the cutoff (never raises it: coefficients above the current
    /// cutoff are unknown).
    pub fn truncate(&self, cutoff: Rat) -> Series {
        let cutoff = cutoff.min(self.cutoff);
        Series {
            dim: self.dim,
            cutoff,
            terms: self.terms.iter().filter(|((q, _), _)| *q <= cutoff).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    fn check_dim(&self, other: &Series) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Coefficientwise sum; the result cutoff is the smaller of the two.
    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check_dim(other)?;
        let mut out = self.truncate(other.cutoff);
        out.add_assign_series(other);
        Ok(out)
    }

    /// `self += other`, lowering the cutoff if needed.
    pub fn add_assign_series(&mut self, other: &Series) {
        assert_eq!(self.dim, other.dim, "series dimension mismatch");
        if other.cutoff < self.cutoff {
            *self = self.truncate(other.cutoff);
        }
        for ((q, z), c) in &other.terms {
            self.add_term(*q, z.clone(), c.clone());
        }
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Series {
        Series {
            dim: self.dim,
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        if c.is_zero() {
            return Series::zero(self.dim, self.cutoff);
        }
        Series {
            dim: self.dim,
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `q^q z^z`; the cutoff moves with the terms.
    pub fn shift(&self, q: Rat, z: &ZMonomial) -> Series {
        let cutoff = self.cutoff + q;
        let mut out = Series::zero(self.dim, cutoff);
        for ((tq, tz), c) in &self.terms {
            let nq = *tq + q;
            if nq > cutoff {
                break;
            }
            out.terms.insert((nq, tz.mul(z)), c.clone());
        }
        out
    }

    /// Truncated Cauchy product. Terms of negative q-degree in one factor
    /// reduce how far the other factor's truncation is exact.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check_dim(other)?;
        let low = |s: &Series| s.min_q().unwrap_or_default().min(Rat::zero());
        let cutoff = (self.cutoff + low(other)).min(other.cutoff + low(self));
        let mut out = Series::zero(self.dim, cutoff);
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let Some(large_min) = large.min_q() else {
            return Ok(out);
        };
        for ((qa, za), ca) in &small.terms {
            if *qa + large_min > cutoff {
                break;
            }
            for ((qb, zb), cb) in &large.terms {
                let q = *qa + *qb;
                if q > cutoff {
                    break;
                }
                out.add_term(q, za.mul(zb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(self.dim, self.cutoff);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse up to the cutoff, by long division.
    ///
    /// The series must be `±1 + (terms of strictly positive q-degree)`.
    pub fn invert(&self) -> Result<Series> {
        let unit_key = (Rat::zero(), ZMonomial::one(self.dim));
        let c0 = match self.terms.iter().next() {
            Some((k, c)) if *k == unit_key && (c.is_one() || (-c).is_one()) => c.clone(),
            _ => return Err(Error::NotInvertible),
        };
        let rest: Vec<(&Key, &BigInt)> = self.terms.iter().skip(1).collect();
        if rest.iter().any(|((q, _), _)| !q.is_positive()) {
            return Err(Error::NotInvertible);
        }
        // b = c0 (1 - r b) where r = self - c0; a coefficient of b at level q
        // only depends on b below q, so keys can be finalized in order.
        let mut pending: BTreeMap<Key, BigInt> = BTreeMap::new();
        pending.insert(unit_key, c0.clone());
        let mut out = Series::zero(self.dim, self.cutoff);
        while let Some(((q, z), coef)) = pending.pop_first() {
            if coef.is_zero() {
                continue;
            }
            for ((rq, rz), rc) in &rest {
                let nq = q + *rq;
                if nq > self.cutoff {
                    break;
                }
                let delta = -(&c0 * *rc * &coef);
                let e = pending.entry((nq, z.mul(rz))).or_default();
                *e += delta;
            }
            out.terms.insert((q, z), coef);
        }
        Ok(out)
    }

    /// Substitutes `z_i -> q^{shift_i} * image_i`, where `image_i` is a
    /// monomial in a (possibly different) set of `new_dim` variables.
    ///
    /// Shifts must be non-negative so that no unknown term above the cutoff
    /// can move below it.
    pub fn substitute(&self, images: &[(Rat, ZMonomial)], new_dim: usize) -> Result<Series> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        if images.iter().any(|(s, m)| s.is_negative() || m.dim() != new_dim) {
            return Err(Error::InvalidArgument(
                "substitution needs non-negative q-shifts and images of the target dimension".into(),
            ));
        }
        let mut out = Series::zero(new_dim, self.cutoff);
        for ((q, z), c) in &self.terms {
            let mut nq = *q;
            let mut nz = ZMonomial::one(new_dim);
            for (e, (s, m)) in z.exponents().iter().zip(images) {
                nq += *s * Rat::from_integer(*e);
                nz = nz.mul(&m.pow(*e));
            }
            out.add_term(nq, nz, c.clone());
        }
        Ok(out)
    }

    /// `z = 1`: a series in q alone with zero z-variables.
    pub fn at_z_one(&self) -> Series {
        let images = vec![(Rat::zero(), ZMonomial::one(0)); self.dim];
        self.substitute(&images, 0).expect("z = 1 substitution is always valid")
    }

    /// Keeps only the terms whose z-monomial satisfies `keep`.
    pub fn filter_z(&self, keep: impl Fn(&ZMonomial) -> bool) -> Series {
        Series {
            dim: self.dim,
            cutoff: self.cutoff,
            terms: self.terms.iter().filter(|((_, z), _)| keep(z)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Compares two series over the common cutoff. Returns the smallest
    /// differing `(q, z)` key, if any.
    pub fn first_discrepancy(&self, other: &Series) -> Option<Discrepancy> {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut a = self.terms.iter().filter(|((q, _), _)| *q <= cutoff).peekable();
        let mut b = other.terms.iter().filter(|((q, _), _)| *q <= cutoff).peekable();
        let zero = BigInt::zero();
        loop {
            let pa: Option<(&(Rat, ZMonomial), &BigInt)> = a.peek().copied();
            let pb: Option<(&(Rat, ZMonomial), &BigInt)> = b.peek().copied();
            let (key, lhs, rhs): (&(Rat, ZMonomial), &BigInt, &BigInt) = match (pa, pb) {
                (None, None) => return None,
                (Some((ka, ca)), None) => (ka, ca, &zero),
                (None, Some((kb, cb))) => (kb, &zero, cb),
                (Some((ka, ca)), Some((kb, cb))) => match ka.cmp(kb) {
                    std::cmp::Ordering::Less => (ka, ca, &zero),
                    std::cmp::Ordering::Greater => (kb, &zero, cb),
                    std::cmp::Ordering::Equal => {
                        if ca == cb {
                            a.next();
                            b.next();
                            continue;
                        }
                        (ka, ca, cb)
                    }
                },
            };
            let (key, lhs, rhs) = (key.clone(), lhs.clone(), rhs.clone());
            return Some(Discrepancy { q: key.0, z: key.1, lhs, rhs });
        }
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse_canonical(text: &str, dim: usize, cutoff: Rat) -> Result<Series> {
        let mut s = Series::zero(dim, cutoff);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || Error::Parse(format!("invalid series term `{line}`"));
            let mut it = line.split_whitespace();
            let coef: BigInt = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let q = parse_rat(it.next().and_then(|t| t.strip_prefix("q^")).ok_or_else(bad)?)?;
            let z = it
                .next()
                .and_then(|t| t.strip_prefix("z^("))
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(bad)?;
            let exps: Vec<i64> = if z.is_empty() {
                Vec::new()
            } else {
                z.split(',').map(|e| e.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
            };
            if exps.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: exps.len() });
            }
            s.add_term(q, ZMonomial(exps), coef);
        }
        Ok(s)
    }
}

/// Canonical text form: one term per line, `coef q^<num>/<den> z^(e1,...,en)`,
/// in increasing (q-exponent, z-monomial) order.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((q, z), c) in &self.terms {
            writeln!(f, "{} q^{} z^{}", c, format_rat_full(q), z)?;
        }
        Ok(())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).expect("series dimension mismatch")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).expect("series dimension mismatch")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.try_mul(rhs).expect("series dimension mismatch")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.negate()
    }
}
