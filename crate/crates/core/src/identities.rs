//! Series-level checks of the dissection identities.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::{
    gaussian_continued, pochhammer_inf, poly_mul, qbinomial, Bound, Ctx, InversePochhammer,
};
use crate::rational::{as_integer, format_rat_full, rat, Rat};
use crate::series::{Discrepancy, Series, ZMonomial};
use crate::system::{integer_vec, DurfeeSystem, Sector};

/// How a finite-`M` summand `1/(z q)_{n_i} [M_i + m_i - n_i - b_i; m_i]`
/// is read when the binomial's top is negative.
///
/// `Literal` extends the binomial by zero. `Corrected` also extends by zero
/// but, for a component whose rectangle has no columns (`m_i + a_i = 0`),
/// uses `1/(z q)_{min(n_i, M_i)}` instead: the attachment then fills a box
/// of width `M_i` directly, which is what the left side counts.
/// `Continued` keeps the literal summand and continues the binomial to
/// negative tops through its product formula (see [`gaussian_continued`]);
/// the sum over `m` is then no longer cut off by the binomials, only by
/// the q-degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SummandForm {
    Corrected,
    Literal,
    #[default]
    Continued,
}

impl SummandForm {
    pub fn label(self) -> &'static str {
        match self {
            SummandForm::Corrected => "dissection",
            SummandForm::Literal => "dissection-literal",
            SummandForm::Continued => "dissection-continued",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q_exp: String,
    pub z_exp: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

impl From<Discrepancy> for Witness {
    fn from(d: Discrepancy) -> Self {
        Witness {
            q_exp: format_rat_full(&d.q),
            z_exp: d.z.exponents().to_vec(),
            lhs: d.lhs.to_string(),
            rhs: d.rhs.to_string(),
        }
    }
}

/// Outcome of one exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    #[serde(rename = "M")]
    pub m: Vec<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<i64>>,
    pub cutoff: String,
    pub pass: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn compare(identity: impl Into<String>, m: Vec<String>, cutoff: Rat, lhs: &Series, rhs: &Series) -> Self {
        let witness = lhs.first_discrepancy(rhs).map(Witness::from);
        VerificationReport {
            identity: identity.into(),
            m,
            n: None,
            p: None,
            cutoff: format_rat_full(&cutoff),
            pass: witness.is_none(),
            witness,
            notes: Vec::new(),
        }
    }

    pub fn with_n(mut self, n: Vec<String>) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_p(mut self, p: &[i64]) -> Self {
        self.p = Some(p.to_vec());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} M=({})", self.identity, self.m.join(","))?;
        if let Some(n) = &self.n {
            write!(f, " N=({})", n.join(","))?;
        }
        if let Some(p) = &self.p {
            let p: Vec<String> = p.iter().map(i64::to_string).collect();
            write!(f, " p=({})", p.join(","))?;
        }
        write!(f, " cutoff {}: {}", self.cutoff, if self.pass { "pass" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            let z: Vec<String> = w.z_exp.iter().map(i64::to_string).collect();
            write!(f, " (first difference at q^{} z^({}): lhs {} rhs {})", w.q_exp, z.join(","), w.lhs, w.rhs)?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

pub fn bound_labels(m: &[Bound]) -> Vec<String> {
    m.iter().map(Bound::to_string).collect()
}

fn int_labels(m: &[u64]) -> Vec<String> {
    m.iter().map(u64::to_string).collect()
}

/// `prod_i 1/(z_i q)_{M_i}`.
pub fn lhs_product(ctx: Ctx, m: &[Bound]) -> Series {
    let mut acc = ctx.one();
    for (i, &mi) in m.iter().enumerate() {
        let mut t = InversePochhammer::new(ctx, ZMonomial::var(ctx.dim, i));
        acc = &acc * t.get(mi);
    }
    acc
}

/// Memoized factor series shared by the terms of one sector.
struct Factors {
    ctx: Ctx,
    z_inv: Vec<InversePochhammer>,
    q_inv: InversePochhammer,
    binomials: HashMap<(i64, i64), Series>,
}

impl Factors {
    fn new(ctx: Ctx, tracked: bool) -> Self {
        let z_inv = (0..ctx.dim)
            .map(|i| {
                let z = if tracked { ZMonomial::var(ctx.dim, i) } else { ZMonomial::one(ctx.dim) };
                InversePochhammer::new(ctx, z)
            })
            .collect();
        Factors { ctx, z_inv, q_inv: InversePochhammer::q_factorial(ctx), binomials: HashMap::new() }
    }

    fn z_inv(&mut self, i: usize, n: u64) -> &Series {
        self.z_inv[i].get(Bound::Finite(n))
    }

    fn q_inv(&mut self, n: u64) -> &Series {
        self.q_inv.get(Bound::Finite(n))
    }

    fn binomial(&mut self, top: Rat, bottom: Rat) -> Option<&Series> {
        let (t, b) = (as_integer(&top)?, as_integer(&bottom)?);
        if b < 0 || b > t {
            return None;
        }
        let ctx = self.ctx;
        Some(self.binomials.entry((t, b)).or_insert_with(|| qbinomial(ctx, top, bottom)))
    }
}

fn z_of(dim: usize, m: &[i64], a: &[i64]) -> ZMonomial {
    ZMonomial::new((0..dim).map(|i| m[i] + a[i]).collect())
}

fn sector_ints(sector: &Sector) -> Result<(Vec<i64>, Vec<Rat>)> {
    let a = integer_vec(&sector.a)
        .ok_or_else(|| Error::InvalidArgument(format!("sector {sector} has a non-integer `a`")))?;
    Ok((a, sector.b.clone()))
}

/// Sums `f(index)` over all sectors in parallel.
fn sum_sectors<F>(ctx: Ctx, len: usize, f: F) -> Result<Series>
where
    F: Fn(usize) -> Result<Series> + Sync + Send,
{
    let parts: Vec<Series> = (0..len).into_par_iter().map(f).collect::<Result<_>>()?;
    let mut acc = ctx.zero();
    for p in &parts {
        acc.add_assign_series(p);
    }
    Ok(acc)
}

/// The sector sum of the dissection identity at box bounds `m_bounds`,
/// with every `z_i` tracked.
pub fn rhs_sector_sum(system: &DurfeeSystem, m_bounds: &[Bound], ctx: Ctx, form: SummandForm) -> Result<Series> {
    let dim = system.dim();
    if m_bounds.len() != dim || ctx.dim != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: m_bounds.len() });
    }
    if form == SummandForm::Continued {
        return rhs_continued(system, m_bounds, ctx);
    }
    let zero = vec![rat(0); dim];
    sum_sectors(ctx, system.len(), |idx| {
        let sector = &system.sectors[idx];
        let (a, b) = sector_ints(sector)?;
        let mut fac = Factors::new(ctx, true);
        let mut acc = ctx.zero();
        'points: for pt in system.sector_points(idx, &zero, ctx.cutoff, &[])? {
            let mut t = ctx.monomial(1, pt.weight, z_of(dim, &pt.m, &a));
            for i in 0..dim {
                let (mi, ni) = (pt.m[i], pt.n[i] as u64);
                match m_bounds[i] {
                    Bound::Infinite => {
                        t = &t * fac.q_inv(mi as u64);
                        t = &t * fac.z_inv(i, ni);
                    }
                    Bound::Finite(big_m) => {
                        if form == SummandForm::Corrected && mi + a[i] == 0 {
                            t = &t * fac.z_inv(i, ni.min(big_m));
                            continue;
                        }
                        let top = rat(big_m as i64 + mi - ni as i64) - b[i];
                        let Some(bin) = fac.binomial(top, rat(mi)) else {
                            continue 'points;
                        };
                        t = &t * bin;
                        t = &t * fac.z_inv(i, ni);
                    }
                }
            }
            acc.add_assign_series(&t);
        }
        Ok(acc)
    })
}

/// Largest `m` with `f(m) <= cutoff` for a non-decreasing `f`, or an error
/// when `f` stays below the cutoff too long.
pub(crate) fn last_below(cutoff: Rat, f: impl Fn(i64) -> Rat) -> Result<i64> {
    const LIMIT: i64 = 1 << 16;
    let mut m = 0;
    while m < LIMIT && f(m + 1) <= cutoff {
        m += 1;
    }
    if m == LIMIT {
        return Err(Error::NonTerminating("q-degree does not grow with m".into()));
    }
    Ok(m)
}

pub(crate) fn check_nonnegative(system: &DurfeeSystem, sector: &Sector) -> Result<()> {
    let (k, dim) = (&system.k, system.dim());
    let nonneg = (0..dim).all(|i| (0..dim).all(|j| !k.get(i, j).is_negative()))
        && sector.a.iter().chain(&sector.b).all(|x| !x.is_negative());
    if nonneg {
        Ok(())
    } else {
        Err(Error::InvalidArgument("continued binomials need non-negative K, a and b".into()))
    }
}

/// Per-coordinate box holding every `m` whose continued summand can reach
/// the cutoff. Needs `K`, `a`, `b` non-negative so that each coordinate
/// contributes a non-negative amount to the q-degree.
fn continued_caps(system: &DurfeeSystem, sector: &Sector, shift: &[Rat], m_bounds: &[Bound], cutoff: Rat) -> Result<Vec<i64>> {
    check_nonnegative(system, sector)?;
    let k = &system.k;
    (0..system.dim())
        .map(|i| {
            let lin = sector.q[i] + shift[i] + sector.b[i];
            let by_weight = |m: i64| rat(m) * (k.get(i, i) * rat(m) + lin);
            match m_bounds[i] {
                Bound::Infinite => last_below(cutoff, by_weight),
                Bound::Finite(big) => last_below(cutoff, |m| {
                    let negative = rat(m * big as i64 + m * (m + 1) / 2);
                    by_weight(m).min(negative)
                }),
            }
        })
        .collect()
}

fn rhs_continued(system: &DurfeeSystem, m_bounds: &[Bound], ctx: Ctx) -> Result<Series> {
    let dim = system.dim();
    let zero = vec![rat(0); dim];
    sum_sectors(ctx, system.len(), |idx| {
        let sector = &system.sectors[idx];
        let (a, b) = sector_ints(sector)?;
        let caps = continued_caps(system, sector, &zero, m_bounds, ctx.cutoff)?;
        let mut fac = Factors::new(ctx, true);
        let mut acc = ctx.zero();
        'points: for pt in system.sector_points_in_box(idx, &zero, &caps)? {
            let mut poly = (0i64, vec![BigInt::from(1)]);
            for i in 0..dim {
                if let Bound::Finite(big_m) = m_bounds[i] {
                    let top = rat(big_m as i64 + pt.m[i] - pt.n[i]) - b[i];
                    let Some(top) = as_integer(&top) else { continue 'points };
                    let Some(g) = gaussian_continued(top, pt.m[i]) else { continue 'points };
                    poly = poly_mul(&poly, &g);
                }
            }
            let low = pt.weight + rat(poly.0);
            if low > ctx.cutoff {
                continue;
            }
            let z = z_of(dim, &pt.m, &a);
            let mut t = ctx.zero();
            for (e, c) in poly.1.into_iter().enumerate() {
                t.add_term(low + rat(e as i64), z.clone(), c);
            }
            for i in 0..dim {
                if m_bounds[i].is_infinite() {
                    t = &t * fac.q_inv(pt.m[i] as u64);
                }
                t = &t * fac.z_inv(i, pt.n[i] as u64);
            }
            acc.add_assign_series(&t);
        }
        Ok(acc)
    })
}

/// Compares both sides of the dissection identity at one box-bound vector.
pub fn verify_finite(system: &DurfeeSystem, m_bounds: &[Bound], cutoff: Rat) -> Result<VerificationReport> {
    verify_finite_with(system, m_bounds, cutoff, SummandForm::default())
}

pub fn verify_finite_with(
    system: &DurfeeSystem,
    m_bounds: &[Bound],
    cutoff: Rat,
    form: SummandForm,
) -> Result<VerificationReport> {
    let ctx = Ctx::new(system.dim(), cutoff);
    if m_bounds.len() != system.dim() {
        return Err(Error::DimensionMismatch { expected: system.dim(), found: m_bounds.len() });
    }
    let lhs = lhs_product(ctx, m_bounds);
    let rhs = rhs_sector_sum(system, m_bounds, ctx, form)?;
    Ok(VerificationReport::compare(form.label(), bound_labels(m_bounds), cutoff, &lhs, &rhs))
}

/// `{0, 1, 2, inf}^n`, thinned to at most 16 points for `n >= 3`.
pub fn default_grid(n: usize) -> Vec<Vec<Bound>> {
    let values = [Bound::Finite(0), Bound::Finite(1), Bound::Finite(2), Bound::Infinite];
    let mut grid: Vec<Vec<Bound>> = vec![Vec::new()];
    for _ in 0..n {
        grid = grid
            .into_iter()
            .flat_map(|g| {
                values.iter().map(move |&v| {
                    let mut g = g.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    if n >= 3 {
        // keep the constant vectors and a spread of mixed ones
        let step = grid.len().div_ceil(16);
        let mut thinned: Vec<Vec<Bound>> = grid.iter().step_by(step).cloned().collect();
        for v in values {
            let c = vec![v; n];
            if !thinned.contains(&c) {
                thinned.push(c);
            }
        }
        while thinned.len() > 16 {
            let idx = thinned.iter().position(|g| g.iter().any(|x| *x != g[0])).unwrap();
            thinned.remove(idx);
        }
        grid = thinned;
    }
    grid
}

/// The symmetric finite identity: `prod_i [M_i+N_i; M_i]` against the sector
/// sum with constraint `n - K m = Q + p`, both binomial families continued
/// to negative tops. The left side is a polynomial of degree `sum M_i N_i`;
/// the right side is summed to twice that degree (at least 4), so the
/// comparison also checks that it has no terms past the left side's top.
pub fn verify_symmetric(
    system: &DurfeeSystem,
    m_box: &[u64],
    n_box: &[u64],
    p: &[i64],
) -> Result<VerificationReport> {
    let dim = system.dim();
    for v in [m_box.len(), n_box.len(), p.len()] {
        if v != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v });
        }
    }
    let mi: Vec<i64> = m_box.iter().map(|&x| x as i64).collect();
    let ni: Vec<i64> = n_box.iter().map(|&x| x as i64).collect();
    let degree: i64 = (0..dim).map(|i| mi[i] * ni[i]).sum();
    let cutoff = rat(degree + degree.max(4));
    let shift: Vec<Rat> = p.iter().map(|&x| rat(x)).collect();
    let ctx = Ctx::new(1, cutoff);
    let mut lhs = ctx.one();
    for i in 0..dim {
        lhs = &lhs * &qbinomial(ctx, rat(mi[i] + ni[i]), rat(mi[i]));
    }
    let rhs = sum_sectors(ctx, system.len(), |idx| {
        let sector = &system.sectors[idx];
        let (a, b) = sector_ints(sector)?;
        let b = integer_vec(&b).ok_or_else(|| Error::InvalidArgument("non-integer `b`".into()))?;
        let caps = symmetric_caps(system, sector, &shift, &mi, &ni, cutoff)?;
        let mut acc = ctx.zero();
        'points: for pt in system.sector_points_in_box(idx, &shift, &caps)? {
            let Some(w) = as_integer(&pt.weight) else { continue };
            let mut poly = (w, vec![BigInt::from(1)]);
            for i in 0..dim {
                let (m, n) = (pt.m[i], pt.n[i]);
                for (top, bottom) in [(mi[i] + m - n - b[i], m), (ni[i] + n - m - a[i], n)] {
                    let Some(g) = gaussian_continued(top, bottom) else { continue 'points };
                    poly = poly_mul(&poly, &g);
                }
            }
            if rat(poly.0) > cutoff {
                continue;
            }
            for (e, c) in poly.1.into_iter().enumerate() {
                acc.add_term(rat(poly.0 + e as i64), ZMonomial::one(1), c);
            }
        }
        Ok(acc)
    })?;
    Ok(VerificationReport::compare("symmetric", int_labels(m_box), cutoff, &lhs, &rhs)
        .with_n(int_labels(n_box))
        .with_p(p))
}

/// Box for [`verify_symmetric`]: each coordinate's q-degree is at least the
/// smallest of the four sign cases of the two binomial tops.
fn symmetric_caps(
    system: &DurfeeSystem,
    sector: &Sector,
    shift: &[Rat],
    mi: &[i64],
    ni: &[i64],
    cutoff: Rat,
) -> Result<Vec<i64>> {
    check_nonnegative(system, sector)?;
    let k = &system.k;
    let half = rat(1) / rat(2);
    (0..system.dim())
        .map(|i| {
            let lin = sector.q[i] + shift[i];
            let (big_m, big_n) = (rat(mi[i]), rat(ni[i]));
            last_below(cutoff, |m| {
                let m = rat(m);
                let nu = (k.get(i, i) * m + lin).max(rat(0));
                let both = m * nu;
                let first = m * big_m + m * (m + rat(1)) * half;
                let second = nu * big_n + nu * (nu + rat(1)) * half;
                let neither = (m + nu) * half;
                both.min(first).min(second).min(neither)
            })
        })
        .collect()
}

/// `1/(q)_inf^n` against the sector sum with `n - K m = Q + p` and
/// factors `1/((q)_m (q)_n)`.
pub fn verify_specialized(system: &DurfeeSystem, p: &[i64], cutoff: Rat) -> Result<VerificationReport> {
    let dim = system.dim();
    if p.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }
    let ctx = Ctx::new(1, cutoff);
    let euler = pochhammer_inf(ctx, &ZMonomial::one(1), rat(1))?.invert()?;
    let mut lhs = ctx.one();
    for _ in 0..dim {
        lhs = &lhs * &euler;
    }
    let shift: Vec<Rat> = p.iter().map(|&x| rat(x)).collect();
    let rhs = sum_sectors(ctx, system.len(), |idx| {
        let mut fac = Factors::new(ctx, false);
        let mut acc = ctx.zero();
        for pt in system.sector_points(idx, &shift, cutoff, &[])? {
            let mut t = ctx.monomial(1, pt.weight, ZMonomial::one(1));
            for i in 0..dim {
                t = &t * fac.q_inv(pt.m[i] as u64);
                t = &t * fac.q_inv(pt.n[i] as u64);
            }
            acc.add_assign_series(&t);
        }
        Ok(acc)
    })?;
    Ok(VerificationReport::compare("specialized", vec!["inf".into(); dim], cutoff, &lhs, &rhs).with_p(p))
}

/// The `r:s` rectangle dissection of `1/(zq)_M`, summed directly over the
/// pairs `(0,0)` and `1 <= i <= r, 1 <= j <= s, (i,j) != (r,s)`.
pub fn verify_andrews(r: i64, s: i64, m_bound: Bound, cutoff: Rat) -> Result<VerificationReport> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidArgument(format!("r and s must be positive, got ({r},{s})")));
    }
    let ctx = Ctx::new(1, cutoff);
    let lhs = lhs_product(ctx, &[m_bound]);
    let mut pairs = vec![(0, 0)];
    for i in 1..=r {
        for j in 1..=s {
            if (i, j) != (r, s) {
                pairs.push((i, j));
            }
        }
    }
    let mut fac = Factors::new(ctx, true);
    let mut rhs = ctx.zero();
    for (i, j) in pairs {
        let djs = i64::from(j == s);
        let edge = i64::from(i == 0) + i64::from(i == r);
        for m in 0.. {
            let weight = rat((r * m + i) * (s * m + j));
            if weight > cutoff {
                break;
            }
            let den = (s * m + j - 1 + edge) as u64;
            let bottom = r * m + i * djs;
            let mut t = ctx.monomial(1, weight, ZMonomial::new(vec![r * m + i]));
            match m_bound {
                Bound::Infinite => t = &t * fac.q_inv(bottom as u64),
                Bound::Finite(big_m) => {
                    let top = big_m as i64 + r * m + i * djs - s * m - j;
                    match fac.binomial(rat(top), rat(bottom)) {
                        Some(bin) => t = &t * bin,
                        None => continue,
                    }
                }
            }
            t = &t * fac.z_inv(0, den);
            rhs.add_assign_series(&t);
        }
    }
    Ok(VerificationReport::compare(format!("rectangles {r}:{s}"), bound_labels(&[m_bound]), cutoff, &lhs, &rhs))
}

/// Drops coordinate `i0` and every sector with `a_{i0} != 0`.
pub fn reduce_system(system: &DurfeeSystem, i0: usize) -> Result<DurfeeSystem> {
    let n = system.dim();
    if i0 >= n || n < 2 {
        return Err(Error::InvalidArgument(format!("cannot drop coordinate {i0} of a {n}-dimensional system")));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != i0).collect();
    let rows = keep.iter().map(|&i| keep.iter().map(|&j| system.k.get(i, j)).collect()).collect();
    let pick = |v: &[Rat]| keep.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let sectors = system
        .sectors
        .iter()
        .filter(|s| s.a[i0].is_zero())
        .map(|s| Sector {
            q: pick(&s.q),
            a: pick(&s.a),
            b: pick(&s.b),
            restriction: s.restriction.as_ref().map(|c| crate::system::Congruence {
                modulus: keep.iter().map(|&i| c.modulus[i]).collect(),
                residue: keep.iter().map(|&i| c.residue[i]).collect(),
            }),
        })
        .collect();
    DurfeeSystem::new(crate::matrix::RationalMatrix::new(rows)?, sectors)
}

/// Setting `z_{i0} = 0`: the slice of the sector sum must equal the
/// `(n-1)`-dimensional left side, and so must the reduced system's sum.
pub fn verify_slice(system: &DurfeeSystem, i0: usize, m_bounds: &[Bound], cutoff: Rat) -> Result<VerificationReport> {
    let n = system.dim();
    let reduced = reduce_system(system, i0)?;
    let ctx = Ctx::new(n, cutoff);
    let full = rhs_sector_sum(system, m_bounds, ctx, SummandForm::Corrected)?;
    let slice = full.filter_z(|z| z.exponents()[i0] == 0);
    let images: Vec<(Rat, ZMonomial)> = (0..n)
        .map(|i| match i.cmp(&i0) {
            std::cmp::Ordering::Less => (rat(0), ZMonomial::var(n - 1, i)),
            std::cmp::Ordering::Equal => (rat(0), ZMonomial::one(n - 1)),
            std::cmp::Ordering::Greater => (rat(0), ZMonomial::var(n - 1, i - 1)),
        })
        .collect();
    let slice = slice.substitute(&images, n - 1)?;
    let bounds: Vec<Bound> = (0..n).filter(|&i| i != i0).map(|i| m_bounds[i]).collect();
    let small = Ctx::new(n - 1, cutoff);
    let lhs = lhs_product(small, &bounds);
    let mut report = VerificationReport::compare(format!("slice z{}=0", i0 + 1), bound_labels(m_bounds), cutoff, &lhs, &slice);
    if report.pass {
        let reduced_rhs = rhs_sector_sum(&reduced, &bounds, small, SummandForm::Corrected)?;
        if let Some(d) = lhs.first_discrepancy(&reduced_rhs) {
            report.pass = false;
            report.witness = Some(d.into());
            report.notes.push("reduced system disagrees with the slice".into());
        }
    }
    Ok(report)
}
