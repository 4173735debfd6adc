//! The universal chiral partition function
//! `Z(K; Q, u | z) = sum_m z^m q^{m.K.m/2 + Q.m} prod_i [((1-K)m + u)_i; m_i]`,
//! its `u -> inf` limit, the dual data `(K^{-1}, -K^{-1} Q)`, and the
//! product identities a Durfee system induces between the two.
//!
//! Binomials here are zero outside `0 <= bottom <= top` and whenever the
//! top is not an integer; that is what makes the finite sums terminate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{check_nonnegative, VerificationReport, Witness};
use crate::lattice::{ellipsoid_points, QuadraticExponent};
use crate::matrix::RationalMatrix;
use crate::qseries::{gaussian_continued, pochhammer_inf, poly_mul, qbinomial, Bound, Ctx, InversePochhammer};
use crate::rational::{as_integer, dot, floor, format_rat, format_rat_full, parse_rat, rat, ratio, Rat};
use crate::series::{Series, ZMonomial};
use crate::system::{integer_vec, Congruence, DurfeeSystem, RatJson};

/// Cutoff used where both sides are polynomials and must be kept whole.
const WHOLE: i64 = 1 << 40;

/// How a binomial whose top is a negative integer is read. Tops that are
/// not integers give zero under both rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum TopRule {
    /// Zero: finite sums terminate and come out as polynomials.
    #[default]
    ZeroExtended,
    /// Product formula, as in [`gaussian_continued`]. The sums no longer
    /// terminate, but each power of `z` still gets a Laurent polynomial in
    /// `q`, and Pascal's rule holds for every integer top.
    Continued,
}

impl TopRule {
    pub fn label(self) -> &'static str {
        match self {
            TopRule::ZeroExtended => "zero-extended",
            TopRule::Continued => "continued",
        }
    }
}

fn binom_poly(top: Rat, bottom: i64, rule: TopRule) -> Option<(i64, Vec<BigInt>)> {
    let t = as_integer(&top)?;
    match rule {
        TopRule::ZeroExtended if t < 0 => None,
        _ => gaussian_continued(t, bottom),
    }
}

fn add_poly(acc: &mut Series, shift: Rat, z: &ZMonomial, poly: &(i64, Vec<BigInt>)) {
    for (j, c) in poly.1.iter().enumerate() {
        acc.add_term(shift + rat(poly.0 + j as i64), z.clone(), c.clone());
    }
}

fn box_points(caps: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// What `z_i` is replaced by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZAssign {
    One,
    QPow(Rat),
    /// `prod_j z_j^{e_j}` in the output variables.
    Laurent(Vec<i64>),
}

impl ZAssign {
    fn image(&self, dim: usize) -> (Rat, ZMonomial) {
        match self {
            ZAssign::One => (Rat::zero(), ZMonomial::one(dim)),
            ZAssign::QPow(p) => (*p, ZMonomial::one(dim)),
            ZAssign::Laurent(e) => (Rat::zero(), ZMonomial::new(e.clone())),
        }
    }
}

impl fmt::Display for ZAssign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZAssign::One => write!(f, "1"),
            ZAssign::QPow(p) => write!(f, "q^{}", format_rat(p)),
            ZAssign::Laurent(e) => write!(f, "z^{}", ZMonomial::new(e.clone())),
        }
    }
}

/// `z_i = z_i` for every `i`, tracked in `dim` variables.
pub fn tracked_z(dim: usize) -> Vec<ZAssign> {
    (0..dim).map(|i| ZAssign::Laurent(ZMonomial::var(dim, i).exponents().to_vec())).collect()
}

/// Data of one UCPF. `u[i] = None` is `u_i = inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcpfSpec {
    pub k: RationalMatrix,
    pub q: Vec<Rat>,
    pub u: Vec<Option<Rat>>,
    pub z: Vec<ZAssign>,
}

impl UcpfSpec {
    pub fn new(k: RationalMatrix, q: Vec<Rat>, u: Vec<Option<Rat>>, z: Vec<ZAssign>) -> Result<Self> {
        let n = k.dim();
        for len in [q.len(), u.len(), z.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len });
            }
        }
        let mut zdim = None;
        for a in &z {
            if let ZAssign::Laurent(e) = a {
                match zdim {
                    None => zdim = Some(e.len()),
                    Some(d) if d != e.len() => return Err(Error::DimensionMismatch { expected: d, found: e.len() }),
                    _ => {}
                }
            }
        }
        Ok(UcpfSpec { k, q, u, z })
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// Number of z-variables in the result (1 when nothing is tracked).
    pub fn z_dim(&self) -> usize {
        self.z
            .iter()
            .find_map(|a| match a {
                ZAssign::Laurent(e) => Some(e.len()),
                _ => None,
            })
            .unwrap_or(1)
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().all(Option::is_some)
    }

    pub fn to_json(&self) -> UcpfJson {
        UcpfJson {
            dimension: self.dim(),
            k: self.k.rows().iter().map(|r| r.iter().map(RatJson::from).collect()).collect(),
            q: self.q.iter().map(RatJson::from).collect(),
            u: self
                .u
                .iter()
                .map(|x| match x {
                    Some(v) => RatJson::from(v),
                    None => RatJson::Str("inf".into()),
                })
                .collect(),
            z: self
                .z
                .iter()
                .map(|a| match a {
                    ZAssign::One => ZJson::Text("1".into()),
                    ZAssign::QPow(p) => ZJson::Text(format!("q^{}", format_rat(p))),
                    ZAssign::Laurent(e) => ZJson::Laurent { laurent: e.clone() },
                })
                .collect(),
        }
    }

    pub fn from_json(json: &UcpfJson) -> Result<Self> {
        let rows = json
            .k
            .iter()
            .map(|r| r.iter().map(RatJson::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let k = RationalMatrix::new(rows)?;
        if k.dim() != json.dimension {
            return Err(Error::DimensionMismatch { expected: json.dimension, found: k.dim() });
        }
        let q = json.q.iter().map(RatJson::value).collect::<Result<Vec<_>>>()?;
        let u = json
            .u
            .iter()
            .map(|x| match x {
                RatJson::Str(s) if s.trim() == "inf" => Ok(None),
                other => other.value().map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        let z = json
            .z
            .iter()
            .map(|a| match a {
                ZJson::Laurent { laurent } => Ok(ZAssign::Laurent(laurent.clone())),
                ZJson::Text(t) if t.trim() == "1" => Ok(ZAssign::One),
                ZJson::Text(t) => match t.trim().strip_prefix("q^") {
                    Some(p) => parse_rat(p.trim_matches(|c| c == '(' || c == ')')).map(ZAssign::QPow),
                    None => Err(Error::Parse(format!("bad z assignment `{t}` (expected \"1\", \"q^p\" or a laurent object)"))),
                },
            })
            .collect::<Result<Vec<_>>>()?;
        UcpfSpec::new(k, q, u, z)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: UcpfJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("spec serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZJson {
    Text(String),
    Laurent { laurent: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UcpfJson {
    pub dimension: usize,
    #[serde(rename = "K")]
    pub k: Vec<Vec<RatJson>>,
    #[serde(rename = "Q")]
    pub q: Vec<RatJson>,
    pub u: Vec<RatJson>,
    pub z: Vec<ZJson>,
}

fn half(x: Rat) -> Rat {
    x / rat(2)
}

fn scaled(k: &RationalMatrix, c: Rat) -> RationalMatrix {
    RationalMatrix::new(k.rows().into_iter().map(|r| r.into_iter().map(|x| x * c).collect()).collect())
        .expect("scaling keeps symmetry")
}

/// Lower bound of `m.A.m/2 + l.m` over all real `m`, for positive definite `A`.
fn quadratic_floor(a: &RationalMatrix, l: &[Rat]) -> Result<Rat> {
    let inv = a.inverse()?;
    Ok(-half(inv.quad(l)))
}

/// Every `m >= 0` with `(K m)_i <= u_i` for all `i`.
fn finite_region(k: &RationalMatrix, u: &[Rat]) -> Result<Vec<Vec<i64>>> {
    // K m <= u and m >= 0 give m.K.m <= u.m
    let form = QuadraticExponent { a: k.clone(), lin: u.iter().map(|x| -x).collect(), constant: Rat::zero() };
    let pts = form.nonneg_points(Rat::zero(), &[])?;
    Ok(pts
        .into_iter()
        .filter(|m| k.mul_int_vec(m).iter().zip(u).all(|(x, y)| x <= y))
        .collect())
}

fn evaluate(spec: &UcpfSpec, cutoff: Rat) -> Result<Series> {
    let n = spec.dim();
    let zd = spec.z_dim();
    let images: Vec<(Rat, ZMonomial)> = spec.z.iter().map(|a| a.image(zd)).collect();
    let lin: Vec<Rat> = (0..n).map(|i| spec.q[i] + images[i].0).collect();
    let bounded = if spec.is_finite() {
        let u: Vec<Rat> = spec.u.iter().map(|x| x.unwrap()).collect();
        match finite_region(&spec.k, &u) {
            Ok(pts) => Some(pts),
            Err(Error::NonTerminating(_)) if cutoff < rat(WHOLE) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let points = if let Some(pts) = bounded {
        pts
    } else {
        let form = QuadraticExponent { a: scaled(&spec.k, ratio(1, 2)), lin: lin.clone(), constant: Rat::zero() };
        let caps: Vec<Option<i64>> = vec![None; n];
        form.nonneg_points(cutoff, &caps)?
            .into_iter()
            .filter(|m| {
                let km = spec.k.mul_int_vec(m);
                (0..n).all(|i| spec.u[i].map_or(true, |u| km[i] <= u))
            })
            .collect()
    };
    let exponent = |m: &[i64]| -> Rat {
        let mr: Vec<Rat> = m.iter().copied().map(rat).collect();
        half(spec.k.quad(&mr)) + dot(&lin, &mr)
    };
    let lowest = points.iter().map(|m| exponent(m)).min().unwrap_or_else(Rat::zero).min(Rat::zero());
    let ctx = Ctx::new(zd, cutoff - lowest);
    let mut q_inv = InversePochhammer::q_factorial(ctx);
    let mut acc = ctx.zero();
    for m in points {
        let e = exponent(&m);
        if e > cutoff {
            continue;
        }
        let mut z = ZMonomial::one(zd);
        for i in 0..n {
            z = z.mul(&images[i].1.pow(m[i]));
        }
        let mut t = ctx.monomial(1, e, z);
        let km = spec.k.mul_int_vec(&m);
        for i in 0..n {
            match spec.u[i] {
                Some(u) => {
                    let top = rat(m[i]) - km[i] + u;
                    t = &t * &qbinomial(ctx, top, rat(m[i]));
                }
                None => t = &t * q_inv.get(Bound::Finite(m[i] as u64)),
            }
            if t.is_zero() {
                break;
            }
        }
        acc.add_assign_series(&t);
    }
    Ok(acc.truncate(cutoff))
}

/// `Z(K; Q, u | z)` for finite `u`, up to `cutoff`.
pub fn ucpf_finite(spec: &UcpfSpec, cutoff: Rat) -> Result<Series> {
    if !spec.is_finite() {
        return Err(Error::InvalidArgument("finite evaluation needs every u_i finite".into()));
    }
    evaluate(spec, cutoff)
}

/// The whole polynomial `Z(K; Q, u | z)` for finite `u`.
pub fn ucpf_polynomial(spec: &UcpfSpec) -> Result<Series> {
    ucpf_finite(spec, rat(WHOLE))
}

/// Terms of `Z(K; Q, u | z)` with `0 <= m_i <= caps[i]`, each kept whole.
/// Under [`TopRule::Continued`] the full sum is infinite; when the z
/// assignment is injective on `m` the window is exact on the powers of `z`
/// its own indices produce.
pub fn ucpf_window(spec: &UcpfSpec, caps: &[i64], rule: TopRule) -> Result<Series> {
    let n = spec.dim();
    if !spec.is_finite() {
        return Err(Error::InvalidArgument("window evaluation needs every u_i finite".into()));
    }
    if caps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: caps.len() });
    }
    let zd = spec.z_dim();
    let images: Vec<(Rat, ZMonomial)> = spec.z.iter().map(|a| a.image(zd)).collect();
    let lin: Vec<Rat> = (0..n).map(|i| spec.q[i] + images[i].0).collect();
    let u: Vec<Rat> = spec.u.iter().map(|x| x.unwrap()).collect();
    let mut acc = Series::zero(zd, rat(WHOLE));
    'points: for m in box_points(caps) {
        let km = spec.k.mul_int_vec(&m);
        let mut poly = (0, vec![BigInt::from(1)]);
        for i in 0..n {
            match binom_poly(rat(m[i]) - km[i] + u[i], m[i], rule) {
                Some(g) => poly = poly_mul(&poly, &g),
                None => continue 'points,
            }
        }
        let mr: Vec<Rat> = m.iter().copied().map(rat).collect();
        let mut z = ZMonomial::one(zd);
        for i in 0..n {
            z = z.mul(&images[i].1.pow(m[i]));
        }
        add_poly(&mut acc, half(spec.k.quad(&mr)) + dot(&lin, &mr), &z, &poly);
    }
    Ok(acc)
}

/// `Z_inf(K; Q | z) = sum_m z^m q^{m.K.m/2 + Q.m} / prod_i (q)_{m_i}`.
pub fn ucpf_infinity(k: &RationalMatrix, q: &[Rat], z: &[ZAssign], cutoff: Rat) -> Result<Series> {
    let spec = UcpfSpec::new(k.clone(), q.to_vec(), vec![None; k.dim()], z.to_vec())?;
    evaluate(&spec, cutoff)
}

/// `Q' = -K^{-1} Q` and `z'_i = prod_j z_j^{-K_ij}`.
pub fn dual_transform(k: &RationalMatrix, q: &[Rat]) -> Result<(Vec<Rat>, Vec<ZAssign>)> {
    let ints = k
        .to_integers()
        .ok_or_else(|| Error::InvalidArgument("z' needs an integer matrix".into()))?;
    let inv = k.inverse()?;
    let qp = inv.mul_vec(q).into_iter().map(|x| -x).collect();
    let z = ints.into_iter().map(|row| ZAssign::Laurent(row.into_iter().map(|x| -x).collect())).collect();
    Ok((qp, z))
}

/// Per-sector data entering both sides of the UCPF identities.
struct SectorData {
    /// `z^{-Q} q^{Q.K^{-1}.Q/2 + a.b}`
    prefactor: (Rat, ZMonomial),
    /// `Q + b`, the linear term of the `K` factor.
    qb: Vec<Rat>,
    /// `Q' + a`, the linear term of the `K^{-1}` factor.
    qa: Vec<Rat>,
    q: Vec<Rat>,
}

struct Dual {
    kinv: RationalMatrix,
    zprime: Vec<ZAssign>,
    sectors: Vec<SectorData>,
}

fn dual_data(system: &DurfeeSystem) -> Result<Dual> {
    let k = &system.k;
    let n = system.dim();
    let kinv = k.inverse()?;
    let (_, zprime) = dual_transform(k, &vec![Rat::zero(); n])?;
    let mut sectors = Vec::new();
    for s in &system.sectors {
        let qi = integer_vec(&s.q)
            .ok_or_else(|| Error::InvalidArgument("z^{-Q} needs an integer Q in every sector".into()))?;
        let (qp, _) = dual_transform(k, &s.q)?;
        let e = half(kinv.quad(&s.q)) + dot(&s.a, &s.b);
        sectors.push(SectorData {
            prefactor: (e, ZMonomial::new(qi.iter().map(|x| -x).collect())),
            qb: s.q.iter().zip(&s.b).map(|(x, y)| x + y).collect(),
            qa: qp.iter().zip(&s.a).map(|(x, y)| x + y).collect(),
            q: s.q.clone(),
        });
    }
    Ok(Dual { kinv, zprime, sectors })
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn labels(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

/// Largest q-exponent present in either series.
fn top_degree(a: &Series, b: &Series) -> Rat {
    a.terms().chain(b.terms()).map(|(q, _, _)| *q).max().unwrap_or_else(Rat::zero)
}

fn p_spec(system: &DurfeeSystem, dual: &Dual, k: usize, m: &[Rat]) -> Result<UcpfSpec> {
    let s = &dual.sectors[k];
    let u = sub(m, &s.qb).into_iter().map(Some).collect();
    UcpfSpec::new(system.k.clone(), s.qb.clone(), u, dual.zprime.clone())
}

fn q_spec(system: &DurfeeSystem, dual: &Dual, k: usize, n: &[Rat]) -> Result<UcpfSpec> {
    let s = &dual.sectors[k];
    let u = sub(n, &s.qa).into_iter().map(Some).collect();
    UcpfSpec::new(dual.kinv.clone(), s.qa.clone(), u, tracked_z(system.dim()))
}

/// `P^{(k)}_M = Z(K; Q+b, M-(Q+b) | z')`, zero-extended, as a polynomial.
fn p_family(system: &DurfeeSystem, dual: &Dual, k: usize, m: &[Rat]) -> Result<Series> {
    ucpf_polynomial(&p_spec(system, dual, k, m)?)
}

/// `Q^{(k)}_N = Z(K^{-1}; Q'+a, N-(Q'+a) | z)`, zero-extended.
fn q_family(system: &DurfeeSystem, dual: &Dual, k: usize, n: &[Rat]) -> Result<Series> {
    ucpf_polynomial(&q_spec(system, dual, k, n)?)
}

/// Sector side of the finite product identity at `(M, N)`.
pub fn finite_product_lhs(system: &DurfeeSystem, m: &[u64], n: &[u64]) -> Result<Series> {
    let dim = system.dim();
    let dual = dual_data(system)?;
    let mr: Vec<Rat> = m.iter().map(|&x| rat(x as i64)).collect();
    let nr: Vec<Rat> = n.iter().map(|&x| rat(x as i64)).collect();
    let ctx = Ctx::new(dim, rat(WHOLE));
    let mut acc = ctx.zero();
    for k in 0..system.len() {
        let p = p_family(system, &dual, k, &mr)?;
        if p.is_zero() {
            continue;
        }
        let q = q_family(system, &dual, k, &nr)?;
        let (e, z) = &dual.sectors[k].prefactor;
        acc.add_assign_series(&(&p * &q).shift(*e, z));
    }
    Ok(acc)
}

/// Lattice side of the finite product identity at `(M, N)`:
/// `sum_p z^p q^{p.K^{-1}.p/2} prod_i [M_i+N_i+((1-K^{-1})p)_i; M_i+p_i]`.
pub fn finite_product_rhs(k: &RationalMatrix, m: &[u64], n: &[u64]) -> Result<Series> {
    let dim = k.dim();
    let kinv = k.inverse()?;
    let mr: Vec<Rat> = m.iter().map(|&x| rat(x as i64)).collect();
    let nr: Vec<Rat> = n.iter().map(|&x| rat(x as i64)).collect();
    // with p = t - M, t >= 0: nonzero terms need K^{-1} t <= N + K^{-1} M
    let w: Vec<Rat> = nr.iter().zip(kinv.mul_vec(&mr)).map(|(x, y)| x + y).collect();
    let ctx = Ctx::new(dim, rat(WHOLE));
    let mut acc = ctx.zero();
    for t in finite_region(&kinv, &w)? {
        let p: Vec<i64> = t.iter().zip(m).map(|(x, y)| x - *y as i64).collect();
        let pr: Vec<Rat> = p.iter().copied().map(rat).collect();
        let kp = kinv.mul_vec(&pr);
        let mut term = ctx.monomial(1, half(kinv.quad(&pr)), ZMonomial::new(p.clone()));
        for i in 0..dim {
            let top = mr[i] + nr[i] + pr[i] - kp[i];
            term = &term * &qbinomial(ctx, top, mr[i] + pr[i]);
        }
        acc.add_assign_series(&term);
    }
    Ok(acc)
}

/// Both sides of the finite product identity as whole polynomials. The
/// reported cutoff is the top degree present.
pub fn check_finite_product(system: &DurfeeSystem, m: &[u64], n: &[u64]) -> Result<VerificationReport> {
    let dim = system.dim();
    for len in [m.len(), n.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: len });
        }
    }
    let lhs = finite_product_lhs(system, m, n)?;
    let rhs = finite_product_rhs(&system.k, m, n)?;
    let top = top_degree(&lhs, &rhs);
    Ok(VerificationReport::compare("ucpf-finite", labels(m), top, &lhs, &rhs).with_n(labels(n)))
}

/// `[top; bottom]` for every pair of integers: the continued product for
/// `bottom >= 0`, and `[top; top - bottom]` by symmetry for `bottom < 0`.
fn binom_symmetric(top: Rat, bottom: i64) -> Option<(i64, Vec<BigInt>)> {
    let t = as_integer(&top)?;
    if bottom >= 0 {
        gaussian_continued(t, bottom)
    } else {
        gaussian_continued(t, t - bottom)
    }
}

/// Lowest q-degree of `[top; bottom]` for a binomial that does not vanish:
/// zero for a non-negative top, `bottom*top - bottom(bottom-1)/2` otherwise.
fn lowest_degree(top: Rat, bottom: Rat, negative: bool) -> Rat {
    if negative {
        bottom * top - bottom * (bottom - rat(1)) / rat(2)
    } else {
        Rat::zero()
    }
}

/// Every `m >= 0` whose continued term can reach `budget`, found per sign
/// pattern of the binomial tops: on each pattern the lowest q-degree is an
/// exact quadratic in `m`, so the candidates are the union of its
/// sublevel sets. `None` when some pattern's quadratic is unbounded below.
#[allow(clippy::too_many_arguments)]
fn continued_points(
    k: &RationalMatrix,
    kinv: &RationalMatrix,
    sector: &SectorData,
    p: &[Rat],
    m_box: &[i64],
    n_box: &[i64],
    budget: Rat,
) -> Option<Vec<Vec<i64>>> {
    let dim = k.dim();
    let degree = |pattern: usize, m: &[Rat]| -> Rat {
        let km = k.mul_vec(m);
        let n: Vec<Rat> = (0..dim).map(|i| km[i] + sector.q[i] + p[i]).collect();
        let kn = kinv.mul_vec(&n);
        let mut e = sector.prefactor.0 + half(k.quad(m)) + dot(&sector.qb, m) + half(kinv.quad(&n)) + dot(&sector.qa, &n);
        for i in 0..dim {
            let code = pattern / 4usize.pow(i as u32) % 4;
            let top_m = m[i] - km[i] + rat(m_box[i]) - sector.qb[i];
            let top_n = n[i] - kn[i] + rat(n_box[i]) - sector.qa[i];
            e += lowest_degree(top_m, m[i], code & 1 == 1) + lowest_degree(top_n, n[i], code & 2 == 2);
        }
        e
    };
    let mut out: Vec<Vec<i64>> = Vec::new();
    for pattern in 0..4usize.pow(dim as u32) {
        let g = |v: &[i64]| degree(pattern, &v.iter().copied().map(rat).collect::<Vec<_>>());
        let unit = |i: usize, c: i64| {
            let mut v = vec![0; dim];
            v[i] = c;
            v
        };
        let c0 = g(&vec![0; dim]);
        let mut rows = vec![vec![Rat::zero(); dim]; dim];
        let mut lin = vec![Rat::zero(); dim];
        for i in 0..dim {
            rows[i][i] = (g(&unit(i, 2)) - rat(2) * g(&unit(i, 1)) + c0) / rat(2);
            lin[i] = g(&unit(i, 1)) - rows[i][i] - c0;
            for j in 0..i {
                let mut v = unit(i, 1);
                v[j] = 1;
                let x = (g(&v) - g(&unit(i, 1)) - g(&unit(j, 1)) + c0) / rat(2);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let form = QuadraticExponent { a: RationalMatrix::new(rows).ok()?, lin, constant: c0 };
        out.extend(form.nonneg_points(budget, &[]).ok()?);
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// The finite product identity with [`TopRule::Continued`], compared power
/// of `z` by power of `z` for `-M_i - reach <= p_i <= reach`, up to `cutoff`.
/// Powers whose sector sum cannot be bounded are listed in the notes and
/// left out of the comparison.
pub fn check_finite_product_continued(
    system: &DurfeeSystem,
    m: &[u64],
    n: &[u64],
    reach: i64,
    cutoff: Rat,
) -> Result<VerificationReport> {
    let dim = system.dim();
    for len in [m.len(), n.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: len });
        }
    }
    let k = &system.k;
    let dual = dual_data(system)?;
    for s in &system.sectors {
        check_nonnegative(system, s)?;
    }
    let mi: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    let ni: Vec<i64> = n.iter().map(|&x| x as i64).collect();
    let mut lhs = Series::zero(dim, cutoff);
    let mut rhs = Series::zero(dim, cutoff);
    let mut notes = Vec::new();
    let p_caps: Vec<i64> = mi.iter().map(|&x| x + 2 * reach).collect();
    'window: for t in box_points(&p_caps) {
        let p: Vec<i64> = t.iter().zip(&mi).map(|(x, y)| x - y - reach).collect();
        let pr: Vec<Rat> = p.iter().copied().map(rat).collect();
        let kp = dual.kinv.mul_vec(&pr);
        if kp.iter().any(|x| !x.is_integer()) {
            // every binomial top on both sides is non-integral here
            continue;
        }
        let z = ZMonomial::new(p.clone());
        let base = half(dual.kinv.quad(&pr));
        let mut poly = Some((0, vec![BigInt::from(1)]));
        for i in 0..dim {
            let top = rat(mi[i] + ni[i]) + pr[i] - kp[i];
            poly = poly.and_then(|acc| binom_symmetric(top, mi[i] + p[i]).map(|g| poly_mul(&acc, &g)));
        }
        if let Some(poly) = &poly {
            add_poly(&mut rhs, base, &z, poly);
        }
        let mut part = Series::zero(dim, cutoff);
        for (idx, sector) in system.sectors.iter().enumerate() {
            let sd = &dual.sectors[idx];
            let Some(points) = continued_points(k, &dual.kinv, sd, &pr, &mi, &ni, cutoff) else {
                notes.push(format!("p=({}) skipped: sector {idx} sum is not bounded below", rat_labels(&pr).join(",")));
                continue 'window;
            };
            'points: for mv in points {
                let mr: Vec<Rat> = mv.iter().copied().map(rat).collect();
                let km = k.mul_vec(&mr);
                let nv: Vec<Rat> = (0..dim).map(|i| km[i] + sector.q[i] + pr[i]).collect();
                let Some(nint) = integer_vec(&nv).filter(|v| v.iter().all(|&x| x >= 0)) else { continue };
                let kn = dual.kinv.mul_vec(&nv);
                let mut poly = (0, vec![BigInt::from(1)]);
                for i in 0..dim {
                    let top_m = mr[i] - km[i] + rat(mi[i]) - sd.qb[i];
                    let top_n = nv[i] - kn[i] + rat(ni[i]) - sd.qa[i];
                    for (top, bottom) in [(top_m, mv[i]), (top_n, nint[i])] {
                        match binom_poly(top, bottom, TopRule::Continued) {
                            Some(g) => poly = poly_mul(&poly, &g),
                            None => continue 'points,
                        }
                    }
                }
                let e = sd.prefactor.0
                    + half(k.quad(&mr))
                    + dot(&sd.qb, &mr)
                    + half(dual.kinv.quad(&nv))
                    + dot(&sd.qa, &nv);
                add_poly(&mut part, e, &z, &poly);
            }
        }
        lhs.add_assign_series(&part);
    }
    let mut report = VerificationReport::compare("ucpf-finite-continued", labels(m), cutoff, &lhs, &rhs).with_n(labels(n));
    report.notes = notes;
    Ok(report)
}

/// One instance of a three-term recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionCheck {
    pub family: char,
    pub sector: usize,
    pub direction: usize,
    pub index: Vec<String>,
    pub pass: bool,
    pub witness: Option<Witness>,
}

/// Outcome of [`check_recursions`]: checked instances and the boundary
/// instances that were skipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub checked: Vec<RecursionCheck>,
    pub skipped: Vec<RecursionCheck>,
}

impl RecursionReport {
    pub fn pass(&self) -> bool {
        self.checked.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RecursionCheck> {
        self.checked.iter().filter(|c| !c.pass)
    }
}

fn rat_labels(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

/// Whether the recursion at `index` in direction `i` reaches a negative
/// index: `index - e_i` or `index - step` has a negative entry.
fn at_boundary(index: &[Rat], step: &[Rat], i: usize) -> bool {
    index[i] < rat(1) || index.iter().zip(step).any(|(x, s)| (x - s).is_negative())
}

/// `P_M = P_{M-e_i} + z'_i q^{-K_ii/2 + M_i} P_{M-K e_i}` over `m_grid`
/// and `Q_N = Q_{N-e_i} + z_i q^{-K^{-1}_ii/2 + N_i} Q_{N-K^{-1} e_i}` over
/// `n_grid`, for every sector and direction.
///
/// Zero-extended, the families are polynomials and compared whole; indices
/// whose recursion reaches a negative index are skipped. Continued, each
/// family is summed over `0 <= m_i <= window` and compared on the powers
/// of `z` those `m` produce; nothing is skipped.
pub fn check_recursions(
    system: &DurfeeSystem,
    m_grid: &[Vec<i64>],
    n_grid: &[Vec<i64>],
    rule: TopRule,
    window: i64,
) -> Result<RecursionReport> {
    let dim = system.dim();
    let dual = dual_data(system)?;
    let mut report = RecursionReport { checked: Vec::new(), skipped: Vec::new() };
    let caps = vec![window; dim];
    for (family, grid) in [('P', m_grid), ('Q', n_grid)] {
        let (kk, zs) = match family {
            'P' => (&system.k, dual.zprime.clone()),
            _ => (&dual.kinv, tracked_z(dim)),
        };
        let eval = |k: usize, idx: &[Rat]| -> Result<Series> {
            let spec = match family {
                'P' => p_spec(system, &dual, k, idx)?,
                _ => q_spec(system, &dual, k, idx)?,
            };
            match rule {
                TopRule::ZeroExtended => ucpf_polynomial(&spec),
                TopRule::Continued => ucpf_window(&spec, &caps, rule),
            }
        };
        // the summation index behind a power of z
        let owned = |z: &ZMonomial| -> bool {
            let e: Vec<Rat> = z.exponents().iter().copied().map(rat).collect();
            let m = match family {
                'P' => system.k.inverse().map(|inv| inv.mul_vec(&e).into_iter().map(|x| -x).collect()).unwrap_or_default(),
                _ => e,
            };
            m.iter().all(|x| x.is_integer() && !x.is_negative() && *x <= rat(window))
        };
        for k in 0..system.len() {
            for idx in grid {
                let idx: Vec<Rat> = idx.iter().copied().map(rat).collect();
                for i in 0..dim {
                    let step: Vec<Rat> = kk.row(i).to_vec();
                    let mut check = RecursionCheck {
                        family,
                        sector: k,
                        direction: i,
                        index: rat_labels(&idx),
                        pass: true,
                        witness: None,
                    };
                    if rule == TopRule::ZeroExtended && at_boundary(&idx, &step, i) {
                        report.skipped.push(check);
                        continue;
                    }
                    let mut e_i = vec![Rat::zero(); dim];
                    e_i[i] = rat(1);
                    let (_, zi) = zs[i].image(dim);
                    let shift = -half(kk.get(i, i)) + idx[i];
                    let mut lhs = eval(k, &idx)?;
                    let mut rhs = &eval(k, &sub(&idx, &e_i))? + &eval(k, &sub(&idx, &step))?.shift(shift, &zi);
                    if rule == TopRule::Continued {
                        lhs = lhs.filter_z(&owned);
                        rhs = rhs.filter_z(&owned);
                    }
                    check.witness = lhs.first_discrepancy(&rhs).map(Witness::from);
                    check.pass = check.witness.is_none();
                    report.checked.push(check);
                }
            }
        }
    }
    Ok(report)
}

/// `Z_inf(K;Q) = Z_inf(K;Q+e_i) + z_i q^{K_ii/2 + Q_i} Z_inf(K;Q+K e_i)` for
/// every direction, with `z` tracked.
pub fn check_limit_recursion(k: &RationalMatrix, q: &[Rat], cutoff: Rat) -> Result<Vec<VerificationReport>> {
    let n = k.dim();
    if q.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: q.len() });
    }
    let zs = tracked_z(n);
    let lhs = ucpf_infinity(k, q, &zs, cutoff)?;
    let mut out = Vec::new();
    for i in 0..n {
        let mut qe = q.to_vec();
        qe[i] += rat(1);
        let qk: Vec<Rat> = q.iter().zip(k.row(i)).map(|(x, y)| x + y).collect();
        let a = ucpf_infinity(k, &qe, &zs, cutoff)?;
        let b = ucpf_infinity(k, &qk, &zs, cutoff)?.shift(half(k.get(i, i)) + q[i], &ZMonomial::var(n, i));
        let rhs = (&a + &b).truncate(cutoff);
        let mut r = VerificationReport::compare("ucpf-limit-recursion", rat_labels(q), cutoff, &lhs, &rhs);
        r.notes.push(format!("Q=({}), direction {i}", rat_labels(q).join(",")));
        out.push(r);
    }
    Ok(out)
}

/// A theta-type sum `sum_p z^p q^{p.K^{-1}.p/2}` over `Z^n`, optionally
/// restricted to `p` matching any one of the given congruences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSumSpec {
    pub kinv: RationalMatrix,
    pub restriction: Vec<Congruence>,
}

impl LatticeSumSpec {
    pub fn new(kinv: RationalMatrix) -> Self {
        LatticeSumSpec { kinv, restriction: Vec::new() }
    }

    fn admits(&self, p: &[i64]) -> bool {
        self.restriction.is_empty() || self.restriction.iter().any(|c| c.admits(p))
    }
}

/// Just the theta part, `z` tracked.
pub fn theta_sum(spec: &LatticeSumSpec, cutoff: Rat) -> Result<Series> {
    let n = spec.kinv.dim();
    let ctx = Ctx::new(n, cutoff);
    let mut acc = ctx.zero();
    for p in ellipsoid_points(&spec.kinv, &vec![Rat::zero(); n], rat(2) * cutoff)? {
        if !spec.admits(&p) {
            continue;
        }
        let pr: Vec<Rat> = p.iter().copied().map(rat).collect();
        acc.add_term(half(spec.kinv.quad(&pr)), ZMonomial::new(p), 1.into());
    }
    Ok(acc)
}

/// `(q)_inf^{-n} sum_p z^p q^{p.K^{-1}.p/2}`.
pub fn lattice_sum(spec: &LatticeSumSpec, cutoff: Rat) -> Result<Series> {
    let n = spec.kinv.dim();
    let ctx = Ctx::new(n, cutoff);
    let euler = pochhammer_inf(ctx, &ZMonomial::one(n), rat(1))?.invert()?;
    let mut acc = theta_sum(spec, cutoff)?;
    for _ in 0..n {
        acc = &acc * &euler;
    }
    Ok(acc)
}

/// Sector side of the limiting identity:
/// `sum_k z^{-Q} q^{Q.K^{-1}.Q/2 + a.b} Z_inf(K; Q+b | z') Z_inf(K^{-1}; Q'+a | z)`.
pub fn character_lhs(system: &DurfeeSystem, cutoff: Rat) -> Result<Series> {
    let dim = system.dim();
    let dual = dual_data(system)?;
    if !system.k.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let ctx = Ctx::new(dim, cutoff);
    let mut acc = ctx.zero();
    for s in &dual.sectors {
        let (e, z) = &s.prefactor;
        let low_p = quadratic_floor(&system.k, &s.qb)?.min(Rat::zero());
        let low_q = quadratic_floor(&dual.kinv, &s.qa)?.min(Rat::zero());
        let room = cutoff - e;
        let p = ucpf_infinity(&system.k, &s.qb, &dual.zprime, rat(floor(&(room - low_q)) + 1))?;
        let q = ucpf_infinity(&dual.kinv, &s.qa, &tracked_z(dim), rat(floor(&(room - low_p)) + 1))?;
        acc.add_assign_series(&(&p * &q).shift(*e, z).truncate(cutoff));
    }
    Ok(acc.truncate(cutoff))
}

/// Sector side against [`lattice_sum`] with `K^{-1}`, `z` tracked.
pub fn check_character(system: &DurfeeSystem, cutoff: Rat) -> Result<VerificationReport> {
    let lhs = character_lhs(system, cutoff)?;
    let rhs = lattice_sum(&LatticeSumSpec::new(system.k.inverse()?), cutoff)?;
    Ok(VerificationReport::compare("ucpf-limit", vec!["inf".into(); system.dim()], cutoff, &lhs, &rhs))
}

/// `q^{Q.K^{-1}.Q/2 + a.b}` exponent of each sector.
pub fn sector_prefactor_exponents(system: &DurfeeSystem) -> Result<Vec<Rat>> {
    Ok(dual_data(system)?.sectors.iter().map(|s| s.prefactor.0).collect())
}

/// Level-one data for the affine algebra of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlLevel1 {
    pub k: RationalMatrix,
    pub kinv: RationalMatrix,
    /// `k(n+1-k) / (2(n+1))` for `k = 0..=n`.
    pub dims: Vec<Rat>,
}

impl Serialize for SlLevel1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows = |m: &RationalMatrix| -> Vec<Vec<String>> {
            m.rows().iter().map(|r| r.iter().map(format_rat_full).collect()).collect()
        };
        let mut st = s.serialize_struct("SlLevel1", 3)?;
        st.serialize_field("K", &rows(&self.k))?;
        st.serialize_field("Kinv", &rows(&self.kinv))?;
        st.serialize_field("dims", &self.dims.iter().map(format_rat_full).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `K`, its inverse `(1/(n+1))(n on the diagonal, -1 elsewhere)`, and the
/// conformal dimensions, checked against the sector exponents of the
/// `theorem3.3:n` system.
pub fn sl_level1_data(n: usize) -> Result<SlLevel1> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    let system = crate::catalog::build_theorem33(n)?;
    let np1 = n as i64 + 1;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ratio(n as i64, np1) } else { ratio(-1, np1) }).collect())
        .collect();
    let kinv = RationalMatrix::new(rows)?;
    let dims: Vec<Rat> = (0..=n as i64).map(|k| ratio(k * (np1 - k), 2 * np1)).collect();
    if system.k.inverse()? != kinv {
        return Err(Error::InvalidArgument("inverse does not match the closed form".into()));
    }
    let exps = sector_prefactor_exponents(&system)?;
    if exps != dims {
        return Err(Error::InvalidArgument(format!(
            "sector exponents {:?} differ from the conformal dimensions",
            exps.iter().map(format_rat).collect::<Vec<_>>()
        )));
    }
    Ok(SlLevel1 { k: system.k, kinv, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_theorem31, build_theorem32, build_theorem33};

    fn scalar(x: i64) -> RationalMatrix {
        RationalMatrix::scalar(rat(x))
    }

    #[test]
    fn finite_examples() {
        let spec = UcpfSpec::new(scalar(2), vec![rat(0)], vec![Some(rat(0))], vec![ZAssign::One]).unwrap();
        assert_eq!(ucpf_polynomial(&spec).unwrap().to_string(), "1 q^0/1 z^(0)\n");
        // K = 0, Q = 1, u = M - 1 is the expansion of 1/(zq)_M
        let spec = UcpfSpec::new(scalar(0), vec![rat(1)], vec![Some(rat(2))], tracked_z(1)).unwrap();
        let s = ucpf_finite(&spec, rat(10)).unwrap();
        let want = crate::identities::lhs_product(Ctx::new(1, rat(10)), &[Bound::Finite(3)]);
        assert_eq!(s, want);
        assert!(ucpf_polynomial(&spec).is_err());
    }

    #[test]
    fn limit_rogers_ramanujan() {
        let s = ucpf_infinity(&scalar(2), &[rat(0)], &[ZAssign::One], rat(8)).unwrap();
        let coeffs: Vec<i64> = (0..=8).map(|e| s.coefficient(rat(e), &ZMonomial::one(1)).try_into().unwrap()).collect();
        assert_eq!(coeffs, vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
        let s = ucpf_infinity(&scalar(2), &[rat(0)], &[ZAssign::One], rat(0)).unwrap();
        assert_eq!(s.to_string(), "1 q^0/1 z^(0)\n");
    }

    #[test]
    fn finite_approaches_limit() {
        let k = build_theorem31().k;
        let q = vec![rat(0), rat(1)];
        let big = vec![Some(rat(30)); 2];
        let spec = UcpfSpec::new(k.clone(), q.clone(), big, tracked_z(2)).unwrap();
        assert_eq!(ucpf_finite(&spec, rat(10)).unwrap(), ucpf_infinity(&k, &q, &tracked_z(2), rat(10)).unwrap());
    }

    #[test]
    fn dual_examples() {
        let k = build_theorem32().k;
        let (qp, z) = dual_transform(&k, &[rat(1), rat(1)]).unwrap();
        assert_eq!(qp, vec![ratio(-1, 3), ratio(-1, 3)]);
        assert_eq!(z[0], ZAssign::Laurent(vec![-2, -1]));
        let (qp, _) = dual_transform(&scalar(2), &[rat(1)]).unwrap();
        assert_eq!(qp, vec![ratio(-1, 2)]);
        assert!(dual_transform(&scalar(0), &[rat(0)]).is_err());
    }

    #[test]
    fn finite_identity_small() {
        let r = check_finite_product(&build_theorem32(), &[0, 0], &[0, 0]).unwrap();
        assert!(r.pass, "{r}");
        let r = check_finite_product(&build_theorem33(1).unwrap(), &[3], &[3]).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn continued_identity_level_one() {
        let s = build_theorem33(1).unwrap();
        for (m, n) in [(0, 0), (1, 2), (3, 1)] {
            let r = check_finite_product_continued(&s, &[m], &[n], 2, rat(12)).unwrap();
            assert!(r.pass && r.notes.is_empty(), "{r}");
        }
    }

    #[test]
    fn recursions_small_grid() {
        let grid: Vec<Vec<i64>> = (0..4).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
        let s = build_theorem32();
        let r = check_recursions(&s, &grid, &grid, TopRule::Continued, 3).unwrap();
        assert!(r.pass() && r.skipped.is_empty());
        assert_eq!(r.checked.len(), 2 * 3 * 16 * 2);
        let r = check_recursions(&s, &grid, &grid, TopRule::ZeroExtended, 3).unwrap();
        assert!(!r.skipped.is_empty());
        let one = build_theorem33(1).unwrap();
        let line: Vec<Vec<i64>> = (0..6).map(|x| vec![x]).collect();
        assert!(check_recursions(&one, &line, &line, TopRule::Continued, 5).unwrap().pass());
    }

    #[test]
    fn limit_recursion_and_characters() {
        let s = build_theorem31();
        for sector in &s.sectors {
            for r in check_limit_recursion(&s.k, &sector.q, rat(8)).unwrap() {
                assert!(r.pass, "{r}");
            }
        }
        let sl2 = build_theorem33(1).unwrap();
        assert!(check_character(&sl2, rat(8)).unwrap().pass);
        assert_eq!(sector_prefactor_exponents(&sl2).unwrap(), vec![rat(0), ratio(1, 4)]);
    }

    #[test]
    fn lattice_examples() {
        let spec = LatticeSumSpec::new(RationalMatrix::scalar(ratio(1, 2)));
        let t = theta_sum(&spec, rat(2)).unwrap().at_z_one();
        assert_eq!(t.to_string(), "1 q^0/1 z^()\n2 q^1/4 z^()\n2 q^1/1 z^()\n");
        let t = theta_sum(&spec, rat(3)).unwrap();
        assert_eq!(t.coefficient(ratio(9, 4), &ZMonomial::new(vec![3])), 1.into());
        let mut even = spec.clone();
        even.restriction.push(Congruence { modulus: vec![2], residue: vec![0] });
        assert!(theta_sum(&even, rat(4)).unwrap().terms().all(|(_, z, _)| z.exponents()[0] % 2 == 0));
        let kinv = build_theorem32().k.inverse().unwrap();
        let t = theta_sum(&LatticeSumSpec::new(kinv), rat(1)).unwrap();
        let lowest: Vec<_> = t.terms().filter(|(q, _, _)| **q == ratio(1, 3)).map(|(_, z, _)| z.clone()).collect();
        assert_eq!(lowest.len(), 6);
        assert!(lattice_sum(&LatticeSumSpec::new(RationalMatrix::scalar(rat(-1))), rat(2)).is_err());
    }

    #[test]
    fn sl_data() {
        assert_eq!(sl_level1_data(1).unwrap().dims, vec![rat(0), ratio(1, 4)]);
        assert_eq!(sl_level1_data(2).unwrap().dims, vec![rat(0), ratio(1, 3), ratio(1, 3)]);
        for n in 1..=5 {
            let d = sl_level1_data(n).unwrap();
            let prod = d.k.matmul(&d.kinv);
            assert_eq!(prod, RationalMatrix::identity(n).rows());
        }
    }

    #[test]
    fn json_round_trip() {
        let spec = UcpfSpec::new(
            build_theorem32().k,
            vec![ratio(-1, 3), rat(1)],
            vec![Some(rat(2)), None],
            vec![ZAssign::QPow(ratio(1, 2)), ZAssign::Laurent(vec![1, -1])],
        )
        .unwrap();
        let text = spec.to_json_string();
        assert!(text.contains("\"inf\"") && text.contains("\"q^1/2\"") && text.contains("laurent"));
        assert_eq!(UcpfSpec::from_json_str(&text).unwrap(), spec);
        let one = r#"{"dimension":1,"K":[[2]],"Q":[0],"u":[3],"z":["1"]}"#;
        assert_eq!(UcpfSpec::from_json_str(one).unwrap().z, vec![ZAssign::One]);
        assert!(UcpfSpec::from_json_str(r#"{"dimension":1,"K":[[2]],"Q":[0],"u":[3],"z":["w"]}"#).is_err());
    }
}
