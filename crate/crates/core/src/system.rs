//! Durfee systems: a symmetric matrix plus a list of sectors `(Q, a, b)`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::QuadraticExponent;
use crate::matrix::RationalMatrix;
use crate::rational::{as_integer, dot, format_rat, parse_rat, rat, Rat};

/// Restricts a sector's summation to `m_i = residue_i (mod modulus_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub modulus: Vec<i64>,
    pub residue: Vec<i64>,
}

impl Congruence {
    pub fn admits(&self, m: &[i64]) -> bool {
        m.iter()
            .zip(self.modulus.iter().zip(&self.residue))
            .all(|(&x, (&md, &r))| md <= 1 || (x - r).rem_euclid(md) == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub q: Vec<Rat>,
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    /// Extra summation restriction; only needed for rational `K` whose
    /// integrality filter alone admits too many `m`.
    pub restriction: Option<Congruence>,
}

impl Sector {
    pub fn new(q: Vec<Rat>, a: Vec<Rat>, b: Vec<Rat>) -> Self {
        Sector { q, a, b, restriction: None }
    }

    pub fn from_integers(q: &[i64], a: &[i64], b: &[i64]) -> Self {
        let v = |x: &[i64]| x.iter().copied().map(rat).collect();
        Sector::new(v(q), v(a), v(b))
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// All entries are non-negative integers.
    pub fn is_integral(&self) -> bool {
        [&self.q, &self.a, &self.b]
            .iter()
            .all(|v| v.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    pub fn permuted(&self, perm: &[usize]) -> Sector {
        let p = |v: &[Rat]| perm.iter().map(|&i| v[i]).collect();
        Sector {
            q: p(&self.q),
            a: p(&self.a),
            b: p(&self.b),
            restriction: self.restriction.as_ref().map(|c| Congruence {
                modulus: perm.iter().map(|&i| c.modulus[i]).collect(),
                residue: perm.iter().map(|&i| c.residue[i]).collect(),
            }),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: &[Rat]| x.iter().map(format_rat).collect::<Vec<_>>().join(",");
        write!(f, "Q=({}) a=({}) b=({})", v(&self.q), v(&self.a), v(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DurfeeSystem {
    pub k: RationalMatrix,
    pub sectors: Vec<Sector>,
}

impl DurfeeSystem {
    pub fn new(k: RationalMatrix, sectors: Vec<Sector>) -> Result<Self> {
        let n = k.dim();
        for s in &sectors {
            for v in [&s.q, &s.a, &s.b] {
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                }
            }
            if let Some(c) = &s.restriction {
                if c.modulus.len() != n || c.residue.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: c.modulus.len() });
                }
            }
        }
        Ok(DurfeeSystem { k, sectors })
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// Number of sectors `L`.
    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.k.is_integer_valued() && self.sectors.iter().all(Sector::is_integral)
    }

    pub fn without_sector(&self, index: usize) -> Result<Self> {
        if index >= self.sectors.len() {
            return Err(Error::InvalidArgument(format!(
                "sector index {index} out of range (length {})",
                self.sectors.len()
            )));
        }
        let mut sectors = self.sectors.clone();
        sectors.remove(index);
        Ok(DurfeeSystem { k: self.k.clone(), sectors })
    }

    /// Relabels coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        DurfeeSystem {
            k: self.k.permuted(perm),
            sectors: self.sectors.iter().map(|s| s.permuted(perm)).collect(),
        }
    }

    /// Every `m` in the box `0 <= m_i <= caps[i]` for which
    /// `n = K m + Q + shift` is a non-negative integer vector.
    pub fn sector_points_in_box(&self, index: usize, shift: &[Rat], caps: &[i64]) -> Result<Vec<SectorPoint>> {
        let s = &self.sectors[index];
        let n = self.dim();
        if shift.len() != n || caps.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: shift.len().min(caps.len()) });
        }
        let qs: Vec<Rat> = s.q.iter().zip(shift).map(|(x, y)| x + y).collect();
        let qb: Vec<Rat> = qs.iter().zip(&s.b).map(|(x, y)| x + y).collect();
        let mut out = Vec::new();
        let mut m = vec![0i64; n];
        if caps.iter().any(|&c| c < 0) {
            return Ok(out);
        }
        loop {
            if !s.restriction.as_ref().is_some_and(|c| !c.admits(&m)) {
                let km = self.k.mul_int_vec(&m);
                let nv: Option<Vec<i64>> = km.iter().zip(&qs).map(|(x, y)| as_integer(&(x + y))).collect();
                if let Some(nv) = nv.filter(|v| v.iter().all(|&x| x >= 0)) {
                    let ma: Vec<Rat> = m.iter().zip(&s.a).map(|(x, y)| rat(*x) + y).collect();
                    let nb: Vec<Rat> = km.iter().zip(&qb).map(|(x, y)| x + y).collect();
                    out.push(SectorPoint { weight: dot(&ma, &nb), m: m.clone(), n: nv });
                }
            }
            let mut i = 0;
            while i < n && m[i] == caps[i] {
                m[i] = 0;
                i += 1;
            }
            if i == n {
                return Ok(out);
            }
            m[i] += 1;
        }
    }

    /// Summation points of one sector: every `m >= 0` admitted by the
    /// sector's restriction with `n = K m + Q + shift` a non-negative integer
    /// vector and weight `(m + a).(n + b)` at most `cutoff`. `caps` bounds
    /// individual `m_i` (empty for none).
    pub fn sector_points(&self, index: usize, shift: &[Rat], cutoff: Rat, caps: &[Option<i64>]) -> Result<Vec<SectorPoint>> {
        let s = &self.sectors[index];
        let n = self.dim();
        if shift.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: shift.len() });
        }
        let qs: Vec<Rat> = s.q.iter().zip(shift).map(|(x, y)| x + y).collect();
        let qb: Vec<Rat> = qs.iter().zip(&s.b).map(|(x, y)| x + y).collect();
        let ka = self.k.mul_vec(&s.a);
        let form = QuadraticExponent {
            a: self.k.clone(),
            lin: qb.iter().zip(&ka).map(|(x, y)| x + y).collect(),
            constant: dot(&s.a, &qb),
        };
        let mut out = Vec::new();
        for m in form.nonneg_points(cutoff, caps)? {
            if s.restriction.as_ref().is_some_and(|c| !c.admits(&m)) {
                continue;
            }
            let km = self.k.mul_int_vec(&m);
            let Some(nv) = km.iter().zip(&qs).map(|(x, y)| as_integer(&(x + y))).collect::<Option<Vec<i64>>>()
            else {
                continue;
            };
            if nv.iter().any(|&x| x < 0) {
                continue;
            }
            let weight = form.eval(&m);
            out.push(SectorPoint { m, n: nv, weight });
        }
        Ok(out)
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            dimension: self.dim(),
            k: self.k.rows().iter().map(|r| r.iter().map(RatJson::from).collect()).collect(),
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorJson {
                    q: s.q.iter().map(RatJson::from).collect(),
                    a: s.a.iter().map(RatJson::from).collect(),
                    b: s.b.iter().map(RatJson::from).collect(),
                    m_mod: s.restriction.as_ref().map(|c| c.modulus.clone()),
                    m_res: s.restriction.as_ref().map(|c| c.residue.clone()),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SystemJson) -> Result<Self> {
        let rows = json
            .k
            .iter()
            .map(|r| r.iter().map(RatJson::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let k = RationalMatrix::new(rows)?;
        if k.dim() != json.dimension {
            return Err(Error::DimensionMismatch { expected: json.dimension, found: k.dim() });
        }
        let vec = |v: &[RatJson]| v.iter().map(RatJson::value).collect::<Result<Vec<_>>>();
        let sectors = json
            .sectors
            .iter()
            .map(|s| {
                let restriction = match (&s.m_mod, &s.m_res) {
                    (Some(modulus), Some(residue)) => {
                        Some(Congruence { modulus: modulus.clone(), residue: residue.clone() })
                    }
                    (None, None) => None,
                    _ => return Err(Error::Parse("`m_mod` and `m_res` must appear together".into())),
                };
                Ok(Sector { q: vec(&s.q)?, a: vec(&s.a)?, b: vec(&s.b)?, restriction })
            })
            .collect::<Result<Vec<_>>>()?;
        DurfeeSystem::new(k, sectors)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("system serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SystemJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl fmt::Display for DurfeeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K = {}  (length {})", self.k, self.len())?;
        for (i, s) in self.sectors.iter().enumerate() {
            writeln!(f, "  sector {i}: {s}")?;
        }
        Ok(())
    }
}

/// One admissible `m` of a sector together with its `n` and q-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorPoint {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub weight: Rat,
}

/// A rational in JSON: a plain integer, or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn value(&self) -> Result<Rat> {
        match self {
            RatJson::Int(i) => Ok(rat(*i)),
            RatJson::Str(s) => parse_rat(s),
        }
    }
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        match as_integer(r) {
            Some(i) => RatJson::Int(i),
            None => RatJson::Str(format_rat(r)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorJson {
    #[serde(rename = "Q")]
    pub q: Vec<RatJson>,
    pub a: Vec<RatJson>,
    pub b: Vec<RatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_mod: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_res: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub dimension: usize,
    #[serde(rename = "K")]
    pub k: Vec<Vec<RatJson>>,
    pub sectors: Vec<SectorJson>,
}

/// Integer vector view of a rational vector, if every entry is integral.
pub fn integer_vec(v: &[Rat]) -> Option<Vec<i64>> {
    v.iter().map(as_integer).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sample() -> DurfeeSystem {
        DurfeeSystem::new(
            RationalMatrix::from_integers(&[vec![1, 1], vec![1, 2]]).unwrap(),
            vec![Sector::from_integers(&[0, 0], &[0, 0], &[0, 0]), Sector::from_integers(&[0, 1], &[0, 1], &[1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let s = sample();
        let text = s.to_json_string();
        assert_eq!(DurfeeSystem::from_json_str(&text).unwrap(), s);
    }

    #[test]
    fn json_accepts_rational_strings() {
        let text = r#"{"dimension":1,"K":[["3/2"]],"sectors":[{"Q":["-1/2"],"a":[1],"b":[0],"m_mod":[2],"m_res":[1]}]}"#;
        let s = DurfeeSystem::from_json_str(text).unwrap();
        assert_eq!(s.k.get(0, 0), ratio(3, 2));
        assert_eq!(s.sectors[0].q[0], ratio(-1, 2));
        assert!(s.sectors[0].restriction.as_ref().unwrap().admits(&[3]));
        assert!(!s.sectors[0].restriction.as_ref().unwrap().admits(&[2]));
        assert_eq!(DurfeeSystem::from_json_str(&s.to_json_string()).unwrap(), s);
    }

    #[test]
    fn json_rejects_bad_dimensions() {
        let text = r#"{"dimension":2,"K":[[1]],"sectors":[]}"#;
        assert!(DurfeeSystem::from_json_str(text).is_err());
        let text = r#"{"dimension":1,"K":[[1]],"sectors":[{"Q":[0,0],"a":[0],"b":[0]}]}"#;
        assert!(DurfeeSystem::from_json_str(text).is_err());
    }

    #[test]
    fn sector_removal_and_permutation() {
        let s = sample();
        assert_eq!(s.without_sector(1).unwrap().len(), 1);
        assert!(s.without_sector(2).is_err());
        let p = s.permuted(&[1, 0]);
        assert_eq!(p.k, RationalMatrix::from_integers(&[vec![2, 1], vec![1, 1]]).unwrap());
        assert_eq!(p.sectors[1], Sector::from_integers(&[1, 0], &[1, 0], &[0, 1]));
    }
}
