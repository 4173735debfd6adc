//! Residual-matching search for Durfee systems, and the coset heuristic
//! for `Q`-vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{default_grid, lhs_product, rhs_sector_sum, verify_finite, SummandForm};
use crate::matrix::RationalMatrix;
use crate::qseries::{Bound, Ctx};
use crate::rational::{as_integer, rat, Rat};
use crate::series::{Series, ZMonomial};
use crate::system::{DurfeeSystem, Sector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest entry allowed in `Q`, `a` and `b`.
    pub bound: i64,
    pub cutoff: Rat,
    pub max_sectors: usize,
    /// Also require the finite box bounds of [`default_grid`] to pass.
    pub check_finite: bool,
    /// Stop after this many candidate placements.
    pub max_nodes: u64,
    /// Sectors taken as given; the search covers what they leave.
    pub seed: Vec<Sector>,
    /// Separate cap on `b`; `None` uses `bound`.
    pub b_bound: Option<i64>,
}

impl SearchOptions {
    pub fn new(bound: i64, cutoff: Rat, max_sectors: usize) -> Self {
        SearchOptions { bound, cutoff, max_sectors, check_finite: true, max_nodes: 2_000_000, seed: Vec::new(), b_bound: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub rejected_at_finite_bounds: u64,
}

/// Either a verified system, or the partial cover that left the highest
/// lowest residual term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { system: DurfeeSystem, stats: SearchStats },
    Exhausted { best_partial: DurfeeSystem, uncovered: Option<(Rat, ZMonomial, BigInt)>, stats: SearchStats },
}

struct Searcher<'a> {
    k: &'a RationalMatrix,
    ctx: Ctx,
    opts: &'a SearchOptions,
    sums: HashMap<Sector, Option<Series>>,
    nodes: u64,
    rejected: u64,
    best: (Rat, Vec<Sector>),
}

fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

impl Searcher<'_> {
    fn sector_sum(&mut self, sector: &Sector) -> Result<Option<Series>> {
        if let Some(s) = self.sums.get(sector) {
            return Ok(s.clone());
        }
        let system = DurfeeSystem::new(self.k.clone(), vec![sector.clone()])?;
        let bounds = vec![Bound::Infinite; self.k.dim()];
        let sum = match rhs_sector_sum(&system, &bounds, self.ctx, SummandForm::Corrected) {
            Ok(s) => Some(s),
            Err(Error::NonTerminating(_)) => None,
            Err(e) => return Err(e),
        };
        self.sums.insert(sector.clone(), sum.clone());
        Ok(sum)
    }

    /// Sectors whose lowest term is `z^a q^{a.(Q+b)}` with the given data.
    fn candidates(&self, q0: Rat, z0: &ZMonomial) -> Vec<Sector> {
        let n = self.k.dim();
        let a = z0.exponents();
        if a.iter().any(|&x| x < 0 || x > self.opts.bound) {
            return Vec::new();
        }
        let vecs = box_vectors(n, self.opts.bound);
        let bvecs = box_vectors(n, self.opts.b_bound.unwrap_or(self.opts.bound).min(self.opts.bound));
        let mut out = Vec::new();
        for q in &vecs {
            for b in &bvecs {
                let w: i64 = (0..n).map(|i| a[i] * (q[i] + b[i])).sum();
                if rat(w) == q0 {
                    out.push(Sector::from_integers(q, a, b));
                }
            }
        }
        out
    }

    fn passes_finite(&mut self, sectors: &[Sector]) -> Result<bool> {
        if !self.opts.check_finite {
            return Ok(true);
        }
        let system = DurfeeSystem::new(self.k.clone(), sectors.to_vec())?;
        for g in default_grid(self.k.dim()) {
            if g.iter().all(|b| b.is_infinite()) {
                continue;
            }
            if !verify_finite(&system, &g, self.opts.cutoff)?.pass {
                self.rejected += 1;
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn go(&mut self, residual: &Series, chosen: &mut Vec<Sector>, limit: usize) -> Result<bool> {
        let lowest = residual.terms().next().map(|(q, z, c)| (*q, z.clone(), c.clone()));
        let Some((q0, z0, _)) = lowest else {
            return self.passes_finite(chosen);
        };
        if q0 > self.best.0 || (q0 == self.best.0 && chosen.len() > self.best.1.len()) {
            self.best = (q0, chosen.clone());
        }
        if chosen.len() >= limit || self.nodes >= self.opts.max_nodes {
            return Ok(false);
        }
        for cand in self.candidates(q0, &z0) {
            if chosen.contains(&cand) {
                continue;
            }
            self.nodes += 1;
            let Some(sum) = self.sector_sum(&cand)? else { continue };
            let next = residual - &sum;
            if next.terms().any(|(_, _, c)| c.is_negative()) {
                continue;
            }
            chosen.push(cand);
            if self.go(&next, chosen, limit)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Iterative-deepening residual matching: repeatedly cover the lowest
/// uncovered term of the left side with a sector whose `m = 0` term is
/// exactly that term, backtracking as soon as a coefficient goes negative.
/// Candidates are tried in order of `(|Q|, Q, |b|, b)`.
pub fn search_system(k: &RationalMatrix, opts: &SearchOptions) -> Result<SearchOutcome> {
    let n = k.dim();
    if (0..n).any(|i| !k.get(i, i).is_positive()) {
        return Err(Error::InvalidArgument("search needs a positive diagonal".into()));
    }
    let ctx = Ctx::new(n, opts.cutoff);
    let lhs = lhs_product(ctx, &vec![Bound::Infinite; n]);
    let mut s = Searcher {
        k,
        ctx,
        opts,
        sums: HashMap::new(),
        nodes: 0,
        rejected: 0,
        best: (rat(-1), Vec::new()),
    };
    let start = if opts.seed.is_empty() {
        lhs.clone()
    } else {
        let seeded = DurfeeSystem::new(k.clone(), opts.seed.clone())?;
        &lhs - &rhs_sector_sum(&seeded, &vec![Bound::Infinite; n], ctx, SummandForm::Corrected)?
    };
    for limit in opts.seed.len().max(1)..=opts.max_sectors {
        let mut chosen = opts.seed.clone();
        if s.go(&start, &mut chosen, limit)? {
            let system = DurfeeSystem::new(k.clone(), chosen)?;
            let check = verify_finite(&system, &vec![Bound::Infinite; n], opts.cutoff)?;
            debug_assert!(check.pass);
            if check.pass {
                let stats = SearchStats { nodes: s.nodes, rejected_at_finite_bounds: s.rejected };
                return Ok(SearchOutcome::Found { system, stats });
            }
        }
        if s.nodes >= opts.max_nodes {
            break;
        }
    }
    let best_partial = DurfeeSystem::new(k.clone(), s.best.1.clone())?;
    let rhs = rhs_sector_sum(&best_partial, &vec![Bound::Infinite; n], ctx, SummandForm::Corrected)?;
    let uncovered = (&lhs - &rhs).terms().next().map(|(q, z, c)| (*q, z.clone(), c.clone()));
    let stats = SearchStats { nodes: s.nodes, rejected_at_finite_bounds: s.rejected };
    Ok(SearchOutcome::Exhausted { best_partial, uncovered, stats })
}

/// `|det K|` representatives of `Z^n / K Z^n`, each the smallest
/// non-negative vector of its class ordered by largest entry, then total,
/// then lexicographically.
pub fn coset_heuristic(k: &RationalMatrix) -> Result<Vec<Vec<i64>>> {
    if !k.is_integer_valued() {
        return Err(Error::InvalidArgument("coset representatives need an integer matrix".into()));
    }
    let det = k.determinant();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let count = as_integer(&det).unwrap().unsigned_abs() as usize;
    let inv = k.inverse()?;
    let n = k.dim();
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for side in 0i64.. {
        let mut shell: Vec<Vec<i64>> =
            box_vectors(n, side).into_iter().filter(|v| v.iter().copied().max().unwrap_or(0) == side).collect();
        if n == 0 {
            shell = vec![Vec::new()];
        }
        for v in shell {
            let same = reps.iter().any(|r| {
                let d: Vec<Rat> = v.iter().zip(r).map(|(x, y)| rat(x - y)).collect();
                inv.mul_vec(&d).iter().all(|x| x.is_integer())
            });
            if !same {
                reps.push(v);
                if reps.len() == count {
                    return Ok(reps);
                }
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_ones_plus_identity, build_theorem33};

    #[test]
    fn cosets() {
        assert_eq!(coset_heuristic(&RationalMatrix::scalar(rat(1))).unwrap(), vec![vec![0]]);
        assert_eq!(coset_heuristic(&RationalMatrix::scalar(rat(2))).unwrap(), vec![vec![0], vec![1]]);
        for n in 1..=3 {
            let mut got = coset_heuristic(&all_ones_plus_identity(n)).unwrap();
            let mut want: Vec<Vec<i64>> = build_theorem33(n)
                .unwrap()
                .sectors
                .iter()
                .map(|s| s.q.iter().map(|x| as_integer(x).unwrap()).collect())
                .collect();
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
        assert!(coset_heuristic(&RationalMatrix::scalar(rat(0))).is_err());
    }

    #[test]
    fn classical_search() {
        let out = search_system(&RationalMatrix::scalar(rat(1)), &SearchOptions::new(1, rat(8), 3)).unwrap();
        match out {
            SearchOutcome::Found { system, .. } => {
                assert_eq!(system.sectors, vec![Sector::from_integers(&[0], &[0], &[0])]);
            }
            other => panic!("{other:?}"),
        }
    }
}
