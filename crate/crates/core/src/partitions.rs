//! Partitions, multipartitions, Durfee rectangles and the combinatorial
//! coverage check of a Durfee system.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qseries::{pochhammer, Ctx};
use crate::rational::rat;
use crate::series::{Series, ZMonomial};
use crate::system::{integer_vec, DurfeeSystem};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts {parts:?} are not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Number of parts (rows).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part (columns).
    pub fn width(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.width();
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u64).collect())
    }

    /// Side of the largest square fitting in the diagram.
    pub fn durfee_square(&self) -> u64 {
        self.0.iter().enumerate().take_while(|(i, &p)| p > *i as u64).count() as u64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("partition `{s}` must look like [6,4,4,2]")))?;
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A partition split into a top-left rectangle and the pieces to its right
/// and below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dissection {
    pub partition: Partition,
    pub rows: u64,
    pub cols: u64,
    pub right: Partition,
    pub below: Partition,
}

/// Cuts out the largest `t*base` wide, `t*height` tall rectangle that fits.
/// `base = height = 1` gives the Durfee square.
pub fn dissect(p: &Partition, base: u64, height: u64) -> Result<Dissection> {
    if base == 0 || height == 0 {
        return Err(Error::InvalidArgument(format!("rectangle ratio {base}:{height} needs positive sides")));
    }
    let fits = |t: u64| t == 0 || p.0.get((t * height - 1) as usize).is_some_and(|&row| row >= t * base);
    let t = (0..).take_while(|&t| fits(t)).last().unwrap_or(0);
    let (rows, cols) = (t * height, t * base);
    let right = p.0[..rows as usize].iter().map(|x| x - cols).filter(|&x| x > 0).collect();
    let below = p.0[rows as usize..].to_vec();
    Ok(Dissection { partition: p.clone(), rows, cols, right: Partition(right), below: Partition(below) })
}

impl Dissection {
    /// Young diagram with `#` for rectangle cells and `.` for the rest.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, &len) in self.partition.0.iter().enumerate() {
            for j in 0..len {
                out.push(if (i as u64) < self.rows && j < self.cols { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// An n-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multipartition(pub Vec<Partition>);

impl Multipartition {
    pub fn size(&self) -> u64 {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

// Smaller total size first, then component-wise.
impl Ord for Multipartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Multipartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(Partition::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("multipartition `{s}` must look like ([2,1],[3])")))?;
        let mut parts = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let end = rest.find(']').ok_or_else(|| Error::Parse(format!("unclosed `[` in `{s}`")))?;
            parts.push(rest[..=end].parse()?);
            rest = rest[end + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        Ok(Multipartition(parts))
    }
}

/// Restriction on the number of parts in [`enumerate_partitions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartCount {
    Any,
    AtMost(usize),
    Exactly(usize),
}

/// Partitions of `size` subject to the part-count and part-size limits, in
/// increasing lexicographic order.
pub fn enumerate_partitions(size: u64, count: PartCount, max_part: Option<u64>) -> Vec<Partition> {
    let max_len = match count {
        PartCount::Any => usize::MAX,
        PartCount::AtMost(k) | PartCount::Exactly(k) => k,
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(size, max_part.unwrap_or(size).min(size), max_len, &mut cur, &mut out);
    if let PartCount::Exactly(k) = count {
        out.retain(|p: &Vec<u64>| p.len() == k);
    }
    let mut out: Vec<Partition> = out.into_iter().map(Partition).collect();
    out.sort();
    out
}

fn gen_partitions(rem: u64, max_part: u64, max_len: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rem == 0 {
        out.push(cur.clone());
        return;
    }
    if max_len == 0 || max_part == 0 || rem > max_part.saturating_mul(max_len as u64) {
        return;
    }
    for p in (1..=max_part.min(rem)).rev() {
        cur.push(p);
        gen_partitions(rem - p, p, max_len - 1, cur, out);
        cur.pop();
    }
}

/// Number of partitions of `n` into exactly `m` parts, each at most `bound`.
pub fn count_pm(bound: u64, m: u64, n: u64) -> BigInt {
    let mut memo = HashMap::new();
    count_rec(n, m, bound, &mut memo)
}

fn count_rec(n: u64, m: u64, bound: u64, memo: &mut HashMap<(u64, u64, u64), BigInt>) -> BigInt {
    if m == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if n < m || bound == 0 || n > m * bound {
        return BigInt::zero();
    }
    if let Some(v) = memo.get(&(n, m, bound)) {
        return v.clone();
    }
    // the largest part is j; the remaining m-1 parts are at most j
    let mut total = BigInt::zero();
    for j in 1..=bound.min(n) {
        total += count_rec(n - j, m - 1, j, memo);
    }
    memo.insert((n, m, bound), total.clone());
    total
}

/// Shape data of one component in a sector: an `(n+b) x (m+a)` rectangle,
/// with up to `n` rows attached to its right and parts at most `m` below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SectorCell {
    pub m: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

impl SectorCell {
    pub fn rect_rows(&self) -> u64 {
        self.n + self.b
    }

    pub fn rect_cols(&self) -> u64 {
        self.m + self.a
    }
}

/// Glues the rectangle of `cell` with its two attachments.
pub fn compose_cell(cell: SectorCell, right: &Partition, below: &Partition) -> Result<Partition> {
    if right.len() as u64 > cell.n {
        return Err(Error::InvalidArgument(format!(
            "right attachment {right} has more than {} rows",
            cell.n
        )));
    }
    if below.width() > cell.m {
        return Err(Error::InvalidArgument(format!("below attachment {below} has a part above {}", cell.m)));
    }
    let w = cell.rect_cols();
    let mut parts: Vec<u64> = (0..cell.rect_rows() as usize)
        .map(|i| w + right.parts().get(i).copied().unwrap_or(0))
        .collect();
    parts.extend_from_slice(below.parts());
    Partition::new(parts)
}

/// `q^{(m+a)(n+b)} / ((q)_m (q)_n)`, or with `track_columns` (and `ctx.dim == 1`)
/// `z^{m+a} q^{(m+a)(n+b)} / ((q)_m (zq)_n)` where `z` counts the rectangle
/// width plus the longest right-attachment row.
pub fn cell_generating_function(ctx: Ctx, cell: SectorCell, track_columns: bool) -> Result<Series> {
    if track_columns && ctx.dim != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: ctx.dim });
    }
    let one = ZMonomial::one(ctx.dim);
    let z = if track_columns { ZMonomial::var(1, 0) } else { one.clone() };
    let weight = rat((cell.rect_cols() * cell.rect_rows()) as i64);
    let lead = ctx.monomial(1, weight, z.pow(cell.rect_cols() as i64));
    let den = &pochhammer(ctx, &one, rat(1), cell.m) * &pochhammer(ctx, &z, rat(1), cell.n);
    Ok(&lead * &den.invert()?)
}

/// Where a produced multipartition came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSource {
    pub sector: usize,
    pub m: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub multipartition: Multipartition,
    pub sources: Vec<CellSource>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeCount {
    pub size: u64,
    pub produced: u64,
    pub expected: u64,
}

/// Result of [`sector_coverage_check`]; witness lists are capped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub dimension: usize,
    pub max_size: u64,
    pub pass: bool,
    pub overlap_count: u64,
    pub gap_count: u64,
    pub overlaps: Vec<Overlap>,
    pub gaps: Vec<Multipartition>,
    pub counts: Vec<SizeCount>,
}

pub const MAX_WITNESSES: usize = 10;

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "coverage up to size {}: {} ({} overlaps, {} gaps)",
            self.max_size,
            if self.pass { "pass" } else { "FAIL" },
            self.overlap_count,
            self.gap_count
        )?;
        for c in &self.counts {
            writeln!(f, "  size {:>3}: produced {:>6}  expected {:>6}", c.size, c.produced, c.expected)?;
        }
        for o in &self.overlaps {
            let src: Vec<String> =
                o.sources.iter().map(|s| format!("sector {} m={:?}", s.sector, s.m)).collect();
            writeln!(f, "  overlap {} from {}", o.multipartition, src.join("; "))?;
        }
        for g in &self.gaps {
            writeln!(f, "  gap {g}")?;
        }
        Ok(())
    }
}

/// Partitions of every size up to `max`, filtered by part count and part size.
fn partitions_up_to(max: u64, max_len: Option<usize>, max_part: Option<u64>) -> Vec<Partition> {
    let count = max_len.map_or(PartCount::Any, PartCount::AtMost);
    (0..=max).flat_map(|s| enumerate_partitions(s, count, max_part)).collect()
}

/// Enumerates every multipartition produced by the system's sectors with
/// total size at most `max_size`, and reports overlaps and gaps against the
/// full set of multipartitions.
pub fn sector_coverage_check(system: &DurfeeSystem, max_size: u64) -> Result<CoverageReport> {
    if !system.is_integral() {
        return Err(Error::InvalidArgument("coverage needs non-negative integer sector data".into()));
    }
    let dim = system.dim();
    let cutoff = rat(max_size as i64);
    let per_sector: Vec<Vec<(Multipartition, CellSource)>> = (0..system.len())
        .into_par_iter()
        .map(|idx| -> Result<Vec<(Multipartition, CellSource)>> {
            let sector = &system.sectors[idx];
            let a = integer_vec(&sector.a).unwrap();
            let b = integer_vec(&sector.b).unwrap();
            let mut found = Vec::new();
            for pt in system.sector_points(idx, &vec![rat(0); dim], cutoff, &[])? {
                let cells: Vec<SectorCell> = (0..dim)
                    .map(|i| SectorCell { m: pt.m[i] as u64, n: pt.n[i] as u64, a: a[i] as u64, b: b[i] as u64 })
                    .collect();
                let rect: u64 = cells.iter().map(|c| c.rect_cols() * c.rect_rows()).sum();
                let mut cur = Vec::with_capacity(dim);
                attach(&cells, max_size - rect, &mut cur, &mut |mp| {
                    found.push((mp, CellSource { sector: idx, m: pt.m.clone() }))
                })?;
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;

    let mut produced: BTreeMap<Multipartition, Vec<CellSource>> = BTreeMap::new();
    for (mp, src) in per_sector.into_iter().flatten() {
        produced.entry(mp).or_default().push(src);
    }
    let mut overlaps = Vec::new();
    let mut overlap_count = 0;
    for (mp, srcs) in &produced {
        if srcs.len() > 1 {
            overlap_count += 1;
            if overlaps.len() < MAX_WITNESSES {
                overlaps.push(Overlap { multipartition: mp.clone(), sources: srcs.clone() });
            }
        }
    }
    let mut gaps = Vec::new();
    let mut gap_count = 0;
    let mut expected = vec![0u64; max_size as usize + 1];
    let mut produced_by_size = vec![0u64; max_size as usize + 1];
    for (mp, srcs) in &produced {
        produced_by_size[mp.size() as usize] += srcs.len() as u64;
    }
    let all = partitions_up_to(max_size, None, None);
    let mut cur = Vec::with_capacity(dim);
    all_multipartitions(&all, dim, max_size, &mut cur, &mut |mp| {
        expected[mp.size() as usize] += 1;
        if !produced.contains_key(&mp) {
            gap_count += 1;
            gaps.push(mp);
        }
    });
    gaps.sort();
    gaps.truncate(MAX_WITNESSES);
    let counts = (0..=max_size)
        .map(|s| SizeCount { size: s, produced: produced_by_size[s as usize], expected: expected[s as usize] })
        .collect();
    Ok(CoverageReport {
        dimension: dim,
        max_size,
        pass: overlap_count == 0 && gap_count == 0,
        overlap_count,
        gap_count,
        overlaps,
        gaps,
        counts,
    })
}

fn attach(
    cells: &[SectorCell],
    budget: u64,
    cur: &mut Vec<Partition>,
    emit: &mut dyn FnMut(Multipartition),
) -> Result<()> {
    let i = cur.len();
    if i == cells.len() {
        emit(Multipartition(cur.clone()));
        return Ok(());
    }
    let cell = cells[i];
    for right in partitions_up_to(budget, Some(cell.n as usize), None) {
        let left = budget - right.size();
        for below in partitions_up_to(left, None, Some(cell.m)) {
            cur.push(compose_cell(cell, &right, &below)?);
            attach(cells, left - below.size(), cur, emit)?;
            cur.pop();
        }
    }
    Ok(())
}

fn all_multipartitions(
    all: &[Partition],
    dim: usize,
    budget: u64,
    cur: &mut Vec<Partition>,
    emit: &mut dyn FnMut(Multipartition),
) {
    if cur.len() == dim {
        emit(Multipartition(cur.clone()));
        return;
    }
    for p in all.iter().filter(|p| p.size() <= budget) {
        cur.push(p.clone());
        all_multipartitions(all, dim, budget - p.size(), cur, emit);
        cur.pop();
    }
}
