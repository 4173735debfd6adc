//! Python module `durfee`: series, systems, verification and search.
//!
//! Rationals cross the boundary as strings (`"1/3"`) or ints; reports come
//! back as plain dicts with the same layout as the JSON reports.

use durfee_core::catalog::catalog_system;
use durfee_core::identities::{verify_finite, verify_specialized, verify_symmetric};
use durfee_core::partitions::{count_pm, dissect as dissect_partition, enumerate_partitions, sector_coverage_check, PartCount, Partition};
use durfee_core::qseries::{self, pochhammer, pochhammer_inf};
use durfee_core::rational::{format_rat_full, parse_rat};
use durfee_core::search::{coset_heuristic as cosets, search_system, SearchOptions, SearchOutcome};
use durfee_core::ucpf::{self, UcpfSpec};
use durfee_core::{Ctx, DurfeeSystem, Rat, RationalMatrix, Series, ZMonomial};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(durfee, SearchExhausted, PyException);

fn err(e: durfee_core::Error) -> PyErr {
    match e {
        durfee_core::Error::SearchExhausted(msg) => SearchExhausted::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// `int` or a string such as `"5/2"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    parse_rat(&obj.str()?.to_string()).map_err(err)
}

/// `None`, `"inf"` or a non-negative int.
fn box_bound(obj: &Bound<'_, PyAny>) -> PyResult<qseries::Bound> {
    if obj.is_none() {
        return Ok(qseries::Bound::Infinite);
    }
    obj.str()?.to_string().parse().map_err(err)
}

fn box_bounds(v: &[Bound<'_, PyAny>]) -> PyResult<Vec<qseries::Bound>> {
    v.iter().map(box_bound).collect()
}

fn matrix(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<RationalMatrix> {
    let rows = rows.iter().map(|r| r.iter().map(rational).collect::<PyResult<Vec<_>>>()).collect::<PyResult<_>>()?;
    RationalMatrix::new(rows).map_err(err)
}

fn to_python<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Truncated series in `q` (rational exponents) and `z_1..z_n`.
#[pyclass(name = "Series", module = "durfee", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeries {
    inner: Series,
}

#[pymethods]
impl PySeries {
    /// Parses the canonical text form, one `coef q^a/b z^(..)` term per line.
    #[staticmethod]
    fn parse(text: &str, dim: usize, cutoff: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySeries { inner: Series::parse_canonical(text, dim, rational(cutoff)?).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn cutoff(&self) -> String {
        format_rat_full(&self.inner.cutoff())
    }

    #[pyo3(signature = (q, z = None))]
    fn coefficient(&self, q: &Bound<'_, PyAny>, z: Option<Vec<i64>>) -> PyResult<BigInt> {
        let z = z.map(ZMonomial::new).unwrap_or_else(|| ZMonomial::one(self.inner.dim()));
        Ok(self.inner.coefficient(rational(q)?, &z))
    }

    /// `(q, z, coefficient)` in ascending order.
    fn terms(&self) -> Vec<(String, Vec<i64>, BigInt)> {
        self.inner.terms().map(|(q, z, c)| (format_rat_full(q), z.exponents().to_vec(), c.clone())).collect()
    }

    fn truncate(&self, cutoff: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySeries { inner: self.inner.truncate(rational(cutoff)?) })
    }

    fn at_z_one(&self) -> Self {
        PySeries { inner: self.inner.at_z_one() }
    }

    fn invert(&self) -> PyResult<Self> {
        Ok(PySeries { inner: self.inner.invert().map_err(err)? })
    }

    fn __add__(&self, other: &PySeries) -> PyResult<Self> {
        Ok(PySeries { inner: self.inner.try_add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<Self> {
        Ok(PySeries { inner: self.inner.try_sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        Ok(PySeries { inner: self.inner.try_mul(&other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        PySeries { inner: self.inner.negate() }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series(dim={}, cutoff={}, terms={})", self.inner.dim(), self.cutoff(), self.inner.len())
    }
}

/// A matrix `K` with its sectors `(Q, a, b)`.
#[pyclass(name = "DurfeeSystem", module = "durfee", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySystem {
    inner: DurfeeSystem,
}

#[pymethods]
impl PySystem {
    /// A built-in system such as `"theorem3.3:2"`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PySystem { inner: catalog_system(name).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySystem { inner: DurfeeSystem::from_json_str(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter(K)]
    fn k(&self) -> Vec<Vec<String>> {
        self.inner.k.rows().iter().map(|r| r.iter().map(format_rat_full).collect()).collect()
    }

    /// Sectors as dicts with `Q`, `a`, `b`.
    #[getter]
    fn sectors(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_python(py, &self.inner.to_json().sectors)
    }

    fn without_sector(&self, index: usize) -> PyResult<Self> {
        if index >= self.inner.len() {
            return Err(PyValueError::new_err(format!("no sector {index}")));
        }
        Ok(PySystem { inner: self.inner.without_sector(index).map_err(err)? })
    }

    /// Box bounds are ints, `None` or `"inf"`.
    #[pyo3(signature = (m, cutoff = None))]
    fn verify_finite(&self, py: Python<'_>, m: Vec<Bound<'_, PyAny>>, cutoff: Option<Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let cutoff = cutoff.as_ref().map(rational).transpose()?.unwrap_or(Rat::from_integer(10));
        to_python(py, &verify_finite(&self.inner, &box_bounds(&m)?, cutoff).map_err(err)?)
    }

    fn verify_symmetric(&self, py: Python<'_>, m: Vec<u64>, n: Vec<u64>, p: Vec<i64>) -> PyResult<Py<PyAny>> {
        to_python(py, &verify_symmetric(&self.inner, &m, &n, &p).map_err(err)?)
    }

    #[pyo3(signature = (p, cutoff = None))]
    fn verify_specialized(&self, py: Python<'_>, p: Vec<i64>, cutoff: Option<Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let cutoff = cutoff.as_ref().map(rational).transpose()?.unwrap_or(Rat::from_integer(10));
        to_python(py, &verify_specialized(&self.inner, &p, cutoff).map_err(err)?)
    }

    fn coverage(&self, py: Python<'_>, max_size: u64) -> PyResult<Py<PyAny>> {
        to_python(py, &sector_coverage_check(&self.inner, max_size).map_err(err)?)
    }

    fn check_finite_product(&self, py: Python<'_>, m: Vec<u64>, n: Vec<u64>) -> PyResult<Py<PyAny>> {
        to_python(py, &ucpf::check_finite_product(&self.inner, &m, &n).map_err(err)?)
    }

    fn check_character(&self, py: Python<'_>, cutoff: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_python(py, &ucpf::check_character(&self.inner, rational(cutoff)?).map_err(err)?)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DurfeeSystem(dim={}, sectors={})", self.inner.dim(), self.inner.len())
    }
}

/// Gaussian binomial `[top; bottom]` as a series in `q` alone.
#[pyfunction]
#[pyo3(signature = (top, bottom, cutoff = None))]
fn qbinomial(top: &Bound<'_, PyAny>, bottom: &Bound<'_, PyAny>, cutoff: Option<Bound<'_, PyAny>>) -> PyResult<PySeries> {
    let cutoff = cutoff.as_ref().map(rational).transpose()?.unwrap_or(Rat::from_integer(1 << 20));
    Ok(PySeries { inner: qseries::qbinomial(Ctx::new(0, cutoff), rational(top)?, rational(bottom)?) })
}

/// `(zq; q)_m` in one variable `z`, or `(zq; q)_inf` when `m` is `None`.
#[pyfunction]
#[pyo3(signature = (m, cutoff, track_z = true))]
fn qpochhammer(m: Option<u64>, cutoff: &Bound<'_, PyAny>, track_z: bool) -> PyResult<PySeries> {
    let dim = usize::from(track_z);
    let ctx = Ctx::new(dim, rational(cutoff)?);
    let z = if track_z { ZMonomial::var(1, 0) } else { ZMonomial::one(0) };
    let one = Rat::from_integer(1);
    let inner = match m {
        Some(m) => pochhammer(ctx, &z, one, m),
        None => pochhammer_inf(ctx, &z, one).map_err(err)?,
    };
    Ok(PySeries { inner })
}

/// Partitions of `n`, optionally with exactly `parts` parts, each at most `max_part`.
#[pyfunction]
#[pyo3(signature = (n, parts = None, max_part = None))]
fn partitions(n: u64, parts: Option<usize>, max_part: Option<u64>) -> Vec<Vec<u64>> {
    let count = parts.map_or(PartCount::Any, PartCount::Exactly);
    enumerate_partitions(n, count, max_part).into_iter().map(|p| p.parts().to_vec()).collect()
}

/// Partitions of `n` into exactly `m` parts, each at most `bound`.
#[pyfunction]
fn count_partitions(bound: u64, m: u64, n: u64) -> BigInt {
    count_pm(bound, m, n)
}

/// Durfee square (default) or the largest `base:height` rectangle.
#[pyfunction]
#[pyo3(signature = (parts, base = 1, height = 1))]
fn dissect(py: Python<'_>, parts: Vec<u64>, base: u64, height: u64) -> PyResult<Py<PyAny>> {
    let p = Partition::new(parts).map_err(err)?;
    let d = dissect_partition(&p, base, height).map_err(err)?;
    let out = to_python(py, &d)?;
    out.bind(py).set_item("diagram", d.render())?;
    Ok(out)
}

/// Searches for a system for `K`; raises `SearchExhausted` when none is found.
#[pyfunction]
#[pyo3(signature = (k, bound = 1, cutoff = None, max_sectors = 4))]
fn search(k: Vec<Vec<Bound<'_, PyAny>>>, bound: i64, cutoff: Option<Bound<'_, PyAny>>, max_sectors: usize) -> PyResult<PySystem> {
    let cutoff = cutoff.as_ref().map(rational).transpose()?.unwrap_or(Rat::from_integer(10));
    match search_system(&matrix(k)?, &SearchOptions::new(bound, cutoff, max_sectors)).map_err(err)? {
        SearchOutcome::Found { system, .. } => Ok(PySystem { inner: system }),
        SearchOutcome::Exhausted { best_partial, .. } => Err(SearchExhausted::new_err(format!(
            "no system within bound {bound} and {max_sectors} sectors (best partial: {} sectors)",
            best_partial.len()
        ))),
    }
}

#[pyfunction]
fn coset_heuristic(k: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<Vec<i64>>> {
    cosets(&matrix(k)?).map_err(err)
}

/// Evaluates a UCPF spec given as JSON text.
#[pyfunction]
fn ucpf_eval(spec_json: &str, cutoff: &Bound<'_, PyAny>) -> PyResult<PySeries> {
    let spec = UcpfSpec::from_json_str(spec_json).map_err(err)?;
    let cutoff = rational(cutoff)?;
    let inner = if spec.u.iter().all(Option::is_none) {
        ucpf::ucpf_infinity(&spec.k, &spec.q, &spec.z, cutoff)
    } else {
        ucpf::ucpf_finite(&spec, cutoff)
    }
    .map_err(err)?;
    Ok(PySeries { inner })
}

/// `K`, `K^-1` and the conformal dimensions of the level-one sl(n+1) sectors.
#[pyfunction]
fn sl_level1(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    to_python(py, &ucpf::sl_level1_data(n).map_err(err)?)
}

#[pymodule]
fn durfee(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PySystem>()?;
    m.add("SearchExhausted", m.py().get_type::<SearchExhausted>())?;
    m.add_function(wrap_pyfunction!(qbinomial, m)?)?;
    m.add_function(wrap_pyfunction!(qpochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(count_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(dissect, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(coset_heuristic, m)?)?;
    m.add_function(wrap_pyfunction!(ucpf_eval, m)?)?;
    m.add_function(wrap_pyfunction!(sl_level1, m)?)?;
    Ok(())
}
