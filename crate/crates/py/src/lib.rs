//! Python bindings for `waring_core`.
//!
//! Ranks come back as Python `int` and ratios as `fractions.Fraction`, so
//! nothing is rounded on the way across.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use waring_core::verify::{self, Claim, GridRange, RatioSubject, Verifier};
use waring_core::{Mode, Natural, Ratio, WaringError};

fn err(e: WaringError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn int(n: Natural) -> BigUint {
    n.into_biguint()
}

fn fraction<'py>(py: Python<'py>, r: &Ratio) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn mode(oracle: bool) -> Mode {
    if oracle {
        Mode::Oracle
    } else {
        Mode::ClosedForm
    }
}

fn grid(range: Option<(u32, u32)>, default: GridRange) -> PyResult<GridRange> {
    match range {
        Some((lo, hi)) => GridRange::new(lo, hi).map_err(err),
        None => Ok(default),
    }
}

/// A monomial stored by its exponents in ascending order.
#[pyclass(name = "Monomial", frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMonomial(waring_core::Monomial);

#[pymethods]
impl PyMonomial {
    #[new]
    #[pyo3(signature = (exponents, n = None))]
    fn new(exponents: Vec<u32>, n: Option<u32>) -> PyResult<Self> {
        let ambient = n.unwrap_or(exponents.len() as u32);
        waring_core::Monomial::canonicalize(&exponents, ambient)
            .map(PyMonomial)
            .map_err(err)
    }

    /// Parses `"1,2,2"`.
    #[staticmethod]
    #[pyo3(signature = (text, n = None))]
    fn parse(text: &str, n: Option<u32>) -> PyResult<Self> {
        waring_core::Monomial::parse(text, n).map(PyMonomial).map_err(err)
    }

    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.0.exponents().to_vec()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.ambient_vars()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn rank(&self) -> BigUint {
        int(self.0.rank())
    }

    fn __repr__(&self) -> String {
        format!("Monomial([{}], n={})", self.0.exponent_string(), self.0.ambient_vars())
    }
}

impl std::fmt::Display for PyMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A sum of monomials in pairwise disjoint variables.
#[pyclass(name = "CoprimeSum", frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyCoprimeSum(waring_core::CoprimeSum);

#[pymethods]
impl PyCoprimeSum {
    #[new]
    #[pyo3(signature = (blocks, n = None))]
    fn new(blocks: Vec<Vec<u32>>, n: Option<u32>) -> PyResult<Self> {
        let ambient = n.unwrap_or(blocks.iter().map(|b| b.len() as u32).sum());
        waring_core::CoprimeSum::from_exponent_blocks(&blocks, ambient)
            .map(PyCoprimeSum)
            .map_err(err)
    }

    /// Parses `"1,2|1,2"`.
    #[staticmethod]
    #[pyo3(signature = (text, n = None))]
    fn parse(text: &str, n: Option<u32>) -> PyResult<Self> {
        waring_core::CoprimeSum::parse(text, n).map(PyCoprimeSum).map_err(err)
    }

    #[getter]
    fn blocks(&self) -> Vec<PyMonomial> {
        self.0.blocks().iter().cloned().map(PyMonomial).collect()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.ambient_vars()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn is_spanning(&self) -> bool {
        self.0.is_spanning()
    }

    fn rank(&self) -> BigUint {
        int(self.0.rank())
    }

    fn __repr__(&self) -> String {
        format!("CoprimeSum.parse({:?}, n={})", self.0.block_string(), self.0.ambient_vars())
    }
}

impl std::fmt::Display for PyCoprimeSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pyfunction]
fn waring_rank(m: &PyMonomial) -> BigUint {
    int(waring_core::waring_rank(&m.0))
}

#[pyfunction]
fn sum_rank(f: &PyCoprimeSum) -> BigUint {
    int(waring_core::sum_rank(&f.0))
}

#[pyfunction]
fn max_rank_monomial(n: u32, d: u32) -> PyResult<PyMonomial> {
    waring_core::max_rank_monomial(n, d).map(PyMonomial).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, d, oracle = false))]
fn r_max(n: u32, d: u32, oracle: bool) -> PyResult<(BigUint, PyMonomial)> {
    let (value, m) = waring_core::r_max_with_witness(n, d, mode(oracle)).map_err(err)?;
    Ok((int(value), PyMonomial(m)))
}

#[pyfunction]
#[pyo3(signature = (n, d, oracle = false, spanning = false))]
fn r_max_star(n: u32, d: u32, oracle: bool, spanning: bool) -> PyResult<(BigUint, PyCoprimeSum)> {
    let (value, f) = if spanning {
        waring_core::coprime_sums::r_max_star_oracle(n, d, true)
    } else {
        waring_core::r_max_star_with_witness(n, d, mode(oracle))
    }
    .map_err(err)?;
    Ok((int(value), PyCoprimeSum(f)))
}

#[pyfunction]
fn greedy_construction(n: u32, d: u32) -> PyResult<PyCoprimeSum> {
    waring_core::greedy_construction(n, d).map(PyCoprimeSum).map_err(err)
}

#[pyfunction]
fn generic_rank(n: u32, d: u32) -> BigUint {
    int(waring_core::generic_rank(n, d))
}

/// Upper bounds keyed by name.
#[pyfunction]
fn upper_bounds(py: Python<'_>, n: u32, d: u32) -> PyResult<Bound<'_, PyDict>> {
    let out = PyDict::new(py);
    for record in waring_core::upper_bounds(n, d) {
        out.set_item(record.kind.as_str(), int(record.value))?;
    }
    Ok(out)
}

#[pyfunction]
fn enumerate_monomials(n: u32, d: u32) -> Vec<PyMonomial> {
    waring_core::enumerate_monomials(n, d).map(PyMonomial).collect()
}

#[pyfunction]
#[pyo3(signature = (n, d, spanning = false))]
fn enumerate_coprime_sums(n: u32, d: u32, spanning: bool) -> Vec<PyCoprimeSum> {
    waring_core::enumerate_coprime_sums(n, d, spanning)
        .map(PyCoprimeSum)
        .collect()
}

/// Checks a claim over a grid and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (claim, n_range = None, d_range = None, threads = 1))]
fn verify_claim<'py>(
    py: Python<'py>,
    claim: &str,
    n_range: Option<(u32, u32)>,
    d_range: Option<(u32, u32)>,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let claim: Claim = claim.parse().map_err(err)?;
    let (dn, dd) = claim.default_grid();
    let (n_range, d_range) = (grid(n_range, dn)?, grid(d_range, dd)?);
    let report = py
        .detach(|| Verifier::new(threads).run(claim, n_range, d_range))
        .map_err(err)?;
    let case = |c: &verify::Case| -> PyResult<Bound<'py, PyDict>> {
        let row = PyDict::new(py);
        row.set_item("n", c.n)?;
        row.set_item("d", c.d)?;
        row.set_item("witness", c.witness.as_ref().map(|w| w.syntax()))?;
        row.set_item("lhs", int(c.lhs.clone()))?;
        row.set_item("rhs", int(c.rhs.clone()))?;
        row.set_item("expected", c.expected)?;
        Ok(row)
    };
    let out = PyDict::new(py);
    out.set_item("claim", claim.id())?;
    out.set_item("status", report.status.as_str())?;
    out.set_item("relation", report.relation.symbol())?;
    out.set_item("checked_count", report.checked_count)?;
    out.set_item(
        "violations",
        report.violations.iter().map(case).collect::<PyResult<Vec<_>>>()?,
    )?;
    out.set_item("expected_exceptions_matched", report.expected_exceptions_matched)?;
    out.set_item("tightest", report.tightest.as_ref().map(case).transpose()?)?;
    Ok(out)
}

/// `(ratio, limit, gap)` for r_max/r_gen (or r_max*/r_gen with `coprime=True`).
#[pyfunction]
#[pyo3(signature = (n, d, coprime = false))]
fn ratio_to_generic<'py>(
    py: Python<'py>,
    n: u32,
    d: u32,
    coprime: bool,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let subject = if coprime {
        RatioSubject::Coprime
    } else {
        RatioSubject::Monomial
    };
    let p = verify::ratio_to_generic(n, d, subject).map_err(err)?;
    Ok((fraction(py, &p.ratio)?, fraction(py, &p.limit)?, fraction(py, &p.gap)?))
}

#[pyfunction]
fn d_limit(py: Python<'_>, n: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &verify::d_limit(n).map_err(err)?)
}

/// `(label, n, d, rank)` for the built-in non-monomial examples.
#[pyfunction]
fn known_examples() -> Vec<(String, u32, u32, BigUint)> {
    waring_core::known_examples()
        .into_iter()
        .map(|e| (e.label, e.n, e.d, int(e.rank)))
        .collect()
}

#[pymodule]
fn waring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMonomial>()?;
    m.add_class::<PyCoprimeSum>()?;
    m.add_function(wrap_pyfunction!(waring_rank, m)?)?;
    m.add_function(wrap_pyfunction!(sum_rank, m)?)?;
    m.add_function(wrap_pyfunction!(max_rank_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(r_max, m)?)?;
    m.add_function(wrap_pyfunction!(r_max_star, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_construction, m)?)?;
    m.add_function(wrap_pyfunction!(generic_rank, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_monomials, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_coprime_sums, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_to_generic, m)?)?;
    m.add_function(wrap_pyfunction!(d_limit, m)?)?;
    m.add_function(wrap_pyfunction!(known_examples, m)?)?;
    Ok(())
}
