//! Python bindings: families, prefix checks, shift-pair search, matching and
//! the scripted experiments. Rationals cross the boundary as `"p/q"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use enumorder_core::cli::resolve;
use enumorder_core::coorder::{
    self, CoorderVerdict, Fuel, MatchFailure, MatchOutcome, WitnessPair,
};
use enumorder_core::experiments::{self, ReproReport};
use enumorder_core::ordertype::{self, Type2Verdict};
use enumorder_core::rational::Rational;
use enumorder_core::seqlang;
use enumorder_core::sequences::{Cardinality, SetSpec};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rationals(values: &[String]) -> PyResult<Vec<Rational>> {
    values.iter().map(|v| v.parse().map_err(err)).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

/// A set of rationals with its canonical listing.
#[pyclass(module = "enumorder", frozen)]
struct Family {
    spec: SetSpec,
}

#[pymethods]
impl Family {
    /// Resolves a reference such as `"A:3"`, `"interval:0,1"` or `"harmonic+shift=2"`.
    #[new]
    fn new(reference: &str) -> PyResult<Self> {
        Ok(Family {
            spec: resolve(reference).map_err(err)?,
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.spec.label().to_string()
    }

    /// Order type descriptor, or `None` when unknown.
    #[getter]
    fn descriptor(&self) -> Option<String> {
        self.spec.descriptor().map(|d| d.to_string())
    }

    /// Up to `count` leading values (fewer for a short finite listing).
    fn take(&self, count: usize) -> PyResult<Vec<String>> {
        Ok(strings(self.spec.listing().take(count).map_err(err)?))
    }

    fn order_pattern(&self, length: usize) -> PyResult<Vec<usize>> {
        coorder::order_pattern(&mut self.spec.listing(), length).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Family({:?})", self.spec.label())
    }
}

fn witness_dict<'py>(py: Python<'py>, w: &WitnessPair) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("i", w.i)?;
    d.set_item("j", w.j)?;
    d.set_item("h_i", w.h_i.to_string())?;
    d.set_item("h_j", w.h_j.to_string())?;
    d.set_item("g_i", w.g_i.to_string())?;
    d.set_item("g_j", w.g_j.to_string())?;
    Ok(d)
}

/// `None` when the prefixes agree, else the first disagreeing pair.
#[pyfunction]
fn prefix_coorder<'py>(
    py: Python<'py>,
    left: &Family,
    right: &Family,
    length: usize,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    match coorder::prefix_coorder(&mut left.spec.listing(), &mut right.spec.listing(), length)
        .map_err(err)?
    {
        CoorderVerdict::Agree(_) => Ok(None),
        CoorderVerdict::Disagree(w) => Ok(Some(witness_dict(py, &w)?)),
    }
}

/// One dict per shift pair `(m, n)`; `witness` is `None` for clean cells.
#[pyfunction]
fn type2_search<'py>(
    py: Python<'py>,
    left: &Family,
    right: &Family,
    m_max: usize,
    n_max: usize,
    length: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = py
        .detach(|| {
            coorder::type2_search(
                &mut left.spec.listing(),
                &mut right.spec.listing(),
                m_max,
                n_max,
                length,
            )
        })
        .map_err(err)?;
    report
        .cells
        .iter()
        .map(|cell| {
            let d = PyDict::new(py);
            d.set_item("m", cell.shift.m)?;
            d.set_item("n", cell.shift.n)?;
            match cell.witness() {
                Some(w) => d.set_item("witness", witness_dict(py, w)?)?,
                None => d.set_item("witness", py.None())?,
            }
            Ok(d)
        })
        .collect()
}

/// The reason string when the descriptors refute type-2 co-order, else `None`.
#[pyfunction]
fn refute_type2(left: &Family, right: &Family) -> Option<String> {
    match ordertype::refute_type2(&left.spec, &right.spec) {
        Type2Verdict::Refuted { reason } => Some(reason),
        Type2Verdict::Unknown => None,
    }
}

#[pyfunction]
fn finite_coorder(a: Vec<String>, b: Vec<String>) -> PyResult<bool> {
    coorder::finite_coorder(&rationals(&a)?, &rationals(&b)?).map_err(err)
}

fn count_str(c: Cardinality) -> String {
    match c {
        Cardinality::Finite(k) => k.to_string(),
        Cardinality::Infinite => "inf".to_string(),
    }
}

/// Builds a listing of `target` in the order of `source`'s listing. The
/// result has a `status` of `"matched"`, `"gap_empty"` or `"fuel_exhausted"`.
#[pyfunction]
#[pyo3(signature = (source, target, steps, fuel=100_000))]
fn match_listing<'py>(
    py: Python<'py>,
    source: &Family,
    target: &Family,
    steps: usize,
    fuel: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let oracle = source.spec.oracle().cloned();
    let outcome = py
        .detach(|| {
            coorder::match_listing(
                &mut source.spec.listing(),
                oracle.as_deref(),
                &target.spec,
                steps,
                Fuel::Total(fuel),
            )
        })
        .map_err(err)?;
    let d = PyDict::new(py);
    match outcome {
        MatchOutcome::Matched(ok) => {
            d.set_item("status", "matched")?;
            d.set_item("values", strings(&ok.values))?;
            d.set_item("draws", ok.draws)?;
        }
        MatchOutcome::Failed(MatchFailure::GapEmpty {
            step,
            lo,
            hi,
            required,
            available,
        }) => {
            d.set_item("status", "gap_empty")?;
            d.set_item("step", step)?;
            d.set_item("lo", lo.map(|v| v.to_string()))?;
            d.set_item("hi", hi.map(|v| v.to_string()))?;
            d.set_item("required", count_str(required))?;
            d.set_item("available", count_str(available))?;
        }
        MatchOutcome::Failed(MatchFailure::FuelExhausted { step, draws }) => {
            d.set_item("status", "fuel_exhausted")?;
            d.set_item("step", step)?;
            d.set_item("draws", draws)?;
        }
    }
    Ok(d)
}

/// Value of a `.seq` definition at family index `i` and position `n ≥ 1`.
#[pyfunction]
fn eval_seq(text: &str, i: i64, n: u64) -> PyResult<String> {
    let def = seqlang::parse(text).map_err(err)?;
    Ok(seqlang::eval(&def, i, n).map_err(err)?.to_string())
}

/// Canonical printed form of a `.seq` definition.
#[pyfunction]
fn format_seq(text: &str) -> PyResult<String> {
    Ok(seqlang::parse(text).map_err(err)?.to_string())
}

/// Runs a scripted experiment and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (name, i_max=None, m_max=10, n_max=10, length=500))]
fn repro(
    py: Python<'_>,
    name: &str,
    i_max: Option<u64>,
    m_max: usize,
    n_max: usize,
    length: usize,
) -> PyResult<String> {
    let report: ReproReport = py
        .detach(|| {
            match name {
                "theorem9" => experiments::repro_theorem9(i_max.unwrap_or(5), m_max, n_max, length),
                "theorem5" => {
                    experiments::repro_theorem5_chain(i_max.unwrap_or(4), m_max, n_max, length)
                }
                "examples" => experiments::repro_examples(),
                other => Err(experiments::ReproError::Precondition(format!(
                    "unknown experiment {other:?}"
                ))),
            }
            .map_err(|e| e.to_string())
        })
        .map_err(PyValueError::new_err)?;
    Ok(report.to_json())
}

#[pymodule]
fn enumorder(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Family>()?;
    m.add_function(wrap_pyfunction!(prefix_coorder, m)?)?;
    m.add_function(wrap_pyfunction!(type2_search, m)?)?;
    m.add_function(wrap_pyfunction!(refute_type2, m)?)?;
    m.add_function(wrap_pyfunction!(finite_coorder, m)?)?;
    m.add_function(wrap_pyfunction!(match_listing, m)?)?;
    m.add_function(wrap_pyfunction!(eval_seq, m)?)?;
    m.add_function(wrap_pyfunction!(format_seq, m)?)?;
    m.add_function(wrap_pyfunction!(repro, m)?)?;
    Ok(())
}
