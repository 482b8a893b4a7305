//! Python bindings. The extension module is named `hklab`; build it with
//! `cargo build -p hklab-py --release` and copy `libhklab_py.so` to `hklab.so`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hklab::constructions::{self, ConstructionReport};
use hklab::formulas::{self, FiberCase};
use hklab::hk::{self, EstimateMethod, HkSample};
use hklab::spec::{parse_polynomial, parse_spec, ring_to_spec};
use hklab::{HkError, ModulePresentation, Polynomial, PrimeField, Rational, RingPresentation};

fn err(e: HkError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn method(name: &str) -> PyResult<EstimateMethod> {
    match name {
        "two-point" => Ok(EstimateMethod::TwoPointFit),
        "last" => Ok(EstimateMethod::LastSample),
        other => Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
}

fn polys(ring: &RingPresentation, texts: &[String]) -> PyResult<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(ring, t).map_err(err)).collect()
}

type SampleRow<'py> = (u32, u64, u64, Bound<'py, PyAny>);

fn sample_rows<'py>(py: Python<'py>, samples: &[HkSample]) -> PyResult<Vec<SampleRow<'py>>> {
    samples
        .iter()
        .map(|s| Ok((s.e, s.q, s.length, fraction(py, &s.normalized)?)))
        .collect()
}

/// A quotient of a polynomial ring over GF(p).
#[pyclass(name = "Ring", frozen)]
struct PyRing {
    inner: Arc<RingPresentation>,
}

impl PyRing {
    fn ideal(&self, ideal: Option<Vec<String>>) -> PyResult<Vec<Polynomial>> {
        match ideal {
            None => Ok(self.inner.variables()),
            Some(gens) => polys(&self.inner, &gens),
        }
    }
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (p, variables, relations = Vec::new()))]
    fn new(p: u64, variables: Vec<String>, relations: Vec<String>) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(err)?;
        let base = RingPresentation::new(field, variables.clone(), Vec::new()).map_err(err)?;
        let gens = polys(&base, &relations)?;
        hklab::ring::check_local_generators(&gens, &variables).map_err(err)?;
        let ring = RingPresentation::new(field, variables, gens).map_err(err)?;
        Ok(PyRing { inner: Arc::new(ring) })
    }

    /// The ring called `name` in a declaration file.
    #[staticmethod]
    fn parse(text: &str, name: &str) -> PyResult<Self> {
        let decls = parse_spec(text).map_err(err)?;
        Ok(PyRing {
            inner: decls.ring(name).map_err(err)?.clone(),
        })
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| self.inner.fmt_poly(g)).collect()
    }

    fn dimension(&self) -> PyResult<usize> {
        self.inner.dimension().map_err(err)
    }

    fn groebner_basis(&self) -> PyResult<Vec<String>> {
        let gb = self.inner.groebner().map_err(err)?;
        Ok(gb.elements().iter().map(|g| self.inner.fmt_poly(g)).collect())
    }

    /// `(e, q, length, normalized)` for `e = 1..=e_max`; the ideal defaults to
    /// the maximal ideal.
    #[pyo3(signature = (e_max = 3, ideal = None))]
    fn hk_samples<'py>(&self, py: Python<'py>, e_max: u32, ideal: Option<Vec<String>>) -> PyResult<Vec<SampleRow<'py>>> {
        let j = self.ideal(ideal)?;
        let inner = self.inner.clone();
        let samples = py.detach(move || hk::hk_function(&inner, &j, e_max)).map_err(err)?;
        sample_rows(py, &samples)
    }

    #[pyo3(signature = (e_max = 3, ideal = None, method = "two-point"))]
    fn hk_estimate<'py>(
        &self,
        py: Python<'py>,
        e_max: u32,
        ideal: Option<Vec<String>>,
        method: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let m = self::method(method)?;
        let j = self.ideal(ideal)?;
        let inner = self.inner.clone();
        let est = py
            .detach(move || hk::hk_function(&inner, &j, e_max).and_then(|s| hk::hk_estimate(&s, m)))
            .map_err(err)?;
        fraction(py, &est.value)
    }

    fn __repr__(&self) -> String {
        ring_to_spec("R", &self.inner)
    }
}

/// `coker` of a relations matrix given as columns, one entry per generator.
#[pyclass(name = "Module", frozen)]
struct PyModulePresentation {
    inner: ModulePresentation,
}

#[pymethods]
impl PyModulePresentation {
    #[new]
    #[pyo3(signature = (ring, generators, columns = Vec::new()))]
    fn new(ring: &PyRing, generators: usize, columns: Vec<Vec<String>>) -> PyResult<Self> {
        let cols: Vec<Vec<Polynomial>> = columns.iter().map(|c| polys(&ring.inner, c)).collect::<PyResult<_>>()?;
        if cols.iter().any(|c| c.len() != generators) {
            return Err(PyValueError::new_err("every column needs one entry per generator"));
        }
        let rows = (0..generators).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let inner = ModulePresentation::new(ring.inner.clone(), generators, rows).map_err(err)?;
        Ok(PyModulePresentation { inner })
    }

    #[pyo3(signature = (e_max = 3))]
    fn hk_samples<'py>(&self, py: Python<'py>, e_max: u32) -> PyResult<Vec<SampleRow<'py>>> {
        let m = self.inner.ring().variables();
        let samples = hk::hk_module_function(&self.inner, &m, e_max).map_err(err)?;
        sample_rows(py, &samples)
    }

    #[pyo3(signature = (e_max = 3, method = "two-point"))]
    fn hk_estimate<'py>(&self, py: Python<'py>, e_max: u32, method: &str) -> PyResult<Bound<'py, PyAny>> {
        let m = self.inner.ring().variables();
        let samples = hk::hk_module_function(&self.inner, &m, e_max).map_err(err)?;
        let est = hk::hk_estimate(&samples, self::method(method)?).map_err(err)?;
        fraction(py, &est.value)
    }
}

fn wrap(report: ConstructionReport) -> PyRing {
    PyRing {
        inner: Arc::new(report.result),
    }
}

#[pyfunction]
fn fiber_product(r: &PyRing, s: &PyRing) -> PyResult<PyRing> {
    constructions::fiber_product_over_k(&r.inner, &s.inner).map(wrap).map_err(err)
}

#[pyfunction]
fn multi_fiber_product(rings: Vec<PyRef<'_, PyRing>>) -> PyResult<PyRing> {
    let comps: Vec<RingPresentation> = rings.iter().map(|r| r.inner.as_ref().clone()).collect();
    constructions::multi_fiber_product_over_k(&comps).map(wrap).map_err(err)
}

#[pyfunction]
fn duplication(r: &PyRing, ideal: Vec<String>) -> PyResult<PyRing> {
    let gens = polys(&r.inner, &ideal)?;
    constructions::amalgamated_duplication(&r.inner, &gens).map(wrap).map_err(err)
}

#[pyfunction]
fn idealization(r: &PyRing, module: &PyModulePresentation) -> PyResult<PyRing> {
    constructions::idealization(&r.inner, &module.inner).map(wrap).map_err(err)
}

#[pyfunction]
fn zigzag_m(py: Python<'_>, d: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &hklab::series::zigzag_m(d).map_err(err)?)
}

#[pyfunction]
fn aberbach_enescu_bound(py: Python<'_>, d: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &formulas::aberbach_enescu_bound(d).map_err(err)?)
}

#[pyfunction]
fn fiber_bound<'py>(py: Python<'py>, case: &str, d: usize) -> PyResult<Bound<'py, PyAny>> {
    let c = FiberCase::parse(case).ok_or_else(|| PyValueError::new_err(format!("unknown case `{case}`")))?;
    fraction(py, &formulas::fiber_bound(c, d).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "hklab")]
fn hklab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyModulePresentation>()?;
    m.add_function(wrap_pyfunction!(fiber_product, m)?)?;
    m.add_function(wrap_pyfunction!(multi_fiber_product, m)?)?;
    m.add_function(wrap_pyfunction!(duplication, m)?)?;
    m.add_function(wrap_pyfunction!(idealization, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_m, m)?)?;
    m.add_function(wrap_pyfunction!(aberbach_enescu_bound, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_bound, m)?)?;
    Ok(())
}
