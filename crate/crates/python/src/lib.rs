use std::sync::Arc;

use grmin::bounds::bound_report;
use grmin::codes::{
    build_code, is_minimal_code_bruteforce, is_minimal_code_criterion, LinearCode, MinimalityReport, Scope,
};
use grmin::constructions::{build_cf, canonical_f, lambda0, DomainMode, Family, MonomialPoly};
use grmin::format::{read_grcode, write_grcode};
use grmin::{Budget, Elem, GaloisRing};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The Galois ring GR(p^n, ell); elements are passed as literals such as "3" or "1,2".
#[pyclass(frozen, name = "Ring")]
struct PyRing {
    ring: Arc<GaloisRing>,
}

impl PyRing {
    fn elem(&self, s: &str) -> PyResult<Elem> {
        self.ring.parse_elem(s).map_err(err)
    }
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (p, n, ell = 1, h = None))]
    fn new(p: u64, n: u32, ell: usize, h: Option<Vec<u64>>) -> PyResult<Self> {
        let ring = GaloisRing::new(p, n, ell, h.as_deref()).map_err(err)?;
        Ok(PyRing { ring: Arc::new(ring) })
    }

    #[getter]
    fn descriptor(&self) -> String {
        self.ring.descriptor()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.ring.q()
    }

    #[getter]
    fn size(&self) -> u64 {
        self.ring.size()
    }

    /// `(units, nonzero zero divisors, [count per valuation 1..n-1])`.
    fn census(&self) -> (u64, u64, Vec<u64>) {
        let c = self.ring.census();
        (c.units, c.zero_divisors, c.valuation_classes)
    }

    fn teichmuller(&self) -> Vec<String> {
        self.ring.teichmuller().iter().map(|&a| self.ring.format_elem(a)).collect()
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.ring.format_elem(self.ring.add(self.elem(a)?, self.elem(b)?)))
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.ring.format_elem(self.ring.mul(self.elem(a)?, self.elem(b)?)))
    }

    fn inverse(&self, a: &str) -> PyResult<String> {
        Ok(self.ring.format_elem(self.ring.inverse(self.elem(a)?).map_err(err)?))
    }

    fn is_unit(&self, a: &str) -> PyResult<bool> {
        Ok(self.ring.is_unit(self.elem(a)?))
    }

    fn valuation(&self, a: &str) -> PyResult<u32> {
        Ok(self.ring.val(self.elem(a)?))
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.ring.descriptor())
    }
}

/// A linear code given by its generator columns.
#[pyclass(frozen, name = "Code")]
struct PyCode {
    code: LinearCode,
}

#[pymethods]
impl PyCode {
    #[staticmethod]
    fn lambda0(ring: &PyRing, m: usize) -> PyResult<Self> {
        let gens = lambda0(&ring.ring, m).map_err(err)?;
        Ok(PyCode { code: build_code(ring.ring.clone(), gens).map_err(err)? })
    }

    /// `C_f` for the canonical function of `family` ("thm43", "thm46" or "poly").
    #[staticmethod]
    #[pyo3(signature = (ring, family, m, poly = None, restrict_rootwords = false))]
    fn cf(ring: &PyRing, family: &str, m: usize, poly: Option<&str>, restrict_rootwords: bool) -> PyResult<Self> {
        let family = match (family, poly) {
            ("thm43", _) => Family::Thm43,
            ("thm46", _) => Family::Thm46,
            ("poly", Some(text)) => Family::Poly(MonomialPoly::parse(&ring.ring, m, text).map_err(err)?),
            ("poly", None) => return Err(err("family 'poly' needs poly=")),
            (other, _) => return Err(err(format!("unknown family {other:?}"))),
        };
        let domain = if restrict_rootwords { DomainMode::RootWordsOnly } else { DomainMode::AllNonzero };
        let f = canonical_f(ring.ring.clone(), family, m, domain).map_err(err)?;
        let gens = build_cf(&f).map_err(err)?;
        Ok(PyCode { code: build_code(ring.ring.clone(), gens).map_err(err)? })
    }

    #[staticmethod]
    fn from_grcode(text: &str) -> PyResult<Self> {
        let (ring, gens) = read_grcode(text).map_err(err)?;
        Ok(PyCode { code: build_code(ring, gens).map_err(err)? })
    }

    fn to_grcode(&self) -> String {
        write_grcode(self.code.ring(), self.code.gens())
    }

    #[getter]
    fn m(&self) -> usize {
        self.code.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { ring: self.code.ring().clone() }
    }

    /// Minimality report as JSON; `method` is "criterion" or "bruteforce",
    /// `scope` is "all" or "root".
    #[pyo3(signature = (method = "criterion", scope = "all"))]
    fn check_json(&self, py: Python<'_>, method: &str, scope: &str) -> PyResult<String> {
        Ok(self.report(py, method, scope)?.to_json(self.code.ring()).to_string())
    }

    #[pyo3(signature = (method = "criterion"))]
    fn is_minimal(&self, py: Python<'_>, method: &str) -> PyResult<bool> {
        Ok(self.report(py, method, "all")?.verdict)
    }

    fn __repr__(&self) -> String {
        format!("Code([{}, {}] over {})", self.code.k(), self.code.m(), self.code.ring().descriptor())
    }
}

impl PyCode {
    fn report(&self, py: Python<'_>, method: &str, scope: &str) -> PyResult<MinimalityReport> {
        let scope = match scope {
            "all" => Scope::AllNonzero,
            "root" => Scope::RootWordsOnly,
            other => return Err(err(format!("unknown scope {other:?}"))),
        };
        py.detach(|| match method {
            "criterion" => is_minimal_code_criterion(&self.code, scope).map_err(err),
            "bruteforce" => is_minimal_code_bruteforce(&self.code, &Budget::from_env().map_err(err)?).map_err(err),
            other => Err(err(format!("unknown method {other:?}"))),
        })
    }
}

/// The length bound report for dimension `m`, as JSON.
#[pyfunction]
fn bounds_json(ring: &PyRing, m: usize) -> PyResult<String> {
    let report = bound_report(&ring.ring, m).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

#[pymodule]
fn pygrmin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(bounds_json, m)?)?;
    Ok(())
}
