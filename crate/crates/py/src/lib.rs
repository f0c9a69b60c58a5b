//! Python bindings: complexes, stratifications, perversity intersection
//! homology, quotients, and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use strathom::error::Error;
use strathom::filtration::Stratification;
use strathom::perversity::Perversity;
use strathom::verify::{run_suite, HarnessConfig, Suite};
use strathom::{fixtures, io, SimplicialComplex};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite abstract simplicial complex.
#[pyclass(name = "Complex", from_py_object)]
#[derive(Clone)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    /// Builds the closure of a list of facets, each a list of string labels.
    #[new]
    fn new(facets: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: SimplicialComplex::build(&facets).map_err(py_err)?,
        })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn facets(&self) -> Vec<Vec<String>> {
        self.inner
            .facets()
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|v| self.inner.label(*v).render())
                    .collect()
            })
            .collect()
    }

    fn cone(&self, apex: &str) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: self.inner.cone(apex).map_err(py_err)?,
        })
    }

    fn suspension(&self, north: &str, south: &str) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: self.inner.suspension(north, south).map_err(py_err)?,
        })
    }

    fn join(&self, other: &PyComplex) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: self.inner.join(&other.inner).map_err(py_err)?,
        })
    }

    fn interval_product(&self) -> PyComplex {
        PyComplex {
            inner: self.inner.interval_product().complex,
        }
    }

    fn barycentric_subdivision(&self) -> PyComplex {
        PyComplex {
            inner: self.inner.barycentric_subdivision().complex,
        }
    }

    /// Ordinary simplicial homology: list of (degree, betti, torsion list).
    fn homology(&self) -> Vec<(usize, usize, Vec<String>)> {
        let h = strathom::ih::ordinary_homology(&self.inner, false);
        h.degrees
            .iter()
            .enumerate()
            .map(|(i, d)| {
                (
                    i,
                    d.betti,
                    d.torsion.iter().map(|t| t.to_string()).collect(),
                )
            })
            .collect()
    }

    fn to_json(&self, name: &str) -> String {
        serde_json::to_string_pretty(&io::complex_to_json(&self.inner, name)).unwrap()
    }

    fn __repr__(&self) -> String {
        format!("Complex(f_vector={:?})", self.inner.f_vector())
    }
}

/// A complex with a filtration and its derived strata.
#[pyclass(name = "Stratified", from_py_object)]
#[derive(Clone)]
struct PyStratified {
    inner: Stratification,
}

impl PyStratified {
    fn perversity(&self, spec: &str) -> PyResult<Perversity> {
        Ok(io::perversity_from_spec(spec, &self.inner)
            .map_err(py_err)?
            .1)
    }
}

#[pymethods]
impl PyStratified {
    /// Parses filtration JSON: {"complex": ..., "skeleta": {...}}.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyStratified {
            inner: io::stratified_from_json(&v).map_err(py_err)?.1,
        })
    }

    /// A built-in fixture by name.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyStratified {
            inner: fixtures::fixture(name).map_err(py_err)?,
        })
    }

    /// Everything regular.
    #[staticmethod]
    fn trivial(complex: &PyComplex) -> Self {
        PyStratified {
            inner: Stratification::trivial(complex.inner.clone()),
        }
    }

    fn complex(&self) -> PyComplex {
        PyComplex {
            inner: self.inner.complex().clone(),
        }
    }

    fn dim(&self) -> usize {
        self.inner.n()
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// [(id, level, codim, singular, simplex count)]
    fn strata(&self) -> Vec<(String, usize, i64, bool, usize)> {
        (0..self.inner.strata().len())
            .map(|i| {
                let st = &self.inner.strata()[i];
                (
                    self.inner.stratum_id(i),
                    st.level,
                    self.inner.codim(i),
                    self.inner.is_singular(i),
                    st.simplices.len(),
                )
            })
            .collect()
    }

    /// Pseudomanifold validation as a dict.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = self.inner.validate();
        let out = PyDict::new(py);
        out.set_item("pass", report.all_pass())?;
        let axioms = PyList::empty(py);
        for c in &report.checks {
            let row = PyDict::new(py);
            row.set_item("axiom", c.axiom)?;
            row.set_item("pass", c.pass)?;
            row.set_item("witnesses", c.witnesses.clone())?;
            axioms.append(row)?;
        }
        out.set_item("axioms", axioms)?;
        Ok(out)
    }

    fn cone(&self, apex: &str) -> PyResult<PyStratified> {
        Ok(PyStratified {
            inner: self.inner.cone(apex).map_err(py_err)?.stratification,
        })
    }

    fn suspension(&self, north: &str, south: &str) -> PyResult<PyStratified> {
        Ok(PyStratified {
            inner: self
                .inner
                .suspension(north, south)
                .map_err(py_err)?
                .stratification,
        })
    }

    fn interval_product(&self) -> PyStratified {
        PyStratified {
            inner: self.inner.interval_product().stratification,
        }
    }

    fn subdivide(&self) -> PyStratified {
        PyStratified {
            inner: self.inner.subdivide().stratification,
        }
    }

    /// Intersection homology for a perversity spec ("zero", "top",
    /// "lower-middle", "upper-middle", or a {"stratum-id": value} JSON
    /// object). Returns [(degree, betti, torsion list)].
    #[pyo3(signature = (perversity="zero", subdivisions=2, rational=false))]
    fn intersection_homology(
        &self,
        perversity: &str,
        subdivisions: usize,
        rational: bool,
    ) -> PyResult<Vec<(usize, usize, Vec<String>)>> {
        let p = self.perversity(perversity)?;
        let h = strathom::ih::intersection_homology(&self.inner, &p, subdivisions, rational);
        Ok(h.degrees
            .iter()
            .enumerate()
            .map(|(i, d)| {
                (
                    i,
                    d.betti,
                    d.torsion.iter().map(|t| t.to_string()).collect(),
                )
            })
            .collect())
    }

    /// Allowability verdict of one simplex (by vertex labels) for a
    /// perversity spec.
    fn is_allowable(&self, vertices: Vec<String>, perversity: &str) -> PyResult<bool> {
        let p = self.perversity(perversity)?;
        let ids: Vec<u32> = vertices
            .iter()
            .map(|l| {
                self.inner
                    .complex()
                    .vertex_by_label(l)
                    .ok_or_else(|| PyValueError::new_err(format!("unknown vertex {l:?}")))
            })
            .collect::<PyResult<_>>()?;
        let simplex = strathom::Simplex::new(ids).map_err(py_err)?;
        Ok(strathom::ih::is_allowable(&self.inner, &p, &simplex).allowable)
    }

    fn to_json(&self, name: &str) -> String {
        serde_json::to_string_pretty(&io::stratified_to_json(&self.inner, name)).unwrap()
    }

    fn __repr__(&self) -> String {
        format!(
            "Stratified(dim={}, depth={}, strata={})",
            self.inner.n(),
            self.inner.depth(),
            self.inner.strata().len()
        )
    }
}

/// Built-in fixtures: [(name, description, is_counterexample)].
#[pyfunction]
fn fixture_list() -> Vec<(String, String, bool)> {
    fixtures::FIXTURES
        .iter()
        .map(|f| (f.name.to_string(), f.description.to_string(), f.counterexample))
        .collect()
}

/// Quotient of a built-in action (regularized first).
#[pyfunction]
fn quotient(action: &str) -> PyResult<PyStratified> {
    let a = fixtures::action(action)
        .map_err(py_err)?
        .regularize()
        .map_err(py_err)?;
    Ok(PyStratified {
        inner: a.quotient().map_err(py_err)?.stratification,
    })
}

/// Runs a verification suite; returns [(theorem, fixture, perversity, pass)].
#[pyfunction]
#[pyo3(signature = (suite, fixture=None))]
fn verify(suite: &str, fixture: Option<&str>) -> PyResult<Vec<(String, String, String, bool)>> {
    let suite = Suite::parse(suite).map_err(py_err)?;
    let reports = run_suite(suite, &HarnessConfig::default(), fixture).map_err(py_err)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.theorem, r.fixture, r.perversity, r.pass))
        .collect())
}

#[pymodule]
fn strathom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyStratified>()?;
    m.add_function(wrap_pyfunction!(fixture_list, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
