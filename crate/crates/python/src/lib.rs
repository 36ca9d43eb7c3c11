//! Python bindings for the `vlplus` core crate.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vlplus_core::constructions::{detect_construction_b, lb_from_code};
use vlplus_core::f2algebra::{self, Arf, BinaryCode, F2QuadSpace};
use vlplus_core::lattice::Lattice;
use vlplus_core::matrix::{rat, Rational};
use vlplus_core::modcat::{self, FusionSpace, ModuleLabel};
use vlplus_core::qseries::{self, QSeries};
use vlplus_core::{permgroup, reports};

fn err(e: vlplus_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn terms(s: &QSeries) -> Vec<(String, String)> {
    s.terms().iter().map(|(e, c)| (e.to_string(), c.to_string())).collect()
}

fn cutoff(c: i64) -> PyResult<Rational> {
    if c <= 0 {
        return Err(PyValueError::new_err("cutoff must be positive"));
    }
    Ok(rat(c))
}

#[pyclass(name = "Lattice", module = "vlplus", frozen)]
struct PyLattice {
    inner: Lattice,
}

#[pymethods]
impl PyLattice {
    /// A builtin lattice such as `E8`, `sqrt2D4` or `BW16`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyLattice {
            inner: vlplus_core::lattice::builtin(name).map_err(err)?,
        })
    }

    /// `builtin:<name>` or a path to a lattice JSON file.
    #[staticmethod]
    fn load(target: &str) -> PyResult<Self> {
        Ok(PyLattice {
            inner: Lattice::load(target).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLattice {
            inner: Lattice::from_json_str(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json_string().map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Determinant as an exact rational string.
    fn det(&self) -> String {
        self.inner.det().to_string()
    }

    fn gram(&self) -> Vec<Vec<String>> {
        self.inner
            .gram()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn is_rootless(&self) -> bool {
        self.inner.is_rootless()
    }

    fn is_2elementary_totally_even(&self) -> bool {
        self.inner.is_2elementary_totally_even()
    }

    fn discriminant_invariants(&self) -> Option<Vec<BigInt>> {
        self.inner.discriminant_group().map(|d| d.invariant_factors().clone())
    }

    /// `(minimal norm, number of minimal vectors)`.
    fn minimum(&self) -> (String, u64) {
        let (m, k) = self.inner.minimum();
        (m.to_string(), k)
    }

    fn dual(&self) -> PyLattice {
        PyLattice {
            inner: self.inner.dual(),
        }
    }

    /// Theta series of the lattice as `(exponent, coefficient)` strings.
    #[pyo3(signature = (cutoff = 10))]
    fn theta_series(&self, cutoff: i64) -> PyResult<Vec<(String, String)>> {
        let zero = vlplus_core::lattice::Coset::zero(self.inner.rank());
        Ok(terms(
            &qseries::theta_series(&self.inner, &zero, &self::cutoff(cutoff)?).map_err(err)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!("Lattice({}, rank {})", self.inner.name(), self.inner.rank())
    }
}

#[pyclass(name = "BinaryCode", module = "vlplus", frozen)]
struct PyBinaryCode {
    inner: BinaryCode,
}

#[pymethods]
impl PyBinaryCode {
    /// One generator per line of `0`/`1` characters.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyBinaryCode {
            inner: BinaryCode::parse(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn reed_muller_1_4() -> Self {
        PyBinaryCode {
            inner: BinaryCode::rm_1_4(),
        }
    }

    #[staticmethod]
    fn golay24() -> Self {
        PyBinaryCode {
            inner: BinaryCode::golay24(),
        }
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn weight_enumerator(&self) -> PyResult<Vec<u64>> {
        self.inner.weight_enumerator().map_err(err)
    }

    fn min_weight(&self) -> PyResult<Option<usize>> {
        self.inner.min_weight().map_err(err)
    }

    fn is_doubly_even(&self) -> bool {
        self.inner.is_doubly_even()
    }

    /// The lattice `L_B(C)` on the standard frame.
    fn construction_b(&self) -> PyResult<PyLattice> {
        Ok(PyLattice {
            inner: lb_from_code(&self.inner).map_err(err)?.0,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn group_order(spec: &str) -> PyResult<BigInt> {
    f2algebra::group_order(spec).map_err(err)
}

/// Labels of the orbit of `[0]⁻`.
#[pyfunction]
fn orbit_ql(lattice: &PyLattice) -> PyResult<Vec<String>> {
    let l = &lattice.inner;
    Ok(modcat::orbit_ql(l).map_err(err)?.iter().map(|w| w.to_text(l)).collect())
}

#[pyfunction]
#[pyo3(signature = (lattice, label, cutoff = 10))]
fn graded_dim(lattice: &PyLattice, label: &str, cutoff: i64) -> PyResult<Vec<(String, String)>> {
    let l = &lattice.inner;
    let w = ModuleLabel::parse(label, l).map_err(err)?;
    Ok(terms(&qseries::graded_dim(l, &w, &self::cutoff(cutoff)?).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (lattice, cutoff = 10))]
fn verify_theta_identity(lattice: &PyLattice, cutoff: i64) -> PyResult<bool> {
    let r = qseries::verify_theta_identity(&lattice.inner, &self::cutoff(cutoff)?).map_err(err)?;
    Ok(r.holds && r.dual_holds)
}

/// `(dimension, plus type, nonzero isotropic count)` of the fusion space.
#[pyfunction]
fn fusion_qform(lattice: &PyLattice) -> PyResult<(usize, bool, usize)> {
    let s = FusionSpace::build(&lattice.inner).map_err(err)?;
    let q = s.quad_space().map_err(err)?;
    let plus = q.arf_type().map_err(err)? == Arf::Plus;
    Ok((q.dim(), plus, s.isotropic_labels().map_err(err)?.len()))
}

/// Order and orbit sizes of the group generated by transvections.
#[pyfunction]
fn orthogonal_group(dim: usize, plus: bool) -> PyResult<(BigInt, Vec<usize>)> {
    let q = F2QuadSpace::standard(dim, if plus { Arf::Plus } else { Arf::Minus }).map_err(err)?;
    let g = permgroup::transvection_group(&q).map_err(err)?;
    Ok((g.order(), g.orbit_sizes()))
}

/// Rows of a code `C` with `L = L_B(C)`, or `None`.
#[pyfunction]
fn detect_construction_b_code(lattice: &PyLattice) -> PyResult<Option<Vec<String>>> {
    Ok(detect_construction_b(&lattice.inner)
        .map_err(err)?
        .map(|d| d.code.rows().iter().map(|&r| d.code.word_to_string(r)).collect()))
}

/// `root-table`, `unimodular` or `bw16` as JSON.
#[pyfunction]
fn report(kind: &str) -> PyResult<String> {
    let rows = match kind {
        "root-table" => reports::root_table(),
        "unimodular" => reports::unimodular_report().map(|r| vec![r]),
        "bw16" => reports::bw16_report().map(|r| vec![r]),
        other => return Err(PyValueError::new_err(format!("unknown report `{other}`"))),
    }
    .map_err(err)?;
    reports::render_json(&rows).map_err(err)
}

#[pymodule]
#[pyo3(name = "vlplus")]
fn vlplus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyBinaryCode>()?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_ql, m)?)?;
    m.add_function(wrap_pyfunction!(graded_dim, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theta_identity, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_qform, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonal_group, m)?)?;
    m.add_function(wrap_pyfunction!(detect_construction_b_code, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    Ok(())
}
