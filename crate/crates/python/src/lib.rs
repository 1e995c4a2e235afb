//! Python bindings: the main types (complexes, Følner sets, sections)
//! and operations (Betti numbers, spectra, heat traces, zeta values,
//! torus oracles) as a `folnerlab` extension module.
//!
//! Build with `cargo build --release -p folnerlab-py`; the smoke test
//! in `python/smoke_test.py` shows how to load the produced cdylib.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use folnerlab_core::bessel;
use folnerlab_core::complex::{self, EquivariantChainComplex};
use folnerlab_core::group::{self, FolnerSet};
use folnerlab_core::oracle::{self, QuadratureGrid};
use folnerlab_core::section::{self, BoundaryCondition, SectionComplex};
use folnerlab_core::spectral::{self, HeatOptions};
use folnerlab_core::LabError;

fn lab_err(e: LabError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_condition(name: &str) -> PyResult<BoundaryCondition> {
    match name {
        "relative" => Ok(BoundaryCondition::Relative),
        "absolute" => Ok(BoundaryCondition::Absolute),
        other => Err(PyValueError::new_err(format!(
            "unknown boundary condition `{other}` (use \"relative\" or \"absolute\")"
        ))),
    }
}

/// An equivariant chain complex (one basis cell per deck-group orbit).
#[pyclass(name = "Complex", frozen)]
struct PyComplex {
    inner: EquivariantChainComplex,
}

#[pymethods]
impl PyComplex {
    /// Built-in complexes: circle_Z, torus2_Z2, torus3_Z3,
    /// surface_genus<g>_Z<2g>, wedge2_F2, heisenberg_manifold.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: complex::builtin_complex(name).map_err(lab_err)?,
        })
    }

    /// Parse a complex from the documented text format.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: complex::load_complex(std::path::Path::new(path)).map_err(lab_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn orbit_counts(&self) -> Vec<usize> {
        self.inner.orbit_counts.clone()
    }

    #[getter]
    fn euler_char(&self) -> i64 {
        self.inner.euler_char
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn validate(&self) -> (bool, Vec<String>) {
        let report = self.inner.validate();
        (report.passed, report.messages)
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex({}, orbits={:?}, chi={})",
            self.inner.name, self.inner.orbit_counts, self.inner.euler_char
        )
    }
}

/// A Følner box (or F₂ Cayley ball) of the complex's deck group.
#[pyclass(name = "FolnerSet", frozen)]
struct PyFolnerSet {
    inner: FolnerSet,
}

#[pymethods]
impl PyFolnerSet {
    #[getter]
    fn size(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    fn cheeger_ratio(&self) -> PyResult<f64> {
        group::cheeger_ratio(&self.inner).map_err(lab_err)
    }

    fn boundary_layer_size(&self, delta: u32) -> usize {
        group::boundary_layer(&self.inner, delta).len()
    }

    fn __repr__(&self) -> String {
        format!("FolnerSet({}, size={})", self.inner.label, self.inner.len())
    }
}

/// A finite integer chain complex cut along a Følner set.
#[pyclass(name = "Section", frozen)]
struct PySection {
    inner: SectionComplex,
}

#[pymethods]
impl PySection {
    #[getter]
    fn condition(&self) -> &'static str {
        self.inner.condition.name()
    }

    #[getter]
    fn folner_size(&self) -> usize {
        self.inner.folner_size
    }

    fn cell_counts(&self) -> (Vec<usize>, i64) {
        self.inner.cell_counts()
    }

    /// Exact Betti numbers in every degree.
    fn betti(&self) -> PyResult<Vec<usize>> {
        Ok(spectral::betti_vector(&self.inner).map_err(lab_err)?.values)
    }

    /// Sorted spectrum of the degree-j Hodge Laplacian.
    #[pyo3(signature = (degree, dense_cap = 4000))]
    fn eigenvalues(&self, degree: usize, dense_cap: usize) -> PyResult<Vec<f64>> {
        Ok(spectral::eigenvalues(&self.inner, degree, dense_cap)
            .map_err(lab_err)?
            .eigenvalues)
    }

    /// Tr e^{−tΔ_j}; stochastic fallback past the cap reports its
    /// standard error as the second value (None on the dense path).
    #[pyo3(signature = (degree, t, dense_cap = 4000, probes = 64, seed = 0))]
    fn heat_trace(
        &self,
        degree: usize,
        t: f64,
        dense_cap: usize,
        probes: usize,
        seed: u64,
    ) -> PyResult<(f64, Option<f64>)> {
        let opts = HeatOptions {
            dense_cap,
            probes,
            seed,
        };
        let r = spectral::heat_trace(&self.inner, degree, t, &opts).map_err(lab_err)?;
        let stderr = match r.method {
            spectral::HeatTraceMethod::Dense => None,
            spectral::HeatTraceMethod::Stochastic { std_error, .. } => Some(std_error),
        };
        Ok((r.value, stderr))
    }

    /// N_j(λ): eigenvalues up to λ at the clustering tolerance.
    #[pyo3(signature = (degree, lam, dense_cap = 4000))]
    fn spectral_count(&self, degree: usize, lam: f64, dense_cap: usize) -> PyResult<usize> {
        let spec = spectral::eigenvalues(&self.inner, degree, dense_cap).map_err(lab_err)?;
        Ok(spectral::spectral_count(&spec, lam))
    }

    /// Normalized finite zeta value (1/|F|) Σ_{μ>0} (μ + λ)^{−s}.
    #[pyo3(signature = (degree, s, lam, dense_cap = 4000))]
    fn zeta(&self, degree: usize, s: f64, lam: f64, dense_cap: usize) -> PyResult<f64> {
        let spec = spectral::eigenvalues(&self.inner, degree, dense_cap).map_err(lab_err)?;
        Ok(spectral::zeta_finite(&spec, Complex64::new(s, 0.0), lam, self.inner.folner_size).re)
    }

    fn __repr__(&self) -> String {
        let (counts, chi) = self.inner.cell_counts();
        format!(
            "Section({}, {}, cells={:?}, chi={})",
            self.inner.complex_name,
            self.inner.condition.name(),
            counts,
            chi
        )
    }
}

/// Følner box of side L (Cayley ball of radius L for the free group).
#[pyfunction]
fn folner_box(complex: &PyComplex, side: u32) -> PyResult<PyFolnerSet> {
    Ok(PyFolnerSet {
        inner: group::folner_box(complex.inner.spec, side).map_err(lab_err)?,
    })
}

/// Cut the finite section under "relative" or "absolute" conditions.
#[pyfunction]
fn build_section(
    complex: &PyComplex,
    folner: &PyFolnerSet,
    condition: &str,
) -> PyResult<PySection> {
    let bc = parse_condition(condition)?;
    Ok(PySection {
        inner: section::build_section(&complex.inner, &folner.inner, bc).map_err(lab_err)?,
    })
}

/// Exact ℤᵈ lattice heat kernel Π_i e^{−2t} I_{|offset_i|}(2t).
#[pyfunction]
fn lattice_heat_kernel(d: usize, t: f64, offset: Vec<i64>) -> PyResult<f64> {
    if offset.len() != d {
        return Err(PyValueError::new_err("offset arity must match dimension"));
    }
    Ok(bessel::lattice_heat_kernel(d, t, &offset))
}

fn grid(points: usize) -> PyResult<QuadratureGrid> {
    QuadratureGrid::trapezoid(points).map_err(lab_err)
}

/// Γ-trace of the heat semigroup via torus quadrature (abelian only).
#[pyfunction]
#[pyo3(signature = (complex, degree, t, points = 256))]
fn vn_heat_trace(complex: &PyComplex, degree: usize, t: f64, points: usize) -> PyResult<f64> {
    oracle::vn_heat_trace(&complex.inner, degree, t, &grid(points)?).map_err(lab_err)
}

/// Von Neumann spectral function N_{j,Γ}(λ) (abelian only).
#[pyfunction]
#[pyo3(signature = (complex, degree, lam, points = 256))]
fn vn_spectral_function(
    complex: &PyComplex,
    degree: usize,
    lam: f64,
    points: usize,
) -> PyResult<f64> {
    oracle::vn_spectral_function(&complex.inner, degree, lam, &grid(points)?).map_err(lab_err)
}

/// L² Betti number via the symbol's kernel bundle (abelian only).
#[pyfunction]
#[pyo3(signature = (complex, degree, points = 64))]
fn l2_betti(complex: &PyComplex, degree: usize, points: usize) -> PyResult<f64> {
    Ok(oracle::l2_betti(&complex.inner, degree, &grid(points)?)
        .map_err(lab_err)?
        .value)
}

/// L² Betti number from the Euler identity, where it applies.
#[pyfunction]
fn l2_betti_euler(complex: &PyComplex, degree: usize) -> Option<f64> {
    oracle::l2_betti_from_euler(&complex.inner, degree)
}

/// L² zeta value at real s (abelian only, Re s > d/2).
#[pyfunction]
#[pyo3(signature = (complex, degree, s, lam, points = 256))]
fn vn_zeta(complex: &PyComplex, degree: usize, s: f64, lam: f64, points: usize) -> PyResult<f64> {
    Ok(oracle::vn_zeta(
        &complex.inner,
        degree,
        Complex64::new(s, 0.0),
        lam,
        &grid(points)?,
    )
    .map_err(lab_err)?
    .re)
}

#[pymodule]
fn folnerlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyFolnerSet>()?;
    m.add_class::<PySection>()?;
    m.add_function(wrap_pyfunction!(folner_box, m)?)?;
    m.add_function(wrap_pyfunction!(build_section, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_heat_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(vn_heat_trace, m)?)?;
    m.add_function(wrap_pyfunction!(vn_spectral_function, m)?)?;
    m.add_function(wrap_pyfunction!(l2_betti, m)?)?;
    m.add_function(wrap_pyfunction!(l2_betti_euler, m)?)?;
    m.add_function(wrap_pyfunction!(vn_zeta, m)?)?;
    Ok(())
}
