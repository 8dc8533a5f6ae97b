//! Python bindings: channels, mutual information, and the capacity sweep.
//!
//! Bloch vectors cross the boundary as plain `(w1, w2, w3)` tuples; the
//! channel and result records are thin wrappers over the core types.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use eacap::qmat::HermitianMatrix;
use eacap::{BlochVector, KrausChannel, OptimizerConfig};

fn value_err(e: eacap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bloch(w: (f64, f64, f64)) -> BlochVector {
    BlochVector::new(w.0, w.1, w.2)
}

/// A qubit channel in Kraus form.
#[pyclass]
struct Channel {
    inner: KrausChannel,
}

#[pymethods]
impl Channel {
    /// Amplitude damping channel with decay probability `eta`.
    #[staticmethod]
    fn amplitude_damping(eta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: eacap::make_amplitude_damping(eta).map_err(value_err)?,
        })
    }

    /// Depolarizing channel with error probability `p`.
    #[staticmethod]
    fn depolarizing(p: f64) -> PyResult<Self> {
        Ok(Self {
            inner: eacap::make_depolarizing(p).map_err(value_err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    /// Kraus operators as nested lists of complex numbers.
    fn kraus(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner
            .kraus_ops()
            .iter()
            .map(|e| e.iter().map(|row| row.to_vec()).collect())
            .collect()
    }

    /// Max elementwise deviation of `sum_i E_i† E_i` from the identity.
    fn completeness_residual(&self) -> f64 {
        self.inner.completeness_residual()
    }

    /// Send the state with Bloch vector `w` through the channel and return
    /// the Bloch vector of the output state.
    fn apply(&self, w: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
        let rho = eacap::bloch_to_density(&bloch(w)).map_err(value_err)?;
        let out = eacap::apply_channel(&self.inner, &rho).map_err(value_err)?;
        let v = eacap::density_to_bloch(&out);
        Ok((v.w1, v.w2, v.w3))
    }

    fn __repr__(&self) -> String {
        let params: Vec<String> = self
            .inner
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("Channel({}, {})", self.inner.name(), params.join(", "))
    }
}

/// Entropy breakdown of the mutual information at one state.
#[pyclass]
struct MutualInfo {
    #[pyo3(get)]
    s_in: f64,
    #[pyo3(get)]
    s_out: f64,
    #[pyo3(get)]
    s_exchange: f64,
    #[pyo3(get)]
    i: f64,
}

#[pymethods]
impl MutualInfo {
    fn __repr__(&self) -> String {
        format!(
            "MutualInfo(s_in={}, s_out={}, s_exchange={}, i={})",
            self.s_in, self.s_out, self.s_exchange, self.i
        )
    }
}

/// One row of the capacity sweep.
#[pyclass]
struct CapacityRecord {
    #[pyo3(get)]
    eta: f64,
    #[pyo3(get)]
    w3_opt: f64,
    #[pyo3(get)]
    capacity: f64,
    #[pyo3(get)]
    i_center: f64,
    #[pyo3(get)]
    gap: f64,
}

#[pymethods]
impl CapacityRecord {
    fn __repr__(&self) -> String {
        format!(
            "CapacityRecord(eta={}, w3_opt={}, capacity={}, i_center={}, gap={})",
            self.eta, self.w3_opt, self.capacity, self.i_center, self.gap
        )
    }
}

/// `I = S(rho) + S(rho') - S(Omega)` through the matrix pipeline.
#[pyfunction]
fn mutual_information(ch: &Channel, w: (f64, f64, f64)) -> PyResult<MutualInfo> {
    let rho = eacap::bloch_to_density(&bloch(w)).map_err(value_err)?;
    let info = eacap::mutual_information(&ch.inner, &rho).map_err(value_err)?;
    Ok(MutualInfo {
        s_in: info.s_in,
        s_out: info.s_out,
        s_exchange: info.s_exchange,
        i: info.i,
    })
}

/// Closed form of the amplitude damping mutual information.
#[pyfunction]
fn mutual_information_ad_closed(eta: f64, w: (f64, f64, f64)) -> PyResult<f64> {
    eacap::mutual_information_ad_closed(eta, &bloch(w)).map_err(value_err)
}

/// `I(eta, 0) = 1 + H2((1+eta)/2) - H2(eta/2)`.
#[pyfunction]
fn i_center_closed(eta: f64) -> PyResult<f64> {
    eacap::i_center_closed(eta).map_err(value_err)
}

/// On-axis optimum of the damping mutual information: `(w3_opt, capacity)`.
#[pyfunction]
fn optimize_w3(eta: f64) -> PyResult<(f64, f64)> {
    eacap::optimize_w3(eta, &OptimizerConfig::default()).map_err(value_err)
}

/// Sweep row at one `eta`.
#[pyfunction]
fn capacity_record(eta: f64) -> PyResult<CapacityRecord> {
    let r = eacap::capacity_record(eta, &OptimizerConfig::default()).map_err(value_err)?;
    Ok(CapacityRecord {
        eta: r.eta,
        w3_opt: r.w3_opt,
        capacity: r.capacity,
        i_center: r.i_center,
        gap: r.gap,
    })
}

/// Brute-force capacity search over the Bloch ball; returns
/// `((w1, w2, w3), capacity)`. `grid_n` must be odd.
#[pyfunction]
#[pyo3(signature = (ch, grid_n = 41))]
fn capacity_grid_oracle(ch: &Channel, grid_n: usize) -> PyResult<((f64, f64, f64), f64)> {
    let cfg = OptimizerConfig {
        grid_n,
        ..OptimizerConfig::default()
    };
    let (w, c) = eacap::capacity_grid_oracle(&ch.inner, &cfg).map_err(value_err)?;
    Ok(((w.w1, w.w2, w.w3), c))
}

/// Von Neumann entropy in bits of a unit-trace Hermitian matrix given as
/// nested lists of complex numbers (dimension 2 to 4).
#[pyfunction]
fn von_neumann_entropy(rows: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let dim = rows.len();
    let flat: Vec<Complex64> = rows.iter().flatten().copied().collect();
    if flat.len() != dim * dim {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let m = HermitianMatrix::new(dim, flat).map_err(value_err)?;
    eacap::von_neumann_entropy(&m).map_err(value_err)
}

/// Run the self-check suites; returns `(name, passed, detail)` per group.
#[pyfunction]
fn verify() -> Vec<(String, bool, String)> {
    eacap::verify::run_all()
        .into_iter()
        .map(|g| (g.name.to_string(), g.passed, g.detail))
        .collect()
}

#[pymodule]
fn eacap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Channel>()?;
    m.add_class::<MutualInfo>()?;
    m.add_class::<CapacityRecord>()?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information_ad_closed, m)?)?;
    m.add_function(wrap_pyfunction!(i_center_closed, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_w3, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_record, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_grid_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
