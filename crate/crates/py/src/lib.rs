//! Python bindings: the coupling set, family classification, thermal
//! states, and the correlation measures, over plain lists of complex
//! numbers.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spindimer::correlations::{CorrelationReport, MeasureReport, XParams};
use spindimer::families::{CouplingSet, FamilyId, FamilyParams};
use spindimer::matrix::{Mat4, Side};
use spindimer::thermal::Temperature;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_mat4(rows: Vec<Vec<Complex64>>) -> PyResult<Mat4> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(PyValueError::new_err("matrix must be 4x4"));
    }
    let mut m = Mat4::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

fn from_mat4(m: &Mat4) -> Vec<Vec<Complex64>> {
    (0..4)
        .map(|i| (0..4).map(|j| m[(i, j)]).collect())
        .collect()
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "first" => Ok(Side::First),
        "second" => Ok(Side::Second),
        _ => Err(PyValueError::new_err(
            "side must be \"first\" or \"second\"",
        )),
    }
}

fn parse_family(name: &str) -> PyResult<FamilyId> {
    name.parse::<FamilyId>().map_err(value_err)
}

/// The fifteen physical couplings of the two-spin Hamiltonian: fields on
/// both qubits, Heisenberg exchange, and the antisymmetric (d*) and
/// symmetric (g*) cross-exchange components.
#[pyclass(skip_from_py_object)]
#[derive(Clone, Copy, Default)]
struct Couplings {
    #[pyo3(get, set)]
    b1x: f64,
    #[pyo3(get, set)]
    b1y: f64,
    #[pyo3(get, set)]
    b1z: f64,
    #[pyo3(get, set)]
    b2x: f64,
    #[pyo3(get, set)]
    b2y: f64,
    #[pyo3(get, set)]
    b2z: f64,
    #[pyo3(get, set)]
    jx: f64,
    #[pyo3(get, set)]
    jy: f64,
    #[pyo3(get, set)]
    jz: f64,
    #[pyo3(get, set)]
    dx: f64,
    #[pyo3(get, set)]
    dy: f64,
    #[pyo3(get, set)]
    dz: f64,
    #[pyo3(get, set)]
    gx: f64,
    #[pyo3(get, set)]
    gy: f64,
    #[pyo3(get, set)]
    gz: f64,
}

impl Couplings {
    fn to_core(self) -> CouplingSet {
        CouplingSet {
            b1: [self.b1x, self.b1y, self.b1z],
            b2: [self.b2x, self.b2y, self.b2z],
            j: [self.jx, self.jy, self.jz],
            d: [self.dx, self.dy, self.dz],
            gamma: [self.gx, self.gy, self.gz],
        }
    }

    fn from_core(c: CouplingSet) -> Couplings {
        Couplings {
            b1x: c.b1[0],
            b1y: c.b1[1],
            b1z: c.b1[2],
            b2x: c.b2[0],
            b2y: c.b2[1],
            b2z: c.b2[2],
            jx: c.j[0],
            jy: c.j[1],
            jz: c.j[2],
            dx: c.d[0],
            dy: c.d[1],
            dz: c.d[2],
            gx: c.gamma[0],
            gy: c.gamma[1],
            gz: c.gamma[2],
        }
    }
}

#[pymethods]
impl Couplings {
    #[new]
    #[pyo3(signature = (*, b1x=0.0, b1y=0.0, b1z=0.0, b2x=0.0, b2y=0.0, b2z=0.0,
                        jx=0.0, jy=0.0, jz=0.0, dx=0.0, dy=0.0, dz=0.0,
                        gx=0.0, gy=0.0, gz=0.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        b1x: f64, b1y: f64, b1z: f64, b2x: f64, b2y: f64, b2z: f64, jx: f64, jy: f64, jz: f64,
        dx: f64, dy: f64, dz: f64, gx: f64, gy: f64, gz: f64,
    ) -> Couplings {
        Couplings {
            b1x, b1y, b1z, b2x, b2y, b2z, jx, jy, jz, dx, dy, dz, gx, gy, gz,
        }
    }

    /// The full 4x4 Hamiltonian matrix of these couplings.
    fn hamiltonian(&self) -> Vec<Vec<Complex64>> {
        from_mat4(&spindimer::families::full_hamiltonian(&self.to_core()))
    }

    /// Splits the couplings into the part inside `family` (a dict keyed
    /// by two-character Pauli-pair names) and the dropped remainder.
    fn project(&self, py: Python<'_>, family: &str) -> PyResult<(Py<PyDict>, Couplings)> {
        let f = parse_family(family)?;
        let (params, residual) = spindimer::families::physical_projection(&self.to_core(), f);
        let dict = PyDict::new(py);
        for ((a, b), v) in params.entries() {
            dict.set_item(format!("{a}{b}"), v)?;
        }
        Ok((dict.into(), Couplings::from_core(residual)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Couplings(b1=({}, {}, {}), b2=({}, {}, {}), j=({}, {}, {}), d=({}, {}, {}), g=({}, {}, {}))",
            self.b1x, self.b1y, self.b1z, self.b2x, self.b2y, self.b2z,
            self.jx, self.jy, self.jz, self.dx, self.dy, self.dz,
            self.gx, self.gy, self.gz,
        )
    }
}

/// Names of the fifteen symmetry families in lexicographic order.
#[pyfunction]
fn families() -> Vec<String> {
    FamilyId::all().iter().map(|f| f.to_string()).collect()
}

/// The seven Pauli-pair names spanning a family.
#[pyfunction]
fn support(family: &str) -> PyResult<Vec<String>> {
    let f = parse_family(family)?;
    Ok(spindimer::families::support(f)
        .pairs()
        .iter()
        .map(|(a, b)| format!("{a}{b}"))
        .collect())
}

/// All families whose symmetry operator commutes with the matrix.
#[pyfunction]
fn classify(matrix: Vec<Vec<Complex64>>) -> PyResult<Vec<String>> {
    let m = to_mat4(matrix)?;
    Ok(spindimer::families::commuting_families(&m)
        .iter()
        .map(|f| f.to_string())
        .collect())
}

/// Hamiltonian of one family from its seven support coefficients, given
/// in the family's lexicographic support order.
#[pyfunction]
fn family_hamiltonian(family: &str, values: [f64; 7]) -> PyResult<Vec<Vec<Complex64>>> {
    let f = parse_family(family)?;
    let p = FamilyParams::new(f, values);
    let h = spindimer::families::build_hamiltonian(f, &p).map_err(value_err)?;
    Ok(from_mat4(&h))
}

/// The gate label ("H⊗Y", ...) and target family of a family's canonical
/// reduction.
#[pyfunction]
fn reduction(family: &str) -> PyResult<(String, String)> {
    let f = parse_family(family)?;
    Ok((
        spindimer::transforms::canonicalizer_description(f),
        spindimer::transforms::canonical_target(f).to_string(),
    ))
}

/// Eigenvalues of a Hermitian 4x4 matrix, ascending (Jacobi iteration).
#[pyfunction]
fn spectrum(matrix: Vec<Vec<Complex64>>) -> PyResult<[f64; 4]> {
    let m = to_mat4(matrix)?;
    Ok(spindimer::hermitian_eig4(&m).map_err(value_err)?.eigenvalues)
}

/// Eigenvalues through the family's 2x2 block structure.
#[pyfunction]
fn family_spectrum(matrix: Vec<Vec<Complex64>>, family: &str) -> PyResult<[f64; 4]> {
    let m = to_mat4(matrix)?;
    let f = parse_family(family)?;
    spindimer::transforms::family_spectrum(&m, f).map_err(value_err)
}

/// Gibbs state exp(-H/T)/Z of a Hermitian Hamiltonian.
#[pyfunction]
fn gibbs(matrix: Vec<Vec<Complex64>>, temperature: f64) -> PyResult<Vec<Vec<Complex64>>> {
    let m = to_mat4(matrix)?;
    let t = Temperature::new(temperature).map_err(value_err)?;
    Ok(from_mat4(&spindimer::thermal::gibbs(&m, t).map_err(value_err)?))
}

/// Partition function Z = Σ exp(-λ/T).
#[pyfunction]
fn partition_function(matrix: Vec<Vec<Complex64>>, temperature: f64) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    let t = Temperature::new(temperature).map_err(value_err)?;
    spindimer::thermal::partition_function(&m, t).map_err(value_err)
}

/// Von Neumann entropy of a two-qubit density matrix, in bits.
#[pyfunction]
fn von_neumann_entropy(matrix: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    spindimer::correlations::von_neumann_entropy(&m).map_err(value_err)
}

/// Concurrence of a two-qubit density matrix (X fast path when X-form).
#[pyfunction]
fn concurrence(matrix: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    let zz = FamilyId::new(
        spindimer::pauli::PauliIndex::Z,
        spindimer::pauli::PauliIndex::Z,
    )
    .unwrap();
    if spindimer::families::in_family(&m, zz) {
        Ok(spindimer::correlations::concurrence_x(
            &XParams::from_matrix(&m).map_err(value_err)?,
        ))
    } else {
        spindimer::correlations::concurrence_general(&m).map_err(value_err)
    }
}

/// PPT separability verdict and the minimum partial-transpose eigenvalue.
#[pyfunction]
fn ppt_separable(matrix: Vec<Vec<Complex64>>) -> PyResult<(bool, f64)> {
    let m = to_mat4(matrix)?;
    spindimer::correlations::ppt_separable(&m).map_err(value_err)
}

/// Quantum discord with the projective measurement on `side`.
#[pyfunction]
#[pyo3(signature = (matrix, side = "second"))]
fn discord(matrix: Vec<Vec<Complex64>>, side: &str) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    Ok(spindimer::correlations::discord(&m, parse_side(side)?)
        .map_err(value_err)?
        .value)
}

/// Dense-grid discord oracle at the given per-axis resolution.
#[pyfunction]
#[pyo3(signature = (matrix, side = "second", resolution = 181))]
fn discord_oracle(matrix: Vec<Vec<Complex64>>, side: &str, resolution: usize) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    spindimer::correlations::discord_oracle(&m, parse_side(side)?, resolution).map_err(value_err)
}

/// One-way quantum work deficit with the dephasing on `side`.
#[pyfunction]
#[pyo3(signature = (matrix, side = "second"))]
fn work_deficit(matrix: Vec<Vec<Complex64>>, side: &str) -> PyResult<f64> {
    let m = to_mat4(matrix)?;
    Ok(spindimer::correlations::work_deficit(&m, parse_side(side)?)
        .map_err(value_err)?
        .value)
}

fn measure_dict(py: Python<'_>, m: &MeasureReport) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", m.value)?;
    d.set_item("value_at_zero", m.branches.value_at_zero)?;
    d.set_item("value_at_pi_half", m.branches.value_at_pi_half)?;
    d.set_item("interior_value", m.branches.interior_value)?;
    d.set_item("interior_theta", m.branches.interior_theta)?;
    d.set_item("winner", m.branches.winner.to_string())?;
    Ok(d.into())
}

fn report_dict(py: Python<'_>, r: &CorrelationReport) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("concurrence", r.concurrence)?;
    d.set_item("discord_first", measure_dict(py, &r.discord_first)?)?;
    d.set_item("discord_second", measure_dict(py, &r.discord_second)?)?;
    d.set_item("deficit_first", measure_dict(py, &r.deficit_first)?)?;
    d.set_item("deficit_second", measure_dict(py, &r.deficit_second)?)?;
    d.set_item("ppt_separable", r.ppt_separable)?;
    d.set_item("min_pt_eigenvalue", r.min_pt_eigenvalue)?;
    Ok(d.into())
}

/// Full correlation report of a two-qubit density matrix as a nested
/// dict: concurrence, both discords, both deficits with branch
/// diagnostics, and the PPT verdict.
#[pyfunction]
fn correlation_report(py: Python<'_>, matrix: Vec<Vec<Complex64>>) -> PyResult<Py<PyDict>> {
    let m = to_mat4(matrix)?;
    let report = spindimer::correlations::correlation_report(&m).map_err(value_err)?;
    report_dict(py, &report)
}

#[pymodule]
fn spindimer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Couplings>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(family_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(reduction, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(family_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(gibbs, m)?)?;
    m.add_function(wrap_pyfunction!(partition_function, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(ppt_separable, m)?)?;
    m.add_function(wrap_pyfunction!(discord, m)?)?;
    m.add_function(wrap_pyfunction!(discord_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(work_deficit, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_report, m)?)?;
    Ok(())
}
