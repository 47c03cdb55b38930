//! Python bindings. Permutations cross the boundary as one-line strings ("3412", "e@4",
//! "w0@3"); structured reports come back as JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use flagtoric::catalan_bott::{self, CatalanSide};
use flagtoric::group_core::{self, Permutation};
use flagtoric::matroids::{self, CoxeterSubset};
use flagtoric::orbit_closures::{self, FlagMatrix};
use flagtoric::{richardson, schubert};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn perm(s: &str) -> PyResult<Permutation> {
    s.parse().map_err(value_err)
}

fn to_json<T: serde::Serialize>(x: &T) -> PyResult<String> {
    serde_json::to_string(x).map_err(value_err)
}

#[pyfunction]
fn length(w: &str) -> PyResult<usize> {
    Ok(perm(w)?.length())
}

#[pyfunction]
fn bruhat_leq(v: &str, w: &str) -> PyResult<bool> {
    group_core::bruhat_leq(&perm(v)?, &perm(w)?).map_err(value_err)
}

#[pyfunction]
fn eulerian(n: usize) -> Vec<i64> {
    schubert::eulerian(n).coeffs().to_vec()
}

/// Coefficients of `A_w(t)`.
#[pyfunction]
fn a_w(w: &str) -> PyResult<Vec<i64>> {
    Ok(schubert::a_w(&perm(w)?).coeffs().to_vec())
}

/// Coefficients of the Poincaré polynomial of `Y_w` in `t`.
#[pyfunction]
fn poincare(w: &str) -> PyResult<Vec<i64>> {
    Ok(schubert::poincare_yw(&perm(w)?).coeffs().to_vec())
}

#[pyfunction]
fn schubert_report(w: &str) -> PyResult<String> {
    to_json(&schubert::schubert_report(&perm(w)?))
}

/// `(dim, f_vector, simple)` of `Q^v_w`.
#[pyfunction]
fn interval_polytope(v: &str, w: &str) -> PyResult<(usize, Vec<usize>, bool)> {
    let q = richardson::q_vw(&perm(v)?, &perm(w)?).map_err(value_err)?;
    Ok((q.dim(), q.face_lattice().f_vector(), q.is_simple()))
}

#[pyfunction]
fn pair_report(v: &str, w: &str) -> PyResult<String> {
    to_json(&richardson::pair_report(&perm(v)?, &perm(w)?).map_err(value_err)?)
}

#[pyfunction]
fn is_coxeter_matroid(elements: Vec<String>) -> PyResult<bool> {
    let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
    let m = CoxeterSubset::parse(&refs).map_err(value_err)?;
    Ok(matroids::is_coxeter_matroid(&m).is_matroid)
}

/// Fixed points of the flag whose rows are given as rational strings ("1", "-3/4").
#[pyfunction]
fn fixed_points(rows: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let csv: String = rows.iter().map(|r| r.join(",") + "\n").collect();
    let x = FlagMatrix::from_csv(&csv).map_err(value_err)?;
    Ok(orbit_closures::fixed_points(&x).elements().iter().map(|p| p.to_string()).collect())
}

#[pyfunction]
fn triangulation_count(n: usize) -> usize {
    catalan_bott::triangulations(n).len()
}

#[pyfunction]
fn wedderburn_etherington(upto: usize) -> Vec<u128> {
    catalan_bott::wedderburn_etherington(upto)
}

#[pyfunction]
fn psi(u: &str) -> PyResult<String> {
    Ok(catalan_bott::psi(&perm(u)?).to_string())
}

/// `(v, w)` for `side` in {"head", "tail"}.
#[pyfunction]
fn catalan_pair(u: &str, side: &str) -> PyResult<(String, String)> {
    let side = match side {
        "head" => CatalanSide::Head,
        "tail" => CatalanSide::Tail,
        other => return Err(value_err(format!("side must be head or tail, got {other}"))),
    };
    let (v, w) = catalan_bott::catalan_pair(&perm(u)?, side);
    Ok((v.to_string(), w.to_string()))
}

#[pyfunction]
fn sf_class_count(n: usize) -> usize {
    catalan_bott::sf_classes(n).len()
}

/// Runs the command line in-process and returns `(exit_code, output)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let argv = std::iter::once("flagtoric".to_string()).chain(args);
    match flagtoric::cli::execute(argv) {
        Ok((text, code)) | Err((text, code)) => (code, text),
    }
}

#[pymodule]
fn pyflagtoric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", flagtoric::VERSION)?;
    m.add_function(wrap_pyfunction!(length, m)?)?;
    m.add_function(wrap_pyfunction!(bruhat_leq, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(a_w, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(schubert_report, m)?)?;
    m.add_function(wrap_pyfunction!(interval_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(pair_report, m)?)?;
    m.add_function(wrap_pyfunction!(is_coxeter_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(triangulation_count, m)?)?;
    m.add_function(wrap_pyfunction!(wedderburn_etherington, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_pair, m)?)?;
    m.add_function(wrap_pyfunction!(sf_class_count, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
