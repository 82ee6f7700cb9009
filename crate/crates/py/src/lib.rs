//! Python bindings. Words cross the boundary as `str` (one character per
//! symbol, or space-separated names); the empty word is `""`. Objects are
//! loaded from the same JSON description files the CLI reads.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use workbench_core::commutative as comm;
use workbench_core::counter;
use workbench_core::etol::{self, TreeCount};
use workbench_core::format::{self, Object};
use workbench_core::matrix;
use workbench_core::semilinear as sl;
use workbench_core::vecautomata::Relation;
use workbench_core::series::{self, Coefficient};
use workbench_core::{Alphabet, Budget, Error, Word};

fn err(e: Error) -> PyErr {
    if e.is_budget() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.to_string()
    }
}

fn words(ws: &[Word]) -> Vec<String> {
    ws.iter().map(show).collect()
}

fn budget(steps: Option<usize>) -> Budget {
    steps.map_or_else(Budget::default, |n| Budget::default().with_states(n))
}

/// `None` for an unbounded number of trees, the lower bound when the
/// exploration was cut short.
fn count(c: TreeCount) -> Option<u64> {
    match c {
        TreeCount::Exact(n) | TreeCount::AtLeast(n) => Some(n),
        TreeCount::Infinite => None,
    }
}

#[pyclass(name = "SemilinearSet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySemilinear(sl::SemilinearSet);

#[pymethods]
impl PySemilinear {
    /// `components` is a list of `(constant, periods)` pairs.
    #[new]
    fn new(components: Vec<(Vec<u64>, Vec<Vec<u64>>)>) -> PyResult<Self> {
        let comps = components
            .into_iter()
            .map(|(c, p)| sl::LinearSet::new(c, p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        sl::SemilinearSet::new(comps).map(PySemilinear).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn member(&self, v: Vec<u64>) -> PyResult<bool> {
        self.0.member(&v).map_err(err)
    }

    fn is_semi_simple(&self, box_bound: u64) -> bool {
        sl::validate_semi_simple(&self.0, box_bound).validated
    }

    fn to_json(&self) -> String {
        format::print(&Object::Semilinear(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("SemilinearSet(dim={}, components={})", self.0.dim(), self.0.components.len())
    }
}

#[pyclass(name = "BoundedSpec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBounded(sl::BoundedSpec);

#[pymethods]
impl PyBounded {
    /// Ginsburg spec `{w₁^{t₁}⋯w_k^{t_k} : t ∈ q}`.
    #[staticmethod]
    fn ginsburg(words: Vec<String>, q: &PySemilinear) -> PyResult<Self> {
        let ws = words.iter().map(|s| Word::parse(s)).collect();
        sl::BoundedSpec::ginsburg(ws, q.0.clone()).map(PyBounded).map_err(err)
    }

    fn contains(&self, word: &str) -> PyResult<bool> {
        sl::induced_member(&self.0, &Word::parse(word)).map_err(err)
    }

    fn enumerate(&self, max_len: usize) -> PyResult<Vec<String>> {
        sl::enumerate_bounded(&self.0, max_len).map(|w| words(&w)).map_err(err)
    }
}

#[pyclass(name = "EtolSystem", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEtol(etol::EtolSystem);

#[pymethods]
impl PyEtol {
    #[getter]
    fn reduced(&self) -> bool {
        self.0.reduced
    }

    #[getter]
    fn tables(&self) -> Vec<String> {
        self.0.tables.iter().map(|t| t.name.clone()).collect()
    }

    #[pyo3(signature = (max_len, steps=None))]
    fn language(&self, max_len: usize, steps: Option<usize>) -> PyResult<Vec<String>> {
        self.0.language(max_len, &budget(steps)).map(|w| words(&w)).map_err(err)
    }

    fn count_trees(&self, word: &str) -> Option<u64> {
        count(self.0.count_trees(&Word::parse(word), &Budget::default()))
    }

    /// `(max_index, witness)` over words up to `max_len`.
    fn index_audit(&self, max_len: usize) -> (usize, Option<String>) {
        let a = self.0.index_audit(max_len, &Budget::default());
        (a.max_index, a.witness.as_ref().map(show))
    }

    fn to_reduced(&self) -> PyEtol {
        PyEtol(etol::to_reduced(&self.0))
    }

    fn to_edtol(&self, k: usize) -> PyResult<PyEtol> {
        matrix::reduced_etol_to_edtol(&self.0, k).map(PyEtol).map_err(err)
    }

    fn to_matrix(&self, k: usize) -> PyResult<PyMatrix> {
        matrix::reduced_etol_to_matrix(&self.0, k).map(PyMatrix).map_err(err)
    }

    fn to_json(&self) -> String {
        format::print(&Object::Etol(self.0.clone()))
    }
}

#[pyclass(name = "MatrixGrammar", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix(matrix::MatrixGrammar);

#[pymethods]
impl PyMatrix {
    #[getter]
    fn matrices(&self) -> Vec<String> {
        self.0.matrices.iter().map(|m| m.name.clone()).collect()
    }

    #[pyo3(signature = (max_len, steps=None))]
    fn language(&self, max_len: usize, steps: Option<usize>) -> PyResult<Vec<String>> {
        self.0.language(max_len, &budget(steps)).map(|w| words(&w)).map_err(err)
    }

    fn count_derivations(&self, word: &str) -> Option<u64> {
        count(self.0.count_derivations(&Word::parse(word), &Budget::default()))
    }

    fn is_normal(&self, k: usize) -> bool {
        self.0.check_normal_form(k).is_ok()
    }

    fn normal_form(&self, k: usize) -> PyResult<PyMatrix> {
        matrix::normal_form(&self.0, k).map(|(g, _)| PyMatrix(g)).map_err(err)
    }

    fn to_reduced_etol(&self, k: usize) -> PyResult<PyEtol> {
        matrix::matrix_to_reduced_etol(&self.0, k).map(PyEtol).map_err(err)
    }

    /// Accepted Szilard words (matrix names joined by spaces) up to `max_len` matrices.
    fn szilard_words(&self, k: usize, max_len: usize) -> PyResult<Vec<String>> {
        let sz = matrix::szilard_dfa(&self.0, k).map_err(err)?;
        sz.dfa
            .words_up_to(max_len, &Budget::default())
            .map(|ws| ws.iter().map(|w| w.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ")).collect())
            .map_err(err)
    }

    /// Length-counting coefficients `f(0..=n)`; `None` marks an infinite one.
    fn counting_coefficients(&self, k: usize, n: usize) -> PyResult<Vec<Option<u128>>> {
        let cs = series::counting_coefficients(&self.0, k, n).map_err(err)?;
        Ok(cs
            .into_iter()
            .map(|c| match c {
                Coefficient::Finite(x) => u128::try_from(x).ok(),
                Coefficient::Infinite => None,
            })
            .collect())
    }

    fn to_json(&self) -> String {
        format::print(&Object::matrix(&self.0))
    }
}

/// Parses a description file and returns the matching wrapper object.
#[pyfunction]
fn load(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(match format::parse(text).map_err(err)? {
        Object::Semilinear(q) => Py::new(py, PySemilinear(q))?.into_any(),
        Object::Bounded(b) => Py::new(py, PyBounded(b))?.into_any(),
        Object::Etol(g) => Py::new(py, PyEtol(g))?.into_any(),
        Object::Matrix(f) => Py::new(py, PyMatrix(matrix::MatrixGrammar::try_from(&f).map_err(err)?))?.into_any(),
        other => return Err(PyValueError::new_err(format!("no Python wrapper for kind `{}`", other.kind()))),
    })
}

#[pyfunction]
fn phi(words: Vec<String>, t: Vec<u64>) -> PyResult<String> {
    let ws: Vec<Word> = words.iter().map(|s| Word::parse(s)).collect();
    sl::phi(&ws, &t).map(|w| show(&w)).map_err(err)
}

#[pyfunction]
fn parikh(word: &str, letters: &str) -> PyResult<Vec<u64>> {
    let a = Alphabet::from_chars(letters).map_err(err)?;
    workbench_core::parikh(&Word::parse(word), &a).map_err(err)
}

#[pyfunction]
fn build_prefix_code(vs: Vec<String>) -> PyResult<Vec<String>> {
    let ws: Vec<Word> = vs.iter().map(|s| Word::parse(s)).collect();
    comm::build_prefix_code(&ws).map(|w| words(&w)).map_err(err)
}

#[pyfunction]
fn is_code(ws: Vec<String>) -> bool {
    comm::is_code(&ws.iter().map(|s| Word::parse(s)).collect::<Vec<_>>())
}

/// `(order, coefficients)` with coefficients as exact fraction strings.
#[pyfunction]
fn fit_recurrence(seq: Vec<i64>, max_order: usize) -> PyResult<Option<(usize, Vec<String>)>> {
    let seq: Vec<BigInt> = seq.into_iter().map(BigInt::from).collect();
    let fit = series::fit_recurrence(&seq, max_order).map_err(err)?;
    Ok(fit.map(|f| (f.order, f.coefficients.iter().map(|c| c.to_string()).collect())))
}

/// `(holds, witness)` for `relation` in `equal`, `subset`, `disjoint`.
#[pyfunction]
fn decide(s1: &PyBounded, s2: &PyBounded, relation: &str) -> PyResult<(bool, Option<String>)> {
    let rel: Relation = relation.parse().map_err(err)?;
    let v = counter::decide_bounded(&s1.0, &s2.0, rel, None).map_err(err)?;
    Ok((v.holds, v.witness.as_ref().map(show)))
}

#[pymodule]
fn workbench(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemilinear>()?;
    m.add_class::<PyBounded>()?;
    m.add_class::<PyEtol>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(parikh, m)?)?;
    m.add_function(wrap_pyfunction!(build_prefix_code, m)?)?;
    m.add_function(wrap_pyfunction!(is_code, m)?)?;
    m.add_function(wrap_pyfunction!(fit_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_crosses_as_empty_string() {
        assert_eq!(show(&Word::empty()), "");
        assert_eq!(words(&[Word::parse("ab"), Word::empty()]), vec!["ab".to_string(), String::new()]);
    }

    #[test]
    fn tree_counts_map_to_optional_integers() {
        assert_eq!(count(TreeCount::Exact(2)), Some(2));
        assert_eq!(count(TreeCount::Infinite), None);
    }
}
