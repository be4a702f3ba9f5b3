//! Python bindings. Words and forests cross the boundary as strings in the
//! library's text syntax; coefficients come back as `fractions.Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use arbormz::arborify::{arborify as arborify_forest, Flavor};
use arbormz::forests::{self, enumerate_trees as enumerate, Forest as CoreForest};
use arbormz::hoffman;
use arbormz::lincomb::{format_rational, LinComb, Rational};
use arbormz::words::{self, Letter, Word, XLetter, XWord, YLetter, YWord};
use arbormz::zeta::{self, MzvIndex, SymbolicRegValue};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, c: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(c),))
}

fn lincomb_dict<'py, B: Ord + Clone + std::fmt::Display>(
    py: Python<'py>,
    a: &LinComb<B>,
) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (b, c) in a.iter() {
        out.set_item(b.to_string(), fraction(py, c)?)?;
    }
    Ok(out)
}

fn is_x(text: &str) -> bool {
    text.chars().find(|c| matches!(c, 'x' | 'y')) == Some('x')
}

fn parse<T: std::str::FromStr>(text: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    text.parse().map_err(value_error)
}

fn word_product<'py, A: Letter>(
    py: Python<'py>,
    u: &str,
    v: &str,
    product: fn(&Word<A>, &Word<A>) -> LinComb<Word<A>>,
) -> PyResult<Bound<'py, PyDict>> {
    lincomb_dict(py, &product(&parse(u)?, &parse(v)?))
}

/// Shuffle product of two words over the same alphabet.
#[pyfunction]
fn shuffle<'py>(py: Python<'py>, u: &str, v: &str) -> PyResult<Bound<'py, PyDict>> {
    if is_x(u) || is_x(v) {
        word_product::<XLetter>(py, u, v, words::shuffle)
    } else {
        word_product::<YLetter>(py, u, v, words::shuffle)
    }
}

/// Quasi-shuffle product; y-letters contract by adding indices.
#[pyfunction]
fn quasi_shuffle<'py>(py: Python<'py>, u: &str, v: &str) -> PyResult<Bound<'py, PyDict>> {
    if is_x(u) || is_x(v) {
        word_product::<XLetter>(py, u, v, words::quasi_shuffle)
    } else {
        word_product::<YLetter>(py, u, v, words::quasi_shuffle)
    }
}

/// `y_n -> x0^(n-1) x1`.
#[pyfunction]
fn s_map(word: &str) -> PyResult<String> {
    Ok(words::s_map(&parse(word)?).to_string())
}

fn flavor_of(name: &str) -> PyResult<Flavor> {
    match name {
        "simple" => Ok(Flavor::Simple),
        "contracting" => Ok(Flavor::Contracting),
        other => Err(PyValueError::new_err(format!(
            "flavor must be 'simple' or 'contracting', not {other:?}"
        ))),
    }
}

/// Arborification of a forest. The flavor defaults to simple for x-letters
/// and contracting for y-letters.
#[pyfunction]
#[pyo3(signature = (forest, flavor=None))]
fn arborify<'py>(py: Python<'py>, forest: &str, flavor: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
    let x = is_x(forest);
    let flavor = match flavor {
        Some(name) => flavor_of(name)?,
        None if x => Flavor::Simple,
        None => Flavor::Contracting,
    };
    if x {
        lincomb_dict(py, &arborify_forest(&parse::<CoreForest<XLetter>>(forest)?, flavor))
    } else {
        lincomb_dict(py, &arborify_forest(&parse::<CoreForest<YLetter>>(forest)?, flavor))
    }
}

fn coproduct_dict<'py, D: Letter>(py: Python<'py>, forest: &CoreForest<D>) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (pair, c) in forests::coproduct(forest).iter() {
        out.set_item((pair.left.to_string(), pair.right.to_string()), fraction(py, c)?)?;
    }
    Ok(out)
}

/// Admissible-cut coproduct as `{(crown, trunk): coefficient}`.
#[pyfunction]
fn coproduct<'py>(py: Python<'py>, forest: &str) -> PyResult<Bound<'py, PyDict>> {
    if is_x(forest) {
        coproduct_dict(py, &parse::<CoreForest<XLetter>>(forest)?)
    } else {
        coproduct_dict(py, &parse::<CoreForest<YLetter>>(forest)?)
    }
}

/// Canonical trees with `n` vertices decorated by y1..y`decorations`.
#[pyfunction]
#[pyo3(signature = (n, decorations=1))]
fn enumerate_trees(n: usize, decorations: u32) -> Vec<String> {
    let letters: Vec<YLetter> = (1..=decorations).filter_map(YLetter::new).collect();
    enumerate(n, &letters).iter().map(ToString::to_string).collect()
}

/// `ζ(n1, …, nr)` to absolute accuracy `tol`.
#[pyfunction]
#[pyo3(signature = (index, tol=zeta::DEFAULT_TOL))]
fn zeta_value(index: Vec<u32>, tol: f64) -> PyResult<f64> {
    let index = MzvIndex::new(index).map_err(value_error)?;
    zeta::eval_mzv(&index, tol).map_err(value_error)
}

/// Value of a convergent word in either alphabet.
#[pyfunction]
#[pyo3(signature = (word, tol=zeta::DEFAULT_TOL))]
fn zeta_word(word: &str, tol: f64) -> PyResult<f64> {
    if is_x(word) {
        zeta::zeta_word_x(&parse::<XWord>(word)?, tol).map_err(value_error)
    } else {
        zeta::zeta_word_y(&parse::<YWord>(word)?, tol).map_err(value_error)
    }
}

/// (Contracted) arborified zeta value of a convergent forest.
#[pyfunction]
#[pyo3(signature = (forest, tol=zeta::DEFAULT_TOL))]
fn zeta_tree(forest: &str, tol: f64) -> PyResult<f64> {
    if is_x(forest) {
        zeta::zeta_tree_x(&parse(forest)?, tol).map_err(value_error)
    } else {
        zeta::zeta_tree_y(&parse(forest)?, tol).map_err(value_error)
    }
}

fn reg_dict<'py>(py: Python<'py>, value: &SymbolicRegValue) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (k, c) in value.iter() {
        out.set_item(k, lincomb_dict(py, c)?)?;
    }
    Ok(out)
}

/// Regularized value as `{power of theta: {convergent y-word: coefficient}}`.
/// Y-words use the quasi-shuffle regularization, x-words the shuffle one.
#[pyfunction]
fn regularize<'py>(py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyDict>> {
    if is_x(word) {
        reg_dict(py, &zeta::reg_sh(&parse(word)?).map_err(value_error)?)
    } else {
        reg_dict(py, &zeta::reg_qsh(&parse(word)?))
    }
}

/// Largest coefficient gap between the two sides of the ρ relation for `word`.
#[pyfunction]
#[pyo3(signature = (word, tol=zeta::DEFAULT_TOL))]
fn check_bmz(word: &str, tol: f64) -> PyResult<f64> {
    zeta::check_bmz(&parse(word)?, tol).map_err(value_error)
}

#[pyfunction]
fn hoffman_exp<'py>(py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyDict>> {
    lincomb_dict(py, &hoffman::exp_map(&parse::<YWord>(word)?))
}

#[pyfunction]
fn hoffman_log<'py>(py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyDict>> {
    lincomb_dict(py, &hoffman::log_map(&parse::<YWord>(word)?))
}

/// Runs the worked examples; returns `[(identity, passed)]`.
#[pyfunction]
fn selftest(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let rows: Vec<(String, bool)> = arbormz::selftest::selftest()
        .into_iter()
        .map(|r| (r.identity, r.pass))
        .collect();
    PyList::new(py, rows)
}

/// A forest of y-decorated trees, kept in canonical form.
#[pyclass(frozen, eq, hash, skip_from_py_object, name = "Forest")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyForest(CoreForest<YLetter>);

#[pymethods]
impl PyForest {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyForest)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Forest({:?})", self.0.to_string())
    }

    fn __mul__(&self, other: &PyForest) -> PyForest {
        PyForest(self.0.product(&other.0))
    }

    /// Number of vertices.
    #[getter]
    fn grade(&self) -> usize {
        self.0.grade()
    }

    fn trees(&self) -> Vec<String> {
        self.0.trees().iter().map(ToString::to_string).collect()
    }

    fn arborify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        lincomb_dict(py, &arborify_forest(&self.0, Flavor::Contracting))
    }

    fn coproduct<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        coproduct_dict(py, &self.0)
    }

    fn is_convergent(&self) -> bool {
        arbormz::arborify::is_convergent_tree_y(&self.0)
    }

    #[pyo3(signature = (tol=zeta::DEFAULT_TOL))]
    fn zeta(&self, tol: f64) -> PyResult<f64> {
        zeta::zeta_tree_y(&self.0, tol).map_err(value_error)
    }
}

#[pymodule]
#[pyo3(name = "arbormz")]
fn arbormz_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForest>()?;
    m.add_function(wrap_pyfunction!(shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(s_map, m)?)?;
    m.add_function(wrap_pyfunction!(arborify, m)?)?;
    m.add_function(wrap_pyfunction!(coproduct, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_value, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_word, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_tree, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(check_bmz, m)?)?;
    m.add_function(wrap_pyfunction!(hoffman_exp, m)?)?;
    m.add_function(wrap_pyfunction!(hoffman_log, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
