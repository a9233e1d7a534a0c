//! Python bindings for `rubikmap`.
//!
//! Points, darts, faces and vertices are 1-based on the Python side, as in
//! map files and cycle notation. Errors surface as `ValueError`.

use std::time::Duration;

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use ::rubikmap::map::{self, Map as CoreMap};
use ::rubikmap::perm::Perm;
use ::rubikmap::puzzle::{format_moves, parse_moves, Puzzle as CorePuzzle, PuzzleState};
use ::rubikmap::verify::{self, VerifyOptions};
use ::rubikmap::{BuildOptions, PermGroup, RubikPresentation};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

/// An oriented 3-valent map.
#[pyclass(name = "Map", module = "rubikmap", frozen, from_py_object)]
#[derive(Clone)]
struct PyMap {
    inner: CoreMap,
}

#[pymethods]
impl PyMap {
    /// Looks up a built-in map such as `cube`, `prism5` or `truncated_cube`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: map::by_name(name).map_err(err)?,
        })
    }

    /// Reads a map file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: map::load(path).map_err(err)?,
        })
    }

    /// Parses the text of a map file.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: map::parse(text).map_err(err)?,
        })
    }

    /// Builds a map from 1-based vertex rotations and edge pairs.
    #[staticmethod]
    #[pyo3(signature = (sigma, alpha, name = "map"))]
    fn from_rotation_system(sigma: Vec<Vec<usize>>, alpha: Vec<[usize; 2]>, name: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: CoreMap::from_rotation_system(&sigma, &alpha, name).map_err(err)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        map::save(&self.inner, path).map_err(err)
    }

    fn to_json(&self) -> String {
        map::MapFile::from_map(&self.inner).to_json()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn darts(&self) -> usize {
        self.inner.dart_count()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn faces(&self) -> usize {
        self.inner.face_count()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn face_sizes(&self) -> Vec<usize> {
        self.inner.face_sizes()
    }

    /// Boundary darts of every face, 1-based.
    fn face_darts(&self) -> Vec<Vec<usize>> {
        self.inner
            .faces()
            .iter()
            .map(|f| f.iter().map(|d| d + 1).collect())
            .collect()
    }

    fn sigma_cycles(&self) -> Vec<Vec<usize>> {
        self.inner.sigma_cycles()
    }

    fn alpha_pairs(&self) -> Vec<[usize; 2]> {
        self.inner.alpha_pairs()
    }

    fn __repr__(&self) -> String {
        format!(
            "Map({:?}, V={}, E={}, F={}, genus={})",
            self.inner.name(),
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.face_count(),
            self.inner.genus()
        )
    }
}

/// The puzzle group generated by the side movements of a map.
#[pyclass(name = "RubikGroup", module = "rubikmap", frozen)]
struct PyRubikGroup {
    presentation: RubikPresentation,
    group: PermGroup,
}

impl PyRubikGroup {
    fn perm(&self, cycles: &str) -> PyResult<Perm> {
        Perm::parse_cycles(cycles, self.presentation.degree()).map_err(err)
    }
}

#[pymethods]
impl PyRubikGroup {
    #[new]
    #[pyo3(signature = (map, seed = 1))]
    fn new(py: Python<'_>, map: &PyMap, seed: u64) -> PyResult<Self> {
        let inner = map.inner.clone();
        py.detach(move || {
            let presentation = RubikPresentation::new(inner).map_err(err)?;
            let group = presentation
                .group_with(&BuildOptions::seeded(seed))
                .map_err(err)?;
            Ok(PyRubikGroup {
                presentation,
                group,
            })
        })
    }

    /// Exact group order as a Python int.
    fn order(&self) -> BigUint {
        self.group.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.presentation.degree()
    }

    /// Side movements in 1-based cycle notation, one per face.
    fn generators(&self) -> Vec<String> {
        self.presentation
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    /// Membership test for a permutation written as `(1,2,3)(4,5)`.
    fn contains(&self, cycles: &str) -> PyResult<bool> {
        self.group.contains(&self.perm(cycles)?).map_err(err)
    }

    /// A word in the face moves, e.g. `F1 F3^-1`, evaluating to the element.
    fn factor(&self, cycles: &str) -> PyResult<String> {
        let w = self.group.factor(&self.perm(cycles)?).map_err(err)?;
        Ok(format_moves(&w))
    }

    /// A GAP script declaring the generators.
    fn script(&self) -> String {
        self.presentation.script()
    }
}

/// A playable puzzle on one map.
#[pyclass(name = "Puzzle", module = "rubikmap")]
struct PyPuzzle {
    puzzle: CorePuzzle,
    state: PuzzleState,
}

#[pymethods]
impl PyPuzzle {
    #[new]
    #[pyo3(signature = (map, seed = 1))]
    fn new(py: Python<'_>, map: &PyMap, seed: u64) -> PyResult<Self> {
        let inner = map.inner.clone();
        let puzzle = py.detach(move || CorePuzzle::new(inner, seed)).map_err(err)?;
        let state = puzzle.solved();
        Ok(PyPuzzle { puzzle, state })
    }

    /// Turns `face` (1-based) by `exponent` notches.
    #[pyo3(name = "move", signature = (face, exponent = 1))]
    fn turn(&mut self, face: usize, exponent: i32) -> PyResult<()> {
        let count = self.puzzle.face_count();
        if face == 0 || face > count {
            return Err(err(format!("face {face} does not exist (the map has {count} faces)")));
        }
        self.puzzle
            .apply_move(&mut self.state, face - 1, exponent)
            .map_err(err)
    }

    /// Applies moves written as `F1 F3^-1`.
    fn apply(&mut self, moves: &str) -> PyResult<()> {
        let w = parse_moves(moves, self.puzzle.face_count()).map_err(err)?;
        self.puzzle.apply_word(&mut self.state, &w).map_err(err)
    }

    /// Applies a seeded random sequence and returns it.
    #[pyo3(signature = (seed, length = 30))]
    fn scramble(&mut self, seed: u64, length: usize) -> String {
        format_moves(&self.puzzle.scramble(&mut self.state, seed, length))
    }

    /// Moves that return the current state to solved. The state is unchanged.
    fn solve(&self) -> PyResult<String> {
        Ok(format_moves(&self.puzzle.solve(&self.state).map_err(err)?))
    }

    fn reset(&mut self) {
        self.state.reset();
    }

    /// Face label (1-based) of the sticker at every point.
    fn stickers(&self) -> Vec<usize> {
        self.puzzle
            .stickers(&self.state)
            .into_iter()
            .map(|f| f + 1)
            .collect()
    }

    fn history(&self) -> String {
        format_moves(self.state.history())
    }

    fn is_solved(&self) -> bool {
        self.puzzle.is_solved(&self.state)
    }

    #[getter]
    fn faces(&self) -> usize {
        self.puzzle.face_count()
    }
}

/// Order predicted for the puzzle group of a map.
#[pyfunction]
fn predicted_order(map: &PyMap) -> PyResult<BigUint> {
    verify::predicted_order(&map.inner).map_err(err)
}

fn options(seed: u64, budget_seconds: Option<f64>) -> PyResult<VerifyOptions> {
    let budget = budget_seconds
        .map(|s| Duration::try_from_secs_f64(s).map_err(err))
        .transpose()?;
    Ok(VerifyOptions {
        seed,
        budget,
        ..Default::default()
    })
}

/// Checks one map and returns the report as a dict.
#[pyfunction]
#[pyo3(name = "verify", signature = (map, seed = 1, budget_seconds = None))]
fn verify_map(py: Python<'_>, map: &PyMap, seed: u64, budget_seconds: Option<f64>) -> PyResult<Py<PyAny>> {
    let opts = options(seed, budget_seconds)?;
    let inner = map.inner.clone();
    let report = py.detach(move || verify::verify(&inner, &opts)).map_err(err)?;
    let text = serde_json::to_string(&report).map_err(err)?;
    json_to_py(py, &text)
}

/// Checks several maps (the built-in suite when `maps` is None) and returns
/// `{"reports": [...], "summary": {...}}`.
#[pyfunction]
#[pyo3(signature = (maps = None, seed = 1, budget_seconds = None))]
fn run_suite(
    py: Python<'_>,
    maps: Option<Vec<PyMap>>,
    seed: u64,
    budget_seconds: Option<f64>,
) -> PyResult<Py<PyAny>> {
    let opts = options(seed, budget_seconds)?;
    let maps: Vec<CoreMap> = match maps {
        Some(ms) => ms.into_iter().map(|m| m.inner).collect(),
        None => map::default_suite(),
    };
    let text = py.detach(move || verify::to_json(&verify::run_suite(&maps, &opts)));
    json_to_py(py, &text)
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    map::catalog_names()
}

#[pymodule]
#[pyo3(name = "rubikmap")]
fn rubikmap_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMap>()?;
    m.add_class::<PyRubikGroup>()?;
    m.add_class::<PyPuzzle>()?;
    m.add_function(wrap_pyfunction!(predicted_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify_map, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
