//! Python bindings. Vertex ids are 1-based on the Python side, as in the
//! instance file format.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ggdp_core::closedform;
use ggdp_core::graph::{self, CMode};
use ggdp_core::lp::{root_cut_loop, CutFamilies};
use ggdp_core::model::{build_formulation, count_solutions, export_lp, parse_point, Formulation, Layout};
use ggdp_core::polytope::{check_facet, p3_dimension_formula, predict_facet, IneqSpec, VertexCloud};
use ggdp_core::separation::{separate_type1, separate_type2, SeparationState};
use ggdp_core::sequence::{self, DEFAULT_BUDGET};
use ggdp_core::VertexSet;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_set(ids: &[usize], n: usize) -> PyResult<VertexSet> {
    ids.iter()
        .map(|&v| {
            if (1..=n).contains(&v) {
                Ok(v - 1)
            } else {
                Err(err(format!("vertex {v} outside 1..={n}")))
            }
        })
        .collect()
}

fn closed_or_all(closed: Option<Vec<usize>>, n: usize) -> PyResult<VertexSet> {
    match closed {
        Some(ids) => to_set(&ids, n),
        None => Ok(VertexSet::full(n)),
    }
}

fn ids(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().map(|v| v + 1).collect()
}

fn form(name: &str) -> PyResult<Formulation> {
    name.parse().map_err(err)
}

/// A graph together with the set `C` of vertices with closed neighborhoods.
#[pyclass(frozen, skip_from_py_object, module = "ggdp")]
#[derive(Clone)]
struct Instance {
    inner: ggdp_core::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (n, edges, closed=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, closed: Option<Vec<usize>>) -> PyResult<Self> {
        let c = closed_or_all(closed, n)?;
        let mut zero = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == 0 || b == 0 {
                return Err(err("vertex ids start at 1"));
            }
            zero.push((a - 1, b - 1));
        }
        let inner = ggdp_core::Instance::new(n, zero, c).map_err(err)?;
        Ok(Instance { inner })
    }

    /// Parses the `p ggdp` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Instance {
            inner: graph::parse_instance(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        graph::write_instance(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    #[getter]
    fn closed(&self) -> Vec<usize> {
        ids(self.inner.closed_set())
    }

    /// `N[v]` when `v` is in `C`, else `N(v)`.
    fn neighborhood(&self, v: usize) -> PyResult<Vec<usize>> {
        let v = v.checked_sub(1).ok_or_else(|| err("vertex ids start at 1"))?;
        Ok(ids(self.inner.try_neighborhood(v).map_err(err)?))
    }

    fn upper_bound_m(&self) -> usize {
        self.inner.upper_bound_m()
    }

    fn is_clutter(&self) -> bool {
        self.inner.is_clutter()
    }

    fn is_twin_free(&self) -> bool {
        self.inner.is_twin_free()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, edges={}, closed={:?})",
            self.inner.n(),
            self.inner.edges().len(),
            self.closed()
        )
    }
}

fn wrap(inner: ggdp_core::Instance) -> Instance {
    Instance { inner }
}

#[pyfunction]
#[pyo3(signature = (n, closed=None))]
fn path(n: usize, closed: Option<Vec<usize>>) -> PyResult<Instance> {
    graph::path(n, closed_or_all(closed, n)?).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, closed=None))]
fn cycle(n: usize, closed: Option<Vec<usize>>) -> PyResult<Instance> {
    graph::cycle(n, closed_or_all(closed, n)?).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, k, closed=None))]
fn web(n: usize, k: usize, closed: Option<Vec<usize>>) -> PyResult<Instance> {
    graph::web(n, k, closed_or_all(closed, n)?).map(wrap).map_err(err)
}

#[pyfunction]
fn bull() -> Instance {
    wrap(graph::bull())
}

/// Connected twin-free `G(n, p)` sample; `mode` is `empty`, `all` or `half`.
#[pyfunction]
#[pyo3(signature = (n, p=0.5, mode="all", seed=0, max_retries=1000))]
fn random(n: usize, p: f64, mode: &str, seed: u64, max_retries: usize) -> PyResult<Instance> {
    let mode = match mode {
        "empty" => CMode::Empty,
        "all" => CMode::All,
        "half" => CMode::Half,
        other => return Err(err(format!("unknown mode {other:?}"))),
    };
    let r = graph::random(n, p, mode, seed, max_retries).map_err(err)?;
    Ok(wrap(r.instance))
}

/// `(value, sequence)` of a longest legal sequence.
#[pyfunction]
#[pyo3(signature = (inst, budget=DEFAULT_BUDGET))]
fn grundy_exact(inst: &Instance, budget: u64) -> PyResult<(usize, Vec<usize>)> {
    let (value, seq) = sequence::grundy_exact_with_budget(&inst.inner, budget).map_err(err)?;
    Ok((value, ids(seq.vertices().iter().copied())))
}

#[pyfunction]
fn greedy_sequence(inst: &Instance) -> Vec<usize> {
    ids(sequence::greedy_sequence(&inst.inner).vertices().iter().copied())
}

#[pyfunction]
fn is_legal(inst: &Instance, seq: Vec<usize>) -> PyResult<bool> {
    let zero: Option<Vec<usize>> = seq.iter().map(|v| v.checked_sub(1)).collect();
    let zero = zero.ok_or_else(|| err("vertex ids start at 1"))?;
    Ok(sequence::check_sequence(&inst.inner, &zero).map_err(err)?.legal)
}

#[pyfunction]
#[pyo3(signature = (n, closed=None))]
fn path_grundy(n: usize, closed: Option<Vec<usize>>) -> PyResult<usize> {
    closedform::path_grundy(n, closed_or_all(closed, n)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, k, closed=None))]
fn web_grundy(n: usize, k: usize, closed: Option<Vec<usize>>) -> PyResult<usize> {
    closedform::web_grundy(n, k, closed_or_all(closed, n)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (inst, form="F1", lb=1))]
fn count(inst: &Instance, form: &str, lb: usize) -> PyResult<u64> {
    let model = build_formulation(&inst.inner, self::form(form)?, lb).map_err(err)?;
    count_solutions(&model).map_err(err)
}

/// The formulation in CPLEX LP format.
#[pyfunction]
#[pyo3(signature = (inst, form="F1", lb=1))]
fn lp_text(inst: &Instance, form: &str, lb: usize) -> PyResult<String> {
    let model = build_formulation(&inst.inner, self::form(form)?, lb).map_err(err)?;
    Ok(export_lp(&model))
}

/// Affine dimension of the integral points of a formulation.
#[pyfunction]
#[pyo3(signature = (inst, form="F1", lb=1))]
fn dimension(inst: &Instance, form: &str, lb: usize) -> PyResult<usize> {
    let model = build_formulation(&inst.inner, self::form(form)?, lb).map_err(err)?;
    VertexCloud::from_model(&model)
        .and_then(|c| c.dimension())
        .map_err(err)
}

#[pyfunction]
fn p3_dimension(inst: &Instance) -> PyResult<usize> {
    p3_dimension_formula(&inst.inner).map_err(err)
}

/// Validity and facet test of a spec such as `type1 u=1 w=2 i=3` on the F1 points.
#[pyfunction]
fn check_inequality<'py>(py: Python<'py>, inst: &Instance, spec: &str) -> PyResult<Bound<'py, PyDict>> {
    let m = inst.inner.upper_bound_m();
    let spec: IneqSpec = spec.parse().map_err(err)?;
    let ineq = spec.build(&inst.inner, m).map_err(err)?;
    let cloud = VertexCloud::f1(&inst.inner).map_err(err)?;
    let rep = check_facet(&ineq, &cloud).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("inequality", ineq.to_string())?;
    d.set_item("valid", rep.valid)?;
    d.set_item("facet", rep.is_facet)?;
    d.set_item("tight_points", rep.tight_points)?;
    d.set_item("tight_dim", rep.tight_dim)?;
    d.set_item("cloud_dim", rep.cloud_dim)?;
    d.set_item("predicted", predict_facet(&spec, &inst.inner, m).ok())?;
    Ok(d)
}

/// Separates at a point given in the `x <u> <i> <val>` text format.
#[pyfunction]
#[pyo3(signature = (inst, point, type1=true, type2=true))]
fn separate(inst: &Instance, point: &str, type1: bool, type2: bool) -> PyResult<Vec<(String, f64)>> {
    let layout = Layout::new(inst.inner.n(), inst.inner.upper_bound_m());
    let point = parse_point(point, layout).map_err(err)?;
    let mut state = SeparationState::precompute(&inst.inner);
    let mut cuts = Vec::new();
    if type1 {
        cuts.extend(separate_type1(&inst.inner, &mut state, &point).map_err(err)?);
    }
    if type2 {
        cuts.extend(separate_type2(&inst.inner, &mut state, &point).map_err(err)?);
    }
    Ok(cuts.into_iter().map(|c| (c.spec.to_string(), c.violation)).collect())
}

/// LP bound history of the root cutting-plane loop; `lb` defaults to the
/// greedy sequence length.
#[pyfunction]
#[pyo3(signature = (inst, form="F3", lb=None, rounds=10, type1=true, type2=true))]
fn root_bound<'py>(
    py: Python<'py>,
    inst: &Instance,
    form: &str,
    lb: Option<usize>,
    rounds: usize,
    type1: bool,
    type2: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let lb = lb.unwrap_or_else(|| sequence::greedy_sequence(&inst.inner).len());
    let res = root_cut_loop(&inst.inner, self::form(form)?, lb, rounds, CutFamilies { type1, type2 })
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("bound_history", res.bound_history)?;
    d.set_item(
        "cuts",
        res.cuts.iter().map(|c| c.spec.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("status", format!("{:?}", res.status).to_lowercase())?;
    Ok(d)
}

#[pymodule]
fn ggdp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(web, m)?)?;
    m.add_function(wrap_pyfunction!(bull, m)?)?;
    m.add_function(wrap_pyfunction!(random, m)?)?;
    m.add_function(wrap_pyfunction!(grundy_exact, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(is_legal, m)?)?;
    m.add_function(wrap_pyfunction!(path_grundy, m)?)?;
    m.add_function(wrap_pyfunction!(web_grundy, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(lp_text, m)?)?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(p3_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(check_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(separate, m)?)?;
    m.add_function(wrap_pyfunction!(root_bound, m)?)?;
    Ok(())
}
