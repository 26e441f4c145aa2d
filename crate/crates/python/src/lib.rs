//! Python bindings. Rationals cross the boundary as `"p/q"` strings.

use std::collections::BTreeMap;

use orbiklt::germ::{self, EnumerationBounds, GermBranch, GermConfig};
use orbiklt::graph::{self, BranchAttachment, DualGraph};
use orbiklt::orbibase::{self, FiberData, FibrationData, Kappa, MinimalModelOutcome, SurfaceSummary};
use orbiklt::{HjChain, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(Rational::to_string).collect()
}

/// Resolution dual graph of a germ, with boundary branches attached to vertices.
#[pyclass(name = "DualGraph", frozen)]
struct PyDualGraph {
    inner: DualGraph,
}

#[pymethods]
impl PyDualGraph {
    /// `branches` is a list of `(vertex, mult, inter)` triples.
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new(), branches = Vec::new()))]
    fn new(
        vertices: Vec<u64>,
        edges: Vec<(usize, usize)>,
        branches: Vec<(usize, u64, u64)>,
    ) -> PyResult<Self> {
        let attachments = branches
            .into_iter()
            .map(|(v, m, k)| BranchAttachment::new(v, m, k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let inner = DualGraph::new(&vertices, &edges, attachments).map_err(err)?;
        Ok(PyDualGraph { inner })
    }

    fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        graph::intersection_matrix(&self.inner)
    }

    fn is_negative_definite(&self) -> bool {
        graph::is_negative_definite(&self.inner)
    }

    fn adjunction_degrees(&self) -> Vec<String> {
        strings(&graph::adjunction_degrees(&self.inner))
    }

    /// `(a, is_klt)` with `a` as rational strings.
    fn discrepancies(&self) -> PyResult<(Vec<String>, bool)> {
        let res = graph::solve_discrepancies(&self.inner).map_err(err)?;
        Ok((strings(&res.a), res.is_klt))
    }

    fn classify(&self) -> String {
        graph::classify_graph(&self.inner).name().to_string()
    }

    fn dynkin(&self) -> Option<String> {
        graph::dynkin_type(&self.inner).map(|d| d.to_string())
    }

    fn cyclic_invariants(&self) -> PyResult<(u64, u64)> {
        graph::cyclic_invariants(&self.inner).map_err(err)
    }

    fn local_group_order(&self) -> PyResult<u64> {
        graph::local_group_order(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Boundary germ on a smooth surface point.
#[pyclass(name = "Germ", frozen)]
struct PyGerm {
    inner: GermConfig,
}

#[pymethods]
impl PyGerm {
    /// `branches` holds `("smooth", mult)` or `("cusp", p, q, mult)` tuples given as
    /// lists; `contact` holds `(i, j, t)` triples.
    #[new]
    #[pyo3(signature = (branches, contact = Vec::new()))]
    fn new(branches: Vec<Vec<Bound<'_, PyAny>>>, contact: Vec<(usize, usize, u64)>) -> PyResult<Self> {
        let mut out = Vec::with_capacity(branches.len());
        for spec in &branches {
            let kind: String = spec
                .first()
                .ok_or_else(|| err("empty branch spec"))?
                .extract()?;
            let nums: Vec<u64> = spec[1..].iter().map(|x| x.extract()).collect::<PyResult<_>>()?;
            let branch = match (kind.as_str(), nums.as_slice()) {
                ("smooth", &[m]) => GermBranch::smooth(m),
                ("cusp", &[p, q, m]) => GermBranch::cusp(p, q, m),
                _ => return Err(err(format!("bad branch spec {kind:?} {nums:?}"))),
            }
            .map_err(err)?;
            out.push(branch);
        }
        let inner = GermConfig::new(out, &contact).map_err(err)?;
        Ok(PyGerm { inner })
    }

    #[staticmethod]
    fn tangent_family(t: u64, mults: Vec<u64>) -> PyResult<Self> {
        let inner = GermConfig::tangent_family(t, &mults).map_err(err)?;
        Ok(PyGerm { inner })
    }

    fn is_klt(&self) -> bool {
        germ::is_klt_germ(&self.inner)
    }

    fn classify(&self) -> String {
        germ::classify_germ(&self.inner).to_string()
    }

    fn blowup_discrepancy(&self) -> String {
        germ::blowup_discrepancy(&self.inner).to_string()
    }

    fn contact(&self, i: usize, j: usize) -> u64 {
        self.inner.contact(i, j)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Orbifold curve `(C, Σ (1 - 1/m_j) p_j)`.
#[pyclass(name = "OrbifoldCurve", frozen)]
struct PyOrbifoldCurve {
    inner: orbibase::OrbifoldCurve,
}

#[pymethods]
impl PyOrbifoldCurve {
    #[new]
    #[pyo3(signature = (genus, mults = Vec::new()))]
    fn new(genus: u64, mults: Vec<u64>) -> PyResult<Self> {
        let inner = orbibase::OrbifoldCurve::new(genus, &mults).map_err(err)?;
        Ok(PyOrbifoldCurve { inner })
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.inner.genus()
    }

    #[getter]
    fn mults(&self) -> Vec<u64> {
        self.inner.mults().to_vec()
    }

    fn degree(&self) -> String {
        orbibase::curve_degree(&self.inner).to_string()
    }

    fn trichotomy(&self) -> String {
        orbibase::curve_group(&self.inner).trichotomy.to_string()
    }

    /// Group order as an int, or `None` when infinite.
    fn order(&self) -> Option<u64> {
        match orbibase::curve_group(&self.inner).order {
            orbibase::GroupOrder::Finite(n) => Some(n),
            orbibase::GroupOrder::Infinite => None,
        }
    }

    fn presentation(&self) -> String {
        orbibase::curve_presentation(&self.inner).to_string()
    }

    fn is_special(&self) -> bool {
        orbibase::is_special_curve(&self.inner)
    }

    fn is_bad(&self) -> bool {
        self.inner.is_bad()
    }

    fn __repr__(&self) -> String {
        format!("OrbifoldCurve{}", self.inner)
    }
}

#[pyfunction]
fn hj_expand(n: u64, q: u64) -> PyResult<Vec<u64>> {
    Ok(orbiklt::hj_expand(n, q).map_err(err)?.entries().to_vec())
}

#[pyfunction]
fn hj_evaluate(chain: Vec<u64>) -> PyResult<(u64, u64)> {
    let chain = HjChain::new(chain).map_err(err)?;
    orbiklt::hj_evaluate(&chain).map_err(err)
}

#[pyfunction]
fn enumerate_tangent_family(r: usize, t: u64, max_mult: u64) -> PyResult<Vec<Vec<u64>>> {
    germ::enumerate_tangent_family(r, t, max_mult).map_err(err)
}

/// Catalogue classes of every klt germ within the bounds, as display strings.
#[pyfunction]
#[pyo3(signature = (max_mult, max_contact, max_cusp_exp = 7, max_branches = 3, max_cusps = 2))]
fn enumerate_klt_germs(
    max_mult: u64,
    max_contact: u64,
    max_cusp_exp: u64,
    max_branches: usize,
    max_cusps: usize,
) -> PyResult<Vec<String>> {
    let bounds = EnumerationBounds {
        max_mult,
        max_contact,
        max_cusp_exp,
        max_branches,
        max_cusps,
    };
    let classes = germ::enumerate_klt_germs(&bounds).map_err(err)?;
    Ok(classes.iter().map(ToString::to_string).collect())
}

/// `(is_klt, du_val)` for the cover branched along a `(p, q)`-cusp of multiplicity `m`.
#[pyfunction]
fn cusp_cover(p: u64, q: u64, m: u64) -> PyResult<(bool, Option<String>)> {
    let v = germ::etale_cover_over_cusp(p, q, m).map_err(err)?;
    Ok((v.is_klt, v.du_val.map(|d| d.to_string())))
}

fn fibration(base_genus: u64, fibers: BTreeMap<String, Vec<(u64, u64)>>) -> PyResult<FibrationData> {
    let mut f = FibrationData::new(base_genus);
    for (label, pairs) in fibers {
        f = f.with_fiber(label, FiberData::from_pairs(&pairs).map_err(err)?);
    }
    Ok(f)
}

/// Orbifold base of a fibration; `fibers` maps a point label to `(m, orb_mult)` pairs.
#[pyfunction]
#[pyo3(signature = (base_genus, fibers = BTreeMap::new()))]
fn orbifold_base(
    base_genus: u64,
    fibers: BTreeMap<String, Vec<(u64, u64)>>,
) -> PyResult<PyOrbifoldCurve> {
    let f = fibration(base_genus, fibers)?;
    Ok(PyOrbifoldCurve {
        inner: orbibase::orbifold_base(&f),
    })
}

#[pyfunction]
#[pyo3(signature = (base_genus, fibers = BTreeMap::new()))]
fn is_general_type_fibration(
    base_genus: u64,
    fibers: BTreeMap<String, Vec<(u64, u64)>>,
) -> PyResult<bool> {
    Ok(orbibase::is_general_type_fibration(&fibration(base_genus, fibers)?))
}

/// Abelianity verdict. `outcome` is `"nef"`, `"mori"` (needs `mori_base`) or
/// `"del-pezzo"`. Returns `(branch, conclusion, rank_bound)`.
#[pyfunction]
#[pyo3(signature = (kappa, outcome, special, mori_base = None))]
fn abelianity_verdict(
    kappa: &str,
    outcome: &str,
    special: bool,
    mori_base: Option<(u64, Vec<u64>)>,
) -> PyResult<(String, String, u32)> {
    let kappa = match kappa {
        "-inf" => Kappa::NegInfinity,
        "0" => Kappa::Zero,
        "1" => Kappa::One,
        "2" => Kappa::Two,
        other => return Err(err(format!("kappa must be -inf, 0, 1 or 2; got {other:?}"))),
    };
    let outcome = match (outcome, mori_base) {
        ("nef", None) => MinimalModelOutcome::Nef,
        ("del-pezzo", None) => MinimalModelOutcome::DelPezzo,
        ("mori", Some((g, mults))) => MinimalModelOutcome::MoriFiberOverCurve(
            orbibase::OrbifoldCurve::new(g, &mults).map_err(err)?,
        ),
        _ => return Err(err("outcome must be nef, del-pezzo, or mori with mori_base")),
    };
    let summary = SurfaceSummary::new(kappa, outcome, None).map_err(err)?;
    let v = orbibase::abelianity_verdict(&summary, special).map_err(err)?;
    let (conclusion, bound) = match v.conclusion {
        orbibase::Conclusion::AlmostAbelian { rank_bound, .. } => ("AlmostAbelian", rank_bound),
        orbibase::Conclusion::Finite => ("Finite", 0),
    };
    Ok((v.branch.to_string(), conclusion.to_string(), bound))
}

#[pymodule]
fn orbiklt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDualGraph>()?;
    m.add_class::<PyGerm>()?;
    m.add_class::<PyOrbifoldCurve>()?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(hj_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tangent_family, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_klt_germs, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_cover, m)?)?;
    m.add_function(wrap_pyfunction!(orbifold_base, m)?)?;
    m.add_function(wrap_pyfunction!(is_general_type_fibration, m)?)?;
    m.add_function(wrap_pyfunction!(abelianity_verdict, m)?)?;
    Ok(())
}
