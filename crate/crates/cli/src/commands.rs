//! One function per subcommand, each turning validated input into a [`Report`].

use std::path::Path;

use orbiklt::germ::{
    blowup_discrepancy, classify_germ, enumerate_klt_germs, enumerate_tangent_family,
    etale_cover_over_cusp, is_klt_germ, EnumerationBounds, GermBranch, GermConfig,
};
use orbiklt::graph::{
    classify_graph, cyclic_invariants, dynkin_type, local_group_order, residual,
    solve_discrepancies, DualGraph, GraphClass,
};
use orbiklt::orbibase::{
    abelianity_verdict, curve_degree, curve_group, fiber_multiplicity,
    is_general_type_fibration, is_special_orbisurface, orbifold_base, Conclusion, Kappa,
    MinimalModelOutcome, SurfaceSummary, Trichotomy,
};
use orbiklt::{hj_evaluate, hj_expand, HjChain, Rational};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{self, sha256_hex, Source};
use crate::report::{InputRef, Report};

const FIGURE_TWO_NOTE: &str = "reference non-klt configuration: the exact solve makes the \
     verdict depend on (e1, m2) (klt fails once a_0 <= -1, e.g. m2 >= 4 at e1 = 2); the \
     verdict shown is the solver's";

const UNRECOGNIZED_KLT_NOTE: &str =
    "graph shape is not one of the classified types; the klt verdict rests on the discrepancy solve alone";

const ORDER_NOTE: &str = "local group order is N*m1*m2 with N the order of the cyclic group of \
     A_{N,q}, not the number of chain vertices";

const RELATIVE_NOTE: &str =
    "specialness is decided relative to the supplied fibrations only; other fibrations are not searched for";

fn file_report(command: &str, src: &Source, result: Value, warnings: Vec<String>) -> Report {
    Report {
        command: command.to_string(),
        input: InputRef {
            source: src.label.clone(),
            sha256: src.digest.clone(),
        },
        result,
        warnings,
    }
}

fn args_report(command: &str, args: String, result: Value, warnings: Vec<String>) -> Report {
    Report {
        command: command.to_string(),
        input: InputRef {
            sha256: sha256_hex(args.as_bytes()),
            source: args,
        },
        result,
        warnings,
    }
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn rationals(values: &[Rational]) -> Value {
    json!(values.iter().map(Rational::to_string).collect::<Vec<_>>())
}

/// Chain `(e1 + 2, 1, 2)` with multiplicity 2 on the first curve and a second
/// branch on the (-1)-curve.
fn is_figure_two_shape(g: &DualGraph) -> bool {
    let Some(order) = g.chain_order() else {
        return false;
    };
    if order.len() != 3 || g.e(order[1]) != 1 || g.branches().len() != 2 {
        return false;
    }
    let (a, c) = (order[0], order[2]);
    let on = |v: usize| g.branches().iter().filter(move |b| b.vertex == v);
    let middle_one = on(order[1]).count() == 1;
    let end_ok = |heavy: usize, light: usize| {
        g.e(heavy) >= 3
            && g.e(light) == 2
            && on(light).count() == 0
            && on(heavy).count() == 1
            && on(heavy).all(|b| b.multiplicity.get() == 2)
    };
    middle_one && (end_ok(a, c) || end_ok(c, a))
}

pub fn graph(path: &Path, want_order: bool) -> Result<Report, CliError> {
    let src = Source::read(path)?;
    let g = input::parse_graph(&src)?;
    let res = solve_discrepancies(&g)?;
    debug_assert!(residual(&g, &res.a).iter().all(Rational::is_zero));
    let class = classify_graph(&g);
    let mut warnings = Vec::new();
    let mut result = json!({
        "vertices": g.vertices().iter().map(|v| v.self_intersection_negated).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "branches": g.branches().iter().map(|b| json!({
            "vertex": b.vertex,
            "mult": b.multiplicity.get(),
            "inter": b.intersection,
        })).collect::<Vec<_>>(),
        "d": rationals(&res.d),
        "a": rationals(&res.a),
        "isKlt": res.is_klt,
        "class": class.name(),
    });
    if let Some(t) = dynkin_type(&g).filter(|_| class == GraphClass::DuValDynkin) {
        result["dynkin"] = json!(t.to_string());
    }
    if class == GraphClass::ChainTwoBlackEnds {
        let (n, q) = cyclic_invariants(&g)?;
        let chain = hj_expand(n, q)?;
        result["cyclic"] = json!({
            "N": n.to_string(),
            "q": q.to_string(),
            "chain": chain.entries(),
        });
    }
    if want_order {
        let order = local_group_order(&g)?;
        result["localGroupOrder"] = json!(order.to_string());
        warnings.push(ORDER_NOTE.to_string());
    }
    if is_figure_two_shape(&g) {
        warnings.push(FIGURE_TWO_NOTE.to_string());
    }
    if class == GraphClass::Unrecognized && res.is_klt {
        warnings.push(UNRECOGNIZED_KLT_NOTE.to_string());
    }
    Ok(file_report("graph", &src, result, warnings))
}

fn branch_json(b: &GermBranch) -> Value {
    serde_json::to_value(b).expect("plain data")
}

fn germ_result(g: &GermConfig) -> Value {
    let class = classify_germ(g);
    let n = g.len();
    let contacts: Vec<[u64; 3]> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| [i as u64, j as u64, g.contact(i, j)])
        .collect();
    json!({
        "branches": g.branches().iter().map(branch_json).collect::<Vec<_>>(),
        "contacts": contacts,
        "isKlt": is_klt_germ(g),
        "class": class.name(),
        "classParams": serde_json::to_value(&class).expect("plain data"),
        "classDisplay": class.to_string(),
        "blowupDiscrepancy": blowup_discrepancy(g).to_string(),
    })
}

pub fn germ(path: &Path) -> Result<Report, CliError> {
    let src = Source::read(path)?;
    let g = input::parse_germ(&src)?;
    Ok(file_report("germ", &src, germ_result(&g), Vec::new()))
}

pub fn enumerate(branches: usize, contact: u64, max_mult: u64) -> Result<Report, CliError> {
    if branches < 1 || contact < 1 || max_mult < 2 {
        return Err(CliError::Validation(
            "need --branches >= 1, --contact >= 1, --max-mult >= 2".into(),
        ));
    }
    let solutions = enumerate_tangent_family(branches, contact, max_mult)?;
    let args = format!("enumerate --branches {branches} --contact {contact} --max-mult {max_mult}");
    let result = json!({
        "branches": branches,
        "contact": contact,
        "maxMult": max_mult,
        "count": solutions.len(),
        "solutions": solutions,
    });
    Ok(args_report("enumerate", args, result, Vec::new()))
}

pub fn catalogue(bounds: EnumerationBounds) -> Result<Report, CliError> {
    let classes = enumerate_klt_germs(&bounds)?;
    let args = format!(
        "enumerate --catalogue --branches {} --contact {} --max-mult {} --max-cusp-exp {} --max-cusps {}",
        bounds.max_branches, bounds.max_contact, bounds.max_mult, bounds.max_cusp_exp, bounds.max_cusps
    );
    let result = json!({
        "count": classes.len(),
        "classes": classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    Ok(args_report("enumerate", args, result, Vec::new()))
}

pub fn cusp(p: u64, q: u64, m: u64) -> Result<Report, CliError> {
    let cover = etale_cover_over_cusp(p, q, m)?;
    let g = GermConfig::new(vec![GermBranch::cusp(p, q, m)?], &[])?;
    let result = json!({
        "germ": germ_result(&g),
        "cover": {
            "equation": cover.equation,
            "duVal": cover.du_val.map(|d| d.to_string()),
            "isKlt": cover.is_klt,
        },
    });
    Ok(args_report("cusp", format!("cusp --p {p} --q {q} --mult {m}"), result, Vec::new()))
}

pub fn cyclic_from_pair(n: u64, q: u64) -> Result<Report, CliError> {
    let chain = hj_expand(n, q)?;
    let (_, q_dual) = hj_evaluate(&chain.reversed())?;
    let result = json!({
        "N": n.to_string(),
        "q": q.to_string(),
        "chain": chain.entries(),
        "reversedChainQ": q_dual.to_string(),
    });
    Ok(args_report("cyclic", format!("cyclic --nq {n},{q}"), result, Vec::new()))
}

pub fn cyclic_from_chain(entries: &[u64]) -> Result<Report, CliError> {
    let chain = HjChain::new(entries.to_vec())?;
    let (n, q) = hj_evaluate(&chain)?;
    let result = json!({
        "N": n.to_string(),
        "q": q.to_string(),
        "chain": chain.entries(),
    });
    Ok(args_report("cyclic", format!("cyclic --chain {}", join(entries)), result, Vec::new()))
}

pub fn curve(genus: u64, mults: &[u64]) -> Result<Report, CliError> {
    let c = input::curve(genus, mults)?;
    let info = curve_group(&c);
    let mut warnings = Vec::new();
    if info.bad_orbifold {
        warnings.push(
            "bad orbifold (genus 0 with one mark or two unequal marks): the order is that of the \
             presentation quotient; no uniformization is claimed"
                .to_string(),
        );
    }
    let result = json!({
        "genus": genus,
        "mults": c.mults(),
        "degree": info.degree.to_string(),
        "trichotomy": info.trichotomy.to_string(),
        "presentation": info.presentation.to_string(),
        "order": info.order.to_string(),
        "almostAbelian": info.almost_abelian,
        "rank": info.rank,
        "badOrbifold": info.bad_orbifold,
        "special": info.trichotomy != Trichotomy::Hyperbolic,
    });
    let mut args = format!("curve --genus {genus}");
    if !c.mults().is_empty() {
        args.push_str(&format!(" --mults {}", join(c.mults())));
    }
    Ok(args_report("curve", args, result, warnings))
}

pub fn base(path: &Path, kappa: Option<Kappa>) -> Result<Report, CliError> {
    let src = Source::read(path)?;
    let f = input::parse_fibration(&src)?;
    let b = orbifold_base(&f);
    let fibers: serde_json::Map<String, Value> = f
        .marked_fibers
        .iter()
        .map(|(label, fd)| (label.clone(), json!(fiber_multiplicity(fd))))
        .collect();
    let mut result = json!({
        "baseGenus": f.base_genus,
        "fiberMultiplicities": fibers,
        "orbifoldBase": { "genus": b.genus(), "mults": b.mults() },
        "degree": curve_degree(&b).to_string(),
        "generalType": is_general_type_fibration(&f),
    });
    let mut warnings = Vec::new();
    if let Some(k) = kappa {
        result["kappa"] = json!(k.to_string());
        result["special"] = json!(is_special_orbisurface(k, std::slice::from_ref(&f)));
        warnings.push(RELATIVE_NOTE.to_string());
    }
    Ok(file_report("base", &src, result, warnings))
}

fn verdict_result(summary: &SurfaceSummary, special: bool) -> Result<Value, CliError> {
    let v = abelianity_verdict(summary, special)?;
    let (kind, rank_bound, even) = match v.conclusion {
        Conclusion::AlmostAbelian {
            rank_bound,
            even_rank,
        } => ("AlmostAbelian", rank_bound, even_rank),
        Conclusion::Finite => ("Finite", 0, true),
    };
    Ok(json!({
        "kappa": summary.kappa().to_string(),
        "outcome": match summary.outcome() {
            MinimalModelOutcome::Nef => "nef".to_string(),
            MinimalModelOutcome::DelPezzo => "del-pezzo".to_string(),
            MinimalModelOutcome::MoriFiberOverCurve(c) => format!("mori over {c}"),
        },
        "special": special,
        "branch": v.branch.to_string(),
        "conclusion": kind,
        "rankBound": rank_bound,
        "evenRank": even,
        "rationale": v.rationale,
    }))
}

pub fn verdict_file(path: &Path) -> Result<Report, CliError> {
    let src = Source::read(path)?;
    let (summary, special) = input::parse_summary(&src)?;
    let result = verdict_result(&summary, special)?;
    Ok(file_report("verdict", &src, result, vec![RELATIVE_NOTE.to_string()]))
}

pub struct VerdictFlags {
    pub kappa: Kappa,
    pub outcome: String,
    pub special: bool,
    pub mori_genus: Option<u64>,
    pub mori_mults: Vec<u64>,
}

pub fn verdict_flags(flags: &VerdictFlags) -> Result<Report, CliError> {
    let outcome = match (flags.outcome.as_str(), flags.mori_genus) {
        ("nef", None) => MinimalModelOutcome::Nef,
        ("del-pezzo", None) => MinimalModelOutcome::DelPezzo,
        ("mori", Some(g)) => MinimalModelOutcome::MoriFiberOverCurve(input::curve(g, &flags.mori_mults)?),
        ("mori", None) => return Err(CliError::Validation("--outcome mori needs --mori-genus".into())),
        (_, Some(_)) => {
            return Err(CliError::Validation(
                "--mori-genus only applies to --outcome mori".into(),
            ))
        }
        (other, None) => {
            return Err(CliError::Validation(format!(
                "--outcome must be nef, mori or del-pezzo; got {other:?}"
            )))
        }
    };
    let summary = SurfaceSummary::new(flags.kappa, outcome, None)?;
    let result = verdict_result(&summary, flags.special)?;
    let mut args = format!(
        "verdict --kappa {} --outcome {} --special {}",
        flags.kappa, flags.outcome, flags.special
    );
    if let Some(g) = flags.mori_genus {
        args.push_str(&format!(" --mori-genus {g} --mori-mults {}", join(&flags.mori_mults)));
    }
    Ok(args_report("verdict", args, result, vec![RELATIVE_NOTE.to_string()]))
}
