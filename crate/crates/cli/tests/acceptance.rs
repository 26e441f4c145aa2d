//! Acceptance gate: every criterion runs at its pinned tolerance and prints one
//! PASS/FAIL line. The process exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use common::{
    continued_fraction_value, curve_relators, degrees_oracle, inv_sum, matrix_oracle,
    mod_inverse, negative_definite_oracle, rat, todd_coxeter_order,
};
use num_integer::Integer;
use orbiklt::germ::{
    classify_germ, cover_split_tangent, enumerate_tangent_family, etale_cover_over_cusp,
    germ_configurations, is_klt_germ, BranchKind, EnumerationBounds, GermBranch, GermClass,
    GermConfig,
};
use orbiklt::graph::{
    cyclic_invariants, residual, solve_discrepancies, BranchAttachment, DualGraph,
};
use orbiklt::orbibase::{
    abelianity_verdict, curve_degree, curve_group, is_general_type_fibration, orbifold_base,
    GroupOrder, ProofBranch, Trichotomy,
};
use orbiklt::{hj_evaluate, hj_expand, OrbifoldError, Rational};
use orbiklt_cli::input::{parse_fibration, parse_graph, parse_summary, Source};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Zero tolerance everywhere: exact rationals, exact set equality, zero violations.
const TOLERANCE: &str = "exact";

type Outcome = Result<String, String>;

fn fixture(name: &str) -> Source {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    Source::read(&path).unwrap_or_else(|e| panic!("{e}"))
}

fn check(ok: bool, failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn verdict(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        Err(format!("{} mismatch(es): {}", failures.len(), shown.join("; ")))
    }
}

// 1 ---------------------------------------------------------------------------

fn expected_family(r: usize, t: u64, max_mult: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    match (r, t) {
        (2, 1) => {
            for a in 2..=max_mult {
                for b in a..=max_mult {
                    out.insert(vec![a, b]);
                }
            }
        }
        (3, 1) => {
            for m in 2..=max_mult {
                out.insert(vec![2, 2, m]);
            }
            for m in 3..=5 {
                out.insert(vec![2, 3, m]);
            }
        }
        (2, 2) => {
            for m in 2..=max_mult {
                out.insert(vec![2, m]);
            }
            for m in 3..=5 {
                out.insert(vec![3, m]);
            }
        }
        (2, 3) => {
            for m in 2..=5 {
                out.insert(vec![2, m]);
            }
        }
        (2, _) => {
            out.insert(vec![2, 2]);
        }
        _ => {}
    }
    out
}

fn criterion_1() -> Outcome {
    let max_mult = 12;
    let mut failures = Vec::new();
    for t in 1..=6u64 {
        for r in 2..=4usize {
            let got: BTreeSet<Vec<u64>> = enumerate_tangent_family(r, t, max_mult)
                .unwrap()
                .into_iter()
                .collect();
            let want = expected_family(r, t, max_mult);
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            check(extra.is_empty() && missing.is_empty(), &mut failures, || {
                format!("t={t} r={r}: extra {extra:?}, missing {missing:?}")
            });
        }
    }
    verdict(failures, "18 (t, r) cases, maxMult 12".into())
}

// 2 ---------------------------------------------------------------------------

/// Independent membership tests for each catalogue class on a canonical germ.
fn catalogue_matches(g: &GermConfig) -> Vec<&'static str> {
    let b = g.branches();
    let smooth = |i: usize| b[i].kind == BranchKind::Smooth;
    let m = |i: usize| b[i].mult();
    let one = rat(1, 1);
    let mut hits = Vec::new();
    match b.len() {
        0 => hits.push("Empty"),
        1 if smooth(0) => hits.push("SingleSmooth"),
        1 => {
            let BranchKind::Cusp { p, q } = b[0].kind else { unreachable!() };
            if p == 2 && inv_sum(&[2, q, m(0)]) > one {
                hits.push("SingleCusp");
            }
            if (p, q, m(0)) == (3, 4, 2) || (p, q, m(0)) == (3, 5, 2) {
                hits.push("HigherCusp");
            }
        }
        2 if smooth(0) && smooth(1) => {
            if inv_sum(&[m(0), m(1), g.contact(0, 1)]) > one {
                hits.push("TangentFamily");
            }
        }
        2 => {
            let (c, s) = if smooth(0) { (1, 0) } else { (0, 1) };
            if smooth(s) {
                if let BranchKind::Cusp { p: 2, q } = b[c].kind {
                    let t = g.contact(0, 1);
                    if m(c) == 2 && t == 2 && q % 2 == 1 {
                        hits.push("CuspPlusSmoothContact2");
                    }
                    if q == 3 && m(c) == 2 && m(s) == 2 && t == 3 {
                        hits.push("CuspPlusSmoothContact3");
                    }
                }
            }
        }
        3 if (0..3).all(smooth) => {
            let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
            let contacts: Vec<u64> = pairs.iter().map(|&(i, j, _)| g.contact(i, j)).collect();
            if contacts.iter().all(|&c| c == 1) && inv_sum(&[m(0), m(1), m(2)]) > one {
                hits.push("TransversalTriple");
            }
            for (k, &(i, j, third)) in pairs.iter().enumerate() {
                let others_one = (0..3).filter(|&x| x != k).all(|x| contacts[x] == 1);
                let p = contacts[k];
                if p >= 2 && others_one && inv_sum(&[m(i), m(j), m(third) * p]) > one {
                    hits.push("TangentPairPlusTransversal");
                }
            }
        }
        _ => {}
    }
    hits
}

fn criterion_2() -> Outcome {
    let sweeps = [
        EnumerationBounds {
            max_mult: 7,
            max_contact: 4,
            max_cusp_exp: 7,
            max_branches: 3,
            max_cusps: 2,
        },
        EnumerationBounds {
            max_mult: 7,
            max_contact: 4,
            max_cusp_exp: 7,
            max_branches: 4,
            max_cusps: 0,
        },
    ];
    let mut failures = Vec::new();
    let (mut total, mut klt) = (0usize, 0usize);
    for bounds in &sweeps {
        for g in germ_configurations(bounds).unwrap() {
            total += 1;
            let is_klt = is_klt_germ(&g);
            let class = classify_germ(&g);
            let hits = catalogue_matches(&g.canonical());
            klt += is_klt as usize;
            check(is_klt == (class != GermClass::NotKlt), &mut failures, || {
                format!("soundness: {g:?} klt={is_klt} class={class}")
            });
            let expected_hits = if is_klt { 1 } else { 0 };
            check(hits.len() == expected_hits, &mut failures, || {
                format!("{g:?}: klt={is_klt}, catalogue hits {hits:?}")
            });
            if let [name] = hits.as_slice() {
                check(*name == class.name(), &mut failures, || {
                    format!("{g:?}: catalogue says {name}, classifier says {class}")
                });
            }
        }
    }
    verdict(failures, format!("{total} configurations, {klt} klt, soundness 100%"))
}

// 3 ---------------------------------------------------------------------------

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let graph = |name: &str| parse_graph(&fixture(name)).unwrap();

    let a1 = solve_discrepancies(&graph("a1.toml")).unwrap();
    check(a1.a == vec![rat(0, 1)] && a1.is_klt, &mut failures, || {
        format!("A1: a = {:?}", a1.a)
    });

    let g = graph("chain322.toml");
    let res = solve_discrepancies(&g).unwrap();
    check(res.a == vec![rat(-3, 4); 3], &mut failures, || {
        format!("chain (3,2,2): a = {:?}", res.a)
    });
    let (n, q) = cyclic_invariants(&g).unwrap();
    check((n, q) == (7, 5), &mut failures, || format!("chain (3,2,2): (N,q) = ({n},{q})"));
    // vertex chain read from the m2 = 4 end back to the m1 = 2 end
    let expanded = hj_expand(n, q).unwrap();
    check(expanded.entries() == [2, 2, 3], &mut failures, || {
        format!("hj_expand({n},{q}) = {:?}", expanded.entries())
    });

    let fig = graph("figure2.toml");
    let res = solve_discrepancies(&fig).unwrap();
    let zero_residual = residual(&fig, &res.a).iter().all(Rational::is_zero);
    check(zero_residual, &mut failures, || "figure 2: nonzero residual".into());
    check(!res.is_klt && res.a[0] == rat(-1, 1), &mut failures, || {
        format!("figure 2: a = {:?}, klt = {}", res.a, res.is_klt)
    });
    verdict(failures, "A1, chain (3,2,2), non-klt reference graph".into())
}

// 4 ---------------------------------------------------------------------------

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut accepted = 0;
    let mut tries = 0u64;
    while accepted < 10_000 && tries < 5_000_000 {
        tries += 1;
        let n = rng.gen_range(1..=7usize);
        let es: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let edges: Vec<(usize, usize)> = if n >= 4 && rng.gen_bool(0.4) {
            let mut e = vec![(0, 1), (0, 2), (0, 3)];
            e.extend((4..n).map(|v| (if v == 4 { 3 } else { v - 1 }, v)));
            e
        } else {
            (1..n).map(|i| (i - 1, i)).collect()
        };
        let branches: Vec<(usize, u64, u64)> = (0..rng.gen_range(0..=3))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(2..=9), rng.gen_range(1..=2)))
            .collect();
        let m = matrix_oracle(&es, &edges);
        let d = degrees_oracle(&es, &branches);
        if d.iter().any(Rational::is_negative) || !negative_definite_oracle(&m) {
            continue;
        }
        accepted += 1;
        let attachments = branches
            .iter()
            .map(|&(v, mm, k)| BranchAttachment::new(v, mm, k).unwrap())
            .collect();
        let g = DualGraph::new(&es, &edges, attachments).unwrap();
        match solve_discrepancies(&g) {
            Ok(res) => check(res.a.iter().all(|x| !x.is_positive()), &mut failures, || {
                format!("{es:?} {edges:?} {branches:?}: a = {:?}", res.a)
            }),
            Err(e) => failures.push(format!("{es:?}: solver refused: {e}")),
        }
    }
    check(accepted == 10_000, &mut failures, || format!("only {accepted} graphs sampled"));
    verdict(failures, format!("{accepted} graphs, 0 violations"))
}

// 5 ---------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for n in 2..=500u64 {
        for q in (1..n).filter(|q| q.gcd(&n) == 1) {
            pairs += 1;
            let chain = hj_expand(n, q).unwrap();
            let back = hj_evaluate(&chain).unwrap();
            check(back == (n, q), &mut failures, || format!("roundtrip {n}/{q} -> {back:?}"));
            check(
                continued_fraction_value(chain.entries()) == rat(n as i64, q as i64),
                &mut failures,
                || format!("{n}/{q}: chain value differs"),
            );
            if n <= 200 {
                let (n2, q2) = hj_evaluate(&chain.reversed()).unwrap();
                check(n2 == n && (q * q2) % n == 1 % n && q2 == mod_inverse(q, n), &mut failures, || {
                    format!("reversal {n}/{q} -> ({n2},{q2})")
                });
            }
        }
    }
    verdict(failures, format!("{pairs} coprime pairs"))
}

// 6 ---------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut germs = 0;
    for p in 2..=7u64 {
        for q in 2..=7u64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            for m in 2..=7u64 {
                germs += 1;
                let g = GermConfig::new(vec![GermBranch::cusp(p, q, m).unwrap()], &[]).unwrap();
                let cover = etale_cover_over_cusp(p, q, m).unwrap();
                check(is_klt_germ(&g) == cover.is_klt, &mut failures, || {
                    format!("({p},{q}) m={m}: germ {} cover {}", is_klt_germ(&g), cover.is_klt)
                });
            }
        }
    }
    for p in 2..=9u64 {
        for m1 in 2..=9u64 {
            let d = p.gcd(&m1);
            let stated = (p == m1 && m1 == d) || (p == d && d != m1) || (m1 == d && d != p);
            let s = cover_split_tangent(p, m1).unwrap();
            let ok = s.components == d && s.component_type == (p / d, m1 / d) && s.smooth == stated;
            check(ok, &mut failures, || format!("split p={p} m1={m1}: {s:?}"));
        }
    }
    verdict(failures, format!("{germs} cusp germs, 64 splits"))
}

// 7 ---------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut cases: Vec<(Vec<u64>, u64)> =
        vec![(vec![2, 3, 5], 60), (vec![2, 3, 4], 24), (vec![2, 3, 3], 12)];
    cases.extend((2..=10).map(|m| (vec![2, 2, m], 2 * m)));
    for (mults, order) in &cases {
        let c = orbiklt::orbibase::OrbifoldCurve::new(0, mults).unwrap();
        let info = curve_group(&c);
        check(info.order == GroupOrder::Finite(*order), &mut failures, || {
            format!("{mults:?}: formula {}", info.order)
        });
        let (gens, rels) = curve_relators(0, mults);
        let tc = todd_coxeter_order(gens, &rels, 100_000);
        check(tc == Some(*order as usize), &mut failures, || {
            format!("{mults:?}: coset enumeration {tc:?}")
        });
    }
    let mut euclidean = Vec::new();
    for genus in 0..=1u64 {
        let mut stack: Vec<Vec<u64>> = vec![vec![]];
        while let Some(ms) = stack.pop() {
            let c = orbiklt::orbibase::OrbifoldCurve::new(genus, &ms).unwrap();
            if curve_degree(&c).is_zero() {
                check(curve_group(&c).trichotomy == Trichotomy::Euclidean, &mut failures, || {
                    format!("g={genus} {ms:?}: degree 0 but not Euclidean")
                });
                euclidean.push((genus, ms.clone()));
            }
            if ms.len() < 6 {
                for m in ms.last().copied().unwrap_or(2)..=12 {
                    let mut next = ms.clone();
                    next.push(m);
                    stack.push(next);
                }
            }
        }
    }
    euclidean.sort();
    let want = vec![
        (0, vec![2, 2, 2, 2]),
        (0, vec![2, 3, 6]),
        (0, vec![2, 4, 4]),
        (0, vec![3, 3, 3]),
        (1, vec![]),
    ];
    check(euclidean == want, &mut failures, || format!("Euclidean list {euclidean:?}"));
    verdict(failures, format!("{} orders by formula and coset enumeration, Euclidean list of 5", cases.len()))
}

// 8 ---------------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let direct = parse_fibration(&fixture("attention_direct.toml")).unwrap();
    let blown = parse_fibration(&fixture("attention_blown_up.toml")).unwrap();
    let (bd, bb) = (orbifold_base(&direct), orbifold_base(&blown));
    check(
        is_general_type_fibration(&direct) && bd.genus() == 1 && bd.mults() == [5],
        &mut failures,
        || format!("direct projection: base {bd}, degree {}", curve_degree(&bd)),
    );
    check(curve_degree(&bd) == rat(4, 5), &mut failures, || "direct degree".into());
    check(
        !is_general_type_fibration(&blown) && bb.genus() == 1 && bb.mults().is_empty(),
        &mut failures,
        || format!("blown-up projection: base {bb}"),
    );
    check(curve_degree(&bb).is_zero(), &mut failures, || "blown-up degree".into());
    verdict(failures, "direct: general type (g=1,(5)); blown up: (g=1,()) not general type".into())
}

// 9 ---------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut reached = BTreeSet::new();
    for (file, branch) in [
        ("verdict_kappa1.toml", ProofBranch::Kappa1Fibration),
        ("verdict_mori.toml", ProofBranch::MoriFiber),
        ("verdict_kappa0.toml", ProofBranch::Kappa0Nef),
        ("verdict_del_pezzo.toml", ProofBranch::DelPezzo),
    ] {
        let (summary, special) = parse_summary(&fixture(file)).unwrap();
        match abelianity_verdict(&summary, special) {
            Ok(v) => {
                check(v.branch == branch, &mut failures, || format!("{file}: {}", v.branch));
                reached.insert(v.branch.to_string());
            }
            Err(e) => failures.push(format!("{file}: {e}")),
        }
    }
    let (summary, special) = parse_summary(&fixture("verdict_kappa2.toml")).unwrap();
    check(
        matches!(abelianity_verdict(&summary, special), Err(OrbifoldError::NotSpecial(_))),
        &mut failures,
        || "kappa = 2 was not refused".into(),
    );
    let (summary, _) = parse_summary(&fixture("verdict_kappa0.toml")).unwrap();
    check(
        matches!(abelianity_verdict(&summary, false), Err(OrbifoldError::NotSpecial(_))),
        &mut failures,
        || "special = false was not refused".into(),
    );
    verdict(failures, format!("branches reached: {}", reached.into_iter().collect::<Vec<_>>().join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("catalogue of tangent families", criterion_1),
        ("germ sweep soundness", criterion_2),
        ("discrepancy fixtures", criterion_3),
        ("negativity on random graphs", criterion_4),
        ("Hirzebruch-Jung roundtrip and reversal", criterion_5),
        ("cover invariance and split rule", criterion_6),
        ("curve group orders and Euclidean list", criterion_7),
        ("fibration fixtures", criterion_8),
        ("verdict tree", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [tolerance {TOLERANCE}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [tolerance {TOLERANCE}] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
