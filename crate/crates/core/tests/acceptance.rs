//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use quiverinv::bounds::{
    build_extremal_example, max_nonzero_degree, pa291_decompose, sufficiency_nonzero, verify_theorem_bound,
    BoundStatus,
};
use quiverinv::engine::{
    verify_rewrite_lemma, CharMode, Engine, Equivalence, LemmaError, LemmaName, LemmaRoles, Shape,
};
use quiverinv::quiver::{max_primitive_cycle, MultiDegree, Quiver};
use quiverinv::sweep::{sweep, SweepConfig, SweepReport};
use quiverinv::symbolic::{
    check_amitsur, check_linearizations, check_random_identities, check_relation_identities, closed_paths_up_to,
    cross_validate, FieldKind,
};

use CharMode::{Char2, CharNot2};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn four_loops() -> Verdict {
    let q = Quiver::bouquet(4);
    let c2 = max_nonzero_degree(&q, Char2, 8).unwrap();
    let c3 = max_nonzero_degree(&q, CharNot2, 8).unwrap();
    let ok = c2.max_degree == 4 && c3.max_degree == 3 && c2.status == BoundStatus::Ok && c3.status == BoundStatus::Ok;
    verdict(
        ok,
        format!("four loops: M = {} (char2), {} (not2), cap 8", c2.max_degree, c3.max_degree),
    )
}

fn bound_sweep(report: &SweepReport) -> Verdict {
    let bad: Vec<String> = report
        .instances
        .iter()
        .filter(|i| {
            i.error.is_some() || !i.bound.as_ref().is_some_and(|b| b.satisfied && b.status == BoundStatus::Ok)
        })
        .map(|i| format!("{} {}", i.quiver, i.mode))
        .collect();
    let disagreements: usize = report.instances.iter().map(|i| i.oracle.disagreements.len()).sum();
    verdict(
        bad.is_empty() && !report.instances.is_empty() && disagreements == 0,
        format!(
            "{} instances (n <= 3, d <= 4, both modes), {} violations or open, {} oracle disagreements{}",
            report.instances.len(),
            bad.len(),
            disagreements,
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }
        ),
    )
}

fn extremal() -> Verdict {
    let mut found = Vec::new();
    let mut ok = true;
    for (n, m, d, mode, expected) in [(2, 2, 4, Char2, 6), (3, 2, 6, Char2, 6), (2, 2, 6, CharNot2, 6)] {
        let e = build_extremal_example(n, d, m, mode).unwrap();
        let shape_ok = e.quiver.vertex_count() == n
            && e.quiver.arrow_count() == d
            && max_primitive_cycle(&e.quiver).unwrap().0 == m;
        let nonzero = !Engine::new(&e.quiver, mode).is_zero(&e.path).unwrap().zero;
        let certified = match mode {
            Char2 => sufficiency_nonzero(&e.quiver, &e.path).is_sufficient(),
            CharNot2 => nonzero,
        };
        ok &= shape_ok && nonzero && certified && e.path.degree() == expected && e.expected_degree == expected;
        found.push(format!("({n},{m},{d},{mode}) -> {}", e.path.degree()));
    }
    verdict(ok, found.join(", "))
}

fn cross_validation() -> Verdict {
    let two_cycle = Quiver::new(
        ["u", "v"],
        [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u"), ("q", "v", "v")],
    )
    .unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, q) in [("bouquet(3)", Quiver::bouquet(3)), ("2-cycle with loops", two_cycle)] {
        for mode in [Char2, CharNot2] {
            let r = cross_validate(&q, 6, mode).unwrap();
            ok &= r.all_agree() && r.checked > 0;
            parts.push(format!("{name} {mode}/{}: {}/{}", r.field, r.agreed, r.checked));
        }
    }
    verdict(ok, parts.join(", "))
}

fn symbolic_identities() -> Verdict {
    let mut ok = true;
    let mut relations = 0;
    let mut amitsur = 0;
    let mut linearizations = 0;
    let mut random = 0;
    for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
        let r = check_relation_identities(field);
        ok &= r.all_passed();
        relations += r.checks.len();
        for k in 1..=2 {
            for s in 2..=3 {
                let c = check_amitsur(k, s, field).unwrap();
                ok &= c.residual_zero;
                amitsur += 1;
            }
        }
        for c in check_linearizations(field).unwrap() {
            ok &= c.vanishes;
            linearizations += 1;
        }
        let r = check_random_identities(50, 7, field);
        ok &= r.all_passed() && r.products == 50;
        random += r.products;
    }
    verdict(
        ok,
        format!(
            "GF(2), GF(3), Q: {relations} relation checks, {amitsur} Amitsur residuals, \
             {linearizations} linearizations, {random} random Cayley-Hamilton products"
        ),
    )
}

fn roles(q: &Quiver, pairs: &[(&str, &str)]) -> LemmaRoles {
    pairs
        .iter()
        .map(|(role, path)| (role.to_string(), q.parse_path(path).unwrap().into_word()))
        .collect()
}

/// Runs `lemma` on every closed path up to `cap` meeting its hypotheses.
fn generated(q: &Quiver, lemma: LemmaName, rs: &LemmaRoles, cap: usize) -> (usize, usize) {
    let (mut tried, mut found) = (0, 0);
    for h in closed_paths_up_to(q, cap) {
        match verify_rewrite_lemma(q, lemma, &h, rs) {
            Ok(r) => {
                tried += 1;
                found += usize::from(r.found);
            }
            Err(LemmaError::Hypothesis { .. }) => {}
            Err(e) => panic!("{lemma}: {e}"),
        }
    }
    (tried, found)
}

fn three_vertices() -> Quiver {
    Quiver::new(
        ["u", "v", "w"],
        [
            ("x1", "u", "v"),
            ("a1", "v", "u"),
            ("y1", "v", "w"),
            ("b1", "w", "v"),
            ("z1", "w", "u"),
            ("g1", "v", "v"),
        ],
    )
    .unwrap()
}

fn rewriting() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();

    let star = Quiver::new(
        ["u", "v"],
        [("x1", "u", "v"), ("x2", "u", "v"), ("x3", "u", "v"), ("a1", "v", "u"), ("a2", "v", "u"), ("a3", "v", "u")],
    )
    .unwrap();
    let lhs = star.parse_path("x1,a1,x2,a2,x3,a3").unwrap();
    let rhs = star.parse_path("x3,a1,x1,a2,x2,a3").unwrap();
    let eq = Engine::new(&star, Char2).are_equivalent(&lhs, &rhs).unwrap().verdict == Equivalence::Equal;
    let rs = roles(&star, &[("x1", "x1"), ("a1", "a1"), ("x2", "x2"), ("a2", "a2"), ("x3", "x3"), ("a3", "a3")]);
    let lemma = verify_rewrite_lemma(&star, LemmaName::Star1, &lhs, &rs).unwrap().found;
    ok &= eq && lemma;
    parts.push(format!("star1 {}", if eq && lemma { "found" } else { "missing" }));

    let two = Quiver::new(
        ["u", "v"],
        [("p1", "u", "u"), ("x1", "u", "v"), ("x2", "u", "v"), ("y1", "v", "u"), ("y2", "v", "u")],
    )
    .unwrap();
    let rs = roles(&two, &[("x1", "x1"), ("y1", "y1")]);
    let (tried, found) = generated(&two, LemmaName::TwoVerB, &rs, 7);
    ok &= tried > 0 && tried == found;
    parts.push(format!("2ver-b {found}/{tried}"));

    let q = three_vertices();
    let rs = roles(&q, &[("x1", "x1"), ("y1", "y1")]);
    for lemma in [LemmaName::ThreeVerA, LemmaName::ThreeVerB] {
        let (tried, found) = generated(&q, lemma, &rs, 8);
        ok &= tried > 0 && tried == found;
        parts.push(format!("{lemma} {found}/{tried}"));
    }

    let h = q.parse_path("g1,y1,z1,x1,y1,z1,x1").unwrap();
    let rejected = [LemmaName::ThreeVerA, LemmaName::ThreeVerB]
        .into_iter()
        .all(|l| matches!(verify_rewrite_lemma(&q, l, &h, &rs), Err(LemmaError::Hypothesis { .. })));
    let shape = Shape::TwiceDisjoint(vec![rs["x1"][0], rs["y1"][0]]);
    let (witness, size) = Engine::new(&q, Char2).find_shape(&h, &shape).unwrap();
    ok &= rejected && witness.is_none() && size > 0;
    parts.push(format!(
        "negative instance: hypotheses {}, class size {}, form {}",
        if rejected { "rejected" } else { "accepted" },
        size,
        if witness.is_none() { "unreachable" } else { "reached" }
    ));
    verdict(ok, parts.join(", "))
}

fn decompositions(report: &SweepReport) -> Verdict {
    let mut paths = 0;
    let mut failures = Vec::new();
    for (edges, q) in sweep_quivers() {
        let Some(inst) = report
            .instances
            .iter()
            .find(|i| i.quiver == quiverinv::sweep::edge_label(&edges) && i.mode == Char2)
        else {
            failures.push(format!("{} missing from sweep", quiverinv::sweep::edge_label(&edges)));
            continue;
        };
        let Some(bound) = &inst.bound else { continue };
        let engine = Engine::new(&q, Char2);
        for h in closed_paths_up_to(&q, bound.max_degree) {
            if engine.is_zero(&h).unwrap().zero {
                continue;
            }
            paths += 1;
            let ok = match pa291_decompose(&q, &h) {
                Ok(dec) => {
                    let d = q.arrow_count();
                    let mut sum = MultiDegree::zero(d);
                    for b in &dec.singles {
                        sum = sum.add(&q.parse_path(&b.path.join(",")).unwrap().multidegree(&q));
                    }
                    for c in &dec.doubles {
                        let mu = q.parse_path(&c.path.join(",")).unwrap().multidegree(&q);
                        sum = sum.add(&mu).add(&mu);
                    }
                    sum == h.multidegree(&q)
                        && dec.r == dec.singles.len()
                        && dec.t == dec.doubles.len()
                        && dec.r + 2 * dec.t <= d
                        && dec.verify(&q, &h)
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(q.word_names(h.word()).join(","));
            }
        }
    }
    verdict(
        failures.is_empty() && paths > 0,
        format!(
            "{paths} char2-nonzero paths up to M over the sweep, {} failures{}",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn sweep_quivers() -> Vec<(Vec<(usize, usize)>, Quiver)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for d in 1..=4 {
            for edges in quiverinv::sweep::strongly_connected_quivers(n, d) {
                let q = quiverinv::sweep::build(n, &edges);
                out.push((edges, q));
            }
        }
    }
    out
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let start = Instant::now();
    let report = sweep(&SweepConfig::default());
    let fixed = max_nonzero_degree(&Quiver::bouquet(4), Char2, 8).unwrap();
    assert_eq!(verify_theorem_bound(&Quiver::bouquet(4), Char2).unwrap().max_degree, fixed.max_degree);

    let criteria: [Criterion; 7] = [
        ("four loops at one vertex", Box::new(four_loops)),
        ("degree bound sweep", Box::new(|| bound_sweep(&report))),
        ("extremal instances", Box::new(extremal)),
        ("engine versus symbolic oracle", Box::new(cross_validation)),
        ("symbolic identities", Box::new(symbolic_identities)),
        ("rewriting statements", Box::new(rewriting)),
        ("single/double decomposition", Box::new(|| decompositions(&report))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = check();
        failed += usize::from(!v.passed);
        println!(
            "criterion {} {}: {} ({}; {:.1}s)",
            i + 1,
            if v.passed { "PASS" } else { "FAIL" },
            name,
            v.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 7 passed in {:.1}s", 7 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
