use super::*;
use crate::engine::CharMode::{Char2, CharNot2};

fn two_cycle() -> Quiver {
    Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u")]).unwrap()
}

/// Brute force over every closed word up to `cap`, without rotation
/// deduplication or degree ordering.
fn brute_force_max(q: &Quiver, mode: CharMode, cap: usize) -> usize {
    let engine = Engine::new(q, mode);
    let mut best = 0;
    let mut frontier: Vec<Vec<ArrowId>> = q.arrow_ids().map(|a| vec![a]).collect();
    for len in 1..=cap {
        for w in &frontier {
            if q.head(*w.last().unwrap()) == q.tail(w[0]) {
                let h = Path::new(q, None, w.clone()).unwrap();
                if !engine.is_zero(&h).unwrap().zero {
                    best = best.max(len);
                }
            }
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                let end = q.head(*w.last().unwrap());
                q.arrows_from(end).map(move |a| {
                    let mut n = w.clone();
                    n.push(a);
                    n
                })
            })
            .collect();
    }
    best
}

#[test]
fn four_loops_by_characteristic() {
    let q = Quiver::bouquet(4);
    let r = max_nonzero_degree(&q, Char2, 6).unwrap();
    assert_eq!(r.max_degree, 4);
    assert_eq!(r.witness.len(), 4);
    assert_eq!(r.status, BoundStatus::Ok);
    let r = max_nonzero_degree(&q, CharNot2, 6).unwrap();
    assert_eq!(r.max_degree, 3);
}

#[test]
fn two_cycle_square_dies() {
    let q = two_cycle();
    let r = max_nonzero_degree(&q, Char2, 6).unwrap();
    assert_eq!(r.max_degree, 2);
    assert_eq!(r.witness, ["x", "y"]);
}

#[test]
fn search_matches_brute_force() {
    let quivers = [
        Quiver::bouquet(2),
        two_cycle(),
        Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u")]).unwrap(),
        Quiver::new(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u"), ("d", "v", "u")])
            .unwrap(),
    ];
    for q in &quivers {
        for mode in [Char2, CharNot2] {
            let cap = 7;
            let r = max_nonzero_degree(q, mode, cap).unwrap();
            assert_eq!(r.max_degree, brute_force_max(q, mode, cap), "{q} {mode}");
        }
    }
}

#[test]
fn witness_is_nonzero() {
    let q = Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u")]).unwrap();
    for mode in [Char2, CharNot2] {
        let r = verify_theorem_bound(&q, mode).unwrap();
        let h = q.path(&r.witness).unwrap();
        assert_eq!(h.degree(), r.max_degree);
        assert!(!Engine::new(&q, mode).is_zero(&h).unwrap().zero);
        assert!(r.satisfied);
    }
}

#[test]
fn one_vertex_bound_is_attained() {
    for d in 1..=4 {
        let q = Quiver::bouquet(d);
        let r = verify_theorem_bound(&q, Char2).unwrap();
        assert_eq!((r.max_degree, r.bound, r.m), (d, d, 1));
    }
}

#[test]
fn low_cap_is_truncated() {
    let q = Quiver::bouquet(4);
    let r = max_nonzero_degree(&q, Char2, 2).unwrap();
    assert_eq!(r.status, BoundStatus::Truncated);
    assert_eq!(r.max_degree, 2);
}

#[test]
fn tiny_budget_is_reported() {
    let q = Quiver::bouquet(3);
    let r = max_nonzero_degree_with_budget(&q, Char2, 4, 1).unwrap();
    assert_eq!(r.status, BoundStatus::Budget);
}

#[test]
fn disconnected_quiver_is_rejected() {
    let q = Quiver::new(["u", "v"], [("p", "u", "u"), ("q", "v", "v")]).unwrap();
    assert!(matches!(
        max_nonzero_degree(&q, Char2, 3),
        Err(BoundError::NotStronglyConnected)
    ));
}

#[test]
fn report_json_shape() {
    let q = two_cycle();
    let r = max_nonzero_degree(&q, Char2, 4).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["M"], 2);
    assert_eq!(v["mode"], "char2");
    assert_eq!(v["status"], "ok");
    let back: BoundReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn extremal_degrees() {
    for (n, m, d, mode) in [(2, 2, 4, Char2), (3, 2, 6, Char2), (2, 2, 6, CharNot2)] {
        let e = build_extremal_example(n, d, m, mode).unwrap();
        assert_eq!(e.path.degree(), 6);
        assert_eq!(e.expected_degree, 6);
        assert_eq!(e.quiver.vertex_count(), n);
        assert_eq!(e.quiver.arrow_count(), d);
        assert_eq!(max_primitive_cycle(&e.quiver).unwrap().0, m);
        assert!(e.quiver.is_strongly_connected());
        assert!(e.path.is_closed());
        assert!(!Engine::new(&e.quiver, mode).is_zero(&e.path).unwrap().zero);
    }
}

#[test]
fn extremal_family_is_certified() {
    for n in 2..=4 {
        for m in 2..=n {
            for d in (2 * n - m)..=(2 * n - m + 3) {
                let e = build_extremal_example(n, d, m, Char2).unwrap();
                assert_eq!(e.path.degree(), m * d - (2 * n * m - m * m - m));
                assert!(sufficiency_nonzero(&e.quiver, &e.path).is_sufficient());
                if let Some(h) = ladder_path(&e) {
                    assert!(sufficiency_nonzero(&e.quiver, &h).is_sufficient());
                }
            }
        }
    }
}

#[test]
fn ladder_path_is_nonzero() {
    let e = build_extremal_example(4, 6, 2, Char2).unwrap();
    let h = ladder_path(&e).unwrap();
    assert_eq!(h.degree(), e.path.degree() + 4 * (e.rungs - 1) + 2);
    assert!(!Engine::new(&e.quiver, Char2).is_zero(&h).unwrap().zero);
}

#[test]
fn extremal_parameters_are_checked() {
    assert_eq!(build_extremal_example(2, 4, 1, Char2).unwrap_err(), ExtremalError::CycleTooShort(1));
    assert_eq!(
        build_extremal_example(2, 6, 3, Char2).unwrap_err(),
        ExtremalError::TooFewVertices { n: 2, m: 3 }
    );
    assert_eq!(
        build_extremal_example(3, 3, 2, Char2).unwrap_err(),
        ExtremalError::TooFewArrows { d: 3, needed: 4 }
    );
    assert_eq!(
        build_extremal_example(2, 5, 2, CharNot2).unwrap_err(),
        ExtremalError::TooFewArrows { d: 5, needed: 6 }
    );
    assert_eq!(
        build_extremal_example(3, 3, 2, CharNot2).unwrap_err().to_string(),
        "d >= 9 violated (d = 3)"
    );
}

#[test]
fn sufficiency_cases() {
    let q = two_cycle();
    let h = q.parse_path("x,y,x,y").unwrap();
    assert_eq!(
        sufficiency_nonzero(&q, &h),
        Sufficiency::Inconclusive { double: vec!["x".into(), "y".into()] }
    );
    let q = Quiver::bouquet(3);
    let h = q.parse_path("x1,x2,x3").unwrap();
    assert_eq!(sufficiency_nonzero(&q, &h), Sufficiency::SufficientNonzero { doubles: 0 });
}

#[test]
fn sufficiency_is_sound() {
    let quivers = [
        Quiver::bouquet(3),
        Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u"), ("q", "v", "v")]).unwrap(),
    ];
    for q in &quivers {
        let engine = Engine::new(q, Char2);
        for h in crate::symbolic::closed_paths_up_to(q, 6) {
            if sufficiency_nonzero(q, &h).is_sufficient() {
                assert!(!engine.is_zero(&h).unwrap().zero, "{:?}", q.word_names(h.word()));
            }
        }
    }
}

#[test]
fn decomposes_distinct_loops() {
    let q = Quiver::bouquet(3);
    let h = q.parse_path("x1,x2,x3").unwrap();
    let dec = pa291_decompose(&q, &h).unwrap();
    assert_eq!((dec.r, dec.t), (3, 0));
    assert!(dec.verify(&q, &h));
}

#[test]
fn decomposes_fan_path() {
    let e = build_extremal_example(2, 4, 2, Char2).unwrap();
    let dec = pa291_decompose(&e.quiver, &e.path).unwrap();
    assert_eq!((dec.r, dec.t), (3, 0));
    assert!(dec.singles.iter().all(|b| b.path.len() == 2));
    assert!(dec.verify(&e.quiver, &e.path));
}

#[test]
fn doubles_take_count_two_arrows() {
    // x p y x y with the 2-cycle and a loop: xy appears twice
    let q = Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u")]).unwrap();
    let h = q.parse_path("x,y,p,x,y").unwrap();
    let dec = pa291_decompose(&q, &h).unwrap();
    assert_eq!((dec.r, dec.t), (1, 1));
    assert_eq!(dec.doubles[0].arrows, ["x".to_string(), "y".to_string()]);
    assert!(dec.verify(&q, &h));
}

#[test]
fn zero_square_has_no_decomposition() {
    let q = two_cycle();
    let h = q.parse_path("x,y,x,y,x,y").unwrap();
    assert_eq!(pa291_decompose(&q, &h).unwrap_err(), Pa291Error::NoDecomposition);
}

#[test]
fn every_nonzero_path_decomposes() {
    let quivers = [
        Quiver::bouquet(3),
        Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u"), ("q", "v", "v")]).unwrap(),
        Quiver::new(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u"), ("d", "v", "u")])
            .unwrap(),
    ];
    for q in &quivers {
        let engine = Engine::new(q, Char2);
        for h in crate::symbolic::closed_paths_up_to(q, 8) {
            if !engine.is_zero(&h).unwrap().zero {
                let dec = pa291_decompose(q, &h).unwrap();
                assert!(dec.verify(q, &h), "{:?}", q.word_names(h.word()));
            }
        }
    }
}
