//! Every strongly connected quiver in a size range, up to isomorphism, run
//! through the bound check, the oracle comparison and the decomposition.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    max_nonzero_degree_with_budget, pa291_decompose, theorem_bound, BoundError, BoundReport, BoundStatus,
};
use crate::engine::{CharMode, Engine, EngineError, DEFAULT_BUDGET};
use crate::quiver::{is_primitive, max_primitive_cycle, Quiver};
use crate::symbolic::{closed_paths_up_to, cross_validate, DecomposabilityOracle, Gf2, Gf3};

/// Edge lists `(tail, head)` of the strongly connected quivers with exactly
/// `n` vertices and `d` arrows, one per isomorphism class, each in its
/// least relabelling.
pub fn strongly_connected_quivers(n: usize, d: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..n).map(move |h| (t, h))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut chosen = Vec::with_capacity(d);
    multisets(&pairs, 0, d, &mut chosen, &mut |edges| {
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges.iter().map(|&(t, h)| (p[t], p[h])).collect();
                e.sort();
                e
            })
            .min()
            .expect("at least one permutation");
        if !seen.contains(&canon) && build(n, &canon).is_strongly_connected() {
            seen.insert(canon);
        }
    });
    seen.into_iter().collect()
}

fn multisets(
    pairs: &[(usize, usize)],
    from: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if left == 0 {
        visit(chosen);
        return;
    }
    for i in from..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, i, left - 1, chosen, visit);
        chosen.pop();
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Vertices `v1..vn`, arrows `a1..ad` in edge order.
pub fn build(n: usize, edges: &[(usize, usize)]) -> Quiver {
    Quiver::new(
        (1..=n).map(|i| format!("v{i}")),
        edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| (format!("a{}", i + 1), format!("v{}", t + 1), format!("v{}", h + 1))),
    )
    .expect("generated quiver")
}

/// `v1>v2,v2>v1`.
pub fn edge_label(edges: &[(usize, usize)]) -> String {
    edges
        .iter()
        .map(|&(t, h)| format!("v{}>v{}", t + 1, h + 1))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub modes: Vec<CharMode>,
    pub budget: usize,
    /// Replaces the cap `bound + m` when set.
    pub cap: Option<usize>,
    /// Degree cap for the oracle comparison; 0 skips it.
    pub oracle_cap: usize,
    /// Degree cap for the determinant check; 0 skips it.
    pub det_cap: usize,
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_vertices: 3,
            max_arrows: 4,
            modes: vec![CharMode::Char2, CharMode::CharNot2],
            budget: DEFAULT_BUDGET,
            cap: None,
            oracle_cap: 6,
            det_cap: 4,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DecompositionTally {
    pub nonzero_paths: usize,
    pub decomposed: usize,
    pub failures: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleTally {
    pub checked: usize,
    pub agreed: usize,
    pub disagreements: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DeterminantTally {
    pub checked: usize,
    /// Non-primitive paths whose determinant is indecomposable.
    pub violations: Vec<Vec<String>>,
    /// Largest degree of an indecomposable determinant.
    pub max_indecomposable_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub quiver: String,
    pub mode: CharMode,
    pub bound: Option<BoundReport>,
    pub error: Option<String>,
    pub oracle: OracleTally,
    pub decomposition: DecompositionTally,
    pub determinant: DeterminantTally,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.bound.as_ref().is_some_and(|b| b.satisfied && b.status == BoundStatus::Ok)
            && self.oracle.disagreements.is_empty()
            && self.decomposition.failures.is_empty()
            && self.determinant.violations.is_empty()
    }

    pub fn inconclusive(&self) -> bool {
        self.error.is_none()
            && self.bound.as_ref().is_some_and(|b| b.satisfied && b.status != BoundStatus::Ok)
            && self.oracle.disagreements.is_empty()
            && self.decomposition.failures.is_empty()
            && self.determinant.violations.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub instances: Vec<InstanceReport>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

type Decider<'a> = Box<dyn FnMut(&[crate::quiver::ArrowId]) -> bool + 'a>;

fn determinant_check(q: &Quiver, cap: usize, mode: CharMode) -> DeterminantTally {
    let mut tally = DeterminantTally::default();
    if cap == 0 {
        return tally;
    }
    let paths = closed_paths_up_to(q, cap);
    let mut decide: Decider = match mode {
        CharMode::Char2 => {
            let mut o = DecomposabilityOracle::<Gf2>::new(q);
            Box::new(move |w| o.is_decomposable(w, 2).expect("oracle budget"))
        }
        CharMode::CharNot2 => {
            let mut o = DecomposabilityOracle::<Gf3>::new(q);
            Box::new(move |w| o.is_decomposable(w, 2).expect("oracle budget"))
        }
    };
    for h in paths {
        tally.checked += 1;
        if !decide(h.word()) {
            tally.max_indecomposable_degree = tally.max_indecomposable_degree.max(2 * h.degree());
            if !is_primitive(q, &h) {
                tally.violations.push(q.word_names(h.word()));
            }
        }
    }
    tally
}

fn run_instance(n: usize, edges: &[(usize, usize)], mode: CharMode, cfg: &SweepConfig) -> InstanceReport {
    let q = build(n, edges);
    let mut report = InstanceReport {
        quiver: edge_label(edges),
        mode,
        bound: None,
        error: None,
        oracle: OracleTally::default(),
        decomposition: DecompositionTally::default(),
        determinant: DeterminantTally::default(),
    };
    let bound = (|| -> Result<BoundReport, BoundError> {
        let (m, _) = max_primitive_cycle(&q)?;
        let cap = cfg
            .cap
            .unwrap_or(theorem_bound(q.vertex_count(), q.arrow_count(), m, mode) + m);
        max_nonzero_degree_with_budget(&q, mode, cap, cfg.budget)
    })();
    let bound = match bound {
        Ok(b) => b,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };

    // the decomposition presupposes a characteristic-2 nonzero path
    let engine = Engine::new(&q, mode).with_budget(cfg.budget);
    let decomposable_range = if mode == CharMode::Char2 { bound.max_degree } else { 0 };
    for h in closed_paths_up_to(&q, decomposable_range) {
        match engine.is_zero(&h) {
            Ok(d) if !d.zero => {
                report.decomposition.nonzero_paths += 1;
                match pa291_decompose(&q, &h) {
                    Ok(dec) if dec.verify(&q, &h) => report.decomposition.decomposed += 1,
                    _ => report.decomposition.failures.push(q.word_names(h.word())),
                }
            }
            Ok(_) => {}
            Err(EngineError::BudgetExhausted(_)) => {}
            Err(e) => {
                report.error = Some(e.to_string());
                return report;
            }
        }
    }

    if cfg.oracle_cap > 0 {
        match cross_validate(&q, cfg.oracle_cap, mode) {
            Ok(cv) => {
                report.oracle = OracleTally {
                    checked: cv.checked,
                    agreed: cv.agreed,
                    disagreements: cv.disagreements.into_iter().map(|d| d.word).collect(),
                }
            }
            Err(e) => report.error = Some(e.to_string()),
        }
    }
    report.determinant = determinant_check(&q, cfg.det_cap, mode);
    report.bound = Some(bound);
    report
}

/// Runs every instance in the configured range.
pub fn sweep(cfg: &SweepConfig) -> SweepReport {
    let mut jobs = Vec::new();
    for n in 1..=cfg.max_vertices {
        for d in 1..=cfg.max_arrows {
            for edges in strongly_connected_quivers(n, d) {
                for &mode in &cfg.modes {
                    jobs.push((n, edges.clone(), mode));
                }
            }
        }
    }
    let run = || -> Vec<InstanceReport> {
        jobs.par_iter()
            .map(|(n, edges, mode)| run_instance(*n, edges, *mode, cfg))
            .collect()
    };
    let instances = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let passed = instances.iter().filter(|i| i.passed()).count();
    let inconclusive = instances.iter().filter(|i| i.inconclusive()).count();
    SweepReport {
        failed: instances.len() - passed - inconclusive,
        passed,
        inconclusive,
        instances,
    }
}
