//! `M(Q)`, the largest degree of a closed path not equivalent to zero, and
//! the structural results bounding it.

mod extremal;
mod pa291;
mod sufficiency;

pub use extremal::{build_extremal_example, ladder_path, ExtremalError, ExtremalExample, ExtremalSummary};
pub use pa291::{pa291_decompose, pa291_decompose_with_budget, Pa291Decomposition, Pa291Error, SingleTerm, DoubleTerm};
pub use sufficiency::{sufficiency_nonzero, Sufficiency};

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{CharMode, Engine, EngineError, DEFAULT_BUDGET};
use crate::quiver::euler::for_each_closed_word;
use crate::quiver::{max_primitive_cycle, ArrowId, MultiDegree, Path, Quiver, QuiverError};

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("quiver is not strongly connected")]
    NotStronglyConnected,
    #[error("degree cap must be at least 1")]
    ZeroCap,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    /// The search covered every degree that could matter.
    Ok,
    /// The cap lies below the proven bound, so longer nonzero paths may exist.
    Truncated,
    /// Some class exceeded the node budget; `M` is only a lower bound.
    Budget,
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundStatus::Ok => "ok",
            BoundStatus::Truncated => "truncated",
            BoundStatus::Budget => "budget",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "M")]
    pub max_degree: usize,
    pub bound: usize,
    /// Arrow ids of a nonzero closed path of degree `M`.
    pub witness: Vec<String>,
    pub mode: CharMode,
    pub status: BoundStatus,
    pub satisfied: bool,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub cap: usize,
    /// Closed paths decided.
    pub checked: usize,
}

/// `m·d` in characteristic 2, `3n` otherwise.
pub fn theorem_bound(n: usize, d: usize, m: usize, mode: CharMode) -> usize {
    match mode {
        CharMode::Char2 => m * d,
        CharMode::CharNot2 => 3 * n,
    }
}

fn some_vertex_degree_at_least(q: &Quiver, delta: &MultiDegree, k: u32) -> bool {
    q.vertices().any(|v| delta.in_degree(q, v) >= k)
}

/// Searches closed paths from degree `cap` downwards and stops at the first
/// nonzero one.
pub fn max_nonzero_degree(q: &Quiver, mode: CharMode, cap: usize) -> Result<BoundReport, BoundError> {
    max_nonzero_degree_with_budget(q, mode, cap, DEFAULT_BUDGET)
}

pub fn max_nonzero_degree_with_budget(
    q: &Quiver,
    mode: CharMode,
    cap: usize,
    budget: usize,
) -> Result<BoundReport, BoundError> {
    if !q.is_strongly_connected() {
        return Err(BoundError::NotStronglyConnected);
    }
    if cap == 0 {
        return Err(BoundError::ZeroCap);
    }
    let (m, _) = max_primitive_cycle(q)?;
    let (n, d) = (q.vertex_count(), q.arrow_count());
    let bound = theorem_bound(n, d, m, mode);
    let engine = Engine::new(q, mode).with_budget(budget);
    let mut checked = 0;
    let mut budget_hit = false;
    let mut found: Option<Vec<ArrowId>> = None;

    'degrees: for total in (1..=cap).rev() {
        for delta in MultiDegree::all_of_total(d, total as u32) {
            if !delta.is_balanced(q) || !delta.support_is_strongly_connected(q) {
                continue;
            }
            // four returns to one vertex always give zero here
            if mode == CharMode::CharNot2 && some_vertex_degree_at_least(q, &delta, 4) {
                continue;
            }
            let mut failure = None;
            let hit = for_each_closed_word(q, &delta, |w| {
                checked += 1;
                match engine.is_zero(&Path::from_closed_word(q, w.to_vec())) {
                    Ok(decision) if !decision.zero => ControlFlow::Break(w.to_vec()),
                    Ok(_) => ControlFlow::Continue(()),
                    Err(EngineError::BudgetExhausted(_)) => {
                        budget_hit = true;
                        ControlFlow::Continue(())
                    }
                    Err(e) => {
                        failure = Some(e);
                        ControlFlow::Break(Vec::new())
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            if let ControlFlow::Break(w) = hit {
                found = Some(w);
                break 'degrees;
            }
        }
    }

    let max_degree = found.as_ref().map_or(0, Vec::len);
    let status = if budget_hit {
        BoundStatus::Budget
    } else if cap < bound {
        BoundStatus::Truncated
    } else {
        BoundStatus::Ok
    };
    Ok(BoundReport {
        max_degree,
        bound,
        witness: found.map(|w| q.word_names(&w)).unwrap_or_default(),
        mode,
        status,
        satisfied: max_degree <= bound,
        n,
        d,
        m,
        cap,
        checked,
    })
}

/// Computes `M(Q)` with the cap `bound + m` and compares it to the bound.
pub fn verify_theorem_bound(q: &Quiver, mode: CharMode) -> Result<BoundReport, BoundError> {
    verify_theorem_bound_with_budget(q, mode, DEFAULT_BUDGET)
}

pub fn verify_theorem_bound_with_budget(
    q: &Quiver,
    mode: CharMode,
    budget: usize,
) -> Result<BoundReport, BoundError> {
    if !q.is_strongly_connected() {
        return Err(BoundError::NotStronglyConnected);
    }
    let (m, _) = max_primitive_cycle(q)?;
    let bound = theorem_bound(q.vertex_count(), q.arrow_count(), m, mode);
    max_nonzero_degree_with_budget(q, mode, bound + m, budget)
}

#[cfg(test)]
mod tests;
