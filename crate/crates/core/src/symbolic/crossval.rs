use serde::Serialize;
use thiserror::Error;

use super::field::{Field, FieldKind, Gf2, Gf3, Rational};
use super::oracle::{DecomposabilityOracle, OracleError};
use crate::engine::{CharMode, Engine, EngineError, ZeroCertificate};
use crate::quiver::{closed_paths_with_multidegree, MultiDegree, Path, Quiver};

#[derive(Debug, Error)]
pub enum CrossValidationError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A path on which the rewriting engine and the oracle differ.
#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub word: Vec<String>,
    pub engine_zero: bool,
    pub oracle_decomposable: bool,
    pub certificate: ZeroCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidationReport {
    pub mode: CharMode,
    pub field: FieldKind,
    pub cap: usize,
    pub checked: usize,
    pub zero: usize,
    pub agreed: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrossValidationReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty() && self.agreed == self.checked
    }
}

/// The field standing in for a characteristic mode.
pub fn field_for(mode: CharMode) -> FieldKind {
    match mode {
        CharMode::Char2 => FieldKind::Gf2,
        CharMode::CharNot2 => FieldKind::Gf3,
    }
}

/// Every closed path of degree `1..=cap`, one per rotation class.
pub fn closed_paths_up_to(q: &Quiver, cap: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for total in 1..=cap {
        for delta in MultiDegree::all_of_total(q.arrow_count(), total as u32) {
            if delta.is_balanced(q) && delta.support_is_strongly_connected(q) {
                out.extend(closed_paths_with_multidegree(q, &delta));
            }
        }
    }
    out
}

fn run<F: Field>(
    engine: &Engine<'_>,
    cap: usize,
    field: FieldKind,
) -> Result<CrossValidationReport, CrossValidationError> {
    let q = engine.quiver();
    let mut oracle = DecomposabilityOracle::<F>::new(q);
    let mut report = CrossValidationReport {
        mode: engine.mode(),
        field,
        cap,
        checked: 0,
        zero: 0,
        agreed: 0,
        disagreements: Vec::new(),
    };
    for h in closed_paths_up_to(q, cap) {
        let decision = engine.is_zero(&h)?;
        let decomposable = oracle.is_decomposable(h.word(), 1)?;
        report.checked += 1;
        report.zero += decision.zero as usize;
        if decision.zero == decomposable {
            report.agreed += 1;
        } else {
            report.disagreements.push(Disagreement {
                word: q.word_names(h.word()),
                engine_zero: decision.zero,
                oracle_decomposable: decomposable,
                certificate: decision.certificate,
            });
        }
    }
    Ok(report)
}

/// Compares `h ≡ 0` against decomposability of `tr(X_h)` for every closed
/// path up to `cap`, over the field matching `mode`.
pub fn cross_validate(
    q: &Quiver,
    cap: usize,
    mode: CharMode,
) -> Result<CrossValidationReport, CrossValidationError> {
    cross_validate_over(&Engine::new(q, mode), cap, field_for(mode))
}

/// As [`cross_validate`] with an explicit engine and field.
pub fn cross_validate_over(
    engine: &Engine<'_>,
    cap: usize,
    field: FieldKind,
) -> Result<CrossValidationReport, CrossValidationError> {
    match field {
        FieldKind::Gf2 => run::<Gf2>(engine, cap, field),
        FieldKind::Gf3 => run::<Gf3>(engine, cap, field),
        FieldKind::Q => run::<Rational>(engine, cap, field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle_with_loops() -> Quiver {
        Quiver::new(
            ["u", "v"],
            [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u"), ("q", "v", "v")],
        )
        .unwrap()
    }

    #[test]
    fn enumerates_necklaces() {
        let q = Quiver::bouquet(2);
        // binary necklaces of length 1..=4: 2 + 3 + 4 + 6
        assert_eq!(closed_paths_up_to(&q, 4).len(), 15);
    }

    #[test]
    fn small_bouquet_agrees() {
        let q = Quiver::bouquet(2);
        for mode in [CharMode::Char2, CharMode::CharNot2] {
            let r = cross_validate(&q, 5, mode).unwrap();
            assert!(r.all_agree(), "{:?}", r.disagreements);
        }
    }

    #[test]
    fn two_cycle_agrees_to_degree_four() {
        let q = two_cycle_with_loops();
        for mode in [CharMode::Char2, CharMode::CharNot2] {
            let r = cross_validate(&q, 4, mode).unwrap();
            assert!(r.all_agree(), "{:?}", r.disagreements);
        }
    }

    #[test]
    fn rationals_match_gf3_on_bouquet() {
        let q = Quiver::bouquet(3);
        let engine = Engine::new(&q, CharMode::CharNot2);
        let r = cross_validate_over(&engine, 4, FieldKind::Q).unwrap();
        assert!(r.all_agree(), "{:?}", r.disagreements);
    }
}
