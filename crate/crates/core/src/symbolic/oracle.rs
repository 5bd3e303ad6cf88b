use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use super::echelon::Echelon;
use super::field::{Field, FieldKind, Gf2, Gf3, Rational};
use super::matrix::sigma_of_word;
use crate::quiver::{closed_paths_with_multidegree, ArrowId, MultiDegree, Path, Quiver};

/// Products formed across all components before giving up.
pub const DEFAULT_PRODUCT_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("path is empty")]
    EmptyPath,
    #[error("path is not closed")]
    NotClosed,
    #[error("product budget of {0} exhausted")]
    BudgetExhausted(usize),
}

/// One graded piece of the invariant ring.
pub struct Component<F: Field> {
    pub degree: MultiDegree,
    /// Products of at least two invariants of positive degree.
    pub decomposable: Echelon<F>,
    /// The whole component: decomposables plus `σ_1(c)` with `mdeg c = δ`
    /// and `σ_2(c)` with `2·mdeg c = δ`.
    pub invariants: Echelon<F>,
}

/// Memoized graded components of the invariant ring of one quiver.
///
/// `Dec_δ` is spanned by `Inv_μ · Inv_{δ-μ}` over splits into two non-zero
/// balanced parts, which covers every product of two or more factors.
pub struct DecomposabilityOracle<'q, F: Field> {
    quiver: &'q Quiver,
    memo: HashMap<MultiDegree, Rc<Component<F>>>,
    budget: usize,
    spent: usize,
}

impl<'q, F: Field> DecomposabilityOracle<'q, F> {
    pub fn new(quiver: &'q Quiver) -> Self {
        DecomposabilityOracle {
            quiver,
            memo: HashMap::new(),
            budget: DEFAULT_PRODUCT_BUDGET,
            spent: 0,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn component(&mut self, delta: &MultiDegree) -> Result<Rc<Component<F>>, OracleError> {
        if let Some(c) = self.memo.get(delta) {
            return Ok(Rc::clone(c));
        }
        let q = self.quiver;
        let mut decomposable = Echelon::new();
        if delta.is_balanced(q) && !delta.is_zero() {
            for part in delta.sub_degrees() {
                if part.is_zero() || &part == delta || !part.is_balanced(q) {
                    continue;
                }
                let rest = delta.checked_sub(&part).expect("sub-degree");
                if part > rest {
                    continue;
                }
                let left = self.component(&part)?;
                let right = self.component(&rest)?;
                let lb: Vec<_> = left.invariants.basis().collect();
                let rb: Vec<_> = right.invariants.basis().collect();
                for (i, a) in lb.iter().enumerate() {
                    let from = if part == rest { i } else { 0 };
                    for b in &rb[from..] {
                        self.spent += 1;
                        if self.spent > self.budget {
                            return Err(OracleError::BudgetExhausted(self.budget));
                        }
                        decomposable.insert(*a * *b);
                    }
                }
            }
        }
        let mut invariants = decomposable.clone();
        if delta.is_balanced(q) && !delta.is_zero() {
            for c in closed_paths_with_multidegree(q, delta) {
                invariants.insert(sigma_of_word(q, 1, c.word()));
            }
            if delta.counts().iter().all(|c| c % 2 == 0) {
                let half = MultiDegree::from_counts(delta.counts().iter().map(|c| c / 2).collect());
                for c in closed_paths_with_multidegree(q, &half) {
                    invariants.insert(sigma_of_word(q, 2, c.word()));
                }
            }
        }
        let component = Rc::new(Component {
            degree: delta.clone(),
            decomposable,
            invariants,
        });
        self.memo.insert(delta.clone(), Rc::clone(&component));
        Ok(component)
    }

    /// Whether `σ_k` of the closed word lies in the span of products of lower
    /// degree invariants.
    pub fn is_decomposable(&mut self, word: &[ArrowId], k: usize) -> Result<bool, OracleError> {
        let q = self.quiver;
        if word.is_empty() {
            return Err(OracleError::EmptyPath);
        }
        if q.head(*word.last().unwrap()) != q.tail(word[0]) {
            return Err(OracleError::NotClosed);
        }
        let value = sigma_of_word::<F>(q, k, word);
        if value.is_zero() {
            return Ok(true);
        }
        let target = MultiDegree::of_word(q.arrow_count(), word).scale(k as u32);
        Ok(self.component(&target)?.decomposable.contains(&value))
    }
}

/// Outcome of one oracle query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub field: FieldKind,
    pub k: usize,
    pub decomposable: bool,
    /// Dimension of the graded component of the invariant ring.
    pub component_dim: usize,
    /// Dimension of its decomposable part.
    pub decomposable_dim: usize,
}

fn run<F: Field>(q: &Quiver, h: &Path, k: usize, field: FieldKind) -> Result<OracleReport, OracleError> {
    let mut oracle = DecomposabilityOracle::<F>::new(q);
    let decomposable = oracle.is_decomposable(h.word(), k)?;
    let target = h.multidegree(q).scale(k as u32);
    let c = oracle.component(&target)?;
    Ok(OracleReport {
        field,
        k,
        decomposable,
        component_dim: c.invariants.rank(),
        decomposable_dim: c.decomposable.rank(),
    })
}

/// Decides whether `σ_k(X_h)` is decomposable over the given field.
pub fn decomposability_oracle(
    q: &Quiver,
    h: &Path,
    k: usize,
    field: FieldKind,
) -> Result<OracleReport, OracleError> {
    if h.is_empty() {
        return Err(OracleError::EmptyPath);
    }
    if !h.is_closed() {
        return Err(OracleError::NotClosed);
    }
    match field {
        FieldKind::Gf2 => run::<Gf2>(q, h, k, field),
        FieldKind::Gf3 => run::<Gf3>(q, h, k, field),
        FieldKind::Q => run::<Rational>(q, h, k, field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomposable(q: &Quiver, word: &str, k: usize, field: FieldKind) -> bool {
        let h = q.parse_path(word).unwrap();
        decomposability_oracle(q, &h, k, field).unwrap().decomposable
    }

    #[test]
    fn loop_squared() {
        let q = Quiver::bouquet(1);
        assert!(decomposable(&q, "x1,x1", 1, FieldKind::Gf2));
        assert!(!decomposable(&q, "x1,x1", 1, FieldKind::Q));
        assert!(!decomposable(&q, "x1,x1", 1, FieldKind::Gf3));
    }

    #[test]
    fn four_distinct_loops() {
        let q = Quiver::bouquet(4);
        assert!(decomposable(&q, "x1,x2,x3,x4", 1, FieldKind::Gf3));
        assert!(decomposable(&q, "x1,x2,x3,x4", 1, FieldKind::Q));
        assert!(!decomposable(&q, "x1,x2,x3,x4", 1, FieldKind::Gf2));
    }

    #[test]
    fn generators_are_indecomposable() {
        let q = Quiver::bouquet(3);
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            assert!(!decomposable(&q, "x1", 1, field));
            assert!(!decomposable(&q, "x1", 2, field));
            assert!(!decomposable(&q, "x1,x2", 1, field));
            assert!(!decomposable(&q, "x1,x2,x3", 1, field));
        }
    }

    #[test]
    fn determinant_of_product_splits() {
        let q = Quiver::bouquet(2);
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            assert!(decomposable(&q, "x1,x2", 2, field));
        }
    }

    #[test]
    fn component_dimensions() {
        let q = Quiver::bouquet(2);
        let h = q.parse_path("x1,x2").unwrap();
        let r = decomposability_oracle(&q, &h, 1, FieldKind::Q).unwrap();
        // tr(X1)tr(X2) and tr(X1 X2)
        assert_eq!((r.component_dim, r.decomposable_dim), (2, 1));
    }

    #[test]
    fn budget_is_reported() {
        let q = Quiver::bouquet(3);
        let h = q.parse_path("x1,x2,x3,x1").unwrap();
        let mut oracle = DecomposabilityOracle::<Gf2>::new(&q).with_budget(3);
        assert_eq!(
            oracle.is_decomposable(h.word(), 1),
            Err(OracleError::BudgetExhausted(3))
        );
    }

    #[test]
    fn open_path_rejected() {
        let q = Quiver::new(["u", "v"], [("x", "u", "v")]).unwrap();
        let h = q.parse_path("x").unwrap();
        assert_eq!(
            decomposability_oracle(&q, &h, 1, FieldKind::Gf2),
            Err(OracleError::NotClosed)
        );
    }
}
