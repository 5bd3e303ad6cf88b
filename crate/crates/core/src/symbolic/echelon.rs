use std::collections::BTreeMap;

use super::field::Field;
use super::poly::{Monomial, Poly};

/// A linear combination of inserted vectors, by insertion index.
pub type Combination<F> = BTreeMap<usize, F>;

struct Row<F: Field> {
    poly: Poly<F>,
    combo: Combination<F>,
}

/// Rows in echelon form over the monomial basis, keyed by leading monomial,
/// each with leading coefficient one.
pub struct Echelon<F: Field> {
    rows: BTreeMap<Monomial, Row<F>>,
    track: bool,
    inserted: usize,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon::new()
    }
}

impl<F: Field> Clone for Echelon<F> {
    fn clone(&self) -> Self {
        Echelon {
            rows: self
                .rows
                .iter()
                .map(|(m, r)| {
                    (
                        m.clone(),
                        Row {
                            poly: r.poly.clone(),
                            combo: r.combo.clone(),
                        },
                    )
                })
                .collect(),
            track: self.track,
            inserted: self.inserted,
        }
    }
}

fn add_combo<F: Field>(into: &mut Combination<F>, c: &F, from: &Combination<F>) {
    for (&i, v) in from {
        let sum = into.get(&i).cloned().unwrap_or_else(F::zero).add(&c.mul(v));
        if sum.is_zero() {
            into.remove(&i);
        } else {
            into.insert(i, sum);
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    /// Records, for every row, which inserted vectors it combines.
    pub fn tracking() -> Self {
        Echelon {
            track: true,
            ..Echelon::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Vectors inserted so far, dependent ones included.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn basis(&self) -> impl Iterator<Item = &Poly<F>> {
        self.rows.values().map(|r| &r.poly)
    }

    /// Reduces leading terms against the pivots. Returns the remainder, whose
    /// leading monomial is not a pivot, and `v - remainder` as a combination.
    fn reduce(&self, v: &Poly<F>) -> (Poly<F>, Combination<F>) {
        let mut rem = v.clone();
        let mut combo = Combination::new();
        while let Some((lead, coef)) = rem.leading() {
            let Some(row) = self.rows.get(lead) else {
                break;
            };
            let c = coef.clone();
            rem.add_scaled(&c.neg(), &row.poly);
            if self.track {
                add_combo(&mut combo, &c, &row.combo);
            }
        }
        (rem, combo)
    }

    /// Adds a vector. Returns true when it raised the rank.
    pub fn insert(&mut self, v: Poly<F>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(&v);
        let Some((lead, coef)) = rem.leading() else {
            return false;
        };
        let lead = lead.clone();
        let inv = coef.inv();
        let mut row_combo = Combination::new();
        if self.track {
            // rem = v - combo
            row_combo.insert(index, inv.clone());
            add_combo(&mut row_combo, &inv.neg(), &combo);
        }
        self.rows.insert(
            lead,
            Row {
                poly: rem.scale(&inv),
                combo: row_combo,
            },
        );
        true
    }

    pub fn contains(&self, v: &Poly<F>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients expressing `v` through the inserted vectors, when `v` is
    /// in the span. Needs a tracking echelon.
    pub fn solve(&self, v: &Poly<F>) -> Option<Combination<F>> {
        assert!(self.track, "solve needs a tracking echelon");
        let (rem, combo) = self.reduce(v);
        rem.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::field::{Gf3, Rational};
    use proptest::prelude::*;

    fn lin(coeffs: &[i64]) -> Poly<Rational> {
        Poly::from_terms(
            coeffs.len(),
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var(coeffs.len(), i), Rational::from_i64(c))),
        )
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(lin(&[1, 1, 0])));
        assert!(e.insert(lin(&[0, 1, 1])));
        assert!(!e.insert(lin(&[1, 2, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&lin(&[1, 0, -1])));
        assert!(!e.contains(&lin(&[1, 0, 0])));
    }

    #[test]
    fn characteristic_changes_rank() {
        let v1 = Poly::<Gf3>::from_terms(2, [(Monomial::var(2, 0), Gf3::one()), (Monomial::var(2, 1), Gf3::one())]);
        let v2 = Poly::<Gf3>::from_terms(
            2,
            [(Monomial::var(2, 0), Gf3::one()), (Monomial::var(2, 1), Gf3::from_i64(4))],
        );
        let mut e = Echelon::new();
        e.insert(v1);
        assert!(!e.insert(v2));
    }

    proptest! {
        #[test]
        fn solutions_recombine(vs in proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), 1..6),
                               ws in proptest::collection::vec(-2i64..3, 1..6)) {
            let mut e = Echelon::tracking();
            let polys: Vec<_> = vs.iter().map(|v| lin(v)).collect();
            for p in &polys {
                e.insert(p.clone());
            }
            let mut target = Poly::zero(4);
            for (p, &w) in polys.iter().zip(&ws) {
                target.add_scaled(&Rational::from_i64(w), p);
            }
            let combo = e.solve(&target).expect("combination lies in the span");
            let mut rebuilt = Poly::zero(4);
            for (i, c) in combo {
                rebuilt.add_scaled(&c, &polys[i]);
            }
            prop_assert_eq!(rebuilt, target);
        }
    }
}
