use serde::Serialize;
use thiserror::Error;

use super::field::{Field, FieldKind, Gf2, Gf3, Rational};
use super::matrix::{path_product, GMat};
use super::poly::Poly;
use crate::quiver::{ArrowId, Quiver};
use crate::words::lyndon_words;

/// Largest `k` and `s` the expansion accepts.
pub const MAX_LETTERS: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmitsurError {
    #[error("expansion with k = {k}, s = {s} is beyond k, s <= {MAX_LETTERS}")]
    OutOfRange { k: usize, s: usize },
}

/// One product `± Π σ_{j_i}(c_i)` over pairwise different primitive cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmitsurTerm {
    /// `(-1)^{k - Σ j_i}`.
    pub sign: i8,
    /// Pairs `(j_i, c_i)`, each `c_i` a Lyndon word over letters `0..s`.
    pub factors: Vec<(usize, Vec<usize>)>,
}

impl AmitsurTerm {
    /// Occurrences of each letter, weighted by `j`.
    pub fn letter_degree(&self, s: usize) -> Vec<u32> {
        let mut d = vec![0; s];
        for (j, c) in &self.factors {
            for &l in c {
                d[l] += *j as u32;
            }
        }
        d
    }
}

/// The terms of `σ_k(A_1 + ⋯ + A_s)` written through `σ_j` of products.
pub fn amitsur_terms(k: usize, s: usize) -> Result<Vec<AmitsurTerm>, AmitsurError> {
    if k > MAX_LETTERS || s > MAX_LETTERS {
        return Err(AmitsurError::OutOfRange { k, s });
    }
    let cycles = lyndon_words(s, k);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect(&cycles, 0, k, k, &mut chosen, &mut out);
    Ok(out)
}

fn collect(
    cycles: &[Vec<usize>],
    from: usize,
    rest: usize,
    k: usize,
    chosen: &mut Vec<(usize, Vec<usize>)>,
    out: &mut Vec<AmitsurTerm>,
) {
    if rest == 0 {
        let js: usize = chosen.iter().map(|(j, _)| j).sum();
        out.push(AmitsurTerm {
            sign: if (k - js) % 2 == 0 { 1 } else { -1 },
            factors: chosen.clone(),
        });
        return;
    }
    for (i, c) in cycles.iter().enumerate().skip(from) {
        for j in 1..=rest / c.len() {
            chosen.push((j, c.clone()));
            collect(cycles, i + 1, rest - j * c.len(), k, chosen, out);
            chosen.pop();
        }
    }
}

fn term_value<F: Field>(q: &Quiver, term: &AmitsurTerm) -> Poly<F> {
    let mut acc = Poly::one(4 * q.arrow_count());
    for (j, c) in &term.factors {
        let word: Vec<ArrowId> = c.iter().map(|&l| ArrowId(l as u16)).collect();
        acc = &acc * &path_product::<F>(q, &word).sigma(*j);
    }
    acc.scale(&F::from_i64(term.sign as i64))
}

/// `F_k(A_1, …, A_s)` on generic matrices, `A_i` attached to the `i`-th loop
/// of a bouquet.
pub fn amitsur_polynomial<F: Field>(k: usize, s: usize) -> Result<Poly<F>, AmitsurError> {
    let q = Quiver::bouquet(s);
    let mut out = Poly::zero(4 * s);
    for term in amitsur_terms(k, s)? {
        out = &out + &term_value::<F>(&q, &term);
    }
    Ok(out)
}

/// `σ_k(A_1 + ⋯ + A_s) - F_k(A_1, …, A_s)`.
pub fn amitsur_residual<F: Field>(k: usize, s: usize) -> Result<Poly<F>, AmitsurError> {
    let mut sum = GMat::zero(4 * s);
    for i in 0..s {
        sum = sum.add(&GMat::generic(s, ArrowId(i as u16)));
    }
    Ok(&sum.sigma(k) - &amitsur_polynomial::<F>(k, s)?)
}

/// The partial linearization `F_δ`: the part of `F_{|δ|}(α_1 A_1, …, α_s A_s)`
/// of degree `δ` in the scalars `α`.
pub fn partial_linearization<F: Field>(delta: &[u32]) -> Result<Poly<F>, AmitsurError> {
    let s = delta.len();
    let k: usize = delta.iter().map(|&d| d as usize).sum();
    let q = Quiver::bouquet(s);
    let mut out = Poly::zero(4 * s);
    for term in amitsur_terms(k, s)? {
        if term.letter_degree(s) == delta {
            out = &out + &term_value::<F>(&q, &term);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct AmitsurCheck {
    pub field: FieldKind,
    pub k: usize,
    pub s: usize,
    pub terms: usize,
    pub residual_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearizationCheck {
    pub field: FieldKind,
    pub delta: Vec<u32>,
    pub terms: usize,
    pub vanishes: bool,
}

fn check_expansion<F: Field>(k: usize, s: usize, field: FieldKind) -> Result<AmitsurCheck, AmitsurError> {
    Ok(AmitsurCheck {
        field,
        k,
        s,
        terms: amitsur_terms(k, s)?.len(),
        residual_zero: amitsur_residual::<F>(k, s)?.is_zero(),
    })
}

/// Checks the expansion for `σ_k` of a sum of `s` generic matrices.
pub fn check_amitsur(k: usize, s: usize, field: FieldKind) -> Result<AmitsurCheck, AmitsurError> {
    match field {
        FieldKind::Gf2 => check_expansion::<Gf2>(k, s, field),
        FieldKind::Gf3 => check_expansion::<Gf3>(k, s, field),
        FieldKind::Q => check_expansion::<Rational>(k, s, field),
    }
}

fn check_delta<F: Field>(delta: &[u32], field: FieldKind) -> Result<LinearizationCheck, AmitsurError> {
    let k = delta.iter().sum::<u32>() as usize;
    let terms = amitsur_terms(k, delta.len())?
        .into_iter()
        .filter(|t| t.letter_degree(delta.len()) == delta)
        .count();
    Ok(LinearizationCheck {
        field,
        delta: delta.to_vec(),
        terms,
        vanishes: partial_linearization::<F>(delta)?.is_zero(),
    })
}

/// Checks `F_δ = 0` for every `δ` with positive entries, `|δ| = 3` and at
/// most three letters.
pub fn check_linearizations(field: FieldKind) -> Result<Vec<LinearizationCheck>, AmitsurError> {
    let deltas: [&[u32]; 4] = [&[3], &[2, 1], &[1, 2], &[1, 1, 1]];
    deltas
        .iter()
        .map(|d| match field {
            FieldKind::Gf2 => check_delta::<Gf2>(d, field),
            FieldKind::Gf3 => check_delta::<Gf3>(d, field),
            FieldKind::Q => check_delta::<Rational>(d, field),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letter_determinant_expansion() {
        let q = Quiver::bouquet(2);
        let a = GMat::<Rational>::generic(2, ArrowId(0));
        let b = GMat::<Rational>::generic(2, ArrowId(1));
        let ab = path_product::<Rational>(&q, &[ArrowId(0), ArrowId(1)]);
        let expected = &(&(&a.det() + &b.det()) + &(&a.trace() * &b.trace())) - &ab.trace();
        assert_eq!(amitsur_polynomial::<Rational>(2, 2).unwrap(), expected);
        assert_eq!(amitsur_terms(2, 2).unwrap().len(), 4);
    }

    #[test]
    fn trace_is_additive() {
        for s in 1..=4 {
            let terms = amitsur_terms(1, s).unwrap();
            assert_eq!(terms.len(), s);
            assert!(terms.iter().all(|t| t.sign == 1 && t.factors.len() == 1));
        }
    }

    #[test]
    fn residuals_vanish() {
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            for k in 1..=2 {
                for s in 2..=3 {
                    assert!(check_amitsur(k, s, field).unwrap().residual_zero, "{field} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn cubic_linearizations_vanish() {
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            for c in check_linearizations(field).unwrap() {
                assert!(c.vanishes, "{field} {:?}", c.delta);
                assert!(c.terms > 0);
            }
        }
    }

    #[test]
    fn quadratic_linearization_is_not_zero() {
        assert!(!partial_linearization::<Rational>(&[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn out_of_range() {
        assert_eq!(amitsur_terms(5, 2), Err(AmitsurError::OutOfRange { k: 5, s: 2 }));
    }
}
