use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u16,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            degree: 1,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u16).sum(),
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Total degree in each block of `block` consecutive variables.
    pub fn block_degrees(&self, block: usize) -> Vec<u32> {
        self.exps
            .chunks(block)
            .map(|c| c.iter().map(|&e| e as u32).sum())
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "v{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial over `F` in a fixed number of variables. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), F::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// The greatest term.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &F, other: &Poly<F>) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c.mul(v));
        }
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly<F> {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The common block degree of all terms, if the polynomial is
    /// homogeneous for that grading.
    pub fn block_degrees(&self, block: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| m.block_degrees(block));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Substitutes a value for every variable.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        out.add_scaled(&F::one(), rhs);
        out
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        out.add_scaled(&F::one().neg(), rhs);
        out
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        self.scale(&F::one().neg())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::field::{Gf2, Gf3, Rational};
    use proptest::prelude::*;

    fn poly_from(nvars: usize, spec: &[(i64, Vec<u8>)]) -> Poly<Rational> {
        Poly::from_terms(
            nvars,
            spec.iter()
                .map(|(c, e)| (Monomial::from_exponents(e.clone()), Rational::from_i64(*c))),
        )
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![1, 1]);
        assert!(b < a && a < c);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = Poly::<Gf2>::var(2, 0);
        let two_x = &x + &x;
        assert!(two_x.is_zero());
        let y = Poly::<Gf3>::var(2, 1);
        let s = &(&y + &y) + &y;
        assert!(s.is_zero());
    }

    #[test]
    fn square_of_binomial() {
        let x = Poly::<Rational>::var(2, 0);
        let y = Poly::<Rational>::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Monomial::from_exponents(vec![1, 1])), Rational::from_i64(2));
        assert_eq!(sq.block_degrees(1), None);
        assert_eq!(sq.block_degrees(2), Some(vec![2]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Rational>> {
        proptest::collection::vec((-3i64..4, proptest::collection::vec(0u8..3, 3)), 0..5)
            .prop_map(|spec| poly_from(3, &spec))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn grading_is_additive(e1 in proptest::collection::vec(0u8..3, 4), e2 in proptest::collection::vec(0u8..3, 4)) {
            let m1 = Monomial::from_exponents(e1);
            let m2 = Monomial::from_exponents(e2);
            let prod = m1.mul(&m2).block_degrees(2);
            let sum: Vec<u32> = m1.block_degrees(2).iter().zip(m2.block_degrees(2)).map(|(a, b)| a + b).collect();
            prop_assert_eq!(prod, sum);
        }
    }
}
