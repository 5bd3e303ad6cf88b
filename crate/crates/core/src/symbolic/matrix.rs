use super::field::Field;
use super::poly::Poly;
use crate::quiver::{ArrowId, Quiver};

/// Index of the variable `x_ij(a)` among `4·|arrows|` variables.
pub fn variable_index(a: ArrowId, i: usize, j: usize) -> usize {
    4 * a.index() + 2 * i + j
}

/// The name `x_ij(a)` of a variable index, 1-based in `i`, `j`.
pub fn variable_name(q: &Quiver, index: usize) -> String {
    let a = ArrowId((index / 4) as u16);
    let (i, j) = ((index % 4) / 2, index % 2);
    format!("x{}{}({})", i + 1, j + 1, q.arrow_name(a))
}

/// A 2×2 matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMat<F: Field> {
    pub entries: [[Poly<F>; 2]; 2],
}

impl<F: Field> GMat<F> {
    pub fn zero(nvars: usize) -> Self {
        GMat {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero(nvars))),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        let mut m = GMat::zero(nvars);
        m.entries[0][0] = Poly::one(nvars);
        m.entries[1][1] = Poly::one(nvars);
        m
    }

    /// `X_a` for an arrow among `arrows` arrows.
    pub fn generic(arrows: usize, a: ArrowId) -> Self {
        let nvars = 4 * arrows;
        GMat {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| Poly::var(nvars, variable_index(a, i, j)))
            }),
        }
    }

    pub fn nvars(&self) -> usize {
        self.entries[0][0].nvars()
    }

    pub fn mul(&self, other: &GMat<F>) -> GMat<F> {
        let e = &self.entries;
        let o = &other.entries;
        GMat {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| &(&e[i][0] * &o[0][j]) + &(&e[i][1] * &o[1][j]))
            }),
        }
    }

    pub fn add(&self, other: &GMat<F>) -> GMat<F> {
        GMat {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| &self.entries[i][j] + &other.entries[i][j])
            }),
        }
    }

    pub fn sub(&self, other: &GMat<F>) -> GMat<F> {
        GMat {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| &self.entries[i][j] - &other.entries[i][j])
            }),
        }
    }

    /// Multiplies every entry by a polynomial.
    pub fn scale(&self, c: &Poly<F>) -> GMat<F> {
        GMat {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] * c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn trace(&self) -> Poly<F> {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> Poly<F> {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    /// Coefficients of the characteristic polynomial: trace, determinant, and
    /// zero beyond.
    pub fn sigma(&self, k: usize) -> Poly<F> {
        match k {
            0 => Poly::one(self.nvars()),
            1 => self.trace(),
            2 => self.det(),
            _ => Poly::zero(self.nvars()),
        }
    }
}

/// `X_{a_s} ⋯ X_{a_1}` for the word `a_1 ⋯ a_s`.
///
/// # Panics
///
/// On an empty word.
pub fn path_product<F: Field>(q: &Quiver, word: &[ArrowId]) -> GMat<F> {
    assert!(!word.is_empty(), "empty path product");
    let arrows = q.arrow_count();
    let mut it = word.iter();
    let mut m = GMat::generic(arrows, *it.next().unwrap());
    for &a in it {
        m = GMat::generic(arrows, a).mul(&m);
    }
    m
}

/// `σ_k` of a closed word's product.
pub fn sigma_of_word<F: Field>(q: &Quiver, k: usize, word: &[ArrowId]) -> Poly<F> {
    path_product::<F>(q, word).sigma(k)
}
