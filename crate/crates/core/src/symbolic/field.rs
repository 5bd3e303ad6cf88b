use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A coefficient field chosen at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Gf2,
    Gf3,
    Q,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Gf2 => "gf2",
            FieldKind::Gf3 => "gf3",
            FieldKind::Q => "q",
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Gf2 => 2,
            FieldKind::Gf3 => 3,
            FieldKind::Q => 0,
        }
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gf2" => Ok(FieldKind::Gf2),
            "gf3" => Ok(FieldKind::Gf3),
            "q" | "rationals" => Ok(FieldKind::Q),
            other => Err(format!("unknown field `{other}` (expected gf2, gf3 or q)")),
        }
    }
}

/// Exact coefficient arithmetic.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// `"gf2"`, `"gf3"` or `"q"`.
    const NAME: &'static str;
    /// 0 for the rationals.
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

/// The prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;

impl<const P: u32> Fp<P> {
    pub fn new(v: u32) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Fp<P> {
    const NAME: &'static str = match P {
        2 => "gf2",
        3 => "gf3",
        _ => "gfp",
    };
    const CHARACTERISTIC: u64 = P as u64;

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }

    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }

    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }

    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat
        let mut base = self.0 as u64;
        let mut exp = P as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            exp >>= 1;
        }
        Fp(acc as u32)
    }
}

/// Rationals with arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Rational {
    /// The denominator, for checking reductions modulo a prime.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Field for Rational {
    const NAME: &'static str = "q";
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }

    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }

    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms<F: Field>(samples: &[i64]) {
        for &a in samples {
            let fa = F::from_i64(a);
            assert_eq!(fa.add(&fa.neg()), F::zero());
            if !fa.is_zero() {
                assert_eq!(fa.mul(&fa.inv()), F::one());
            }
            for &b in samples {
                let fb = F::from_i64(b);
                assert_eq!(fa.add(&fb), F::from_i64(a + b));
                assert_eq!(fa.mul(&fb), F::from_i64(a * b));
                assert_eq!(fa.sub(&fb), F::from_i64(a - b));
            }
        }
    }

    #[test]
    fn field_axioms() {
        let samples = [-7, -2, -1, 0, 1, 2, 3, 5, 11];
        axioms::<Gf2>(&samples);
        axioms::<Gf3>(&samples);
        axioms::<Fp<7>>(&samples);
        axioms::<Rational>(&samples);
    }

    #[test]
    fn two_vanishes_only_in_char_two() {
        assert!(Gf2::from_i64(2).is_zero());
        assert!(!Gf3::from_i64(2).is_zero());
        assert_eq!(Gf3::from_i64(2).inv(), Gf3::from_i64(2));
        assert_eq!(Rational::from_i64(2).inv().mul(&Rational::from_i64(4)), Rational::from_i64(2));
    }
}
