//! Dense univariate polynomials in `q` over the integers.
//!
//! Every matrix entry and every family parameter in this crate is a [`QPoly`].
//! Plain integers are degree-0 polynomials. The coefficientwise order `f >=_q g`
//! is partial and is only ever tested as `(f - g).is_q_nonnegative()`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A polynomial `c_0 + c_1 q + ... + c_d q^d` with arbitrary-precision
/// integer coefficients stored in ascending order.
///
/// The coefficient vector is always canonical: either empty (the zero
/// polynomial) or ending in a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^deg`.
    pub fn monomial<T: Into<BigInt>>(c: T, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.canonicalize();
        p
    }

    /// Convenience constructor from small ascending coefficients.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Strips trailing zero coefficients. Idempotent.
    pub fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True iff every coefficient is `>= 0`. The zero polynomial qualifies.
    pub fn is_q_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Index and value of the lowest-degree negative coefficient, if any.
    pub fn first_negative(&self) -> Option<(usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| c.is_negative())
    }

    /// Horner evaluation at an integer point.
    pub fn eval_int<T: Into<BigInt>>(&self, x: T) -> BigInt {
        let x = x.into();
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * &c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor` in `Z[q]`, or `None` when the division
    /// leaves a remainder or requires non-integral coefficients.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }
}

/// `a >=_q b`, i.e. `a - b` has no negative coefficient.
pub fn q_geq(a: &QPoly, b: &QPoly) -> bool {
    (a - b).is_q_nonnegative()
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a QPoly> for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &'a QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a QPoly> for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &'a QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        for (c, d) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= d;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a QPoly> for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &'a QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }

        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                self.$method(&rhs)
            }
        }

        impl<'a> $assign_tr<&'a QPoly> for QPoly {
            fn $assign_method(&mut self, rhs: &'a QPoly) {
                *self = (&*self).$method(rhs);
            }
        }

        impl $assign_tr<QPoly> for QPoly {
            fn $assign_method(&mut self, rhs: QPoly) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a QPoly> for QPoly {
    fn sum<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| acc * p)
    }
}

impl<'a> Product<&'a QPoly> for QPoly {
    fn product<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| acc * p)
    }
}

/// Renders ascending, e.g. `1+4q+q^2`, `q-3q^2`, `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    f.write_str("q")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

// JSON form is the ascending coefficient array. Coefficients that do not fit
// in an i128 are written as decimal strings.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            if let Some(v) = c.to_i64() {
                seq.serialize_element(&v)?;
            } else if let Some(v) = c.to_i128() {
                seq.serialize_element(&v)?;
            } else {
                seq.serialize_element(&c.to_string())?;
            }
        }
        seq.end()
    }
}

struct Coefficient(BigInt);

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl Visitor<'_> for CoeffVisitor {
            type Value = Coefficient;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_i128<E: de::Error>(self, v: i128) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_u128<E: de::Error>(self, v: u128) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coefficient, E> {
                Err(E::custom(format!("non-integer coefficient {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coefficient, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(Coefficient)
                    .map_err(|_| E::custom(format!("invalid integer coefficient {v:?}")))
            }
        }

        deserializer.deserialize_any(CoeffVisitor)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = QPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of ascending integer coefficients")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<QPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(Coefficient(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(QPoly::from_coeffs(coeffs))
            }
        }

        deserializer.deserialize_seq(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::eulerian as eulerian_series_oracle;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn from_i128s(c: &[i128]) -> QPoly {
        QPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn add_examples() {
        let a = p(&[1, 1]);
        assert_eq!(QPoly::zero() + &a, a);
        assert_eq!(p(&[1, 1]) + p(&[0, 1]), p(&[1, 2]));
        let e1 = from_i128s(&eulerian_series_oracle(1));
        assert_eq!(&e1 + &e1, QPoly::constant(2));
    }

    #[test]
    fn mul_examples() {
        let a = p(&[3, 0, -2]);
        assert_eq!(QPoly::one() * &a, a);
        assert_eq!(p(&[1, 1]) * QPoly::q(), p(&[0, 1, 1]));
        assert_eq!(QPoly::q() * p(&[1, 1]), p(&[0, 1, 1]));
    }

    #[test]
    fn sub_examples() {
        let a = p(&[5, -1, 2]);
        assert!((&a - &a).is_zero());
        for k in 0..20i64 {
            // s_k - (r_k + t_k) for the Eulerian parameters.
            let s = p(&[k + 1, k]);
            let r_plus_t = p(&[k + 1, k]);
            assert!((s - r_plus_t).is_zero());
        }
        assert_eq!(p(&[1, 2]) - QPoly::q(), p(&[1, 1]));
    }

    #[test]
    fn nonnegativity_examples() {
        assert!(QPoly::zero().is_q_nonnegative());
        assert!(!p(&[1, -3, 1]).is_q_nonnegative());
        assert!(from_i128s(&eulerian_series_oracle(3)).is_q_nonnegative());
        assert_eq!(p(&[1, -3, 1]).first_negative().map(|(i, _)| i), Some(1));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, 1]).eval_int(1), BigInt::from(2));
        // N_3 = q + 3q^2 + q^3.
        assert_eq!(p(&[0, 1, 3, 1]).eval_int(1), BigInt::from(5));
        assert_eq!(QPoly::zero().eval_int(17), BigInt::zero());
    }

    #[test]
    fn degree_and_canonical_form() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(p(&[1, 4, 1]).to_string(), "1+4q+q^2");
        assert_eq!(p(&[0, 1, 1]).to_string(), "q+q^2");
        assert_eq!(p(&[1, -3, 1]).to_string(), "1-3q+q^2");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(&[-2]).to_string(), "-2");
    }

    #[test]
    fn json_encoding() {
        assert_eq!(serde_json::to_string(&p(&[1, 4, 1])).unwrap(), "[1,4,1]");
        assert_eq!(serde_json::to_string(&QPoly::zero()).unwrap(), "[]");
        let back: QPoly = serde_json::from_str("[1,4,1,0]").unwrap();
        assert_eq!(back, p(&[1, 4, 1]));
        let big = QPoly::constant(BigInt::from(10).pow(40));
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<QPoly>(&text).unwrap(), big);
        assert!(serde_json::from_str::<QPoly>("[1.5]").is_err());
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]);
        let b = p(&[2, -1, 3]);
        assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(p(&[1]).div_exact(&p(&[2])), None);
        assert_eq!(QPoly::zero().div_exact(&a), Some(QPoly::zero()));
        assert_eq!(a.div_exact(&QPoly::zero()), None);
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| QPoly::from_i64s(&c))
    }

    fn nonneg_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(0i64..=6, 0..5).prop_map(|c| QPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn canonicalize_idempotent(c in prop::collection::vec(-3i64..=3, 0..8)) {
            let mut a = QPoly { coeffs: c.iter().map(|&x| BigInt::from(x)).collect() };
            a.canonicalize();
            let once = a.clone();
            a.canonicalize();
            prop_assert_eq!(&a, &once);
            prop_assert!(a.coeffs().last().is_none_or(|c| !c.is_zero()));
        }

        #[test]
        fn nonnegativity_closed(a in nonneg_poly(), b in nonneg_poly()) {
            prop_assert!((&a + &b).is_q_nonnegative());
            prop_assert!((&a * &b).is_q_nonnegative());
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(), x in -5i64..=5) {
            prop_assert_eq!((&a * &b).eval_int(x), a.eval_int(x) * b.eval_int(x));
        }

        #[test]
        fn json_roundtrip(a in small_poly()) {
            let text = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<QPoly>(&text).unwrap(), a);
        }
    }
}
