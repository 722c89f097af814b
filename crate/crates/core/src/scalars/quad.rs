//! Elements `a + b·√q` of the quadratic field `Q(√q)`.
//!
//! The coefficient type is generic; the crate root fixes it to
//! arbitrary-precision rationals through the [`Scalar`](crate::Scalar) alias.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{FromPrimitive, Num, One, Zero};

use crate::error::HallError;

/// Coefficient ring for [`QuadExt`]: any exact (or approximate) field type.
pub trait Coeff: Clone + Num + Neg<Output = Self> + FromPrimitive + fmt::Debug {}

impl<T> Coeff for T where T: Clone + Num + Neg<Output = T> + FromPrimitive + fmt::Debug {}

/// `a + b·√q`.
///
/// `q == 0` marks a value built without a field context (e.g. `Zero::zero()`);
/// such values always have `b == 0` and adopt the `q` of whatever they meet.
#[derive(Clone, Debug)]
pub struct QuadExt<T> {
    a: T,
    b: T,
    q: u32,
}

fn merge_q(q1: u32, q2: u32) -> u32 {
    match (q1, q2) {
        (0, q) | (q, 0) => q,
        (x, y) if x == y => x,
        (x, y) => panic!("mixing elements of Q(sqrt {x}) and Q(sqrt {y})"),
    }
}

impl<T: Coeff> QuadExt<T> {
    pub fn new(a: T, b: T, q: u32) -> Self {
        debug_assert!(q != 0 || b.is_zero(), "irrational part needs a field context");
        Self { a, b, q }
    }

    /// The rational number `a`, living in `Q(√q)`.
    pub fn rational(a: T, q: u32) -> Self {
        Self::new(a, T::zero(), q)
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Self::rational(T::from_i64(n).expect("integer coefficient"), q)
    }

    /// `v = √q`.
    pub fn v(q: u32) -> Self {
        Self::new(T::zero(), T::one(), q)
    }

    /// `v^n` for any integer `n`; even powers are rational.
    pub fn v_pow(n: i64, q: u32) -> Self {
        let qq = T::from_u32(q).expect("q fits the coefficient type");
        let half = n.div_euclid(2);
        let mut base = T::one();
        for _ in 0..half.unsigned_abs() {
            base = base * qq.clone();
        }
        if half < 0 {
            base = T::one() / base;
        }
        if n.rem_euclid(2) == 0 {
            Self::rational(base, q)
        } else {
            Self::new(T::zero(), base, q)
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√q`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.q)
    }

    /// Field norm `a² − q·b²`.
    pub fn norm(&self) -> T {
        let qq = T::from_u32(self.q).expect("q fits the coefficient type");
        self.a.clone() * self.a.clone() - qq * self.b.clone() * self.b.clone()
    }

    pub fn inv(&self) -> Result<Self, HallError> {
        if self.is_zero() {
            return Err(HallError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self::new(c.a / n.clone(), c.b / n, self.q))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, HallError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<Self, HallError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one_in(self.q);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc *= sq.clone();
            }
            sq = sq.clone() * sq;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn one_in(q: u32) -> Self {
        Self::rational(T::one(), q)
    }

    pub fn zero_in(q: u32) -> Self {
        Self::rational(T::zero(), q)
    }
}

impl<T: Coeff> PartialEq for QuadExt<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        self.b.is_zero() || self.q == other.q
    }
}

impl<T: Coeff + Eq> Eq for QuadExt<T> {}

impl<T: Coeff> Zero for QuadExt<T> {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Coeff> One for QuadExt<T> {
    fn one() -> Self {
        Self::one_in(0)
    }
}

impl<T: Coeff> Add for QuadExt<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let q = merge_q(self.q, rhs.q);
        Self::new(self.a + rhs.a, self.b + rhs.b, q)
    }
}

impl<T: Coeff> Sub for QuadExt<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let q = merge_q(self.q, rhs.q);
        Self::new(self.a - rhs.a, self.b - rhs.b, q)
    }
}

impl<T: Coeff> Neg for QuadExt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, self.q)
    }
}

impl<T: Coeff> Mul for QuadExt<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let q = merge_q(self.q, rhs.q);
        let bb = self.b.clone() * rhs.b.clone();
        let a = if bb.is_zero() {
            self.a.clone() * rhs.a.clone()
        } else {
            self.a.clone() * rhs.a.clone() + T::from_u32(q).expect("q fits") * bb
        };
        let b = self.a * rhs.b + self.b * rhs.a;
        Self::new(a, b, q)
    }
}

impl<'a, T: Coeff> Mul<&'a QuadExt<T>> for QuadExt<T> {
    type Output = Self;
    fn mul(self, rhs: &'a QuadExt<T>) -> Self {
        self * rhs.clone()
    }
}

impl<T: Coeff> Div for QuadExt<T> {
    type Output = Self;
    /// Panics on a zero divisor; use [`QuadExt::checked_div`] to get an error instead.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero in Q(sqrt q)")
    }
}

impl<T: Coeff> AddAssign for QuadExt<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = self.clone() + rhs;
    }
}

impl<T: Coeff> SubAssign for QuadExt<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = self.clone() - rhs;
    }
}

impl<T: Coeff> MulAssign for QuadExt<T> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.clone() * rhs;
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for QuadExt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})·√{}", self.b, self.q),
            (false, false) => write!(f, "{} + ({})·√{}", self.a, self.b, self.q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type S = QuadExt<BigRational>;

    fn int(n: i64, q: u32) -> S {
        S::from_int(n, q)
    }

    #[test]
    fn v_squared_is_q() {
        for q in [2, 3, 5] {
            assert_eq!(S::v(q) * S::v(q), int(q as i64, q));
        }
    }

    #[test]
    fn inverse_of_v_is_rationalised() {
        let q = 3;
        let expect = S::new(BigRational::zero(), BigRational::new(1.into(), 3.into()), q);
        assert_eq!(S::v(q).pow(-1).unwrap(), expect);
        assert_eq!(S::v_pow(-1, q), expect);
    }

    #[test]
    fn difference_of_squares() {
        let q = 5;
        let one = int(1, q);
        assert_eq!((one.clone() + S::v(q)) * (one - S::v(q)), int(1 - 5, q));
    }

    #[test]
    fn even_powers_are_rational() {
        for n in -6..=6 {
            let x = S::v_pow(2 * n, 2);
            assert!(x.is_rational());
            assert_eq!(x, S::v(2).pow(2 * n).unwrap());
            assert_eq!(S::v_pow(2 * n + 1, 2), S::v(2).pow(2 * n + 1).unwrap());
        }
    }

    #[test]
    fn zero_division_is_an_error() {
        assert!(matches!(S::zero_in(2).inv(), Err(HallError::DivisionByZero)));
        assert!(int(1, 2).checked_div(&S::zero()).is_err());
    }

    #[test]
    fn contextless_zero_adopts_q() {
        let x = S::zero() + S::v(3);
        assert_eq!(x.q(), 3);
        assert_eq!(S::one() * S::v(3), S::v(3));
    }
}
