//! Exact arithmetic in `Q(√q)` and the q-combinatorics evaluated at `v = √q`.

mod qcomb;
mod quad;

pub use qcomb::{gl_size, grassmannian_size, phi, qbinom, qfact, qint, tau};
pub use quad::{Coeff, QuadExt};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::HallError;
use crate::Scalar;

/// Primes accepted as the field size.
pub const SUPPORTED_Q: [u32; 3] = [2, 3, 5];

pub fn check_q(q: u32) -> Result<u32, HallError> {
    if SUPPORTED_Q.contains(&q) {
        Ok(q)
    } else {
        Err(HallError::InvalidQ(q))
    }
}

pub(crate) fn rat_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub(crate) fn rat_from_str(s: &str) -> Result<BigRational, HallError> {
    let bad = || HallError::Parse(format!("bad rational '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Scalar {
    /// Rational constant `n/d` in `Q(√q)`.
    pub fn frac(n: i64, d: i64, q: u32) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()), q)
    }

    pub fn from_bigint(n: BigInt, q: u32) -> Self {
        Self::rational(BigRational::from_integer(n), q)
    }

    pub fn is_one(&self) -> bool {
        self.a().is_one() && self.b().is_zero()
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    a: String,
    b: String,
    q: u32,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson { a: rat_to_string(self.a()), b: rat_to_string(self.b()), q: self.q() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(d)?;
        let a = rat_from_str(&raw.a).map_err(D::Error::custom)?;
        let b = rat_from_str(&raw.b).map_err(D::Error::custom)?;
        if raw.q == 0 && !b.is_zero() {
            return Err(D::Error::custom("irrational part without q"));
        }
        Ok(Scalar::new(a, b, raw.q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_shape() {
        let x = Scalar::frac(-1, 3, 2) + Scalar::v(2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-1/3","b":"1/1","q":2}"#);
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(check_q(4).is_err());
        assert!(check_q(9).is_err());
        assert_eq!(check_q(5).unwrap(), 5);
    }

    fn arb_scalar(q: u32) -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(move |(a, da, b, db)| {
            Scalar::frac(a, da, q) + Scalar::frac(b, db, q) * Scalar::v(q)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(3), y in arb_scalar(3), z in arb_scalar(3)) {
            prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            if !x.is_zero() {
                prop_assert!((x.clone() * x.inv().unwrap()).is_one());
            }
            let s = serde_json::to_string(&y).unwrap();
            prop_assert_eq!(serde_json::from_str::<Scalar>(&s).unwrap(), y);
        }
    }
}
