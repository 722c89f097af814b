//! Quantum integers, factorials, binomials and the finite-field counts built from them,
//! all evaluated at `v = √q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::quad::{Coeff, QuadExt};

/// `[r] = v^{r-1} + v^{r-3} + … + v^{1-r}`; negative `r` gives `-[−r]`.
pub fn qint<T: Coeff>(r: i64, q: u32) -> QuadExt<T> {
    if r < 0 {
        return -qint(-r, q);
    }
    let mut acc = QuadExt::zero_in(q);
    for k in 0..r {
        acc += QuadExt::v_pow(r - 1 - 2 * k, q);
    }
    acc
}

/// `[r]! = [1][2]…[r]`.
pub fn qfact<T: Coeff>(r: u32, q: u32) -> QuadExt<T> {
    (1..=r as i64).fold(QuadExt::one_in(q), |acc, i| acc * qint(i, q))
}

/// `[m choose r] = [m][m−1]…[m−r+1] / [r]!`.
pub fn qbinom<T: Coeff>(m: i64, r: u32, q: u32) -> QuadExt<T> {
    let num = (0..r as i64).fold(QuadExt::one_in(q), |acc, k| acc * qint(m - k, q));
    num / qfact(r, q)
}

/// `φ_r(t) = (1−t)(1−t²)…(1−t^r)` at `t = v² = q`.
pub fn phi<T: Coeff>(r: u32, q: u32) -> QuadExt<T> {
    let one = QuadExt::<T>::one_in(q);
    (1..=r as i64).fold(one.clone(), |acc, k| acc * (one.clone() - QuadExt::v_pow(2 * k, q)))
}

/// `τ_{ir} = 1/φ_r(v²)`; independent of the vertex.
pub fn tau<T: Coeff>(r: u32, q: u32) -> QuadExt<T> {
    QuadExt::one_in(q) / phi(r, q)
}

/// Number of `s`-dimensional subspaces of `F_q^u`, as `v^{(u−s)s}[u choose s]`.
pub fn grassmannian_size<T: Coeff>(s: u32, u: u32, q: u32) -> QuadExt<T> {
    if s > u {
        return QuadExt::zero_in(q);
    }
    QuadExt::v_pow(((u - s) * s) as i64, q) * qbinom(u as i64, s, q)
}

/// `|GL_r(F_q)| = (q^r−1)(q^r−q)…(q^r−q^{r−1})`.
pub fn gl_size(r: u32, q: u32) -> BigInt {
    let qr = BigInt::from(q).pow(r);
    let mut acc = BigInt::one();
    let mut qk = BigInt::one();
    for _ in 0..r {
        acc *= &qr - &qk;
        qk *= q;
    }
    if acc.is_zero() {
        BigInt::one()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(n: i64, q: u32) -> Scalar {
        Scalar::from_int(n, q)
    }

    fn rat(n: i64, d: i64, q: u32) -> Scalar {
        Scalar::rational(BigRational::new(n.into(), d.into()), q)
    }

    /// Definition by quotient, used as an independent route for `[r]`.
    fn qint_by_quotient(r: i64, q: u32) -> Scalar {
        let v = Scalar::v(q);
        let vi = v.inv().unwrap();
        (v.pow(r).unwrap() - vi.pow(r).unwrap()) / (v - vi)
    }

    #[test]
    fn qint_matches_quotient_definition() {
        for q in [2, 3, 5] {
            for r in -4..=8 {
                assert_eq!(qint::<BigRational>(r, q), qint_by_quotient(r, q));
            }
        }
    }

    #[test]
    fn small_values() {
        let q = 3;
        assert_eq!(qint::<BigRational>(2, q), Scalar::v(q) + Scalar::v(q).inv().unwrap());
        assert_eq!(qbinom::<BigRational>(7, 0, q), int(1, q));
        assert_eq!(qbinom::<BigRational>(2, 1, q), qint(2, q));
        assert_eq!(qbinom::<BigRational>(2, 5, q), int(0, q));
        assert_eq!(phi::<BigRational>(0, q), int(1, q));
    }

    #[test]
    fn phi_and_tau_at_two() {
        // φ_1(2) = 1 − 2, φ_2(2) = (1 − 2)(1 − 4)
        assert_eq!(phi::<BigRational>(1, 2), int(-1, 2));
        assert_eq!(phi::<BigRational>(2, 2), int(3, 2));
        assert_eq!(tau::<BigRational>(1, 2), int(-1, 2));
        assert_eq!(tau::<BigRational>(2, 2), rat(1, 3, 2));
    }

    #[test]
    fn gl_sizes() {
        assert_eq!(gl_size(0, 2), BigInt::from(1));
        assert_eq!(gl_size(1, 3), BigInt::from(2));
        assert_eq!(gl_size(2, 2), BigInt::from(6));
        assert_eq!(gl_size(2, 3), BigInt::from(48));
        assert_eq!(gl_size(3, 2), BigInt::from(168));
    }

    #[test]
    fn grassmannians() {
        assert_eq!(grassmannian_size::<BigRational>(0, 4, 2), int(1, 2));
        assert_eq!(grassmannian_size::<BigRational>(1, 2, 2), int(3, 2));
        assert_eq!(grassmannian_size::<BigRational>(1, 3, 3), int(13, 3));
        assert_eq!(grassmannian_size::<BigRational>(3, 2, 3), int(0, 3));
    }

    #[test]
    fn qbinom_symmetry() {
        for q in [2, 3] {
            for m in 0..=8i64 {
                for r in 0..=m {
                    assert_eq!(
                        qbinom::<BigRational>(m, r as u32, q),
                        qbinom::<BigRational>(m, (m - r) as u32, q)
                    );
                }
            }
        }
    }
}
