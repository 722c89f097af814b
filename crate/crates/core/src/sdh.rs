//! The semi-derived Hall algebra in its normal-form basis
//! `[C_A ⊕ C*_B] * [K_α] * [K*_β]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::context::HallCtx;
use crate::error::{HallError, Result};
use crate::lincomb::LinComb;
use crate::quiver::DimVec;
use crate::repfq::{IsoClass, Rep};
use crate::scalars::{qfact, rat_to_string};
use crate::z2cx::{Cx, CxElem};
use crate::Scalar;

/// `[C_A ⊕ C*_B] * [K_α] * [K*_β]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalBasisElt {
    pub a: IsoClass,
    pub b: IsoClass,
    pub alpha: DimVec,
    pub beta: DimVec,
}

pub type SDHElem = LinComb<NormalBasisElt, Scalar>;

/// Key of a memoized product `[C_A ⊕ C*_B] * [C_A' ⊕ C*_B']`.
pub type CPartKey = (IsoClass, IsoClass, IsoClass, IsoClass);

impl HallCtx {
    pub fn one(&self) -> Scalar {
        Scalar::one_in(self.q())
    }

    pub fn basis_elem(&self, a: IsoClass, b: IsoClass, alpha: DimVec, beta: DimVec) -> SDHElem {
        SDHElem::single(NormalBasisElt { a, b, alpha, beta }, self.one())
    }

    pub fn unit(&self) -> SDHElem {
        let z = DimVec::zero(self.n());
        self.basis_elem(self.zero_class(), self.zero_class(), z.clone(), z)
    }

    /// `[K_α] * [K*_β]`.
    pub fn k_elem(&self, alpha: DimVec, beta: DimVec) -> SDHElem {
        self.basis_elem(self.zero_class(), self.zero_class(), alpha, beta)
    }

    /// `[C_A ⊕ C*_B]`.
    pub fn c_elem(&self, a: IsoClass, b: IsoClass) -> SDHElem {
        let z = DimVec::zero(self.n());
        self.basis_elem(a, b, z.clone(), z)
    }

    /// Rewrite the class of an arbitrary complex in the normal-form basis.
    pub fn reduce(&self, m: &Cx) -> Result<SDHElem> {
        let h = self.homology(m)?;
        let hdiff = &h.h0.dimvec() - &h.h1.dimvec();
        let idiff = &h.im_d0 - &h.im_d1;
        let coeff = Scalar::v_pow(-self.quiver().euler(&hdiff, &idiff), self.q());
        let key = NormalBasisElt { a: h.h1, b: h.h0, alpha: h.im_d0, beta: h.im_d1 };
        Ok(SDHElem::single(key, coeff))
    }

    pub fn reduce_elem(&self, x: &CxElem) -> Result<SDHElem> {
        let mut out = SDHElem::new();
        for (c, s) in x.iter() {
            out.add_scaled(&self.reduce(&self.cx_representative(c)?)?, s);
        }
        Ok(out)
    }

    /// Twisted Hall product of two complexes computed from extension cocycles,
    /// each middle term rewritten in the normal-form basis.
    pub fn raw_hall_product(&self, l: &Cx, m: &Cx) -> Result<SDHElem> {
        let (mids, c0) = self.cx_extensions(l, m)?;
        let q = self.q();
        let weight = Scalar::v_pow(self.res_euler(l, m), q)
            * Scalar::rational(BigRational::new(1.into(), BigInt::from(q).pow(c0 as u32)), q);
        let mut out = SDHElem::new();
        for e in &mids {
            out.add_scaled(&self.reduce(e)?, &weight);
        }
        Ok(out)
    }

    /// `[C_A ⊕ C*_B] * [C_A' ⊕ C*_B']`, memoized.
    pub fn c_part_product(&self, key: &CPartKey) -> Result<std::sync::Arc<SDHElem>> {
        self.cpart_products.get_or_compute(key, || {
            let (a, b, a2, b2) = key;
            let l = self.c_sum_cx(a, b)?;
            let m = self.c_sum_cx(a2, b2)?;
            self.raw_hall_product(&l, &m)
        })
    }

    /// The complex `C_A ⊕ C*_B`.
    pub fn c_sum_cx(&self, a: &IsoClass, b: &IsoClass) -> Result<Cx> {
        Ok(self.cx_direct_sum(&Cx::c(&self.representative(a)?), &Cx::c_star(&self.representative(b)?)))
    }

    fn mul_basis(&self, x: &NormalBasisElt, y: &NormalBasisElt) -> Result<SDHElem> {
        let quiver = self.quiver();
        let ydiff = &y.a.dimvec() - &y.b.dimvec();
        let phase = quiver.sym(&x.alpha, &ydiff) - quiver.sym(&x.beta, &ydiff);
        let alpha = &x.alpha + &y.alpha;
        let beta = &x.beta + &y.beta;
        let prefactor = Scalar::v_pow(phase, self.q());
        let c = if y.a.is_zero() && y.b.is_zero() {
            self.c_elem(x.a.clone(), x.b.clone())
        } else if x.a.is_zero() && x.b.is_zero() {
            self.c_elem(y.a.clone(), y.b.clone())
        } else {
            (*self.c_part_product(&(x.a.clone(), x.b.clone(), y.a.clone(), y.b.clone()))?).clone()
        };
        Ok(c.into_terms()
            .map(|(k, s)| {
                let key = NormalBasisElt { alpha: &k.alpha + &alpha, beta: &k.beta + &beta, ..k };
                (key, s * &prefactor)
            })
            .collect())
    }

    pub fn sdh_mul(&self, x: &SDHElem, y: &SDHElem) -> Result<SDHElem> {
        let mut out = SDHElem::new();
        for (kx, sx) in x.iter() {
            for (ky, sy) in y.iter() {
                let c = sx.clone() * sy;
                out.add_scaled(&self.mul_basis(kx, ky)?, &c);
            }
        }
        Ok(out)
    }

    pub fn sdh_product(&self, factors: &[SDHElem]) -> Result<SDHElem> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.sdh_mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Inverse of `c · [K_α] * [K*_β]`.
    pub fn sdh_inverse(&self, x: &SDHElem) -> Result<SDHElem> {
        let mut terms = x.iter();
        match (terms.next(), terms.next()) {
            (Some((k, c)), None) if k.a.is_zero() && k.b.is_zero() => {
                let key = NormalBasisElt { a: k.a.clone(), b: k.b.clone(), alpha: -&k.alpha, beta: -&k.beta };
                Ok(SDHElem::single(key, c.inv()?))
            }
            _ => Err(HallError::Unsupported("only scalar multiples of K-monomials are inverted".into())),
        }
    }

    /// `x^e` for `e ≥ 0`, or an inverse power of a K-monomial.
    pub fn sdh_pow(&self, x: &SDHElem, e: i64) -> Result<SDHElem> {
        let base = if e < 0 { self.sdh_inverse(x)? } else { x.clone() };
        let mut acc = self.unit();
        for _ in 0..e.unsigned_abs() {
            acc = self.sdh_mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// `[[X]] = [C_X] / |Aut X|` (or with `C*_X`).
    pub fn sdh_bracket_class(&self, x: &IsoClass, starred: bool) -> Result<SDHElem> {
        let aut = self.aut_size(x)?;
        let coeff = Scalar::rational(BigRational::new(1.into(), BigInt::from(aut)), self.q());
        let z = self.zero_class();
        let (a, b) = if starred { (z, x.clone()) } else { (x.clone(), z) };
        Ok(self.c_elem(a, b).scale(&coeff))
    }

    pub fn class_of_rep(&self, x: &Rep) -> Result<IsoClass> {
        self.classify(x)
    }

    /// `v^{−r(r−1)/2} [C_{S_ℓ^{⊕r}}] / [r]!`, or the starred version.
    pub fn divided_power_cs(&self, l: usize, r: u32, starred: bool) -> Result<SDHElem> {
        if !self.cartan().is_real(l) {
            return Err(HallError::NotReal(self.quiver().vertex_name(l).to_string()));
        }
        let q = self.q();
        let class = self.classify(&self.semisimple(l, r as usize))?;
        let z = self.zero_class();
        let (a, b) = if starred { (z, class) } else { (class, z) };
        let coeff = Scalar::v_pow(-(r as i64) * (r as i64 - 1) / 2, q) * qfact(r, q).inv()?;
        Ok(self.c_elem(a, b).scale(&coeff))
    }

    /// Quotient by the ideal identifying every acyclic `K_M` with the K-monomial of
    /// its dimension vector. Normal forms already store K-parts as dimension vectors,
    /// so this rewrites arbitrary complex classes via [`HallCtx::reduce`].
    pub fn ideal_mode_qgkm(&self, elem: &[(Cx, Scalar)]) -> Result<SDHElem> {
        let mut out = SDHElem::new();
        for (m, s) in elem {
            out.add_scaled(&self.reduce(m)?, s);
        }
        Ok(out)
    }

    pub fn sdh_to_json(&self, x: &SDHElem) -> serde_json::Value {
        let rows: Vec<TermJson> = x
            .iter()
            .map(|(k, s)| TermJson {
                a: self.class_id(&k.a),
                b: self.class_id(&k.b),
                alpha: k.alpha.0.clone(),
                beta: k.beta.0.clone(),
                coeff: s.clone(),
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    pub fn sdh_from_json(&self, v: &serde_json::Value) -> Result<SDHElem> {
        let rows: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| HallError::Parse(format!("element: {e}")))?;
        let mut out = SDHElem::new();
        for r in rows {
            if r.alpha.len() != self.n() || r.beta.len() != self.n() {
                return Err(HallError::Parse("exponent length does not match the quiver".into()));
            }
            if !r.coeff.is_zero() && r.coeff.q() != self.q() && !r.coeff.is_rational() {
                return Err(HallError::Parse("coefficient uses a different q".into()));
            }
            let key = NormalBasisElt {
                a: self.parse_class_id(&r.a)?,
                b: self.parse_class_id(&r.b)?,
                alpha: DimVec(r.alpha),
                beta: DimVec(r.beta),
            };
            let coeff = Scalar::new(r.coeff.a().clone(), r.coeff.b().clone(), self.q());
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    alpha: Vec<i64>,
    beta: Vec<i64>,
    coeff: Scalar,
}

/// Human-readable rendering used in reports.
pub fn describe(ctx: &HallCtx, x: &SDHElem) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .iter()
        .map(|(k, s)| {
            format!(
                "({}+{}√{})·[C_{} ⊕ C*_{}]K{}K*{}",
                rat_to_string(s.a()),
                rat_to_string(s.b()),
                ctx.q(),
                ctx.class_id(&k.a),
                ctx.class_id(&k.b),
                k.alpha,
                k.beta
            )
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Mode;
    use crate::quiver::examples;
    use crate::scalars::qint;

    fn ctx(q: crate::Quiver, p: u32) -> HallCtx {
        HallCtx::new(q, p, Mode::Nilpotent).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let c = ctx(examples::a2(), 2);
        let s = c.simple(0);
        let sc = c.classify(&s).unwrap();
        let z = c.zero_class();
        let sum = c.cx_direct_sum(&Cx::c(&s), &Cx::c_star(&c.simple(1)));
        let b = c.classify(&c.simple(1)).unwrap();
        assert_eq!(c.reduce(&sum).unwrap(), c.c_elem(sc.clone(), b));
        assert_eq!(c.reduce(&Cx::k(&s)).unwrap(), c.k_elem(DimVec(vec![1, 0]), DimVec::zero(2)));
        let m = c.cx_direct_sum(&Cx::k(&s), &Cx::c(&s));
        let want = c.basis_elem(sc, z, DimVec(vec![1, 0]), DimVec::zero(2)).scale(&Scalar::v(2));
        assert_eq!(c.reduce(&m).unwrap(), want);
    }

    #[test]
    fn k_monomials_commute_and_invert() {
        let c = ctx(examples::kronecker(), 3);
        let ka = c.k_elem(DimVec(vec![1, 0]), DimVec(vec![0, 2]));
        let kb = c.k_elem(DimVec(vec![-1, 1]), DimVec(vec![1, 0]));
        let ab = c.sdh_mul(&ka, &kb).unwrap();
        assert_eq!(ab, c.sdh_mul(&kb, &ka).unwrap());
        assert_eq!(ab, c.k_elem(DimVec(vec![0, 1]), DimVec(vec![1, 2])));
        assert_eq!(c.sdh_mul(&ka, &c.sdh_inverse(&ka).unwrap()).unwrap(), c.unit());
        let x = c.c_elem(c.classify(&c.simple(0)).unwrap(), c.zero_class());
        assert_eq!(c.sdh_mul(&c.unit(), &x).unwrap(), x);
    }

    #[test]
    fn k_commutation_from_raw_hall_products() {
        for p in [2, 3] {
            let c = ctx(examples::a2(), p);
            for i in 0..2 {
                for j in 0..2 {
                    let (si, sj) = (c.simple(i), c.simple(j));
                    let phase = c.quiver().sym(&DimVec::unit(2, i), &DimVec::unit(2, j));
                    for (m, sign) in [(Cx::c(&sj), 1), (Cx::c_star(&sj), -1)] {
                        let left = c.raw_hall_product(&Cx::k(&si), &m).unwrap();
                        let right = c.raw_hall_product(&m, &Cx::k(&si)).unwrap();
                        assert_eq!(left, right.scale(&Scalar::v_pow(sign * phase, p)));
                        let left = c.raw_hall_product(&Cx::k_star(&si), &m).unwrap();
                        let right = c.raw_hall_product(&m, &Cx::k_star(&si)).unwrap();
                        assert_eq!(left, right.scale(&Scalar::v_pow(-sign * phase, p)));
                    }
                }
            }
        }
    }

    #[test]
    fn divided_square() {
        let p = 3;
        let c = ctx(examples::a2(), p);
        let cs = c.divided_power_cs(0, 1, false).unwrap();
        let sq = c.sdh_mul(&cs, &cs).unwrap();
        let want = c.divided_power_cs(0, 2, false).unwrap().scale(&qint(2, p));
        assert_eq!(sq, want);
        let cube = c.sdh_mul(&sq, &cs).unwrap();
        let want = c.divided_power_cs(0, 3, false).unwrap().scale(&qfact(3, p));
        assert_eq!(cube, want);
        assert_eq!(c.divided_power_cs(0, 0, true).unwrap(), c.unit());
    }

    #[test]
    fn associativity_on_generators() {
        let c = ctx(examples::loop_arrow(), 2);
        let gens: Vec<SDHElem> = vec![
            c.c_elem(c.classify(&c.simple(0)).unwrap(), c.zero_class()),
            c.c_elem(c.zero_class(), c.classify(&c.simple(1)).unwrap()),
            c.c_elem(c.classify(&c.simple(1)).unwrap(), c.zero_class()),
            c.k_elem(DimVec(vec![1, -1]), DimVec(vec![0, 1])),
        ];
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let l = c.sdh_mul(&c.sdh_mul(x, y).unwrap(), z).unwrap();
                    let r = c.sdh_mul(x, &c.sdh_mul(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(examples::a2(), 2);
        let x = c.c_elem(c.classify(&c.simple(0)).unwrap(), c.zero_class());
        let y = c.sdh_mul(&x, &c.c_elem(c.zero_class(), c.classify(&c.simple(1)).unwrap())).unwrap();
        assert_eq!(c.sdh_from_json(&c.sdh_to_json(&y)).unwrap(), y);
    }
}
