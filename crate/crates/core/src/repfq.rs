//! Representations over `F_q`: isomorphism classes, Hom/Ext/Aut, Hall numbers
//! and the module-level Hall product.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::{HallCtx, Mode};
use crate::error::{HallError, Result};
use crate::ff::Mat;
use crate::lincomb::LinComb;
use crate::linear::Obj;
use crate::quiver::DimVec;
use crate::Scalar;

/// A representation: one space per vertex and one matrix per arrow.
pub type Rep = Obj;

/// Linear combination of isomorphism classes of representations.
pub type ModElem = LinComb<IsoClass, Scalar>;

/// Isomorphism class of a representation: its dimension vector and the index of
/// its orbit in the table for that dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClass {
    pub dims: Vec<usize>,
    pub index: u32,
}

impl IsoClass {
    pub fn zero(n: usize) -> Self {
        Self { dims: vec![0; n], index: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dimvec(&self) -> DimVec {
        DimVec::from_dims(&self.dims)
    }
}

impl HallCtx {
    /// Stable id `<quiver-hash>:<dims>:<index>`.
    pub fn class_id(&self, c: &IsoClass) -> String {
        let d: Vec<String> = c.dims.iter().map(|x| x.to_string()).collect();
        format!("{}:{}:{}", self.quiver_hash(), d.join(","), c.index)
    }

    pub fn parse_class_id(&self, id: &str) -> Result<IsoClass> {
        let bad = |why: &str| HallError::InvalidClass(format!("'{id}': {why}"));
        let mut parts = id.split(':');
        let (Some(hash), Some(dims), Some(index), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad("expected hash:dims:index"));
        };
        if hash != self.quiver_hash() {
            return Err(bad("belongs to a different quiver"));
        }
        let dims: Vec<usize> = if dims.is_empty() {
            vec![]
        } else {
            dims.split(',').map(|d| d.parse().map_err(|_| bad("bad dimension"))).collect::<Result<_>>()?
        };
        if dims.len() != self.n() {
            return Err(bad("wrong number of vertices"));
        }
        let index: u32 = index.parse().map_err(|_| bad("bad index"))?;
        let table = self.rep_table(&dims)?;
        if index as usize >= table.len() {
            return Err(bad("index out of range"));
        }
        Ok(IsoClass { dims, index })
    }

    pub fn zero_class(&self) -> IsoClass {
        IsoClass::zero(self.n())
    }

    pub fn zero_rep(&self, dims: &[usize]) -> Rep {
        self.rep_shape().zero_obj(dims)
    }

    /// `S_i^{⊕r}` with all loops acting by zero.
    pub fn semisimple(&self, i: usize, r: usize) -> Rep {
        let mut dims = vec![0; self.n()];
        dims[i] = r;
        self.zero_rep(&dims)
    }

    pub fn simple(&self, i: usize) -> Rep {
        self.semisimple(i, 1)
    }

    /// One-dimensional representation at `i` whose loops act by the scalars `params`
    /// (all loops at `i`, in arrow order).
    pub fn simple_with_params(&self, i: usize, params: &[u8]) -> Result<Rep> {
        let loops: Vec<usize> = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.src == i && a.tgt == i)
            .map(|(k, _)| k)
            .collect();
        if loops.len() != params.len() {
            return Err(HallError::InvalidCharge(format!(
                "vertex has {} loops but {} parameters were given",
                loops.len(),
                params.len()
            )));
        }
        let mut rep = self.simple(i);
        for (&k, &x) in loops.iter().zip(params) {
            if x as u32 >= self.q() {
                return Err(HallError::InvalidCharge(format!("parameter {x} is not in F_{}", self.q())));
            }
            rep.mats[k] = Mat::from_data(1, 1, vec![x]);
        }
        if self.mode() == Mode::Nilpotent && !self.rep_shape().is_member(&rep, self.field()) {
            return Err(HallError::InvalidCharge("non-nilpotent simple in nilpotent mode".into()));
        }
        Ok(rep)
    }

    pub fn enumerate_reps(&self, dims: &[usize]) -> Result<Vec<IsoClass>> {
        let t = self.rep_table(dims)?;
        Ok((0..t.len() as u32).map(|index| IsoClass { dims: dims.to_vec(), index }).collect())
    }

    pub fn classify(&self, rep: &Rep) -> Result<IsoClass> {
        let t = self.rep_table(&rep.dims)?;
        let code = self.rep_shape().encode(rep, self.q());
        let index = t
            .class_of_code(code)
            .ok_or_else(|| HallError::InvalidClass("object is not in the category".into()))?;
        Ok(IsoClass { dims: rep.dims.clone(), index })
    }

    pub fn representative(&self, c: &IsoClass) -> Result<Rep> {
        let t = self.rep_table(&c.dims)?;
        Ok(t.representative(self.rep_shape(), c.index, self.field()))
    }

    /// `|Aut|` by orbit-stabilizer.
    pub fn aut_size(&self, c: &IsoClass) -> Result<u128> {
        Ok(self.rep_table(&c.dims)?.aut_size(c.index))
    }

    pub fn hom_dim(&self, x: &Rep, y: &Rep) -> usize {
        self.rep_shape().hom_dim(x, y, self.field())
    }

    /// `dim Hom − ⟨dim x, dim y⟩`, valid because path algebras are hereditary.
    pub fn ext1_dim(&self, x: &Rep, y: &Rep) -> Result<usize> {
        let e = self.quiver().euler(&DimVec::from_dims(&x.dims), &DimVec::from_dims(&y.dims));
        let d = self.hom_dim(x, y) as i64 - e;
        usize::try_from(d).map_err(|_| {
            HallError::Internal(format!("negative Ext¹ dimension {d}: Euler form disagrees with Hom"))
        })
    }

    /// `dim Ext¹` from extension cocycles modulo coboundaries.
    pub fn ext1_dim_by_cocycles(&self, x: &Rep, y: &Rep) -> usize {
        self.rep_shape().ext1_dim(x, y, self.field())
    }

    pub fn direct_sum(&self, a: &Rep, b: &Rep) -> Rep {
        self.rep_shape().direct_sum(a, b)
    }

    /// For every subobject `L ⊆ y` of dimension `sub_dims`, the pair
    /// `([y/L], [L])`, counted.
    pub fn subobject_profile(&self, y: &Rep, sub_dims: &[usize]) -> Result<BTreeMap<(IsoClass, IsoClass), u64>> {
        let shape = self.rep_shape();
        let f = self.field();
        let mut out = BTreeMap::new();
        for u in shape.subobjects(y, sub_dims, f) {
            let sub = shape.subquotient(y, &u, &shape.zero_spaces(y), f);
            let quot = shape.subquotient(y, &shape.full_spaces(y), &u, f);
            *out.entry((self.classify(&quot)?, self.classify(&sub)?)).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// `F^Y_{XZ}`: subobjects of `Y` isomorphic to `Z` with quotient isomorphic to `X`.
    pub fn hall_number(&self, x: &IsoClass, z: &IsoClass, y: &IsoClass) -> Result<u64> {
        let sum: Vec<usize> = x.dims.iter().zip(&z.dims).map(|(a, b)| a + b).collect();
        if sum != y.dims {
            return Ok(0);
        }
        let profile = self.subobject_profile(&self.representative(y)?, &z.dims)?;
        Ok(profile.get(&(x.clone(), z.clone())).copied().unwrap_or(0))
    }

    /// `Σ_Y |Ext¹(x,z)_Y| / |Hom(x,z)| [Y]`, counting cocycles by middle term.
    pub fn extension_ratios(&self, x: &Rep, z: &Rep) -> Result<ModElem> {
        let shape = self.rep_shape();
        let f = self.field();
        let basis = shape.cocycle_space(x, z, f);
        let c0 = shape.cochain_dim(x, z);
        let mut counts: BTreeMap<IsoClass, u64> = BTreeMap::new();
        for xi in span_vectors(&basis, f.q(), self.bounds().max_tuples)? {
            let mid = shape.extension(x, z, &xi);
            *counts.entry(self.classify(&mid)?).or_insert(0) += 1;
        }
        let denom = BigInt::from(self.q()).pow(c0 as u32);
        Ok(counts
            .into_iter()
            .map(|(c, n)| (c, Scalar::rational(BigRational::new(n.into(), denom.clone()), self.q())))
            .collect())
    }

    /// Hall product of module classes via Hall numbers and automorphism orders;
    /// the twisted version multiplies each pair by `v^{⟨dim X, dim Z⟩}`.
    pub fn module_hall_product(&self, x: &ModElem, z: &ModElem, twisted: bool) -> Result<ModElem> {
        let q = self.q();
        let mut out = ModElem::new();
        for (xc, xs) in x.iter() {
            for (zc, zs) in z.iter() {
                let dims: Vec<usize> = xc.dims.iter().zip(&zc.dims).map(|(a, b)| a + b).collect();
                let ax = self.aut_size(xc)?;
                let az = self.aut_size(zc)?;
                let twist = if twisted {
                    Scalar::v_pow(self.quiver().euler(&xc.dimvec(), &zc.dimvec()), q)
                } else {
                    Scalar::one_in(q)
                };
                let pre = xs.clone() * zs * &twist;
                for y in self.enumerate_reps(&dims)? {
                    let fnum = self.hall_number(xc, zc, &y)?;
                    if fnum == 0 {
                        continue;
                    }
                    let ay = self.aut_size(&y)?;
                    let ratio = BigRational::new(
                        BigInt::from(fnum) * BigInt::from(ax) * BigInt::from(az),
                        BigInt::from(ay),
                    );
                    out.add_term(y, pre.clone() * &Scalar::rational(ratio, q));
                }
            }
        }
        Ok(out)
    }

    pub fn class_elem(&self, c: IsoClass) -> ModElem {
        ModElem::single(c, Scalar::one_in(self.q()))
    }
}

/// Every vector in the column span of `basis`, guarded by `limit`.
pub(crate) fn span_vectors(basis: &Mat, q: u32, limit: u64) -> Result<Vec<Vec<u8>>> {
    let k = basis.cols();
    let total = (q as u64)
        .checked_pow(k as u32)
        .filter(|&t| t <= limit)
        .ok_or_else(|| HallError::Resource(format!("{q}^{k} vectors exceed the bound {limit}")))?;
    let n = basis.rows();
    let cols: Vec<Vec<u8>> = (0..k).map(|j| (0..n).map(|i| basis.get(i, j)).collect()).collect();
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut v = vec![0u8; n];
        let mut c = code;
        for col in &cols {
            let coef = (c % q as u64) as u32;
            c /= q as u64;
            if coef != 0 {
                for (x, &b) in v.iter_mut().zip(col) {
                    *x = ((*x as u32 + coef * b as u32) % q) as u8;
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Automorphism count by enumerating `End(x)` and testing invertibility.
pub fn aut_size_by_enumeration(ctx: &HallCtx, x: &Rep) -> Result<u128> {
    let shape = ctx.rep_shape();
    let f = ctx.field();
    let basis = shape.hom_space(x, x, f);
    let mut count = 0u128;
    for v in span_vectors(&basis, f.q(), ctx.bounds().max_tuples)? {
        let phi = shape.unflatten_morphism(x, x, &v);
        if phi.iter().all(|m| m.is_invertible(f)) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples;
    use crate::scalars::gl_size;

    fn ctx(q: crate::Quiver, p: u32) -> HallCtx {
        HallCtx::new(q, p, Mode::Nilpotent).unwrap()
    }

    #[test]
    fn simple_classes() {
        let c = ctx(examples::a2(), 2);
        assert_eq!(c.enumerate_reps(&[1, 0]).unwrap().len(), 1);
        let j = ctx(examples::jordan(), 3);
        assert_eq!(j.enumerate_reps(&[2]).unwrap().len(), 2);
        let full = HallCtx::new(examples::jordan(), 2, Mode::Full).unwrap();
        assert_eq!(full.enumerate_reps(&[1]).unwrap().len(), 2);
    }

    #[test]
    fn hom_ext_aut() {
        let c = ctx(examples::a2(), 2);
        let (s1, s2) = (c.simple(0), c.simple(1));
        assert_eq!(c.hom_dim(&s1, &s1), 1);
        assert_eq!(c.hom_dim(&s1, &s2), 0);
        assert_eq!(c.ext1_dim(&s1, &s2).unwrap(), 1);
        for p in [2u32, 3] {
            let c = ctx(examples::a2(), p);
            for r in 0..=2 {
                let x = c.semisimple(0, r);
                let want = gl_size(r as u32, p);
                assert_eq!(BigInt::from(aut_size_by_enumeration(&c, &x).unwrap()), want);
                assert_eq!(BigInt::from(c.aut_size(&c.classify(&x).unwrap()).unwrap()), want);
            }
        }
    }

    #[test]
    fn hall_numbers() {
        let p = 3;
        let c = ctx(examples::a2(), p);
        let s = c.classify(&c.simple(0)).unwrap();
        let ss = c.classify(&c.semisimple(0, 2)).unwrap();
        assert_eq!(c.hall_number(&s, &s, &ss).unwrap(), p as u64 + 1);
        let y = c.classify(&c.semisimple(0, 2)).unwrap();
        assert_eq!(c.hall_number(&c.zero_class(), &y, &y).unwrap(), 1);
        let j = ctx(examples::jordan(), 2);
        let block = Rep { dims: vec![2], mats: vec![Mat::from_rows(2, 2, &[vec![0, 1], vec![0, 0]])] };
        let b = j.classify(&block).unwrap();
        let s = j.classify(&j.simple(0)).unwrap();
        assert_eq!(j.hall_number(&s, &s, &b).unwrap(), 1);
    }

    #[test]
    fn products() {
        let p = 2;
        let c = ctx(examples::a2(), p);
        let s = c.class_elem(c.classify(&c.simple(0)).unwrap());
        let zero = c.class_elem(c.zero_class());
        assert_eq!(c.module_hall_product(&zero, &s, false).unwrap(), s);
        let ss = c.classify(&c.semisimple(0, 2)).unwrap();
        let prod = c.module_hall_product(&s, &s, false).unwrap();
        // F = q + 1, |Aut S|² = (q−1)², |Aut S⊕S| = |GL_2|
        assert_eq!(prod, ModElem::single(ss, Scalar::frac(1, p as i64, p)));
        let j = ctx(examples::jordan(), p);
        let s = j.class_elem(j.classify(&j.simple(0)).unwrap());
        let prod = j.module_hall_product(&s, &s, false).unwrap();
        assert_eq!(prod.len(), 2);
        let direct = j.extension_ratios(&j.simple(0), &j.simple(0)).unwrap();
        assert_eq!(prod, direct);
    }

    #[test]
    fn ids_round_trip() {
        let c = ctx(examples::kronecker(), 2);
        for cl in c.enumerate_reps(&[1, 1]).unwrap() {
            assert_eq!(c.parse_class_id(&c.class_id(&cl)).unwrap(), cl);
        }
        assert!(c.parse_class_id("nope:1,1:0").is_err());
    }
}
