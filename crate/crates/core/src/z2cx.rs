//! Z/2-graded complexes of representations: stalk complexes, homology, Hom/Ext,
//! Hall numbers and resolutions by complexes with components in a torsion class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::context::HallCtx;
use crate::error::{HallError, Result};
use crate::ff::{Fq, Mat};
use crate::lincomb::LinComb;
use crate::linear::Obj;
use crate::quiver::DimVec;
use crate::repfq::{span_vectors, IsoClass, Rep};
use crate::Scalar;

/// `M⁰ ⇄ M¹` with `d¹d⁰ = 0` and `d⁰d¹ = 0`; `d⁰`, `d¹` are given per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cx {
    pub m0: Rep,
    pub m1: Rep,
    pub d0: Vec<Mat>,
    pub d1: Vec<Mat>,
}

/// Isomorphism class of a complex; `dims` lists degree 0 then degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CxIsoClass {
    pub dims: Vec<usize>,
    pub index: u32,
}

pub type CxElem = LinComb<CxIsoClass, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub h0: IsoClass,
    pub h1: IsoClass,
    pub im_d0: DimVec,
    pub im_d1: DimVec,
}

fn zero_rep_like(x: &Rep) -> Rep {
    Rep { dims: vec![0; x.dims.len()], mats: x.mats.iter().map(|_| Mat::zeros(0, 0)).collect() }
}

fn identities(x: &Rep) -> Vec<Mat> {
    x.dims.iter().map(|&d| Mat::identity(d)).collect()
}

fn zeros_between(src: &Rep, tgt: &Rep) -> Vec<Mat> {
    src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Mat::zeros(t, s)).collect()
}

impl Cx {
    fn from_parts(m0: Rep, m1: Rep, d0: Vec<Mat>, d1: Vec<Mat>) -> Self {
        Self { m0, m1, d0, d1 }
    }

    /// `K_X = (X --id--> X, d¹ = 0)`, acyclic.
    pub fn k(x: &Rep) -> Self {
        Self::from_parts(x.clone(), x.clone(), identities(x), zeros_between(x, x))
    }

    /// `K*_X = (X <--id-- X, d⁰ = 0)`, acyclic.
    pub fn k_star(x: &Rep) -> Self {
        Self::from_parts(x.clone(), x.clone(), zeros_between(x, x), identities(x))
    }

    /// `X` in degree 1.
    pub fn c(x: &Rep) -> Self {
        let z = zero_rep_like(x);
        Self::from_parts(z.clone(), x.clone(), zeros_between(&z, x), zeros_between(x, &z))
    }

    /// `X` in degree 0.
    pub fn c_star(x: &Rep) -> Self {
        let z = zero_rep_like(x);
        Self::from_parts(x.clone(), z.clone(), zeros_between(x, &z), zeros_between(&z, x))
    }

    pub fn zero(n: usize, arrows: usize) -> Self {
        let z = Rep { dims: vec![0; n], mats: vec![Mat::zeros(0, 0); arrows] };
        Self::c(&z)
    }

    /// Swap the degrees and negate both differentials.
    pub fn shift(&self, f: Fq) -> Self {
        Self::from_parts(
            self.m1.clone(),
            self.m0.clone(),
            self.d1.iter().map(|m| m.neg(f)).collect(),
            self.d0.iter().map(|m| m.neg(f)).collect(),
        )
    }

    pub fn to_obj(&self) -> Obj {
        let mut dims = self.m0.dims.clone();
        dims.extend(&self.m1.dims);
        let mut mats = self.m0.mats.clone();
        mats.extend(self.m1.mats.iter().cloned());
        mats.extend(self.d0.iter().cloned());
        mats.extend(self.d1.iter().cloned());
        Obj { dims, mats }
    }

    /// Inverse of [`Cx::to_obj`] for a quiver with `n` vertices and `arrows` arrows.
    pub fn from_obj(obj: &Obj, n: usize, arrows: usize) -> Self {
        let m0 = Rep { dims: obj.dims[..n].to_vec(), mats: obj.mats[..arrows].to_vec() };
        let m1 = Rep { dims: obj.dims[n..].to_vec(), mats: obj.mats[arrows..2 * arrows].to_vec() };
        let d0 = obj.mats[2 * arrows..2 * arrows + n].to_vec();
        let d1 = obj.mats[2 * arrows + n..].to_vec();
        Self { m0, m1, d0, d1 }
    }

    pub fn res_dims(&self) -> (DimVec, DimVec) {
        (DimVec::from_dims(&self.m0.dims), DimVec::from_dims(&self.m1.dims))
    }

    pub fn total_dim(&self) -> usize {
        self.m0.total_dim() + self.m1.total_dim()
    }
}

/// Which torsion class the components of a resolution must lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `ℓ` is a sink; components satisfy `Hom(X, S_ℓ) = 0`; resolutions are `0 → M → X → T → 0`.
    Sink(usize),
    /// `ℓ` is a source; components satisfy `Hom(S_ℓ, X) = 0`; resolutions are `0 → T → X → M → 0`.
    Source(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub x: Cx,
    /// The acyclic complex (cokernel for a sink, kernel for a source).
    pub t: Cx,
}

impl HallCtx {
    pub fn arrow_count(&self) -> usize {
        self.quiver().arrows().len()
    }

    pub fn cx_from_obj(&self, obj: &Obj) -> Cx {
        Cx::from_obj(obj, self.n(), self.arrow_count())
    }

    pub fn zero_cx(&self) -> Cx {
        Cx::zero(self.n(), self.arrow_count())
    }

    pub fn cx_direct_sum(&self, a: &Cx, b: &Cx) -> Cx {
        self.cx_from_obj(&self.cx_shape().direct_sum(&a.to_obj(), &b.to_obj()))
    }

    pub fn is_valid_cx(&self, m: &Cx) -> bool {
        self.cx_shape().is_member(&m.to_obj(), self.field())
    }

    /// Homology representations `(H⁰, H¹)` with the image dimension vectors of `d⁰`, `d¹`.
    pub fn homology_reps(&self, m: &Cx) -> (Rep, Rep, DimVec, DimVec) {
        let f = self.field();
        let shape = self.rep_shape();
        let part = |src: &Rep, d_out: &[Mat], d_in: &[Mat]| {
            let ker: Vec<Mat> = d_out.iter().map(|d| d.nullspace(f)).collect();
            let img: Vec<Mat> = d_in.iter().map(|d| d.column_basis(f)).collect();
            shape.subquotient(src, &ker, &img, f)
        };
        let h0 = part(&m.m0, &m.d0, &m.d1);
        let h1 = part(&m.m1, &m.d1, &m.d0);
        let rank = |ds: &[Mat]| DimVec(ds.iter().map(|d| d.rank(f) as i64).collect());
        (h0, h1, rank(&m.d0), rank(&m.d1))
    }

    pub fn homology(&self, m: &Cx) -> Result<Homology> {
        let (h0, h1, im_d0, im_d1) = self.homology_reps(m);
        Ok(Homology { h0: self.classify(&h0)?, h1: self.classify(&h1)?, im_d0, im_d1 })
    }

    pub fn is_acyclic(&self, m: &Cx) -> bool {
        let (h0, h1, _, _) = self.homology_reps(m);
        h0.total_dim() == 0 && h1.total_dim() == 0
    }

    pub fn cx_hom_dim(&self, l: &Cx, m: &Cx) -> usize {
        self.cx_shape().hom_dim(&l.to_obj(), &m.to_obj(), self.field())
    }

    pub fn cx_ext1_dim(&self, l: &Cx, m: &Cx) -> usize {
        self.cx_shape().ext1_dim(&l.to_obj(), &m.to_obj(), self.field())
    }

    /// `dim Hom − dim Ext¹` in the category of complexes.
    pub fn cx_euler(&self, l: &Cx, m: &Cx) -> i64 {
        self.cx_hom_dim(l, m) as i64 - self.cx_ext1_dim(l, m) as i64
    }

    /// `⟨L⁰, M⁰⟩ + ⟨L¹, M¹⟩` for the quiver Euler form.
    pub fn res_euler(&self, l: &Cx, m: &Cx) -> i64 {
        let (l0, l1) = l.res_dims();
        let (m0, m1) = m.res_dims();
        self.quiver().euler(&l0, &m0) + self.quiver().euler(&l1, &m1)
    }

    /// Automorphisms counted by enumerating all endomorphisms.
    pub fn cx_aut_size(&self, m: &Cx) -> Result<u128> {
        let shape = self.cx_shape();
        let f = self.field();
        let obj = m.to_obj();
        let basis = shape.hom_space(&obj, &obj, f);
        let mut count = 0;
        for v in span_vectors(&basis, f.q(), self.bounds().max_tuples)? {
            if shape.unflatten_morphism(&obj, &obj, &v).iter().all(|g| g.is_invertible(f)) {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn cx_classify(&self, m: &Cx) -> Result<CxIsoClass> {
        let obj = m.to_obj();
        let t = self.cx_table(&obj.dims)?;
        let index = t
            .class_of_code(self.cx_shape().encode(&obj, self.q()))
            .ok_or_else(|| HallError::InvalidClass("object is not a complex of the category".into()))?;
        Ok(CxIsoClass { dims: obj.dims, index })
    }

    pub fn cx_representative(&self, c: &CxIsoClass) -> Result<Cx> {
        let t = self.cx_table(&c.dims)?;
        Ok(self.cx_from_obj(&t.representative(self.cx_shape(), c.index, self.field())))
    }

    pub fn cx_aut_size_of_class(&self, c: &CxIsoClass) -> Result<u128> {
        Ok(self.cx_table(&c.dims)?.aut_size(c.index))
    }

    /// Classes of complexes with the given degree-0 and degree-1 dimensions.
    pub fn cx_enumerate(&self, dims0: &[usize], dims1: &[usize]) -> Result<Vec<CxIsoClass>> {
        let mut dims = dims0.to_vec();
        dims.extend(dims1);
        let t = self.cx_table(&dims)?;
        Ok((0..t.len() as u32).map(|index| CxIsoClass { dims: dims.clone(), index }).collect())
    }

    /// `F^E_{L,M}`: subcomplexes of `E` isomorphic to `M` with quotient isomorphic to `L`.
    pub fn cx_hall_number(&self, l: &CxIsoClass, m: &CxIsoClass, e: &CxIsoClass) -> Result<u64> {
        let sum: Vec<usize> = l.dims.iter().zip(&m.dims).map(|(a, b)| a + b).collect();
        if sum != e.dims {
            return Ok(0);
        }
        let shape = self.cx_shape();
        let f = self.field();
        let obj = self.cx_representative(e)?.to_obj();
        let mut count = 0;
        for u in shape.subobjects(&obj, &m.dims, f) {
            let sub = self.cx_from_obj(&shape.subquotient(&obj, &u, &shape.zero_spaces(&obj), f));
            if self.cx_classify(&sub)? != *m {
                continue;
            }
            let quot = self.cx_from_obj(&shape.subquotient(&obj, &shape.full_spaces(&obj), &u, f));
            if self.cx_classify(&quot)? == *l {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Middle terms of all extensions `0 → m → E → l → 0`, one per cocycle, with
    /// the normalizing exponent `dim C⁰` so that each carries weight `q^{-dim C⁰}`.
    pub fn cx_extensions(&self, l: &Cx, m: &Cx) -> Result<(Vec<Cx>, usize)> {
        let shape = self.cx_shape();
        let f = self.field();
        let (lo, mo) = (l.to_obj(), m.to_obj());
        let basis = shape.cocycle_space(&lo, &mo, f);
        let mids = span_vectors(&basis, f.q(), self.bounds().max_tuples)?
            .into_iter()
            .map(|xi| self.cx_from_obj(&shape.extension(&lo, &mo, &xi)))
            .collect();
        Ok((mids, shape.cochain_dim(&lo, &mo)))
    }

    /// `Σ_E |Ext¹(l,m)_E| / |Hom(l,m)| [E]` in the untwisted Hall algebra of complexes.
    pub fn cx_extension_ratios(&self, l: &Cx, m: &Cx) -> Result<CxElem> {
        let (mids, c0) = self.cx_extensions(l, m)?;
        let mut counts: BTreeMap<CxIsoClass, u64> = BTreeMap::new();
        for e in &mids {
            *counts.entry(self.cx_classify(e)?).or_insert(0) += 1;
        }
        let denom = BigInt::from(self.q()).pow(c0 as u32);
        Ok(counts
            .into_iter()
            .map(|(c, n)| (c, Scalar::rational(BigRational::new(n.into(), denom.clone()), self.q())))
            .collect())
    }

    fn in_torsion_class(&self, x: &Rep, side: Side) -> bool {
        match side {
            Side::Sink(l) => self.hom_dim(x, &self.simple(l)) == 0,
            Side::Source(l) => self.hom_dim(&self.simple(l), x) == 0,
        }
    }

    pub fn cx_in_torsion_class(&self, m: &Cx, side: Side) -> bool {
        self.in_torsion_class(&m.m0, side) && self.in_torsion_class(&m.m1, side)
    }

    /// Representatives of all module classes in the torsion class, by total dimension.
    fn torsion_modules(&self, max_total: usize, side: Side) -> Result<Vec<Vec<Rep>>> {
        let mut by_size = vec![Vec::new(); max_total + 1];
        for (t, slot) in by_size.iter_mut().enumerate() {
            for dims in compositions(t, self.n()) {
                let table = match self.rep_table(&dims) {
                    Ok(table) => table,
                    Err(e) if e.is_resource() => continue,
                    Err(e) => return Err(e),
                };
                for idx in 0..table.len() as u32 {
                    let rep = table.representative(self.rep_shape(), idx, self.field());
                    if self.in_torsion_class(&rep, side) {
                        slot.push(rep);
                    }
                }
            }
        }
        Ok(by_size)
    }

    /// Up to `limit` resolutions of `m` with distinct acyclic parts
    /// `T = K_U ⊕ K*_V`, searched by increasing `dim U + dim V`.
    pub fn find_resolutions(&self, m: &Cx, side: Side, limit: usize) -> Result<Vec<Resolution>> {
        let mut found = Vec::new();
        if self.cx_in_torsion_class(m, side) {
            found.push(Resolution { x: m.clone(), t: self.zero_cx() });
            if found.len() >= limit {
                return Ok(found);
            }
        }
        let budget = self.bounds().max_total_dim.saturating_sub(m.total_dim()) / 2;
        let modules = self.torsion_modules(budget, side)?;
        let shape = self.cx_shape();
        let f = self.field();
        let mo = m.to_obj();
        for size in 1..=budget {
            for su in 0..=size {
                for u in &modules[su] {
                    for v in &modules[size - su] {
                        let t = self.cx_direct_sum(&Cx::k(u), &Cx::k_star(v));
                        let to = t.to_obj();
                        let (sub, quot) = match side {
                            Side::Sink(_) => (&mo, &to),
                            Side::Source(_) => (&to, &mo),
                        };
                        let basis = shape.cocycle_space(quot, sub, f);
                        let cocycles = match span_vectors(&basis, f.q(), self.bounds().max_tuples) {
                            Ok(c) => c,
                            Err(e) if e.is_resource() => continue,
                            Err(e) => return Err(e),
                        };
                        for xi in cocycles {
                            let x = self.cx_from_obj(&shape.extension(quot, sub, &xi));
                            if self.cx_in_torsion_class(&x, side) {
                                found.push(Resolution { x, t: t.clone() });
                                break;
                            }
                        }
                        if found.len() >= limit {
                            return Ok(found);
                        }
                    }
                }
            }
        }
        Ok(found)
    }

    pub fn find_resolution(&self, m: &Cx, side: Side) -> Result<Resolution> {
        self.find_resolutions(m, side, 1)?.into_iter().next().ok_or_else(|| {
            HallError::ResolutionNotFound(self.bounds().max_total_dim)
        })
    }
}

/// All dimension vectors of length `n` with entries summing to `t`.
pub(crate) fn compositions(t: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in compositions(t - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    dims: Vec<usize>,
    arrows: Vec<Vec<Vec<u8>>>,
}

#[derive(Serialize, Deserialize)]
struct CxJson {
    #[serde(rename = "M0")]
    m0: RepJson,
    #[serde(rename = "M1")]
    m1: RepJson,
    d0: Vec<Vec<Vec<u8>>>,
    d1: Vec<Vec<Vec<u8>>>,
}

fn rep_to_json(r: &Rep) -> RepJson {
    RepJson { dims: r.dims.clone(), arrows: r.mats.iter().map(Mat::to_rows).collect() }
}

fn mat_from_rows(rows: usize, cols: usize, data: &[Vec<u8>], q: u32) -> Result<Mat> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(HallError::Parse(format!("expected a {rows}×{cols} matrix")));
    }
    if data.iter().flatten().any(|&x| x as u32 >= q) {
        return Err(HallError::Parse(format!("matrix entry outside F_{q}")));
    }
    Ok(Mat::from_rows(rows, cols, data))
}

impl HallCtx {
    pub fn rep_to_json(&self, r: &Rep) -> serde_json::Value {
        serde_json::to_value(rep_to_json(r)).expect("serializable")
    }

    fn rep_from_raw(&self, raw: &RepJson) -> Result<Rep> {
        let arrows = self.quiver().arrows();
        if raw.dims.len() != self.n() || raw.arrows.len() != arrows.len() {
            return Err(HallError::Parse("representation does not match the quiver".into()));
        }
        let mats = arrows
            .iter()
            .zip(&raw.arrows)
            .map(|(a, m)| mat_from_rows(raw.dims[a.tgt], raw.dims[a.src], m, self.q()))
            .collect::<Result<Vec<_>>>()?;
        let rep = Rep { dims: raw.dims.clone(), mats };
        if !self.rep_shape().is_member(&rep, self.field()) {
            return Err(HallError::Parse("representation is not in the category (nilpotency)".into()));
        }
        Ok(rep)
    }

    pub fn rep_from_json(&self, v: &serde_json::Value) -> Result<Rep> {
        let raw: RepJson =
            serde_json::from_value(v.clone()).map_err(|e| HallError::Parse(format!("representation: {e}")))?;
        self.rep_from_raw(&raw)
    }

    pub fn cx_to_json(&self, m: &Cx) -> serde_json::Value {
        let raw = CxJson {
            m0: rep_to_json(&m.m0),
            m1: rep_to_json(&m.m1),
            d0: m.d0.iter().map(Mat::to_rows).collect(),
            d1: m.d1.iter().map(Mat::to_rows).collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn cx_from_json(&self, v: &serde_json::Value) -> Result<Cx> {
        let raw: CxJson =
            serde_json::from_value(v.clone()).map_err(|e| HallError::Parse(format!("complex: {e}")))?;
        let m0 = self.rep_from_raw(&raw.m0)?;
        let m1 = self.rep_from_raw(&raw.m1)?;
        if raw.d0.len() != self.n() || raw.d1.len() != self.n() {
            return Err(HallError::Parse("one differential block per vertex expected".into()));
        }
        let d0 = (0..self.n())
            .map(|i| mat_from_rows(m1.dims[i], m0.dims[i], &raw.d0[i], self.q()))
            .collect::<Result<Vec<_>>>()?;
        let d1 = (0..self.n())
            .map(|i| mat_from_rows(m0.dims[i], m1.dims[i], &raw.d1[i], self.q()))
            .collect::<Result<Vec<_>>>()?;
        let cx = Cx { m0, m1, d0, d1 };
        if !self.is_valid_cx(&cx) {
            return Err(HallError::Parse("differentials do not form a complex of representations".into()));
        }
        Ok(cx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Mode;
    use crate::quiver::examples;

    fn ctx(p: u32) -> HallCtx {
        HallCtx::new(examples::a2(), p, Mode::Nilpotent).unwrap()
    }

    #[test]
    fn stalks_and_shift() {
        let c = ctx(3);
        let f = c.field();
        let x = c.semisimple(0, 1);
        let k = Cx::k(&x);
        assert!(c.is_valid_cx(&k) && c.is_acyclic(&k));
        assert!(!c.is_acyclic(&Cx::c(&x)));
        let shifted = Cx::c(&x).shift(f);
        assert_eq!(c.cx_classify(&shifted).unwrap(), c.cx_classify(&Cx::c_star(&x)).unwrap());
        assert_eq!(c.cx_classify(&k.shift(f)).unwrap(), c.cx_classify(&Cx::k_star(&x)).unwrap());
        let m = c.cx_direct_sum(&Cx::c(&x), &Cx::k(&c.simple(1)));
        assert_eq!(c.cx_classify(&m.shift(f).shift(f)).unwrap(), c.cx_classify(&m).unwrap());
    }

    #[test]
    fn homology_of_stalks() {
        let c = ctx(2);
        let x = c.simple(0);
        let h = c.homology(&Cx::k(&x)).unwrap();
        assert!(h.h0.is_zero() && h.h1.is_zero());
        assert_eq!(h.im_d0, DimVec(vec![1, 0]));
        let h = c.homology(&c.cx_direct_sum(&Cx::c(&x), &Cx::k(&c.simple(1)))).unwrap();
        assert_eq!(h.h1, c.classify(&x).unwrap());
        assert_eq!(h.im_d0, DimVec(vec![0, 1]));
        assert_eq!(h.im_d1, DimVec(vec![0, 0]));
    }

    #[test]
    fn hom_into_k_and_aut() {
        let c = ctx(2);
        let x = c.simple(0);
        let y = c.simple(1);
        for m in [Cx::c(&x), Cx::c_star(&y), Cx::k(&x), c.cx_direct_sum(&Cx::c(&x), &Cx::c_star(&y))] {
            for t in [&x, &y] {
                assert_eq!(c.cx_hom_dim(&m, &Cx::k(t)), c.hom_dim(&m.m1, t));
            }
        }
        assert_eq!(c.cx_aut_size(&Cx::c(&c.semisimple(0, 2))).unwrap(), 6);
    }

    #[test]
    fn hall_numbers_of_stalks() {
        let c = ctx(2);
        let s = c.simple(0);
        let cs = c.cx_classify(&Cx::c(&s)).unwrap();
        let css = c.cx_classify(&Cx::c_star(&s)).unwrap();
        let sum = c.cx_classify(&c.cx_direct_sum(&Cx::c(&s), &Cx::c_star(&s))).unwrap();
        assert_eq!(c.cx_hall_number(&cs, &css, &sum).unwrap(), 1);
        let k = c.cx_classify(&Cx::k(&s)).unwrap();
        assert_eq!(c.cx_hall_number(&css, &cs, &k).unwrap(), 1);
        let zero = c.cx_classify(&c.zero_cx()).unwrap();
        assert_eq!(c.cx_hall_number(&zero, &k, &k).unwrap(), 1);
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(3);
        let m = c.cx_direct_sum(&Cx::k(&c.simple(0)), &Cx::c_star(&c.simple(1)));
        assert_eq!(c.cx_from_json(&c.cx_to_json(&m)).unwrap(), m);
        let mut bad = c.cx_to_json(&Cx::k(&c.simple(0)));
        bad["d1"][0] = serde_json::json!([[1]]);
        assert!(c.cx_from_json(&bad).is_err());
    }

    #[test]
    fn resolution_of_simple_at_sink() {
        let c = ctx(2);
        let m = Cx::c(&c.simple(1));
        let r = c.find_resolution(&m, Side::Sink(1)).unwrap();
        assert!(c.is_acyclic(&r.t));
        assert!(c.cx_in_torsion_class(&r.x, Side::Sink(1)));
        assert_eq!(r.x.total_dim(), m.total_dim() + r.t.total_dim());
        let inside = Cx::c(&c.simple(0));
        assert_eq!(c.find_resolution(&inside, Side::Sink(1)).unwrap().x, inside);
    }
}
