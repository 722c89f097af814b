//! BGP reflection functors, the induced isomorphisms of semi-derived Hall algebras,
//! braid operators on generator words and the verifiers tying them together.

mod braid;
mod verify;

pub use braid::{braid_t, BraidVariant};
pub use verify::{
    basis_elements, closed_form_gamma, square_generators, verify_braid_rank2, verify_closed_form, verify_inverse,
    verify_square,
};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::HallCtx;
use crate::error::{HallError, Result};
use crate::ff::{Fq, Mat};
use crate::quiver::{Arrow, DimVec};
use crate::repfq::{IsoClass, Rep};
use crate::sdh::SDHElem;
use crate::z2cx::{Cx, Side};
use crate::Scalar;

/// Kernel (sink) or cokernel (source) data of one representation at the reflected vertex.
struct Local {
    /// Sink: basis columns of the kernel. Source: projection onto cokernel coordinates.
    map: Mat,
    /// Source only: section of the projection.
    section: Mat,
}

/// Reflection at a loop-free real vertex `ℓ` that is a sink or a source.
pub struct Reflection {
    src: Arc<HallCtx>,
    tgt: Arc<HallCtx>,
    side: Side,
    memo: Mutex<HashMap<(IsoClass, IsoClass), SDHElem>>,
}

impl Reflection {
    /// Build the target context on `s_ℓ Q` with the same field, mode and bounds.
    pub fn new(src: Arc<HallCtx>, l: usize) -> Result<Self> {
        let tgt = HallCtx::with_bounds(src.quiver().reflect(l), src.q(), src.mode(), src.bounds())?;
        Self::between(src, Arc::new(tgt), l)
    }

    pub fn between(src: Arc<HallCtx>, tgt: Arc<HallCtx>, l: usize) -> Result<Self> {
        let quiver = src.quiver();
        if l >= quiver.n() {
            return Err(HallError::InvalidQuiver(format!("no vertex with index {l}")));
        }
        if !src.cartan().is_real(l) {
            return Err(HallError::NotReal(quiver.vertex_name(l).to_string()));
        }
        let side = if quiver.is_sink(l) {
            Side::Sink(l)
        } else if quiver.is_source(l) {
            Side::Source(l)
        } else {
            return Err(HallError::WrongVertexKind { vertex: quiver.vertex_name(l).to_string(), wanted: "sink or source" });
        };
        if tgt.quiver().arrows() != quiver.reflect(l).arrows() || tgt.q() != src.q() {
            return Err(HallError::InvalidQuiver("target is not the reflected quiver".into()));
        }
        Ok(Self { src, tgt, side, memo: Mutex::new(HashMap::new()) })
    }

    /// The reflection back from `s_ℓ Q` to `Q`.
    pub fn inverse(&self) -> Result<Self> {
        Self::between(self.tgt.clone(), self.src.clone(), self.vertex())
    }

    pub fn source(&self) -> &Arc<HallCtx> {
        &self.src
    }

    pub fn target(&self) -> &Arc<HallCtx> {
        &self.tgt
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn vertex(&self) -> usize {
        match self.side {
            Side::Sink(l) | Side::Source(l) => l,
        }
    }

    fn f(&self) -> Fq {
        self.src.field()
    }

    /// Arrows incident to `ℓ`, with the vertex at their other end.
    fn incident(&self) -> Vec<(usize, usize)> {
        let l = self.vertex();
        self.src
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.src == l || a.tgt == l)
            .map(|(k, a)| (k, if a.src == l { a.tgt } else { a.src }))
            .collect()
    }

    fn local(&self, m: &Rep) -> Local {
        let f = self.f();
        let inc = self.incident();
        let l = self.vertex();
        let total: usize = inc.iter().map(|&(_, j)| m.dims[j]).sum();
        match self.side {
            Side::Sink(_) => {
                let mut phi = Mat::zeros(m.dims[l], 0);
                for &(k, _) in &inc {
                    phi = phi.hstack(&m.mats[k]);
                }
                Local { map: phi.nullspace(f), section: Mat::zeros(0, 0) }
            }
            Side::Source(_) => {
                let mut psi = Mat::zeros(0, m.dims[l]);
                for &(k, _) in &inc {
                    psi = psi.vstack(&m.mats[k]);
                }
                let image = psi.column_basis(f);
                let r = image.cols();
                let basis = image.complete_basis(f);
                let inv = basis.inverse(f).expect("completed basis is invertible");
                Local { map: inv.submatrix(r, total, 0, total), section: basis.submatrix(0, total, r, total) }
            }
        }
    }

    /// `F⁺_ℓ` at a sink or `F⁻_ℓ` at a source.
    pub fn bgp_rep(&self, m: &Rep) -> Rep {
        let loc = self.local(m);
        self.assemble(m, &loc)
    }

    fn assemble(&self, m: &Rep, loc: &Local) -> Rep {
        let l = self.vertex();
        let mut dims = m.dims.clone();
        let mut mats = m.mats.clone();
        let mut offset = 0;
        match self.side {
            Side::Sink(_) => {
                dims[l] = loc.map.cols();
                for (k, j) in self.incident() {
                    mats[k] = loc.map.submatrix(offset, offset + m.dims[j], 0, loc.map.cols());
                    offset += m.dims[j];
                }
            }
            Side::Source(_) => {
                dims[l] = loc.map.rows();
                for (k, j) in self.incident() {
                    mats[k] = loc.map.submatrix(0, loc.map.rows(), offset, offset + m.dims[j]);
                    offset += m.dims[j];
                }
            }
        }
        Rep { dims, mats }
    }

    /// Image of a morphism given per vertex.
    fn bgp_morphism(&self, lm: &Local, ln: &Local, g: &[Mat]) -> Vec<Mat> {
        let f = self.f();
        let l = self.vertex();
        let mut block = Mat::zeros(0, 0);
        for &(_, j) in &self.incident() {
            block = block.direct_sum(&g[j]);
        }
        let mut out = g.to_vec();
        out[l] = match self.side {
            Side::Sink(_) => {
                let moved = block.mul(&lm.map, f);
                ln.map.solve_left_full_rank(&moved, f).expect("morphisms preserve the kernel")
            }
            Side::Source(_) => ln.map.mul(&block, f).mul(&lm.section, f),
        };
        out
    }

    /// The reflection functor applied to both components and both differentials.
    pub fn bgp_cx(&self, m: &Cx) -> Cx {
        let (l0, l1) = (self.local(&m.m0), self.local(&m.m1));
        let m0 = self.assemble(&m.m0, &l0);
        let m1 = self.assemble(&m.m1, &l1);
        let d0 = self.bgp_morphism(&l0, &l1, &m.d0);
        let d1 = self.bgp_morphism(&l1, &l0, &m.d1);
        Cx { m0, m1, d0, d1 }
    }

    /// View a representation with zero space at `ℓ` over the reflected quiver.
    pub fn transport_rep(&self, m: &Rep) -> Result<Rep> {
        let l = self.vertex();
        if m.dims[l] != 0 {
            return Err(HallError::Unsupported("representation is not zero at the reflected vertex".into()));
        }
        let arrows: &[Arrow] = self.tgt.quiver().arrows();
        let mats = arrows
            .iter()
            .zip(&m.mats)
            .map(|(a, mat)| if a.src == l || a.tgt == l { Mat::zeros(m.dims[a.tgt], m.dims[a.src]) } else { mat.clone() })
            .collect();
        Ok(Rep { dims: m.dims.clone(), mats })
    }

    fn reflect_dim(&self, x: &DimVec) -> Result<DimVec> {
        self.src.cartan().simple_reflection(self.vertex(), x)
    }

    /// Image of `[C_A ⊕ C*_B]` computed from a resolution by complexes in the torsion class.
    pub fn gamma_c_part(&self, a: &IsoClass, b: &IsoClass) -> Result<SDHElem> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&(a.clone(), b.clone())) {
            return Ok(hit.clone());
        }
        let m = self.src.c_sum_cx(a, b)?;
        let res = self.src.find_resolution(&m, self.side)?;
        let value = self.gamma_from_resolution(&m, &res.x, &res.t)?;
        self.memo.lock().expect("memo lock").insert((a.clone(), b.clone()), value.clone());
        Ok(value)
    }

    /// `v^{⟨res T, res M⟩} q^{−⟨T, M⟩} [F T]^{-1} * [F X]` for a sink
    /// and `v^{⟨res M, res T⟩} q^{−⟨M, T⟩} [F X] * [F T]^{-1}` for a source.
    pub fn gamma_from_resolution(&self, m: &Cx, x: &Cx, t: &Cx) -> Result<SDHElem> {
        let q = self.src.q();
        let (res_e, e) = match self.side {
            Side::Sink(_) => (self.src.res_euler(t, m), self.src.cx_euler(t, m)),
            Side::Source(_) => (self.src.res_euler(m, t), self.src.cx_euler(m, t)),
        };
        let qpow = if e >= 0 {
            Scalar::rational(BigRational::new(1.into(), BigInt::from(q).pow(e as u32)), q)
        } else {
            Scalar::from_bigint(BigInt::from(q).pow((-e) as u32), q)
        };
        let coeff = Scalar::v_pow(res_e, q) * &qpow;
        let ft = self.tgt.sdh_inverse(&self.tgt.reduce(&self.bgp_cx(t))?)?;
        let fx = self.tgt.reduce(&self.bgp_cx(x))?;
        let prod = match self.side {
            Side::Sink(_) => self.tgt.sdh_mul(&ft, &fx)?,
            Side::Source(_) => self.tgt.sdh_mul(&fx, &ft)?,
        };
        Ok(prod.scale(&coeff))
    }

    /// `Γ_ℓ` at a sink, `Γ⁻_ℓ` at a source, extended linearly and multiplicatively.
    pub fn gamma(&self, x: &SDHElem) -> Result<SDHElem> {
        let mut out = SDHElem::new();
        for (key, c) in x.iter() {
            let cp = self.gamma_c_part(&key.a, &key.b)?;
            let k = self.tgt.k_elem(self.reflect_dim(&key.alpha)?, self.reflect_dim(&key.beta)?);
            out.add_scaled(&self.tgt.sdh_mul(&cp, &k)?, c);
        }
        Ok(out)
    }
}
