use std::time::Instant;

use rayon::prelude::*;

use super::{eval_word, gen, word_mul, word_one, word_pow, Charge, Family, GenSymbol, GenWord};
use crate::context::HallCtx;
use crate::error::Result;
use crate::quiver::DimVec;
use crate::scalars::{qbinom, tau};
use crate::sdh::SDHElem;
use crate::Scalar;

/// One concrete instance of a defining relation, `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub id: String,
    pub anchor: &'static str,
    pub lhs: GenWord,
    pub rhs: GenWord,
}

impl RelationInstance {
    /// Largest number of `e`/`f` letters in a monomial of either side.
    pub fn degree(&self) -> usize {
        self.lhs
            .keys()
            .chain(self.rhs.keys())
            .map(|m| {
                m.iter()
                    .map(|s| match s {
                        GenSymbol::K(_) | GenSymbol::KPrime(_) => 0,
                        GenSymbol::E { .. } | GenSymbol::F { .. } => 1,
                        GenSymbol::EDiv { r, .. } | GenSymbol::FDiv { r, .. } => *r as usize,
                    })
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub id: String,
    pub anchor: &'static str,
    pub status: Status,
    /// `lhs − rhs` when the check fails.
    pub witness: Option<SDHElem>,
    pub millis: u128,
}

impl RelationReport {
    pub fn to_json(&self, ctx: &HallCtx) -> serde_json::Value {
        let mut v = serde_json::json!({
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status.as_str(),
            "millis": self.millis as u64,
        });
        if let Status::Skipped(reason) = &self.status {
            v["reason"] = reason.clone().into();
        }
        if let Some(w) = &self.witness {
            v["witness"] = ctx.sdh_to_json(w);
        }
        v
    }
}

const K_INVERTIBLE: &str = "K_i K_i^{-1} = K_i^{-1} K_i = 1, K'_i (K'_i)^{-1} = (K'_i)^{-1} K'_i = 1";
const K_COMMUTE: &str = "[K_i, K_j] = [K_i, K'_j] = [K'_i, K'_j] = 0";
const K_E: &str = "K_i e_jl = v^(l a_ij) e_jl K_i, K_i f_jl = v^(-l a_ij) f_jl K_i";
const KP_E: &str = "K'_i e_jl = v^(-l a_ij) e_jl K'_i, K'_i f_jl = v^(l a_ij) f_jl K'_i";
const EF_COMMUTE: &str = "e_ik f_jl - f_jl e_ik = 0 for i != j";
const EF_CROSS: &str =
    "sum v_(i)^(r(m-s)) tau_ir e_is f_im (K'_i)^r = sum v_(i)^(-r(m-s)) tau_ir f_im e_is K_i^r over m+r=k, r+s=l";
const SERRE_E: &str = "sum_k (-1)^k [1-l a_ij choose k] e_i^(1-l a_ij-k) e_jl e_i^k = 0";
const SERRE_F: &str = "sum_k (-1)^k [1-l a_ij choose k] f_i^(1-l a_ij-k) f_jl f_i^k = 0";
const GKM_K_E: &str = "K_i E_jl = v^(a_ij) E_jl K_i, K_i F_jl = v^(-a_ij) F_jl K_i";
const GKM_KP_E: &str = "K'_i E_jl = v^(-a_ij) E_jl K'_i, K'_i F_jl = v^(a_ij) F_jl K'_i";
const GKM_E_F: &str = "E_ik F_jl - F_jl E_ik = delta_ij delta_kl (K_i - K'_i)/(v - v^{-1})";
const GKM_SERRE_E: &str = "sum_n (-1)^n [1-a_ij choose n] E_i1^(1-a_ij-n) E_jl E_i1^n = 0";
const GKM_SERRE_F: &str = "sum_n (-1)^n [1-a_ij choose n] F_i1^(1-a_ij-n) F_jl F_i1^n = 0";

struct Builder<'a> {
    ctx: &'a HallCtx,
    q: u32,
    out: Vec<RelationInstance>,
}

impl<'a> Builder<'a> {
    fn name(&self, i: usize) -> &str {
        self.ctx.quiver().vertex_name(i)
    }

    fn alpha(&self, i: usize, c: i64) -> DimVec {
        DimVec::unit(self.ctx.n(), i).scale(c)
    }

    fn k(&self, i: usize, c: i64) -> GenWord {
        gen(GenSymbol::K(self.alpha(i, c)), self.q)
    }

    fn kp(&self, i: usize, c: i64) -> GenWord {
        gen(GenSymbol::KPrime(self.alpha(i, c)), self.q)
    }

    fn push(&mut self, id: String, anchor: &'static str, lhs: GenWord, rhs: GenWord) {
        self.out.push(RelationInstance { id, anchor, lhs, rhs });
    }

    fn k_relations(&mut self) {
        let n = self.ctx.n();
        let one = word_one(self.q);
        for i in 0..n {
            let name = self.name(i).to_string();
            for (tag, f) in [("K", Self::k as fn(&Self, usize, i64) -> GenWord), ("K'", Self::kp)] {
                let (x, y) = (f(self, i, 1), f(self, i, -1));
                self.push(format!("k-invertible {tag} i={name} right"), K_INVERTIBLE, word_mul(&x, &y), one.clone());
                self.push(format!("k-invertible {tag} i={name} left"), K_INVERTIBLE, word_mul(&y, &x), one.clone());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (ni, nj) = (self.name(i).to_string(), self.name(j).to_string());
                if i < j {
                    let (a, b) = (self.k(i, 1), self.k(j, 1));
                    self.push(format!("k-commute K K i={ni} j={nj}"), K_COMMUTE, word_mul(&a, &b), word_mul(&b, &a));
                    let (a, b) = (self.kp(i, 1), self.kp(j, 1));
                    self.push(format!("k-commute K' K' i={ni} j={nj}"), K_COMMUTE, word_mul(&a, &b), word_mul(&b, &a));
                }
                let (a, b) = (self.k(i, 1), self.kp(j, 1));
                self.push(format!("k-commute K K' i={ni} j={nj}"), K_COMMUTE, word_mul(&a, &b), word_mul(&b, &a));
            }
        }
    }

    /// `K x = v^{e} x K` style instance.
    fn k_conjugation(&mut self, id: String, anchor: &'static str, k: GenWord, x: GenWord, e: i64) {
        let lhs = word_mul(&k, &x);
        let rhs = word_mul(&x, &k).scale(&Scalar::v_pow(e, self.q));
        self.push(id, anchor, lhs, rhs);
    }
}

fn e_gen(family: Family, i: usize, l: u32, q: u32) -> GenWord {
    gen(GenSymbol::E { family, i, l }, q)
}

fn f_gen(family: Family, i: usize, l: u32, q: u32) -> GenWord {
    gen(GenSymbol::F { family, i, l }, q)
}

/// `Σ_k (−1)^k [N choose k] x_i^{N−k} y x_i^k`.
fn serre_sum(xi: &GenWord, y: &GenWord, big_n: i64, q: u32) -> GenWord {
    let mut out = GenWord::new();
    for k in 0..=big_n {
        let sign = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 }, q);
        let c = sign * qbinom::<num_rational::BigRational>(big_n, k as u32, q);
        let term = word_mul(&word_mul(&word_pow(xi, (big_n - k) as u32, q), y), &word_pow(xi, k as u32, q));
        out.add_scaled(&term, &c);
    }
    out
}

/// Instances of every Borcherds-Bozec relation with levels up to `max_level`.
pub fn bb_relations(ctx: &HallCtx, max_level: u32) -> Vec<RelationInstance> {
    let q = ctx.q();
    let cartan = ctx.cartan();
    let gens = cartan.generator_indices(max_level);
    let fam = Family::Bozec;
    let mut b = Builder { ctx, q, out: Vec::new() };
    b.k_relations();
    for i in 0..ctx.n() {
        for &(j, l) in &gens {
            let e = l as i64 * cartan.entry(i, j);
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            let tag = format!("i={ni} j={nj} l={l}");
            b.k_conjugation(format!("k-e {tag}"), K_E, b.k(i, 1), e_gen(fam, j, l, q), e);
            b.k_conjugation(format!("k-f {tag}"), K_E, b.k(i, 1), f_gen(fam, j, l, q), -e);
            b.k_conjugation(format!("kprime-e {tag}"), KP_E, b.kp(i, 1), e_gen(fam, j, l, q), -e);
            b.k_conjugation(format!("kprime-f {tag}"), KP_E, b.kp(i, 1), f_gen(fam, j, l, q), e);
        }
    }
    for &(i, k) in &gens {
        for &(j, l) in &gens {
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            if i != j {
                let (x, y) = (e_gen(fam, i, k, q), f_gen(fam, j, l, q));
                b.push(format!("e-f-commute i={ni} k={k} j={nj} l={l}"), EF_COMMUTE, word_mul(&x, &y), word_mul(&y, &x));
                continue;
            }
            let vi = 1 - cartan.loops(i);
            let ef = |s: u32, m: u32| {
                let mut w = word_one(q);
                if s > 0 {
                    w = word_mul(&w, &e_gen(fam, i, s, q));
                }
                if m > 0 {
                    w = word_mul(&w, &f_gen(fam, i, m, q));
                }
                w
            };
            let fe = |s: u32, m: u32| {
                let mut w = word_one(q);
                if m > 0 {
                    w = word_mul(&w, &f_gen(fam, i, m, q));
                }
                if s > 0 {
                    w = word_mul(&w, &e_gen(fam, i, s, q));
                }
                w
            };
            let mut lhs = GenWord::new();
            let mut rhs = GenWord::new();
            for r in 0..=k.min(l) {
                let (m, s) = (k - r, l - r);
                let t: Scalar = tau(r, q);
                let ex = vi * r as i64 * (m as i64 - s as i64);
                let kp = if r > 0 { b.kp(i, r as i64) } else { word_one(q) };
                let kk = if r > 0 { b.k(i, r as i64) } else { word_one(q) };
                lhs.add_scaled(&word_mul(&ef(s, m), &kp), &(Scalar::v_pow(ex, q) * &t));
                rhs.add_scaled(&word_mul(&fe(s, m), &kk), &(Scalar::v_pow(-ex, q) * &t));
            }
            b.push(format!("e-f-cross i={ni} k={k} l={l}"), EF_CROSS, lhs, rhs);
        }
    }
    for i in (0..ctx.n()).filter(|&i| cartan.is_real(i)) {
        for &(j, l) in gens.iter().filter(|&&(j, _)| j != i) {
            let big_n = 1 - l as i64 * cartan.entry(i, j);
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            let tag = format!("i={ni} j={nj} l={l}");
            let se = serre_sum(&e_gen(fam, i, 1, q), &e_gen(fam, j, l, q), big_n, q);
            let sf = serre_sum(&f_gen(fam, i, 1, q), &f_gen(fam, j, l, q), big_n, q);
            b.push(format!("serre-e {tag}"), SERRE_E, se, GenWord::new());
            b.push(format!("serre-f {tag}"), SERRE_F, sf, GenWord::new());
        }
    }
    b.out
}

/// Instances of every generalized Kac-Moody relation for the given charge.
pub fn qgkm_relations(ctx: &HallCtx, charge: &Charge) -> Vec<RelationInstance> {
    let q = ctx.q();
    let cartan = ctx.cartan();
    let fam = Family::Gkm;
    let gens: Vec<(usize, u32)> =
        (0..ctx.n()).flat_map(|i| (1..=charge.m[i] as u32).map(move |l| (i, l))).collect();
    let mut b = Builder { ctx, q, out: Vec::new() };
    b.k_relations();
    for i in 0..ctx.n() {
        for &(j, l) in &gens {
            let e = cartan.entry(i, j);
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            let tag = format!("i={ni} j={nj} l={l}");
            b.k_conjugation(format!("gkm-k-e {tag}"), GKM_K_E, b.k(i, 1), e_gen(fam, j, l, q), e);
            b.k_conjugation(format!("gkm-k-f {tag}"), GKM_K_E, b.k(i, 1), f_gen(fam, j, l, q), -e);
            b.k_conjugation(format!("gkm-kprime-e {tag}"), GKM_KP_E, b.kp(i, 1), e_gen(fam, j, l, q), -e);
            b.k_conjugation(format!("gkm-kprime-f {tag}"), GKM_KP_E, b.kp(i, 1), f_gen(fam, j, l, q), e);
        }
    }
    let v = Scalar::v(q);
    let denom = (v.clone() - v.inv().expect("v is invertible")).inv().expect("v - 1/v is nonzero");
    for &(i, k) in &gens {
        for &(j, l) in &gens {
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            let (x, y) = (e_gen(fam, i, k, q), f_gen(fam, j, l, q));
            let lhs = word_mul(&x, &y).minus(&word_mul(&y, &x));
            let rhs = if i == j && k == l { b.k(i, 1).minus(&b.kp(i, 1)).scale(&denom) } else { GenWord::new() };
            b.push(format!("gkm-e-f i={ni} k={k} j={nj} l={l}"), GKM_E_F, lhs, rhs);
        }
    }
    for i in 0..ctx.n() {
        for &(j, l) in gens.iter().filter(|&&(j, _)| j != i) {
            let big_n = 1 - cartan.entry(i, j);
            let (ni, nj) = (b.name(i).to_string(), b.name(j).to_string());
            let tag = format!("i={ni} j={nj} l={l}");
            let se = serre_sum(&e_gen(fam, i, 1, q), &e_gen(fam, j, l, q), big_n, q);
            let sf = serre_sum(&f_gen(fam, i, 1, q), &f_gen(fam, j, l, q), big_n, q);
            b.push(format!("gkm-serre-e {tag}"), GKM_SERRE_E, se, GenWord::new());
            b.push(format!("gkm-serre-f {tag}"), GKM_SERRE_F, sf, GenWord::new());
        }
    }
    b.out
}

/// Evaluate both sides and compare exactly; resource limits give a skipped row.
pub fn verify_relation(
    ctx: &HallCtx,
    inst: &RelationInstance,
    charge: Option<&Charge>,
    max_degree: usize,
) -> Result<RelationReport> {
    let start = Instant::now();
    let report = |status, witness| RelationReport {
        id: inst.id.clone(),
        anchor: inst.anchor,
        status,
        witness,
        millis: start.elapsed().as_millis(),
    };
    if inst.degree() > max_degree {
        return Ok(report(Status::Skipped(format!("degree {} exceeds {max_degree}", inst.degree())), None));
    }
    let diff = inst.lhs.minus(&inst.rhs);
    match eval_word(ctx, &diff, charge) {
        Ok(d) if d.is_empty() => Ok(report(Status::Pass, None)),
        Ok(d) => Ok(report(Status::Fail, Some(d))),
        Err(e) if e.is_resource() => Ok(report(Status::Skipped(e.to_string()), None)),
        Err(e) => Err(e),
    }
}

/// Verify instances in parallel, preserving their order.
pub fn verify_all(
    ctx: &HallCtx,
    insts: &[RelationInstance],
    charge: Option<&Charge>,
    max_degree: usize,
) -> Result<Vec<RelationReport>> {
    insts.par_iter().map(|r| verify_relation(ctx, r, charge, max_degree)).collect()
}

