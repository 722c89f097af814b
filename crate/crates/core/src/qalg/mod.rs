//! Generator words for the quantum Borcherds-Bozec algebra and the quantum
//! generalized Kac-Moody algebra, their images in the semi-derived Hall algebra,
//! and exact verification of the defining relations.

mod relations;

pub use relations::{bb_relations, qgkm_relations, verify_relation, verify_all, RelationInstance, RelationReport, Status};

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::{HallCtx, Mode};
use crate::error::{HallError, Result};
use crate::lincomb::LinComb;
use crate::quiver::DimVec;
use crate::repfq::Rep;
use crate::scalars::qfact;
use crate::sdh::SDHElem;
use crate::Scalar;

/// Which algebra a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Quantum Borcherds-Bozec: `e_{il}`, `f_{il}` with levels.
    Bozec,
    /// Quantum generalized Kac-Moody: `E_{il}`, `F_{il}` indexed by the charge.
    Gkm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSymbol {
    /// `K_μ`.
    K(DimVec),
    /// `K'_μ`.
    KPrime(DimVec),
    /// `e_{il}` or `E_{il}`.
    E { family: Family, i: usize, l: u32 },
    /// `f_{il}` or `F_{il}`.
    F { family: Family, i: usize, l: u32 },
    /// Divided power `e_i^{(r)}` (real `i`).
    EDiv { family: Family, i: usize, r: u32 },
    /// Divided power `f_i^{(r)}` (real `i`).
    FDiv { family: Family, i: usize, r: u32 },
}

impl GenSymbol {
    pub fn family(&self) -> Option<Family> {
        match self {
            GenSymbol::K(_) | GenSymbol::KPrime(_) => None,
            GenSymbol::E { family, .. }
            | GenSymbol::F { family, .. }
            | GenSymbol::EDiv { family, .. }
            | GenSymbol::FDiv { family, .. } => Some(*family),
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let upper = |fam: &Family| matches!(fam, Family::Gkm);
        match self {
            GenSymbol::K(mu) => write!(f, "K{mu}"),
            GenSymbol::KPrime(mu) => write!(f, "K'{mu}"),
            GenSymbol::E { family, i, l } => write!(f, "{}[{},{}]", if upper(family) { "E" } else { "e" }, i + 1, l),
            GenSymbol::F { family, i, l } => write!(f, "{}[{},{}]", if upper(family) { "F" } else { "f" }, i + 1, l),
            GenSymbol::EDiv { family, i, r } => write!(f, "{}[{}]^({r})", if upper(family) { "E" } else { "e" }, i + 1),
            GenSymbol::FDiv { family, i, r } => write!(f, "{}[{}]^({r})", if upper(family) { "F" } else { "f" }, i + 1),
        }
    }
}

/// `Q(√q)`-linear combination of generator monomials.
pub type GenWord = LinComb<Vec<GenSymbol>, Scalar>;

pub fn word(symbols: Vec<GenSymbol>, coeff: Scalar) -> GenWord {
    GenWord::single(symbols, coeff)
}

pub fn word_one(q: u32) -> GenWord {
    GenWord::single(vec![], Scalar::one_in(q))
}

pub fn gen(sym: GenSymbol, q: u32) -> GenWord {
    GenWord::single(vec![sym], Scalar::one_in(q))
}

pub fn word_mul(x: &GenWord, y: &GenWord) -> GenWord {
    let mut out = GenWord::new();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            let mut m = mx.clone();
            m.extend(my.iter().cloned());
            out.add_term(m, cx.clone() * cy);
        }
    }
    out
}

pub fn word_product(factors: &[GenWord], q: u32) -> GenWord {
    factors.iter().fold(word_one(q), |acc, f| word_mul(&acc, f))
}

pub fn word_pow(x: &GenWord, r: u32, q: u32) -> GenWord {
    (0..r).fold(word_one(q), |acc, _| word_mul(&acc, x))
}

pub fn render_word(w: &GenWord) -> String {
    if w.is_empty() {
        return "0".into();
    }
    w.iter()
        .map(|(m, c)| {
            let syms: Vec<String> = m.iter().map(|s| s.to_string()).collect();
            format!("({c})·{}", if syms.is_empty() { "1".into() } else { syms.join("·") })
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Algebra involution swapping `e ↔ f` and `K ↔ K'`.
pub fn omega(w: &GenWord) -> GenWord {
    w.iter()
        .map(|(m, c)| {
            let m = m
                .iter()
                .map(|s| match s.clone() {
                    GenSymbol::K(mu) => GenSymbol::KPrime(mu),
                    GenSymbol::KPrime(mu) => GenSymbol::K(mu),
                    GenSymbol::E { family, i, l } => GenSymbol::F { family, i, l },
                    GenSymbol::F { family, i, l } => GenSymbol::E { family, i, l },
                    GenSymbol::EDiv { family, i, r } => GenSymbol::FDiv { family, i, r },
                    GenSymbol::FDiv { family, i, r } => GenSymbol::EDiv { family, i, r },
                })
                .collect();
            (m, c.clone())
        })
        .collect()
}

/// Anti-involution fixing `e`, `f` and swapping `K ↔ K'`; reverses monomials.
pub fn sigma(w: &GenWord) -> GenWord {
    w.iter()
        .map(|(m, c)| {
            let m = m
                .iter()
                .rev()
                .map(|s| match s.clone() {
                    GenSymbol::K(mu) => GenSymbol::KPrime(mu),
                    GenSymbol::KPrime(mu) => GenSymbol::K(mu),
                    other => other,
                })
                .collect();
            (m, c.clone())
        })
        .collect()
}

/// Multiplicities `m_i` and the distinct loop parameters `λ_i^{(l)} ∈ F_q^{g_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    pub m: Vec<usize>,
    pub params: Vec<Vec<Vec<u8>>>,
}

impl Charge {
    /// `m_i` per vertex, choosing the first `m_i` parameter tuples in lexicographic order.
    pub fn new(ctx: &HallCtx, m: Vec<usize>) -> Result<Self> {
        if m.len() != ctx.n() {
            return Err(HallError::InvalidCharge(format!("{} entries for {} vertices", m.len(), ctx.n())));
        }
        let q = ctx.q() as usize;
        let params = m
            .iter()
            .enumerate()
            .map(|(i, &mi)| {
                let g = ctx.quiver().loops_at(i);
                (0..mi)
                    .map(|code| {
                        let mut c = code;
                        let mut tuple = vec![0u8; g];
                        for x in tuple.iter_mut().rev() {
                            *x = (c % q) as u8;
                            c /= q;
                        }
                        tuple
                    })
                    .collect()
            })
            .collect();
        Self::with_params(ctx, m, params)
    }

    pub fn with_params(ctx: &HallCtx, m: Vec<usize>, params: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let bad = |s: String| Err(HallError::InvalidCharge(s));
        if m.len() != ctx.n() || params.len() != ctx.n() {
            return bad("charge length does not match the vertex count".into());
        }
        for i in 0..ctx.n() {
            let g = ctx.quiver().loops_at(i) as u32;
            let name = ctx.quiver().vertex_name(i);
            if m[i] == 0 {
                return bad(format!("m at vertex {name} must be positive"));
            }
            if ctx.cartan().is_real(i) && m[i] != 1 {
                return bad(format!("m at real vertex {name} must be 1"));
            }
            if (m[i] as u128) > (ctx.q() as u128).pow(g) {
                return bad(format!("m at vertex {name} exceeds q^g = {}", (ctx.q() as u128).pow(g)));
            }
            if params[i].len() != m[i] {
                return bad(format!("vertex {name} needs {} parameter tuples", m[i]));
            }
            for (k, t) in params[i].iter().enumerate() {
                if t.len() != g as usize || t.iter().any(|&x| x as u32 >= ctx.q()) {
                    return bad(format!("parameter tuple {t:?} at vertex {name} is not in F_q^{g}"));
                }
                if params[i][..k].contains(t) {
                    return bad(format!("repeated parameter tuple {t:?} at vertex {name}"));
                }
            }
        }
        Ok(Self { m, params })
    }

    /// Charge 1 everywhere.
    pub fn trivial(ctx: &HallCtx) -> Result<Self> {
        Self::new(ctx, vec![1; ctx.n()])
    }

    /// The simple representation `S_i(λ_i^{(l)})`.
    pub fn simple(&self, ctx: &HallCtx, i: usize, l: u32) -> Result<Rep> {
        let tuple = self
            .params
            .get(i)
            .and_then(|p| p.get((l as usize).wrapping_sub(1)))
            .ok_or_else(|| HallError::InvalidCharge(format!("no generator E[{},{l}]", i + 1)))?;
        ctx.simple_with_params(i, tuple)
    }
}

fn check_level(ctx: &HallCtx, i: usize, l: u32) -> Result<()> {
    let real = ctx.cartan().is_real(i);
    if l == 0 || (real && l != 1) {
        return Err(HallError::InvalidClass(format!("({}, {l}) is not a generator label", i + 1)));
    }
    if l > ctx.bounds().max_level {
        return Err(HallError::Resource(format!("level {l} exceeds the configured maximum {}", ctx.bounds().max_level)));
    }
    Ok(())
}

fn require_real(ctx: &HallCtx, i: usize) -> Result<()> {
    if ctx.cartan().is_real(i) {
        Ok(())
    } else {
        Err(HallError::NotReal(ctx.quiver().vertex_name(i).to_string()))
    }
}

fn divided(ctx: &HallCtx, base: &SDHElem, r: u32) -> Result<SDHElem> {
    let p = ctx.sdh_pow(base, r as i64)?;
    Ok(p.scale(&qfact(r, ctx.q()).inv()?))
}

/// Image of a quantum Borcherds-Bozec generator.
pub fn psi_bb(ctx: &HallCtx, sym: &GenSymbol) -> Result<SDHElem> {
    let q = ctx.q();
    let z = DimVec::zero(ctx.n());
    match sym {
        GenSymbol::K(mu) => Ok(ctx.k_elem(mu.clone(), z)),
        GenSymbol::KPrime(mu) => Ok(ctx.k_elem(z, mu.clone())),
        GenSymbol::E { family: Family::Bozec, i, l } | GenSymbol::F { family: Family::Bozec, i, l } => {
            check_level(ctx, *i, *l)?;
            let starred = matches!(sym, GenSymbol::F { .. });
            let class = ctx.classify(&ctx.semisimple(*i, *l as usize))?;
            let l = *l as i64;
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let coeff = Scalar::v_pow(l * l - l, q) * &Scalar::from_int(sign, q);
            Ok(ctx.sdh_bracket_class(&class, starred)?.scale(&coeff))
        }
        GenSymbol::EDiv { family: Family::Bozec, i, r } | GenSymbol::FDiv { family: Family::Bozec, i, r } => {
            require_real(ctx, *i)?;
            let base = if matches!(sym, GenSymbol::EDiv { .. }) {
                GenSymbol::E { family: Family::Bozec, i: *i, l: 1 }
            } else {
                GenSymbol::F { family: Family::Bozec, i: *i, l: 1 }
            };
            divided(ctx, &psi_bb(ctx, &base)?, *r)
        }
        other => Err(HallError::Unsupported(format!("{other} is not a Borcherds-Bozec generator"))),
    }
}

/// Image of a quantum generalized Kac-Moody generator.
pub fn psi_qgkm(ctx: &HallCtx, sym: &GenSymbol, charge: &Charge) -> Result<SDHElem> {
    if ctx.mode() != Mode::Full {
        return Err(HallError::Unsupported("generalized Kac-Moody images need full mode".into()));
    }
    let q = ctx.q();
    let z = DimVec::zero(ctx.n());
    let qm1 = Scalar::rational(BigRational::new(1.into(), BigInt::from(q - 1)), q);
    match sym {
        GenSymbol::K(mu) => Ok(ctx.k_elem(mu.clone(), z)),
        GenSymbol::KPrime(mu) => Ok(ctx.k_elem(z, mu.clone())),
        GenSymbol::E { family: Family::Gkm, i, l } => {
            let class = ctx.classify(&charge.simple(ctx, *i, *l)?)?;
            Ok(ctx.c_elem(class, ctx.zero_class()).scale(&qm1))
        }
        GenSymbol::F { family: Family::Gkm, i, l } => {
            let class = ctx.classify(&charge.simple(ctx, *i, *l)?)?;
            let coeff = -(Scalar::v(q) * &qm1);
            Ok(ctx.c_elem(ctx.zero_class(), class).scale(&coeff))
        }
        GenSymbol::EDiv { family: Family::Gkm, i, r } | GenSymbol::FDiv { family: Family::Gkm, i, r } => {
            require_real(ctx, *i)?;
            let base = if matches!(sym, GenSymbol::EDiv { .. }) {
                GenSymbol::E { family: Family::Gkm, i: *i, l: 1 }
            } else {
                GenSymbol::F { family: Family::Gkm, i: *i, l: 1 }
            };
            divided(ctx, &psi_qgkm(ctx, &base, charge)?, *r)
        }
        other => Err(HallError::Unsupported(format!("{other} is not a generalized Kac-Moody generator"))),
    }
}

/// Evaluate a word by multiplying generator images from left to right.
/// Generalized Kac-Moody symbols require `charge`.
pub fn eval_word(ctx: &HallCtx, w: &GenWord, charge: Option<&Charge>) -> Result<SDHElem> {
    let mut families = w.keys().flatten().filter_map(GenSymbol::family);
    if let Some(first) = families.next() {
        if families.any(|f| f != first) {
            return Err(HallError::Unsupported("word mixes the two generator families".into()));
        }
    }
    let mut images: HashMap<GenSymbol, SDHElem> = HashMap::new();
    let mut out = SDHElem::new();
    for (monomial, coeff) in w.iter() {
        let mut acc = ctx.unit();
        for sym in monomial {
            if !images.contains_key(sym) {
                let img = match sym.family() {
                    Some(Family::Gkm) => {
                        let charge = charge.ok_or_else(|| {
                            HallError::InvalidCharge("generalized Kac-Moody word without a charge".into())
                        })?;
                        psi_qgkm(ctx, sym, charge)?
                    }
                    _ => psi_bb(ctx, sym)?,
                };
                images.insert(sym.clone(), img);
            }
            acc = ctx.sdh_mul(&acc, &images[sym])?;
        }
        out.add_scaled(&acc, coeff);
    }
    Ok(out)
}
