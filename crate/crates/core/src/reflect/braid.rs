use crate::error::{HallError, Result};
use crate::qalg::{gen, sigma, word, word_mul, word_one, word_pow, Family, GenSymbol, GenWord};
use crate::quiver::{CartanData, DimVec};
use crate::scalars::qfact;
use crate::Scalar;

/// The braid operators `T'_{i,e}` and `T''_{i,e}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidVariant {
    TPrimeOne,
    TDoublePrimeMinusOne,
    TPrimeMinusOne,
    TDoublePrimeOne,
}

impl BraidVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "T'1" | "tprime1" => Ok(Self::TPrimeOne),
            "T''-1" | "tdoubleprime-1" => Ok(Self::TDoublePrimeMinusOne),
            "T'-1" | "tprime-1" => Ok(Self::TPrimeMinusOne),
            "T''1" | "tdoubleprime1" => Ok(Self::TDoublePrimeOne),
            other => Err(HallError::Parse(format!("unknown braid variant {other}"))),
        }
    }
}

fn sign(r: u32) -> i64 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn div_word(family: Family, i: usize, r: u32, f_side: bool, q: u32) -> GenWord {
    match (r, f_side) {
        (0, _) => word_one(q),
        (_, false) => gen(GenSymbol::EDiv { family, i, r }, q),
        (_, true) => gen(GenSymbol::FDiv { family, i, r }, q),
    }
}

/// `T'_{i,1}` (or `𝕋_i` on generalized Kac-Moody symbols) on one generator.
fn t_symbol(cartan: &CartanData, i: usize, sym: &GenSymbol, q: u32) -> Result<GenWord> {
    let n = cartan.n();
    let minus_ai = DimVec::unit(n, i).scale(-1);
    let v = Scalar::v(q);
    let one = Scalar::one_in(q);
    Ok(match sym {
        GenSymbol::K(mu) => gen(GenSymbol::K(cartan.simple_reflection(i, mu)?), q),
        GenSymbol::KPrime(mu) => gen(GenSymbol::KPrime(cartan.simple_reflection(i, mu)?), q),
        GenSymbol::E { family, i: j, l } if *j == i => {
            let f = GenSymbol::F { family: *family, i, l: *l };
            let c = if *family == Family::Bozec { v } else { -one };
            word(vec![GenSymbol::KPrime(minus_ai), f], c)
        }
        GenSymbol::F { family, i: j, l } if *j == i => {
            let e = GenSymbol::E { family: *family, i, l: *l };
            let c = if *family == Family::Bozec { v.inv()? } else { -one };
            word(vec![e, GenSymbol::K(minus_ai)], c)
        }
        GenSymbol::E { family, i: j, l } | GenSymbol::F { family, i: j, l } => {
            let f_side = matches!(sym, GenSymbol::F { .. });
            let scale = if *family == Family::Bozec { *l as i64 } else { 1 };
            let top = (-scale * cartan.entry(i, *j)) as u32;
            let mid = gen(sym.clone(), q);
            let mut out = GenWord::new();
            for r in 0..=top {
                let s = top - r;
                let (c, left, right) = if f_side && *family == Family::Gkm {
                    (Scalar::v_pow(-(r as i64), q), div_word(*family, i, s, true, q), div_word(*family, i, r, true, q))
                } else {
                    (Scalar::v_pow(r as i64, q), div_word(*family, i, r, f_side, q), div_word(*family, i, s, f_side, q))
                };
                let term = word_mul(&word_mul(&left, &mid), &right);
                out.add_scaled(&term, &(c * Scalar::from_int(sign(r), q)));
            }
            out
        }
        GenSymbol::EDiv { family, i: k, r } | GenSymbol::FDiv { family, i: k, r } => {
            let base = if matches!(sym, GenSymbol::EDiv { .. }) {
                GenSymbol::E { family: *family, i: *k, l: 1 }
            } else {
                GenSymbol::F { family: *family, i: *k, l: 1 }
            };
            let image = t_symbol(cartan, i, &base, q)?;
            word_pow(&image, *r, q).scale(&qfact(*r, q).inv()?)
        }
    })
}

fn t_prime(cartan: &CartanData, i: usize, w: &GenWord, q: u32) -> Result<GenWord> {
    let mut out = GenWord::new();
    for (monomial, c) in w.iter() {
        let mut acc = word_one(q);
        for sym in monomial {
            acc = word_mul(&acc, &t_symbol(cartan, i, sym, q)?);
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Apply a braid operator at the real vertex `i` by substitution on every generator.
pub fn braid_t(cartan: &CartanData, i: usize, w: &GenWord, variant: BraidVariant, q: u32) -> Result<GenWord> {
    if i >= cartan.n() || !cartan.is_real(i) {
        return Err(HallError::NotReal(format!("vertex index {i}")));
    }
    match variant {
        BraidVariant::TPrimeOne => t_prime(cartan, i, w, q),
        BraidVariant::TDoublePrimeMinusOne => Ok(sigma(&t_prime(cartan, i, &sigma(w), q)?)),
        BraidVariant::TPrimeMinusOne | BraidVariant::TDoublePrimeOne => Err(HallError::Unsupported(
            "this variant is defined through the bar involution, which does not exist at a fixed q".into(),
        )),
    }
}
