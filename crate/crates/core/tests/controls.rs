use std::sync::Arc;

use hallforge::qalg::{bb_relations, eval_word, verify_relation, RelationInstance, Status};
use hallforge::quiver::examples;
use hallforge::reflect::{basis_elements, Reflection};
use hallforge::sdh::{NormalBasisElt, SDHElem};
use hallforge::{HallCtx, Mode, Quiver, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

fn ctx(quiver: Quiver) -> HallCtx {
    HallCtx::new(quiver, 2, Mode::Nilpotent).unwrap()
}

fn splits(total: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut vecs = vec![vec![]];
    for _ in 0..2 * n {
        vecs = vecs
            .into_iter()
            .flat_map(|v: Vec<usize>| (0..=total).map(move |k| [v.clone(), vec![k]].concat()))
            .collect();
    }
    vecs.into_iter()
        .filter(|v| v.iter().sum::<usize>() <= total)
        .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
        .collect()
}

#[test]
fn riedtmann_peng_for_complexes() {
    for quiver in [examples::a2(), examples::jordan()] {
        let c = ctx(quiver);
        let q = c.q();
        let classes: Vec<_> = splits(1, c.n())
            .into_iter()
            .flat_map(|(d0, d1)| c.cx_enumerate(&d0, &d1).unwrap())
            .collect();
        let mut checked = 0;
        for l in &classes {
            for m in &classes {
                let (lr, mr) = (c.cx_representative(l).unwrap(), c.cx_representative(m).unwrap());
                let ratios = c.cx_extension_ratios(&lr, &mr).unwrap();
                let aut_l = c.cx_aut_size_of_class(l).unwrap();
                let aut_m = c.cx_aut_size_of_class(m).unwrap();
                for (e, r) in ratios.iter() {
                    let aut_e = c.cx_aut_size_of_class(e).unwrap();
                    let scale = BigRational::new(BigInt::from(aut_e), BigInt::from(aut_l) * BigInt::from(aut_m));
                    let want = r.clone() * &Scalar::rational(scale, q);
                    let got = c.cx_hall_number(l, m, e).unwrap();
                    assert_eq!(want, Scalar::from_int(got as i64, q), "{l:?} {m:?} {e:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn perturbed_relations_fail_with_exact_witness() {
    for quiver in [examples::a2(), examples::jordan(), examples::loop_arrow()] {
        let c = ctx(quiver);
        let q = c.q();
        let v = Scalar::v(q);
        let mut perturbed = 0;
        for inst in bb_relations(&c, 2) {
            if inst.degree() > 3 {
                continue;
            }
            let lhs = eval_word(&c, &inst.lhs, None).unwrap();
            if lhs.is_empty() {
                continue;
            }
            let bad = RelationInstance { lhs: inst.lhs.scale(&v), ..inst.clone() };
            let report = verify_relation(&c, &bad, None, 4).unwrap();
            assert_eq!(report.status, Status::Fail, "{}", inst.id);
            let want = lhs.scale(&(v.clone() - Scalar::one_in(q)));
            assert_eq!(report.witness.unwrap(), want, "{}", inst.id);
            perturbed += 1;
        }
        assert!(perturbed > 0);
    }
}

#[test]
fn serre_with_classical_coefficient_fails() {
    use hallforge::qalg::{gen, word_product, Family, GenSymbol};
    let c = ctx(examples::a2());
    let q = c.q();
    let e = |i| gen(GenSymbol::E { family: Family::Bozec, i, l: 1 }, q);
    let (ei, ej) = (e(0), e(1));
    let w = word_product(&[ei.clone(), ei.clone(), ej.clone()], q)
        .minus(&word_product(&[ei.clone(), ej.clone(), ei.clone()], q).scale(&Scalar::from_int(2, q)))
        .plus(&word_product(&[ej, ei.clone(), ei], q));
    assert!(!eval_word(&c, &w, None).unwrap().is_empty());
}

#[test]
fn gamma_is_multiplicative_on_small_basis() {
    for (quiver, l) in [(examples::a2(), 1), (examples::a2(), 0), (examples::loop_arrow(), 1)] {
        let src = Arc::new(ctx(quiver));
        let refl = Reflection::new(src.clone(), l).unwrap();
        let q = src.q();
        let size = |b: &NormalBasisElt| (b.a.dimvec().total() + b.b.dimvec().total() + b.alpha.total() + b.beta.total()) as usize;
        let basis: Vec<(usize, SDHElem)> = basis_elements(&src, 2)
            .unwrap()
            .into_iter()
            .map(|b| (size(&b), SDHElem::single(b, Scalar::one_in(q))))
            .collect();
        for (sx, x) in &basis {
            for (_, y) in basis.iter().filter(|(sy, _)| sx + sy <= 2) {
                let lhs = refl.gamma(&src.sdh_mul(x, y).unwrap()).unwrap_or_else(|e| panic!("{l} {x:?} {y:?}: {e}"));
                let rhs = refl.target().sdh_mul(&refl.gamma(x).unwrap(), &refl.gamma(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
