mod common;

use gdalg::builtins;
use gdalg::expand::hurwitz::{hurwitz_phi_check, HurwitzVerdict};
use gdalg::expand::{expand, expand_pois, verify_identity, ExpansionMap, TargetPoly};
use gdalg::nf::{derive_poly, product_poly, ComDer, DiffAlgebra, PoisDer};
use gdalg::poly::TermPoly;
use gdalg::term::{op, var};
use gdalg::{Error, Op, Term};
use proptest::prelude::*;

const GD: &[Op] = &[Op::Circ, Op::Lie];
const GD_DUAL: &[Op] = &[Op::Ast, Op::Star];
const DENDRIFORM: &[Op] = &[Op::Prec, Op::Succ, Op::Mul];

fn gd_image(t: &Term) -> gdalg::LinComb<gdalg::nf::PoisMono> {
    let map = ExpansionMap::gd();
    expand_pois(&TermPoly::from_term(t, &map.source), &map).unwrap()
}

fn com_image(t: &Term) -> gdalg::LinComb<gdalg::nf::ComMono> {
    match expand(t, &ExpansionMap::gd_dual()).unwrap() {
        TargetPoly::Com(p) => p,
        other => panic!("unexpected target {other:?}"),
    }
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn gd_expansion_is_a_homomorphism(a in common::terms(GD, 4, false, 4), b in common::terms(GD, 4, false, 4)) {
        let (ea, eb) = (gd_image(&a), gd_image(&b));
        let circ = product_poly(&PoisDer, Op::Mul, &ea, &derive_poly(&PoisDer, &eb));
        prop_assert_eq!(gd_image(&op(Op::Circ, a.clone(), b.clone())), circ);
        let lie = product_poly(&PoisDer, Op::Lie, &ea, &eb);
        prop_assert_eq!(gd_image(&op(Op::Lie, a, b)), lie);
    }

    #[test]
    fn gd_dual_expansion_is_a_homomorphism(a in common::terms(GD_DUAL, 4, false, 4), b in common::terms(GD_DUAL, 4, false, 4)) {
        let (ea, eb) = (com_image(&a), com_image(&b));
        prop_assert_eq!(com_image(&op(Op::Ast, a.clone(), b.clone())), product_poly(&ComDer, Op::Mul, &ea, &eb));
        prop_assert_eq!(com_image(&op(Op::Star, a, b)), product_poly(&ComDer, Op::Mul, &derive_poly(&ComDer, &ea), &eb));
    }

    #[test]
    fn gd_images_have_weight_minus_one(t in common::terms(GD, 5, false, 5)) {
        for m in gd_image(&t).monomials() {
            prop_assert_eq!(PoisDer.weight(m), -1);
        }
    }

    #[test]
    fn hurwitz_embedding_is_multiplicative(t in common::terms(DENDRIFORM, 3, false, 2)) {
        prop_assume!(t.degree() <= 3);
        prop_assert_eq!(hurwitz_phi_check(3, 4, std::slice::from_ref(&t)).unwrap(), HurwitzVerdict::Holds);
    }
}

#[test]
fn builtin_identities_behave_as_recorded() {
    let mut checked = 0;
    for id in builtins::identities().unwrap() {
        let (Some(map), Some(holds)) = (id.expansion_map(), id.holds) else {
            continue;
        };
        let verdict = verify_identity(&id.poly, &map.unwrap()).unwrap();
        assert_eq!(verdict.holds(), holds, "{}", id.name);
        checked += 1;
    }
    assert!(checked >= 28);
}

#[test]
fn printed_sign_of_first_mixed_identity_fails() {
    let printed = builtins::identity("pgd1-printed").unwrap();
    let fixed = builtins::identity("pgd1").unwrap();
    let map = ExpansionMap::generalized_derived_pois();
    assert!(!verify_identity(&printed.poly, &map).unwrap().holds());
    assert!(verify_identity(&fixed.poly, &map).unwrap().holds());
}

#[test]
fn novikov_commutator_satisfies_gd_and_special_identities() {
    let map = ExpansionMap::nov_lie();
    for name in ["jacobi", "lsymm", "rcomm", "gd1", "s-ident", "s-ident2"] {
        let id = builtins::identity(name).unwrap();
        let p = id.poly.canonicalize(&map.source);
        assert!(verify_identity(&p, &map).unwrap().holds(), "{name}");
    }
}

#[test]
fn antisymmetry_is_not_forced_in_a_magmatic_target() {
    let id = builtins::identity("lie-antisym").unwrap();
    let map = ExpansionMap::by_name("gd", Some("mag")).unwrap();
    let v = verify_identity(&id.poly, &map).unwrap();
    assert!(!v.holds());
}

#[test]
fn non_multilinear_identity_is_rejected() {
    let map = ExpansionMap::gd();
    let p = TermPoly::from_term(&op(Op::Circ, var(1), var(1)), &map.source);
    assert!(matches!(verify_identity(&p, &map), Err(Error::NotMultilinear(_))));
}

#[test]
fn hurwitz_rejects_small_truncation_and_foreign_ops() {
    let t = op(Op::Prec, op(Op::Succ, var(1), var(2)), var(3));
    assert!(matches!(
        hurwitz_phi_check(3, 2, std::slice::from_ref(&t)),
        Err(Error::TruncationTooSmall(_))
    ));
    assert_eq!(hurwitz_phi_check(3, 3, &[t]).unwrap(), HurwitzVerdict::Holds);
    let bad = op(Op::Lie, var(1), var(2));
    assert!(matches!(hurwitz_phi_check(2, 4, &[bad]), Err(Error::UnmappedOp(_))));
}

#[test]
fn hurwitz_holds_on_every_small_term() {
    let terms = gdalg::selftest::hurwitz_sample_terms();
    // 3 + 27 + 2 * 3 * 27 * 3 leaves-and-shapes at degrees 1, 2 and 3.
    assert_eq!(terms.len(), 3 + 27 + 486);
    assert_eq!(hurwitz_phi_check(3, 4, &terms).unwrap(), HurwitzVerdict::Holds);
}
