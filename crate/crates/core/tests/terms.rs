mod common;

use gdalg::perm::{act_permutation, Permutation};
use gdalg::poly::{parse_poly, rat, TermPoly};
use gdalg::term::{canonical_monomials, multilinear_monomials, op, parse_term, var, Var};
use gdalg::{Error, Op, Signature, Symmetry, Term};
use proptest::prelude::*;

const FREE_OPS: &[Op] = &[Op::Circ, Op::Lie, Op::Mul];

fn free_sig() -> Signature {
    Signature::of(
        &[
            (Op::Circ, Symmetry::None),
            (Op::Lie, Symmetry::None),
            (Op::Mul, Symmetry::None),
        ],
        true,
    )
}

fn gd_sig() -> Signature {
    Signature::of(&[(Op::Lie, Symmetry::Antisymmetric), (Op::Circ, Symmetry::None)], false)
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn double_factorial(n: i64) -> u128 {
    (1..=n.max(0)).rev().step_by(2).map(|k| k as u128).product()
}

#[test]
fn parse_rejects_bad_input() {
    let sig = gd_sig();
    assert!(matches!(parse_term("(circ x1)", &sig), Err(Error::Arity { .. })));
    assert!(matches!(
        parse_term("(prec x1 x2)", &sig),
        Err(Error::OpNotInSignature(_))
    ));
    assert!(matches!(parse_term("(frob x1 x2)", &sig), Err(Error::UnknownOp(_))));
    assert!(matches!(parse_term("(d x1)", &sig), Err(Error::DerivationNotAllowed)));
    assert!(matches!(parse_term("(circ x1 x2", &sig), Err(Error::Syntax { .. })));
}

#[test]
fn antisymmetric_square_vanishes() {
    let sig = gd_sig();
    let p = parse_poly("(lie (circ x1 x2) (circ x1 x2))", &sig).unwrap();
    assert!(p.is_zero());
    let q = parse_poly("(lie x2 x1) + (lie x1 x2)", &sig).unwrap();
    assert!(q.is_zero());
}

#[test]
fn monomial_counts_match_closed_forms() {
    // k operations without symmetry: k^(n-1) * n! * Catalan(n-1).
    let sig = free_sig();
    for n in 1..=4usize {
        let catalan = factorial(2 * (n as u128 - 1)) / (factorial(n as u128 - 1) * factorial(n as u128));
        let expected = 3u128.pow(n as u32 - 1) * factorial(n as u128) * catalan;
        assert_eq!(
            multilinear_monomials(&sig, n).unwrap().len() as u128,
            expected,
            "n = {n}"
        );
    }
    // One commutative operation: (2n-3)!!.
    let com = Signature::of(&[(Op::Mul, Symmetry::Symmetric)], false);
    for n in 1..=6usize {
        assert_eq!(
            canonical_monomials(&com, n).unwrap().len() as u128,
            double_factorial(2 * n as i64 - 3),
            "n = {n}"
        );
    }
    // GD: 2^(n-1) * n! * Catalan(n-1) / 2^(lie nodes) summed; at n = 3 it is 27.
    assert_eq!(canonical_monomials(&gd_sig(), 3).unwrap().len(), 27);
    assert_eq!(canonical_monomials(&gd_sig(), 4).unwrap().len(), 405);
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn print_parse_round_trip(t in common::terms(FREE_OPS, 4, true, 5)) {
        let text = t.to_string();
        prop_assert_eq!(parse_term(&text, &free_sig()).unwrap(), t);
    }

    #[test]
    fn poly_print_parse_round_trip(a in common::terms(&[Op::Lie, Op::Circ], 3, false, 4),
                                   b in common::terms(&[Op::Lie, Op::Circ], 3, false, 4),
                                   c in -5i64..5) {
        let sig = gd_sig();
        let mut p = TermPoly::from_term(&a, &sig);
        p.add_canonical(&b, rat(c), &sig);
        prop_assert_eq!(parse_poly(&p.to_string(), &sig).unwrap(), p);
    }

    #[test]
    fn canonical_is_idempotent_and_respects_symmetry(a in common::terms(&[Op::Lie, Op::Circ], 4, false, 4),
                                                     b in common::terms(&[Op::Lie, Op::Circ], 4, false, 4)) {
        let sig = gd_sig();
        if let Some((s, c)) = a.canonical(&sig) {
            prop_assert_eq!(c.canonical(&sig), Some((1, c.clone())));
            prop_assert!(s == 1 || s == -1);
        }
        let ab = TermPoly::from_term(&op(Op::Lie, a.clone(), b.clone()), &sig);
        let ba = TermPoly::from_term(&op(Op::Lie, b.clone(), a.clone()), &sig);
        prop_assert_eq!(ab, -ba);
    }

    #[test]
    fn permutation_action_is_a_left_action(i in 0..405usize, j in 0..405usize, c in -3i64..4,
                                           s in 0..24usize, u in 0..24usize) {
        let sig = gd_sig();
        let basis = canonical_monomials(&sig, 4).unwrap();
        let all = Permutation::all(4);
        let (sigma, tau) = (&all[s], &all[u]);
        let mut p = TermPoly::from_term(&basis[i], &sig);
        p.add_canonical(&basis[j], rat(c), &sig);
        let step = act_permutation(&act_permutation(&p, sigma, &sig).unwrap(), tau, &sig).unwrap();
        let once = act_permutation(&p, &tau.compose(sigma), &sig).unwrap();
        prop_assert_eq!(step, once);
        prop_assert_eq!(act_permutation(&p, &Permutation::identity(4), &sig).unwrap(), p);
    }

    #[test]
    fn substitution_adds_degrees(t in common::terms(FREE_OPS, 3, true, 4),
                                 r in common::terms(FREE_OPS, 2, false, 3)) {
        let mut assignment = std::collections::BTreeMap::new();
        for v in t.leaves() {
            assignment.insert(v, r.clone());
        }
        let out = t.substitute(&assignment).unwrap();
        prop_assert_eq!(out.degree(), t.degree() * r.degree());
        prop_assert_eq!(out.d_degree(), t.d_degree() + t.degree() * r.d_degree());
    }
}

#[test]
fn missing_assignment_is_reported() {
    let t = op(Op::Circ, var(1), var(2));
    let assignment = [(Var(1), var(3))].into_iter().collect();
    assert!(matches!(t.substitute(&assignment), Err(Error::MissingAssignment(2))));
    let partial: Term = t.substitute_partial(&assignment);
    assert_eq!(partial, op(Op::Circ, var(3), var(2)));
}

#[test]
fn permutation_group_basics() {
    let all = Permutation::all(4);
    assert_eq!(all.len(), 24);
    for p in &all {
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        for q in &all {
            assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
        }
    }
    assert_eq!(Permutation::transposition(3, 1, 3).images(), &[3, 2, 1]);
    assert!(Permutation::new(vec![1, 1, 2]).is_err());
}
