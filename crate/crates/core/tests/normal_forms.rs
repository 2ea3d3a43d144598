mod common;

use std::collections::{BTreeMap, HashMap};

use gdalg::nf::lie::{is_ls_word, lie_normal_form, ls_words_on, LsWord};
use gdalg::nf::{
    bicom_normal_form, derive_poly, normal_form, poisder_normal_form, product_poly, renormalize, term_weight, BiComDer,
    ComDer, DLetter, DiffAlgebra, PoisDer,
};
use gdalg::poly::Coeff;
use gdalg::term::{d, op, var};
use gdalg::{Op, Term};
use itertools::Itertools;
use num::{One, Zero};
use proptest::prelude::*;

// Free associative algebra on letters d^s(x): an injective target for the
// free Lie algebra via [a, b] -> ab - ba.
type Word = Vec<(u32, u32)>;
type Assoc = BTreeMap<Word, Coeff>;

fn add(acc: &mut Assoc, w: Word, c: Coeff) {
    let e = acc.entry(w.clone()).or_insert_with(Coeff::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, cu) in a {
        for (v, cv) in b {
            add(&mut out, u.iter().chain(v).copied().collect(), cu * cv);
        }
    }
    out
}

fn assoc_d(a: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in a {
        for i in 0..w.len() {
            let mut v = w.clone();
            v[i].0 += 1;
            add(&mut out, v, c.clone());
        }
    }
    out
}

fn commutator_image(t: &Term) -> Assoc {
    match t {
        Term::Var(v) => Assoc::from([(vec![(0, v.0)], Coeff::one())]),
        Term::D(c) => assoc_d(&commutator_image(c)),
        Term::Op(_, l, r) => {
            let (a, b) = (commutator_image(l), commutator_image(r));
            let mut out = assoc_mul(&a, &b);
            for (w, c) in assoc_mul(&b, &a) {
                add(&mut out, w, -c);
            }
            out
        }
    }
}

fn lie_elem_image(e: &gdalg::LinComb<LsWord>) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in e.iter() {
        for (u, cu) in commutator_image(&w.bracketing()) {
            add(&mut out, u, cu * c);
        }
    }
    out
}

fn nf_pois(t: &Term) -> gdalg::LinComb<gdalg::nf::PoisMono> {
    poisder_normal_form(t).unwrap()
}

const LIE: &[Op] = &[Op::Lie];
const POIS: &[Op] = &[Op::Mul, Op::Lie];
const BICOM: &[Op] = &[Op::Ast, Op::Odot];

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn lie_normal_form_agrees_with_commutators(t in common::terms(LIE, 4, true, 5)) {
        let nf = lie_normal_form(&t).unwrap();
        prop_assert_eq!(lie_elem_image(&nf), commutator_image(&t));
        for w in nf.monomials() {
            prop_assert!(is_ls_word(w.letters()));
        }
    }

    #[test]
    fn poisson_axioms_hold_in_normal_forms(a in common::terms(POIS, 3, true, 3),
                                           b in common::terms(POIS, 3, true, 3),
                                           c in common::terms(POIS, 3, true, 3)) {
        let br = |x: Term, y: Term| op(Op::Lie, x, y);
        let mul = |x: Term, y: Term| op(Op::Mul, x, y);
        // Leibniz: {a, bc} = {a, b} c + b {a, c}.
        let lhs = nf_pois(&br(a.clone(), mul(b.clone(), c.clone())));
        let rhs = nf_pois(&mul(br(a.clone(), b.clone()), c.clone())) + nf_pois(&mul(b.clone(), br(a.clone(), c.clone())));
        prop_assert_eq!(lhs, rhs);
        // Jacobi.
        let jac = nf_pois(&br(a.clone(), br(b.clone(), c.clone())))
            + nf_pois(&br(b.clone(), br(c.clone(), a.clone())))
            + nf_pois(&br(c.clone(), br(a.clone(), b.clone())));
        prop_assert!(jac.is_zero());
        // Commutativity and associativity of the product.
        prop_assert_eq!(nf_pois(&mul(a.clone(), b.clone())), nf_pois(&mul(b.clone(), a.clone())));
        prop_assert_eq!(nf_pois(&mul(mul(a.clone(), b.clone()), c.clone())), nf_pois(&mul(a.clone(), mul(b.clone(), c.clone()))));
        // d is a derivation of both operations.
        prop_assert_eq!(nf_pois(&d(mul(a.clone(), b.clone()))),
                        nf_pois(&mul(d(a.clone()), b.clone())) + nf_pois(&mul(a.clone(), d(b.clone()))));
        prop_assert_eq!(nf_pois(&d(br(a.clone(), b.clone()))),
                        nf_pois(&br(d(a.clone()), b.clone())) + nf_pois(&br(a.clone(), d(b.clone()))));
    }

    #[test]
    fn normal_forms_are_idempotent(t in common::terms(POIS, 4, true, 5),
                                   u in common::terms(BICOM, 4, true, 5)) {
        let p = nf_pois(&t);
        prop_assert_eq!(renormalize(&PoisDer, &p).unwrap(), p);
        let q = bicom_normal_form(&u).unwrap();
        prop_assert_eq!(renormalize(&BiComDer, &q).unwrap(), q);
    }

    #[test]
    fn rewriting_preserves_weight(t in common::terms(POIS, 4, true, 5),
                                  u in common::terms(BICOM, 4, true, 5),
                                  v in common::terms(&[Op::Mul], 4, true, 5)) {
        let w = term_weight(&PoisDer, &t);
        for m in nf_pois(&t).monomials() {
            prop_assert_eq!(PoisDer.weight(m), w);
        }
        let w = term_weight(&BiComDer, &u);
        for m in bicom_normal_form(&u).unwrap().monomials() {
            prop_assert_eq!(BiComDer.weight(m), w);
        }
        let w = term_weight(&ComDer, &v);
        for m in normal_form(&ComDer, &v).unwrap().monomials() {
            prop_assert_eq!(ComDer.weight(m), w);
        }
    }

    #[test]
    fn bicom_axioms_hold(a in common::terms(BICOM, 3, true, 3),
                         b in common::terms(BICOM, 3, true, 3),
                         c in common::terms(BICOM, 3, true, 3)) {
        let nf = |t: Term| bicom_normal_form(&t).unwrap();
        let ast = |x: Term, y: Term| op(Op::Ast, x, y);
        let odot = |x: Term, y: Term| op(Op::Odot, x, y);
        prop_assert_eq!(nf(ast(odot(a.clone(), b.clone()), c.clone())), nf(odot(a.clone(), ast(b.clone(), c.clone()))));
        prop_assert_eq!(nf(ast(ast(a.clone(), b.clone()), c.clone())), nf(ast(a.clone(), ast(b.clone(), c.clone()))));
        prop_assert_eq!(nf(odot(a.clone(), b.clone())), nf(odot(b.clone(), a.clone())));
        let pa = nf(a.clone());
        let pb = nf(b.clone());
        prop_assert_eq!(nf(d(ast(a.clone(), b.clone()))),
            product_poly(&BiComDer, Op::Ast, &derive_poly(&BiComDer, &pa), &pb)
                + product_poly(&BiComDer, Op::Ast, &pa, &derive_poly(&BiComDer, &pb)));
    }
}

fn ls_oracle(w: &[DLetter]) -> bool {
    // Greater than every proper suffix in the order with reversed letters and
    // proper prefixes smaller.
    let key = |v: &[DLetter]| v.iter().map(|l| std::cmp::Reverse(*l)).collect::<Vec<_>>();
    !w.is_empty() && (1..w.len()).all(|k| key(w) < key(&w[k..]))
}

#[test]
fn ls_word_test_matches_suffix_characterization() {
    let alphabet: Vec<DLetter> = vec![DLetter::new(0, 1), DLetter::new(0, 2), DLetter::new(1, 1)];
    for len in 1..=6 {
        for w in std::iter::repeat_n(alphabet.iter().copied(), len).multi_cartesian_product() {
            assert_eq!(is_ls_word(&w), ls_oracle(&w), "{w:?}");
        }
    }
}

#[test]
fn multilinear_lie_component_has_factorial_dimension() {
    for n in 1..=6u32 {
        let letters: Vec<DLetter> = (1..=n).map(|x| DLetter::new(0, x)).collect();
        let expected: usize = (1..n as usize).product();
        assert_eq!(ls_words_on(&letters).len(), expected);
    }
    // Every left-normed bracket of x1..x5 reduces into those words.
    let letters: Vec<u32> = (1..=5).collect();
    let mut seen = std::collections::BTreeSet::new();
    for p in letters.iter().permutations(5) {
        let t = p[1..].iter().fold(var(*p[0]), |acc, &&x| op(Op::Lie, acc, var(x)));
        seen.extend(lie_normal_form(&t).unwrap().monomials().cloned());
    }
    assert_eq!(seen.len(), 24);
}

// Union-find over all BiCom trees on distinct letters, joined by one
// application of a defining relation anywhere in the tree.
fn bicom_trees(leaves: &[u32]) -> Vec<Term> {
    if leaves.len() == 1 {
        return vec![var(leaves[0])];
    }
    let mut out = Vec::new();
    for k in 1..leaves.len() {
        for l in bicom_trees(&leaves[..k]) {
            for r in bicom_trees(&leaves[k..]) {
                out.push(op(Op::Ast, l.clone(), r.clone()));
                out.push(op(Op::Odot, l.clone(), r.clone()));
            }
        }
    }
    out
}

fn rewrites(t: &Term) -> Vec<Term> {
    let Term::Op(o, l, r) = t else { return Vec::new() };
    let mut out = vec![op(*o, (**r).clone(), (**l).clone())];
    if let Term::Op(lo, a, b) = &**l {
        if lo == o {
            out.push(op(*o, (**a).clone(), op(*o, (**b).clone(), (**r).clone())));
        }
        if *lo == Op::Odot && *o == Op::Ast {
            out.push(op(Op::Odot, (**a).clone(), op(Op::Ast, (**b).clone(), (**r).clone())));
        }
    }
    for x in rewrites(l) {
        out.push(op(*o, x, (**r).clone()));
    }
    for x in rewrites(r) {
        out.push(op(*o, (**l).clone(), x));
    }
    out
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

#[test]
fn bicom_normal_form_matches_rewrite_closure() {
    for n in 1..=4u32 {
        let mut trees = Vec::new();
        for p in (1..=n).permutations(n as usize) {
            trees.extend(bicom_trees(&p));
        }
        let index: HashMap<Term, usize> = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut parent: Vec<usize> = (0..trees.len()).collect();
        for (i, t) in trees.iter().enumerate() {
            for u in rewrites(t) {
                let j = index[&u];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let mut classes: HashMap<usize, gdalg::LinComb<gdalg::nf::BiComMono>> = HashMap::new();
        let mut forms = std::collections::BTreeSet::new();
        for (i, t) in trees.iter().enumerate() {
            let nf = bicom_normal_form(t).unwrap();
            assert_eq!(nf.len(), 1);
            assert!(nf.iter().next().unwrap().1.is_one());
            let root = find(&mut parent, i);
            if let Some(prev) = classes.get(&root) {
                assert_eq!(prev, &nf, "one class, two normal forms");
            } else {
                assert!(forms.insert(format!("{nf:?}")), "two classes share a normal form");
                classes.insert(root, nf);
            }
        }
        assert_eq!(classes.len(), n as usize, "multilinear BiCom dimension at n = {n}");
    }
}

#[test]
fn poisson_monomials_render_and_reparse() {
    let t = op(Op::Mul, var(1), op(Op::Lie, d(var(2)), var(3)));
    let p = nf_pois(&t);
    for (m, _) in p.iter() {
        let again = gdalg::nf::pois::parse_pois(&m.to_string()).unwrap();
        assert_eq!(again, gdalg::LinComb::monomial(m.clone()));
    }
}
