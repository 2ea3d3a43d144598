mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use gdalg::builtins;
use gdalg::expand::{verify_identity, ExpansionMap, Target};
use gdalg::operad::{
    component_basis, gd_relation_vectors, koszul_dual_degree3, span_equal, tideal_membership, white,
    white_product_degree3, Certificate, Component, Presentation,
};
use gdalg::perm::{act_permutation, Permutation};
use gdalg::poly::{rat, Coeff, TermPoly};
use gdalg::{Error, Op};
use num::{Signed, Zero};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn component_dimensions_follow_known_sequences() {
    type Formula = fn(usize) -> usize;
    let cases: [(&str, Formula); 8] = [
        ("lie", |n| factorial(n - 1)),
        ("com", |_| 1),
        ("as", factorial),
        ("pois", factorial),
        ("nov", |n| binomial(2 * n - 2, n - 1)),
        ("rnov", |n| binomial(2 * n - 2, n - 1)),
        ("gd-dual", |n| binomial(2 * n - 1, n)),
        ("bicom", |n| n),
    ];
    for (name, f) in cases {
        let pres = builtins::presentation(name).unwrap();
        for n in 1..=4 {
            assert_eq!(component_basis(&pres, n).unwrap().dim(), f(n), "{name}({n})");
        }
    }
    let gd = builtins::presentation("gd").unwrap();
    let dims: Vec<usize> = (1..=4).map(|n| component_basis(&gd, n).unwrap().dim()).collect();
    assert_eq!(dims, [1, 3, 17, 140]);
    assert!(matches!(component_basis(&gd, 5), Err(Error::UnsupportedDegree(5))));
}

/// Dense rank over the rationals, written out here as an oracle.
fn dense_rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn gd_relation_rows_close_up_to_the_cubic_component() {
    let rows = gd_relation_vectors().unwrap();
    let dense: Vec<Vec<Coeff>> = rows.iter().map(|r| gdalg::operad::o3::dense(&r.vector, 27)).collect();
    assert_eq!(dense_rank(dense.clone()), 10);
    // Every entry is 0 or +-1 and each row is nonzero.
    for row in &dense {
        assert!(row.iter().all(|c| c.is_zero() || c.abs() == rat(1)));
        assert!(row.iter().any(|c| !c.is_zero()));
    }
    let gd = builtins::presentation("gd").unwrap();
    assert_eq!(component_basis(&gd, 3).unwrap().dim(), 27 - 10);
}

fn dual_span_equal(a: &Presentation, b: &Presentation) -> bool {
    let theirs: Vec<TermPoly> = b.relations.iter().map(|r| r.canonicalize(&a.sig)).collect();
    span_equal(&a.sig, 3, &a.relations, &theirs).unwrap()
}

#[test]
fn koszul_duality_is_an_involution() {
    for name in ["lie", "com", "as", "nov", "gd", "gd-dual", "pois", "rnov", "bicom"] {
        let p = builtins::presentation(name).unwrap();
        let k = koszul_dual_degree3(&p).unwrap();
        assert_eq!(k.relation_dim + k.orthogonal_dim, k.total_dim, "{name}");
        let kk = koszul_dual_degree3(&k.dual).unwrap();
        assert_eq!(kk.dual.sig, p.sig, "{name}");
        assert!(dual_span_equal(&kk.dual, &p), "{name}");
        // Dual dimensions at degree 3 are complementary.
        let d3 = component_basis(&k.dual, 3).unwrap().dim();
        assert_eq!(d3, k.relation_dim, "{name}");
    }
}

#[test]
fn known_duals() {
    let gd = koszul_dual_degree3(&builtins::presentation("gd").unwrap()).unwrap();
    assert_eq!((gd.total_dim, gd.relation_dim, gd.orthogonal_dim), (27, 10, 17));
    assert!(dual_span_equal(&gd.dual, &builtins::presentation("gd-dual").unwrap()));
    let nov = koszul_dual_degree3(&builtins::presentation("nov").unwrap()).unwrap();
    assert!(dual_span_equal(&nov.dual, &builtins::presentation("rnov").unwrap()));
    let lie = koszul_dual_degree3(&builtins::presentation("lie").unwrap()).unwrap();
    let com = builtins::presentation("com")
        .unwrap()
        .rename_ops(&BTreeMap::from([(Op::Mul, Op::Ast)]))
        .unwrap();
    assert!(dual_span_equal(&lie.dual, &com));
    let nilp = builtins::presentation("gd-3nilp").unwrap();
    assert!(koszul_dual_degree3(&Presentation::new("x", nilp.sig.clone(), vec![])).is_ok());
}

#[test]
fn white_product_relations_hold_in_the_realizations() {
    let p = |n: &str| builtins::presentation(n).unwrap();
    let pg = white_product_degree3(&p("pois"), &p("gd-dual"), &white::pois_gd_dual_generators()).unwrap();
    assert_eq!(
        (pg.free_dim, pg.image_dim, pg.ambient_dim, pg.relations.len()),
        (108, 60, 60, 48)
    );
    let map = ExpansionMap::generalized_derived_pois();
    for r in &pg.relations {
        assert!(verify_identity(r, &map).unwrap().holds(), "{r}");
    }
    let an = white_product_degree3(&p("as"), &p("nov"), &white::as_nov_generators()).unwrap();
    assert_eq!(an.free_dim - an.image_dim, an.relations.len());
    let map = ExpansionMap::derived(Target::As);
    for r in &an.relations {
        assert!(verify_identity(r, &map).unwrap().holds(), "{r}");
    }
    let ln = white_product_degree3(&p("lie"), &p("nov"), &white::lie_nov_generators()).unwrap();
    assert!(ln.relations.is_empty());
    assert_eq!(ln.free_dim, 12);
}

#[test]
fn presentation_files_fold_quadratic_relations() {
    let text = r#"{"name": "t", "ops": [{"name": "mul", "symmetry": "none"}],
        "relations": ["(mul x1 x2) - (mul x2 x1)", "(mul (mul x1 x2) x3) - (mul x1 (mul x2 x3))"]}"#;
    let p = Presentation::from_json(text).unwrap();
    assert_eq!(p.sig.symmetry(Op::Mul), Some(gdalg::Symmetry::Symmetric));
    assert_eq!(component_basis(&p, 3).unwrap().dim(), 1);
    let bad = r#"{"ops": [{"name": "mul", "symmetry": "antisymmetric"}], "relations": ["(mul x1 x2) - (mul x2 x1)"]}"#;
    assert!(Presentation::from_json(bad).is_err());
}

#[test]
fn special_identities_are_not_consequences() {
    let gd = builtins::presentation("gd").unwrap();
    let id = |n: &str| builtins::identity(n).unwrap().poly;
    let r = tideal_membership(&id("s-ident"), &gd, &[], 4).unwrap();
    assert!(!r.member && r.verified);
    let Certificate::NonMember { functional, value } = &r.certificate else {
        panic!()
    };
    assert!(!value.is_zero());
    // Independent re-check: the functional kills every generator.
    let comp = Component::build(&gd, &[], 4, r.multidegree.as_ref(), false).unwrap();
    let eval = |p: &TermPoly| -> Coeff {
        functional
            .iter()
            .map(|(t, c)| c * p.coeff(t))
            .fold(Coeff::zero(), |a, b| a + b)
    };
    for g in &comp.generators {
        assert!(eval(&g.poly).is_zero(), "{}", g.label);
    }
    assert_eq!(&eval(&id("s-ident").canonicalize(&gd.sig)), value);

    let r2 = tideal_membership(&id("s-ident2"), &gd, &[("s".into(), id("s-ident"))], 4).unwrap();
    assert!(!r2.member);
    let nilp = builtins::presentation("gd-3nilp").unwrap();
    assert!(!tideal_membership(&id("s2-nilp2"), &nilp, &[], 4).unwrap().member);
    let g1 = tideal_membership(&id("gd1"), &gd, &[], 3).unwrap();
    assert!(g1.member);
    assert!(matches!(
        tideal_membership(&id("gd1"), &gd, &[], 4),
        Err(Error::DegreeMismatch { .. })
    ));
}

fn gd4() -> &'static Component {
    static C: OnceLock<Component> = OnceLock::new();
    C.get_or_init(|| Component::build(&builtins::presentation("gd").unwrap(), &[], 4, None, false).unwrap())
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn consequence_space_is_equivariant(g in 0..10_000usize, s in 0..24usize) {
        let comp = gd4();
        let gd = builtins::presentation("gd").unwrap();
        let gen = &comp.generators[g % comp.generators.len()];
        let moved = act_permutation(&gen.poly, &Permutation::all(4)[s], &gd.sig).unwrap();
        prop_assert!(comp.space.contains(&comp.index.vector(&moved).unwrap()));
    }

    #[test]
    fn membership_certificates_are_sound(picks in prop::collection::vec((0..10_000usize, -4i64..5), 1..4),
                                         extra in 0..10_000usize, perturb in any::<bool>()) {
        let comp = gd4();
        let gd = builtins::presentation("gd").unwrap();
        let first = &comp.generators[picks[0].0 % comp.generators.len()];
        let md = first.poly.op_multidegree().unwrap();
        let same: Vec<&TermPoly> = comp.generators.iter().map(|g| &g.poly).filter(|p| p.op_multidegree().as_ref() == Some(&md)).collect();
        let mut cand = TermPoly::zero();
        for (i, c) in &picks {
            cand.add_scaled(same[i % same.len()], &rat(*c));
        }
        if perturb {
            let normal: Vec<_> = comp.normal_monomials().into_iter().filter(|t| t.op_counts() == md).collect();
            cand.add_term(normal[extra % normal.len()].clone(), rat(1));
        }
        prop_assume!(!cand.is_zero());
        let r = tideal_membership(&cand, &gd, &[], 4).unwrap();
        prop_assert!(r.verified);
        prop_assert_eq!(r.member, !perturb);
    }
}
