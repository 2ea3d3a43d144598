//! Built-in consistency checks exposed through `gdalg selftest` and the C
//! ABI. Each check recomputes a published value or a structural property
//! and compares exactly.

use std::collections::BTreeMap;
use std::time::Instant;

use num::BigInt;
use serde_json::{json, Value};

use crate::builtins;
use crate::error::Result;
use crate::expand::hurwitz::{hurwitz_phi_check, HurwitzVerdict};
use crate::expand::{expand_pois, verify_identity, ExpansionMap};
use crate::nf::lie::ls_words_on;
use crate::nf::{normal_form, renormalize, DLetter, PoisDer};
use crate::operad::{
    gd_relation_vectors, koszul_dual_degree3, span_equal, tideal_membership, white, white_product_degree3, Presentation,
};
use crate::poly::{rat, TermPoly};
use crate::sgd::{gd_preimage, ls_factorization_count, lyndon_count_l, sgd_dim, sgd_monomials};
use crate::term::{op, var, Op, Signature, Symmetry, Term};

/// The GD relation matrix in the `a_1..a_27` basis.
pub const GD_MATRIX: [[i8; 27]; 10] = [
    [
        1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0,
    ],
    [
        0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0,
    ],
    [
        0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0,
    ],
    [
        0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,
    ],
    [
        0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 0, 0,
    ],
    [
        0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0,
    ],
];

/// `dim SGD(n)` for `n = 1..7`.
pub const SGD_TABLE: [u64; 7] = [1, 3, 17, 130, 1219, 13391, 167656];

#[derive(Clone, Debug)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

fn run(criterion: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        criterion,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn dimension_table() -> Result<(bool, String)> {
    let got: Vec<BigInt> = (1..=7).map(sgd_dim).collect::<Result<_>>()?;
    let ok = got.iter().zip(SGD_TABLE).all(|(a, b)| *a == BigInt::from(b));
    Ok((ok, format!("{got:?}")))
}

fn enumeration(max_n: usize) -> Result<(bool, String)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 1..=max_n {
        let count = sgd_monomials(n)?.len();
        ok &= BigInt::from(count) == sgd_dim(n)?;
        rows.push(count);
    }
    Ok((ok, format!("{rows:?}")))
}

fn identities() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for id in builtins::identities()? {
        let (Some(map), Some(holds)) = (id.expansion_map(), id.holds) else {
            continue;
        };
        count += 1;
        if verify_identity(&id.poly, &map?)?.holds() != holds {
            bad.push(id.name);
        }
    }
    Ok((bad.is_empty(), format!("{count} identities, mismatches {bad:?}")))
}

fn matrix() -> Result<(bool, String)> {
    let rows = gd_relation_vectors()?;
    let mut ok = rows.len() == GD_MATRIX.len();
    for (r, expected) in rows.iter().zip(GD_MATRIX) {
        let dense = crate::operad::o3::dense(&r.vector, 27);
        ok &= dense.iter().zip(expected).all(|(a, b)| *a == rat(b as i64));
    }
    Ok((ok, format!("{} rows", rows.len())))
}

fn renamed(p: &Presentation, pairs: &[(Op, Op)]) -> Result<Presentation> {
    p.rename_ops(&pairs.iter().copied().collect::<BTreeMap<_, _>>())
}

fn same_span(a: &Presentation, b: &Presentation) -> Result<bool> {
    let sort = |s: &Signature| {
        let mut v = s.ops().to_vec();
        v.sort_by_key(|(o, _)| *o);
        v
    };
    if sort(&a.sig) != sort(&b.sig) {
        return Ok(false);
    }
    span_equal(&a.sig, 3, &a.relations, &b.relations)
}

fn koszul() -> Result<(bool, String)> {
    let lie = koszul_dual_degree3(&builtins::presentation("lie")?)?;
    let a = same_span(
        &renamed(&lie.dual, &[(Op::Ast, Op::Mul)])?,
        &builtins::presentation("com")?,
    )?;
    let asd = koszul_dual_degree3(&builtins::presentation("as")?)?;
    let b = same_span(&asd.dual, &builtins::presentation("as")?)?;
    let gd = koszul_dual_degree3(&builtins::presentation("gd")?)?;
    let np: Vec<TermPoly> = ["np1", "np2", "np3", "np4", "np5"]
        .iter()
        .map(|n| builtins::identity(n).map(|i| i.poly.canonicalize(&gd.dual.sig)))
        .collect::<Result<_>>()?;
    let c = same_span(&gd.dual, &Presentation::new("np", gd.dual.sig.clone(), np))?;
    let d = gd.relation_dim + gd.orthogonal_dim == 27;
    Ok((
        a && b && c && d,
        format!(
            "lie->com {a}, as->as {b}, gd->np {c}, dim U + dim U^perp = {} + {}",
            gd.relation_dim, gd.orthogonal_dim
        ),
    ))
}

fn identity_span(sig: &Signature, names: &[&str]) -> Result<Presentation> {
    let rels = names
        .iter()
        .map(|n| builtins::identity(n).map(|i| i.poly.canonicalize(sig)))
        .collect::<Result<_>>()?;
    Ok(Presentation::new("expected", sig.clone(), rels))
}

/// Identities expected to span the relations of the Pois-GD! white product.
pub const PGD_LIST: [&str; 15] = [
    "pgd-assoc",
    "pgd-jacobi",
    "pgd-leibniz",
    "pgd-lsymm",
    "pgd-rcomm",
    "pgd1",
    "pgd2",
    "pgd21",
    "pgd22",
    "pgd3",
    "pgd4",
    "pgd5",
    "pgd6",
    "pgd7",
    "pgd8",
];

fn white_products() -> Result<(bool, String)> {
    let p = |n: &str| builtins::presentation(n);
    let ln = white_product_degree3(&p("lie")?, &p("nov")?, &white::lie_nov_generators())?;
    let a = ln.relations.is_empty();
    let an = white_product_degree3(&p("as")?, &p("nov")?, &white::as_nov_generators())?;
    let b = same_span(&an.presentation("w"), &identity_span(&an.sig, &["l-alg", "lod-der"])?)?;
    let pg = white_product_degree3(&p("pois")?, &p("gd-dual")?, &white::pois_gd_dual_generators())?;
    let c = same_span(&pg.presentation("w"), &identity_span(&pg.sig, &PGD_LIST)?)?;
    Ok((
        a && b && c,
        format!(
            "lie.nov relations {}, as.nov span {b} ({} relations), pois.gd! span {c} ({} relations)",
            ln.relations.len(),
            an.relations.len(),
            pg.relations.len()
        ),
    ))
}

fn membership() -> Result<(bool, String)> {
    let gd = builtins::presentation("gd")?;
    let id = |n: &str| builtins::identity(n).map(|i| i.poly);
    let s1 = tideal_membership(&id("s-ident")?, &gd, &[], 4)?;
    let s2 = tideal_membership(&id("s-ident2")?, &gd, &[("s-ident".into(), id("s-ident")?)], 4)?;
    let nil = tideal_membership(&id("s2-nilp2")?, &builtins::presentation("gd-3nilp")?, &[], 4)?;
    let g1 = tideal_membership(&id("gd1")?, &gd, &[], 3)?;
    let ok = !s1.member && !s2.member && !nil.member && g1.member && s1.verified && s2.verified && nil.verified;
    Ok((
        ok,
        format!(
            "s-ident member {}, s-ident2 member {}, s2-nilp2 member {}, gd1 member {}",
            s1.member, s2.member, nil.member, g1.member
        ),
    ))
}

fn preimages() -> Result<(bool, String)> {
    let map = ExpansionMap::gd();
    let mut count = 0;
    for n in 1..=4 {
        for a in sgd_monomials(n)? {
            let f = gd_preimage(&a)?;
            if expand_pois(&f, &map)? != crate::poly::LinComb::monomial(a.clone()) {
                return Ok((false, format!("round trip failed for {a}")));
            }
            count += 1;
        }
    }
    Ok((count == 151, format!("{count} monomials")))
}

fn counting(max_n: usize) -> Result<(bool, String)> {
    let bicom_sig = Signature::of(
        &[(Op::Ast, Symmetry::Symmetric), (Op::Odot, Symmetry::Symmetric)],
        false,
    );
    let mut ok = true;
    for n in 1..=6 {
        for k in 1..=n {
            ok &= BigInt::from(ls_factorization_count(n, k)) == lyndon_count_l(n, k)?;
        }
        let letters: Vec<DLetter> = (1..=n as u32).map(|x| DLetter::new(0, x)).collect();
        ok &= ls_words_on(&letters).len() == (1..n).product::<usize>();
        let central = num::integer::binomial(2 * n - 1, n);
        ok &= crate::sgd::gd_dual_bicom_monomials(n)?.len() == central
            && crate::sgd::gd_dual_monomials(n)?.len() == central;
        if n <= max_n {
            let mut span = std::collections::BTreeSet::new();
            for t in crate::term::canonical_monomials(&bicom_sig, n)? {
                span.extend(crate::nf::bicom_normal_form(&t)?.monomials().cloned());
            }
            ok &= span.len() == n;
        }
    }
    Ok((ok, format!("n <= 6, multilinear BiCom n <= {max_n}")))
}

/// Every degree <= 3 term over `x1..x3` in `prec`, `succ`, `mul`.
pub fn hurwitz_sample_terms() -> Vec<Term> {
    let ops = [Op::Prec, Op::Succ, Op::Mul];
    let leaves: Vec<Term> = (1..=3).map(var).collect();
    let mut by_deg: Vec<Vec<Term>> = vec![Vec::new(), leaves.clone()];
    for d in 2..=3 {
        let mut cur = Vec::new();
        for k in 1..d {
            for l in &by_deg[k] {
                for r in &by_deg[d - k] {
                    for o in ops {
                        cur.push(op(o, l.clone(), r.clone()));
                    }
                }
            }
        }
        by_deg.push(cur);
    }
    by_deg.concat()
}

fn properties() -> Result<(bool, String)> {
    let terms = hurwitz_sample_terms();
    let h = hurwitz_phi_check(3, 4, &terms)?;
    let mut ok = h == HurwitzVerdict::Holds;
    // Idempotence: basis monomials are their own normal forms.
    for n in 1..=4 {
        for a in sgd_monomials(n)? {
            let p = crate::poly::LinComb::monomial(a.clone());
            ok &= renormalize(&PoisDer, &p)? == p;
            ok &= normal_form(&PoisDer, &a.to_term())? == p;
        }
    }
    // S4-equivariance of the degree-4 consequence space of GD.
    let gd = builtins::presentation("gd")?;
    let comp = crate::operad::Component::build(&gd, &[], 4, None, false)?;
    let mut space = comp.space.clone();
    let rank = space.rank();
    for g in &comp.generators {
        for p in crate::perm::Permutation::all(4).iter().step_by(5) {
            let moved = crate::perm::act_permutation(&g.poly, p, &gd.sig)?;
            space.insert(comp.index.vector(&moved)?);
        }
    }
    ok &= space.rank() == rank;
    Ok((ok, format!("{} Hurwitz terms, GD(4) = {}", terms.len(), comp.dim())))
}

/// Runs every check; `slow` adds the degree-6 enumeration.
pub fn run_all(slow: bool) -> Vec<Check> {
    vec![
        run(1, "dimension table", dimension_table),
        run(2, "enumeration agrees with formula", || {
            enumeration(if slow { 6 } else { 5 })
        }),
        run(3, "identity verifier", identities),
        run(4, "GD relation matrix", matrix),
        run(5, "Koszul duals", koszul),
        run(6, "white products", white_products),
        run(7, "membership certificates", membership),
        run(8, "pre-image round trip", preimages),
        run(9, "counting oracles", || counting(if slow { 6 } else { 5 })),
        run(10, "structural properties", properties),
    ]
}
