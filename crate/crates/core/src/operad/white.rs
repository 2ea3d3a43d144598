//! Manin white products at degree 3.
//!
//! A generator `w` of the white product is a pure tensor `p (x) q` of
//! degree-2 elements of `P` and `Q`. A tree monomial in the generators maps
//! to `P-tree (x) Q-tree` in `P(3) (x) Q(3)`, where each side substitutes
//! the corresponding factor at every node. The degree-3 relations are the
//! kernel of this map on the free component.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{from_entries, RowSpace, SparseVec};
use crate::poly::{parse_poly, Coeff, TermPoly};
use crate::term::{canonical_monomials, Op, Signature, Symmetry, Term, Var};

use super::component::{Component, MonomialIndex};
use super::Presentation;

/// `op(x1, x2) = left (x) right`, with `left`, `right` degree-2
/// polynomials in `x1, x2`.
#[derive(Clone, Debug)]
pub struct WhiteGenerator {
    pub op: Op,
    pub symmetry: Symmetry,
    pub left: TermPoly,
    pub right: TermPoly,
}

impl WhiteGenerator {
    pub fn parse(op: Op, symmetry: Symmetry, left: &str, p: &Signature, right: &str, q: &Signature) -> Result<Self> {
        Ok(WhiteGenerator {
            op,
            symmetry,
            left: parse_poly(left, p)?,
            right: parse_poly(right, q)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct WhiteProduct {
    pub sig: Signature,
    /// Number of tree monomials of degree 3 over the generators.
    pub free_dim: usize,
    /// Rank of the map into `P(3) (x) Q(3)`.
    pub image_dim: usize,
    /// `dim P(3) * dim Q(3)`.
    pub ambient_dim: usize,
    /// Basis of the degree-3 relation space.
    pub relations: Vec<TermPoly>,
}

impl WhiteProduct {
    pub fn presentation(&self, name: &str) -> Presentation {
        Presentation::new(name, self.sig.clone(), self.relations.clone())
    }
}

/// Substitutes generator images along a tree in `x1..xn`.
fn tree_image(t: &Term, gens: &BTreeMap<Op, &TermPoly>, sig: &Signature) -> Result<TermPoly> {
    match t {
        Term::Var(_) => Ok(TermPoly::term(t.clone(), Coeff::from_integer(1.into()))),
        Term::D(_) => Err(Error::InvalidArgument("derivations are not allowed here".into())),
        Term::Op(o, l, r) => {
            let g = gens.get(o).ok_or_else(|| Error::UnmappedOp(o.token().to_string()))?;
            let a = tree_image(l, gens, sig)?;
            let b = tree_image(r, gens, sig)?;
            // g(x1, x2) with x1 := a, x2 := b; fresh names avoid capture.
            let hi = Var(1000);
            let g = g.relabel(&|v: Var| if v.0 == 2 { hi } else { v }, sig);
            let g = g.substitute_var(Var(1), &a, sig);
            Ok(g.substitute_var(hi, &b, sig))
        }
    }
}

/// Quotient coordinates of a degree-3 polynomial: the residue modulo the
/// consequences, which lives on non-pivot columns.
struct Quotient {
    comp: Component,
    columns: BTreeMap<usize, usize>,
}

impl Quotient {
    fn new(pres: &Presentation) -> Result<Quotient> {
        let comp = Component::build(pres, &[], 3, None, false)?;
        let columns = (0..comp.index.len())
            .filter(|i| !comp.space.is_pivot(*i))
            .enumerate()
            .map(|(k, i)| (i, k))
            .collect();
        Ok(Quotient { comp, columns })
    }

    fn dim(&self) -> usize {
        self.columns.len()
    }

    fn coords(&self, p: &TermPoly) -> Result<SparseVec> {
        let v = self.comp.space.reduce(&self.comp.index.vector(p)?);
        Ok(v.into_iter().map(|(i, c)| (self.columns[&i], c)).collect())
    }
}

/// The white product of `p` and `q` on the given generators.
pub fn white_product_degree3(p: &Presentation, q: &Presentation, gens: &[WhiteGenerator]) -> Result<WhiteProduct> {
    for pr in [p, q] {
        if pr.relations.iter().any(|r| r.degree() != Some(3)) {
            return Err(Error::NonQuadratic(pr.name.clone()));
        }
    }
    let sig = Signature::new(gens.iter().map(|g| (g.op, g.symmetry)).collect(), false)?;
    let left: BTreeMap<Op, &TermPoly> = gens.iter().map(|g| (g.op, &g.left)).collect();
    let right: BTreeMap<Op, &TermPoly> = gens.iter().map(|g| (g.op, &g.right)).collect();
    for g in gens {
        check_symmetry(g, &p.sig, &q.sig)?;
    }
    let qp = Quotient::new(p)?;
    let qq = Quotient::new(q)?;
    let width = qq.dim();
    let monos = canonical_monomials(&sig, 3)?;
    let mut rs = RowSpace::tracked();
    let mut ids = Vec::new();
    let mut kernel = Vec::new();
    for (k, t) in monos.iter().enumerate() {
        let a = qp.coords(&tree_image(t, &left, &p.sig)?)?;
        let b = qq.coords(&tree_image(t, &right, &q.sig)?)?;
        let mut img = Vec::new();
        for (i, x) in &a {
            for (j, y) in &b {
                img.push((i * width + j, x * y));
            }
        }
        let img = from_entries(img);
        match rs.express(&img) {
            Some(combo) => {
                let mut rel = vec![(k, Coeff::from_integer(1.into()))];
                for (id, c) in combo {
                    rel.push((ids[id], -c));
                }
                kernel.push(from_entries(rel));
            }
            None => {
                rs.insert(img);
                ids.push(k);
            }
        }
    }
    let index = MonomialIndex::new(&sig, 3, None)?;
    let relations: Vec<TermPoly> = kernel.iter().map(|v| index.poly(v)).filter(|r| !r.is_zero()).collect();
    Ok(WhiteProduct {
        sig,
        free_dim: monos.len(),
        image_dim: rs.rank(),
        ambient_dim: qp.dim() * width,
        relations,
    })
}

/// The declared symmetry of a generator must agree with its tensor image.
fn check_symmetry(g: &WhiteGenerator, p: &Signature, q: &Signature) -> Result<()> {
    let swap = |v: Var| Var(3 - v.0);
    let sign = |x: &TermPoly, sig: &Signature| -> Option<i8> {
        let y = x.relabel(&swap, sig);
        if y == *x {
            Some(1)
        } else if y == -x.clone() {
            Some(-1)
        } else {
            None
        }
    };
    let expected = match g.symmetry {
        Symmetry::None => return Ok(()),
        Symmetry::Symmetric => 1,
        Symmetry::Antisymmetric => -1,
    };
    match (sign(&g.left, p), sign(&g.right, q)) {
        (Some(a), Some(b)) if a * b == expected => Ok(()),
        _ => Err(Error::InvalidArgument(format!(
            "generator {} is not {} as a tensor",
            g.op,
            g.symmetry.name()
        ))),
    }
}

fn sig_of(ops: &[(Op, Symmetry)]) -> Signature {
    Signature::of(ops, false)
}

/// `prec = lie (x) circ` for the white product of Lie and Nov.
pub fn lie_nov_generators() -> Vec<WhiteGenerator> {
    let p = sig_of(&[(Op::Lie, Symmetry::Antisymmetric)]);
    let q = sig_of(&[(Op::Circ, Symmetry::None)]);
    vec![WhiteGenerator::parse(Op::Prec, Symmetry::None, "(lie x1 x2)", &p, "(circ x1 x2)", &q).expect("valid")]
}

/// `prec = x1x2 (x) x1 circ x2`, `succ = x1x2 (x) x2 circ x1` for As and Nov.
pub fn as_nov_generators() -> Vec<WhiteGenerator> {
    let p = sig_of(&[(Op::Mul, Symmetry::None)]);
    let q = sig_of(&[(Op::Circ, Symmetry::None)]);
    vec![
        WhiteGenerator::parse(Op::Prec, Symmetry::None, "(mul x1 x2)", &p, "(circ x1 x2)", &q).expect("valid"),
        WhiteGenerator::parse(Op::Succ, Symmetry::None, "(mul x1 x2)", &p, "(circ x2 x1)", &q).expect("valid"),
    ]
}

/// The four operations of the white product of Pois and GD!:
/// `ast = mul (x) ast`, `circ = x1x2 (x) x2 star x1`, `lie = lie (x) ast`,
/// `succ = lie (x) x1 star x2`.
pub fn pois_gd_dual_generators() -> Vec<WhiteGenerator> {
    let p = sig_of(&[(Op::Mul, Symmetry::Symmetric), (Op::Lie, Symmetry::Antisymmetric)]);
    let q = sig_of(&[(Op::Ast, Symmetry::Symmetric), (Op::Star, Symmetry::None)]);
    let g = |op, s, l: &str, r: &str| WhiteGenerator::parse(op, s, l, &p, r, &q).expect("valid");
    vec![
        g(Op::Ast, Symmetry::Symmetric, "(mul x1 x2)", "(ast x1 x2)"),
        g(Op::Circ, Symmetry::None, "(mul x1 x2)", "(star x2 x1)"),
        g(Op::Lie, Symmetry::Antisymmetric, "(lie x1 x2)", "(ast x1 x2)"),
        g(Op::Succ, Symmetry::None, "(lie x1 x2)", "(star x1 x2)"),
    ]
}

/// Generator dictionaries for the built-in pairs `(P, Q)`.
pub fn builtin_generators(p: &str, q: &str) -> Option<Vec<WhiteGenerator>> {
    match (p, q) {
        ("lie", "nov") => Some(lie_nov_generators()),
        ("as", "nov") => Some(as_nov_generators()),
        ("pois", "gd-dual") => Some(pois_gd_dual_generators()),
        _ => None,
    }
}
