//! Expansion morphisms from operations like `circ`, `lie`, `star`, `prec`
//! into free differential algebras, and the identity verifier built on them.

pub mod hurwitz;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::nf::{
    derive_poly, normal_form_poly, product_poly, AsDer, BiComDer, ComDer, DLetter, DiffAlgebra, MagDer, PoisDer,
    PoisMono,
};
use crate::poly::{fmt_coeff, LinComb, TermPoly};
use crate::term::{Op, Signature, Symmetry, Term, Var};

/// Right-hand side of an expansion rule in the two arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tpl {
    Left,
    Right,
    D(Box<Tpl>),
    Op(Op, Box<Tpl>, Box<Tpl>),
}

fn l() -> Tpl {
    Tpl::Left
}
fn r() -> Tpl {
    Tpl::Right
}
fn td(t: Tpl) -> Tpl {
    Tpl::D(Box::new(t))
}
fn top(o: Op, a: Tpl, b: Tpl) -> Tpl {
    Tpl::Op(o, Box::new(a), Box::new(b))
}

impl fmt::Display for Tpl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tpl::Left => f.write_str("a"),
            Tpl::Right => f.write_str("b"),
            Tpl::D(t) => write!(f, "(d {t})"),
            Tpl::Op(o, a, b) => write!(f, "({o} {a} {b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Gd,
    GdDual,
    Derived,
    GeneralizedDerived,
    BicomDual,
    NovLie,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Gd => "gd",
            MapKind::GdDual => "gd-dual",
            MapKind::Derived => "derived",
            MapKind::GeneralizedDerived => "gen-derived",
            MapKind::BicomDual => "bicom-dual",
            MapKind::NovLie => "nov-lie",
        }
    }
}

/// The free differential algebra receiving an expansion.
#[derive(Clone, Debug)]
pub enum Target {
    Pois,
    Com,
    As,
    BiCom,
    Magmatic(Signature),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Pois => "pois".into(),
            Target::Com => "com".into(),
            Target::As => "as".into(),
            Target::BiCom => "bicom".into(),
            Target::Magmatic(sig) => format!("mag[{}]", sig.describe()),
        }
    }
}

/// Per-operation rewrite rules into a target algebra.
#[derive(Clone, Debug)]
pub struct ExpansionMap {
    pub kind: MapKind,
    pub target: Target,
    pub rules: BTreeMap<Op, Tpl>,
    /// Default signature for parsing source identities.
    pub source: Signature,
}

impl ExpansionMap {
    /// `a circ b -> a d(b)`, `[a, b] -> {a, b}` into `PoisDer`.
    pub fn gd() -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::Gd,
            target: Target::Pois,
            rules: BTreeMap::from([
                (Op::Circ, top(Op::Mul, l(), td(r()))),
                (Op::Lie, top(Op::Lie, l(), r())),
            ]),
            source: Signature::of(&[(Op::Lie, Symmetry::Antisymmetric), (Op::Circ, Symmetry::None)], false),
        }
    }

    /// The `gd` rules into a free magmatic algebra whose `lie` has no symmetry.
    pub fn gd_magmatic() -> ExpansionMap {
        let mut m = ExpansionMap::gd();
        m.target = Target::Magmatic(Signature::of(
            &[(Op::Mul, Symmetry::None), (Op::Lie, Symmetry::None)],
            true,
        ));
        m.source = Signature::of(&[(Op::Lie, Symmetry::None), (Op::Circ, Symmetry::None)], false);
        m
    }

    /// `a ast b -> ab`, `a star b -> d(a) b` into `ComDer`.
    pub fn gd_dual() -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::GdDual,
            target: Target::Com,
            rules: BTreeMap::from([
                (Op::Ast, top(Op::Mul, l(), r())),
                (Op::Star, top(Op::Mul, td(l()), r())),
            ]),
            source: Signature::of(&[(Op::Ast, Symmetry::Symmetric), (Op::Star, Symmetry::None)], false),
        }
    }

    /// `a succ b -> d(a) b`, `a prec b -> a d(b)`.
    pub fn derived(target: Target) -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::Derived,
            target,
            rules: BTreeMap::from([
                (Op::Succ, top(Op::Mul, td(l()), r())),
                (Op::Prec, top(Op::Mul, l(), td(r()))),
            ]),
            source: Signature::of(&[(Op::Prec, Symmetry::None), (Op::Succ, Symmetry::None)], false),
        }
    }

    /// The derived rules plus the original product `mul`.
    pub fn generalized_derived(target: Target) -> ExpansionMap {
        let mut m = ExpansionMap::derived(target);
        m.kind = MapKind::GeneralizedDerived;
        m.rules.insert(Op::Mul, top(Op::Mul, l(), r()));
        m.source = Signature::of(
            &[
                (Op::Mul, Symmetry::None),
                (Op::Prec, Symmetry::None),
                (Op::Succ, Symmetry::None),
            ],
            false,
        );
        m
    }

    /// The four operations of the white product of Pois and GD! realized on
    /// a differential Poisson algebra: `a ast b -> ab`, `a circ b -> a d(b)`,
    /// `[a, b] -> {a, b}`, `[a succ b] -> {d(a), b}`.
    pub fn generalized_derived_pois() -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::GeneralizedDerived,
            target: Target::Pois,
            rules: BTreeMap::from([
                (Op::Ast, top(Op::Mul, l(), r())),
                (Op::Circ, top(Op::Mul, l(), td(r()))),
                (Op::Lie, top(Op::Lie, l(), r())),
                (Op::Succ, top(Op::Lie, td(l()), r())),
            ]),
            source: pgd_signature(),
        }
    }

    /// `a ast b -> a ast b`, `a star b -> d(a) odot b` into `BiComDer`.
    pub fn bicom_dual() -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::BicomDual,
            target: Target::BiCom,
            rules: BTreeMap::from([
                (Op::Ast, top(Op::Ast, l(), r())),
                (Op::Star, top(Op::Odot, td(l()), r())),
            ]),
            source: Signature::of(&[(Op::Ast, Symmetry::Symmetric), (Op::Star, Symmetry::None)], false),
        }
    }

    /// A Novikov algebra `a circ b -> a d(b)` in `ComDer` with the commutator
    /// bracket `[a, b] -> a d(b) - b d(a)`. The bracket rule is a difference
    /// of two templates and is special-cased in [`expand_in`].
    pub fn nov_lie() -> ExpansionMap {
        ExpansionMap {
            kind: MapKind::NovLie,
            target: Target::Com,
            rules: BTreeMap::from([(Op::Circ, top(Op::Mul, l(), td(r())))]),
            source: Signature::of(&[(Op::Lie, Symmetry::Antisymmetric), (Op::Circ, Symmetry::None)], false),
        }
    }

    /// Looks a map up by its CLI name with an optional target override.
    pub fn by_name(name: &str, target: Option<&str>) -> Result<ExpansionMap> {
        let tgt = target.map(parse_target).transpose()?;
        let m = match name {
            "gd" => match tgt {
                None | Some(Target::Pois) => ExpansionMap::gd(),
                Some(Target::Magmatic(_)) => ExpansionMap::gd_magmatic(),
                Some(t) => return Err(Error::InvalidArgument(format!("map gd has no target {}", t.name()))),
            },
            "gd-dual" | "gd_dual" => ExpansionMap::gd_dual(),
            "derived" => ExpansionMap::derived(tgt.unwrap_or(Target::As)),
            "gen-derived" | "generalized_derived" | "generalized-derived" => match tgt {
                None | Some(Target::Pois) => ExpansionMap::generalized_derived_pois(),
                Some(t) => ExpansionMap::generalized_derived(t),
            },
            "bicom-dual" | "bicom_dual" => ExpansionMap::bicom_dual(),
            "nov-lie" => ExpansionMap::nov_lie(),
            other => return Err(Error::InvalidArgument(format!("unknown map `{other}`"))),
        };
        Ok(m)
    }

    pub fn describe(&self) -> Value {
        let rules: BTreeMap<String, String> = self
            .rules
            .iter()
            .map(|(o, t)| (format!("({o} a b)"), t.to_string()))
            .collect();
        let mut v = json!({
            "map": self.kind.name(),
            "target": self.target.name(),
            "rules": rules,
        });
        if self.kind == MapKind::NovLie {
            v["rules"]["(lie a b)"] = json!("(mul a (d b)) - (mul b (d a))");
        }
        v
    }
}

/// Signature of the Pois-GD! white product operations.
pub fn pgd_signature() -> Signature {
    Signature::of(
        &[
            (Op::Ast, Symmetry::Symmetric),
            (Op::Circ, Symmetry::None),
            (Op::Lie, Symmetry::Antisymmetric),
            (Op::Succ, Symmetry::None),
        ],
        false,
    )
}

fn parse_target(s: &str) -> Result<Target> {
    Ok(match s {
        "pois" | "poisder" => Target::Pois,
        "com" | "comder" => Target::Com,
        "as" | "asder" => Target::As,
        "bicom" | "bicomder" => Target::BiCom,
        "mag" | "magmatic" => Target::Magmatic(Signature::of(
            &[(Op::Mul, Symmetry::None), (Op::Lie, Symmetry::None)],
            true,
        )),
        other => return Err(Error::InvalidArgument(format!("unknown target `{other}`"))),
    })
}

/// An element of one of the target algebras.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetPoly {
    Pois(LinComb<PoisMono>),
    Com(LinComb<<ComDer as DiffAlgebra>::Mono>),
    As(LinComb<<AsDer as DiffAlgebra>::Mono>),
    BiCom(LinComb<<BiComDer as DiffAlgebra>::Mono>),
    Mag(LinComb<Term>, Signature),
}

fn rendered<A: DiffAlgebra>(alg: &A, p: &LinComb<A::Mono>) -> Vec<(String, String, i64)> {
    p.iter()
        .map(|(m, c)| (fmt_coeff(c), alg.render(m), alg.weight(m)))
        .collect()
}

impl TargetPoly {
    pub fn is_zero(&self) -> bool {
        match self {
            TargetPoly::Pois(p) => p.is_zero(),
            TargetPoly::Com(p) => p.is_zero(),
            TargetPoly::As(p) => p.is_zero(),
            TargetPoly::BiCom(p) => p.is_zero(),
            TargetPoly::Mag(p, _) => p.is_zero(),
        }
    }

    /// `(coefficient, monomial, weight)` triples in monomial order.
    pub fn terms(&self) -> Vec<(String, String, i64)> {
        match self {
            TargetPoly::Pois(p) => rendered(&PoisDer, p),
            TargetPoly::Com(p) => rendered(&ComDer, p),
            TargetPoly::As(p) => rendered(&AsDer, p),
            TargetPoly::BiCom(p) => rendered(&BiComDer, p),
            TargetPoly::Mag(p, sig) => rendered(&MagDer::new(sig.clone()), p),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|(c, m, w)| json!({"coeff": c, "monomial": m, "weight": w}))
                .collect(),
        )
    }

    pub fn as_pois(&self) -> Option<&LinComb<PoisMono>> {
        match self {
            TargetPoly::Pois(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for TargetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, m, _)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} {m}")?;
        }
        Ok(())
    }
}

fn eval_tpl<A: DiffAlgebra>(alg: &A, tpl: &Tpl, a: &LinComb<A::Mono>, b: &LinComb<A::Mono>) -> LinComb<A::Mono> {
    match tpl {
        Tpl::Left => a.clone(),
        Tpl::Right => b.clone(),
        Tpl::D(t) => derive_poly(alg, &eval_tpl(alg, t, a, b)),
        Tpl::Op(o, x, y) => product_poly(alg, *o, &eval_tpl(alg, x, a, b), &eval_tpl(alg, y, a, b)),
    }
}

/// Expands `t` in `alg`, sending each variable through `env`.
pub fn expand_in<A: DiffAlgebra>(
    alg: &A,
    map: &ExpansionMap,
    t: &Term,
    env: &dyn Fn(Var) -> LinComb<A::Mono>,
) -> Result<LinComb<A::Mono>> {
    match t {
        Term::Var(v) => Ok(env(*v)),
        Term::D(c) => Ok(derive_poly(alg, &expand_in(alg, map, c, env)?)),
        Term::Op(o, x, y) => {
            let a = expand_in(alg, map, x, env)?;
            let b = expand_in(alg, map, y, env)?;
            if map.kind == MapKind::NovLie && *o == Op::Lie {
                let circ = &map.rules[&Op::Circ];
                return Ok(eval_tpl(alg, circ, &a, &b) - eval_tpl(alg, circ, &b, &a));
            }
            let tpl = map
                .rules
                .get(o)
                .ok_or_else(|| Error::UnmappedOp(o.token().to_string()))?;
            Ok(eval_tpl(alg, tpl, &a, &b))
        }
    }
}

fn expand_poly_in<A: DiffAlgebra>(alg: &A, map: &ExpansionMap, p: &TermPoly) -> Result<LinComb<A::Mono>> {
    let env = |v: Var| alg.letter(DLetter { s: 0, x: v });
    p.try_map_linear(|t| expand_in(alg, map, t, &env))
}

/// Image of a polynomial in the target algebra, in normal form.
pub fn expand_poly(p: &TermPoly, map: &ExpansionMap) -> Result<TargetPoly> {
    Ok(match &map.target {
        Target::Pois => TargetPoly::Pois(expand_poly_in(&PoisDer, map, p)?),
        Target::Com => TargetPoly::Com(expand_poly_in(&ComDer, map, p)?),
        Target::As => TargetPoly::As(expand_poly_in(&AsDer, map, p)?),
        Target::BiCom => TargetPoly::BiCom(expand_poly_in(&BiComDer, map, p)?),
        Target::Magmatic(sig) => TargetPoly::Mag(expand_poly_in(&MagDer::new(sig.clone()), map, p)?, sig.clone()),
    })
}

/// Image of a single term.
pub fn expand(t: &Term, map: &ExpansionMap) -> Result<TargetPoly> {
    expand_poly(&LinComb::monomial(t.clone()), map)
}

/// Image in `PoisDer` under a Poisson-target map.
pub fn expand_pois(p: &TermPoly, map: &ExpansionMap) -> Result<LinComb<PoisMono>> {
    expand_poly_in(&PoisDer, map, p)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    /// The nonzero normal form that survives.
    Fails(TargetPoly),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Checks that a multilinear identity `lhs - rhs` expands to zero.
pub fn verify_identity(p: &TermPoly, map: &ExpansionMap) -> Result<Verdict> {
    p.check_multilinear()?;
    let img = expand_poly(p, map)?;
    Ok(if img.is_zero() {
        Verdict::Holds
    } else {
        Verdict::Fails(img)
    })
}

/// Normal form of a term written directly in a target algebra's operations.
pub fn target_normal_form(p: &TermPoly, target: &Target) -> Result<TargetPoly> {
    Ok(match target {
        Target::Pois => TargetPoly::Pois(normal_form_poly(&PoisDer, p)?),
        Target::Com => TargetPoly::Com(normal_form_poly(&ComDer, p)?),
        Target::As => TargetPoly::As(normal_form_poly(&AsDer, p)?),
        Target::BiCom => TargetPoly::BiCom(normal_form_poly(&BiComDer, p)?),
        Target::Magmatic(sig) => TargetPoly::Mag(normal_form_poly(&MagDer::new(sig.clone()), p)?, sig.clone()),
    })
}
