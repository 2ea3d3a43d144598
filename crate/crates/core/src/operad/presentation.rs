//! Quadratic presentations: a signature plus multilinear relations.

use std::collections::BTreeMap;
use std::path::Path;

use num::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, TermPoly};
use crate::term::{Op, Signature, Symmetry, Term};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpDecl {
    pub name: String,
    pub symmetry: Symmetry,
}

/// The on-disk JSON form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default)]
    pub name: Option<String>,
    pub ops: Vec<OpDecl>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub sig: Signature,
    pub relations: Vec<TermPoly>,
}

/// Reads a degree-2 relation `a op(x1,x2) + b op(x2,x1)` as a symmetry.
fn symmetry_from_relation(p: &TermPoly) -> Result<(Op, Symmetry)> {
    let bad = || Error::InvalidArgument(format!("degree-2 relation `{p}` is not a symmetry law"));
    let terms: Vec<(&Term, _)> = p.iter().collect();
    let op_of = |t: &Term| match t {
        Term::Op(o, l, r) if matches!((&**l, &**r), (Term::Var(_), Term::Var(_))) => Some(*o),
        _ => None,
    };
    match terms.as_slice() {
        [(t1, c1), (t2, c2)] => {
            let o = op_of(t1).ok_or_else(bad)?;
            if op_of(t2) != Some(o) {
                return Err(bad());
            }
            if *c1 == *c2 {
                Ok((o, Symmetry::Antisymmetric))
            } else if (*c1 + *c2).is_zero() {
                Ok((o, Symmetry::Symmetric))
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}

impl Presentation {
    pub fn new(name: impl Into<String>, sig: Signature, relations: Vec<TermPoly>) -> Presentation {
        Presentation {
            name: name.into(),
            sig,
            relations,
        }
    }

    /// Builds a presentation, folding degree-2 relations into the signature.
    pub fn from_file(file: &PresentationFile) -> Result<Presentation> {
        let mut ops = Vec::new();
        for d in &file.ops {
            let op = Op::from_token(&d.name).ok_or_else(|| Error::UnknownOp(d.name.clone()))?;
            ops.push((op, d.symmetry));
        }
        let declared = Signature::new(ops, false)?;
        let raw = Signature::new(
            declared.ops().iter().map(|(o, _)| (*o, Symmetry::None)).collect(),
            false,
        )?;
        let mut sig = declared.clone();
        let mut parsed = Vec::new();
        for text in &file.relations {
            let p = parse_poly(text, &raw)?;
            if p.is_zero() {
                continue;
            }
            p.check_multilinear()?;
            match p.degree() {
                Some(2) => {
                    let (o, s) = symmetry_from_relation(&p)?;
                    match declared.symmetry(o) {
                        Some(Symmetry::None) => sig.set_symmetry(o, s),
                        Some(d) if d == s => {}
                        _ => {
                            return Err(Error::InvalidArgument(format!(
                                "relation `{text}` contradicts the declared symmetry of {o}"
                            )))
                        }
                    }
                }
                Some(_) => parsed.push(p),
                None => return Err(Error::NotMultilinear(format!("relation `{text}` mixes degrees"))),
            }
        }
        let relations = parsed
            .iter()
            .map(|p| p.canonicalize(&sig))
            .filter(|p| !p.is_zero())
            .collect();
        Ok(Presentation {
            name: file.name.clone().unwrap_or_else(|| "custom".into()),
            sig,
            relations,
        })
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let file: PresentationFile = serde_json::from_str(text)?;
        Presentation::from_file(&file)
    }

    pub fn from_path(path: &Path) -> Result<Presentation> {
        Presentation::from_json(&std::fs::read_to_string(path)?)
    }

    /// Relations of a given degree.
    pub fn relations_of_degree(&self, n: usize) -> Vec<&TermPoly> {
        self.relations.iter().filter(|r| r.degree() == Some(n)).collect()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(TermPoly::degree).max().unwrap_or(0)
    }

    /// Renames operations, e.g. to compare `ast` with `mul`.
    pub fn rename_ops(&self, map: &BTreeMap<Op, Op>) -> Result<Presentation> {
        let ren = |o: Op| *map.get(&o).unwrap_or(&o);
        let sig = Signature::new(
            self.sig.ops().iter().map(|(o, s)| (ren(*o), *s)).collect(),
            self.sig.has_derivation(),
        )?;
        let relations = self
            .relations
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(t, c)| (rename_term(t, &ren), c.clone()))
                    .collect::<TermPoly>()
                    .canonicalize(&sig)
            })
            .collect();
        Ok(Presentation {
            name: self.name.clone(),
            sig,
            relations,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "ops": self.sig.ops().iter().map(|(o, s)| json!({"name": o.token(), "symmetry": s.name()})).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn rename_term(t: &Term, ren: &impl Fn(Op) -> Op) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::D(c) => crate::term::d(rename_term(c, ren)),
        Term::Op(o, l, r) => crate::term::op(ren(*o), rename_term(l, ren), rename_term(r, ren)),
    }
}
