//! Named identities and presentations compiled into the binary.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expand::ExpansionMap;
use crate::operad::{Presentation, PresentationFile};
use crate::poly::{parse_poly, TermPoly};
use crate::term::{Op, Signature};

const IDENTITIES: &str = include_str!("../data/identities.json");
const PRESENTATIONS: &str = include_str!("../data/presentations.json");

#[derive(Debug, Deserialize)]
struct OpEntry {
    name: String,
    symmetry: crate::term::Symmetry,
}

#[derive(Debug, Deserialize)]
struct IdentityEntry {
    name: String,
    ops: Vec<OpEntry>,
    poly: String,
    description: String,
    #[serde(default)]
    map: Option<String>,
    #[serde(default)]
    target: Option<String>,
    #[serde(default)]
    holds: Option<bool>,
}

#[derive(Debug, Deserialize)]
struct IdentityFile {
    identities: Vec<IdentityEntry>,
}

#[derive(Debug, Deserialize)]
struct PresentationEntry {
    description: String,
    #[serde(flatten)]
    file: PresentationFile,
}

#[derive(Debug, Deserialize)]
struct PresentationsFile {
    presentations: Vec<PresentationEntry>,
}

/// A named identity with its signature and, when known, the map under which
/// it is expected to hold or fail.
#[derive(Clone, Debug)]
pub struct BuiltinIdentity {
    pub name: String,
    pub description: String,
    pub sig: Signature,
    pub poly: TermPoly,
    pub text: String,
    pub map: Option<(String, Option<String>)>,
    pub holds: Option<bool>,
}

impl BuiltinIdentity {
    pub fn expansion_map(&self) -> Option<Result<ExpansionMap>> {
        self.map.as_ref().map(|(m, t)| ExpansionMap::by_name(m, t.as_deref()))
    }
}

fn identity_file() -> IdentityFile {
    serde_json::from_str(IDENTITIES).expect("embedded identities are valid JSON")
}

fn presentations_file() -> PresentationsFile {
    serde_json::from_str(PRESENTATIONS).expect("embedded presentations are valid JSON")
}

fn load_identity(e: IdentityEntry) -> Result<BuiltinIdentity> {
    let mut ops = Vec::new();
    for o in &e.ops {
        ops.push((
            Op::from_token(&o.name).ok_or_else(|| Error::UnknownOp(o.name.clone()))?,
            o.symmetry,
        ));
    }
    let sig = Signature::new(ops, false)?;
    let poly = parse_poly(&e.poly, &sig)?;
    Ok(BuiltinIdentity {
        name: e.name,
        description: e.description,
        sig,
        poly,
        text: e.poly,
        map: e.map.map(|m| (m, e.target)),
        holds: e.holds,
    })
}

pub fn identities() -> Result<Vec<BuiltinIdentity>> {
    identity_file().identities.into_iter().map(load_identity).collect()
}

pub fn identity(name: &str) -> Result<BuiltinIdentity> {
    let e = identity_file()
        .identities
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    load_identity(e)
}

/// `(name, description)` of every built-in identity.
pub fn identity_names() -> Vec<(String, String)> {
    identity_file()
        .identities
        .into_iter()
        .map(|e| (e.name, e.description))
        .collect()
}

pub fn presentation(name: &str) -> Result<Presentation> {
    let e = presentations_file()
        .presentations
        .into_iter()
        .find(|e| e.file.name.as_deref() == Some(name))
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    Presentation::from_file(&e.file)
}

pub fn presentation_names() -> Vec<(String, String)> {
    presentations_file()
        .presentations
        .into_iter()
        .map(|e| (e.file.name.unwrap_or_default(), e.description))
        .collect()
}

/// A built-in name, or else a path to a JSON presentation file.
pub fn resolve_presentation(name_or_path: &str) -> Result<Presentation> {
    match presentation(name_or_path) {
        Err(Error::UnknownBuiltin(_)) if std::path::Path::new(name_or_path).exists() => {
            Presentation::from_path(std::path::Path::new(name_or_path))
        }
        other => other,
    }
}

/// Parses a polynomial, or looks up a built-in identity when `text` is a
/// bare name. Returns the polynomial and the signature used.
pub fn resolve_poly(text: &str, sig: Option<&Signature>) -> Result<(TermPoly, Signature)> {
    let t = text.trim();
    if !t.starts_with('(') && !t.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
        let id = identity(t)?;
        return match sig {
            Some(s) => Ok((id.poly.canonicalize(s), s.clone())),
            None => Ok((id.poly, id.sig)),
        };
    }
    let sig = sig
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("a signature is required".into()))?;
    Ok((parse_poly(t, &sig)?, sig))
}
