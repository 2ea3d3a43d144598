//! The `gdalg` command line.
//!
//! Every command builds a JSON report `{command, arguments, inputs_digest,
//! result, status}` with sorted keys. The report goes to stdout (and to
//! `--json <path>` when given); `basis` streams monomials one per line
//! instead. Exit codes: 0 success, 1 verification failure or mismatch, 2
//! usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::builtins;
use crate::error::{Error, Result};
use crate::expand::{expand_poly, verify_identity, ExpansionMap, Verdict};
use crate::linalg::SparseVec;
use crate::nf::pois::parse_pois;
use crate::operad::{
    component_basis, koszul_dual_degree3, span_equal, tideal_membership, white, white_product_degree3, Presentation,
    WhiteGenerator,
};
use crate::poly::{fmt_coeff, TermPoly};
use crate::sgd::{enumerate_weight_monomials, gd_preimage_poly, sgd_dim, special_identities, WeightTarget};
use crate::term::{Op, Signature, Symmetry};

#[derive(Parser, Debug)]
#[command(
    name = "gdalg",
    version,
    about = "Exact computations with differential algebras and GD-type operads"
)]
#[command(subcommand_required = false, arg_required_else_help = true)]
struct Cli {
    /// List the built-in identities and presentations.
    #[arg(long, global = true)]
    list: bool,
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Expand a polynomial under an expansion map.
    Expand(ExpandArgs),
    /// Check that an identity holds (or fails) under an expansion map.
    Check(CheckArgs),
    /// Dimensions by formula, by enumeration, or of an operad component.
    Dim(DimArgs),
    /// List basis monomials, one s-expression per line.
    Basis(BasisArgs),
    /// Koszul dual of a presentation with degree-3 relations.
    KoszulDual(KoszulArgs),
    /// Degree-3 relations of a white product.
    White(WhiteArgs),
    /// Decide membership of a multilinear polynomial in a consequence space.
    Member(MemberArgs),
    /// GD pre-image of a weight -1 differential Poisson polynomial.
    Preimage(PreimageArgs),
    /// Special identities of a degree up to 4.
    Special(SpecialArgs),
    /// Run the built-in consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Serialize)]
struct ExpandArgs {
    /// Polynomial in the map's source operations, or a built-in identity name.
    #[arg(long)]
    term: String,
    #[arg(long, default_value = "gd")]
    map: String,
    /// Target algebra: pois, com, as, bicom or mag.
    #[arg(long)]
    target: Option<String>,
    /// Source signature, e.g. `lie:anti,circ`.
    #[arg(long)]
    ops: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    /// Built-in identity name.
    #[arg(long, conflicts_with_all = ["poly", "file"], required_unless_present_any = ["poly", "file"])]
    name: Option<String>,
    /// Polynomial text.
    #[arg(long, conflicts_with = "file")]
    poly: Option<String>,
    /// File with one polynomial or built-in name per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    ops: Option<String>,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Expect {
    Holds,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    Formula,
    Enumerate,
    Both,
}

#[derive(Args, Debug, Serialize)]
struct DimArgs {
    /// `sgd`, `gd-dual`, `gd-dual-bicom`, or a presentation name or path.
    #[arg(long, default_value = "sgd")]
    operad: String,
    #[arg(long, conflicts_with = "range")]
    n: Option<usize>,
    /// Inclusive range such as `1..7`.
    #[arg(long)]
    range: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
}

#[derive(Args, Debug, Serialize)]
struct BasisArgs {
    /// `sgd`, `gd-dual`, `gd-dual-bicom`, or a presentation name or path.
    #[arg(long, default_value = "sgd")]
    operad: String,
    /// Degree.
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Serialize)]
struct KoszulArgs {
    #[arg(long)]
    presentation: String,
    /// Presentation whose relations should span the same space.
    #[arg(long)]
    compare: Option<String>,
    /// Include the relation and orthogonal matrices.
    #[arg(long)]
    matrices: bool,
}

#[derive(Args, Debug, Serialize)]
struct WhiteArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// JSON list of `{op, symmetry, left, right}` generators; defaults to the
    /// built-in dictionary for the pair.
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Presentation name or comma-separated identity names to compare with.
    #[arg(long)]
    compare: Option<String>,
    #[arg(long)]
    matrices: bool,
}

#[derive(Args, Debug, Serialize)]
struct MemberArgs {
    /// Polynomial text or built-in identity name.
    #[arg(long)]
    candidate: String,
    /// Built-in presentation name or JSON file.
    #[arg(long)]
    presentation: String,
    /// Degree of the consequence space; defaults to the candidate's degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Comma-separated identities added with their `S_n`-orbits.
    #[arg(long, value_delimiter = ',')]
    extra: Vec<String>,
    #[arg(long, value_enum)]
    expect: Option<ExpectMember>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExpectMember {
    Member,
    NonMember,
}

#[derive(Args, Debug, Serialize)]
struct PreimageArgs {
    /// `(pm f1 f2 ...)` or any polynomial in `mul`, `lie` and `d`.
    #[arg(long)]
    monomial: String,
}

#[derive(Args, Debug, Serialize)]
struct SpecialArgs {
    /// Highest degree searched (at most 4).
    #[arg(long, default_value_t = 4)]
    n: usize,
}

#[derive(Args, Debug, Serialize)]
struct SelftestArgs {
    /// Include the degree-6 enumeration.
    #[arg(long)]
    slow: bool,
}

#[derive(Debug)]
struct Outcome {
    result: Value,
    ok: bool,
    /// Lines streamed to stdout instead of the report.
    lines: Option<Vec<String>>,
}

impl Outcome {
    fn new(result: Value, ok: bool) -> Outcome {
        Outcome {
            result,
            ok,
            lines: None,
        }
    }
}

fn parse_ops(spec: &str) -> Result<Signature> {
    let mut ops = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, sym) = item.split_once(':').unwrap_or((item, "none"));
        let op = Op::from_token(name).ok_or_else(|| Error::UnknownOp(name.into()))?;
        let sym = Symmetry::parse(sym).ok_or_else(|| Error::InvalidArgument(format!("unknown symmetry `{sym}`")))?;
        ops.push((op, sym));
    }
    Signature::new(ops, true)
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"verdict": "holds"}),
        Verdict::Fails(p) => json!({"verdict": "fails", "normal-form": p.to_json(), "text": p.to_string()}),
    }
}

fn cmd_expand(a: &ExpandArgs) -> Result<Outcome> {
    let map = ExpansionMap::by_name(&a.map, a.target.as_deref())?;
    let sig = match &a.ops {
        Some(s) => parse_ops(s)?,
        None => map.source.with_derivation(true),
    };
    let (p, _) = builtins::resolve_poly(&a.term, Some(&sig))?;
    let img = expand_poly(&p, &map)?;
    Ok(Outcome::new(
        json!({
            "input": p.to_string(),
            "map": map.describe(),
            "image": img.to_json(),
            "text": img.to_string(),
        }),
        true,
    ))
}

fn cmd_check(a: &CheckArgs) -> Result<Outcome> {
    if let Some(path) = &a.file {
        return check_file(a, path);
    }
    let builtin = a.name.as_deref().map(builtins::identity).transpose()?;
    let map_name = a
        .map
        .clone()
        .or_else(|| builtin.as_ref().and_then(|b| b.map.as_ref().map(|m| m.0.clone())))
        .ok_or_else(|| Error::InvalidArgument("--map is required".into()))?;
    let target = a.target.clone().or_else(|| {
        builtin
            .as_ref()
            .filter(|_| a.map.is_none())
            .and_then(|b| b.map.as_ref()?.1.clone())
    });
    let map = ExpansionMap::by_name(&map_name, target.as_deref())?;
    let poly = match (&builtin, &a.poly) {
        (Some(b), _) => b.poly.clone(),
        (None, Some(text)) => {
            let sig = match &a.ops {
                Some(s) => parse_ops(s)?,
                None => map.source.clone(),
            };
            crate::poly::parse_poly(text, &sig)?
        }
        (None, None) => return Err(Error::InvalidArgument("give --name or --poly".into())),
    };
    let expect = a.expect.unwrap_or(match builtin.as_ref().and_then(|b| b.holds) {
        Some(false) if a.map.is_none() => Expect::Fails,
        _ => Expect::Holds,
    });
    let v = verify_identity(&poly, &map)?;
    let ok = v.holds() == (expect == Expect::Holds);
    let mut result = verdict_json(&v);
    result["identity"] = json!(poly.to_string());
    result["map"] = map.describe();
    result["expected"] = json!(expect);
    Ok(Outcome::new(result, ok))
}

fn check_file(a: &CheckArgs, path: &std::path::Path) -> Result<Outcome> {
    let map_name = a.map.as_deref().ok_or_else(|| Error::InvalidArgument("--map is required".into()))?;
    let map = ExpansionMap::by_name(map_name, a.target.as_deref())?;
    let sig = match &a.ops {
        Some(s) => parse_ops(s)?,
        None => map.source.clone(),
    };
    let expect = a.expect.unwrap_or(Expect::Holds);
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (poly, _) = builtins::resolve_poly(line, Some(&sig))
            .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", i + 1)))?;
        let v = verify_identity(&poly, &map)?;
        let row_ok = v.holds() == (expect == Expect::Holds);
        ok &= row_ok;
        let mut row = verdict_json(&v);
        row["line"] = json!(i + 1);
        row["identity"] = json!(poly.to_string());
        row["ok"] = json!(row_ok);
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument(format!("{} contains no identities", path.display())));
    }
    Ok(Outcome::new(
        json!({"identities": rows, "map": map.describe(), "expected": expect}),
        ok,
    ))
}

fn degrees(n: Option<usize>, range: Option<&str>) -> Result<Vec<usize>> {
    match (n, range) {
        (Some(n), _) => Ok(vec![n]),
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once("..")
                .ok_or_else(|| Error::InvalidArgument(format!("range `{r}` is not `a..b`")))?;
            let parse = |s: &str| {
                s.trim()
                    .trim_start_matches('=')
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad range bound `{s}`")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo == 0 || lo > hi {
                return Err(Error::InvalidArgument(format!("empty range `{r}`")));
            }
            Ok((lo..=hi).collect())
        }
        (None, None) => Err(Error::InvalidArgument("give --n or --range".into())),
    }
}

fn cmd_dim(a: &DimArgs) -> Result<Outcome> {
    let ns = degrees(a.n, a.range.as_deref())?;
    let weight_target = a.operad.parse::<WeightTarget>().ok();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in ns {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let (formula, enumeration): (Option<BigInt>, Option<BigInt>) = match weight_target {
            Some(t) => {
                let formula = (t == WeightTarget::Sgd && a.method != Method::Enumerate)
                    .then(|| sgd_dim(n))
                    .transpose()?;
                let enumeration = (a.method != Method::Formula || t != WeightTarget::Sgd)
                    .then(|| enumerate_weight_monomials(n, t).map(|v| BigInt::from(v.len())))
                    .transpose()?;
                (formula, enumeration)
            }
            None => {
                let pres = builtins::resolve_presentation(&a.operad)?;
                (None, Some(BigInt::from(component_basis(&pres, n)?.dim())))
            }
        };
        let matched = match (&formula, &enumeration) {
            (Some(f), Some(e)) => Some(f == e),
            _ => None,
        };
        ok &= matched != Some(false);
        rows.push(json!({
            "n": n,
            "formula": formula.map(|v| v.to_string()),
            "enumeration": enumeration.map(|v| v.to_string()),
            "match": matched,
        }));
    }
    Ok(Outcome::new(json!({"operad": a.operad, "rows": rows}), ok))
}

fn cmd_basis(a: &BasisArgs) -> Result<Outcome> {
    let lines = match a.operad.parse::<WeightTarget>() {
        Ok(t) => enumerate_weight_monomials(a.n, t)?,
        Err(_) => {
            let pres = builtins::resolve_presentation(&a.operad)?;
            component_basis(&pres, a.n)?
                .normal_monomials()
                .into_iter()
                .map(|t| t.to_string())
                .collect()
        }
    };
    Ok(Outcome {
        result: json!({"operad": a.operad, "n": a.n, "count": lines.len(), "monomials": lines}),
        ok: true,
        lines: Some(lines),
    })
}

fn dense_rows(rows: &[SparseVec], n: usize) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| crate::operad::o3::dense(r, n).iter().map(fmt_coeff).collect())
        .collect()
}

/// Renames `other`'s operations onto `sig`. Names must agree, except that
/// operations that are alone in their symmetry class on both sides are
/// matched by symmetry.
fn align(sig: &Signature, other: &Presentation) -> Option<Presentation> {
    let ours = sig.ops();
    let theirs = other.sig.ops();
    if ours.len() != theirs.len() {
        return None;
    }
    let mut ren = std::collections::BTreeMap::new();
    for (o, s) in theirs {
        let target = if sig.symmetry(*o) == Some(*s) {
            *o
        } else {
            let same = |list: &[(Op, Symmetry)]| list.iter().filter(|(_, t)| t == s).count();
            if same(ours) != 1 || same(theirs) != 1 {
                return None;
            }
            ours.iter().find(|(_, t)| t == s)?.0
        };
        if sig.symmetry(target) != Some(*s) || ren.values().any(|t| *t == target) {
            return None;
        }
        ren.insert(*o, target);
    }
    other.rename_ops(&ren).ok()
}

/// Span comparison at degree 3 after aligning the operations.
fn compare_spans(sig: &Signature, mine: &[TermPoly], other: &Presentation) -> Result<bool> {
    let Some(other) = align(sig, other) else {
        return Ok(false);
    };
    let theirs: Vec<TermPoly> = other.relations.iter().map(|r| r.canonicalize(sig)).collect();
    if theirs.iter().any(|r| r.degree() != Some(3)) {
        return Err(Error::NonQuadratic(format!(
            "`{}` has relations of degree other than 3",
            other.name
        )));
    }
    span_equal(sig, 3, mine, &theirs)
}

fn cmd_koszul(a: &KoszulArgs) -> Result<Outcome> {
    let pres = builtins::resolve_presentation(&a.presentation)?;
    let k = koszul_dual_degree3(&pres)?;
    let mut result = json!({
        "presentation": pres.to_json(),
        "dual": k.dual.to_json(),
        "total-dim": k.total_dim,
        "relation-dim": k.relation_dim,
        "orthogonal-dim": k.orthogonal_dim,
    });
    let mut ok = k.relation_dim + k.orthogonal_dim == k.total_dim;
    if let Some(c) = &a.compare {
        let other = builtins::resolve_presentation(c)?;
        let same = compare_spans(&k.dual.sig, &k.dual.relations, &other)?;
        result["compare"] = json!({"with": c, "span-equal": same});
        ok &= same;
    }
    if a.matrices {
        let space = crate::operad::O3Space::new(&pres.sig)?;
        let u = crate::operad::koszul::relation_space(&pres, &space)?;
        let rows: Vec<SparseVec> = u.rref().into_values().collect();
        result["matrices"] = json!({
            "basis": (0..space.dim()).map(crate::operad::O3Space::label).collect::<Vec<_>>(),
            "relations": dense_rows(&rows, k.total_dim),
            "orthogonal": dense_rows(&k.orthogonal_basis, k.total_dim),
        });
    }
    Ok(Outcome::new(result, ok))
}

#[derive(Deserialize)]
struct GeneratorEntry {
    op: String,
    symmetry: Symmetry,
    left: String,
    right: String,
}

fn cmd_white(a: &WhiteArgs) -> Result<Outcome> {
    let p = builtins::resolve_presentation(&a.left)?;
    let q = builtins::resolve_presentation(&a.right)?;
    let gens: Vec<WhiteGenerator> = match &a.generators {
        Some(path) => {
            let entries: Vec<GeneratorEntry> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            entries
                .into_iter()
                .map(|e| {
                    let op = Op::from_token(&e.op).ok_or_else(|| Error::UnknownOp(e.op.clone()))?;
                    WhiteGenerator::parse(op, e.symmetry, &e.left, &p.sig, &e.right, &q.sig)
                })
                .collect::<Result<_>>()?
        }
        None => white::builtin_generators(&p.name, &q.name).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no built-in generators for ({}, {}); pass --generators",
                p.name, q.name
            ))
        })?,
    };
    let w = white_product_degree3(&p, &q, &gens)?;
    let mut result = json!({
        "signature": w.sig.describe(),
        "free-dim": w.free_dim,
        "image-dim": w.image_dim,
        "ambient-dim": w.ambient_dim,
        "relation-dim": w.relations.len(),
        "relations": w.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if let Some(c) = &a.compare {
        let other = match builtins::resolve_presentation(c) {
            Ok(pres) => pres,
            Err(Error::UnknownBuiltin(_)) => {
                let rels = c
                    .split(',')
                    .map(|n| builtins::identity(n.trim()).map(|i| i.poly.canonicalize(&w.sig)))
                    .collect::<Result<_>>()?;
                Presentation::new(c.clone(), w.sig.clone(), rels)
            }
            Err(e) => return Err(e),
        };
        let same = compare_spans(&w.sig, &w.relations, &other)?;
        result["compare"] = json!({"with": c, "span-equal": same});
        ok = same;
    }
    if a.matrices {
        result["generators"] = json!(gens
            .iter()
            .map(|g| json!({"op": g.op.token(), "left": g.left.to_string(), "right": g.right.to_string()}))
            .collect::<Vec<_>>());
    }
    Ok(Outcome::new(result, ok))
}

fn cmd_member(a: &MemberArgs) -> Result<Outcome> {
    let pres = builtins::resolve_presentation(&a.presentation)?;
    let (cand, _) = builtins::resolve_poly(&a.candidate, Some(&pres.sig))?;
    let degree = match (a.degree, cand.degree()) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => return Err(Error::InvalidArgument("candidate is zero; give --degree".into())),
    };
    let extra = a
        .extra
        .iter()
        .map(|n| builtins::resolve_poly(n, Some(&pres.sig)).map(|(p, _)| (n.clone(), p)))
        .collect::<Result<Vec<_>>>()?;
    let r = tideal_membership(&cand, &pres, &extra, degree)?;
    let mut result = r.to_json();
    result["candidate"] = json!(cand.to_string());
    result["presentation"] = json!(pres.name);
    result["verdict"] = json!(if r.member { "member" } else { "non-member" });
    let expected = a.expect.is_none_or(|e| (e == ExpectMember::Member) == r.member);
    Ok(Outcome::new(result, expected && r.verified))
}

fn cmd_preimage(a: &PreimageArgs) -> Result<Outcome> {
    let target = parse_pois(&a.monomial)?;
    let f = gd_preimage_poly(&target)?;
    let back = crate::expand::expand_pois(&f, &ExpansionMap::gd())?;
    let ok = back == target;
    Ok(Outcome::new(
        json!({
            "input": crate::expand::TargetPoly::Pois(target).to_string(),
            "preimage": f.to_string(),
            "round-trip": ok,
        }),
        ok,
    ))
}

fn cmd_special(a: &SpecialArgs) -> Result<Outcome> {
    let known = ["s-ident", "s-ident2"];
    let s = special_identities(a.n, &known)?;
    Ok(Outcome::new(
        json!({
            "degree": s.degree,
            "free-dim": s.free_dim,
            "image-dim": s.image_dim,
            "kernel-dim": s.kernel_dim,
            "consequence-rank": s.consequence_rank,
            "special-dim": s.special.len(),
            "known": known,
            "covered-dim": s.covered_dim,
            "complete": s.complete(),
            "representatives": s.special.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn cmd_selftest(a: &SelftestArgs) -> Result<Outcome> {
    let checks = crate::selftest::run_all(a.slow);
    for c in &checks {
        eprintln!(
            "[{}] {:>2} {} ({} ms): {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.criterion,
            c.name,
            c.millis,
            c.detail
        );
    }
    let ok = checks.iter().all(|c| c.passed);
    Ok(Outcome::new(
        json!({"checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>()}),
        ok,
    ))
}

fn list() -> Value {
    let ids = builtins::identity_names();
    let pres = builtins::presentation_names();
    json!({
        "identities": ids.into_iter().map(|(n, d)| json!({"name": n, "description": d})).collect::<Vec<_>>(),
        "presentations": pres.into_iter().map(|(n, d)| json!({"name": n, "description": d})).collect::<Vec<_>>(),
        "max-enumeration-degree": crate::sgd::enumerate::MAX_DEGREE,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Expand(_) => "expand",
        Command::Check(_) => "check",
        Command::Dim(_) => "dim",
        Command::Basis(_) => "basis",
        Command::KoszulDual(_) => "koszul-dual",
        Command::White(_) => "white",
        Command::Member(_) => "member",
        Command::Preimage(_) => "preimage",
        Command::Special(_) => "special",
        Command::Selftest(_) => "selftest",
    }
}

fn dispatch(c: &Command) -> Result<Outcome> {
    match c {
        Command::Expand(a) => cmd_expand(a),
        Command::Check(a) => cmd_check(a),
        Command::Dim(a) => cmd_dim(a),
        Command::Basis(a) => cmd_basis(a),
        Command::KoszulDual(a) => cmd_koszul(a),
        Command::White(a) => cmd_white(a),
        Command::Member(a) => cmd_member(a),
        Command::Preimage(a) => cmd_preimage(a),
        Command::Special(a) => cmd_special(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

/// Builds the report for a command without printing it. The second value
/// is the exit code.
pub fn report(
    argv: impl IntoIterator<Item = impl Into<OsString> + Clone>,
) -> std::result::Result<(Value, i32, Option<Vec<String>>), clap::Error> {
    let cli = Cli::try_parse_from(argv)?;
    let (name, arguments) = match &cli.command {
        Some(c) => {
            let args = serde_json::to_value(c).unwrap_or(Value::Null);
            // Externally tagged: `{"check": {...}}`.
            let inner = args
                .as_object()
                .and_then(|m| m.values().next().cloned())
                .unwrap_or(Value::Null);
            (command_name(c), inner)
        }
        None => ("list", json!({})),
    };
    let inputs = json!({"command": name, "arguments": arguments});
    let outcome = match &cli.command {
        Some(c) if !cli.list => dispatch(c),
        _ => Ok(Outcome::new(list(), true)),
    };
    let (result, status, code, lines) = match outcome {
        Ok(o) => {
            let code = if o.ok { 0 } else { 1 };
            (o.result, if o.ok { "ok" } else { "mismatch" }, code, o.lines)
        }
        Err(e) => {
            let code = if matches!(e, Error::Internal(_)) { 1 } else { 2 };
            (json!({"error": e.to_string()}), "error", code, None)
        }
    };
    let report = json!({
        "command": name,
        "arguments": arguments,
        "inputs_digest": digest(&inputs),
        "result": result,
        "status": status,
        "exit_code": code,
    });
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&report).unwrap_or_default() + "\n") {
            let err = json!({"error": format!("cannot write {}: {e}", path.display())});
            return Ok((err, 2, None));
        }
    }
    Ok((report, code, lines))
}

/// Runs the CLI and returns the process exit code.
pub fn run(argv: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let (report, code, lines) = match report(argv) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match lines {
        Some(lines) if report["status"] != "error" => lines.iter().try_for_each(|l| writeln!(out, "{l}")),
        _ => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap_or_default()),
    };
    if report["status"] == "error" {
        eprintln!("error: {}", report["result"]["error"].as_str().unwrap_or("unknown"));
    }
    if written.is_err() {
        return 2;
    }
    code
}
