//! Command-line front end. Every subcommand prints one JSON object on
//! stdout; diagnostics go to stderr. Exit code 0 on success, 1 when a check
//! fails or a computation errors, 2 on bad input.
//!
//! Module labels: `simple:<v>` (vertices from 1), `reg:<a>:<b>:[λ]` (the
//! point `(a:b)` of the projective line), `prep:<n>`, `prei:<n>`,
//! `cyc:<n>:<top>:<len>` (segment on the cycle of length `n`), joined by `+`
//! for direct sums, or `@file.json` for a representation file.
//!
//! Torsion sequences: `+`-joined items `seg:<tube>:<top>:<len>` and
//! `pt:<degree>:[λ]`, where the `pt` items are point slots in order; `0` is
//! the empty sequence.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::combinat::{DecompositionSequence, Multisegment, NhClass, Partition, Segment, SegreEntry, SegreSequence};
use crate::cyclichall::{aut_poly_multisegment, aut_poly_partition, classical_hall, cyclic_hall, segre_hall, HallPolynomial};
use crate::error::HallError;
use crate::exactfield::{closed_points, field_of_order, standard_exceptional, zeta_ordinary, FqElement, FqField, PointLabel};
use crate::generichall::GenericHall;
use crate::quiverrep::catalogue::green_verify;
use crate::quiverrep::cyclic::segment_module;
use crate::quiverrep::kronecker::{preinjective, preprojective, regular_module};
use crate::quiverrep::{hall_number, Catalogue, Quiver, QuiverKind, QuiverRep};
use crate::sweep::{run_criterion, tame_bg, Check, CRITERIA};
use crate::wpl::{hall_poly_into_line_bundle, theta_expand, ThetaMode, WeightData};

#[derive(Parser, Debug)]
#[command(name = "hallpoly", version, about = "Exact Hall numbers, Hall polynomials and generic Hall algebras")]
pub struct Cli {
    /// JSON file presetting `weights`, `q` and `quiver`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Wrap the output in a report with parameters, checks and wall time.
    #[arg(long, global = true)]
    pub report: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the field with `q` elements.
    Field(FieldArgs),
    /// Closed points of the projective line of a given degree.
    Points(PointsArgs),
    /// Hall number `F^Z_{X,Y}` by brute force.
    Hall(HallArgs),
    /// Both sides of Green's formula for `(M, N, X, Y)`.
    GreenVerify(GreenArgs),
    /// Isoclass catalogue with its mass-formula certificate.
    Catalogue(CatalogueArgs),
    /// Classical Hall polynomial `g^λ_{μν}` (quotient `μ`, sub `ν`).
    ClassicalHall(ClassicalArgs),
    /// Hall polynomial for nilpotent representations of a cyclic quiver.
    CyclicHall(CyclicArgs),
    /// Hall polynomial of torsion decomposition sequences.
    SegreHall(SegreArgs),
    /// Automorphism polynomial.
    AutPoly(AutArgs),
    /// Weighted projective line data.
    Wpl(WplArgs),
    /// Expansion of `Θ_x`.
    Theta(ThetaArgs),
    /// Hall polynomial into a line bundle.
    LinebundleHall(LineBundleArgs),
    /// Generic Hall algebra of the torsion sector.
    Generic(GenericArgs),
    /// Point independence of `F^{R_z[λ]}_{I,P}` on the Kronecker quiver.
    TameBg(TameBgArgs),
    /// Run acceptance criteria.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PointsArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Number of standard exceptional points `inf, 0, 1, ...`.
    #[arg(long, default_value_t = 0)]
    pub exceptional: usize,
}

#[derive(Args, Debug)]
pub struct HallArgs {
    /// `kronecker`, `cyclic:<n>`, `jordan`, or a JSON quiver file.
    #[arg(long)]
    pub quiver: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long = "Z")]
    pub z: String,
    #[arg(long = "X")]
    pub x: String,
    #[arg(long = "Y")]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    #[arg(long)]
    pub quiver: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long = "M")]
    pub m: String,
    #[arg(long = "N")]
    pub n: String,
    #[arg(long = "X")]
    pub x: String,
    #[arg(long = "Y")]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct CatalogueArgs {
    #[arg(long)]
    pub quiver: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Dimension bound, e.g. `2,2`.
    #[arg(long)]
    pub dmax: String,
}

#[derive(Args, Debug)]
pub struct ClassicalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lam: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
}

#[derive(Args, Debug)]
pub struct CyclicArgs {
    /// Cycle length.
    #[arg(long)]
    pub n: usize,
    /// Segments `top:len,top:len,...`.
    #[arg(long)]
    pub gamma: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct SegreArgs {
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long)]
    pub gamma: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct AutArgs {
    /// Jordan type, e.g. `2,1`.
    #[arg(long, conflicts_with_all = ["segments", "seq"])]
    pub partition: Option<String>,
    /// Segments `top:len,...` on the cycle of length `--n`.
    #[arg(long, requires = "n")]
    pub segments: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Torsion sequence, with `--weights`.
    #[arg(long)]
    pub seq: Option<String>,
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct WplArgs {
    #[arg(long)]
    pub weights: Option<String>,
    #[command(subcommand)]
    pub command: WplCommand,
}

#[derive(Subcommand, Debug)]
pub enum WplCommand {
    /// `ω`, `δ(ω)`, classification, `p`.
    Info,
    /// `⟨O(x), O(y)⟩` and `dim S_x`.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Expansion of `Θ_x` for these weights.
    Theta(ThetaOpts),
    /// `φ^{O(u)}_{α,O}` for these weights.
    LinebundleHall(LineBundleOpts),
}

#[derive(Args, Debug)]
pub struct ThetaOpts {
    /// Element `l1,...,lt;l`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Expand concretely over `F_q` instead of generically.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug)]
pub struct LineBundleOpts {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    #[arg(long)]
    pub weights: Option<String>,
    #[command(flatten)]
    pub opts: ThetaOpts,
}

#[derive(Args, Debug)]
pub struct LineBundleArgs {
    #[arg(long)]
    pub weights: Option<String>,
    #[command(flatten)]
    pub opts: LineBundleOpts,
}

#[derive(Args, Debug)]
pub struct GenericArgs {
    #[arg(long)]
    pub weights: Option<String>,
    #[command(subcommand)]
    pub command: GenericCommand,
}

#[derive(Subcommand, Debug)]
pub enum GenericCommand {
    /// `u_a u_b`.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// `Δ(u_γ)`.
    Comul {
        #[arg(long)]
        gamma: String,
    },
    /// `{u_a, u_b}`.
    Pair {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// `{u_α, Θ_x}` computed two ways.
    ThetaPair {
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Args, Debug)]
pub struct TameBgArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub lam: String,
    /// Preinjective index: `I(i)` has dimension `(i+1, i)`.
    #[arg(long)]
    pub i: usize,
    /// Preprojective index: `P(p)` has dimension `(p, p+1)`.
    #[arg(long)]
    pub p: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Criteria to run, e.g. `1,3,8`; all by default.
    #[arg(long)]
    pub criteria: Option<String>,
}

/// Presets read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub weights: Option<Vec<usize>>,
    pub q: Option<u64>,
    pub quiver: Option<String>,
}

/// Failure of a subcommand, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(HallError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{}", s),
            CliError::Compute(e) => write!(f, "{}", e),
        }
    }
}

impl From<HallError> for CliError {
    fn from(e: HallError) -> Self {
        match e {
            HallError::Parse(_) | HallError::Shape(_) | HallError::UnknownLabel(_) | HallError::Dimension(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Compute(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct RunReport {
    pub subcommand: String,
    pub parameters: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "results": self.results,
            "checks": self.checks,
            "pass": self.pass(),
            "wall_time_s": self.seconds,
        })
    }
}

// ---- input grammar ------------------------------------------------------

pub fn parse_partition(s: &str) -> CliResult<Partition> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if t.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = t
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| usage(format!("bad partition '{}'", s))))
        .collect::<CliResult<Vec<_>>>()?;
    Partition::new(parts).map_err(|e| usage(e.to_string()))
}

fn parse_usize(s: &str, what: &str) -> CliResult<usize> {
    s.trim().parse().map_err(|_| usage(format!("bad {} '{}'", what, s)))
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',').map(|x| parse_usize(x, "number")).collect()
}

/// `top:len,top:len`.
pub fn parse_segments(s: &str) -> CliResult<Vec<(usize, usize)>> {
    let t = s.trim();
    if t.is_empty() || t == "0" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|item| match item.split(':').collect::<Vec<_>>().as_slice() {
            [a, b] => Ok((parse_usize(a, "top")?, parse_usize(b, "length")?)),
            _ => Err(usage(format!("bad segment '{}', expected top:len", item))),
        })
        .collect()
}

/// Split on `+` outside brackets.
fn split_sum(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|x| !x.is_empty()).collect()
}

pub fn parse_sequence(s: &str) -> CliResult<DecompositionSequence> {
    let t = s.trim();
    if t.is_empty() || t == "0" {
        return Ok(DecompositionSequence::empty());
    }
    let mut segments = Vec::new();
    let mut entries = Vec::new();
    for item in split_sum(t) {
        let fields: Vec<&str> = item.splitn(3, ':').collect();
        match fields.as_slice() {
            ["seg", rest @ ..] if rest.len() == 2 => {
                let r: Vec<&str> = item.split(':').collect();
                if r.len() != 4 {
                    return Err(usage(format!("bad segment '{}', expected seg:<tube>:<top>:<len>", item)));
                }
                segments.push(Segment {
                    tube: parse_usize(r[1], "tube")?,
                    top: parse_usize(r[2], "top")?,
                    len: parse_usize(r[3], "length")?,
                });
            }
            ["pt", d, lam] => entries.push(SegreEntry {
                partition: parse_partition(lam)?,
                degree: parse_usize(d, "degree")?,
            }),
            _ => return Err(usage(format!("bad sequence item '{}'", item))),
        }
    }
    let segre = SegreSequence::new(entries).map_err(|e| usage(e.to_string()))?;
    Ok(DecompositionSequence::new(NhClass::torsion(Multisegment::new(segments)), segre))
}

fn parse_quiver(s: &str) -> CliResult<Arc<Quiver>> {
    match s {
        "kronecker" => Ok(Quiver::kronecker()),
        "jordan" => Ok(Quiver::cyclic(1)),
        _ => {
            if let Some(n) = s.strip_prefix("cyclic:") {
                return Ok(Quiver::cyclic(parse_usize(n, "cycle length")?));
            }
            let text = std::fs::read_to_string(s).map_err(|e| usage(format!("quiver '{}': {}", s, e)))?;
            let q: Quiver = serde_json::from_str(&text).map_err(|e| usage(format!("quiver file: {}", e)))?;
            Ok(Arc::new(q))
        }
    }
}

fn parse_element(field: &FqField, s: &str) -> CliResult<FqElement> {
    let n: i64 = s.trim().parse().map_err(|_| usage(format!("bad field element '{}'", s)))?;
    if field.k() == 1 {
        Ok(field.from_int(n))
    } else {
        u32::try_from(n)
            .ok()
            .and_then(|n| field.element(n))
            .ok_or_else(|| usage(format!("{} is not a packed element of F_{}", n, field.q())))
    }
}

fn parse_point(field: &FqField, a: &str, b: &str) -> CliResult<PointLabel> {
    let (a, b) = (parse_element(field, a)?, parse_element(field, b)?);
    if b == field.zero() {
        if a == field.zero() {
            return Err(usage("(0:0) is not a point"));
        }
        return Ok(PointLabel::Infinity);
    }
    let ratio = field.div(a, b).expect("b is nonzero");
    Ok(PointLabel::affine(field, ratio))
}

fn parse_summand(quiver: &Arc<Quiver>, field: &FqField, s: &str) -> CliResult<QuiverRep> {
    let parts: Vec<&str> = s.splitn(4, ':').collect();
    let need_kronecker = || -> CliResult<()> {
        if quiver.kind() != QuiverKind::Kronecker {
            return Err(usage(format!("'{}' needs the Kronecker quiver", s)));
        }
        Ok(())
    };
    match parts.as_slice() {
        ["simple", v] => {
            let v = parse_usize(v, "vertex")?;
            if v == 0 {
                return Err(usage("vertices are numbered from 1"));
            }
            Ok(QuiverRep::simple(quiver.clone(), field.clone(), v - 1)?)
        }
        ["prep", n] => {
            need_kronecker()?;
            Ok(preprojective(field, parse_usize(n, "index")?))
        }
        ["prei", n] => {
            need_kronecker()?;
            Ok(preinjective(field, parse_usize(n, "index")?))
        }
        ["reg", a, b, lam] => {
            need_kronecker()?;
            Ok(regular_module(field, &parse_point(field, a, b)?, &parse_partition(lam)?)?)
        }
        ["cyc", n, top, len] => {
            let n = parse_usize(n, "cycle length")?;
            if quiver.kind() != QuiverKind::Cyclic(n) {
                return Err(usage(format!("'{}' needs the cyclic quiver with {} vertices", s, n)));
            }
            let top = parse_usize(top, "top")?;
            if top >= n {
                return Err(usage(format!("top {} out of range", top)));
            }
            Ok(segment_module(field, n, top, parse_usize(len, "length")?))
        }
        _ => Err(usage(format!("unknown module label '{}'", s))),
    }
}

pub fn parse_module(quiver: &Arc<Quiver>, field: &FqField, s: &str) -> CliResult<QuiverRep> {
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("'{}': {}", path, e)))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| usage(e.to_string()))?;
        let rep = QuiverRep::from_json(&v, field)?;
        if rep.quiver() != quiver {
            return Err(usage(format!("'{}' is for a different quiver", path)));
        }
        return Ok(rep);
    }
    let mut acc = QuiverRep::zero(quiver.clone(), field.clone());
    for item in split_sum(s.trim()) {
        if item == "0" {
            continue;
        }
        acc = acc.direct_sum(&parse_summand(quiver, field, item)?)?;
    }
    Ok(acc)
}

// ---- dispatch -----------------------------------------------------------

struct Ctx {
    config: Config,
}

impl Ctx {
    fn q(&self, q: Option<u64>) -> CliResult<u64> {
        q.or(self.config.q).ok_or_else(|| usage("--q is required"))
    }

    fn field(&self, q: Option<u64>) -> CliResult<FqField> {
        Ok(field_of_order(self.q(q)?)?)
    }

    fn quiver(&self, s: &Option<String>) -> CliResult<Arc<Quiver>> {
        let s = s.clone().or_else(|| self.config.quiver.clone()).unwrap_or_else(|| "kronecker".into());
        parse_quiver(&s)
    }

    fn weights(&self, s: &Option<String>) -> CliResult<WeightData> {
        match (s, &self.config.weights) {
            (Some(s), _) => Ok(WeightData::parse(s)?),
            (None, Some(w)) => Ok(WeightData::new(w.clone())?),
            (None, None) => Err(usage("--weights is required (use '' for no weights)")),
        }
    }
}

fn poly_json(h: &HallPolynomial) -> Value {
    let mut v = h.to_json();
    v["poly"] = json!(h.poly.to_string());
    v
}

fn report(sub: &str, parameters: Value, results: Value, checks: Vec<Check>) -> RunReport {
    RunReport {
        subcommand: sub.into(),
        parameters,
        results,
        checks,
        seconds: 0.0,
    }
}

fn run_command(ctx: &Ctx, cmd: &Command) -> CliResult<RunReport> {
    match cmd {
        Command::Field(a) => {
            let f = ctx.field(a.q)?;
            Ok(report(
                "field",
                json!({"q": f.q()}),
                json!({
                    "q": f.q(),
                    "p": f.p(),
                    "k": f.k(),
                    "modulus": f.modulus(),
                    "generator": f.gen().0,
                }),
                vec![],
            ))
        }
        Command::Points(a) => {
            let f = ctx.field(a.q)?;
            let exc = standard_exceptional(&f, a.exceptional)?;
            let pts = closed_points(&f, a.degree, &exc)?;
            Ok(report(
                "points",
                json!({"q": f.q(), "degree": a.degree, "exceptional": a.exceptional}),
                json!({
                    "points": pts.iter().map(|p| json!({"label": p.label.render(&f), "degree": p.degree, "exceptional": p.exceptional})).collect::<Vec<_>>(),
                    "count": pts.len(),
                    "ordinary_count": pts.iter().filter(|p| !p.exceptional).count(),
                    "ordinary_poly": zeta_ordinary(a.degree, a.exceptional).to_string(),
                }),
                vec![],
            ))
        }
        Command::Hall(a) => {
            let (quiver, f) = (ctx.quiver(&a.quiver)?, ctx.field(a.q)?);
            let (z, x, y) = (parse_module(&quiver, &f, &a.z)?, parse_module(&quiver, &f, &a.x)?, parse_module(&quiver, &f, &a.y)?);
            let c = hall_number(&z, &x, &y)?;
            Ok(report("hall", json!({"q": f.q(), "Z": a.z, "X": a.x, "Y": a.y}), json!({"F": c.count}), vec![]))
        }
        Command::GreenVerify(a) => {
            let (quiver, f) = (ctx.quiver(&a.quiver)?, ctx.field(a.q)?);
            let m = parse_module(&quiver, &f, &a.m)?;
            let n = parse_module(&quiver, &f, &a.n)?;
            let x = parse_module(&quiver, &f, &a.x)?;
            let y = parse_module(&quiver, &f, &a.y)?;
            let r = green_verify(&m, &n, &x, &y)?;
            let (lhs, rhs) = (crate::polyarith::rat_string(&r.lhs), crate::polyarith::rat_string(&r.rhs));
            Ok(report(
                "green-verify",
                json!({"q": f.q(), "M": a.m, "N": a.n, "X": a.x, "Y": a.y}),
                json!({"lhs": lhs, "rhs": rhs, "holds": r.holds}),
                vec![Check::holds("Green's formula", r.holds, lhs, rhs)],
            ))
        }
        Command::Catalogue(a) => {
            let (quiver, f) = (ctx.quiver(&a.quiver)?, ctx.field(a.q)?);
            let dmax = parse_list(&a.dmax)?;
            let cat = Catalogue::build(quiver, f.clone(), &dmax)?;
            let checks = cat
                .mass_checks()
                .iter()
                .filter(|m| m.pass.is_some())
                .map(|m| Check::holds(format!("mass d={:?}", m.dims), m.pass == Some(true), &m.lhs, m.rhs.clone().unwrap_or_default()))
                .collect();
            Ok(report("catalogue", json!({"q": f.q(), "dmax": dmax}), cat.to_json(), checks))
        }
        Command::ClassicalHall(a) => {
            let (l, m, n) = (parse_partition(&a.lam)?, parse_partition(&a.mu)?, parse_partition(&a.nu)?);
            let h = classical_hall(&l, &m, &n)?;
            Ok(report("classical-hall", json!({"lam": l.to_string(), "mu": m.to_string(), "nu": n.to_string()}), poly_json(&h), vec![]))
        }
        Command::CyclicHall(a) => {
            let ms = |s: &str| -> CliResult<Multisegment> { Ok(Multisegment::in_tube(1, &parse_segments(s)?)) };
            let h = cyclic_hall(a.n, &ms(&a.gamma)?, &ms(&a.alpha)?, &ms(&a.beta)?)?;
            Ok(report(
                "cyclic-hall",
                json!({"n": a.n, "gamma": a.gamma, "alpha": a.alpha, "beta": a.beta}),
                poly_json(&h),
                vec![],
            ))
        }
        Command::SegreHall(a) => {
            let w = ctx.weights(&a.weights)?;
            let (g, al, b) = (parse_sequence(&a.gamma)?, parse_sequence(&a.alpha)?, parse_sequence(&a.beta)?);
            let h = segre_hall(&g, &al, &b, w.weights())?;
            Ok(report(
                "segre-hall",
                json!({"weights": w.weights(), "gamma": g.to_string(), "alpha": al.to_string(), "beta": b.to_string()}),
                poly_json(&h),
                vec![],
            ))
        }
        Command::AutPoly(a) => {
            let (params, poly) = match (&a.partition, &a.segments, &a.seq) {
                (Some(p), None, None) => {
                    let lam = parse_partition(p)?;
                    (json!({"partition": lam.to_string()}), aut_poly_partition(&lam)?)
                }
                (None, Some(s), None) => {
                    let n = a.n.ok_or_else(|| usage("--segments needs --n"))?;
                    (json!({"n": n, "segments": s}), aut_poly_multisegment(n, &Multisegment::in_tube(1, &parse_segments(s)?))?)
                }
                (None, None, Some(s)) => {
                    let h = GenericHall::new(ctx.weights(&a.weights)?)?;
                    let seq = parse_sequence(s)?;
                    (json!({"weights": h.weights().weights(), "seq": seq.to_string()}), h.aut_poly(&seq)?)
                }
                _ => return Err(usage("give exactly one of --partition, --segments, --seq")),
            };
            Ok(report("aut-poly", params, json!({"polynomial": poly.to_string()}), vec![]))
        }
        Command::Wpl(a) => {
            let w = ctx.weights(&a.weights)?;
            match &a.command {
                WplCommand::Info => Ok(report("wpl info", json!({"weights": w.weights()}), w.info_json(), vec![])),
                WplCommand::Euler { x, y } => {
                    let (x, y) = (w.parse_element(x)?, w.parse_element(y)?);
                    let d = w.sub(&y, &x);
                    Ok(report(
                        "wpl euler",
                        json!({"weights": w.weights(), "x": x.to_string(), "y": y.to_string()}),
                        json!({
                            "euler": w.euler_line_bundles(&x, &y),
                            "dim_S": w.dim_s(&d),
                            "y_minus_x": d.to_string(),
                            "delta_x": w.delta(&x),
                            "delta_y": w.delta(&y),
                        }),
                        vec![],
                    ))
                }
                WplCommand::Theta(o) => theta(&w, o),
                WplCommand::LinebundleHall(o) => linebundle(&w, o),
            }
        }
        Command::Theta(a) => theta(&ctx.weights(&a.weights)?, &a.opts),
        Command::LinebundleHall(a) => linebundle(&ctx.weights(&a.weights)?, &a.opts),
        Command::Generic(a) => {
            let h = GenericHall::new(ctx.weights(&a.weights)?)?;
            let params = |extra: Value| {
                let mut p = json!({"weights": h.weights().weights()});
                if let (Some(p), Some(e)) = (p.as_object_mut(), extra.as_object()) {
                    p.extend(e.clone());
                }
                p
            };
            match &a.command {
                GenericCommand::Mul { a: x, b: y } => {
                    let (x, y) = (parse_sequence(x)?, parse_sequence(y)?);
                    let prod = h.multiply(&h.basis(&x)?, &h.basis(&y)?)?;
                    Ok(report("generic mul", params(json!({"a": x.to_string(), "b": y.to_string()})), json!({"terms": prod.to_json()}), vec![]))
                }
                GenericCommand::Comul { gamma } => {
                    let g = parse_sequence(gamma)?;
                    let d = h.comultiply(&g, &h.weights().k0_zero())?;
                    Ok(report("generic comul", params(json!({"gamma": g.to_string()})), json!({"terms": d.to_json()}), vec![]))
                }
                GenericCommand::Pair { a: x, b: y } => {
                    let (x, y) = (parse_sequence(x)?, parse_sequence(y)?);
                    let p = h.pair(&h.basis(&x)?, &h.basis(&y)?)?;
                    Ok(report("generic pair", params(json!({"a": x.to_string(), "b": y.to_string()})), json!({"value": p.to_string()}), vec![]))
                }
                GenericCommand::ThetaPair { alpha, x } => {
                    let (al, x) = (parse_sequence(alpha)?, h.weights().parse_element(x)?);
                    let r = h.theta_pairing_values(&al, &x)?;
                    let (b, c) = (r.bilinear.to_string(), r.closed_form.to_string());
                    Ok(report(
                        "generic theta-pair",
                        params(json!({"alpha": al.to_string(), "x": x.to_string()})),
                        json!({"expansion": b, "closed_form": c, "agree": r.agrees()}),
                        vec![Check::holds("two evaluations agree", r.agrees(), b, c)],
                    ))
                }
            }
        }
        Command::TameBg(a) => {
            let q = ctx.q(a.q)?;
            let lam = parse_partition(&a.lam)?;
            let r = tame_bg(q, &lam, a.i, a.p)?;
            let checks = vec![
                Check::holds("F constant over points", r.hall_constant, r.values.len(), "1 value"),
                Check::holds("BG quantity constant over points", r.bg_constant, r.values.len(), "1 value"),
            ];
            Ok(report("tame-bg", json!({"q": q, "lam": lam.to_string(), "i": a.i, "p": a.p}), r.to_json(), checks))
        }
        Command::Sweep(a) => {
            let ids = match &a.criteria {
                Some(s) => parse_list(s)?,
                None => CRITERIA.iter().map(|c| c.0).collect(),
            };
            let mut results = Vec::new();
            let mut checks = Vec::new();
            for id in ids {
                let r = run_criterion(id)?;
                eprintln!("{}", r.line());
                checks.push(Check::holds(r.line(), r.pass(), r.checks.iter().filter(|c| c.pass).count(), r.checks.len()));
                let mut j = r.to_json();
                // keep the report readable: failures in full, passes counted
                j["checks"] = r.failures().map(|c| serde_json::to_value(c).expect("plain data")).collect();
                j["passed"] = json!(r.checks.iter().filter(|c| c.pass).count());
                j["total"] = json!(r.checks.len());
                results.push(j);
            }
            Ok(report("sweep", json!({"criteria": a.criteria}), json!({"criteria": results}), checks))
        }
    }
}

fn theta(w: &WeightData, o: &ThetaOpts) -> CliResult<RunReport> {
    let x = w.parse_element(&o.x)?;
    let mode = o.q.map_or(ThetaMode::Generic, ThetaMode::Concrete);
    let e = theta_expand(w, &x, mode)?;
    Ok(report("theta", json!({"weights": w.weights(), "x": x.to_string(), "q": o.q}), e.to_json(), vec![]))
}

fn linebundle(w: &WeightData, o: &LineBundleOpts) -> CliResult<RunReport> {
    let (a, u) = (parse_sequence(&o.alpha)?, w.parse_element(&o.u)?);
    let p = hall_poly_into_line_bundle(w, &a, &u)?;
    Ok(report(
        "linebundle-hall",
        json!({"weights": w.weights(), "alpha": a.to_string(), "u": u.to_string()}),
        json!({"polynomial": p.to_string()}),
        vec![],
    ))
}

fn load_config(path: &Option<PathBuf>) -> CliResult<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("config '{}': {}", p.display(), e)))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("config '{}': {}", p.display(), e)))
        }
    }
}

/// Run a parsed command line; returns the JSON to print and the exit code.
pub fn execute(cli: &Cli) -> (Value, i32) {
    let start = Instant::now();
    let out = load_config(&cli.config).and_then(|config| run_command(&Ctx { config }, &cli.command));
    match out {
        Ok(mut r) => {
            r.seconds = start.elapsed().as_secs_f64();
            let code = r.exit_code();
            let body = if cli.report { r.to_json() } else { r.results.clone() };
            (body, code)
        }
        Err(e) => (json!({"error": e.to_string()}), e.exit_code()),
    }
}

/// Parse `argv`, run, and return `(stdout JSON, stderr text, exit code)`.
pub fn dispatch<I, T>(argv: I) -> (Option<Value>, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (None, e.render().to_string(), code)
        }
        Ok(cli) => {
            let (v, code) = execute(&cli);
            if code != 0 && v.get("error").is_some() {
                let msg = v["error"].as_str().unwrap_or_default().to_string();
                return (None, format!("error: {}\n", msg), code);
            }
            (Some(v), String::new(), code)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args() -> i32 {
    let (out, err, code) = dispatch(std::env::args_os());
    if !err.is_empty() {
        eprint!("{}", err);
    }
    if let Some(v) = out {
        // a closed pipe downstream is not an error of ours
        let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&v).expect("serializable"));
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn run(args: &[&str]) -> (Option<Value>, String, i32) {
        dispatch(std::iter::once("hallpoly").chain(args.iter().copied()))
    }

    fn ok(args: &[&str]) -> Value {
        let (v, err, code) = run(args);
        assert_eq!(code, 0, "{}", err);
        v.unwrap()
    }

    #[test]
    fn hall_number_of_a_regular_module() {
        let v = ok(&["hall", "--quiver", "kronecker", "--q", "2", "--Z", "reg:0:1:[1]", "--X", "simple:1", "--Y", "simple:2"]);
        assert_eq!(v, json!({"F": 1}));
    }

    #[test]
    fn classical_hall_polynomial() {
        let v = ok(&["classical-hall", "--lam", "1,1", "--mu", "1", "--nu", "1"]);
        assert_eq!(v["poly"], "T + 1");
        assert_eq!(v["stabilized"], true);
    }

    #[test]
    fn weight_info() {
        let v = ok(&["wpl", "--weights", "2,2,2", "info"]);
        assert_eq!(v["delta_omega"], -1);
        assert_eq!(v["class"], "domestic");
    }

    #[test]
    fn tame_bg_examples() {
        let v = ok(&["tame-bg", "--q", "2", "--lam", "1", "--i", "0", "--p", "0"]);
        assert_eq!(v["values"].as_array().unwrap().len(), 3);
        assert_eq!(v["pass"], true);
        let v = ok(&["tame-bg", "--q", "5", "--lam", "1,1", "--i", "0", "--p", "1"]);
        assert_eq!(v["values"].as_array().unwrap().len(), 6);
        assert_eq!(v["pass"], true);
        let (_, err, code) = run(&["tame-bg", "--q", "2", "--lam", "1", "--i", "1", "--p", "0"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: "));
    }

    #[test]
    fn report_envelope() {
        let v = ok(&["--report", "classical-hall", "--lam", "2", "--mu", "1", "--nu", "1"]);
        assert_eq!(v["subcommand"], "classical-hall");
        assert_eq!(v["results"]["poly"], "1");
        assert_eq!(v["pass"], true);
        assert!(v["wall_time_s"].is_number());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["frobnicate"]).2, 2);
        assert_eq!(run(&["classical-hall", "--lam", "1,2", "--mu", "1", "--nu", "1"]).2, 2);
        assert_eq!(run(&["wpl", "--weights", "2,2,2", "linebundle-hall", "--alpha", "0", "--u", ";2"]).2, 2);
    }

    #[test]
    fn theta_pairing_disagreement_exits_1() {
        let (v, _, code) = run(&["generic", "--weights", "2,2,2", "theta-pair", "--alpha", "seg:1:0:1", "--x", "1,0,0;0"]);
        assert_eq!(code, 1);
        let (_, _, code) = run(&["generic", "--weights", "", "theta-pair", "--alpha", "pt:1:[1]", "--x", ";1"]);
        assert_eq!(code, 0, "{:?}", v);
    }

    #[test]
    fn outputs_are_deterministic() {
        let args = ["generic", "--weights", "2,2,2", "mul", "--a", "seg:1:0:1", "--b", "seg:1:1:1"];
        assert_eq!(ok(&args), ok(&args));
    }

    #[test]
    fn module_labels_parse() {
        let f = crate::exactfield::make_field(3, 1).unwrap();
        let q = crate::quiverrep::Quiver::kronecker();
        let m = parse_module(&q, &f, "prep:1+reg:1:1:[2,1]").unwrap();
        assert_eq!(m.dims(), &[4, 5]);
        assert!(parse_module(&q, &f, "reg:1:1").is_err());
    }
}
