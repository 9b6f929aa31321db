//! Command-line front end: `ctx`, `code`, `dualcheck`, `residue-demo`, `selftest`.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 pass,
//! 1 verification failure, 2 bad parameters, 3 precondition violation,
//! 4 enumeration budget exceeded.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codes::{
    dual_code, lg_basis, lrs_basis, min_distance, pairing, subspace_from_json, CodeBasis, Domain, HomTuple,
};
use crate::context::{make_differential_context, make_frobenius_context, standard, Ctx, Kind};
use crate::dual::{c_dual, orthogonal_subspace};
use crate::error::{Error, Result};
use crate::fields::{Elem, Gf, GfField, RatFunc};
use crate::linalg::Subspace;
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};
use crate::suites::{run_all, run_suite};
use crate::taylor::residue_sum;

#[derive(Parser, Debug)]
#[command(name = "orecodes", version, about = "Ore polynomials, skew residues and duality of sum-rank codes")]
struct Cli {
    /// Seed for randomized reports.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a context descriptor with Z(X) and the Gram matrix.
    Ctx(CtxArgs),
    /// Build an LRS or LG code.
    Code(CodeArgs),
    /// Check LRS(k, c, V)^⊥ = LG(n−k, c^∨, V^⊥) on one instance.
    Dualcheck(DualArgs),
    /// Per-point T_rd(sres) values of num/den and their sum.
    ResidueDemo(ResidueArgs),
    /// Run verification suites 1–9.
    Selftest(SelftestArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Frobenius,
    Differential,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    A,
    B,
    C,
    D,
}

#[derive(Args, Debug, Default)]
struct CtxArgs {
    /// One of the standard contexts; ignored when --kind is given.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    e: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// a in δ = a(θ − id), as comma-separated coefficients.
    #[arg(long)]
    twist: Option<String>,
    /// a in δ = a·d/dt, as "num/den" coefficient lists.
    #[arg(long)]
    a: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Lrs,
    Lg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Msrd,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Evaluation points, separated by ';' or given by repeating the flag.
    #[arg(long = "points", action = clap::ArgAction::Append)]
    points: Vec<String>,
    /// JSON file holding one list of spanning elements per point.
    #[arg(long)]
    subspaces: Option<String>,
    /// The same JSON, inline.
    #[arg(long, conflicts_with = "subspaces")]
    subspaces_json: Option<String>,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(flatten)]
    ctx: CtxArgs,
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, value_enum)]
    check: Option<CheckArg>,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[command(flatten)]
    ctx: CtxArgs,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[command(flatten)]
    inst: InstanceArgs,
    /// Perturb one LG generator; the check must then fail.
    #[arg(long)]
    corrupt: bool,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    #[command(flatten)]
    ctx: CtxArgs,
    /// Ore polynomial: ';'-separated coefficients, or a JSON array.
    #[arg(long)]
    num: Option<String>,
    /// Central polynomial in Z, same syntax.
    #[arg(long)]
    den: Option<String>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run only these suites.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => 1,
        Error::BudgetExceeded(_) => 4,
        Error::RamifiedPoint(_)
        | Error::RepeatedUpsilon
        | Error::KOutOfRange(_)
        | Error::NonSplitDenominator
        | Error::ZeroPointFrobenius
        | Error::NonDivisible
        | Error::DivisionByZero
        | Error::DegreeTooLarge(_)
        | Error::ZeroInput
        | Error::ZeroFunction
        | Error::TruncationTooSmall
        | Error::NoLinearizedAnnihilator
        | Error::NotApplicable(_) => 3,
        _ => 2,
    }
}

/// Runs the CLI on `args` (program name first), printing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Ctx(a) => cmd_ctx(a),
        Command::Code(a) => cmd_code(a),
        Command::Dualcheck(a) => cmd_dualcheck(a),
        Command::ResidueDemo(a) => cmd_residue_demo(a),
        Command::Selftest(a) => Ok(cmd_selftest(a, cli.seed)),
    };
    match res {
        Ok((doc, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn resolve_ctx(a: &CtxArgs, default: Preset) -> Result<Ctx> {
    let Some(kind) = a.kind else {
        return Ok(match a.preset.unwrap_or(default) {
            Preset::A => standard::ctx_a(),
            Preset::B => standard::ctx_b(),
            Preset::C => standard::ctx_c(),
            Preset::D => standard::ctx_d(),
        });
    };
    match kind {
        KindArg::Frobenius => {
            let (p, e, s) = (a.p.unwrap_or(3), a.e.unwrap_or(1), a.s.unwrap_or(2));
            let twist = match &a.twist {
                Some(t) => {
                    let k = GfField::default_of_degree(p, e * s)?;
                    Some(Elem::parse_like(&Elem::Gf(Gf::zero(&k)), t)?)
                }
                None => None,
            };
            make_frobenius_context(p, e, s, twist.as_ref())
        }
        KindArg::Differential => {
            let p = a.p.unwrap_or(2);
            if a.e.is_some_and(|e| e != 1) || a.s.is_some_and(|s| s as u64 != p) {
                return Err(Error::InvalidParameter("differential contexts have e = 1 and s = p".into()));
            }
            let template = Elem::Rat(RatFunc::zero(p));
            let a_elem = match &a.a {
                Some(s) => Elem::parse_like(&template, s)?,
                None => template.one_like(),
            };
            make_differential_context(p, &a_elem)
        }
    }
}

fn cmd_ctx(a: &CtxArgs) -> Result<(Value, i32)> {
    let ctx = resolve_ctx(a, Preset::A)?;
    let mut doc = serde_json::to_value(ctx.descriptor()).expect("descriptor serializes");
    doc["z_coeffs"] = Value::Array(ctx.z_coeffs().iter().map(Elem::to_json).collect());
    doc["z"] = json!(OrePoly::z(&ctx).to_string());
    doc["basis"] = Value::Array(ctx.basis().iter().map(Elem::to_json).collect());
    doc["gram"] = Value::Array(ctx.gram().row_vecs().iter().map(|r| Value::Array(r.iter().map(Elem::to_json).collect())).collect());
    Ok((doc, 0))
}

fn parse_points(ctx: &Ctx, raw: &[String]) -> Result<Vec<Elem>> {
    raw.iter()
        .flat_map(|s| s.split(';'))
        .filter(|s| !s.trim().is_empty())
        .map(|s| Elem::parse_like(&ctx.zero(), s))
        .collect()
}

fn parse_subspaces(ctx: &Ctx, inst: &InstanceArgs, m: usize) -> Result<Vec<Subspace>> {
    let text = match (&inst.subspaces, &inst.subspaces_json) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{path}: {e}")))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Ok(vec![ctx.full_space(); m]),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = v.as_array().ok_or_else(|| Error::Parse("expected a list of subspaces".into()))?;
    list.iter().map(|s| subspace_from_json(ctx, s)).collect()
}

/// Points and subspaces, defaulting to two points with V = (K, K).
fn instance(ctx: &Ctx, inst: &InstanceArgs) -> Result<(Vec<Elem>, Vec<Subspace>)> {
    let mut cs = parse_points(ctx, &inst.points)?;
    if cs.is_empty() {
        let g = ctx.basis()[1].clone();
        cs = match ctx.kind() {
            Kind::Frobenius => vec![ctx.one(), &ctx.one() + &g],
            Kind::Differential => vec![ctx.one(), g],
        };
    }
    let vs = parse_subspaces(ctx, inst, cs.len())?;
    if vs.len() != cs.len() {
        return Err(Error::InvalidParameter(format!("{} points but {} subspaces", cs.len(), vs.len())));
    }
    Ok((cs, vs))
}

fn cmd_code(a: &CodeArgs) -> Result<(Value, i32)> {
    let ctx = resolve_ctx(&a.ctx, Preset::A)?;
    let (cs, vs) = instance(&ctx, &a.inst)?;
    let code = match a.family {
        FamilyArg::Lrs => lrs_basis(&ctx, a.k, &cs, &vs)?,
        FamilyArg::Lg => lg_basis(&ctx, a.k, &cs, &vs)?,
    };
    let mut doc = code.to_json();
    let mut exit = 0;
    if a.check == Some(CheckArg::Msrd) {
        let (n, k) = (code.length(), code.k());
        let d = min_distance(&code)?;
        let msrd = k + d == n + 1;
        doc["check"] = json!({"n": n, "k": k, "d": d, "msrd": msrd});
        if !msrd {
            exit = 1;
        }
    }
    Ok((doc, exit))
}

/// Adds an ambient element outside LG to the first generator (or appends it).
fn corrupt(lg: &CodeBasis) -> Vec<HomTuple> {
    let ctx = lg.ctx();
    let span = lg.f_span();
    let e = lg.domain().f_basis(ctx).into_iter().find(|e| !span.contains(&e.flatten()));
    let mut gens = lg.generators().to_vec();
    if let Some(e) = e {
        match gens.first_mut() {
            Some(g) => *g = g.add(&e).expect("same domain"),
            None => gens.push(e),
        }
    }
    gens
}

fn cmd_dualcheck(a: &DualArgs) -> Result<(Value, i32)> {
    let ctx = resolve_ctx(&a.ctx, Preset::A)?;
    let (cs, vs) = instance(&ctx, &a.inst)?;
    let n: usize = vs.iter().map(Subspace::dim).sum();
    let lrs = lrs_basis(&ctx, a.k, &cs, &vs)?;
    let dual_cs = cs.iter().map(|c| c_dual(&ctx, c)).collect::<Result<Vec<_>>>()?;
    let perp: Vec<Subspace> = vs.iter().map(|v| orthogonal_subspace(&ctx, v)).collect();
    let lg = lg_basis(&ctx, n - a.k.min(n), &dual_cs, &perp)?;
    let gens = if a.corrupt { corrupt(&lg) } else { lg.generators().to_vec() };
    let mut values = Vec::new();
    let mut pairings_vanish = true;
    for g in &gens {
        let mut row = Vec::new();
        for h in lrs.generators() {
            let v = pairing(g, h)?;
            pairings_vanish &= v.is_zero();
            row.push(v.to_json());
            for b in ctx.basis() {
                pairings_vanish &= pairing(g, &h.scale_k(b))?.is_zero();
            }
        }
        values.push(Value::Array(row));
    }
    let dims_ok = lrs.k() + gens.len() == n;
    let d = dual_code(&lrs)?;
    let lg_domain = Domain::quotient(&perp);
    let membership_ok = gens.iter().all(|g| d.contains(g)) && {
        let cand = CodeBasis::new(&ctx, lg.family(), dual_cs.clone(), lg_domain, gens.clone());
        cand.map(|c| d.generators().iter().all(|g| c.contains(g))).unwrap_or(false)
    };
    let pass = pairings_vanish && dims_ok && membership_ok;
    let doc = json!({
        "n": n,
        "k": lrs.k(),
        "lg_k": gens.len(),
        "corrupted": a.corrupt,
        "pairings": values,
        "pairings_vanish": pairings_vanish,
        "dimensions_sum_to_n": dims_ok,
        "mutual_membership": membership_ok,
        "pass": pass,
    });
    Ok((doc, if pass { 0 } else { 1 }))
}

fn parse_coeffs(ctx: &Ctx, s: &str) -> Result<Value> {
    let s = s.trim();
    if s.starts_with('[') {
        return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
    }
    let cs = s.split(';').map(|c| Elem::parse_like(&ctx.zero(), c)).collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(cs.iter().map(Elem::to_json).collect()))
}

fn cmd_residue_demo(a: &ResidueArgs) -> Result<(Value, i32)> {
    let ctx = resolve_ctx(&a.ctx, Preset::B)?;
    let (num, den) = match (&a.num, &a.den) {
        (Some(n), Some(d)) => (OrePoly::from_json(&ctx, &parse_coeffs(&ctx, n)?)?, CentralPoly::from_json(&ctx, &parse_coeffs(&ctx, d)?)?),
        (None, None) if ctx.kind() == Kind::Differential => {
            // t·X / ((Z + 1)(Z + t^p + 1))
            let t = Elem::parse_like(&ctx.zero(), "0,1/1")?;
            let w = &t.powi(ctx.p() as i64)? + &ctx.one();
            let den = &CentralPoly::linear(&ctx, &ctx.one()) * &CentralPoly::linear(&ctx, &w);
            (OrePoly::monomial(&ctx, t, 1), den)
        }
        _ => return Err(Error::InvalidParameter("give both --num and --den".into())),
    };
    let f = OreFraction::new(num, den)?;
    let rep = residue_sum(&f)?;
    let doc = json!({
        "f": f.to_json(),
        "points": rep.points.iter().map(Elem::to_json).collect::<Vec<_>>(),
        "values": rep.values.iter().map(Elem::to_json).collect::<Vec<_>>(),
        "sum": rep.sum.to_json(),
        "asserted": rep.asserted,
        "unasserted": !rep.asserted,
    });
    Ok((doc, 0))
}

fn cmd_selftest(a: &SelftestArgs, seed: u64) -> (Value, i32) {
    let reports = if a.only.is_empty() { run_all(seed) } else { a.only.iter().map(|&i| run_suite(i, seed)).collect() };
    let passed = reports.iter().all(|r| r.passed);
    let doc = json!({"seed": seed, "passed": passed, "suites": reports});
    (doc, if passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["orecodes"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        let doc = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, doc)
    }

    #[test]
    fn ctx_descriptors() {
        let (code, doc) = call(&["ctx", "--kind", "frobenius", "--p", "3", "--e", "1", "--s", "2"]);
        assert_eq!(code, 0);
        assert_eq!(doc["z"], json!("X^2"));
        assert_eq!(doc["s"], json!(2));
        let (code, doc) = call(&["ctx", "--kind", "differential", "--p", "2", "--a", "1"]);
        assert_eq!(code, 0);
        assert_eq!(doc["z_coeffs"], call(&["ctx", "--preset", "b"]).1["z_coeffs"]);
        assert_eq!(call(&["ctx", "--kind", "frobenius", "--s", "1"]).0, 2);
        assert_eq!(call(&["ctx", "--kind", "frobenius", "--p", "4"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
    }

    #[test]
    fn code_command() {
        let (code, doc) = call(&["code", "--family", "lrs", "--k", "1", "--points", "1", "--subspaces-json", "[[1, [0,1]]]", "--check", "msrd"]);
        assert_eq!(code, 0);
        assert_eq!(doc["check"], json!({"n": 2, "k": 1, "d": 2, "msrd": true}));
        let back = CodeBasis::from_json(&standard::ctx_a(), &doc).unwrap();
        assert_eq!(back.k(), 1);
        let (code, _) = call(&["code", "--family", "lg", "--k", "4", "--points", "1;1,1", "--subspaces-json", "[[], []]"]);
        assert_eq!(code, 3);
        let (code, _) = call(&["code", "--family", "lrs", "--k", "1", "--points", "1", "--points", "2"]);
        assert_eq!(code, 3);
        let (code, _) = call(&["code", "--preset", "b", "--family", "lrs", "--k", "1", "--points", "1", "--check", "msrd"]);
        assert_eq!(code, 4);
    }

    #[test]
    fn dualcheck_command() {
        let (code, doc) = call(&["dualcheck"]);
        assert_eq!(code, 0);
        assert_eq!(doc["pairings"].as_array().unwrap().len(), 2);
        assert_eq!(call(&["dualcheck", "--corrupt"]).0, 1);
        let (code, _) = call(&["dualcheck", "--preset", "b", "--k", "1", "--points", "1", "--subspaces-json", "[[{\"num\": [0,1], \"den\": [1]}]]"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn residue_demo_command() {
        let (code, doc) = call(&["residue-demo"]);
        assert_eq!(code, 0);
        assert_eq!(doc["values"].as_array().unwrap().len(), 2);
        assert_eq!(doc["asserted"], json!(true));
        let (code, doc) = call(&["residue-demo", "--num", "0;0,0,1/1", "--den", "1"]);
        assert_eq!((code, doc["points"].clone()), (0, json!([])));
        let (code, doc) = call(&["residue-demo", "--num", "0;0;0;1", "--den", "1;1"]);
        assert_eq!((code, doc["unasserted"].clone()), (0, json!(true)));
        assert_eq!(call(&["residue-demo", "--num", "1", "--den", "0,0,1/1;0;1"]).0, 3);
    }

    #[test]
    fn selftest_subset() {
        let (code, doc) = call(&["selftest", "--only", "3", "--seed", "7"]);
        assert_eq!(code, 0);
        assert_eq!(doc["suites"][0]["id"], json!(3));
    }
}
