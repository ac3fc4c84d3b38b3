use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::belyi::{verify, BelyiModP, InputDigest, RamificationProfile, Status, TripleInput, VerifyOptions};
use crate::bivar::{construct_phi, factor_bivariate};
use crate::par;
use crate::permgrp::{
    genus_of_triple, passport_enumerate, CycleType, PassportOptions, PermError, PermGroup, DEFAULT_CLASS_CAP,
};

use super::{parse_poly_file_with, parse_triple_file, ParseOptions, PolyFile, TripleFile};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "belyi", version, about = "Verify monodromy claims for a Belyi map reduced modulo a prime")]
struct Cli {
    /// Worker threads (0 = one per core); never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check on a map, and on its triple when given.
    VerifyMap(VerifyArgs),
    /// Factor p(t)q(X) - p(X)q(t) over F_p(t).
    FactorBivar(FactorArgs),
    /// Order, transitivity, primitivity, subdegrees, genus and signs.
    GroupInfo(GroupArgs),
    /// Count triples with the same cycle types that generate the same group.
    Passport(PassportArgs),
    /// Print the expanded polynomials.
    Expand(ExpandArgs),
}

#[derive(Args, Debug)]
struct PolyInput {
    polyfile: PathBuf,
    /// Reject coefficients that are not reduced mod p.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: PolyInput,
    #[arg(long)]
    triple: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
    cap: usize,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Expected ramification, e.g. "2^134.1^12 | 7^40 | 3^92.1^4".
    #[arg(long)]
    profile: Option<String>,
    /// Expected order of <x, y>.
    #[arg(long)]
    order: Option<BigUint>,
    /// Defining polynomial of the number field, recorded as metadata.
    #[arg(long)]
    number_field: Option<String>,
    /// The prime ideal, recorded as metadata.
    #[arg(long)]
    prime_ideal: Option<String>,
    /// Record wall times (the certificate is then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct FactorArgs {
    #[command(flatten)]
    input: PolyInput,
    #[arg(long)]
    degrees_only: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GroupArgs {
    triplefile: PathBuf,
}

#[derive(Args, Debug)]
struct PassportArgs {
    triplefile: PathBuf,
    /// Cycle type of z; defaults to that of the given z.
    #[arg(long)]
    z_type: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    input: PolyInput,
}

struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_poly(input: &PolyInput) -> Result<(PolyFile, String), Failure> {
    let text = read(&input.polyfile)?;
    let pf = parse_poly_file_with(&text, ParseOptions { strict: input.strict })
        .map_err(|e| input_error(format!("{}: {e}", input.polyfile.display())))?;
    Ok((pf, text))
}

fn load_map(pf: &PolyFile) -> Result<BelyiModP, Failure> {
    let q = pf.get("q").ok_or_else(|| input_error("the map needs polynomials q and r"))?;
    let r = pf.get("r").ok_or_else(|| input_error("the map needs polynomials q and r"))?;
    let b = BelyiModP::new(q.clone(), r.clone()).map_err(input_error)?;
    if let Some(p) = pf.get("p") {
        if p.expand() != *b.pbar() {
            return Err(input_error("the given p differs from q + r"));
        }
    }
    Ok(b)
}

fn load_triple(path: &Path) -> Result<(TripleFile, String), Failure> {
    let text = read(path)?;
    let tf = parse_triple_file(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok((tf, text))
}

fn verify_map(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (pf, text) = load_poly(&a.input)?;
    let b = load_map(&pf)?;
    let triple = a.triple.as_deref().map(load_triple).transpose()?;
    let mut opts = VerifyOptions {
        expected_profile: a
            .profile
            .as_deref()
            .map(str::parse::<RamificationProfile>)
            .transpose()
            .map_err(input_error)?,
        number_field: a.number_field.clone(),
        prime_ideal: a.prime_ideal.clone(),
        ..Default::default()
    };
    opts.triple.seed = a.seed;
    opts.triple.cap = a.cap;
    opts.triple.expected_order = a.order.clone();
    opts.triple.timings = a.timings;
    let (t, folding) = match &triple {
        Some((tf, _)) => (Some(tf.triple()), tf.folding_elements()),
        None => (None, Vec::new()),
    };
    let ti = t.as_ref().map(|t| TripleInput {
        triple: t,
        folding: &folding,
    });
    let mut cert = verify(&b, ti, &opts);
    cert.context.inputs.push(InputDigest::of_bytes("map", text.as_bytes()));
    if let Some((_, ttext)) = &triple {
        cert.context.inputs.push(InputDigest::of_bytes("triple", ttext.as_bytes()));
    }
    for c in &cert.checks {
        let _ = writeln!(err, "{:<22} {}", c.name, status_word(c.status));
    }
    let json = cert.to_json();
    match &a.certificate {
        Some(path) => std::fs::write(path, &json).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => {
            let _ = out.write_all(json.as_bytes());
        }
    }
    let _ = writeln!(err, "verdict: {}", status_word(cert.verdict));
    if cert.cap_exceeded() {
        return Ok(EXIT_CAP);
    }
    Ok(if cert.verdict == Status::Pass {
        EXIT_PASS
    } else {
        let _ = writeln!(err, "failed: {}", cert.failing().join(", "));
        EXIT_CHECK_FAILED
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
        Status::Inconclusive => "inconclusive",
    }
}

fn factor_bivar(a: &FactorArgs, out: &mut dyn Write) -> Outcome {
    let (pf, _) = load_poly(&a.input)?;
    let b = load_map(&pf)?;
    let phi = construct_phi(b.pbar(), b.q()).map_err(|e| Failure(EXIT_CHECK_FAILED, e.to_string()))?;
    let fac = factor_bivariate(&phi, a.seed).map_err(|e| Failure(EXIT_CHECK_FAILED, e.to_string()))?;
    let degrees: Vec<String> = fac.degrees().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{}", degrees.join(" "));
    if !a.degrees_only {
        let _ = writeln!(out, "unit {}", fac.unit.value());
        let _ = writeln!(out, "content {}", fac.content.to_string().replace('X', "t"));
        for (g, e) in &fac.factors {
            let _ = writeln!(out, "factor degree {} multiplicity {e}: {g}", g.deg_x().unwrap_or(0));
        }
    }
    Ok(EXIT_PASS)
}

fn group_info(a: &GroupArgs, out: &mut dyn Write) -> Outcome {
    let (tf, _) = load_triple(&a.triplefile)?;
    let t = tf.triple();
    let g = PermGroup::new(tf.degree, vec![t.x.clone(), t.y.clone()]).map_err(input_error)?;
    let _ = writeln!(out, "degree {}", tf.degree);
    let _ = writeln!(out, "order {}", g.order());
    let _ = writeln!(out, "transitive {}", g.is_transitive());
    match g.is_primitive() {
        Ok(p) => writeln!(out, "primitive {p}"),
        Err(_) => writeln!(out, "primitive false"),
    }
    .ok();
    if let Ok(mut s) = g.subdegrees() {
        s.sort_unstable();
        let s: Vec<String> = s.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "subdegrees {}", s.join(" "));
    }
    for (name, p) in [("x", &t.x), ("y", &t.y), ("z", &t.z)] {
        let _ = writeln!(out, "{name} type {} sign {:+}", p.cycle_type(), p.sign());
    }
    match genus_of_triple(&t) {
        Ok(gn) => writeln!(out, "genus {gn}"),
        Err(e) => writeln!(out, "genus invalid ({e})"),
    }
    .ok();
    Ok(EXIT_PASS)
}

fn passport(a: &PassportArgs, out: &mut dyn Write) -> Outcome {
    let (tf, _) = load_triple(&a.triplefile)?;
    let t = tf.triple();
    let g = PermGroup::new(tf.degree, vec![t.x.clone(), t.y.clone()]).map_err(input_error)?;
    let z_type: CycleType = match &a.z_type {
        Some(s) => s.parse().map_err(input_error)?,
        None => t.z.cycle_type(),
    };
    let opts = PassportOptions {
        cap: a.cap,
        seed: a.seed,
    };
    match passport_enumerate(&g, &t.x, &t.y, &z_type, &tf.folding_elements(), &opts) {
        Ok(r) => {
            let _ = writeln!(out, "class size {}", r.class_size);
            let _ = writeln!(out, "generating survivors {}", r.survivors);
            let _ = writeln!(out, "raw orbits {}", r.raw_orbit_count);
            let _ = writeln!(out, "folded orbits {} ({} folding elements)", r.folded_orbit_count, tf.folding.len());
            Ok(EXIT_PASS)
        }
        Err(PermError::ClassOrbitCap(c)) => Err(Failure(EXIT_CAP, format!("class orbit exceeds the cap of {c}"))),
        Err(e) => Err(Failure(EXIT_CHECK_FAILED, e.to_string())),
    }
}

fn expand(a: &ExpandArgs, out: &mut dyn Write) -> Outcome {
    let (pf, _) = load_poly(&a.input)?;
    let _ = writeln!(out, "prime {}", pf.field.modulus());
    for (name, p) in &pf.polys {
        let _ = writeln!(out, "poly {name} = ({})", p.expand());
    }
    if pf.get("p").is_none() {
        if let (Some(q), Some(r)) = (pf.get("q"), pf.get("r")) {
            let _ = writeln!(out, "poly p = ({})", &q.expand() + &r.expand());
        }
    }
    Ok(EXIT_PASS)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    par::set_global_threads(cli.threads);
    let result = match &cli.command {
        Command::VerifyMap(a) => verify_map(a, out, err),
        Command::FactorBivar(a) => factor_bivar(a, out),
        Command::GroupInfo(a) => group_info(a, out),
        Command::Passport(a) => passport(a, out),
        Command::Expand(a) => expand(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
