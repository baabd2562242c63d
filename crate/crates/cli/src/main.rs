mod render;

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dynlab::characters::covers;
use dynlab::cyclotomic::{cyclo_factor_scan, cyclotomic_poly, CycloFactorReport};
use dynlab::dynatomic::{
    generalized_degree, generalized_dynatomic, random_leg, verify_relation, Evidence,
    RelationCertificate, RelationTuple, DEFAULT_DEGREE_CAP,
};
use dynlab::necklace::{
    dynamical_necklace, fast_xn1_divides, necklace_operator, necklace_poly, necklace_valuation,
    scan_grid,
};
use dynlab::numtheory::factorize;
use dynlab::poly::parse::{parse_family, parse_rational, reduce_rational_poly, AnyPoly};
use dynlab::{QPoly, QaPoly, Rational};

const EXIT_ERROR: u8 = 1;
const EXIT_NOT_ADMISSIBLE: u8 = 2;
const EXIT_NOT_COVERED: u8 = 3;
const EXIT_FALSIFIED: u8 = 4;

#[derive(Parser)]
#[command(name = "dynlab", version, about = "Necklace, cyclotomic and dynatomic polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the necklace polynomial M_d, or M_{f,d} with --f.
    Necklace(NecklaceArgs),
    /// Strip powers of x and cyclotomic factors from a polynomial.
    CycloFactors(CycloArgs),
    /// Print the (generalized) dynatomic polynomial Phi_{f,m,n}.
    Dynatomic(DynatomicArgs),
    /// Check the divisibility Phi_{f,m,n} | Phi_{f,c,d} - 1 for a tuple.
    Relation(RelationArgs),
    /// List the pairs (d, n) with x^n - 1 dividing M_d.
    Scan(ScanArgs),
    /// Decide whether the hyperplanes of d cover the characters mod n.
    Cover(CoverArgs),
}

#[derive(Args)]
struct NecklaceArgs {
    #[arg(long)]
    d: u64,
    /// Build the dynamical necklace polynomial of this map instead.
    #[arg(long)]
    f: Option<String>,
    /// Reduce modulo this prime.
    #[arg(long = "mod", value_name = "P")]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["necklace", "shifted_cyclotomic", "poly"])))]
struct CycloArgs {
    /// Scan d * M_d.
    #[arg(long, value_name = "D")]
    necklace: Option<u64>,
    /// Scan Phi_N - 1.
    #[arg(long, value_name = "N")]
    shifted_cyclotomic: Option<u64>,
    /// Scan an arbitrary rational polynomial.
    #[arg(long, value_name = "EXPR")]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct DynatomicArgs {
    #[arg(long, default_value = "x^2+a")]
    f: String,
    #[arg(long, default_value_t = 0)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long = "mod", value_name = "P")]
    modulus: Option<u64>,
    #[arg(long)]
    degree_max: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct RelationArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    c: u64,
    #[arg(long)]
    d: u64,
    #[arg(long, default_value = "x^2+a")]
    family: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long)]
    degree_max: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the relation certificate as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the checks even when the tuple is not admissible.
    #[arg(long)]
    force: bool,
    /// Substitute a value for the parameter, as `a=VALUE`.
    #[arg(long, value_name = "a=VALUE")]
    specialize: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    d_max: u64,
    #[arg(long)]
    n_max: u64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    /// Decimal, up to 128 bits.
    #[arg(long)]
    d: String,
    #[arg(long)]
    n: u64,
    /// Write the cover certificate as JSON.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Necklace(a) => cmd_necklace(a),
        Command::CycloFactors(a) => cmd_cyclo(a),
        Command::Dynatomic(a) => cmd_dynatomic(a),
        Command::Relation(a) => cmd_relation(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Cover(a) => cmd_cover(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn print_json(v: &Value) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// `--degree-max`, then `DYNLAB_DEGREE_CAP`, then the library default.
fn degree_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("DYNLAB_DEGREE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("DYNLAB_DEGREE_CAP must be a nonnegative integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
    }
}

/// Parse `f` over Q[a] when it mentions `a`, else over Q, optionally mod p.
fn parse_map(s: &str, modulus: Option<u64>) -> Result<AnyPoly> {
    let fam = parse_family(s)?;
    Ok(match (fam.to_rational(), modulus) {
        (Some(q), Some(p)) => AnyPoly::Fp(reduce_rational_poly(&q, p)?, p),
        (Some(q), None) => AnyPoly::Q(q),
        (None, None) => AnyPoly::Qa(fam),
        (None, Some(_)) => bail!("a family in the parameter a cannot be reduced mod p"),
    })
}

fn cmd_necklace(a: NecklaceArgs) -> Result<u8> {
    let (poly, name) = match &a.f {
        None => {
            let q = necklace_poly(a.d)?;
            let p = match a.modulus {
                Some(p) => AnyPoly::Fp(reduce_rational_poly(&q, p)?, p),
                None => AnyPoly::Q(q),
            };
            (p, format!("M_{}", a.d))
        }
        Some(s) => {
            let p = match parse_map(s, a.modulus)? {
                AnyPoly::Q(f) => AnyPoly::Q(dynamical_necklace(&f, a.d)?),
                AnyPoly::Fp(f, p) => AnyPoly::Fp(dynamical_necklace(&f, a.d)?, p),
                AnyPoly::Qa(f) => AnyPoly::Qa(dynamical_necklace(&f, a.d)?),
            };
            (p, format!("M_(f,{}) for f = {s}", a.d))
        }
    };
    let valuation = necklace_valuation(a.d as u128)?;
    let operator = necklace_operator(a.d)?;
    match a.format {
        Format::Text => {
            out!("{name} = {poly}");
            if a.f.is_none() {
                out!("x-adic valuation (cocore of d): {valuation}");
            }
            out!("operator phi_{} = {operator}", a.d);
        }
        Format::Json => print_json(&json!({
            "d": a.d,
            "f": a.f,
            "poly": poly.to_json(),
            "cocore": valuation.to_string(),
            "operator": operator.to_string(),
        }))?,
    }
    Ok(0)
}

fn cyclo_text(r: &CycloFactorReport) -> String {
    let mut lines = vec![format!("input degree: {}", r.input_degree)];
    lines.push(format!("x multiplicity: {}", r.x_multiplicity));
    let factors: Vec<String> = r
        .cyclo_indices
        .iter()
        .map(|&(n, m)| if m == 1 { format!("Phi_{n}") } else { format!("Phi_{n}^{m}") })
        .collect();
    lines.push(format!(
        "cyclotomic factors: {}",
        if factors.is_empty() { "none".to_string() } else { factors.join(" ") }
    ));
    lines.push(format!("cofactor degree: {}", r.cofactor_degree));
    lines.push(format!("cofactor: {}", r.cofactor));
    lines.join("\n")
}

fn cmd_cyclo(a: CycloArgs) -> Result<u8> {
    let p: QPoly = if let Some(d) = a.necklace {
        necklace_poly(d)?.scale(&Rational::from_integer(d.into()))
    } else if let Some(n) = a.shifted_cyclotomic {
        cyclotomic_poly(n)?.add_constant(&-Rational::from_integer(1.into()))
    } else {
        parse_rational(a.poly.as_deref().expect("clap requires one input"))?
    };
    let report = cyclo_factor_scan(&p)?;
    match a.format {
        Format::Text => out!("{}", cyclo_text(&report)),
        Format::Json => print_json(&report.to_json())?,
    }
    Ok(0)
}

fn check_cap(f: &AnyPoly, m: u64, n: u64, cap: usize) -> Result<()> {
    let k = match f {
        AnyPoly::Q(p) => p.degree(),
        AnyPoly::Fp(p, _) => p.degree(),
        AnyPoly::Qa(p) => p.degree(),
    }
    .unwrap_or(0) as u64;
    if k < 2 {
        bail!("f = {f} must have degree at least 2");
    }
    match generalized_degree(k, m, n) {
        Some(deg) if deg <= cap as u128 => Ok(()),
        Some(deg) => bail!("Phi_(f,{m},{n}) has degree {deg}, above the cap {cap}"),
        None => bail!("Phi_(f,{m},{n}) has astronomically large degree, above the cap {cap}"),
    }
}

fn cmd_dynatomic(a: DynatomicArgs) -> Result<u8> {
    let f = parse_map(&a.f, a.modulus)?;
    check_cap(&f, a.m, a.n, degree_cap(a.degree_max)?)?;
    let phi = match &f {
        AnyPoly::Q(p) => AnyPoly::Q(generalized_dynatomic(p, a.m, a.n)?),
        AnyPoly::Fp(p, q) => AnyPoly::Fp(generalized_dynatomic(p, a.m, a.n)?, *q),
        AnyPoly::Qa(p) => AnyPoly::Qa(generalized_dynatomic(p, a.m, a.n)?),
    };
    let degree = match &phi {
        AnyPoly::Q(p) => p.deg(),
        AnyPoly::Fp(p, _) => p.deg(),
        AnyPoly::Qa(p) => p.deg(),
    };
    match a.format {
        Format::Text => {
            out!("Phi_(f,{},{}) for f = {f}:", a.m, a.n);
            out!("{phi}");
            out!("degree: {degree}");
        }
        Format::Json => print_json(&json!({
            "f": f.to_string(),
            "m": a.m,
            "n": a.n,
            "degree": degree,
            "poly": phi.to_json(),
        }))?,
    }
    Ok(0)
}

fn parse_specialization(s: &str) -> Result<Rational> {
    let (var, value) = s.split_once('=').context("--specialize expects a=VALUE")?;
    if var.trim() != "a" {
        bail!("only the parameter a can be specialized, got '{}'", var.trim());
    }
    let c = parse_rational(value)?;
    if c.deg() > 0 {
        bail!("specialization value '{value}' must be a number");
    }
    Ok(c.coeff(0))
}

fn family_evidence(a: &RelationArgs, t: &RelationTuple, cap: usize) -> Result<Option<Evidence>> {
    let fam: QaPoly = parse_family(&a.family)?;
    if let Some(spec) = &a.specialize {
        let value = parse_specialization(spec)?;
        let f = fam.specialize(&value);
        let mut e = verify_relation(t, &f, cap)?;
        e.family = format!("{f} ({} at a = {value})", a.family);
        return Ok(Some(e));
    }
    Ok(Some(match fam.to_rational() {
        None => verify_relation(t, &fam, cap)?,
        Some(f) => verify_relation(t, &f, cap)?,
    }))
}

fn evidence_line(e: &Evidence) -> String {
    let outcome = match (e.cofactor_degree, e.remainder_degree) {
        (Some(c), _) => format!("divides, cofactor degree {c}"),
        (_, Some(r)) => format!("does not divide, remainder degree {r}"),
        _ => "no outcome".into(),
    };
    format!("f = {} over {}: {outcome}", e.family, e.ring)
}

fn cmd_relation(a: RelationArgs) -> Result<u8> {
    let t = RelationTuple::new(a.m, a.n, a.c, a.d)?;
    let cap = degree_cap(a.degree_max)?;
    let mut cert = RelationCertificate::new(t)?;
    let admissible = cert.conditions.admissible;
    let run_family = admissible || a.force || a.specialize.is_some();
    if run_family {
        cert.evidence.extend(family_evidence(&a, &t, cap)?);
    }
    if admissible || a.force {
        cert.evidence.extend(random_leg(&t, a.seed, a.trials, cap)?);
    }

    let code = if !admissible {
        EXIT_NOT_ADMISSIBLE
    } else if cert.all_divide() {
        0
    } else {
        EXIT_FALSIFIED
    };
    let json = cert.to_json();
    if let Some(path) = &a.out {
        write_file(path, &format!("{}\n", serde_json::to_string_pretty(&json)?))?;
    }
    match a.format {
        Format::Json => print_json(&json)?,
        Format::Text => {
            let c = &cert.conditions;
            out!("tuple (m, n, c, d) = ({}, {}, {}, {})", t.m, t.n, t.c, t.d);
            out!("cond1 (m > c or n does not divide d): {}", c.cond1);
            out!("cond2 (cocore(d) >= m - max(c - 1, 0)): {}", c.cond2);
            out!("cond3 (x^n - 1 divides M_d): {}", c.cond3);
            out!("alt (d > 1, c - 1 >= m, n = 1): {}", c.alt);
            out!("admissible: {admissible}");
            let (random, named): (Vec<&Evidence>, Vec<&Evidence>) =
                cert.evidence.iter().partition(|e| e.seed.is_some());
            for e in named {
                out!("{}", evidence_line(e));
            }
            if !random.is_empty() {
                let ok = random.iter().filter(|e| e.divides).count();
                out!(
                    "random monic integer f (seed {}): {ok} of {} divide",
                    a.seed,
                    random.len()
                );
                for e in random.iter().filter(|e| !e.divides) {
                    out!("  {}", evidence_line(e));
                }
            }
            out!(
                "{}",
                match code {
                    0 => "verified",
                    EXIT_NOT_ADMISSIBLE => "not admissible",
                    _ => "FALSIFIED: admissible tuple failed a check",
                }
            );
        }
    }
    Ok(code)
}

fn cmd_scan(a: ScanArgs) -> Result<u8> {
    if a.d_max == 0 || a.n_max == 0 {
        bail!("--d-max and --n-max must be positive");
    }
    let rows = scan_grid(a.d_max, a.n_max)?;
    let csv = render::csv(&rows);
    match &a.out {
        Some(path) => write_file(path, &csv)?,
        None => write!(std::io::stdout().lock(), "{csv}")?,
    }
    if let Some(path) = &a.svg {
        write_file(path, &render::svg(&rows, a.d_max, a.n_max))?;
    }
    if a.out.is_some() {
        out!("{} pairs with d <= {}, n <= {}", rows.len(), a.d_max, a.n_max);
    }
    Ok(0)
}

fn cmd_cover(a: CoverArgs) -> Result<u8> {
    let d: u128 = a.d.trim().parse().with_context(|| format!("--d must be a positive decimal integer, got '{}'", a.d))?;
    if d == 0 || a.n == 0 {
        bail!("d and n must be positive");
    }
    let cert = covers(d, a.n)?;
    let cocore = factorize(d)?.cocore();
    let divides = fast_xn1_divides(d, a.n as u128)?;
    if let Some(path) = &a.certificate {
        write_file(path, &format!("{}\n", serde_json::to_string_pretty(&cert.to_json())?))?;
    }
    match a.format {
        Format::Json => print_json(&json!({
            "certificate": cert.to_json(),
            "cocore": cocore.to_string(),
            "xn1_divides": divides,
        }))?,
        Format::Text => {
            let primes: Vec<String> = cert.usable_primes.iter().map(|p| p.to_string()).collect();
            out!("d = {d}, n = {}", a.n);
            out!("usable primes (p | d, p does not divide n): {}", primes.join(" "));
            out!("characters mod {}: {}", a.n, cert.witnesses.len());
            if let Some(chi) = &cert.failing_character {
                out!("not covered: character {:?} avoids every hyperplane", chi.exponents);
            } else {
                out!("covered");
            }
            out!("x^{} - 1 divides M_d: {divides}", a.n);
            out!("cocore(d) = {cocore}");
            if divides {
                // cond1 needs m > 0 when n | d
                let low = if d % a.n as u128 == 0 { 1 } else { 0 };
                if low <= cocore {
                    out!(
                        "Phi_(f,m,{}) divides Phi_(f,{d}) - 1 for every f and {low} <= m <= {cocore}",
                        a.n
                    );
                }
            }
        }
    }
    Ok(if cert.covered { 0 } else { EXIT_NOT_COVERED })
}
