//! The `polysum` command line.
//!
//! Every command prints one JSON document on standard output. Failures print
//! `{"error", "message", "exit_code"}` on standard error and exit with 2
//! (invalid input), 3 (method needs a non-singular fan) or 4 (internal
//! consistency failure).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::conesum::{brion_integral, brion_sum, Xi};
use crate::constants::DEFAULT_PRECISION;
use crate::corpus::random_polynomial;
use crate::emcalc::{
    cs_half_boundary, cs_interior_sum, cs_sum, ehrhart_count, em_sum, guillemin_sum, halfopen_sum, kp_sum,
    twisted_series, weighted_sum, SeriesKind, WeightedMethod,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rat};
use crate::io;
use crate::measure::Polynomial;
use crate::oracle::{
    oracle_count, oracle_halfopen_sum, oracle_interior_sum, oracle_sum, oracle_weighted_sum,
};
use crate::polar::{choose_polarizing, polar_identity_failures, polarized_cones, sample_points, PolarIdentity};
use crate::polytope::SimplePolytope;

#[derive(Debug, Parser)]
#[command(name = "polysum", version, about = "Exact lattice-point sums over simple rational polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct PolytopeArg {
    /// Polytope JSON file.
    #[arg(long)]
    polytope: PathBuf,
}

#[derive(Debug, clap::Args)]
struct SumArgs {
    #[command(flatten)]
    polytope: PolytopeArg,
    /// Polynomial JSON file; defaults to f = 1.
    #[arg(long)]
    poly: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SumMethod {
    Oracle,
    Kp,
    Gbv,
    Guillemin,
    Cs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InteriorMethod {
    Oracle,
    Cs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeightedArg {
    Oracle,
    Twisted,
    Mk,
    KpHalf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HalfOpenMethod {
    Oracle,
    Kp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountMethod {
    Formula,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Todd,
    L,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a polytope and summarize it.
    Validate(PolytopeArg),
    /// List vertices with their facets and group orders.
    Vertices(PolytopeArg),
    /// List faces with their groups.
    Faces(PolytopeArg),
    /// Polarized tangent cones for a polarizing vector.
    Decompose {
        #[command(flatten)]
        polytope: PolytopeArg,
        /// Comma-separated rational components; drawn from --seed if absent.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the signed indicator identities at sample points.
    VerifyPolar {
        #[command(flatten)]
        polytope: PolytopeArg,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random sample points.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Facets removed for the half-open identity.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// Σ f over the lattice points.
    Sum {
        #[command(flatten)]
        args: SumArgs,
        #[arg(long, value_enum, default_value = "gbv")]
        method: SumMethod,
    },
    /// Σ f over interior lattice points.
    InteriorSum {
        #[command(flatten)]
        args: SumArgs,
        #[arg(long, value_enum, default_value = "cs")]
        method: InteriorMethod,
    },
    /// Σ f with weight (1/2)^codim on relative interiors of faces.
    WeightedSum {
        #[command(flatten)]
        args: SumArgs,
        #[arg(long, value_enum, default_value = "twisted")]
        method: WeightedArg,
    },
    /// Σ f with some facets removed.
    HalfopenSum {
        #[command(flatten)]
        args: SumArgs,
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
        #[arg(long, value_enum, default_value = "kp")]
        method: HalfOpenMethod,
    },
    /// Number of lattice points of the dilation tΔ.
    Count {
        #[command(flatten)]
        polytope: PolytopeArg,
        #[arg(long, default_value_t = 1)]
        dilate: u64,
        #[arg(long, value_enum, default_value = "formula")]
        method: CountMethod,
    },
    /// Σ e^{⟨ξ,x⟩} and ∫ e^{⟨ξ,x⟩} by the vertex formulas.
    BrionEval {
        #[command(flatten)]
        polytope: PolytopeArg,
        #[arg(long, allow_hyphen_values = true)]
        xi_real: String,
        #[arg(long, allow_hyphen_values = true)]
        xi_imag: Option<String>,
        /// Working precision in bits; overrides POLYSUM_PREC.
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Taylor coefficients of a twisted series.
    Todd {
        /// Exponent a of λ = e^{2πia}.
        #[arg(long, default_value = "0")]
        lambda: String,
        #[arg(long, value_enum, default_value = "todd")]
        kind: KindArg,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Polar identities and method agreement on random polynomials.
    Verify {
        #[command(flatten)]
        polytope: PolytopeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the command line with `argv` (including the program name) and
/// returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let v = io::error_json(&Error::parse("argv", msg.trim()));
            let _ = writeln!(err, "{v}");
            return 2;
        }
    };
    let (value, ok) = match execute(cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "{}", io::error_json(&e));
            return e.exit_code();
        }
    };
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
    if ok {
        0
    } else {
        let e = Error::Internal("verification failed".into());
        let _ = writeln!(err, "{}", io::error_json(&e));
        e.exit_code()
    }
}

fn precision(flag: Option<usize>) -> Result<usize> {
    if let Some(p) = flag {
        return check_precision(p);
    }
    match std::env::var("POLYSUM_PREC") {
        Ok(s) => check_precision(s.trim().parse().map_err(|_| Error::parse("POLYSUM_PREC", "not an integer"))?),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn check_precision(p: usize) -> Result<usize> {
    if p < 64 {
        return Err(Error::parse("prec", "precision must be at least 64 bits"));
    }
    Ok(p)
}

fn rational_list(s: &str, at: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| parse_rational(t.trim()).map_err(|_| Error::parse(at, format!("bad rational {t:?}")))).collect()
}

fn load(args: &SumArgs) -> Result<(SimplePolytope, Polynomial)> {
    let p = io::parse_polytope(&args.polytope.polytope)?;
    let f = match &args.poly {
        Some(path) => io::parse_polynomial(path)?,
        None => Polynomial::one(p.dim()),
    };
    if f.nvars() != p.dim() {
        return Err(Error::Dimension(format!("polynomial in {} variables on a {}-dimensional polytope", f.nvars(), p.dim())));
    }
    Ok((p, f))
}

fn xi_for(p: &SimplePolytope, xi: &Option<String>, seed: u64) -> Result<Vec<Rat>> {
    match xi {
        Some(s) => rational_list(s, "xi"),
        None => Ok(choose_polarizing(p, seed).xi),
    }
}

fn value(v: Rat, method: &str) -> Value {
    json!({"value": io::rational_json(&v), "method": method})
}

fn execute(cmd: Command) -> Result<(Value, bool)> {
    let v = match cmd {
        Command::Validate(a) => {
            let p = io::parse_polytope(&a.polytope)?;
            json!({
                "valid": true,
                "dim": p.dim(),
                "facets": p.num_facets(),
                "vertices": p.vertices().len(),
                "faces": p.faces().len(),
                "delzant": p.is_delzant(),
                "integral": p.is_integral(),
            })
        }
        Command::Vertices(a) => io::vertices_json(&io::parse_polytope(&a.polytope)?),
        Command::Faces(a) => io::faces_json(&io::parse_polytope(&a.polytope)?),
        Command::Decompose { polytope, xi, seed } => {
            let p = io::parse_polytope(&polytope.polytope)?;
            let xi = xi_for(&p, &xi, seed)?;
            io::decomposition_json(&p, &polarized_cones(&p, &xi)?)
        }
        Command::VerifyPolar { polytope, xi, seed, samples, remove } => {
            let p = io::parse_polytope(&polytope.polytope)?;
            let xi = xi_for(&p, &xi, seed)?;
            let (report, ok) = polar_report(&p, &xi, seed, samples, &remove)?;
            return Ok((report, ok));
        }
        Command::Sum { args, method } => {
            let (p, f) = load(&args)?;
            let (v, name) = match method {
                SumMethod::Oracle => (oracle_sum(&p, &f)?, "oracle"),
                SumMethod::Kp => (kp_sum(&p, &f)?, "kp"),
                SumMethod::Gbv => (em_sum(&p, &f)?, "gbv"),
                SumMethod::Guillemin => (guillemin_sum(&p, &f)?, "guillemin"),
                SumMethod::Cs => (cs_sum(&p, &f)?, "cs"),
            };
            value(v, name)
        }
        Command::InteriorSum { args, method } => {
            let (p, f) = load(&args)?;
            match method {
                InteriorMethod::Oracle => value(oracle_interior_sum(&p, &f)?, "oracle"),
                InteriorMethod::Cs => value(cs_interior_sum(&p, &f)?, "cs"),
            }
        }
        Command::WeightedSum { args, method } => {
            let (p, f) = load(&args)?;
            match method {
                WeightedArg::Oracle => value(oracle_weighted_sum(&p, &f)?, "oracle"),
                WeightedArg::Twisted => value(weighted_sum(&p, &f, WeightedMethod::Twisted)?, "twisted"),
                WeightedArg::Mk => value(weighted_sum(&p, &f, WeightedMethod::Mk)?, "mk"),
                WeightedArg::KpHalf => value(weighted_sum(&p, &f, WeightedMethod::KpHalf)?, "kp-half"),
            }
        }
        Command::HalfopenSum { args, remove, method } => {
            let (p, f) = load(&args)?;
            if let Some(i) = remove.iter().find(|&&i| i >= p.num_facets()) {
                return Err(Error::parse("remove", format!("facet {i} out of range")));
            }
            let mut v = match method {
                HalfOpenMethod::Oracle => value(oracle_halfopen_sum(&p, &remove, &f)?, "oracle"),
                HalfOpenMethod::Kp => value(halfopen_sum(&p, &remove, &f)?, "kp"),
            };
            v["removed"] = json!(remove);
            v
        }
        Command::Count { polytope, dilate, method } => {
            let p = io::parse_polytope(&polytope.polytope)?;
            if dilate == 0 {
                return Err(Error::parse("dilate", "dilation must be positive"));
            }
            let (n, name) = match method {
                CountMethod::Formula => (ehrhart_count(&p, dilate)?, "formula"),
                CountMethod::Oracle => (oracle_count(&p, dilate)?, "oracle"),
            };
            json!({"count": io::integer_json(&n), "dilate": dilate, "method": name})
        }
        Command::BrionEval { polytope, xi_real, xi_imag, prec } => {
            let p = io::parse_polytope(&polytope.polytope)?;
            let prec = precision(prec)?;
            let re = rational_list(&xi_real, "xi-real")?;
            let im = match xi_imag {
                Some(s) => rational_list(&s, "xi-imag")?,
                None => vec![Rat::default(); re.len()],
            };
            if re.len() != p.dim() || im.len() != p.dim() {
                return Err(Error::Dimension(format!("ξ must have {} components", p.dim())));
            }
            let xi = Xi::new(re, im);
            json!({
                "sum": io::complex_json(&brion_sum(&p, &xi, prec)?),
                "integral": io::complex_json(&brion_integral(&p, &xi, prec)?),
            })
        }
        Command::Todd { lambda, kind, order } => {
            let a = parse_rational(&lambda).map_err(|_| Error::parse("lambda", format!("bad rational {lambda:?}")))?;
            let (kind, name) = match kind {
                KindArg::Todd => (SeriesKind::Todd, "todd"),
                KindArg::L => (SeriesKind::L, "l"),
            };
            let s = twisted_series(&a, kind, order)?;
            json!({
                "lambda": io::rational_json(&s.lambda),
                "kind": name,
                "order": order,
                "coeffs": s.coeffs.iter().map(io::cyclotomic_json).collect::<Vec<_>>(),
            })
        }
        Command::Verify { polytope, seed } => {
            let p = io::parse_polytope(&polytope.polytope)?;
            return verify(&p, seed);
        }
    };
    Ok((v, true))
}

fn polar_report(p: &SimplePolytope, xi: &[Rat], seed: u64, samples: usize, remove: &[usize]) -> Result<(Value, bool)> {
    if let Some(i) = remove.iter().find(|&&i| i >= p.num_facets()) {
        return Err(Error::parse("remove", format!("facet {i} out of range")));
    }
    let points = sample_points(p, seed, samples);
    let mut ok = true;
    let mut report = serde_json::Map::new();
    for (name, id) in [
        ("closed", PolarIdentity::Closed),
        ("halfopen", PolarIdentity::HalfOpen(remove.to_vec())),
        ("weighted", PolarIdentity::Weighted),
    ] {
        let failures = polar_identity_failures(p, xi, &points, &id)?;
        ok &= failures.is_empty();
        report.insert(name.into(), json!({"points": points.len(), "failures": failures.len()}));
    }
    report.insert("xi".into(), io::rationals_json(xi));
    Ok((Value::Object(report), ok))
}

fn verify(p: &SimplePolytope, seed: u64) -> Result<(Value, bool)> {
    let xi = choose_polarizing(p, seed).xi;
    let (polar, mut ok) = polar_report(p, &xi, seed, 500, &[0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..5 {
        let f = random_polynomial(&mut rng, p.dim(), 3);
        let truth = oracle_sum(p, &f)?;
        let wtruth = oracle_weighted_sum(p, &f)?;
        let mut checks = vec![
            ("gbv", em_sum(p, &f)? == truth),
            ("guillemin", guillemin_sum(p, &f)? == truth),
            ("weighted-twisted", weighted_sum(p, &f, WeightedMethod::Twisted)? == wtruth),
            ("weighted-mk", weighted_sum(p, &f, WeightedMethod::Mk)? == wtruth),
        ];
        if p.is_delzant() {
            let interior = oracle_interior_sum(p, &f)?;
            checks.push(("kp", kp_sum(p, &f)? == truth));
            checks.push(("cs", cs_sum(p, &f)? == truth));
            checks.push(("cs-interior", cs_interior_sum(p, &f)? == interior));
            checks.push(("cs-half-boundary", cs_half_boundary(p, &f)? == (&truth + &interior) / Rat::from_integer(2.into())));
            checks.push(("weighted-kp-half", weighted_sum(p, &f, WeightedMethod::KpHalf)? == wtruth));
        }
        ok &= checks.iter().all(|c| c.1);
        let checks: serde_json::Map<String, Value> = checks.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        cases.push(json!({"poly": io::polynomial_to_json(&f), "oracle": io::rational_json(&truth), "agree": checks}));
    }
    Ok((json!({"polar": polar, "methods": cases, "ok": ok}), ok))
}
