//! Command-line front end for `frobhn-core`.
//!
//! Exit codes: 0 on success or PASS, 1 when a verification fails or a
//! queried property does not hold, 2 on usage and parse errors.

pub mod document;
pub mod hnf;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use frobhn_core::bundles::{
    available_levels, build_counterexample, default_summands, family_equation,
};
use frobhn_core::cohomology::{connecting_expand, h1_basis, CohomologyError, Fraction, PlaneCurve};
use frobhn_core::ffpoly::{parse_polynomial, PrimeField, SparsePolynomial, Var};
use frobhn_core::groebner::is_projectively_smooth;
use serde_json::{json, Value};

pub use document::CertificateDocument;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frobhn",
    version,
    about = "Frobenius pull-backs and HN filtrations on plane curves over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and check the certificate for a prime.
    Verify {
        #[arg(long)]
        prime: u64,
        /// Number of rank two summands [default: ceil((p+1)/2)]
        #[arg(long)]
        summands: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        /// Largest prime accepted.
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
        /// Also write the document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jacobian criterion for a plane curve.
    Smooth {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        poly: String,
    },
    /// Classes in H^1(X, O_X(m)).
    Cohomology {
        #[arg(long)]
        prime: u64,
        #[arg(long, allow_hyphen_values = true)]
        twist: i32,
        /// Curve equation [default: x^{3p} + x*y^{3p-1} + y*z^{3p-1}]
        #[arg(long)]
        poly: Option<String>,
        /// Print a basis of H^1(X, O_X(m)).
        #[arg(long, conflicts_with = "class")]
        basis: bool,
        /// A class given as `numerator / (y^b * z^c)`.
        #[arg(long, required_unless_present = "basis")]
        class: Option<String>,
        /// Multiply the class by this form before testing.
        #[arg(long, requires = "class")]
        multiply: Option<String>,
        /// Apply Frobenius to the class (after any multiplication).
        #[arg(long, requires = "class")]
        frobenius: bool,
    },
    /// HN filtration of a formal direct sum described in a JSON file.
    Hnf {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Verify {
            prime,
            summands,
            emit,
            max_prime,
            out: path,
        } => verify(prime, summands, emit, max_prime, path),
        Command::Smooth { prime, poly } => smooth(prime, &poly),
        Command::Cohomology {
            prime,
            twist,
            poly,
            basis,
            class,
            multiply,
            frobenius,
        } => cohomology(
            prime,
            twist,
            poly.as_deref(),
            basis,
            class.as_deref(),
            multiply.as_deref(),
            frobenius,
        ),
        Command::Hnf { input } => hnf_command(&input),
    };
    match result {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            code
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type Outcome = Result<(u8, String), (u8, String)>;

fn usage(msg: impl std::fmt::Display) -> (u8, String) {
    (EXIT_USAGE, msg.to_string())
}

fn failure(msg: impl std::fmt::Display) -> (u8, String) {
    (EXIT_FAIL, msg.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn field(p: u64) -> Result<PrimeField, (u8, String)> {
    PrimeField::new(p).map_err(usage)
}

fn verify(
    p: u64,
    summands: Option<usize>,
    emit: Emit,
    max_prime: u64,
    path: Option<PathBuf>,
) -> Outcome {
    field(p)?;
    if p > max_prime {
        return Err(usage(format!(
            "prime {p} exceeds the bound {max_prime} (see --max-prime)"
        )));
    }
    let n = summands.unwrap_or_else(|| default_summands(p));
    let max = available_levels(p).len();
    if n == 0 || n > max {
        return Err(usage(format!(
            "--summands must lie in 1..={max} for p = {p}"
        )));
    }
    let cert = build_counterexample(p, n).map_err(usage)?;
    let doc = CertificateDocument::from_certificate(&cert);
    let mut text = match emit {
        Emit::Json => doc.to_json(),
        Emit::Text => doc.to_text(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if let Some(path) = path {
        std::fs::write(&path, &text).map_err(|e| failure(format!("{}: {e}", path.display())))?;
    }
    let code = if doc.passed() { EXIT_OK } else { EXIT_FAIL };
    Ok((code, text))
}

fn parse(text: &str, f: PrimeField) -> Result<SparsePolynomial, (u8, String)> {
    parse_polynomial(text, f).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

fn smooth(p: u64, poly: &str) -> Outcome {
    let f = parse(poly, field(p)?)?;
    let report = is_projectively_smooth(&f).map_err(usage)?;
    let witnesses: serde_json::Map<String, Value> = report
        .pure_power_witnesses
        .iter()
        .map(|(v, m)| (v.to_string(), Value::from(m.to_string())))
        .collect();
    let v = json!({
        "prime": p,
        "curve": f.to_string(),
        "verdict": report.verdict.to_string(),
        "pure_power_witnesses": witnesses,
        "basis_size": report.basis_size,
    });
    let code = if report.is_smooth() {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    Ok((code, pretty(&v)))
}

/// Parses `numerator / (y^b * z^c)`; the denominator may be omitted.
pub fn parse_fraction(text: &str, f: PrimeField) -> Result<Fraction, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numerator = parse_polynomial(num, f).map_err(|e| format!("numerator: {e}"))?;
    let (mut y_power, mut z_power) = (0, 0);
    if let Some(den) = den {
        let den = parse_polynomial(den, f).map_err(|e| format!("denominator: {e}"))?;
        let (m, c) = match den.terms().collect::<Vec<_>>()[..] {
            [(m, c)] => (m, c),
            _ => return Err("denominator must be a monomial y^b * z^c".into()),
        };
        if c.value() != 1
            || m.exponent(Var::X) != 0
            || m.exponent(Var::T) != 0
            || m.has_negative_exponent()
        {
            return Err("denominator must be a monomial y^b * z^c".into());
        }
        y_power = m.exponent(Var::Y);
        z_power = m.exponent(Var::Z);
    }
    Ok(Fraction {
        numerator,
        y_power,
        z_power,
    })
}

fn curve_for(p: u64, poly: Option<&str>) -> Result<PlaneCurve, (u8, String)> {
    let f = field(p)?;
    let equation = match poly {
        Some(text) => parse(text, f)?,
        None => family_equation(f),
    };
    PlaneCurve::new(equation).map_err(usage)
}

fn cohomology_error(e: CohomologyError) -> (u8, String) {
    match e {
        CohomologyError::NotSmooth
        | CohomologyError::NoLeadingXPower
        | CohomologyError::NotInKernel => failure(e),
        _ => usage(e),
    }
}

fn cohomology(
    p: u64,
    twist: i32,
    poly: Option<&str>,
    basis: bool,
    class: Option<&str>,
    multiply: Option<&str>,
    frobenius: bool,
) -> Outcome {
    let curve = curve_for(p, poly)?;
    let f = curve.field();
    if basis {
        let classes = h1_basis(&curve, twist).map_err(cohomology_error)?;
        let v = json!({
            "prime": p,
            "curve": curve.equation().to_string(),
            "twist": twist,
            "dimension": classes.len(),
            "riemann_roch": curve.riemann_roch_h1(twist),
            "basis": classes.iter().map(|c| c.representative().to_string()).collect::<Vec<_>>(),
        });
        return Ok((EXIT_OK, pretty(&v)));
    }
    let text = class.expect("clap requires --class without --basis");
    let fraction = parse_fraction(text, f).map_err(usage)?;
    let found = fraction.twist().map_err(usage)?;
    if found != twist {
        return Err(usage(format!(
            "class {fraction} has twist {found}, not {twist}"
        )));
    }
    let mut c = connecting_expand(&curve, &fraction).map_err(cohomology_error)?;
    let mut expression = fraction.to_string();
    if let Some(g) = multiply {
        let g = parse(g, f)?;
        c = c.mult_map(&g).map_err(cohomology_error)?;
        expression = format!("({g}) * {expression}");
    }
    if frobenius {
        c = c.frobenius_pullback().map_err(cohomology_error)?;
        expression = format!("F*({expression})");
    }
    let v = json!({
        "prime": p,
        "curve": curve.equation().to_string(),
        "class": expression,
        "twist": c.twist(),
        "zero": c.is_zero(),
        "representative": c.representative().to_string(),
    });
    Ok((EXIT_OK, pretty(&v)))
}

fn hnf_command(path: &std::path::Path) -> Outcome {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let input: hnf::BundleInput =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    match hnf::evaluate(&input) {
        Ok(f) => Ok((EXIT_OK, pretty(&hnf::filtration_json(&f)))),
        Err(hnf::HnfError::Input(e)) => Err(usage(e)),
        Err(hnf::HnfError::Refused(e)) => Err(failure(e)),
    }
}
