//! Command-line front end. Exit codes: 0 success, 1 failed check or
//! mismatch, 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classifier::classify;
use crate::corpus::{parse_curve_file, scan};
use crate::curve::Curve;
use crate::example::{example_checks, supplementary_checks, ExampleCheck};
use crate::galois::gm_almost_rational;
use crate::torsion::{quadratic_torsion, rational_torsion_in, TorsionGroup};

#[derive(Parser, Debug)]
#[command(name = "artor", about = "Almost rational torsion points on elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check which orders n give almost rational points of G_m, for n <= N.
    GmCheck {
        #[arg(long)]
        max_order: u64,
    },
    /// Classify one curve.
    Classify {
        /// a1,a2,a3,a4,a6
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        json: bool,
    },
    /// Classify every curve of a file.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check every stated fact about the conductor 1302 curve.
    VerifyExample,
    /// Print torsion over Q and over Q(sqrt D).
    Torsion {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        d: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

fn parse_coeffs(text: &str) -> Result<Curve, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("--coeffs needs 5 comma-separated integers, got {}", parts.len()));
    }
    let mut a = [0i64; 5];
    for (slot, p) in a.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not an integer: {p:?}"))?;
    }
    Curve::from_ints(a).map_err(|e| e.to_string())
}

fn print_group(out: &mut dyn Write, name: &str, g: &TorsionGroup) -> std::io::Result<()> {
    writeln!(out, "{name}: {} (order {})", g.structure_label(), g.order())?;
    for p in &g.all_points {
        writeln!(out, "  {p}")?;
    }
    Ok(())
}

fn print_checks(out: &mut dyn Write, checks: &[ExampleCheck]) -> std::io::Result<bool> {
    let mut all = true;
    for c in checks {
        all &= c.passed;
        let tag = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "[{tag}] ({}) {}", c.id, c.claim)?;
        } else {
            writeln!(out, "[{tag}] ({}) {} -- {}", c.id, c.claim, c.detail)?;
        }
    }
    Ok(all)
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match cli.command {
        Command::GmCheck { max_order } => {
            if max_order == 0 {
                writeln!(err, "--max-order must be at least 1")?;
                return Ok(2);
            }
            let mut violations = 0;
            for n in 1..=max_order {
                let (ok, witness) = gm_almost_rational(n);
                if ok != (6 % n == 0) {
                    violations += 1;
                    writeln!(out, "violation: n = {n}, verdict {ok}, witness {witness:?}")?;
                }
            }
            if violations == 0 {
                writeln!(out, "all almost rational orders divide 6")?;
                Ok(0)
            } else {
                writeln!(out, "{violations} violations")?;
                Ok(1)
            }
        }
        Command::Classify { coeffs, json } => {
            let e = match parse_coeffs(&coeffs) {
                Ok(e) => e,
                Err(m) => {
                    writeln!(err, "{m}")?;
                    return Ok(2);
                }
            };
            let r = classify(&e);
            if json {
                writeln!(out, "{}", r.to_json())?;
            } else {
                writeln!(out, "minimal model: {:?}", r.minimal_model.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
                writeln!(out, "semistable: {}", r.semistable)?;
                if let (Some(rt), Some(qt)) = (&r.rational_torsion, &r.quadratic_torsion) {
                    writeln!(out, "E(Q)_tors: {}", rt.label)?;
                    writeln!(out, "E(Q(sqrt -3))_tors: {}", qt.label)?;
                }
                writeln!(out, "mu3 generator: {}", r.mu3_generator.as_ref().map_or("none".into(), |q| q.to_string()))?;
                writeln!(out, "almost rational points: {}", r.ar_points.len())?;
                for a in &r.ar_points {
                    writeln!(out, "  {} (order {})", a.point, a.order)?;
                }
                writeln!(out, "predicted equals actual: {}", r.predicted_equals_actual)?;
                for v in &r.invariant_violations {
                    writeln!(out, "violation: {v}")?;
                }
                if let Some(e) = &r.error {
                    writeln!(out, "error: {e}")?;
                }
            }
            Ok(if r.consistent() { 0 } else { 1 })
        }
        Command::Scan { input, output, format } => {
            let parsed = match parse_curve_file(&input) {
                Ok(p) => p,
                Err(e) => {
                    writeln!(err, "cannot read {}: {e}", input.display())?;
                    return Ok(2);
                }
            };
            let batch = scan(parsed);
            for e in &batch.errors {
                writeln!(err, "{e}")?;
            }
            let text = match format {
                Format::Json => batch.to_json(),
                Format::Tsv => batch.to_tsv(),
            };
            std::fs::write(&output, text)?;
            let s = &batch.summary;
            writeln!(
                out,
                "curves {} (line errors {}), semistable {}, with mu3 {}, with nonrational AR point {}, mismatches {}, order-16 S {}, analysis errors {}",
                s.total, s.line_errors, s.semistable, s.with_mu3, s.with_nonrational_ar_point, s.mismatches, s.order16_s, s.analysis_errors
            )?;
            writeln!(out, "rational torsion structures seen: {}", s.rational_structures.len())?;
            Ok(if batch.success() { 0 } else { 1 })
        }
        Command::VerifyExample => {
            writeln!(out, "curve y^2 + xy + y = x^3 + 354x + 4684")?;
            let ok = print_checks(out, &example_checks())?;
            writeln!(out, "supplementary: 3-isogenous curve y^2 + xy + y = x^3 - 3321x - 157604")?;
            print_checks(out, &supplementary_checks())?;
            writeln!(out, "{}", if ok { "all stated facts hold" } else { "some stated facts do not hold" })?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Torsion { coeffs, d } => {
            let e = match parse_coeffs(&coeffs) {
                Ok(e) => e,
                Err(m) => {
                    writeln!(err, "{m}")?;
                    return Ok(2);
                }
            };
            if let Err(m) = crate::numeric::quad::validate_d(d) {
                writeln!(err, "{m}")?;
                return Ok(2);
            }
            match rational_torsion_in(&e, d).and_then(|r| Ok((r, quadratic_torsion(&e, d)?))) {
                Ok((r, q)) => {
                    print_group(out, "E(Q)_tors", &r)?;
                    print_group(out, &format!("E(Q(sqrt {d}))_tors"), &q)?;
                    Ok(0)
                }
                Err(e) => {
                    writeln!(err, "{e}")?;
                    Ok(1)
                }
            }
        }
    }
}

/// Runs the CLI on `argv` (program name first) with explicit streams.
pub fn run_cli_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    run(cli, out, err).unwrap_or_else(|e| {
        let _ = writeln!(err, "i/o error: {e}");
        1
    })
}

pub fn run_cli(argv: &[String]) -> i32 {
    run_cli_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
