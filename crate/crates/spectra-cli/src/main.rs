//! `spectra` — exact Hodge-spectrum computations for irreducible plane
//! curve singularities, driven by their Puiseux pairs.
//!
//! Every command evaluates in exact rational arithmetic; JSON carries
//! rationals as `p/q` strings and CSV carries exact columns first with
//! decimal annotations after. All input errors exit with code 2 and a
//! one-line diagnostic on stderr.

mod output;

use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spectra_core::curve::{derive_invariants, validate_pairs, CurveInvariants, PuiseuxPairs};
use spectra_core::distribution::{count_leq_closed, sample_phi, PhiSample};
use spectra_core::dominating::dominating_intervals;
use spectra_core::exact::{parse_rational, rat, BigInt, IntervalEnclosure, Rational};
use spectra_core::family::{
    convergence_verdict, default_scan_grid, parse_family, scan_family, ScanRow, TargetSelector,
    Trend,
};
use spectra_core::spectrum::{enumerate_spectrum_lt1, full_spectrum};

use output::{decimal_str, int_value, rat_str, sign_str};

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Exact Hodge spectrum of an irreducible plane curve singularity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Output-format flags shared by the commands that emit tabular data.
#[derive(Args)]
struct FormatOpts {
    /// Emit JSON
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long)]
    csv: bool,
    /// Decimal digits for CSV decimal columns
    #[arg(
        long,
        env = "SPECTRA_DIGITS",
        default_value_t = 12,
        value_parser = clap::value_parser!(u32).range(0..=4096)
    )]
    digits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Derived invariants of the curve: e, w, μ, semigroup, lct, …
    Invariants {
        /// Puiseux pairs as "n1,l1;n2,l2;…"
        #[arg(long)]
        pairs: String,
    },
    /// The spectrum as a sorted list of (value, multiplicity)
    Spectrum {
        /// Puiseux pairs as "n1,l1;n2,l2;…"
        #[arg(long)]
        pairs: String,
        /// Only the spectrum inside (0, 1) instead of the full (0, 2) range
        #[arg(long)]
        lt1: bool,
        #[command(flatten)]
        fmt: FormatOpts,
    },
    /// Number of spectral exponents ≤ r, by closed formula
    Count {
        /// Puiseux pairs as "n1,l1;n2,l2;…"
        #[arg(long)]
        pairs: String,
        /// Threshold, a rational "p/q" in [0, 1)
        #[arg(long)]
        r: String,
        #[command(flatten)]
        fmt: FormatOpts,
    },
    /// The cumulative difference function φ_f at a point or along a grid
    Phi {
        /// Puiseux pairs as "n1,l1;n2,l2;…"
        #[arg(long)]
        pairs: String,
        /// Evaluate at one rational "p/q" in [0, 1)
        #[arg(long, conflicts_with = "samples")]
        r: Option<String>,
        /// Sample on {t/N : 0 ≤ t < N} joined with the spectral jump points
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        samples: Option<u32>,
        #[command(flatten)]
        fmt: FormatOpts,
    },
    /// Certified enclosures of the dominating-value intervals
    Dominating {
        /// Puiseux pairs as "n1,l1;n2,l2;…"
        #[arg(long)]
        pairs: String,
        /// Bits of precision for the enclosure endpoints (width ≲ 2^-bits)
        #[arg(long, default_value_t = 64)]
        precision: u32,
    },
    /// Scan a one-parameter family and report convergence trends
    Scan {
        /// Family pairs as polynomials in k, e.g. "2*k,1;2,2*k^3+1"
        #[arg(long)]
        family: String,
        /// Parameter range "a..b" or "a..b..step", inclusive
        #[arg(long)]
        k: String,
        /// What to measure |φ_f − target| against
        #[arg(long, value_enum, default_value_t = TargetArg::Zero)]
        target: TargetArg,
        #[command(flatten)]
        fmt: FormatOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// The zero function (convergence to the continuous distribution)
    Zero,
    /// The explicit non-vanishing limit of the family (2k,1),(2,2k³+1)
    Counterexample,
}

impl From<TargetArg> for TargetSelector {
    fn from(t: TargetArg) -> TargetSelector {
        match t {
            TargetArg::Zero => TargetSelector::Zero,
            TargetArg::Counterexample => TargetSelector::CounterexampleLimit,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(msg) = run(cli.command) {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Invariants { pairs } => {
            let inv = curve_of(&pairs)?;
            print_json(&invariants_json(&inv));
        }
        Command::Spectrum { pairs, lt1, fmt } => {
            let inv = curve_of(&pairs)?;
            let entries: Vec<(Rational, u64)> = if lt1 {
                enumerate_spectrum_lt1(&inv).values_lt1().to_vec()
            } else {
                full_spectrum(&inv)
            };
            if fmt.csv {
                let mut out = String::from("value_exact,value_decimal,multiplicity\n");
                for (v, m) in &entries {
                    out.push_str(&format!(
                        "{},{},{m}\n",
                        rat_str(v),
                        decimal_str(v, fmt.digits)
                    ));
                }
                emit(&out);
            } else {
                let rows: Vec<Value> = entries
                    .iter()
                    .map(|(v, m)| json!([rat_str(v), int_value(&BigInt::from(*m))]))
                    .collect();
                print_json(&Value::Array(rows));
            }
        }
        Command::Count { pairs, r, fmt } => {
            let inv = curve_of(&pairs)?;
            let r = parse_rational(&r).map_err(|e| e.to_string())?;
            let count = count_leq_closed(&inv, &r).map_err(|e| e.to_string())?;
            if fmt.csv {
                emit(&format!(
                    "r_exact,r_decimal,count,mu\n{},{},{count},{}\n",
                    rat_str(&r),
                    decimal_str(&r, fmt.digits),
                    inv.mu
                ));
            } else {
                print_json(&json!({
                    "r": rat_str(&r),
                    "count": int_value(&count),
                    "mu": int_value(&inv.mu),
                }));
            }
        }
        Command::Phi {
            pairs,
            r,
            samples,
            fmt,
        } => {
            let inv = curve_of(&pairs)?;
            match (r, samples) {
                (Some(r), None) => {
                    let r = parse_rational(&r).map_err(|e| e.to_string())?;
                    let sample = sample_phi(&inv, std::slice::from_ref(&r))
                        .map_err(|e| match e {
                            spectra_core::Error::GridPointOutOfRange { r, .. } => {
                                spectra_core::Error::ROutOfRange { r }.to_string()
                            }
                            other => other.to_string(),
                        })?
                        .pop()
                        .expect("one grid point in, one sample out");
                    if fmt.csv {
                        emit(&phi_csv(&[sample], fmt.digits));
                    } else {
                        print_json(&phi_json(&sample));
                    }
                }
                (None, Some(n)) => {
                    let spec = enumerate_spectrum_lt1(&inv);
                    let mut grid: BTreeSet<Rational> =
                        (0..n).map(|t| rat(t, n)).collect();
                    for (v, _) in spec.values_lt1() {
                        grid.insert(v.clone());
                    }
                    let grid: Vec<Rational> = grid.into_iter().collect();
                    let samples = sample_phi(&inv, &grid).map_err(|e| e.to_string())?;
                    if fmt.json {
                        let rows: Vec<Value> = samples.iter().map(phi_json).collect();
                        print_json(&Value::Array(rows));
                    } else {
                        emit(&phi_csv(&samples, fmt.digits));
                    }
                }
                (None, None) => return Err("exactly one of --r or --samples is required".into()),
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            }
        }
        Command::Dominating { pairs, precision } => {
            let inv = curve_of(&pairs)?;
            let report = dominating_intervals(&inv, precision).map_err(|e| e.to_string())?;
            print_json(&json!({
                "d1": rat_str(&report.d1),
                "d2": rat_str(&report.d2),
                "interval1": {
                    "inner": enclosure_json(&report.interval1.inner),
                    "outer": enclosure_json(&report.interval1.outer),
                },
                "interval2": {
                    "inner": enclosure_json(&report.interval2.inner),
                    "outer": enclosure_json(&report.interval2.outer),
                },
                "left_interval": [
                    rat_str(&report.left_interval.0),
                    rat_str(&report.left_interval.1),
                ],
                "right_negative_interval": [
                    rat_str(&report.right_negative_interval.0),
                    rat_str(&report.right_negative_interval.1),
                ],
                "precision_bits": precision,
            }));
        }
        Command::Scan {
            family,
            k,
            target,
            fmt,
        } => {
            let fam = parse_family(&family).map_err(|e| e.to_string())?;
            let ks = parse_k_range(&k)?;
            let rows = scan_family(&fam, &ks, &default_scan_grid(), target.into())
                .map_err(|e| e.to_string())?;
            let verdict = if rows.len() >= 3 {
                let v = convergence_verdict(&rows).map_err(|e| e.to_string())?;
                json!({
                    "ratio_decreasing": v.ratio_decreasing,
                    "lct_decreasing": v.lct_decreasing,
                    "sup_dev_decreasing": v.sup_dev_decreasing,
                    "trend": match v.trend {
                        Trend::Converges => "converges",
                        Trend::LctDecreasingOnly => "lct-decreasing-only",
                        Trend::NonConvergent => "non-convergent",
                    },
                })
            } else {
                Value::Null
            };
            if fmt.json {
                let rows: Vec<Value> = rows.iter().map(scan_row_json).collect();
                print_json(&json!({ "rows": rows, "verdict": verdict }));
            } else {
                emit(&scan_csv(&rows, fmt.digits));
                eprintln!("{}", json!({ "verdict": verdict }));
            }
        }
    }
    Ok(())
}

fn curve_of(pairs_arg: &str) -> Result<CurveInvariants, String> {
    Ok(derive_invariants(&parse_pairs_arg(pairs_arg)?))
}

/// Parse "n1,l1;n2,l2;…" and validate.
fn parse_pairs_arg(s: &str) -> Result<PuiseuxPairs, String> {
    let mut pairs = Vec::new();
    for (idx, chunk) in s.split(';').enumerate() {
        let index = idx + 1;
        let mut parts = chunk.split(',');
        let (n, l) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(l), None) => (n, l),
            _ => {
                return Err(format!(
                    "pair {index}: expected \"n,l\", got {:?}",
                    chunk.trim()
                ))
            }
        };
        pairs.push((parse_pair_int(n, index)?, parse_pair_int(l, index)?));
    }
    validate_pairs(&pairs).map_err(|e| e.to_string())
}

fn parse_pair_int(s: &str, index: usize) -> Result<BigInt, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("pair {index}: cannot parse integer from {:?}", s.trim()))
}

/// Parse "a..b" or "a..b..step" into the inclusive list of k values.
fn parse_k_range(s: &str) -> Result<Vec<i64>, String> {
    let bad = |msg: &str| format!("cannot parse k range {s:?}: {msg}");
    let parts: Vec<&str> = s.split("..").collect();
    let (a, b, step) = match parts.as_slice() {
        [a, b] => (a, b, "1"),
        [a, b, step] => (a, b, *step),
        _ => return Err(bad("expected \"a..b\" or \"a..b..step\"")),
    };
    let a: i64 = a.trim().parse().map_err(|_| bad("invalid start"))?;
    let b: i64 = b.trim().parse().map_err(|_| bad("invalid end"))?;
    let step: i64 = step.trim().parse().map_err(|_| bad("invalid step"))?;
    if step < 1 {
        return Err(bad("step must be at least 1"));
    }
    if a > b {
        return Err(bad("start exceeds end"));
    }
    Ok((a..=b).step_by(step as usize).collect())
}

/// Write to stdout, treating a closed pipe (`spectra … | head`) as a normal
/// early exit rather than a panic.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn print_json(v: &Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    ));
}

fn invariants_json(inv: &CurveInvariants) -> Value {
    let ints = |xs: &[BigInt]| -> Vec<Value> { xs.iter().map(int_value).collect() };
    json!({
        "g": inv.g,
        "e": ints(&inv.e),
        "w": ints(&inv.w),
        "mu_seq": ints(&inv.mu_seq),
        "mu": int_value(&inv.mu),
        "beta": ints(&inv.beta),
        "beta_bar": ints(&inv.beta_bar),
        "char_exponents": inv.char_exponents.iter().map(rat_str).collect::<Vec<_>>(),
        "lct": rat_str(&inv.lct),
        "max_exp_lt1": rat_str(&inv.max_exp_lt1),
        "beta_g": int_value(inv.beta_i(inv.g)),
        "ratio": rat_str(&inv.beta_g_over_mu),
    })
}

fn phi_json(s: &PhiSample) -> Value {
    json!({
        "r": rat_str(&s.r),
        "count": int_value(&s.count),
        "phi": rat_str(&s.phi),
        "sign": sign_str(&s.phi),
    })
}

fn phi_csv(samples: &[PhiSample], digits: u32) -> String {
    let mut out = String::from("r_exact,r_decimal,count,phi_exact,phi_decimal,sign\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            rat_str(&s.r),
            decimal_str(&s.r, digits),
            s.count,
            rat_str(&s.phi),
            decimal_str(&s.phi, digits),
            sign_str(&s.phi)
        ));
    }
    out
}

fn enclosure_json(e: &IntervalEnclosure) -> Value {
    json!([rat_str(e.lo()), rat_str(e.hi())])
}

fn scan_row_json(row: &ScanRow) -> Value {
    json!({
        "k": row.k,
        "mu": int_value(&row.mu),
        "beta_g": int_value(&row.beta_g),
        "ratio": rat_str(&row.ratio),
        "lct": rat_str(&row.lct),
        "sup_dev": rat_str(&row.sup_dev),
    })
}

fn scan_csv(rows: &[ScanRow], digits: u32) -> String {
    let mut out = String::from(
        "k,mu,beta_g,ratio_exact,ratio_decimal,lct_exact,sup_dev_exact,sup_dev_decimal\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.k,
            row.mu,
            row.beta_g,
            rat_str(&row.ratio),
            decimal_str(&row.ratio, digits),
            rat_str(&row.lct),
            rat_str(&row.sup_dev),
            decimal_str(&row.sup_dev, digits)
        ));
    }
    out
}
