//! braidform: braid-equation catalogs, invariant-subspace dimensions,
//! projection-formula verification, and braided Betti / supertrace series.
//!
//! Exit codes: 0 success, 1 verification failure (a residual above tolerance
//! or an `--expect` mismatch), 2 usage or input errors.

mod input;
mod output;

use std::process::ExitCode;

use braidform_core::{
    braided_betti, compare_projections, euler_characteristic, invariant_subspace,
    supertrace_partial, swap_sigma, ybe_residual, BettiVector, CoefficientSequence, ConstantTerm,
    Epsilon, MethodChoice, ProductSpaceSpec, SignConvention,
};
use clap::{Parser, Subcommand, ValueEnum};

use input::{
    parse_f64_list, parse_matrix_spec, parse_n_range, parse_tags, parse_theta, parse_usize_list,
    MatrixSpec,
};
use output::{
    print_json, BasisEntry, BettiRecord, CatalogEntryRecord, CatalogRecord, InvariantBasisRecord,
    InvariantDimRecord, ProjectionRecord, ResidualRecord, SweepRecord, SCHEMA_VERSION,
};

/// Errors carry their exit semantics: usage problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(braidform_core::Error),
}

impl CliError {
    fn usage(msg: String) -> Self {
        CliError::Usage(msg)
    }
}

impl From<braidform_core::Error> for CliError {
    fn from(e: braidform_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "braidform",
    version,
    about = "Braid-group representations on qubit spaces: invariant dimensions, projection checks, Betti series"
)]
struct Cli {
    /// Residual tolerance; falls back to BRAIDFORM_TOLERANCE, then 1e-10.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Dense,
    Phased,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Dense => MethodChoice::Dense,
            MethodArg::Phased => MethodChoice::Phased,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plain,
    Alternating,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum C0Arg {
    One,
    Extrapolated,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepFormat {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// List the four catalog entries and their properties.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Braid-equation residual of a matrix.
    CheckBraidEq {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Constant Yang-Baxter residual of R = C·Sigma.
    CheckYbe {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariant-subspace dimension over an N range.
    InvariantDim {
        #[arg(long)]
        matrix: String,
        /// Single value `4` or inclusive range `2..6`.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        /// Expected dimensions: one value (broadcast) or one per N.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Orthonormal invariant basis at a single N.
    InvariantBasis {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Compare the averaged projection formula against the brute-force oracle.
    VerifyProjection {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        h0: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Braided Betti numbers from a beta vector.
    Betti {
        /// Comma-separated nonnegative reals beta_0,...,beta_d.
        #[arg(long)]
        beta: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Supertrace partial sums for a catalog matrix.
    Supertrace {
        #[arg(long, allow_negative_numbers = true)]
        chi: f64,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Alternating)]
        sign: SignArg,
        #[arg(long, value_enum, default_value_t = C0Arg::Extrapolated)]
        c0: C0Arg,
        #[arg(long)]
        json: bool,
    },
    /// Batch invariant dimensions over tags × theta grid × N range.
    Sweep {
        /// Comma-separated catalog tags, or `all`.
        #[arg(long)]
        tags: String,
        /// Comma-separated theta values (radians or pi fractions).
        #[arg(long, conflicts_with = "random_thetas")]
        theta_grid: Option<String>,
        /// Draw this many admissible theta values from the seed instead of
        /// an explicit grid.
        #[arg(long)]
        random_thetas: Option<usize>,
        /// Seed for --random-thetas; identical seeds give identical output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Epsilon for the first entry.
        #[arg(long, default_value_t = 1)]
        eps: i8,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = SweepFormat::Jsonl)]
        format: SweepFormat,
        /// Expected dimensions: one value (broadcast) or one per N.
        #[arg(long)]
        expect: Option<String>,
    },
}

fn resolve_tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("BRAIDFORM_TOLERANCE") {
        Ok(raw) => raw
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("BRAIDFORM_TOLERANCE={raw:?} is not a number"))),
        Err(_) => Ok(braidform_core::tol::RESIDUAL),
    }
}

fn expected_dims(expect: &Option<String>, count: usize) -> Result<Option<Vec<usize>>, CliError> {
    let Some(raw) = expect else { return Ok(None) };
    let values = parse_usize_list(raw)?;
    if values.len() == 1 {
        return Ok(Some(vec![values[0]; count]));
    }
    if values.len() != count {
        return Err(CliError::usage(format!(
            "--expect has {} values but the N range has {count}",
            values.len()
        )));
    }
    Ok(Some(values))
}

fn emit_residual(
    command: &'static str,
    check: &'static str,
    spec: &MatrixSpec,
    report: braidform_core::ResidualReport,
    json: bool,
) -> i32 {
    let record = ResidualRecord {
        schema: SCHEMA_VERSION,
        command,
        matrix: spec.display.clone(),
        check,
        frobenius_residual: report.frobenius_residual,
        tolerance: report.tolerance,
        passes: report.passes,
    };
    if json {
        print_json(&record);
    } else {
        println!(
            "{} {}: residual {:e} (tolerance {:e}) -> {}",
            command,
            spec.display,
            report.frobenius_residual,
            report.tolerance,
            if report.passes { "pass" } else { "FAIL" }
        );
    }
    if report.passes {
        0
    } else {
        1
    }
}

fn rational_string(r: &braidform_core::num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Deterministic admissible angles in (0.1, π − 0.1) from a seeded LCG.
fn random_theta_grid(count: usize, seed: u64) -> Vec<input::Theta> {
    let mut state = seed
        .wrapping_mul(2862933555777941757)
        .wrapping_add(3037000493);
    (0..count)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let unit = (state >> 11) as f64 / (1u64 << 53) as f64;
            input::Theta::Radians(0.1 + unit * (std::f64::consts::PI - 0.2))
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let tolerance = resolve_tolerance(cli.tolerance)?;
    match cli.command {
        Command::Catalog { json } => {
            let entries = vec![
                CatalogEntryRecord {
                    tag: "ex1",
                    description: "anti-diagonal involution with phase q and sign epsilon",
                    involutive: true,
                    invariant_dimension_formula: "2^N",
                    coefficient_formula: "1/N!",
                    theta_constraint: "any",
                    uses_epsilon: true,
                },
                CatalogEntryRecord {
                    tag: "ex2",
                    description: "off-diagonal q pair, identity middle block",
                    involutive: false,
                    invariant_dimension_formula: "2",
                    coefficient_formula: "1/(2^(N-1) N!)",
                    theta_constraint: "theta not a multiple of pi",
                    uses_epsilon: false,
                },
                CatalogEntryRecord {
                    tag: "ex3",
                    description: "phase-deformed swap",
                    involutive: false,
                    invariant_dimension_formula: "N+1",
                    coefficient_formula: "(N+1)/(2^N N!)",
                    theta_constraint: "theta not a multiple of pi",
                    uses_epsilon: false,
                },
                CatalogEntryRecord {
                    tag: "ex4",
                    description: "anti-diagonal unit pair, diagonal q middle block",
                    involutive: false,
                    invariant_dimension_formula: "0 (N >= 3); 2 at N = 2",
                    coefficient_formula: "0 (N >= 3)",
                    theta_constraint: "theta not a multiple of pi",
                    uses_epsilon: false,
                },
            ];
            if json {
                print_json(&CatalogRecord {
                    schema: SCHEMA_VERSION,
                    entries,
                });
            } else {
                for e in entries {
                    println!(
                        "{}: {} | involutive: {} | dim A_N^pi = {} | C_N^pi = {} | theta: {}",
                        e.tag,
                        e.description,
                        e.involutive,
                        e.invariant_dimension_formula,
                        e.coefficient_formula,
                        e.theta_constraint
                    );
                }
            }
            Ok(0)
        }

        Command::CheckBraidEq { matrix, json } => {
            let spec = parse_matrix_spec(&matrix)?;
            let report = spec.matrix.braid_residual_with(tolerance);
            Ok(emit_residual(
                "check-braid-eq",
                "braid-equation",
                &spec,
                report,
                json,
            ))
        }

        Command::CheckYbe { matrix, json } => {
            let spec = parse_matrix_spec(&matrix)?;
            let r = spec.matrix.mul(&swap_sigma());
            let base = ybe_residual(&r);
            let report = braidform_core::ResidualReport::new(base.frobenius_residual, tolerance);
            Ok(emit_residual(
                "check-ybe",
                "yang-baxter",
                &spec,
                report,
                json,
            ))
        }

        Command::InvariantDim {
            matrix,
            n,
            method,
            json,
            expect,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let range = parse_n_range(&n)?;
            let expected = expected_dims(&expect, range.len())?;
            let mut mismatch = false;
            for (slot, &sites) in range.iter().enumerate() {
                let subspace = invariant_subspace(&spec.matrix, sites, method.into())?;
                let record = InvariantDimRecord {
                    schema: SCHEMA_VERSION,
                    n: sites,
                    dimension: subspace.dimension(),
                    method: subspace.method().name(),
                    residual_max: subspace.residual_max(),
                    tolerance,
                };
                if json {
                    print_json(&record);
                } else {
                    println!(
                        "n={} dimension={} method={} residual_max={:e}",
                        record.n, record.dimension, record.method, record.residual_max
                    );
                }
                if let Some(exp) = &expected {
                    if exp[slot] != subspace.dimension() {
                        eprintln!(
                            "expect mismatch at n={}: computed {}, expected {}",
                            sites,
                            subspace.dimension(),
                            exp[slot]
                        );
                        mismatch = true;
                    }
                }
            }
            Ok(if mismatch { 1 } else { 0 })
        }

        Command::InvariantBasis {
            matrix,
            n,
            method,
            json,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let subspace = invariant_subspace(&spec.matrix, n, method.into())?;
            let basis: Vec<Vec<BasisEntry>> = subspace
                .basis()
                .iter()
                .map(|v| {
                    v.entries()
                        .iter()
                        .map(|&(k, a)| BasisEntry {
                            index: k + 1,
                            re: a.re,
                            im: a.im,
                        })
                        .collect()
                })
                .collect();
            let record = InvariantBasisRecord {
                schema: SCHEMA_VERSION,
                n,
                dimension: subspace.dimension(),
                method: subspace.method().name(),
                residual_max: subspace.residual_max(),
                tolerance,
                basis,
            };
            if json {
                print_json(&record);
            } else {
                println!(
                    "n={} dimension={} method={}",
                    record.n, record.dimension, record.method
                );
                for (i, v) in record.basis.iter().enumerate() {
                    let entries: Vec<String> = v
                        .iter()
                        .map(|e| format!("e[{}]={:+.6}{:+.6}i", e.index, e.re, e.im))
                        .collect();
                    println!("  v{}: {}", i + 1, entries.join(" "));
                }
            }
            Ok(0)
        }

        Command::VerifyProjection {
            matrix,
            h0,
            n,
            json,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let pspec = ProductSpaceSpec::new(h0, n, spec.matrix.clone())?;
            let comparison = compare_projections(&pspec)?;
            // The projection identity is certified at the fixed-space bound.
            let pass_tol = braidform_core::tol::FIXED_SPACE;
            let passes = comparison.frobenius_distance <= pass_tol
                && comparison.formula_rank == comparison.bruteforce_rank;
            let record = ProjectionRecord {
                schema: SCHEMA_VERSION,
                matrix: spec.display.clone(),
                h0,
                n,
                comparison,
                tolerance: pass_tol,
                passes,
            };
            if json {
                print_json(&record);
            } else {
                println!(
                    "ranks {}/{} distance {:e} idempotency {:e} hermiticity {:e} -> {}",
                    record.comparison.formula_rank,
                    record.comparison.bruteforce_rank,
                    record.comparison.frobenius_distance,
                    record.comparison.idempotency_residual,
                    record.comparison.hermiticity_residual,
                    if passes { "pass" } else { "FAIL" }
                );
            }
            Ok(if passes { 0 } else { 1 })
        }

        Command::Betti {
            beta,
            n,
            matrix,
            method,
            json,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let values = parse_f64_list(&beta)?;
            let betti = BettiVector::new(values, spec.display.clone())?;
            let subspace = invariant_subspace(&spec.matrix, n, method.into())?;
            let result = braided_betti(&betti, n, subspace.dimension())?;
            let record = BettiRecord {
                schema: SCHEMA_VERSION,
                matrix: spec.display.clone(),
                n,
                invariant_dimension: subspace.dimension(),
                method: subspace.method().name(),
                c_n_pi: rational_string(&result.c_n_pi),
                c_n_pi_float: result.c_n_pi_float,
                values: result.values.clone(),
                chi: euler_characteristic(&betti),
                tolerance,
            };
            if json {
                print_json(&record);
            } else {
                println!(
                    "n={} C_N^pi={} ({:.6e}) chi={}",
                    record.n, record.c_n_pi, record.c_n_pi_float, record.chi
                );
                for (m, v) in record.values.iter().enumerate() {
                    println!("  b_{m} = {v}");
                }
            }
            Ok(0)
        }

        Command::Supertrace {
            chi,
            matrix,
            nmax,
            sign,
            c0,
            json,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let Some(tag) = spec.tag else {
                return Err(CliError::usage(
                    "supertrace needs a catalog matrix: the coefficient sequence C_N^pi \
                     comes from its closed-form dimension formula"
                        .into(),
                ));
            };
            let sign = match sign {
                SignArg::Plain => SignConvention::Plain,
                SignArg::Alternating => SignConvention::Alternating,
            };
            let c0 = match c0 {
                C0Arg::One => ConstantTerm::One,
                C0Arg::Extrapolated => ConstantTerm::Extrapolated,
            };
            let coefficients = CoefficientSequence::catalog(tag, nmax);
            let mut report = supertrace_partial(chi, &coefficients, nmax, sign, c0)?;
            report.closed_form_reference = braidform_core::closed_form_reference(tag, chi).ok();
            let coeff_strings: Vec<String> = (0..=nmax)
                .map(|k| rational_string(coefficients.coefficient(k).expect("within range")))
                .collect();
            let record =
                output::supertrace_record(spec.display.clone(), &report, coeff_strings, tolerance);
            if json {
                print_json(&record);
            } else {
                println!(
                    "chi={} nmax={} sign={} c0={} ({}): limit {}",
                    record.chi,
                    record.n_max,
                    record.sign,
                    record.c0,
                    record.constant_value,
                    record.limit_estimate
                );
                if let Some(cf) = &record.closed_form {
                    println!(
                        "  displayed form {} = {}",
                        cf.displayed_expression, cf.displayed_value
                    );
                    println!(
                        "  resummed form  {} = {}",
                        cf.derived_expression, cf.derived_value
                    );
                    if let Some(dev) = cf.deviation_from_displayed_form {
                        println!("  NOTE: displayed form deviates from the series by {dev}");
                    }
                }
            }
            Ok(0)
        }

        Command::Sweep {
            tags,
            theta_grid,
            random_thetas,
            seed,
            eps,
            n,
            format,
            expect,
        } => {
            let tags = parse_tags(&tags)?;
            let thetas: Vec<input::Theta> = match (&theta_grid, random_thetas) {
                (Some(grid), None) => grid.split(',').map(parse_theta).collect::<Result<_, _>>()?,
                (None, Some(count)) => random_theta_grid(count, seed),
                _ => {
                    return Err(CliError::usage(
                        "sweep needs exactly one of --theta-grid or --random-thetas".into(),
                    ))
                }
            };
            let range = parse_n_range(&n)?;
            let expected = expected_dims(&expect, range.len())?;
            let epsilon = Epsilon::from_i8(eps)?;
            if matches!(format, SweepFormat::Csv) {
                println!("{}", SweepRecord::csv_header());
            }
            let mut mismatch = false;
            for &tag in &tags {
                for &theta in &thetas {
                    if tag.requires_nondegenerate_phase() && theta.is_multiple_of_pi() {
                        return Err(CliError::usage(format!(
                            "{}: theta={} gives q^2 = 1, which this entry excludes",
                            tag.name(),
                            theta.value()
                        )));
                    }
                    let matrix = braidform_core::catalog(tag, theta.value(), epsilon)?;
                    for (slot, &sites) in range.iter().enumerate() {
                        let subspace = invariant_subspace(&matrix, sites, MethodChoice::Auto)?;
                        let record = SweepRecord {
                            schema: SCHEMA_VERSION,
                            tag: tag.name().to_string(),
                            theta: theta.value(),
                            epsilon: epsilon.as_i8(),
                            n: sites,
                            dimension: subspace.dimension(),
                            method: subspace.method().name(),
                            residual_max: subspace.residual_max(),
                            tolerance,
                        };
                        match format {
                            SweepFormat::Csv => println!("{}", record.csv_row()),
                            SweepFormat::Jsonl => print_json(&record),
                        }
                        if let Some(exp) = &expected {
                            if exp[slot] != subspace.dimension() {
                                eprintln!(
                                    "expect mismatch: {} theta={} n={}: computed {}, expected {}",
                                    tag.name(),
                                    theta.value(),
                                    sites,
                                    subspace.dimension(),
                                    exp[slot]
                                );
                                mismatch = true;
                            }
                        }
                    }
                }
            }
            Ok(if mismatch { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("braidform: {e}");
            ExitCode::from(2)
        }
    }
}
