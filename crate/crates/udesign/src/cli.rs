//! Command-line surface binding all modules: construction, verification,
//! numerical search, catalog access, and report emission.
//!
//! Every run prints a machine-readable JSON report on stdout and a short
//! human summary on stderr. Reports are byte-identical for identical
//! argv and seed; wall-clock timings are included only behind `--timings`.
//!
//! Exit codes: 0 success/verified, 1 "not a design" verdict, 2 usage or
//! input errors.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

use crate::catalog::{self, DesignRecord};
use crate::designs::{self, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::gfield::Field;
use crate::linalg;
use crate::linopt;
use crate::mub;
use crate::optimize::{self, OptimizerConfig};
use crate::symplectic;

#[derive(Parser)]
#[command(
    name = "udesign",
    version,
    about = "Construct, verify, and numerically search for unitary t-designs",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    /// Cap worker threads (falls back to the UDESIGN_THREADS variable).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings in the report (breaks byte-for-byte
    /// report determinism).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame potential P_t(D) = Σ|tr(U_k† U_k')|^{2t}/K² of a design.
    Potential {
        /// Design file, or builtin name (qubit12, chau9, fivedesign).
        design: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Verify the order-t design property: P_t at the global minimum.
    Verify {
        design: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Maximal family of q+1 mutually unbiased bases of C^q from
    /// stabilizer states, q a prime power.
    Mub {
        #[arg(long)]
        q: u64,
        /// Classify bases as maximally entangled or product over the
        /// bipartition C^d ⊗ C^d (requires q = d²).
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        d: Option<u64>,
        /// Write the family (vectors with basis labels) as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Weyl-metaplectic 2-design {w(v)·μ(S)} from a transitive symplectic
    /// subgroup.
    CliffordDesign {
        /// Field characteristic (prime), or a prime power when n = 1.
        #[arg(long)]
        p: u64,
        /// Number of particles.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Subgroup: "full" (all of Sp) or "table2" (the built-in order-160
        /// subgroup for p = 3, n = 2).
        #[arg(long, default_value = "full")]
        subgroup: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Materialize the design to a JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in design catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Minimize the frame potential over K unitaries by Riemannian
    /// gradient descent with restarts.
    Minimize {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4000)]
        max_iterations: usize,
        /// Stopping tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the best ensemble as a design file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the accepted-step trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Average reduced purity of pure bipartite states: 2d/(d²+1), by MUB
    /// counting or by averaging over a verified 2-design.
    AvgPurity {
        #[arg(long)]
        d: u64,
        /// "mub" (counting + direct average) or "design" (requires
        /// --design).
        #[arg(long, default_value = "mub")]
        via: String,
        /// Design of dimension d² (file or builtin) for --via design.
        #[arg(long)]
        design: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verification tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Cardinality bounds for 2-designs: order bound, divisibility
    /// constraints, and the Clifford bound d⁴ − d².
    Bounds {
        #[arg(long)]
        d: u64,
        /// Optionally check a specific cardinality K.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Passive linear optics: the U(d) → SpO(2d) embedding and
    /// covariance-matrix averages.
    Linopt {
        #[command(subcommand)]
        action: LinoptAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the built-in designs.
    List,
    /// Materialize a built-in design to a design file.
    Emit {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum LinoptAction {
    /// Embed a verified design into SpO(2d) as real matrices.
    Embed {
        #[arg(long)]
        design: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Verification tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expected energy fluctuations ΔE of the first mode under a random
    /// passive interaction, averaged with a verified 2-design.
    Fluctuations {
        #[arg(long)]
        design: String,
        /// JSON file holding the 2d×2d real covariance matrix.
        #[arg(long)]
        gamma: PathBuf,
        /// Verification tolerance on the potential gap.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

/// Parse a prime power q = p^m.
fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::Usage(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        return Ok((q, 1)); // q itself prime
    }
    let mut m = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::Usage(format!("{q} is not a prime power")));
    }
    Ok((p, m))
}

fn load_design(arg: &str) -> Result<UnitaryEnsemble> {
    let record = catalog::resolve_design(arg)?;
    let mut ens = record.ensemble()?;
    // Builtins are closed up to phase; the group formula applies.
    if catalog::BUILTIN_NAMES.contains(&arg) {
        ens = ens.with_closure_flag();
    }
    Ok(ens)
}

fn record_from_ensemble(
    name: &str,
    ens: &UnitaryEnsemble,
    claims: Vec<catalog::Claim>,
) -> DesignRecord {
    DesignRecord {
        name: name.to_string(),
        dimension: ens.dimension,
        matrices: ens.matrices.clone(),
        provenance: String::new(),
        claims,
    }
}

struct Outcome {
    inputs: Value,
    results: Value,
    verdicts: Value,
    exit: i32,
    summary: String,
}

fn run_command(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Potential { design, t } => {
            let ens = load_design(design)?;
            let value = if ens.closed_up_to_phase {
                designs::frame_potential_group(&ens, *t)?
            } else {
                designs::frame_potential(&ens, *t)?
            };
            let target = designs::target_potential(*t, ens.dimension);
            Ok(Outcome {
                inputs: json!({"design": design, "t": t}),
                results: json!({"d": ens.dimension, "k": ens.len(), "potential": value, "target": target}),
                verdicts: json!({}),
                exit: 0,
                summary: format!(
                    "P_{t}({}) = {value:.12} (target {target}) over K = {}",
                    ens.name,
                    ens.len()
                ),
            })
        }
        Command::Verify { design, t, tol } => {
            let ens = load_design(design)?;
            let report = designs::is_design(&ens, *t, *tol)?;
            let exit = if report.verdict { 0 } else { 1 };
            Ok(Outcome {
                inputs: json!({"design": design, "t": t, "tol": tol}),
                results: serde_json::to_value(&report)?,
                verdicts: json!({"design": report.verdict, "numerical_fault": report.numerical_fault}),
                exit,
                summary: format!(
                    "{}: order-{t} design: {} (P = {:.12}, gap = {:.3e})",
                    ens.name, report.verdict, report.value, report.gap
                ),
            })
        }
        Command::Mub {
            q,
            classify,
            d,
            emit,
        } => {
            let (p, m) = prime_power(*q)?;
            let field = Field::new(p, m)?;
            let family = mub::mub_family(&field)?;
            let mut results = json!({
                "q": q,
                "bases": family.bases.len(),
                "unbiased": true,
            });
            let mut verdicts = json!({"unbiased": true});
            let mut summary = format!(
                "built {} mutually unbiased bases of C^{q}",
                family.bases.len()
            );
            if *classify {
                let d_val = d.ok_or_else(|| Error::Usage("--classify requires --d".into()))?;
                if d_val * d_val != *q {
                    return Err(Error::Usage(format!(
                        "--classify requires q = d² (got q={q}, d={d_val})"
                    )));
                }
                let (bp, bm) = prime_power(d_val)?;
                let base = Field::new(bp, bm)?;
                let tower = crate::gfield::Extension::new(&base, 2)?;
                let counts = mub::classify_entanglement(&family, &tower)?;
                results["maximally_entangled_bases"] = json!(counts.maximally_entangled);
                results["product_bases"] = json!(counts.product);
                verdicts["expected_counts"] = json!(
                    counts.maximally_entangled == (d_val * d_val - d_val) as usize
                        && counts.product == (d_val + 1) as usize
                );
                summary = format!(
                    "{summary}; {} maximally entangled and {} product bases",
                    counts.maximally_entangled, counts.product
                );
            }
            if let Some(path) = emit {
                let doc = json!({
                    "q": q,
                    "bases": family.bases.iter().map(|b| {
                        json!({
                            "label": match &b.label {
                                mub::MubLabel::Finite(a) => format!("a={}", field.index(a)),
                                mub::MubLabel::Infinity => "infinity".to_string(),
                            },
                            "vectors": b.vectors.iter().map(|v| {
                                v.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>()
                            }).collect::<Vec<_>>(),
                        })
                    }).collect::<Vec<_>>(),
                });
                std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
            }
            Ok(Outcome {
                inputs: json!({"q": q, "classify": classify, "d": d}),
                results,
                verdicts,
                exit: 0,
                summary,
            })
        }
        Command::CliffordDesign {
            p,
            n,
            subgroup,
            t,
            tol,
            out,
        } => {
            let (group, field, closure_order) = match (subgroup.as_str(), *n) {
                ("table2", 2) if *p == 3 => {
                    let closure = symplectic::group_closure_field(
                        &symplectic::table2_generators(),
                        symplectic::CLOSURE_CAP,
                    )?;
                    let order = closure.order();
                    (closure.elements, Field::new(3, 1)?, order)
                }
                ("full", 1) => {
                    let (pp, mm) = prime_power(*p)?;
                    let field = Field::new(pp, mm)?;
                    let group = symplectic::sl2(&field);
                    let order = group.len();
                    (group, field, order)
                }
                ("full", nn) => {
                    if *p != 2 || nn != 2 {
                        return Err(Error::Usage(
                            "full Sp(p,n) enumeration is only feasible for p=2, n=2; use --subgroup table2 for p=3, n=2".into(),
                        ));
                    }
                    let field = Field::new(2, 1)?;
                    let group = symplectic::symplectic_group_enumerated(&field, 2)?;
                    let order = group.len();
                    (group, field, order)
                }
                _ => {
                    return Err(Error::Usage(format!(
                        "unsupported subgroup '{subgroup}' for p={p}, n={n}"
                    )))
                }
            };
            let design = symplectic::JacobiDesign::new(&field, *n, group)?;
            let potential = design.frame_potential(*t);
            let target = designs::target_potential(*t, design.dim());
            let verdict = potential - target <= *tol;
            if let Some(path) = out {
                let ens =
                    UnitaryEnsemble::new("clifford-design", design.dim(), design.materialize())?;
                let record = record_from_ensemble(
                    "clifford-design",
                    &ens,
                    vec![catalog::Claim { t: *t, verdict }],
                );
                catalog::save_ensemble(&record, path)?;
            }
            Ok(Outcome {
                inputs: json!({"p": p, "n": n, "subgroup": subgroup, "t": t, "tol": tol}),
                results: json!({
                    "dim": design.dim(),
                    "group_order": closure_order,
                    "transitive": design.transitive,
                    "orbit_sizes": design.orbit_sizes,
                    "cardinality": design.len(),
                    "potential": potential,
                    "target": target,
                }),
                verdicts: json!({"design": verdict, "transitive": design.transitive}),
                exit: if verdict { 0 } else { 1 },
                summary: format!(
                    "K = {} unitaries of dimension {}, P_{t} = {potential:.10} (target {target})",
                    design.len(),
                    design.dim()
                ),
            })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let entries: Vec<Value> = catalog::BUILTIN_NAMES
                    .iter()
                    .map(|name| match *name {
                        "qubit12" => json!({"name": name, "d": 2, "k": 12, "orders": [1, 2]}),
                        "chau9" => json!({"name": name, "d": 9, "k": 12960, "orders": [1, 2]}),
                        _ => json!({"name": name, "d": 2, "k": 60, "orders": [1, 2, 3, 4, 5]}),
                    })
                    .collect();
                Ok(Outcome {
                    inputs: json!({}),
                    results: json!({"builtins": entries}),
                    verdicts: json!({}),
                    exit: 0,
                    summary: format!("builtins: {}", catalog::BUILTIN_NAMES.join(", ")),
                })
            }
            CatalogAction::Emit { name, out } => {
                let record = catalog::builtin_record(name)?;
                catalog::save_ensemble(&record, out)?;
                Ok(Outcome {
                    inputs: json!({"name": name, "out": out.display().to_string()}),
                    results: json!({"d": record.dimension, "k": record.k()}),
                    verdicts: json!({}),
                    exit: 0,
                    summary: format!("wrote {} (K = {})", out.display(), record.k()),
                })
            }
        },
        Command::Minimize {
            d,
            k,
            t,
            restarts,
            seed,
            max_iterations,
            tol,
            out,
            trace,
        } => {
            let config = OptimizerConfig {
                d: *d,
                k: *k,
                t: *t,
                max_iterations: *max_iterations,
                restarts: *restarts,
                initial_step: 0.1,
                tolerance: *tol,
                seed: *seed,
            };
            let result = optimize::minimize_potential(&config)?;
            if let Some(path) = trace {
                let mut lines = String::new();
                for r in &result.restarts {
                    lines.push_str(&serde_json::to_string(&json!({
                        "restart": r.restart,
                        "final_value": r.final_value,
                        "iterations": r.iterations,
                    }))?);
                    lines.push('\n');
                }
                for (iter, p) in result.potentials.iter().enumerate() {
                    lines.push_str(&serde_json::to_string(&json!({
                        "restart": result.best_restart,
                        "iter": iter,
                        "potential": p,
                    }))?);
                    lines.push('\n');
                }
                std::fs::write(path, lines)?;
            }
            if let Some(path) = out {
                let record = record_from_ensemble(
                    &result.ensemble.name.clone(),
                    &result.ensemble,
                    vec![catalog::Claim {
                        t: *t,
                        verdict: result.reached_target,
                    }],
                );
                catalog::save_ensemble(&record, path)?;
            }
            Ok(Outcome {
                inputs: serde_json::to_value(&config)?,
                results: json!({
                    "best_value": result.best_value,
                    "target": result.target,
                    "gap": result.best_value - result.target,
                    "best_restart": result.best_restart,
                    "accepted_steps": result.potentials.len(),
                    "restarts": result.restarts,
                }),
                verdicts: json!({"reached_target": result.reached_target}),
                exit: 0,
                summary: format!(
                    "best P_{t} = {:.10} (target {}), restart {}",
                    result.best_value, result.target, result.best_restart
                ),
            })
        }
        Command::AvgPurity {
            d,
            via,
            design,
            seed,
            tol,
        } => {
            let (dp, dm) = prime_power(*d)?;
            match via.as_str() {
                "mub" => {
                    let base = Field::new(dp, dm)?;
                    let report = mub::average_purity_mub(&base)?;
                    let agree = (report.by_counting - report.by_average).abs() <= 1e-10;
                    Ok(Outcome {
                        inputs: json!({"d": d, "via": via}),
                        results: serde_json::to_value(&report)?,
                        verdicts: json!({"counting_matches_average": agree}),
                        exit: 0,
                        summary: format!(
                            "average purity 2d/(d²+1) = {:.12} (counting {:.12}, direct {:.12})",
                            report.closed_form, report.by_counting, report.by_average
                        ),
                    })
                }
                "design" => {
                    let name = design
                        .as_ref()
                        .ok_or_else(|| Error::Usage("--via design requires --design".into()))?;
                    let ens = load_design(name)?;
                    let mut rng =
                        <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(*seed);
                    let d_us = *d as usize;
                    let mut values = Vec::new();
                    for _ in 0..5 {
                        let psi = linalg::random_state(d_us * d_us, &mut rng);
                        values.push(mub::page_average(&ens, d_us, &psi, *tol)?);
                    }
                    let spread = values
                        .iter()
                        .fold(0.0f64, |m, v| m.max((v - values[0]).abs()));
                    let closed = 2.0 * *d as f64 / ((*d * *d) as f64 + 1.0);
                    Ok(Outcome {
                        inputs: json!({"d": d, "via": via, "design": name, "seed": seed, "tol": tol}),
                        results: json!({"values": values, "closed_form": closed, "spread": spread}),
                        verdicts: json!({"state_independent": spread <= 1e-9}),
                        exit: 0,
                        summary: format!(
                            "design average purity = {:.12} (closed form {closed:.12}, spread {spread:.2e})",
                            values[0]
                        ),
                    })
                }
                other => Err(Error::Usage(format!("unknown --via '{other}'"))),
            }
        }
        Command::Bounds { d, k } => {
            let lower = designs::lower_bound(*d);
            let clifford = designs::clifford_bound(*d);
            let constraints = designs::cardinality_constraints(*d, k.unwrap_or(0));
            let mut verdicts = json!({});
            if let Some(kk) = k {
                verdicts["cardinality_admissible"] =
                    json!(designs::cardinality_constraints(*d, *kk).pass && *kk >= lower);
            }
            Ok(Outcome {
                inputs: json!({"d": d, "k": k}),
                results: json!({
                    "lower": lower,
                    "clifford": clifford,
                    "divisibility_min": constraints.divisibility_min,
                    "divisors": constraints.divisors,
                }),
                verdicts,
                exit: 0,
                summary: format!(
                    "d = {d}: K ≥ {lower}, divisibility raises to {}, Clifford bound {clifford}",
                    constraints.divisibility_min
                ),
            })
        }
        Command::Linopt { action } => match action {
            LinoptAction::Embed {
                design,
                t,
                tol,
                out,
            } => {
                let ens = load_design(design)?;
                let images = linopt::pushforward_design(&ens, *t, *tol)?;
                let max_defect = images.iter().map(linopt::spo_defect).fold(0.0, f64::max);
                if let Some(path) = out {
                    let doc = json!({
                        "d": ens.dimension,
                        "order": t,
                        "matrices": images.iter().map(|s| {
                            (0..s.nrows()).map(|i| {
                                (0..s.ncols()).map(|j| s[(i, j)]).collect::<Vec<f64>>()
                            }).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                    });
                    std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
                }
                Ok(Outcome {
                    inputs: json!({"design": design, "t": t, "tol": tol}),
                    results: json!({"count": images.len(), "spo_dim": 2 * ens.dimension, "max_defect": max_defect}),
                    verdicts: json!({"all_in_spo": max_defect <= 1e-10}),
                    exit: 0,
                    summary: format!(
                        "embedded {} unitaries into SpO({}) (max defect {max_defect:.2e})",
                        images.len(),
                        2 * ens.dimension
                    ),
                })
            }
            LinoptAction::Fluctuations { design, gamma, tol } => {
                let ens = load_design(design)?;
                let text = std::fs::read_to_string(gamma)?;
                let rows: Vec<Vec<f64>> = serde_json::from_str(&text)
                    .map_err(|e| Error::MalformedFile(format!("gamma file: {e}")))?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(Error::MalformedFile("gamma must be square".into()));
                }
                let g = linopt::RMat::from_fn(n, n, |i, j| rows[i][j]);
                let delta = linopt::energy_fluctuation(&ens, &g, *tol)?;
                let mean = linopt::mean_first_mode_energy(&ens, &g)?;
                Ok(Outcome {
                    inputs: json!({"design": design, "gamma": gamma.display().to_string(), "tol": tol}),
                    results: json!({"delta_e": delta, "mean_energy": mean}),
                    verdicts: json!({}),
                    exit: 0,
                    summary: format!("ΔE = {delta:.12}, mean first-mode energy {mean:.12}"),
                })
            }
        },
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Potential { .. } => "potential",
        Command::Verify { .. } => "verify",
        Command::Mub { .. } => "mub",
        Command::CliffordDesign { .. } => "clifford-design",
        Command::Catalog { .. } => "catalog",
        Command::Minimize { .. } => "minimize",
        Command::AvgPurity { .. } => "avg-purity",
        Command::Bounds { .. } => "bounds",
        Command::Linopt { .. } => "linopt",
    }
}

/// Parse argv, dispatch, and return (exit code, JSON report). The report
/// is also what `run` prints to stdout.
pub fn dispatch<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are successful exits.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return (code, String::new());
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("UDESIGN_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = threads {
        // Build the global pool once; later calls are a no-op.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let started = Instant::now();
    let name = command_name(&cli.command);
    match run_command(&cli.command) {
        Ok(outcome) => {
            let mut report = json!({
                "command": name,
                "inputs": outcome.inputs,
                "results": outcome.results,
                "verdicts": outcome.verdicts,
                "version": env!("CARGO_PKG_VERSION"),
            });
            if cli.timings {
                report["timings"] = json!({"wall_s": started.elapsed().as_secs_f64()});
            }
            eprintln!("{}", outcome.summary);
            (outcome.exit, serde_json::to_string_pretty(&report).unwrap())
        }
        Err(err) => {
            let report = json!({
                "command": name,
                "error": err.to_string(),
                "version": env!("CARGO_PKG_VERSION"),
            });
            eprintln!("error: {err}");
            (2, serde_json::to_string_pretty(&report).unwrap())
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let (code, report) = dispatch(std::env::args_os());
    if !report.is_empty() {
        println!("{report}");
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("udesign".to_string())
            .chain(s.split_whitespace().map(|w| w.to_string()))
            .collect()
    }

    #[test]
    fn verify_builtin_exit_codes() {
        let (code, report) = dispatch(args("verify qubit12 --t 2"));
        assert_eq!(code, 0, "report: {report}");
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["command"], "verify");
        assert!(v["verdicts"]["design"].as_bool().unwrap());
        assert!(v["results"]["gap"].as_f64().unwrap().abs() <= 1e-12);

        let (code3, _) = dispatch(args("verify qubit12 --t 3"));
        assert_eq!(code3, 1, "qubit12 is not a 3-design");
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        let (code, _) = dispatch(args("verify qubit12 --no-such-flag"));
        assert_eq!(code, 2);
        let (code2, _) = dispatch(args("frobnicate"));
        assert_eq!(code2, 2);
    }

    #[test]
    fn bounds_report_values() {
        let (code, report) = dispatch(args("bounds --d 2"));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["results"]["lower"], 10);
        assert_eq!(v["results"]["clifford"], 12);
        assert_eq!(v["results"]["divisibility_min"], 12);
    }

    #[test]
    fn reports_are_deterministic() {
        let (_, a) = dispatch(args("potential qubit12 --t 2"));
        let (_, b) = dispatch(args("potential qubit12 --t 2"));
        assert_eq!(a, b, "reports must be byte-identical");
        let (_, c) = dispatch(args(
            "minimize --d 2 --k 3 --t 1 --restarts 2 --seed 5 --max-iterations 40",
        ));
        let (_, d) = dispatch(args(
            "minimize --d 2 --k 3 --t 1 --restarts 2 --seed 5 --max-iterations 40",
        ));
        assert_eq!(c, d);
    }

    #[test]
    fn mub_command_with_classification() {
        let (code, report) = dispatch(args("mub --q 4 --classify --d 2"));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["results"]["bases"], 5);
        assert_eq!(v["results"]["maximally_entangled_bases"], 2);
        assert_eq!(v["results"]["product_bases"], 3);
        assert!(v["verdicts"]["expected_counts"].as_bool().unwrap());
        let (code_bad, _) = dispatch(args("mub --q 6"));
        assert_eq!(code_bad, 2, "6 is not a prime power");
    }

    #[test]
    fn clifford_design_qutrit() {
        let (code, report) = dispatch(args("clifford-design --p 3 --n 1"));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["results"]["cardinality"], 216);
        assert_eq!(v["results"]["group_order"], 24);
        assert!(v["verdicts"]["design"].as_bool().unwrap());
    }

    #[test]
    fn avg_purity_mub_route() {
        let (code, report) = dispatch(args("avg-purity --d 2"));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert!((v["results"]["closed_form"].as_f64().unwrap() - 0.8).abs() < 1e-12);
        assert!(v["verdicts"]["counting_matches_average"].as_bool().unwrap());
    }

    #[test]
    fn catalog_roundtrip_through_files() {
        let dir = std::env::temp_dir().join("udesign-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("qubit12.json");
        let (code, _) = dispatch(args(&format!(
            "catalog emit qubit12 --out {}",
            path.display()
        )));
        assert_eq!(code, 0);
        let (code2, report) = dispatch(args(&format!("verify {} --t 2", path.display())));
        assert_eq!(code2, 0, "{report}");
    }

    #[test]
    fn linopt_fluctuations_via_files() {
        let dir = std::env::temp_dir().join("udesign-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let gamma_path = dir.join("gamma.json");
        std::fs::write(
            &gamma_path,
            "[[1.0,0.2,0.0,0.1],[0.2,1.5,0.3,0.0],[0.0,0.3,0.9,0.0],[0.1,0.0,0.0,1.1]]",
        )
        .unwrap();
        let (code, report) = dispatch(args(&format!(
            "linopt fluctuations --design qubit12 --gamma {}",
            gamma_path.display()
        )));
        assert_eq!(code, 0, "{report}");
        let v: Value = serde_json::from_str(&report).unwrap();
        assert!(v["results"]["delta_e"].as_f64().unwrap().is_finite());
    }
}
