//! Command-line front end: run the relation catalog, evaluate ad-hoc
//! expressions, sweep the one-parameter cosmology, classify horizons
//! and list constants.
//!
//! Exit codes: 0 for a clean run (DISCREPANT findings included; a
//! failed relation is a successful verification), 1 when the report
//! contains a DIM_ERROR, 2 for usage or parse errors, 3 with `--strict`
//! when any relation is DISCREPANT.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dexcheck::catalog::{kerr_newman_horizon, HorizonKind};
use dexcheck::cosmo::{self, CosmoField, CosmoState};
use dexcheck::dimension::Dimension;
use dexcheck::dsl;
use dexcheck::engine::{run_catalog_with, Report, RunOptions, Status};
use dexcheck::quantity::{format_f64, Quantity};
use dexcheck::registry::Registry;

#[derive(Parser)]
#[command(
    name = "dexcheck",
    version,
    about = "Dimensionally checked order-of-magnitude relation verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override a registry constant before evaluation, e.g.
    /// --set "T_bg=2.725 K". Repeatable. The dimension must match.
    #[arg(long = "set", value_name = "NAME=VALUE", global = true)]
    set: Vec<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the builtin relation catalog, plus an optional extra catalog.
    Check {
        /// Extra .rel catalog appended to the builtin relations.
        #[arg(long, value_name = "FILE")]
        catalog: Option<PathBuf>,

        /// Multiply every relation tolerance by this factor.
        #[arg(long = "tol-scale", value_name = "X", default_value_t = 1.0)]
        tol_scale: f64,

        /// Exit with code 3 when any relation is DISCREPANT.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate an expression and print its value and dimension.
    Eval {
        /// Expression in catalog syntax, e.g. "G * m_pi^3 * c / hbar^2".
        expr: String,
    },
    /// Cosmological state (--n) or sweep (--sweep) from the particle
    /// count N. Sweeps print CSV on stdout and slope fits on stderr.
    Cosmo {
        /// Particle count for a single state.
        #[arg(long, value_name = "N", conflicts_with = "sweep")]
        n: Option<f64>,

        /// Geometric sweep: N_START N_END POINTS.
        #[arg(long, num_args = 3, value_names = ["N_START", "N_END", "POINTS"])]
        sweep: Option<Vec<f64>>,
    },
    /// Classify a Kerr-Newman horizon from CGS inputs.
    Horizon {
        /// Mass in grams.
        #[arg(long, value_name = "GRAMS")]
        mass: f64,

        /// Charge in esu.
        #[arg(long, value_name = "ESU", default_value_t = 0.0)]
        charge: f64,

        /// Spin length (angular momentum per unit Mc) in cm.
        #[arg(long = "spin-length", value_name = "CM", default_value_t = 0.0)]
        spin_length: f64,
    },
    /// List the constant registry with provenance.
    Constants {
        /// Emit as catalog `const` statements instead of --format.
        #[arg(long)]
        rel: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut registry = Registry::load_defaults();
    for assignment in &cli.set {
        registry = apply_override(&registry, assignment)?;
    }

    match cli.command {
        Command::Check {
            catalog,
            tol_scale,
            strict,
        } => check(&registry, catalog, tol_scale, strict, cli.format),
        Command::Eval { expr } => eval(&registry, &expr, cli.format),
        Command::Cosmo { n, sweep } => cosmo_cmd(&registry, n, sweep, cli.format),
        Command::Horizon {
            mass,
            charge,
            spin_length,
        } => horizon_cmd(&registry, mass, charge, spin_length, cli.format),
        Command::Constants { rel } => constants_cmd(&registry, rel, cli.format),
    }
}

fn apply_override(registry: &Registry, assignment: &str) -> Result<Registry, Failure> {
    let (name, value_text) = assignment.split_once('=').ok_or_else(|| {
        Failure::usage(format!("error: --set expects NAME=VALUE, got \"{assignment}\""))
    })?;
    let value = dsl::parse_quantity(value_text.trim()).map_err(|diags| {
        Failure::usage(format!(
            "error: cannot parse value for --set {name}: {}",
            diags
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        ))
    })?;
    registry
        .with_override(name.trim(), value)
        .map_err(|e| Failure::usage(format!("error: {e}")))
}

fn check(
    registry: &Registry,
    catalog_path: Option<PathBuf>,
    tol_scale: f64,
    strict: bool,
    format: Format,
) -> Result<u8, Failure> {
    if !(tol_scale.is_finite() && tol_scale > 0.0) {
        return Err(Failure::usage("error: --tol-scale must be positive"));
    }
    let mut catalog = dexcheck::builtin_catalog();
    if let Some(path) = catalog_path {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::usage(format!("error: cannot read {}: {e}", path.display())))?;
        let extra = dsl::parse_catalog(&text).map_err(|diags| {
            let rendered: Vec<String> = diags
                .iter()
                .map(|d| format!("{}:{}", path.display(), d))
                .collect();
            Failure::usage(rendered.join("\n"))
        })?;
        for def in &extra.constants {
            if catalog.constants.iter().any(|c| c.name == def.name) {
                return Err(Failure::usage(format!(
                    "error: {}: constant \"{}\" is already defined by the builtin catalog",
                    path.display(),
                    def.name
                )));
            }
        }
        for rel in &extra.relations {
            if catalog.relations.iter().any(|r| r.id == rel.id) {
                return Err(Failure::usage(format!(
                    "error: {}: relation \"{}\" is already defined by the builtin catalog",
                    path.display(),
                    rel.id
                )));
            }
        }
        catalog.constants.extend(extra.constants);
        catalog.relations.extend(extra.relations);
    }

    let report = run_catalog_with(&catalog, registry, &RunOptions { tol_scale });
    match format {
        Format::Json => println!("{}", report.to_json_string()),
        Format::Table => print!("{}", report.to_table()),
        Format::Csv => print!("{}", report_csv(&report)),
    }

    if report.summary.dim_error > 0 {
        let offenders: Vec<&str> = report
            .results
            .iter()
            .filter(|r| r.status == Status::DimError)
            .map(|r| r.relation_id.as_str())
            .collect();
        eprintln!("dimension errors in: {}", offenders.join(", "));
        return Ok(1);
    }
    if strict && report.summary.discrepant > 0 {
        return Ok(3);
    }
    Ok(0)
}

fn report_csv(report: &Report) -> String {
    let mut out = String::from("id,status,gap_dex,tol_dex,ref\n");
    for r in &report.results {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.relation_id,
            r.status.label(),
            r.gap_dex.map(format_f64).unwrap_or_default(),
            r.tol_dex.map(format_f64).unwrap_or_default(),
            csv_quote(&r.paper_ref),
        ));
    }
    out
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn eval(registry: &Registry, expr_text: &str, format: Format) -> Result<u8, Failure> {
    let expr = dsl::parse_expression(expr_text).map_err(|diags| {
        Failure::usage(
            diags
                .iter()
                .map(|d| format!("error: {d}"))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })?;
    let value = dexcheck::evaluate(&expr, registry)
        .map_err(|e| Failure::runtime(format!("error: {e}")))?;
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "magnitude": value.magnitude(),
                "dimension": value.dimension().to_string(),
            })
        ),
        _ => println!("{value}"),
    }
    Ok(0)
}

fn cosmo_cmd(
    registry: &Registry,
    n: Option<f64>,
    sweep_args: Option<Vec<f64>>,
    format: Format,
) -> Result<u8, Failure> {
    match (n, sweep_args) {
        (Some(n), None) => {
            let state = cosmo::cosmo_state(n, registry)
                .map_err(|e| Failure::usage(format!("error: {e}")))?;
            print_state(&state, format);
            Ok(0)
        }
        (None, Some(args)) => {
            let points = args[2];
            if points.fract() != 0.0 || !(3.0..=1e7).contains(&points) {
                return Err(Failure::usage(
                    "error: POINTS must be an integer of at least 3",
                ));
            }
            let series = cosmo::sweep(args[0], args[1], points as usize, registry)
                .map_err(|e| Failure::usage(format!("error: {e}")))?;
            let fits = [
                (CosmoField::Rho, "rho"),
                (CosmoField::Lambda, "Lambda"),
                (CosmoField::GEff, "G"),
            ]
            .map(|(field, label)| {
                let fit = cosmo::fit_powerlaw(&series, CosmoField::Age, field)
                    .expect("sweep grids are never degenerate");
                (label, fit)
            });
            if format == Format::Json {
                let states: Vec<serde_json::Value> =
                    series.states.iter().map(state_json).collect();
                let slopes: serde_json::Value = fits
                    .iter()
                    .map(|(label, fit)| {
                        (
                            label.to_string(),
                            json!({
                                "slope": fit.slope,
                                "max_residual": fit.max_residual,
                            }),
                        )
                    })
                    .collect::<serde_json::Map<String, serde_json::Value>>()
                    .into();
                println!("{}", json!({ "states": states, "slopes": slopes }));
            } else {
                print!("{}", cosmo::to_csv(&series));
                for (label, fit) in &fits {
                    eprintln!(
                        "# slope log10({label}) vs log10(T): {} (max residual {})",
                        format_f64(fit.slope),
                        format_f64(fit.max_residual),
                    );
                }
            }
            Ok(0)
        }
        _ => Err(Failure::usage(
            "error: cosmo needs either --n N or --sweep N_START N_END POINTS",
        )),
    }
}

fn state_json(state: &CosmoState) -> serde_json::Value {
    json!({
        "N": state.n,
        "R_cm": state.radius.magnitude(),
        "M_g": state.mass.magnitude(),
        "T_s": state.age.magnitude(),
        "G_cgs": state.g_eff.magnitude(),
        "H_per_s": state.hubble.magnitude(),
        "Lambda_per_s2": state.lambda.magnitude(),
        "rho_g_per_cm3": state.rho.magnitude(),
    })
}

fn print_state(state: &CosmoState, format: Format) {
    match format {
        Format::Json => println!("{}", state_json(state)),
        Format::Csv => {
            let series = cosmo::SweepSeries {
                states: vec![state.clone()],
                n_start: state.n,
                n_end: state.n,
                points: 1,
            };
            print!("{}", cosmo::to_csv(&series));
        }
        Format::Table => {
            println!("N      = {}", format_f64(state.n));
            println!("R      = {}", state.radius);
            println!("M      = {}", state.mass);
            println!("T      = {}", state.age);
            println!("G_eff  = {}", state.g_eff);
            println!("H      = {}", state.hubble);
            println!("Lambda = {}", state.lambda);
            println!("rho    = {}", state.rho);
        }
    }
}

fn horizon_cmd(
    registry: &Registry,
    mass: f64,
    charge: f64,
    spin_length: f64,
    format: Format,
) -> Result<u8, Failure> {
    let mass = Quantity::try_new(mass, Dimension::MASS)
        .map_err(|e| Failure::usage(format!("error: mass: {e}")))?;
    let charge = Quantity::try_new(charge, Dimension::charge())
        .map_err(|e| Failure::usage(format!("error: charge: {e}")))?;
    let spin = Quantity::try_new(spin_length, Dimension::LENGTH)
        .map_err(|e| Failure::usage(format!("error: spin length: {e}")))?;
    let h = kerr_newman_horizon(mass, charge, spin, registry)
        .map_err(|e| Failure::usage(format!("error: {e}")))?;

    let kind_label = match h.kind {
        HorizonKind::ClassicalBlackHole => "classical black hole",
        HorizonKind::QuantumMechanicalBlackHole => "quantum mechanical black hole",
    };
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "kind": kind_label,
                "real_cm": h.horizon.real.magnitude(),
                "imag_cm": h.horizon.imag.magnitude(),
                "compton_ratio": h.compton_ratio,
                "outer_horizon_cm": h.outer_horizon.map(|q| q.magnitude()),
            })
        ),
        _ => {
            println!("kind          = {kind_label}");
            println!("real          = {}", h.horizon.real);
            println!("imag          = {}", h.horizon.imag);
            if let Some(ratio) = h.compton_ratio {
                println!("compton_ratio = {}", format_f64(ratio));
            }
            if let Some(outer) = h.outer_horizon {
                println!("outer_horizon = {outer}");
            }
        }
    }
    Ok(0)
}

fn constants_cmd(registry: &Registry, rel: bool, format: Format) -> Result<u8, Failure> {
    if rel {
        print!("{}", registry.to_rel_block());
        return Ok(0);
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&registry.to_json()).expect("registry json")
        ),
        Format::Csv => {
            println!("name,symbol,value,dimension,provenance,citation");
            for c in registry.iter() {
                println!(
                    "{},{},{},{},{},{}",
                    c.name,
                    csv_quote(&c.symbol),
                    format_f64(c.value.magnitude()),
                    csv_quote(&c.value.dimension().to_string()),
                    c.provenance.tag.label(),
                    csv_quote(&c.provenance.citation),
                );
            }
        }
        Format::Table => {
            let name_w = registry.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
            let value_w = registry
                .iter()
                .map(|c| format_f64(c.value.magnitude()).len())
                .max()
                .unwrap_or(5)
                .max(5);
            let dim_w = registry
                .iter()
                .map(|c| c.value.dimension().to_string().len())
                .max()
                .unwrap_or(9)
                .max(9);
            println!(
                "{:<name_w$}  {:<value_w$}  {:<dim_w$}  {:<8}  citation",
                "name", "value", "dimension", "tag"
            );
            for c in registry.iter() {
                println!(
                    "{:<name_w$}  {:<value_w$}  {:<dim_w$}  {:<8}  {}",
                    c.name,
                    format_f64(c.value.magnitude()),
                    c.value.dimension().to_string(),
                    c.provenance.tag.label(),
                    c.provenance.citation,
                );
            }
        }
    }
    Ok(0)
}

