use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use partial_profile::construct::{
    auto_generators, construct_broader, extend_to_m, generators_needed, plan_minimum_n, ConstructionPlan, Generator,
    GeneratorSet, Method,
};
use partial_profile::design::{validate_structure, PartialDesign};
use partial_profile::verify::{brute_force_c_matrix, c_matrix_from_counts, certify, tally_counts, Model};

use crate::error::CliError;
use crate::export::write_csv;
use crate::format::DesignFile;
use crate::tables::{render_table1, render_table2};

/// Largest factor count for the `--oracle` cross-check.
pub const ORACLE_MAX_FACTORS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "ppdesign", version, about = "Optimal two-level partial-profile choice designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Main,
    Broader,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Main => Model::Main,
            ModelArg::Broader => Model::Broader,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    /// Comma-separated generators as 0/1 strings of length n.
    #[arg(long, value_delimiter = ',', conflicts_with = "auto_generators")]
    pub generators: Option<Vec<String>>,
    /// Search generators automatically (the default when --generators is absent).
    #[arg(long)]
    pub auto_generators: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum number of choice sets and the construction that achieves it.
    Plan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
    },
    /// Build a certified design and write it as a design file.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::Main)]
        model: ModelArg,
        /// Level held by inactive factors.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        fixed: u8,
        #[command(flatten)]
        generators: GeneratorArgs,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a design file.
    Verify {
        path: PathBuf,
        /// Model to certify against; defaults to the file's model.
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        /// Cross-check the information matrix with the brute-force engine.
        #[arg(long)]
        oracle: bool,
    },
    /// Apply generators to a paired design file.
    Extend {
        path: PathBuf,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        generators: GeneratorArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the minimum-N overview tables.
    Tables {
        #[arg(long, value_enum)]
        table: Option<TableArg>,
    },
    /// Export a design file as flat CSV.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Plan { n, rho } => cmd_plan(n, rho, out),
        Command::Construct { n, rho, m, model, fixed, generators, out: path } => {
            cmd_construct(n, rho, m, model.into(), fixed, &generators, path.as_deref(), out)
        }
        Command::Verify { path, model, oracle } => cmd_verify(&path, model.map(Model::from), oracle, out),
        Command::Extend { path, m, generators, out: target } => cmd_extend(&path, m, &generators, target.as_deref(), out),
        Command::Tables { table } => cmd_tables(table, out),
        Command::Export { path, format: ExportFormat::Csv, out: target } => cmd_export(&path, target.as_deref(), out),
    }
}

fn check_plan_args(n: usize, rho: usize) -> Result<(), CliError> {
    if n == 0 || rho == 0 || rho > n {
        return Err(CliError::Usage(format!("need 1 <= rho <= n, got n = {n}, rho = {rho}")));
    }
    Ok(())
}

pub fn describe_plan(plan: &ConstructionPlan) -> String {
    let mut lines = vec![plan.to_string()];
    lines.push(match plan.method {
        Method::Saturated => format!("saturated: W({},{}) available", plan.n, plan.rho),
        _ => format!("saturated: no W({},{})", plan.n, plan.rho),
    });
    let candidates: Vec<String> = plan.candidates.iter().map(|(nu, k)| format!("(nu={nu}, K={k})")).collect();
    lines.push(format!(
        "Method-W candidates: {}",
        if candidates.is_empty() { "none".to_string() } else { candidates.join(" ") }
    ));
    lines.push(match plan.method_w {
        Some((n1, nu)) => format!("N1={n1} (nu={nu})"),
        None => "N1=none".to_string(),
    });
    lines.push(format!("N2={} (h={})", plan.method_h_sets, plan.h));
    lines.join("\n") + "\n"
}

fn cmd_plan(n: usize, rho: usize, out: &mut dyn Write) -> Result<(), CliError> {
    check_plan_args(n, rho)?;
    let plan = plan_minimum_n(n, rho)?;
    out.write_all(describe_plan(&plan).as_bytes())?;
    Ok(())
}

fn generator_set(d2: &PartialDesign, m: usize, args: &GeneratorArgs) -> Result<GeneratorSet, CliError> {
    match &args.generators {
        Some(list) => {
            let gens = list
                .iter()
                .map(|s| Generator::parse(s.trim()).map_err(|e| CliError::Usage(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GeneratorSet::new(gens, d2.n(), d2.rho())?)
        }
        None => Ok(auto_generators(d2, generators_needed(m))?),
    }
}

fn extend(d2: &PartialDesign, m: usize, args: &GeneratorArgs) -> Result<PartialDesign, CliError> {
    if m < 2 {
        return Err(CliError::Usage(format!("m must be at least 2, got {m}")));
    }
    if m == 2 && args.generators.is_none() {
        return Ok(d2.clone());
    }
    let gs = generator_set(d2, m, args)?;
    Ok(extend_to_m(d2, &gs, m)?)
}

/// Certifies, then writes the file or fails without writing.
fn emit(
    d: &PartialDesign,
    model: Model,
    fixed: u8,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cert = certify(d, model);
    if !cert.passed || !validate_structure(d).is_valid() {
        return Err(CliError::Certificate(format!("constructed design failed certification\n{cert}")));
    }
    let text = DesignFile::from_design(d, model, fixed).with_certificate(&cert).render();
    match target {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            writeln!(
                out,
                "wrote {}: N={} n={} m={} rho={} model={} status=PASS",
                path.display(),
                d.n_sets(),
                d.n(),
                d.m(),
                d.rho(),
                model
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    n: usize,
    rho: usize,
    m: usize,
    model: Model,
    fixed: u8,
    generators: &GeneratorArgs,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    check_plan_args(n, rho)?;
    if m < 2 {
        return Err(CliError::Usage(format!("m must be at least 2, got {m}")));
    }
    let plan = plan_minimum_n(n, rho)?;
    let d2 = plan.build(fixed)?;
    let mut d = extend(&d2, m, generators)?;
    if model == Model::Broader {
        d = construct_broader(&d)?;
    }
    emit(&d, model, fixed, target, out)
}

fn read_design_file(path: &Path) -> Result<DesignFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    DesignFile::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn cmd_verify(path: &Path, model: Option<Model>, oracle: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let file = read_design_file(path)?;
    let model = model.unwrap_or(file.model);
    let d = file.design().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;

    let report = validate_structure(&d);
    for v in &report.violations {
        writeln!(out, "invalid {v}")?;
    }
    let counts = tally_counts(&d);
    let cert = partial_profile::verify::certify_counts(&counts, &d, model);
    write!(out, "{cert}")?;

    if oracle {
        if d.n() <= ORACLE_MAX_FACTORS {
            let counted = c_matrix_from_counts(&counts).to_dmatrix();
            let brute = brute_force_c_matrix(&d)?;
            writeln!(out, "oracle max-discrepancy {:.3e}", (brute - counted).amax())?;
        } else {
            writeln!(out, "oracle skipped (n = {} > {ORACLE_MAX_FACTORS})", d.n())?;
        }
    }

    if cert.passed && report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Certificate(format!("{}: certificate FAIL under the {model} model", path.display())))
    }
}

fn cmd_extend(
    path: &Path,
    m: usize,
    generators: &GeneratorArgs,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let file = read_design_file(path)?;
    let d2 = file.design().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let d = extend(&d2, m, generators)?;
    emit(&d, Model::Main, file.fixed_level, target, out)
}

fn cmd_tables(table: Option<TableArg>, out: &mut dyn Write) -> Result<(), CliError> {
    match table {
        Some(TableArg::One) => out.write_all(render_table1().as_bytes())?,
        Some(TableArg::Two) => out.write_all(render_table2().as_bytes())?,
        None => {
            out.write_all(render_table1().as_bytes())?;
            out.write_all(b"\n")?;
            out.write_all(render_table2().as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_export(path: &Path, target: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let file = read_design_file(path)?;
    match target {
        Some(t) => {
            let f = fs::File::create(t).map_err(|e| CliError::Io(format!("{}: {e}", t.display())))?;
            write_csv(f, file.n, &file.sets)?;
        }
        None => write_csv(out, file.n, &file.sets)?,
    }
    Ok(())
}
