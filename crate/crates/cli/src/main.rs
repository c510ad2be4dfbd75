use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use apt_cli::config::{DegenerateChoice, ReferenceSource, RunManifest, TableOrder};
use apt_cli::{
    emit_spectrum, verify_tables, CliError, DeviationRow, GoldenTables, Result, RowOutcome, Session,
};
use apt_core::adaptive::{gamma_minimize, MinimizeOptions};
use apt_core::lattice::GridConfig;
use apt_core::{LabelRule, OscillatorConfig, QuasiParticleState};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "apt",
    version,
    about = "Adaptive perturbation theory spectra of the coupled double quartic oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perturbative vs numerical energies with deviations.
    Table(RunArgs),
    /// One spectrum file per coupling with leading, second-order and numerical energies.
    Spectrum(RunArgs),
    /// Regenerate the ten published tables and compare against their printed values.
    Verify(RunArgs),
    /// Print the minimizing frequencies and leading-order energy.
    Gamma(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Leading,
    Second,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Split,
    SplitPlusResidual,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Shell,
    Overlap,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    Lattice,
    Fock,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Start from a saved manifest; other flags override it.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Write the effective manifest here.
    #[arg(long)]
    save_manifest: Option<PathBuf>,
    /// Comma-separated couplings.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
    /// Comma-separated states as n1:n2.
    #[arg(long, value_delimiter = ',')]
    states: Option<Vec<String>>,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
    #[arg(long = "grid-L")]
    grid_l: Option<f64>,
    /// Lattice levels to compute per coupling.
    #[arg(long)]
    levels: Option<usize>,
    /// Fock cutoff per mode.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long, value_enum)]
    reference: Option<ReferenceArg>,
    #[arg(long, value_enum)]
    label_rule: Option<RuleArg>,
    #[arg(long, value_enum)]
    degenerate_variant: Option<VariantArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Output file (`table`, `verify`) or directory (`spectrum`).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_state(s: &str) -> Result<QuasiParticleState> {
    let bad = || CliError::Argument(format!("state {s:?} is not n1:n2"));
    let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
    Ok(QuasiParticleState::new(
        a.parse().map_err(|_| bad())?,
        b.parse().map_err(|_| bad())?,
    ))
}

impl RunArgs {
    fn manifest(&self) -> Result<RunManifest> {
        let mut m = match &self.manifest {
            Some(p) => RunManifest::load(p)?,
            None => RunManifest::default().stamped(),
        };
        if let Some(l) = &self.lambda {
            m.lambda_list = l
                .iter()
                .map(|&x| OscillatorConfig::new(x))
                .collect::<apt_core::Result<_>>()?;
        }
        if let Some(s) = &self.states {
            m.states = s.iter().map(|x| parse_state(x)).collect::<Result<_>>()?;
        }
        if let Some(o) = self.order {
            m.orders = match o {
                OrderArg::Leading => vec![TableOrder::Leading],
                OrderArg::Second => vec![TableOrder::Second],
                OrderArg::Both => vec![TableOrder::Leading, TableOrder::Second],
            };
        }
        if self.grid_n.is_some() || self.grid_l.is_some() {
            m.grid = GridConfig::new(
                self.grid_n.unwrap_or(m.grid.points_per_dim()),
                self.grid_l.unwrap_or(m.grid.half_width()),
            )?;
        }
        if let Some(k) = self.levels {
            m.levels = k;
        }
        if let Some(c) = self.cutoff {
            m.cutoff = c;
        }
        if let Some(r) = self.reference {
            m.reference = match r {
                ReferenceArg::Lattice => ReferenceSource::Lattice,
                ReferenceArg::Fock => ReferenceSource::Fock,
            };
        }
        if let Some(r) = self.label_rule {
            m.label_rule = match r {
                RuleArg::Shell => LabelRule::ShellOrder,
                RuleArg::Overlap => LabelRule::Overlap,
            };
        }
        if let Some(v) = self.degenerate_variant {
            m.degenerate_variant = match v {
                VariantArg::Split => DegenerateChoice::Split,
                VariantArg::SplitPlusResidual => DegenerateChoice::SplitPlusResidual,
            };
        }
        if let Some(s) = self.seed {
            m.seed = s;
        }
        m.validate()?;
        if let Some(p) = &self.save_manifest {
            m.save(p)?;
        }
        Ok(m)
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        })
    }
}

fn lambdas(m: &RunManifest) -> Vec<f64> {
    m.lambda_list.iter().map(|c| c.lambda()).collect()
}

fn write_rows(
    out: &mut dyn Write,
    format: FormatArg,
    lambda: f64,
    order: TableOrder,
    rows: &[DeviationRow],
) -> Result<()> {
    match format {
        FormatArg::Text => {
            writeln!(out, "lambda = {lambda}, {order} order")?;
            writeln!(
                out,
                "{:>3} {:>3} {:>12} {:>12} {:>11}",
                "n1", "n2", "E", "E_num", "deviation"
            )?;
            for r in rows {
                match &r.outcome {
                    RowOutcome::Computed {
                        perturbative_energy,
                        numerical_energy,
                        deviation_percent,
                        ..
                    } => writeln!(
                        out,
                        "{:>3} {:>3} {:>12.6} {:>12.6} {:>10.4}%",
                        r.state.n1,
                        r.state.n2,
                        perturbative_energy,
                        numerical_energy,
                        deviation_percent
                    )?,
                    RowOutcome::Failed { error } => {
                        writeln!(out, "{:>3} {:>3} failed: {error}", r.state.n1, r.state.n2)?
                    }
                }
            }
            writeln!(out)?;
        }
        FormatArg::Csv => {
            for r in rows {
                match &r.outcome {
                    RowOutcome::Computed { perturbative_energy, numerical_energy, deviation_percent, order, .. } => {
                        writeln!(
                            out,
                            "{lambda},{order},{},{},{perturbative_energy},{numerical_energy},{deviation_percent},{},",
                            r.state.n1,
                            r.state.n2,
                            match order {
                                apt_core::Order::LeadingOrder => "leading",
                                apt_core::Order::SecondOrder => "second",
                                apt_core::Order::SecondOrderDegenerate => "second-degenerate",
                            }
                        )?
                    }
                    RowOutcome::Failed { error } => writeln!(
                        out,
                        "{lambda},{order},{},{},,,,,\"{}\"",
                        r.state.n1,
                        r.state.n2,
                        error.replace('"', "'")
                    )?,
                }
            }
        }
        FormatArg::Json => {
            let v = serde_json::json!({ "lambda": lambda, "order": order, "rows": rows });
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Table(args) => {
            let m = args.manifest()?;
            let mut out = args.output()?;
            if args.format == FormatArg::Csv {
                writeln!(
                    out,
                    "lambda,table_order,n1,n2,energy,numerical,deviation_percent,order,error"
                )?;
            }
            let mut session = Session::new(m.clone());
            session.prefetch(&lambdas(&m));
            for l in lambdas(&m) {
                for &o in &m.orders {
                    write_rows(&mut out, args.format, l, o, &session.run_table(l, o))?;
                }
            }
            out.flush()?;
            Ok(true)
        }
        Command::Spectrum(args) => {
            let m = args.manifest()?;
            let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            let ext = if args.format == FormatArg::Json {
                "json"
            } else {
                "csv"
            };
            let mut session = Session::new(m.clone());
            session.prefetch(&lambdas(&m));
            for l in lambdas(&m) {
                let path = dir.join(format!("spectrum_lambda_{l}.{ext}"));
                emit_spectrum(&mut session, l, &path)?;
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let m = args.manifest()?;
            let tolerances = m.tolerances;
            let selected = lambdas(&m);
            let mut session = Session::new(m);
            let report = verify_tables(
                &mut session,
                &GoldenTables::embedded(),
                Some(&selected),
                &tolerances,
            );
            let mut out = args.output()?;
            match args.format {
                FormatArg::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                _ => write!(out, "{}", report.render())?,
            }
            out.flush()?;
            Ok(report.all_passed())
        }
        Command::Gamma(args) => {
            let m = args.manifest()?;
            let mut out = args.output()?;
            for cfg in &m.lambda_list {
                for &s in &m.states {
                    let (g, e) = gamma_minimize(s, *cfg, &MinimizeOptions::default())?;
                    writeln!(
                        out,
                        "lambda {} state {s} gamma1 {:.10} gamma2 {:.10} E_min {:.10}",
                        cfg.lambda(),
                        g.gamma1(),
                        g.gamma2(),
                        e
                    )?;
                }
            }
            out.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
