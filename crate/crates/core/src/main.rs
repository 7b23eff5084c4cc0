use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use telecut::experiments::{
    breakeven_efficiency, compare, emit_results, greedy_schedule, run_cut_sweep_on, run_remote_sweep, OutputFormat,
    Summary, SweepConfig,
};
use telecut::metrics::{finite_difference_derivative, FidelityCurve};

#[derive(Parser)]
#[command(name = "telecut", version, about = "Remote CNOT vs gate-cutting GHZ fidelity experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Flat TOML sweep configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Write only this format; both are written when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seeds per stochastic point; overrides the config.
    #[arg(long)]
    reps: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Remote-gate GHZ fidelity against transducer added noise.
    RemoteSweep(Common),
    /// Gate-cut GHZ fidelity against shots per subexperiment.
    CutSweep(Common),
    /// Both sweeps, thresholds, crossovers and F-target shot counts.
    Compare(Common),
    /// Greedy cut-or-remote plan over a link table.
    Schedule {
        #[command(flatten)]
        common: Common,
        /// CSV with columns link,f_remote,bell_available.
        #[arg(long)]
        links: PathBuf,
        /// Total shot budget.
        #[arg(long)]
        total_shots: u64,
    },
    /// Transducer efficiency at which cutting and remote gates break even.
    Breakeven {
        #[command(flatten)]
        common: Common,
        /// Largest gate count tabulated.
        #[arg(long, default_value_t = 8)]
        max_gates: u32,
    },
}

impl Common {
    fn config(&self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(p) => SweepConfig::load(p).with_context(|| format!("reading {}", p.display()))?,
            None => SweepConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(r) = self.reps {
            cfg.repetitions = r;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn formats(&self) -> Vec<OutputFormat> {
        match self.format {
            Some(Format::Csv) => vec![OutputFormat::Csv],
            Some(Format::Json) => vec![OutputFormat::Json],
            None => vec![OutputFormat::Csv, OutputFormat::Json],
        }
    }

    fn emit(&self, stem: &str, curves: &[FidelityCurve], summary: &Summary) -> Result<()> {
        for path in emit_results(&self.out, stem, curves, summary, &self.formats())? {
            println!("wrote {}", path.display());
        }
        Ok(())
    }
}

fn derivatives(curves: &[FidelityCurve]) -> Result<Vec<FidelityCurve>> {
    curves.iter().filter(|c| c.len() >= 2).map(|c| Ok(finite_difference_derivative(c)?)).collect()
}

#[derive(serde::Deserialize)]
struct LinkRow {
    #[allow(dead_code)]
    link: String,
    f_remote: f64,
    bell_available: bool,
}

fn read_links(path: &Path) -> Result<Vec<LinkRow>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let rows = reader.deserialize().collect::<std::result::Result<Vec<LinkRow>, _>>()?;
    if rows.is_empty() {
        bail!("link table {} is empty", path.display());
    }
    Ok(rows)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::RemoteSweep(common) => {
            let cfg = common.config()?;
            let curves = run_remote_sweep(&cfg)?;
            let summary = Summary { derivatives: derivatives(&curves)?, config: Some(cfg), ..Summary::default() };
            common.emit("remote_sweep", &curves, &summary)
        }
        Command::CutSweep(common) => {
            let cfg = common.config()?;
            let curves = run_cut_sweep_on(&cfg, &cfg.n_shots_values())?;
            common.emit("cut_sweep", &curves, &Summary { config: Some(cfg), ..Summary::default() })
        }
        Command::Compare(common) => {
            let cfg = common.config()?;
            let report = compare(&cfg)?;
            let summary = Summary {
                thresholds: report.thresholds,
                crossovers: report.crossovers,
                shot_thresholds: report.shot_thresholds,
                derivatives: derivatives(&report.remote)?,
                config: Some(cfg),
                plan: None,
            };
            let curves: Vec<FidelityCurve> = report.remote.into_iter().chain(report.cut).collect();
            common.emit("compare", &curves, &summary)
        }
        Command::Schedule { common, links, total_shots } => {
            let mut cfg = common.config()?;
            let rows = read_links(&links)?;
            // Each scheduled gate is one cut CNOT, so F_cut comes from the 2-qubit curve.
            cfg.ghz_sizes = vec![2];
            let grid = cfg.n_shots_values();
            let curve = run_cut_sweep_on(&cfg, &grid)?.remove(0);
            let f_cut = |s: u64| curve.interpolate_log(s as f64);
            let f_remote: Vec<f64> = rows.iter().map(|r| r.f_remote).collect();
            let bell: Vec<bool> = rows.iter().map(|r| r.bell_available).collect();
            let plan = greedy_schedule(rows.len(), total_shots, &f_cut, &f_remote, &bell, &grid)?;
            for d in &plan.decisions {
                println!(
                    "gate {}: {:?} shots={} remaining={}{}",
                    d.gate,
                    d.choice,
                    d.shots,
                    d.remaining_after,
                    if d.infeasible { " (infeasible)" } else { "" }
                );
            }
            let summary = Summary { plan: Some(plan), config: Some(cfg), ..Summary::default() };
            common.emit("schedule", std::slice::from_ref(&curve), &summary)
        }
        Command::Breakeven { common, max_gates } => {
            std::fs::create_dir_all(&common.out)?;
            let table: Vec<(u32, f64)> = (1..=max_gates).map(|n| (n, breakeven_efficiency(n))).collect();
            for (n, eta) in &table {
                println!("N={n} eta={eta}");
            }
            let path = common.out.join("breakeven.json");
            let rows: Vec<serde_json::Value> =
                table.iter().map(|(n, eta)| serde_json::json!({ "n_gates": n, "eta": eta })).collect();
            std::fs::write(&path, serde_json::to_string_pretty(&rows)? + "\n")?;
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let jobs = match &cli.command {
        Command::RemoteSweep(c) | Command::CutSweep(c) | Command::Compare(c) => c.jobs,
        Command::Schedule { common, .. } | Command::Breakeven { common, .. } => common.jobs,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| run(cli.command))
}
