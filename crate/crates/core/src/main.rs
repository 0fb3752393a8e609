use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use irs_noma::harness::{
    complexity_table, emit_results, run_mode, run_monte_carlo, stats, trial_seed, write_results,
    ComplexityParams, Mode, OutputFormat, PhaseKind, RunOptions, SweepSpec, SweepVar,
};
use irs_noma::oma::OmaConfig;
use irs_noma::pdd::PddConfig;
use irs_noma::system::{db_to_linear, ChannelRealization, SystemConfig};

#[derive(Parser, Debug)]
#[command(name = "irs-noma", version, about = "IRS-aided two-user NOMA beamforming simulator")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a single channel realization and print the result.
    Solve(ScenarioArgs),
    /// Monte-Carlo sweep over one parameter.
    Sweep(ScenarioArgs),
    /// Print per-iteration operation counts.
    Complexity(ComplexityArgs),
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    /// key=value file whose entries act as defaults for the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated modes: noma-robust, noma-nonrobust, noma-perfect, fdma, tdma.
    #[arg(long, action = clap::ArgAction::Set, value_delimiter = ',', default_value = "noma-robust")]
    mode: Vec<Mode>,
    #[arg(long, default_value = "continuous")]
    phase: PhaseKind,
    /// IRS elements (0 disables the IRS).
    #[arg(long = "M", default_value_t = 20)]
    m: usize,
    /// AP antennas.
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    /// Transmit power (linear).
    #[arg(long = "P", default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    sigma_au_db: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    sigma_iu_db: f64,
    /// AP-user distances in km (one value for both users, or two).
    #[arg(long, action = clap::ArgAction::Set, value_delimiter = ',', default_value = "0.06")]
    d_au: Vec<f64>,
    #[arg(long, action = clap::ArgAction::Set, value_delimiter = ',', default_value = "0.01")]
    d_iu: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    d_ai: f64,
    #[arg(long, default_value_t = 8.0)]
    shadow_db: f64,
    /// Receive-side normalization added to every link gain, in dB.
    #[arg(long, allow_hyphen_values = true)]
    gain_offset_db: Option<f64>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial index used by `solve`.
    #[arg(long, default_value_t = 0)]
    trial: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    #[arg(long, default_value = "M")]
    sweep_var: SweepVar,
    /// Comma-separated values of the swept variable (sigma_sq in dB).
    #[arg(long, action = clap::ArgAction::Set, value_delimiter = ',', allow_hyphen_values = true)]
    sweep_values: Vec<f64>,
    #[arg(long = "trellis-T", default_value_t = 3)]
    trellis_t: usize,
    #[arg(long, default_value_t = 4)]
    m_irs: usize,
    #[arg(long)]
    gamma0: Option<f64>,
    #[arg(long)]
    zeta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Channel normalization target of the NOMA solver (0 disables it).
    #[arg(long)]
    gain_target: Option<f64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Record wall-clock time per row (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct ComplexityArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    #[arg(long = "K", default_value_t = 2)]
    k: usize,
    #[arg(long = "M", default_value_t = 20)]
    m: usize,
    #[arg(long = "trellis-T", default_value_t = 3)]
    trellis_t: usize,
    #[arg(long, default_value_t = 4)]
    m_irs: usize,
    #[arg(long, default_value_t = 0.1)]
    mu_c: f64,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

type CliResult<T> = Result<T, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn pair(v: &[f64], name: &str) -> CliResult<[f64; 2]> {
    match v {
        [a] => Ok([*a, *a]),
        [a, b] => Ok([*a, *b]),
        _ => Err(format!("--{name} takes one or two values")),
    }
}

impl ScenarioArgs {
    fn system(&self) -> CliResult<SystemConfig<f64>> {
        let mut cfg = SystemConfig::<f64> {
            n_antennas: self.n,
            n_irs: self.m,
            power: self.p,
            noise_var: self.noise,
            err_var_au: db_to_linear(self.sigma_au_db),
            err_var_iu: db_to_linear(self.sigma_iu_db),
            d_au: pair(&self.d_au, "d-au")?,
            d_iu: pair(&self.d_iu, "d-iu")?,
            d_ai: self.d_ai,
            shadow_std_db: self.shadow_db,
            master_seed: self.seed,
            ..SystemConfig::default()
        };
        if let Some(g) = self.gain_offset_db {
            cfg.gain_offset_db = g;
        }
        cfg.validate().map_err(fail)?;
        Ok(cfg)
    }

    fn pdd(&self) -> CliResult<PddConfig<f64>> {
        let mut pdd = PddConfig::<f64>::default();
        if let Some(v) = self.gamma0 {
            pdd.gamma0 = v;
        }
        if let Some(v) = self.zeta {
            pdd.zeta = v;
        }
        if let Some(v) = self.eta {
            pdd.eta = v;
        }
        if let Some(v) = self.epsilon {
            pdd.epsilon = v;
        }
        if let Some(v) = self.max_iters {
            pdd.max_outer_iters = v;
        }
        if let Some(v) = self.gain_target {
            pdd.gain_target = (v > 0.0).then_some(v);
        }
        pdd.validate().map_err(fail)?;
        Ok(pdd)
    }
}

/// Turns `key = value` lines into `--key=value` arguments. Blank lines and
/// `#` comments are skipped; a bare key becomes a switch.
fn config_args(path: &Path) -> CliResult<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut args = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                let k = k.trim().trim_start_matches("--");
                if k.is_empty() {
                    return Err(format!("{}:{}: missing key", path.display(), i + 1));
                }
                args.push(format!("--{k}={}", v.trim()));
            }
            None => args.push(format!("--{}", line.trim_start_matches("--"))),
        }
    }
    Ok(args)
}

/// Splices the entries of `--config FILE` right after the subcommand so
/// explicit flags, which come later, take precedence.
fn expand_config(raw: Vec<String>) -> CliResult<Vec<String>> {
    let mut path = None;
    for (i, a) in raw.iter().enumerate().skip(1) {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else if a == "--config" {
            path = raw.get(i + 1).map(PathBuf::from);
        }
    }
    let Some(path) = path else { return Ok(raw) };
    let sub = raw.iter().position(|a| ["solve", "sweep", "complexity"].contains(&a.as_str()));
    let at = sub.map_or(1, |s| s + 1);
    let mut out = raw[..at].to_vec();
    out.extend(config_args(&path)?);
    out.extend_from_slice(&raw[at..]);
    Ok(out)
}

fn solve(a: &ScenarioArgs) -> CliResult<()> {
    let cfg = a.system()?;
    let pdd = a.pdd()?;
    let oma = OmaConfig::<f64>::default();
    let phase = a.phase.to_mode(a.m_irs, a.trellis_t);
    let seed = trial_seed(a.seed, a.trial);
    let channels = ChannelRealization::sample(&cfg, seed).map_err(fail)?;
    let mut reports = Vec::new();
    for &mode in &a.mode {
        let out = run_mode(mode, phase, &channels, &cfg, &pdd, &oma).map_err(fail)?;
        reports.push(serde_json::json!({
            "mode": mode.as_str(),
            "phase_mode": if mode.is_noma() { phase.name() } else { "continuous" },
            "trial": a.trial,
            "channel_hash": format!("{:016x}", channels.fingerprint()),
            "R1": out.r1,
            "R2": out.r2,
            "Rsum": out.r1 + out.r2,
            "iters": out.iters,
            "converged": out.converged,
            "residual": out.residual,
            "trajectory": out.trajectory,
        }));
    }
    let text = serde_json::to_string_pretty(&reports).map_err(fail)?;
    match &a.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn sweep(a: &ScenarioArgs) -> CliResult<()> {
    let cfg = a.system()?;
    let pdd = a.pdd()?;
    let values = if a.sweep_values.is_empty() {
        vec![match a.sweep_var {
            SweepVar::M => a.m as f64,
            SweepVar::P => a.p,
            SweepVar::SigmaSq => a.sigma_au_db,
            SweepVar::TMemory => a.trellis_t as f64,
        }]
    } else {
        a.sweep_values.clone()
    };
    let spec = SweepSpec {
        var: a.sweep_var,
        values,
        modes: a.mode.clone(),
        phase: a.phase,
        m_irs: a.m_irs,
        trellis_memory: a.trellis_t,
        trials: a.trials,
        master_seed: a.seed,
    };
    spec.validate().map_err(fail)?;
    info!("sweeping {} over {:?} with {} trials", spec.var, spec.values, spec.trials);
    let opts = RunOptions { workers: a.workers, timing: a.timing };
    let rows = run_monte_carlo(&spec, &cfg, &pdd, &OmaConfig::default(), opts).map_err(fail)?;
    match &a.out {
        Some(p) => emit_results(&rows, p, a.format).map_err(fail)?,
        None => write_results(&rows, std::io::stdout().lock(), a.format)?,
    }
    for g in stats::summarize(&rows) {
        eprintln!(
            "{}={:<8} {:<15} Rsum {:.4} ± {:.4}  converged {:.0}%",
            spec.var,
            g.swept_value,
            g.mode,
            g.rsum.mean,
            g.rsum.half_width,
            100.0 * g.converged_fraction
        );
    }
    Ok(())
}

fn complexity(a: &ComplexityArgs) -> CliResult<()> {
    let p = ComplexityParams {
        n: a.n,
        k: a.k,
        m: a.m,
        t_memory: a.trellis_t,
        m_irs: a.m_irs,
        mu_c: a.mu_c,
    };
    p.validate().map_err(fail)?;
    let rows = complexity_table(&p);
    match a.format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&rows).map_err(fail)?);
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for r in &rows {
                w.serialize(r).map_err(fail)?;
            }
            w.flush().map_err(fail)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a),
        Command::Complexity(a) => complexity(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
