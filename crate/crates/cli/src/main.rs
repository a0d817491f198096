//! `carl` command-line front end.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use carl_core::analysis::SweepResult;
use carl_core::config::{parse_config, Config, PumpSettings, RunConfig, SweepConfig};
use carl_core::dynamics::{initial_state, integrate, sample_ensemble, IntegrateError, Trajectory};
use carl_core::io::{format_metrics, write_sweep_csv, write_trajectory_csv};
use carl_core::run::{burst_metrics, classify, prepare, Classification};
use carl_core::{calibrate_backscatter, run_sweep, ModelParams};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "carl", version, about = "Ring-cavity collective recoil simulations")]
struct Cli {
    /// Configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate one run and write the trajectory and a metrics sidecar.
    Simulate,
    /// Run a parameter sweep and fit the first-peak scaling exponent.
    Sweep,
    /// Report derived parameters, gain bandwidth and operating regime.
    Classify,
    /// Report the backscatter coupling and check it on the empty cavity.
    CalibrateBackscatter {
        /// Target P-/P+ ratio; defaults to the configured backscatter_ratio.
        #[arg(long)]
        ratio: Option<f64>,
    },
}

/// Failure classes mapped to distinct exit codes.
#[derive(Debug)]
enum Failure {
    Io(String),
    Config(String),
    Integration(String),
    Sweep(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Integration(_) => 3,
            Failure::Sweep(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Config(m) | Failure::Integration(m) | Failure::Sweep(m) => m,
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let config = load_config(cli)?;
    match &cli.command {
        Command::Simulate => simulate(cli, &run_config(config)),
        Command::Sweep => match config {
            Config::Sweep(sweep) => sweep_cmd(cli, sweep),
            Config::Run(_) => Err(Failure::Config("sweep needs a [sweep] section".into())),
        },
        Command::Classify => classify_cmd(&run_config(config)),
        Command::CalibrateBackscatter { ratio } => calibrate_cmd(&run_config(config), *ratio),
    }
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let path = cli.config.as_ref().ok_or_else(|| Failure::Config("--config is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(io_failure(path))?;
    let mut config = parse_config(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let base = match &mut config {
        Config::Run(c) => c,
        Config::Sweep(s) => &mut s.base,
    };
    if let PumpSettings::Recorded { file } = &mut base.pump {
        if file.is_relative() {
            *file = base_dir.join(&*file);
        }
    }
    if let Some(seed) = cli.seed {
        base.simulation.seed = seed;
        if let Config::Sweep(s) = &mut config {
            s.seeds = None;
        }
    }
    Ok(config)
}

fn run_config(config: Config) -> RunConfig {
    match config {
        Config::Run(c) => c,
        Config::Sweep(s) => s.base,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io_failure(dir))?;
    }
    File::create(path).map(BufWriter::new).map_err(io_failure(path))
}

fn write_trajectory(path: &Path, traj: &Trajectory, failure_time: Option<f64>) -> Result<(), Failure> {
    let out = create(path)?;
    write_trajectory_csv(out, traj, failure_time).map_err(io_failure(path))
}

fn simulate(cli: &Cli, config: &RunConfig) -> Result<(), Failure> {
    let (model, pump) = prepare(config).map_err(|e| Failure::Config(e.to_string()))?;
    let sim = &config.simulation;
    let traj_path = cli.out.join(&config.output.trajectory);
    let metrics_path = cli.out.join(&config.output.metrics);

    if sim.t_end == 0.0 {
        return write_trajectory(&traj_path, &Trajectory::default(), None);
    }
    let ensemble = sample_ensemble(sim.n_sim, config.physical.temperature, &model, sim.seed, sim.quiet_start)
        .map_err(|e| Failure::Config(e.to_string()))?;
    let traj = match integrate(&initial_state(ensemble), &model, &pump, sim.t_end, sim.tol, sim.sample_dt) {
        Ok(traj) => traj,
        Err(IntegrateError::Invalid(e)) => return Err(Failure::Config(e.to_string())),
        Err(IntegrateError::Failed { failure, partial }) => {
            write_trajectory(&traj_path, &partial, Some(failure.t))?;
            return Err(Failure::Integration(format!(
                "integration failed at t = {:e} s ({:?}); partial trajectory in {}",
                failure.t,
                failure.kind,
                traj_path.display()
            )));
        }
    };
    write_trajectory(&traj_path, &traj, None)?;

    let metrics = burst_metrics(&model, &traj);
    let classification = classify(config).map_err(|e| Failure::Config(e.to_string()))?;
    let mut out = create(&metrics_path)?;
    let sidecar = format!("seed = {}\n{}{}", sim.seed, format_metrics(&metrics), regime_lines(&classification));
    out.write_all(sidecar.as_bytes()).and_then(|_| out.flush()).map_err(io_failure(&metrics_path))?;
    println!(
        "wrote {} ({} samples) and {}",
        traj_path.display(),
        traj.len(),
        metrics_path.display()
    );
    Ok(())
}

fn regime_lines(c: &Classification) -> String {
    format!(
        "regime = {}\ngain_bandwidth_rad_s = {:e}\ngain_bandwidth_over_kappa = {:e}\ncarl_gain_per_s = {:e}\nno_gain = {}\n",
        c.report.regime,
        c.report.gain_bandwidth,
        c.report.gain_bandwidth / c.model.kappa,
        c.report.gain,
        c.dispersion.no_gain
    )
}

fn sweep_cmd(cli: &Cli, config: SweepConfig) -> Result<(), Failure> {
    let seeds = config.replicate_seeds();
    let result = run_sweep(&config.base, config.parameter, &config.values, &seeds, cli.threads)
        .map_err(|e| Failure::Config(e.to_string()))?;
    let path = cli.out.join(&config.base.output.sweep);
    let out = create(&path)?;
    write_sweep_csv(out, &result).map_err(io_failure(&path))?;
    print_sweep_summary(&result, &path);
    if 2 * result.failed_points > result.points.len() {
        return Err(Failure::Sweep(format!(
            "{} of {} sweep points failed",
            result.failed_points,
            result.points.len()
        )));
    }
    Ok(())
}

fn print_sweep_summary(result: &SweepResult, path: &Path) {
    println!("parameter = {}", result.parameter.key());
    println!("points = {}", result.points.len());
    println!("failed_points = {}", result.failed_points);
    match result.threshold {
        Some(t) => println!("threshold = {t:e}"),
        None => println!("threshold = none"),
    }
    match result.fit {
        Some(fit) => {
            println!("exponent = {:.4}", fit.exponent);
            println!("exponent_stderr = {:.4}", fit.exponent_stderr);
            println!("r_squared = {:.5}", fit.r_squared);
        }
        None => println!("exponent = none"),
    }
    println!("output = {}", path.display());
}

fn classify_cmd(config: &RunConfig) -> Result<(), Failure> {
    let c = classify(config).map_err(|e| Failure::Config(e.to_string()))?;
    print!("{}", model_lines(&c.model));
    println!("peak_growth_rate_per_s = {:e}", c.dispersion.peak_rate);
    println!("peak_detuning_rad_s = {:e}", c.dispersion.peak_detuning);
    println!("detuning_fwhm_rad_s = {:e}", c.dispersion.detuning_fwhm);
    print!("{}", regime_lines(&c));
    Ok(())
}

fn model_lines(m: &ModelParams) -> String {
    [
        ("kappa_rad_s", m.kappa),
        ("recoil_rad_s", m.recoil),
        ("u0_rad_s", m.u0),
        ("coupling_g_rad_s", m.coupling_g),
        ("atom_detuning_rad_s", m.atom_detuning),
        ("doppler_width_rad_s", m.doppler_width),
        ("fsr_hz", m.fsr),
        ("n_target", m.n_target),
        ("eta_rad_s", m.eta),
        ("beta_abs_rad_s", m.beta.norm()),
        ("cavity_detuning_rad_s", m.cavity_detuning),
        ("weight", m.weight),
    ]
    .iter()
    .map(|(k, v)| format!("{k} = {v:e}\n"))
    .collect()
}

fn calibrate_cmd(config: &RunConfig, ratio: Option<f64>) -> Result<(), Failure> {
    let mut config = config.clone();
    if let Some(r) = ratio {
        config.physical.backscatter_ratio = r;
    }
    let target = config.physical.backscatter_ratio;
    let (mut model, pump) = prepare(&config).map_err(|e| Failure::Config(e.to_string()))?;
    let beta = calibrate_backscatter(target, model.kappa).map_err(|e| Failure::Config(e.to_string()))?;

    // Empty resonant cavity: no light shift, pump on resonance.
    model.u0 = 0.0;
    model.cavity_detuning = 0.0;
    let sim = &config.simulation;
    let ensemble = sample_ensemble(sim.n_sim, 0.0, &model, sim.seed, true)
        .map_err(|e| Failure::Config(e.to_string()))?;
    let t_check = 10.0 / model.kappa;
    let traj = integrate(&initial_state(ensemble), &model, &pump, t_check, 1e-9, t_check / 10.0)
        .map_err(|e| Failure::Integration(e.to_string()))?;
    let last = traj.len() - 1;
    let achieved = traj.p_minus[last] / traj.p_plus[last];

    println!("kappa_rad_s = {:e}", model.kappa);
    println!("target_ratio = {target:e}");
    println!("beta_rad_s = {beta:e}");
    println!("beta_over_kappa = {:e}", beta / model.kappa);
    println!("check_time_s = {t_check:e}");
    println!("empty_cavity_ratio = {achieved:e}");
    println!("relative_error = {:e}", (achieved - target).abs() / target.max(f64::MIN_POSITIVE));
    Ok(())
}
