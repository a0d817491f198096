//! INI-style run and sweep configuration.
//!
//! ```text
//! [physical]
//! wavelength = 797.3 nm
//! decay_time = 3.8 us
//! atom_number = 1.5e6
//! pump_power = 4 W
//! temperature = 2 uK
//!
//! [simulation]
//! n_sim = 1000
//! t_end = 150 us
//! ```
//!
//! Bare numbers are SI (rad/s for frequencies). Suffixed frequencies in
//! Hz/kHz/MHz/GHz are converted with a factor 2π. Unknown, duplicate or
//! malformed keys are rejected with the offending line.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::{self, Write as _};
use std::path::PathBuf;

use crate::params::{CavityLoss, Coupling, PhysicalParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: '{}': {}", self.key, self.message),
            None => write!(f, "'{}': {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(line: Option<usize>, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line, key: key.to_string(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSettings {
    pub n_sim: usize,
    pub t_end: f64,
    pub sample_dt: f64,
    pub tol: f64,
    pub seed: u64,
    pub quiet_start: bool,
    /// Δ_c in rad/s; `None` locks the pump to the atom-shifted resonance.
    pub cavity_detuning: Option<f64>,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            n_sim: 100,
            t_end: 150e-6,
            sample_dt: 0.02e-6,
            tol: 1e-7,
            seed: 1,
            quiet_start: true,
            cavity_detuning: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PumpSettings {
    Ramp { tau_bw: f64 },
    Recorded { file: PathBuf },
}

impl PumpSettings {
    /// Build-up time passed to the model; zero for recorded traces.
    pub fn tau_bw(&self) -> f64 {
        match self {
            PumpSettings::Ramp { tau_bw } => *tau_bw,
            PumpSettings::Recorded { .. } => 0.0,
        }
    }
}

impl Default for PumpSettings {
    fn default() -> Self {
        PumpSettings::Ramp { tau_bw: 20e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    pub trajectory: PathBuf,
    pub metrics: PathBuf,
    pub sweep: PathBuf,
}

impl Default for OutputSettings {
    fn default() -> Self {
        Self {
            trajectory: "trajectory.csv".into(),
            metrics: "metrics.txt".into(),
            sweep: "sweep.csv".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    pub simulation: SimulationSettings,
    pub pump: PumpSettings,
    pub output: OutputSettings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    AtomNumber,
    PumpPower,
    Temperature,
}

impl SweepParameter {
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::AtomNumber => "atom_number",
            SweepParameter::PumpPower => "pump_power",
            SweepParameter::Temperature => "temperature",
        }
    }

    fn dim(self) -> Dim {
        match self {
            SweepParameter::AtomNumber => Dim::Number,
            SweepParameter::PumpPower => Dim::Power,
            SweepParameter::Temperature => Dim::Temperature,
        }
    }

    /// Writes `value` into the swept field of `p`.
    pub fn apply(self, p: &mut PhysicalParams, value: f64) {
        match self {
            SweepParameter::AtomNumber => p.atom_number = value,
            SweepParameter::PumpPower => p.pump_power = value,
            SweepParameter::Temperature => p.temperature = value,
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "atom_number" => Ok(SweepParameter::AtomNumber),
            "pump_power" => Ok(SweepParameter::PumpPower),
            "temperature" => Ok(SweepParameter::Temperature),
            other => Err(format!(
                "unknown sweep parameter '{other}' (expected atom_number, pump_power or temperature)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub base: RunConfig,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    /// One seed per replicate; `None` derives them from the master seed.
    pub seeds: Option<Vec<u64>>,
    pub replicates: usize,
}

impl SweepConfig {
    /// Replicate seeds, either explicit or expanded from the master seed.
    pub fn replicate_seeds(&self) -> Vec<u64> {
        match &self.seeds {
            Some(s) => s.clone(),
            None => crate::seed::replicate_seeds(self.base.simulation.seed, self.replicates),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Run(RunConfig),
    Sweep(SweepConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dim {
    Length,
    Power,
    Temperature,
    Time,
    Frequency,
    Mass,
    Number,
}

fn unit_factor(dim: Dim, unit: &str) -> Option<f64> {
    let factor = match (dim, unit) {
        (Dim::Length, "m") => 1.0,
        (Dim::Length, "cm") => 1e-2,
        (Dim::Length, "mm") => 1e-3,
        (Dim::Length, "um") => 1e-6,
        (Dim::Length, "nm") => 1e-9,
        (Dim::Power, "W") => 1.0,
        (Dim::Power, "mW") => 1e-3,
        (Dim::Power, "uW") => 1e-6,
        (Dim::Temperature, "K") => 1.0,
        (Dim::Temperature, "mK") => 1e-3,
        (Dim::Temperature, "uK") => 1e-6,
        (Dim::Temperature, "nK") => 1e-9,
        (Dim::Time, "s") => 1.0,
        (Dim::Time, "ms") => 1e-3,
        (Dim::Time, "us") => 1e-6,
        (Dim::Time, "ns") => 1e-9,
        (Dim::Frequency, "rad/s") => 1.0,
        (Dim::Frequency, "Hz") => TAU,
        (Dim::Frequency, "kHz") => TAU * 1e3,
        (Dim::Frequency, "MHz") => TAU * 1e6,
        (Dim::Frequency, "GHz") => TAU * 1e9,
        (Dim::Mass, "kg") => 1.0,
        _ => return None,
    };
    Some(factor)
}

/// Parses `"<number> [unit]"` into SI units for the given dimension.
fn parse_quantity(text: &str, dim: Dim) -> Result<f64, String> {
    let text = text.trim().replace(['µ', 'μ'], "u");
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_ascii_alphabetic()
                && !((c == 'e' || c == 'E')
                    && i > 0
                    && text[i + 1..].starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+'))
        })
        .map_or(text.len(), |(i, _)| i);
    let (number, unit) = text.split_at(split);
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse number in '{text}'"))?;
    if !value.is_finite() {
        return Err(format!("value '{text}' is not finite"));
    }
    let unit = unit.trim();
    if unit.is_empty() {
        return Ok(value);
    }
    unit_factor(dim, unit)
        .map(|f| value * f)
        .ok_or_else(|| format!("unit '{unit}' not allowed here"))
}

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

/// Raw key/value entries grouped by section.
struct Document {
    sections: BTreeMap<String, BTreeMap<String, Entry>>,
}

const KNOWN: &[(&str, &[&str])] = &[
    (
        "physical",
        &[
            "wavelength",
            "d1_wavelength",
            "linewidth",
            "cavity_length",
            "waist",
            "finesse",
            "decay_time",
            "atom_number",
            "pump_power",
            "temperature",
            "atom_mass",
            "coupling_g",
            "backscatter_ratio",
            "backscatter_phase",
        ],
    ),
    (
        "simulation",
        &["n_sim", "t_end", "sample_dt", "tol", "seed", "quiet_start", "cavity_detuning"],
    ),
    ("pump", &["profile", "tau_bw", "file"]),
    ("output", &["trajectory", "metrics", "sweep"]),
    ("sweep", &["parameter", "values", "from", "to", "points", "spacing", "replicates", "seeds"]),
];

impl Document {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut sections: BTreeMap<String, BTreeMap<String, Entry>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split(['#', ';']).next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| err(Some(line), content, "malformed section header"))?
                    .trim();
                if !KNOWN.iter().any(|(s, _)| *s == name) {
                    return Err(err(Some(line), name, "unknown section"));
                }
                if sections.contains_key(name) {
                    return Err(err(Some(line), name, "duplicate section"));
                }
                sections.insert(name.to_string(), BTreeMap::new());
                current = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(Some(line), content, "expected 'key = value'"))?;
            let key = key.trim();
            let value = value.trim();
            let section = current
                .as_ref()
                .ok_or_else(|| err(Some(line), key, "key outside of any section"))?;
            let allowed = KNOWN.iter().find(|(s, _)| s == section).map(|(_, k)| *k).unwrap_or(&[]);
            if !allowed.contains(&key) {
                return Err(err(Some(line), key, format!("unknown key in [{section}]")));
            }
            let table = sections.get_mut(section).expect("section registered");
            if table.contains_key(key) {
                return Err(err(Some(line), key, "duplicate key"));
            }
            if value.is_empty() {
                return Err(err(Some(line), key, "empty value"));
            }
            table.insert(key.to_string(), Entry { value: value.to_string(), line, used: false });
        }
        Ok(Document { sections })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        let entry = self.sections.get_mut(section)?.get_mut(key)?;
        entry.used = true;
        Some((entry.value.clone(), entry.line))
    }

    fn quantity(&mut self, section: &str, key: &str, dim: Dim) -> Result<Option<f64>, ConfigError> {
        match self.take(section, key) {
            None => Ok(None),
            Some((v, line)) => parse_quantity(&v, dim).map(Some).map_err(|m| err(Some(line), key, m)),
        }
    }

    fn required(&mut self, section: &str, key: &str, dim: Dim) -> Result<f64, ConfigError> {
        self.quantity(section, key, dim)?
            .ok_or_else(|| err(None, key, format!("missing required key in [{section}]")))
    }

    fn integer(&mut self, section: &str, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.take(section, key) {
            None => Ok(None),
            Some((v, line)) => parse_integer(&v).map(Some).map_err(|m| err(Some(line), key, m)),
        }
    }

    fn boolean(&mut self, section: &str, key: &str) -> Result<Option<bool>, ConfigError> {
        match self.take(section, key) {
            None => Ok(None),
            Some((v, line)) => match v.as_str() {
                "true" | "yes" | "on" => Ok(Some(true)),
                "false" | "no" | "off" => Ok(Some(false)),
                _ => Err(err(Some(line), key, format!("expected true or false, got '{v}'"))),
            },
        }
    }
}

fn parse_integer(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text.parse().map_err(|_| format!("cannot parse integer '{text}'"))?;
    if v >= 0.0 && v.fract() == 0.0 && v < 2f64.powi(53) {
        Ok(v as u64)
    } else {
        Err(format!("'{text}' is not a non-negative integer"))
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_physical(doc: &mut Document) -> Result<PhysicalParams, ConfigError> {
    const S: &str = "physical";
    let wavelength = doc.required(S, "wavelength", Dim::Length)?;
    let finesse = doc.quantity(S, "finesse", Dim::Number)?;
    let decay = doc.quantity(S, "decay_time", Dim::Time)?;
    let loss = match (finesse, decay) {
        (Some(f), None) => CavityLoss::Finesse(f),
        (None, Some(t)) => CavityLoss::DecayTime(t),
        (Some(_), Some(_)) => {
            return Err(err(None, "finesse", "give exactly one of finesse and decay_time"))
        }
        (None, None) => return Err(err(None, "finesse", "missing finesse or decay_time")),
    };
    let atom_number = doc.required(S, "atom_number", Dim::Number)?;
    let pump_power = doc.required(S, "pump_power", Dim::Power)?;
    let temperature = doc.required(S, "temperature", Dim::Temperature)?;
    let mut p = PhysicalParams::new(wavelength, loss, atom_number, pump_power, temperature);
    if let Some(v) = doc.quantity(S, "d1_wavelength", Dim::Length)? {
        p.d1_wavelength = v;
    }
    if let Some(v) = doc.quantity(S, "linewidth", Dim::Frequency)? {
        p.linewidth = v;
    }
    if let Some(v) = doc.quantity(S, "cavity_length", Dim::Length)? {
        p.cavity_length = v;
    }
    if let Some(v) = doc.quantity(S, "waist", Dim::Length)? {
        p.waist = v;
    }
    if let Some(v) = doc.quantity(S, "atom_mass", Dim::Mass)? {
        p.atom_mass = v;
    }
    if let Some((v, line)) = doc.take(S, "coupling_g") {
        p.coupling = if v == "formula" {
            Coupling::Formula
        } else {
            Coupling::Override(
                parse_quantity(&v, Dim::Frequency).map_err(|m| err(Some(line), "coupling_g", m))?,
            )
        };
    }
    if let Some(v) = doc.quantity(S, "backscatter_ratio", Dim::Number)? {
        p.backscatter_ratio = v;
    }
    if let Some(v) = doc.quantity(S, "backscatter_phase", Dim::Number)? {
        p.backscatter_phase = v;
    }
    p.validate().map_err(|e| err(None, S, e.to_string()))?;
    Ok(p)
}

fn parse_simulation(doc: &mut Document) -> Result<SimulationSettings, ConfigError> {
    const S: &str = "simulation";
    let mut s = SimulationSettings::default();
    if let Some(v) = doc.integer(S, "n_sim")? {
        if v < 2 {
            return Err(err(None, "n_sim", "must be at least 2"));
        }
        s.n_sim = v as usize;
    }
    if let Some(v) = doc.quantity(S, "t_end", Dim::Time)? {
        if v < 0.0 {
            return Err(err(None, "t_end", "must be non-negative"));
        }
        s.t_end = v;
    }
    if let Some(v) = doc.quantity(S, "sample_dt", Dim::Time)? {
        if v <= 0.0 {
            return Err(err(None, "sample_dt", "must be positive"));
        }
        s.sample_dt = v;
    }
    if let Some(v) = doc.quantity(S, "tol", Dim::Number)? {
        if !(1e-12..=1e-3).contains(&v) {
            return Err(err(None, "tol", "must lie in [1e-12, 1e-3]"));
        }
        s.tol = v;
    }
    if let Some(v) = doc.integer(S, "seed")? {
        s.seed = v;
    }
    if let Some(v) = doc.boolean(S, "quiet_start")? {
        s.quiet_start = v;
    }
    if let Some((v, line)) = doc.take(S, "cavity_detuning") {
        s.cavity_detuning = if v == "auto" {
            None
        } else {
            Some(
                parse_quantity(&v, Dim::Frequency)
                    .map_err(|m| err(Some(line), "cavity_detuning", m))?,
            )
        };
    }
    Ok(s)
}

fn parse_pump(doc: &mut Document) -> Result<PumpSettings, ConfigError> {
    const S: &str = "pump";
    let profile = doc.take(S, "profile");
    let tau_bw = doc.quantity(S, "tau_bw", Dim::Time)?;
    let file = doc.take(S, "file");
    match profile.as_ref().map(|(v, l)| (v.as_str(), *l)) {
        None | Some(("ramp", _)) => {
            if let Some((_, line)) = file {
                return Err(err(Some(line), "file", "only valid with profile = recorded"));
            }
            let tau_bw = tau_bw.unwrap_or(20e-6);
            if tau_bw < 0.0 {
                return Err(err(None, "tau_bw", "must be non-negative"));
            }
            Ok(PumpSettings::Ramp { tau_bw })
        }
        Some(("recorded", _)) => {
            if tau_bw.is_some() {
                return Err(err(None, "tau_bw", "only valid with profile = ramp"));
            }
            let (file, _) =
                file.ok_or_else(|| err(None, "file", "recorded profile needs a file"))?;
            Ok(PumpSettings::Recorded { file: file.into() })
        }
        Some((other, line)) => Err(err(
            Some(line),
            "profile",
            format!("expected ramp or recorded, got '{other}'"),
        )),
    }
}

fn parse_output(doc: &mut Document) -> OutputSettings {
    let mut o = OutputSettings::default();
    if let Some((v, _)) = doc.take("output", "trajectory") {
        o.trajectory = v.into();
    }
    if let Some((v, _)) = doc.take("output", "metrics") {
        o.metrics = v.into();
    }
    if let Some((v, _)) = doc.take("output", "sweep") {
        o.sweep = v.into();
    }
    o
}

fn parse_sweep(doc: &mut Document, base: RunConfig) -> Result<SweepConfig, ConfigError> {
    const S: &str = "sweep";
    let (name, line) = doc
        .take(S, "parameter")
        .ok_or_else(|| err(None, "parameter", "missing required key in [sweep]"))?;
    let parameter: SweepParameter = name.parse().map_err(|m| err(Some(line), "parameter", m))?;
    let dim = parameter.dim();

    let values = if let Some((list, line)) = doc.take(S, "values") {
        for k in ["from", "to", "points", "spacing"] {
            if let Some((_, l)) = doc.take(S, k) {
                return Err(err(Some(l), k, "cannot be combined with 'values'"));
            }
        }
        split_list(&list)
            .map(|v| parse_quantity(v, dim).map_err(|m| err(Some(line), "values", m)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let from = doc
            .quantity(S, "from", dim)?
            .ok_or_else(|| err(None, "values", "give 'values' or 'from'/'to'/'points'"))?;
        let to = doc.required(S, "to", dim)?;
        let points = doc
            .integer(S, "points")?
            .ok_or_else(|| err(None, "points", "missing required key in [sweep]"))?
            as usize;
        let spacing = doc.take(S, "spacing");
        let log = match spacing.as_ref().map(|(v, l)| (v.as_str(), *l)) {
            None | Some(("log", _)) => true,
            Some(("linear", _)) => false,
            Some((other, l)) => {
                return Err(err(Some(l), "spacing", format!("expected log or linear, got '{other}'")))
            }
        };
        if points < 2 {
            return Err(err(None, "points", "need at least 2 points for a range"));
        }
        if log && (from <= 0.0 || to <= 0.0) {
            return Err(err(None, "from", "log spacing needs positive bounds"));
        }
        (0..points)
            .map(|i| {
                let f = i as f64 / (points - 1) as f64;
                if log {
                    (from.ln() + f * (to.ln() - from.ln())).exp()
                } else {
                    from + f * (to - from)
                }
            })
            .collect()
    };
    if values.is_empty() {
        return Err(err(None, "values", "sweep value list is empty"));
    }
    if values.iter().any(|v| *v < 0.0) {
        return Err(err(None, "values", "sweep values must be non-negative"));
    }

    let seeds = match doc.take(S, "seeds") {
        None => None,
        Some((list, line)) => Some(
            split_list(&list)
                .map(|s| parse_integer(s).map_err(|m| err(Some(line), "seeds", m)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let replicates = doc.integer(S, "replicates")?.map(|r| r as usize);
    let replicates = match (&seeds, replicates) {
        (Some(s), Some(r)) if s.len() != r => {
            return Err(err(None, "replicates", format!("{r} replicates but {} seeds", s.len())))
        }
        (Some(s), _) if s.is_empty() => return Err(err(None, "seeds", "seed list is empty")),
        (Some(s), _) => s.len(),
        (None, Some(0)) => return Err(err(None, "replicates", "must be at least 1")),
        (None, Some(r)) => r,
        (None, None) => 3,
    };
    Ok(SweepConfig { base, parameter, values, seeds, replicates })
}

/// Parses a run or sweep configuration; a `[sweep]` section makes it a sweep.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut doc = Document::parse(text)?;
    if !doc.sections.contains_key("physical") {
        return Err(err(None, "physical", "missing [physical] section"));
    }
    let base = RunConfig {
        physical: parse_physical(&mut doc)?,
        simulation: parse_simulation(&mut doc)?,
        pump: parse_pump(&mut doc)?,
        output: parse_output(&mut doc),
    };
    let config = if doc.sections.contains_key("sweep") {
        Config::Sweep(parse_sweep(&mut doc, base)?)
    } else {
        Config::Run(base)
    };
    for table in doc.sections.values() {
        if let Some((key, entry)) = table.iter().find(|(_, e)| !e.used) {
            return Err(err(Some(entry.line), key, "key not valid in this context"));
        }
    }
    Ok(config)
}

/// Parses a configuration that must describe a single run.
pub fn parse_run_config(text: &str) -> Result<RunConfig, ConfigError> {
    match parse_config(text)? {
        Config::Run(c) => Ok(c),
        Config::Sweep(_) => Err(err(None, "sweep", "expected a run configuration")),
    }
}

/// Parses a configuration that must describe a sweep.
pub fn parse_sweep_config(text: &str) -> Result<SweepConfig, ConfigError> {
    match parse_config(text)? {
        Config::Sweep(c) => Ok(c),
        Config::Run(_) => Err(err(None, "sweep", "missing [sweep] section")),
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn write_run(out: &mut String, c: &RunConfig) {
    let p = &c.physical;
    let _ = writeln!(out, "[physical]");
    let _ = writeln!(out, "wavelength = {}", num(p.wavelength));
    let _ = writeln!(out, "d1_wavelength = {}", num(p.d1_wavelength));
    let _ = writeln!(out, "linewidth = {}", num(p.linewidth));
    let _ = writeln!(out, "cavity_length = {}", num(p.cavity_length));
    let _ = writeln!(out, "waist = {}", num(p.waist));
    match p.loss {
        CavityLoss::Finesse(f) => writeln!(out, "finesse = {}", num(f)),
        CavityLoss::DecayTime(t) => writeln!(out, "decay_time = {}", num(t)),
    }
    .ok();
    let _ = writeln!(out, "atom_number = {}", num(p.atom_number));
    let _ = writeln!(out, "pump_power = {}", num(p.pump_power));
    let _ = writeln!(out, "temperature = {}", num(p.temperature));
    let _ = writeln!(out, "atom_mass = {}", num(p.atom_mass));
    match p.coupling {
        Coupling::Formula => writeln!(out, "coupling_g = formula"),
        Coupling::Override(g) => writeln!(out, "coupling_g = {}", num(g)),
    }
    .ok();
    let _ = writeln!(out, "backscatter_ratio = {}", num(p.backscatter_ratio));
    let _ = writeln!(out, "backscatter_phase = {}", num(p.backscatter_phase));

    let s = &c.simulation;
    let _ = writeln!(out, "\n[simulation]");
    let _ = writeln!(out, "n_sim = {}", s.n_sim);
    let _ = writeln!(out, "t_end = {}", num(s.t_end));
    let _ = writeln!(out, "sample_dt = {}", num(s.sample_dt));
    let _ = writeln!(out, "tol = {}", num(s.tol));
    let _ = writeln!(out, "seed = {}", s.seed);
    let _ = writeln!(out, "quiet_start = {}", s.quiet_start);
    match s.cavity_detuning {
        None => writeln!(out, "cavity_detuning = auto"),
        Some(d) => writeln!(out, "cavity_detuning = {}", num(d)),
    }
    .ok();

    let _ = writeln!(out, "\n[pump]");
    match &c.pump {
        PumpSettings::Ramp { tau_bw } => {
            let _ = writeln!(out, "profile = ramp\ntau_bw = {}", num(*tau_bw));
        }
        PumpSettings::Recorded { file } => {
            let _ = writeln!(out, "profile = recorded\nfile = {}", file.display());
        }
    }

    let o = &c.output;
    let _ = writeln!(out, "\n[output]");
    let _ = writeln!(out, "trajectory = {}", o.trajectory.display());
    let _ = writeln!(out, "metrics = {}", o.metrics.display());
    let _ = writeln!(out, "sweep = {}", o.sweep.display());
}

/// Canonical text form with every field explicit and values in SI.
pub fn serialize_config(config: &Config) -> String {
    let mut out = String::new();
    match config {
        Config::Run(c) => write_run(&mut out, c),
        Config::Sweep(s) => {
            write_run(&mut out, &s.base);
            let _ = writeln!(out, "\n[sweep]");
            let _ = writeln!(out, "parameter = {}", s.parameter.key());
            let values: Vec<String> = s.values.iter().map(|v| num(*v)).collect();
            let _ = writeln!(out, "values = {}", values.join(", "));
            let _ = writeln!(out, "replicates = {}", s.replicates);
            if let Some(seeds) = &s.seeds {
                let seeds: Vec<String> = seeds.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "seeds = {}", seeds.join(", "));
            }
        }
    }
    out
}
