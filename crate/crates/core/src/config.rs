// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Input-file parsing and validation.
//!
//! The input is a sequence of `key: value` lines. Blank lines and lines whose
//! first non-blank character is `#` are ignored; CRLF line endings are accepted.
//! Keys are case-insensitive. See the README for the full key reference.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hamiltonian::{Coefficient, HeisenbergHamiltonian};
use crate::optimizer;
use crate::pauli::Axis;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key: value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{name}`")]
    UnknownKey { name: String, line: usize },
    #[error("line {line}: key `{name}` given more than once")]
    DuplicateKey { name: String, line: usize },
    #[error("missing required key `{name}`")]
    MissingRequiredKey { name: String },
    #[error("{}value `{value}` invalid for `{key}`: {reason}", line_prefix(*.line))]
    ValueOutOfRange {
        key: String,
        value: String,
        reason: String,
        line: Option<usize>,
    },
    #[error("{}conflicting keys: {message}", line_prefix(*.line))]
    ConflictingKeys { message: String, line: Option<usize> },
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl ConfigError {
    /// 1-based input line the error refers to, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            ConfigError::Syntax { line, .. }
            | ConfigError::UnknownKey { line, .. }
            | ConfigError::DuplicateKey { line, .. } => Some(*line),
            ConfigError::MissingRequiredKey { .. } => None,
            ConfigError::ValueOutOfRange { line, .. } | ConfigError::ConflictingKeys { line, .. } => {
                *line
            }
        }
    }
}

/// How one family of coefficients (say all `J^x_i`) varies over sites and time.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSchedule {
    /// One value broadcast to every index, or one value per index.
    Constant(Vec<f64>),
    /// `from` at t = 0 to `to` at t = total_time.
    LinearRamp { from: f64, to: f64 },
    GaussianPulse { amplitude: f64, center: f64, width: f64 },
    /// One draw per index from U[lo, hi], fixed when the Hamiltonian is built.
    RandomUniform { lo: f64, hi: f64, seed: Option<u64> },
}

impl Default for CoefficientSchedule {
    fn default() -> Self {
        CoefficientSchedule::Constant(vec![0.0])
    }
}

impl CoefficientSchedule {
    pub fn uniform(v: f64) -> Self {
        CoefficientSchedule::Constant(vec![v])
    }

    /// Expand into one coefficient per index.
    pub fn resolve(&self, count: usize, duration: f64, fallback_seed: u64) -> Vec<Coefficient> {
        match self {
            CoefficientSchedule::Constant(vs) if vs.len() == 1 => {
                vec![Coefficient::Constant(vs[0]); count]
            }
            CoefficientSchedule::Constant(vs) => {
                assert_eq!(vs.len(), count, "per-index list length");
                vs.iter().map(|&v| Coefficient::Constant(v)).collect()
            }
            &CoefficientSchedule::LinearRamp { from, to } => {
                vec![Coefficient::Ramp { from, to, duration }; count]
            }
            &CoefficientSchedule::GaussianPulse {
                amplitude,
                center,
                width,
            } => vec![
                Coefficient::Pulse {
                    amplitude,
                    center,
                    width
                };
                count
            ],
            &CoefficientSchedule::RandomUniform { lo, hi, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(fallback_seed));
                (0..count)
                    .map(|_| Coefficient::Constant(rng.gen_range(lo..=hi)))
                    .collect()
            }
        }
    }

    fn parse(key: &str, raw: &str, line: Option<usize>) -> Result<Self, ConfigError> {
        let err = |reason: &str| bad_value(key, raw, reason, line);
        let raw = raw.trim();
        if let Some((name, args)) = call_syntax(raw) {
            let nums: Vec<f64> = args
                .iter()
                .map(|a| parse_f64(key, a, line))
                .collect::<Result<_, _>>()?;
            return match (name, nums.as_slice()) {
                ("ramp", &[from, to]) => Ok(CoefficientSchedule::LinearRamp { from, to }),
                ("pulse", &[amplitude, center, width]) => Ok(CoefficientSchedule::GaussianPulse {
                    amplitude,
                    center,
                    width,
                }),
                ("random", &[lo, hi]) => Ok(CoefficientSchedule::RandomUniform { lo, hi, seed: None }),
                ("random", &[lo, hi, _]) => {
                    let seed = args[2]
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| err("seed must be a nonnegative integer"))?;
                    Ok(CoefficientSchedule::RandomUniform {
                        lo,
                        hi,
                        seed: Some(seed),
                    })
                }
                ("ramp" | "pulse" | "random", _) => Err(err("wrong number of arguments")),
                _ => Err(err("expected a number, a list, ramp(..), pulse(..) or random(..)")),
            };
        }
        let values = raw
            .split(',')
            .map(|v| parse_f64(key, v, line))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoefficientSchedule::Constant(values))
    }

    fn render(&self) -> String {
        match self {
            CoefficientSchedule::Constant(vs) => join_f64(vs),
            CoefficientSchedule::LinearRamp { from, to } => format!("ramp({from}, {to})"),
            CoefficientSchedule::GaussianPulse {
                amplitude,
                center,
                width,
            } => format!("pulse({amplitude}, {center}, {width})"),
            CoefficientSchedule::RandomUniform { lo, hi, seed: None } => format!("random({lo}, {hi})"),
            CoefficientSchedule::RandomUniform {
                lo,
                hi,
                seed: Some(s),
            } => format!("random({lo}, {hi}, {s})"),
        }
    }

    fn validate(&self, key: &str, count: usize, line: Option<usize>) -> Result<(), ConfigError> {
        let err = |reason: &str| bad_value(key, &self.render(), reason, line);
        let finite = |vs: &[f64]| vs.iter().all(|v| v.is_finite());
        match self {
            CoefficientSchedule::Constant(vs) => {
                if vs.is_empty() || !finite(vs) {
                    return Err(err("values must be finite numbers"));
                }
                if vs.len() != 1 && vs.len() != count {
                    return Err(ConfigError::ConflictingKeys {
                        message: format!(
                            "`{key}` lists {} values but the chain has {count} {}",
                            vs.len(),
                            if key.starts_with("coupling") { "bonds" } else { "sites" }
                        ),
                        line,
                    });
                }
            }
            CoefficientSchedule::LinearRamp { from, to } => {
                if !finite(&[*from, *to]) {
                    return Err(err("values must be finite numbers"));
                }
            }
            CoefficientSchedule::GaussianPulse {
                amplitude,
                center,
                width,
            } => {
                if !finite(&[*amplitude, *center, *width]) || *width <= 0.0 {
                    return Err(err("pulse width must be positive and all values finite"));
                }
            }
            CoefficientSchedule::RandomUniform { lo, hi, .. } => {
                if !finite(&[*lo, *hi]) || lo > hi {
                    return Err(err("need finite lo <= hi"));
                }
            }
        }
        Ok(())
    }

    pub fn is_time_dependent(&self) -> bool {
        match self {
            CoefficientSchedule::LinearRamp { from, to } => from != to,
            CoefficientSchedule::GaussianPulse { amplitude, .. } => *amplitude != 0.0,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum InitialState {
    #[default]
    AllUp,
    /// First spin down, the rest up.
    FlipFirst,
    Spins(Vec<Spin>),
}

impl InitialState {
    /// Per-site spins for a chain of `n`.
    pub fn spins(&self, n: usize) -> Vec<Spin> {
        match self {
            InitialState::AllUp => vec![Spin::Up; n],
            InitialState::FlipFirst => (0..n)
                .map(|i| if i == 0 { Spin::Down } else { Spin::Up })
                .collect(),
            InitialState::Spins(s) => s.clone(),
        }
    }

    fn parse(raw: &str, line: Option<usize>) -> Result<Self, ConfigError> {
        match raw.trim() {
            "all-up" => Ok(InitialState::AllUp),
            "flip-first" => Ok(InitialState::FlipFirst),
            list => list
                .split(',')
                .map(|s| match s.trim() {
                    "up" => Ok(Spin::Up),
                    "down" => Ok(Spin::Down),
                    _ => Err(bad_value(
                        "initial_state",
                        raw,
                        "expected all-up, flip-first or a list of up/down",
                        line,
                    )),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(InitialState::Spins),
        }
    }

    fn render(&self) -> String {
        match self {
            InitialState::AllUp => "all-up".into(),
            InitialState::FlipFirst => "flip-first".into(),
            InitialState::Spins(s) => s
                .iter()
                .map(|s| match s {
                    Spin::Up => "up",
                    Spin::Down => "down",
                })
                .collect::<Vec<_>>()
                .join(", "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    RealTime,
    ImaginaryTime,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::RealTime => "real-time",
            Mode::ImaginaryTime => "imaginary-time",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BackendMode {
    /// Local noise-free statevector simulation.
    #[default]
    Qs,
    /// Generate and write circuits without executing them.
    ExportOnly,
}

impl BackendMode {
    pub fn name(self) -> &'static str {
        match self {
            BackendMode::Qs => "QS",
            BackendMode::ExportOnly => "export-only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableKind {
    ExcitationDisplacement,
    Energy,
    /// ⟨σ^axis⟩ at one site, or averaged over the chain when `site` is `None`.
    Magnetization { axis: Axis, site: Option<usize> },
}

impl Default for ObservableKind {
    fn default() -> Self {
        ObservableKind::Magnetization {
            axis: Axis::Z,
            site: None,
        }
    }
}

impl ObservableKind {
    pub fn name(&self) -> String {
        match self {
            ObservableKind::ExcitationDisplacement => "excitation-displacement".into(),
            ObservableKind::Energy => "energy".into(),
            ObservableKind::Magnetization { axis, site: None } => format!("magnetization({axis})"),
            ObservableKind::Magnetization {
                axis,
                site: Some(s),
            } => format!("magnetization({axis}, {s})"),
        }
    }

    fn parse(raw: &str, line: Option<usize>) -> Result<Self, ConfigError> {
        let err = || {
            bad_value(
                "observable",
                raw,
                "expected excitation-displacement, energy or magnetization(axis[, site])",
                line,
            )
        };
        match raw.trim() {
            "excitation-displacement" => Ok(ObservableKind::ExcitationDisplacement),
            "energy" => Ok(ObservableKind::Energy),
            other => {
                let (name, args) = call_syntax(other).ok_or_else(err)?;
                if name != "magnetization" {
                    return Err(err());
                }
                let axis = args.first().and_then(|a| Axis::parse(a)).ok_or_else(err)?;
                let site = match args.len() {
                    1 => None,
                    2 => Some(args[1].trim().parse::<usize>().map_err(|_| err())?),
                    _ => return Err(err()),
                };
                Ok(ObservableKind::Magnetization { axis, site })
            }
        }
    }
}

/// Everything an input file can specify, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub num_spins: usize,
    /// `J^α` schedules indexed by axis (x, y, z).
    pub couplings: [CoefficientSchedule; 3],
    /// `h^α` schedules indexed by axis (x, y, z).
    pub fields: [CoefficientSchedule; 3],
    pub initial_state: InitialState,
    pub mode: Mode,
    /// t_max in real-time mode, β_max in imaginary-time mode.
    pub total_time: f64,
    pub num_steps: usize,
    pub backend_mode: BackendMode,
    /// 0 means exact expectation values.
    pub shots: u64,
    pub observable: ObservableKind,
    /// Name of a registered optimizer (see [`optimizer::registry`]).
    pub optimizer_level: String,
    pub constant_depth: bool,
    pub rng_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    /// Extra sites on each side of a term's support in the imaginary-time fitting basis.
    pub domain_radius: usize,
    /// Diagonal shift added to the imaginary-time linear system.
    pub regularization: f64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            num_spins: 3,
            couplings: Default::default(),
            fields: Default::default(),
            initial_state: InitialState::AllUp,
            mode: Mode::RealTime,
            total_time: 1.0,
            num_steps: 10,
            backend_mode: BackendMode::Qs,
            shots: 0,
            observable: ObservableKind::default(),
            optimizer_level: "peephole".into(),
            constant_depth: false,
            rng_seed: None,
            output_dir: None,
            domain_radius: 1,
            regularization: 1e-6,
        }
    }
}

const REQUIRED: [&str; 3] = ["num_spins", "total_time", "num_steps"];

const KNOWN: [&str; 20] = [
    "num_spins",
    "mode",
    "total_time",
    "num_steps",
    "coupling_x",
    "coupling_y",
    "coupling_z",
    "field_x",
    "field_y",
    "field_z",
    "initial_state",
    "qcqs",
    "shots",
    "observable",
    "optimizer_level",
    "constant_depth",
    "rng_seed",
    "output_dir",
    "domain_radius",
    "regularization",
];

/// Accepted for documentation value; only `open` is allowed.
const BOUNDARY_KEY: &str = "boundary";

fn bad_value(key: &str, value: &str, reason: &str, line: Option<usize>) -> ConfigError {
    ConfigError::ValueOutOfRange {
        key: key.to_string(),
        value: value.trim().to_string(),
        reason: reason.to_string(),
        line,
    }
}

fn parse_f64(key: &str, raw: &str, line: Option<usize>) -> Result<f64, ConfigError> {
    let v = raw
        .trim()
        .parse::<f64>()
        .map_err(|_| bad_value(key, raw, "not a number", line))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad_value(key, raw, "must be finite", line))
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, raw: &str, line: Option<usize>) -> Result<T, ConfigError> {
    raw.trim()
        .parse::<T>()
        .map_err(|_| bad_value(key, raw, "expected a nonnegative integer", line))
}

fn parse_bool(key: &str, raw: &str, line: Option<usize>) -> Result<bool, ConfigError> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(bad_value(key, raw, "expected True or False", line)),
    }
}

/// Split `name(a, b, c)` into `("name", ["a", "b", "c"])`.
fn call_syntax(raw: &str) -> Option<(&str, Vec<&str>)> {
    let open = raw.find('(')?;
    let inner = raw[open + 1..].strip_suffix(')')?;
    Some((raw[..open].trim(), inner.split(',').collect()))
}

fn join_f64(vs: &[f64]) -> String {
    vs.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
}

/// Parse and validate an input file.
pub fn parse_input(text: &str) -> Result<SimulationConfig, ConfigError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw_line.trim_end_matches('\r').trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(ConfigError::Syntax {
                line,
                text: trimmed.to_string(),
            });
        };
        let key = key.trim().to_ascii_lowercase();
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                text: trimmed.to_string(),
            });
        }
        if !KNOWN.contains(&key.as_str()) && key != BOUNDARY_KEY {
            return Err(ConfigError::UnknownKey { name: key, line });
        }
        if entries.contains_key(&key) {
            return Err(ConfigError::DuplicateKey { name: key, line });
        }
        entries.insert(key, (line, value.trim().to_string()));
    }

    for name in REQUIRED {
        if !entries.contains_key(name) {
            return Err(ConfigError::MissingRequiredKey { name: name.into() });
        }
    }

    let get = |k: &str| entries.get(k).map(|(l, v)| (Some(*l), v.as_str()));
    let line_of = |k: &str| entries.get(k).map(|(l, _)| *l);

    if let Some((line, v)) = get(BOUNDARY_KEY) {
        if v != "open" {
            return Err(bad_value(BOUNDARY_KEY, v, "only open chains are supported", line));
        }
    }

    let mut cfg = SimulationConfig::default();
    if let Some((line, v)) = get("num_spins") {
        cfg.num_spins = parse_int("num_spins", v, line)?;
    }
    if let Some((line, v)) = get("mode") {
        cfg.mode = match v {
            "real-time" => Mode::RealTime,
            "imaginary-time" => Mode::ImaginaryTime,
            _ => return Err(bad_value("mode", v, "expected real-time or imaginary-time", line)),
        };
    }
    if let Some((line, v)) = get("total_time") {
        cfg.total_time = parse_f64("total_time", v, line)?;
    }
    if let Some((line, v)) = get("num_steps") {
        cfg.num_steps = parse_int("num_steps", v, line)?;
    }
    for axis in Axis::ALL {
        let ck = format!("coupling_{axis}");
        if let Some((line, v)) = get(&ck) {
            cfg.couplings[axis.index()] = CoefficientSchedule::parse(&ck, v, line)?;
        }
        let fk = format!("field_{axis}");
        if let Some((line, v)) = get(&fk) {
            cfg.fields[axis.index()] = CoefficientSchedule::parse(&fk, v, line)?;
        }
    }
    if let Some((line, v)) = get("initial_state") {
        cfg.initial_state = InitialState::parse(v, line)?;
    }
    if let Some((line, v)) = get("qcqs") {
        cfg.backend_mode = match v {
            "QS" | "qs" => BackendMode::Qs,
            "export-only" => BackendMode::ExportOnly,
            _ => {
                return Err(bad_value(
                    "QCQS",
                    v,
                    "expected QS (local simulator) or export-only; cloud hardware is not supported",
                    line,
                ))
            }
        };
    }
    if let Some((line, v)) = get("shots") {
        cfg.shots = parse_int("shots", v, line)?;
    }
    if let Some((line, v)) = get("observable") {
        cfg.observable = ObservableKind::parse(v, line)?;
    }
    if let Some((_, v)) = get("optimizer_level") {
        cfg.optimizer_level = v.to_string();
    }
    if let Some((line, v)) = get("constant_depth") {
        cfg.constant_depth = parse_bool("constant_depth", v, line)?;
    }
    if let Some((line, v)) = get("rng_seed") {
        cfg.rng_seed = Some(parse_int("rng_seed", v, line)?);
    }
    if let Some((_, v)) = get("output_dir") {
        cfg.output_dir = Some(PathBuf::from(v));
    }
    if let Some((line, v)) = get("domain_radius") {
        cfg.domain_radius = parse_int("domain_radius", v, line)?;
    }
    if let Some((line, v)) = get("regularization") {
        cfg.regularization = parse_f64("regularization", v, line)?;
    }

    cfg.check(&line_of)?;
    Ok(cfg)
}

impl SimulationConfig {
    /// Validate a programmatically built configuration.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.check(&|_| None)
    }

    fn check(&self, line_of: &dyn Fn(&str) -> Option<usize>) -> Result<(), ConfigError> {
        let n = self.num_spins;
        if n == 0 {
            return Err(bad_value("num_spins", "0", "need at least one spin", line_of("num_spins")));
        }
        if self.num_steps == 0 {
            return Err(bad_value("num_steps", "0", "need at least one step", line_of("num_steps")));
        }
        if !(self.total_time.is_finite() && self.total_time >= 0.0) {
            return Err(bad_value(
                "total_time",
                &self.total_time.to_string(),
                "must be finite and >= 0",
                line_of("total_time"),
            ));
        }
        for axis in Axis::ALL {
            let ck = format!("coupling_{axis}");
            self.couplings[axis.index()].validate(&ck, n - 1, line_of(&ck))?;
            let fk = format!("field_{axis}");
            self.fields[axis.index()].validate(&fk, n, line_of(&fk))?;
        }
        if let InitialState::Spins(s) = &self.initial_state {
            if s.len() != n {
                return Err(ConfigError::ConflictingKeys {
                    message: format!("`initial_state` lists {} spins but num_spins is {n}", s.len()),
                    line: line_of("initial_state"),
                });
            }
        }
        if let ObservableKind::Magnetization { site: Some(s), .. } = self.observable {
            if s == 0 || s > n {
                return Err(bad_value(
                    "observable",
                    &self.observable.name(),
                    "site must lie in [1, num_spins]",
                    line_of("observable"),
                ));
            }
        }
        if !optimizer::registry().contains(&self.optimizer_level) {
            return Err(bad_value(
                "optimizer_level",
                &self.optimizer_level,
                &format!("expected one of: {}", optimizer::registry().names().join(", ")),
                line_of("optimizer_level"),
            ));
        }
        if !(self.regularization.is_finite() && self.regularization >= 0.0) {
            return Err(bad_value(
                "regularization",
                &self.regularization.to_string(),
                "must be finite and >= 0",
                line_of("regularization"),
            ));
        }
        if self.mode == Mode::ImaginaryTime {
            let td = self
                .couplings
                .iter()
                .chain(self.fields.iter())
                .any(CoefficientSchedule::is_time_dependent);
            if td {
                return Err(ConfigError::ConflictingKeys {
                    message: "imaginary-time mode needs time-independent couplings and fields".into(),
                    line: line_of("mode"),
                });
            }
        }
        Ok(())
    }

    /// Step size Δt (or Δβ).
    pub fn step_size(&self) -> f64 {
        self.total_time / self.num_steps as f64
    }
}

/// Render a configuration as an input file that parses back to an equal value.
pub fn serialize(config: &SimulationConfig) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{k}: {v}");
    };
    kv("num_spins", &config.num_spins);
    kv("mode", &config.mode.name());
    kv("total_time", &config.total_time);
    kv("num_steps", &config.num_steps);
    for axis in Axis::ALL {
        kv(&format!("coupling_{axis}"), &config.couplings[axis.index()].render());
    }
    for axis in Axis::ALL {
        kv(&format!("field_{axis}"), &config.fields[axis.index()].render());
    }
    kv("initial_state", &config.initial_state.render());
    kv("QCQS", &config.backend_mode.name());
    kv("shots", &config.shots);
    kv("observable", &config.observable.name());
    kv("optimizer_level", &config.optimizer_level);
    kv("constant_depth", &if config.constant_depth { "True" } else { "False" });
    if let Some(seed) = config.rng_seed {
        kv("rng_seed", &seed);
    }
    if let Some(dir) = &config.output_dir {
        kv("output_dir", &dir.display());
    }
    kv("domain_radius", &config.domain_radius);
    kv("regularization", &config.regularization);
    out
}

/// Seed used by a `random(lo, hi)` schedule without its own seed.
fn channel_seed(base: u64, channel: u64) -> u64 {
    base ^ (channel + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Instantiate H(t); random draws are fixed here.
pub fn build_hamiltonian(config: &SimulationConfig) -> HeisenbergHamiltonian {
    let n = config.num_spins;
    let base = config.rng_seed.unwrap_or(0);
    let mut h = HeisenbergHamiltonian::new(n);
    for axis in Axis::ALL {
        let k = axis.index();
        let bonds = config.couplings[k].resolve(n - 1, config.total_time, channel_seed(base, k as u64));
        for (i, c) in bonds.into_iter().enumerate() {
            h.set_bond(axis, i + 1, c);
        }
        let fields = config.fields[k].resolve(n, config.total_time, channel_seed(base, 3 + k as u64));
        for (i, c) in fields.into_iter().enumerate() {
            h.set_field(axis, i + 1, c);
        }
    }
    h
}
