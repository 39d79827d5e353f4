// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Input file to output files: build programs, lower, optimize, execute, reduce.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::backend::{self, estimate_with_shots, Backend, Estimate, Statevector};
use crate::config::{self, BackendMode, Mode, ObservableKind, SimulationConfig};
use crate::error::{Error, Result};
use crate::hamiltonian::{HeisenbergHamiltonian, PauliTerm};
use crate::ir::{export_text, lower_to_native, Program};
use crate::observables::{
    self, observable_terms, ResultSeries, RunManifest, SeriesMetadata, SeriesPoint,
};
use crate::optimizer;
use crate::oracle;
use crate::qite::{run_qite, ExpectationMode, QiteParams};
use crate::registry::Registry;
use crate::trotter::{build_evolution_program, TrotterParams};

pub const SERIES_CSV: &str = "series.csv";
pub const SERIES_SVG: &str = "series.svg";
pub const MANIFEST: &str = "manifest.json";
pub const CIRCUIT_DIR: &str = "circuits";

/// One point of a run: where it sits on the axis and the program that produces it.
#[derive(Debug, Clone, PartialEq)]
pub struct Timestep {
    pub axis: f64,
    pub program: Program,
}

/// Produces the per-point programs and references for one evolution mode.
pub trait Evolution: Send + Sync {
    fn name(&self) -> &'static str;

    /// Axis label for the series (`t` or `beta`).
    fn axis_label(&self) -> &'static str;

    /// Program for every point `k = 0..=N`, each starting from `|0…0⟩`.
    fn programs(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian) -> Result<Vec<Timestep>>;

    /// Observable measured at axis value `x`.
    fn observable(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian, x: f64) -> Vec<PauliTerm>;

    /// Oracle values at each axis point.
    fn reference(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian, axis: &[f64]) -> Result<Vec<f64>>;

    fn ground_state_energy(&self, _h: &HeisenbergHamiltonian) -> Result<Option<f64>> {
        Ok(None)
    }

    fn observable_name(&self, config: &SimulationConfig) -> String {
        config.observable.name()
    }
}

/// Trotterized real-time evolution.
#[derive(Debug, Default, Clone, Copy)]
pub struct RealTime;

impl Evolution for RealTime {
    fn name(&self) -> &'static str {
        Mode::RealTime.name()
    }

    fn axis_label(&self) -> &'static str {
        "t"
    }

    fn programs(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian) -> Result<Vec<Timestep>> {
        let params = TrotterParams::new(config.total_time, config.num_steps);
        let spins = config.initial_state.spins(config.num_spins);
        Ok((0..=params.num_steps)
            .map(|k| Timestep {
                axis: params.time(k),
                program: build_evolution_program(h, &params, k, &spins),
            })
            .collect())
    }

    fn observable(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian, t: f64) -> Vec<PauliTerm> {
        observable_terms(&config.observable, h, t)
    }

    fn reference(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian, axis: &[f64]) -> Result<Vec<f64>> {
        let initial = Statevector::product(&config.initial_state.spins(config.num_spins));
        axis.par_iter()
            .enumerate()
            .map(|(k, &t)| {
                let s = oracle::evolve_exact(h, t, &initial, 10 * k.max(1))?;
                Ok(s.expectation(&self.observable(config, h, t)))
            })
            .collect()
    }
}

/// Imaginary-time evolution by fitted unitaries.
#[derive(Debug, Default, Clone, Copy)]
pub struct ImaginaryTime;

impl ImaginaryTime {
    pub fn params(config: &SimulationConfig) -> QiteParams {
        let mut p = QiteParams::new(config.step_size(), config.num_steps);
        p.domain_radius = config.domain_radius;
        p.regularization = config.regularization;
        if config.shots > 0 {
            p.expectation = ExpectationMode::Shots {
                shots: config.shots,
                seed: config.rng_seed.unwrap_or(0),
            };
        }
        p
    }
}

impl Evolution for ImaginaryTime {
    fn name(&self) -> &'static str {
        Mode::ImaginaryTime.name()
    }

    fn axis_label(&self) -> &'static str {
        "beta"
    }

    fn programs(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian) -> Result<Vec<Timestep>> {
        let spins = config.initial_state.spins(config.num_spins);
        let prep = crate::trotter::state_preparation(&spins);
        let run = run_qite(h, &Self::params(config), &Statevector::product(&spins))?;
        let mut out = vec![Timestep {
            axis: 0.0,
            program: prep.clone(),
        }];
        let mut p = prep;
        for r in &run.reports {
            p.append(&r.circuit);
            out.push(Timestep {
                axis: r.beta,
                program: p.clone(),
            });
        }
        Ok(out)
    }

    fn observable(&self, _config: &SimulationConfig, h: &HeisenbergHamiltonian, _beta: f64) -> Vec<PauliTerm> {
        h.snapshot(0.0)
    }

    fn reference(&self, config: &SimulationConfig, h: &HeisenbergHamiltonian, axis: &[f64]) -> Result<Vec<f64>> {
        let initial = Statevector::product(&config.initial_state.spins(config.num_spins));
        let terms = h.snapshot(0.0);
        axis.par_iter()
            .map(|&beta| Ok(oracle::evolve_imaginary_exact(&terms, beta, &initial)?.1))
            .collect()
    }

    fn ground_state_energy(&self, h: &HeisenbergHamiltonian) -> Result<Option<f64>> {
        Ok(Some(oracle::ground_energy(&h.snapshot(0.0), h.num_spins())?))
    }

    fn observable_name(&self, _config: &SimulationConfig) -> String {
        ObservableKind::Energy.name()
    }
}

/// Evolution drivers keyed by `mode` name.
pub fn registry() -> &'static Registry<dyn Evolution> {
    static REGISTRY: OnceLock<Registry<dyn Evolution>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<dyn Evolution> = Registry::new("evolution");
        r.register(Mode::RealTime.name(), || Box::new(RealTime));
        r.register(Mode::ImaginaryTime.name(), || Box::new(ImaginaryTime));
        r
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Write every executed program in the circuit text dialect.
    pub export: bool,
    /// Add the oracle series next to the measured one.
    pub ground_truth: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    /// Absent in export-only mode.
    pub series: Option<ResultSeries>,
    pub manifest: RunManifest,
    /// Every file written, relative to the output directory.
    pub files: Vec<PathBuf>,
}

/// Hex SHA-256 of the canonical serialization.
pub fn config_hash(config: &SimulationConfig) -> String {
    Sha256::digest(config::serialize(config).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Lowered and optimized form of `p`.
pub fn compile(p: &Program, optimizer_level: &str) -> Result<Program> {
    let opt = optimizer::registry()
        .get(optimizer_level)
        .ok_or_else(|| Error::Unsupported(format!("optimizer `{optimizer_level}`")))?;
    Ok(opt.optimize(&lower_to_native(p)))
}

fn measure(
    backend: &dyn Backend,
    program: &Program,
    obs: &[PauliTerm],
    shots: u64,
    seed: u64,
    k: usize,
) -> Result<Estimate> {
    let state = backend.run(program)?;
    if shots == 0 {
        return Ok(Estimate {
            value: state.expectation(obs),
            sigma: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    Ok(estimate_with_shots(&state, obs, shots, &mut rng))
}

fn write(dir: &Path, rel: &Path, text: &str) -> Result<()> {
    let path = dir.join(rel);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

/// Compute the series for `config` without touching the file system.
pub fn simulate(config: &SimulationConfig, ground_truth: bool) -> Result<(ResultSeries, Vec<Program>, Option<f64>)> {
    let (series, programs, e0) = prepare(config, ground_truth, true)?;
    Ok((series.expect("executed"), programs, e0))
}

fn prepare(
    config: &SimulationConfig,
    ground_truth: bool,
    execute: bool,
) -> Result<(Option<ResultSeries>, Vec<Program>, Option<f64>)> {
    config.validate()?;
    if config.constant_depth {
        return Err(Error::Unsupported(
            "constant_depth: True requests constant-depth circuit synthesis, which is not available; set it to False".into(),
        ));
    }
    let evolution = registry()
        .get(config.mode.name())
        .ok_or_else(|| Error::Unsupported(format!("mode `{}`", config.mode.name())))?;
    let h = config::build_hamiltonian(config);
    let steps = evolution.programs(config, &h)?;
    let programs = steps
        .par_iter()
        .map(|s| compile(&s.program, &config.optimizer_level))
        .collect::<Result<Vec<_>>>()?;
    let e0 = if ground_truth { evolution.ground_state_energy(&h)? } else { None };
    if !execute {
        return Ok((None, programs, e0));
    }

    let backend = backend::registry()
        .get(BackendMode::Qs.name())
        .ok_or_else(|| Error::Unsupported("statevector backend".into()))?;
    let seed = config.rng_seed.unwrap_or(0);
    let estimates = steps
        .par_iter()
        .zip(programs.par_iter())
        .enumerate()
        .map(|(k, (s, p))| measure(backend.as_ref(), p, &evolution.observable(config, &h, s.axis), config.shots, seed, k))
        .collect::<Result<Vec<_>>>()?;
    let axis: Vec<f64> = steps.iter().map(|s| s.axis).collect();
    let reference = if ground_truth {
        Some(evolution.reference(config, &h, &axis)?)
    } else {
        None
    };

    let mut series = ResultSeries::new(
        evolution.axis_label(),
        SeriesMetadata {
            observable: evolution.observable_name(config),
            config_hash: config_hash(config),
            seed: config.rng_seed,
        },
    );
    for (k, (x, est)) in axis.iter().zip(&estimates).enumerate() {
        series.push(SeriesPoint {
            axis: *x,
            value: est.value,
            sigma: (config.shots > 0).then_some(est.sigma),
            reference: reference.as_ref().map(|r| r[k]),
        });
    }
    Ok((Some(series), programs, e0))
}

/// Run `config` end to end and write the outputs under `opts.out_dir`.
pub fn run(config: &SimulationConfig, opts: &RunOptions) -> Result<RunArtifacts> {
    let export_only = config.backend_mode == BackendMode::ExportOnly;
    let (series, programs, e0) = prepare(config, opts.ground_truth, !export_only)?;
    let dir = &opts.out_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut files = Vec::new();
    if let Some(series) = &series {
        write(dir, Path::new(SERIES_CSV), &observables::render_csv(series))?;
        write(dir, Path::new(SERIES_SVG), &observables::render_svg(series))?;
        files.push(PathBuf::from(SERIES_CSV));
        files.push(PathBuf::from(SERIES_SVG));
    }
    if opts.export || export_only {
        for (k, p) in programs.iter().enumerate() {
            let mut p = p.clone();
            p.set_measured(true);
            let rel = Path::new(CIRCUIT_DIR).join(format!("step_{k:04}.qasm"));
            write(dir, &rel, &export_text(&p))?;
            files.push(rel);
        }
    }

    let evolution = registry().get(config.mode.name()).expect("validated above");
    let mut outputs: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    outputs.push(MANIFEST.into());
    let manifest = RunManifest {
        software: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        mode: config.mode.name().into(),
        observable: evolution.observable_name(config),
        config_hash: config_hash(config),
        rng_seed: config.rng_seed,
        shots: config.shots,
        optimizer: config.optimizer_level.clone(),
        num_points: programs.len(),
        ground_state_energy: e0,
        outputs,
        config: config::serialize(config),
    };
    observables::write_manifest(&manifest, &dir.join(MANIFEST))?;
    files.push(PathBuf::from(MANIFEST));
    Ok(RunArtifacts { series, manifest, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_input;

    const LOCALIZATION: &str = "num_spins: 4\ntotal_time: 1\nnum_steps: 8\ncoupling_x: 1\ncoupling_y: 1\ninitial_state: flip-first\nobservable: excitation-displacement\n";

    #[test]
    fn registry_covers_modes() {
        assert_eq!(registry().names(), vec!["imaginary-time", "real-time"]);
    }

    #[test]
    fn real_time_series_matches_oracle() {
        let cfg = parse_input(LOCALIZATION).unwrap();
        let (series, programs, _) = simulate(&cfg, true).unwrap();
        assert_eq!(series.points.len(), 9);
        assert_eq!(programs.len(), 9);
        assert_eq!(series.points[0].value, 0.0);
        for p in &series.points {
            assert!((p.value - p.reference.unwrap()).abs() < 0.05, "{p:?}");
        }
    }

    #[test]
    fn optimizer_does_not_change_values() {
        let mut cfg = parse_input(LOCALIZATION).unwrap();
        cfg.optimizer_level = "none".into();
        let (a, pa, _) = simulate(&cfg, false).unwrap();
        cfg.optimizer_level = "peephole".into();
        let (b, pb, _) = simulate(&cfg, false).unwrap();
        for (x, y) in a.points.iter().zip(&b.points) {
            assert!((x.value - y.value).abs() <= 1e-9);
        }
        assert!(pb.iter().zip(&pa).all(|(o, r)| o.len() <= r.len()));
        assert!(pb.last().unwrap().len() < pa.last().unwrap().len());
    }

    #[test]
    fn shots_attach_sigma_and_are_seeded() {
        let mut cfg = parse_input(LOCALIZATION).unwrap();
        cfg.shots = 500;
        cfg.rng_seed = Some(9);
        let (a, _, _) = simulate(&cfg, false).unwrap();
        let (b, _, _) = simulate(&cfg, false).unwrap();
        assert_eq!(a, b);
        assert!(a.points.iter().all(|p| p.sigma.is_some()));
    }

    #[test]
    fn constant_depth_is_unsupported() {
        let mut cfg = parse_input(LOCALIZATION).unwrap();
        cfg.constant_depth = true;
        assert!(matches!(simulate(&cfg, false), Err(Error::Unsupported(_))));
    }

    #[test]
    fn config_hash_is_stable_hex() {
        let cfg = parse_input(LOCALIZATION).unwrap();
        let h = config_hash(&cfg);
        assert_eq!(h.len(), 64);
        assert_eq!(h, config_hash(&parse_input(&config::serialize(&cfg)).unwrap()));
    }
}
