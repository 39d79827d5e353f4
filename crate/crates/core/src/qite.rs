// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Imaginary-time evolution by sequentially fitted unitaries.
//!
//! For each term `h` the normalized step `e^{−Δβ h}|ψ⟩/√c` is matched, to first
//! order in Δβ, by `exp(−iΔβ Σ a_I σ_I)|ψ⟩` with σ_I ranging over Pauli strings
//! on a domain around the term. The coefficients solve `(S + δ) a = b`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::backend::{estimate_terms, Cached, Estimator, ExactEstimator, ShotEstimator, Statevector};
use crate::hamiltonian::{HeisenbergHamiltonian, PauliTerm};
use crate::ir::{Gate, Program};
use crate::pauli::{Axis, PauliString};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QiteError {
    #[error("linear system for term {term} could not be solved")]
    SingularSystem { term: String },
    #[error("imaginary-time evolution needs a time-independent Hamiltonian")]
    TimeDependent,
}

/// Order in which a step visits the Hamiltonian terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Every term once with the full Δβ, axis-major order.
    Forward,
    /// Every term with Δβ/2 in axis-major order, then again in reverse.
    Symmetric,
}

/// Where expectation values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectationMode {
    Exact,
    Shots { shots: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QiteParams {
    pub dbeta: f64,
    pub num_steps: usize,
    pub domain_radius: usize,
    pub regularization: f64,
    pub expectation: ExpectationMode,
    pub sweep: Sweep,
}

impl QiteParams {
    pub fn new(dbeta: f64, num_steps: usize) -> Self {
        QiteParams {
            dbeta,
            num_steps,
            domain_radius: 1,
            regularization: 1e-6,
            expectation: ExpectationMode::Exact,
            sweep: Sweep::Symmetric,
        }
    }
}

/// Result of fitting one term.
#[derive(Debug, Clone, PartialEq)]
pub struct TermFit {
    pub basis: Vec<PauliString>,
    pub coefficients: Vec<f64>,
    /// Norm of the mismatch between the fitted and the target state derivative.
    pub residual: f64,
    /// `c = ⟨ψ|(1 − Δβ h)²|ψ⟩`.
    pub normalization: f64,
    pub circuit: Program,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QiteStepReport {
    /// 1-based.
    pub step: usize,
    pub beta: f64,
    pub energy: f64,
    pub fits: Vec<TermFit>,
    /// Gates appended during this step.
    pub circuit: Program,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QiteRun {
    pub initial_energy: f64,
    pub reports: Vec<QiteStepReport>,
    pub final_state: Statevector,
}

impl QiteRun {
    /// Every fitted gate in order.
    pub fn program(&self) -> Program {
        let n = self.final_state.num_qubits();
        let mut p = Program::new(n);
        for r in &self.reports {
            p.append(&r.circuit);
        }
        p
    }

    pub fn energies(&self) -> Vec<f64> {
        std::iter::once(self.initial_energy)
            .chain(self.reports.iter().map(|r| r.energy))
            .collect()
    }
}

/// Qubits of the term's support, widened by `radius` on both sides.
pub fn domain(term: &PauliTerm, n: usize, radius: usize) -> Vec<usize> {
    let lo = term.sites().min().expect("non-identity term") - 1;
    let hi = term.sites().max().expect("non-identity term") - 1;
    (lo.saturating_sub(radius)..=(hi + radius).min(n - 1)).collect()
}

/// Gates for `exp(−iθ/2 · P)`.
pub fn pauli_rotation(p: &PauliString, theta: f64) -> Vec<Gate> {
    let support: Vec<(usize, Axis)> = p
        .support()
        .map(|(q, op)| (q, op.axis().expect("support is non-identity")))
        .collect();
    match support.as_slice() {
        [] => Vec::new(),
        &[(q, axis)] => vec![Gate::Rotation { axis, qubit: q, angle: theta }],
        &[(a, x), (b, y)] if x == y => vec![Gate::Coupling { axis: x, qubits: (a, b), angle: theta }],
        _ => {
            let mut into = Vec::new();
            let mut out = Vec::new();
            for &(q, axis) in &support {
                match axis {
                    Axis::X => {
                        into.push(Gate::H(q));
                        out.push(Gate::H(q));
                    }
                    Axis::Y => {
                        into.push(Gate::rx(q, FRAC_PI_2));
                        out.push(Gate::rx(q, -FRAC_PI_2));
                    }
                    Axis::Z => {}
                }
            }
            let ladder: Vec<Gate> = support.windows(2).map(|w| Gate::cnot(w[0].0, w[1].0)).collect();
            let last = support.last().expect("non-empty").0;
            let mut gates = into;
            gates.extend(ladder.iter().cloned());
            gates.push(Gate::rz(last, theta));
            gates.extend(ladder.into_iter().rev());
            gates.extend(out);
            gates
        }
    }
}

fn solve(s: &DMatrix<f64>, b: &DVector<f64>, delta: f64) -> Option<DVector<f64>> {
    let a = s + DMatrix::identity(s.nrows(), s.ncols()) * delta;
    let x = match a.clone().cholesky() {
        Some(ch) => ch.solve(b),
        None => a.svd(true, true).pseudo_inverse(1e-12).ok()? * b,
    };
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Fit one term's step and build its sub-circuit. `state` is not modified.
pub fn fit_step_unitary(
    state: &Statevector,
    term: &PauliTerm,
    params: &QiteParams,
    est: &mut dyn Estimator,
) -> Result<TermFit, QiteError> {
    let n = state.num_qubits();
    let db = params.dbeta;
    let basis = PauliString::basis_on(n, &domain(term, n, params.domain_radius));
    let hs = term.pauli_string(n);
    let w = term.coefficient;
    let mut ev = Cached::new(est);

    // h is a single weighted Pauli string, so h² = w².
    let mean_h = w * ev.get(state, &hs);
    let mean_h2 = w * w;
    let c = 1.0 - 2.0 * db * mean_h + db * db * mean_h2;
    let singular = || QiteError::SingularSystem {
        term: format!("{w} * {hs}"),
    };
    if c <= 1e-300 || !c.is_finite() {
        return Err(singular());
    }
    let sc = c.sqrt();

    let m = basis.len();
    let mut s = DMatrix::<f64>::zeros(m, m);
    let mut b = DVector::<f64>::zeros(m);
    for i in 0..m {
        for j in i..m {
            let (phase, k) = basis[i].mul(&basis[j]);
            // ⟨σ_K⟩ is real, so only a real phase survives.
            let v = if phase.im == 0.0 { phase.re * ev.get(state, &k) } else { 0.0 };
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
        let (phase, k) = basis[i].mul(&hs);
        b[i] = if phase.re == 0.0 { w * phase.im * ev.get(state, &k) / sc } else { 0.0 };
    }

    let a = solve(&s, &b, params.regularization).ok_or_else(singular)?;
    let alpha = (1.0 / sc - 1.0) / db;
    let target = alpha * alpha - 2.0 * alpha * mean_h / sc + mean_h2 / c;
    let residual = (target + a.dot(&(&s * &a)) - 2.0 * a.dot(&b)).max(0.0).sqrt();

    let mut circuit = Program::new(n);
    for (p, &ai) in basis.iter().zip(a.iter()) {
        let theta = 2.0 * db * ai;
        if theta.abs() > 1e-12 {
            for g in pauli_rotation(p, theta) {
                circuit.push(g);
            }
        }
    }
    Ok(TermFit {
        basis,
        coefficients: a.iter().copied().collect(),
        residual,
        normalization: c,
        circuit,
    })
}

/// Run `params.num_steps` steps from `initial`, fitting every term of `h` in order.
pub fn run_qite(h: &HeisenbergHamiltonian, params: &QiteParams, initial: &Statevector) -> Result<QiteRun, QiteError> {
    if h.is_time_dependent() {
        return Err(QiteError::TimeDependent);
    }
    let terms = h.snapshot(0.0);
    let mut exact = ExactEstimator;
    let mut shots;
    let est: &mut dyn Estimator = match params.expectation {
        ExpectationMode::Exact => &mut exact,
        ExpectationMode::Shots { shots: count, seed } => {
            shots = ShotEstimator::new(count, seed);
            &mut shots
        }
    };

    let active: Vec<&PauliTerm> = terms.iter().filter(|t| !t.factors.is_empty()).collect();
    let (order, sub) = match params.sweep {
        Sweep::Forward => (active.clone(), *params),
        Sweep::Symmetric => {
            let mut order = active.clone();
            order.extend(active.iter().rev());
            (order, QiteParams { dbeta: params.dbeta / 2.0, ..*params })
        }
    };

    let mut state = initial.clone();
    let initial_energy = estimate_terms(est, &state, &terms);
    let mut reports = Vec::with_capacity(params.num_steps);
    for step in 1..=params.num_steps {
        let mut fits = Vec::with_capacity(terms.len());
        let mut circuit = Program::new(state.num_qubits());
        for term in &order {
            let fit = fit_step_unitary(&state, term, &sub, est)?;
            state.apply_program(&fit.circuit);
            circuit.append(&fit.circuit);
            fits.push(fit);
        }
        reports.push(QiteStepReport {
            step,
            beta: step as f64 * params.dbeta,
            energy: estimate_terms(est, &state, &terms),
            fits,
            circuit,
        });
    }
    Ok(QiteRun {
        initial_energy,
        reports,
        final_state: state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Spin;
    use crate::pauli::Pauli;
    use crate::ir::{phase_aligned_distance, unitary_of};
    use crate::oracle::{evolve_imaginary_exact, ground_energy, Spectrum};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn plus() -> Statevector {
        Statevector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2])
    }

    fn z1() -> HeisenbergHamiltonian {
        HeisenbergHamiltonian::new(1).with_uniform_field(Axis::Z, 1.0)
    }

    fn tfim(n: usize) -> HeisenbergHamiltonian {
        HeisenbergHamiltonian::new(n)
            .with_uniform_bond(Axis::Z, 1.0)
            .with_uniform_field(Axis::X, 1.0)
    }

    fn random_state(n: usize, seed: u64) -> Statevector {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Statevector::from_amplitudes(
            (0..1usize << n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn pauli_rotation_matches_exponential() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for _ in 0..40 {
            let p = PauliString::from_ops((0..3).map(|_| ops[rng.gen_range(0..4)]).collect());
            if p.is_identity() {
                continue;
            }
            let theta = rng.gen_range(-3.0..3.0);
            let u = unitary_of(&Program::from_gates(3, pauli_rotation(&p, theta)).unwrap()).unwrap();
            let term = PauliTerm {
                coefficient: 1.0,
                factors: p.support().map(|(q, op)| (q + 1, op.axis().unwrap())).collect(),
            };
            let eig = Spectrum::of(&[term], 3).unwrap();
            let exact = nalgebra::DMatrix::from_fn(8, 8, |r, c| {
                eig.apply_fn(Statevector::basis(3, c).amplitudes(), |l| Complex64::from_polar(1.0, -theta / 2.0 * l))[r]
            });
            assert!(phase_aligned_distance(&u, &exact) < 1e-10, "{p}");
        }
    }

    #[test]
    fn calibration_one_qubit() {
        let params = QiteParams::new(0.1, 1);
        let run = run_qite(&z1(), &params, &plus()).unwrap();
        let (_, exact) = evolve_imaginary_exact(&z1().snapshot(0.0), 0.1, &plus()).unwrap();
        assert!((exact + (0.2f64).tanh()).abs() < 1e-12);
        assert!((run.reports[0].energy - exact).abs() < 5e-3, "{} vs {exact}", run.reports[0].energy);
        assert!(run.reports[0].energy < run.initial_energy);
    }

    #[test]
    fn eigenstate_is_stationary() {
        let h = z1();
        let fit = fit_step_unitary(&Statevector::zero(1), &h.snapshot(0.0)[0], &QiteParams::new(0.1, 1), &mut ExactEstimator).unwrap();
        assert!(fit.coefficients.iter().all(|a| a.abs() < 1e-12));
        assert!(fit.circuit.is_empty());
        let run = run_qite(&h, &QiteParams::new(0.1, 5), &Statevector::zero(1)).unwrap();
        assert!(run.energies().iter().all(|&e| (e - 1.0).abs() < 1e-12));
    }

    #[test]
    fn tfim_converges_from_product_states() {
        let h = tfim(3);
        let e0 = ground_energy(&h.snapshot(0.0), 3).unwrap();
        let params = QiteParams::new(0.3, 8);
        for spins in [[Spin::Up; 3], [Spin::Down, Spin::Up, Spin::Up], [Spin::Up, Spin::Down, Spin::Up]] {
            let run = run_qite(&h, &params, &Statevector::product(&spins)).unwrap();
            let e = run.reports.last().unwrap().energy;
            assert!(((e - e0) / e0).abs() < 0.02, "{spins:?}: {e} vs {e0}");
            for r in &run.reports {
                assert!(r.energy >= e0 - 1e-9);
                assert!(r.fits.iter().all(|f| f.residual >= 0.0));
            }
            assert!((run.final_state.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn smaller_steps_reduce_error() {
        let h = tfim(3);
        let init = Statevector::product(&[Spin::Up; 3]);
        let beta = 1.2;
        let err = |steps: usize| {
            let run = run_qite(&h, &QiteParams::new(beta / steps as f64, steps), &init).unwrap();
            let (_, exact) = evolve_imaginary_exact(&h.snapshot(0.0), beta, &init).unwrap();
            (run.reports.last().unwrap().energy - exact).abs()
        };
        assert!(err(8) < err(4), "{} {}", err(4), err(8));
    }

    #[test]
    fn program_replays_final_state() {
        let h = tfim(3);
        let init = Statevector::product(&[Spin::Down, Spin::Up, Spin::Down]);
        let run = run_qite(&h, &QiteParams::new(0.2, 3), &init).unwrap();
        let mut s = init.clone();
        s.apply_program(&run.program());
        assert!((s.inner(&run.final_state).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn shot_mode_is_seeded() {
        let h = tfim(2);
        let mut params = QiteParams::new(0.3, 3);
        params.expectation = ExpectationMode::Shots { shots: 2000, seed: 5 };
        let init = Statevector::product(&[Spin::Up; 2]);
        let a = run_qite(&h, &params, &init).unwrap();
        let b = run_qite(&h, &params, &init).unwrap();
        assert_eq!(a.energies(), b.energies());
    }

    #[test]
    fn rejects_time_dependent() {
        let mut h = z1();
        h.set_field(Axis::X, 1, crate::hamiltonian::Coefficient::Ramp { from: 0.0, to: 1.0, duration: 1.0 });
        assert_eq!(run_qite(&h, &QiteParams::new(0.1, 1), &plus()).unwrap_err(), QiteError::TimeDependent);
    }

    #[test]
    fn domain_widening() {
        let t = PauliTerm::bond(1.0, 2, Axis::Z);
        assert_eq!(domain(&t, 5, 0), vec![1, 2]);
        assert_eq!(domain(&t, 5, 1), vec![0, 1, 2, 3]);
        assert_eq!(domain(&t, 5, 4), vec![0, 1, 2, 3, 4]);
        assert_eq!(PauliString::basis_on(5, &domain(&t, 5, 0)).len(), 15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn s_matrix_symmetric_psd(seed in any::<u64>(), site in 1usize..3) {
            let state = random_state(3, seed);
            let term = PauliTerm::bond(0.7, site, Axis::X);
            let basis = PauliString::basis_on(3, &domain(&term, 3, 0));
            let m = basis.len();
            let s = DMatrix::<f64>::from_fn(m, m, |i, j| {
                let (ph, k) = basis[i].mul(&basis[j]);
                (ph * state.pauli_expectation(&k)).re
            });
            prop_assert!((&s - s.transpose()).amax() < 1e-12);
            let min = s.symmetric_eigen().eigenvalues.min();
            prop_assert!(min > -1e-10, "{}", min);
            let fit = fit_step_unitary(&state, &term, &QiteParams::new(0.2, 1), &mut ExactEstimator).unwrap();
            let mut after = state.clone();
            after.apply_program(&fit.circuit);
            prop_assert!((after.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
}
