// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! First-order product-formula programs for real-time evolution.

use crate::config::Spin;
use crate::hamiltonian::HeisenbergHamiltonian;
use crate::ir::{Gate, Program};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrotterParams {
    pub total_time: f64,
    pub num_steps: usize,
}

impl TrotterParams {
    pub fn new(total_time: f64, num_steps: usize) -> Self {
        assert!(num_steps >= 1, "at least one step is required");
        assert!(total_time >= 0.0, "total time must be non-negative");
        TrotterParams { total_time, num_steps }
    }

    pub fn dt(&self) -> f64 {
        self.total_time / self.num_steps as f64
    }

    /// Time reached after `k` steps.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt()
    }
}

/// One step `Π exp(−i c Δt P)` over the snapshot of `h` at `t_eval`.
pub fn trotter_step(h: &HeisenbergHamiltonian, t_eval: f64, dt: f64) -> Program {
    let mut p = Program::new(h.num_spins());
    for term in h.snapshot(t_eval) {
        let angle = 2.0 * term.coefficient * dt;
        let gate = match *term.factors.as_slice() {
            [(s, axis)] => Gate::Rotation { axis, qubit: s - 1, angle },
            [(a, axis), (b, _)] => Gate::Coupling { axis, qubits: (a - 1, b - 1), angle },
            _ => unreachable!("Heisenberg terms act on one or two sites"),
        };
        p.push(gate);
    }
    p
}

/// X on every spin that starts down.
pub fn state_preparation(spins: &[Spin]) -> Program {
    Program::from_gates(
        spins.len(),
        spins
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Spin::Down)
            .map(|(q, _)| Gate::X(q)),
    )
    .expect("qubits in range")
}

/// State preparation followed by `k` steps; step `j` samples H at `(j − ½)Δt`.
pub fn build_evolution_program(h: &HeisenbergHamiltonian, params: &TrotterParams, k: usize, initial: &[Spin]) -> Program {
    assert!(k <= params.num_steps, "step {k} beyond {}", params.num_steps);
    assert_eq!(initial.len(), h.num_spins());
    let mut p = state_preparation(initial);
    let dt = params.dt();
    if dt == 0.0 {
        return p;
    }
    if h.is_time_dependent() {
        for j in 1..=k {
            p.append(&trotter_step(h, (j as f64 - 0.5) * dt, dt));
        }
    } else {
        let step = trotter_step(h, 0.0, dt);
        for _ in 0..k {
            p.append(&step);
        }
    }
    p
}
