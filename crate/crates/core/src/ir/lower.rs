// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_2, PI};

use super::{Gate, Program};
use crate::pauli::Axis;

/// True for gates in the native set {RZ, RX, H, CNOT}.
pub fn is_native(g: &Gate) -> bool {
    matches!(
        g,
        Gate::H(_)
            | Gate::Cnot { .. }
            | Gate::Rotation {
                axis: Axis::X | Axis::Z,
                ..
            }
    )
}

fn lower_gate(g: Gate, out: &mut Vec<Gate>) {
    match g {
        g if is_native(&g) => out.push(g),
        // X = i·RX(π)
        Gate::X(q) => out.push(Gate::rx(q, PI)),
        // Y = S X S†, so RY(θ) = RZ(π/2) RX(θ) RZ(−π/2)
        Gate::Rotation {
            axis: Axis::Y,
            qubit,
            angle,
        } => out.extend([Gate::rz(qubit, -FRAC_PI_2), Gate::rx(qubit, angle), Gate::rz(qubit, FRAC_PI_2)]),
        Gate::Coupling {
            axis,
            qubits: (a, b),
            angle,
        } => {
            let zz = [Gate::cnot(a, b), Gate::rz(b, angle), Gate::cnot(a, b)];
            match axis {
                Axis::Z => out.extend(zz),
                // H Z H = X
                Axis::X => {
                    out.extend([Gate::H(a), Gate::H(b)]);
                    out.extend(zz);
                    out.extend([Gate::H(a), Gate::H(b)]);
                }
                // RX(−π/2) Z RX(π/2) = Y
                Axis::Y => {
                    out.extend([Gate::rx(a, FRAC_PI_2), Gate::rx(b, FRAC_PI_2)]);
                    out.extend(zz);
                    out.extend([Gate::rx(a, -FRAC_PI_2), Gate::rx(b, -FRAC_PI_2)]);
                }
            }
        }
        _ => unreachable!("native gates handled above"),
    }
}

/// Rewrite `p` over the native set {RZ, RX, H, CNOT}; equal unitary up to global phase.
pub fn lower_to_native(p: &Program) -> Program {
    let mut gates = Vec::with_capacity(p.len());
    for &g in p.gates() {
        lower_gate(g, &mut gates);
    }
    p.with_gates(gates)
}
