// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Backend-agnostic gate-level programs.
//!
//! Rotation conventions, shared by every module:
//!
//! | gate        | operator               |
//! |-------------|------------------------|
//! | `RA(θ)`     | `exp(-i θ σ^A / 2)`    |
//! | `RAA(θ)`    | `exp(-i θ σ^A⊗σ^A / 2)`|
//! | `CNOT(c,t)` | flips `t` when `c = 1` |
//!
//! Qubit 0 is the most significant bit of a basis-state index. For two-qubit
//! gates the first operand is the more significant bit of the local 4×4 matrix.

mod lower;
mod text;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use lower::{is_native, lower_to_native};
pub use text::{export_text, import_text, ImportError};

use crate::error::TooLarge;
use crate::pauli::Axis;

/// Largest program [`unitary_of`] will expand.
pub const UNITARY_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    Cnot { control: usize, target: usize },
    Rotation { axis: Axis, qubit: usize, angle: f64 },
    Coupling { axis: Axis, qubits: (usize, usize), angle: f64 },
}

impl Gate {
    pub fn rx(qubit: usize, angle: f64) -> Gate {
        Gate::Rotation { axis: Axis::X, qubit, angle }
    }
    pub fn ry(qubit: usize, angle: f64) -> Gate {
        Gate::Rotation { axis: Axis::Y, qubit, angle }
    }
    pub fn rz(qubit: usize, angle: f64) -> Gate {
        Gate::Rotation { axis: Axis::Z, qubit, angle }
    }
    pub fn rxx(a: usize, b: usize, angle: f64) -> Gate {
        Gate::Coupling { axis: Axis::X, qubits: (a, b), angle }
    }
    pub fn ryy(a: usize, b: usize, angle: f64) -> Gate {
        Gate::Coupling { axis: Axis::Y, qubits: (a, b), angle }
    }
    pub fn rzz(a: usize, b: usize, angle: f64) -> Gate {
        Gate::Coupling { axis: Axis::Z, qubits: (a, b), angle }
    }
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    /// Operands in declaration order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::Rotation { qubit: q, .. } => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Coupling { qubits: (a, b), .. } => vec![a, b],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rotation { angle, .. } | Gate::Coupling { angle, .. } => Some(angle),
            _ => None,
        }
    }

    /// Mnemonic used by the text dialect.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::H(_) => "h",
            Gate::Cnot { .. } => "cx",
            Gate::Rotation { axis: Axis::X, .. } => "rx",
            Gate::Rotation { axis: Axis::Y, .. } => "ry",
            Gate::Rotation { axis: Axis::Z, .. } => "rz",
            Gate::Coupling { axis: Axis::X, .. } => "rxx",
            Gate::Coupling { axis: Axis::Y, .. } => "ryy",
            Gate::Coupling { axis: Axis::Z, .. } => "rzz",
        }
    }

    pub fn matrix(&self) -> GateMatrix {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let o = c(0.0, 0.0);
        let l = c(1.0, 0.0);
        match *self {
            Gate::X(_) => GateMatrix::One([[o, l], [l, o]]),
            Gate::H(_) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                GateMatrix::One([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
            }
            Gate::Cnot { .. } => GateMatrix::Two([[l, o, o, o], [o, l, o, o], [o, o, o, l], [o, o, l, o]]),
            Gate::Rotation { axis, angle, .. } => {
                let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                GateMatrix::One(match axis {
                    Axis::X => [[c(co, 0.0), c(0.0, -si)], [c(0.0, -si), c(co, 0.0)]],
                    Axis::Y => [[c(co, 0.0), c(-si, 0.0)], [c(si, 0.0), c(co, 0.0)]],
                    Axis::Z => [[c(co, -si), o], [o, c(co, si)]],
                })
            }
            Gate::Coupling { axis, angle, .. } => {
                let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                let d = c(co, 0.0);
                GateMatrix::Two(match axis {
                    Axis::X => {
                        let m = c(0.0, -si);
                        [[d, o, o, m], [o, d, m, o], [o, m, d, o], [m, o, o, d]]
                    }
                    Axis::Y => {
                        let p = c(0.0, si);
                        let m = c(0.0, -si);
                        [[d, o, o, p], [o, d, m, o], [o, m, d, o], [p, o, o, d]]
                    }
                    Axis::Z => {
                        let (e, f) = (c(co, -si), c(co, si));
                        [[e, o, o, o], [o, f, o, o], [o, o, f, o], [o, o, o, e]]
                    }
                })
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(a) = self.angle() {
            write!(f, "({a})")?;
        }
        let qs: Vec<String> = self.qubits().iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qs.join(","))
    }
}

/// Local matrix of a gate on its own operands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateMatrix {
    One([[Complex64; 2]; 2]),
    Two([[Complex64; 4]; 4]),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit program")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("two-qubit gate repeats operand {qubit}")]
    RepeatedOperand { qubit: usize },
}

/// Ordered gate list on `num_qubits` qubits, optionally ending in a full measurement.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    num_qubits: usize,
    gates: Vec<Gate>,
    measured: bool,
}

impl Program {
    pub fn new(num_qubits: usize) -> Self {
        Program {
            num_qubits,
            gates: Vec::new(),
            measured: false,
        }
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self, ProgramError> {
        let mut p = Program::new(num_qubits);
        for g in gates {
            p.try_push(g)?;
        }
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_measured(&self) -> bool {
        self.measured
    }

    pub fn set_measured(&mut self, measured: bool) -> &mut Self {
        self.measured = measured;
        self
    }

    pub fn check(&self, gate: &Gate) -> Result<(), ProgramError> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.num_qubits {
                return Err(ProgramError::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(ProgramError::RepeatedOperand { qubit: qs[0] });
        }
        Ok(())
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<&mut Self, ProgramError> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Append a gate generated internally.
    ///
    /// # Panics
    /// If the gate is invalid for this program.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.try_push(gate).expect("generated gate must be valid");
        self
    }

    pub fn append(&mut self, other: &Program) -> &mut Self {
        assert_eq!(self.num_qubits, other.num_qubits, "program width mismatch");
        self.gates.extend_from_slice(&other.gates);
        self
    }

    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Program {
        Program {
            num_qubits: self.num_qubits,
            gates,
            measured: self.measured,
        }
    }
}

/// Full `2^n × 2^n` matrix of one gate, built element-wise from its local matrix.
fn embed(gate: &Gate, n: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    match gate.matrix() {
        GateMatrix::One(g) => {
            let b = bit(gate.qubits()[0]);
            for col in 0..dim {
                let lc = usize::from(col & b != 0);
                for (lr, grow) in g.iter().enumerate() {
                    let row = if lr == 1 { col | b } else { col & !b };
                    m[(row, col)] = grow[lc];
                }
            }
        }
        GateMatrix::Two(g) => {
            let qs = gate.qubits();
            let (ba, bb) = (bit(qs[0]), bit(qs[1]));
            for col in 0..dim {
                let lc = (usize::from(col & ba != 0) << 1) | usize::from(col & bb != 0);
                for (lr, grow) in g.iter().enumerate() {
                    let mut row = col & !ba & !bb;
                    if lr & 2 != 0 {
                        row |= ba;
                    }
                    if lr & 1 != 0 {
                        row |= bb;
                    }
                    m[(row, col)] = grow[lc];
                }
            }
        }
    }
    m
}

/// Product of the gate matrices in application order.
pub fn unitary_of(p: &Program) -> Result<DMatrix<Complex64>, TooLarge> {
    let n = p.num_qubits();
    TooLarge::check("unitary", n, UNITARY_LIMIT)?;
    let dim = 1usize << n;
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    for g in p.gates() {
        u = embed(g, n) * u;
    }
    Ok(u)
}

/// `max |a − e^{iφ} b|`, with φ aligning the phases of `a`'s largest-magnitude entry.
pub fn phase_aligned_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    let (mut idx, mut best) = (0usize, -1.0f64);
    for (i, v) in a.iter().enumerate() {
        if v.norm() > best {
            best = v.norm();
            idx = i;
        }
    }
    let (av, bv) = (a[idx], b[idx]);
    let phase = if bv.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let r = av / bv;
        r / r.norm()
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}
