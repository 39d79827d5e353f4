// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Pauli operators and dense Pauli strings with phase-tracked products.

use std::fmt;

use num_complex::Complex64;

/// Spin axis, shared by Hamiltonian terms, rotation gates and measurement bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s.trim() {
            "x" | "X" => Some(Axis::X),
            "y" | "Y" => Some(Axis::Y),
            "z" | "Z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Product `self * other` as `(phase, pauli)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (X, X) | (Y, Y) | (Z, Z) => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
        }
    }

    pub fn axis(self) -> Option<Axis> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(Axis::X),
            Pauli::Y => Some(Axis::Y),
            Pauli::Z => Some(Axis::Z),
        }
    }
}

impl From<Axis> for Pauli {
    fn from(a: Axis) -> Self {
        match a {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

/// A tensor product of Paulis over `len()` qubits, qubit 0 first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Self {
        PauliString {
            ops: vec![Pauli::I; num_qubits],
        }
    }

    pub fn from_ops(ops: Vec<Pauli>) -> Self {
        PauliString { ops }
    }

    /// Build from sparse `(qubit, pauli)` pairs.
    pub fn from_sparse(num_qubits: usize, factors: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        let mut s = Self::identity(num_qubits);
        for (q, p) in factors {
            s.ops[q] = p;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        self.ops[qubit]
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|&p| p == Pauli::I)
    }

    /// Non-identity factors in ascending qubit order.
    pub fn support(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.ops
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, &p)| (q, p))
    }

    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        assert_eq!(self.len(), other.len(), "pauli string length mismatch");
        let mut phase = Complex64::new(1.0, 0.0);
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(&a, &b)| {
                let (ph, p) = a.mul(b);
                phase *= ph;
                p
            })
            .collect();
        (phase, PauliString { ops })
    }

    /// Bit masks `(x_mask, z_mask, y_count)` in the statevector index convention
    /// where qubit 0 is the most significant bit. The operator equals
    /// `i^y_count · X^x_mask · Z^z_mask`.
    pub fn masks(&self) -> (usize, usize, u32) {
        let n = self.ops.len();
        let mut x = 0usize;
        let mut z = 0usize;
        let mut ys = 0u32;
        for (q, &p) in self.ops.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ys += 1;
                }
            }
        }
        (x, z, ys)
    }

    /// Every non-identity string supported on `qubits` (ascending), in lexicographic order
    /// over `(I, X, Y, Z)` per qubit. `4^k − 1` strings for `k` qubits.
    pub fn basis_on(num_qubits: usize, qubits: &[usize]) -> Vec<PauliString> {
        let k = qubits.len();
        let mut out = Vec::with_capacity((1usize << (2 * k)).saturating_sub(1));
        for code in 1..(1usize << (2 * k)) {
            let mut s = Self::identity(num_qubits);
            for (slot, &q) in qubits.iter().enumerate() {
                let digit = (code >> (2 * (k - 1 - slot))) & 3;
                s.ops[q] = Pauli::ALL[digit];
            }
            out.push(s);
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.ops {
            let c = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
