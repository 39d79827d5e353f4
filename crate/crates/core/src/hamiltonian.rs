// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Open-chain, time-dependent Heisenberg Hamiltonian
//!
//! ```text
//! H(t) = Σ_α Σ_{i=1}^{n-1} J^α_i(t) σ^α_i σ^α_{i+1} + Σ_α Σ_{i=1}^{n} h^α_i(t) σ^α_i
//! ```
//!
//! Sites are 1-based. Site `i` lives on qubit `i - 1`, and qubit 0 is the most
//! significant bit of every statevector index and dense-matrix row.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::TooLarge;
use crate::pauli::{Axis, Pauli, PauliString};

/// Largest chain `dense_matrix` will build.
pub const DENSE_LIMIT: usize = 12;

/// `coefficient · Π σ^{axis}_{site}` over distinct sites. No factors means the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub factors: Vec<(usize, Axis)>,
}

impl PauliTerm {
    pub fn identity(coefficient: f64) -> Self {
        PauliTerm {
            coefficient,
            factors: Vec::new(),
        }
    }

    pub fn field(coefficient: f64, site: usize, axis: Axis) -> Self {
        PauliTerm {
            coefficient,
            factors: vec![(site, axis)],
        }
    }

    /// Nearest-neighbour coupling between `site` and `site + 1`.
    pub fn bond(coefficient: f64, site: usize, axis: Axis) -> Self {
        PauliTerm {
            coefficient,
            factors: vec![(site, axis), (site + 1, axis)],
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.iter().map(|&(s, _)| s)
    }

    /// Dense Pauli string over `n` qubits (site `i` → qubit `i - 1`).
    pub fn pauli_string(&self, n: usize) -> PauliString {
        PauliString::from_sparse(n, self.factors.iter().map(|&(s, a)| (s - 1, Pauli::from(a))))
    }

    /// True when every factor is σ^z (or there are none).
    pub fn is_diagonal(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == Axis::Z)
    }
}

/// A single time-dependent coefficient `J^α_i(t)` or `h^α_i(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(f64),
    /// Linear interpolation from `from` at t = 0 to `to` at t = `duration`, clamped outside.
    Ramp { from: f64, to: f64, duration: f64 },
    /// `amplitude · exp(-(t - center)² / (2 width²))`.
    Pulse {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    Sum(Box<Coefficient>, Box<Coefficient>),
}

impl Coefficient {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Coefficient::Constant(v) => *v,
            Coefficient::Ramp { from, to, duration } => {
                if *duration <= 0.0 {
                    return *from;
                }
                let s = (t / duration).clamp(0.0, 1.0);
                from + (to - from) * s
            }
            Coefficient::Pulse {
                amplitude,
                center,
                width,
            } => {
                let d = t - center;
                amplitude * (-d * d / (2.0 * width * width)).exp()
            }
            Coefficient::Sum(a, b) => a.at(t) + b.at(t),
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        match self {
            Coefficient::Constant(_) => false,
            Coefficient::Ramp { from, to, .. } => from != to,
            Coefficient::Pulse { amplitude, .. } => *amplitude != 0.0,
            Coefficient::Sum(a, b) => a.is_time_dependent() || b.is_time_dependent(),
        }
    }

    fn is_zero(&self) -> bool {
        !self.is_time_dependent() && self.at(0.0) == 0.0
    }
}

/// H(t) over an open chain of `num_spins` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergHamiltonian {
    num_spins: usize,
    /// Indexed by axis, then bond `i - 1` for the (i, i+1) pair.
    bonds: [Vec<Coefficient>; 3],
    /// Indexed by axis, then site `i - 1`.
    fields: [Vec<Coefficient>; 3],
}

impl HeisenbergHamiltonian {
    /// All-zero Hamiltonian.
    pub fn new(num_spins: usize) -> Self {
        assert!(num_spins >= 1, "chain needs at least one spin");
        let bonds = vec![Coefficient::Constant(0.0); num_spins - 1];
        let fields = vec![Coefficient::Constant(0.0); num_spins];
        HeisenbergHamiltonian {
            num_spins,
            bonds: [bonds.clone(), bonds.clone(), bonds],
            fields: [fields.clone(), fields.clone(), fields],
        }
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    /// Set `J^axis_bond` for the pair (bond, bond + 1), 1-based.
    pub fn set_bond(&mut self, axis: Axis, bond: usize, c: Coefficient) -> &mut Self {
        assert!(bond >= 1 && bond < self.num_spins, "bond {bond} out of range");
        self.bonds[axis.index()][bond - 1] = c;
        self
    }

    /// Set `h^axis_site`, 1-based.
    pub fn set_field(&mut self, axis: Axis, site: usize, c: Coefficient) -> &mut Self {
        assert!(site >= 1 && site <= self.num_spins, "site {site} out of range");
        self.fields[axis.index()][site - 1] = c;
        self
    }

    /// Uniform constant couplings along `axis`.
    pub fn with_uniform_bond(mut self, axis: Axis, value: f64) -> Self {
        for b in 1..self.num_spins {
            self.set_bond(axis, b, Coefficient::Constant(value));
        }
        self
    }

    /// Uniform constant field along `axis`.
    pub fn with_uniform_field(mut self, axis: Axis, value: f64) -> Self {
        for s in 1..=self.num_spins {
            self.set_field(axis, s, Coefficient::Constant(value));
        }
        self
    }

    pub fn bond(&self, axis: Axis, bond: usize) -> &Coefficient {
        &self.bonds[axis.index()][bond - 1]
    }

    pub fn field(&self, axis: Axis, site: usize) -> &Coefficient {
        &self.fields[axis.index()][site - 1]
    }

    pub fn is_time_dependent(&self) -> bool {
        self.bonds
            .iter()
            .chain(self.fields.iter())
            .flatten()
            .any(Coefficient::is_time_dependent)
    }

    /// Term-wise sum of two Hamiltonians on the same chain.
    pub fn add(&self, other: &HeisenbergHamiltonian) -> HeisenbergHamiltonian {
        assert_eq!(self.num_spins, other.num_spins, "chain length mismatch");
        let join = |a: &[Coefficient], b: &[Coefficient]| -> Vec<Coefficient> {
            a.iter()
                .zip(b)
                .map(|(x, y)| match (x.is_zero(), y.is_zero()) {
                    (_, true) => x.clone(),
                    (true, false) => y.clone(),
                    _ => Coefficient::Sum(Box::new(x.clone()), Box::new(y.clone())),
                })
                .collect()
        };
        HeisenbergHamiltonian {
            num_spins: self.num_spins,
            bonds: std::array::from_fn(|k| join(&self.bonds[k], &other.bonds[k])),
            fields: std::array::from_fn(|k| join(&self.fields[k], &other.fields[k])),
        }
    }

    /// Every term evaluated at `t`, zero coefficients dropped. Order: x-, y-, z-bonds
    /// (left to right), then x-, y-, z-fields (ascending site).
    pub fn snapshot(&self, t: f64) -> Vec<PauliTerm> {
        let mut terms = Vec::new();
        for axis in Axis::ALL {
            for (k, c) in self.bonds[axis.index()].iter().enumerate() {
                let v = c.at(t);
                if v != 0.0 {
                    terms.push(PauliTerm::bond(v, k + 1, axis));
                }
            }
        }
        for axis in Axis::ALL {
            for (k, c) in self.fields[axis.index()].iter().enumerate() {
                let v = c.at(t);
                if v != 0.0 {
                    terms.push(PauliTerm::field(v, k + 1, axis));
                }
            }
        }
        terms
    }
}

fn pauli_matrix(p: Option<Axis>) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let z = c(0.0, 0.0);
    match p {
        None => DMatrix::identity(2, 2),
        Some(Axis::X) => DMatrix::from_row_slice(2, 2, &[z, c(1.0, 0.0), c(1.0, 0.0), z]),
        Some(Axis::Y) => DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        Some(Axis::Z) => DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), z, z, c(-1.0, 0.0)]),
    }
}

/// `Σ c · (⊗ factors)` as a dense `2^n × 2^n` matrix, site 1 the most significant factor.
pub fn dense_matrix(terms: &[PauliTerm], n: usize) -> Result<DMatrix<Complex64>, TooLarge> {
    TooLarge::check("dense matrix", n, DENSE_LIMIT)?;
    let dim = 1usize << n;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for term in terms {
        let mut m = DMatrix::<Complex64>::identity(1, 1);
        for site in 1..=n {
            let axis = term
                .factors
                .iter()
                .find(|&&(s, _)| s == site)
                .map(|&(_, a)| a);
            m = m.kronecker(&pauli_matrix(axis));
        }
        out += m * Complex64::new(term.coefficient, 0.0);
    }
    Ok(out)
}
