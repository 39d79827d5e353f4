// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Exact classical references by dense diagonalization (n ≤ 10).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::backend::Statevector;
use crate::error::TooLarge;
use crate::hamiltonian::{dense_matrix, HeisenbergHamiltonian, PauliTerm};

pub const ORACLE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error("initial state has no overlap with the propagated spectrum")]
    ZeroOverlap,
}

/// Eigendecomposition `H = V diag(λ) V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn of(terms: &[PauliTerm], n: usize) -> Result<Self, OracleError> {
        TooLarge::check("oracle", n, ORACLE_LIMIT)?;
        let eig = dense_matrix(terms, n)?.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(Spectrum { values, vectors })
    }

    /// `V diag(f(λ)) V† ψ`.
    pub fn apply_fn(&self, state: &[Complex64], f: impl Fn(f64) -> Complex64) -> DVector<Complex64> {
        let psi = DVector::from_column_slice(state);
        let mut coeffs = self.vectors.adjoint() * psi;
        for (c, &l) in coeffs.iter_mut().zip(&self.values) {
            *c *= f(l);
        }
        &self.vectors * coeffs
    }
}

fn to_state(v: DVector<Complex64>) -> Statevector {
    Statevector::from_amplitudes(v.iter().copied().collect())
}

/// Lowest eigenpair. The state's largest component is made real and positive.
pub fn ground_state(terms: &[PauliTerm], n: usize) -> Result<(f64, Statevector), OracleError> {
    let eig = Spectrum::of(terms, n)?;
    let col = eig.vectors.column(0);
    let (mut best, mut idx) = (0.0, 0);
    for (i, a) in col.iter().enumerate() {
        if a.norm() > best + 1e-12 {
            best = a.norm();
            idx = i;
        }
    }
    let phase = col[idx].conj() / col[idx].norm();
    let v = col.map(|a| a * phase);
    Ok((eig.values[0], to_state(v)))
}

/// Ground-state energy only.
pub fn ground_energy(terms: &[PauliTerm], n: usize) -> Result<f64, OracleError> {
    Ok(Spectrum::of(terms, n)?.values[0])
}

/// `exp(−iHt)|initial⟩`. Time-dependent Hamiltonians are propagated piecewise-constant
/// over `substeps` intervals with H sampled at each interval midpoint.
pub fn evolve_exact(
    h: &HeisenbergHamiltonian,
    t: f64,
    initial: &Statevector,
    substeps: usize,
) -> Result<Statevector, OracleError> {
    let n = h.num_spins();
    TooLarge::check("oracle", n, ORACLE_LIMIT)?;
    if t == 0.0 {
        return Ok(initial.clone());
    }
    let (pieces, dt) = if h.is_time_dependent() {
        let m = substeps.max(1);
        (m, t / m as f64)
    } else {
        (1, t)
    };
    let mut psi: Vec<Complex64> = initial.amplitudes().to_vec();
    let mut cached: Option<Spectrum> = None;
    for j in 0..pieces {
        let eig = if h.is_time_dependent() {
            Spectrum::of(&h.snapshot((j as f64 + 0.5) * dt), n)?
        } else {
            match cached.take() {
                Some(s) => s,
                None => Spectrum::of(&h.snapshot(0.0), n)?,
            }
        };
        psi = eig
            .apply_fn(&psi, |l| Complex64::from_polar(1.0, -l * dt))
            .iter()
            .copied()
            .collect();
        if !h.is_time_dependent() {
            cached = Some(eig);
        }
    }
    Ok(to_state(DVector::from_vec(psi)))
}

/// `e^{−βH}|initial⟩ / ‖·‖` and its energy ⟨H⟩.
pub fn evolve_imaginary_exact(
    terms: &[PauliTerm],
    beta: f64,
    initial: &Statevector,
) -> Result<(Statevector, f64), OracleError> {
    let n = initial.num_qubits();
    let eig = Spectrum::of(terms, n)?;
    let shift = eig.values[0];
    // Shifting by λ_min keeps every weight ≤ 1.
    let v = eig.apply_fn(initial.amplitudes(), |l| Complex64::new((-beta * (l - shift)).exp(), 0.0));
    let norm = v.norm();
    if norm <= 1e-300 || !norm.is_finite() {
        return Err(OracleError::ZeroOverlap);
    }
    let state = to_state(v);
    let energy = state.expectation(terms);
    Ok((state, energy))
}
