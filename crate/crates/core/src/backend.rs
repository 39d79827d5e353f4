// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Noise-free statevector execution.
//!
//! Amplitude index bit `n - 1 - q` holds qubit `q`, so qubit 0 (site 1) is the
//! most significant bit and bitstrings read left to right from qubit 0.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Spin;
use crate::error::{Error, TooLarge};
use crate::hamiltonian::PauliTerm;
use crate::ir::{Gate, GateMatrix, Program};
use crate::pauli::{Axis, PauliString};
use crate::registry::Registry;

/// Default qubit guard for [`run_statevector`].
pub const STATEVECTOR_LIMIT: usize = 24;

/// Imaginary parts of expectation values below this are treated as round-off.
pub const IMAG_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// |0…0⟩.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Statevector { num_qubits, amps }
    }

    /// Product state with up = |0⟩ and down = |1⟩ per site.
    pub fn product(spins: &[Spin]) -> Self {
        let n = spins.len();
        let index = spins
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Spin::Down)
            .fold(0usize, |acc, (q, _)| acc | 1 << (n - 1 - q));
        Self::basis(n, index)
    }

    /// Wrap amplitudes, normalizing them.
    ///
    /// # Panics
    /// If the length is not a power of two or the vector is zero.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        assert!(amps.len().is_power_of_two(), "length must be 2^n");
        let num_qubits = amps.len().trailing_zeros() as usize;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "zero vector");
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Statevector { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.num_qubits - 1 - q)
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::X(q) => {
                let b = self.bit(q);
                for i in (0..self.amps.len()).filter(|i| i & b == 0) {
                    self.amps.swap(i, i | b);
                }
            }
            Gate::Cnot { control, target } => {
                let (bc, bt) = (self.bit(control), self.bit(target));
                for i in (0..self.amps.len()).filter(|i| i & bc != 0 && i & bt == 0) {
                    self.amps.swap(i, i | bt);
                }
            }
            Gate::Rotation { axis: Axis::Z, qubit, angle } => {
                let b = self.bit(qubit);
                let (lo, hi) = (Complex64::from_polar(1.0, -angle / 2.0), Complex64::from_polar(1.0, angle / 2.0));
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= if i & b == 0 { lo } else { hi };
                }
            }
            Gate::Coupling { axis: Axis::Z, qubits: (qa, qb), angle } => {
                let (ba, bb) = (self.bit(qa), self.bit(qb));
                let (even, odd) = (Complex64::from_polar(1.0, -angle / 2.0), Complex64::from_polar(1.0, angle / 2.0));
                for (i, a) in self.amps.iter_mut().enumerate() {
                    let parity = (i & ba != 0) ^ (i & bb != 0);
                    *a *= if parity { odd } else { even };
                }
            }
            _ => match gate.matrix() {
                GateMatrix::One(m) => {
                    let b = self.bit(gate.qubits()[0]);
                    for i in (0..self.amps.len()).filter(|i| i & b == 0) {
                        let (a0, a1) = (self.amps[i], self.amps[i | b]);
                        self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                        self.amps[i | b] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
                GateMatrix::Two(m) => {
                    let qs = gate.qubits();
                    let (ba, bb) = (self.bit(qs[0]), self.bit(qs[1]));
                    for i in (0..self.amps.len()).filter(|i| i & ba == 0 && i & bb == 0) {
                        let idx = [i, i | bb, i | ba, i | ba | bb];
                        let v = idx.map(|k| self.amps[k]);
                        for (r, &k) in idx.iter().enumerate() {
                            self.amps[k] = (0..4).map(|c| m[r][c] * v[c]).sum();
                        }
                    }
                }
            },
        }
    }

    pub fn apply_program(&mut self, p: &Program) {
        assert_eq!(p.num_qubits(), self.num_qubits, "program width mismatch");
        for g in p.gates() {
            self.apply(g);
        }
    }

    /// ⟨ψ|P|ψ⟩ for a Pauli string (complex in general for non-Hermitian products).
    pub fn pauli_expectation(&self, p: &PauliString) -> Complex64 {
        assert_eq!(p.len(), self.num_qubits, "pauli string width mismatch");
        let (xm, zm, ys) = p.masks();
        let yphase = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][(ys % 4) as usize];
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            // P|x⟩ = i^ys · (−1)^{|x ∧ z|} |x ⊕ xm⟩
            let sign = if (x & zm).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            acc += self.amps[x ^ xm].conj() * a * sign;
        }
        acc * yphase
    }

    /// Σ c_T ⟨ψ|T|ψ⟩.
    pub fn expectation(&self, obs: &[PauliTerm]) -> f64 {
        let n = self.num_qubits;
        let total: Complex64 = obs
            .iter()
            .map(|t| self.pauli_expectation(&t.pauli_string(n)) * t.coefficient)
            .sum();
        debug_assert!(total.im.abs() <= IMAG_TOLERANCE * (1.0 + total.re.abs()), "non-Hermitian observable");
        total.re
    }
}

/// |ψ⟩ = U_p |0…0⟩.
pub fn run_statevector(p: &Program) -> Result<Statevector, TooLarge> {
    TooLarge::check("statevector", p.num_qubits(), STATEVECTOR_LIMIT)?;
    let mut s = Statevector::zero(p.num_qubits());
    s.apply_program(p);
    Ok(s)
}

/// `expectation` as a free function.
pub fn expectation(state: &Statevector, obs: &[PauliTerm]) -> f64 {
    state.expectation(obs)
}

/// Outcome histogram; keys are bitstrings with qubit 0 leftmost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    num_qubits: usize,
    counts: BTreeMap<String, u64>,
}

impl Counts {
    pub fn new(num_qubits: usize) -> Self {
        Counts {
            num_qubits,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_map(num_qubits: usize, counts: BTreeMap<String, u64>) -> Self {
        assert!(counts.keys().all(|k| k.len() == num_qubits && k.bytes().all(|b| b == b'0' || b == b'1')));
        Counts { num_qubits, counts }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, outcome: &str) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// Draw `shots` i.i.d. outcomes from |amp|², reproducible from `seed`.
pub fn sample_counts(state: &Statevector, shots: u64, seed: u64) -> Counts {
    sample_counts_with(state, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_counts_with(state: &Statevector, shots: u64, rng: &mut ChaCha8Rng) -> Counts {
    let n = state.num_qubits();
    let dist = WeightedIndex::new(state.probabilities()).expect("normalized state");
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..shots {
        *hist.entry(dist.sample(rng)).or_default() += 1;
    }
    let counts = hist
        .into_iter()
        .map(|(idx, c)| (format!("{idx:0n$b}"), c))
        .collect();
    Counts { num_qubits: n, counts }
}

/// Mean and standard error of a shot-based estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub sigma: f64,
}

/// Value of a Z-diagonal observable averaged over the measured outcomes.
pub fn estimate_observable_from_counts(counts: &Counts, obs: &[PauliTerm]) -> Result<Estimate, Error> {
    if let Some(t) = obs.iter().find(|t| !t.is_diagonal()) {
        return Err(Error::BasisMismatch(format!(
            "term {:?} has non-Z factors; rotate into the Z basis before measuring",
            t.factors
        )));
    }
    let total = counts.total();
    if total == 0 {
        return Ok(Estimate { value: 0.0, sigma: 0.0 });
    }
    let value_of = |outcome: &str| -> f64 {
        let bits = outcome.as_bytes();
        obs.iter()
            .map(|t| {
                let odd = t.factors.iter().filter(|&&(site, _)| bits[site - 1] == b'1').count() % 2 == 1;
                if odd {
                    -t.coefficient
                } else {
                    t.coefficient
                }
            })
            .sum()
    };
    let shots = total as f64;
    let values: Vec<(f64, f64)> = counts.iter().map(|(k, c)| (value_of(k), c as f64 / shots)).collect();
    let mean: f64 = values.iter().map(|(v, f)| v * f).sum();
    let var: f64 = values.iter().map(|(v, f)| f * (v - mean).powi(2)).sum();
    Ok(Estimate {
        value: mean,
        sigma: (var / shots).sqrt(),
    })
}

/// Gates that map a σ^axis measurement onto a σ^z measurement.
pub fn basis_change(axis: Axis, qubit: usize) -> Option<Gate> {
    match axis {
        Axis::X => Some(Gate::H(qubit)),
        Axis::Y => Some(Gate::rx(qubit, FRAC_PI_2)),
        Axis::Z => None,
    }
}

/// Greedy partition into qubit-wise commuting groups, each measurable in one basis.
pub fn measurement_groups(obs: &[PauliTerm]) -> Vec<(BTreeMap<usize, Axis>, Vec<PauliTerm>)> {
    let mut groups: Vec<(BTreeMap<usize, Axis>, Vec<PauliTerm>)> = Vec::new();
    for t in obs.iter().filter(|t| !t.factors.is_empty()) {
        let slot = groups.iter().position(|(basis, _)| {
            t.factors
                .iter()
                .all(|(s, a)| basis.get(s).is_none_or(|b| b == a))
        });
        let idx = slot.unwrap_or_else(|| {
            groups.push((BTreeMap::new(), Vec::new()));
            groups.len() - 1
        });
        let (basis, terms) = &mut groups[idx];
        basis.extend(t.factors.iter().copied());
        terms.push(t.clone());
    }
    groups
}

/// Shot-based estimate of Σ c_T ⟨T⟩: one measurement circuit per commuting group.
pub fn estimate_with_shots(state: &Statevector, obs: &[PauliTerm], shots: u64, rng: &mut ChaCha8Rng) -> Estimate {
    let offset: f64 = obs.iter().filter(|t| t.factors.is_empty()).map(|t| t.coefficient).sum();
    let mut est = Estimate { value: offset, sigma: 0.0 };
    let mut var = 0.0;
    for (basis, terms) in measurement_groups(obs) {
        let mut rotated = state.clone();
        for (&site, &axis) in &basis {
            if let Some(g) = basis_change(axis, site - 1) {
                rotated.apply(&g);
            }
        }
        let counts = sample_counts_with(&rotated, shots, rng);
        let z_terms: Vec<PauliTerm> = terms
            .iter()
            .map(|t| PauliTerm {
                coefficient: t.coefficient,
                factors: t.factors.iter().map(|&(s, _)| (s, Axis::Z)).collect(),
            })
            .collect();
        let e = estimate_observable_from_counts(&counts, &z_terms).expect("rotated into Z basis");
        est.value += e.value;
        var += e.sigma * e.sigma;
    }
    est.sigma = var.sqrt();
    est
}

/// Source of Pauli-string expectation values.
pub trait Estimator {
    /// ⟨ψ|P|ψ⟩ for a Hermitian Pauli string (real).
    fn pauli(&mut self, state: &Statevector, p: &PauliString) -> f64;
}

/// Exact inner products.
#[derive(Debug, Default, Clone, Copy)]
pub struct ExactEstimator;

impl Estimator for ExactEstimator {
    fn pauli(&mut self, state: &Statevector, p: &PauliString) -> f64 {
        state.pauli_expectation(p).re
    }
}

/// Finite-shot estimates from simulated measurements in the string's basis.
#[derive(Debug, Clone)]
pub struct ShotEstimator {
    shots: u64,
    rng: ChaCha8Rng,
}

impl ShotEstimator {
    pub fn new(shots: u64, seed: u64) -> Self {
        ShotEstimator {
            shots,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Estimator for ShotEstimator {
    fn pauli(&mut self, state: &Statevector, p: &PauliString) -> f64 {
        if p.is_identity() {
            return 1.0;
        }
        let term = PauliTerm {
            coefficient: 1.0,
            factors: p.support().map(|(q, pa)| (q + 1, pa.axis().expect("non-identity"))).collect(),
        };
        estimate_with_shots(state, &[term], self.shots, &mut self.rng).value
    }
}

/// Memoizes one estimator's answers for a fixed state.
pub(crate) struct Cached<'a, E: Estimator + ?Sized> {
    inner: &'a mut E,
    memo: HashMap<PauliString, f64>,
}

impl<'a, E: Estimator + ?Sized> Cached<'a, E> {
    pub(crate) fn new(inner: &'a mut E) -> Self {
        Cached {
            inner,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, state: &Statevector, p: &PauliString) -> f64 {
        if p.is_identity() {
            return 1.0;
        }
        if let Some(&v) = self.memo.get(p) {
            return v;
        }
        let v = self.inner.pauli(state, p);
        self.memo.insert(p.clone(), v);
        v
    }
}

/// `Σ c ⟨P⟩` through an estimator.
pub fn estimate_terms(est: &mut dyn Estimator, state: &Statevector, obs: &[PauliTerm]) -> f64 {
    let n = state.num_qubits();
    obs.iter()
        .map(|t| {
            if t.factors.is_empty() {
                t.coefficient
            } else {
                t.coefficient * est.pauli(state, &t.pauli_string(n))
            }
        })
        .sum()
}

/// An execution target for programs.
pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, p: &Program) -> Result<Statevector, TooLarge>;
}

/// Local noise-free simulator.
#[derive(Debug, Clone, Copy)]
pub struct StatevectorBackend {
    pub max_qubits: usize,
}

impl Default for StatevectorBackend {
    fn default() -> Self {
        StatevectorBackend {
            max_qubits: STATEVECTOR_LIMIT,
        }
    }
}

impl Backend for StatevectorBackend {
    fn name(&self) -> &'static str {
        "QS"
    }

    fn run(&self, p: &Program) -> Result<Statevector, TooLarge> {
        TooLarge::check("statevector", p.num_qubits(), self.max_qubits)?;
        let mut s = Statevector::zero(p.num_qubits());
        s.apply_program(p);
        Ok(s)
    }
}

/// Execution backends keyed by their `QCQS` name.
pub fn registry() -> &'static Registry<dyn Backend> {
    static REGISTRY: OnceLock<Registry<dyn Backend>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<dyn Backend> = Registry::new("backend");
        r.register("QS", || Box::new(StatevectorBackend::default()));
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use crate::hamiltonian::{dense_matrix, HeisenbergHamiltonian};
    use crate::ir::{testing, unitary_of};
    use nalgebra::DVector;
    use proptest::prelude::*;

    fn random_state(n: usize, seed: u64) -> Statevector {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Statevector::from_amplitudes(
            (0..1 << n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn basic_gates() {
        let s = run_statevector(&Program::from_gates(1, [Gate::X(0)]).unwrap()).unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);

        let s = run_statevector(&Program::from_gates(1, [Gate::H(0)]).unwrap()).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for a in s.amplitudes() {
            assert!((a - Complex64::new(r, 0.0)).norm() < 1e-15);
        }

        let s = run_statevector(&Program::from_gates(2, [Gate::X(0), Gate::cnot(0, 1)]).unwrap()).unwrap();
        assert_eq!(s, Statevector::basis(2, 3));
    }

    #[test]
    fn z_expectations() {
        let z = [PauliTerm::field(1.0, 1, Axis::Z)];
        assert_eq!(Statevector::zero(1).expectation(&z), 1.0);
        assert_eq!(Statevector::basis(1, 1).expectation(&z), -1.0);
    }

    #[test]
    fn tfim_expectation_matches_dense() {
        let h = HeisenbergHamiltonian::new(3)
            .with_uniform_bond(Axis::Z, 1.0)
            .with_uniform_field(Axis::X, 1.0)
            .snapshot(0.0);
        let m = dense_matrix(&h, 3).unwrap();
        for seed in 0..5 {
            let s = random_state(3, seed);
            let v = DVector::from_column_slice(s.amplitudes());
            let want = (v.adjoint() * &m * &v)[(0, 0)].re;
            assert!((s.expectation(&h) - want).abs() < 1e-10);
        }
    }

    #[test]
    fn expectation_handles_y_terms() {
        let terms = [
            PauliTerm::bond(0.7, 1, Axis::Y),
            PauliTerm::field(-0.4, 2, Axis::Y),
            PauliTerm::bond(0.2, 2, Axis::X),
        ];
        let m = dense_matrix(&terms, 3).unwrap();
        let s = random_state(3, 17);
        let v = DVector::from_column_slice(s.amplitudes());
        let want = (v.adjoint() * &m * &v)[(0, 0)].re;
        assert!((s.expectation(&terms) - want).abs() < 1e-12);
    }

    #[test]
    fn deterministic_counts() {
        let c = sample_counts(&Statevector::basis(1, 1), 100, 3);
        assert_eq!(c.get("1"), 100);
        assert_eq!(c.total(), 100);
        let plus = run_statevector(&Program::from_gates(3, [Gate::H(0), Gate::H(2)]).unwrap()).unwrap();
        assert_eq!(sample_counts(&plus, 500, 42), sample_counts(&plus, 500, 42));
    }

    #[test]
    fn plus_state_binomial() {
        let plus = run_statevector(&Program::from_gates(1, [Gate::H(0)]).unwrap()).unwrap();
        let shots = 100_000u64;
        let c = sample_counts(&plus, shots, 7);
        let freq = c.get("1") as f64 / shots as f64;
        let sigma = (0.25 / shots as f64).sqrt();
        assert!((freq - 0.5).abs() <= 5.0 * sigma, "{freq}");
    }

    #[test]
    fn counts_estimates_for_displacement() {
        let obs = crate::observables::excitation_displacement_observable(5);
        let first = Counts::from_map(5, BTreeMap::from([("10000".to_string(), 1000)]));
        assert_eq!(estimate_observable_from_counts(&first, &obs).unwrap().value, 0.0);
        let last = Counts::from_map(5, BTreeMap::from([("00001".to_string(), 1000)]));
        assert_eq!(estimate_observable_from_counts(&last, &obs).unwrap().value, 4.0);
    }

    #[test]
    fn counts_reject_non_z() {
        let c = Counts::from_map(1, BTreeMap::from([("0".to_string(), 3)]));
        assert!(matches!(
            estimate_observable_from_counts(&c, &[PauliTerm::field(1.0, 1, Axis::X)]),
            Err(Error::BasisMismatch(_))
        ));
    }

    #[test]
    fn uniform_single_excitation_mean() {
        // W-like state: equal weight on the five single-excitation positions; ⟨N⟩ = 2.
        let n = 5;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for q in 0..n {
            amps[1 << (n - 1 - q)] = Complex64::new(1.0, 0.0);
        }
        let s = Statevector::from_amplitudes(amps);
        let obs = crate::observables::excitation_displacement_observable(n);
        assert!((s.expectation(&obs) - 2.0).abs() < 1e-12);
        let shots = 20_000;
        let e = estimate_observable_from_counts(&sample_counts(&s, shots, 11), &obs).unwrap();
        // Var(N) = E[N²] − 4 = (0+1+4+9+16)/5 − 4 = 2.
        let sigma = (2.0 / shots as f64).sqrt();
        assert!((e.value - 2.0).abs() <= 3.0 * sigma, "{e:?}");
        assert!((e.sigma - sigma).abs() < 0.1 * sigma);
    }

    #[test]
    fn grouped_shot_energy() {
        let h = HeisenbergHamiltonian::new(3)
            .with_uniform_bond(Axis::X, 1.0)
            .with_uniform_bond(Axis::Y, 0.5)
            .with_uniform_field(Axis::Z, -0.7)
            .snapshot(0.0);
        assert_eq!(measurement_groups(&h).len(), 3);
        let s = random_state(3, 5);
        let exact = s.expectation(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = estimate_with_shots(&s, &h, 200_000, &mut rng);
        assert!((e.value - exact).abs() <= 5.0 * e.sigma, "{e:?} vs {exact}");
    }

    #[test]
    fn shot_estimator_y_basis() {
        // RX(−π/2)|0⟩ points along +y.
        let s = run_statevector(&Program::from_gates(1, [Gate::rx(0, -FRAC_PI_2)]).unwrap()).unwrap();
        let y = PauliString::from_sparse(1, [(0, Pauli::Y)]);
        assert!((ExactEstimator.pauli(&s, &y) - 1.0).abs() < 1e-12);
        assert_eq!(ShotEstimator::new(1000, 0).pauli(&s, &y), 1.0);
    }

    #[test]
    fn guard() {
        assert!(StatevectorBackend { max_qubits: 3 }.run(&Program::new(4)).is_err());
        assert_eq!(registry().names(), vec!["QS"]);
    }

    proptest! {
        #[test]
        fn agrees_with_unitary(p in testing::program(5, 10)) {
            let s = run_statevector(&p).unwrap();
            let u = unitary_of(&p).unwrap();
            for (i, a) in s.amplitudes().iter().enumerate() {
                prop_assert!((a - u[(i, 0)]).norm() <= 1e-10);
            }
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12 * (p.len() as f64 + 1.0));
        }
    }
}
