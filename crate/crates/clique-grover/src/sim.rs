//! Execution backends: a dense state-vector simulator over the full
//! register, a classical bit-level evaluator for permutation circuits,
//! and a compiled-oracle backend that simulates only the data register
//! by evaluating the phase-flip predicate directly.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Control, Gate};
use crate::error::{Error, Result};
use crate::graph::{count_solutions, is_legal_clique, CliqueBits, Graph};

/// Dense amplitudes above 2^26 (~1 GiB) are refused.
pub const DENSE_MAX_QUBITS: usize = 26;
/// Compiled backend refuses data registers above this size.
pub const COMPILED_MAX_QUBITS: usize = 26;

/// Dense complex amplitude vector over 2^N basis states. Qubit 0 is the
/// most significant bit of the basis index, so basis labels read
/// left-to-right as q0 q1 ...
pub struct State {
    qubit_count: usize,
    amps: Vec<Complex64>,
}

impl State {
    /// Basis state given by the circuit's classical initialization.
    pub fn new(circuit: &Circuit) -> Result<State> {
        let n = circuit.qubit_count;
        if n > DENSE_MAX_QUBITS {
            return Err(Error::resource(format!(
                "dense backend limited to {DENSE_MAX_QUBITS} qubits, circuit has {n}"
            )));
        }
        let mut index = 0usize;
        for (q, &bit) in circuit.initial_bits.iter().enumerate() {
            if bit {
                index |= 1 << (n - 1 - q);
            }
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[index] = Complex64::ONE;
        Ok(State {
            qubit_count: n,
            amps,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn bit_mask(&self, qubit: usize) -> usize {
        1 << (self.qubit_count - 1 - qubit)
    }

    fn controls_satisfied(&self, index: usize, controls: &[Control]) -> bool {
        controls
            .iter()
            .all(|c| ((index & self.bit_mask(c.qubit)) != 0) != c.negated)
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.qubit_count {
                return Err(Error::domain(format!(
                    "gate references qubit {q} >= {}",
                    self.qubit_count
                )));
            }
        }
        match gate {
            Gate::H(q) => {
                let mask = self.bit_mask(*q);
                for idx in 0..self.amps.len() {
                    if idx & mask == 0 {
                        let a = self.amps[idx];
                        let b = self.amps[idx | mask];
                        self.amps[idx] = (a + b) * FRAC_1_SQRT_2;
                        self.amps[idx | mask] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::X(q) => {
                let mask = self.bit_mask(*q);
                for idx in 0..self.amps.len() {
                    if idx & mask == 0 {
                        self.amps.swap(idx, idx | mask);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                self.apply_controlled_flip(&[*control], *target);
            }
            Gate::Toffoli { controls, target } => {
                self.apply_controlled_flip(&controls[..], *target);
            }
            Gate::Psg(qubits) => {
                let mask = qubits
                    .iter()
                    .fold(0usize, |acc, &q| acc | self.bit_mask(q));
                for idx in 0..self.amps.len() {
                    if idx & mask != 0 {
                        self.amps[idx] = -self.amps[idx];
                    }
                }
            }
        }
        Ok(())
    }

    fn apply_controlled_flip(&mut self, controls: &[Control], target: usize) {
        let tmask = self.bit_mask(target);
        for idx in 0..self.amps.len() {
            if idx & tmask == 0 && self.controls_satisfied(idx, controls) {
                self.amps.swap(idx, idx | tmask);
            }
        }
    }

    /// Applies every gate of the circuit in order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.qubit_count != self.qubit_count {
            return Err(Error::domain(format!(
                "state has {} qubits, circuit {}",
                self.qubit_count, circuit.qubit_count
            )));
        }
        for gate in &circuit.gates {
            self.apply_gate(gate)?;
            debug_assert!(
                (self.norm_sq() - 1.0).abs() < 1e-9,
                "norm drifted after {gate:?}"
            );
        }
        Ok(())
    }

    /// Probability distribution over the listed qubits, summing out the
    /// rest. The first listed qubit is the most significant bit of the
    /// output label.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Distribution> {
        let mut seen = std::collections::HashSet::new();
        for &q in qubits {
            if q >= self.qubit_count {
                return Err(Error::domain(format!("qubit {q} out of range")));
            }
            if !seen.insert(q) {
                return Err(Error::domain(format!("duplicate qubit {q}")));
            }
        }
        let width = qubits.len();
        let mut probs = vec![0.0f64; 1 << width];
        for (idx, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut sub = 0usize;
            for (pos, &q) in qubits.iter().enumerate() {
                if idx & self.bit_mask(q) != 0 {
                    sub |= 1 << (width - 1 - pos);
                }
            }
            probs[sub] += p;
        }
        Distribution::new(width, probs)
    }

    /// Seeded draw from the marginal over the listed qubits.
    pub fn sample(&self, qubits: &[usize], seed: u64) -> Result<CliqueBits> {
        let dist = self.marginal(qubits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(dist.sample_with(&mut rng))
    }
}

/// Probability distribution over bitstrings of a fixed width.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    width: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(width: usize, probs: Vec<f64>) -> Result<Distribution> {
        assert_eq!(probs.len(), 1 << width);
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p < -1e-12) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "probabilities must be nonnegative and sum to 1, got sum {sum}"
            )));
        }
        Ok(Distribution { width, probs })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn prob_of_index(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn prob_of(&self, bits: &CliqueBits) -> f64 {
        assert_eq!(bits.len(), self.width);
        self.probs[bits.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (CliqueBits, f64)> + '_ {
        let width = self.width;
        self.probs
            .iter()
            .enumerate()
            .map(move |(idx, &p)| (CliqueBits::from_index(idx, width), p))
    }

    /// Entries in descending probability, ties broken lexicographically.
    pub fn sorted(&self) -> Vec<(CliqueBits, f64)> {
        let mut entries: Vec<(CliqueBits, f64)> = self.iter().collect();
        entries.sort_by(|(ab, ap), (bb, bp)| {
            bp.partial_cmp(ap).unwrap().then_with(|| ab.cmp(bb))
        });
        entries
    }

    /// The `bitstring probability` text form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (bits, p) in self.sorted() {
            out.push_str(&format!("{bits} {p:.9}\n"));
        }
        out
    }

    pub fn sample_with(&self, rng: &mut impl Rng) -> CliqueBits {
        let roll: f64 = rng.gen();
        let mut acc = 0.0;
        for (idx, &p) in self.probs.iter().enumerate() {
            acc += p;
            if roll < acc {
                return CliqueBits::from_index(idx, self.width);
            }
        }
        // roll landed in the rounding slack past the last nonzero bucket
        let last = self
            .probs
            .iter()
            .rposition(|&p| p > 0.0)
            .expect("distribution has mass");
        CliqueBits::from_index(last, self.width)
    }
}

/// Evaluates a permutation circuit (X/CNOT/TOFFOLI only) on classical
/// bits, starting from the circuit's initialization with the data bits
/// overridden by `data`. Returns the final bits of every qubit.
/// Errors on H or PSG.
pub fn evaluate_classical(circuit: &Circuit, data: &CliqueBits) -> Result<Vec<bool>> {
    let mut bits = circuit.initial_bits.clone();
    for k in 0..data.len() {
        bits[k] = data.contains_vertex(k + 1);
    }
    evaluate_classical_bits(circuit, &mut bits)?;
    Ok(bits)
}

/// Same as [`evaluate_classical`] but mutates caller-supplied bits.
pub fn evaluate_classical_bits(circuit: &Circuit, bits: &mut [bool]) -> Result<()> {
    if bits.len() != circuit.qubit_count {
        return Err(Error::domain("bit count does not match circuit"));
    }
    let fires = |bits: &[bool], controls: &[Control]| {
        controls.iter().all(|c| bits[c.qubit] != c.negated)
    };
    for gate in &circuit.gates {
        match gate {
            Gate::X(q) => bits[*q] = !bits[*q],
            Gate::Cnot { control, target } => {
                if fires(bits, &[*control]) {
                    bits[*target] = !bits[*target];
                }
            }
            Gate::Toffoli { controls, target } => {
                if fires(bits, controls) {
                    bits[*target] = !bits[*target];
                }
            }
            other => {
                return Err(Error::domain(format!(
                    "classical evaluation only supports permutation gates, found {other:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Grover run over the data register only: the oracle's ancilla logic
/// is replaced by direct evaluation of "legal clique of weight i", which
/// is valid because the pre-kickback circuit permutes basis states.
/// Returns the exact outcome distribution after k iterations.
pub fn compiled_oracle_run(g: &Graph, i: usize, k: usize) -> Result<Distribution> {
    let n = g.vertex_count();
    if n > COMPILED_MAX_QUBITS {
        return Err(Error::resource(format!(
            "compiled backend limited to {COMPILED_MAX_QUBITS} qubits, got {n}"
        )));
    }
    if i > n {
        return Err(Error::domain(format!("weight level {i} out of range")));
    }
    let size = 1usize << n;
    let targets: Vec<bool> = (0..size)
        .map(|idx| {
            let x = CliqueBits::from_index(idx, n);
            x.weight() == i && is_legal_clique(g, &x)
        })
        .collect();
    let mut amps = vec![1.0f64 / (size as f64).sqrt(); size];
    for _ in 0..k {
        for (a, &hit) in amps.iter_mut().zip(&targets) {
            if hit {
                *a = -*a;
            }
        }
        let mean = amps.iter().sum::<f64>() / size as f64;
        for a in amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    Distribution::new(n, amps.iter().map(|a| a * a).collect())
}

/// Total probability mass on legal cliques of weight `i`.
pub fn success_probability(g: &Graph, i: usize, dist: &Distribution) -> f64 {
    dist.iter()
        .filter(|(x, _)| x.weight() == i && is_legal_clique(g, x))
        .map(|(_, p)| p)
        .sum()
}

/// sin^2((2k+1) asin sqrt(M/N)): the exact Grover success law.
pub fn grover_law(n_qubits: usize, solutions: usize, k: usize) -> f64 {
    let n = (1usize << n_qubits) as f64;
    let theta = (solutions as f64 / n).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Convenience wrapper used by tests: the law evaluated with M taken
/// from the classical solution counter.
pub fn grover_law_for(g: &Graph, i: usize, k: usize) -> Result<f64> {
    let m = count_solutions(g, i)?;
    Ok(grover_law(g.vertex_count(), m, k))
}
