//! Gate-level IR and the circuit builders: uniform superposition,
//! illegal-clique exclusion, Hamming-weight classification, the
//! phase-kickback oracle, and the diffusion operator.
//!
//! Negated controls are first-class in the IR; they lower to X-sandwiches
//! only when circuits are counted or simulated.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One control line of a CNOT or Toffoli gate. `negated` means the gate
/// fires when the control qubit is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub negated: bool,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Control {
            qubit,
            negated: false,
        }
    }

    pub fn neg(qubit: usize) -> Self {
        Control {
            qubit,
            negated: true,
        }
    }
}

/// Gate alphabet. All members are self-inverse, so circuit reversal is
/// plain gate-order reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot { control: Control, target: usize },
    Toffoli { controls: [Control; 2], target: usize },
    /// Conditional phase shift over the data register:
    /// |x> -> -|x> for x != 0, |0> -> |0>.
    Psg(Vec<usize>),
}

impl Gate {
    /// All qubit indices the gate touches.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Cnot { control, target } => vec![control.qubit, *target],
            Gate::Toffoli { controls, target } => {
                vec![controls[0].qubit, controls[1].qubit, *target]
            }
            Gate::Psg(qs) => qs.clone(),
        }
    }

    /// Number of negated controls (0 for gates without controls).
    pub fn negated_controls(&self) -> usize {
        match self {
            Gate::Cnot { control, .. } => usize::from(control.negated),
            Gate::Toffoli { controls, .. } => {
                controls.iter().filter(|c| c.negated).count()
            }
            _ => 0,
        }
    }
}

/// An ordered gate list over a fixed qubit count, with the classical
/// initialization of every qubit and an optional symbol-to-index
/// register map for the textual format.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub qubit_count: usize,
    pub initial_bits: Vec<bool>,
    pub registers: Vec<(String, usize)>,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubit_count: usize, initial_bits: Vec<bool>) -> Self {
        assert_eq!(initial_bits.len(), qubit_count);
        Circuit {
            qubit_count,
            initial_bits,
            registers: Vec::new(),
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    /// Index bounds and per-gate distinctness checks.
    pub fn validate(&self) -> Result<()> {
        if self.initial_bits.len() != self.qubit_count {
            return Err(Error::domain("initial bit count != qubit count"));
        }
        for (pos, gate) in self.gates.iter().enumerate() {
            let qubits = gate.qubits();
            let mut seen = HashSet::new();
            for q in &qubits {
                if *q >= self.qubit_count {
                    return Err(Error::domain(format!(
                        "gate {pos} references qubit {q} >= {}",
                        self.qubit_count
                    )));
                }
                if !seen.insert(*q) {
                    return Err(Error::domain(format!(
                        "gate {pos} references qubit {q} twice"
                    )));
                }
            }
            if let Gate::Psg(qs) = gate {
                if qs.is_empty() {
                    return Err(Error::domain(format!("gate {pos}: PSG with no qubits")));
                }
            }
        }
        Ok(())
    }

    /// Gate list with every negated control lowered to an X-sandwich.
    pub fn lowered_gates(&self) -> Vec<Gate> {
        let mut out = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let negs: Vec<usize> = match gate {
                Gate::Cnot { control, .. } if control.negated => vec![control.qubit],
                Gate::Toffoli { controls, .. } => controls
                    .iter()
                    .filter(|c| c.negated)
                    .map(|c| c.qubit)
                    .collect(),
                _ => Vec::new(),
            };
            for &q in &negs {
                out.push(Gate::X(q));
            }
            out.push(match gate {
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: Control::pos(control.qubit),
                    target: *target,
                },
                Gate::Toffoli { controls, target } => Gate::Toffoli {
                    controls: [Control::pos(controls[0].qubit), Control::pos(controls[1].qubit)],
                    target: *target,
                },
                other => other.clone(),
            });
            for &q in negs.iter().rev() {
                out.push(Gate::X(q));
            }
        }
        out
    }
}

/// Reverses the gate order. Every gate in the alphabet is self-inverse,
/// so this is the exact inverse circuit.
pub fn reverse(c: &Circuit) -> Circuit {
    let mut out = c.clone();
    out.gates.reverse();
    out
}

/// Qubit assignment for the full pipeline: data register `x_1..x_n`,
/// complement-edge flags `e_1..e_m`, the AND-chain `c_0..c_m` (present
/// only when m >= 1), the Hamming-weight grid `z_{i,j}` for
/// 1 <= i <= n, 0 <= j <= i, and the oracle qubit `O` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n: usize,
    pub m: usize,
    total: usize,
}

impl RegisterLayout {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("layout requires n >= 1"));
        }
        if m > n * (n - 1) / 2 {
            return Err(Error::domain(format!(
                "m = {m} exceeds n(n-1)/2 for n = {n}"
            )));
        }
        let z_qubits = n * (n + 3) / 2;
        let total = if m >= 1 {
            n + 2 * m + 2 + z_qubits
        } else {
            n + 1 + z_qubits
        };
        Ok(RegisterLayout { n, m, total })
    }

    pub fn for_graph(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let m = n * (n - 1) / 2 - g.edge_count();
        RegisterLayout::new(n, m)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Data qubit of vertex `v_k`, 1-based.
    pub fn x(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= self.n);
        k - 1
    }

    pub fn data_qubits(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    /// Complement-edge flag qubit `e_k`, 1-based; initialized |1>.
    pub fn ebar(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= self.m);
        self.n + k - 1
    }

    /// Chain qubit `c_k`, 0 <= k <= m; only present when m >= 1.
    pub fn c(&self, k: usize) -> usize {
        assert!(self.m >= 1 && k <= self.m);
        self.n + self.m + k
    }

    fn z_base(&self) -> usize {
        if self.m >= 1 {
            self.n + 2 * self.m + 1
        } else {
            self.n
        }
    }

    /// Weight-grid qubit `z_{i,j}`, 1 <= i <= n, 0 <= j <= i.
    pub fn z(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i <= self.n && j <= i);
        // rows 1..i-1 occupy (i-1)(i+2)/2 slots
        self.z_base() + (i - 1) * (i + 2) / 2 + j
    }

    /// Oracle qubit, initialized |1>.
    pub fn oracle(&self) -> usize {
        self.total - 1
    }

    /// e_k, c_0 and O start in |1>; everything else in |0>.
    pub fn initial_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.total];
        for k in 1..=self.m {
            bits[self.ebar(k)] = true;
        }
        if self.m >= 1 {
            bits[self.c(0)] = true;
        }
        bits[self.oracle()] = true;
        bits
    }

    /// Symbol-to-index map for the textual circuit format.
    pub fn register_map(&self) -> Vec<(String, usize)> {
        let mut map = Vec::new();
        for k in 1..=self.n {
            map.push((format!("x{k}"), self.x(k)));
        }
        for k in 1..=self.m {
            map.push((format!("e{k}"), self.ebar(k)));
        }
        if self.m >= 1 {
            for k in 0..=self.m {
                map.push((format!("c{k}"), self.c(k)));
            }
        }
        for i in 1..=self.n {
            for j in 0..=i {
                map.push((format!("z{i}_{j}"), self.z(i, j)));
            }
        }
        map.push(("O".to_string(), self.oracle()));
        map
    }

    fn empty_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.total, self.initial_bits());
        c.registers = self.register_map();
        c
    }
}

/// One Hadamard per data qubit.
pub fn build_superposition(layout: &RegisterLayout) -> Circuit {
    let mut c = layout.empty_circuit();
    for k in 1..=layout.n {
        c.push(Gate::H(layout.x(k)));
    }
    c
}

/// Marks illegal cliques through the complement edges: for the k-th
/// complement edge (v_i, v_j), `e_k` (preset |1>) picks up
/// NOT(x_i AND x_j), and the chain `c_k = e_k AND c_{k-1}` accumulates
/// the conjunction. `c_m` ends up 1 exactly on legal cliques.
/// 2m Toffoli gates; empty when the complement has no edges.
pub fn build_exclusion(g: &Graph, layout: &RegisterLayout) -> Result<Circuit> {
    let expected = RegisterLayout::for_graph(g)?;
    if *layout != expected {
        return Err(Error::domain("layout does not match graph"));
    }
    let mut c = layout.empty_circuit();
    for (k, (vi, vj)) in g.complement().edges().enumerate() {
        let k = k + 1;
        c.push(Gate::Toffoli {
            controls: [Control::pos(layout.x(vi)), Control::pos(layout.x(vj))],
            target: layout.ebar(k),
        });
        c.push(Gate::Toffoli {
            controls: [Control::pos(layout.ebar(k)), Control::pos(layout.c(k - 1))],
            target: layout.c(k),
        });
    }
    Ok(c)
}

/// Classifies legal cliques by Hamming weight into the z grid. Row 1
/// gates are controlled on the legal flag (`c_m` when m >= 1, otherwise
/// the rows degrade to CNOTs); each later row splits row i on the value
/// of `x_{i+1}`. After the circuit, `z_{n,j} = 1` iff the input is a
/// legal clique of weight j.
pub fn build_classifier(layout: &RegisterLayout) -> Circuit {
    let mut c = layout.empty_circuit();
    if layout.m >= 1 {
        let legal = layout.c(layout.m);
        c.push(Gate::Toffoli {
            controls: [Control::pos(legal), Control::pos(layout.x(1))],
            target: layout.z(1, 1),
        });
        c.push(Gate::Toffoli {
            controls: [Control::pos(legal), Control::neg(layout.x(1))],
            target: layout.z(1, 0),
        });
    } else {
        c.push(Gate::Cnot {
            control: Control::pos(layout.x(1)),
            target: layout.z(1, 1),
        });
        c.push(Gate::Cnot {
            control: Control::neg(layout.x(1)),
            target: layout.z(1, 0),
        });
    }
    for i in 1..layout.n {
        for j in 0..=i {
            c.push(Gate::Toffoli {
                controls: [
                    Control::pos(layout.x(i + 1)),
                    Control::pos(layout.z(i, j)),
                ],
                target: layout.z(i + 1, j + 1),
            });
            c.push(Gate::Toffoli {
                controls: [
                    Control::neg(layout.x(i + 1)),
                    Control::pos(layout.z(i, j)),
                ],
                target: layout.z(i + 1, j),
            });
        }
    }
    c
}

/// Compute / kick back / uncompute. With `O` held in |->, the composite
/// flips the sign of exactly the legal cliques of weight `i` and
/// restores every ancilla to its initial bit.
pub fn build_oracle(g: &Graph, layout: &RegisterLayout, i: usize) -> Result<Circuit> {
    if i > layout.n {
        return Err(Error::domain(format!(
            "weight level {i} out of range [0, {}]",
            layout.n
        )));
    }
    let exclusion = build_exclusion(g, layout)?;
    let classifier = build_classifier(layout);
    let mut c = layout.empty_circuit();
    c.extend(exclusion.gates.iter().cloned());
    c.extend(classifier.gates.iter().cloned());
    c.push(Gate::Cnot {
        control: Control::pos(layout.z(layout.n, i)),
        target: layout.oracle(),
    });
    c.extend(reverse(&classifier).gates);
    c.extend(reverse(&exclusion).gates);
    Ok(c)
}

/// H^n . PSG . H^n on the data register: inversion about the mean.
pub fn build_diffusion(layout: &RegisterLayout) -> Circuit {
    let mut c = layout.empty_circuit();
    for k in 1..=layout.n {
        c.push(Gate::H(layout.x(k)));
    }
    c.push(Gate::Psg(layout.data_qubits()));
    for k in 1..=layout.n {
        c.push(Gate::H(layout.x(k)));
    }
    c
}

/// Full Grover run at weight level `i`: superposition, H on `O` (into
/// |->), `k` iterations of oracle + diffusion, and a final H returning
/// `O` to |1>.
pub fn build_grover_circuit(g: &Graph, i: usize, k: usize) -> Result<Circuit> {
    let layout = RegisterLayout::for_graph(g)?;
    let oracle = build_oracle(g, &layout, i)?;
    let diffusion = build_diffusion(&layout);
    let mut c = build_superposition(&layout);
    c.push(Gate::H(layout.oracle()));
    for _ in 0..k {
        c.extend(oracle.gates.iter().cloned());
        c.extend(diffusion.gates.iter().cloned());
    }
    c.push(Gate::H(layout.oracle()));
    Ok(c)
}

/// The hand-reduced four-qubit circuit for the two-vertex, one-edge
/// graph: qubits (x1, x2, z, O) initialized 0,0,0,1. One Grover
/// iteration suffices; the ideal run ends in basis state 1101.
pub fn build_g21_reduced() -> Circuit {
    let mut c = Circuit::new(4, vec![false, false, false, true]);
    c.registers = vec![
        ("x1".into(), 0),
        ("x2".into(), 1),
        ("z1_1".into(), 2),
        ("O".into(), 3),
    ];
    c.push(Gate::H(0));
    c.push(Gate::H(1));
    c.push(Gate::H(3));
    c.push(Gate::Toffoli {
        controls: [Control::pos(0), Control::pos(1)],
        target: 2,
    });
    c.push(Gate::Cnot {
        control: Control::pos(2),
        target: 3,
    });
    c.push(Gate::Toffoli {
        controls: [Control::pos(0), Control::pos(1)],
        target: 2,
    });
    c.push(Gate::H(0));
    c.push(Gate::H(1));
    c.push(Gate::Psg(vec![0, 1]));
    c.push(Gate::H(0));
    c.push(Gate::H(1));
    c.push(Gate::H(3));
    c
}
