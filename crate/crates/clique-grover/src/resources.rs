//! Exact gate and qubit accounting for synthesized circuits, the
//! closed-form complexity estimates, and the 3-SAT reduction-size
//! calculator.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, RegisterLayout};
use crate::error::{Error, Result};

/// Per-kind gate tallies after negated-control lowering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub h: usize,
    pub x: usize,
    pub cnot: usize,
    pub toffoli: usize,
    pub psg: usize,
}

impl GateCounts {
    fn add(&mut self, other: &GateCounts) {
        self.h += other.h;
        self.x += other.x;
        self.cnot += other.cnot;
        self.toffoli += other.toffoli;
        self.psg += other.psg;
    }
}

/// Exact resource tally for a circuit, with an optional per-stage
/// breakdown when the circuit was assembled from named stages.
#[derive(Clone, Debug, PartialEq)]
pub struct ResourceReport {
    pub counts: GateCounts,
    pub qubit_total: usize,
    pub measurements: usize,
    pub stages: Vec<(String, GateCounts)>,
}

impl ResourceReport {
    /// Aligned text table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<14} {:>8}", "qubits", self.qubit_total).unwrap();
        writeln!(out, "{:<14} {:>8}", "H", self.counts.h).unwrap();
        writeln!(out, "{:<14} {:>8}", "X", self.counts.x).unwrap();
        writeln!(out, "{:<14} {:>8}", "CNOT", self.counts.cnot).unwrap();
        writeln!(out, "{:<14} {:>8}", "TOFFOLI", self.counts.toffoli).unwrap();
        writeln!(out, "{:<14} {:>8}", "PSG", self.counts.psg).unwrap();
        writeln!(out, "{:<14} {:>8}", "measurements", self.measurements).unwrap();
        for (name, c) in &self.stages {
            writeln!(
                out,
                "stage {name}: H={} X={} CNOT={} TOFFOLI={} PSG={}",
                c.h, c.x, c.cnot, c.toffoli, c.psg
            )
            .unwrap();
        }
        out
    }

    /// Machine-readable key-value form.
    pub fn machine_render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "qubits={}", self.qubit_total).unwrap();
        writeln!(out, "h={}", self.counts.h).unwrap();
        writeln!(out, "x={}", self.counts.x).unwrap();
        writeln!(out, "cnot={}", self.counts.cnot).unwrap();
        writeln!(out, "toffoli={}", self.counts.toffoli).unwrap();
        writeln!(out, "psg={}", self.counts.psg).unwrap();
        writeln!(out, "measurements={}", self.measurements).unwrap();
        out
    }
}

fn count_lowered(gates: &[Gate]) -> GateCounts {
    let mut c = GateCounts::default();
    for gate in gates {
        match gate {
            Gate::H(_) => c.h += 1,
            Gate::X(_) => c.x += 1,
            Gate::Cnot { .. } => c.cnot += 1,
            Gate::Toffoli { .. } => c.toffoli += 1,
            Gate::Psg(_) => c.psg += 1,
        }
    }
    c
}

/// Exact gate tallies; each negated-control gate counts as itself plus
/// two X gates.
pub fn count_gates(c: &Circuit) -> ResourceReport {
    ResourceReport {
        counts: count_lowered(&c.lowered_gates()),
        qubit_total: c.qubit_count,
        measurements: 0,
        stages: Vec::new(),
    }
}

/// Gate tallies for one full Grover run at level `i` with `k`
/// iterations, broken down by pipeline stage.
pub fn grover_report(g: &crate::graph::Graph, i: usize, k: usize) -> Result<ResourceReport> {
    use crate::circuit as cb;
    let layout = RegisterLayout::for_graph(g)?;
    let superposition = cb::build_superposition(&layout);
    let exclusion = cb::build_exclusion(g, &layout)?;
    let classifier = cb::build_classifier(&layout);
    let diffusion = cb::build_diffusion(&layout);

    let excl = count_lowered(&exclusion.lowered_gates());
    let class = count_lowered(&classifier.lowered_gates());
    let kick = GateCounts {
        cnot: 1,
        ..GateCounts::default()
    };
    let mut oracle = GateCounts::default();
    oracle.add(&excl);
    oracle.add(&class);
    oracle.add(&kick);
    let mut uncompute = GateCounts::default();
    uncompute.add(&class);
    uncompute.add(&excl);

    let mut stages = vec![(
        "superposition".to_string(),
        count_lowered(&superposition.lowered_gates()),
    )];
    stages.push((
        "oracle_prep".to_string(),
        GateCounts {
            h: 2, // H(O) in and out of |->
            ..GateCounts::default()
        },
    ));
    for name in ["exclusion", "classifier"] {
        let c = if name == "exclusion" { excl } else { class };
        let mut scaled = GateCounts::default();
        for _ in 0..k {
            scaled.add(&c);
        }
        stages.push((name.to_string(), scaled));
    }
    let mut kicks = GateCounts::default();
    let mut uncomputes = GateCounts::default();
    let mut diffusions = GateCounts::default();
    let diff = count_lowered(&diffusion.lowered_gates());
    for _ in 0..k {
        kicks.add(&kick);
        uncomputes.add(&uncompute);
        diffusions.add(&diff);
    }
    stages.push(("kickback".to_string(), kicks));
    stages.push(("uncompute".to_string(), uncomputes));
    stages.push(("diffusion".to_string(), diffusions));

    let whole = cb::build_grover_circuit(g, i, k)?;
    let totals = count_lowered(&whole.lowered_gates());
    let mut from_stages = GateCounts::default();
    for (_, c) in &stages {
        from_stages.add(c);
    }
    debug_assert_eq!(totals, from_stages, "stage breakdown must sum to totals");

    Ok(ResourceReport {
        counts: totals,
        qubit_total: layout.total(),
        measurements: 1,
        stages,
    })
}

/// Qubit total for an n-vertex graph whose complement has m edges:
/// 2m + n + 2 + n(n+3)/2 when the e/c registers are present (m >= 1),
/// n + 1 + n(n+3)/2 when they are omitted (m = 0).
pub fn qubit_count(n: usize, m: usize) -> Result<usize> {
    Ok(RegisterLayout::new(n, m)?.total())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateCase {
    /// One run at a single weight level.
    Single,
    /// All n levels descended.
    Worst,
    /// Expected descent depth (n+1)/2 levels.
    Average,
}

/// Leading term of one gate-kind's count: `coeff * 2^(n/2) + additive`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingTerm {
    pub coeff: f64,
    pub additive: f64,
}

/// Closed-form asymptotic gate counts per kind.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    pub h: LeadingTerm,
    pub x: LeadingTerm,
    pub cnot: LeadingTerm,
    pub toffoli: LeadingTerm,
    pub psg: LeadingTerm,
    pub measurements: f64,
}

impl AsymptoticReport {
    fn scale(&self, factor: f64) -> AsymptoticReport {
        let s = |t: LeadingTerm| LeadingTerm {
            coeff: t.coeff * factor,
            additive: t.additive * factor,
        };
        AsymptoticReport {
            h: s(self.h),
            x: s(self.x),
            cnot: s(self.cnot),
            toffoli: s(self.toffoli),
            psg: s(self.psg),
            measurements: self.measurements * factor,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut row = |name: &str, t: LeadingTerm| {
            writeln!(out, "{name:<8} {}*2^(n/2) + {}", t.coeff, t.additive).unwrap();
        };
        row("H", self.h);
        row("X", self.x);
        row("CNOT", self.cnot);
        row("TOFFOLI", self.toffoli);
        row("PSG", self.psg);
        writeln!(out, "measurements {}", self.measurements).unwrap();
        out
    }
}

/// Closed-form leading-term gate counts for a single run, the worst
/// case (n runs) and the average case ((n+1)/2 runs).
pub fn appendix_estimate(n: usize, m: usize, case: EstimateCase) -> Result<AsymptoticReport> {
    if n == 0 || m > n * (n - 1) / 2 {
        return Err(Error::domain("arguments out of range"));
    }
    let nf = n as f64;
    let mf = m as f64;
    let single = AsymptoticReport {
        h: LeadingTerm {
            coeff: 2.0 * nf,
            additive: nf + 1.0,
        },
        x: LeadingTerm {
            coeff: 2.0 * (nf * nf + nf),
            additive: 0.0,
        },
        cnot: LeadingTerm {
            coeff: 1.0,
            additive: 0.0,
        },
        toffoli: LeadingTerm {
            coeff: 4.0 * mf + 2.0 * (nf * nf + nf),
            additive: 0.0,
        },
        psg: LeadingTerm {
            coeff: 1.0,
            additive: 0.0,
        },
        measurements: 1.0,
    };
    Ok(match case {
        EstimateCase::Single => single,
        EstimateCase::Worst => single.scale(nf),
        EstimateCase::Average => single.scale((nf + 1.0) / 2.0),
    })
}

/// Size of the clique instance produced by the standard 3-SAT
/// reduction: 2n + 3m vertices and
/// (2n+3m)(2n+3m-1)/2 - (n+6m) edges for n variables and m clauses.
pub fn sat_reduction_size(nvars: u64, nclauses: u64) -> Result<(u64, u64)> {
    if nvars == 0 || nclauses == 0 {
        return Err(Error::domain("need at least one variable and one clause"));
    }
    let vertices = 2 * nvars + 3 * nclauses;
    let edges = vertices * (vertices - 1) / 2 - (nvars + 6 * nclauses);
    Ok((vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_classifier, build_exclusion, build_grover_circuit};
    use crate::graph::Graph;

    #[test]
    fn exclusion_count_is_2m() {
        let g = Graph::six_vertex_example(); // m = 4
        let layout = RegisterLayout::for_graph(&g).unwrap();
        let report = count_gates(&build_exclusion(&g, &layout).unwrap());
        assert_eq!(report.counts.toffoli, 8);
        assert_eq!(report.counts.x, 0);
    }

    #[test]
    fn classifier_count_is_n_n_plus_1() {
        let layout = RegisterLayout::new(3, 1).unwrap();
        let report = count_gates(&build_classifier(&layout));
        assert_eq!(report.counts.toffoli, 12);
        assert_eq!(report.counts.x, 12);
    }

    #[test]
    fn grover_circuit_counts_closed_form() {
        for (g, k) in [
            (Graph::path3(), 1usize),
            (Graph::path3(), 3),
            (Graph::six_vertex_example(), 2),
        ] {
            let n = g.vertex_count();
            let m = n * (n - 1) / 2 - g.edge_count();
            let report = count_gates(&build_grover_circuit(&g, 2, k).unwrap());
            assert_eq!(report.counts.toffoli, k * (4 * m + 2 * n * (n + 1)));
            assert_eq!(report.counts.cnot, k);
            assert_eq!(report.counts.psg, k);
            assert_eq!(report.counts.h, n + 2 + 2 * n * k);
            assert_eq!(report.counts.x, 2 * n * (n + 1) * k);
        }
    }

    #[test]
    fn grover_report_stages_sum() {
        let g = Graph::six_vertex_example();
        let report = grover_report(&g, 4, 2).unwrap();
        let mut total = GateCounts::default();
        for (_, c) in &report.stages {
            total.add(c);
        }
        assert_eq!(total, report.counts);
        assert_eq!(report.measurements, 1);
    }

    #[test]
    fn qubit_count_examples() {
        assert_eq!(qubit_count(3, 1).unwrap(), 16);
        assert_eq!(qubit_count(6, 4).unwrap(), 43);
        assert_eq!(qubit_count(2, 0).unwrap(), 8);
        assert!(qubit_count(0, 0).is_err());
        assert!(qubit_count(2, 3).is_err());
    }

    #[test]
    fn qubit_count_matches_layouts() {
        for n in 1..=8usize {
            for m in 0..=(n * (n - 1) / 2) {
                assert_eq!(
                    qubit_count(n, m).unwrap(),
                    RegisterLayout::new(n, m).unwrap().total()
                );
            }
        }
    }

    #[test]
    fn estimate_single_toffoli_coefficient() {
        let (n, m) = (5usize, 4usize);
        let report = appendix_estimate(n, m, EstimateCase::Single).unwrap();
        assert_eq!(report.toffoli.coeff, (4 * m + 2 * (n * n + n)) as f64);
        assert_eq!(report.cnot.coeff, 1.0);
        assert_eq!(report.h.coeff, (2 * n) as f64);
        assert_eq!(report.h.additive, (n + 1) as f64);
    }

    #[test]
    fn estimate_worst_is_n_times_single() {
        let (n, m) = (6usize, 3usize);
        let single = appendix_estimate(n, m, EstimateCase::Single).unwrap();
        let worst = appendix_estimate(n, m, EstimateCase::Worst).unwrap();
        assert_eq!(worst, single.scale(n as f64));
    }

    #[test]
    fn estimate_average_worst_ratio() {
        let (n, m) = (7usize, 5usize);
        let worst = appendix_estimate(n, m, EstimateCase::Worst).unwrap();
        let average = appendix_estimate(n, m, EstimateCase::Average).unwrap();
        let ratio = (n as f64 + 1.0) / (2.0 * n as f64);
        assert!((average.toffoli.coeff / worst.toffoli.coeff - ratio).abs() < 1e-12);
        assert!((average.measurements / worst.measurements - ratio).abs() < 1e-12);
    }

    #[test]
    fn sat_reduction_examples() {
        assert_eq!(sat_reduction_size(3, 2).unwrap(), (12, 51));
        assert_eq!(sat_reduction_size(1, 1).unwrap(), (5, 3));
        assert!(sat_reduction_size(0, 1).is_err());
        assert!(sat_reduction_size(1, 0).is_err());
    }

    #[test]
    fn sat_reduction_vertices_linear() {
        let (v1, _) = sat_reduction_size(2, 3).unwrap();
        let (v2, _) = sat_reduction_size(3, 3).unwrap();
        let (v3, _) = sat_reduction_size(2, 4).unwrap();
        assert_eq!(v2 - v1, 2);
        assert_eq!(v3 - v1, 3);
    }

    #[test]
    fn iteration_count_scaling_is_sqrt() {
        // log2 k grows by ~0.5 per unit of n at fixed M
        use crate::driver::iterations_for;
        let mut slopes = Vec::new();
        for n in 4..12usize {
            let k1 = iterations_for(1 << n, 1).unwrap() as f64;
            let k2 = iterations_for(1 << (n + 1), 1).unwrap() as f64;
            slopes.push((k2 / k1).log2());
        }
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        assert!((mean - 0.5).abs() < 0.05, "mean slope {mean}");
    }
}
