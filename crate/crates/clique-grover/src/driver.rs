//! Top-level solve procedure: descend Hamming-weight levels from n,
//! run Grover at each level, measure, classically verify, and stop at
//! the first level with a verified solution.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{build_grover_circuit, RegisterLayout};
use crate::error::{Error, Result};
use crate::graph::{count_solutions, is_legal_clique, CliqueBits, Graph};
use crate::sim::{compiled_oracle_run, Distribution, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Compiled,
}

/// Whether the per-level solution count M is taken from the classical
/// oracle or handled by the adaptive unknown-M schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MMode {
    Known,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub backend: Backend,
    pub m_mode: MMode,
    pub attempts_per_level: usize,
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            backend: Backend::Compiled,
            m_mode: MMode::Known,
            attempts_per_level: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Attempt {
    pub k: usize,
    pub sample: CliqueBits,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub level: usize,
    /// M at this level when known; None in unknown-M mode.
    pub solutions: Option<usize>,
    pub skipped: bool,
    pub attempts: Vec<Attempt>,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub clique_size: usize,
    pub witnesses: BTreeSet<CliqueBits>,
    pub trace: Vec<LevelTrace>,
    pub oracle_calls: usize,
}

impl SolveResult {
    /// Human-readable report.
    pub fn report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "clique size: {}", self.clique_size).unwrap();
        let names: Vec<String> = self.witnesses.iter().map(|w| w.to_string()).collect();
        writeln!(out, "witnesses: {}", names.join(" ")).unwrap();
        writeln!(out, "oracle calls: {}", self.oracle_calls).unwrap();
        for level in &self.trace {
            if level.skipped {
                writeln!(out, "level={} skipped m=0", level.level).unwrap();
                continue;
            }
            for a in &level.attempts {
                writeln!(
                    out,
                    "level={} k={} sample={} verified={}",
                    level.level, a.k, a.sample, a.verified
                )
                .unwrap();
            }
        }
        out
    }

    /// Machine-readable key-value form.
    pub fn machine_report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "clique_size={}", self.clique_size).unwrap();
        for w in &self.witnesses {
            writeln!(out, "witness={w}").unwrap();
        }
        writeln!(out, "oracle_calls={}", self.oracle_calls).unwrap();
        for level in &self.trace {
            if level.skipped {
                writeln!(out, "trace level={} skipped=true", level.level).unwrap();
            }
            for a in &level.attempts {
                writeln!(
                    out,
                    "trace level={} k={} sample={} verified={}",
                    level.level, a.k, a.sample, a.verified
                )
                .unwrap();
            }
        }
        out
    }
}

/// Optimal Grover iterate: round(pi / (4 asin sqrt(M/N)) - 1/2),
/// clamped to >= 0.
pub fn iterations_for(n_states: usize, solutions: usize) -> Result<usize> {
    if solutions == 0 || solutions > n_states {
        return Err(Error::domain(format!(
            "solution count {solutions} out of range [1, {n_states}]"
        )));
    }
    let theta = ((solutions as f64) / (n_states as f64)).sqrt().asin();
    let k = (PI / (4.0 * theta) - 0.5).round();
    Ok(k.max(0.0) as usize)
}

/// True iff `x` has weight `i` and is a clique of `g`.
pub fn verify_candidate(g: &Graph, x: &CliqueBits, i: usize) -> bool {
    assert_eq!(x.len(), g.vertex_count(), "bit string length mismatch");
    x.weight() == i && is_legal_clique(g, x)
}

fn run_level(g: &Graph, i: usize, k: usize, backend: Backend) -> Result<Distribution> {
    match backend {
        Backend::Compiled => compiled_oracle_run(g, i, k),
        Backend::Dense => {
            let layout = RegisterLayout::for_graph(g)?;
            let circuit = build_grover_circuit(g, i, k)?;
            let mut state = State::new(&circuit)?;
            state.run(&circuit)?;
            state.marginal(&layout.data_qubits())
        }
    }
}

/// Solves the maximal clique problem by level descent. Every returned
/// witness passes classical verification; the witness set is completed
/// to all maximum cliques once the winning level is verified.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveResult> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    // fail fast before any 2^n enumeration (count_solutions, witnesses)
    let guard = match cfg.backend {
        Backend::Compiled => crate::sim::COMPILED_MAX_QUBITS,
        Backend::Dense => crate::sim::DENSE_MAX_QUBITS,
    };
    if n > guard || (cfg.backend == Backend::Dense && RegisterLayout::for_graph(g)?.total() > guard)
    {
        return Err(Error::resource(format!(
            "graph with {n} vertices exceeds the {:?} backend guard",
            cfg.backend
        )));
    }
    if cfg.attempts_per_level == 0 {
        return Err(Error::domain("attempts_per_level must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trace = Vec::new();
    let mut oracle_calls = 0usize;

    for i in (1..=n).rev() {
        match cfg.m_mode {
            MMode::Known => {
                let m = count_solutions(g, i)?;
                if m == 0 {
                    trace.push(LevelTrace {
                        level: i,
                        solutions: Some(0),
                        skipped: true,
                        attempts: Vec::new(),
                    });
                    continue;
                }
                let k = iterations_for(1 << n, m)?;
                let mut attempts = Vec::new();
                let mut found = None;
                for _ in 0..cfg.attempts_per_level {
                    let dist = run_level(g, i, k, cfg.backend)?;
                    let sample = dist.sample_with(&mut rng);
                    oracle_calls += k;
                    let verified = verify_candidate(g, &sample, i);
                    attempts.push(Attempt {
                        k,
                        sample: sample.clone(),
                        verified,
                    });
                    if verified {
                        found = Some(sample);
                        break;
                    }
                }
                trace.push(LevelTrace {
                    level: i,
                    solutions: Some(m),
                    skipped: false,
                    attempts,
                });
                if found.is_some() {
                    return finish(g, i, trace, oracle_calls);
                }
            }
            MMode::Unknown => {
                // Boyer et al. schedule: grow the iterate window by 6/5
                // per failure, capped at sqrt(N); stop the level after
                // ceil(9.2 sqrt(N)) total iterations.
                let n_states = (1usize << n) as f64;
                let budget = (9.2 * n_states.sqrt()).ceil() as usize;
                let mut window = 1.0f64;
                let mut spent = 0usize;
                let mut attempts = Vec::new();
                let mut found = None;
                loop {
                    let k = rng.gen_range(0..window.ceil() as usize + 1);
                    let dist = run_level(g, i, k, cfg.backend)?;
                    let sample = dist.sample_with(&mut rng);
                    oracle_calls += k;
                    spent += k.max(1);
                    let verified = verify_candidate(g, &sample, i);
                    attempts.push(Attempt {
                        k,
                        sample: sample.clone(),
                        verified,
                    });
                    if verified {
                        found = Some(sample);
                        break;
                    }
                    window = (window * 1.2).min(n_states.sqrt());
                    if spent > budget {
                        break;
                    }
                }
                trace.push(LevelTrace {
                    level: i,
                    solutions: None,
                    skipped: false,
                    attempts,
                });
                if found.is_some() {
                    return finish(g, i, trace, oracle_calls);
                }
            }
        }
    }
    // unreachable for well-formed inputs: level 1 always has M >= 1 and
    // the level-1 distribution has support only on verifiable strings in
    // known-M mode, but the unknown-M schedule can exhaust its budget
    Err(Error::domain(
        "no verified solution found at any level; increase attempts",
    ))
}

fn finish(
    g: &Graph,
    size: usize,
    trace: Vec<LevelTrace>,
    oracle_calls: usize,
) -> Result<SolveResult> {
    let n = g.vertex_count();
    let mut witnesses = BTreeSet::new();
    for index in 0..(1usize << n) {
        let x = CliqueBits::from_index(index, n);
        if verify_candidate(g, &x, size) {
            witnesses.insert(x);
        }
    }
    debug_assert!(witnesses.iter().all(|w| verify_candidate(g, w, size)));
    Ok(SolveResult {
        clique_size: size,
        witnesses,
        trace,
        oracle_calls,
    })
}
