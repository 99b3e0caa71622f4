//! Command-line front end: solve clique instances, synthesize and
//! simulate circuits, print resource reports, and reproduce the
//! classifier truth table for the worked three-vertex example.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clique_grover::circuit::{
    build_classifier, build_exclusion, build_g21_reduced, build_grover_circuit, RegisterLayout,
};
use clique_grover::driver::{self, Backend, MMode, SolveConfig};
use clique_grover::error::Error;
use clique_grover::format;
use clique_grover::graph::{max_cliques_bruteforce, parse_dimacs, CliqueBits, Graph};
use clique_grover::resources::{
    appendix_estimate, count_gates, grover_report, qubit_count, sat_reduction_size, EstimateCase,
};
use clique_grover::sim::{compiled_oracle_run, evaluate_classical, State};

#[derive(Parser)]
#[command(name = "clique-grover", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Dense,
    Compiled,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Dense => Backend::Dense,
            BackendArg::Compiled => Backend::Compiled,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MModeArg {
    Known,
    Unknown,
}

#[derive(Args)]
struct OutputOpts {
    /// Emit the machine-readable form.
    #[arg(long)]
    machine: bool,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the maximal clique problem of a DIMACS graph.
    Solve {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "compiled")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "known")]
        m_mode: MModeArg,
        #[arg(long, default_value_t = 3)]
        attempts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit the Grover circuit for a graph in the textual format.
    Synth {
        graph: Option<PathBuf>,
        /// Hamming-weight level (defaults to n).
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Emit the hand-reduced four-qubit circuit instead.
        #[arg(long)]
        g21_reduced: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Simulate a circuit file or a built pipeline and print the
    /// outcome distribution.
    Simulate {
        /// DIMACS graph to build the pipeline from.
        graph: Option<PathBuf>,
        /// Circuit file in the textual format (dense simulation over
        /// all qubits).
        #[arg(long, conflicts_with = "graph")]
        circuit: Option<PathBuf>,
        /// Simulate the hand-reduced four-qubit circuit.
        #[arg(long, conflicts_with_all = ["graph", "circuit"])]
        g21_reduced: bool,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long, value_enum, default_value = "compiled")]
        backend: BackendArg,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print exact gate counts, the qubit formula, and the closed-form
    /// estimates; or the 3-SAT reduction size.
    Resources {
        graph: Option<PathBuf>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// 3-SAT variable count for the reduction calculator.
        #[arg(long, requires = "sat_clauses")]
        sat_vars: Option<u64>,
        /// 3-SAT clause count for the reduction calculator.
        #[arg(long, requires = "sat_vars")]
        sat_clauses: Option<u64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run solve and brute force and diff the results.
    Verify {
        graph: Option<PathBuf>,
        /// Verify seeded random graphs of this size instead.
        #[arg(long, conflicts_with = "graph")]
        random_n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "compiled")]
        backend: BackendArg,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the classifier truth table for the three-vertex worked
    /// example (two edges, one complement edge).
    Table1 {
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)?;
    parse_dimacs(&text)
}

fn write_output(opts: &OutputOpts, text: &str) -> Result<(), Error> {
    match &opts.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Truth-table rows for the worked example: per input x, the
/// complement-edge flag and the full z grid after exclusion and
/// classification, evaluated classically.
fn table1_text() -> Result<String, Error> {
    let g = Graph::path3();
    let layout = RegisterLayout::for_graph(&g)?;
    let mut circuit = build_exclusion(&g, &layout)?;
    circuit.extend(build_classifier(&layout).gates);

    let mut out = String::new();
    out.push_str("x1 x2 x3  e1  z1,1 z1,0  z2,2 z2,1 z2,0  z3,3 z3,2 z3,1 z3,0\n");
    for idx in 0..8usize {
        let x = CliqueBits::from_index(idx, 3);
        let bits = evaluate_classical(&circuit, &x)?;
        let b = |q: usize| u8::from(bits[q]);
        out.push_str(&format!(
            " {} {} {}   {}    {}    {}     {}    {}    {}     {}    {}    {}    {}\n",
            b(layout.x(1)),
            b(layout.x(2)),
            b(layout.x(3)),
            b(layout.ebar(1)),
            b(layout.z(1, 1)),
            b(layout.z(1, 0)),
            b(layout.z(2, 2)),
            b(layout.z(2, 1)),
            b(layout.z(2, 0)),
            b(layout.z(3, 3)),
            b(layout.z(3, 2)),
            b(layout.z(3, 1)),
            b(layout.z(3, 0)),
        ));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Solve {
            graph,
            backend,
            m_mode,
            attempts,
            seed,
            output,
        } => {
            let g = read_graph(&graph)?;
            let cfg = SolveConfig {
                backend: backend.into(),
                m_mode: match m_mode {
                    MModeArg::Known => MMode::Known,
                    MModeArg::Unknown => MMode::Unknown,
                },
                attempts_per_level: attempts,
                seed,
            };
            let result = driver::solve(&g, &cfg)?;
            let text = if output.machine {
                result.machine_report()
            } else {
                result.report()
            };
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Synth {
            graph,
            level,
            iterations,
            g21_reduced,
            output,
        } => {
            let circuit = if g21_reduced {
                build_g21_reduced()
            } else {
                let path = graph.ok_or_else(|| {
                    Error::domain("synth needs a graph file or --g21-reduced")
                })?;
                let g = read_graph(&path)?;
                let i = level.unwrap_or(g.vertex_count());
                build_grover_circuit(&g, i, iterations)?
            };
            write_output(&output, &format::emit(&circuit))?;
            Ok(0)
        }
        Command::Simulate {
            graph,
            circuit,
            g21_reduced,
            level,
            iterations,
            backend,
            output,
        } => {
            let dist = if g21_reduced {
                let c = build_g21_reduced();
                let mut s = State::new(&c)?;
                s.run(&c)?;
                s.marginal(&(0..c.qubit_count).collect::<Vec<_>>())?
            } else if let Some(path) = circuit {
                let c = format::parse(&fs::read_to_string(&path)?)?;
                let mut s = State::new(&c)?;
                s.run(&c)?;
                s.marginal(&(0..c.qubit_count).collect::<Vec<_>>())?
            } else {
                let path = graph.ok_or_else(|| {
                    Error::domain("simulate needs a graph, --circuit, or --g21-reduced")
                })?;
                let g = read_graph(&path)?;
                let i = level.unwrap_or(g.vertex_count());
                match Backend::from(backend) {
                    Backend::Compiled => compiled_oracle_run(&g, i, iterations)?,
                    Backend::Dense => {
                        let layout = RegisterLayout::for_graph(&g)?;
                        let c = build_grover_circuit(&g, i, iterations)?;
                        let mut s = State::new(&c)?;
                        s.run(&c)?;
                        s.marginal(&layout.data_qubits())?
                    }
                }
            };
            write_output(&output, &dist.render())?;
            Ok(0)
        }
        Command::Resources {
            graph,
            level,
            iterations,
            sat_vars,
            sat_clauses,
            output,
        } => {
            let mut text = String::new();
            if let (Some(v), Some(c)) = (sat_vars, sat_clauses) {
                let (vertices, edges) = sat_reduction_size(v, c)?;
                if output.machine {
                    text.push_str(&format!("vertices={vertices}\nedges={edges}\n"));
                } else {
                    text.push_str(&format!(
                        "3-SAT({v} vars, {c} clauses) reduces to clique on {vertices} vertices, {edges} edges\n"
                    ));
                }
            } else {
                let path = graph.ok_or_else(|| {
                    Error::domain("resources needs a graph file or --sat-vars/--sat-clauses")
                })?;
                let g = read_graph(&path)?;
                let n = g.vertex_count();
                let m = n * (n - 1) / 2 - g.edge_count();
                let i = level.unwrap_or(n);
                let report = grover_report(&g, i, iterations)?;
                if output.machine {
                    text.push_str(&report.machine_render());
                } else {
                    text.push_str(&report.render());
                    text.push_str(&format!("qubit formula: {}\n", qubit_count(n, m)?));
                    for case in [EstimateCase::Single, EstimateCase::Worst, EstimateCase::Average]
                    {
                        text.push_str(&format!("-- {case:?} --\n"));
                        text.push_str(&appendix_estimate(n, m, case)?.render());
                    }
                }
                // exact count of the emitted circuit must agree
                debug_assert_eq!(
                    count_gates(&build_grover_circuit(&g, i, iterations)?).counts,
                    report.counts
                );
            }
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Verify {
            graph,
            random_n,
            count,
            seed,
            backend,
            output,
        } => {
            let mut graphs = Vec::new();
            if let Some(path) = &graph {
                graphs.push(read_graph(path)?);
            } else {
                let n = random_n
                    .ok_or_else(|| Error::domain("verify needs a graph file or --random-n"))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let mut edges = Vec::new();
                    for a in 1..=n {
                        for b in (a + 1)..=n {
                            if rng.gen_bool(0.5) {
                                edges.push((a, b));
                            }
                        }
                    }
                    graphs.push(Graph::new(n, edges)?);
                }
            }
            let mut text = String::new();
            let mut mismatches = 0usize;
            for (idx, g) in graphs.iter().enumerate() {
                let (expected, _) = max_cliques_bruteforce(g)?;
                let cfg = SolveConfig {
                    backend: backend.into(),
                    seed: seed.wrapping_add(idx as u64),
                    ..SolveConfig::default()
                };
                let result = driver::solve(g, &cfg)?;
                let ok = result.clique_size == expected;
                if !ok {
                    mismatches += 1;
                }
                text.push_str(&format!(
                    "graph {idx}: solve={} bruteforce={expected} {}\n",
                    result.clique_size,
                    if ok { "ok" } else { "MISMATCH" }
                ));
            }
            write_output(&output, &text)?;
            Ok(if mismatches == 0 { 0 } else { 1 })
        }
        Command::Table1 { output } => {
            write_output(&output, &table1_text()?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse { .. } => 2,
                Error::Resource(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_matches_published_rows() {
        let text = table1_text().unwrap();
        let rows: Vec<Vec<u8>> = text
            .lines()
            .skip(1)
            .map(|line| {
                line.split_ascii_whitespace()
                    .map(|t| t.parse().unwrap())
                    .collect()
            })
            .collect();
        let expected: [[u8; 13]; 8] = [
            [0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1],
            [0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0],
            [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0],
            [0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0],
            [1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 0],
            [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [1, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0],
            [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        ];
        assert_eq!(rows.len(), 8);
        for (row, exp) in rows.iter().zip(expected.iter()) {
            assert_eq!(row.as_slice(), exp.as_slice());
        }
    }
}
