//! Textual circuit format, one gate per line:
//!
//! ```text
//! qubits 4
//! init 0001
//! reg x1 0
//! reg O 3
//! H q0
//! TOFFOLI q0 !q1 q2
//! CNOT q2 q3
//! PSG q0 q1
//! ```
//!
//! `!` marks a negated control; the last index of CNOT/TOFFOLI is the
//! target. Emit followed by parse is bit-exact.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Control, Gate};
use crate::error::{Error, Result};

pub fn emit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.qubit_count).unwrap();
    let init: String = c
        .initial_bits
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect();
    writeln!(out, "init {init}").unwrap();
    for (name, idx) in &c.registers {
        writeln!(out, "reg {name} {idx}").unwrap();
    }
    for gate in &c.gates {
        match gate {
            Gate::H(q) => writeln!(out, "H q{q}").unwrap(),
            Gate::X(q) => writeln!(out, "X q{q}").unwrap(),
            Gate::Cnot { control, target } => {
                writeln!(out, "CNOT {} q{target}", fmt_control(control)).unwrap()
            }
            Gate::Toffoli { controls, target } => writeln!(
                out,
                "TOFFOLI {} {} q{target}",
                fmt_control(&controls[0]),
                fmt_control(&controls[1])
            )
            .unwrap(),
            Gate::Psg(qs) => {
                out.push_str("PSG");
                for q in qs {
                    write!(out, " q{q}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

fn fmt_control(c: &Control) -> String {
    if c.negated {
        format!("!q{}", c.qubit)
    } else {
        format!("q{}", c.qubit)
    }
}

fn parse_qubit(token: &str, lineno: usize) -> Result<usize> {
    let body = token
        .strip_prefix('q')
        .ok_or_else(|| Error::parse(lineno, format!("expected qubit token, got {token:?}")))?;
    body.parse()
        .map_err(|_| Error::parse(lineno, format!("invalid qubit index {token:?}")))
}

fn parse_control(token: &str, lineno: usize) -> Result<Control> {
    if let Some(rest) = token.strip_prefix('!') {
        Ok(Control::neg(parse_qubit(rest, lineno)?))
    } else {
        Ok(Control::pos(parse_qubit(token, lineno)?))
    }
}

pub fn parse(text: &str) -> Result<Circuit> {
    let mut qubits: Option<usize> = None;
    let mut init: Option<Vec<bool>> = None;
    let mut registers = Vec::new();
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "qubits" => {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected `qubits <count>`"));
                }
                qubits = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| Error::parse(lineno, "invalid qubit count"))?,
                );
            }
            "init" => {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected `init <bits>`"));
                }
                let bits: Result<Vec<bool>> = fields[1]
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::parse(lineno, format!("invalid init bit {ch:?}"))),
                    })
                    .collect();
                init = Some(bits?);
            }
            "reg" => {
                if fields.len() != 3 {
                    return Err(Error::parse(lineno, "expected `reg <name> <index>`"));
                }
                let index: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid register index"))?;
                registers.push((fields[1].to_string(), index));
            }
            "H" | "X" => {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected one qubit operand"));
                }
                let q = parse_qubit(fields[1], lineno)?;
                gates.push(if fields[0] == "H" { Gate::H(q) } else { Gate::X(q) });
            }
            "CNOT" => {
                if fields.len() != 3 {
                    return Err(Error::parse(lineno, "expected `CNOT <control> <target>`"));
                }
                gates.push(Gate::Cnot {
                    control: parse_control(fields[1], lineno)?,
                    target: parse_qubit(fields[2], lineno)?,
                });
            }
            "TOFFOLI" => {
                if fields.len() != 4 {
                    return Err(Error::parse(
                        lineno,
                        "expected `TOFFOLI <control> <control> <target>`",
                    ));
                }
                gates.push(Gate::Toffoli {
                    controls: [
                        parse_control(fields[1], lineno)?,
                        parse_control(fields[2], lineno)?,
                    ],
                    target: parse_qubit(fields[3], lineno)?,
                });
            }
            "PSG" => {
                if fields.len() < 2 {
                    return Err(Error::parse(lineno, "PSG needs at least one qubit"));
                }
                let qs: Result<Vec<usize>> = fields[1..]
                    .iter()
                    .map(|t| parse_qubit(t, lineno))
                    .collect();
                gates.push(Gate::Psg(qs?));
            }
            other => {
                return Err(Error::parse(lineno, format!("unknown directive {other:?}")));
            }
        }
    }

    let qubit_count = qubits.ok_or_else(|| Error::parse(0, "missing `qubits` header"))?;
    let initial_bits = init.unwrap_or_else(|| vec![false; qubit_count]);
    if initial_bits.len() != qubit_count {
        return Err(Error::parse(0, "init length does not match qubit count"));
    }
    let circuit = Circuit {
        qubit_count,
        initial_bits,
        registers,
        gates,
    };
    circuit.validate()?;
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_g21_reduced, build_grover_circuit};
    use crate::graph::Graph;

    #[test]
    fn round_trip_reduced_circuit() {
        let c = build_g21_reduced();
        let text = emit(&c);
        assert_eq!(parse(&text).unwrap(), c);
        assert_eq!(emit(&parse(&text).unwrap()), text);
    }

    #[test]
    fn round_trip_full_pipeline() {
        let c = build_grover_circuit(&Graph::path3(), 2, 1).unwrap();
        assert_eq!(parse(&emit(&c)).unwrap(), c);
    }

    #[test]
    fn negated_controls_survive() {
        let text = "qubits 3\ninit 000\nTOFFOLI q0 !q1 q2\nCNOT !q0 q1\n";
        let c = parse(text).unwrap();
        assert_eq!(emit(&c), text);
    }

    #[test]
    fn rejects_out_of_range_gate() {
        assert!(parse("qubits 2\nH q5\n").is_err());
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse("H q0\n").is_err());
    }
}
