// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! OpenQASM-2.0-style text dialect.
//!
//! ```text
//! OPENQASM 2.0;
//! include "qelib1.inc";
//! qreg q[2];
//! creg c[2];            // only when measured
//! h q[0];
//! rz(5.0000000000000000e-1) q[1];
//! cx q[0],q[1];
//! measure q -> c;       // only when measured
//! ```
//!
//! Angles are written with 17 significant digits so a re-import is exact.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Gate, Program};
use crate::pauli::Axis;

const HEADER: &str = "OPENQASM 2.0;";
const INCLUDE: &str = "include \"qelib1.inc\";";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImportError {
    #[error("line {line}: syntax error: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: qubit {qubit} out of range")]
    QubitOutOfRange { line: usize, qubit: usize },
}

fn fmt_angle(a: f64) -> String {
    format!("{a:.16e}")
}

pub fn export_text(p: &Program) -> String {
    let n = p.num_qubits();
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "{INCLUDE}");
    let _ = writeln!(out, "qreg q[{n}];");
    if p.is_measured() {
        let _ = writeln!(out, "creg c[{n}];");
    }
    for g in p.gates() {
        let _ = match *g {
            Gate::X(q) | Gate::H(q) => writeln!(out, "{} q[{q}];", g.name()),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Rotation { qubit, angle, .. } => {
                writeln!(out, "{}({}) q[{qubit}];", g.name(), fmt_angle(angle))
            }
            Gate::Coupling {
                qubits: (a, b), angle, ..
            } => writeln!(out, "{}({}) q[{a}],q[{b}];", g.name(), fmt_angle(angle)),
        };
    }
    if p.is_measured() {
        let _ = writeln!(out, "measure q -> c;");
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> ImportError {
    ImportError::SyntaxError {
        line,
        message: message.into(),
    }
}

/// Parse `q[<idx>]`.
fn parse_operand(s: &str, line: usize) -> Result<usize, ImportError> {
    s.trim()
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|i| i.parse::<usize>().ok())
        .ok_or_else(|| syntax(line, format!("bad operand `{}`", s.trim())))
}

fn parse_register(stmt: &str, kind: &str, line: usize) -> Result<usize, ImportError> {
    stmt.strip_prefix(kind)
        .and_then(|r| r.strip_suffix("];"))
        .and_then(|r| r.parse::<usize>().ok())
        .ok_or_else(|| syntax(line, format!("bad register declaration `{stmt}`")))
}

fn parse_gate(stmt: &str, line: usize) -> Result<Gate, ImportError> {
    let body = stmt
        .strip_suffix(';')
        .ok_or_else(|| syntax(line, "missing `;`"))?;
    let (head, operands) = body
        .split_once(' ')
        .ok_or_else(|| syntax(line, format!("expected `<gate> <operands>;`, found `{stmt}`")))?;
    let (name, angle) = match head.split_once('(') {
        Some((name, rest)) => {
            let a = rest
                .strip_suffix(')')
                .and_then(|a| a.trim().parse::<f64>().ok())
                .ok_or_else(|| syntax(line, format!("bad angle in `{head}`")))?;
            (name, Some(a))
        }
        None => (head, None),
    };
    let qs: Vec<usize> = operands
        .split(',')
        .map(|o| parse_operand(o, line))
        .collect::<Result<_, _>>()?;

    let arity_err = || syntax(line, format!("wrong operands for `{name}`"));
    let gate = match (name, angle, qs.as_slice()) {
        ("x", None, &[q]) => Gate::X(q),
        ("h", None, &[q]) => Gate::H(q),
        ("cx", None, &[c, t]) => Gate::cnot(c, t),
        ("rx" | "ry" | "rz", Some(angle), &[qubit]) => Gate::Rotation {
            axis: axis_of(&name[1..]),
            qubit,
            angle,
        },
        ("rxx" | "ryy" | "rzz", Some(angle), &[a, b]) => Gate::Coupling {
            axis: axis_of(&name[2..]),
            qubits: (a, b),
            angle,
        },
        ("x" | "h" | "cx" | "rx" | "ry" | "rz" | "rxx" | "ryy" | "rzz", _, _) => return Err(arity_err()),
        _ => {
            return Err(ImportError::UnknownGate {
                line,
                name: name.to_string(),
            })
        }
    };
    Ok(gate)
}

fn axis_of(s: &str) -> Axis {
    Axis::parse(s).expect("axis letter checked by caller")
}

/// Parse the dialect written by [`export_text`].
pub fn import_text(text: &str) -> Result<Program, ImportError> {
    let mut program: Option<Program> = None;
    let mut saw_header = false;
    let mut creg: Option<usize> = None;
    let mut measured_at: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stmt = raw.trim_end_matches('\r').trim();
        if stmt.is_empty() || stmt.starts_with("//") {
            continue;
        }
        if let Some(at) = measured_at {
            return Err(syntax(line, format!("statement after measurement on line {at}")));
        }
        if !saw_header {
            if stmt != HEADER {
                return Err(syntax(line, format!("expected `{HEADER}`")));
            }
            saw_header = true;
            continue;
        }
        if stmt == INCLUDE {
            continue;
        }
        if stmt.starts_with("qreg ") {
            if program.is_some() {
                return Err(syntax(line, "duplicate qreg"));
            }
            let n = parse_register(stmt, "qreg q[", line)?;
            if n == 0 {
                return Err(syntax(line, "empty register"));
            }
            program = Some(Program::new(n));
            continue;
        }
        let Some(p) = program.as_mut() else {
            return Err(syntax(line, "gate before `qreg` declaration"));
        };
        if stmt.starts_with("creg ") {
            let n = parse_register(stmt, "creg c[", line)?;
            if n != p.num_qubits() || creg.is_some() {
                return Err(syntax(line, "classical register must match qreg"));
            }
            creg = Some(n);
            continue;
        }
        if stmt == "measure q -> c;" {
            if creg.is_none() {
                return Err(syntax(line, "measure without creg"));
            }
            p.set_measured(true);
            measured_at = Some(line);
            continue;
        }
        let gate = parse_gate(stmt, line)?;
        p.try_push(gate).map_err(|e| match e {
            super::ProgramError::QubitOutOfRange { qubit, .. } => ImportError::QubitOutOfRange { line, qubit },
            super::ProgramError::RepeatedOperand { .. } => syntax(line, "repeated operand"),
        })?;
    }
    let p = program.ok_or_else(|| syntax(text.lines().count().max(1), "missing qreg declaration"))?;
    if creg.is_some() && !p.is_measured() {
        return Err(syntax(text.lines().count(), "creg declared but never measured"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::testing;
    use proptest::prelude::*;

    fn body(p: &Program) -> Vec<String> {
        export_text(p).lines().skip(3).map(str::to_string).collect()
    }

    #[test]
    fn single_gate_lines() {
        assert_eq!(body(&Program::from_gates(1, [Gate::H(0)]).unwrap()), vec!["h q[0];"]);
        assert_eq!(body(&Program::from_gates(2, [Gate::cnot(0, 1)]).unwrap()), vec!["cx q[0],q[1];"]);
        assert_eq!(
            body(&Program::from_gates(2, [Gate::rz(1, 0.5)]).unwrap()),
            vec!["rz(5.0000000000000000e-1) q[1];"]
        );
    }

    #[test]
    fn import_simple() {
        let p = import_text("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nh q[0];\n").unwrap();
        assert_eq!(p, Program::from_gates(1, [Gate::H(0)]).unwrap());
    }

    #[test]
    fn malformed_line() {
        let err = import_text("OPENQASM 2.0;\nqreg q[1];\nhq[0];\n").unwrap_err();
        assert!(matches!(err, ImportError::SyntaxError { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn unknown_gate_and_range() {
        let err = import_text("OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1];\n").unwrap_err();
        assert_eq!(err, ImportError::UnknownGate { line: 3, name: "ccx".into() });
        let err = import_text("OPENQASM 2.0;\nqreg q[2];\nh q[2];\n").unwrap_err();
        assert_eq!(err, ImportError::QubitOutOfRange { line: 3, qubit: 2 });
    }

    #[test]
    fn measurement_marker() {
        let mut p = Program::from_gates(2, [Gate::X(1)]).unwrap();
        p.set_measured(true);
        let text = export_text(&p);
        assert!(text.contains("creg c[2];"));
        assert!(text.ends_with("measure q -> c;\n"));
        assert_eq!(import_text(&text).unwrap(), p);
    }

    proptest! {
        #[test]
        fn export_import_round_trip(p in testing::program(5, 12)) {
            let text = export_text(&p);
            let back = import_text(&text).unwrap();
            prop_assert_eq!(export_text(&back), text);
            prop_assert_eq!(back, p);
        }
    }
}
