// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Gate-count minimization over [`Program`]s.
//!
//! The peephole optimizer works on per-qubit wires: two gates are adjacent when
//! no gate between them touches any of their operands. On adjacent pairs it
//! merges same-axis rotations, drops rotations that are multiples of 2π, and
//! cancels self-inverse pairs (H·H, X·X, CNOT·CNOT). Passes repeat to a fixed point.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use crate::ir::{Gate, Program};
use crate::registry::Registry;

/// Rotations within this distance of a multiple of 2π are removed.
pub const ANGLE_EPS: f64 = 1e-12;

pub trait Optimizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn optimize(&self, p: &Program) -> Program;
}

/// Leaves programs untouched.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoOptimizer;

impl Optimizer for NoOptimizer {
    fn name(&self) -> &'static str {
        "none"
    }
    fn optimize(&self, p: &Program) -> Program {
        p.clone()
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Peephole;

impl Optimizer for Peephole {
    fn name(&self) -> &'static str {
        "peephole"
    }
    fn optimize(&self, p: &Program) -> Program {
        optimize(p)
    }
}

/// Built-in optimizers keyed by the names accepted in `optimizer_level`.
pub fn registry() -> &'static Registry<dyn Optimizer> {
    static REGISTRY: OnceLock<Registry<dyn Optimizer>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<dyn Optimizer> = Registry::new("optimizer");
        r.register("none", || Box::new(NoOptimizer));
        r.register("peephole", || Box::new(Peephole));
        r
    })
}

fn negligible(angle: f64) -> bool {
    let r = angle.rem_euclid(TAU);
    r <= ANGLE_EPS || TAU - r <= ANGLE_EPS
}

enum Combine {
    Replace(Gate),
    Cancel,
}

fn unordered(p: (usize, usize)) -> (usize, usize) {
    (p.0.min(p.1), p.0.max(p.1))
}

/// How `earlier` followed by `later` on the same operands simplifies, if at all.
fn combine(earlier: &Gate, later: &Gate) -> Option<Combine> {
    match (*earlier, *later) {
        (
            Gate::Rotation { axis: a1, qubit: q1, angle: t1 },
            Gate::Rotation { axis: a2, qubit: q2, angle: t2 },
        ) if a1 == a2 && q1 == q2 => Some(Combine::Replace(Gate::Rotation {
            axis: a1,
            qubit: q1,
            angle: t1 + t2,
        })),
        (
            Gate::Coupling { axis: a1, qubits: p1, angle: t1 },
            Gate::Coupling { axis: a2, qubits: p2, angle: t2 },
        ) if a1 == a2 && unordered(p1) == unordered(p2) => Some(Combine::Replace(Gate::Coupling {
            axis: a1,
            qubits: p1,
            angle: t1 + t2,
        })),
        (Gate::H(a), Gate::H(b)) | (Gate::X(a), Gate::X(b)) if a == b => Some(Combine::Cancel),
        (Gate::Cnot { control: c1, target: t1 }, Gate::Cnot { control: c2, target: t2 })
            if c1 == c2 && t1 == t2 =>
        {
            Some(Combine::Cancel)
        }
        _ => None,
    }
}

fn is_removable(g: &Gate) -> bool {
    g.angle().is_some_and(negligible)
}

/// One left-to-right sweep with per-wire stacks of live gate indices.
fn sweep(p: &Program) -> Program {
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(p.len());
    let mut wires: Vec<Vec<usize>> = vec![Vec::new(); p.num_qubits()];

    for g in p.gates() {
        if is_removable(g) {
            continue;
        }
        let qs = g.qubits();
        let top = wires[qs[0]].last().copied();
        let shared = top.filter(|&i| {
            qs.iter().all(|&q| wires[q].last() == Some(&i))
                && out[i].as_ref().is_some_and(|prev| prev.qubits().len() == qs.len())
        });
        if let Some(i) = shared {
            let prev = out[i].expect("live gate");
            match combine(&prev, g) {
                Some(Combine::Replace(merged)) if !is_removable(&merged) => {
                    out[i] = Some(merged);
                    continue;
                }
                Some(_) => {
                    out[i] = None;
                    for &q in &qs {
                        wires[q].pop();
                    }
                    continue;
                }
                None => {}
            }
        }
        let idx = out.len();
        out.push(Some(*g));
        for &q in &qs {
            wires[q].push(idx);
        }
    }
    p.with_gates(out.into_iter().flatten().collect())
}

/// Peephole-minimize `p` to a fixed point. Never increases the gate count.
pub fn optimize(p: &Program) -> Program {
    let mut cur = sweep(p);
    loop {
        let next = sweep(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}
