// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Circuits for real- and imaginary-time evolution of 1D Heisenberg chains.
//!
//! An input file ([`config`]) describes a chain ([`hamiltonian`]); programs in the
//! circuit IR ([`ir`]) come from [`trotter`] or [`qite`], are simplified by
//! [`optimizer`], executed by [`backend`], and reduced to series by [`observables`].
//! [`oracle`] gives exact references for small chains.

pub mod backend;
pub mod config;
pub mod error;
pub mod hamiltonian;
pub mod ir;
pub mod observables;
pub mod optimizer;
pub mod oracle;
pub mod pauli;
pub mod qite;
pub mod registry;
pub mod trotter;
pub mod workflow;

pub use error::{Error, Result, TooLarge};
