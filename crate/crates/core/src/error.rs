// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::config::ConfigError;
use crate::ir::ImportError;
use crate::oracle::OracleError;
use crate::qite::QiteError;

/// A dense or statevector operation was asked to handle more qubits than its guard allows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} on {qubits} qubits exceeds the limit of {limit}")]
pub struct TooLarge {
    pub what: &'static str,
    pub qubits: usize,
    pub limit: usize,
}

impl TooLarge {
    pub(crate) fn check(what: &'static str, qubits: usize, limit: usize) -> Result<(), TooLarge> {
        if qubits > limit {
            Err(TooLarge { what, qubits, limit })
        } else {
            Ok(())
        }
    }
}

/// Top-level error for the end-to-end workflow.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error(transparent)]
    Qite(#[from] QiteError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Import(#[from] ImportError),
    #[error("observable cannot be estimated from counts: {0}")]
    BasisMismatch(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
