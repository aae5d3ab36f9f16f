//! Random hypergraph models: k-out sampling over complete and complete
//! r-partite hosts, and the random r-graph process with its stopping time.

mod kout;
mod process;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expansion::PartiteExpansionParams;

pub use kout::{
    host_edges, per_vertex_uniformity_check, sample_binomial, sample_kout, KOutSample, UniformityReport,
};
pub use process::{
    run_process, threshold_diagnostics, threshold_window, ProcessTrace, StopRule, ThresholdDiagnostics,
};

/// Default degree-cutoff factor: `c = epsilon * ln n`.
pub const DEFAULT_THRESHOLD_EPSILON: f64 = 0.1;

/// Default slack `g(n) = ln ln n`.
pub fn default_slack(n: usize) -> f64 {
    (n as f64).ln().ln()
}

/// The host hypergraph a k-out sample is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HostModel {
    /// All r-subsets of `n` vertices.
    Complete { n: usize, r: usize },
    /// `r` blocks of `n` vertices each; edges take one vertex per block.
    Partite { n: usize, r: usize },
}

impl HostModel {
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        let h = HostModel::Complete { n, r };
        h.validate()?;
        Ok(h)
    }

    pub fn partite(n: usize, r: usize) -> Result<Self> {
        let h = HostModel::Partite { n, r };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            HostModel::Complete { n, r } if r == 0 || n < r => {
                Err(Error::input(format!("complete host needs 1 <= r <= n, got n={n} r={r}")))
            }
            HostModel::Partite { n, r } if r == 0 || n == 0 => {
                Err(Error::input(format!("partite host needs n, r >= 1, got n={n} r={r}")))
            }
            _ if self.total_vertices() > u32::MAX as usize => Err(Error::input("host too large")),
            _ => Ok(()),
        }
    }

    pub fn r(&self) -> usize {
        match *self {
            HostModel::Complete { r, .. } | HostModel::Partite { r, .. } => r,
        }
    }

    /// The size parameter: all vertices (complete) or one block (partite).
    pub fn n(&self) -> usize {
        match *self {
            HostModel::Complete { n, .. } | HostModel::Partite { n, .. } => n,
        }
    }

    pub fn total_vertices(&self) -> usize {
        match *self {
            HostModel::Complete { n, .. } => n,
            HostModel::Partite { n, r } => n * r,
        }
    }

    /// Host edges through one vertex, saturating at `u128::MAX`.
    pub fn vertex_degree(&self) -> u128 {
        match *self {
            HostModel::Complete { n, r } => binomial(n - 1, r - 1),
            HostModel::Partite { n, r } => (n as u128).checked_pow(r as u32 - 1).unwrap_or(u128::MAX),
        }
    }

    /// All host edges, saturating at `u128::MAX`.
    pub fn num_edges(&self) -> u128 {
        match *self {
            HostModel::Complete { n, r } => binomial(n, r),
            HostModel::Partite { n, r } => (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX),
        }
    }

    /// The k from the existence proof for this host kind.
    pub fn preset_k(&self) -> u128 {
        match *self {
            HostModel::Complete { r, .. } => preset_k_complete(r),
            HostModel::Partite { r, .. } => preset_k_partite(r),
        }
    }
}

impl fmt::Display for HostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostModel::Complete { .. } => write!(f, "complete"),
            HostModel::Partite { .. } => write!(f, "partite"),
        }
    }
}

/// Host kind as written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostKind {
    Complete,
    Partite,
}

impl HostKind {
    pub fn with(self, n: usize, r: usize) -> Result<HostModel> {
        match self {
            HostKind::Complete => HostModel::complete(n, r),
            HostKind::Partite => HostModel::partite(n, r),
        }
    }
}

impl FromStr for HostKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(HostKind::Complete),
            "partite" | "r-partite" => Ok(HostKind::Partite),
            other => Err(Error::input(format!("unknown host {other:?}; expected complete or partite"))),
        }
    }
}

/// `(2r^2)^r`, saturating.
pub fn preset_k_complete(r: usize) -> u128 {
    ((2 * r * r) as u128).checked_pow(r as u32).unwrap_or(u128::MAX)
}

/// `2r / epsilon^r` at the default partite constants, where
/// `1 / epsilon = 2r * 4r^3`. Saturating.
pub fn preset_k_partite(r: usize) -> u128 {
    let p = PartiteExpansionParams::defaults(r);
    let inv_eps = (1.0 / p.epsilon).round() as u128;
    inv_eps
        .checked_pow(r as u32)
        .and_then(|x| x.checked_mul(2 * r as u128))
        .unwrap_or(u128::MAX)
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    crate::expansion::binomial(n, k)
}

/// Mixes a master seed with an index (splitmix64 finaliser), giving
/// independent-looking seeds for trials.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for stream `stream` under `seed`.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests;
