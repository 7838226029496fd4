//! Decides whether finite groups are power-cograph groups (groups whose
//! power graph contains no induced 4-vertex path), two ways: brute force
//! (enumerate the group, build the power graph, run cograph recognition with
//! certificates) and theorem-level family criteria driven by integer
//! factorization. The two routes cross-validate each other.

pub mod cograph;
pub mod criteria;
pub mod field;
pub mod groups;
pub mod numtheory;
pub mod powergraph;
pub mod report;

/// Unified error type. `exit_code` maps onto the CLI contract:
/// 2 usage/parse, 3 resource cap, 4 internal cross-check failure.
#[derive(Debug, thiserror::Error)]
pub enum PcgError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("group order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot completely factor {0} by trial division")]
    IncompleteFactorization(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal cross-check failure: {0}")]
    Internal(String),
}

impl PcgError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PcgError::Parse { .. }
            | PcgError::InvalidParameter(_)
            | PcgError::IncompleteFactorization(_)
            | PcgError::Unsupported(_) => 2,
            PcgError::CapExceeded { .. } => 3,
            PcgError::Internal(_) => 4,
        }
    }
}
