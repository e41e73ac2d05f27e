//! The chromatic thresholds `g(m,i)` and finders that construct three-block
//! paths by following the existence arguments step by step.
//!
//! Every finder returns a witness in the caller's labels together with a
//! [`ProofTrace`]. A step whose guarantee fails is reported as
//! [`ProofError::InternalInconsistency`] carrying the trace so far; finders
//! never fall back to an unrestricted search.

mod closure;
mod lemma23;
mod origins;
mod theorem31;
mod theorem33;
mod trace;

use thiserror::Error;

use crate::coloring::{chromatic_number, ColoringError};
use crate::digraph::{Digraph, GraphError};

pub use lemma23::{find_reversed_three_block, find_three_block_decomposition};
pub use origins::find_p1k1_via_origins;
pub use theorem31::find_p1l1_at_least;
pub use theorem33::find_p1k1;
pub use trace::{check_trace, Branch, ProofTrace, TraceStep};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("g({m},{i}) is undefined: need m >= 4 and 0 <= 2i <= m - 2")]
    Domain { m: usize, i: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("chromatic number {chi} is below the required {required}")]
    ChromaticTooSmall { required: usize, chi: usize },
    #[error("internal inconsistency at step `{step}`: {reason}")]
    InternalInconsistency {
        step: String,
        reason: String,
        trace: Box<ProofTrace>,
    },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ProofError {
    pub fn is_internal_inconsistency(&self) -> bool {
        matches!(self, ProofError::InternalInconsistency { .. })
    }
}

/// A valid argument pair of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GIndex {
    m: usize,
    i: usize,
}

impl GIndex {
    pub fn new(m: usize, i: usize) -> Result<Self, ProofError> {
        if m < 4 || 2 * i + 2 > m {
            return Err(ProofError::Domain { m, i });
        }
        Ok(GIndex { m, i })
    }

    pub fn m(self) -> usize {
        self.m
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn value(self) -> u64 {
        let (mut m, mut i) = (self.m as u64, self.i as u64);
        let mut acc = 0;
        // Unroll g(m,i) = g(m-1,i-1) + 2(m-3) down to a base case.
        while i > 0 && !(m == 4 && i == 1) {
            acc += 2 * (m - 3);
            m -= 1;
            i -= 1;
        }
        acc + if i == 0 { m } else { 4 }
    }
}

/// `g(m,i)`: `g(m,0) = m`, `g(4,1) = 4`, `g(m,i) = g(m-1,i-1) + 2(m-3)`.
pub fn g(m: usize, i: usize) -> Result<u64, ProofError> {
    Ok(GIndex::new(m, i)?.value())
}

/// The largest admissible `i` for `m`: `m/2 - 1` when `m` is even,
/// `(m-3)/2` when odd.
pub fn extreme_index(m: usize) -> Result<usize, ProofError> {
    if m < 4 {
        return Err(ProofError::Domain { m, i: 0 });
    }
    Ok(if m.is_multiple_of(2) { m / 2 - 1 } else { (m - 3) / 2 })
}

/// `g` at the extreme index: the chromatic number that forces every
/// three-block path on `m` vertices.
pub fn g_extreme(m: usize) -> Result<u64, ProofError> {
    g(m, extreme_index(m)?)
}

/// `(m-1)^2`, the threshold for every oriented tree on `m` vertices.
pub fn burr_bound(m: usize) -> u64 {
    let m = m as u64;
    (m.max(1) - 1).pow(2)
}

/// The better of [`g_extreme`] and [`burr_bound`].
pub fn f_upper_bound(m: usize) -> Result<u64, ProofError> {
    Ok(g_extreme(m)?.min(burr_bound(m)))
}

pub(crate) fn require_chi(g: &Digraph, required: usize) -> Result<usize, ProofError> {
    let chi = chromatic_number(g)?.chi;
    if chi < required {
        return Err(ProofError::ChromaticTooSmall { required, chi });
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct transcription of the recurrence, for cross-checking.
    fn g_rec(m: usize, i: usize) -> u64 {
        match (m, i) {
            (m, 0) => m as u64,
            (4, 1) => 4,
            (m, i) => g_rec(m - 1, i - 1) + 2 * (m as u64 - 3),
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(g(4, 0).unwrap(), 4);
        assert_eq!(g(4, 1).unwrap(), 4);
        assert_eq!(g(5, 1).unwrap(), 8);
        assert_eq!(g(6, 2).unwrap(), 14);
        assert_eq!(g(7, 2).unwrap(), 19);
        assert_eq!(g(8, 3).unwrap(), 29);
        assert_eq!(g(9, 3).unwrap(), 36);
    }

    #[test]
    fn domain() {
        assert!(matches!(g(3, 0), Err(ProofError::Domain { .. })));
        assert!(matches!(g(4, 2), Err(ProofError::Domain { .. })));
        assert!(matches!(g(5, 2), Err(ProofError::Domain { .. })));
        assert!(g(6, 2).is_ok());
        assert!(g_extreme(3).is_err());
    }

    #[test]
    fn loop_matches_recursion() {
        for m in 4..60 {
            for i in 0..=extreme_index(m).unwrap() {
                assert_eq!(g(m, i).unwrap(), g_rec(m, i), "g({m},{i})");
            }
        }
    }

    #[test]
    fn closed_forms() {
        for m in 4..=200u64 {
            let ge = g_extreme(m as usize).unwrap();
            if m % 2 == 1 {
                assert_eq!(4 * ge, 3 * m * m - 14 * m + 27, "m={m}");
            } else if m >= 6 {
                assert_eq!(4 * ge, 3 * m * m - 12 * m + 20, "m={m}");
            }
            assert!(4 * ge <= 3 * m * m);
        }
    }

    #[test]
    fn even_closed_form_does_not_cover_m4() {
        // At m = 4 the extreme index is 1 and g(4,1) = 4 is a base value,
        // while the even closed form gives 5.
        assert_eq!(g_extreme(4).unwrap(), 4);
        let m = 4u64;
        assert_eq!(3 * m * m - 12 * m + 20, 20);
    }

    #[test]
    fn f_bound_examples() {
        assert_eq!(f_upper_bound(4).unwrap(), 4);
        assert_eq!(f_upper_bound(6).unwrap(), 14);
        assert_eq!(f_upper_bound(10).unwrap(), 50);
        assert_eq!(burr_bound(6), 25);
    }

    #[test]
    fn monotone_in_i() {
        for m in 4..=100 {
            for i in 1..=extreme_index(m).unwrap() {
                assert!(g(m, i).unwrap() >= g(m, i - 1).unwrap());
            }
        }
    }
}
