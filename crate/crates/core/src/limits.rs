use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;

pub const SIZE_LIMIT_ENV: &str = "MONOGAMY_SIZE_LIMIT";

/// Vertex-count caps for the exponential algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Independence number and clique cover number.
    pub exact: usize,
    /// Exhaustive chordal decomposition search.
    pub decomposition: usize,
    /// Global JPD feasibility LP (2^n variables before presolve).
    pub jpd_lp: usize,
    /// Classical maximum by enumeration.
    pub classical: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact: 64,
            decomposition: 20,
            jpd_lp: 20,
            classical: 30,
        }
    }
}

impl Limits {
    /// Every cap set to `n`, clamped to the bitset width.
    pub fn uniform(n: usize) -> Self {
        let n = n.min(MAX_VERTICES);
        Limits {
            exact: n,
            decomposition: n,
            jpd_lp: n,
            classical: n,
        }
    }

    /// Defaults, or [`Limits::uniform`] of `MONOGAMY_SIZE_LIMIT` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SIZE_LIMIT_ENV) {
            Ok(text) => {
                let n: usize = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{SIZE_LIMIT_ENV}=`{text}` is not a vertex count")))?;
                Ok(Limits::uniform(n))
            }
            Err(_) => Ok(Limits::default()),
        }
    }

    pub(crate) fn check(operation: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::SizeLimit { operation, size, limit })
        } else {
            Ok(())
        }
    }
}
