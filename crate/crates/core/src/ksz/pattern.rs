use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{LabError, Result};

/// Group sizes `(n_1, ..., n_k)` splitting `n = n_1 + ... + n_k` slots into
/// consecutive runs that share one index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RepetitionPattern {
    parts: Vec<usize>,
}

impl RepetitionPattern {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(LabError::invalid(
                "repetition pattern needs at least one part",
            ));
        }
        if parts.contains(&0) {
            return Err(LabError::invalid(format!(
                "pattern parts must be positive: {parts:?}"
            )));
        }
        Ok(RepetitionPattern { parts })
    }

    /// `k` parts of size one: no repetition.
    pub fn distinct(k: usize) -> Result<Self> {
        Self::new(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of groups `k`.
    pub fn groups(&self) -> usize {
        self.parts.len()
    }

    /// Total number of slots `n`.
    pub fn slots(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `j_l = n_1 + ... + n_l` for `l = 1..k`; the last entry is `n`.
    pub fn cumulative(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// 0-based group owning each 0-based slot.
    pub fn slot_groups(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(g, &p)| std::iter::repeat_n(g, p))
            .collect()
    }

    /// Expands group values `(i_1, ..., i_k)` to the slot index
    /// `(i_1 x n_1, ..., i_k x n_k)`.
    pub fn expand(&self, groups: &[usize]) -> Vec<usize> {
        debug_assert_eq!(groups.len(), self.parts.len());
        groups
            .iter()
            .zip(&self.parts)
            .flat_map(|(&i, &p)| std::iter::repeat_n(i, p))
            .collect()
    }
}

impl fmt::Display for RepetitionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for RepetitionPattern {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| LabError::invalid(format!("invalid pattern part `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}
