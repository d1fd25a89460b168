//! Brute-force minor containment, desk-scale extremal search and the coframe density sweep.

mod connect;
mod density;
mod extremal;
mod minor;

use serde::{Deserialize, Serialize};

pub use connect::vertically_connected_filter;
pub use density::{coframe_density_check, CoframeReport};
pub use extremal::{max_simple_no_minor, ExtremalResult};
pub use minor::{has_minor, has_minor_with};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Contraction sets in lexicographic order of host indices, then the first embedding.
    #[default]
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest host accepted by [`has_minor`].
    pub max_ground: usize,
    /// Work budget shared by one call: contraction sets, embedding nodes and candidate sets.
    pub max_candidates: u64,
    pub parallel: bool,
    pub tie_break: TieBreak,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { max_ground: 20, max_candidates: 200_000_000, parallel: true, tie_break: TieBreak::Lexicographic }
    }
}
