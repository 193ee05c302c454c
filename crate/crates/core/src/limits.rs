//! Tunable limits read once from the environment.

use std::sync::OnceLock;

pub const DEFAULT_CHANNEL_BUDGET: usize = 5;
pub const DEFAULT_LASSO_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximal number of parity channels an objective may use.
    pub channel_budget: usize,
    /// Total lasso length used by the bounded equivalence oracle.
    pub lasso_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            channel_budget: DEFAULT_CHANNEL_BUDGET,
            lasso_bound: DEFAULT_LASSO_BOUND,
        }
    }
}

fn env_usize(key: &str, default: usize) -> usize {
    std::env::var(key)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(default)
}

/// `EXPLORE_CHANNEL_BUDGET` and `EXPLORE_LASSO_BOUND`, falling back to the defaults.
pub fn limits() -> Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    *LIMITS.get_or_init(|| Limits {
        channel_budget: env_usize("EXPLORE_CHANNEL_BUDGET", DEFAULT_CHANNEL_BUDGET),
        lasso_bound: env_usize("EXPLORE_LASSO_BOUND", DEFAULT_LASSO_BOUND),
    })
}
