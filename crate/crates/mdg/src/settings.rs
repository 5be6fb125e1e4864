use std::time::Duration;

use mdg_core::Budget;

/// Run-wide options. The command line fills these with flags taking
/// precedence over `MDG_` environment variables, then defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Worker threads for independent claims; 0 picks the core count.
    pub threads: usize,
    /// Search-tree nodes for automorphism searches.
    pub max_nodes: u64,
    /// Wall-clock limit for a single automorphism search.
    pub time_limit: Duration,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            threads: 0,
            max_nodes: Budget::default().max_nodes,
            time_limit: Duration::from_secs(300),
        }
    }
}

impl Settings {
    pub fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            ..Budget::default()
        }
    }

    /// Runs `f` on a pool sized by `threads`.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
