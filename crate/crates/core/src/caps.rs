//! Resource caps shared by the search, piece-graph, and Coxeter oracles.

use crate::error::{invalid, Result};

/// Upper limits on problem sizes. Every field can be overridden through the
/// `REDMAX_CAPS` environment variable, e.g. `REDMAX_CAPS=dfs_n=16,dp_n=10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub dfs_k: usize,
    pub dfs_n: usize,
    pub dp_n: usize,
    pub tk_k: usize,
    /// Largest piece graph (node count) the ratio search will build.
    pub tk_nodes: usize,
    /// Largest group order for the Coxeter weak-order oracle.
    pub group_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            dfs_k: 5,
            dfs_n: 14,
            dp_n: 9,
            tk_k: 3,
            tk_nodes: 2_000_000,
            group_order: 50_000,
        }
    }
}

impl Caps {
    pub const ENV: &'static str = "REDMAX_CAPS";

    /// Defaults overridden by `REDMAX_CAPS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV) {
            Ok(spec) => Self::default().with_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| invalid(format!("cap override {item:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| invalid(format!("cap {key} needs a positive integer")))?;
            if value == 0 {
                return Err(invalid(format!("cap {key} must be positive")));
            }
            let slot = match key.trim() {
                "dfs_k" => &mut self.dfs_k,
                "dfs_n" => &mut self.dfs_n,
                "dp_n" => &mut self.dp_n,
                "tk_k" => &mut self.tk_k,
                "tk_nodes" => &mut self.tk_nodes,
                "group_order" => &mut self.group_order,
                other => return Err(invalid(format!("unknown cap {other:?}"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let c = Caps::default().with_overrides("dfs_n=16, dp_n=10").unwrap();
        assert_eq!((c.dfs_n, c.dp_n, c.dfs_k), (16, 10, 5));
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("dp_n=0").is_err());
        assert!(Caps::default().with_overrides("dp_n").is_err());
    }
}
