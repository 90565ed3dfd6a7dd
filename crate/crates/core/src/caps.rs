//! Resource caps and reproducibility knobs.
//!
//! Precedence when resolving a configuration: explicit flag > `RACKLAB_CAPS`
//! environment variable > built-in default.

/// Caps and numeric parameters threaded through the long-running operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of group elements materialized by closure.
    pub element_cap: usize,
    /// Maximum number of nodes in an enumerated subrack lattice.
    pub node_cap: usize,
    /// Maximum number of faces in a constructed simplicial complex.
    pub face_cap: usize,
    /// Total face count up to which homology uses integer Smith normal form.
    pub snf_threshold: usize,
    /// Distinct primes used for modular rank when above the snf threshold.
    pub primes: (u64, u64),
    /// Seed for randomized property suites.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: 20_000,
            node_cap: 200_000,
            face_cap: 2_000_000,
            snf_threshold: 20_000,
            primes: (1_000_003, 2_000_003),
            seed: 0,
        }
    }
}

impl Caps {
    /// Apply overrides from a `RACKLAB_CAPS`-style string, e.g.
    /// `element=5000,node=100000,face=1000000,snf=10000,seed=7`.
    pub fn apply_env_str(&mut self, s: &str) -> Result<(), String> {
        for kv in s.split(',').filter(|kv| !kv.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("bad caps entry {kv:?}, expected key=value"))?;
            let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{kv:?}: {e}"));
            match k.trim() {
                "element" => self.element_cap = parse(v)?,
                "node" => self.node_cap = parse(v)?,
                "face" => self.face_cap = parse(v)?,
                "snf" => self.snf_threshold = parse(v)?,
                "seed" => self.seed = parse(v)? as u64,
                other => return Err(format!("unknown caps key {other:?}")),
            }
        }
        if self.element_cap == 0 || self.node_cap == 0 || self.face_cap == 0 {
            return Err("caps must be positive".into());
        }
        Ok(())
    }

    /// Resolve from the environment on top of defaults.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(s) = std::env::var("RACKLAB_CAPS") {
            // Ignore malformed env overrides instead of failing startup; the
            // CLI surfaces the parse error explicitly when given a flag.
            let _ = caps.apply_env_str(&s);
        }
        caps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_string_overrides() {
        let mut caps = Caps::default();
        caps.apply_env_str("element=5, node=6,snf=7").unwrap();
        assert_eq!(caps.element_cap, 5);
        assert_eq!(caps.node_cap, 6);
        assert_eq!(caps.snf_threshold, 7);
        assert_eq!(caps.face_cap, Caps::default().face_cap);
    }

    #[test]
    fn bad_keys_rejected() {
        let mut caps = Caps::default();
        assert!(caps.apply_env_str("nodes=1").is_err());
        assert!(caps.apply_env_str("element").is_err());
        assert!(caps.apply_env_str("element=0").is_err());
    }
}
