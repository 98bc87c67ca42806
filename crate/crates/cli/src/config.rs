use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use epsilon_core::arith;
use epsilon_core::cyclo::LEVEL_LIMIT;
use epsilon_core::lattice::DEFAULT_PD_LIMIT;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Groupring,
    Lattice,
    Fundmatrix,
    Kgroup,
    Residue,
    Gauss,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Exact verification of local epsilon constants over a parameter grid.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
pub struct Cli {
    /// Primes: a value, a comma list or an inclusive range such as 3..7.
    #[arg(long, env = "EPSV_P", default_value = "3,5")]
    pub p: String,
    /// Residue degrees, same syntax as --p.
    #[arg(long, env = "EPSV_M", default_value = "1,2,3")]
    pub m: String,
    /// Inertia degrees, same syntax as --p.
    #[arg(long, env = "EPSV_D", default_value = "1,2,3,4")]
    pub d: String,
    /// Discrete log of the Artin symbol of 4: "all" or a residue.
    #[arg(long, env = "EPSV_K4", default_value = "all")]
    pub k4: String,
    #[arg(long, env = "EPSV_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Number of random free-slot fillings per instance.
    #[arg(long, env = "EPSV_FILLINGS", default_value_t = 5)]
    pub fillings: u64,
    #[arg(long, env = "EPSV_SUITE", value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Write the JSON report here.
    #[arg(long, env = "EPSV_REPORT")]
    pub report: Option<PathBuf>,
    /// Coordinate bound for the normal basis generator search.
    #[arg(long, env = "EPSV_COEFF_BOUND", default_value_t = 6)]
    pub coeff_bound: i64,
    /// Largest p·d handled by the lattice suite.
    #[arg(long, env = "EPSV_PD_LIMIT", default_value_t = DEFAULT_PD_LIMIT)]
    pub pd_limit: u64,
    /// Largest cyclotomic level an instance may need.
    #[arg(long, env = "EPSV_LEVEL_LIMIT", default_value_t = LEVEL_LIMIT)]
    pub level_limit: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = "EPSV_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Calibrated Gauss sum convention file; created when absent.
    #[arg(long, env = "EPSV_CONVENTION")]
    pub convention: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K4 {
    All,
    Value(u64),
}

impl Serialize for K4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            K4::All => s.serialize_str("all"),
            K4::Value(k) => s.serialize_u64(*k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Instance {
    pub p: u64,
    pub m: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub ms: Vec<u64>,
    pub ds: Vec<u64>,
    pub instances: Vec<Instance>,
    pub k4: K4,
    pub seed: u64,
    pub fillings: u64,
    pub suite: Suite,
    #[serde(skip)]
    pub report_path: Option<PathBuf>,
    pub coeff_bound: i64,
    pub pd_limit: u64,
    pub level_limit: u64,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub convention_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Values from a single value, a comma list, or an inclusive range `a..b`.
/// Range members failing `valid` are dropped; explicit values failing it are an error.
pub fn parse_values(
    name: &str,
    text: &str,
    valid: impl Fn(u64) -> Result<(), String>,
) -> Result<Vec<u64>, UsageError> {
    let bad = |s: &str| UsageError(format!("--{name}: cannot parse {s:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad(part))?;
            if lo > hi {
                return Err(UsageError(format!("--{name}: empty range {part}")));
            }
            out.extend((lo..=hi).filter(|&x| valid(x).is_ok()));
        } else {
            let x: u64 = part.parse().map_err(|_| bad(part))?;
            valid(x).map_err(|why| UsageError(format!("--{name} {x}: {why}")))?;
            out.push(x);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(UsageError(format!("--{name}: no admissible values in {text:?}")));
    }
    Ok(out)
}

fn odd_prime(p: u64) -> Result<(), String> {
    if p >= 3 && arith::is_prime(p) {
        Ok(())
    } else {
        Err("p must be an odd prime".into())
    }
}

fn positive(x: u64) -> Result<(), String> {
    if x >= 1 {
        Ok(())
    } else {
        Err("must be positive".into())
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let primes = parse_values("p", &cli.p, odd_prime)?;
        let ms = parse_values("m", &cli.m, positive)?;
        let ds = parse_values("d", &cli.d, positive)?;
        let mut instances = Vec::new();
        for &p in &primes {
            for &m in &ms {
                for &d in &ds {
                    if arith::gcd(m, d) == 1 {
                        instances.push(Instance { p, m, d });
                    }
                }
            }
        }
        if instances.is_empty() {
            return Err(UsageError(
                "no instance has gcd(m, d) = 1: m and d must be relatively prime".into(),
            ));
        }
        let k4 = match cli.k4.trim() {
            "all" => K4::All,
            s => {
                let k: u64 = s
                    .parse()
                    .map_err(|_| UsageError(format!("--k4: expected \"all\" or a residue, got {s:?}")))?;
                if let Some(p) = primes.iter().find(|&&p| k >= p) {
                    return Err(UsageError(format!("--k4 {k} is not a residue mod p = {p}")));
                }
                K4::Value(k)
            }
        };
        if cli.fillings == 0 {
            return Err(UsageError("--fillings must be positive".into()));
        }
        if cli.coeff_bound < 1 {
            return Err(UsageError("--coeff-bound must be at least 1".into()));
        }
        if cli.level_limit == 0 || cli.level_limit > LEVEL_LIMIT {
            return Err(UsageError(format!("--level-limit must lie in 1..={LEVEL_LIMIT}")));
        }
        Ok(RunConfig {
            primes,
            ms,
            ds,
            instances,
            k4,
            seed: cli.seed,
            fillings: cli.fillings,
            suite: cli.suite,
            report_path: cli.report,
            coeff_bound: cli.coeff_bound,
            pd_limit: cli.pd_limit,
            level_limit: cli.level_limit,
            jobs: cli.jobs,
            convention_path: cli.convention,
        })
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.fillings).map(|i| self.seed.wrapping_add(i)).collect()
    }

    pub fn k4_values(&self, p: u64) -> Vec<u64> {
        match self.k4 {
            K4::All => (0..p).collect(),
            K4::Value(k) => vec![k],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, UsageError> {
        let mut full = vec!["verify"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn default_grid() {
        let c = cfg(&[]).unwrap();
        assert_eq!(c.primes, vec![3, 5]);
        // (m, d) pairs with gcd 1 out of {1,2,3} × {1,2,3,4}: 4 + 2 + 3
        assert_eq!(c.instances.len(), 2 * 9);
        assert_eq!(c.seeds(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn ranges_filter_and_lists_reject() {
        assert_eq!(parse_values("p", "3..11", odd_prime).unwrap(), vec![3, 5, 7, 11]);
        assert!(parse_values("p", "4", odd_prime).is_err());
        assert!(parse_values("p", "3,9", odd_prime).is_err());
        assert!(parse_values("p", "8..10", odd_prime).is_err());
        assert!(parse_values("p", "x", odd_prime).is_err());
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(cfg(&["--p", "4"]).is_err());
        let e = cfg(&["--m", "2", "--d", "2"]).unwrap_err();
        assert!(e.0.contains("relatively prime"));
        assert!(cfg(&["--k4", "3"]).is_err());
        assert_eq!(cfg(&["--p", "5", "--k4", "3"]).unwrap().k4, K4::Value(3));
    }
}
