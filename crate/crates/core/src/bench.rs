//! Timing harness comparing the three h_d evaluators.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmetric::{monomial_count, HRequest, Strategy, DEFAULT_NAIVE_CAP};
use crate::verify::InputGen;

pub const CSV_HEADER: &str = "strategy,n,d,monomial_count,mean_ns,runs";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub strategy: Strategy,
    pub n: usize,
    pub d: usize,
    pub monomial_count: u128,
    pub mean_ns: u128,
    pub runs: usize,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.strategy, self.n, self.d, self.monomial_count, self.mean_ns, self.runs
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub d_list: Vec<usize>,
    pub strategies: Vec<Strategy>,
    pub runs: usize,
    pub naive_cap: u128,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_list: vec![2, 3, 4, 6],
            d_list: vec![1, 8, 16, 32, 64],
            strategies: Strategy::ALL.to_vec(),
            runs: 20,
            naive_cap: DEFAULT_NAIVE_CAP,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    /// (strategy, n, d) combinations left out because the naive enumeration
    /// would exceed the cap.
    pub skipped: Vec<(Strategy, usize, usize)>,
}

impl BenchOutcome {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn find(&self, strategy: Strategy, n: usize, d: usize) -> Option<&BenchRecord> {
        self.records
            .iter()
            .find(|r| r.strategy == strategy && r.n == n && r.d == d)
    }
}

/// Times every (n, d, strategy) combination. For each (n, d) the strategies
/// are first evaluated once on the same distinct nodes and must agree; the
/// timed loop excludes node generation.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    if config.runs == 0 {
        return Err(Error::InvalidArgument("runs must be positive".into()));
    }
    if config.n_list.iter().any(|&n| n < 2) {
        return Err(Error::InvalidArgument(
            "bench needs n >= 2 (closed form)".into(),
        ));
    }
    let mut outcome = BenchOutcome::default();
    for &n in &config.n_list {
        let nodes = InputGen::stream(config.seed, n as u64).distinct_nodes(n);
        for &d in &config.d_list {
            let count = monomial_count(d, n);
            let mut reference = None;
            let mut active = Vec::new();
            for &strategy in &config.strategies {
                if strategy == Strategy::Naive && count > config.naive_cap {
                    outcome.skipped.push((strategy, n, d));
                    continue;
                }
                let request = HRequest::new(d, nodes.clone(), strategy).with_cap(config.naive_cap);
                let value = request.evaluate()?;
                match &reference {
                    None => reference = Some(value),
                    Some(expected) if *expected != value => {
                        return Err(Error::InvalidArgument(format!(
                            "strategies disagree at n={n} d={d}: {strategy} gave {value}, expected {expected}"
                        )));
                    }
                    Some(_) => {}
                }
                active.push(request);
            }
            for request in active {
                let start = Instant::now();
                for _ in 0..config.runs {
                    black_box(black_box(&request).evaluate()?);
                }
                let mean_ns = (start.elapsed().as_nanos() / config.runs as u128).max(1);
                outcome.records.push(BenchRecord {
                    strategy: request.strategy,
                    n,
                    d,
                    monomial_count: count,
                    mean_ns,
                    runs: config.runs,
                });
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let config = BenchConfig {
            n_list: vec![2, 3],
            d_list: vec![1, 5],
            runs: 2,
            ..BenchConfig::default()
        };
        let out = run_bench(&config).unwrap();
        assert_eq!(out.records.len(), 12);
        for r in &out.records {
            assert_eq!(r.monomial_count, monomial_count(r.d, r.n));
            assert!(r.mean_ns > 0);
        }
        let csv = out.to_csv();
        assert!(csv.starts_with("strategy,n,d,monomial_count,mean_ns,runs\n"));
        assert_eq!(csv.lines().count(), 13);
        assert!(csv.contains("closed_form,3,5,21,"));
    }

    #[test]
    fn naive_over_cap_is_skipped() {
        let config = BenchConfig {
            n_list: vec![4],
            d_list: vec![64],
            runs: 1,
            naive_cap: 1000,
            ..BenchConfig::default()
        };
        let out = run_bench(&config).unwrap();
        assert_eq!(out.skipped, vec![(Strategy::Naive, 4, 64)]);
        assert_eq!(out.records.len(), 2);
    }

    #[test]
    fn rejects_bad_config() {
        let mut config = BenchConfig {
            runs: 0,
            ..BenchConfig::default()
        };
        assert!(run_bench(&config).is_err());
        config.runs = 1;
        config.n_list = vec![1];
        assert!(run_bench(&config).is_err());
    }
}
