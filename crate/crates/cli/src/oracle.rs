//! Dependence decided from forward samples with a G-test.

use finspace::causal::{CausalError, DiscreteCausalModel};
use finspace::discovery::{DependenceOracle, PairVerdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub const DEFAULT_SAMPLES: usize = 20_000;
pub const DEFAULT_ALPHA: f64 = 0.01;
/// Cells with a smaller expected count make the chi-squared approximation
/// unreliable.
pub const MIN_EXPECTED: f64 = 5.0;

/// Draws `samples` joint samples per experiment and rejects marginal
/// independence of a pair when the G-test p-value falls below
/// `alpha / planned` (Bonferroni over every test of the run).
#[derive(Debug, Clone)]
pub struct SampledOracle {
    pub samples: usize,
    pub alpha: f64,
    rng: ChaCha8Rng,
}

impl SampledOracle {
    pub fn new(samples: usize, alpha: f64, seed: u64) -> Self {
        Self {
            samples,
            alpha,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

/// G statistic, degrees of freedom and minimum expected count of a
/// contingency table.
pub fn g_test(table: &[Vec<u64>]) -> (f64, usize, f64) {
    let rows: Vec<u64> = table.iter().map(|r| r.iter().sum()).collect();
    let width = table.first().map_or(0, Vec::len);
    let cols: Vec<u64> = (0..width).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let total: u64 = rows.iter().sum();
    if total == 0 {
        return (0.0, 0, 0.0);
    }
    let n = total as f64;
    let mut g = 0.0;
    let mut min_expected = f64::INFINITY;
    for (i, r) in table.iter().enumerate() {
        for (j, &o) in r.iter().enumerate() {
            if rows[i] == 0 || cols[j] == 0 {
                continue;
            }
            let e = rows[i] as f64 * cols[j] as f64 / n;
            min_expected = min_expected.min(e);
            if o > 0 {
                g += o as f64 * (o as f64 / e).ln();
            }
        }
    }
    let live = |m: &[u64]| m.iter().filter(|&&c| c > 0).count();
    let df = live(&rows).saturating_sub(1) * live(&cols).saturating_sub(1);
    (2.0 * g, df, min_expected)
}

impl DependenceOracle for SampledOracle {
    fn run_experiment(
        &mut self,
        model: &DiscreteCausalModel,
        pairs: &[(usize, usize)],
        planned: usize,
    ) -> Result<Vec<PairVerdict>, CausalError> {
        let n = model.len();
        let mut data = vec![0usize; self.samples * n];
        for row in data.chunks_mut(n.max(1)) {
            model.sample_into(&mut self.rng, row);
        }
        let level = self.alpha / planned.max(1) as f64;
        let dims: Vec<usize> = model.domains().iter().map(Vec::len).collect();
        Ok(pairs
            .iter()
            .map(|&(a, b)| {
                let mut table = vec![vec![0u64; dims[b]]; dims[a]];
                for row in data.chunks(n.max(1)).take(self.samples) {
                    table[row[a]][row[b]] += 1;
                }
                let (g, df, min_expected) = g_test(&table);
                let p = if df == 0 {
                    1.0
                } else {
                    ChiSquared::new(df as f64).expect("df > 0").sf(g)
                };
                PairVerdict {
                    dependent: p < level,
                    statistic: g,
                    p_value: Some(p),
                    low_power: df == 0 || min_expected < MIN_EXPECTED,
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_statistic_by_hand() {
        // Independent table: G = 0.
        let (g, df, e) = g_test(&[vec![10, 20], vec![30, 60]]);
        assert!(g.abs() < 1e-12);
        assert_eq!(df, 1);
        assert!((e - 10.0).abs() < 1e-12);
        // 2 * sum O ln(O/E) for [[20, 0], [0, 20]]: E = 10 on the diagonal.
        let (g, _, _) = g_test(&[vec![20, 0], vec![0, 20]]);
        assert!((g - 4.0 * 20.0 * 2f64.ln()).abs() < 1e-9);
        assert_eq!(g_test(&[vec![5, 0], vec![7, 0]]).1, 0);
    }
}
