//! Discrete-time susceptible-infected spreading and its RNG contract.
//!
//! Dynamics: at each step, every susceptible node receives one independent
//! infection trial per currently infected neighbor, each succeeding with
//! probability lambda. Updates are synchronous (the infected set is frozen
//! for the whole step) and infected nodes never recover.
//!
//! Reproducibility is part of the public contract. All randomness comes
//! from ChaCha8 streams whose seeds derive from one master seed:
//!
//! * ensemble run r:        `derive_seed(master, &[r])`
//! * ability of node v, run r: `derive_seed(master, &[v, r])`
//!
//! where [`derive_seed`] folds the words through splitmix64. Every stream
//! is independent, so runs can execute in parallel and are merged in index
//! order; results are byte-identical for a given master seed regardless of
//! worker count. Within one run the trial order is fixed: susceptible nodes
//! in ascending index order, and for each of them one draw per infected
//! neighbor in adjacency order, with no short-circuit after a success.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One round of the splitmix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a stream seed from a master seed and context words by folding
/// each word through splitmix64.
pub fn derive_seed(master: u64, words: &[u64]) -> u64 {
    let mut s = splitmix64(master);
    for &w in words {
        s = splitmix64(s ^ w);
    }
    s
}

/// ChaCha8 stream for a derived seed. The 32-byte key is the little-endian
/// concatenation of four splitmix64 iterates of the seed.
pub fn stream_rng(seed: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    let mut s = seed;
    for chunk in bytes.chunks_exact_mut(8) {
        s = splitmix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

/// Infection probability from the exponent parameterization lambda = (1/2)^beta.
pub fn lambda_from_beta(beta: f64) -> f64 {
    0.5f64.powf(beta)
}

/// Ensemble parameters. `seeds` are node indices, distinct and in range.
#[derive(Debug, Clone)]
pub struct SIConfig {
    pub lambda: f64,
    pub steps: usize,
    pub runs: usize,
    pub seeds: Vec<u32>,
    pub master_seed: u64,
}

impl SIConfig {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidLambda(self.lambda));
        }
        if self.runs == 0 {
            return Err(Error::InvalidParameter("runs must be >= 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::EmptySeedSet);
        }
        let n = g.node_count();
        let mut seen = std::collections::HashSet::new();
        for &s in &self.seeds {
            if s as usize >= n {
                return Err(Error::NodeOutOfRange {
                    index: s as usize,
                    n,
                });
            }
            if !seen.insert(s) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate seed node index {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Ensemble output: `mean_f[t]` is the infected count at step t averaged
/// over runs, `per_run[r][t]` the raw counts.
#[derive(Debug, Clone)]
pub struct SITrace {
    pub mean_f: Vec<f64>,
    pub per_run: Vec<Vec<u32>>,
}

/// One spreading realization. Returns the infected count after each step,
/// `steps + 1` values starting at `F(0) = seeds.len()`.
pub fn si_run(
    g: &Graph,
    seeds: &[u32],
    lambda: f64,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<u32> {
    let n = g.node_count();
    let mut infected = vec![false; n];
    let mut count = 0u32;
    for &s in seeds {
        if !infected[s as usize] {
            infected[s as usize] = true;
            count += 1;
        }
    }
    let mut curve = Vec::with_capacity(steps + 1);
    curve.push(count);
    let mut newly = Vec::new();
    for _ in 0..steps {
        newly.clear();
        if (count as usize) < n {
            for u in 0..n as u32 {
                if infected[u as usize] {
                    continue;
                }
                let mut hit = false;
                for &v in g.neighbors(u) {
                    if infected[v as usize] && rng.gen::<f64>() < lambda {
                        hit = true;
                    }
                }
                if hit {
                    newly.push(u);
                }
            }
            for &u in &newly {
                infected[u as usize] = true;
            }
            count += newly.len() as u32;
        }
        curve.push(count);
    }
    curve
}

/// Averaged ensemble, one independent ChaCha8 stream per run.
pub fn si_ensemble(g: &Graph, cfg: &SIConfig) -> Result<SITrace> {
    cfg.validate(g)?;
    let per_run: Vec<Vec<u32>> = (0..cfg.runs as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(derive_seed(cfg.master_seed, &[r]));
            si_run(g, &cfg.seeds, cfg.lambda, cfg.steps, &mut rng)
        })
        .collect();
    let mut mean_f = vec![0.0f64; cfg.steps + 1];
    for run in &per_run {
        for (t, &f) in run.iter().enumerate() {
            mean_f[t] += f as f64;
        }
    }
    for v in &mut mean_f {
        *v /= cfg.runs as f64;
    }
    Ok(SITrace { mean_f, per_run })
}

/// Spreading ability of every node: the mean infected count at `t_obs` over
/// `runs` single-seed realizations started at that node.
pub fn spreading_ability(
    g: &Graph,
    lambda: f64,
    t_obs: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidLambda(lambda));
    }
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be >= 1".into()));
    }
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((0..g.node_count() as u32)
        .into_par_iter()
        .map(|v| {
            let mut total = 0u64;
            for r in 0..runs as u64 {
                let mut rng = stream_rng(derive_seed(master_seed, &[v as u64, r]));
                let curve = si_run(g, &[v], lambda, t_obs, &mut rng);
                total += *curve.last().unwrap() as u64;
            }
            total as f64 / runs as f64
        })
        .collect())
}
