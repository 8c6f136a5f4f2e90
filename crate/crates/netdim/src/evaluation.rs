//! Ranking validation: rank correlation against simulated spreading.

use serde::Serialize;

use crate::centrality::{compute_measure, Measure, RankList};
use crate::epidemic::{derive_seed, spreading_ability};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Kendall correlation with pair counts. `n` is the sequence length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauResult {
    pub tau: f64,
    pub concordant: u64,
    pub discordant: u64,
    pub n: usize,
}

/// Kendall tau-a of two equal-length sequences: (n_c - n_d) over the full
/// pair count n(n-1)/2. Pairs tied in either coordinate count toward
/// neither term but stay in the denominator, so heavy ties pull tau toward
/// zero rather than being renormalized away.
pub fn kendall_tau_a(x: &[f64], y: &[f64]) -> Result<TauResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "kendall tau needs at least two observations".into(),
        ));
    }
    let mut concordant = 0u64;
    let mut discordant = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i].total_cmp(&x[j]);
            let dy = y[i].total_cmp(&y[j]);
            use std::cmp::Ordering::Equal;
            if dx == Equal || dy == Equal {
                continue;
            }
            if dx == dy {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = 0.5 * n as f64 * (n as f64 - 1.0);
    Ok(TauResult {
        tau: (concordant as f64 - discordant as f64) / pairs,
        concordant,
        discordant,
        n,
    })
}

/// One point of a tau sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub measure: Measure,
    pub lambda: f64,
    pub tau: f64,
}

/// Correlate measures with spreading ability across infection rates.
///
/// For each lambda an ability vector is simulated once with the stream seed
/// `derive_seed(master_seed, [lambda.to_bits()])` and shared by every
/// measure. Local dimension scores are negated before correlating, since
/// smaller values mean more influence there; all other measures correlate
/// as is. Rows come out measure-major in the given order, lambdas in the
/// given order within each measure.
pub fn tau_sweep(
    g: &Graph,
    measures: &[Measure],
    lambdas: &[f64],
    t_obs: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<SweepRow>> {
    let mut scores = Vec::with_capacity(measures.len());
    for &m in measures {
        let sv = compute_measure(g, m)?;
        let adjusted: Vec<f64> = if m == Measure::Ld {
            sv.scores.iter().map(|s| -s).collect()
        } else {
            sv.scores
        };
        scores.push(adjusted);
    }
    let mut abilities = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let seed = derive_seed(master_seed, &[lambda.to_bits()]);
        abilities.push(spreading_ability(g, lambda, t_obs, runs, seed)?);
    }
    let mut rows = Vec::with_capacity(measures.len() * lambdas.len());
    for (m, adjusted) in measures.iter().zip(&scores) {
        for (&lambda, ability) in lambdas.iter().zip(&abilities) {
            let t = kendall_tau_a(adjusted, ability)?;
            rows.push(SweepRow {
                measure: *m,
                lambda,
                tau: t.tau,
            });
        }
    }
    Ok(rows)
}

/// Size of the intersection of two equal-length top-k label lists.
pub fn topk_overlap(a: &RankList, b: &RankList) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let set: std::collections::HashSet<&str> = a.labels.iter().map(String::as_str).collect();
    Ok(b.labels.iter().filter(|l| set.contains(l.as_str())).count())
}

/// One node of a measure-vs-ability scatter.
#[derive(Debug, Clone, Serialize)]
pub struct ScatterRow {
    pub label: String,
    /// Local information dimension score.
    pub x: f64,
    /// Comparison measure score, reported raw.
    pub y: f64,
    /// Simulated spreading ability.
    pub f: f64,
}

/// Per-node table relating information dimension, one comparison measure
/// (degree or local dimension) and spreading ability, in node index order.
/// The ability stream seed matches [`tau_sweep`] for the same lambda.
pub fn scatter_table(
    g: &Graph,
    comparison: Measure,
    lambda: f64,
    t_obs: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<ScatterRow>> {
    if comparison != Measure::Dc && comparison != Measure::Ld {
        return Err(Error::InvalidParameter(format!(
            "comparison must be DC or LD, got {comparison}"
        )));
    }
    let lid = compute_measure(g, Measure::Lid)?;
    let cmp = compute_measure(g, comparison)?;
    let seed = derive_seed(master_seed, &[lambda.to_bits()]);
    let ability = spreading_ability(g, lambda, t_obs, runs, seed)?;
    Ok((0..g.node_count())
        .map(|i| ScatterRow {
            label: g.label(i as u32).to_string(),
            x: lid.scores[i],
            y: cmp.scores[i],
            f: ability[i],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::rank;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tau_on_hand_checked_pairs() {
        // x: 1 2 3, y: 1 3 2 -> pairs (12,13,23): C C D -> (2-1)/3
        let t = kendall_tau_a(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
        assert_eq!((t.concordant, t.discordant), (2, 1));
        assert_abs_diff_eq!(t.tau, 1.0 / 3.0, epsilon = 1e-15);

        let perfect = kendall_tau_a(&[1.0, 2.0, 3.0, 4.0], &[10.0, 20.0, 30.0, 40.0]).unwrap();
        assert_eq!(perfect.tau, 1.0);
        let inverse = kendall_tau_a(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap();
        assert_eq!(inverse.tau, -1.0);
    }

    #[test]
    fn tau_ties_stay_in_denominator() {
        // tie in x for pair (1,2): only 2 of 3 pairs counted
        let t = kendall_tau_a(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((t.concordant, t.discordant), (2, 0));
        assert_abs_diff_eq!(t.tau, 2.0 / 3.0, epsilon = 1e-15);
        // all tied: tau is 0, not undefined
        let z = kendall_tau_a(&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(z.tau, 0.0);
    }

    #[test]
    fn tau_handles_sentinel_infinities() {
        let t = kendall_tau_a(
            &[f64::INFINITY, f64::INFINITY, 1.0],
            &[3.0, 2.0, 1.0],
        )
        .unwrap();
        // inf==inf is a tie; the two (inf, 1.0) pairs are concordant
        assert_eq!((t.concordant, t.discordant), (2, 0));
    }

    #[test]
    fn tau_input_validation() {
        assert!(kendall_tau_a(&[1.0], &[1.0, 2.0]).is_err());
        assert!(kendall_tau_a(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn overlap_counts_shared_labels() {
        let g = crate::graph::tests::karate();
        let dc = rank(&g, &compute_measure(&g, Measure::Dc).unwrap(), Some(10)).unwrap();
        let cc = rank(&g, &compute_measure(&g, Measure::Cc).unwrap(), Some(10)).unwrap();
        let o = topk_overlap(&dc, &cc).unwrap();
        assert!(o <= 10);
        assert_eq!(topk_overlap(&dc, &dc).unwrap(), 10);
        let top3 = rank(&g, &compute_measure(&g, Measure::Dc).unwrap(), Some(3)).unwrap();
        assert!(topk_overlap(&dc, &top3).is_err());
    }

    #[test]
    fn sweep_shape_and_ld_negation() {
        let g = crate::graph::tests::karate();
        let lambdas = [0.05, 0.1];
        let rows = tau_sweep(
            &g,
            &[Measure::Lid, Measure::Ld],
            &lambdas,
            5,
            20,
            42,
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].measure, Measure::Lid);
        assert_eq!(rows[0].lambda, 0.05);
        assert_eq!(rows[3].measure, Measure::Ld);
        assert_eq!(rows[3].lambda, 0.1);
        // negation makes LD correlate positively with spreading
        for r in &rows {
            assert!(r.tau > 0.0, "{r:?}");
        }
        // deterministic
        let again = tau_sweep(&g, &[Measure::Lid, Measure::Ld], &lambdas, 5, 20, 42).unwrap();
        assert_eq!(rows[1].tau, again[1].tau);
    }

    #[test]
    fn scatter_rows_follow_node_order() {
        let g = crate::graph::tests::karate();
        let rows = scatter_table(&g, Measure::Dc, 0.1, 5, 10, 42).unwrap();
        assert_eq!(rows.len(), 34);
        assert_eq!(rows[0].label, "1");
        assert_eq!(rows[0].y, 16.0);
        assert!(rows.iter().all(|r| r.f >= 1.0));
        assert!(scatter_table(&g, Measure::Bc, 0.1, 5, 10, 42).is_err());
    }

    #[test]
    fn negating_scores_flips_tau_sign() {
        let scores = [3.0, 1.0, 2.0];
        let pos = kendall_tau_a(&scores, &[30.0, 10.0, 20.0]).unwrap();
        let neg: Vec<f64> = scores.iter().map(|s| -s).collect();
        let flip = kendall_tau_a(&neg, &[30.0, 10.0, 20.0]).unwrap();
        assert_eq!(pos.tau, 1.0);
        assert_eq!(flip.tau, -1.0);
    }

    #[test]
    fn full_rate_sweep_is_all_ties() {
        // lambda = 1 past the diameter saturates every node: the ability
        // vector is constant, every pair ties, every tau is exactly zero
        let g = crate::graph::tests::karate();
        let rows = tau_sweep(&g, &Measure::ALL, &[1.0], 6, 2, 3).unwrap();
        assert_eq!(rows.len(), Measure::ALL.len());
        assert!(rows.iter().all(|r| r.tau == 0.0), "{rows:?}");
    }

    #[test]
    fn scatter_zero_rate_pins_unit_ability() {
        let g = crate::graph::tests::karate();
        let rows = scatter_table(&g, Measure::Ld, 0.0, 5, 3, 1).unwrap();
        assert!(rows.iter().all(|r| r.f == 1.0));
    }
}
