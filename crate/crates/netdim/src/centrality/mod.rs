//! Centrality measures and ranking.
//!
//! Six measures share one interface: each returns a [`ScoreVector`] indexed
//! by node, tagged with the direction in which scores mean "more
//! influential". [`rank`] turns a score vector into an ordered label list.

mod classic;
mod dimension;

pub use classic::{
    betweenness_centrality, closeness_centrality, closeness_from_shells, degree_centrality,
    eigenvector_centrality, power_iteration, rayleigh_quotient, EC_MAX_ITER, EC_TOL,
};
pub use dimension::{
    box_profile, discrete_lid_estimate, discrete_lid_from_parts, local_dimension,
    local_dimension_from_shells, local_information_dimension,
    local_information_dimension_from_shells, ols_slope, FitRow, FitSample,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph};

/// The six supported measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Measure {
    Dc,
    Bc,
    Cc,
    Ec,
    Ld,
    Lid,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Dc,
        Measure::Bc,
        Measure::Cc,
        Measure::Ec,
        Measure::Ld,
        Measure::Lid,
    ];

    /// Sort direction under which rank 1 is the most influential node.
    /// Local dimension is the odd one out: smaller values mark hubs.
    pub fn direction(self) -> Direction {
        match self {
            Measure::Ld => Direction::Ascending,
            _ => Direction::Descending,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Dc => "DC",
            Measure::Bc => "BC",
            Measure::Cc => "CC",
            Measure::Ec => "EC",
            Measure::Ld => "LD",
            Measure::Lid => "LID",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DC" => Ok(Measure::Dc),
            "BC" => Ok(Measure::Bc),
            "CC" => Ok(Measure::Cc),
            "EC" => Ok(Measure::Ec),
            "LD" => Ok(Measure::Ld),
            "LID" => Ok(Measure::Lid),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

/// Which end of the score scale is "most influential".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Descending,
    Ascending,
}

/// Scores for every node of a graph, indexed by node index.
#[derive(Debug, Clone)]
pub struct ScoreVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
    pub direction: Direction,
}

/// Ranked nodes, best first. `truncated` is set when `k` cut the list short.
#[derive(Debug, Clone)]
pub struct RankList {
    pub measure: Measure,
    pub labels: Vec<String>,
    pub scores: Vec<f64>,
    pub truncated: bool,
}

impl RankList {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Order labels for tie-breaking: labels that both parse as unsigned
/// integers compare numerically, otherwise lexicographically, with numeric
/// labels sorting before non-numeric ones.
pub fn label_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Rank nodes by a score vector. Ties break toward the smaller label under
/// [`label_cmp`], so rankings are total and reproducible. `k = None` keeps
/// every node.
pub fn rank(g: &Graph, sv: &ScoreVector, k: Option<usize>) -> Result<RankList> {
    if sv.scores.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            left: sv.scores.len(),
            right: g.node_count(),
        });
    }
    let mut order: Vec<u32> = (0..g.node_count() as u32).collect();
    order.sort_by(|&a, &b| {
        let (sa, sb) = (sv.scores[a as usize], sv.scores[b as usize]);
        let by_score = match sv.direction {
            Direction::Descending => sb.total_cmp(&sa),
            Direction::Ascending => sa.total_cmp(&sb),
        };
        by_score.then_with(|| label_cmp(g.label(a), g.label(b)))
    });
    let take = k.unwrap_or(order.len()).min(order.len());
    let truncated = take < order.len();
    order.truncate(take);
    Ok(RankList {
        measure: sv.measure,
        labels: order.iter().map(|&u| g.label(u).to_string()).collect(),
        scores: order.iter().map(|&u| sv.scores[u as usize]).collect(),
        truncated,
    })
}

/// Compute one measure with default settings (eigenvector centrality uses
/// [`EC_TOL`] and [`EC_MAX_ITER`]).
pub fn compute_measure(g: &Graph, measure: Measure) -> Result<ScoreVector> {
    match measure {
        Measure::Dc => Ok(degree_centrality(g)),
        Measure::Bc => Ok(betweenness_centrality(g)),
        Measure::Cc => closeness_centrality(g),
        Measure::Ec => eigenvector_centrality(g, EC_TOL, EC_MAX_ITER),
        Measure::Ld => local_dimension(g),
        Measure::Lid => local_information_dimension(g),
    }
}
