//! Dimension-based measures built on node-centered box growth.
//!
//! For a center i and box radius l, n_i(l) counts the nodes within distance
//! l of i, the center included, and p_i(l) = n_i(l) / N is the covered
//! fraction. Two log-log regressions over l give the two measures:
//!
//! * local dimension: slope of ln n_i(l) against ln l over l = 1..kappa_i,
//!   where kappa_i is the eccentricity of i. Smaller values mark hubs, so
//!   the measure ranks ascending.
//! * local information dimension: minus the slope of the box information
//!   I_i(l) = -p_i(l) ln p_i(l) against ln l, fitted over the half range
//!   l = 1..ceil(kappa_i / 2). Interior boxes there still distinguish
//!   occupation structure; beyond the half radius p_i saturates toward 1
//!   and the information collapses. Larger values mark influential nodes.
//!
//! A node adjacent to everything has kappa_i = 1, leaving a single fit
//! point. Such nodes are maximally influential by construction and receive
//! sentinel scores (+inf for information dimension, -inf for local
//! dimension) that sort first in each measure's direction.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_shells, Graph, ShellCounts};

use super::{Direction, Measure, ScoreVector};

/// One box size in a fit sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    /// Box radius l >= 1.
    pub l: u32,
    /// Nodes within distance l, center included.
    pub n_cum: u32,
    /// Nodes at exactly distance l.
    pub n_shell: u32,
    /// Covered fraction n_cum / N.
    pub p: f64,
    /// Box information -p ln p.
    pub info: f64,
}

/// Box growth profile of one center, the raw material of both fits.
#[derive(Debug, Clone)]
pub struct FitSample {
    pub center: u32,
    pub rows: Vec<FitRow>,
    /// Largest radius actually present (the center's eccentricity caps it).
    pub r_max: u32,
    /// True when the requested l range was cut short by the eccentricity.
    pub truncated: bool,
}

fn rows_from_shells(sh: &ShellCounts, n: usize, l_max: u32) -> (Vec<FitRow>, u32, bool) {
    let ecc = sh.ecc();
    let r_max = l_max.min(ecc);
    let mut rows = Vec::with_capacity(r_max as usize);
    let mut cum = 1u32;
    for l in 1..=r_max {
        let shell = sh.at(l);
        cum += shell;
        let p = cum as f64 / n as f64;
        rows.push(FitRow {
            l,
            n_cum: cum,
            n_shell: shell,
            p,
            info: -p * p.ln(),
        });
    }
    (rows, r_max, l_max > ecc)
}

/// Box growth profile of `center` for radii 1..=l_max (truncated at the
/// eccentricity). The graph must be connected so p is meaningful.
pub fn box_profile(g: &Graph, center: u32, l_max: u32) -> Result<FitSample> {
    let n = g.node_count();
    if center as usize >= n {
        return Err(Error::NodeOutOfRange {
            index: center as usize,
            n,
        });
    }
    if l_max == 0 {
        return Err(Error::InvalidParameter("box radius must be >= 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected { op: "box profile" });
    }
    let sh = bfs_shells(g, center);
    let (rows, r_max, truncated) = rows_from_shells(&sh, n, l_max);
    Ok(FitSample {
        center,
        rows,
        r_max,
        truncated,
    })
}

/// Least-squares slope of y against x. Needs two distinct x values.
pub fn ols_slope(points: &[(f64, f64)]) -> Result<f64> {
    let mut acc = OlsAcc::default();
    for &(x, y) in points {
        acc.push(x, y);
    }
    acc.slope()
}

/// Streaming least-squares accumulator shared by every fit path.
#[derive(Debug, Default)]
struct OlsAcc {
    n: f64,
    sx: f64,
    sy: f64,
    sxx: f64,
    sxy: f64,
    first_x: Option<f64>,
    distinct: usize,
}

impl OlsAcc {
    fn push(&mut self, x: f64, y: f64) {
        self.n += 1.0;
        self.sx += x;
        self.sy += y;
        self.sxx += x * x;
        self.sxy += x * y;
        match self.first_x {
            None => {
                self.first_x = Some(x);
                self.distinct = 1;
            }
            Some(fx) if self.distinct == 1 && x != fx => self.distinct = 2,
            _ => {}
        }
    }

    fn slope(&self) -> Result<f64> {
        if self.distinct < 2 {
            return Err(Error::DegenerateFit {
                distinct: self.distinct,
            });
        }
        Ok((self.n * self.sxy - self.sx * self.sy) / (self.n * self.sxx - self.sx * self.sx))
    }
}

/// Fit radius used by the information measure: half the eccentricity,
/// rounded up, widened to 2 so there are always two fit points.
fn half_radius(ecc: u32) -> u32 {
    ecc.div_ceil(2).max(2).min(ecc)
}

fn ld_from_one(sh: &ShellCounts) -> f64 {
    let ecc = sh.ecc();
    if ecc < 2 {
        // universal vertex (or isolated center): steepest possible growth
        return f64::NEG_INFINITY;
    }
    let mut acc = OlsAcc::default();
    let mut cum = 1u32;
    for r in 1..=ecc {
        cum += sh.at(r);
        acc.push((r as f64).ln(), (cum as f64).ln());
    }
    acc.slope().expect("ecc >= 2 gives distinct radii")
}

fn lid_from_one(sh: &ShellCounts, n: usize) -> f64 {
    let ecc = sh.ecc();
    if ecc < 2 {
        return f64::INFINITY;
    }
    let mut acc = OlsAcc::default();
    let mut cum = 1u32;
    for l in 1..=half_radius(ecc) {
        cum += sh.at(l);
        let p = cum as f64 / n as f64;
        acc.push((l as f64).ln(), -p * p.ln());
    }
    -acc.slope().expect("half radius >= 2 gives distinct radii")
}

/// Local dimension of every node of a connected graph. Ranks ascending.
pub fn local_dimension(g: &Graph) -> Result<ScoreVector> {
    dimension_scores(g, Measure::Ld)
}

/// Local information dimension of every node of a connected graph.
/// Ranks descending.
pub fn local_information_dimension(g: &Graph) -> Result<ScoreVector> {
    dimension_scores(g, Measure::Lid)
}

fn dimension_scores(g: &Graph, measure: Measure) -> Result<ScoreVector> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            op: match measure {
                Measure::Ld => "local dimension",
                _ => "local information dimension",
            },
        });
    }
    let scores = (0..n as u32)
        .into_par_iter()
        .map(|u| {
            let sh = bfs_shells(g, u);
            match measure {
                Measure::Ld => ld_from_one(&sh),
                _ => lid_from_one(&sh, n),
            }
        })
        .collect();
    Ok(ScoreVector {
        measure,
        scores,
        direction: measure.direction(),
    })
}

/// Local dimension from precomputed shell counts (benchmark stage).
pub fn local_dimension_from_shells(shells: &[ShellCounts]) -> ScoreVector {
    ScoreVector {
        measure: Measure::Ld,
        scores: shells.iter().map(ld_from_one).collect(),
        direction: Direction::Ascending,
    }
}

/// Local information dimension from precomputed shell counts (benchmark
/// stage). `n` is the node count of the underlying connected graph.
pub fn local_information_dimension_from_shells(shells: &[ShellCounts], n: usize) -> ScoreVector {
    ScoreVector {
        measure: Measure::Lid,
        scores: shells.iter().map(|sh| lid_from_one(sh, n)).collect(),
        direction: Direction::Descending,
    }
}

/// Pointwise (non-regressed) information dimension estimate at a single box
/// size, the discrete derivative of the box information:
///
///   D(l) = l / (1 + ln p(l)) * (n_shell(l) / N)
///
/// Undefined where p(l) = 1/e, which zeroes the denominator.
pub fn discrete_lid_estimate(g: &Graph, center: u32, l: u32) -> Result<f64> {
    let n = g.node_count();
    if center as usize >= n {
        return Err(Error::NodeOutOfRange {
            index: center as usize,
            n,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            op: "discrete estimate",
        });
    }
    let sh = bfs_shells(g, center);
    if l == 0 || l > sh.ecc() {
        return Err(Error::InvalidParameter(format!(
            "box radius {l} outside 1..{}",
            sh.ecc()
        )));
    }
    let p = sh.cumulative(l) as f64 / n as f64;
    let shell_fraction = sh.at(l) as f64 / n as f64;
    discrete_lid_from_parts(l as f64, p, shell_fraction)
}

/// The bare estimator arithmetic, exposed so the singularity at p = 1/e can
/// be exercised directly.
pub fn discrete_lid_from_parts(l: f64, p: f64, shell_fraction: f64) -> Result<f64> {
    let denom = 1.0 + p.ln();
    if denom.abs() < 1e-12 {
        return Err(Error::SingularEstimator);
    }
    Ok(l / denom * shell_fraction)
}
