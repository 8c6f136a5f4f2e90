//! Compact undirected graph storage and breadth-first primitives.
//!
//! Graphs are simple (self-loops and duplicate edges are collapsed at build
//! time), unweighted, and immutable once built. Node labels are arbitrary
//! strings mapped to dense `u32` indices in order of first appearance.

use std::collections::HashMap;
use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Raw parse output: edges as label pairs plus every distinct label in order
/// of first appearance. Isolated nodes can only enter through formats that
/// declare vertices explicitly (Pajek).
#[derive(Debug, Clone, Default)]
pub struct EdgeList {
    pub edges: Vec<(String, String)>,
    pub labels: Vec<String>,
}

/// Immutable simple undirected graph in compressed sparse row form.
///
/// `offsets` has `n + 1` entries; the neighbors of node `u` are
/// `targets[offsets[u]..offsets[u+1]]`, sorted ascending.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<String>,
    index: HashMap<String, u32>,
}

impl Graph {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor slice of `u`.
    pub fn neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: u32) -> usize {
        self.neighbors(u).len()
    }

    pub fn label(&self, u: u32) -> &str {
        &self.labels[u as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dense index for a label, if present.
    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.node_count() as u32
    }

    fn check_node(&self, u: u32) -> Result<()> {
        if (u as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index: u as usize,
                n: self.node_count(),
            })
        }
    }

    /// True when every node is reachable from node 0 (vacuously true when empty).
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n <= 1 {
            return true;
        }
        bfs_shells(self, 0).reached() as usize == n
    }
}

/// Build a CSR graph from an edge list. Self-loops are dropped, duplicate
/// edges collapsed. Labels keep their first-appearance order as indices.
pub fn build_graph(list: &EdgeList) -> Graph {
    let mut index: HashMap<String, u32> = HashMap::with_capacity(list.labels.len());
    let mut labels: Vec<String> = Vec::with_capacity(list.labels.len());
    for label in &list.labels {
        index.entry(label.clone()).or_insert_with(|| {
            labels.push(label.clone());
            (labels.len() - 1) as u32
        });
    }

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(list.edges.len());
    for (a, b) in &list.edges {
        let ia = index[a];
        let ib = index[b];
        if ia != ib {
            pairs.push((ia.min(ib), ia.max(ib)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let n = labels.len();
    let mut deg = vec![0usize; n];
    for &(a, b) in &pairs {
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    for d in &deg {
        offsets.push(offsets.last().unwrap() + d);
    }
    let mut cursor = offsets.clone();
    let mut targets = vec![0u32; pairs.len() * 2];
    for &(a, b) in &pairs {
        targets[cursor[a as usize]] = b;
        cursor[a as usize] += 1;
        targets[cursor[b as usize]] = a;
        cursor[b as usize] += 1;
    }
    for u in 0..n {
        targets[offsets[u]..offsets[u + 1]].sort_unstable();
    }

    Graph {
        offsets,
        targets,
        labels,
        index,
    }
}

/// One row of the distance matrix. `dist[v]` is `None` when `v` is
/// unreachable from `source`; no in-band sentinel values are used.
#[derive(Debug, Clone)]
pub struct DistanceRow {
    pub source: u32,
    pub dist: Vec<Option<u32>>,
    /// Largest finite distance in the row.
    pub ecc: u32,
}

/// Per-distance node counts from one BFS: `counts[d]` is the number of nodes
/// at exactly distance `d` from the source, so `counts[0] == 1`. Nodes in
/// other components do not appear.
#[derive(Debug, Clone)]
pub struct ShellCounts {
    counts: Vec<u32>,
}

impl ShellCounts {
    /// Eccentricity of the source within its component.
    pub fn ecc(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// Number of nodes reached, source included.
    pub fn reached(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Sum of distances from the source to every reached node.
    pub fn dist_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c as u64)
            .sum()
    }

    /// Count at exact distance `d` (zero beyond the eccentricity).
    pub fn at(&self, d: u32) -> u32 {
        self.counts.get(d as usize).copied().unwrap_or(0)
    }

    /// Number of nodes within distance `d`, source included.
    pub fn cumulative(&self, d: u32) -> u32 {
        self.counts
            .iter()
            .take(d as usize + 1)
            .sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// Single-source BFS returning the full distance row.
pub fn bfs_distances(g: &Graph, source: u32) -> Result<DistanceRow> {
    g.check_node(source)?;
    let n = g.node_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut queue = VecDeque::new();
    dist[source as usize] = Some(0);
    queue.push_back(source);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize].unwrap();
        for &v in g.neighbors(u) {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                ecc = du + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(DistanceRow { source, dist, ecc })
}

/// Single-source BFS that only keeps the per-level counts. This is the
/// workhorse behind the distance-based measures; the full row is never
/// materialized.
pub fn bfs_shells(g: &Graph, source: u32) -> ShellCounts {
    debug_assert!((source as usize) < g.node_count());
    let n = g.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let mut counts = vec![1u32];
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                if counts.len() as u32 == du + 1 {
                    counts.push(0);
                }
                counts[(du + 1) as usize] += 1;
                queue.push_back(v);
            }
        }
    }
    ShellCounts { counts }
}

/// Shell counts for every node, computed in parallel, indexed by node.
pub fn all_shells(g: &Graph) -> Vec<ShellCounts> {
    (0..g.node_count() as u32)
        .into_par_iter()
        .map(|u| bfs_shells(g, u))
        .collect()
}

/// Connected components as sorted index lists, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] {
            continue;
        }
        let mut comp = vec![s];
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Induced subgraph on the largest component. Ties go to the component with
/// the smallest original index; labels are preserved and indices are
/// reassigned in ascending original order.
pub fn largest_component(g: &Graph) -> Graph {
    let comps = components(g);
    let Some(best) = comps.iter().max_by_key(|c| {
        // max_by_key returns the last maximum; invert the leading-index key
        // so the first-seen component wins ties.
        (c.len(), std::cmp::Reverse(c[0]))
    }) else {
        return g.clone();
    };
    let mut remap = HashMap::with_capacity(best.len());
    let mut labels = Vec::with_capacity(best.len());
    for (new, &old) in best.iter().enumerate() {
        remap.insert(old, new as u32);
        labels.push(g.label(old).to_string());
    }
    let mut edges = Vec::new();
    for &old in best {
        for &v in g.neighbors(old) {
            if old < v {
                edges.push((
                    labels[remap[&old] as usize].clone(),
                    labels[remap[&v] as usize].clone(),
                ));
            }
        }
    }
    build_graph(&EdgeList { edges, labels })
}

/// Whole-graph summary statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub avg_shortest_distance: f64,
    pub diameter: u32,
}

/// Compute summary statistics. Average distance and diameter run one BFS per
/// node; the graph must be connected and nonempty.
pub fn graph_stats(g: &Graph) -> Result<GraphStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected { op: "graph stats" });
    }
    let m = g.edge_count();
    let max_degree = g.nodes().map(|u| g.degree(u)).max().unwrap_or(0);
    let (dist_total, diameter) = (0..n as u32)
        .into_par_iter()
        .map(|u| {
            let sh = bfs_shells(g, u);
            (sh.dist_sum(), sh.ecc())
        })
        .reduce(|| (0u64, 0u32), |a, b| (a.0 + b.0, a.1.max(b.1)));
    let pairs = n as f64 * (n as f64 - 1.0);
    let avg_shortest_distance = if n > 1 {
        dist_total as f64 / pairs
    } else {
        0.0
    };
    Ok(GraphStats {
        n,
        m,
        avg_degree: 2.0 * m as f64 / n as f64,
        max_degree,
        avg_shortest_distance,
        diameter,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn list(edges: &[(&str, &str)]) -> EdgeList {
        let mut labels = Vec::new();
        for &(a, b) in edges {
            for t in [a, b] {
                if !labels.iter().any(|l| l == t) {
                    labels.push(t.to_string());
                }
            }
        }
        EdgeList {
            edges: edges
                .iter()
                .map(|&(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            labels,
        }
    }

    pub(crate) fn karate() -> Graph {
        let text = include_str!("../../../data/karate.txt");
        build_graph(&crate::parse::parse_edge_list(text).unwrap())
    }

    #[test]
    fn build_collapses_duplicates_and_loops() {
        let g = build_graph(&list(&[("a", "b"), ("b", "a"), ("a", "a"), ("b", "c")]));
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.index_of("c"), Some(2));
        assert_eq!(g.index_of("d"), None);
    }

    #[test]
    fn labels_keep_first_appearance_order() {
        let g = build_graph(&list(&[("x", "y"), ("z", "x")]));
        assert_eq!(g.labels(), &["x", "y", "z"]);
        assert_eq!(g.label(2), "z");
    }

    #[test]
    fn karate_dimensions() {
        let g = karate();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edge_count(), 78);
        assert_eq!(g.degree(g.index_of("34").unwrap()), 17);
        assert_eq!(g.degree(g.index_of("1").unwrap()), 16);
    }

    #[test]
    fn bfs_distance_row() {
        // path a-b-c-d plus isolated pair e-f
        let g = build_graph(&list(&[("a", "b"), ("b", "c"), ("c", "d"), ("e", "f")]));
        let row = bfs_distances(&g, 0).unwrap();
        assert_eq!(row.dist[3], Some(3));
        assert_eq!(row.dist[4], None);
        assert_eq!(row.ecc, 3);
        assert!(bfs_distances(&g, 99).is_err());
    }

    #[test]
    fn shells_match_distances() {
        let g = karate();
        let sh = bfs_shells(&g, 0);
        assert_eq!(sh.counts(), &[1, 16, 9, 8]);
        assert_eq!(sh.ecc(), 3);
        assert_eq!(sh.reached(), 34);
        assert_eq!(sh.cumulative(1), 17);
        assert_eq!(sh.at(5), 0);
        let row = bfs_distances(&g, 0).unwrap();
        let sum: u64 = row.dist.iter().map(|d| d.unwrap() as u64).sum();
        assert_eq!(sh.dist_sum(), sum);
    }

    #[test]
    fn single_node_graph() {
        let g = build_graph(&EdgeList {
            edges: vec![],
            labels: vec!["solo".into()],
        });
        assert_eq!(g.node_count(), 1);
        assert!(g.is_connected());
        let sh = bfs_shells(&g, 0);
        assert_eq!(sh.ecc(), 0);
        assert_eq!(sh.reached(), 1);
        let st = graph_stats(&g).unwrap();
        assert_eq!(st.diameter, 0);
        assert_eq!(st.avg_shortest_distance, 0.0);
    }

    #[test]
    fn components_and_largest() {
        let g = build_graph(&list(&[("a", "b"), ("c", "d"), ("c", "e")]));
        let comps = components(&g);
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3, 4]]);
        let lc = largest_component(&g);
        assert_eq!(lc.node_count(), 3);
        assert_eq!(lc.labels(), &["c", "d", "e"]);
        assert_eq!(lc.edge_count(), 2);
        assert!(lc.is_connected());
    }

    #[test]
    fn largest_component_tie_takes_first() {
        let g = build_graph(&list(&[("p", "q"), ("r", "s")]));
        let lc = largest_component(&g);
        assert_eq!(lc.labels(), &["p", "q"]);
    }

    #[test]
    fn stats_on_karate() {
        let st = graph_stats(&karate()).unwrap();
        assert_eq!(st.n, 34);
        assert_eq!(st.m, 78);
        assert_eq!(st.max_degree, 17);
        assert_eq!(st.diameter, 5);
        assert_abs_diff_eq!(st.avg_degree, 4.5882, epsilon = 1e-3);
        assert_abs_diff_eq!(st.avg_shortest_distance, 2.4082, epsilon = 1e-3);
    }

    #[test]
    fn stats_reject_empty_and_disconnected() {
        let empty = build_graph(&EdgeList::default());
        assert!(matches!(graph_stats(&empty), Err(Error::EmptyGraph)));
        let g = build_graph(&list(&[("a", "b"), ("c", "d")]));
        assert!(matches!(
            graph_stats(&g),
            Err(Error::Disconnected { .. })
        ));
    }
}
