//! Red-blue bipartite graphs and exhaustive solvers for their domination problems.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest red side [`solve_rbds`] will enumerate.
pub const RBDS_RED_LIMIT: usize = 20;

/// Largest red side [`semi_erbds_by_enumeration`] will enumerate.
pub const ENUMERATION_RED_LIMIT: usize = 24;

/// A red-blue dominating set question: can at most `k` reds dominate every blue?
/// Vertices are 0-based; edges are `(red, blue)` pairs kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsInstance {
    m_r: usize,
    m_b: usize,
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl RbdsInstance {
    pub fn new(m_r: usize, m_b: usize, k: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if k > m_r {
            return Err(Error::invalid(format!("budget {k} exceeds the {m_r} red vertices")));
        }
        let mut seen = BTreeSet::new();
        for &(r, b) in &edges {
            if r >= m_r || b >= m_b {
                return Err(Error::invalid(format!("edge r{} b{} out of range", r + 1, b + 1)));
            }
            if !seen.insert((r, b)) {
                return Err(Error::invalid(format!("duplicate edge r{} b{}", r + 1, b + 1)));
            }
        }
        Ok(RbdsInstance {
            m_r,
            m_b,
            k,
            edges: seen.into_iter().collect(),
        })
    }

    pub fn m_r(&self) -> usize {
        self.m_r
    }

    pub fn m_b(&self) -> usize {
        self.m_b
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, r: usize, b: usize) -> bool {
        self.edges.binary_search(&(r, b)).is_ok()
    }

    pub fn to_graph(&self) -> BipartiteGraph {
        let reds = (1..=self.m_r).map(|i| format!("r{i}")).collect();
        let blues = (1..=self.m_b).map(|j| format!("b{j}")).collect();
        let mut adj = vec![Vec::new(); self.m_b];
        for &(r, b) in &self.edges {
            adj[b].push(r);
        }
        BipartiteGraph::new(reds, blues, adj).expect("validated edges")
    }
}

/// Labelled bipartite graph stored as the red neighbourhood of each blue vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    red_labels: Vec<String>,
    blue_labels: Vec<String>,
    blue_adj: Vec<Vec<usize>>,
    red_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(red_labels: Vec<String>, blue_labels: Vec<String>, mut blue_adj: Vec<Vec<usize>>) -> Result<Self> {
        if blue_adj.len() != blue_labels.len() {
            return Err(Error::ArityMismatch {
                expected: blue_labels.len(),
                found: blue_adj.len(),
            });
        }
        let mut red_adj = vec![Vec::new(); red_labels.len()];
        for (b, nbrs) in blue_adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge at {}", blue_labels[b])));
            }
            for &r in nbrs.iter() {
                if r >= red_labels.len() {
                    return Err(Error::invalid(format!("red index {r} out of range")));
                }
                red_adj[r].push(b);
            }
        }
        Ok(BipartiteGraph {
            red_labels,
            blue_labels,
            blue_adj,
            red_adj,
        })
    }

    pub fn red_count(&self) -> usize {
        self.red_labels.len()
    }

    pub fn blue_count(&self) -> usize {
        self.blue_labels.len()
    }

    pub fn red_labels(&self) -> &[String] {
        &self.red_labels
    }

    pub fn blue_labels(&self) -> &[String] {
        &self.blue_labels
    }

    /// Red neighbours of blue `b`, ascending.
    pub fn blue_neighbors(&self, b: usize) -> &[usize] {
        &self.blue_adj[b]
    }

    /// Blue neighbours of red `r`, ascending.
    pub fn red_neighbors(&self, r: usize) -> &[usize] {
        &self.red_adj[r]
    }

    pub fn edge_count(&self) -> usize {
        self.blue_adj.iter().map(Vec::len).sum()
    }

    /// Whether `chosen` dominates every blue, exactly once outside `exempt`.
    pub fn is_semi_erbds(&self, chosen: &[usize], exempt: &[usize]) -> bool {
        let mut count = vec![0usize; self.blue_count()];
        for &r in chosen {
            for &b in &self.red_adj[r] {
                count[b] += 1;
            }
        }
        let mut is_exempt = vec![false; self.blue_count()];
        for &b in exempt {
            is_exempt[b] = true;
        }
        count
            .iter()
            .zip(&is_exempt)
            .all(|(&c, &e)| if e { c >= 1 } else { c == 1 })
    }
}

/// A dominating set of at most `k` reds, smallest size first and
/// lexicographically first within a size.
pub fn solve_rbds(g: &RbdsInstance) -> Result<Option<Vec<usize>>> {
    if g.m_r > RBDS_RED_LIMIT {
        return Err(Error::OracleLimit {
            what: "red vertices",
            value: g.m_r,
            limit: RBDS_RED_LIMIT,
        });
    }
    let mut masks = vec![0u32; g.m_b];
    for &(r, b) in &g.edges {
        masks[b] |= 1 << r;
    }
    let dominated = |set: u32| masks.iter().all(|&m| m & set != 0);
    fn combos(n: usize, size: usize, start: usize, set: u32, f: &mut dyn FnMut(u32) -> bool) -> bool {
        if size == 0 {
            return f(set);
        }
        for r in start..n {
            if combos(n, size - 1, r + 1, set | 1 << r, f) {
                return true;
            }
        }
        false
    }
    for size in 0..=g.k {
        let mut found = None;
        combos(g.m_r, size, 0, 0, &mut |set| {
            if dominated(set) {
                found = Some(set);
                true
            } else {
                false
            }
        });
        if let Some(set) = found {
            return Ok(Some((0..g.m_r).filter(|&r| set >> r & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// Exact red-blue dominating set: every blue has exactly one chosen neighbour.
pub fn solve_erbds(g: &BipartiteGraph) -> Option<Vec<usize>> {
    solve_semi_erbds(g, &[])
}

struct Search<'g> {
    g: &'g BipartiteGraph,
    exempt: Vec<bool>,
    count: Vec<usize>,
    /// Number of reasons a red is currently unusable; 0 means available.
    blocked: Vec<usize>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn available(&self, r: usize) -> bool {
        self.blocked[r] == 0
    }

    fn choose(&mut self, r: usize) -> Vec<usize> {
        let g = self.g;
        let mut newly = Vec::new();
        self.chosen.push(r);
        self.blocked[r] += 1;
        newly.push(r);
        for &b in g.red_neighbors(r) {
            self.count[b] += 1;
            if !self.exempt[b] {
                for &o in g.blue_neighbors(b) {
                    if o != r {
                        self.blocked[o] += 1;
                        newly.push(o);
                    }
                }
            }
        }
        newly
    }

    fn unchoose(&mut self, r: usize, newly: Vec<usize>) {
        for o in newly {
            self.blocked[o] -= 1;
        }
        for &b in self.g.red_neighbors(r) {
            self.count[b] -= 1;
        }
        self.chosen.pop();
    }

    fn run(&mut self) -> bool {
        let g = self.g;
        // most constrained undominated blue
        let mut best: Option<(usize, usize)> = None;
        for b in 0..g.blue_count() {
            if self.count[b] > 0 {
                continue;
            }
            let avail = g.blue_neighbors(b).iter().filter(|&&r| self.available(r)).count();
            if best.is_none_or(|(_, a)| avail < a) {
                best = Some((b, avail));
                if avail == 0 {
                    return false;
                }
            }
        }
        let Some((b, _)) = best else {
            return true;
        };
        let options: Vec<usize> = g.blue_neighbors(b).iter().copied().filter(|&r| self.available(r)).collect();
        let mut excluded = Vec::new();
        let mut ok = false;
        for r in options {
            if !self.available(r) {
                continue;
            }
            let newly = self.choose(r);
            if self.run() {
                ok = true;
                break;
            }
            self.unchoose(r, newly);
            // later branches never use r again
            self.blocked[r] += 1;
            excluded.push(r);
        }
        for r in excluded {
            self.blocked[r] -= 1;
        }
        ok
    }
}

/// Reds dominating every blue, with exactly one chosen neighbour for each blue
/// outside `exempt`. Backtracking on the undominated blue with the fewest usable
/// neighbours. The returned set is sorted.
pub fn solve_semi_erbds(g: &BipartiteGraph, exempt: &[usize]) -> Option<Vec<usize>> {
    let mut is_exempt = vec![false; g.blue_count()];
    for &b in exempt {
        is_exempt[b] = true;
    }
    let mut s = Search {
        g,
        exempt: is_exempt,
        count: vec![0; g.blue_count()],
        blocked: vec![0; g.red_count()],
        chosen: Vec::new(),
    };
    if s.run() {
        let mut out = s.chosen;
        out.sort_unstable();
        debug_assert!(g.is_semi_erbds(&out, exempt));
        Some(out)
    } else {
        None
    }
}

/// Plain subset enumeration; a cross-check for [`solve_semi_erbds`].
pub fn semi_erbds_by_enumeration(g: &BipartiteGraph, exempt: &[usize]) -> Result<Option<Vec<usize>>> {
    let n = g.red_count();
    if n > ENUMERATION_RED_LIMIT {
        return Err(Error::OracleLimit {
            what: "red vertices",
            value: n,
            limit: ENUMERATION_RED_LIMIT,
        });
    }
    for set in 0u32..1 << n {
        let chosen: Vec<usize> = (0..n).filter(|&r| set >> r & 1 == 1).collect();
        if g.is_semi_erbds(&chosen, exempt) {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}
