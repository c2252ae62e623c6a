//! Composition of `t` red-blue dominating set instances into one graph whose
//! (semi-)exact dominating sets encode the OR of the inputs.
//!
//! With `q = √t` and input `X_{l,l'}` at position `(l-1)·q + (l'-1)`:
//!
//! * reds `u[l][i][j]` and blues `v[l][i][j']` hold `k` copies of each input;
//!   `u[l][i][j] ~ v[l'][i][j']` iff `r_j b_j'` is an edge of `X_{l,l'}`
//! * `w[i]` sees row `i` of every `U_l`; `d[l][i]` sees row `i` of `U_l` and
//!   every `z[j]` with `j != l`; `s` sees all of `Z`
//! * gadget `c[l][i][j]`: reds `a[l][x][i][j]` for `x` in `1..=k+1`, all on the
//!   blue `b[l][i][j]`, and `a[l][x][i][j] ~ v[l][x][j]` for `x <= k`
//! * `y[l]` sees the gadget blues `b[l][1][j]`; `s'` sees all of `Y`
//!
//! The `v` vertices form the exempt set.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Constraint, CspInstance, Mode};
use crate::poly::{Monomial, MultilinearPoly};
use crate::ring::RingSpec;

use super::rbds::{BipartiteGraph, RbdsInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErbdsGraph {
    pub graph: BipartiteGraph,
    /// Blue vertices on which exactness is waived, ascending.
    pub exempt: Vec<usize>,
    /// Number of inputs after padding to a square.
    pub t: usize,
    pub k: usize,
    pub m_r: usize,
    pub m_b: usize,
}

/// Vertex counts per construction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub d: usize,
    pub z: usize,
    pub y: usize,
    pub gadget_red: usize,
    pub gadget_blue: usize,
    pub red: usize,
    pub blue: usize,
}

/// Blue vertices outside the exempt set whose degree exceeds `m_R + k + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAudit {
    pub threshold: usize,
    pub high_degree: Vec<(String, usize)>,
    pub allowed: usize,
}

impl DegreeAudit {
    pub fn holds(&self) -> bool {
        self.high_degree.len() <= self.allowed
    }
}

struct Builder {
    reds: Vec<String>,
    blues: Vec<String>,
    red_index: BTreeMap<String, usize>,
    blue_index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl Builder {
    fn red(&mut self, label: String) {
        self.red_index.insert(label.clone(), self.reds.len());
        self.reds.push(label);
    }

    fn blue(&mut self, label: String) {
        self.blue_index.insert(label.clone(), self.blues.len());
        self.blues.push(label);
        self.adj.push(Vec::new());
    }

    fn edge(&mut self, red: &str, blue: &str) {
        let r = self.red_index[red];
        let b = self.blue_index[blue];
        self.adj[b].push(r);
    }
}

/// Builds the composed graph. Inputs must agree on `m_R`, `m_B` and `k`; when
/// their number is not a square the first input is repeated until it is.
pub fn gen_erbds_cross(inputs: &[RbdsInstance]) -> Result<ErbdsGraph> {
    let first = inputs.first().ok_or_else(|| Error::invalid("no input instances"))?;
    let (m_r, m_b, k) = (first.m_r(), first.m_b(), first.k());
    for (i, x) in inputs.iter().enumerate() {
        if (x.m_r(), x.m_b(), x.k()) != (m_r, m_b, k) {
            return Err(Error::invalid(format!(
                "input {} has parameters ({}, {}, {}), expected ({m_r}, {m_b}, {k})",
                i + 1,
                x.m_r(),
                x.m_b(),
                x.k()
            )));
        }
    }
    let mut q = 1;
    while q * q < inputs.len() {
        q += 1;
    }
    let t = q * q;
    let mut padded: Vec<&RbdsInstance> = inputs.iter().collect();
    padded.resize(t, first);

    let mut g = Builder {
        reds: Vec::new(),
        blues: Vec::new(),
        red_index: BTreeMap::new(),
        blue_index: BTreeMap::new(),
        adj: Vec::new(),
    };
    let ls = 1..=q;
    for l in ls.clone() {
        for i in 1..=k {
            for j in 1..=m_r {
                g.red(format!("u[{l}][{i}][{j}]"));
            }
        }
    }
    for j in ls.clone() {
        g.red(format!("z[{j}]"));
    }
    for l in ls.clone() {
        g.red(format!("y[{l}]"));
    }
    for l in ls.clone() {
        for i in 1..=k {
            for j in 1..=m_b {
                for x in 1..=k + 1 {
                    g.red(format!("a[{l}][{x}][{i}][{j}]"));
                }
            }
        }
    }

    for l in ls.clone() {
        for i in 1..=k {
            for j in 1..=m_b {
                g.blue(format!("v[{l}][{i}][{j}]"));
            }
        }
    }
    let exempt: Vec<usize> = (0..g.blues.len()).collect();
    for i in 1..=k {
        g.blue(format!("w[{i}]"));
    }
    for l in ls.clone() {
        for i in 1..=k {
            g.blue(format!("d[{l}][{i}]"));
        }
    }
    g.blue("s".to_string());
    g.blue("s'".to_string());
    for l in ls.clone() {
        for i in 1..=k {
            for j in 1..=m_b {
                g.blue(format!("b[{l}][{i}][{j}]"));
            }
        }
    }

    // copies of the inputs
    for l in ls.clone() {
        for lp in ls.clone() {
            let x = padded[(l - 1) * q + (lp - 1)];
            for &(r, b) in x.edges() {
                for i in 1..=k {
                    g.edge(&format!("u[{l}][{i}][{}]", r + 1), &format!("v[{lp}][{i}][{}]", b + 1));
                }
            }
        }
    }
    // row selectors and row uniqueness
    for i in 1..=k {
        for l in ls.clone() {
            for j in 1..=m_r {
                g.edge(&format!("u[{l}][{i}][{j}]"), &format!("w[{i}]"));
                g.edge(&format!("u[{l}][{i}][{j}]"), &format!("d[{l}][{i}]"));
            }
        }
    }
    for j in ls.clone() {
        for l in ls.clone().filter(|&l| l != j) {
            for i in 1..=k {
                g.edge(&format!("z[{j}]"), &format!("d[{l}][{i}]"));
            }
        }
        g.edge(&format!("z[{j}]"), "s");
    }
    // gadgets
    for l in ls.clone() {
        for i in 1..=k {
            for j in 1..=m_b {
                for x in 1..=k + 1 {
                    let a = format!("a[{l}][{x}][{i}][{j}]");
                    g.edge(&a, &format!("b[{l}][{i}][{j}]"));
                    if x <= k {
                        g.edge(&a, &format!("v[{l}][{x}][{j}]"));
                    }
                }
            }
        }
    }
    for l in ls {
        for j in 1..=m_b {
            g.edge(&format!("y[{l}]"), &format!("b[{l}][1][{j}]"));
        }
        g.edge(&format!("y[{l}]"), "s'");
    }

    let graph = BipartiteGraph::new(g.reds, g.blues, g.adj)?;
    Ok(ErbdsGraph {
        graph,
        exempt,
        t,
        k,
        m_r,
        m_b,
    })
}

impl ErbdsGraph {
    pub fn census(&self) -> Census {
        let count = |labels: &[String], prefix: &str| labels.iter().filter(|s| s.starts_with(prefix)).count();
        let reds = self.graph.red_labels();
        let blues = self.graph.blue_labels();
        Census {
            u: count(reds, "u["),
            v: count(blues, "v["),
            w: count(blues, "w["),
            d: count(blues, "d["),
            z: count(reds, "z["),
            y: count(reds, "y["),
            gadget_red: count(reds, "a["),
            gadget_blue: count(blues, "b["),
            red: reds.len(),
            blue: blues.len(),
        }
    }

    pub fn is_exempt(&self, b: usize) -> bool {
        self.exempt.binary_search(&b).is_ok()
    }

    pub fn degree_audit(&self) -> DegreeAudit {
        let threshold = self.m_r + self.k + 2;
        let high_degree = (0..self.graph.blue_count())
            .filter(|&b| !self.is_exempt(b))
            .map(|b| (self.graph.blue_labels()[b].clone(), self.graph.blue_neighbors(b).len()))
            .filter(|&(_, deg)| deg > threshold)
            .collect();
        DegreeAudit {
            threshold,
            high_degree,
            allowed: self.k + 2,
        }
    }

    /// Red labels around every non-exempt blue, keyed by the blue's label.
    pub fn fixed_neighbourhoods(&self) -> BTreeMap<String, Vec<String>> {
        let g = &self.graph;
        (0..g.blue_count())
            .filter(|&b| !self.is_exempt(b))
            .map(|b| {
                let reds = g.blue_neighbors(b).iter().map(|&r| g.red_labels()[r].clone()).collect();
                (g.blue_labels()[b].clone(), reds)
            })
            .collect()
    }
}

/// One variable per red vertex and, per blue vertex, `Σ v_r - 1 = 0` over its
/// red neighbours: satisfiable iff the graph has an exact dominating set.
pub fn erbds_to_csp(g: &BipartiteGraph, ring: &RingSpec) -> Result<CspInstance> {
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!(
            "exact domination is encoded over a field, got {ring}"
        )));
    }
    let n = g.red_count();
    let constraints = (0..g.blue_count())
        .map(|b| {
            let mut terms: Vec<(Monomial, _)> =
                g.blue_neighbors(b).iter().map(|&r| (Monomial::var(r), ring.one())).collect();
            terms.push((Monomial::one(), ring.from_i64(-1)));
            MultilinearPoly::from_terms(ring.clone(), n, terms).map(Constraint::root)
        })
        .collect::<Result<Vec<_>>>()?;
    CspInstance::new(ring.clone(), n, 1, constraints, Mode::AllRoot)
}
