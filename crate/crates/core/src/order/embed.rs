//! Induced subgraph isomorphism by backtracking.
//!
//! Pattern vertices are placed one at a time. The first is a vertex of
//! largest degree; each following one is the unplaced vertex with the most
//! already-placed neighbours (ties: larger degree, then smaller index). The
//! host candidates for a pattern vertex are the intersection of the host
//! rows (or their complements) of the images of placed vertices, filtered by
//! degree and co-degree, scanned in ascending order. The first embedding
//! found is therefore deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Node limit for a search; `None` means unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget(pub Option<u64>);

impl Budget {
    pub const UNLIMITED: Budget = Budget(None);

    pub fn nodes(limit: u64) -> Self {
        Budget(Some(limit))
    }
}

/// An injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    /// Host image of pattern vertex `v`.
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    /// The host vertices used, sorted.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    /// `true` iff this is an induced embedding of `h` into `g`.
    pub fn verify(&self, h: &Graph, g: &Graph) -> bool {
        if self.0.len() != h.n() || self.0.iter().any(|&x| x >= g.n()) {
            return false;
        }
        let mut used = 0u64;
        for &x in &self.0 {
            if used >> x & 1 == 1 {
                return false;
            }
            used |= 1 << x;
        }
        (0..h.n()).all(|u| (u + 1..h.n()).all(|v| h.has_edge(u, v) == g.has_edge(self.0[u], self.0[v])))
    }
}

/// Placement order for the pattern vertices.
pub(crate) fn search_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by(|&a, &b| {
                let ka = ((h.row(a) & placed).count_ones(), h.degree(a));
                let kb = ((h.row(b) & placed).count_ones(), h.degree(b));
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .unwrap();
        placed |= 1 << next;
        order.push(next);
    }
    order
}

/// Generic search; `compatible(pattern_vertex, host_vertex)` adds a per-vertex filter.
pub(crate) fn search<F>(h: &Graph, g: &Graph, budget: Budget, compatible: F) -> Result<Option<Embedding>>
where
    F: Fn(usize, usize) -> bool,
{
    let (nh, ng) = (h.n(), g.n());
    if nh > ng {
        return Ok(None);
    }
    if nh == 0 {
        return Ok(Some(Embedding(Vec::new())));
    }
    let order = search_order(h);
    // for each depth: earlier depths and whether they are adjacent to this vertex
    let constraints: Vec<Vec<(usize, bool)>> = order
        .iter()
        .enumerate()
        .map(|(d, &v)| (0..d).map(|e| (e, h.has_edge(v, order[e]))).collect())
        .collect();
    let hdeg: Vec<usize> = order.iter().map(|&v| h.degree(v)).collect();
    let gdeg = g.degrees();
    let full = g.all();

    let mut state = State {
        g,
        order: &order,
        constraints: &constraints,
        hdeg: &hdeg,
        gdeg: &gdeg,
        nh,
        ng,
        full,
        image: vec![usize::MAX; nh],
        nodes: 0,
        limit: budget.0,
    };
    let found = state.extend(0, 0, &compatible)?;
    Ok(found.then(|| {
        let mut map = vec![0; nh];
        for (d, &v) in order.iter().enumerate() {
            map[v] = state.image[d];
        }
        Embedding(map)
    }))
}

struct State<'a> {
    g: &'a Graph,
    order: &'a [usize],
    constraints: &'a [Vec<(usize, bool)>],
    hdeg: &'a [usize],
    gdeg: &'a [usize],
    nh: usize,
    ng: usize,
    full: u64,
    image: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
}

impl State<'_> {
    fn extend<F: Fn(usize, usize) -> bool>(&mut self, depth: usize, used: u64, compatible: &F) -> Result<bool> {
        if depth == self.nh {
            return Ok(true);
        }
        let mut cand = self.full & !used;
        for &(e, adjacent) in &self.constraints[depth] {
            let row = self.g.row(self.image[e]);
            cand &= if adjacent { row } else { !row };
        }
        let v = self.order[depth];
        let (dh, codh) = (self.hdeg[depth], self.nh - 1 - self.hdeg[depth]);
        for c in bits(cand) {
            if self.gdeg[c] < dh || self.ng - 1 - self.gdeg[c] < codh || !compatible(v, c) {
                continue;
            }
            self.nodes += 1;
            if let Some(limit) = self.limit {
                if self.nodes > limit {
                    return Err(Error::BudgetExhausted { nodes: self.nodes });
                }
            }
            self.image[depth] = c;
            if self.extend(depth + 1, used | 1 << c, compatible)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Finds an induced embedding of `h` into `g`, if any. The search is complete.
pub fn induced_embed(h: &Graph, g: &Graph) -> Option<Embedding> {
    search(h, g, Budget::UNLIMITED, |_, _| true).expect("unbounded search cannot exhaust")
}

/// As [`induced_embed`], reporting [`Error::BudgetExhausted`] when the node
/// limit is hit before the search space is covered.
pub fn induced_embed_with_budget(h: &Graph, g: &Graph, budget: Budget) -> Result<Option<Embedding>> {
    search(h, g, budget, |_, _| true)
}

/// `H ⊆i G`.
pub fn is_induced_subgraph(h: &Graph, g: &Graph) -> bool {
    induced_embed(h, g).is_some()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && is_induced_subgraph(a, b)
}
