//! Finite quasi-orders, labelled graphs, and the labelled induced subgraph relation.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::embed::{search, Budget, Embedding};

/// A reflexive, transitive relation on the elements `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiOrder {
    size: usize,
    leq: Vec<Vec<bool>>,
}

impl QuasiOrder {
    /// Validates `leq` (row `a`, column `b` means `a <= b`).
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let size = leq.len();
        if leq.iter().any(|row| row.len() != size) {
            return Err(Error::NotQuasiOrder("relation matrix is not square".into()));
        }
        for a in 0..size {
            if !leq[a][a] {
                return Err(Error::NotQuasiOrder(format!("{a} <= {a} fails")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::NotQuasiOrder(format!("{a} <= {b} <= {c} but not {a} <= {c}")));
                    }
                }
            }
        }
        Ok(QuasiOrder { size, leq })
    }

    /// Builds the reflexive-transitive closure of `pairs`.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; size]; size];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::LabelNotInOrder { label: a.max(b), size });
            }
            leq[a][b] = true;
        }
        for k in 0..size {
            for a in 0..size {
                if leq[a][k] {
                    for b in 0..size {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        QuasiOrder::new(leq)
    }

    /// Equality on `size` elements (an antichain).
    pub fn equality(size: usize) -> Self {
        QuasiOrder::from_pairs(size, &[]).expect("equality is a quasi-order")
    }

    /// The chain `0 <= 1 <= ... <= size-1`.
    pub fn chain(size: usize) -> Self {
        let leq = (0..size).map(|a| (0..size).map(|b| a <= b).collect()).collect();
        QuasiOrder::new(leq).expect("a chain is a quasi-order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.size
    }

    /// Two incomparable copies of this order: element `(copy, l)` has index
    /// `copy * size + l`, and `(k, l) <= (k', l')` iff `k == k'` and `l <= l'`.
    pub fn doubled(&self) -> QuasiOrder {
        let m = self.size;
        let leq = (0..2 * m)
            .map(|x| (0..2 * m).map(|y| x / m == y / m && self.leq[x % m][y % m]).collect())
            .collect();
        QuasiOrder { size: 2 * m, leq }
    }
}

/// A graph whose vertices carry labels from some [`QuasiOrder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

impl LabelledGraph {
    pub fn new(graph: Graph, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != graph.n() {
            return Err(Error::LabelCount { expected: graph.n(), got: labels.len() });
        }
        Ok(LabelledGraph { graph, labels })
    }

    /// Every vertex labelled `label`.
    pub fn uniform(graph: Graph, label: usize) -> Self {
        let labels = vec![label; graph.n()];
        LabelledGraph { graph, labels }
    }

    pub fn check_labels(&self, order: &QuasiOrder) -> Result<()> {
        match self.labels.iter().find(|&&l| !order.contains(l)) {
            Some(&label) => Err(Error::LabelNotInOrder { label, size: order.size() }),
            None => Ok(()),
        }
    }
}

/// Finds an induced embedding `f` of `h` into `g` with `l_h(v) <= l_g(f(v))`.
pub fn labelled_embed(h: &LabelledGraph, g: &LabelledGraph, order: &QuasiOrder) -> Result<Option<Embedding>> {
    labelled_embed_with_budget(h, g, order, Budget::UNLIMITED)
}

pub fn labelled_embed_with_budget(
    h: &LabelledGraph,
    g: &LabelledGraph,
    order: &QuasiOrder,
    budget: Budget,
) -> Result<Option<Embedding>> {
    h.check_labels(order)?;
    g.check_labels(order)?;
    search(&h.graph, &g.graph, budget, |v, c| order.leq(h.labels[v], g.labels[c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::graph;

    #[test]
    fn rejects_non_transitive_relation() {
        let leq = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(QuasiOrder::new(leq).is_err());
        assert!(QuasiOrder::new(vec![vec![false]]).is_err());
    }

    #[test]
    fn closure_is_transitive() {
        let q = QuasiOrder::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(q.leq(0, 2) && !q.leq(2, 0));
    }

    #[test]
    fn doubled_copies_are_incomparable() {
        let q = QuasiOrder::chain(2).doubled();
        assert_eq!(q.size(), 4);
        assert!(q.leq(0, 1) && q.leq(2, 3));
        assert!(!q.leq(0, 2) && !q.leq(1, 3) && !q.leq(2, 1));
    }

    #[test]
    fn equal_labels_reduce_to_plain_embedding() {
        let q = QuasiOrder::equality(1);
        let h = LabelledGraph::uniform(graph("P2").unwrap(), 0);
        let g = LabelledGraph::uniform(graph("P3").unwrap(), 0);
        assert!(labelled_embed(&h, &g, &q).unwrap().is_some());
    }

    #[test]
    fn incomparable_labels_block() {
        let q = QuasiOrder::equality(2);
        let h = LabelledGraph::uniform(graph("P1").unwrap(), 0);
        let g = LabelledGraph::uniform(graph("P1").unwrap(), 1);
        assert_eq!(labelled_embed(&h, &g, &q).unwrap(), None);
    }

    #[test]
    fn label_outside_order_is_an_error() {
        let q = QuasiOrder::equality(1);
        let h = LabelledGraph::uniform(graph("P1").unwrap(), 3);
        let g = LabelledGraph::uniform(graph("P1").unwrap(), 0);
        assert!(matches!(labelled_embed(&h, &g, &q), Err(Error::LabelNotInOrder { label: 3, size: 1 })));
    }
}
