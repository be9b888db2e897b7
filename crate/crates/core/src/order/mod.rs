//! The induced subgraph order and the predicates built on it.

mod embed;
mod labelled;

pub use embed::{induced_embed, induced_embed_with_budget, is_induced_subgraph, isomorphic, Budget, Embedding};
pub use labelled::{labelled_embed, labelled_embed_with_budget, LabelledGraph, QuasiOrder};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Graph};

/// Outcome of a freeness test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Freeness {
    pub free: bool,
    /// Index into the forbidden list and the host vertices of the copy found.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// `true` iff `g` contains none of `forbidden` as an induced subgraph.
pub fn is_free(g: &Graph, forbidden: &[Graph]) -> Freeness {
    is_free_with_budget(g, forbidden, Budget::UNLIMITED).expect("unbounded search cannot exhaust")
}

pub fn is_free_with_budget(g: &Graph, forbidden: &[Graph], budget: Budget) -> Result<Freeness> {
    for (i, h) in forbidden.iter().enumerate() {
        if let Some(e) = induced_embed_with_budget(h, g, budget)? {
            return Ok(Freeness { free: false, witness: Some((i, e.vertex_set())) });
        }
    }
    Ok(Freeness { free: true, witness: None })
}

/// Outcome of an antichain test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainCheck {
    pub antichain: bool,
    /// `(i, j)` with `graphs[i] ⊆i graphs[j]`.
    pub comparable: Option<(usize, usize)>,
}

/// `true` iff no member is an induced subgraph of another. Only the
/// direction from the smaller graph into the larger one can succeed, so
/// only that direction is searched (both when sizes are equal).
pub fn antichain_check(graphs: &[Graph]) -> AntichainCheck {
    for i in 0..graphs.len() {
        for j in 0..graphs.len() {
            if i == j || graphs[i].n() > graphs[j].n() {
                continue;
            }
            if is_induced_subgraph(&graphs[i], &graphs[j]) {
                return AntichainCheck { antichain: false, comparable: Some((i, j)) };
            }
        }
    }
    AntichainCheck { antichain: true, comparable: None }
}

/// Higman's order on sequences: `a <=* b` iff `a` maps into `b` along a
/// strictly increasing index sequence with `a[j] <= b[i_j]`.
///
/// Matching each `a[j]` to the earliest admissible position is optimal: any
/// valid index sequence can be shifted left onto the greedy one.
pub fn subseq_leq(a: &[usize], b: &[usize], order: &QuasiOrder) -> Result<bool> {
    if let Some(&label) = a.iter().chain(b).find(|&&l| !order.contains(l)) {
        return Err(Error::LabelNotInOrder { label, size: order.size() });
    }
    let mut next = 0;
    for &x in a {
        match (next..b.len()).find(|&i| order.leq(x, b[i])) {
            Some(i) => next = i + 1,
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn component_is_tree(g: &Graph, comp: u64) -> bool {
    let edges: u32 = bits(comp).map(|v| (g.row(v) & comp).count_ones()).sum::<u32>() / 2;
    edges + 1 == comp.count_ones()
}

/// `true` iff every component is a path.
pub fn is_linear_forest(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) <= 2) && g.component_masks().into_iter().all(|c| component_is_tree(g, c))
}

/// `true` iff every component is a path or a subdivided claw `S_{h,i,j}`.
pub fn in_class_s(g: &Graph) -> bool {
    g.component_masks().into_iter().all(|c| {
        if !component_is_tree(g, c) {
            return false;
        }
        let mut branch = 0;
        for v in bits(c) {
            match g.degree(v) {
                0..=2 => {}
                3 => branch += 1,
                _ => return false,
            }
        }
        branch <= 1
    })
}

/// Largest graph [`modules_of`] will enumerate.
pub const MODULE_ENUMERATION_CAP: usize = 24;

/// All non-trivial modules (`1 < |X| < n`, no outside vertex distinguishes
/// `X`), by subset enumeration. Each module is a sorted vertex list; the
/// list is ordered by bit mask.
pub fn modules_of(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > MODULE_ENUMERATION_CAP {
        return Err(Error::SearchRefused(format!(
            "module enumeration limited to {MODULE_ENUMERATION_CAP} vertices, got {n}"
        )));
    }
    let full = full_mask(n);
    let mut out = Vec::new();
    for x in 1..full {
        let size = x.count_ones() as usize;
        if size < 2 || size >= n {
            continue;
        }
        let distinguished = bits(full & !x).any(|v| {
            let seen = g.row(v) & x;
            seen != 0 && seen != x
        });
        if !distinguished {
            out.push(bits(x).collect());
        }
    }
    Ok(out)
}

pub fn is_prime(g: &Graph) -> Result<bool> {
    Ok(modules_of(g)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{graph, graphs};

    #[test]
    fn freeness_examples() {
        assert!(is_free(&graph("C5").unwrap(), &graphs("K3").unwrap()).free);
        // cliques have no induced diamond
        assert!(is_free(&graph("K5").unwrap(), &graphs("co(2P1+P2)").unwrap()).free);
        let f = is_free(&graph("gem").unwrap(), &graphs("co(2P1+P2)").unwrap());
        assert!(!f.free);
        let (idx, set) = f.witness.unwrap();
        assert_eq!(idx, 0);
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn antichain_examples() {
        assert!(antichain_check(&graphs("C4,C5,C6").unwrap()).antichain);
        let c = antichain_check(&graphs("P3,P4").unwrap());
        assert_eq!(c.comparable, Some((0, 1)));
    }

    #[test]
    fn subsequence_examples() {
        let eq = QuasiOrder::equality(2);
        assert!(subseq_leq(&[], &[0], &eq).unwrap());
        assert!(subseq_leq(&[0], &[0, 1], &eq).unwrap());
        assert!(subseq_leq(&[1, 0], &[0, 1, 0], &eq).unwrap());
        assert!(!subseq_leq(&[1, 1], &[0, 1, 0], &eq).unwrap());
        assert!(subseq_leq(&[2], &[0], &eq).is_err());
    }

    #[test]
    fn class_s_examples() {
        assert!(in_class_s(&graph("K1,3").unwrap()));
        assert!(!in_class_s(&graph("C5").unwrap()));
        assert!(in_class_s(&graph("P7+S1,2,2").unwrap()));
        assert!(!in_class_s(&graph("K1,4").unwrap()));
        // two branch vertices in one tree
        assert!(!in_class_s(&Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap()));
    }

    #[test]
    fn linear_forest_examples() {
        assert!(is_linear_forest(&graph("2P2").unwrap()));
        assert!(!is_linear_forest(&graph("K1,3").unwrap()));
        assert!(is_linear_forest(&graph("P1+2P2").unwrap()));
        assert!(!is_linear_forest(&graph("C4").unwrap()));
    }

    #[test]
    fn module_examples() {
        assert!(is_prime(&graph("P4").unwrap()).unwrap());
        let c4 = modules_of(&graph("C4").unwrap()).unwrap();
        assert!(c4.contains(&vec![0, 2]));
        assert!(!is_prime(&graph("C4").unwrap()).unwrap());
        // every subset of size 2..=4 of a clique
        let k5 = modules_of(&graph("K5").unwrap()).unwrap();
        assert_eq!(k5.len(), 10 + 10 + 5);
    }
}
