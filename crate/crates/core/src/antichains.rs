//! Generators for infinite antichain families and batch verification of
//! their members on finite ranges.
//!
//! Members are built on a cycle `x_1 - x_2 - ... - x_{4n} - x_1`; vertex
//! `x_i` is vertex `i - 1` of the generated graph.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::{induced_embed_with_budget, Budget};

/// Default per-search node budget for family verification.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `C_{4n}` plus a complete bipartite graph between the vertices
    /// `x_i, i ≡ 1 (mod 4)` and `x_i, i ≡ 3 (mod 4)`.
    Thm51,
    /// `C_{4n}` with both halves `{i ≡ 0, 1}` and `{i ≡ 2, 3}` (mod 4)
    /// complemented.
    Thm52,
    /// Plain cycles `C_n`.
    Cycles,
}

impl Family {
    pub fn min_n(self) -> usize {
        match self {
            Family::Thm51 => 2,
            Family::Thm52 => 3,
            Family::Cycles => 4,
        }
    }

    pub fn generate(self, n: usize) -> Result<Graph> {
        match self {
            Family::Thm51 => gen_thm51(n),
            Family::Thm52 => gen_thm52(n),
            Family::Cycles => {
                if n < 4 {
                    return Err(Error::InvalidParameter(format!("cycle members need n >= 4, got {n}")));
                }
                cycle(n)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Thm51 => "thm51",
            Family::Thm52 => "thm52",
            Family::Cycles => "cycles",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "thm51" => Ok(Family::Thm51),
            "thm52" => Ok(Family::Thm52),
            "cycles" => Ok(Family::Cycles),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?} (thm51, thm52, cycles)"))),
        }
    }
}

fn cycle(len: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..len).map(|v| (v, (v + 1) % len)).collect();
    Graph::from_edges(len, &edges)
}

/// Residue of `x_i` (vertex `i - 1`) modulo 4.
fn residue(v: usize) -> usize {
    (v + 1) % 4
}

pub fn gen_thm51(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let mut g = cycle(4 * n)?;
    for y in (0..4 * n).filter(|&v| residue(v) == 1) {
        for z in (0..4 * n).filter(|&v| residue(v) == 3) {
            g.add_edge(y, z)?;
        }
    }
    Ok(g)
}

pub fn gen_thm52(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
    }
    let g = cycle(4 * n)?;
    let side = |want: bool| -> Vec<usize> { (0..4 * n).filter(|&v| (residue(v) <= 1) == want).collect() };
    let g = crate::ops::subgraph_complement(&g, &side(true))?;
    crate::ops::subgraph_complement(&g, &side(false))
}

/// Recovers the cycle order of a [`gen_thm52`] member from the choice of
/// `x_1`. From `x_1`, steps alternate between the unique neighbour with no
/// common neighbour (the other side) and the non-neighbour with the most
/// common neighbours (the same side). Returns the vertex playing `x_i` at
/// position `i - 1`.
pub fn reconstruct_thm52(g: &Graph, x1: usize) -> Result<Vec<usize>> {
    g.check_vertex(x1)?;
    let n = g.n();
    let common = |a: usize, b: usize| (g.row(a) & g.row(b)).count_ones();
    let unique = |cands: Vec<usize>, what: &str, v: usize| -> Result<usize> {
        match cands.as_slice() {
            [u] => Ok(*u),
            _ => Err(Error::Inconsistent(format!("vertex {v} has {} candidates for its {what}", cands.len()))),
        }
    };
    let mut seq = vec![x1];
    let mut used = 1u64 << x1;
    while seq.len() < n {
        let v = *seq.last().unwrap();
        let next = if seq.len() % 2 == 1 {
            let cands = g.neighbours(v).filter(|&u| common(u, v) == 0).collect();
            unique(cands, "cross neighbour", v)?
        } else {
            let non: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
            let best = non.iter().map(|&u| common(u, v)).max().unwrap_or(0);
            unique(non.into_iter().filter(|&u| common(u, v) == best).collect(), "non-neighbour", v)?
        };
        if used >> next & 1 == 1 {
            return Err(Error::Inconsistent(format!("reconstruction revisits vertex {next}")));
        }
        used |= 1 << next;
        seq.push(next);
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessCell {
    pub n: usize,
    pub forbidden: usize,
    /// `None` if the search ran out of budget.
    pub free: Option<bool>,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCell {
    pub smaller: usize,
    pub larger: usize,
    /// `None` if the search ran out of budget.
    pub embeds: Option<bool>,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub ns: Vec<usize>,
    pub freeness: Vec<FreenessCell>,
    pub pairs: Vec<PairCell>,
}

impl FamilyReport {
    pub fn all_free(&self) -> bool {
        self.freeness.iter().all(|c| c.free == Some(true))
    }

    pub fn antichain(&self) -> bool {
        self.pairs.iter().all(|c| c.embeds == Some(false))
    }

    pub fn exhausted(&self) -> bool {
        self.freeness.iter().any(|c| c.free.is_none()) || self.pairs.iter().any(|c| c.embeds.is_none())
    }

    pub fn passed(&self) -> bool {
        self.all_free() && self.antichain()
    }
}

/// Checks every member `n ∈ ns` against every forbidden graph, and every
/// pair of members (smaller into larger; equal sizes cannot occur since the
/// order grows with `n`). Cells run in parallel; the report is in cell order.
pub fn verify_family(family: Family, ns: &[usize], forbidden: &[Graph], budget: Budget) -> Result<FamilyReport> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let members: Vec<Graph> = ns.iter().map(|&n| family.generate(n)).collect::<Result<_>>()?;

    let free_cells: Vec<(usize, usize)> =
        (0..ns.len()).flat_map(|m| (0..forbidden.len()).map(move |f| (m, f))).collect();
    let freeness = free_cells
        .par_iter()
        .map(|&(m, f)| -> Result<FreenessCell> {
            let cell = |free, witness| FreenessCell { n: ns[m], forbidden: f, free, witness };
            Ok(match induced_embed_with_budget(&forbidden[f], &members[m], budget) {
                Ok(None) => cell(Some(true), None),
                Ok(Some(e)) => cell(Some(false), Some(e.0)),
                Err(Error::BudgetExhausted { .. }) => cell(None, None),
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pair_cells: Vec<(usize, usize)> = (0..ns.len()).flat_map(|a| (a + 1..ns.len()).map(move |b| (a, b))).collect();
    let pairs = pair_cells
        .par_iter()
        .map(|&(a, b)| -> Result<PairCell> {
            let cell = |embeds, witness| PairCell { smaller: ns[a], larger: ns[b], embeds, witness };
            Ok(match induced_embed_with_budget(&members[a], &members[b], budget) {
                Ok(None) => cell(Some(false), None),
                Ok(Some(e)) => cell(Some(true), Some(e.0)),
                Err(Error::BudgetExhausted { .. }) => cell(None, None),
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(FamilyReport { family, ns, freeness, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{graph, graphs};

    #[test]
    fn thm51_sizes_and_degrees() {
        let g = gen_thm51(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 21));
        for y in [0, 4, 8] {
            for z in [2, 6, 10] {
                assert!(g.has_edge(y, z));
            }
        }
        let g2 = gen_thm51(2).unwrap();
        assert_eq!((g2.n(), g2.edge_count()), (8, 12));
        for n in 2..=5 {
            let g = gen_thm51(n).unwrap();
            let x: Vec<usize> = (0..4 * n).filter(|&v| residue(v).is_multiple_of(2)).collect();
            assert!(g.is_independent_mask(g.mask_of(&x).unwrap()));
            for v in 0..4 * n {
                assert_eq!(g.degree(v), if residue(v).is_multiple_of(2) { 2 } else { n + 2 });
            }
        }
        assert!(gen_thm51(1).is_err());
    }

    #[test]
    fn thm52_structure() {
        let g = gen_thm52(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 30));
        for n in 3..=5 {
            let g = gen_thm52(n).unwrap();
            let x = g.mask_of(&(0..4 * n).filter(|&v| residue(v) <= 1).collect::<Vec<_>>()).unwrap();
            for v in 0..4 * n {
                let own = if x >> v & 1 == 1 { x } else { g.all() & !x };
                assert_eq!(g.degree(v), 2 * n - 1);
                assert_eq!((g.row(v) & !own).count_ones(), 1, "one cross neighbour");
                assert_eq!((own & !g.row(v)).count_ones(), 2, "itself and one non-neighbour");
            }
        }
        assert!(gen_thm52(2).is_err());
    }

    #[test]
    fn reconstruction_is_identity_from_x1_and_automorphic_otherwise() {
        for n in 3..=5 {
            let g = gen_thm52(n).unwrap();
            assert_eq!(reconstruct_thm52(&g, 0).unwrap(), (0..4 * n).collect::<Vec<_>>());
            for v in 0..4 * n {
                // x_i goes to seq[i - 1]
                let seq = reconstruct_thm52(&g, v).unwrap();
                assert_eq!(g.permuted(&seq), g, "x1 = {v}");
            }
        }
    }

    #[test]
    fn family_reports() {
        let r = verify_family(Family::Thm51, &[2, 3], &graphs("co(2P1+P2),P2+P4,P6").unwrap(), Budget::UNLIMITED)
            .unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_family(Family::Cycles, &[4, 5, 6, 7, 8], &[], Budget::UNLIMITED).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs.len(), 10);
        let r = verify_family(Family::Cycles, &[5], &[graph("P3").unwrap()], Budget::UNLIMITED).unwrap();
        assert_eq!(r.freeness[0].free, Some(false));
        assert!(r.freeness[0].witness.is_some());
        let r = verify_family(Family::Thm51, &[2, 3], &[graph("P6").unwrap()], Budget::nodes(1)).unwrap();
        assert!(r.exhausted());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::Thm51, Family::Thm52, Family::Cycles] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("thm53".parse::<Family>().is_err());
    }
}
