//! Structural decompositions of (diamond, P2+P3)-free graphs, split by
//! whether the graph contains a K5, an induced C5, or an induced C4.
//!
//! Each decomposer records the named vertex sets it computes, checks the
//! structural claims those sets must satisfy, and emits a certificate: an
//! operation script plus the shape of each part left afterwards. Replaying
//! the certificate with [`check_certificate`] recomputes everything from the
//! input graph.

mod c4;
mod c5;
pub mod gen;
mod k5;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::ops::{apply_script, OpScript};
use crate::order::{induced_embed, is_free};
use crate::uniform::{verify_witness, UniformWitness};

pub use c4::{decompose_c4, decompose_c4_with_anchor};
pub use c5::{decompose_c5, decompose_c5_with_anchor, largeness_case, ROUTE_ORDERS, STATED_ORDERS};
pub use k5::decompose_k5;

/// The two forbidden graphs of the class handled here.
pub const CLASS: &str = "co(2P1+P2),P2+P3";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    K5,
    C5,
    C4,
    Sparse,
}

/// Picks the decomposition that applies, in the order K5, C5, C4. Graphs
/// containing none of them are checked to be (P6, K5, C4)-free.
pub fn route(g: &Graph) -> Result<Branch> {
    let forbidden = catalog::graphs(CLASS)?;
    let f = is_free(g, &forbidden);
    if let Some((i, witness)) = f.witness {
        return Err(Error::ClassViolation {
            class: CLASS.into(),
            forbidden: catalog::GraphSpec::parse_list(CLASS)?[i].to_string(),
            witness,
        });
    }
    for (name, branch) in [("K5", Branch::K5), ("C5", Branch::C5), ("C4", Branch::C4)] {
        if induced_embed(&catalog::graph(name)?, g).is_some() {
            return Ok(branch);
        }
    }
    let sparse = is_free(g, &catalog::graphs("P6,K5,C4")?);
    if !sparse.free {
        return Err(Error::Inconsistent(format!("graph avoids K5, C5, C4 but contains {:?}", sparse.witness)));
    }
    Ok(Branch::Sparse)
}

/// Outcome of one structural claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexample: Vec<usize>,
}

impl Claim {
    pub(crate) fn check(id: &str, violation: Option<Vec<usize>>) -> Claim {
        Claim { id: id.into(), ok: violation.is_none(), counterexample: violation.unwrap_or_default() }
    }
}

/// What a part of the final graph must look like.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// Bipartite (with the given sides, if any) and free of the listed graphs.
    Bipartite { sides: Option<(Vec<usize>, Vec<usize>)>, free_of: Vec<String> },
    /// The complement is bipartite and free of the listed graphs.
    CoBipartite { free_of: Vec<String> },
    /// Every component is a star or a single vertex.
    Stars,
    /// Every component is a clique.
    P3Free,
    /// No edges.
    Isolated,
    /// A uniform witness, indexed by the part's vertices in ascending order.
    Uniform { witness: UniformWitness, bound: usize },
}

/// A set of surviving vertices (original indices, ascending) and its shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Part {
    pub name: String,
    pub vertices: Vec<usize>,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub script: OpScript,
    /// Original indices of the vertices left by the script, in their final order.
    pub survivors: Vec<usize>,
    pub parts: Vec<Part>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deletions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_bipartite: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub branch: Branch,
    pub anchor: Vec<usize>,
    pub sets: BTreeMap<String, Vec<usize>>,
    pub case: Option<usize>,
    pub claims: Vec<Claim>,
    pub certificate: Option<Certificate>,
    /// Free-form remarks (for example which witness construction was used).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.ok)
    }

    pub fn failed_claims(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| !c.ok).map(|c| c.id.as_str()).collect()
    }

    pub fn set(&self, name: &str) -> &[usize] {
        self.sets.get(name).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Routes and runs the matching decomposition. Sparse graphs get a report
/// with no certificate.
pub fn decompose(g: &Graph) -> Result<DecompositionReport> {
    match route(g)? {
        Branch::K5 => decompose_k5(g),
        Branch::C5 => decompose_c5(g),
        Branch::C4 => decompose_c4(g),
        Branch::Sparse => Ok(DecompositionReport {
            branch: Branch::Sparse,
            anchor: Vec::new(),
            sets: BTreeMap::new(),
            case: None,
            claims: vec![Claim::check("sparse-P6-K5-C4-free", None)],
            certificate: None,
            notes: Vec::new(),
        }),
    }
}

/// Replays the certificate on `g` and checks every part. Returns the list
/// of failures (empty when the certificate is sound).
pub fn check_certificate(g: &Graph, cert: &Certificate) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    if let Some(max) = cert.max_deletions {
        if cert.script.count_deletions() > max {
            failures.push(format!("{} deletions exceed {max}", cert.script.count_deletions()));
        }
    }
    if let Some(max) = cert.max_bipartite {
        if cert.script.count_bipartite() > max {
            failures.push(format!("{} bipartite complementations exceed {max}", cert.script.count_bipartite()));
        }
    }
    let image = apply_script(g, &cert.script)?;
    if image.n() != cert.survivors.len() {
        failures.push(format!("script leaves {} vertices, certificate lists {}", image.n(), cert.survivors.len()));
        return Ok(failures);
    }
    let position: BTreeMap<usize, usize> = cert.survivors.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local = |vs: &[usize]| -> Result<Vec<usize>> {
        vs.iter()
            .map(|v| position.get(v).copied().ok_or_else(|| Error::Inconsistent(format!("vertex {v} did not survive"))))
            .collect()
    };

    let mut covered = 0u64;
    for part in &cert.parts {
        let idx = local(&part.vertices)?;
        let mask = image.mask_of(&idx)?;
        if covered & mask != 0 {
            failures.push(format!("part {} overlaps an earlier part", part.name));
        }
        covered |= mask;
        if let Some(u) = bits(mask).find(|&u| image.row(u) & !mask != 0) {
            failures.push(format!("part {} has an edge leaving it at vertex {}", part.name, cert.survivors[u]));
        }
        let h = image.induced(&idx)?;
        if let Some(f) = check_shape(&h, &idx, &part.shape, &local)? {
            failures.push(format!("part {}: {f}", part.name));
        }
    }
    if covered != image.all() {
        failures.push("parts do not cover the final graph".into());
    }
    Ok(failures)
}

fn check_shape(
    h: &Graph,
    idx: &[usize],
    shape: &Shape,
    local: &dyn Fn(&[usize]) -> Result<Vec<usize>>,
) -> Result<Option<String>> {
    let free_of = |g: &Graph, names: &[String]| -> Result<Option<String>> {
        for name in names {
            if let Some(e) = induced_embed(&catalog::graph(name)?, g) {
                return Ok(Some(format!("contains {name} on {:?}", e.vertex_set())));
            }
        }
        Ok(None)
    };
    Ok(match shape {
        Shape::Bipartite { sides, free_of: names } => {
            if let Some((a, b)) = sides {
                // sides are given in original numbering; re-express them inside the part
                let pos = |vs: &[usize]| -> Result<Vec<usize>> {
                    let l = local(vs)?;
                    Ok(l.iter().filter_map(|x| idx.iter().position(|y| y == x)).collect())
                };
                let (a, b) = (pos(a)?, pos(b)?);
                if a.len() + b.len() != h.n() {
                    return Ok(Some("sides do not cover the part".into()));
                }
                if !h.is_independent_mask(h.mask_of(&a)?) || !h.is_independent_mask(h.mask_of(&b)?) {
                    return Ok(Some("a side is not independent".into()));
                }
            } else if !h.is_bipartite() {
                return Ok(Some("not bipartite".into()));
            }
            free_of(h, names)?
        }
        Shape::CoBipartite { free_of: names } => {
            let c = h.complement();
            if !c.is_bipartite() {
                Some("complement not bipartite".into())
            } else {
                free_of(&c, names)?
            }
        }
        Shape::Stars => h
            .component_masks()
            .into_iter()
            .find(|&c| !is_star(h, c))
            .map(|c| format!("component {:?} is not a star", bits(c).collect::<Vec<_>>())),
        Shape::P3Free => induced_embed(&catalog::graph("P3")?, h).map(|e| format!("induced P3 on {:?}", e.vertex_set())),
        Shape::Isolated => (h.edge_count() > 0).then(|| "has edges".to_string()),
        Shape::Uniform { witness, bound } => match verify_witness(h, witness) {
            Err(e) => Some(e.to_string()),
            Ok(Some((u, v))) => Some(format!("witness fails on pair ({u}, {v})")),
            Ok(None) if witness.template.order() > *bound => {
                Some(format!("witness order {} exceeds {bound}", witness.template.order()))
            }
            Ok(None) => None,
        },
    })
}

fn is_star(g: &Graph, comp: u64) -> bool {
    let size = comp.count_ones();
    let edges: u32 = bits(comp).map(|v| (g.row(v) & comp).count_ones()).sum::<u32>() / 2;
    size <= 2 || (edges == size - 1 && bits(comp).any(|v| (g.row(v) & comp).count_ones() == size - 1))
}

// Set predicates returning a counterexample.

pub(crate) fn mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

pub(crate) fn edge_within(g: &Graph, s: &[usize]) -> Option<Vec<usize>> {
    let m = mask(s);
    s.iter().find_map(|&u| bits(g.row(u) & m).find(|&v| v > u).map(|v| vec![u, v]))
}

pub(crate) fn non_edge_within(g: &Graph, s: &[usize]) -> Option<Vec<usize>> {
    let m = mask(s);
    s.iter().find_map(|&u| bits(m & !g.row(u)).find(|&v| v > u).map(|v| vec![u, v]))
}

pub(crate) fn edge_between(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mb = mask(b);
    a.iter().find_map(|&u| bits(g.row(u) & mb).next().map(|v| vec![u, v]))
}

pub(crate) fn non_edge_between(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mb = mask(b);
    a.iter().find_map(|&u| bits(mb & !g.row(u) & !(1 << u)).next().map(|v| vec![u, v]))
}

/// A vertex with two neighbours on the other side, with those neighbours.
pub(crate) fn matching_violation(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let one_side = |x: &[usize], y: &[usize]| {
        let my = mask(y);
        x.iter().find_map(|&u| {
            let mut it = bits(g.row(u) & my);
            match (it.next(), it.next()) {
                (Some(p), Some(q)) => Some(vec![u, p, q]),
                _ => None,
            }
        })
    };
    one_side(a, b).or_else(|| one_side(b, a))
}

/// A vertex with two non-neighbours on the other side, with those vertices.
pub(crate) fn comatching_violation(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let one_side = |x: &[usize], y: &[usize]| {
        let my = mask(y);
        x.iter().find_map(|&u| {
            let mut it = bits(my & !g.row(u));
            match (it.next(), it.next()) {
                (Some(p), Some(q)) => Some(vec![u, p, q]),
                _ => None,
            }
        })
    };
    one_side(a, b).or_else(|| one_side(b, a))
}

/// Neighbours of `v` among `vs`.
pub(crate) fn nbrs_in(g: &Graph, v: usize, vs: &[usize]) -> Vec<usize> {
    bits(g.row(v) & mask(vs)).collect()
}

pub(crate) fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
