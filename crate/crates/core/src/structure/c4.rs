//! (K5, C5)-free graphs of the class that contain an induced C4.
//!
//! With the cycle `v_1..v_4` (anchor positions 0..3): `Y` holds vertices with
//! two consecutive cycle neighbours, `V_1` those adjacent to exactly `v_2`
//! and `v_4`, `V_2` those adjacent to exactly `v_1` and `v_3`, `W_i` those
//! whose only cycle neighbour is `v_i`, and `X` those with none.

use std::collections::BTreeMap;

use super::c5::cycle_sets;
use super::{
    edge_between, edge_within, mask, nbrs_in, non_edge_between, non_edge_within, sorted, Branch, Certificate, Claim,
    DecompositionReport, Part, Shape,
};
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::ops::ScriptBuilder;
use crate::order::induced_embed;
use crate::uniform::{UniformTemplate, UniformWitness};

pub const MAX_DELETIONS: usize = 17;
pub const MAX_BIPARTITE: usize = 2;

pub fn decompose_c4(g: &Graph) -> Result<DecompositionReport> {
    let e = induced_embed(&catalog::graph("C4")?, g).ok_or_else(|| Error::Precondition("graph has no induced C4".into()))?;
    decompose_c4_with_anchor(g, &e.0)
}

/// The eight relabellings of a 4-cycle, rotations first.
fn dihedral(anchor: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for flip in [false, true] {
        for r in 0..4 {
            out.push((0..4).map(|i| anchor[if flip { (r + 4 - i) % 4 } else { (r + i) % 4 }]).collect());
        }
    }
    out
}

struct XSplit {
    x0: Vec<usize>,
    x1: Vec<usize>,
    x2: Vec<usize>,
    v10: Vec<usize>,
    v20: Vec<usize>,
}

fn split_x(g: &Graph, x: &[usize], v1: &[usize], v2: &[usize]) -> XSplit {
    let (mut x0, mut x1, mut x2) = (vec![], vec![], vec![]);
    for &u in x {
        match (nbrs_in(g, u, v1).is_empty(), nbrs_in(g, u, v2).is_empty()) {
            (false, false) => x0.push(u),
            (true, _) => x1.push(u),
            (false, true) => x2.push(u),
        }
    }
    let v10 = v1.iter().copied().filter(|&v| !nbrs_in(g, v, &x0).is_empty()).collect();
    let v20 = v2.iter().copied().filter(|&v| !nbrs_in(g, v, &x0).is_empty()).collect();
    XSplit { x0, x1, x2, v10, v20 }
}

pub fn decompose_c4_with_anchor(g: &Graph, anchor: &[usize]) -> Result<DecompositionReport> {
    if anchor.len() != 4 {
        return Err(Error::Precondition("a C4 anchor has four vertices".into()));
    }
    for h in ["K5", "C5"] {
        if let Some(e) = induced_embed(&catalog::graph(h)?, g) {
            return Err(Error::Precondition(format!("graph contains {h} on {:?}", e.vertex_set())));
        }
    }
    for i in 0..4 {
        g.check_vertex(anchor[i])?;
        let ok = g.has_edge(anchor[i], anchor[(i + 1) % 4]) && !g.has_edge(anchor[i], anchor[(i + 2) % 4]);
        if !ok {
            return Err(Error::Precondition(format!("anchor {anchor:?} is not an induced C4 in order")));
        }
    }

    let mut claims = Vec::new();
    let mut deleted: Vec<usize> = Vec::new();
    let first = cycle_sets(g, anchor, g.all());
    claims.push(Claim::check(
        "L4.3-Y",
        first.y.iter().find_map(|y| non_edge_within(g, y).or_else(|| (y.len() > 2).then(|| y[..3].to_vec()))),
    ));
    deleted.extend(&first.y_all);
    let singles: Vec<usize> = first.w.iter().filter(|w| w.len() == 1).map(|w| w[0]).collect();
    deleted.extend(&singles);
    claims.push(Claim::check(
        "L4.3-B5",
        (0..2).find_map(|p| (!first.w[p].is_empty() && !first.w[p + 2].is_empty()).then(|| vec![first.w[p][0], first.w[p + 2][0]])),
    ));
    let alive = g.all() & !mask(&deleted);

    // relabel so that W_3 and W_4 are empty
    let Some((cycle, s)) = dihedral(anchor).into_iter().find_map(|c| {
        let s = cycle_sets(g, &c, alive);
        (s.w[2].is_empty() && s.w[3].is_empty()).then_some((c, s))
    }) else {
        return Ok(report_without_certificate(anchor, claims, BTreeMap::new()));
    };
    // positions 1 and 3 are v_2 and v_4
    let (mut v1, mut v2) = (s.v[2].clone(), s.v[1].clone());
    let (w1, w2) = (s.w[0].clone(), s.w[1].clone());
    let x = s.x.clone();

    claims.push(Claim::check("L4.3-B1", edge_within(g, &v1).or_else(|| edge_within(g, &v2))));
    claims.push(Claim::check("L4.3-B2", s.w.iter().find_map(|w| edge_within(g, w))));
    claims.push(Claim::check("L4.3-B3", edge_within(g, &x)));
    claims.push(Claim::check("L4.3-B4", edge_between(g, &[w1.clone(), w2.clone()].concat(), &x)));

    let mut split = split_x(g, &x, &v1, &v2);
    let mut regular = None;
    if !split.x0.is_empty() && (split.v10.len() <= 1 || split.v20.len() <= 1) {
        let victim = if split.v10.len() == 1 { split.v10[0] } else { split.v20[0] };
        regular = Some(victim);
        deleted.push(victim);
        v1.retain(|&u| u != victim);
        v2.retain(|&u| u != victim);
        split = split_x(g, &x, &v1, &v2);
    }
    let XSplit { x0, x1, x2, v10, v20 } = split;
    let v0_ok = (v10.len() >= 2 && v20.len() >= 2) || (v10.is_empty() && v20.is_empty() && x0.is_empty());
    claims.push(Claim::check("L4.3-V0", (!v0_ok).then(|| [v10.clone(), v20.clone()].concat())));

    claims.push(Claim::check(
        "L4.3-M1",
        x0.iter().find_map(|&u| {
            let (a, b) = (nbrs_in(g, u, &v10), nbrs_in(g, u, &v20));
            let good = a.len() == 1 && b.len() == 1 && g.has_edge(a[0], b[0]);
            (!good).then(|| [vec![u], a, b].concat())
        }),
    ));
    claims.push(Claim::check(
        "L4.3-M2",
        v10.iter().chain(&v20).find_map(|&u| {
            let a = nbrs_in(g, u, &x0);
            (a.len() != 1).then(|| [vec![u], a].concat())
        }),
    ));
    claims.push(Claim::check(
        "L4.3-M3",
        non_edge_between(g, &v10, &v2).or_else(|| non_edge_between(g, &v20, &v1)),
    ));
    let others = sorted([w1.clone(), w2.clone(), x1.clone(), x2.clone()].concat());
    claims.push(Claim::check(
        "L4.3-M4",
        others.iter().find_map(|&u| {
            [&v10, &v20].into_iter().find_map(|vi0| {
                let k = nbrs_in(g, u, vi0).len();
                (k != 0 && k != vi0.len()).then(|| [vec![u], vi0.clone()].concat())
            })
        }),
    ));

    let mut sets = BTreeMap::new();
    sets.insert("Y".to_string(), sorted(first.y_all.clone()));
    for p in 0..4 {
        sets.insert(format!("Y{}", p + 1), first.y[p].clone());
    }
    sets.insert("Wdeleted".to_string(), sorted(singles.clone()));
    sets.insert("cycle".to_string(), cycle.clone());
    for (name, vs) in [
        ("V1", &v1),
        ("V2", &v2),
        ("W1", &w1),
        ("W2", &w2),
        ("W3", &s.w[2]),
        ("W4", &s.w[3]),
        ("X", &x),
        ("X0", &x0),
        ("X1", &x1),
        ("X2", &x2),
        ("V10", &v10),
        ("V20", &v20),
    ] {
        sets.insert(name.to_string(), vs.clone());
    }
    if let Some(r) = regular {
        sets.insert("Vdeleted".to_string(), vec![r]);
    }

    let mut report = DecompositionReport {
        branch: Branch::C4,
        anchor: anchor.to_vec(),
        sets,
        case: None,
        claims,
        certificate: None,
        notes: Vec::new(),
    };
    if !report.claims_hold() {
        return Ok(report);
    }

    deleted.extend(&cycle);
    let dm = mask(&deleted);
    let mut b = ScriptBuilder::new(g.n());
    for u in bits(dm).collect::<Vec<_>>().into_iter().rev() {
        b.delete(u)?;
    }
    let block = sorted([v10.clone(), v20.clone(), x0.clone()].concat());
    let bm = mask(&block);
    let outside: Vec<usize> = bits(g.all() & !dm & !bm).collect();
    for vi0 in [&v10, &v20] {
        let complete_to: Vec<usize> =
            outside.iter().copied().filter(|&u| !vi0.is_empty() && nbrs_in(g, u, vi0).len() == vi0.len()).collect();
        if !complete_to.is_empty() {
            b.bipartite_complement(vi0, &complete_to)?;
        }
    }
    let survivors = b.survivors();
    let script = b.finish();

    let v1_rest: Vec<usize> = v1.iter().copied().filter(|u| bm >> u & 1 == 0).collect();
    let v2_rest: Vec<usize> = v2.iter().copied().filter(|u| bm >> u & 1 == 0).collect();
    let side_a = sorted([x1.clone(), v1_rest, w1.clone()].concat());
    let side_b = sorted([x2.clone(), v2_rest, w2.clone()].concat());
    // W_i may see V_i, so the named sides are only used when they are independent
    let named = edge_within(g, &side_a).is_none() && edge_within(g, &side_b).is_none();
    if !named {
        report.notes.push("W_i has neighbours in V_i; part A sides computed from its bipartition".into());
    }
    let h = g.induced(&outside)?;
    report.claims.push(Claim::check("L4.3-H", h.bipartition().is_none().then(|| outside.clone())));
    if !report.claims_hold() {
        return Ok(report);
    }
    let mut parts = vec![Part {
        name: "A".into(),
        vertices: outside.clone(),
        shape: Shape::Bipartite { sides: named.then_some((side_a, side_b)), free_of: vec!["P2+P3".into()] },
    }];
    if !block.is_empty() {
        parts.push(Part { name: "B".into(), vertices: block.clone(), shape: Shape::Uniform { witness: triangle_witness(g, &block, &x0, &v10, &v20), bound: 3 } });
    }
    report.certificate = Some(Certificate {
        script,
        survivors,
        parts,
        max_deletions: Some(MAX_DELETIONS),
        max_bipartite: Some(MAX_BIPARTITE),
    });
    Ok(report)
}

/// Template: path `V10 - X0 - V20` with `K` flipping the `V10`/`V20` pair;
/// each `x ∈ X0` and its two neighbours form one copy.
fn triangle_witness(g: &Graph, block: &[usize], x0: &[usize], v10: &[usize], v20: &[usize]) -> UniformWitness {
    let f = Graph::from_edges(3, &[(0, 1), (1, 2)]).expect("path on three vertices");
    let mut k = vec![vec![false; 3]; 3];
    k[0][2] = true;
    k[2][0] = true;
    let template = UniformTemplate::new(f, k).expect("symmetric");
    let mut assign = vec![(usize::MAX, 0); block.len()];
    let at = |u: usize| block.binary_search(&u).expect("vertex in block");
    for (c, &x) in x0.iter().enumerate() {
        assign[at(x)] = (c, 1);
        for (class, side) in [(0, v10), (2, v20)] {
            for v in nbrs_in(g, x, side) {
                assign[at(v)] = (c, class);
            }
        }
    }
    UniformWitness { template, assign }
}

fn report_without_certificate(anchor: &[usize], claims: Vec<Claim>, sets: BTreeMap<String, Vec<usize>>) -> DecompositionReport {
    DecompositionReport { branch: Branch::C4, anchor: anchor.to_vec(), sets, case: None, claims, certificate: None, notes: Vec::new() }
}
