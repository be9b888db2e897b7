//! K5-free graphs of the class that contain an induced C5.
//!
//! With the cycle `v_1..v_5` (anchor positions 0..4), every other vertex is
//! sorted by its cycle neighbours: `Y` (two consecutive ones), `W_i` (only
//! `v_i`), `V_i` (exactly `v_{i-1}` and `v_{i+1}`) or `X` (none). Indices are
//! taken modulo 5.

use std::collections::BTreeMap;

use super::{
    comatching_violation, edge_between, edge_within, mask, matching_violation, non_edge_between, non_edge_within,
    Branch, Certificate, Claim, DecompositionReport, Part, Shape,
};
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::ops::{bipartite_complement, ScriptBuilder};
use crate::order::induced_embed;
use crate::uniform::{
    independent_witness, transport_bipartite, union_witness, witness_from_components, witness_from_partition,
    witness_verifies, UniformWitness,
};

/// Template order claimed for each largeness case.
pub const STATED_ORDERS: [usize; 7] = [6, 5, 4, 13, 12, 3, 2];

/// Order reached when cases 4 and 5 go through bipartite-complement
/// transport of a paw template (`8 * 4`, plus one class for `X` in case 4).
pub const ROUTE_ORDERS: [usize; 7] = [6, 5, 4, 33, 32, 3, 2];

/// A set is large when it has at least this many vertices.
pub const LARGE: usize = 3;

/// Case number (1..=7) for the pattern of large `V_i`.
pub fn largeness_case(large: [bool; 5]) -> usize {
    let at = |p: usize| large[p % 5];
    match large.iter().filter(|&&l| l).count() {
        5 => 1,
        4 => 2,
        3 if (0..5).any(|p| at(p) && at(p + 1) && at(p + 2)) => 3,
        3 => 4,
        2 if (0..5).any(|p| at(p) && at(p + 1)) => 5,
        2 => 6,
        _ => 7,
    }
}

pub fn decompose_c5(g: &Graph) -> Result<DecompositionReport> {
    let e = induced_embed(&catalog::graph("C5")?, g).ok_or_else(|| Error::Precondition("graph has no induced C5".into()))?;
    decompose_c5_with_anchor(g, &e.0)
}

fn check_cycle(g: &Graph, anchor: &[usize]) -> Result<()> {
    let k = anchor.len();
    for &v in anchor {
        g.check_vertex(v)?;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(anchor[i], anchor[j]) != consecutive {
                return Err(Error::Precondition(format!("anchor {anchor:?} is not an induced C{k} in order")));
            }
        }
    }
    Ok(())
}

pub(crate) struct CycleSets {
    /// `y[p]`: vertices adjacent to `anchor[p]` and `anchor[p + 1]`.
    pub y: Vec<Vec<usize>>,
    pub y_all: Vec<usize>,
    /// `w[p]`: vertices whose only cycle neighbour is `anchor[p]`.
    pub w: Vec<Vec<usize>>,
    /// `v[p]`: vertices adjacent to exactly `anchor[p - 1]` and `anchor[p + 1]`.
    pub v: Vec<Vec<usize>>,
    pub x: Vec<usize>,
}

/// Sorts the non-cycle vertices of `alive` by their neighbours on the cycle.
pub(crate) fn cycle_sets(g: &Graph, anchor: &[usize], alive: u64) -> CycleSets {
    let k = anchor.len();
    let on_cycle = mask(anchor);
    let mut s = CycleSets { y: vec![vec![]; k], y_all: vec![], w: vec![vec![]; k], v: vec![vec![]; k], x: vec![] };
    for u in bits(alive & !on_cycle) {
        let pos: Vec<usize> = (0..k).filter(|&p| g.has_edge(u, anchor[p])).collect();
        let has = |p: usize| pos.contains(&(p % k));
        let consecutive: Vec<usize> = (0..k).filter(|&p| has(p) && has(p + 1)).collect();
        if !consecutive.is_empty() {
            for p in consecutive {
                s.y[p].push(u);
            }
            s.y_all.push(u);
        } else {
            match pos.as_slice() {
                [] => s.x.push(u),
                [p] => s.w[*p].push(u),
                [a, b] if b - a == 2 => s.v[a + 1].push(u),
                [a, b] if (a + k - b) % k == 2 => s.v[(b + 1) % k].push(u),
                _ => unreachable!("on C4 and C5 two non-consecutive positions are at distance two"),
            }
        }
    }
    s
}

pub fn decompose_c5_with_anchor(g: &Graph, anchor: &[usize]) -> Result<DecompositionReport> {
    if anchor.len() != 5 {
        return Err(Error::Precondition("a C5 anchor has five vertices".into()));
    }
    check_cycle(g, anchor)?;
    let s = cycle_sets(g, anchor, g.all());
    let v = |p: usize| &s.v[p % 5];
    let large: [bool; 5] = std::array::from_fn(|p| s.v[p].len() >= LARGE);
    let x_large = s.x.len() >= LARGE;
    let is_large = |p: usize| large[p % 5];

    let mut claims = Vec::new();
    claims.push(Claim::check(
        "L4.2-Y",
        s.y.iter().find_map(|y| non_edge_within(g, y).or_else(|| (y.len() > 2).then(|| y[..3].to_vec()))),
    ));
    claims.push(Claim::check("L4.2-W", s.w.iter().find(|w| w.len() > 1).map(|w| w[..2].to_vec())));
    claims.push(Claim::check("L4.2-X", edge_within(g, &s.x)));
    claims.push(Claim::check("L4.2-V", s.v.iter().find_map(|vi| edge_within(g, vi))));
    claims.push(Claim::check("L4.2-C1", (0..5).find_map(|p| matching_violation(g, v(p), &s.x))));
    claims.push(Claim::check("L4.2-C2", (0..5).find_map(|p| matching_violation(g, v(p), v(p + 2)))));
    claims.push(Claim::check("L4.2-C3", (0..5).find_map(|p| comatching_violation(g, v(p), v(p + 1)))));
    claims.push(Claim::check(
        "L4.2-C4",
        (0..5).filter(|&p| is_large(p)).find_map(|p| edge_between(g, &s.x, &[v(p + 3).clone(), v(p + 2).clone()].concat())),
    ));
    claims.push(Claim::check(
        "L4.2-C5",
        (0..5).filter(|&p| is_large(p)).find_map(|p| edge_between(g, v(p + 4), v(p + 1))),
    ));
    claims.push(Claim::check(
        "L4.2-C6",
        (0..5)
            .filter(|&p| is_large(p + 4) && is_large(p) && is_large(p + 1))
            .find_map(|p| non_edge_between(g, v(p), &[v(p + 4).clone(), v(p + 1).clone()].concat())),
    ));
    let mut c7 = None;
    'c7: for p in (0..5).filter(|&p| is_large(p) && is_large(p + 1)) {
        let others = [s.x.clone(), v(p + 3).clone()].concat();
        for &y in v(p) {
            for &z in v(p + 1) {
                if g.has_edge(y, z) {
                    continue;
                }
                if let Some(&x) = others.iter().find(|&&x| g.has_edge(x, y) != g.has_edge(x, z)) {
                    c7 = Some(vec![x, y, z]);
                    break 'c7;
                }
            }
        }
    }
    claims.push(Claim::check("L4.2-C7", c7));

    let mut sets = BTreeMap::new();
    sets.insert("Y".to_string(), s.y_all.clone());
    sets.insert("W".to_string(), { let mut w: Vec<usize> = s.w.concat(); w.sort_unstable(); w });
    sets.insert("X".to_string(), s.x.clone());
    for p in 0..5 {
        sets.insert(format!("V{}", p + 1), s.v[p].clone());
    }
    let case = largeness_case(large);
    let mut report = DecompositionReport {
        branch: Branch::C5,
        anchor: anchor.to_vec(),
        sets,
        case: Some(case),
        claims,
        certificate: None,
        notes: Vec::new(),
    };
    if !report.claims_hold() {
        return Ok(report);
    }

    // keep the large V_i and a large X; delete everything else
    let mut kept: Vec<usize> = (0..5).filter(|&p| large[p]).flat_map(|p| s.v[p].clone()).collect();
    if x_large {
        kept.extend(&s.x);
    }
    let kept_mask = mask(&kept);
    let mut b = ScriptBuilder::new(g.n());
    for u in (0..g.n()).rev().filter(|&u| kept_mask >> u & 1 == 0) {
        b.delete(u)?;
    }
    let survivors = b.survivors();
    let script = b.finish();
    let gp = g.induced(&survivors)?;
    let local = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|u| survivors.binary_search(u).unwrap()).collect() };

    let mut classes: Vec<Vec<usize>> = (0..5).filter(|&p| large[p]).map(|p| local(&s.v[p])).collect();
    if x_large {
        classes.push(local(&s.x));
    }
    classes.retain(|c| !c.is_empty());

    let mut witness = witness_from_partition(&gp, &classes).ok();
    if let Some(w) = &witness {
        report.notes.push(format!("partition witness of order {}", w.template.order()));
    }
    if witness.is_none() && (case == 4 || case == 5) {
        let (pair, apex) = consecutive_pair(large, case);
        let a: Vec<usize> = match apex {
            Some(q) => local(&s.v[q]),
            None if x_large => local(&s.x),
            None => Vec::new(),
        };
        let extra = if case == 4 && x_large { local(&s.x) } else { Vec::new() };
        match paw_route(&gp, &local(&s.v[pair]), &local(&s.v[(pair + 1) % 5]), &a, &extra) {
            Ok(w) => {
                report.notes.push(format!("bipartite-complement transport of a paw witness, order {}", w.template.order()));
                witness = Some(w);
            }
            Err(e) => report.notes.push(format!("paw route failed: {e}")),
        }
    }
    let Some(witness) = witness else {
        report.notes.push("no uniform witness could be built".into());
        return Ok(report);
    };
    let bound = STATED_ORDERS[case - 1].max(ROUTE_ORDERS[case - 1]);
    report.certificate = Some(Certificate {
        script,
        survivors: survivors.clone(),
        parts: vec![Part { name: "G'".into(), vertices: survivors, shape: Shape::Uniform { witness, bound } }],
        max_deletions: None,
        max_bipartite: Some(0),
    });
    Ok(report)
}

/// The consecutive pair `(p, p + 1)` of large sets and, in case 4, the
/// large set opposite both.
fn consecutive_pair(large: [bool; 5], case: usize) -> (usize, Option<usize>) {
    let p = (0..5).find(|&p| large[p] && large[(p + 1) % 5]).expect("cases 4 and 5 have a consecutive pair");
    (p, (case == 4).then_some((p + 3) % 5))
}

/// Witness for `gp` (vertices `b ∪ c ∪ a ∪ extra`) when complementing the
/// edges between `b` and `c` leaves components inside the paw, and `extra`
/// is an independent set anticomplete to the rest.
pub(crate) fn paw_route(gp: &Graph, b: &[usize], c: &[usize], a: &[usize], extra: &[usize]) -> Result<UniformWitness> {
    let mut core: Vec<usize> = [b, c, a].concat();
    core.sort_unstable();
    let h = gp.induced(&core)?;
    let pos = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|u| core.binary_search(u).unwrap()).collect() };
    let (hb, hc) = (pos(b), pos(c));
    let flipped = bipartite_complement(&h, &hb, &hc)?;
    let w = witness_from_components(&flipped, &catalog::graph("paw")?)?;
    let w = transport_bipartite(&w, &hb, &hc)?;
    let mut order: Vec<usize> = core.clone();
    order.extend(extra);
    let w = union_witness(&w, &independent_witness(extra.len()));
    // reorder from (core, extra) to ascending vertex order of gp
    let mut assign = vec![(0, 0); gp.n()];
    for (i, &u) in order.iter().enumerate() {
        assign[u] = w.assign[i];
    }
    let w = UniformWitness { template: w.template, assign };
    if order.len() != gp.n() || !witness_verifies(gp, &w) {
        return Err(Error::Inconsistent("transported witness does not verify".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::graph;
    use crate::structure::check_certificate;

    /// The case conditions as separate predicates over the pattern.
    fn conditions(l: [bool; 5]) -> [bool; 7] {
        let at = |p: usize| l[p % 5];
        let count = l.iter().filter(|&&b| b).count();
        let three_in_a_row = (0..5).any(|p| at(p) && at(p + 1) && at(p + 2));
        let adjacent_pair = (0..5).any(|p| at(p) && at(p + 1));
        [
            count == 5,
            count == 4,
            count == 3 && three_in_a_row,
            count == 3 && !three_in_a_row,
            count == 2 && adjacent_pair,
            count == 2 && !adjacent_pair,
            count <= 1,
        ]
    }

    #[test]
    fn every_largeness_pattern_has_exactly_one_case() {
        for bitsv in 0..32u32 {
            let l: [bool; 5] = std::array::from_fn(|p| bitsv >> p & 1 == 1);
            let c = conditions(l);
            assert_eq!(c.iter().filter(|&&b| b).count(), 1, "{l:?}");
            assert!(c[largeness_case(l) - 1], "{l:?}");
        }
    }

    #[test]
    fn bare_cycle() {
        let g = graph("C5").unwrap();
        let r = decompose_c5(&g).unwrap();
        assert!(r.claims_hold());
        assert_eq!(r.case, Some(7));
        assert!(r.set("X").is_empty() && r.set("Y").is_empty());
        let cert = r.certificate.unwrap();
        assert_eq!(check_certificate(&g, &cert).unwrap(), Vec::<String>::new());
        assert!(cert.survivors.is_empty());
    }

    #[test]
    fn paw_route_on_a_co_matched_pair() {
        // B = {0, 1, 2} and C = {3, 4, 5} co-matched, A = {6, 7, 8} with a_i - b_i
        let mut g = Graph::empty(9).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    g.add_edge(i, 3 + j).unwrap();
                }
            }
            g.add_edge(6 + i, i).unwrap();
        }
        let w = paw_route(&g, &[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[]).unwrap();
        assert!(witness_verifies(&g, &w));
        assert!(w.template.order() <= ROUTE_ORDERS[3]);
    }

    #[test]
    fn bad_anchor_is_rejected() {
        let g = graph("C5").unwrap();
        assert!(matches!(decompose_c5_with_anchor(&g, &[0, 2, 1, 3, 4]), Err(Error::Precondition(_))));
    }
}
