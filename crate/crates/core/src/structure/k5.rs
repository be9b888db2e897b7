//! Graphs of the class that contain a K5.

use std::collections::BTreeMap;

use super::{mask, nbrs_in, Branch, Certificate, Claim, DecompositionReport, Part, Shape};
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::ops::{OpScript, ScriptBuilder};
use crate::order::induced_embed;

/// Grows `seed` to a maximal clique, trying vertices in ascending order.
fn maximal_clique(g: &Graph, seed: &[usize]) -> Vec<usize> {
    let mut m = mask(seed);
    for v in 0..g.n() {
        if m >> v & 1 == 0 && g.row(v) & m == m {
            m |= 1 << v;
        }
    }
    bits(m).collect()
}

/// X is a maximal clique grown from the first K5 found; the rest must be
/// disjoint cliques X_1..X_k, each vertex with at most one neighbour in X.
pub fn decompose_k5(g: &Graph) -> Result<DecompositionReport> {
    let anchor = induced_embed(&catalog::graph("K5")?, g)
        .ok_or_else(|| Error::Precondition("graph has no K5".into()))?
        .vertex_set();
    let x = maximal_clique(g, &anchor);
    let xm = mask(&x);
    let rest: Vec<usize> = (0..g.n()).filter(|&v| xm >> v & 1 == 0).collect();

    let mut claims = Vec::new();
    claims.push(Claim::check(
        "L4.1-C1",
        rest.iter().find_map(|&v| {
            let ns = nbrs_in(g, v, &x);
            (ns.len() > 1).then(|| [vec![v], ns].concat())
        }),
    ));
    let outside = g.induced(&rest)?;
    let p3 = induced_embed(&catalog::graph("P3")?, &outside).map(|e| e.vertex_set().iter().map(|&i| rest[i]).collect());
    claims.push(Claim::check("L4.1-P3", p3));

    // components of G - X, ordered by smallest vertex
    let cliques: Vec<Vec<usize>> =
        outside.components().into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()).collect();
    let large: Vec<bool> = cliques.iter().map(|c| c.len() >= 2).collect();

    let mut c2 = None;
    'outer: for &xv in &x {
        for (i, ci) in cliques.iter().enumerate() {
            if nbrs_in(g, xv, ci).is_empty() {
                continue;
            }
            for (j, cj) in cliques.iter().enumerate() {
                if i != j && large[j] {
                    let missing: Vec<usize> = cj.iter().copied().filter(|&z| !g.has_edge(xv, z)).collect();
                    if missing.len() > 1 {
                        c2 = Some([vec![xv], missing[..2].to_vec()].concat());
                        break 'outer;
                    }
                }
            }
        }
    }
    claims.push(Claim::check("L4.1-C2", c2));

    let mut sets = BTreeMap::new();
    sets.insert("X".to_string(), x.clone());
    for (i, c) in cliques.iter().enumerate() {
        sets.insert(format!("X{}", i + 1), c.clone());
    }
    let n_large = large.iter().filter(|&&l| l).count();
    let case = if cliques.len() <= 1 {
        1
    } else if n_large == 0 {
        2
    } else if n_large == 1 {
        3
    } else {
        4
    };

    let mut report = DecompositionReport {
        branch: Branch::K5,
        anchor,
        sets,
        case: Some(case),
        claims,
        certificate: None,
        notes: Vec::new(),
    };
    if !report.claims_hold() {
        return Ok(report);
    }

    let all: Vec<usize> = (0..g.n()).collect();
    let certificate = match case {
        1 => {
            let mut b = ScriptBuilder::new(g.n());
            b.subgraph_complement(&all)?;
            Certificate {
                script: b.finish(),
                survivors: all.clone(),
                parts: vec![Part {
                    name: "complement".into(),
                    vertices: all,
                    shape: Shape::Bipartite { sides: None, free_of: vec!["P6".into()] },
                }],
                max_deletions: Some(0),
                max_bipartite: Some(0),
            }
        }
        2 => {
            let mut b = ScriptBuilder::new(g.n());
            b.subgraph_complement(&x)?;
            let script = b.finish();
            let image = crate::ops::apply_script(g, &script)?;
            let parts = image
                .components()
                .into_iter()
                .enumerate()
                .map(|(i, c)| Part { name: format!("star{}", i + 1), vertices: c, shape: Shape::Stars })
                .collect();
            Certificate { script, survivors: all, parts, max_deletions: Some(0), max_bipartite: Some(0) }
        }
        _ => {
            // case 3: X-vertices seeing small cliques; case 4: X-vertices seeing anything outside
            let targets: Vec<usize> = cliques
                .iter()
                .zip(&large)
                .filter(|&(_, &l)| case == 4 || !l)
                .flat_map(|(c, _)| c.iter().copied())
                .collect();
            let deleted: Vec<usize> = x.iter().copied().filter(|&v| !nbrs_in(g, v, &targets).is_empty()).collect();
            report.claims.push(Claim::check("L4.1-L", (deleted.len() > 2).then(|| deleted.clone())));
            report.sets.insert("D".into(), deleted.clone());
            if deleted.len() > 2 {
                return Ok(report);
            }
            let mut b = ScriptBuilder::new(g.n());
            for &v in deleted.iter().rev() {
                b.delete(v)?;
            }
            let survivors = b.survivors();
            let script: OpScript = b.finish();
            let remaining = g.without(&deleted)?;
            let parts = if case == 4 {
                vec![Part { name: "cliques".into(), vertices: survivors.clone(), shape: Shape::P3Free }]
            } else {
                let (mut iso, mut core) = (Vec::new(), Vec::new());
                for (i, &v) in survivors.iter().enumerate() {
                    if remaining.degree(i) == 0 { iso.push(v) } else { core.push(v) }
                }
                let mut parts =
                    vec![Part { name: "core".into(), vertices: core, shape: Shape::CoBipartite { free_of: vec!["P6".into()] } }];
                if !iso.is_empty() {
                    parts.push(Part { name: "isolated".into(), vertices: iso, shape: Shape::Isolated });
                }
                parts
            };
            Certificate { script, survivors, parts, max_deletions: Some(2), max_bipartite: Some(0) }
        }
    };
    report.certificate = Some(certificate);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::graph;
    use crate::structure::check_certificate;

    fn run(g: &Graph) -> DecompositionReport {
        let r = decompose_k5(g).unwrap();
        assert!(r.claims_hold(), "{:?}", r.failed_claims());
        let cert = r.certificate.as_ref().unwrap();
        assert_eq!(check_certificate(g, cert).unwrap(), Vec::<String>::new());
        r
    }

    #[test]
    fn bare_clique_is_case_one() {
        let r = run(&graph("K5").unwrap());
        assert_eq!(r.case, Some(1));
        assert_eq!(r.set("X"), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn isolated_vertices_give_case_two() {
        let r = run(&graph("K5+3P1").unwrap());
        assert_eq!(r.case, Some(2));
    }

    #[test]
    fn pendant_vertex_gives_case_two_stars() {
        let mut g = graph("K5+2P1").unwrap();
        g.add_edge(0, 5).unwrap();
        let r = run(&g);
        assert_eq!(r.case, Some(2));
    }

    #[test]
    fn one_large_clique_case_three() {
        // K6 on 0..6, edge 6-7 outside seen by 0 and 1, pendant 8 on 0
        let mut g = graph("K6+P2+P1").unwrap();
        for (u, v) in [(0, 6), (1, 7), (0, 8)] {
            g.add_edge(u, v).unwrap();
        }
        assert_eq!(crate::structure::route(&g).unwrap(), Branch::K5);
        let r = run(&g);
        assert_eq!(r.case, Some(3));
        assert_eq!(r.set("D"), &[0]);
    }

    #[test]
    fn two_large_cliques_case_four() {
        let mut g = graph("K5+P2+P2").unwrap();
        g.add_edge(0, 5).unwrap();
        g.add_edge(0, 7).unwrap();
        assert_eq!(crate::structure::route(&g).unwrap(), Branch::K5);
        let r = run(&g);
        assert_eq!(r.case, Some(4));
    }

    #[test]
    fn claim_one_failure_is_reported() {
        // a vertex with two neighbours in X: the diamond itself
        let mut g = graph("K5+P1").unwrap();
        g.add_edge(0, 5).unwrap();
        g.add_edge(1, 5).unwrap();
        let r = decompose_k5(&g).unwrap();
        assert_eq!(r.failed_claims(), vec!["L4.1-C1"]);
        assert!(r.certificate.is_none());
    }
}
