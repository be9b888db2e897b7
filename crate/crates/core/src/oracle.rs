//! Exhaustive reference implementations used to cross-check the search
//! code. Nothing here prunes beyond the definitions; inputs must be tiny.

use rand::Rng;

use crate::graph::Graph;
use crate::order::QuasiOrder;

/// Calls `visit` with every injection `0..k -> 0..n` until it returns `true`.
fn injections(k: usize, n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(f: &mut Vec<usize>, used: &mut Vec<bool>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if f.len() == k {
            return visit(f);
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                f.push(v);
                let hit = rec(f, used, k, visit);
                f.pop();
                used[v] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(k), &mut vec![false; n], k, visit)
}

fn preserves_adjacency(h: &Graph, g: &Graph, f: &[usize]) -> bool {
    (0..h.n()).all(|u| (u + 1..h.n()).all(|v| h.has_edge(u, v) == g.has_edge(f[u], f[v])))
}

/// `h ⊆i g` by trying every injection.
pub fn embeds(h: &Graph, g: &Graph) -> bool {
    injections(h.n(), g.n(), &mut |f| preserves_adjacency(h, g, f))
}

/// Labelled `h ⊆i g`: labels must not decrease along the injection.
pub fn labelled_embeds(h: &Graph, hl: &[usize], g: &Graph, gl: &[usize], order: &QuasiOrder) -> bool {
    injections(h.n(), g.n(), &mut |f| {
        (0..h.n()).all(|v| order.leq(hl[v], gl[f[v]])) && preserves_adjacency(h, g, f)
    })
}

/// Labelled embedding that also maps `zh` exactly into `zg`.
pub fn z_respecting_embeds(
    h: &Graph,
    hl: &[usize],
    zh: &[usize],
    g: &Graph,
    gl: &[usize],
    zg: &[usize],
    order: &QuasiOrder,
) -> bool {
    injections(h.n(), g.n(), &mut |f| {
        (0..h.n()).all(|v| order.leq(hl[v], gl[f[v]]) && zh.contains(&v) == zg.contains(&f[v]))
            && preserves_adjacency(h, g, f)
    })
}

/// Whether some `k`-uniform template and position map fit `g`, over every
/// `(F, K)` and every injective placement into `n` copies.
pub fn is_k_uniform(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let f_pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let k_pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let slots = n * k;
    for fcode in 0u64..1 << f_pairs.len() {
        let f_edge = |i: usize, j: usize| {
            f_pairs.iter().position(|&p| p == (i.min(j), i.max(j))).is_some_and(|x| fcode >> x & 1 == 1)
        };
        for kcode in 0u64..1 << k_pairs.len() {
            let kk = |i: usize, j: usize| {
                let x = k_pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
                kcode >> x & 1 == 1
            };
            let adjacent = |a: usize, b: usize| {
                let ((c, i), (d, j)) = ((a / k, a % k), (b / k, b % k));
                ((c == d) && i != j && f_edge(i, j)) ^ kk(i, j)
            };
            let hit = injections(n, slots, &mut |pos| {
                (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == adjacent(pos[u], pos[v])))
            });
            if hit {
                return true;
            }
        }
    }
    false
}

/// Smallest `k <= kmax` for which [`is_k_uniform`] holds.
pub fn uniformicity(g: &Graph, kmax: usize) -> Option<usize> {
    (1..=kmax).find(|&k| is_k_uniform(g, k))
}

/// `G(n, p)` on `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("small graph");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

/// A random quasi-order on `size` elements.
pub fn random_quasi_order<R: Rng>(rng: &mut R, size: usize) -> QuasiOrder {
    let pairs: Vec<(usize, usize)> =
        (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).filter(|&(a, b)| a != b && rng.gen_bool(0.3)).collect();
    QuasiOrder::from_pairs(size, &pairs).expect("labels in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::graph;

    #[test]
    fn small_embeddings() {
        assert!(embeds(&graph("P3").unwrap(), &graph("C5").unwrap()));
        assert!(!embeds(&graph("K3").unwrap(), &graph("C5").unwrap()));
        assert!(!embeds(&graph("P5").unwrap(), &graph("C5").unwrap()));
    }

    #[test]
    fn uniformicity_ground_truths() {
        assert_eq!(uniformicity(&graph("K4").unwrap(), 3), Some(1));
        assert_eq!(uniformicity(&graph("4P1").unwrap(), 3), Some(1));
        assert_eq!(uniformicity(&graph("2P2").unwrap(), 3), Some(2));
        assert_eq!(uniformicity(&graph("P3").unwrap(), 3), Some(2));
    }

    #[test]
    fn labels_must_rise() {
        let chain = QuasiOrder::chain(2);
        let p2 = graph("P2").unwrap();
        assert!(labelled_embeds(&p2, &[0, 0], &p2, &[1, 0], &chain));
        assert!(!labelled_embeds(&p2, &[1, 1], &p2, &[1, 0], &chain));
    }
}
