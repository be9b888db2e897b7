//! Seeded random members of the class with a prescribed structure, used to
//! exercise the decomposers. Each generator builds a candidate along the
//! structure, rejects it unless it lies in the class, and shuffles vertices.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{largeness_case, CLASS};
use crate::catalog;
use crate::graph::Graph;
use crate::order::is_free;

const ATTEMPTS: usize = 20_000;

/// A generated graph and the anchor cycle or clique it was built around.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub anchor: Vec<usize>,
}

pub fn in_class(g: &Graph) -> bool {
    is_free(g, &catalog::graphs(CLASS).expect("class list parses")).free
}

fn shuffled<R: Rng>(rng: &mut R, g: Graph, anchor: Vec<usize>) -> Instance {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    Instance { graph: g.permuted(&perm), anchor: anchor.into_iter().map(|v| perm[v]).collect() }
}

struct Builder {
    edges: Vec<(usize, usize)>,
    n: usize,
}

impl Builder {
    fn new() -> Self {
        Builder { edges: Vec::new(), n: 0 }
    }

    fn add(&mut self, count: usize) -> Vec<usize> {
        let vs = (self.n..self.n + count).collect();
        self.n += count;
        vs
    }

    fn join(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn complete(&mut self, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                self.join(u, v);
            }
        }
    }

    fn clique(&mut self, a: &[usize]) {
        for (i, &u) in a.iter().enumerate() {
            for &v in &a[i + 1..] {
                self.join(u, v);
            }
        }
    }

    fn cycle(&mut self, k: usize) -> Vec<usize> {
        let c = self.add(k);
        for i in 0..k {
            self.join(c[i], c[(i + 1) % k]);
        }
        c
    }

    fn graph(&self) -> Option<Graph> {
        Graph::from_edges(self.n, &self.edges).ok()
    }
}

/// Random partial matching between `a` and `b`, each pair kept with
/// probability `p`.
fn matching<R: Rng>(rng: &mut R, a: &[usize], b: &[usize], p: f64) -> Vec<(usize, usize)> {
    let mut bs = b.to_vec();
    bs.shuffle(rng);
    a.iter().zip(bs).filter(|_| rng.gen_bool(p)).map(|(&u, v)| (u, v)).collect()
}

/// A graph of the class containing a K5, with the given number of outside
/// cliques and how many of them are large. Case numbering follows the K5
/// decomposer: 1 (at most one clique), 2 (no large clique), 3 (exactly one
/// large), 4 (two or more large).
pub fn k5_instance<R: Rng>(rng: &mut R, case: usize) -> Option<Instance> {
    for _ in 0..ATTEMPTS {
        let mut b = Builder::new();
        let x = b.add(rng.gen_range(5..=7));
        b.clique(&x);
        let sizes: Vec<usize> = match case {
            1 => {
                if rng.gen_bool(0.5) {
                    vec![]
                } else {
                    vec![rng.gen_range(1..=4)]
                }
            }
            2 => vec![1; rng.gen_range(2..=5)],
            3 => {
                let mut s = vec![rng.gen_range(2..=4)];
                s.extend(vec![1; rng.gen_range(1..=3)]);
                s
            }
            _ => {
                let mut s: Vec<usize> = (0..rng.gen_range(2..=3)).map(|_| rng.gen_range(2..=3)).collect();
                s.extend(vec![1; rng.gen_range(0..=2)]);
                s
            }
        };
        // a few X vertices act as hubs; each outside vertex sees at most one X vertex
        let hubs: Vec<usize> = x.choose_multiple(rng, 2).copied().collect();
        for &s in &sizes {
            let c = b.add(s);
            b.clique(&c);
            for &v in &c {
                if rng.gen_bool(0.6) {
                    let h = if rng.gen_bool(0.8) { hubs[0] } else { hubs[1] };
                    b.join(v, h);
                }
            }
        }
        let Some(g) = b.graph() else { continue };
        if in_class(&g) {
            return Some(shuffled(rng, g, x[..5].to_vec()));
        }
    }
    None
}

/// A K5-free graph of the class around the induced cycle `0..5`, with
/// random `V_i` sizes and random (co-)matchings between them.
pub fn c5_instance<R: Rng>(rng: &mut R) -> Option<Instance> {
    let case = rng.gen_range(1..=7);
    c5_instance_for_case(rng, case)
}

/// As [`c5_instance`], with the pattern of large `V_i` drawn from those of
/// the given largeness case.
pub fn c5_instance_for_case<R: Rng>(rng: &mut R, case: usize) -> Option<Instance> {
    let patterns: Vec<u32> =
        (0..32).filter(|&p| largeness_case(std::array::from_fn(|i| p >> i & 1 == 1)) == case).collect();
    for _ in 0..ATTEMPTS {
        let mut b = Builder::new();
        let c = b.cycle(5);
        let pattern = *patterns.choose(rng)?;
        let v: Vec<Vec<usize>> = (0..5)
            .map(|p| {
                let size = if pattern >> p & 1 == 1 { rng.gen_range(3..=4) } else { rng.gen_range(0..=2) };
                let vp = b.add(size);
                for &u in &vp {
                    b.join(u, c[(p + 4) % 5]);
                    b.join(u, c[(p + 1) % 5]);
                }
                vp
            })
            .collect();
        let x = b.add(*[0, 0, 1, 2, 3, 4].choose(rng).unwrap());
        // a third of the attempts are plain blow-ups of the cycle
        let plain = rng.gen_bool(0.3);
        let missing_p = if plain { 0.0 } else { *[0.0, 0.2, 0.7].choose(rng).unwrap() };
        let x_p = if plain { 0.0 } else { *[0.0, 0.4].choose(rng).unwrap() };
        let far_p = if plain { 0.0 } else { 0.3 };
        for p in 0..5 {
            let (a, next, far) = (&v[p], &v[(p + 1) % 5], &v[(p + 2) % 5]);
            // consecutive sets: complete minus a matching
            let missing = matching(rng, a, next, missing_p);
            for &u in a {
                for &w in next {
                    if !missing.contains(&(u, w)) {
                        b.join(u, w);
                    }
                }
            }
            for (u, w) in matching(rng, a, far, far_p) {
                b.join(u, w);
            }
            for (u, w) in matching(rng, a, &x, x_p) {
                b.join(u, w);
            }
        }
        if !plain && rng.gen_bool(0.3) {
            let p = rng.gen_range(0..5);
            let w = b.add(1);
            b.join(w[0], c[p]);
        }
        if !plain && rng.gen_bool(0.3) {
            let p = rng.gen_range(0..5);
            let y = b.add(1);
            b.join(y[0], c[p]);
            b.join(y[0], c[(p + 1) % 5]);
        }
        let Some(g) = b.graph() else { continue };
        if in_class(&g) && is_free(&g, &[catalog::graph("K5").ok()?]).free {
            return Some(shuffled(rng, g, c));
        }
    }
    None
}

/// A (K5, C5)-free graph of the class around the induced cycle `0..4`, with
/// triangles `x, v1, v2` hanging between `V_1` and `V_2` and loose vertices
/// in `W_1`, `W_2` and `X`.
pub fn c4_instance<R: Rng>(rng: &mut R) -> Option<Instance> {
    let k5c5 = catalog::graphs("K5,C5").ok()?;
    for _ in 0..ATTEMPTS {
        let mut b = Builder::new();
        let c = b.cycle(4);
        let t = *[0, 1, 2, 3, 3, 4].choose(rng).unwrap();
        let (v10, v20, x0) = (b.add(t), b.add(t), b.add(t));
        let (v1r, v2r) = (b.add(rng.gen_range(0..=3)), b.add(rng.gen_range(0..=3)));
        let v1 = [v10.clone(), v1r.clone()].concat();
        let v2 = [v20.clone(), v2r.clone()].concat();
        for &u in &v1 {
            b.join(u, c[1]);
            b.join(u, c[3]);
        }
        for &u in &v2 {
            b.join(u, c[0]);
            b.join(u, c[2]);
        }
        for i in 0..t {
            b.join(x0[i], v10[i]);
            b.join(x0[i], v20[i]);
        }
        b.complete(&v10, &v2);
        b.complete(&v20, &v1r);
        for &u in &v1r {
            for &w in &v2r {
                if rng.gen_bool(0.5) {
                    b.join(u, w);
                }
            }
        }
        let w1 = b.add(rng.gen_range(0..=2) * 2 % 4);
        let w2 = b.add(rng.gen_range(0..=2) * 2 % 4);
        for &u in &w1 {
            b.join(u, c[0]);
        }
        for &u in &w2 {
            b.join(u, c[1]);
        }
        // loose X vertices attach to the parts outside the triangles
        let xr = b.add(rng.gen_range(0..=3));
        for &u in &xr {
            let side = if rng.gen_bool(0.5) { &v1r } else { &v2r };
            for &w in side {
                if rng.gen_bool(0.3) {
                    b.join(u, w);
                }
            }
            if rng.gen_bool(0.3) {
                b.complete(&[u], &v10);
            }
        }
        for &u in w1.iter().chain(&w2) {
            let side = if rng.gen_bool(0.5) { &v1r } else { &v2r };
            for &w in side {
                if rng.gen_bool(0.3) {
                    b.join(u, w);
                }
            }
        }
        if rng.gen_bool(0.3) {
            let p = rng.gen_range(0..4);
            let y = b.add(1);
            b.join(y[0], c[p]);
            b.join(y[0], c[(p + 1) % 4]);
        }
        let Some(g) = b.graph() else { continue };
        if in_class(&g) && is_free(&g, &k5c5).free {
            return Some(shuffled(rng, g, c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 1..=4 {
            let i = k5_instance(&mut rng, case).expect("k5 instance");
            assert!(in_class(&i.graph));
            assert!(i.graph.is_clique_mask(i.graph.mask_of(&i.anchor).unwrap()));
        }
        let i = c5_instance(&mut rng).expect("c5 instance");
        assert!(in_class(&i.graph));
        let i = c4_instance(&mut rng).expect("c4 instance");
        assert!(in_class(&i.graph));
    }
}
