//! k-uniform templates, membership witnesses, bounded uniformicity search,
//! and the template constructions that follow graph operations.
//!
//! Classes and copies are numbered from 0. Vertex `(c, i)` is class `i` of
//! copy `c`; `(c, i)` and `(d, j)` are adjacent iff
//! `(c == d && ij ∈ E(F)) XOR K(i, j)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::order::{induced_embed, Budget};

/// The pair `(F, K)` defining the infinite graph `H(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformTemplate {
    f: Graph,
    k: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct TemplateJson {
    k: usize,
    #[serde(rename = "F_edges")]
    f_edges: Vec<[usize; 2]>,
    #[serde(rename = "K")]
    kmat: Vec<Vec<u8>>,
}

impl Serialize for UniformTemplate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TemplateJson {
            k: self.order(),
            f_edges: self.f.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            kmat: self.k.iter().map(|row| row.iter().map(|&b| b as u8).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniformTemplate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TemplateJson::deserialize(d)?;
        let edges: Vec<_> = j.f_edges.iter().map(|&[u, v]| (u, v)).collect();
        let f = Graph::from_edges(j.k, &edges).map_err(serde::de::Error::custom)?;
        if j.kmat.iter().flatten().any(|&x| x > 1) {
            return Err(serde::de::Error::custom("K entries must be 0 or 1"));
        }
        let kmat = j.kmat.iter().map(|row| row.iter().map(|&x| x == 1).collect()).collect();
        UniformTemplate::new(f, kmat).map_err(serde::de::Error::custom)
    }
}

impl UniformTemplate {
    /// `f` on `k` vertices and a symmetric `k × k` matrix.
    pub fn new(f: Graph, k: Vec<Vec<bool>>) -> Result<Self> {
        let order = f.n();
        if k.len() != order || k.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidParameter(format!("K must be {order} x {order}")));
        }
        for i in 0..order {
            for j in 0..i {
                if k[i][j] != k[j][i] {
                    return Err(Error::InvalidParameter(format!("K is not symmetric at ({j}, {i})")));
                }
            }
        }
        Ok(UniformTemplate { f, k })
    }

    /// Template with `K = 0`.
    pub fn plain(f: Graph) -> Self {
        let k = vec![vec![false; f.n()]; f.n()];
        UniformTemplate { f, k }
    }

    pub fn order(&self) -> usize {
        self.f.n()
    }

    pub fn f(&self) -> &Graph {
        &self.f
    }

    pub fn k(&self, i: usize, j: usize) -> bool {
        self.k[i][j]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.k
    }

    /// Adjacency of two distinct vertices of `H(K)`.
    pub fn adjacent(&self, (c, i): (usize, usize), (d, j): (usize, usize)) -> bool {
        (c == d && i != j && self.f.has_edge(i, j)) ^ self.k[i][j]
    }

    /// The first `m` copies of `H(K)`; vertex `(c, i)` gets index `c * k + i`.
    pub fn expand(&self, m: usize) -> Result<Graph> {
        let k = self.order();
        let n = m * k;
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let mut g = Graph::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                if self.adjacent((a / k, a % k), (b / k, b % k)) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }
}

pub fn expand_template(t: &UniformTemplate, m: usize) -> Result<Graph> {
    t.expand(m)
}

/// A template together with a position `(copy, class)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformWitness {
    pub template: UniformTemplate,
    pub assign: Vec<(usize, usize)>,
}

impl UniformWitness {
    fn check_shape(&self, n: usize) -> Result<()> {
        if self.assign.len() != n {
            return Err(Error::MalformedWitness(format!("{} positions for {n} vertices", self.assign.len())));
        }
        let k = self.template.order();
        let mut seen = std::collections::HashSet::new();
        for (v, &(c, i)) in self.assign.iter().enumerate() {
            if i >= k {
                return Err(Error::MalformedWitness(format!("vertex {v} in class {i}, template has {k}")));
            }
            if !seen.insert((c, i)) {
                return Err(Error::MalformedWitness(format!("position ({c}, {i}) used twice")));
            }
        }
        Ok(())
    }

    /// The witness for `g.induced(set)` (vertices renumbered ascending).
    pub fn restrict(&self, set: &[usize]) -> UniformWitness {
        let mut set = set.to_vec();
        set.sort_unstable();
        UniformWitness { template: self.template.clone(), assign: set.iter().map(|&v| self.assign[v]).collect() }
    }

    /// Number of distinct copies used.
    pub fn copies(&self) -> usize {
        let mut cs: Vec<usize> = self.assign.iter().map(|p| p.0).collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }
}

/// The first pair `(u, v)`, `u < v`, whose adjacency in `g` disagrees with the
/// witness, or `None` if the witness is valid.
pub fn verify_witness(g: &Graph, w: &UniformWitness) -> Result<Option<(usize, usize)>> {
    w.check_shape(g.n())?;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != w.template.adjacent(w.assign[u], w.assign[v]) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

/// `true` iff the witness is well formed and valid for `g`.
pub fn witness_verifies(g: &Graph, w: &UniformWitness) -> bool {
    matches!(verify_witness(g, w), Ok(None))
}

/// Bounds on the exhaustive search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_k: usize,
    pub max_n: usize,
    pub budget: Budget,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_k: 3, max_n: 10, budget: Budget::UNLIMITED }
    }
}

fn pair_index(k: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let diag_and_upper = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let upper = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    (diag_and_upper, upper)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

/// Codes of `(K, F)` after relabelling class `i` as `perm[i]`.
fn codes(k_bits: &[(usize, usize)], f_bits: &[(usize, usize)], kc: u64, fc: u64, perm: &[usize]) -> (u64, u64) {
    let lookup = |bits: &[(usize, usize)], code: u64, a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        let p = bits.iter().position(|&x| x == (a, b)).unwrap();
        code >> p & 1
    };
    // entry (i, j) of the relabelled matrix is entry (perm^-1(i), perm^-1(j))
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let kc2 = k_bits.iter().enumerate().map(|(p, &(i, j))| lookup(k_bits, kc, inv[i], inv[j]) << p).sum();
    let fc2 = f_bits.iter().enumerate().map(|(p, &(i, j))| lookup(f_bits, fc, inv[i], inv[j]) << p).sum();
    (kc2, fc2)
}

struct Assigner<'a> {
    g: &'a Graph,
    t: &'a UniformTemplate,
    assign: Vec<(usize, usize)>,
    occupied: Vec<u64>,
    nodes: u64,
    limit: Option<u64>,
}

impl Assigner<'_> {
    fn extend(&mut self, v: usize) -> Result<bool> {
        if v == self.g.n() {
            return Ok(true);
        }
        let copies = self.occupied.len();
        for class in 0..self.t.order() {
            for copy in 0..=copies {
                if copy < copies && self.occupied[copy] >> class & 1 == 1 {
                    continue;
                }
                let fits = (0..v).all(|u| self.g.has_edge(u, v) == self.t.adjacent(self.assign[u], (copy, class)));
                if !fits {
                    continue;
                }
                self.nodes += 1;
                if self.limit.is_some_and(|l| self.nodes > l) {
                    return Err(Error::BudgetExhausted { nodes: self.nodes });
                }
                if copy == copies {
                    self.occupied.push(0);
                }
                self.occupied[copy] |= 1 << class;
                self.assign.push((copy, class));
                if self.extend(v + 1)? {
                    return Ok(true);
                }
                self.assign.pop();
                self.occupied[copy] &= !(1 << class);
                if copy == copies {
                    self.occupied.pop();
                }
            }
        }
        Ok(false)
    }
}

/// Searches for a `k`-uniform witness within the default limits.
pub fn is_k_uniform(g: &Graph, k: usize) -> Result<Option<UniformWitness>> {
    is_k_uniform_with(g, k, &SearchLimits::default())
}

/// Exhaustive search over templates of order `k`. `K` is enumerated in
/// binary order, `F` by edge-set rank within each `K`, and only the
/// lexicographically smallest `(K, F)` of each class-permutation orbit is
/// tried. Vertices are placed in ascending order; a new copy is opened only
/// as the next unused copy index.
pub fn is_k_uniform_with(g: &Graph, k: usize, limits: &SearchLimits) -> Result<Option<UniformWitness>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > limits.max_k || g.n() > limits.max_n {
        return Err(Error::SearchRefused(format!(
            "search limited to k <= {} and n <= {}, got k = {k}, n = {}",
            limits.max_k,
            limits.max_n,
            g.n()
        )));
    }
    let (k_bits, f_bits) = pair_index(k);
    let perms = permutations(k);
    let mut nodes = 0u64;
    for kc in 0..1u64 << k_bits.len() {
        for fc in 0..1u64 << f_bits.len() {
            if perms.iter().any(|p| codes(&k_bits, &f_bits, kc, fc, p) < (kc, fc)) {
                continue;
            }
            let edges: Vec<_> = f_bits.iter().enumerate().filter(|&(p, _)| fc >> p & 1 == 1).map(|(_, &e)| e).collect();
            let mut kmat = vec![vec![false; k]; k];
            for (p, &(i, j)) in k_bits.iter().enumerate() {
                kmat[i][j] = kc >> p & 1 == 1;
                kmat[j][i] = kmat[i][j];
            }
            let t = UniformTemplate::new(Graph::from_edges(k, &edges)?, kmat)?;
            let mut a = Assigner {
                g,
                t: &t,
                assign: Vec::new(),
                occupied: Vec::new(),
                nodes,
                limit: limits.budget.0,
            };
            let found = a.extend(0)?;
            nodes = a.nodes;
            if found {
                let assign = a.assign;
                return Ok(Some(UniformWitness { template: t, assign }));
            }
        }
    }
    Ok(None)
}

/// The least `k <= kmax` for which `g` is `k`-uniform.
pub fn uniformicity(g: &Graph, kmax: usize) -> Result<Option<usize>> {
    uniformicity_with(g, kmax, &SearchLimits::default())
}

pub fn uniformicity_with(g: &Graph, kmax: usize, limits: &SearchLimits) -> Result<Option<usize>> {
    for k in 1..=kmax {
        if is_k_uniform_with(g, k, limits)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Doubles the template so that complementing any vertex set can be
/// absorbed by moving those vertices to the new classes. Class `i + k` is
/// the twin of class `i`: `F'` joins `i + k` to the `F`-neighbours of `i` in
/// both halves, and `K'` agrees with `K` except on pairs of twins, where it
/// is flipped.
pub fn complement_template(t: &UniformTemplate) -> UniformTemplate {
    let k = t.order();
    let mut f = Graph::empty(2 * k).expect("template order within cap");
    for (i, j) in t.f.edges() {
        for (a, b) in [(i, j), (i + k, j), (i, j + k), (i + k, j + k)] {
            f.add_edge(a, b).expect("valid twin edge");
        }
    }
    let kmat = (0..2 * k)
        .map(|a| (0..2 * k).map(|b| t.k[a % k][b % k] ^ (a >= k && b >= k)).collect())
        .collect();
    UniformTemplate { f, k: kmat }
}

/// Transports `w` to a witness for `subgraph_complement(G, x)` over
/// [`complement_template`] of its template.
pub fn transport_complement(w: &UniformWitness, x: &[usize]) -> Result<UniformWitness> {
    let k = w.template.order();
    let mut assign = w.assign.clone();
    for &v in x {
        let slot = assign.get_mut(v).ok_or(Error::VertexOutOfRange { vertex: v, n: w.assign.len() })?;
        if slot.1 < k {
            slot.1 += k;
        }
    }
    Ok(UniformWitness { template: complement_template(&w.template), assign })
}

/// Order-`8k` template reached by complementing along `X`, `Y` and `X ∪ Y`.
pub fn bipartite_complement_template(t: &UniformTemplate) -> UniformTemplate {
    complement_template(&complement_template(&complement_template(t)))
}

/// Transports `w` to a witness for `bipartite_complement(G, x, y)`.
pub fn transport_bipartite(w: &UniformWitness, x: &[usize], y: &[usize]) -> Result<UniformWitness> {
    if let Some(&v) = x.iter().find(|v| y.contains(v)) {
        return Err(Error::Overlap(vec![v]));
    }
    let both: Vec<usize> = x.iter().chain(y).copied().collect();
    let w1 = transport_complement(w, x)?;
    let w2 = transport_complement(&w1, y)?;
    transport_complement(&w2, &both)
}

/// Witness for the disjoint union of the graphs witnessed by `a` and `b`
/// (vertices of `a` first). The templates are placed side by side with `K`
/// zero between them, and `b`'s copies are renumbered after `a`'s.
pub fn union_witness(a: &UniformWitness, b: &UniformWitness) -> UniformWitness {
    let (ka, kb) = (a.template.order(), b.template.order());
    let f = a.template.f.disjoint_union(&b.template.f).expect("template orders within cap");
    let kmat = (0..ka + kb)
        .map(|i| {
            (0..ka + kb)
                .map(|j| match (i < ka, j < ka) {
                    (true, true) => a.template.k[i][j],
                    (false, false) => b.template.k[i - ka][j - ka],
                    _ => false,
                })
                .collect()
        })
        .collect();
    let offset = a.assign.iter().map(|p| p.0 + 1).max().unwrap_or(0);
    let assign = a.assign.iter().copied().chain(b.assign.iter().map(|&(c, i)| (c + offset, i + ka))).collect();
    UniformWitness { template: UniformTemplate { f, k: kmat }, assign }
}

/// One class, `K = 0`: every vertex in its own copy. Valid exactly for edgeless graphs.
pub fn independent_witness(n: usize) -> UniformWitness {
    UniformWitness {
        template: UniformTemplate::plain(Graph::empty(1).expect("one vertex")),
        assign: (0..n).map(|c| (c, 0)).collect(),
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, v: usize) -> usize {
        if self.0[v] != v {
            let r = self.find(self.0[v]);
            self.0[v] = r;
        }
        self.0[v]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds a witness whose classes are the given disjoint vertex sets
/// (covering `g`). Each class must be a clique or independent, each pair of
/// classes complete, anticomplete, a matching or a co-matching; matched
/// (or co-matched non-adjacent) pairs are put in the same copy. The result
/// is verified before it is returned.
pub fn witness_from_partition(g: &Graph, classes: &[Vec<usize>]) -> Result<UniformWitness> {
    let n = g.n();
    let k = classes.len();
    let mut class_of = vec![usize::MAX; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            g.check_vertex(v)?;
            if class_of[v] != usize::MAX {
                return Err(Error::Overlap(vec![v]));
            }
            class_of[v] = i;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidParameter(format!("vertex {v} is in no class")));
    }
    let masks: Vec<u64> = classes.iter().map(|c| g.mask_of(c)).collect::<Result<_>>()?;
    let mut f = Graph::empty(k)?;
    let mut kmat = vec![vec![false; k]; k];
    let mut uf = UnionFind((0..n).collect());
    for i in 0..k {
        if g.is_clique_mask(masks[i]) && masks[i].count_ones() > 1 {
            kmat[i][i] = true;
        } else if !g.is_independent_mask(masks[i]) {
            return Err(Error::Inconsistent(format!("class {i} is neither a clique nor independent")));
        }
        for j in i + 1..k {
            let flags = g.relation_flags_mask(masks[i], masks[j]);
            let paired = |u: usize, v: usize, adjacent: bool| g.has_edge(u, v) == adjacent;
            let (kij, fij, joined_when) = if flags.complete {
                (true, false, None)
            } else if flags.anticomplete {
                (false, false, None)
            } else if flags.matching {
                (false, true, Some(true))
            } else if flags.comatching {
                (true, true, Some(false))
            } else {
                return Err(Error::Inconsistent(format!("classes {i} and {j} are not in a uniform relation")));
            };
            kmat[i][j] = kij;
            kmat[j][i] = kij;
            if fij {
                f.add_edge(i, j)?;
            }
            if let Some(adj) = joined_when {
                for &u in &classes[i] {
                    for &v in &classes[j] {
                        if paired(u, v, adj) {
                            uf.union(u, v);
                        }
                    }
                }
            }
        }
    }
    let mut copy_of_root = std::collections::BTreeMap::new();
    let mut assign = Vec::with_capacity(n);
    for v in 0..n {
        let root = uf.find(v);
        let next = copy_of_root.len();
        let c = *copy_of_root.entry(root).or_insert(next);
        assign.push((c, class_of[v]));
    }
    let w = UniformWitness { template: UniformTemplate { f, k: kmat }, assign };
    match verify_witness(g, &w) {
        Ok(None) => Ok(w),
        Ok(Some((u, v))) => Err(Error::Inconsistent(format!("partition witness fails on pair ({u}, {v})"))),
        Err(e) => Err(Error::Inconsistent(e.to_string())),
    }
}

/// Witness over `F` with `K = 0` for a graph whose components each embed
/// in `F`: one copy per component.
pub fn witness_from_components(g: &Graph, f: &Graph) -> Result<UniformWitness> {
    let mut assign = vec![(0, 0); g.n()];
    for (c, comp) in g.components().iter().enumerate() {
        let h = g.induced(comp)?;
        let e = induced_embed(&h, f)
            .ok_or_else(|| Error::Inconsistent(format!("component {c} does not embed in F")))?;
        for (idx, &v) in comp.iter().enumerate() {
            assign[v] = (c, e.image(idx));
        }
    }
    let w = UniformWitness { template: UniformTemplate::plain(f.clone()), assign };
    debug_assert!(witness_verifies(g, &w));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::graph;
    use crate::ops::{bipartite_complement, subgraph_complement};
    use crate::order::isomorphic;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn template(k: usize, edges: &[(usize, usize)], kmat: &[&[u8]]) -> UniformTemplate {
        let kmat = kmat.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect();
        UniformTemplate::new(Graph::from_edges(k, edges).unwrap(), kmat).unwrap()
    }

    fn random_template(rng: &mut ChaCha8Rng, k: usize) -> UniformTemplate {
        let mut f = Graph::empty(k).unwrap();
        let mut kmat = vec![vec![false; k]; k];
        for i in 0..k {
            kmat[i][i] = rng.gen_bool(0.5);
            for j in i + 1..k {
                if rng.gen_bool(0.5) {
                    f.add_edge(i, j).unwrap();
                }
                kmat[i][j] = rng.gen_bool(0.5);
                kmat[j][i] = kmat[i][j];
            }
        }
        UniformTemplate::new(f, kmat).unwrap()
    }

    /// A random induced subgraph of `m` copies with its identity witness.
    fn random_member(rng: &mut ChaCha8Rng, k: usize, m: usize) -> (Graph, UniformWitness) {
        let t = random_template(rng, k);
        let host = t.expand(m).unwrap();
        let keep: Vec<usize> = (0..host.n()).filter(|_| rng.gen_bool(0.7)).collect();
        let g = host.induced(&keep).unwrap();
        let assign = keep.iter().map(|&v| (v / k, v % k)).collect();
        (g, UniformWitness { template: t, assign })
    }

    #[test]
    fn expansions() {
        assert_eq!(template(1, &[], &[&[0]]).expand(4).unwrap(), Graph::empty(4).unwrap());
        assert_eq!(template(1, &[], &[&[1]]).expand(4).unwrap(), graph("K4").unwrap());
        let three = template(2, &[(0, 1)], &[&[0, 0], &[0, 0]]).expand(3).unwrap();
        assert!(isomorphic(&three, &graph("3P2").unwrap()));
    }

    #[test]
    fn json_schema() {
        let t = template(2, &[(0, 1)], &[&[0, 1], &[1, 1]]);
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"{"k":2,"F_edges":[[0,1]],"K":[[0,1],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<UniformTemplate>(&text).unwrap(), t);
        assert!(serde_json::from_str::<UniformTemplate>(r#"{"k":2,"F_edges":[],"K":[[0,1],[0,0]]}"#).is_err());
    }

    #[test]
    fn mutation_breaks_witness() {
        let t = template(2, &[(0, 1)], &[&[0, 0], &[0, 1]]);
        let g = t.expand(3).unwrap();
        let assign: Vec<_> = (0..6).map(|v| (v / 2, v % 2)).collect();
        let w = UniformWitness { template: t, assign };
        assert_eq!(verify_witness(&g, &w).unwrap(), None);
        let mut bad = w.clone();
        bad.assign[0] = (5, 0);
        assert!(verify_witness(&g, &bad).unwrap().is_some());
        let mut dup = w.clone();
        dup.assign[0] = dup.assign[2];
        assert!(matches!(verify_witness(&g, &dup), Err(Error::MalformedWitness(_))));
    }

    #[test]
    fn search_examples() {
        let k3 = graph("K3").unwrap();
        let w = is_k_uniform(&k3, 1).unwrap().unwrap();
        assert!(w.template.k(0, 0));
        let two_k2 = graph("2P2").unwrap();
        assert!(is_k_uniform(&two_k2, 1).unwrap().is_none());
        assert!(witness_verifies(&two_k2, &is_k_uniform(&two_k2, 2).unwrap().unwrap()));
        let p3 = graph("P3").unwrap();
        assert!(witness_verifies(&p3, &is_k_uniform(&p3, 2).unwrap().unwrap()));
        assert_eq!(uniformicity(&graph("K5").unwrap(), 3).unwrap(), Some(1));
        assert_eq!(uniformicity(&two_k2, 3).unwrap(), Some(2));
        assert_eq!(uniformicity(&Graph::empty(0).unwrap(), 3).unwrap(), Some(1));
    }

    #[test]
    fn search_refuses_outside_bounds() {
        assert!(matches!(is_k_uniform(&graph("P11").unwrap(), 2), Err(Error::SearchRefused(_))));
        assert!(matches!(is_k_uniform(&graph("P3").unwrap(), 4), Err(Error::SearchRefused(_))));
        let tight = SearchLimits { budget: Budget::nodes(1), ..SearchLimits::default() };
        assert!(matches!(is_k_uniform_with(&graph("P6").unwrap(), 3, &tight), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn single_class_doubling() {
        let t = complement_template(&template(1, &[], &[&[0]]));
        assert_eq!(t.order(), 2);
        assert_eq!(t.matrix(), &[vec![false, false], vec![false, true]]);
    }

    /// Doubling as first written down: the twin block of `F` is complemented
    /// and `K` is flipped on twin pairs as well, so same-copy twin pairs are
    /// flipped twice.
    fn double_flip_template(t: &UniformTemplate) -> UniformTemplate {
        let k = t.order();
        let mut f = Graph::empty(2 * k).unwrap();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                if t.f.has_edge(i, j) {
                    f.add_edge(i, j).unwrap();
                    f.add_edge(i, j + k).unwrap();
                } else {
                    f.add_edge(i + k, j + k).unwrap();
                }
            }
        }
        let kmat = (0..2 * k)
            .map(|a| (0..2 * k).map(|b| t.k[a % k][b % k] ^ (a >= k && b >= k)).collect())
            .collect();
        UniformTemplate::new(f, kmat).unwrap()
    }

    #[test]
    fn double_flip_fails_on_same_copy_pairs() {
        // P2 as one copy of the template F = K2, K = 0; complement both vertices
        let t = template(2, &[(0, 1)], &[&[0, 0], &[0, 0]]);
        let g = graph("P2").unwrap();
        let w = UniformWitness { template: t.clone(), assign: vec![(0, 0), (0, 1)] };
        let target = subgraph_complement(&g, &[0, 1]).unwrap();
        let moved = transport_complement(&w, &[0, 1]).unwrap();
        assert!(witness_verifies(&target, &moved));
        let naive = UniformWitness { template: double_flip_template(&t), assign: moved.assign.clone() };
        assert!(!witness_verifies(&target, &naive));
    }

    #[test]
    fn complement_transport_on_random_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let k = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=4);
            let (g, w) = random_member(&mut rng, k, m);
            assert!(witness_verifies(&g, &w));
            let x: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
            let g2 = subgraph_complement(&g, &x).unwrap();
            let w2 = transport_complement(&w, &x).unwrap();
            assert_eq!(w2.template.order(), 2 * k);
            assert!(witness_verifies(&g2, &w2));
            let unchanged = transport_complement(&w, &[]).unwrap();
            assert!(unchanged.assign.iter().all(|&(_, c)| c < k));
            assert!(witness_verifies(&g, &unchanged));
        }
    }

    #[test]
    fn bipartite_transport_on_random_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let k = rng.gen_range(1..=2);
            let m = rng.gen_range(1..=4);
            let (g, w) = random_member(&mut rng, k, m);
            let mut vs: Vec<usize> = (0..g.n()).collect();
            vs.shuffle(&mut rng);
            let a = rng.gen_range(0..=vs.len());
            let b = rng.gen_range(a..=vs.len());
            let (x, y) = (&vs[..a], &vs[a..b]);
            let g3 = bipartite_complement(&g, x, y).unwrap();
            let w3 = transport_bipartite(&w, x, y).unwrap();
            assert_eq!(w3.template.order(), 8 * k);
            assert!(witness_verifies(&g3, &w3));
        }
        let t = bipartite_complement_template(&template(1, &[], &[&[1]]));
        assert_eq!(t.order(), 8);
    }

    #[test]
    fn restriction_is_hereditary() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let (g, w) = random_member(&mut rng, 3, 3);
            let s: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
            assert!(witness_verifies(&g.induced(&s).unwrap(), &w.restrict(&s)));
        }
    }

    #[test]
    fn partition_witness_examples() {
        // C4 = K2,2: two independent classes, complete to each other
        let c4 = graph("C4").unwrap();
        let w = witness_from_partition(&c4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(w.template.order(), 2);
        // 3P2 as a matching between two classes
        let m = graph("3P2").unwrap();
        let w = witness_from_partition(&m, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(w.copies(), 3);
        // co-matching
        let cm = m.complement();
        assert!(witness_from_partition(&cm, &[vec![0, 2, 4], vec![1, 3, 5]]).is_ok());
        assert!(witness_from_partition(&graph("P3").unwrap(), &[vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn component_witness() {
        let g = graph("P3+P2+P1").unwrap();
        let w = witness_from_components(&g, &graph("P3").unwrap()).unwrap();
        assert!(witness_verifies(&g, &w));
        assert!(witness_from_components(&graph("C4").unwrap(), &graph("P3").unwrap()).is_err());
    }
}
