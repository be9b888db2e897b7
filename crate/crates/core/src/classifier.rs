//! Known well-quasi-ordering and clique-width status of classes defined by
//! two forbidden induced subgraphs.
//!
//! Rules are data: each names its pattern lists and how the pair must relate
//! to them. A pair is classified by closing it under the equivalence moves
//! (complement both; swap `K3` and the paw) and trying every rule on every
//! equivalent pair in both orientations.

use std::fmt;

use serde::Serialize;

use crate::antichains::Family;
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::{in_class_s, is_induced_subgraph, is_linear_forest, isomorphic};

/// A graph together with the expression it was written as.
#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub graph: Graph,
}

impl Named {
    pub fn parse(expr: &str) -> Result<Self> {
        Ok(Named { name: expr.trim().to_string(), graph: catalog::graph(expr)? })
    }

    pub fn from_graph(name: impl Into<String>, graph: Graph) -> Self {
        Named { name: name.into(), graph }
    }

    fn complement(&self) -> Named {
        let name = match self.name.strip_prefix("co(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) if balanced(inner) => inner.to_string(),
            _ => format!("co({})", self.name),
        };
        Named { name, graph: self.graph.complement() }
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// An unordered pair of forbidden graphs, stored with the smaller graph
/// first by (order, size, degree sequence).
#[derive(Debug, Clone)]
pub struct ClassPair {
    pub h1: Named,
    pub h2: Named,
}

fn size_key(g: &Graph) -> (usize, usize, Vec<usize>) {
    let mut d = g.degrees();
    d.sort_unstable();
    (g.n(), g.edge_count(), d)
}

impl ClassPair {
    pub fn new(a: Named, b: Named) -> Self {
        if size_key(&b.graph) < size_key(&a.graph) {
            ClassPair { h1: b, h2: a }
        } else {
            ClassPair { h1: a, h2: b }
        }
    }

    pub fn parse(h1: &str, h2: &str) -> Result<Self> {
        Ok(ClassPair::new(Named::parse(h1)?, Named::parse(h2)?))
    }

    /// `true` iff neither graph is an induced subgraph of the other.
    pub fn is_bigenic(&self) -> bool {
        !is_induced_subgraph(&self.h1.graph, &self.h2.graph) && !is_induced_subgraph(&self.h2.graph, &self.h1.graph)
    }

    fn same_as(&self, other: &ClassPair) -> bool {
        (isomorphic(&self.h1.graph, &other.h1.graph) && isomorphic(&self.h2.graph, &other.h2.graph))
            || (isomorphic(&self.h1.graph, &other.h2.graph) && isomorphic(&self.h2.graph, &other.h1.graph))
    }

    fn names(&self) -> Vec<String> {
        vec![self.h1.name.clone(), self.h2.name.clone()]
    }
}

impl fmt::Display for ClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h1, self.h2)
    }
}

/// Every pair reachable by complementing both graphs or by swapping `K3`
/// with the paw in either position, up to isomorphism.
pub fn equivalent_pairs(p: &ClassPair) -> Vec<ClassPair> {
    let k3 = Named::parse("K3").expect("catalog name");
    let paw = Named::parse("paw").expect("catalog name");
    let swap = |h: &Named| -> Option<Named> {
        if isomorphic(&h.graph, &k3.graph) {
            Some(paw.clone())
        } else if isomorphic(&h.graph, &paw.graph) {
            Some(k3.clone())
        } else {
            None
        }
    };
    let mut out = vec![p.clone()];
    let mut i = 0;
    while i < out.len() {
        let q = out[i].clone();
        let mut next = vec![ClassPair::new(q.h1.complement(), q.h2.complement())];
        if let Some(s) = swap(&q.h1) {
            next.push(ClassPair::new(s, q.h2.clone()));
        }
        if let Some(s) = swap(&q.h2) {
            next.push(ClassPair::new(q.h1.clone(), s));
        }
        for r in next {
            if !out.iter().any(|o| o.same_as(&r)) {
                out.push(r);
            }
        }
        i += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Wqo {
    WqoLabelled,
    NotWqo,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CliqueWidth {
    Bounded,
    Unbounded,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Wqo,
    CliqueWidth,
}

/// How an ordered pair `(H1, H2)` must relate to a rule's patterns.
#[derive(Debug, Clone, Copy)]
enum Test {
    /// `H1` or `H2` is an induced subgraph of a pattern in `a`.
    EitherBelow(&'static [&'static str]),
    /// `H1` is edgeless and `H2` is complete.
    EdgelessAndComplete,
    /// `H1 ⊆i` some of `a` and `H2` (or its complement) `⊆i` some of `b`.
    Below { a: &'static [&'static str], b: &'static [&'static str], co: bool },
    /// `H1 ⊇i` some of `a` and `H2` (or its complement) `⊇i` some of `b`.
    Above { a: &'static [&'static str], b: &'static [&'static str], co: bool },
    NeitherLinearForest,
    /// Neither graph (or neither complement) lies in the class `S`.
    NeitherInS { co: bool },
}

#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub theorem: Theorem,
    pub positive: bool,
    test: Test,
}

const fn rule(id: &'static str, theorem: Theorem, positive: bool, test: Test) -> Rule {
    Rule { id, theorem, positive, test }
}

use Test::*;
use Theorem::{CliqueWidth as Cw, Wqo as Wq};

pub const RULES: &[Rule] = &[
    rule("T6.1-1(i)", Wq, true, EitherBelow(&["P4"])),
    rule("T6.1-1(ii)", Wq, true, EdgelessAndComplete),
    rule("T6.1-1(iii)", Wq, true, Below { a: &["co(3P1)"], b: &["2P1+P3", "P6"], co: false }),
    rule("T6.1-1(iv)", Wq, true, Below { a: &["co(2P1+P2)"], b: &["P2+P3", "P5"], co: false }),
    rule("T6.1-2(i)", Wq, false, NeitherLinearForest),
    rule("T6.1-2(ii)", Wq, false, Above { a: &["co(3P1)"], b: &["3P1+P2", "3P2", "2P3"], co: false }),
    rule("T6.1-2(iii)", Wq, false, Above { a: &["co(2P2)"], b: &["4P1", "2P2"], co: false }),
    rule("T6.1-2(iv)", Wq, false, Above { a: &["co(2P1+P2)"], b: &["4P1", "P2+P4", "P6"], co: false }),
    rule("T6.1-2(v)", Wq, false, Above { a: &["co(P1+P4)"], b: &["P1+2P2"], co: false }),
    rule("T6.2-1(i)", Cw, true, EitherBelow(&["P4"])),
    rule("T6.2-1(ii)", Cw, true, EdgelessAndComplete),
    rule(
        "T6.2-1(iii)",
        Cw,
        true,
        Below {
            a: &["P1+P3"],
            b: &["K1,3+3P1", "K1,3+P2", "P1+P2+P3", "P1+P5", "P1+S1,1,2", "P6", "S1,1,3", "S1,2,2"],
            co: true,
        },
    ),
    rule("T6.2-1(iv)", Cw, true, Below { a: &["2P1+P2"], b: &["P1+2P2", "2P1+P3", "3P1+P2", "P2+P3"], co: true }),
    rule("T6.2-1(v)", Cw, true, Below { a: &["P1+P4"], b: &["P1+P4", "P5"], co: true }),
    rule("T6.2-1(vi)", Cw, true, Below { a: &["4P1"], b: &["2P1+P3"], co: true }),
    rule("T6.2-1(vii)", Cw, true, Below { a: &["K1,3"], b: &["K1,3"], co: true }),
    rule("T6.2-2(i)", Cw, false, NeitherInS { co: false }),
    rule("T6.2-2(ii)", Cw, false, NeitherInS { co: true }),
    rule("T6.2-2(iii)", Cw, false, Above { a: &["K1,3", "2P2"], b: &["4P1", "2P2"], co: true }),
    rule("T6.2-2(iv)", Cw, false, Above { a: &["2P1+P2"], b: &["K1,3", "5P1", "P2+P4", "P6"], co: true }),
    rule(
        "T6.2-2(v)",
        Cw,
        false,
        Above { a: &["3P1"], b: &["2P1+2P2", "2P1+P4", "4P1+P2", "3P2", "2P3"], co: true },
    ),
    rule("T6.2-2(vi)", Cw, false, Above { a: &["4P1"], b: &["P1+P4", "3P1+P2"], co: true }),
];

fn patterns(names: &[&str]) -> Vec<Graph> {
    names.iter().map(|n| catalog::graph(n).expect("rule patterns parse")).collect()
}

fn below(h: &Graph, names: &[&str]) -> bool {
    patterns(names).iter().any(|p| is_induced_subgraph(h, p))
}

fn above(h: &Graph, names: &[&str]) -> bool {
    patterns(names).iter().any(|p| is_induced_subgraph(p, h))
}

impl Rule {
    /// Whether the rule holds for the ordered pair `(h1, h2)`.
    pub fn matches(&self, h1: &Graph, h2: &Graph) -> bool {
        let second = |co: bool| if co { h2.complement() } else { h2.clone() };
        match self.test {
            EitherBelow(a) => below(h1, a) || below(h2, a),
            EdgelessAndComplete => h1.edge_count() == 0 && h2.complement().edge_count() == 0,
            Below { a, b, co } => below(h1, a) && below(&second(co), b),
            Above { a, b, co } => above(h1, a) && above(&second(co), b),
            NeitherLinearForest => !is_linear_forest(h1) && !is_linear_forest(h2),
            NeitherInS { co: false } => !in_class_s(h1) && !in_class_s(h2),
            NeitherInS { co: true } => !in_class_s(&h1.complement()) && !in_class_s(&h2.complement()),
        }
    }
}

/// A rule that fired and the equivalent pair, in matching orientation, it
/// fired on.
#[derive(Debug, Clone, Serialize)]
pub struct RuleMatch {
    pub rule: &'static str,
    pub positive: bool,
    pub via: Vec<String>,
}

fn matches_for(pairs: &[ClassPair], theorem: Theorem) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for r in RULES.iter().filter(|r| r.theorem == theorem) {
        'pairs: for q in pairs {
            for (a, b) in [(&q.h1, &q.h2), (&q.h2, &q.h1)] {
                if r.matches(&a.graph, &b.graph) {
                    out.push(RuleMatch { rule: r.id, positive: r.positive, via: vec![a.name.clone(), b.name.clone()] });
                    break 'pairs;
                }
            }
        }
    }
    out
}

fn decide(pair: &ClassPair, matches: &[RuleMatch]) -> Result<Option<RuleMatch>> {
    let pos = matches.iter().find(|m| m.positive);
    let neg = matches.iter().find(|m| !m.positive);
    if let (Some(p), Some(n)) = (pos, neg) {
        return Err(Error::Inconsistent(format!("{pair}: {} and {} both fire", p.rule, n.rule)));
    }
    Ok(pos.or(neg).cloned())
}

/// Antichain families known to lie in a class, as (family, `H1` patterns,
/// `H2` patterns): the family avoids some graph below each forbidden graph.
const FAMILIES: &[(Family, &str, &[&str])] =
    &[(Family::Thm51, "co(2P1+P2)", &["P2+P4", "P6"]), (Family::Thm52, "co(P1+P4)", &["P1+2P2"])];

#[derive(Debug, Clone, Serialize)]
pub struct ClassStatus {
    pub pair: Vec<String>,
    pub wqo: Wqo,
    pub rule: Option<&'static str>,
    pub via: Vec<String>,
    pub cw: CliqueWidth,
    pub cw_rule: Option<&'static str>,
    pub cw_via: Vec<String>,
    /// Implemented antichain families that lie inside the class.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<Family>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Every rule that fired, for both theorems.
    pub matched: Vec<RuleMatch>,
}

pub fn classify_wqo(p: &ClassPair) -> Result<Wqo> {
    Ok(classify(p)?.wqo)
}

pub fn classify_cw(p: &ClassPair) -> Result<CliqueWidth> {
    Ok(classify(p)?.cw)
}

pub fn classify(p: &ClassPair) -> Result<ClassStatus> {
    let pairs = equivalent_pairs(p);
    let wm = matches_for(&pairs, Theorem::Wqo);
    let cm = matches_for(&pairs, Theorem::CliqueWidth);
    let w = decide(p, &wm)?;
    let c = decide(p, &cm)?;
    let wqo = match &w {
        Some(m) if m.positive => Wqo::WqoLabelled,
        Some(_) => Wqo::NotWqo,
        None => Wqo::Open,
    };
    let cw = match &c {
        Some(m) if m.positive => CliqueWidth::Bounded,
        Some(_) => CliqueWidth::Unbounded,
        None => CliqueWidth::Open,
    };
    let mut families = Vec::new();
    for &(family, a, bs) in FAMILIES {
        let (ga, gbs) = (catalog::graph(a)?, patterns(bs));
        let inside = pairs.iter().any(|q| {
            [(&q.h1, &q.h2), (&q.h2, &q.h1)].into_iter().any(|(x, y)| {
                is_induced_subgraph(&ga, &x.graph) && gbs.iter().any(|b| is_induced_subgraph(b, &y.graph))
            })
        });
        if inside {
            families.push(family);
        }
    }
    let mut warnings = Vec::new();
    if !p.is_bigenic() {
        warnings.push(format!("{p} is not bigenic: one graph is an induced subgraph of the other"));
    }
    Ok(ClassStatus {
        pair: p.names(),
        wqo,
        rule: w.as_ref().map(|m| m.rule),
        via: w.map(|m| m.via).unwrap_or_default(),
        cw,
        cw_rule: c.as_ref().map(|m| m.rule),
        cw_via: c.map(|m| m.via).unwrap_or_default(),
        families,
        warnings,
        matched: wm.into_iter().chain(cm).collect(),
    })
}

/// The nine pairs left open for well-quasi-ordering.
pub const OPEN_WQO: [(&str, &str); 9] = [
    ("K3", "P1+2P2"),
    ("K3", "P1+P5"),
    ("K3", "P2+P4"),
    ("co(2P1+P2)", "P1+2P2"),
    ("co(2P1+P2)", "P1+P4"),
    ("co(P1+P4)", "P1+P4"),
    ("co(P1+P4)", "2P2"),
    ("co(P1+P4)", "P2+P3"),
    ("co(P1+P4)", "P5"),
];

/// The eight pairs left open for clique-width, as `(H1, H2)`.
pub const OPEN_CW: [(&str, &str); 8] = [
    ("3P1", "co(P1+S1,1,3)"),
    ("3P1", "co(P2+P4)"),
    ("3P1", "co(S1,2,3)"),
    ("2P1+P2", "co(P1+P2+P3)"),
    ("2P1+P2", "co(P1+P5)"),
    ("P1+P4", "co(P1+2P2)"),
    ("P1+P4", "co(P2+P3)"),
    ("2P1+P3", "co(2P1+P3)"),
];

/// The two pairs open for both questions.
pub const OPEN_BOTH: [(&str, &str); 2] = [("K3", "P2+P4"), ("co(P1+P4)", "P2+P3")];

/// Settled verdicts the tables must reproduce.
pub const SETTLED: &[(&str, &str, Wqo, Option<CliqueWidth>)] = &[
    ("K3", "P6", Wqo::WqoLabelled, None),
    ("co(2P1+P2)", "P6", Wqo::NotWqo, None),
    ("co(2P1+P2)", "P2+P4", Wqo::NotWqo, Some(CliqueWidth::Unbounded)),
    ("co(P1+P4)", "P1+2P2", Wqo::NotWqo, None),
    ("co(2P1+P2)", "P2+P3", Wqo::WqoLabelled, Some(CliqueWidth::Bounded)),
    ("co(P1+P4)", "P1+P4", Wqo::Open, Some(CliqueWidth::Bounded)),
    ("K3", "P1+P5", Wqo::Open, Some(CliqueWidth::Bounded)),
];

#[derive(Debug, Clone, Serialize)]
pub struct AuditLine {
    pub list: &'static str,
    pub pair: Vec<String>,
    pub wqo: Wqo,
    pub cw: CliqueWidth,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub lines: Vec<AuditLine>,
    /// Pairs from the exhaustive corpus on which a theorem fired both ways.
    pub conflicts: Vec<String>,
    pub corpus_pairs: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.ok) && self.conflicts.is_empty()
    }
}

/// Checks the open lists and settled verdicts; with `corpus_n > 0` also
/// checks rule disjointness on every pair of graphs with at most `corpus_n`
/// vertices.
pub fn audit(corpus_n: usize) -> Result<AuditReport> {
    let mut lines = Vec::new();
    let mut push = |list: &'static str, a: &str, b: &str, ok: &dyn Fn(Wqo, CliqueWidth) -> bool| -> Result<()> {
        let s = classify(&ClassPair::parse(a, b)?)?;
        lines.push(AuditLine { list, pair: vec![a.into(), b.into()], wqo: s.wqo, cw: s.cw, ok: ok(s.wqo, s.cw) });
        Ok(())
    };
    for (a, b) in OPEN_WQO {
        push("open-wqo", a, b, &|w, _| w == Wqo::Open)?;
    }
    for (a, b) in OPEN_CW {
        push("open-cw", a, b, &|_, c| c == CliqueWidth::Open)?;
    }
    for (a, b) in OPEN_BOTH {
        push("open-both", a, b, &|w, c| w == Wqo::Open && c == CliqueWidth::Open)?;
    }
    for &(a, b, w0, c0) in SETTLED {
        push("settled", a, b, &move |w, c| w == w0 && c0.is_none_or(|c0| c == c0))?;
    }

    let corpus = small_graphs(corpus_n);
    let mut conflicts = Vec::new();
    let mut corpus_pairs = 0;
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            corpus_pairs += 1;
            let p = ClassPair::new(corpus[i].clone(), corpus[j].clone());
            if let Err(e) = classify(&p) {
                conflicts.push(e.to_string());
            }
        }
    }
    Ok(AuditReport { lines, conflicts, corpus_pairs })
}

/// All graphs with `1..=max_n` vertices up to isomorphism, named by graph6.
pub fn small_graphs(max_n: usize) -> Vec<Named> {
    let mut out: Vec<Named> = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut reps: Vec<Graph> = Vec::new();
        for code in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).expect("small graph");
            let key = size_key(&g);
            if !reps.iter().any(|r| size_key(r) == key && isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        out.extend(reps.into_iter().map(|g| Named::from_graph(crate::codec::to_graph6(&g), g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(a: &str, b: &str) -> ClassStatus {
        classify(&ClassPair::parse(a, b).unwrap()).unwrap()
    }

    fn has(pairs: &[ClassPair], a: &str, b: &str) -> bool {
        pairs.iter().any(|p| p.same_as(&ClassPair::parse(a, b).unwrap()))
    }

    #[test]
    fn closure_of_triangle_and_p6() {
        let e = equivalent_pairs(&ClassPair::parse("K3", "P6").unwrap());
        assert!(has(&e, "paw", "P6"));
        assert!(has(&e, "3P1", "co(P6)"));
        assert!(has(&e, "co(paw)", "co(P6)"));
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn closure_without_triangle_is_complement_pair() {
        let e = equivalent_pairs(&ClassPair::parse("P4", "P4").unwrap());
        assert_eq!(e.len(), 1);
        let e = equivalent_pairs(&ClassPair::parse("C5", "P2+P3").unwrap());
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn complement_names_cancel() {
        let h = Named::parse("co(P1+P4)").unwrap();
        assert_eq!(h.complement().name, "P1+P4");
        assert_eq!(Named::parse("(P1)+(P2)").unwrap().complement().name, "co((P1)+(P2))");
    }

    #[test]
    fn known_verdicts() {
        let s = status("K3", "P6");
        assert_eq!((s.wqo, s.rule), (Wqo::WqoLabelled, Some("T6.1-1(iii)")));
        let s = status("co(2P1+P2)", "P2+P4");
        assert_eq!((s.wqo, s.rule), (Wqo::NotWqo, Some("T6.1-2(iv)")));
        assert_eq!((s.cw, s.cw_rule), (CliqueWidth::Unbounded, Some("T6.2-2(iv)")));
        assert_eq!(s.families, vec![Family::Thm51]);
        let s = status("co(2P1+P2)", "P2+P3");
        assert_eq!((s.wqo, s.rule), (Wqo::WqoLabelled, Some("T6.1-1(iv)")));
        assert_eq!((s.cw, s.cw_rule), (CliqueWidth::Bounded, Some("T6.2-1(iv)")));
        assert_eq!(status("co(3P1)", "P1+2P2").wqo, Wqo::Open);
        assert_eq!(status("3P1", "co(P2+P4)").cw, CliqueWidth::Open);
        assert_eq!(status("co(P1+P4)", "P1+2P2").families, vec![Family::Thm52]);
    }

    #[test]
    fn non_bigenic_pairs_warn() {
        assert!(!status("P3", "P5").warnings.is_empty());
        assert!(status("K3", "P6").warnings.is_empty());
    }

    #[test]
    fn verdicts_are_invariant_under_equivalence() {
        for (a, b) in [("K3", "P6"), ("co(2P1+P2)", "P2+P4"), ("claw", "co(P5)"), ("C4", "K4")] {
            let p = ClassPair::parse(a, b).unwrap();
            let s = classify(&p).unwrap();
            for q in equivalent_pairs(&p) {
                let t = classify(&q).unwrap();
                assert_eq!((s.wqo, s.cw), (t.wqo, t.cw), "{p} vs {q}");
            }
        }
    }

    #[test]
    fn small_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| small_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 7, 18, 52]);
    }

    #[test]
    fn rules_never_conflict_on_small_pairs() {
        assert!(audit(4).unwrap().conflicts.is_empty());
    }

    #[test]
    fn open_lists_and_settled_pairs() {
        let r = audit(0).unwrap();
        let bad: Vec<_> = r.lines.iter().filter(|l| !l.ok).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
