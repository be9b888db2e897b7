//! The acceptance suite: ten seeded checks shared by the `acceptance` test
//! target and the `selftest` command.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::antichains::{reconstruct_thm52, verify_family, Family, DEFAULT_BUDGET};
use crate::catalog;
use crate::classifier;
use crate::error::Result;
use crate::graph::Graph;
use crate::oracle;
use crate::ops::{split_labels, subgraph_complement};
use crate::order::{induced_embed, labelled_embed, Budget, LabelledGraph};
use crate::structure::gen::{c4_instance, c5_instance_for_case, k5_instance};
use crate::structure::{
    check_certificate, decompose_c4_with_anchor, decompose_c5_with_anchor, decompose_k5, Shape, ROUTE_ORDERS,
    STATED_ORDERS,
};
use crate::uniform::{
    independent_witness, transport_complement, uniformicity, witness_verifies, UniformTemplate, UniformWitness,
};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "thm51 antichain prefix"),
    (2, "thm52 antichain prefix"),
    (3, "complement transport of uniform witnesses"),
    (4, "label split equivalence"),
    (5, "induced embedding matches brute force"),
    (6, "C5 decomposition certificates and mutants"),
    (7, "C4 decomposition certificates"),
    (8, "K5 decomposition cases"),
    (9, "classifier audit"),
    (10, "uniformicity ground truths and heredity"),
];

/// Wall-clock limit for the criteria that carry one.
pub fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        2 => Some(Duration::from_secs(120)),
        9 => Some(Duration::from_secs(600)),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.detail
        )
    }
}

/// Runs one criterion. Errors count as failures; exceeding a time limit
/// fails the criterion.
pub fn run(id: u8, seed: u64) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let outcome = match id {
        1 => thm51(),
        2 => thm52(),
        3 => complement_transport(&mut rng),
        4 => split_equivalence(&mut rng),
        5 => isi_oracle(&mut rng),
        6 => c5_certifier(&mut rng),
        7 => c4_certifier(&mut rng),
        8 => k5_certifier(&mut rng),
        9 => classifier_audit(),
        10 => uniform_truths(&mut rng),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = time_limit(id) {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded {limit:?}");
        }
    }
    CriterionResult { id, name, passed, detail, elapsed }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run(id, seed)).collect()
}

type Outcome = Result<(bool, String)>;

fn thm51() -> Outcome {
    let forbidden = catalog::graphs("co(2P1+P2),P2+P4,P6")?;
    let budget = Budget::nodes(DEFAULT_BUDGET);
    let free = verify_family(Family::Thm51, &[2, 3, 4], &forbidden, budget)?;
    let pairs = verify_family(Family::Thm51, &[2, 3], &[], budget)?;
    Ok((
        free.all_free() && pairs.antichain(),
        format!(
            "n=2..4 free of 3 graphs: {}; n=2,3 incomparable: {}",
            free.all_free(),
            pairs.antichain()
        ),
    ))
}

fn thm52() -> Outcome {
    let forbidden = catalog::graphs("co(P1+P4),P1+2P2")?;
    let r = verify_family(Family::Thm52, &[3, 4], &forbidden, Budget::nodes(DEFAULT_BUDGET))?;
    let mut rebuilt = 0;
    let mut total = 0;
    for n in [3, 4] {
        let g = crate::antichains::gen_thm52(n)?;
        for x1 in 0..g.n() {
            total += 1;
            let seq = reconstruct_thm52(&g, x1)?;
            let automorphism = (0..g.n()).all(|i| (0..g.n()).all(|j| g.has_edge(i, j) == g.has_edge(seq[i], seq[j])));
            let identity = x1 != 0 || seq.iter().enumerate().all(|(i, &v)| i == v);
            if automorphism && identity {
                rebuilt += 1;
            }
        }
    }
    Ok((
        r.all_free() && r.antichain() && rebuilt == total,
        format!("free: {}; G12 not in G16: {}; reconstructions {rebuilt}/{total}", r.all_free(), r.antichain()),
    ))
}

fn random_template<R: Rng>(rng: &mut R, k: usize) -> Result<UniformTemplate> {
    let f = oracle::random_graph(rng, k, 0.5);
    let mut m = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i..k {
            let b = rng.gen_bool(0.5);
            m[i][j] = b;
            m[j][i] = b;
        }
    }
    UniformTemplate::new(f, m)
}

/// The witness placing vertex `c * k + i` of an expanded template at `(c, i)`.
fn expansion_witness(t: &UniformTemplate, copies: usize) -> UniformWitness {
    let k = t.order();
    UniformWitness { template: t.clone(), assign: (0..copies * k).map(|v| (v / k, v % k)).collect() }
}

fn complement_transport<R: Rng>(rng: &mut R) -> Outcome {
    let mut ok = 0;
    for _ in 0..50 {
        let k = rng.gen_range(1..=3);
        let copies = rng.gen_range(1..=4);
        let t = random_template(rng, k)?;
        let g = t.expand(copies)?;
        let x: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
        let h = subgraph_complement(&g, &x)?;
        let w = transport_complement(&expansion_witness(&t, copies), &x)?;
        if w.template.order() == 2 * k && witness_verifies(&h, &w) {
            ok += 1;
        }
    }
    Ok((ok == 50, format!("{ok}/50 transported witnesses verify with order 2k")))
}

fn random_labels<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

fn split_equivalence<R: Rng>(rng: &mut R) -> Outcome {
    let (mut agree, mut positive) = (0, 0);
    for _ in 0..200 {
        let m = rng.gen_range(1..=3);
        let order = oracle::random_quasi_order(rng, m);
        let gn = rng.gen_range(1..=7);
        let g = oracle::random_graph(rng, gn, 0.5);
        let gl = random_labels(rng, gn, m);
        let zg: Vec<usize> = (0..gn).filter(|_| rng.gen_bool(0.5)).collect();
        let hn = rng.gen_range(1..=gn);
        let (h, hl, zh): (Graph, Vec<usize>, Vec<usize>) = if rng.gen_bool(0.5) {
            // a restriction of G, so embeddings usually exist
            let mut vs: Vec<usize> = (0..gn).collect();
            vs.shuffle(rng);
            vs.truncate(hn);
            vs.sort_unstable();
            let h = g.induced(&vs)?;
            let hl = vs.iter().map(|&v| gl[v]).collect();
            let zh = (0..hn).filter(|&i| zg.contains(&vs[i])).collect();
            (h, hl, zh)
        } else {
            let h = oracle::random_graph(rng, hn, 0.5);
            (h, random_labels(rng, hn, m), (0..hn).filter(|_| rng.gen_bool(0.5)).collect())
        };
        let expected = oracle::z_respecting_embeds(&h, &hl, &zh, &g, &gl, &zg, &order);
        let hc = LabelledGraph::new(subgraph_complement(&h, &zh)?, hl)?;
        let gc = LabelledGraph::new(subgraph_complement(&g, &zg)?, gl)?;
        let (sh, doubled) = split_labels(&hc, &order, &zh)?;
        let (sg, _) = split_labels(&gc, &order, &zg)?;
        let got = labelled_embed(&sh, &sg, &doubled)?.is_some();
        if got == expected {
            agree += 1;
        }
        positive += expected as usize;
    }
    Ok((agree == 200, format!("{agree}/200 agree ({positive} embeddable)")))
}

fn isi_oracle<R: Rng>(rng: &mut R) -> Outcome {
    let (mut agree, mut positive) = (0, 0);
    for _ in 0..200 {
        let gn = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let g = oracle::random_graph(rng, gn, p);
        let hn = rng.gen_range(1..=gn.min(4));
        let h = if rng.gen_bool(0.5) {
            let mut vs: Vec<usize> = (0..gn).collect();
            vs.shuffle(rng);
            vs.truncate(hn);
            g.induced(&vs)?
        } else {
            let q = rng.gen_range(0.0..1.0);
            oracle::random_graph(rng, hn.max(gn.min(4)), q)
        };
        let expected = oracle::embeds(&h, &g);
        let got = induced_embed(&h, &g);
        let valid = got.as_ref().is_none_or(|e| e.verify(&h, &g));
        if got.is_some() == expected && valid {
            agree += 1;
        }
        positive += expected as usize;
    }
    Ok((agree == 200, format!("{agree}/200 agree ({positive} embeddable)")))
}

/// Flips one edge between non-cycle vertices so that a named claim must
/// break, or returns `None` when the instance offers no such edge.
fn c5_mutant<R: Rng>(rng: &mut R, g: &Graph, sets: &dyn Fn(&str) -> Vec<usize>) -> Option<(Graph, &'static str)> {
    let v = |p: usize| sets(&format!("V{}", p % 5 + 1));
    let x = sets("X");
    let mut options: Vec<(usize, usize, &'static str)> = Vec::new();
    for p in 0..5 {
        let vp = v(p);
        for (i, &a) in vp.iter().enumerate() {
            for &b in &vp[i + 1..] {
                options.push((a, b, "L4.2-V"));
            }
        }
        // a second neighbour across a matching
        for (other, claim) in [(x.clone(), "L4.2-C1"), (v(p + 2), "L4.2-C2")] {
            for &a in &other {
                let nb: Vec<usize> = vp.iter().copied().filter(|&u| g.has_edge(a, u)).collect();
                if nb.len() == 1 {
                    for &u in vp.iter().filter(|&&u| !g.has_edge(a, u)) {
                        options.push((a, u, claim));
                    }
                }
            }
        }
        // a second non-neighbour across a co-matching
        for &a in &vp {
            let next = v(p + 1);
            let non: Vec<usize> = next.iter().copied().filter(|&u| !g.has_edge(a, u)).collect();
            if non.len() == 1 {
                for &u in next.iter().filter(|&&u| g.has_edge(a, u)) {
                    options.push((a, u, "L4.2-C3"));
                }
            }
        }
    }
    for (i, &a) in x.iter().enumerate() {
        for &b in &x[i + 1..] {
            options.push((a, b, "L4.2-X"));
        }
    }
    let &(a, b, claim) = options.choose(rng)?;
    let mut h = g.clone();
    h.toggle_edge(a, b).ok()?;
    Some((h, claim))
}

fn c5_certifier<R: Rng>(rng: &mut R) -> Outcome {
    let mut good = 0;
    let mut cases = [0usize; 7];
    let mut mutants = Vec::new();
    let mut problems = Vec::new();
    for i in 0..100 {
        let inst = c5_instance_for_case(rng, i % 7 + 1).ok_or_else(|| crate::Error::Inconsistent("no C5 instance generated".into()))?;
        let r = decompose_c5_with_anchor(&inst.graph, &inst.anchor)?;
        let case = r.case.unwrap_or(0);
        let verdict = match &r.certificate {
            Some(cert) if r.claims_hold() => {
                let issues = check_certificate(&inst.graph, cert)?;
                let within = cert.parts.iter().all(|p| match &p.shape {
                    Shape::Uniform { witness, bound } => {
                        witness.template.order() <= *bound
                            && *bound <= STATED_ORDERS[case - 1].max(ROUTE_ORDERS[case - 1])
                    }
                    _ => true,
                });
                issues.is_empty() && within
            }
            _ => false,
        };
        if verdict {
            good += 1;
            cases[case - 1] += 1;
        } else if problems.len() < 3 {
            problems.push(format!("instance {i}: claims {:?}, notes {:?}", r.failed_claims(), r.notes));
        }
        if mutants.len() < 20 {
            let sets = |name: &str| r.set(name).to_vec();
            if let Some((h, expected)) = c5_mutant(rng, &inst.graph, &sets) {
                let m = decompose_c5_with_anchor(&h, &inst.anchor)?;
                mutants.push((expected, m.failed_claims().iter().map(|s| s.to_string()).collect::<Vec<_>>()));
            }
        }
    }
    let named = mutants.iter().filter(|(e, got)| got.iter().any(|g| g == e)).count();
    let detail = format!(
        "{good}/100 certified, cases {cases:?}; {named}/{} mutants name the broken claim{}",
        mutants.len(),
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    Ok((good == 100 && mutants.len() == 20 && named == 20, detail))
}

fn c4_certifier<R: Rng>(rng: &mut R) -> Outcome {
    let (mut good, mut with_b, mut max_del, mut max_bc) = (0, 0, 0, 0);
    let mut problems = Vec::new();
    for i in 0..50 {
        let inst = c4_instance(rng).ok_or_else(|| crate::Error::Inconsistent("no C4 instance generated".into()))?;
        let r = decompose_c4_with_anchor(&inst.graph, &inst.anchor)?;
        let ok = match &r.certificate {
            Some(cert) if r.claims_hold() => {
                let (d, b) = (cert.script.count_deletions(), cert.script.count_bipartite());
                max_del = max_del.max(d);
                max_bc = max_bc.max(b);
                let part_b_ok = cert.parts.iter().all(|p| match &p.shape {
                    Shape::Uniform { witness, .. } => witness.template.order() == 3,
                    _ => true,
                });
                with_b += (cert.parts.len() > 1 && part_b_ok) as usize;
                check_certificate(&inst.graph, cert)?.is_empty() && d <= 17 && b <= 2 && part_b_ok
            }
            _ => false,
        };
        if ok {
            good += 1;
        } else if problems.len() < 3 {
            problems.push(format!("instance {i}: claims {:?}", r.failed_claims()));
        }
    }
    let detail = format!(
        "{good}/50 certified ({with_b} with a 3-uniform part); max deletions {max_del}, max bipartite {max_bc}{}",
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    Ok((good == 50, detail))
}

fn k5_certifier<R: Rng>(rng: &mut R) -> Outcome {
    let mut per_case = [0usize; 4];
    for case in 1..=4 {
        for _ in 0..5 {
            let inst = k5_instance(rng, case).ok_or_else(|| crate::Error::Inconsistent("no K5 instance generated".into()))?;
            let r = decompose_k5(&inst.graph)?;
            let ok = r.case == Some(case)
                && r.claims_hold()
                && match &r.certificate {
                    Some(cert) => check_certificate(&inst.graph, cert)?.is_empty(),
                    None => false,
                };
            per_case[case - 1] += ok as usize;
        }
    }
    Ok((per_case == [5; 4], format!("certified per case {per_case:?} of 5 each")))
}

fn classifier_audit() -> Outcome {
    let r = classifier::audit(5)?;
    let bad: Vec<String> =
        r.lines.iter().filter(|l| !l.ok).map(|l| format!("{:?} {:?}/{:?}", l.pair, l.wqo, l.cw)).collect();
    Ok((
        r.passed(),
        format!(
            "{} listed pairs ({} wrong), {} corpus pairs, {} conflicts{}",
            r.lines.len(),
            bad.len(),
            r.corpus_pairs,
            r.conflicts.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join(", ")) }
        ),
    ))
}

fn uniform_truths<R: Rng>(rng: &mut R) -> Outcome {
    let mut facts = Vec::new();
    for n in 1..=5 {
        let k = catalog::graph(&format!("K{n}"))?;
        let e = Graph::empty(n)?;
        facts.push(uniformicity(&k, 3)? == Some(1) && oracle::uniformicity(&k, 3) == Some(1));
        facts.push(uniformicity(&e, 3)? == Some(1) && oracle::uniformicity(&e, 3) == Some(1));
    }
    let two_k2 = catalog::graph("2P2")?;
    facts.push(uniformicity(&two_k2, 3)? == Some(2) && oracle::uniformicity(&two_k2, 3) == Some(2));
    let truths = facts.iter().filter(|&&b| b).count();

    let mut hereditary = 0;
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let copies = rng.gen_range(1..=4);
        let t = random_template(rng, k)?;
        let g = t.expand(copies)?;
        let w = expansion_witness(&t, copies);
        let set: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.6)).collect();
        let h = g.induced(&set)?;
        let r = w.restrict(&set);
        let bounded = h.n() > 8 || uniformicity(&h, k)?.is_some_and(|u| u <= k);
        if witness_verifies(&h, &r) && bounded {
            hereditary += 1;
        }
    }
    let trivial = witness_verifies(&Graph::empty(3)?, &independent_witness(3));
    Ok((
        truths == facts.len() && hereditary == 100 && trivial,
        format!("{truths}/{} ground truths; {hereditary}/100 restrictions keep their witness", facts.len()),
    ))
}
