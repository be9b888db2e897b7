use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use bigenic::antichains::{verify_family, Family, DEFAULT_BUDGET};
use bigenic::classifier::{self, ClassPair};
use bigenic::codec;
use bigenic::ops::{apply_script, OpScript};
use bigenic::order::{antichain_check, induced_embed_with_budget, is_free_with_budget, Budget};
use bigenic::structure;
use bigenic::uniform::{is_k_uniform_with, uniformicity_with, SearchLimits};
use bigenic::{catalog, selftest, Error, Graph};

/// Bumped when a report's fields change meaning.
const SCHEMA: u32 = 1;

/// Induced-subgraph orders, uniformicity and structural certificates for
/// graph classes with two forbidden induced subgraphs.
///
/// Graphs are given as catalog expressions (`P4`, `co(2P1+P2)`, `K2,2`,
/// `S1,1,2`, `3P1+P2`, `claw`, `paw`, `diamond`, `gem`), as graph6 (prefix
/// `g6:` to force it), as JSON `{"n":4,"edges":[[0,1]]}`, or as a path to a
/// file holding any of these.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
/// errors or an exhausted search budget.
#[derive(Parser)]
#[command(name = "bigenic", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search budget in nodes per induced-subgraph search.
    #[arg(long, global = true, env = "BIGENIC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a member of an antichain family.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// `g6` or `json`.
        #[arg(long, default_value = "g6")]
        format: String,
    },
    /// Find an induced copy of H in G.
    Embed {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
    },
    /// Check that G contains none of the forbidden graphs.
    Free {
        #[arg(long)]
        g: String,
        /// Comma-separated catalog expressions.
        #[arg(long)]
        forbidden: String,
    },
    /// Antichain families and ad-hoc antichain checks.
    #[command(subcommand)]
    Antichain(AntichainCommand),
    /// Uniformicity of G, or a k-uniform witness for a given k.
    Uniform {
        #[arg(long)]
        g: String,
        /// Look for a witness with exactly this template order.
        #[arg(long)]
        k: Option<usize>,
        /// Largest template order tried when computing uniformicity.
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Apply an operation script to G.
    Ops {
        #[arg(long)]
        g: String,
        /// JSON script or a file holding one, e.g. `[{"op":"del","v":0}]`.
        #[arg(long)]
        script: String,
    },
    /// Route G to its structural decomposition and check the certificate.
    Decompose(GraphArg),
    /// Known status of the (H1, H2)-free class.
    Classify {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
    },
    /// Check the classifier against the open lists and settled pairs.
    Audit {
        /// Also check rule disjointness on all pairs of graphs up to this order.
        #[arg(long, default_value_t = 5)]
        corpus_n: usize,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria (1..=10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Input graph (file, expression, graph6 or JSON).
    #[arg(long = "in", alias = "g")]
    input: String,
}

#[derive(Subcommand)]
enum AntichainCommand {
    /// Check members of a family for freeness and pairwise incomparability.
    Verify {
        #[arg(long)]
        family: Family,
        /// `2..4`, `2,3,4` or `3`.
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "")]
        forbidden: String,
    },
    /// Check that the given graphs are pairwise incomparable.
    Check {
        /// Comma-separated catalog expressions.
        #[arg(long)]
        graphs: String,
    },
}

/// A finished command: whether its checks passed, plus what to print.
struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

fn outcome(passed: bool, text: impl Into<String>, report: impl Serialize) -> Result<Outcome, Error> {
    Ok(Outcome { passed, text: text.into(), json: serde_json::to_value(report)? })
}

fn read_graph(input: &str) -> Result<Graph, Error> {
    let input = input.trim();
    if let Some(g6) = input.strip_prefix("g6:") {
        return codec::from_graph6(g6.trim());
    }
    if input.starts_with('{') {
        return codec::from_json(input);
    }
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {input}: {e}")))?;
        return read_graph(&text);
    }
    catalog::graph(input).or_else(|e| codec::from_graph6(input).map_err(|_| e))
}

fn parse_ns(text: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::InvalidParameter(format!("cannot read sizes from {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (a.trim().parse::<usize>().map_err(|_| bad())?, b.trim().parse::<usize>().map_err(|_| bad())?);
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn exec(cli: &Cli) -> Result<Outcome, Error> {
    let budget = Budget::nodes(cli.budget);
    match &cli.command {
        Command::Gen { family, n, format } => {
            let g = family.generate(*n)?;
            let text = match format.as_str() {
                "g6" => codec::to_graph6(&g),
                "json" => codec::to_json(&g),
                other => return Err(Error::InvalidParameter(format!("unknown format {other}"))),
            };
            outcome(true, text.clone(), json!({"family": family, "n": n, "graph6": codec::to_graph6(&g), "graph": serde_json::from_str::<Value>(&codec::to_json(&g))?}))
        }
        Command::Embed { h, g } => {
            let (h, g) = (read_graph(h)?, read_graph(g)?);
            let e = induced_embed_with_budget(&h, &g, budget)?;
            let text = match &e {
                Some(e) => format!("embeds: {:?}", e.0),
                None => "no induced copy".to_string(),
            };
            outcome(e.is_some(), text, json!({"embeds": e.is_some(), "embedding": e.map(|e| e.0)}))
        }
        Command::Free { g, forbidden } => {
            let g = read_graph(g)?;
            let names = catalog::GraphSpec::parse_list(forbidden)?;
            let hs = catalog::graphs(forbidden)?;
            let f = is_free_with_budget(&g, &hs, budget)?;
            let text = match &f.witness {
                None => "free".to_string(),
                Some((i, vs)) => format!("contains {} on {vs:?}", names[*i]),
            };
            let name = f.witness.as_ref().map(|(i, _)| names[*i].to_string());
            outcome(f.free, text, json!({"free": f.free, "witness": f.witness, "forbidden": name}))
        }
        Command::Antichain(AntichainCommand::Verify { family, n, forbidden }) => {
            let ns = parse_ns(n)?;
            let hs = catalog::graphs(forbidden)?;
            let r = verify_family(*family, &ns, &hs, budget)?;
            if r.exhausted() {
                return Err(Error::BudgetExhausted { nodes: cli.budget });
            }
            let text = format!(
                "{family} n={:?}: free of {} graphs: {}; pairwise incomparable: {}",
                r.ns,
                hs.len(),
                r.all_free(),
                r.antichain()
            );
            outcome(r.passed(), text, &r)
        }
        Command::Antichain(AntichainCommand::Check { graphs }) => {
            let gs = catalog::graphs(graphs)?;
            let r = antichain_check(&gs);
            let text = match r.comparable {
                None => "antichain".to_string(),
                Some((i, j)) => format!("item {i} is an induced subgraph of item {j}"),
            };
            outcome(r.antichain, text, &r)
        }
        Command::Uniform { g, k, kmax } => {
            let g = read_graph(g)?;
            let limits = SearchLimits { budget, ..SearchLimits::default() };
            match k {
                Some(k) => {
                    let w = is_k_uniform_with(&g, *k, &limits)?;
                    let text = match &w {
                        Some(w) => format!("{k}-uniform: {}", serde_json::to_string(w)?),
                        None => format!("not {k}-uniform"),
                    };
                    outcome(w.is_some(), text, json!({"k": k, "uniform": w.is_some(), "witness": w}))
                }
                None => {
                    let u = uniformicity_with(&g, *kmax, &limits)?;
                    let text = match u {
                        Some(u) => format!("uniformicity {u}"),
                        None => format!("uniformicity exceeds {kmax}"),
                    };
                    outcome(u.is_some(), text, json!({"kmax": kmax, "uniformicity": u}))
                }
            }
        }
        Command::Ops { g, script } => {
            let g = read_graph(g)?;
            let text = if Path::new(script).is_file() {
                std::fs::read_to_string(script).map_err(|e| Error::InvalidParameter(format!("cannot read {script}: {e}")))?
            } else {
                script.clone()
            };
            let s: OpScript = serde_json::from_str(&text)?;
            let h = apply_script(&g, &s)?;
            outcome(true, codec::to_graph6(&h), json!({"graph6": codec::to_graph6(&h), "graph": serde_json::from_str::<Value>(&codec::to_json(&h))?}))
        }
        Command::Decompose(GraphArg { input }) => {
            let g = read_graph(input)?;
            let r = match structure::decompose(&g) {
                Err(Error::ClassViolation { class, forbidden, witness }) => {
                    let text = format!("not in the class ({class}): {forbidden} on {witness:?}");
                    return outcome(false, text, json!({"class": class, "forbidden": forbidden, "witness": witness}));
                }
                r => r?,
            };
            let problems = match &r.certificate {
                Some(c) => structure::check_certificate(&g, c)?,
                None => vec!["no certificate".to_string()],
            };
            let passed = r.claims_hold() && problems.is_empty();
            let mut text = format!("branch {:?}", r.branch);
            if let Some(case) = r.case {
                text += &format!(", case {case}");
            }
            text += &format!(", anchor {:?}", r.anchor);
            for c in &r.claims {
                text += &format!("\n  {} {}", if c.ok { "ok  " } else { "FAIL" }, c.id);
            }
            if let Some(c) = &r.certificate {
                text += &format!(
                    "\n  certificate: {} deletions, {} bipartite complementations, {} parts",
                    c.script.count_deletions(),
                    c.script.count_bipartite(),
                    c.parts.len()
                );
            }
            for p in &problems {
                text += &format!("\n  problem: {p}");
            }
            for n in &r.notes {
                text += &format!("\n  note: {n}");
            }
            let mut v = serde_json::to_value(&r)?;
            v["certificate_problems"] = json!(problems);
            outcome(passed, text, v)
        }
        Command::Classify { h1, h2 } => {
            let s = classifier::classify(&ClassPair::parse(h1, h2)?)?;
            let mut text = format!("wqo: {:?}", s.wqo);
            if let Some(r) = s.rule {
                text += &format!(" by {r} via ({})", s.via.join(", "));
            }
            text += &format!("\nclique-width: {:?}", s.cw);
            if let Some(r) = s.cw_rule {
                text += &format!(" by {r} via ({})", s.cw_via.join(", "));
            }
            for f in &s.families {
                text += &format!("\nantichain family inside the class: {f}");
            }
            for w in &s.warnings {
                text += &format!("\nwarning: {w}");
            }
            outcome(true, text, &s)
        }
        Command::Audit { corpus_n } => {
            let r = classifier::audit(*corpus_n)?;
            let mut text = String::new();
            for l in &r.lines {
                text += &format!(
                    "{} {:<10} ({}) wqo {:?}, cw {:?}\n",
                    if l.ok { "ok  " } else { "FAIL" },
                    l.list,
                    l.pair.join(", "),
                    l.wqo,
                    l.cw
                );
            }
            text += &format!("{} corpus pairs, {} conflicts", r.corpus_pairs, r.conflicts.len());
            for c in &r.conflicts {
                text += &format!("\n  {c}");
            }
            outcome(r.passed(), text, &r)
        }
        Command::Selftest { seed, only } => {
            let ids: Vec<u8> = if only.is_empty() { selftest::CRITERIA.iter().map(|c| c.0).collect() } else { only.clone() };
            let results: Vec<_> = ids.iter().map(|&id| selftest::run(id, *seed)).collect();
            let text = results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
            let passed = results.iter().all(|r| r.passed);
            outcome(passed, text, json!({"seed": seed, "criteria": results}))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Embed { .. } => "embed",
        Command::Free { .. } => "free",
        Command::Antichain(AntichainCommand::Verify { .. }) => "antichain verify",
        Command::Antichain(AntichainCommand::Check { .. }) => "antichain check",
        Command::Uniform { .. } => "uniform",
        Command::Ops { .. } => "ops",
        Command::Decompose(_) => "decompose",
        Command::Classify { .. } => "classify",
        Command::Audit { .. } => "audit",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match exec(&cli) {
        Ok(o) => {
            if cli.json {
                let mut v = o.json;
                if let Value::Object(m) = &mut v {
                    m.insert("schema".into(), json!(SCHEMA));
                    m.insert("command".into(), json!(command_name(&cli.command)));
                    m.insert("passed".into(), json!(o.passed));
                }
                println!("{v}");
            } else {
                println!("{}", o.text);
            }
            if o.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"schema": SCHEMA, "command": command_name(&cli.command), "error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
