//! Subgraph complementation, bipartite complementation, vertex deletion,
//! scripts of these operations, and label splitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::order::{LabelledGraph, QuasiOrder};

/// Flips adjacency between every pair of distinct vertices of `set`.
pub fn subgraph_complement(g: &Graph, set: &[usize]) -> Result<Graph> {
    let mask = g.mask_of(set)?;
    let rows = (0..g.n())
        .map(|v| if mask >> v & 1 == 1 { g.row(v) ^ (mask & !(1 << v)) } else { g.row(v) })
        .collect();
    Graph::from_rows(rows)
}

/// Flips adjacency between every `x` in `xs` and `y` in `ys`.
pub fn bipartite_complement(g: &Graph, xs: &[usize], ys: &[usize]) -> Result<Graph> {
    let mx = g.mask_of(xs)?;
    let my = g.mask_of(ys)?;
    if mx & my != 0 {
        return Err(Error::Overlap(bits(mx & my).collect()));
    }
    let rows = (0..g.n())
        .map(|v| {
            let r = g.row(v);
            if mx >> v & 1 == 1 {
                r ^ my
            } else if my >> v & 1 == 1 {
                r ^ mx
            } else {
                r
            }
        })
        .collect();
    Graph::from_rows(rows)
}

/// Removes `v`; later vertices shift down by one.
pub fn delete_vertex(g: &Graph, v: usize) -> Result<Graph> {
    g.without(&[v])
}

/// One step of an [`OpScript`]. Vertex indices refer to the graph as it is
/// when the step runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Op {
    #[serde(rename = "sc")]
    SubgraphComplement { s: Vec<usize> },
    #[serde(rename = "bc")]
    BipartiteComplement { x: Vec<usize>, y: Vec<usize> },
    #[serde(rename = "del")]
    DeleteVertex { v: usize },
}

impl Op {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match self {
            Op::SubgraphComplement { s } => subgraph_complement(g, s),
            Op::BipartiteComplement { x, y } => bipartite_complement(g, x, y),
            Op::DeleteVertex { v } => delete_vertex(g, *v),
        }
    }
}

/// A sequence of operations applied in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpScript(pub Vec<Op>);

impl OpScript {
    pub fn count_deletions(&self) -> usize {
        self.0.iter().filter(|op| matches!(op, Op::DeleteVertex { .. })).count()
    }

    pub fn count_bipartite(&self) -> usize {
        self.0.iter().filter(|op| matches!(op, Op::BipartiteComplement { .. })).count()
    }

    pub fn count_subgraph(&self) -> usize {
        self.0.iter().filter(|op| matches!(op, Op::SubgraphComplement { .. })).count()
    }

    /// The script that undoes this one. Fails if it deletes anything.
    pub fn inverse(&self) -> Result<OpScript> {
        if let Some(step) = self.0.iter().position(|op| matches!(op, Op::DeleteVertex { .. })) {
            return Err(Error::Script {
                step,
                source: Box::new(Error::InvalidParameter("vertex deletion has no inverse".into())),
            });
        }
        Ok(OpScript(self.0.iter().rev().cloned().collect()))
    }
}

/// Runs `script` on `g`; the first failing step aborts with its index.
pub fn apply_script(g: &Graph, script: &OpScript) -> Result<Graph> {
    let mut cur = g.clone();
    for (step, op) in script.0.iter().enumerate() {
        cur = op.apply(&cur).map_err(|e| Error::Script { step, source: Box::new(e) })?;
    }
    Ok(cur)
}

/// Builds a script from operations phrased in terms of the original vertex
/// numbering, translating each to the numbering current at its step.
#[derive(Debug, Clone)]
pub struct ScriptBuilder {
    /// `current[v]` is the present index of original vertex `v`, if alive.
    current: Vec<Option<usize>>,
    script: OpScript,
}

impl ScriptBuilder {
    pub fn new(n: usize) -> Self {
        ScriptBuilder { current: (0..n).map(Some).collect(), script: OpScript::default() }
    }

    fn translate(&self, set: &[usize]) -> Result<Vec<usize>> {
        set.iter()
            .map(|&v| {
                self.current
                    .get(v)
                    .copied()
                    .flatten()
                    .ok_or(Error::VertexOutOfRange { vertex: v, n: self.current.len() })
            })
            .collect()
    }

    pub fn delete(&mut self, v: usize) -> Result<()> {
        let cur = self.translate(&[v])?[0];
        self.current[v] = None;
        for slot in self.current.iter_mut().flatten() {
            if *slot > cur {
                *slot -= 1;
            }
        }
        self.script.0.push(Op::DeleteVertex { v: cur });
        Ok(())
    }

    pub fn subgraph_complement(&mut self, set: &[usize]) -> Result<()> {
        let s = self.translate(set)?;
        self.script.0.push(Op::SubgraphComplement { s });
        Ok(())
    }

    pub fn bipartite_complement(&mut self, xs: &[usize], ys: &[usize]) -> Result<()> {
        let x = self.translate(xs)?;
        let y = self.translate(ys)?;
        self.script.0.push(Op::BipartiteComplement { x, y });
        Ok(())
    }

    /// Present index of original vertex `v`.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.current.get(v).copied().flatten()
    }

    /// Original vertices still alive, ascending (their present order).
    pub fn survivors(&self) -> Vec<usize> {
        (0..self.current.len()).filter(|&v| self.current[v].is_some()).collect()
    }

    pub fn finish(self) -> OpScript {
        self.script
    }
}

/// Relabels `g` over the doubled order: vertex `v` gets `(1, l(v))` if it is
/// in `z` and `(0, l(v))` otherwise, encoded as in [`QuasiOrder::doubled`].
pub fn split_labels(g: &LabelledGraph, order: &QuasiOrder, z: &[usize]) -> Result<(LabelledGraph, QuasiOrder)> {
    g.check_labels(order)?;
    let mask = g.graph.mask_of(z)?;
    let m = order.size();
    let labels = g
        .labels
        .iter()
        .enumerate()
        .map(|(v, &l)| if mask >> v & 1 == 1 { m + l } else { l })
        .collect();
    Ok((LabelledGraph { graph: g.graph.clone(), labels }, order.doubled()))
}
