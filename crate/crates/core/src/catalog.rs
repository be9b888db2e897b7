//! Named graphs and a small expression language over them.
//!
//! ```text
//! list  = expr { "," expr } ;
//! expr  = term { "+" term } ;
//! term  = [ count ] atom ;
//! atom  = "P" int | "C" int | "K" int [ "," int ] | "S" int "," int "," int
//!       | "co(" expr ")" | "(" expr ")" | name ;
//! name  = "claw" | "paw" | "diamond" | "gem" ;
//! ```
//!
//! `K2,2` is the biclique; in a list such as `K3,2P2` a comma followed by a
//! count that prefixes an atom starts a new item. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An expression over the graph catalog.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    Biclique(usize, usize),
    /// Subdivided claw with legs of length `h <= i <= j`.
    SubdividedClaw(usize, usize, usize),
    Union(Vec<GraphSpec>),
    Repeat(usize, Box<GraphSpec>),
    Complement(Box<GraphSpec>),
}

impl GraphSpec {
    pub fn co(inner: GraphSpec) -> GraphSpec {
        GraphSpec::Complement(Box::new(inner))
    }

    pub fn times(count: usize, inner: GraphSpec) -> GraphSpec {
        GraphSpec::Repeat(count, Box::new(inner))
    }

    pub fn validate(&self) -> Result<()> {
        use GraphSpec::*;
        match self {
            Path(r) | Clique(r) if *r == 0 => Err(Error::InvalidSpec(format!("{self}: needs r >= 1"))),
            Cycle(r) if *r < 3 => Err(Error::InvalidSpec(format!("{self}: cycles need r >= 3"))),
            Biclique(r, s) if *r == 0 || *s == 0 => Err(Error::InvalidSpec(format!("{self}: needs r, s >= 1"))),
            SubdividedClaw(h, i, j) if !(1 <= *h && h <= i && i <= j) => {
                Err(Error::InvalidSpec(format!("{self}: needs 1 <= h <= i <= j")))
            }
            Repeat(0, _) => Err(Error::InvalidSpec("repeat count must be >= 1".into())),
            Repeat(_, inner) | Complement(inner) => inner.validate(),
            Union(parts) => parts.iter().try_for_each(GraphSpec::validate),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        self.build_unchecked()
    }

    fn build_unchecked(&self) -> Result<Graph> {
        use GraphSpec::*;
        match self {
            Path(r) => {
                let edges: Vec<_> = (1..*r).map(|i| (i - 1, i)).collect();
                Graph::from_edges(*r, &edges)
            }
            Cycle(r) => {
                let edges: Vec<_> = (0..*r).map(|i| (i, (i + 1) % r)).collect();
                Graph::from_edges(*r, &edges)
            }
            Clique(r) => Ok(Graph::empty(*r)?.complement()),
            Biclique(r, s) => {
                let mut edges = Vec::with_capacity(r * s);
                for a in 0..*r {
                    for b in 0..*s {
                        edges.push((a, r + b));
                    }
                }
                Graph::from_edges(r + s, &edges)
            }
            SubdividedClaw(h, i, j) => {
                // centre 0, then the three legs in order
                let n = h + i + j + 1;
                let mut edges = Vec::with_capacity(n - 1);
                let mut next = 1;
                for len in [h, i, j] {
                    let mut prev = 0;
                    for _ in 0..*len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                Graph::from_edges(n, &edges)
            }
            Union(parts) => {
                let mut g = Graph::empty(0)?;
                for p in parts {
                    g = g.disjoint_union(&p.build_unchecked()?)?;
                }
                Ok(g)
            }
            Repeat(count, inner) => {
                let one = inner.build_unchecked()?;
                let mut g = Graph::empty(0)?;
                for _ in 0..*count {
                    g = g.disjoint_union(&one)?;
                }
                Ok(g)
            }
            Complement(inner) => Ok(inner.build_unchecked()?.complement()),
        }
    }

    /// Parses a comma-separated list of expressions.
    pub fn parse_list(text: &str) -> Result<Vec<GraphSpec>> {
        let mut p = Parser::new(text);
        let mut out = Vec::new();
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
        loop {
            out.push(p.expr()?);
            p.skip_ws();
            if p.at_end() {
                return Ok(out);
            }
            p.expect(b',')?;
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphSpec::*;
        match self {
            Path(r) => write!(f, "P{r}"),
            Cycle(r) => write!(f, "C{r}"),
            Clique(r) => write!(f, "K{r}"),
            Biclique(r, s) => write!(f, "K{r},{s}"),
            SubdividedClaw(h, i, j) => write!(f, "S{h},{i},{j}"),
            Union(parts) => {
                for (idx, p) in parts.iter().enumerate() {
                    if idx > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Repeat(c, inner) => match **inner {
                Union(_) => write!(f, "{c}({inner})"),
                _ => write!(f, "{c}{inner}"),
            },
            Complement(inner) => write!(f, "co({inner})"),
        }
    }
}

/// Parses and builds a single expression.
pub fn graph(expr: &str) -> Result<Graph> {
    expr.parse::<GraphSpec>()?.build()
}

/// Parses and builds a comma-separated list of expressions.
pub fn graphs(list: &str) -> Result<Vec<Graph>> {
    GraphSpec::parse_list(list)?.iter().map(GraphSpec::build).collect()
}

const NAMED: &[(&str, &str)] = &[
    ("claw", "K1,3"),
    ("paw", "co(P1+P3)"),
    ("diamond", "co(2P1+P2)"),
    ("gem", "co(P1+P4)"),
];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { offset: start, message: "integer too large".into() })
    }

    fn expr(&mut self) -> Result<GraphSpec> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { GraphSpec::Union(parts) })
    }

    fn term(&mut self) -> Result<GraphSpec> {
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let count = self.int()?;
            let atom = self.atom()?;
            Ok(GraphSpec::times(count, atom))
        } else {
            self.atom()
        }
    }

    /// `true` if a `,` at the cursor continues a biclique parameter rather
    /// than starting a new list item.
    fn comma_continues_params(&self) -> bool {
        let mut p = self.pos;
        if self.src.get(p) != Some(&b',') {
            return false;
        }
        p += 1;
        while p < self.src.len() && self.src[p].is_ascii_whitespace() {
            p += 1;
        }
        let digits_start = p;
        while p < self.src.len() && self.src[p].is_ascii_digit() {
            p += 1;
        }
        if p == digits_start {
            return false;
        }
        while p < self.src.len() && self.src[p].is_ascii_whitespace() {
            p += 1;
        }
        !matches!(self.src.get(p), Some(b) if b.is_ascii_alphabetic() || *b == b'(')
    }

    fn atom(&mut self) -> Result<GraphSpec> {
        self.skip_ws();
        let rest = &self.src[self.pos.min(self.src.len())..];
        let start = self.pos;
        if rest.starts_with(b"co(") {
            self.pos += 3;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(GraphSpec::co(inner));
        }
        for (name, expansion) in NAMED {
            if rest.starts_with(name.as_bytes()) {
                self.pos += name.len();
                return expansion.parse();
            }
        }
        let Some(head) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        let spec = match head {
            b'P' => GraphSpec::Path(self.int()?),
            b'C' => GraphSpec::Cycle(self.int()?),
            b'K' => {
                let r = self.int()?;
                self.skip_ws();
                if self.comma_continues_params() {
                    self.pos += 1;
                    GraphSpec::Biclique(r, self.int()?)
                } else {
                    GraphSpec::Clique(r)
                }
            }
            b'S' => {
                let h = self.int()?;
                self.expect(b',')?;
                let i = self.int()?;
                self.expect(b',')?;
                let j = self.int()?;
                GraphSpec::SubdividedClaw(h, i, j)
            }
            b'(' => {
                let inner = self.expr()?;
                self.expect(b')')?;
                inner
            }
            _ => {
                self.pos = start;
                return Err(self.error("expected P, C, K, S, co(, ( or a graph name"));
            }
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::isomorphic;

    #[test]
    fn path_counts() {
        let p4 = graph("P4").unwrap();
        assert_eq!(p4.n(), 4);
        assert_eq!(p4.edge_count(), 3);
        let mut d = p4.degrees();
        d.sort();
        assert_eq!(d, vec![1, 1, 2, 2]);
    }

    #[test]
    fn s111_is_claw() {
        assert!(isomorphic(&graph("S1,1,1").unwrap(), &graph("K1,3").unwrap()));
    }

    #[test]
    fn diamond_has_four_vertices_five_edges() {
        let d = graph("co(2P1+P2)").unwrap();
        assert_eq!((d.n(), d.edge_count()), (4, 5));
        assert_eq!(graph("diamond").unwrap(), d);
    }

    #[test]
    fn catalog_counts() {
        for (h, i, j) in [(1, 1, 1), (1, 2, 2), (2, 3, 5)] {
            assert_eq!(GraphSpec::SubdividedClaw(h, i, j).build().unwrap().n(), h + i + j + 1);
        }
        assert_eq!(graph("K3,4").unwrap().edge_count(), 12);
        assert_eq!(graph("C7").unwrap().edge_count(), 7);
    }

    #[test]
    fn rejects_malformed_specs() {
        let e = graph("S2,1,1").unwrap_err();
        assert!(e.to_string().contains("h <= i <= j"), "{e}");
        assert!(graph("C2").is_err());
        assert!(graph("P0").is_err());
        assert!(matches!(graph("Q3"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(graph("P3+"), Err(Error::Parse { offset: 3, .. })));
        assert!(graph("33P2").is_err());
    }

    #[test]
    fn list_parsing_disambiguates_biclique_commas() {
        let l = GraphSpec::parse_list("co(2P1+P2),P2+P4,P6").unwrap();
        assert_eq!(l.len(), 3);
        let l = GraphSpec::parse_list("K2,2, P4").unwrap();
        assert_eq!(l, vec![GraphSpec::Biclique(2, 2), GraphSpec::Path(4)]);
        let l = GraphSpec::parse_list("K3,2P2").unwrap();
        assert_eq!(l, vec![GraphSpec::Clique(3), GraphSpec::times(2, GraphSpec::Path(2))]);
        assert!(GraphSpec::parse_list("").unwrap().is_empty());
    }

    #[test]
    fn display_round_trips() {
        for text in ["P4", "2P1+P2", "co(P1+P4)", "K2,2", "S1,2,3", "3(P1+P2)", "co(co(C5))"] {
            let spec: GraphSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(spec.to_string().parse::<GraphSpec>().unwrap(), spec);
        }
    }
}
