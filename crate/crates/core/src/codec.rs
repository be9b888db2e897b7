//! graph6 and JSON edge-list encodings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6: the vertex count, then the upper triangle packed
/// column by column into 6-bit groups, each offset by 63.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let err = |pos: usize, message: &str| Error::Parse { offset: skip + pos, message: message.to_string() };
    let sextet = |pos: usize| -> Result<u8> {
        match body.get(pos) {
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(_) => Err(err(pos, "byte outside the graph6 range 63..=126")),
            None => Err(err(pos, "unexpected end of input")),
        }
    };

    let (n, mut pos) = match body.first() {
        None => return Err(err(0, "empty input")),
        Some(&126) => {
            if body.get(1) == Some(&126) {
                return Err(err(1, "graphs needing the 8-byte size form exceed the vertex cap"));
            }
            let n = ((sextet(1)? as usize) << 12) | ((sextet(2)? as usize) << 6) | sextet(3)? as usize;
            (n, 4)
        }
        Some(_) => (sextet(0)? as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, cap: MAX_VERTICES });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pos + pairs.div_ceil(6);
    if body.len() != expected {
        return Err(err(body.len().min(expected), &format!("expected {expected} bytes for n={n}, got {}", body.len())));
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                current = sextet(pos)?;
                pos += 1;
            }
            if current >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) && current & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(err(pos - 1, "non-zero padding bits"));
    }
    Ok(g)
}

/// JSON form `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<&EdgeList> for Graph {
    type Error = Error;

    fn try_from(e: &EdgeList) -> Result<Graph> {
        let edges: Vec<_> = e.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(e.n, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EdgeList::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let e = EdgeList::deserialize(d)?;
        Graph::try_from(&e).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeList::from(g)).expect("edge lists always serialize")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let e: EdgeList = serde_json::from_str(text)?;
    Graph::try_from(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn p3_hand_packed() {
        // n=3 -> 'B'; bits x(0,1)=1 x(0,2)=0 x(1,2)=1 -> 101000 = 40 -> 'g'
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&p3), "Bg");
        assert_eq!(from_graph6("Bg").unwrap(), p3);
    }

    #[test]
    fn known_five_vertex_code() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn single_vertex_is_shortest_code() {
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
    }

    #[test]
    fn large_size_form() {
        let g = crate::catalog::graph("C64").unwrap();
        let code = to_graph6(&g);
        assert!(code.starts_with('~'));
        assert_eq!(from_graph6(&code).unwrap(), g);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..500 {
            let n = rng.gen_range(0..=12);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
            assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn malformed_graph6_reports_offset() {
        match from_graph6("Bg!") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match from_graph6("B\x01") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(from_graph6("Bh").is_err(), "padding bit set");
        assert!(from_graph6("").is_err());
        assert_eq!(from_graph6(">>graph6<<Bg\n").unwrap().edge_count(), 2);
    }

    #[test]
    fn json_shape() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_json(&p3), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }
}
