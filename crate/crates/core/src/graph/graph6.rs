//! graph6 encoding: an order header followed by the upper triangle of the
//! adjacency matrix packed six bits per printable byte (offset 63).
//!
//! Bits run column by column over the pairs (0,1), (0,2), (1,2), (0,3), ...
//! and are written most significant bit first; the final byte is zero-padded.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order expressible with the 4-byte header.
pub const MAX_GRAPH6_ORDER: usize = 258_047;

const OFFSET: u8 = 63;
const OPTIONAL_PREFIX: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        assert!(
            n <= MAX_GRAPH6_ORDER,
            "order {n} exceeds graph6 4-byte header"
        );
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses one graph6 line. A trailing line terminator and the optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(OPTIONAL_PREFIX).unwrap_or(text);
    let bytes = text.as_bytes();

    if let Some(pos) = bytes.iter().position(|&b| !(OFFSET..=126).contains(&b)) {
        return Err(Error::BadHeader(format!(
            "byte {:#04x} at position {pos} is outside the printable range 63..=126",
            bytes[pos]
        )));
    }

    let (n, body) = match bytes {
        [] => return Err(Error::BadHeader("empty input".into())),
        [b'~', b'~', ..] => {
            // 8-byte header, n >= 258048
            let n = decode_order(bytes.get(2..8).ok_or_else(short_header)?);
            return Err(Error::UnsupportedOrder(n));
        }
        [b'~', rest @ ..] => {
            let n = decode_order(rest.get(..3).ok_or_else(short_header)?);
            if n <= 62 {
                return Err(Error::BadHeader(format!(
                    "order {n} must use the 1-byte header"
                )));
            }
            (n, &rest[3..])
        }
        [h, rest @ ..] => ((h - OFFSET) as usize, rest),
    };
    if n == 0 {
        return Err(Error::EmptyGraph);
    }

    let bits = n * (n - 1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(Error::BadHeader(format!(
            "order {n} needs {needed} body bytes, found {}",
            body.len()
        )));
    }
    if body.len() > needed {
        return Err(Error::TrailingData(body.len() - needed));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

fn decode_order(six: &[u8]) -> usize {
    six.iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize)
}

fn short_header() -> Error {
    Error::BadHeader("truncated extended header".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference strings below were produced with networkx's graph6 writer.

    #[test]
    fn tiny_graphs_encode() {
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::new(2, [(0, 1)]).unwrap()), "A_");
        assert_eq!(
            write_graph6(&Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap()),
            "Bw"
        );
        assert_eq!(
            write_graph6(&Graph::new(3, [(0, 1), (1, 2)]).unwrap()),
            "Bg"
        );
    }

    #[test]
    fn tiny_graphs_decode() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(
            parse_graph6("A_").unwrap(),
            Graph::new(2, [(0, 1)]).unwrap()
        );
        assert_eq!(parse_graph6("Bw\n").unwrap().edge_count(), 3);
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap().edge_count(), 1);
    }

    #[test]
    fn petersen_reference_string() {
        let edges = [
            (0, 1),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 6),
            (2, 3),
            (2, 7),
            (3, 4),
            (3, 8),
            (4, 9),
            (5, 7),
            (5, 8),
            (6, 8),
            (6, 9),
            (7, 9),
        ];
        let g = Graph::new(10, edges).unwrap();
        assert_eq!(write_graph6(&g), "IheA@GUAo");
        assert_eq!(parse_graph6("IheA@GUAo").unwrap(), g);
    }

    #[test]
    fn extended_header() {
        let g = Graph::empty(63).unwrap();
        assert!(write_graph6(&g).starts_with("~??~"));

        let path = Graph::new(70, (0..69).map(|i| (i, i + 1))).unwrap();
        let s = write_graph6(&path);
        assert!(s.starts_with("~?@EhCGGC@?G?_@?@??_?G?@??C"));
        assert!(s.ends_with("@???????????G"));
        assert_eq!(parse_graph6(&s).unwrap(), path);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_graph6(""), Err(Error::BadHeader(_))));
        assert!(matches!(parse_graph6("A "), Err(Error::BadHeader(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::BadHeader(_))));
        assert!(matches!(parse_graph6("A_?"), Err(Error::TrailingData(1))));
        assert!(matches!(parse_graph6("~?"), Err(Error::BadHeader(_))));
        assert!(matches!(parse_graph6("~??A"), Err(Error::BadHeader(_))));
        assert!(matches!(
            parse_graph6("~~?B????"),
            Err(Error::UnsupportedOrder(_))
        ));
        assert_eq!(parse_graph6("?"), Err(Error::EmptyGraph));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=80, seed in any::<u64>(), density in 0.0f64..1.0) {
            // cheap deterministic edge sampler, independent of the encoder
            let mut state = seed | 1;
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if (state % 1000) as f64 / 1000.0 < density {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let s = write_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
