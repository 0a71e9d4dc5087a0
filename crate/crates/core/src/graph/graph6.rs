//! The graph6 text format (Brendan McKay's `nauty` encoding).
//!
//! `N(n)` followed by the upper triangle of the adjacency matrix in column order
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), six bits per printable byte offset by 63.

use thiserror::Error;

use super::Graph;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 decode error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} is outside the printable range 63..=126")]
    BadByte(u8),
    #[error("input ended early")]
    Truncated,
    #[error("{0} unexpected trailing bytes")]
    Trailing(usize),
    #[error("padding bits are not zero")]
    Padding,
}

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, bytes) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if bytes.is_empty() {
        return Err(err(base, Graph6ErrorKind::Empty));
    }
    let sextet = |i: usize| -> Result<u64, Graph6Error> {
        let b = *bytes.get(i).ok_or_else(|| err(base + i, Graph6ErrorKind::Truncated))?;
        if !(63..=126).contains(&b) {
            return Err(err(base + i, Graph6ErrorKind::BadByte(b)));
        }
        Ok((b - 63) as u64)
    };

    let (n, mut pos) = if bytes[0] != 126 {
        (sextet(0)? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0u64;
        for i in 1..4 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 8)
    };

    let mut g = Graph::new(n);
    let mut bits_left = 0;
    let mut current = 0u64;
    for j in 1..n {
        for i in 0..j {
            if bits_left == 0 {
                current = sextet(pos)?;
                pos += 1;
                bits_left = 6;
            }
            bits_left -= 1;
            if current >> bits_left & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    if bits_left > 0 && current & ((1 << bits_left) - 1) != 0 {
        return Err(err(base + pos - 1, Graph6ErrorKind::Padding));
    }
    if pos < bytes.len() {
        return Err(err(base + pos, Graph6ErrorKind::Trailing(bytes.len() - pos)));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::new(1)), "@");
        assert_eq!(encode(&Graph::new(0)), "?");
        // The 5-cycle 0-1-2-3-4-0 and K4, as printed by nauty's `geng`/`showg`.
        assert_eq!(encode(&Graph::cycle(5)), "Dhc");
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(encode(&k4), "C~");
    }

    #[test]
    fn c5_round_trip_and_header() {
        let c5 = Graph::cycle(5);
        assert_eq!(decode(&encode(&c5)).unwrap(), c5);
        assert_eq!(decode(">>graph6<<Dhc\n").unwrap(), c5);
    }

    #[test]
    fn long_form_sizes() {
        let g = Graph::from_edges(100, [(0, 99), (3, 7)]).unwrap();
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert_eq!(decode("").unwrap_err().kind, Graph6ErrorKind::Empty);
        let e = decode("D h").unwrap_err();
        assert_eq!((e.offset, e.kind), (1, Graph6ErrorKind::BadByte(b' ')));
        let e = decode("Dh").unwrap_err();
        assert_eq!((e.offset, e.kind), (2, Graph6ErrorKind::Truncated));
        let e = decode("Dhc?").unwrap_err();
        assert_eq!((e.offset, e.kind), (3, Graph6ErrorKind::Trailing(1)));
        // C5 needs 10 bits; the final byte carries two padding bits.
        let e = decode("Dhd").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::Padding);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10_000 {
            let n = rng.gen_range(0..=32);
            let p: f64 = rng.gen();
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
