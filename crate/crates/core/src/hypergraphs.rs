//! Hypergraphs, their incidence matrices, bouquets with basis and monomial walks.
//!
//! Vertex and edge indices are zero-based in the API and one-based in text and JSON.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{kernel_lattice_basis, IntMatrix, SignedVector};

/// A finite multi-hypergraph; every edge is a nonempty sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Sorts each edge and drops repeated vertices inside it; repeated edges are kept.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (k, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidInput(format!("edge {} is empty", k + 1)));
            }
            e.sort_unstable();
            e.dedup();
            if let Some(&v) = e.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInput(format!(
                    "edge {} uses vertex {} but there are {vertex_count} vertices",
                    k + 1,
                    v + 1
                )));
            }
            out.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &[usize] {
        &self.edges[k]
    }

    /// Vertex-by-edge 0/1 matrix.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let (m, n) = (self.vertex_count.max(1), self.edges.len().max(1));
        let mut entries = vec![BigInt::zero(); m * n];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                entries[v * n + j] = BigInt::one();
            }
        }
        IntMatrix::new(m, n, entries).expect("dimensions are positive")
    }

    /// Degree of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Connected through shared vertices, ignoring isolated vertices.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            for w in e.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut roots = self
            .edges
            .iter()
            .flatten()
            .map(|&v| find(&mut parent, v))
            .collect::<Vec<_>>();
        roots.sort_unstable();
        roots.dedup();
        roots.len() <= 1
    }

    /// Parses the "V E" header followed by one line of one-based vertex indices per edge.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header \"V E\"".into(),
        })?;
        let dims = parse_indices(header_line, header)?;
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header: expected 2 entries \"V E\", found {}", dims.len()),
            });
        }
        let (v, e) = (dims[0], dims[1]);
        let mut edges = Vec::with_capacity(e);
        for (line, body) in lines {
            if edges.len() == e {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {e} edges, found more"),
                });
            }
            let members = parse_indices(line, body)?;
            if let Some(&bad) = members.iter().find(|&&x| x == 0 || x > v) {
                return Err(Error::Parse {
                    line,
                    message: format!("edge {}: vertex {bad} outside 1..={v}", edges.len() + 1),
                });
            }
            edges.push(members.into_iter().map(|x| x - 1).collect());
        }
        if edges.len() < e {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {e} edges, found {}", edges.len()),
            });
        }
        Hypergraph::new(v, edges)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_indices(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid index '{t}'"),
            })
        })
        .collect()
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertex_count, self.edges.len())?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph::parse(s)
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|v| v + 1).collect())
            .collect();
        let mut st = serializer.serialize_struct("Hypergraph", 2)?;
        st.serialize_field("vertex_count", &self.vertex_count)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

pub fn incidence_matrix(h: &Hypergraph) -> IntMatrix {
    h.incidence_matrix()
}

/// The encoding vectors of a bouquet with basis `E_U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisBouquet {
    /// Zero-based indices of the edges meeting `U`, increasing.
    pub edges: Vec<usize>,
    /// Generator of the restricted toric ideal, one coordinate per entry of `edges`.
    pub c: SignedVector,
    /// `Σ c_E α_E` over the original edges.
    pub a: Vec<BigInt>,
}

impl BasisBouquet {
    /// `c` padded by zeros to all `n` edges.
    pub fn full_c(&self, n: usize) -> SignedVector {
        let mut out = vec![BigInt::zero(); n];
        for (&e, x) in self.edges.iter().zip(self.c.coords()) {
            out[e] = x.clone();
        }
        SignedVector::new(out)
    }
}

impl Serialize for BasisBouquet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<usize> = self.edges.iter().map(|e| e + 1).collect();
        let mut st = serializer.serialize_struct("BasisBouquet", 3)?;
        st.serialize_field("edges", &edges)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("a", &SignedVector::new(self.a.clone()))?;
        st.end()
    }
}

/// `E_U` when the multi-hypergraph of restrictions to `U` has a principal toric ideal whose
/// generator has full support; `None` otherwise.
pub fn check_bouquet_with_basis(h: &Hypergraph, u: &[usize]) -> Option<BasisBouquet> {
    let mut rows: Vec<usize> = u.iter().copied().filter(|&v| v < h.vertex_count).collect();
    rows.sort_unstable();
    rows.dedup();
    if rows.is_empty() {
        return None;
    }
    let mut in_u = vec![false; h.vertex_count];
    for &v in &rows {
        in_u[v] = true;
    }
    let edges: Vec<usize> = (0..h.edge_count())
        .filter(|&k| h.edge(k).iter().any(|&v| in_u[v]))
        .collect();
    if edges.is_empty() {
        return None;
    }
    let restricted: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&v| {
            edges
                .iter()
                .map(|&k| BigInt::from(u8::from(h.edge(k).binary_search(&v).is_ok())))
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rows(&restricted).ok()?;
    let basis = kernel_lattice_basis(&m);
    if basis.dimension() != 1 {
        return None;
    }
    let c = basis.basis_vectors[0].primitive().canonical();
    if !c.has_full_support() {
        return None;
    }
    let mut a = vec![BigInt::zero(); h.vertex_count];
    for (&k, ck) in edges.iter().zip(c.coords()) {
        for &v in h.edge(k) {
            a[v] += ck;
        }
    }
    Some(BasisBouquet { edges, c, a })
}

/// Blue and red edge multisets, as `(edge, multiplicity)` pairs with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialWalk {
    pub blue: Vec<(usize, BigInt)>,
    pub red: Vec<(usize, BigInt)>,
}

impl MonomialWalk {
    pub fn is_empty(&self) -> bool {
        self.blue.is_empty() && self.red.is_empty()
    }

    /// The signed edge vector `blue − red` of length `n`.
    pub fn to_vector(&self, n: usize) -> Result<SignedVector> {
        let mut out = vec![BigInt::zero(); n];
        for (side, sign) in [(&self.blue, 1), (&self.red, -1)] {
            for (e, m) in side {
                let slot = out.get_mut(*e).ok_or(Error::DimensionMismatch {
                    expected: n,
                    found: e + 1,
                })?;
                *slot += m * sign;
            }
        }
        Ok(SignedVector::new(out))
    }

    /// Parses the two-line `blue: e_i^m …` / `red: e_j^m …` format.
    pub fn parse(text: &str) -> Result<MonomialWalk> {
        let mut walk = MonomialWalk::default();
        let mut seen = [false; 2];
        for (k, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let (label, body) = line.split_once(':').ok_or(Error::Parse {
                line: k + 1,
                message: "expected \"blue:\" or \"red:\"".into(),
            })?;
            let (side, slot) = match label.trim() {
                "blue" => (&mut walk.blue, 0),
                "red" => (&mut walk.red, 1),
                other => {
                    return Err(Error::Parse {
                        line: k + 1,
                        message: format!("unknown side '{other}'"),
                    });
                }
            };
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::Parse {
                    line: k + 1,
                    message: format!("side '{}' given twice", label.trim()),
                });
            }
            for token in body.split_whitespace() {
                side.push(parse_walk_token(k + 1, token)?);
            }
        }
        let overlap = walk
            .blue
            .iter()
            .find(|(e, _)| walk.red.iter().any(|(f, _)| f == e));
        if let Some((e, _)) = overlap {
            return Err(Error::InvalidInput(format!(
                "edge {} is both blue and red",
                e + 1
            )));
        }
        Ok(walk)
    }
}

fn parse_walk_token(line: usize, token: &str) -> Result<(usize, BigInt)> {
    let bad = || Error::Parse {
        line,
        message: format!("invalid walk term '{token}'"),
    };
    let rest = token.strip_prefix("e_").ok_or_else(bad)?;
    let (index, mult) = match rest.split_once('^') {
        Some((i, m)) => (i, BigInt::from_str(m).map_err(|_| bad())?),
        None => (rest, BigInt::one()),
    };
    let index: usize = index.parse().map_err(|_| bad())?;
    if index == 0 || !mult.is_positive() {
        return Err(bad());
    }
    Ok((index - 1, mult))
}

impl fmt::Display for MonomialWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, side) in [("blue", &self.blue), ("red", &self.red)] {
            write!(f, "{label}:")?;
            for (e, m) in side {
                if m.is_one() {
                    write!(f, " e_{}", e + 1)?;
                } else {
                    write!(f, " e_{}^{m}", e + 1)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for MonomialWalk {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let side = |s: &[(usize, BigInt)]| -> Vec<(usize, String)> {
            s.iter().map(|(e, m)| (e + 1, m.to_string())).collect()
        };
        let mut st = serializer.serialize_struct("MonomialWalk", 2)?;
        st.serialize_field("blue", &side(&self.blue))?;
        st.serialize_field("red", &side(&self.red))?;
        st.end()
    }
}

/// The walk of `u` together with whether it is balanced at every vertex.
pub fn walk_from_vector(h: &Hypergraph, u: &SignedVector) -> Result<(MonomialWalk, bool)> {
    if u.len() != h.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: h.edge_count(),
            found: u.len(),
        });
    }
    let mut walk = MonomialWalk::default();
    for (e, x) in u.coords().iter().enumerate() {
        if x.is_positive() {
            walk.blue.push((e, x.clone()));
        } else if x.is_negative() {
            walk.red.push((e, -x));
        }
    }
    let balanced = imbalance_vector(h, &walk).iter().all(Zero::is_zero);
    Ok((walk, balanced))
}

/// `(deg_blue(v) − deg_red(v))_v`; edges outside the hypergraph are ignored.
pub fn imbalance_vector(h: &Hypergraph, w: &MonomialWalk) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); h.vertex_count];
    for (side, sign) in [(&w.blue, 1), (&w.red, -1)] {
        for (e, m) in side.iter().filter(|(e, _)| *e < h.edge_count()) {
            let delta = m * sign;
            for &v in h.edge(*e) {
                out[v] += &delta;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouquets::{compute_bouquets, BouquetKind};

    fn h(v: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(
            v,
            edges
                .iter()
                .map(|e| e.iter().map(|x| x - 1).collect())
                .collect(),
        )
        .unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn tetrahedron() -> Hypergraph {
        h(4, &[&[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]])
    }

    #[test]
    fn triangle_incidence() {
        let t = h(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let m = IntMatrix::from_rows(&[vec![1i64, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(t.incidence_matrix(), m);
    }

    #[test]
    fn text_round_trip() {
        let t = tetrahedron();
        let text = t.to_text();
        assert_eq!(text, "4 4\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
        assert_eq!(Hypergraph::parse(&text).unwrap(), t);
        assert!(Hypergraph::parse("2 1\n1 3\n").is_err());
        assert!(Hypergraph::parse("2 2\n1 2\n").is_err());
    }

    #[test]
    fn tetrahedron_facets_are_bases() {
        let t = tetrahedron();
        let b = check_bouquet_with_basis(&t, &[0, 1, 2]).unwrap();
        assert_eq!(b.c, SignedVector::from_i64s(&[1, 1, 1, -2]));
        assert_eq!(b.a, ints(&[0, 0, 0, 3]));
        let b = check_bouquet_with_basis(&t, &[1, 2, 3]).unwrap();
        assert_eq!(b.c, SignedVector::from_i64s(&[2, -1, -1, -1]));
        assert_eq!(b.a, ints(&[-3, 0, 0, 0]));
    }

    #[test]
    fn complete_graph_has_no_basis() {
        let k4 = h(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        for mask in 1u32..16 {
            let u: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            assert!(check_bouquet_with_basis(&k4, &u).is_none(), "U = {u:?}");
        }
    }

    /// First component of the three-sunflower hypergraph on `x, v_1..v_6`.
    fn first_component() -> Hypergraph {
        h(
            7,
            &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[3, 5, 7]],
        )
    }

    #[test]
    fn matched_sunflower_basis() {
        let g = first_component();
        let b = check_bouquet_with_basis(&g, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(b.c, SignedVector::from_i64s(&[1, 1, 1, -1, -1]));
        assert_eq!(b.a, ints(&[3, 0, 0, 0, 0, 0, 0]));
        let dec = compute_bouquets(&g.incidence_matrix());
        assert_eq!(dec.bouquets.len(), 1);
        assert_eq!(dec.bouquets[0].kind, BouquetKind::Free);
    }

    #[test]
    fn walk_imbalance_matches_incidence() {
        let g = first_component();
        let u = SignedVector::from_i64s(&[1, 1, 1, -1, -1]);
        let (walk, balanced) = walk_from_vector(&g, &u).unwrap();
        assert!(!balanced);
        assert_eq!(imbalance_vector(&g, &walk), ints(&[3, 0, 0, 0, 0, 0, 0]));
        assert_eq!(walk.to_vector(5).unwrap(), u);
        assert_eq!(walk.to_string(), "blue: e_1 e_2 e_3\nred: e_4 e_5\n");
        assert_eq!(MonomialWalk::parse(&walk.to_string()).unwrap(), walk);
    }

    #[test]
    fn empty_and_single_edge_walks() {
        let t = h(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let (w, balanced) = walk_from_vector(&t, &SignedVector::zeros(3)).unwrap();
        assert!(w.is_empty() && balanced);
        let (w, balanced) = walk_from_vector(&t, &SignedVector::from_i64s(&[1, 0, 0])).unwrap();
        assert!(!balanced);
        assert_eq!(imbalance_vector(&t, &w), ints(&[1, 1, 0]));
    }

    #[test]
    fn walk_parse_errors() {
        assert!(MonomialWalk::parse("blue: e_1\nred: e_1^2\n").is_err());
        assert!(MonomialWalk::parse("green: e_1\n").is_err());
        assert!(MonomialWalk::parse("blue: e_0\n").is_err());
        let w = MonomialWalk::parse("blue: e_2^3\nred:\n").unwrap();
        assert_eq!(w.blue, vec![(1, BigInt::from(3))]);
    }

    #[test]
    fn connectivity() {
        assert!(tetrahedron().is_connected());
        assert!(!h(4, &[&[1, 2], &[3, 4]]).is_connected());
    }
}
