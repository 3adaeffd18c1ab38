//! Signed projective cubes and extended double covers.
//!
//! `SPC(n)` has vertex set `Z_2^n` (vertex id = bit vector, bit `i` for the
//! generator `e_{i+1}`), positive edges between vectors at Hamming distance 1
//! and negative edges between antipodal vectors. Each edge is labelled by the
//! generator it adds: `e_i` or `J`, the all-ones vector.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundError, DistanceGraph};
use crate::signed::{verify_homomorphism, Sign, SignedGraph, Switching, VertexMap};
use crate::weighted::{canonicalize_weight, clique_is_2k_wide, pair_index, WeightedClique};

/// Largest `n` for which `SPC(n)` is built.
pub const MAX_SPC_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpcError {
    #[error("n must be at least 1")]
    BadN,
    #[error("SPC({n}) is too large (limit {MAX_SPC_N})")]
    TooLarge { n: usize },
    #[error("vertex {vertex} is not in SPC({n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a vertex has no position relative to itself")]
    SameVertex,
    #[error("triple vertices must be distinct")]
    NonDistinct,
    #[error("weights do not describe a bipartite 2k-wide K4")]
    NotWide,
    #[error("no switching of the K4 admits the seven-subset realisation")]
    NoRealization,
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// An element of `S_n`: a unit vector `e_{i+1}` or `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpcLabel {
    E(usize),
    J,
}

impl SpcLabel {
    /// `0..n-1` for unit vectors, `n` for `J`.
    pub fn index(self, n: usize) -> usize {
        match self {
            SpcLabel::E(i) => i,
            SpcLabel::J => n,
        }
    }

    pub fn from_index(i: usize, n: usize) -> SpcLabel {
        if i == n {
            SpcLabel::J
        } else {
            SpcLabel::E(i)
        }
    }

    pub fn vector(self, n: usize) -> usize {
        match self {
            SpcLabel::E(i) => 1 << i,
            SpcLabel::J => all_ones(n),
        }
    }
}

fn all_ones(n: usize) -> usize {
    (1usize << n) - 1
}

fn check_n(n: usize) -> Result<(), SpcError> {
    if n == 0 {
        return Err(SpcError::BadN);
    }
    if n > MAX_SPC_N {
        return Err(SpcError::TooLarge { n });
    }
    Ok(())
}

/// `SPC(n)`: positive edges listed by vertex then bit, then the negative
/// edges `u, u + J` with `u < u + J`. For `n = 1` this is a negative digon.
pub fn spc(n: usize) -> Result<SignedGraph, SpcError> {
    Ok(spc_labelled(n)?.0)
}

/// `SPC(n)` together with the label of every edge, by edge id.
pub fn spc_labelled(n: usize) -> Result<(SignedGraph, Vec<SpcLabel>), SpcError> {
    check_n(n)?;
    let size = 1usize << n;
    let mut g = SignedGraph::new(size);
    let mut labels = Vec::with_capacity(size * (n + 1) / 2);
    for u in 0..size {
        for i in 0..n {
            let v = u ^ (1 << i);
            if u < v {
                g.add_edge(u, v, Sign::Positive);
                labels.push(SpcLabel::E(i));
            }
        }
    }
    let j = all_ones(n);
    for u in 0..size {
        if u < u ^ j {
            g.add_edge(u, u ^ j, Sign::Negative);
            labels.push(SpcLabel::J);
        }
    }
    Ok((g, labels))
}

/// Relative position of two vertices: `plus` is the part of `S_n` not
/// containing `J` summing to `u + v`, `minus` its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPosition {
    pub plus: Vec<SpcLabel>,
    pub minus: Vec<SpcLabel>,
}

impl PairPosition {
    /// Signed length of the shorter side; ties are positive.
    pub fn algebraic_distance(&self) -> i64 {
        let (p, m) = (self.plus.len() as i64, self.minus.len() as i64);
        if m < p {
            -m
        } else {
            p
        }
    }
}

pub fn spc_pair_position(n: usize, u: usize, v: usize) -> Result<PairPosition, SpcError> {
    check_n(n)?;
    for x in [u, v] {
        if x >> n != 0 {
            return Err(SpcError::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(SpcError::SameVertex);
    }
    let diff = u ^ v;
    let (plus, mut minus): (Vec<SpcLabel>, Vec<SpcLabel>) =
        (0..n).map(SpcLabel::E).partition(|l| diff & l.vector(n) != 0);
    minus.push(SpcLabel::J);
    Ok(PairPosition { plus, minus })
}

fn ad(n: usize, u: usize, v: usize) -> i64 {
    let h = (u ^ v).count_ones() as i64;
    let other = n as i64 + 1 - h;
    if other < h {
        -other
    } else {
        h
    }
}

/// The complete distance graph of `SPC(2k-1)`, weighted by algebraic distance
/// with ties (`+k`) made positive.
pub fn spc_distance_graph(k: i64) -> Result<DistanceGraph, SpcError> {
    if k < 1 {
        return Err(SpcError::BadN);
    }
    let n = (2 * k - 1) as usize;
    let g = spc(n)?;
    Ok(DistanceGraph::from_fn(g, k, |u, v| Some(ad(n, u, v)))?)
}

/// An automorphism of `SPC(n)`: `a -> target + mu(a + source)`, composed with
/// switching at the vertices whose bit `i` is set, where `mu(e_i) = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpcAutomorphism {
    pub n: usize,
    /// `mu` on label indices (`n` is `J`).
    pub permutation: Vec<usize>,
    pub source: usize,
    pub target: usize,
    pub map: VertexMap,
}

impl SpcAutomorphism {
    pub fn apply(&self, a: usize) -> usize {
        self.map.image[a]
    }
}

fn linear_image(n: usize, mu: &[usize], a: usize) -> usize {
    (0..n)
        .filter(|&i| a >> i & 1 == 1)
        .fold(0, |acc, i| acc ^ SpcLabel::from_index(mu[i], n).vector(n))
}

/// Label set of `u + v` on the side chosen by `negative` (the side holding
/// `J` when set), as a bit mask over label indices.
fn side(n: usize, u: usize, v: usize, negative: bool) -> usize {
    let plus = u ^ v;
    if negative {
        !plus & all_ones(n + 1)
    } else {
        plus
    }
}

/// An automorphism sending `x, y, z` to `u, v, t`, if their relative
/// positions agree after switching some of `x, y, z`.
pub fn spc_triple_automorphism(
    n: usize,
    (x, y, z): (usize, usize, usize),
    (u, v, t): (usize, usize, usize),
) -> Result<Option<SpcAutomorphism>, SpcError> {
    check_n(n)?;
    for a in [x, y, z, u, v, t] {
        if a >> n != 0 {
            return Err(SpcError::VertexOutOfRange { vertex: a, n });
        }
    }
    if x == y || y == z || x == z || u == v || v == t || u == t {
        return Err(SpcError::NonDistinct);
    }
    let to = [side(n, u, v, true), side(n, v, t, true), side(n, t, u, true)];
    for mask in 0..4usize {
        // Switch y (bit 0) and/or z (bit 1); x stays.
        let (sy, sz) = (mask & 1 == 1, mask & 2 == 2);
        let from = [
            side(n, x, y, !sy),
            side(n, y, z, sy == sz),
            side(n, z, x, !sz),
        ];
        let sizes = |s: &[usize; 3]| s.map(|m| m.count_ones());
        if sizes(&from) != sizes(&to) {
            continue;
        }
        let parts = |s: &[usize; 3]| {
            let all = s[0] & s[1] & s[2];
            [all, s[0] & !all, s[1] & !all, s[2] & !all]
        };
        let (pf, pt) = (parts(&from), parts(&to));
        let mut mu = vec![usize::MAX; n + 1];
        for (a, b) in pf.iter().zip(&pt) {
            let src = (0..=n).filter(|&i| a >> i & 1 == 1);
            let dst = (0..=n).filter(|&i| b >> i & 1 == 1);
            for (i, j) in src.zip(dst) {
                mu[i] = j;
            }
        }
        debug_assert!(mu.iter().all(|&m| m <= n));
        let pivot = mu.iter().position(|&m| m == n).unwrap();
        let size = 1usize << n;
        let image: Vec<usize> = (0..size).map(|a| u ^ linear_image(n, &mu, a ^ x)).collect();
        let switching: Vec<bool> = (0..size)
            .map(|a| pivot < n && (a ^ x) >> pivot & 1 == 1)
            .collect();
        let aut = SpcAutomorphism {
            n,
            permutation: mu,
            source: x,
            target: u,
            map: VertexMap {
                image,
                switching: Switching(switching),
            },
        };
        let g = spc(n)?;
        assert!(
            verify_homomorphism(&g, &g, &aut.map).expect("sizes agree"),
            "constructed map is not an automorphism"
        );
        assert_eq!((aut.apply(x), aut.apply(y), aut.apply(z)), (u, v, t));
        return Ok(Some(aut));
    }
    Ok(None)
}

/// Four vertices of `SPC(2k-1)` realising a bipartite 2k-wide K4. Position
/// `i` goes to `vertices[i]`; the weights are matched after switching the
/// positions flagged in `switching` (none when an exact copy exists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Realization {
    pub vertices: Vec<usize>,
    pub switching: Vec<bool>,
}

impl K4Realization {
    pub fn is_exact(&self) -> bool {
        self.switching.iter().all(|&s| !s)
    }
}

/// Realises a K4 (weights in pair order `01, 02, 03, 12, 13, 23`) in
/// `SPC(2k-1)` by assigning to every edge a set of generators containing `J`
/// whose size is the length of its negative path, so that sets around each
/// triangle sum to zero.
pub fn realize_k4_in_spc(k: i64, weights: &[i64]) -> Result<K4Realization, SpcError> {
    if k < 1 || weights.len() != 6 {
        return Err(SpcError::NotWide);
    }
    let n = (2 * k - 1) as usize;
    check_n(n)?;
    let canon: Vec<i64> = weights
        .iter()
        .map(|&w| canonicalize_weight(w, k).map_err(|_| SpcError::NotWide))
        .collect::<Result<_, _>>()?;
    let clique = WeightedClique::new((0..4).collect(), canon.clone(), k);
    if !clique.is_bipartite() || !clique_is_2k_wide(&clique).map_err(|_| SpcError::NotWide)? {
        return Err(SpcError::NotWide);
    }
    for mask in 0..8usize {
        let sw: Vec<bool> = (0..4).map(|p| p > 0 && mask >> (p - 1) & 1 == 1).collect();
        if let Some(vertices) = seven_subsets(k, n, &canon, &sw) {
            let r = K4Realization { vertices, switching: sw };
            for i in 0..4 {
                for j in i + 1..4 {
                    let w = canon[pair_index(i, j, 4)];
                    let want = canonicalize_weight(if r.switching[i] ^ r.switching[j] { -w } else { w }, k).unwrap();
                    assert_eq!(ad(n, r.vertices[i], r.vertices[j]), want, "realisation check failed");
                }
            }
            return Ok(r);
        }
    }
    Err(SpcError::NoRealization)
}

fn seven_subsets(k: i64, n: usize, w: &[i64], sw: &[bool]) -> Option<Vec<usize>> {
    // Length of the negative path of each pair after switching.
    let neg = |i: usize, j: usize| -> i64 {
        let x = w[pair_index(i, j, 4)];
        let x = if sw[i] ^ sw[j] { -x } else { x };
        if x < 0 {
            -x
        } else {
            2 * k - x
        }
    };
    // t of the triangle avoiding each vertex.
    let t_avoiding = |v: usize| -> i64 {
        let o: Vec<usize> = (0..4).filter(|&p| p != v).collect();
        (neg(o[0], o[1]) + neg(o[1], o[2]) + neg(o[0], o[2]) - 2 * k) / 2
    };
    let v = (0..4).min_by_key(|&p| (t_avoiding(p), p)).unwrap();
    let t0 = t_avoiding(v);
    if t0 < 1 {
        return None;
    }
    let o: Vec<usize> = (0..4).filter(|&p| p != v).collect();
    let (x, y, z) = (o[0], o[1], o[2]);
    let (a, b, c) = (neg(x, y), neg(y, z), neg(z, x));
    let (t1, t2, t3) = (t_avoiding(z), t_avoiding(x), t_avoiding(y));
    let sizes = [t0 - 1, t1 - t0, t2 - t0, t3 - t0, a - t1, b - t2, c - t3];
    assert!(sizes.iter().all(|&s| s >= 0), "wide K4 violates the subset size bounds");
    assert_eq!(sizes.iter().sum::<i64>() + 1, 2 * k);
    // Part 0 is J plus t0-1 unit vectors; the rest take unit vectors in order.
    let mut parts = [0usize; 7];
    let mut next = 0;
    for (p, &s) in sizes.iter().enumerate() {
        for _ in 0..s {
            parts[p] ^= 1 << next;
            next += 1;
        }
    }
    parts[0] ^= all_ones(n);
    let sum = |ids: &[usize]| ids.iter().fold(0, |acc, &p| acc ^ parts[p]);
    let s_xy = sum(&[0, 1, 4]);
    let s_zx = sum(&[0, 3, 6]);
    let s_xv = sum(&[0, 1, 3, 5]);
    let mut out = vec![0; 4];
    out[y] = s_xy;
    out[z] = s_zx;
    out[v] = s_xv;
    Some(out)
}

/// Extended double cover: vertices `x+` (id `x`) and `x-` (id `x + n`), a
/// negative edge `x+ x-` for every `x`, and for each edge of `g` two positive
/// edges, `x+y+, x-y-` when it is positive and `x+y-, x-y+` when negative.
pub fn edc(g: &SignedGraph) -> SignedGraph {
    let n = g.vertex_count();
    let mut h = SignedGraph::new(2 * n);
    for x in 0..n {
        h.add_edge(x, x + n, Sign::Negative);
    }
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        if e.sign.is_negative() {
            h.add_edge(u, v + n, Sign::Positive);
            h.add_edge(u + n, v, Sign::Positive);
        } else {
            h.add_edge(u, v, Sign::Positive);
            h.add_edge(u + n, v + n, Sign::Positive);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::build_distance_graph;
    use crate::signed::{cycles_of_length, negative_girth};
    use proptest::prelude::*;

    fn bits(s: &str) -> usize {
        s.chars().enumerate().filter(|&(_, c)| c == '1').map(|(i, _)| 1 << i).sum()
    }

    #[test]
    fn small_cubes() {
        let g1 = spc(1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (2, 2));
        assert_eq!(negative_girth(&g1), Some(2));
        let g3 = spc(3).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count(), g3.negative_edge_count()), (8, 16, 4));
        assert_eq!(negative_girth(&g3), Some(4));
        assert_eq!(spc(0), Err(SpcError::BadN));
        assert_eq!(spc(21), Err(SpcError::TooLarge { n: 21 }));
    }

    #[test]
    fn negative_girth_is_n_plus_one() {
        for n in 1..=5 {
            assert_eq!(negative_girth(&spc(n).unwrap()), Some(n + 1));
        }
    }

    #[test]
    fn cycle_label_parities() {
        for (n, max_len) in [(2, 4), (3, 8), (4, 6)] {
            let (g, labels) = spc_labelled(n).unwrap();
            for len in 1..=max_len {
                cycles_of_length(&g, len, |c| {
                    let mut count = vec![0usize; n + 1];
                    for &e in &c.edges {
                        count[labels[e].index(n)] += 1;
                    }
                    let odd = c.sign == Sign::Negative;
                    assert!(count.iter().all(|&x| (x % 2 == 1) == odd), "{c:?}");
                    true
                });
            }
        }
    }

    #[test]
    fn pair_positions() {
        let p = spc_pair_position(3, 0, bits("100")).unwrap();
        assert_eq!(p.plus, vec![SpcLabel::E(0)]);
        assert_eq!(p.algebraic_distance(), 1);
        let p = spc_pair_position(3, 0, bits("111")).unwrap();
        assert_eq!(p.minus, vec![SpcLabel::J]);
        assert_eq!(p.algebraic_distance(), -1);
        assert_eq!(spc_pair_position(3, 0, bits("110")).unwrap().algebraic_distance(), 2);
        assert_eq!(spc_pair_position(3, 5, 5), Err(SpcError::SameVertex));
    }

    #[test]
    fn distance_graph_matches_enumeration() {
        let d = spc_distance_graph(2).unwrap();
        let e = build_distance_graph(&spc(3).unwrap(), 2).unwrap();
        assert_eq!(d, e);
        assert_eq!(d.edge_count(), 28);
        let d1 = spc_distance_graph(1).unwrap();
        assert_eq!((d1.vertex_count(), d1.weight(0, 1)), (2, Some(1)));
        let d3 = spc_distance_graph(3).unwrap();
        assert!((0..32).all(|u| d3.neighbors(u).all(|v| d3.weight(u, v).unwrap().abs() <= 3)));
    }

    #[test]
    fn triple_automorphism_examples() {
        let a = (0, bits("100"), bits("110"));
        let b = (0, bits("010"), bits("011"));
        let aut = spc_triple_automorphism(3, a, b).unwrap().unwrap();
        assert_eq!(aut.apply(a.2), b.2);
        let same = spc_triple_automorphism(3, a, a).unwrap().unwrap();
        assert_eq!(same.apply(a.1), a.1);
        assert_eq!(spc_triple_automorphism(3, (0, 0, 1), b), Err(SpcError::NonDistinct));
    }

    #[test]
    fn triple_automorphisms_verify_for_n5() {
        let n = 5;
        let trip = [(0, 1, 3), (5, 17, 30), (2, 9, 31), (31, 0, 7)];
        let mut found = 0;
        for &p in &trip {
            for &q in &trip {
                if let Some(aut) = spc_triple_automorphism(n, p, q).unwrap() {
                    assert_eq!((aut.apply(p.0), aut.apply(p.1), aut.apply(p.2)), q);
                    found += 1;
                }
            }
        }
        assert!(found >= trip.len());
    }

    #[test]
    fn all_twos_realisation() {
        let r = realize_k4_in_spc(2, &[2, 2, 2, 2, 2, 2]).unwrap();
        assert!(r.is_exact());
        let mut v = r.vertices.clone();
        v.sort_unstable();
        let mut want = vec![0, bits("011"), bits("101"), bits("110")];
        want.sort_unstable();
        assert_eq!(v, want);
    }

    #[test]
    fn four_cycle_with_diagonals() {
        // 0-1-2-3-0 with 3-0 negative; diagonals +2.
        let r = realize_k4_in_spc(2, &[1, 2, -1, 1, 2, 1]).unwrap();
        assert!(r.is_exact());
    }

    #[test]
    fn realisation_rejects_narrow_k4() {
        assert_eq!(realize_k4_in_spc(2, &[-1, -1, -1, -1, -1, -1]), Err(SpcError::NotWide));
    }

    #[test]
    fn edc_small() {
        let k1 = SignedGraph::new(1);
        let e = edc(&k1);
        assert_eq!((e.vertex_count(), e.edge_count(), e.negative_edge_count()), (2, 1, 1));
        let e = edc(&spc(2).unwrap());
        assert_eq!((e.vertex_count(), e.edge_count()), (8, 16));
    }

    proptest! {
        #[test]
        fn position_symmetric_and_translation_invariant(n in 1usize..7, u in 0usize..64, v in 0usize..64, a in 0usize..64) {
            let m = (1usize << n) - 1;
            let (u, v, a) = (u & m, v & m, a & m);
            prop_assume!(u != v);
            let p = spc_pair_position(n, u, v).unwrap();
            prop_assert_eq!(&p, &spc_pair_position(n, v, u).unwrap());
            prop_assert_eq!(&p, &spc_pair_position(n, u ^ a, v ^ a).unwrap());
            prop_assert_eq!(p.algebraic_distance(), ad(n, u, v));
        }
    }
}
