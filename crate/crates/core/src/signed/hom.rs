//! Exhaustive homomorphism and isomorphism search for signed graphs.

use super::{GraphError, SignedGraph, Switching, VertexId, VertexMap};

type Bits = Vec<u64>;

fn bit_words(len: usize) -> usize {
    len.div_ceil(64)
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn iter_bits(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            }
        })
    })
}

/// Search order: greedily take the vertex with most already-ordered
/// neighbours, ties by larger degree, then smaller id. Returns the order and
/// whether each vertex opens a new component.
fn search_order(g: &SignedGraph, nbrs: &[Vec<VertexId>]) -> (Vec<VertexId>, Vec<bool>) {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut opens = vec![false; n];
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        if links[best] == 0 {
            opens[best] = true;
        }
        placed[best] = true;
        order.push(best);
        for &w in &nbrs[best] {
            links[w] += 1;
        }
    }
    (order, opens)
}

/// Signs required between each adjacent pair of `g` (mask: 1 = +, 2 = -).
fn pair_requirements(g: &SignedGraph) -> (Vec<Vec<VertexId>>, Vec<Vec<(VertexId, u8)>>) {
    let n = g.vertex_count();
    let mut req: Vec<Vec<(VertexId, u8)>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.is_loop() {
            continue;
        }
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            match req[a].iter_mut().find(|(w, _)| *w == b) {
                Some(slot) => slot.1 |= e.sign.mask(),
                None => req[a].push((b, e.sign.mask())),
            }
        }
    }
    let nbrs = req
        .iter()
        .map(|r| r.iter().map(|&(w, _)| w).collect())
        .collect();
    (nbrs, req)
}

fn flip_mask(mask: u8, flipped: bool) -> u8 {
    if flipped {
        ((mask & 1) << 1) | ((mask & 2) >> 1)
    } else {
        mask
    }
}

/// Finds a homomorphism of `g` to `b`: an image per vertex and a switching of
/// `g` after which every edge sign is carried by an edge of `b` between the
/// images. Search over (image, switch bit) with forward checking; images are
/// tried by increasing id, unswitched first, so the result is deterministic.
pub fn find_homomorphism(g: &SignedGraph, b: &SignedGraph) -> Option<VertexMap> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(VertexMap {
            image: Vec::new(),
            switching: Switching(Vec::new()),
        });
    }
    let nb = b.vertex_count();
    if nb == 0 {
        return None;
    }
    let dom = 2 * nb;
    let words = bit_words(dom);
    // compat[req_mask - 1][d] = allowed partner values, value d = 2 * image + flip.
    let mut compat: Vec<Vec<Bits>> = vec![vec![vec![0; words]; dom]; 3];
    let masks: Vec<Vec<u8>> = (0..nb)
        .map(|x| (0..nb).map(|y| b.sign_mask(x, y)).collect())
        .collect();
    for req in 1..=3u8 {
        for d1 in 0..dom {
            for d2 in 0..dom {
                let (b1, f1, b2, f2) = (d1 / 2, d1 % 2 == 1, d2 / 2, d2 % 2 == 1);
                let need = flip_mask(req, f1 != f2);
                if masks[b1][b2] & need == need {
                    set_bit(&mut compat[req as usize - 1][d1], d2);
                }
            }
        }
    }
    let (nbrs, req) = pair_requirements(g);
    let mut domains: Vec<Bits> = vec![vec![0; words]; n];
    for (v, d) in domains.iter_mut().enumerate() {
        let loop_need = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| w == v)
            .fold(0u8, |m, &(_, e)| m | g.edge(e).sign.mask());
        for x in 0..nb {
            if masks[x][x] & loop_need == loop_need {
                set_bit(d, 2 * x);
                set_bit(d, 2 * x + 1);
            }
        }
        if is_empty(d) {
            return None;
        }
    }
    let (order, opens) = search_order(g, &nbrs);
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut solver = HomSolver {
        order: &order,
        opens: &opens,
        req: &req,
        compat: &compat,
        assigned: &mut assigned,
    };
    if solver.solve(0, &mut domains) {
        let image = assigned.iter().map(|d| d.unwrap() / 2).collect();
        let switching = Switching(assigned.iter().map(|d| d.unwrap() % 2 == 1).collect());
        Some(VertexMap { image, switching })
    } else {
        None
    }
}

struct HomSolver<'a> {
    order: &'a [VertexId],
    opens: &'a [bool],
    req: &'a [Vec<(VertexId, u8)>],
    compat: &'a [Vec<Bits>],
    assigned: &'a mut Vec<Option<usize>>,
}

impl HomSolver<'_> {
    fn solve(&mut self, depth: usize, domains: &mut Vec<Bits>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = iter_bits(&domains[v])
            // Switching a whole component preserves a solution, so its first
            // vertex may stay unswitched.
            .filter(|d| !(self.opens[v] && d % 2 == 1))
            .collect();
        for d in candidates {
            let mut saved: Vec<(VertexId, Bits)> = Vec::new();
            let mut ok = true;
            for &(w, mask) in &self.req[v] {
                if self.assigned[w].is_some() {
                    continue;
                }
                let allowed = &self.compat[mask as usize - 1][d];
                let old = domains[w].clone();
                for (x, y) in domains[w].iter_mut().zip(allowed) {
                    *x &= *y;
                }
                let empty = is_empty(&domains[w]);
                saved.push((w, old));
                if empty {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.assigned[v] = Some(d);
                if self.solve(depth + 1, domains) {
                    return true;
                }
                self.assigned[v] = None;
            }
            for (w, old) in saved.into_iter().rev() {
                domains[w] = old;
            }
        }
        false
    }
}

/// Checks that `f` is a homomorphism of `g` to `b`.
pub fn verify_homomorphism(
    g: &SignedGraph,
    b: &SignedGraph,
    f: &VertexMap,
) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    for len in [f.image.len(), f.switching.len()] {
        if len != n {
            return Err(GraphError::SizeMismatch {
                expected: n,
                found: len,
            });
        }
    }
    if let Some(&bad) = f.image.iter().find(|&&x| x >= b.vertex_count()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: bad,
            n: b.vertex_count(),
        });
    }
    Ok(g.edges().iter().all(|e| {
        let s = if e.is_loop() {
            e.sign
        } else {
            e.sign * f.switching.sign_at(e.u) * f.switching.sign_at(e.v)
        };
        b.sign_mask(f.image[e.u], f.image[e.v]) & s.mask() != 0
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// Signs must match edge for edge.
    Exact,
    /// Signs must match after switching the source.
    UpToSwitching,
}

/// Finds a bijection `g1 -> g2` preserving edge multiplicities and, after the
/// returned switching of `g1` (trivial in `Exact` mode), edge signs.
pub fn find_isomorphism(g1: &SignedGraph, g2: &SignedGraph, mode: IsoMode) -> Option<VertexMap> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let counts = |g: &SignedGraph| {
        let mut c = vec![[0u32; 2]; n * n];
        for e in g.edges() {
            let s = e.sign.is_negative() as usize;
            c[e.u * n + e.v][s] += 1;
            if !e.is_loop() {
                c[e.v * n + e.u][s] += 1;
            }
        }
        c
    };
    let c1 = counts(g1);
    let c2 = counts(g2);
    let (nbrs, _) = pair_requirements(g1);
    let (order, opens) = search_order(g1, &nbrs);
    let mut st = IsoSearch {
        n,
        c1: &c1,
        c2: &c2,
        g1,
        g2,
        order: &order,
        opens: &opens,
        switch_ok: mode == IsoMode::UpToSwitching,
        image: vec![None; n],
        used: vec![false; n],
    };
    if st.solve(0) {
        let image: Vec<usize> = st.image.iter().map(|d| d.unwrap().0).collect();
        let switching = Switching(st.image.iter().map(|d| d.unwrap().1).collect());
        Some(VertexMap { image, switching })
    } else {
        None
    }
}

struct IsoSearch<'a> {
    n: usize,
    c1: &'a [[u32; 2]],
    c2: &'a [[u32; 2]],
    g1: &'a SignedGraph,
    g2: &'a SignedGraph,
    order: &'a [VertexId],
    opens: &'a [bool],
    switch_ok: bool,
    image: Vec<Option<(VertexId, bool)>>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn fits(&self, u: VertexId, x: VertexId, fu: bool, v: VertexId, y: VertexId, fv: bool) -> bool {
        let a = self.c1[u * self.n + v];
        let b = self.c2[x * self.n + y];
        if u != v && fu != fv {
            a[0] == b[1] && a[1] == b[0]
        } else {
            a == b
        }
    }

    fn solve(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let u = self.order[depth];
        let flips: &[bool] = if self.switch_ok && !self.opens[u] {
            &[false, true]
        } else {
            &[false]
        };
        for x in 0..self.n {
            if self.used[x] || self.g1.degree(u) != self.g2.degree(x) {
                continue;
            }
            for &fu in flips {
                if !self.fits(u, x, fu, u, x, fu) {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&v| {
                    let (y, fv) = self.image[v].unwrap();
                    self.fits(u, x, fu, v, y, fv)
                });
                if !consistent {
                    continue;
                }
                self.image[u] = Some((x, fu));
                self.used[x] = true;
                if self.solve(depth + 1) {
                    return true;
                }
                self.used[x] = false;
                self.image[u] = None;
            }
        }
        false
    }
}

/// Applies `f` to `g`: the image graph on `target_n` vertices after switching.
pub fn image_graph(g: &SignedGraph, f: &VertexMap, target_n: usize) -> SignedGraph {
    let mut h = SignedGraph::new(target_n);
    for e in g.edges() {
        let s = if e.is_loop() {
            e.sign
        } else {
            e.sign * f.switching.sign_at(e.u) * f.switching.sign_at(e.v)
        };
        h.add_edge(f.image[e.u], f.image[e.v], s);
    }
    h
}
