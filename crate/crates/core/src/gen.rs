//! Deterministic instance generators and the small-pattern subgraph test.
//!
//! Every generator is a pure function of (kind, params, seed): identical
//! inputs produce identical graphs, byte for byte.

use crate::graph::{Graph, GraphError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("pattern too large: v(H) = {0} exceeds the cap of 8")]
    PatternTooLarge(usize),
}

/// Fixed named graphs used throughout the tests.
pub mod named {
    use crate::graph::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Star K_{1,leaves} with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// K_{a,b} with side A = 0..a and side B = a..a+b.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// r-by-c grid, vertex (i, j) = i*c + j.
    pub fn grid(r: usize, c: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    edges.push((i * c + j, i * c + j + 1));
                }
                if i + 1 < r {
                    edges.push((i * c + j, (i + 1) * c + j));
                }
            }
        }
        Graph::from_edges(r * c, &edges).unwrap()
    }

    /// The Petersen graph: outer C_5, inner pentagram, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, &edges).unwrap()
    }
}

/// G(n, p): each pair independently with probability p.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadParams(format!("p = {} outside [0,1]", p)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).unwrap())
}

/// G(n, m): exactly m distinct edges, uniformly chosen.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(GenError::BadParams(format!("m = {} exceeds {}", m, max)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(max);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    Ok(Graph::from_edges(n, &pairs).unwrap())
}

/// Unbalanced bipartite graph: A = 0..a, B = a..a+b, each A-vertex picks
/// `deg` distinct B-neighbors.
pub fn bipartite_unbalanced(a: usize, b: usize, deg: usize, seed: u64) -> Result<Graph, GenError> {
    if deg > b {
        return Err(GenError::BadParams(format!("deg = {} exceeds |B| = {}", deg, b)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut pool: Vec<usize> = (0..b).collect();
    for u in 0..a {
        pool.shuffle(&mut rng);
        for &x in pool.iter().take(deg) {
            edges.push((u, a + x));
        }
    }
    Ok(Graph::from_edges(a + b, &edges).unwrap())
}

// Field tables for GF(q), q in {2, 3, 4, 5, 7}, shipped as data.
// GF(4) is F_2[x]/(x^2+x+1) with elements 0, 1, x = 2, x+1 = 3.
const GF4_ADD: [[u8; 4]; 4] = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
];
const GF4_MUL: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
];

#[derive(Clone, Copy)]
struct Field {
    q: usize,
}

impl Field {
    fn new(q: usize) -> Option<Field> {
        if matches!(q, 2 | 3 | 4 | 5 | 7) {
            Some(Field { q })
        } else {
            None
        }
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        if self.q == 4 {
            GF4_ADD[a as usize][b as usize]
        } else {
            ((a as usize + b as usize) % self.q) as u8
        }
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        if self.q == 4 {
            GF4_MUL[a as usize][b as usize]
        } else {
            ((a as usize * b as usize) % self.q) as u8
        }
    }
}

/// Point-line incidence graph of the projective plane PG(2, q).
///
/// 2(q^2+q+1) vertices (points first, then lines), (q+1)-regular,
/// girth 6 and in particular C_4-free. q must be one of {2, 3, 4, 5, 7}.
pub fn pg_incidence(q: usize) -> Result<Graph, GenError> {
    let field = Field::new(q)
        .ok_or_else(|| GenError::BadParams(format!("q = {} not in {{2,3,4,5,7}}", q)))?;
    // canonical projective points: first nonzero coordinate equals 1
    let mut points: Vec<[u8; 3]> = Vec::new();
    points.push([0, 0, 1]);
    for y in 0..q as u8 {
        points.push([0, 1, y]);
    }
    for y in 0..q as u8 {
        for z in 0..q as u8 {
            points.push([1, y, z]);
        }
    }
    let np = q * q + q + 1;
    debug_assert_eq!(points.len(), np);
    // lines are the same set by duality; point p on line l iff <p,l> = 0
    let mut edges = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        for (li, l) in points.iter().enumerate() {
            let mut dot = 0u8;
            for c in 0..3 {
                dot = field.add(dot, field.mul(p[c], l[c]));
            }
            if dot == 0 {
                edges.push((pi, np + li));
            }
        }
    }
    Ok(Graph::from_edges(2 * np, &edges).unwrap())
}

/// Line-point incidence of the affine space AG(3, q): lines first
/// (q^2(q^2+q+1) of them, each of size q), then the q^3 points. Any two
/// lines share at most one point, so line-side codegrees are 0 or 1.
///
/// Returns the graph and the number of lines.
pub fn ag3_lines_incidence(q: usize) -> Result<(Graph, usize), GenError> {
    let field = Field::new(q)
        .ok_or_else(|| GenError::BadParams(format!("q = {} not in {{2,3,4,5,7}}", q)))?;
    let qu = q as u8;
    let np = q * q * q;
    let point_id = |p: [u8; 3]| -> usize {
        (p[0] as usize) * q * q + (p[1] as usize) * q + p[2] as usize
    };
    // canonical directions: first nonzero coordinate equals 1
    let mut dirs: Vec<[u8; 3]> = vec![[0, 0, 1]];
    for y in 0..qu {
        dirs.push([0, 1, y]);
    }
    for y in 0..qu {
        for z in 0..qu {
            dirs.push([1, y, z]);
        }
    }
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut covered = std::collections::HashSet::new();
    for dir in &dirs {
        for a in 0..qu {
            for b in 0..qu {
                for c in 0..qu {
                    let base = [a, b, c];
                    let mut pts: Vec<usize> = (0..qu)
                        .map(|t| {
                            let p = [
                                field.add(base[0], field.mul(t, dir[0])),
                                field.add(base[1], field.mul(t, dir[1])),
                                field.add(base[2], field.mul(t, dir[2])),
                            ];
                            point_id(p)
                        })
                        .collect();
                    pts.sort_unstable();
                    if covered.insert(pts.clone()) {
                        lines.push(pts);
                    }
                }
            }
        }
    }
    let nl = lines.len();
    debug_assert_eq!(nl, q * q * (q * q + q + 1));
    let mut edges = Vec::new();
    for (li, pts) in lines.iter().enumerate() {
        for &p in pts {
            edges.push((li, nl + p));
        }
    }
    let g = Graph::from_edges(nl + np, &edges).unwrap();
    Ok((g, nl))
}

/// Dense blocks glued along small cuts in a tree pattern: block 0 is a
/// K_{block} on fresh vertices; every other block reuses `cut` vertices of
/// its tree-parent and adds block - cut fresh ones.
pub fn glued_blobs(blocks: usize, block: usize, cut: usize, seed: u64) -> Result<Graph, GenError> {
    if blocks == 0 || block < 2 || cut >= block {
        return Err(GenError::BadParams("need blocks >= 1, block >= 2, cut < block".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut next_id = 0;
    let mut edges = Vec::new();
    for b in 0..blocks {
        let mut verts = Vec::new();
        if b > 0 {
            let parent = rng.gen_range(0..b);
            let mut pool = members[parent].clone();
            pool.shuffle(&mut rng);
            verts.extend(pool.into_iter().take(cut));
        }
        while verts.len() < block {
            verts.push(next_id);
            next_id += 1;
        }
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                edges.push((verts[i], verts[j]));
            }
        }
        members.push(verts);
    }
    Ok(Graph::from_edges(next_id, &edges).unwrap())
}

/// Generator kinds for the CLI surface.
#[derive(Debug, Clone)]
pub enum GenKind {
    Gnp { n: usize, p: f64 },
    Gnm { n: usize, m: usize },
    BipartiteUnbalanced { a: usize, b: usize, deg: usize },
    PgIncidence { q: usize },
    GluedBlobs { blocks: usize, block: usize, cut: usize },
}

/// Deterministic dispatch over the generator kinds.
pub fn gen(kind: &GenKind, seed: u64) -> Result<Graph, GenError> {
    match *kind {
        GenKind::Gnp { n, p } => gnp(n, p, seed),
        GenKind::Gnm { n, m } => gnm(n, m, seed),
        GenKind::BipartiteUnbalanced { a, b, deg } => bipartite_unbalanced(a, b, deg, seed),
        GenKind::PgIncidence { q } => pg_incidence(q),
        GenKind::GluedBlobs { blocks, block, cut } => glued_blobs(blocks, block, cut, seed),
    }
}

/// True iff no subgraph of `g` is isomorphic to `h` (not necessarily
/// induced). Backtracking with degree pruning; v(h) capped at 8.
pub fn subgraph_free(g: &Graph, h: &Graph) -> Result<bool, GenError> {
    if h.n() > 8 {
        return Err(GenError::PatternTooLarge(h.n()));
    }
    if h.m() == 0 {
        // an edgeless pattern embeds whenever enough vertices exist
        return Ok(g.n() < h.n());
    }
    if g.n() < h.n() || g.m() < h.m() {
        return Ok(true);
    }
    // order pattern vertices by descending degree, keeping connectivity to
    // already-placed vertices where possible
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut assignment = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    fn place(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        pos: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let hv = order[pos];
        'cand: for gv in 0..g.n() {
            if used[gv] || g.degree(gv) < h.degree(hv) {
                continue;
            }
            for &hw in h.neighbors(hv) {
                let gw = assignment[hw];
                if gw != usize::MAX && !g.has_edge(gv.min(gw), gv.max(gw)) {
                    continue 'cand;
                }
            }
            assignment[hv] = gv;
            used[gv] = true;
            if place(g, h, order, pos + 1, assignment, used) {
                return true;
            }
            assignment[hv] = usize::MAX;
            used[gv] = false;
        }
        false
    }
    Ok(!place(g, h, &order, 0, &mut assignment, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn girth(g: &Graph) -> usize {
        // BFS from every vertex; shortest cycle through the root
        let mut best = usize::MAX;
        for s in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut par = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        par[w] = v;
                        queue.push_back(w);
                    } else if par[v] != w && par[w] != v {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn test_pg2_is_heawood() {
        let g = pg_incidence(2).unwrap();
        assert_eq!(g.n(), 14);
        assert_eq!(g.m(), 21);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(girth(&g), 6);
    }

    #[test]
    fn test_pg_family_counts() {
        for q in [2usize, 3, 4, 5, 7] {
            let g = pg_incidence(q).unwrap();
            let np = q * q + q + 1;
            assert_eq!(g.n(), 2 * np);
            assert_eq!(g.m(), (q + 1) * np);
            assert!(g.vertices().all(|v| g.degree(v) == q + 1));
        }
        assert!(pg_incidence(6).is_err());
    }

    #[test]
    fn test_pg_c4_free() {
        let c4 = named::cycle(4);
        for q in [2usize, 3, 4, 5] {
            let g = pg_incidence(q).unwrap();
            assert!(subgraph_free(&g, &c4).unwrap());
        }
    }

    #[test]
    fn test_gnp_extremes() {
        let g = gnp(10, 0.0, 7).unwrap();
        assert_eq!(g.m(), 0);
        let h = gnm(10, 45, 7).unwrap();
        assert_eq!(h.m(), 45); // K_10
    }

    #[test]
    fn test_gen_determinism() {
        let a = gnp(20, 0.4, 99).unwrap();
        let b = gnp(20, 0.4, 99).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = glued_blobs(4, 5, 1, 3).unwrap();
        let d = glued_blobs(4, 5, 1, 3).unwrap();
        assert_eq!(c.to_text(), d.to_text());
    }

    #[test]
    fn test_subgraph_free_basics() {
        let k5 = named::complete(5);
        let c4 = named::cycle(4);
        assert!(!subgraph_free(&k5, &c4).unwrap()); // complete graphs contain C_4
        let k2 = named::path(2);
        assert!(!subgraph_free(&k5, &k2).unwrap());
        assert!(subgraph_free(&Graph::empty(4), &k2).unwrap());
        let big = named::complete(9);
        assert!(subgraph_free(&named::complete(3), &big).is_err());
    }

    #[test]
    fn test_bipartite_unbalanced_degrees() {
        let g = bipartite_unbalanced(12, 5, 5, 2).unwrap();
        for u in 0..12 {
            assert_eq!(g.degree(u), 5);
        }
    }
}
