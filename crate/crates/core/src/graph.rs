//! Immutable simple-graph value with the density, degree, induction and
//! peeling primitives every other module consumes.
//!
//! Vertices are dense integer ids `0..n`. Adjacency lists are sorted and
//! duplicate-free; the constructor rejects loops and merges parallel edges.

use crate::rational::{density, Q};
use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("null graph: operation undefined on 0 vertices")]
    NullGraph,
    #[error("edgeless graph: operation requires at least one edge")]
    NoEdges,
    #[error("loop edge {0}-{0} not allowed")]
    Loop(usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("edge set is not a forest: contains a cycle")]
    NotAForest,
    #[error("edge {0}-{1} not present in the graph")]
    NotEdges(usize, usize),
    #[error("u and v must be distinct vertices")]
    SameVertex,
    #[error("bad graph text: {0}")]
    BadFormat(String),
}

/// Simple undirected graph, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Build from an edge list; duplicates are merged, loops rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { n, adj, m: m / 2 })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Exact density e/v. Errors on the null graph.
    pub fn density(&self) -> Result<Q, GraphError> {
        if self.n == 0 {
            return Err(GraphError::NullGraph);
        }
        Ok(density(self.m, self.n))
    }

    /// Induced subgraph on `keep` (order preserved after sorting/dedup),
    /// plus the map from new ids to original ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut verts: Vec<usize> = keep.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            back[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        let mut m = 0;
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = back[w];
                if j != usize::MAX {
                    adj[i].push(j);
                }
            }
            adj[i].sort_unstable();
            m += adj[i].len();
        }
        (Graph { n: verts.len(), adj, m: m / 2 }, verts)
    }

    /// Number of edges inside a vertex set.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut mark = vec![false; self.n];
        for &v in set {
            mark[v] = true;
        }
        let mut count = 0;
        for &v in set {
            count += self.adj[v].iter().filter(|&&w| mark[w] && w > v).count();
        }
        count
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True if `set` induces a connected nonempty subgraph.
    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut mark = vec![false; self.n];
        for &v in set {
            mark[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = vec![set[0]];
        seen[set[0]] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop() {
            for &w in &self.adj[v] {
                if mark[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push(w);
                }
            }
        }
        reached == set.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let all: Vec<usize> = (0..self.n).collect();
        self.is_connected_set(&all)
    }

    /// N(u) ∩ N(v).
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>, GraphError> {
        if u == v {
            return Err(GraphError::SameVertex);
        }
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// Peel order statistics: degeneracy via repeated min-degree removal.
    pub fn degeneracy(&self) -> usize {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut degen = 0;
        for _ in 0..self.n {
            let mut best = usize::MAX;
            let mut bestd = usize::MAX;
            for v in 0..self.n {
                if !removed[v] && deg[v] < bestd {
                    bestd = deg[v];
                    best = v;
                }
            }
            degen = degen.max(bestd);
            removed[best] = true;
            for &w in &self.adj[best] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        degen
    }

    /// Vertex order of the min-degree peel (first removed first).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let mut best = usize::MAX;
            let mut bestd = usize::MAX;
            for v in 0..self.n {
                if !removed[v] && deg[v] < bestd {
                    bestd = deg[v];
                    best = v;
                }
            }
            order.push(best);
            removed[best] = true;
            for &w in &self.adj[best] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        order
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Serialize to the text interchange format:
    /// "p <n> <m>" header, then one "e <u> <v>" line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("p {} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            s.push_str(&format!("e {} {}\n", u, v));
        }
        s
    }

    /// Parse the text format. Also accepts bare "<u> <v>" edge lines.
    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| GraphError::BadFormat(format!("line {}: {}", lineno + 1, msg));
            match toks[0] {
                "p" => {
                    if toks.len() < 3 {
                        return Err(bad("expected 'p <n> <m>'"));
                    }
                    let nn = toks[1].parse::<usize>().map_err(|_| bad("bad vertex count"))?;
                    n = Some(nn);
                }
                "e" => {
                    if toks.len() != 3 {
                        return Err(bad("expected 'e <u> <v>'"));
                    }
                    let u = toks[1].parse::<usize>().map_err(|_| bad("bad endpoint"))?;
                    let v = toks[2].parse::<usize>().map_err(|_| bad("bad endpoint"))?;
                    edges.push((u, v));
                }
                _ => {
                    if toks.len() != 2 {
                        return Err(bad("expected '<u> <v>'"));
                    }
                    let u = toks[0].parse::<usize>().map_err(|_| bad("bad endpoint"))?;
                    let v = toks[1].parse::<usize>().map_err(|_| bad("bad endpoint"))?;
                    edges.push((u, v));
                }
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edges(n, &edges)
    }
}

/// Exact per-graph statistics. `density` is a reduced rational, never a float.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub v: usize,
    pub e: usize,
    pub density: Q,
    pub min_degree: usize,
    pub degeneracy: usize,
}

/// All fields computed exactly; errors on the null graph.
pub fn stats(g: &Graph) -> Result<GraphStats, GraphError> {
    let d = g.density()?;
    Ok(GraphStats {
        v: g.n(),
        e: g.m(),
        density: d,
        min_degree: g.min_degree(),
        degeneracy: g.degeneracy(),
    })
}

/// Induced subgraph H with min_degree(H) > density(H) and
/// density(H) >= density(G), obtained by repeatedly deleting the
/// lowest-indexed vertex of degree <= current density.
///
/// Returns the core together with its vertex map into `g`.
pub fn densest_core(g: &Graph) -> Result<(Graph, Vec<usize>), GraphError> {
    if g.n() == 0 {
        return Err(GraphError::NullGraph);
    }
    if g.m() == 0 {
        return Err(GraphError::NoEdges);
    }
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut v_count = g.n();
    let mut e_count = g.m();
    loop {
        let d = density(e_count, v_count);
        let mut victim = None;
        for v in 0..g.n() {
            if alive[v] && crate::rational::q_usize(deg[v]) <= d {
                victim = Some(v);
                break;
            }
        }
        match victim {
            None => break,
            Some(v) => {
                alive[v] = false;
                v_count -= 1;
                e_count -= deg[v];
                for &w in g.neighbors(v) {
                    if alive[w] {
                        deg[w] -= 1;
                    }
                }
            }
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    debug_assert!(!keep.is_empty());
    let (core, map) = g.induced(&keep);
    Ok((core, map))
}

/// Witness that a graph was obtained from `from_n` source vertices by
/// contracting the connected classes listed in `classes`.
///
/// Class i becomes result vertex i; `class_of[v]` maps a source vertex to
/// its result vertex (None for vertices dropped by the contraction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionMap {
    pub from_n: usize,
    pub to_n: usize,
    pub class_of: Vec<Option<usize>>,
    pub classes: Vec<Vec<usize>>,
}

impl ContractionMap {
    /// Identity map on an n-vertex graph.
    pub fn identity(n: usize) -> ContractionMap {
        ContractionMap {
            from_n: n,
            to_n: n,
            class_of: (0..n).map(Some).collect(),
            classes: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Checks the partition/shape invariants against the source graph.
    pub fn validate(&self, source: &Graph) -> Result<(), GraphError> {
        if self.from_n != source.n() || self.to_n != self.classes.len() {
            return Err(GraphError::BadFormat("contraction map shape mismatch".into()));
        }
        let mut seen = vec![false; self.from_n];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(GraphError::BadFormat(format!("class {} empty", i)));
            }
            for &v in class {
                if v >= self.from_n || seen[v] {
                    return Err(GraphError::BadFormat(format!("class {} ill-formed", i)));
                }
                seen[v] = true;
                if self.class_of[v] != Some(i) {
                    return Err(GraphError::BadFormat(format!("class_of[{}] inconsistent", v)));
                }
            }
            if !source.is_connected_set(class) {
                return Err(GraphError::BadFormat(format!("class {} not connected", i)));
            }
        }
        Ok(())
    }

    /// Compose with a map out of this map's result graph.
    /// `self: G -> G1`, `next: G1 -> G2`, result: `G -> G2`.
    pub fn compose(&self, next: &ContractionMap) -> ContractionMap {
        assert_eq!(self.to_n, next.from_n, "composition shape mismatch");
        let classes: Vec<Vec<usize>> = next
            .classes
            .iter()
            .map(|mid| {
                let mut cl: Vec<usize> = mid
                    .iter()
                    .flat_map(|&c| self.classes[c].iter().copied())
                    .collect();
                cl.sort_unstable();
                cl
            })
            .collect();
        let mut class_of = vec![None; self.from_n];
        for (i, cl) in classes.iter().enumerate() {
            for &v in cl {
                class_of[v] = Some(i);
            }
        }
        ContractionMap { from_n: self.from_n, to_n: next.to_n, class_of, classes }
    }

    /// Largest class size (the bound of the contraction as a minor).
    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

/// Contract an acyclic edge set F ⊆ E(G). The classes of the resulting map
/// are exactly the components of (V(G), F); parallel edges merge and the
/// contracted edges disappear, so the result is simple.
///
/// Returns (result, map, edge_loss) with edge_loss = e(G) - e(result).
pub fn contract_forest(
    g: &Graph,
    forest: &[(usize, usize)],
) -> Result<(Graph, ContractionMap, usize), GraphError> {
    // union-find over the forest edges
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = v;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(u, v) in forest {
        if u >= g.n() || v >= g.n() || !g.has_edge(u.min(v), u.max(v)) {
            return Err(GraphError::NotEdges(u, v));
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(GraphError::NotAForest);
        }
        parent[ru] = rv;
    }
    // classes ordered by smallest member
    let mut root_to_class: Vec<Option<usize>> = vec![None; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![None; g.n()];
    for v in 0..g.n() {
        let r = find(&mut parent, v);
        let idx = match root_to_class[r] {
            Some(i) => i,
            None => {
                root_to_class[r] = Some(classes.len());
                classes.push(Vec::new());
                classes.len() - 1
            }
        };
        classes[idx].push(v);
        class_of[v] = Some(idx);
    }
    let to_n = classes.len();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (cu, cv) = (class_of[u].unwrap(), class_of[v].unwrap());
        if cu != cv {
            edges.push((cu.min(cv), cu.max(cv)));
        }
    }
    let result = Graph::from_edges(to_n, &edges)?;
    let loss = g.m() - result.m();
    let map = ContractionMap { from_n: g.n(), to_n, class_of, classes };
    Ok((result, map, loss))
}
