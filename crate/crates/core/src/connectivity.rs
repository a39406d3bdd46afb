//! Exact vertex connectivity via unit-capacity max-flow on the split graph.

use crate::graph::{Graph, GraphError};

/// Max number of internally vertex-disjoint s-t paths (s, t non-adjacent),
/// optionally stopping early once the flow reaches `cap`.
///
/// Uses the standard vertex-split digraph: v_in -> v_out with capacity 1,
/// plus edge arcs of unlimited capacity, and BFS augmentation.
fn st_vertex_flow(g: &Graph, s: usize, t: usize, cap: usize) -> (usize, Vec<usize>) {
    let n = g.n();
    // node ids: v_in = 2v, v_out = 2v+1
    // arcs stored as (to, cap); reverse arc is index ^ 1
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut arcs: Vec<(usize, u32)> = Vec::new();
    let mut add_arc = |head: &mut Vec<Vec<usize>>, arcs: &mut Vec<(usize, u32)>, a: usize, b: usize, c: u32| {
        head[a].push(arcs.len());
        arcs.push((b, c));
        head[b].push(arcs.len());
        arcs.push((a, 0));
    };
    for v in 0..n {
        let c = if v == s || v == t { u32::MAX / 2 } else { 1 };
        add_arc(&mut head, &mut arcs, 2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        add_arc(&mut head, &mut arcs, 2 * u + 1, 2 * v, u32::MAX / 2);
        add_arc(&mut head, &mut arcs, 2 * v + 1, 2 * u, u32::MAX / 2);
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0usize;
    let mut pred: Vec<Option<usize>> = vec![None; 2 * n];
    while flow < cap {
        for p in pred.iter_mut() {
            *p = None;
        }
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        pred[source] = Some(usize::MAX);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &ai in &head[x] {
                let (to, c) = arcs[ai];
                if c > 0 && pred[to].is_none() {
                    pred[to] = Some(ai);
                    queue.push_back(to);
                }
            }
        }
        if pred[sink].is_none() {
            break;
        }
        // augment by 1 along the path
        let mut x = sink;
        while x != source {
            let ai = pred[x].unwrap();
            arcs[ai].1 -= 1;
            arcs[ai ^ 1].1 += 1;
            x = arcs[ai ^ 1].0;
        }
        flow += 1;
    }
    // min cut witness: vertices whose split arc crosses the reachable boundary
    let mut reach = vec![false; 2 * n];
    let mut queue = vec![source];
    reach[source] = true;
    while let Some(x) = queue.pop() {
        for &ai in &head[x] {
            let (to, c) = arcs[ai];
            if c > 0 && !reach[to] {
                reach[to] = true;
                queue.push(to);
            }
        }
    }
    let cut: Vec<usize> = (0..n)
        .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
        .collect();
    (flow, cut)
}

/// Exact vertex connectivity. By convention κ(K_n) = n - 1 and κ of a
/// disconnected graph is 0.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, GraphError> {
    Ok(connectivity_with_cut(g)?.0)
}

/// Connectivity together with a minimum separating set (empty when the
/// graph is complete or a single vertex).
pub fn connectivity_with_cut(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::NullGraph);
    }
    if n == 1 {
        return Ok((0, Vec::new()));
    }
    if !g.is_connected() {
        return Ok((0, Vec::new()));
    }
    // complete graph: no separating pair exists
    if g.m() == n * (n - 1) / 2 {
        return Ok((n - 1, Vec::new()));
    }
    // minimum over s in {v0} ∪ N(v0) (v0 of minimum degree) and all t
    // non-adjacent to s; some member of that set avoids any minimum cut.
    let v0 = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut sources = vec![v0];
    sources.extend_from_slice(g.neighbors(v0));
    let mut best = g.min_degree();
    let mut best_cut: Option<Vec<usize>> = None;
    for &s in &sources {
        for t in 0..n {
            if t == s || g.has_edge(s.min(t), s.max(t)) {
                continue;
            }
            let (flow, cut) = st_vertex_flow(g, s, t, best);
            if flow < best {
                best = flow;
                best_cut = Some(cut);
            }
        }
    }
    let cut = match best_cut {
        Some(c) => c,
        None => {
            // connectivity equals the minimum degree; its neighborhood separates
            g.neighbors(v0).to_vec()
        }
    };
    debug_assert_eq!(cut.len(), best);
    Ok((best, cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;

    /// Brute-force oracle for small n: smallest vertex set whose removal
    /// disconnects the graph; n - 1 for complete graphs.
    fn kappa_oracle(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 16);
        if g.m() == n * (n - 1) / 2 {
            return n.saturating_sub(1);
        }
        let mut best = n - 1;
        for mask in 0u32..(1 << n) {
            let cut_size = mask.count_ones() as usize;
            if cut_size >= best {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            if keep.len() > 1 {
                let (h, _) = g.induced(&keep);
                if !h.is_connected() {
                    best = cut_size;
                }
            }
        }
        best
    }

    #[test]
    fn test_connectivity_c5() {
        assert_eq!(vertex_connectivity(&named::cycle(5)).unwrap(), 2);
    }

    #[test]
    fn test_connectivity_k6_convention() {
        assert_eq!(vertex_connectivity(&named::complete(6)).unwrap(), 5);
    }

    #[test]
    fn test_connectivity_petersen_vs_oracle() {
        let g = named::petersen();
        assert_eq!(kappa_oracle(&g), 3);
        assert_eq!(vertex_connectivity(&g).unwrap(), 3);
    }

    #[test]
    fn test_connectivity_at_most_min_degree() {
        for g in [named::petersen(), named::path(6), named::star(5), named::grid(3, 3)] {
            assert!(vertex_connectivity(&g).unwrap() <= g.min_degree());
        }
    }

    #[test]
    fn test_cut_witness_separates() {
        let g = named::grid(3, 4);
        let (k, cut) = connectivity_with_cut(&g).unwrap();
        assert_eq!(k, 2);
        assert_eq!(cut.len(), 2);
        let keep: Vec<usize> = (0..g.n()).filter(|v| !cut.contains(v)).collect();
        let (h, _) = g.induced(&keep);
        assert!(!h.is_connected());
    }

    #[test]
    fn test_disconnected_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 0);
    }
}
