//! Constructive, certifying coloring: every operation returns either the
//! promised coloring/independent set or an explicit clique model.
//!
//! The engine is a reconstructed connected-domination peel: grow D from a
//! seed by distance-2 jumps, putting the far endpoint into an independent
//! set I, so |D| <= 2|I| - 1 at every step. Exhausting the peel t - 2
//! times either leaves an edgeless residue (coloring branch) or converts
//! the chain plus one surviving edge into a K_t model.

use crate::graph::{Graph, GraphError};
use crate::model::{validate_model, Model, ModelError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("component argument is not connected")]
    Disconnected,
    #[error("t must be at least 2")]
    BadT,
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// A proper coloring; `colors[v]` is the color of vertex v and
/// `palette_size` the number of distinct colors used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    /// Validates properness against the graph.
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Coloring, ColoringError> {
        if colors.len() != g.n() {
            return Err(ColoringError::Internal("color vector length mismatch".into()));
        }
        for (u, v) in g.edges() {
            if colors[u] == colors[v] {
                return Err(ColoringError::Internal(format!(
                    "edge {}-{} is monochromatic ({})",
                    u, v, colors[u]
                )));
            }
        }
        let palette: BTreeSet<usize> = colors.iter().copied().collect();
        Ok(Coloring { colors, palette_size: palette.len() })
    }
}

/// One peel of the domination chain: a connected dominating set of one
/// component of a residual graph together with its independent core.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub dominating: Vec<usize>,
    pub independent: Vec<usize>,
    pub component: Vec<usize>,
}

/// The ordered peels; `levels[j]` was removed from `residuals[j]`.
#[derive(Debug, Clone, Default)]
pub struct DominationChain {
    pub levels: Vec<Vec<ChainLevel>>,
}

/// Grow a connected dominating set D of the component `comp` from its
/// smallest vertex, together with an independent I ⊆ D satisfying
/// |D| = 2|I| - 1 exactly.
pub fn dominate_peel(g: &Graph, comp: &[usize]) -> Result<(Vec<usize>, Vec<usize>), ColoringError> {
    if comp.is_empty() || !g.is_connected_set(comp) {
        return Err(ColoringError::Disconnected);
    }
    let mut in_comp = vec![false; g.n()];
    for &v in comp {
        in_comp[v] = true;
    }
    let seed = *comp.iter().min().unwrap();
    let mut in_d = vec![false; g.n()];
    let mut d = vec![seed];
    let mut i_set = vec![seed];
    in_d[seed] = true;
    loop {
        // distances from D inside the component
        let mut dist = vec![usize::MAX; g.n()];
        let mut queue = std::collections::VecDeque::new();
        for &v in &d {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if in_comp[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        // smallest vertex at distance exactly 2
        let u = comp.iter().copied().find(|&v| dist[v] == 2);
        let u = match u {
            Some(u) => u,
            None => break,
        };
        // its smallest midpoint neighbor at distance 1
        let w = g
            .neighbors(u)
            .iter()
            .copied()
            .find(|&w| in_comp[w] && dist[w] == 1)
            .ok_or_else(|| ColoringError::Internal("distance-2 vertex without midpoint".into()))?;
        d.push(w);
        d.push(u);
        in_d[w] = true;
        in_d[u] = true;
        // u had no neighbor in D, so I stays independent
        i_set.push(u);
        debug_assert_eq!(d.len(), 2 * i_set.len() - 1);
    }
    d.sort_unstable();
    i_set.sort_unstable();
    Ok((d, i_set))
}

/// Either outcome of the certifying coloring operations.
#[derive(Debug, Clone)]
pub enum SetOrMinor {
    IndependentSet(Vec<usize>),
    Minor(Model),
}

#[derive(Debug, Clone)]
pub enum SplitOrMinor {
    Split { x: Vec<usize>, coloring_on_x: Vec<(usize, usize)>, palette: usize },
    Minor(Model),
}

#[derive(Debug, Clone)]
pub enum ColoringOrMinor {
    Coloring(Coloring),
    Minor(Model),
}

/// Run the chain on `g` restricted to `active`, peeling up to t - 2
/// levels. Returns the per-level aggregates and the final residual, or a
/// model assembled from the chain when an edge survives at the bottom.
struct ChainRun {
    levels: Vec<Vec<ChainLevel>>,
    final_residual: Vec<usize>,
    model: Option<Model>,
}

fn run_chain(g: &Graph, t: usize) -> Result<ChainRun, ColoringError> {
    let mut residual: Vec<usize> = (0..g.n()).collect();
    let mut levels: Vec<Vec<ChainLevel>> = Vec::new();
    for _ in 0..t.saturating_sub(2) {
        if residual.is_empty() {
            break;
        }
        let (sub, map) = g.induced(&residual);
        let mut level = Vec::new();
        for comp in sub.components() {
            let comp_orig: Vec<usize> = comp.iter().map(|&v| map[v]).collect();
            let (d, i) = dominate_peel(g, &comp_orig)?;
            level.push(ChainLevel { dominating: d, independent: i, component: comp_orig });
        }
        let removed: BTreeSet<usize> =
            level.iter().flat_map(|l| l.dominating.iter().copied()).collect();
        residual.retain(|v| !removed.contains(v));
        levels.push(level);
    }
    // bottom: does an edge survive?
    let (sub, map) = g.induced(&residual);
    if sub.m() == 0 {
        return Ok(ChainRun { levels, final_residual: residual, model: None });
    }
    let (a, b) = sub.edges().into_iter().min().unwrap();
    let (u, v) = (map[a], map[b]);
    // walk the chain upward: at each level take the peel of the component
    // containing u; dominance of the component implies adjacency to
    // everything that survives below it
    let mut branch_sets: Vec<Vec<usize>> = Vec::new();
    for level in &levels {
        let piece = level
            .iter()
            .find(|l| l.component.contains(&u))
            .ok_or_else(|| ColoringError::Internal("chain lineage lost".into()))?;
        branch_sets.push(piece.dominating.clone());
    }
    branch_sets.push(vec![u]);
    branch_sets.push(vec![v]);
    let t_built = branch_sets.len();
    let pattern = crate::gen::named::complete(t_built);
    let model = Model::new(g, pattern, branch_sets)
        .map_err(|e: ModelError| ColoringError::Internal(e.to_string()))?;
    Ok(ChainRun { levels, final_residual: residual, model: Some(model) })
}

/// Either an independent set of size >= ceil(n / (2(t-1))) or a K_t model
/// assembled from the domination chain.
pub fn independent_or_minor(g: &Graph, t: usize) -> Result<SetOrMinor, ColoringError> {
    if t < 2 {
        return Err(ColoringError::BadT);
    }
    let run = run_chain(g, t)?;
    if let Some(m) = run.model {
        return Ok(SetOrMinor::Minor(m));
    }
    // candidates: each level's independent aggregate and the edgeless residual
    let mut best: Vec<usize> = run.final_residual.clone();
    for level in &run.levels {
        let agg: Vec<usize> = level.iter().flat_map(|l| l.independent.iter().copied()).collect();
        if agg.len() > best.len() {
            best = agg;
        }
    }
    let n = g.n();
    let need = n.div_ceil(2 * (t - 1));
    if best.len() < need {
        return Err(ColoringError::Internal(format!(
            "independent set of size {} below the bound {}",
            best.len(),
            need
        )));
    }
    Ok(SetOrMinor::IndependentSet(best))
}

/// Either X with |X| >= ceil(n/2) and a proper (t-1)-coloring of G[X]
/// (one color per chain level plus one for the edgeless residue), or a
/// K_t model when the chain certifies one.
pub fn woodall_split(g: &Graph, t: usize) -> Result<SplitOrMinor, ColoringError> {
    if t < 2 {
        return Err(ColoringError::BadT);
    }
    let run = run_chain(g, t)?;
    if let Some(m) = run.model {
        return Ok(SplitOrMinor::Minor(m));
    }
    let mut x = Vec::new();
    let mut assignment: Vec<(usize, usize)> = Vec::new();
    let mut palette = 0;
    for (j, level) in run.levels.iter().enumerate() {
        for l in level {
            for &v in &l.independent {
                x.push(v);
                assignment.push((v, j));
            }
        }
        palette = palette.max(j + 1);
    }
    if !run.final_residual.is_empty() {
        let c = palette;
        for &v in &run.final_residual {
            x.push(v);
            assignment.push((v, c));
        }
        palette += 1;
    }
    // the chain peels at most t - 2 levels, so at most t - 1 colors
    if palette > t - 1 {
        return Err(ColoringError::Internal(format!("palette {} exceeds t-1 = {}", palette, t - 1)));
    }
    if 2 * x.len() < g.n() {
        return Err(ColoringError::Internal(format!(
            "|X| = {} below half of {}",
            x.len(),
            g.n()
        )));
    }
    // properness check on G[X]
    let pos: std::collections::HashMap<usize, usize> = assignment.iter().copied().collect();
    for (u, v) in g.edges() {
        if let (Some(cu), Some(cv)) = (pos.get(&u), pos.get(&v)) {
            if cu == cv {
                return Err(ColoringError::Internal(format!("edge {}-{} monochromatic in X", u, v)));
            }
        }
    }
    x.sort_unstable();
    Ok(SplitOrMinor::Split { x, coloring_on_x: assignment, palette })
}

/// Corollary-style coloring: repeated half splits on the live remainder,
/// then a fresh color per leftover vertex once at most t remain. Uses at
/// most (ceil(log2(n/t)) + 2) * t colors or surfaces a K_t model.
pub fn log_partition_color(g: &Graph, t: usize) -> Result<ColoringOrMinor, ColoringError> {
    if t < 2 {
        return Err(ColoringError::BadT);
    }
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut next_color = 0;
    let mut remainder: Vec<usize> = (0..n).collect();
    let s = if n <= t { 0 } else { (n as f64 / t as f64).log2().ceil() as usize };
    for _ in 0..s {
        if remainder.len() <= t {
            break;
        }
        let (sub, map) = g.induced(&remainder);
        match woodall_split(&sub, t)? {
            SplitOrMinor::Minor(m) => {
                // lift branch sets back to g's ids
                let lifted: Vec<Vec<usize>> = m
                    .branch_sets
                    .iter()
                    .map(|set| set.iter().map(|&v| map[v]).collect())
                    .collect();
                let model = Model::new(g, m.pattern, lifted)
                    .map_err(|e| ColoringError::Internal(e.to_string()))?;
                return Ok(ColoringOrMinor::Minor(model));
            }
            SplitOrMinor::Split { x, coloring_on_x, palette } => {
                for (v, c) in coloring_on_x {
                    colors[map[v]] = next_color + c;
                }
                next_color += palette;
                let in_x: BTreeSet<usize> = x.iter().map(|&v| map[v]).collect();
                remainder.retain(|v| !in_x.contains(v));
            }
        }
    }
    if remainder.len() > t {
        return Err(ColoringError::Internal(format!(
            "{} leftover vertices exceed t = {} after {} rounds",
            remainder.len(),
            t,
            s
        )));
    }
    for &v in &remainder {
        colors[v] = next_color;
        next_color += 1;
    }
    let coloring = Coloring::new(g, colors)?;
    let bound = (s + 2) * t;
    if coloring.palette_size > bound {
        return Err(ColoringError::Internal(format!(
            "palette {} exceeds the bound {}",
            coloring.palette_size, bound
        )));
    }
    Ok(ColoringOrMinor::Coloring(coloring))
}

/// Greedy coloring along the reverse peel order: at most degeneracy + 1
/// colors.
pub fn greedy_degeneracy_color(g: &Graph) -> Coloring {
    let order = g.degeneracy_order();
    let mut colors = vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for &w in g.neighbors(v) {
            if colors[w] != usize::MAX {
                used.insert(colors[w]);
            }
        }
        let mut c = 0;
        while used.contains(&c) {
            c += 1;
        }
        colors[v] = c;
    }
    Coloring::new(g, colors).expect("greedy coloring is proper by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;
    use crate::model::{hadwiger_number, OracleConfig};

    #[test]
    fn test_dominate_peel_single_vertex() {
        let g = Graph::empty(1);
        let (d, i) = dominate_peel(&g, &[0]).unwrap();
        assert_eq!(d, vec![0]);
        assert_eq!(i, vec![0]);
    }

    #[test]
    fn test_dominate_peel_star() {
        let g = named::star(4);
        let (d, i) = dominate_peel(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(d, vec![0]);
        assert_eq!(i, vec![0]);
    }

    #[test]
    fn test_dominate_peel_p5_distance2_growth() {
        // simulate the distance-2 growth rule from vertex 0 on a path:
        // each jump adds midpoint+endpoint, ending with D covering the path
        let g = named::path(5);
        let (d, i) = dominate_peel(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(d, vec![0, 1, 2, 3, 4]);
        assert_eq!(i, vec![0, 2, 4]);
        assert!(d.len() <= 2 * i.len() - 1);
    }

    #[test]
    fn test_dominate_peel_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(dominate_peel(&g, &[0, 1, 2, 3]).unwrap_err(), ColoringError::Disconnected);
    }

    #[test]
    fn test_independent_or_minor_c5() {
        match independent_or_minor(&named::cycle(5), 4).unwrap() {
            SetOrMinor::IndependentSet(i) => assert!(i.len() >= 1),
            SetOrMinor::Minor(_) => panic!("C5 has no K4 minor"),
        }
    }

    #[test]
    fn test_independent_or_minor_k4() {
        // K_4 with t = 3: the chain exhausts with edges remaining
        let g = named::complete(4);
        match independent_or_minor(&g, 3).unwrap() {
            SetOrMinor::Minor(m) => {
                assert!(validate_model(&g, &m).ok());
                assert_eq!(m.pattern.n(), 3);
                let (h, _) = hadwiger_number(&g, &OracleConfig::default(), false).unwrap();
                assert!(3 <= h);
            }
            SetOrMinor::IndependentSet(i) => {
                // the bound would force |I| >= ceil(4/4) = 1, but K_4's
                // largest independent set is 1; either branch is legal only
                // if valid -- and a singleton is
                assert!(i.len() >= 1);
            }
        }
    }

    #[test]
    fn test_independent_or_minor_edgeless() {
        let g = Graph::empty(10);
        match independent_or_minor(&g, 2).unwrap() {
            SetOrMinor::IndependentSet(i) => assert_eq!(i.len(), 10),
            _ => panic!("edgeless graph cannot yield a minor"),
        }
    }

    #[test]
    fn test_woodall_split_p4() {
        match woodall_split(&named::path(4), 3).unwrap() {
            SplitOrMinor::Split { x, palette, .. } => {
                assert!(x.len() >= 2);
                assert!(palette <= 2);
            }
            _ => panic!("P4 has no K3 minor"),
        }
    }

    #[test]
    fn test_woodall_split_k6() {
        let g = named::complete(6);
        match woodall_split(&g, 4).unwrap() {
            SplitOrMinor::Minor(m) => {
                assert!(validate_model(&g, &m).ok());
                assert_eq!(m.pattern.n(), 4);
            }
            SplitOrMinor::Split { x, palette, .. } => {
                // K_6 restricted to any 3 vertices needs 3 colors > t-1
                assert!(x.len() >= 3 && palette <= 3);
            }
        }
    }

    #[test]
    fn test_woodall_split_edgeless() {
        match woodall_split(&Graph::empty(7), 2).unwrap() {
            SplitOrMinor::Split { x, palette, .. } => {
                assert_eq!(x.len(), 7);
                assert_eq!(palette, 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn test_log_partition_trivial_when_small() {
        let g = named::path(4);
        match log_partition_color(&g, 5).unwrap() {
            ColoringOrMinor::Coloring(c) => assert!(c.palette_size <= 5),
            _ => panic!(),
        }
    }

    #[test]
    fn test_log_partition_petersen() {
        let g = named::petersen();
        match log_partition_color(&g, 7).unwrap() {
            ColoringOrMinor::Coloring(c) => assert!(c.palette_size <= 21),
            _ => panic!("Petersen has no K7 minor"),
        }
    }

    #[test]
    fn test_greedy_degeneracy_color() {
        let tree = named::path(8);
        assert!(greedy_degeneracy_color(&tree).palette_size <= 2);
        assert_eq!(greedy_degeneracy_color(&named::complete(7)).palette_size, 7);
        let pet = named::petersen();
        assert!(greedy_degeneracy_color(&pet).palette_size <= 4);
    }
}
