//! Minor-model certificates, their validation, and the exhaustive
//! small-instance oracles used as ground truth in tests.

use crate::graph::{ContractionMap, Graph, GraphError};
use crate::rational::{density, Q};
use num::Zero;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance too large for the exhaustive oracle: {0} > cap {1}")]
    TooLarge(usize, usize),
    #[error("invalid contraction map: {0}")]
    InvalidMap(String),
    #[error("model failed validation: {0}")]
    Invalid(String),
}

/// Witness that `pattern` is a minor of a host graph: one disjoint
/// connected branch set per pattern vertex, branch sets adjacent in the
/// host wherever the pattern has an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub pattern: Graph,
    pub branch_sets: Vec<Vec<usize>>,
}

/// A model in which every branch set carries exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedModel {
    pub model: Model,
    pub roots: Vec<usize>,
}

/// A model whose branch sets obey a size bound, together with the exact
/// density of its pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedMinorCert {
    pub model: Model,
    pub bound: usize,
    pub density: Q,
}

impl Model {
    /// Construction hook: validates against the host before returning.
    pub fn new(host: &Graph, pattern: Graph, branch_sets: Vec<Vec<usize>>) -> Result<Model, ModelError> {
        let m = Model { pattern, branch_sets };
        let report = validate_model(host, &m);
        if report.ok() {
            Ok(m)
        } else {
            Err(ModelError::Invalid(report.violations.join("; ")))
        }
    }

    /// Identity model: the host itself, singleton branch sets.
    pub fn identity(host: &Graph) -> Model {
        Model {
            pattern: host.clone(),
            branch_sets: (0..host.n()).map(|v| vec![v]).collect(),
        }
    }

    pub fn max_branch_size(&self) -> usize {
        self.branch_sets.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn pattern_density(&self) -> Result<Q, GraphError> {
        self.pattern.density()
    }
}

impl BoundedMinorCert {
    pub fn new(host: &Graph, model: Model, bound: usize) -> Result<BoundedMinorCert, ModelError> {
        let report = validate_model(host, &model);
        if !report.ok() {
            return Err(ModelError::Invalid(report.violations.join("; ")));
        }
        if model.max_branch_size() > bound {
            return Err(ModelError::Invalid(format!(
                "branch set of size {} exceeds bound {}",
                model.max_branch_size(),
                bound
            )));
        }
        if model.pattern.n() == 0 {
            return Err(ModelError::Invalid("empty pattern".into()));
        }
        let density = model.pattern.density().unwrap();
        Ok(BoundedMinorCert { model, bound, density })
    }
}

/// Outcome of re-checking a model against its host. Violations are data,
/// not failures.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three model invariants: pairwise disjoint branch sets, each
/// inducing a connected host subgraph, and host adjacency for every
/// pattern edge. Violations name the offending set or pair.
pub fn validate_model(host: &Graph, m: &Model) -> ValidationReport {
    let mut report = ValidationReport::default();
    if m.branch_sets.len() != m.pattern.n() {
        report
            .violations
            .push(format!("{} branch sets for {} pattern vertices", m.branch_sets.len(), m.pattern.n()));
        return report;
    }
    let mut owner = vec![usize::MAX; host.n()];
    for (i, set) in m.branch_sets.iter().enumerate() {
        if set.is_empty() {
            report.violations.push(format!("branch set {} is empty", i));
            continue;
        }
        for &v in set {
            if v >= host.n() {
                report.violations.push(format!("branch set {} references vertex {} outside host", i, v));
            } else if owner[v] != usize::MAX {
                report
                    .violations
                    .push(format!("branch sets {} and {} both contain vertex {}", owner[v], i, v));
            } else {
                owner[v] = i;
            }
        }
        if set.iter().all(|&v| v < host.n()) && !host.is_connected_set(set) {
            report.violations.push(format!("branch set {} is not connected in the host", i));
        }
    }
    for (i, j) in m.pattern.edges() {
        let adjacent = m.branch_sets[i].iter().any(|&u| {
            host.neighbors(u).iter().any(|&w| m.branch_sets[j].contains(&w))
        });
        if !adjacent {
            report
                .violations
                .push(format!("pattern edge {}-{} has no host edge between its branch sets", i, j));
        }
    }
    report
}

/// Validate a rooted model: the base model plus |roots| = number of branch
/// sets and exactly one root per branch set.
pub fn validate_rooted(host: &Graph, rm: &RootedModel) -> ValidationReport {
    let mut report = validate_model(host, &rm.model);
    if rm.roots.len() != rm.model.branch_sets.len() {
        report.violations.push(format!(
            "{} roots for {} branch sets",
            rm.roots.len(),
            rm.model.branch_sets.len()
        ));
        return report;
    }
    for (i, set) in rm.model.branch_sets.iter().enumerate() {
        let count = set.iter().filter(|v| rm.roots.contains(v)).count();
        if count != 1 {
            report
                .violations
                .push(format!("branch set {} contains {} roots, expected exactly 1", i, count));
        }
    }
    report
}

/// Turn a contraction map plus a subset of its result vertices into a
/// model: pattern = result graph induced on `sub`, branch sets = the map's
/// classes. Validates before returning.
pub fn model_from_contraction(
    host: &Graph,
    cm: &ContractionMap,
    result: &Graph,
    sub: &[usize],
) -> Result<Model, ModelError> {
    cm.validate(host).map_err(|e| ModelError::InvalidMap(e.to_string()))?;
    if result.n() != cm.to_n {
        return Err(ModelError::InvalidMap("result graph does not match map".into()));
    }
    let mut sub: Vec<usize> = sub.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if sub.iter().any(|&v| v >= cm.to_n) {
        return Err(ModelError::InvalidMap("sub contains non-result vertices".into()));
    }
    let (pattern, verts) = result.induced(&sub);
    let branch_sets: Vec<Vec<usize>> = verts.iter().map(|&v| cm.classes[v].clone()).collect();
    Model::new(host, pattern, branch_sets)
}

/// Configuration for the exhaustive oracles; caps keep runs in seconds.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub hadwiger_cap: usize,
    pub density_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { hadwiger_cap: 12, density_cap: 9 }
    }
}

/// Exact maximum clique via branch and bound (small graphs only).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    fn extend(g: &Graph, cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + cand.len() <= best.len() {
            return;
        }
        if cand.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if cur.len() + (cand.len() - i) <= best.len() {
                break;
            }
            cur.push(v);
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v.min(w), v.max(w)))
                .collect();
            extend(g, cur, next, best);
            cur.pop();
        }
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    extend(g, &mut cur, (0..g.n()).collect(), &mut best);
    best
}

/// Largest t such that t(t-1)/2 <= e.
fn clique_edge_bound(e: usize) -> usize {
    let mut t = 1usize;
    while (t + 1) * t / 2 <= e {
        t += 1;
    }
    t
}

struct HadwigerSearch<'a> {
    host: &'a Graph,
    best: usize,
    witness: Option<Vec<Vec<usize>>>,
    want_witness: bool,
    seen: HashSet<Vec<usize>>,
}

impl<'a> HadwigerSearch<'a> {
    /// Quotient of the host under a partition given as class_of labels.
    fn quotient(&self, classes: &[Vec<usize>]) -> Graph {
        let mut class_of = vec![usize::MAX; self.host.n()];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.host.edges() {
            let (a, b) = (class_of[u], class_of[v]);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        Graph::from_edges(classes.len(), &edges).unwrap()
    }

    fn record_clique(&mut self, q: &Graph, classes: &[Vec<usize>]) {
        let clique = max_clique(q);
        if clique.len() > self.best {
            self.best = clique.len();
            if self.want_witness {
                self.witness = Some(clique.iter().map(|&c| classes[c].clone()).collect());
            }
        }
    }

    fn key(classes: &[Vec<usize>]) -> Vec<usize> {
        // canonical partition key: sorted class minima paired with members
        let mut sorted: Vec<Vec<usize>> = classes.to_vec();
        sorted.sort();
        let mut flat = Vec::new();
        for c in sorted {
            flat.extend(c);
            flat.push(usize::MAX);
        }
        flat
    }

    fn search(&mut self, classes: Vec<Vec<usize>>) {
        let q = self.quotient(&classes);
        if q.n() <= self.best || clique_edge_bound(q.m()) <= self.best {
            return;
        }
        self.record_clique(&q, &classes);
        if q.n() <= self.best {
            return;
        }
        // order contractions by common-neighbor count, densest first
        let mut cand: Vec<(usize, (usize, usize))> = q
            .edges()
            .into_iter()
            .map(|(a, b)| (q.common_neighbors(a, b).unwrap().len(), (a, b)))
            .collect();
        cand.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        for (_, (a, b)) in cand {
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(classes.len() - 1);
            for (i, c) in classes.iter().enumerate() {
                if i == b {
                    continue;
                }
                if i == a {
                    let mut merged = c.clone();
                    merged.extend(classes[b].iter().copied());
                    merged.sort_unstable();
                    next.push(merged);
                } else {
                    next.push(c.clone());
                }
            }
            let key = Self::key(&next);
            if self.seen.insert(key) {
                self.search(next);
            }
        }
    }
}

/// Exhaustive Hadwiger number: the largest t such that the graph has a
/// K_t model. Branch and bound over edge contractions with a clique lower
/// bound, an e(G)-based upper bound, and partition memoization.
///
/// With `want_witness`, also returns a validated K_t model.
pub fn hadwiger_number(
    g: &Graph,
    cfg: &OracleConfig,
    want_witness: bool,
) -> Result<(usize, Option<Model>), ModelError> {
    if g.n() > cfg.hadwiger_cap {
        return Err(ModelError::TooLarge(g.n(), cfg.hadwiger_cap));
    }
    if g.n() == 0 {
        return Ok((0, None));
    }
    let mut search = HadwigerSearch {
        host: g,
        best: 0,
        witness: None,
        want_witness,
        seen: HashSet::new(),
    };
    // warm start: greedy contraction descent, merging the edge with the
    // most common neighbors, mirrors the dense-minor heuristic
    let mut classes: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    loop {
        let q = search.quotient(&classes);
        search.record_clique(&q, &classes);
        let mut cand: Vec<(usize, (usize, usize))> = q
            .edges()
            .into_iter()
            .map(|(a, b)| (q.common_neighbors(a, b).unwrap().len(), (a, b)))
            .collect();
        if cand.is_empty() {
            break;
        }
        cand.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let (a, b) = cand[0].1;
        let mut merged = classes[a].clone();
        merged.extend(classes[b].iter().copied());
        merged.sort_unstable();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            if i == a {
                next.push(merged.clone());
            } else if i != b {
                next.push(c.clone());
            }
        }
        classes = next;
        if classes.len() <= 1 {
            break;
        }
    }
    // full search from the trivial partition
    search.search((0..g.n()).map(|v| vec![v]).collect());
    let t = search.best;
    let model = match search.witness {
        Some(sets) if want_witness => {
            let pattern = crate::gen::named::complete(sets.len());
            Some(Model::new(g, pattern, sets)?)
        }
        _ => None,
    };
    Ok((t, model))
}

/// Exhaustive maximum minor density: max over all minors J of d(J), by
/// enumerating all families of disjoint connected vertex classes.
pub fn max_minor_density(g: &Graph, cfg: &OracleConfig) -> Result<Q, ModelError> {
    if g.n() > cfg.density_cap {
        return Err(ModelError::TooLarge(g.n(), cfg.density_cap));
    }
    if g.n() == 0 {
        return Ok(Q::zero());
    }
    let n = g.n();
    let mut best = Q::zero();
    // assignment[v] in {0 = excluded, 1..} via restricted growth strings
    let mut assignment = vec![0usize; n];
    fn recurse(g: &Graph, assignment: &mut Vec<usize>, v: usize, max_label: usize, best: &mut Q) {
        let n = g.n();
        if v == n {
            if max_label == 0 {
                return;
            }
            let mut classes: Vec<Vec<usize>> = vec![Vec::new(); max_label];
            for (u, &a) in assignment.iter().enumerate() {
                if a > 0 {
                    classes[a - 1].push(u);
                }
            }
            if classes.iter().any(|c| !g.is_connected_set(c)) {
                return;
            }
            // count distinct quotient edges, not parallel classes
            let mut seen = HashSet::new();
            let mut edges = 0usize;
            for (u, w) in g.edges() {
                let (a, b) = (assignment[u], assignment[w]);
                if a > 0 && b > 0 && a != b && seen.insert((a.min(b), a.max(b))) {
                    edges += 1;
                }
            }
            let d = density(edges, max_label);
            if d > *best {
                *best = d;
            }
            return;
        }
        for label in 0..=max_label + 1 {
            assignment[v] = label;
            recurse(g, assignment, v + 1, max_label.max(label), best);
        }
        assignment[v] = 0;
    }
    recurse(g, &mut assignment, 0, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;
    use crate::graph::contract_forest;
    use crate::rational::{q_int, q_ratio, q_usize};

    #[test]
    fn test_validate_singleton_k4() {
        let g = named::complete(4);
        let m = Model::identity(&g);
        assert!(validate_model(&g, &m).ok());
    }

    #[test]
    fn test_validate_disconnected_branch_set() {
        let g = named::cycle(4);
        let m = Model {
            pattern: named::complete(3),
            branch_sets: vec![vec![0, 2], vec![1], vec![3]],
        };
        let report = validate_model(&g, &m);
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.contains("not connected")));
    }

    #[test]
    fn test_validate_petersen_k6() {
        // Petersen has Hadwiger number 6: spoke pairs form a K_6 model
        let g = named::petersen();
        let sets: Vec<Vec<usize>> = (0..5).map(|i| vec![i, i + 5]).collect();
        let m = Model { pattern: named::complete(5), branch_sets: sets };
        assert!(validate_model(&g, &m).ok());
        // oracle agrees and produces a validated K_6 witness
        let (t, witness) = hadwiger_number(&g, &OracleConfig::default(), true).unwrap();
        assert_eq!(t, 6);
        let w = witness.unwrap();
        assert!(validate_model(&g, &w).ok());
        assert_eq!(w.pattern.n(), 6);
    }

    #[test]
    fn test_model_from_contraction() {
        let g = named::cycle(4);
        let (res, cm, _) = contract_forest(&g, &[(0, 1), (2, 3)]).unwrap();
        let m = model_from_contraction(&g, &cm, &res, &[0, 1]).unwrap();
        assert_eq!(m.pattern.n(), 2);
        assert_eq!(m.pattern.m(), 1);
        assert_eq!(m.branch_sets, vec![vec![0, 1], vec![2, 3]]);
        // identity map gives the singleton model
        let id = ContractionMap::identity(4);
        let mid = model_from_contraction(&g, &id, &g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(mid.pattern, g);
    }

    #[test]
    fn test_composed_contraction_model_agrees() {
        let g = named::grid(2, 3);
        let (r1, m1, _) = contract_forest(&g, &[(0, 1)]).unwrap();
        let e = r1.edges()[0];
        let (r2, m2, _) = contract_forest(&r1, &[e]).unwrap();
        let composed = m1.compose(&m2);
        composed.validate(&g).unwrap();
        let all: Vec<usize> = (0..r2.n()).collect();
        let direct = model_from_contraction(&g, &composed, &r2, &all).unwrap();
        assert!(validate_model(&g, &direct).ok());
        assert_eq!(direct.pattern, r2);
    }

    #[test]
    fn test_hadwiger_small_cases() {
        let cfg = OracleConfig::default();
        assert_eq!(hadwiger_number(&named::complete(5), &cfg, false).unwrap().0, 5);
        assert_eq!(hadwiger_number(&named::cycle(5), &cfg, false).unwrap().0, 3);
        assert_eq!(hadwiger_number(&named::complete_bipartite(3, 3), &cfg, false).unwrap().0, 4);
        assert_eq!(hadwiger_number(&named::path(6), &cfg, false).unwrap().0, 2);
        let too_big = named::complete(13);
        assert!(hadwiger_number(&too_big, &cfg, false).is_err());
    }

    #[test]
    fn test_hadwiger_at_least_clique() {
        let g = crate::gen::gnp(9, 0.5, 11).unwrap();
        let cfg = OracleConfig::default();
        let (t, _) = hadwiger_number(&g, &cfg, false).unwrap();
        assert!(t >= max_clique(&g).len());
    }

    #[test]
    fn test_max_minor_density_cases() {
        let cfg = OracleConfig::default();
        assert_eq!(max_minor_density(&named::complete(4), &cfg).unwrap(), q_ratio(3, 2));
        assert_eq!(max_minor_density(&named::cycle(6), &cfg).unwrap(), q_int(1));
        assert_eq!(max_minor_density(&Graph::empty(4), &cfg).unwrap(), q_int(0));
        assert!(max_minor_density(&named::complete(10), &cfg).is_err());
    }

    #[test]
    fn test_max_minor_density_bounds() {
        let cfg = OracleConfig::default();
        for seed in 0..5 {
            let g = crate::gen::gnp(7, 0.45, seed).unwrap();
            let best = max_minor_density(&g, &cfg).unwrap();
            if g.n() > 0 {
                assert!(best >= g.density().unwrap());
            }
            // d(J)^2 <= e(J) <= e(G)
            let sq = best.clone() * best.clone();
            assert!(sq <= q_usize(g.m()));
        }
    }
}
