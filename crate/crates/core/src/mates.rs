//! Mate machinery: codegree thresholds, unmated-ness checks, and the
//! small-dense-subgraph extraction that a mate violation yields.

use crate::graph::{ContractionMap, Graph, GraphError};
use crate::rational::{ceil_usize, q_pow, q_usize, Q};
use num::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MateError {
    #[error("u and v must be distinct")]
    SameVertex,
    #[error("no unmated violation exists at these parameters")]
    NoViolation,
    #[error("bad mate parameters: {0}")]
    BadParams(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// The (epsilon, d, K) bundle: mates share at least epsilon*d common
/// neighbors; the unmated check applies to vertices of degree at most K*d.
#[derive(Debug, Clone, PartialEq)]
pub struct MateParams {
    pub epsilon: Q,
    pub d: Q,
    pub k_factor: Q,
}

impl MateParams {
    pub fn new(epsilon: Q, d: Q, k_factor: Q) -> Result<MateParams, MateError> {
        if epsilon <= Q::from_integer(0.into()) || epsilon >= Q::one() {
            return Err(MateError::BadParams("epsilon must lie in (0,1)".into()));
        }
        if d < Q::one() {
            return Err(MateError::BadParams("d must be >= 1".into()));
        }
        if k_factor < Q::one() {
            return Err(MateError::BadParams("K must be >= 1".into()));
        }
        Ok(MateParams { epsilon, d, k_factor })
    }

    /// The mate threshold epsilon * d.
    pub fn mate_threshold(&self) -> Q {
        self.epsilon.clone() * self.d.clone()
    }

    /// The degree threshold K * d.
    pub fn degree_threshold(&self) -> Q {
        self.k_factor.clone() * self.d.clone()
    }
}

/// True iff u and v share at least epsilon * d common neighbors
/// (exact rational comparison).
pub fn are_mates(g: &Graph, u: usize, v: usize, p: &MateParams) -> Result<bool, MateError> {
    let common = g.common_neighbors(u, v).map_err(|_| MateError::SameVertex)?;
    Ok(q_usize(common.len()) >= p.mate_threshold())
}

/// A vertex of degree at most K*d together with at least ceil(epsilon*d)
/// distinct mates.
#[derive(Debug, Clone)]
pub struct UnmatedViolation {
    pub vertex: usize,
    pub mates: Vec<usize>,
}

/// None iff the graph is (K, epsilon, d)-unmated; otherwise the first
/// (lowest-id) violating vertex and all of its mates.
pub fn find_unmated_violation(g: &Graph, p: &MateParams) -> Option<UnmatedViolation> {
    let deg_cap = p.degree_threshold();
    let mate_floor = p.mate_threshold();
    for v in 0..g.n() {
        if q_usize(g.degree(v)) > deg_cap {
            continue;
        }
        let mut mates = Vec::new();
        for u in 0..g.n() {
            if u == v {
                continue;
            }
            let common = g.common_neighbors(v, u).unwrap().len();
            if q_usize(common) >= mate_floor {
                mates.push(u);
            }
        }
        // violation: at least epsilon*d mates (not strictly fewer)
        if q_usize(mates.len()) >= mate_floor {
            return Some(UnmatedViolation { vertex: v, mates });
        }
    }
    None
}

/// Certificate for a small dense subgraph of the original host: the
/// vertex set, its exact edge count, and the two inequality instances it
/// certifies (a vertex-count ceiling and an edge-count floor).
#[derive(Debug, Clone, PartialEq)]
pub struct SmallDenseCert {
    pub vertices: Vec<usize>,
    pub e: usize,
    pub v_bound: Q,
    pub e_bound: Q,
    /// The density parameter the bounds were certified against.
    pub base_density: Q,
}

impl SmallDenseCert {
    /// Re-check both recorded inequalities against a host graph.
    pub fn check(&self, host: &Graph) -> Result<(), MateError> {
        let mut set = self.vertices.clone();
        set.sort_unstable();
        set.dedup();
        if set.len() != self.vertices.len() {
            return Err(MateError::Internal("duplicate vertices in certificate".into()));
        }
        if set.iter().any(|&v| v >= host.n()) {
            return Err(MateError::Internal("certificate vertex outside host".into()));
        }
        let e = host.edges_within(&set);
        if e != self.e {
            return Err(MateError::Internal(format!(
                "edge count mismatch: recorded {}, recounted {}",
                self.e, e
            )));
        }
        if q_usize(set.len()) > self.v_bound {
            return Err(MateError::Internal(format!(
                "v = {} exceeds the recorded bound {}",
                set.len(),
                self.v_bound
            )));
        }
        if q_usize(e) < self.e_bound {
            return Err(MateError::Internal(format!(
                "e = {} below the recorded bound {}",
                e, self.e_bound
            )));
        }
        Ok(())
    }
}

/// From an unmated violation in a k-bounded minor, extract a small dense
/// subgraph of the original graph: the violating vertex's closed
/// neighborhood plus ceil(epsilon*d) of its mates, pulled back through the
/// contraction classes. Certifies v(H) <= 3k^3 d and e(H) >= eps^2 d^2 / 2.
///
/// Uses the degree cap K = k^2, matching the unmated-ness the increment
/// machinery checks.
pub fn small_dense_from_violation(
    host: &Graph,
    origin: &ContractionMap,
    minor: &Graph,
    k: usize,
    epsilon: &Q,
    d: &Q,
) -> Result<SmallDenseCert, MateError> {
    let params = MateParams::new(epsilon.clone(), d.clone(), q_usize(k * k))?;
    small_dense_from_violation_with(host, origin, minor, k, &params)
}

/// As above but with an explicit degree-cap factor K in `params`; the
/// bipartite route lifts K slightly so integer-truncated degrees stay
/// covered. The recorded 3k^3 d bound is still verified exactly.
pub fn small_dense_from_violation_with(
    host: &Graph,
    origin: &ContractionMap,
    minor: &Graph,
    k: usize,
    params: &MateParams,
) -> Result<SmallDenseCert, MateError> {
    if origin.to_n != minor.n() || origin.from_n != host.n() {
        return Err(MateError::BadParams("origin map does not connect host and minor".into()));
    }
    let epsilon = &params.epsilon;
    let d = &params.d;
    let violation = find_unmated_violation(minor, params).ok_or(MateError::NoViolation)?;
    let v = violation.vertex;
    let quota = ceil_usize(&params.mate_threshold());
    let chosen: Vec<usize> = violation.mates.iter().take(quota).copied().collect();
    if chosen.len() < quota {
        return Err(MateError::Internal("violation with fewer mates than its quota".into()));
    }
    let mut minor_set: Vec<usize> = minor.neighbors(v).to_vec();
    minor_set.push(v);
    minor_set.extend(chosen.iter().copied());
    minor_set.sort_unstable();
    minor_set.dedup();
    let mut pulled: Vec<usize> = minor_set
        .iter()
        .flat_map(|&x| origin.classes[x].iter().copied())
        .collect();
    pulled.sort_unstable();
    pulled.dedup();
    let e = host.edges_within(&pulled);
    let v_bound = q_usize(3 * k * k * k) * d.clone();
    let e_bound = q_pow(epsilon, 2) * q_pow(d, 2) / q_usize(2);
    debug_assert!(!e_bound.is_negative());
    let cert = SmallDenseCert {
        vertices: pulled,
        e,
        v_bound,
        e_bound,
        base_density: d.clone(),
    };
    cert.check(host)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;
    use crate::graph::ContractionMap;
    use crate::rational::{q_int, q_ratio};

    fn params(eps: Q, d: Q, k: Q) -> MateParams {
        MateParams::new(eps, d, k).unwrap()
    }

    #[test]
    fn test_are_mates_k23() {
        let g = named::complete_bipartite(2, 3);
        // the two degree-3 vertices share 3 >= 2 common neighbors
        let p = params(q_ratio(2, 3), q_int(3), q_int(1));
        assert!(are_mates(&g, 0, 1, &p).unwrap());
        assert_eq!(are_mates(&g, 1, 1, &p).unwrap_err(), MateError::SameVertex);
    }

    #[test]
    fn test_are_mates_petersen_girth5() {
        let g = named::petersen();
        let p = params(q_ratio(2, 3), q_int(3), q_int(1));
        for u in 0..10 {
            for v in u + 1..10 {
                assert!(!are_mates(&g, u, v, &p).unwrap());
            }
        }
    }

    #[test]
    fn test_are_mates_half_threshold() {
        let g = named::path(3);
        let p = params(q_ratio(1, 2), q_int(1), q_int(1));
        // endpoints share one common neighbor, 1 >= 1/2
        assert!(are_mates(&g, 0, 2, &p).unwrap());
    }

    #[test]
    fn test_unmated_star() {
        // exhaustive mate table: leaves share only the center, the center
        // shares nothing with a leaf; threshold 2 finds no violation
        let g = named::star(6);
        let p = params(q_ratio(1, 3), q_int(6), q_int(1));
        assert!(find_unmated_violation(&g, &p).is_none());
    }

    #[test]
    fn test_unmated_k33_violation() {
        let g = named::complete_bipartite(3, 3);
        let p = params(q_ratio(2, 3), q_int(3), q_int(1));
        let v = find_unmated_violation(&g, &p).unwrap();
        assert_eq!(v.vertex, 0);
        assert_eq!(v.mates, vec![1, 2]);
    }

    #[test]
    fn test_unmated_edgeless() {
        let g = Graph::empty(5);
        let p = params(q_ratio(1, 2), q_int(2), q_int(1));
        assert!(find_unmated_violation(&g, &p).is_none());
    }

    #[test]
    fn test_small_dense_identity_k33() {
        // K_{3,3} with k = 1, eps = 1/3, d = 3: H is K_{3,3} itself,
        // v = 6 <= 9, e = 9 >= 1/2
        let g = named::complete_bipartite(3, 3);
        let id = ContractionMap::identity(6);
        let cert =
            small_dense_from_violation(&g, &id, &g, 1, &q_ratio(1, 3), &q_int(3)).unwrap();
        assert!(cert.vertices.len() <= 6);
        assert_eq!(cert.v_bound, q_int(9));
        assert_eq!(cert.e_bound, q_ratio(1, 2));
        cert.check(&g).unwrap();
    }

    #[test]
    fn test_small_dense_no_violation() {
        let g = named::petersen();
        let id = ContractionMap::identity(10);
        let err = small_dense_from_violation(&g, &id, &g, 1, &q_ratio(2, 3), &q_int(3));
        assert_eq!(err.unwrap_err(), MateError::NoViolation);
    }
}
