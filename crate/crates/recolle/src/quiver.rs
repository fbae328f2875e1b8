//! Bound quivers: directed graphs with path relations over GF(2).
//!
//! The four quivers used throughout live in a registry keyed by name:
//! `quad_free` (two vertices, arrows H and P, relations PHP = HPH = 0),
//! `quad_vect` (additionally PH = 0), `sigma2` (one loop u with u^2 = 0,
//! presenting involutions T via u = 1 + T in characteristic 2), and `vect`
//! (one vertex, no arrows).

use std::sync::Arc;

/// An arrow of a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path is a sequence of arrow indices in application order: the first
/// arrow is applied first, so `[a, b]` denotes the composite `b ∘ a`.
pub type Path = Vec<usize>;

/// A relation is a formal sum of parallel paths that must evaluate to zero.
pub type Relation = Vec<Path>;

/// A quiver with relations whose path algebra is finite-dimensional.
///
/// `nilpotency_bound` declares that every path of length >= bound is zero in
/// the quotient algebra; path-basis computations verify this and fail loudly
/// if the declared bound does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub nilpotency_bound: usize,
}

impl BoundQuiver {
    pub fn new(
        name: &str,
        vertices: &[&str],
        arrows: &[(&str, usize, usize)],
        relations: Vec<Relation>,
        nilpotency_bound: usize,
    ) -> Self {
        let q = BoundQuiver {
            name: name.to_string(),
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(n, s, t)| Arrow {
                    name: n.to_string(),
                    source: s,
                    target: t,
                })
                .collect(),
            relations,
            nilpotency_bound,
        };
        for rel in &q.relations {
            for path in rel {
                assert!(path.len() >= 2, "relation paths must have length >= 2");
                assert!(q.path_is_composable(path), "relation path not composable");
            }
            let (s, t) = q.path_endpoints(&rel[0]);
            for path in rel {
                assert_eq!(q.path_endpoints(path), (s, t), "relation paths not parallel");
            }
        }
        q
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn path_is_composable(&self, path: &Path) -> bool {
        path.windows(2)
            .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    /// (source, target) of a nonempty path.
    pub fn path_endpoints(&self, path: &Path) -> (usize, usize) {
        (
            self.arrows[path[0]].source,
            self.arrows[*path.last().unwrap()].target,
        )
    }

    /// All composable paths starting at `v` with length in `0..=max_len`,
    /// ordered by (length, arrow sequence).
    pub fn paths_from(&self, v: usize, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = vec![vec![]];
        let mut frontier: Vec<Path> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let at = if p.is_empty() {
                    v
                } else {
                    self.arrows[*p.last().unwrap()].target
                };
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == at {
                        let mut p2 = p.clone();
                        p2.push(i);
                        next.push(p2);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        all
    }

    /// Target vertex of a path starting at `v`.
    pub fn path_target(&self, v: usize, path: &Path) -> usize {
        path.last().map_or(v, |&a| self.arrows[a].target)
    }

    /// The opposite quiver: arrows reversed, relation paths read backwards.
    /// Taking the opposite twice returns a structurally equal quiver.
    pub fn opposite(self: &Arc<Self>) -> Arc<BoundQuiver> {
        let name = if let Some(base) = self.name.strip_suffix("_op") {
            base.to_string()
        } else {
            format!("{}_op", self.name)
        };
        Arc::new(BoundQuiver {
            name,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|p| p.iter().rev().copied().collect())
                        .collect()
                })
                .collect(),
            nilpotency_bound: self.nilpotency_bound,
        })
    }
}

/// §2.1 quiver: H: 1 -> 2, P: 2 -> 1 with PHP = HPH = 0.
pub fn quad_free() -> Arc<BoundQuiver> {
    // Arrow 0 = H, arrow 1 = P. PHP as a composite map applies P, H, P in
    // that order (a path from vertex 2); HPH applies H, P, H (from vertex 1).
    Arc::new(BoundQuiver::new(
        "quad_free",
        &["1", "2"],
        &[("H", 0, 1), ("P", 1, 0)],
        vec![vec![vec![1, 0, 1]], vec![vec![0, 1, 0]]],
        3,
    ))
}

/// §2.2 quiver: additionally PH = 0 (the composite applying H then P).
pub fn quad_vect() -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::new(
        "quad_vect",
        &["1", "2"],
        &[("H", 0, 1), ("P", 1, 0)],
        vec![vec![vec![1, 0, 1]], vec![vec![0, 1, 0]], vec![vec![0, 1]]],
        3,
    ))
}

/// GF(2) representations of the two-element group, presented by the loop
/// u = 1 + T with u^2 = 0.
pub fn sigma2() -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::new(
        "sigma2",
        &["s"],
        &[("u", 0, 0)],
        vec![vec![vec![0, 0]]],
        2,
    ))
}

/// Plain finite vector spaces: one vertex, no arrows.
pub fn vect() -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::new("vect", &["v"], &[], vec![], 1))
}

/// Registry lookup by the names used in JSON forms and on the CLI.
pub fn by_name(name: &str) -> Option<Arc<BoundQuiver>> {
    match name {
        "quad_free" => Some(quad_free()),
        "quad_vect" => Some(quad_vect()),
        "sigma2" => Some(sigma2()),
        "vect" => Some(vect()),
        _ => None,
    }
}
