//! Regularizing tensor rules for pairs of triangles sharing a vertex, an edge
//! or both (coincident).
//!
//! The 4-D integral over two copies of the reference triangle is split into
//! subregions and mapped from `[0, 1]^4` so that a `1/|x - y|` singularity at
//! the shared entity is cancelled by the Jacobian.
//!
//! Vertex ordering expected from callers:
//! - coincident: both triangles with the same vertex order;
//! - edge: the shared edge is `(v0, v1)` in both triangles, same direction;
//! - vertex: the shared vertex is `v0` in both triangles.

use super::gauss::gauss_legendre_01;
use super::QuadratureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Adjacency {
    Disjoint,
    Vertex,
    Edge,
    Coincident,
}

impl Adjacency {
    /// Case from the number of shared vertices.
    pub fn from_shared(count: usize) -> Adjacency {
        match count {
            0 => Adjacency::Disjoint,
            1 => Adjacency::Vertex,
            2 => Adjacency::Edge,
            _ => Adjacency::Coincident,
        }
    }
}

/// Point pairs on the reference triangle (coordinates `(s, t)` as in
/// [`super::TriangleRule`]) with weights summing to 1/4.
#[derive(Debug, Clone)]
pub struct PairRule {
    pub case: Adjacency,
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

impl PairRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Builds the regularized rule with `order` Gauss points per dimension.
pub fn singular_pair_rule(case: Adjacency, order: usize) -> Result<PairRule, QuadratureError> {
    if order == 0 {
        return Err(QuadratureError::UnsupportedOrder(order));
    }
    if case == Adjacency::Disjoint {
        return Err(QuadratureError::UnsupportedCase(case));
    }
    let (g, w) = gauss_legendre_01(order);
    let mut rule = PairRule { case, x: Vec::new(), y: Vec::new(), weights: Vec::new() };
    // Points are generated in the simplex {0 <= x2 <= x1 <= 1}, then mapped to
    // (s, t) = (x1 - x2, x2), which has unit Jacobian.
    let mut push = |x: [f64; 2], y: [f64; 2], weight: f64| {
        rule.x.push([x[0] - x[1], x[1]]);
        rule.y.push([y[0] - y[1], y[1]]);
        rule.weights.push(weight);
    };
    for (a, &xi) in g.iter().enumerate() {
        for (b, &e1) in g.iter().enumerate() {
            for (c, &e2) in g.iter().enumerate() {
                for (d, &e3) in g.iter().enumerate() {
                    let wt = w[a] * w[b] * w[c] * w[d];
                    match case {
                        Adjacency::Coincident => {
                            let jac = wt * xi.powi(3) * e1 * e1 * e2;
                            let p = [
                                (
                                    [xi, xi * (1.0 - e1 + e1 * e2)],
                                    [xi * (1.0 - e1 * e2 * e3), xi * (1.0 - e1)],
                                ),
                                (
                                    [xi * (1.0 - e1 * e2 * e3), xi * (1.0 - e1)],
                                    [xi, xi * (1.0 - e1 + e1 * e2)],
                                ),
                                (
                                    [xi, xi * e1 * (1.0 - e2 + e2 * e3)],
                                    [xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2)],
                                ),
                                (
                                    [xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2)],
                                    [xi, xi * e1 * (1.0 - e2 + e2 * e3)],
                                ),
                                (
                                    [xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3)],
                                    [xi, xi * e1 * (1.0 - e2)],
                                ),
                                (
                                    [xi, xi * e1 * (1.0 - e2)],
                                    [xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3)],
                                ),
                            ];
                            for (x, y) in p {
                                push(x, y, jac);
                            }
                        }
                        Adjacency::Edge => {
                            let base = wt * xi.powi(3) * e1 * e1;
                            push(
                                [xi, xi * e1 * e3],
                                [xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2)],
                                base,
                            );
                            let jac = base * e2;
                            let p = [
                                ([xi, xi * e1], [xi * (1.0 - e1 * e2 * e3), xi * e1 * e2 * (1.0 - e3)]),
                                ([xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2)], [xi, xi * e1 * e2 * e3]),
                                ([xi * (1.0 - e1 * e2 * e3), xi * e1 * e2 * (1.0 - e3)], [xi, xi * e1]),
                                ([xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3)], [xi, xi * e1 * e2]),
                            ];
                            for (x, y) in p {
                                push(x, y, jac);
                            }
                        }
                        Adjacency::Vertex => {
                            let jac = wt * xi.powi(3) * e2;
                            push([xi, xi * e1], [xi * e2, xi * e2 * e3], jac);
                            push([xi * e2, xi * e2 * e3], [xi, xi * e1], jac);
                        }
                        Adjacency::Disjoint => unreachable!(),
                    }
                }
            }
        }
    }
    Ok(rule)
}
