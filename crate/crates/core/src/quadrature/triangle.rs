//! Quadrature rules on the reference triangle `{(s, t) : s, t >= 0, s + t <= 1}`.
//!
//! Orders 1, 2, 4, 5 and 6 use fully symmetric rules; the remaining orders use
//! collapsed Gauss–Legendre product rules.

use super::gauss::gauss_legendre_01;
use super::QuadratureError;

/// Point/weight list on the reference triangle. Weights sum to 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleRule {
    /// Reference coordinates `(s, t)`; barycentrics are `(1 - s - t, s, t)`.
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl TriangleRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Barycentric coordinates of point `q`.
    pub fn barycentric(&self, q: usize) -> [f64; 3] {
        let [s, t] = self.points[q];
        [1.0 - s - t, s, t]
    }
}

pub const MAX_TRIANGLE_ORDER: usize = 10;

/// Rule exact for polynomials of total degree `order` (1..=10).
pub fn gauss_triangle(order: usize) -> Result<TriangleRule, QuadratureError> {
    let mut rule = match order {
        1 => symmetric(&[(1.0, Orbit::Centroid)]),
        2 => symmetric(&[(1.0 / 3.0, Orbit::Three(1.0 / 6.0))]),
        4 => symmetric(&[
            (0.223_381_589_678_011, Orbit::Three(0.445_948_490_915_965)),
            (0.109_951_743_655_322, Orbit::Three(0.091_576_213_509_771)),
        ]),
        5 => symmetric(&[
            (0.225, Orbit::Centroid),
            (0.132_394_152_788_506, Orbit::Three(0.470_142_064_105_115)),
            (0.125_939_180_544_827, Orbit::Three(0.101_286_507_323_456)),
        ]),
        6 => symmetric(&[
            (0.116_786_275_726_379, Orbit::Three(0.249_286_745_170_910)),
            (0.050_844_906_370_207, Orbit::Three(0.063_089_014_491_502)),
            (
                0.082_851_075_618_374,
                Orbit::Six(0.053_145_049_844_817, 0.310_352_451_033_784),
            ),
        ]),
        3 | 7..=MAX_TRIANGLE_ORDER => collapsed(order),
        _ => return Err(QuadratureError::UnsupportedOrder(order)),
    };
    rule.order = order;
    Ok(rule)
}

enum Orbit {
    Centroid,
    /// Barycentrics `(a, a, 1 - 2a)` and permutations.
    Three(f64),
    /// Barycentrics `(a, b, 1 - a - b)` and all six permutations.
    Six(f64, f64),
}

/// Builds a rule from orbits whose weights are normalized to total 1.
fn symmetric(orbits: &[(f64, Orbit)]) -> TriangleRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (w, orbit) in orbits {
        let bary: Vec<[f64; 3]> = match *orbit {
            Orbit::Centroid => vec![[1.0 / 3.0; 3]],
            Orbit::Three(a) => {
                let c = 1.0 - 2.0 * a;
                vec![[a, a, c], [a, c, a], [c, a, a]]
            }
            Orbit::Six(a, b) => {
                let c = 1.0 - a - b;
                vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
            }
        };
        for l in bary {
            points.push([l[1], l[2]]);
            weights.push(0.5 * w);
        }
    }
    TriangleRule { points, weights, order: 0 }
}

/// Conical product rule: Gauss–Legendre in both directions of the collapsed square.
fn collapsed(order: usize) -> TriangleRule {
    // After collapse the integrand has degree order+1 in u and order in v.
    let nu = (order + 3) / 2;
    let nv = (order + 2) / 2;
    let (xu, wu) = gauss_legendre_01(nu);
    let (xv, wv) = gauss_legendre_01(nv);
    let mut points = Vec::with_capacity(nu * nv);
    let mut weights = Vec::with_capacity(nu * nv);
    for (u, wu) in xu.iter().zip(&wu) {
        for (v, wv) in xv.iter().zip(&wv) {
            points.push([*u, v * (1.0 - u)]);
            weights.push(wu * wv * (1.0 - u));
        }
    }
    TriangleRule { points, weights, order }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫ s^a t^b over the reference triangle = a! b! / (a + b + 2)!.
    fn monomial_exact(a: u32, b: u32) -> f64 {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        fact(a) * fact(b) / fact(a + b + 2)
    }

    #[test]
    fn exact_up_to_order() {
        for order in 1..=MAX_TRIANGLE_ORDER {
            let rule = gauss_triangle(order).unwrap();
            for a in 0..=order as u32 {
                for b in 0..=(order as u32 - a) {
                    let approx: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .map(|(p, w)| w * p[0].powi(a as i32) * p[1].powi(b as i32))
                        .sum();
                    let exact = monomial_exact(a, b);
                    assert!(
                        (approx - exact).abs() < 1e-14,
                        "order {order}, s^{a} t^{b}: {approx} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn points_inside_and_weights_sum_to_half() {
        for order in 1..=MAX_TRIANGLE_ORDER {
            let rule = gauss_triangle(order).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 0.5).abs() < 1e-14);
            for p in &rule.points {
                assert!(p[0] >= 0.0 && p[1] >= 0.0 && p[0] + p[1] <= 1.0 + 1e-15);
            }
        }
    }

    #[test]
    fn analytic_examples() {
        let rule = gauss_triangle(4).unwrap();
        let int = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
            rule.points.iter().zip(&rule.weights).map(|(p, w)| w * f(p[0], p[1])).sum()
        };
        assert!((int(&|_, _| 1.0) - 0.5).abs() < 1e-15);
        assert!((int(&|s, _| s) - 1.0 / 6.0).abs() < 1e-15);
        // ∫ s² t² = 2!·2!/6! = 1/180.
        assert!((int(&|s, t| s * s * t * t) - 1.0 / 180.0).abs() < 1e-14);
    }

    #[test]
    fn unsupported_orders_rejected() {
        assert!(gauss_triangle(0).is_err());
        assert!(gauss_triangle(11).is_err());
    }
}
