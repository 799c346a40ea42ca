//! Symmetric Gauss rules on triangles in barycentric form.
//!
//! Tabulated values are the classical fully symmetric rules with positive
//! weights and interior points. Each rule is checked against the closed-form
//! barycentric moments the first time it is requested.

use std::sync::OnceLock;

use crate::error::{Result, VemError};

/// Degrees with a tabulated rule.
pub const SUPPORTED_DEGREES: [u32; 4] = [2, 4, 6, 8];

/// Largest moment error tolerated when a rule is first loaded.
const EXACTNESS_TOLERANCE: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub degree: u32,
    /// Barycentric coordinates, each triple summing to one.
    pub points: Vec<[f64; 3]>,
    /// Positive weights relative to the triangle area, summing to one.
    pub weights: Vec<f64>,
}

enum Orbit {
    Centroid(f64),
    /// `(1 - 2b, b, b)` and its rotations.
    Pair { w: f64, b: f64 },
    /// All six permutations of `(p, q, 1 - p - q)`.
    General { w: f64, p: f64, q: f64 },
}

fn tabulated(degree: u32) -> Option<Vec<Orbit>> {
    use Orbit::*;
    let orbits = match degree {
        2 => vec![Pair { w: 1.0 / 3.0, b: 1.0 / 6.0 }],
        4 => vec![
            Pair { w: 0.223_381_589_678_011, b: 0.445_948_490_915_965 },
            Pair { w: 0.109_951_743_655_322, b: 0.091_576_213_509_771 },
        ],
        6 => vec![
            Pair { w: 0.116_786_275_726_379, b: 0.249_286_745_170_910 },
            Pair { w: 0.050_844_906_370_207, b: 0.063_089_014_491_502 },
            General { w: 0.082_851_075_618_374, p: 0.053_145_049_844_817, q: 0.310_352_451_033_784 },
        ],
        8 => vec![
            Centroid(0.144_315_607_677_787),
            Pair { w: 0.095_091_634_267_285, b: 0.459_292_588_292_723 },
            Pair { w: 0.103_217_370_534_718, b: 0.170_569_307_751_760 },
            Pair { w: 0.032_458_497_623_198, b: 0.050_547_228_317_031 },
            General { w: 0.027_230_314_174_435, p: 0.008_394_777_409_958, q: 0.263_112_829_634_638 },
        ],
        _ => return None,
    };
    Some(orbits)
}

fn expand(degree: u32, orbits: Vec<Orbit>) -> QuadratureRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for orbit in orbits {
        match orbit {
            Orbit::Centroid(w) => {
                points.push([1.0 / 3.0; 3]);
                weights.push(w);
            }
            Orbit::Pair { w, b } => {
                let a = 1.0 - 2.0 * b;
                for p in [[a, b, b], [b, a, b], [b, b, a]] {
                    points.push(p);
                    weights.push(w);
                }
            }
            Orbit::General { w, p, q } => {
                let r = 1.0 - p - q;
                for pt in [[p, q, r], [q, r, p], [r, p, q], [q, p, r], [p, r, q], [r, q, p]] {
                    points.push(pt);
                    weights.push(w);
                }
            }
        }
    }
    QuadratureRule { degree, points, weights }
}

/// `∫_T λ1^a λ2^b λ3^c dA / |T| = 2 a! b! c! / (a + b + c + 2)!`
pub fn barycentric_moment(a: u32, b: u32, c: u32) -> f64 {
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    2.0 * fact(a) * fact(b) * fact(c) / fact(a + b + c + 2)
}

impl QuadratureRule {
    /// Largest error over all barycentric monomials up to the rule's degree.
    pub fn exactness_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for total in 0..=self.degree {
            for a in 0..=total {
                for b in 0..=total - a {
                    let c = total - a - b;
                    let approx: f64 = self
                        .points
                        .iter()
                        .zip(&self.weights)
                        .map(|(p, w)| w * p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(c as i32))
                        .sum();
                    worst = worst.max((approx - barycentric_moment(a, b, c)).abs());
                }
            }
        }
        worst
    }

    /// Physical quadrature points and absolute weights on `tri`.
    pub fn on_triangle<'a>(&'a self, tri: &'a [[f64; 2]; 3]) -> impl Iterator<Item = ([f64; 2], f64)> + 'a {
        let area = triangle_area(tri);
        self.points.iter().zip(&self.weights).map(move |(l, w)| {
            let x = l[0] * tri[0][0] + l[1] * tri[1][0] + l[2] * tri[2][0];
            let y = l[0] * tri[0][1] + l[1] * tri[1][1] + l[2] * tri[2][1];
            ([x, y], w * area)
        })
    }
}

pub fn triangle_area(tri: &[[f64; 2]; 3]) -> f64 {
    let (ax, ay) = (tri[1][0] - tri[0][0], tri[1][1] - tri[0][1]);
    let (bx, by) = (tri[2][0] - tri[0][0], tri[2][1] - tri[0][1]);
    0.5 * (ax * by - ay * bx).abs()
}

/// Returns the validated rule exact for polynomials of total degree `degree`.
pub fn rule(degree: u32) -> Result<&'static QuadratureRule> {
    static RULES: [OnceLock<std::result::Result<QuadratureRule, f64>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = SUPPORTED_DEGREES
        .iter()
        .position(|&d| d == degree)
        .ok_or(VemError::UnsupportedDegree(degree))?;
    let entry = RULES[slot].get_or_init(|| {
        let q = expand(degree, tabulated(degree).expect("supported degree"));
        let err = q.exactness_error();
        if err <= EXACTNESS_TOLERANCE {
            Ok(q)
        } else {
            Err(err)
        }
    });
    entry.as_ref().map_err(|&error| VemError::InexactRule { degree, error })
}

/// `Σ w_k g(x_k) |T|`
pub fn integrate<F: Fn([f64; 2]) -> f64>(tri: &[[f64; 2]; 3], g: F, q: &QuadratureRule) -> f64 {
    q.on_triangle(tri).map(|(x, w)| w * g(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const REF: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];

    fn bary(tri: &[[f64; 2]; 3], x: [f64; 2]) -> [f64; 3] {
        let det = (tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1])
            - (tri[2][0] - tri[0][0]) * (tri[1][1] - tri[0][1]);
        let l1 = ((x[0] - tri[0][0]) * (tri[2][1] - tri[0][1]) - (tri[2][0] - tri[0][0]) * (x[1] - tri[0][1])) / det;
        let l2 = ((tri[1][0] - tri[0][0]) * (x[1] - tri[0][1]) - (x[0] - tri[0][0]) * (tri[1][1] - tri[0][1])) / det;
        [1.0 - l1 - l2, l1, l2]
    }

    #[test]
    fn all_rules_load() {
        for d in SUPPORTED_DEGREES {
            let q = rule(d).unwrap();
            assert_eq!(q.degree, d);
            assert!(q.weights.iter().all(|&w| w > 0.0));
            assert!((q.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            for p in &q.points {
                assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
                assert!(p.iter().all(|&c| c > 0.0));
            }
        }
        assert!(matches!(rule(3), Err(VemError::UnsupportedDegree(3))));
    }

    #[test]
    fn constant_gives_area() {
        let tri = [[0.0, 0.0], [2.0, 0.0], [0.5, 3.0]];
        let v = integrate(&tri, |_| 1.0, rule(2).unwrap());
        assert!((v - 3.0).abs() < 1e-14);
    }

    #[test]
    fn barycentric_coordinate_integrates_to_a_third() {
        let tri = [[0.1, -0.2], [1.3, 0.4], [0.2, 0.9]];
        let area = triangle_area(&tri);
        let v = integrate(&tri, |x| bary(&tri, x)[0], rule(4).unwrap());
        assert!((v - area / 3.0).abs() < 1e-14);
    }

    #[test]
    fn mass_entry_of_equilateral_triangle() {
        let s = 0.25;
        let tri = [[0.0, 0.0], [s, 0.0], [0.5 * s, 0.5 * crate::mesh::SQRT_3 * s]];
        let area = triangle_area(&tri);
        let v = integrate(&tri, |x| { let l = bary(&tri, x); l[0] * l[1] }, rule(2).unwrap());
        assert!((v - area / 12.0).abs() < 1e-16);
    }

    #[test]
    fn degree_six_moment() {
        // λ1³ λ2² λ3 on the reference triangle (area 1/2).
        let exact = 2.0 * 6.0 * 2.0 * 1.0 / 40320.0 * 0.5;
        let v = integrate(&REF, |x| { let l = bary(&REF, x); l[0].powi(3) * l[1].powi(2) * l[2] }, rule(6).unwrap());
        assert!((v - exact).abs() < 1e-16, "{v} vs {exact}");
    }

    #[test]
    fn degree_seven_not_exact_for_degree_six_rule() {
        // ∫ x⁷ over the reference triangle = 7! 1! / 9! = 1/72.
        let v = integrate(&REF, |x| x[0].powi(7), rule(6).unwrap());
        assert!((v - 1.0 / 72.0).abs() > 1e-6);
    }
}
