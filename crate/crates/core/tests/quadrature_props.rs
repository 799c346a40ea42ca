use hive_vem::quadrature::{integrate, rule, SUPPORTED_DEGREES};
use proptest::prelude::*;

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `∫_T x^p y^q` by expanding `x = Σ λ_i x_i`, `y = Σ λ_i y_i` into barycentric
/// monomials, each integrating to `2A a! b! c! / (a + b + c + 2)!`.
fn exact_monomial(tri: &[[f64; 2]; 3], p: u32, q: u32) -> f64 {
    let area = 0.5 * ((tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1]) - (tri[2][0] - tri[0][0]) * (tri[1][1] - tri[0][1])).abs();
    // Coefficients of the polynomial in (λ1, λ2, λ3), keyed by exponents.
    let trinomial = |n: u32, coords: [f64; 3]| {
        let mut terms = Vec::new();
        for a in 0..=n {
            for b in 0..=n - a {
                let c = n - a - b;
                let coef = binomial(n, a) * binomial(n - a, b) * coords[0].powi(a as i32) * coords[1].powi(b as i32) * coords[2].powi(c as i32);
                terms.push(([a, b, c], coef));
            }
        }
        terms
    };
    let xs = trinomial(p, [tri[0][0], tri[1][0], tri[2][0]]);
    let ys = trinomial(q, [tri[0][1], tri[1][1], tri[2][1]]);
    let mut total = 0.0;
    for (ex, cx) in &xs {
        for (ey, cy) in &ys {
            let (a, b, c) = (ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]);
            total += cx * cy * 2.0 * area * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
        }
    }
    total
}

fn triangle() -> impl Strategy<Value = [[f64; 2]; 3]> {
    proptest::array::uniform3(proptest::array::uniform2(-1.0f64..1.0)).prop_filter("non-degenerate", |t| {
        let a = 0.5 * ((t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]));
        a.abs() > 0.05
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monomials_up_to_the_degree_are_exact(tri in triangle(), d_index in 0usize..4, p in 0u32..=8, q in 0u32..=8) {
        let degree = SUPPORTED_DEGREES[d_index];
        let p = p % (degree + 1);
        let q = q % (degree - p + 1);
        let q_rule = rule(degree).unwrap();
        let approx = integrate(&tri, |x| x[0].powi(p as i32) * x[1].powi(q as i32), q_rule);
        let exact = exact_monomial(&tri, p, q);
        prop_assert!((approx - exact).abs() <= 1e-13, "degree {degree}, x^{p} y^{q}: {approx} vs {exact}");
    }

    #[test]
    fn rules_are_affine_invariant(tri in triangle(), shift in proptest::array::uniform2(-3.0f64..3.0)) {
        let q_rule = rule(4).unwrap();
        let moved = tri.map(|v| [v[0] + shift[0], v[1] + shift[1]]);
        let g = |x: [f64; 2]| x[0] * x[0] - x[1];
        let h = |x: [f64; 2]| g([x[0] - shift[0], x[1] - shift[1]]);
        prop_assert!((integrate(&tri, g, q_rule) - integrate(&moved, h, q_rule)).abs() < 1e-13);
    }
}

#[test]
fn weights_positive_and_points_barycentric() {
    for degree in SUPPORTED_DEGREES {
        let r = rule(degree).unwrap();
        assert!(r.weights.iter().all(|&w| w > 0.0));
        assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        for p in &r.points {
            assert!(p.iter().all(|&l| l > 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }
}

#[test]
fn unsupported_degree_is_a_config_error() {
    let err = rule(5).unwrap_err();
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn one_degree_beyond_is_not_exact() {
    let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
    for degree in SUPPORTED_DEGREES {
        let p = degree + 1;
        let approx = integrate(&tri, |x| x[0].powi(p as i32), rule(degree).unwrap());
        assert!((approx - exact_monomial(&tri, p, 0)).abs() > 1e-8, "degree {degree} integrates x^{p}");
    }
}
