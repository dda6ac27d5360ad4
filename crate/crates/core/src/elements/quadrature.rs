//! Gauss quadrature rules on the reference elements.
//!
//! These rules back the numerical-integration route for element matrices;
//! the closed forms in the parent module never call them, so the two paths
//! can be checked against each other.

/// Gauss-Legendre rule on the unit interval [0, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Returns the `n`-point Gauss-Legendre rule on [0, 1], exact for
/// polynomials of degree 2n-1. Supported n: 1..=5.
pub fn gauss_legendre_unit(n: usize) -> GaussRule {
    // Nodes/weights on [-1, 1].
    let (points, weights): (Vec<f64>, Vec<f64>) = match n {
        1 => (vec![0.0], vec![2.0]),
        2 => {
            let a = 1.0 / 3.0_f64.sqrt();
            (vec![-a, a], vec![1.0, 1.0])
        }
        3 => {
            let a = (3.0_f64 / 5.0).sqrt();
            (vec![-a, 0.0, a], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])
        }
        4 => (
            vec![
                -0.8611363115940526,
                -0.3399810435848563,
                0.3399810435848563,
                0.8611363115940526,
            ],
            vec![
                0.34785484513745385,
                0.6521451548625461,
                0.6521451548625461,
                0.34785484513745385,
            ],
        ),
        5 => (
            vec![
                -0.9061798459386640,
                -0.5384693101056831,
                0.0,
                0.5384693101056831,
                0.9061798459386640,
            ],
            vec![
                0.23692688505618908,
                0.47862867049936647,
                0.5688888888888889,
                0.47862867049936647,
                0.23692688505618908,
            ],
        ),
        _ => panic!("gauss_legendre_unit supports 1..=5 points, got {n}"),
    };
    GaussRule {
        points: points.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights: weights.iter().map(|w| 0.5 * w).collect(),
    }
}

/// Quadrature rule on the reference triangle (0,0)-(1,0)-(0,1).
/// Weights sum to the reference area 1/2.
#[derive(Debug, Clone)]
pub struct TriangleRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

/// Returns a rule exact for polynomials up to `degree` (2 or 5).
pub fn triangle_rule(degree: usize) -> TriangleRule {
    match degree {
        0..=2 => TriangleRule {
            // Edge midpoints.
            points: vec![[0.5, 0.0], [0.5, 0.5], [0.0, 0.5]],
            weights: vec![1.0 / 6.0; 3],
        },
        3..=5 => {
            // Seven-point degree-5 rule (Radon).
            let a = 0.059_715_871_789_770;
            let b = 0.470_142_064_105_115;
            let c = 0.797_426_985_353_087;
            let d = 0.101_286_507_323_456;
            let w1 = 0.132_394_152_788_506 / 2.0;
            let w2 = 0.125_939_180_544_827 / 2.0;
            TriangleRule {
                points: vec![
                    [1.0 / 3.0, 1.0 / 3.0],
                    [a, b],
                    [b, a],
                    [b, b],
                    [c, d],
                    [d, c],
                    [d, d],
                ],
                weights: vec![0.225 / 2.0, w1, w1, w1, w2, w2, w2],
            }
        }
        _ => panic!("triangle_rule supports degrees up to 5, got {degree}"),
    }
}
