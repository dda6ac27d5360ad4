//! Shape functions on reference elements and the element-level stiffness,
//! mass and consistent-load matrices.
//!
//! All matrices are given in closed form; the quadrature rules in
//! [`quadrature`] provide an independent integration route used by the
//! tests. Reference elements: lines live on `xi in [0, 1]`, triangles on
//! the unit right triangle with vertices (0,0), (1,0), (0,1).
//!
//! Hermite shape functions are stated for a unit-length element. On a
//! physical element of length `h` the slope DOFs pick up a factor of `h`
//! (see [`hermite_dof_scales`]); the closed-form matrices below already
//! include that scaling.

pub mod quadrature;

use crate::error::{Error, Result};
use crate::mesh::ElementKind;
use nalgebra::{DMatrix, DVector};

/// Evaluates the shape functions of one element kind on its reference
/// element.
#[derive(Debug, Clone, Copy)]
pub struct ShapeFunctionSet {
    kind: ElementKind,
}

impl ShapeFunctionSet {
    pub fn new(kind: ElementKind) -> Self {
        ShapeFunctionSet { kind }
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    /// Number of shape functions: 2 (Line2), 4 (HermiteLine2), 3 (Tri3).
    pub fn n_funcs(&self) -> usize {
        match self.kind {
            ElementKind::Line2 => 2,
            ElementKind::HermiteLine2 => 4,
            ElementKind::Tri3 => 3,
        }
    }

    /// Dimension of the reference element (1 for lines, 2 for triangles).
    pub fn ref_dim(&self) -> usize {
        match self.kind {
            ElementKind::Tri3 => 2,
            _ => 1,
        }
    }

    /// Shape-function values at a reference point.
    pub fn eval(&self, xi: &[f64]) -> DVector<f64> {
        match self.kind {
            ElementKind::Line2 => {
                let s = xi[0];
                DVector::from_vec(vec![1.0 - s, s])
            }
            ElementKind::HermiteLine2 => {
                let s = xi[0];
                let s2 = s * s;
                let s3 = s2 * s;
                DVector::from_vec(vec![
                    1.0 - 3.0 * s2 + 2.0 * s3,
                    s - 2.0 * s2 + s3,
                    3.0 * s2 - 2.0 * s3,
                    -s2 + s3,
                ])
            }
            ElementKind::Tri3 => {
                let (s, t) = (xi[0], xi[1]);
                DVector::from_vec(vec![1.0 - s - t, s, t])
            }
        }
    }

    /// First derivatives with respect to the reference coordinates,
    /// one row per shape function.
    pub fn eval_grad(&self, xi: &[f64]) -> DMatrix<f64> {
        match self.kind {
            ElementKind::Line2 => DMatrix::from_row_slice(2, 1, &[-1.0, 1.0]),
            ElementKind::HermiteLine2 => {
                let s = xi[0];
                let s2 = s * s;
                DMatrix::from_row_slice(
                    4,
                    1,
                    &[
                        -6.0 * s + 6.0 * s2,
                        1.0 - 4.0 * s + 3.0 * s2,
                        6.0 * s - 6.0 * s2,
                        -2.0 * s + 3.0 * s2,
                    ],
                )
            }
            ElementKind::Tri3 => {
                DMatrix::from_row_slice(3, 2, &[-1.0, -1.0, 1.0, 0.0, 0.0, 1.0])
            }
        }
    }

    /// Second derivatives with respect to the reference coordinate;
    /// only cubic Hermite functions have a meaningful curvature.
    pub fn eval_hess(&self, xi: &[f64]) -> Option<DVector<f64>> {
        match self.kind {
            ElementKind::HermiteLine2 => {
                let s = xi[0];
                Some(DVector::from_vec(vec![
                    -6.0 + 12.0 * s,
                    -4.0 + 6.0 * s,
                    6.0 - 12.0 * s,
                    -2.0 + 6.0 * s,
                ]))
            }
            _ => None,
        }
    }
}

/// Per-DOF scale factors mapping the unit-element Hermite basis to a
/// physical element of length `h`: slope DOFs carry the factor `h`.
pub fn hermite_dof_scales(h: f64) -> [f64; 4] {
    [1.0, h, 1.0, h]
}

/// Element stiffness/mass matrices and optional consistent load.
#[derive(Debug, Clone)]
pub struct ElementMatrices {
    pub k: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub f_vec: Option<DVector<f64>>,
}

fn check_length(h: f64) -> Result<()> {
    if h > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveLength(h))
    }
}

fn check_material(value: f64) -> Result<()> {
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveMaterial(value))
    }
}

/// Tension stiffness of a linear line element: sigma/h [[1,-1],[-1,1]].
pub fn stiffness_line2(sigma: f64, h: f64) -> Result<DMatrix<f64>> {
    check_material(sigma)?;
    check_length(h)?;
    let c = sigma / h;
    Ok(DMatrix::from_row_slice(2, 2, &[c, -c, -c, c]))
}

/// Mass matrix of a linear line element: h/6 [[2,1],[1,2]].
pub fn mass_line2(h: f64) -> Result<DMatrix<f64>> {
    check_length(h)?;
    let c = h / 6.0;
    Ok(DMatrix::from_row_slice(2, 2, &[2.0 * c, c, c, 2.0 * c]))
}

/// Bending stiffness of a cubic Hermite element, DOF order
/// (u1, u1_x, u2, u2_x).
pub fn stiffness_hermite(bending: f64, h: f64) -> Result<DMatrix<f64>> {
    check_material(bending)?;
    check_length(h)?;
    let c = bending / (h * h * h);
    let h2 = h * h;
    #[rustfmt::skip]
    let k = DMatrix::from_row_slice(4, 4, &[
        12.0 * c,       6.0 * h * c,  -12.0 * c,       6.0 * h * c,
        6.0 * h * c,    4.0 * h2 * c, -6.0 * h * c,    2.0 * h2 * c,
        -12.0 * c,     -6.0 * h * c,   12.0 * c,      -6.0 * h * c,
        6.0 * h * c,    2.0 * h2 * c, -6.0 * h * c,    4.0 * h2 * c,
    ]);
    Ok(k)
}

/// Consistent mass matrix of a cubic Hermite element.
pub fn mass_hermite(h: f64) -> Result<DMatrix<f64>> {
    check_length(h)?;
    let c = h / 420.0;
    let h2 = h * h;
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        156.0 * c,      22.0 * h * c,   54.0 * c,      -13.0 * h * c,
        22.0 * h * c,   4.0 * h2 * c,   13.0 * h * c,  -3.0 * h2 * c,
        54.0 * c,       13.0 * h * c,   156.0 * c,     -22.0 * h * c,
        -13.0 * h * c,  -3.0 * h2 * c,  -22.0 * h * c,  4.0 * h2 * c,
    ]);
    Ok(m)
}

/// Membrane stiffness of a linear triangle: sigma * Area * G G^T, where the
/// rows of G are the constant gradients of the barycentric shape functions.
pub fn stiffness_tri3(sigma: f64, coords: &[[f64; 2]; 3]) -> Result<DMatrix<f64>> {
    check_material(sigma)?;
    let area = crate::mesh::triangle_signed_area(coords);
    if area <= 0.0 {
        return Err(Error::DegenerateTriangle(area));
    }
    let grads = tri3_gradients(coords, area);
    let mut k = DMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            k[(i, j)] = sigma * area * (grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1]);
        }
    }
    Ok(k)
}

/// Mass matrix of a linear triangle: Area/12 [[2,1,1],[1,2,1],[1,1,2]].
pub fn mass_tri3(coords: &[[f64; 2]; 3]) -> Result<DMatrix<f64>> {
    let area = crate::mesh::triangle_signed_area(coords);
    if area <= 0.0 {
        return Err(Error::DegenerateTriangle(area));
    }
    let c = area / 12.0;
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(3, 3, &[
        2.0 * c, c, c,
        c, 2.0 * c, c,
        c, c, 2.0 * c,
    ]);
    Ok(m)
}

fn tri3_gradients(coords: &[[f64; 2]; 3], area: f64) -> [[f64; 2]; 3] {
    let [a, b, c] = *coords;
    let d = 2.0 * area;
    [
        [(b[1] - c[1]) / d, (c[0] - b[0]) / d],
        [(c[1] - a[1]) / d, (a[0] - c[0]) / d],
        [(a[1] - b[1]) / d, (b[0] - a[0]) / d],
    ]
}

/// Consistent load of a linear line element with nodal force values `f`:
/// m^e f.
pub fn consistent_load_line2(h: f64, f: [f64; 2]) -> Result<DVector<f64>> {
    let m = mass_line2(h)?;
    Ok(m * DVector::from_vec(f.to_vec()))
}

/// Consistent load of a Hermite element for a force interpolated linearly
/// between the nodal values `f` (slope DOFs of the force are not a concept
/// here). Closed form of the integral of each basis function against f^h.
pub fn consistent_load_hermite(h: f64, f: [f64; 2]) -> Result<DVector<f64>> {
    check_length(h)?;
    let [f1, f2] = f;
    Ok(DVector::from_vec(vec![
        h * (7.0 * f1 + 3.0 * f2) / 20.0,
        h * h * (3.0 * f1 + 2.0 * f2) / 60.0,
        h * (3.0 * f1 + 7.0 * f2) / 20.0,
        -h * h * (2.0 * f1 + 3.0 * f2) / 60.0,
    ]))
}

/// Consistent load of a linear triangle with nodal force values `f`.
pub fn consistent_load_tri3(coords: &[[f64; 2]; 3], f: [f64; 3]) -> Result<DVector<f64>> {
    let m = mass_tri3(coords)?;
    Ok(m * DVector::from_vec(f.to_vec()))
}

/// Geometry of one element, as needed by the matrix formulas.
#[derive(Debug, Clone)]
pub enum ElementGeometry {
    Line { length: f64 },
    Triangle { coords: [[f64; 2]; 3] },
}

/// Builds stiffness, mass and (when nodal forces are given) the consistent
/// load for one element.
pub fn element_matrices(
    kind: ElementKind,
    geometry: &ElementGeometry,
    material: f64,
    nodal_f: Option<&[f64]>,
) -> Result<ElementMatrices> {
    let (k, m, f_vec) = match (kind, geometry) {
        (ElementKind::Line2, ElementGeometry::Line { length }) => {
            let k = stiffness_line2(material, *length)?;
            let m = mass_line2(*length)?;
            let f_vec = match nodal_f {
                Some(f) => Some(consistent_load_line2(*length, [f[0], f[1]])?),
                None => None,
            };
            (k, m, f_vec)
        }
        (ElementKind::HermiteLine2, ElementGeometry::Line { length }) => {
            let k = stiffness_hermite(material, *length)?;
            let m = mass_hermite(*length)?;
            let f_vec = match nodal_f {
                Some(f) => Some(consistent_load_hermite(*length, [f[0], f[1]])?),
                None => None,
            };
            (k, m, f_vec)
        }
        (ElementKind::Tri3, ElementGeometry::Triangle { coords }) => {
            let k = stiffness_tri3(material, coords)?;
            let m = mass_tri3(coords)?;
            let f_vec = match nodal_f {
                Some(f) => Some(consistent_load_tri3(coords, [f[0], f[1], f[2]])?),
                None => None,
            };
            (k, m, f_vec)
        }
        _ => {
            return Err(Error::DofMapMismatch(format!(
                "element kind {kind:?} does not match the given geometry"
            )))
        }
    };
    Ok(ElementMatrices { k, m, f_vec })
}

#[cfg(test)]
mod tests {
    use super::quadrature::{gauss_legendre_unit, triangle_rule};
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64, what: &str) {
        assert_eq!(a.shape(), b.shape());
        let diff = (a - b).abs().max();
        assert!(diff <= tol, "{what}: max difference {diff:.3e} > {tol:.1e}");
    }

    /// Quadrature of sigma * phi_,x phi_,x^T over a line element.
    fn quad_stiffness_line(kind: ElementKind, material: f64, h: f64) -> DMatrix<f64> {
        let shapes = ShapeFunctionSet::new(kind);
        let n = shapes.n_funcs();
        let rule = gauss_legendre_unit(3);
        let scales = match kind {
            ElementKind::HermiteLine2 => hermite_dof_scales(h).to_vec(),
            _ => vec![1.0; n],
        };
        let mut k = DMatrix::zeros(n, n);
        for (&xi, &w) in rule.points.iter().zip(&rule.weights) {
            // Physical derivative values at this point.
            let derivs: Vec<f64> = match kind {
                ElementKind::HermiteLine2 => shapes
                    .eval_hess(&[xi])
                    .unwrap()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| scales[i] * d / (h * h))
                    .collect(),
                _ => shapes
                    .eval_grad(&[xi])
                    .column(0)
                    .iter()
                    .map(|d| d / h)
                    .collect(),
            };
            for i in 0..n {
                for j in 0..n {
                    k[(i, j)] += material * derivs[i] * derivs[j] * w * h;
                }
            }
        }
        k
    }

    fn quad_mass_line(kind: ElementKind, h: f64) -> DMatrix<f64> {
        let shapes = ShapeFunctionSet::new(kind);
        let n = shapes.n_funcs();
        let rule = gauss_legendre_unit(4);
        let scales = match kind {
            ElementKind::HermiteLine2 => hermite_dof_scales(h).to_vec(),
            _ => vec![1.0; n],
        };
        let mut m = DMatrix::zeros(n, n);
        for (&xi, &w) in rule.points.iter().zip(&rule.weights) {
            let vals = shapes.eval(&[xi]);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += scales[i] * vals[i] * scales[j] * vals[j] * w * h;
                }
            }
        }
        m
    }

    fn quad_load_hermite(h: f64, f: [f64; 2]) -> DVector<f64> {
        let shapes = ShapeFunctionSet::new(ElementKind::HermiteLine2);
        let rule = gauss_legendre_unit(3);
        let scales = hermite_dof_scales(h);
        let mut load = DVector::zeros(4);
        for (&xi, &w) in rule.points.iter().zip(&rule.weights) {
            let vals = shapes.eval(&[xi]);
            let fh = f[0] * (1.0 - xi) + f[1] * xi;
            for i in 0..4 {
                load[i] += scales[i] * vals[i] * fh * w * h;
            }
        }
        load
    }

    fn quad_stiffness_tri3(sigma: f64, coords: &[[f64; 2]; 3]) -> DMatrix<f64> {
        let area = crate::mesh::triangle_signed_area(coords);
        let grads = tri3_gradients(coords, area);
        let rule = triangle_rule(2);
        let mut k = DMatrix::zeros(3, 3);
        for &w in &rule.weights {
            for i in 0..3 {
                for j in 0..3 {
                    k[(i, j)] += sigma
                        * (grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1])
                        * w
                        * 2.0
                        * area;
                }
            }
        }
        k
    }

    #[test]
    fn partition_of_unity_and_kronecker() {
        let mut rng = StdRng::seed_from_u64(7);
        for kind in [ElementKind::Line2, ElementKind::HermiteLine2, ElementKind::Tri3] {
            let shapes = ShapeFunctionSet::new(kind);
            for _ in 0..20 {
                let xi: Vec<f64> = match kind {
                    ElementKind::Tri3 => {
                        let a: f64 = rng.random();
                        let b: f64 = rng.random_range(0.0..(1.0 - a));
                        vec![a, b]
                    }
                    _ => vec![rng.random()],
                };
                let vals = shapes.eval(&xi);
                // Value-interpolating subset sums to one everywhere.
                let unity: f64 = match kind {
                    ElementKind::HermiteLine2 => vals[0] + vals[2],
                    _ => vals.sum(),
                };
                assert!((unity - 1.0).abs() <= 1e-12, "{kind:?} at {xi:?}");
            }
        }

        // Kronecker property at the nodes.
        let line = ShapeFunctionSet::new(ElementKind::Line2);
        assert_eq!(line.eval(&[0.0]).as_slice(), &[1.0, 0.0]);
        assert_eq!(line.eval(&[1.0]).as_slice(), &[0.0, 1.0]);

        let tri = ShapeFunctionSet::new(ElementKind::Tri3);
        assert_eq!(tri.eval(&[0.0, 0.0]).as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(tri.eval(&[1.0, 0.0]).as_slice(), &[0.0, 1.0, 0.0]);
        assert_eq!(tri.eval(&[0.0, 1.0]).as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn hermite_nodal_properties() {
        let shapes = ShapeFunctionSet::new(ElementKind::HermiteLine2);
        for (node, xi) in [(0, 0.0), (1, 1.0)] {
            let vals = shapes.eval(&[xi]);
            let slopes = shapes.eval_grad(&[xi]);
            let value_dof = 2 * node;
            let slope_dof = 2 * node + 1;
            for i in 0..4 {
                let want_val = if i == value_dof { 1.0 } else { 0.0 };
                let want_slope = if i == slope_dof { 1.0 } else { 0.0 };
                assert!((vals[i] - want_val).abs() <= 1e-12);
                assert!((slopes[(i, 0)] - want_slope).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn line2_stiffness_matches_quadrature() {
        for (sigma, h) in [(1.0, 1.0), (3.0, 2.0)] {
            let closed = stiffness_line2(sigma, h).unwrap();
            let quad = quad_stiffness_line(ElementKind::Line2, sigma, h);
            assert_close(&closed, &quad, 1e-12, "line2 stiffness");
        }
        let k = stiffness_line2(3.0, 2.0).unwrap();
        assert_close(
            &k,
            &DMatrix::from_row_slice(2, 2, &[1.5, -1.5, -1.5, 1.5]),
            1e-15,
            "line2 stiffness closed form",
        );
    }

    #[test]
    fn line2_mass_matches_quadrature_and_sums_to_h() {
        for h in [1.0, 2.0, 0.37] {
            let closed = mass_line2(h).unwrap();
            let quad = quad_mass_line(ElementKind::Line2, h);
            assert_close(&closed, &quad, 1e-12, "line2 mass");
            assert!((closed.sum() - h).abs() <= 1e-12);
        }
    }

    #[test]
    fn hermite_stiffness_matches_quadrature() {
        let closed = stiffness_hermite(1.0, 1.0).unwrap();
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(4, 4, &[
            12.0, 6.0, -12.0, 6.0,
            6.0, 4.0, -6.0, 2.0,
            -12.0, -6.0, 12.0, -6.0,
            6.0, 2.0, -6.0, 4.0,
        ]);
        assert_close(&closed, &expected, 1e-15, "hermite stiffness (1,1)");

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let kb: f64 = rng.random_range(0.1..5.0);
            let h: f64 = rng.random_range(0.1..3.0);
            let closed = stiffness_hermite(kb, h).unwrap();
            let quad = quad_stiffness_line(ElementKind::HermiteLine2, kb, h);
            assert_close(&closed, &quad, 1e-11, "hermite stiffness");
        }
    }

    #[test]
    fn hermite_stiffness_linear_in_bending() {
        let k1 = stiffness_hermite(1.0, 1.0).unwrap();
        let k2 = stiffness_hermite(2.0, 1.0).unwrap();
        assert_close(&(2.0 * k1), &k2, 1e-14, "stiffness linearity");
    }

    #[test]
    fn hermite_stiffness_null_space() {
        for h in [1.0, 0.5, 2.5] {
            let k = stiffness_hermite(1.3, h).unwrap();
            let translation = DVector::from_vec(vec![1.0, 0.0, 1.0, 0.0]);
            let rotation = DVector::from_vec(vec![0.0, 1.0, h, 1.0]);
            assert!((&k * translation).norm() <= 1e-10);
            assert!((&k * rotation).norm() <= 1e-10);
        }
    }

    #[test]
    fn hermite_mass_matches_quadrature() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..10 {
            let h: f64 = rng.random_range(0.1..3.0);
            let closed = mass_hermite(h).unwrap();
            let quad = quad_mass_line(ElementKind::HermiteLine2, h);
            assert_close(&closed, &quad, 1e-12, "hermite mass");
            assert!(closed.clone().cholesky().is_some(), "hermite mass SPD");
        }
    }

    #[test]
    fn tri3_stiffness_unit_right_triangle() {
        let coords = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let k = stiffness_tri3(1.0, &coords).unwrap();
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(3, 3, &[
            1.0, -0.5, -0.5,
            -0.5, 0.5, 0.0,
            -0.5, 0.0, 0.5,
        ]);
        assert_close(&k, &expected, 1e-14, "tri3 unit right triangle");
    }

    #[test]
    fn tri3_stiffness_matches_quadrature_and_kills_constants() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..10 {
            let mut coords = [[0.0; 2]; 3];
            loop {
                for c in coords.iter_mut() {
                    c[0] = rng.random_range(-2.0..2.0);
                    c[1] = rng.random_range(-2.0..2.0);
                }
                if crate::mesh::triangle_signed_area(&coords) > 0.05 {
                    break;
                }
            }
            let sigma: f64 = rng.random_range(0.1..4.0);
            let closed = stiffness_tri3(sigma, &coords).unwrap();
            let quad = quad_stiffness_tri3(sigma, &coords);
            assert_close(&closed, &quad, 1e-11, "tri3 stiffness");
            let ones = DVector::from_element(3, 1.0);
            assert!((&closed * ones).norm() <= 1e-10);
        }
    }

    #[test]
    fn tri3_rejects_degenerate_triangle() {
        let coords = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        assert!(matches!(
            stiffness_tri3(1.0, &coords),
            Err(Error::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn consistent_load_line2_examples() {
        let load = consistent_load_line2(0.5, [1.0, 1.0]).unwrap();
        assert!((load[0] - 0.25).abs() <= 1e-15);
        assert!((load[1] - 0.25).abs() <= 1e-15);
        let zero = consistent_load_line2(0.5, [0.0, 0.0]).unwrap();
        assert_eq!(zero.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn consistent_load_hermite_examples_and_quadrature() {
        let load = consistent_load_hermite(1.0, [1.0, 1.0]).unwrap();
        let expected = [0.5, 1.0 / 12.0, 0.5, -1.0 / 12.0];
        for (got, want) in load.iter().zip(expected) {
            assert!((got - want).abs() <= 1e-15);
        }

        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..10 {
            let h: f64 = rng.random_range(0.1..3.0);
            let f = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let closed = consistent_load_hermite(h, f).unwrap();
            let quad = quad_load_hermite(h, f);
            assert!((closed - quad).norm() <= 1e-12);
        }
    }

    #[test]
    fn stiffness_rejects_non_positive_length() {
        assert!(matches!(stiffness_line2(1.0, 0.0), Err(Error::NonPositiveLength(_))));
        assert!(matches!(mass_line2(-1.0), Err(Error::NonPositiveLength(_))));
        assert!(matches!(stiffness_hermite(1.0, 0.0), Err(Error::NonPositiveLength(_))));
    }

    #[test]
    fn stiffness_matrices_are_symmetric_psd() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let h: f64 = rng.random_range(0.2..2.0);
            let sigma: f64 = rng.random_range(0.2..2.0);
            for k in [
                stiffness_line2(sigma, h).unwrap(),
                stiffness_hermite(sigma, h).unwrap(),
            ] {
                let asym = (&k - k.transpose()).abs().max();
                assert!(asym <= 1e-14);
                let eig = k.symmetric_eigenvalues();
                assert!(eig.iter().all(|&e| e >= -1e-10), "eigenvalues {eig:?}");
            }
            let m = mass_line2(h).unwrap();
            assert!(m.cholesky().is_some());
        }
    }
}
