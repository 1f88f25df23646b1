//! Quadrature rules on the reference square and triangle.

use crate::mesh::ElementKind;
use crate::{Error, Result};

/// Highest polynomial degree for which a rule can be supplied.
pub const MAX_DEGREE: usize = 17;

/// A quadrature rule in reference coordinates.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of the weights (the reference element measure).
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Returns a rule exact for polynomials of (total) degree `degree`.
///
/// Q9 uses tensor-product Gauss-Legendre; T6 uses symmetric triangle rules
/// with positive weights.
pub fn quadrature_for(kind: ElementKind, degree: usize) -> Result<QuadratureRule> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedQuadrature {
            requested: degree,
            supported: MAX_DEGREE,
        });
    }
    match kind {
        ElementKind::Q9 => {
            let n = degree / 2 + 1;
            let (xs, ws) = gauss_legendre(n);
            let mut points = Vec::with_capacity(n * n);
            let mut weights = Vec::with_capacity(n * n);
            for j in 0..n {
                for i in 0..n {
                    points.push([xs[i], xs[j]]);
                    weights.push(ws[i] * ws[j]);
                }
            }
            Ok(QuadratureRule { points, weights })
        }
        ElementKind::T6 => triangle_rule(degree),
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], exact to degree 2n-1.
///
/// Nodes are found by Newton iteration on the Legendre recurrence; this is
/// accurate to machine precision for the small n used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        xs[n / 2] = 0.0;
    }
    (xs, ws)
}

// Value and derivative of P_n at x via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

// Symmetric positive-weight rules on the unit triangle.
//
// Weights below are normalized to sum to 1 and are scaled by the triangle
// area 1/2 on output. Orbits: S3 is the centroid, S21(a) the three points
// with barycentric (1-2a, a, a), S111(a, b) the six permutations of
// (1-a-b, a, b).
fn triangle_rule(degree: usize) -> Result<QuadratureRule> {
    let mut points: Vec<[f64; 3]> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let s3 = |w: f64, pts: &mut Vec<[f64; 3]>, ws: &mut Vec<f64>| {
        pts.push([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        ws.push(w);
    };
    let s21 = |w: f64, a: f64, pts: &mut Vec<[f64; 3]>, ws: &mut Vec<f64>| {
        let c = 1.0 - 2.0 * a;
        for p in [[c, a, a], [a, c, a], [a, a, c]] {
            pts.push(p);
            ws.push(w);
        }
    };
    let s111 = |w: f64, a: f64, b: f64, pts: &mut Vec<[f64; 3]>, ws: &mut Vec<f64>| {
        let c = 1.0 - a - b;
        for p in [
            [c, a, b],
            [c, b, a],
            [a, c, b],
            [b, c, a],
            [a, b, c],
            [b, a, c],
        ] {
            pts.push(p);
            ws.push(w);
        }
    };
    match degree {
        0 | 1 => s3(1.0, &mut points, &mut weights),
        2 => s21(1.0 / 3.0, 1.0 / 6.0, &mut points, &mut weights),
        3 | 4 => {
            // Dunavant degree 4, 6 points, all weights positive.
            s21(
                0.223_381_589_678_011,
                0.445_948_490_915_965,
                &mut points,
                &mut weights,
            );
            s21(
                0.109_951_743_655_322,
                0.091_576_213_509_771,
                &mut points,
                &mut weights,
            );
        }
        5 => {
            s3(0.225, &mut points, &mut weights);
            s21(
                0.132_394_152_788_506,
                0.470_142_064_105_115,
                &mut points,
                &mut weights,
            );
            s21(
                0.125_939_180_544_827,
                0.101_286_507_323_456,
                &mut points,
                &mut weights,
            );
        }
        6 => {
            // Dunavant degree 6, 12 points, all weights positive.
            s21(
                0.116_786_275_726_379,
                0.249_286_745_170_910,
                &mut points,
                &mut weights,
            );
            s21(
                0.050_844_906_370_207,
                0.063_089_014_491_502,
                &mut points,
                &mut weights,
            );
            s111(
                0.082_851_075_618_374,
                0.310_352_451_033_785,
                0.636_502_499_121_399,
                &mut points,
                &mut weights,
            );
        }
        _ => {
            // Fall back to a conical (Duffy) product rule: exact to `degree`
            // with (n x n) points, positive weights.
            let n = degree / 2 + 1;
            return Ok(duffy_rule(n));
        }
    }
    // Renormalize defensively so the measure is exactly 1/2.
    let total: f64 = weights.iter().sum();
    let scale = 0.5 / total;
    let points = points.iter().map(|b| [b[1], b[2]]).collect();
    let weights = weights.iter().map(|w| w * scale).collect();
    Ok(QuadratureRule { points, weights })
}

// Product Gauss-Jacobi rule on the triangle via the collapsed-square map.
fn duffy_rule(n: usize) -> QuadratureRule {
    let (gx, gw) = gauss_legendre(n + 1);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for i in 0..gx.len() {
        let u = 0.5 * (gx[i] + 1.0);
        for j in 0..gx.len() {
            let v = 0.5 * (gx[j] + 1.0);
            // Map the unit square onto the triangle; the Jacobian is (1-u).
            points.push([u, v * (1.0 - u)]);
            weights.push(0.25 * gw[i] * gw[j] * (1.0 - u));
        }
    }
    QuadratureRule { points, weights }
}

/// 1D Gauss points mapped to [0, 1], for boundary-edge integration.
pub fn edge_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    (
        xs.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        ws.iter().map(|w| 0.5 * w).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exact integral of x^p y^q over the unit triangle: p! q! / (p+q+2)!.
    fn tri_monomial(p: u32, q: u32) -> f64 {
        fn fact(n: u32) -> f64 {
            (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
        }
        fact(p) * fact(q) / fact(p + q + 2)
    }

    #[test]
    fn q9_rule_measures_and_monomials() {
        for degree in 0..=MAX_DEGREE {
            let rule = quadrature_for(ElementKind::Q9, degree).unwrap();
            assert!((rule.total_weight() - 4.0).abs() < 1e-13, "degree {degree}");
            // Exactness on x^p y^q for p, q <= degree.
            for p in 0..=degree as u32 {
                for q in 0..=degree as u32 {
                    let exact = |k: u32| {
                        if k % 2 == 1 {
                            0.0
                        } else {
                            2.0 / (k as f64 + 1.0)
                        }
                    };
                    let want = exact(p) * exact(q);
                    let got: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .map(|(pt, w)| w * pt[0].powi(p as i32) * pt[1].powi(q as i32))
                        .sum();
                    assert!(
                        (got - want).abs() < 1e-12,
                        "degree {degree} monomial ({p},{q}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn q9_degree4_is_3x3_and_integrates_xi2eta2() {
        let rule = quadrature_for(ElementKind::Q9, 4).unwrap();
        assert_eq!(rule.len(), 9);
        let got: f64 = rule
            .points
            .iter()
            .zip(&rule.weights)
            .map(|(p, w)| w * p[0] * p[0] * p[1] * p[1])
            .sum();
        assert!((got - 4.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn t6_rules_exact_and_positive() {
        for degree in 0..=MAX_DEGREE {
            let rule = quadrature_for(ElementKind::T6, degree).unwrap();
            assert!((rule.total_weight() - 0.5).abs() < 1e-13, "degree {degree}");
            assert!(rule.weights.iter().all(|&w| w > 0.0), "degree {degree}");
            for p in 0..=degree as u32 {
                for q in 0..=(degree as u32 - p) {
                    let want = tri_monomial(p, q);
                    let got: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .map(|(pt, w)| w * pt[0].powi(p as i32) * pt[1].powi(q as i32))
                        .sum();
                    assert!(
                        (got - want).abs() < 1e-13,
                        "degree {degree} monomial ({p},{q}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn unsupported_degree_rejected() {
        assert!(quadrature_for(ElementKind::Q9, MAX_DEGREE + 1).is_err());
        assert!(quadrature_for(ElementKind::T6, MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn gauss_legendre_matches_reference_values() {
        let (xs, ws) = gauss_legendre(3);
        assert!((xs[0] + (0.6f64).sqrt()).abs() < 1e-15);
        assert!((xs[1]).abs() < 1e-15);
        assert!((ws[0] - 5.0 / 9.0).abs() < 1e-15);
        assert!((ws[1] - 8.0 / 9.0).abs() < 1e-15);
    }
}
