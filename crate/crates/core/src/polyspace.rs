//! The polygon space P(κ) ⊂ ℂ^{2n} and its realization as plane polygons.
//!
//! Odd coordinates `z₃, z₅, …, z_{2n−1}` are the free parameters; each even
//! coordinate is solved from its cone constraint with pivot `1 − e^{iκ_i}`.
//! The constraint for `i = n` closes the chain through `z_{2n+1} := z₁ = 0`.

use nalgebra::Point2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::curvature::{AngleTuple, CurvatureData};
use crate::error::{Error, Result};

/// Relative tolerance used when constructing and validating members.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

const PIVOT_TOL: f64 = 1e-14;
const COLLINEAR_TOL: f64 = 1e-12;

/// A point `(z₁, …, z_{2n})` of P(κ).
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonVector {
    coords: Vec<Complex64>,
}

impl PolygonVector {
    /// Wrap `coords` after checking membership in P(κ) at [`MEMBERSHIP_TOL`].
    pub fn new<K: AngleTuple + ?Sized>(kappa: &K, coords: Vec<Complex64>) -> Result<Self> {
        let residual = membership_residual(kappa, &coords)?;
        if residual > MEMBERSHIP_TOL {
            return Err(Error::NotMember(residual));
        }
        Ok(PolygonVector { coords })
    }

    pub(crate) fn from_coords(coords: Vec<Complex64>) -> Self {
        PolygonVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        PolygonVector {
            coords: vec![Complex64::new(0.0, 0.0); 2 * n],
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Number of cone points `n`.
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    /// `Σ c_j v_j`. All vectors must have the same length.
    pub fn combination(vectors: &[PolygonVector], coeffs: &[Complex64]) -> Result<Self> {
        if vectors.len() != coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: vectors.len(),
                actual: coeffs.len(),
            });
        }
        let len = vectors.first().map_or(0, |v| v.coords.len());
        let mut coords = vec![Complex64::new(0.0, 0.0); len];
        for (v, c) in vectors.iter().zip(coeffs) {
            if v.coords.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    actual: v.coords.len(),
                });
            }
            for (acc, z) in coords.iter_mut().zip(&v.coords) {
                *acc += c * z;
            }
        }
        Ok(PolygonVector { coords })
    }

    /// Edge-length defect at even vertices, `max_i ||z_{2i−1}−z_{2i}| − |z_{2i+1}−z_{2i}||`.
    pub fn edge_length_defect(&self) -> f64 {
        let m = self.coords.len();
        (1..=self.n())
            .map(|i| {
                let apex = self.coords[2 * i - 1];
                let before = self.coords[2 * i - 2];
                let after = self.coords[(2 * i) % m];
                ((before - apex).norm() - (after - apex).norm()).abs()
            })
            .fold(0.0, f64::max)
    }
}

fn max_modulus(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest constraint residual of `z`, relative to `1 + max|z_j|`. The pin
/// `z₁ = 0` counts as one of the residuals.
pub fn membership_residual<K: AngleTuple + ?Sized>(kappa: &K, z: &[Complex64]) -> Result<f64> {
    let n = kappa.len();
    if z.len() != 2 * n {
        return Err(Error::LengthMismatch {
            expected: 2 * n,
            actual: z.len(),
        });
    }
    let scale = 1.0 + max_modulus(z);
    let worst = kappa
        .rotations()
        .iter()
        .enumerate()
        .map(|(k, rot)| {
            let i = k + 1;
            let before = z[2 * i - 2];
            let apex = z[2 * i - 1];
            let after = z[(2 * i) % (2 * n)];
            (rot * (before - apex) - (after - apex)).norm()
        })
        .fold(z[0].norm(), f64::max);
    Ok(worst / scale)
}

/// Membership test: `z₁ = 0` and every cone constraint hold to `tol·(1 + max|z_j|)`.
pub fn is_member<K: AngleTuple + ?Sized>(kappa: &K, z: &[Complex64], tol: f64) -> Result<bool> {
    Ok(membership_residual(kappa, z)? <= tol)
}

/// The unique member with odd coordinates `(z₁, z₃, …, z_{2n−1})`, via
/// `z_{2i} = (z_{2i+1} − e^{iκ_i} z_{2i−1}) / (1 − e^{iκ_i})`.
pub fn solve_even_coords<K: AngleTuple + ?Sized>(
    kappa: &K,
    odd: &[Complex64],
) -> Result<PolygonVector> {
    let n = kappa.len();
    if odd.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: odd.len(),
        });
    }
    if odd[0] != Complex64::new(0.0, 0.0) {
        return Err(Error::Hypothesis(
            "first odd coordinate z₁ must be 0".into(),
        ));
    }
    let mut coords = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (k, z) in odd.iter().enumerate() {
        coords[2 * k] = *z;
    }
    for (k, rot) in kappa.rotations().into_iter().enumerate() {
        let pivot = Complex64::new(1.0, 0.0) - rot;
        if pivot.norm() <= PIVOT_TOL {
            return Err(Error::DegenerateAngle(k + 1));
        }
        let before = odd[k];
        let after = odd[(k + 1) % n];
        coords[2 * k + 1] = (after - rot * before) / pivot;
    }
    Ok(PolygonVector { coords })
}

/// A basis of P(κ) together with the tuple it spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<PolygonVector>,
    kappa: CurvatureData,
}

impl Basis {
    pub fn vectors(&self) -> &[PolygonVector] {
        &self.vectors
    }

    pub fn kappa(&self) -> &CurvatureData {
        &self.kappa
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `Σ c_j b_j`.
    pub fn combine(&self, coeffs: &[Complex64]) -> Result<PolygonVector> {
        PolygonVector::combination(&self.vectors, coeffs)
    }
}

/// Basis vectors `b_j` (`j = 2..n`) with `z_{2j−1} = 1` and every other odd
/// coordinate zero. Works for any tuple whose pivots are nonzero.
pub fn basis_vectors<K: AngleTuple + ?Sized>(kappa: &K) -> Result<Vec<PolygonVector>> {
    let n = kappa.len();
    (1..n)
        .map(|j| {
            let mut odd = vec![Complex64::new(0.0, 0.0); n];
            odd[j] = Complex64::new(1.0, 0.0);
            solve_even_coords(kappa, &odd)
        })
        .collect()
}

/// The standard basis of P(κ): `n − 1` vectors.
pub fn standard_basis(kappa: &CurvatureData) -> Basis {
    let vectors = basis_vectors(kappa).expect("pivots 1 − e^{iκ} are nonzero for κ in (0, 2π)");
    Basis {
        vectors,
        kappa: kappa.clone(),
    }
}

/// Complex standard normal coefficients (`E|c|² = 1`) from a seeded ChaCha8 stream.
pub fn random_coefficients(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    (0..count)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect()
}

/// A random member: standard-normal coefficients over the standard basis.
pub fn random_element<K: AngleTuple + ?Sized>(kappa: &K, seed: u64) -> Result<PolygonVector> {
    let basis = basis_vectors(kappa)?;
    PolygonVector::combination(&basis, &random_coefficients(basis.len(), seed))
}

/// A member viewed as a closed plane polygon `z₁ → z₂ → … → z_{2n} → z₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonRealization {
    pub vertices: Vec<Point2<f64>>,
    /// Signed shoelace area; positive for counter-clockwise traversal.
    pub orientation_area: f64,
    pub simple: bool,
}

pub fn realize(z: &PolygonVector) -> PolygonRealization {
    let vertices: Vec<Point2<f64>> = z.coords.iter().map(|c| Point2::new(c.re, c.im)).collect();
    PolygonRealization {
        orientation_area: shoelace_area(&vertices),
        simple: is_simple(&vertices),
        vertices,
    }
}

/// Signed area of the closed chain through `vertices`.
pub fn shoelace_area(vertices: &[Point2<f64>]) -> f64 {
    let m = vertices.len();
    0.5 * (0..m)
        .map(|k| {
            let a = vertices[k];
            let b = vertices[(k + 1) % m];
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
}

/// Sign of the turn `a → b → c` from the normalized cross product; `0` when the
/// sine of the angle at `a` is within the collinearity tolerance.
fn orientation(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> i8 {
    let ab = b - a;
    let ac = c - a;
    let norms = ab.norm() * ac.norm();
    if norms == 0.0 {
        return 0;
    }
    let s = (ab.x * ac.y - ab.y * ac.x) / norms;
    if s.abs() <= COLLINEAR_TOL {
        0
    } else if s > 0.0 {
        1
    } else {
        -1
    }
}

/// `p` lies in the bounding box of segment `[a, b]` (used once collinearity is known).
fn within_box(a: Point2<f64>, b: Point2<f64>, p: Point2<f64>) -> bool {
    let slack = COLLINEAR_TOL * (1.0 + a.coords.amax().max(b.coords.amax()));
    p.x >= a.x.min(b.x) - slack
        && p.x <= a.x.max(b.x) + slack
        && p.y >= a.y.min(b.y) - slack
        && p.y <= a.y.max(b.y) + slack
}

/// Closed segments `[p1, p2]` and `[p3, p4]` share at least one point.
/// Grazing contacts count as intersections.
pub fn segments_intersect(
    p1: Point2<f64>,
    p2: Point2<f64>,
    p3: Point2<f64>,
    p4: Point2<f64>,
) -> bool {
    let d1 = orientation(p3, p4, p1);
    let d2 = orientation(p3, p4, p2);
    let d3 = orientation(p1, p2, p3);
    let d4 = orientation(p1, p2, p4);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within_box(p3, p4, p1))
        || (d2 == 0 && within_box(p3, p4, p2))
        || (d3 == 0 && within_box(p1, p2, p3))
        || (d4 == 0 && within_box(p1, p2, p4))
}

/// Simple-polygon test by pairwise edge comparison, `O(m²)`.
///
/// Non-adjacent edges must be disjoint; adjacent edges may only share their
/// common endpoint (no fold-back along a line). Zero-length edges make the
/// polygon non-simple.
pub fn is_simple(vertices: &[Point2<f64>]) -> bool {
    let m = vertices.len();
    if m < 3 {
        return false;
    }
    let edge = |k: usize| (vertices[k], vertices[(k + 1) % m]);
    if (0..m).any(|k| {
        let (a, b) = edge(k);
        a == b
    }) {
        return false;
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if adjacent {
                // Shared vertex s, free ends u (edge i side) and v (edge j side).
                let (s, u, v) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orientation(s, u, v) == 0 && (u - s).dot(&(v - s)) > 0.0 {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{Angle, CurvatureData};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn half_pi_pair() -> CurvatureData {
        CurvatureData::from_rational_pi(&[1, 1], 2).unwrap()
    }

    #[test]
    fn solve_examples() {
        let z = solve_even_coords(&half_pi_pair(), &[c(0., 0.), c(1., 0.)]).unwrap();
        assert!(close(
            z.coords(),
            &[c(0., 0.), c(0.5, 0.5), c(1., 0.), c(0.5, -0.5)],
            1e-15
        ));
        let k = CurvatureData::all_pi(2).unwrap();
        let z = solve_even_coords(&k, &[c(0., 0.), c(1., 0.)]).unwrap();
        assert!(close(
            z.coords(),
            &[c(0., 0.), c(0.5, 0.), c(1., 0.), c(0.5, 0.)],
            1e-15
        ));
        let k = CurvatureData::from_rational_pi(&[1, 3, 5, 7], 4).unwrap();
        let z = solve_even_coords(&k, &[c(0., 0.); 4]).unwrap();
        assert_eq!(z, PolygonVector::zero(4));
    }

    #[test]
    fn solve_rejects_bad_input() {
        let k = half_pi_pair();
        assert!(solve_even_coords(&k, &[c(0., 0.)]).is_err());
        assert!(solve_even_coords(&k, &[c(1., 0.), c(0., 0.)]).is_err());
        let degenerate = vec![
            Angle::rational_pi(1, 2).unwrap(),
            Angle::rational_pi(2, 1).unwrap(),
        ];
        assert_eq!(
            solve_even_coords(&degenerate, &[c(0., 0.), c(1., 0.)]),
            Err(Error::DegenerateAngle(2))
        );
    }

    #[test]
    fn standard_basis_examples() {
        let b = standard_basis(&half_pi_pair());
        assert_eq!(b.len(), 1);
        assert!(close(
            b.vectors()[0].coords(),
            &[c(0., 0.), c(0.5, 0.5), c(1., 0.), c(0.5, -0.5)],
            1e-15
        ));
        let b = standard_basis(&CurvatureData::all_pi(3).unwrap());
        assert_eq!(b.len(), 2);
        assert!(close(
            b.vectors()[0].coords(),
            &[
                c(0., 0.),
                c(0.5, 0.),
                c(1., 0.),
                c(0.5, 0.),
                c(0., 0.),
                c(0., 0.)
            ],
            1e-15
        ));
        let k = CurvatureData::from_rational_pi(&[1, 2, 3, 1, 1], 3).unwrap();
        assert_eq!(standard_basis(&k).len(), 4);
    }

    #[test]
    fn membership_examples() {
        let k = half_pi_pair();
        let member = [c(0., 0.), c(0.5, 0.5), c(1., 0.), c(0.5, -0.5)];
        assert!(is_member(&k, &member, 1e-10).unwrap());
        let outsider = [c(0., 0.), c(1., 0.), c(1., 0.), c(1., 0.)];
        assert!(!is_member(&k, &outsider, 1e-10).unwrap());
        assert!(is_member(&k, &[c(0., 0.); 4], 1e-10).unwrap());
        assert!(is_member(&k, &[c(0., 0.); 3], 1e-10).is_err());
        assert!(PolygonVector::new(&k, outsider.to_vec()).is_err());
    }

    #[test]
    fn random_element_is_deterministic_member() {
        let k = CurvatureData::from_rational_pi(&[1, 7, 3, 5, 2], 4).unwrap();
        let a = random_element(&k, 42).unwrap();
        let b = random_element(&k, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_element(&k, 43).unwrap());

        let k2 = half_pi_pair();
        let z = random_element(&k2, 5).unwrap();
        let basis = standard_basis(&k2);
        let b = &basis.vectors()[0];
        let ratio = z.coords()[2] / b.coords()[2];
        let scaled: Vec<_> = b.coords().iter().map(|x| x * ratio).collect();
        assert!(close(z.coords(), &scaled, 1e-14));
    }

    #[test]
    fn random_elements_are_members_with_symmetric_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..1000u64 {
            let n = rng.random_range(2..=10);
            let values: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..6.2)).collect();
            let k = CurvatureData::from_radians(&values).unwrap();
            let z = random_element(&k, seed).unwrap();
            assert!(is_member(&k, z.coords(), MEMBERSHIP_TOL).unwrap());
            let scale = 1.0 + max_modulus(z.coords());
            assert!(z.edge_length_defect() <= 1e-10 * scale);
        }
    }

    #[test]
    fn basis_has_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let n = rng.random_range(2..=10);
            let numers: Vec<i64> = (0..n).map(|_| rng.random_range(1..48)).collect();
            let k = CurvatureData::from_rational_pi(&numers, 24).unwrap();
            let b = standard_basis(&k);
            assert_eq!(b.len(), n - 1);
            let m = nalgebra::DMatrix::from_fn(2 * n, n - 1, |r, col| b.vectors()[col].coords()[r]);
            let sv = m.singular_values();
            let (lo, hi) = (sv.min(), sv.max());
            assert!(lo > 1e-8 * hi, "rank deficient basis for {k:?}");
        }
    }

    fn octagon() -> Vec<Complex64> {
        (0..8)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / 4.0) - 1.0)
            .collect()
    }

    #[test]
    fn realize_octagon() {
        // Counter-clockwise traversal makes the turn from z_{2i-1}-z_{2i} to
        // z_{2i+1}-z_{2i} equal to 2π minus the interior angle: 5π/4.
        let k = CurvatureData::from_rational_pi(&[5, 5, 5, 5], 4).unwrap();
        let z = PolygonVector::new(&k, octagon()).unwrap();
        let r = realize(&z);
        assert!(r.simple);
        assert_relative_eq!(r.orientation_area, 2.0 * 2f64.sqrt(), max_relative = 1e-12);

        let cw = CurvatureData::from_rational_pi(&[3, 3, 3, 3], 4).unwrap();
        assert!(PolygonVector::new(&cw, octagon()).is_err());
    }

    #[test]
    fn realize_degenerate_and_zero() {
        let k = CurvatureData::all_pi(2).unwrap();
        let z = PolygonVector::new(&k, vec![c(0., 0.), c(0.5, 0.), c(1., 0.), c(0.5, 0.)]).unwrap();
        let r = realize(&z);
        assert!(!r.simple);
        assert_eq!(r.orientation_area, 0.0);
        assert_eq!(realize(&PolygonVector::zero(3)).orientation_area, 0.0);
    }

    #[test]
    fn simplicity_examples() {
        let p = |x: f64, y: f64| Point2::new(x, y);
        assert!(is_simple(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]));
        assert!(!is_simple(&[p(0., 0.), p(1., 1.), p(1., 0.), p(0., 1.)]));
        assert!(!is_simple(&[p(0., 0.), p(0.5, 0.), p(1., 0.), p(0.5, 0.)]));
        // Vertex touching a non-adjacent edge.
        assert!(!is_simple(&[p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)]));
        // Concave but simple.
        assert!(is_simple(&[
            p(0., 0.),
            p(2., 0.),
            p(1., 0.5),
            p(2., 1.),
            p(0., 1.)
        ]));
        assert!(!is_simple(&[p(0., 0.), p(1., 0.)]));
    }
}
