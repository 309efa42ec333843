//! The area Hermitian form, Gram matrices, and numerical inertia.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::curvature::{AngleTuple, CurvatureData};
use crate::error::{Error, Result};
use crate::polyspace::{basis_vectors, Basis, PolygonVector};

/// Relative scale of the default zero-eigenvalue tolerance.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Symmetry residual above which a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// `⟨z, w⟩ = (i/4) Σ_{j=1}^{2n−1} (z_j w̄_{j+1} − z_{j+1} w̄_j)`.
///
/// The sum is the non-cyclic one; on members `z₁ = 0` makes it agree with the
/// cyclic shoelace.
pub fn area_pairing(z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    if z.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: z.len(),
            actual: w.len(),
        });
    }
    let sum: Complex64 = z
        .windows(2)
        .zip(w.windows(2))
        .map(|(zz, ww)| zz[0] * ww[1].conj() - zz[1] * ww[0].conj())
        .sum();
    Ok(Complex64::new(0.0, 0.25) * sum)
}

/// `⟨z, z⟩`, which is real.
pub fn square_norm(z: &PolygonVector) -> f64 {
    area_pairing(z.coords(), z.coords())
        .expect("equal lengths")
        .re
}

/// Gram matrix `G[j][k] = ⟨b_j, b_k⟩`.
pub fn gram_of_vectors(vectors: &[PolygonVector]) -> DMatrix<Complex64> {
    let m = vectors.len();
    DMatrix::from_fn(m, m, |j, k| {
        area_pairing(vectors[j].coords(), vectors[k].coords())
            .expect("basis vectors share a length")
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
    kappa: CurvatureData,
    basis_id: String,
}

impl GramMatrix {
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn kappa(&self) -> &CurvatureData {
        &self.kappa
    }

    pub fn basis_id(&self) -> &str {
        &self.basis_id
    }

    pub fn inertia(&self, tol: Option<f64>) -> Result<Inertia> {
        inertia(&self.entries, tol)
    }
}

/// Gram matrix of the area form on `basis`.
pub fn gram(kappa: &CurvatureData, basis: &Basis) -> Result<GramMatrix> {
    if basis.kappa() != kappa {
        return Err(Error::BasisMismatch);
    }
    Ok(GramMatrix {
        entries: gram_of_vectors(basis.vectors()),
        kappa: kappa.clone(),
        basis_id: "standard".to_string(),
    })
}

/// Counts of positive, negative, and (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub tolerance_used: f64,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn signature(&self) -> crate::Signature {
        crate::Signature::new(self.positive, self.negative)
    }
}

/// `DEFAULT_REL_TOL · max(1, max |G_jk|)`.
pub fn default_tolerance(g: &DMatrix<Complex64>) -> f64 {
    DEFAULT_REL_TOL * max_entry(g).max(1.0)
}

fn max_entry(g: &DMatrix<Complex64>) -> f64 {
    g.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Hermitian symmetry residual `max |G_jk − conj(G_kj)|`, relative to `max(1, max|G|)`.
pub fn hermitian_residual(g: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..g.nrows() {
        for k in 0..g.ncols() {
            worst = worst.max((g[(j, k)] - g[(k, j)].conj()).norm());
        }
    }
    worst / max_entry(g).max(1.0)
}

/// Inertia of a Hermitian matrix.
///
/// `G = A + iB` is embedded as the real symmetric `[[A, −B], [B, A]]`, whose
/// spectrum is that of `G` with every multiplicity doubled; the counts are
/// halved. An odd count means some eigenvalue pair straddles the tolerance and
/// is reported as an error.
pub fn inertia(g: &DMatrix<Complex64>, tol: Option<f64>) -> Result<Inertia> {
    if !g.is_square() {
        return Err(Error::LengthMismatch {
            expected: g.nrows(),
            actual: g.ncols(),
        });
    }
    let residual = hermitian_residual(g);
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian(residual));
    }
    let tol = tol.unwrap_or_else(|| default_tolerance(g));
    let m = g.nrows();
    let embedded = DMatrix::from_fn(2 * m, 2 * m, |r, c| {
        // Average with the transpose so the solver sees an exactly symmetric input.
        let entry = |r: usize, c: usize| {
            let z = g[(r % m, c % m)];
            match (r < m, c < m) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        };
        0.5 * (entry(r, c) + entry(c, r))
    });
    let eigenvalues = SymmetricEigen::new(embedded).eigenvalues;
    let positive = eigenvalues.iter().filter(|&&l| l > tol).count();
    let negative = eigenvalues.iter().filter(|&&l| l < -tol).count();
    let zero = 2 * m - positive - negative;
    for count in [positive, negative, zero] {
        if count % 2 == 1 {
            return Err(Error::OddInertia(count));
        }
    }
    Ok(Inertia {
        positive: positive / 2,
        negative: negative / 2,
        zero: zero / 2,
        tolerance_used: tol,
    })
}

/// Inertia of the area form on the standard basis of P(κ).
pub fn numeric_signature(kappa: &CurvatureData, tol: Option<f64>) -> Result<Inertia> {
    numeric_signature_of(kappa, tol)
}

/// As [`numeric_signature`], for any tuple with nonzero pivots (including
/// generalized tuples with entries beyond 2π).
pub fn numeric_signature_of<K: AngleTuple + ?Sized>(
    kappa: &K,
    tol: Option<f64>,
) -> Result<Inertia> {
    let basis = basis_vectors(kappa)?;
    inertia(&gram_of_vectors(&basis), tol)
}

/// Ratio of extreme singular values of the `2n × (n−1)` coordinate matrix.
pub fn basis_condition(vectors: &[PolygonVector]) -> f64 {
    let Some(first) = vectors.first() else {
        return 1.0;
    };
    let rows = first.coords().len();
    let m = DMatrix::from_fn(rows, vectors.len(), |r, c| vectors[c].coords()[r]);
    let sv = m.singular_values();
    sv.max() / sv.min()
}
