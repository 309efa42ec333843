//! Structural maps between polygon spaces and the recursive signature.
//!
//! * cut-glue: the isometry P(κ) → P(κ(σ)) for an adjacent transposition σ = (i, i+1),
//!   obtained by cutting along `[z_{2i}, z_{2i+3}]` and rotating the cut-off piece
//!   by `−κ_i` about `z_{2i}`;
//! * reversal: the anti-isometry P(κ) → P(2π−κ_n, …, 2π−κ₁);
//! * the special vector `X` and the embedding of P(κ₁+κ₂, κ₃, …) as the subspace
//!   `{z₂ = z₄}`, which together split P(κ) orthogonally.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::curvature::{
    closed_form_signature, epsilon, Angle, AngleTuple, CurvatureData, PartialSumLedger, Signature,
};
use crate::error::{Error, Result};
use crate::polyspace::{basis_vectors, membership_residual, PolygonVector, MEMBERSHIP_TOL};

/// A tuple with entries in `(0, ∞)`, none a multiple of 2π.
///
/// These arise from merging two entries; P(κ) only depends on `e^{iκ_i}`, so the
/// polygon-space machinery applies unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedCurvatureData {
    angles: Vec<Angle>,
}

impl GeneralizedCurvatureData {
    pub fn new(angles: Vec<Angle>) -> Result<Self> {
        if let Some(bad) = angles
            .iter()
            .find(|a| !a.is_positive() || a.is_two_pi_multiple())
        {
            return Err(Error::GeneralizedDomain(bad.to_string()));
        }
        Ok(GeneralizedCurvatureData { angles })
    }

    /// Every entry reduced into `(0, 2π)`. Spans the same polygon space.
    pub fn reduced(&self) -> Result<CurvatureData> {
        CurvatureData::new(self.angles.iter().map(Angle::reduce_mod_two_pi).collect())
    }
}

impl AngleTuple for GeneralizedCurvatureData {
    fn angles(&self) -> &[Angle] {
        &self.angles
    }
}

impl From<CurvatureData> for GeneralizedCurvatureData {
    fn from(kappa: CurvatureData) -> Self {
        GeneralizedCurvatureData {
            angles: kappa.into_angles(),
        }
    }
}

/// `(κ₁+κ₂, κ₃, …, κ_n)`.
pub fn merged_kappa<K: AngleTuple + ?Sized>(kappa: &K) -> Result<GeneralizedCurvatureData> {
    let a = kappa.angles();
    if a.len() < 2 {
        return Err(Error::TooShort(a.len()));
    }
    let mut merged = Vec::with_capacity(a.len() - 1);
    merged.push(a[0] + a[1]);
    merged.extend_from_slice(&a[2..]);
    GeneralizedCurvatureData::new(merged)
        .map_err(|_| Error::Hypothesis("κ₁ + κ₂ must not be a multiple of 2π".into()))
}

/// A linear map `ℂ^{2n} → ℂ^{2n}` between polygon spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapMatrix {
    pub matrix: DMatrix<Complex64>,
    pub source_kappa: CurvatureData,
    pub target_kappa: CurvatureData,
}

impl LinearMapMatrix {
    pub fn apply(&self, z: &PolygonVector) -> PolygonVector {
        let v = nalgebra::DVector::from_column_slice(z.coords());
        PolygonVector::from_coords((&self.matrix * v).iter().copied().collect())
    }

    /// `self ∘ first`. The target of `first` must be the source of `self`.
    pub fn after(&self, first: &LinearMapMatrix) -> Result<LinearMapMatrix> {
        if first.target_kappa != self.source_kappa {
            return Err(Error::BasisMismatch);
        }
        Ok(LinearMapMatrix {
            matrix: &self.matrix * &first.matrix,
            source_kappa: first.source_kappa.clone(),
            target_kappa: self.target_kappa.clone(),
        })
    }
}

fn require_member<K: AngleTuple + ?Sized>(kappa: &K, z: &PolygonVector) -> Result<()> {
    let residual = membership_residual(kappa, z.coords())?;
    if residual > MEMBERSHIP_TOL {
        return Err(Error::NotMember(residual));
    }
    Ok(())
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    Ok(())
}

fn swapped(kappa: &CurvatureData, i: usize) -> CurvatureData {
    let mut angles = kappa.angles().to_vec();
    angles.swap(i - 1, i);
    CurvatureData::new(angles).expect("swapping entries keeps a valid tuple")
}

/// Coordinates of the cut-glue image; `turn = e^{−iκ_i}`. One-based `i`.
fn cut_glue_coords(turn: Complex64, i: usize, z: &[Complex64]) -> Vec<Complex64> {
    let m = z.len();
    let at = |j: usize| z[(j - 1) % m];
    let pivot = at(2 * i);
    let mut out = z.to_vec();
    out[2 * i - 1] = pivot + turn * (at(2 * i + 2) - pivot);
    out[2 * i] = pivot + turn * (at(2 * i + 3) - pivot);
    out[2 * i + 1] = pivot;
    out
}

/// Inverse of [`cut_glue_coords`] on members; `turn = e^{iκ_i}` for the original κ_i.
fn uncut_glue_coords(turn: Complex64, i: usize, z: &[Complex64]) -> Vec<Complex64> {
    let pivot = z[2 * i + 1];
    let mut out = z.to_vec();
    out[2 * i - 1] = pivot;
    out[2 * i] = pivot + turn * (z[2 * i - 2] - pivot);
    out[2 * i + 1] = pivot + turn * (z[2 * i - 1] - pivot);
    out
}

fn matrix_of(m: usize, f: impl Fn(&[Complex64]) -> Vec<Complex64>) -> DMatrix<Complex64> {
    let mut matrix = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    for col in 0..m {
        let mut e = vec![Complex64::new(0.0, 0.0); m];
        e[col] = Complex64::new(1.0, 0.0);
        matrix.set_column(col, &nalgebra::DVector::from_vec(f(&e)));
    }
    matrix
}

/// Cut-glue at the one-based index `i`, mapping `z ∈ P(κ)` into P(κ(σ)), σ = (i, i+1).
///
/// Returns the target tuple together with the image:
/// `z'_{2i} = z_{2i} + e^{−iκ_i}(z_{2i+2} − z_{2i})`,
/// `z'_{2i+1} = z_{2i} + e^{−iκ_i}(z_{2i+3} − z_{2i})` (with `z_{2n+1} = z₁`),
/// `z'_{2i+2} = z_{2i}`, all other coordinates unchanged.
pub fn cut_glue(
    kappa: &CurvatureData,
    i: usize,
    z: &PolygonVector,
) -> Result<(CurvatureData, PolygonVector)> {
    check_index(i, kappa.n())?;
    require_member(kappa, z)?;
    let turn = kappa.angles()[i - 1].unit().conj();
    Ok((
        swapped(kappa, i),
        PolygonVector::from_coords(cut_glue_coords(turn, i, z.coords())),
    ))
}

/// Undo [`cut_glue`]: maps `z ∈ P(κ(σ))` back into P(κ). `kappa_sigma` is the
/// tuple after the swap.
pub fn uncut_glue(
    kappa_sigma: &CurvatureData,
    i: usize,
    z: &PolygonVector,
) -> Result<(CurvatureData, PolygonVector)> {
    check_index(i, kappa_sigma.n())?;
    require_member(kappa_sigma, z)?;
    let turn = kappa_sigma.angles()[i].unit();
    Ok((
        swapped(kappa_sigma, i),
        PolygonVector::from_coords(uncut_glue_coords(turn, i, z.coords())),
    ))
}

/// The `2n × 2n` matrix of [`cut_glue`]. It is invertible as a map
/// P(κ) → P(κ(σ)); see [`uncut_glue_matrix`].
pub fn cut_glue_matrix(kappa: &CurvatureData, i: usize) -> Result<LinearMapMatrix> {
    check_index(i, kappa.n())?;
    let turn = kappa.angles()[i - 1].unit().conj();
    Ok(LinearMapMatrix {
        matrix: matrix_of(2 * kappa.n(), |e| cut_glue_coords(turn, i, e)),
        source_kappa: kappa.clone(),
        target_kappa: swapped(kappa, i),
    })
}

/// The matrix of [`uncut_glue`], P(κ(σ)) → P(κ).
pub fn uncut_glue_matrix(kappa_sigma: &CurvatureData, i: usize) -> Result<LinearMapMatrix> {
    check_index(i, kappa_sigma.n())?;
    let turn = kappa_sigma.angles()[i].unit();
    Ok(LinearMapMatrix {
        matrix: matrix_of(2 * kappa_sigma.n(), |e| uncut_glue_coords(turn, i, e)),
        source_kappa: kappa_sigma.clone(),
        target_kappa: swapped(kappa_sigma, i),
    })
}

/// Adjacent transpositions (one-based indices, applied left to right) carrying
/// κ to κ(σ). `sigma[k-1] = σ(k)`.
pub fn transposition_path(sigma: &[usize]) -> Result<Vec<usize>> {
    crate::curvature::check_permutation(sigma, sigma.len())?;
    let mut current: Vec<usize> = (1..=sigma.len()).collect();
    let mut path = Vec::new();
    for (p, &wanted) in sigma.iter().enumerate() {
        let mut q = current
            .iter()
            .position(|&x| x == wanted)
            .expect("bijection");
        while q > p {
            current.swap(q - 1, q);
            path.push(q);
            q -= 1;
        }
    }
    Ok(path)
}

/// Chain cut-glue maps along [`transposition_path`]: P(κ) → P(κ(σ)).
pub fn permute_polygon(
    kappa: &CurvatureData,
    sigma: &[usize],
    z: &PolygonVector,
) -> Result<(CurvatureData, PolygonVector)> {
    crate::curvature::check_permutation(sigma, kappa.n())?;
    let mut state = (kappa.clone(), z.clone());
    for i in transposition_path(sigma)? {
        state = cut_glue(&state.0, i, &state.1)?;
    }
    Ok(state)
}

/// `(2π − κ_n, …, 2π − κ₁)`.
pub fn reversed_kappa(kappa: &CurvatureData) -> CurvatureData {
    let angles = kappa.angles().iter().rev().map(Angle::complement).collect();
    CurvatureData::new(angles).expect("2π − κ stays in (0, 2π)")
}

/// `(0, z_{2n}, z_{2n−1}, …, z₂)`, an anti-isometry into P(2π−κ_n, …, 2π−κ₁).
pub fn reverse(kappa: &CurvatureData, z: &PolygonVector) -> Result<(CurvatureData, PolygonVector)> {
    require_member(kappa, z)?;
    let c = z.coords();
    let mut out = Vec::with_capacity(c.len());
    out.push(c[0]);
    out.extend(c[1..].iter().rev());
    Ok((reversed_kappa(kappa), PolygonVector::from_coords(out)))
}

/// `X = (0, −1, −1 + e^{iκ₁}, x, 0, …, 0)` with
/// `x = (e^{i(κ₁+κ₂)} − e^{iκ₂}) / (e^{iκ₂} − 1)`.
///
/// Requires `n > 2` and `κ₁ + κ₂ ∉ 2πℤ`.
pub fn special_x<K: AngleTuple + ?Sized>(kappa: &K) -> Result<PolygonVector> {
    let a = kappa.angles();
    if a.len() <= 2 {
        return Err(Error::Hypothesis("the special vector needs n > 2".into()));
    }
    if (a[0] + a[1]).is_two_pi_multiple() {
        return Err(Error::Hypothesis(
            "κ₁ + κ₂ must not be a multiple of 2π".into(),
        ));
    }
    if a[1].is_two_pi_multiple() {
        return Err(Error::DegenerateAngle(2));
    }
    let e1 = a[0].unit();
    let e2 = a[1].unit();
    let e12 = (a[0] + a[1]).unit();
    let one = Complex64::new(1.0, 0.0);
    let x = (e12 - e2) / (e2 - one);
    let mut coords = vec![Complex64::new(0.0, 0.0); 2 * a.len()];
    coords[1] = -one;
    coords[2] = e1 - one;
    coords[3] = x;
    Ok(PolygonVector::from_coords(coords))
}

/// Embed `w ∈ P(κ₁+κ₂, κ₃, …, κ_n)` into P(κ) as
/// `(0, w₂, w₂(1 − e^{iκ₁}), w₂, w₃, …, w_{2n−2})`, whose `z₂ = z₄`.
pub fn embed_merged<K: AngleTuple + ?Sized>(kappa: &K, w: &PolygonVector) -> Result<PolygonVector> {
    let merged = merged_kappa(kappa)?;
    require_member(&merged, w)?;
    let a = kappa.angles();
    let wc = w.coords();
    let w2 = wc[1];
    let mut coords = Vec::with_capacity(2 * a.len());
    coords.push(Complex64::new(0.0, 0.0));
    coords.push(w2);
    coords.push(w2 * (Complex64::new(1.0, 0.0) - a[0].unit()));
    coords.push(w2);
    coords.extend_from_slice(&wc[2..]);
    Ok(PolygonVector::from_coords(coords))
}

/// `X` together with the embedded standard basis of the merged space.
pub fn decomposition<K: AngleTuple + ?Sized>(
    kappa: &K,
) -> Result<(PolygonVector, Vec<PolygonVector>)> {
    let x = special_x(kappa)?;
    let merged = merged_kappa(kappa)?;
    let embedded = basis_vectors(&merged)?
        .iter()
        .map(|w| embed_merged(kappa, w))
        .collect::<Result<Vec<_>>>()?;
    Ok((x, embedded))
}

/// n = 2 signature by comparing `κ₁ + κ₂` with 2π.
fn pair_signature(pair: &[Angle]) -> Signature {
    let ledger = PartialSumLedger::new(pair);
    if ledger.total_is_2pi_multiple {
        Signature::new(0, 0)
    } else if ledger.floors[1] >= 1 {
        Signature::new(1, 0)
    } else {
        Signature::new(0, 1)
    }
}

/// Signature by repeated orthogonal splitting.
///
/// Picks the first pair `(i, j)` (lexicographically) with `κ_i + κ_j ∉ 2πℤ`,
/// moves it to the front, and adds the pair's signature to that of the merged
/// tuple. The merged entry is reduced into `(0, 2π)`, which leaves the polygon
/// space unchanged. Tuples with no admissible pair are all ≡ π and fall back to
/// `(p(κ), q(κ))`.
pub fn recursive_signature(kappa: &CurvatureData) -> Result<Signature> {
    recurse(kappa.angles().to_vec())
}

fn recurse(angles: Vec<Angle>) -> Result<Signature> {
    let n = angles.len();
    if n == 2 {
        return Ok(pair_signature(&angles));
    }
    let admissible = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .find(|&(i, j)| !(angles[i] + angles[j]).is_two_pi_multiple());
    let Some((i, j)) = admissible else {
        return closed_form_signature(&angles);
    };
    let pair = [angles[i], angles[j]];
    let mut rest = Vec::with_capacity(n - 1);
    rest.push((angles[i] + angles[j]).reduce_mod_two_pi());
    rest.extend(
        angles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, a)| *a),
    );
    debug_assert_eq!(epsilon(&rest), epsilon(&angles));
    Ok(closed_form_signature(&pair[..])? + recurse(rest)?)
}

/// Signature for `κ = (π, …, π)` of length `n`: `(k, k)` for `n = 2k+1`,
/// `(k−1, k−1)` for `n = 2k`.
pub fn allpi_signature(n: usize) -> Result<Signature> {
    if n < 2 {
        return Err(Error::TooShort(n));
    }
    let k = n / 2;
    Ok(if n % 2 == 1 {
        Signature::new(k, k)
    } else {
        Signature::new(k - 1, k - 1)
    })
}
