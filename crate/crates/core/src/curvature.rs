//! Curvature tuples and the combinatorial quantities ε(κ), q(κ), p(κ).
//!
//! Angles are held either as exact rational multiples of π or as raw radians.
//! The rational path uses integer arithmetic throughout, so tuples whose partial
//! sums land exactly on multiples of 2π (the all-π family, for instance) give
//! deterministic floors. Radian input snaps `Σ/2π` to the nearest integer when it
//! is within [`SNAP_TOLERANCE`].

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Add;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Snapping tolerance applied to `Σκ/2π` for radian input.
pub const SNAP_TOLERANCE: f64 = 1e-12;

/// A curvature angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `r·π` radians, `r` in lowest terms with a positive denominator.
    RationalPi(Ratio<i64>),
    /// A raw radian value.
    Radians(f64),
}

impl Angle {
    pub fn rational_pi(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Syntax {
                token: format!("{numer}/{denom}"),
                reason: "zero denominator".into(),
            });
        }
        // Ratio::new reduces and normalizes the sign onto the numerator.
        Ok(Angle::RationalPi(Ratio::new(numer, denom)))
    }

    pub fn radians(x: f64) -> Self {
        Angle::Radians(x)
    }

    /// The all-π building block.
    pub fn pi() -> Self {
        Angle::RationalPi(Ratio::from_integer(1))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Angle::RationalPi(_))
    }

    pub fn to_radians(&self) -> f64 {
        match *self {
            Angle::RationalPi(r) => PI * ratio_to_f64(r),
            Angle::Radians(x) => x,
        }
    }

    /// `e^{iκ}`. Rational angles are reduced modulo 2 (in units of π) before the
    /// trigonometric evaluation, and quarter turns are returned exactly.
    pub fn unit(&self) -> Complex64 {
        match *self {
            Angle::RationalPi(r) => {
                let two = Ratio::from_integer(2);
                let reduced = r - (r / two).floor() * two;
                if *reduced.denom() <= 2 {
                    match (*reduced.numer(), *reduced.denom()) {
                        (0, _) => return Complex64::new(1.0, 0.0),
                        (1, 2) => return Complex64::new(0.0, 1.0),
                        (1, 1) => return Complex64::new(-1.0, 0.0),
                        (3, 2) => return Complex64::new(0.0, -1.0),
                        _ => {}
                    }
                }
                Complex64::from_polar(1.0, PI * ratio_to_f64(reduced))
            }
            Angle::Radians(x) => Complex64::from_polar(1.0, x.rem_euclid(TAU)),
        }
    }

    /// `2π − κ`, keeping the representation.
    pub fn complement(&self) -> Angle {
        match *self {
            Angle::RationalPi(r) => Angle::RationalPi(Ratio::from_integer(2) - r),
            Angle::Radians(x) => Angle::Radians(TAU - x),
        }
    }

    /// True iff the angle is an integer multiple of 2π (exact for rationals,
    /// snapped for radians).
    pub fn is_two_pi_multiple(&self) -> bool {
        match *self {
            Angle::RationalPi(r) => (r / Ratio::from_integer(2)).is_integer(),
            Angle::Radians(x) => snap_turns(x / TAU).is_some(),
        }
    }

    /// Reduce into `[0, 2π)`.
    pub fn reduce_mod_two_pi(&self) -> Angle {
        match *self {
            Angle::RationalPi(r) => {
                let two = Ratio::from_integer(2);
                Angle::RationalPi(r - (r / two).floor() * two)
            }
            Angle::Radians(x) => Angle::Radians(x.rem_euclid(TAU)),
        }
    }

    pub(crate) fn is_positive(&self) -> bool {
        match *self {
            Angle::RationalPi(r) => r.is_positive(),
            Angle::Radians(x) => x > 0.0,
        }
    }

    fn in_open_range(&self) -> bool {
        match *self {
            Angle::RationalPi(r) => r.is_positive() && r < Ratio::from_integer(2),
            Angle::Radians(x) => x > 0.0 && x < TAU,
        }
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::RationalPi(a), Angle::RationalPi(b)) => Angle::RationalPi(a + b),
            (a, b) => Angle::Radians(a.to_radians() + b.to_radians()),
        }
    }
}

/// Formats in the CLI token grammar: `a/b`, `a`, or `<float>r`.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::RationalPi(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Angle::RationalPi(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Angle::Radians(x) => write!(f, "{x}r"),
        }
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn snap_turns(turns: f64) -> Option<f64> {
    let nearest = turns.round();
    ((turns - nearest).abs() <= SNAP_TOLERANCE).then_some(nearest)
}

/// Read access to an ordered tuple of angles.
///
/// Implemented by the validated [`CurvatureData`], by the generalized tuples the
/// recursive decomposition produces, and by bare slices.
pub trait AngleTuple {
    fn angles(&self) -> &[Angle];

    fn len(&self) -> usize {
        self.angles().len()
    }

    fn is_empty(&self) -> bool {
        self.angles().is_empty()
    }

    /// `e^{iκ_i}` for every entry.
    fn rotations(&self) -> Vec<Complex64> {
        self.angles().iter().map(Angle::unit).collect()
    }

    fn tokens(&self) -> Vec<String> {
        self.angles().iter().map(ToString::to_string).collect()
    }
}

impl AngleTuple for [Angle] {
    fn angles(&self) -> &[Angle] {
        self
    }
}

impl AngleTuple for Vec<Angle> {
    fn angles(&self) -> &[Angle] {
        self
    }
}

/// A validated curvature tuple: `n ≥ 2`, every entry in `(0, 2π)`, one
/// representation throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    angles: Vec<Angle>,
}

impl CurvatureData {
    pub fn new(angles: Vec<Angle>) -> Result<Self> {
        if angles.len() < 2 {
            return Err(Error::TooShort(angles.len()));
        }
        let rational = angles[0].is_rational();
        if angles.iter().any(|a| a.is_rational() != rational) {
            return Err(Error::MixedRepresentation);
        }
        if let Some(bad) = angles.iter().find(|a| !a.in_open_range()) {
            return Err(Error::Domain(bad.to_string()));
        }
        Ok(CurvatureData { angles })
    }

    /// Build from numerators over a common denominator: `κ_i = (numers[i]/denom)·π`.
    pub fn from_rational_pi(numers: &[i64], denom: i64) -> Result<Self> {
        let angles = numers
            .iter()
            .map(|&a| Angle::rational_pi(a, denom))
            .collect::<Result<Vec<_>>>()?;
        Self::new(angles)
    }

    pub fn from_radians(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().copied().map(Angle::Radians).collect())
    }

    /// `(π, …, π)` of length `n`.
    pub fn all_pi(n: usize) -> Result<Self> {
        Self::new(vec![Angle::pi(); n])
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    /// Dimension of the polygon space, `n − 1`.
    pub fn dim(&self) -> usize {
        self.angles.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.angles[0].is_rational()
    }

    pub fn into_angles(self) -> Vec<Angle> {
        self.angles
    }
}

impl AngleTuple for CurvatureData {
    fn angles(&self) -> &[Angle] {
        &self.angles
    }
}

/// Parse a comma-separated tuple of angle tokens.
///
/// `a/b` is `(a/b)·π`, a bare integer `a` is `a·π`, and `<float>r` is a radian
/// value. Spaces around tokens are ignored.
pub fn parse_curvature(text: &str) -> Result<CurvatureData> {
    let angles = text
        .split(',')
        .map(parse_angle)
        .collect::<Result<Vec<_>>>()?;
    CurvatureData::new(angles)
}

/// Parse a single angle token.
pub fn parse_angle(token: &str) -> Result<Angle> {
    let token = token.trim();
    let syntax = |reason: &str| Error::Syntax {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    if token.is_empty() {
        return Err(syntax("empty token"));
    }
    if let Some(body) = token.strip_suffix('r') {
        let x: f64 = body
            .trim()
            .parse()
            .map_err(|_| syntax("expected a float before `r`"))?;
        if !x.is_finite() {
            return Err(syntax("non-finite radian value"));
        }
        return Ok(Angle::Radians(x));
    }
    let (numer, denom) = match token.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (token, "1"),
    };
    let numer = parse_int(numer).ok_or_else(|| syntax("expected an integer numerator"))?;
    let denom = parse_int(denom).ok_or_else(|| syntax("expected an integer denominator"))?;
    if denom <= 0 {
        return Err(syntax("denominator must be positive"));
    }
    Angle::rational_pi(numer, denom)
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Floors of the partial sums `⌊Σ_{k≤i} κ_k / 2π⌋`, `i = 1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSumLedger {
    pub floors: Vec<i64>,
    pub total_is_2pi_multiple: bool,
}

impl PartialSumLedger {
    pub fn new<K: AngleTuple + ?Sized>(kappa: &K) -> Self {
        let angles = kappa.angles();
        if angles.iter().all(Angle::is_rational) {
            Self::exact(angles)
        } else {
            Self::snapped(angles)
        }
    }

    fn exact(angles: &[Angle]) -> Self {
        // κ/2π = r/2 for κ = rπ; accumulate in i128 to stay clear of overflow.
        let mut sum = Ratio::<i128>::zero();
        let mut floors = Vec::with_capacity(angles.len());
        for a in angles {
            if let Angle::RationalPi(r) = a {
                sum += Ratio::new(*r.numer() as i128, 2 * *r.denom() as i128);
            }
            floors.push(sum.floor().to_integer() as i64);
        }
        PartialSumLedger {
            floors,
            total_is_2pi_multiple: sum.is_integer(),
        }
    }

    fn snapped(angles: &[Angle]) -> Self {
        let mut sum = 0.0;
        let mut floors = Vec::with_capacity(angles.len());
        let mut total_snap = None;
        for a in angles {
            sum += a.to_radians();
            let turns = sum / TAU;
            total_snap = snap_turns(turns);
            floors.push(total_snap.unwrap_or(turns.floor()) as i64);
        }
        PartialSumLedger {
            floors,
            total_is_2pi_multiple: total_snap.is_some(),
        }
    }

    /// Number of adjacent equal floors.
    pub fn flat_steps(&self) -> usize {
        self.floors.windows(2).filter(|w| w[0] == w[1]).count()
    }
}

/// ε(κ): 1 iff `Σκ_i ∈ 2πℤ`.
pub fn epsilon<K: AngleTuple + ?Sized>(kappa: &K) -> usize {
    usize::from(PartialSumLedger::new(kappa).total_is_2pi_multiple)
}

/// q(κ): the number of `1 ≤ i < n` whose partial-sum floors agree at `i` and `i+1`.
pub fn q_of<K: AngleTuple + ?Sized>(kappa: &K) -> usize {
    PartialSumLedger::new(kappa).flat_steps()
}

/// p(κ) = n − 1 − q(κ) − ε(κ).
pub fn p_of<K: AngleTuple + ?Sized>(kappa: &K) -> Result<usize> {
    let n = kappa.len();
    let used = q_of(kappa) + epsilon(kappa);
    (n.saturating_sub(1))
        .checked_sub(used)
        .ok_or_else(|| Error::Internal(format!("p(κ) negative: n = {n}, q + ε = {used}")))
}

/// Signature `(P, N)` of a Hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Signature { positive, negative }
    }
}

impl Add for Signature {
    type Output = Signature;

    fn add(self, rhs: Signature) -> Signature {
        Signature::new(self.positive + rhs.positive, self.negative + rhs.negative)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// `(p(κ), q(κ))`.
pub fn closed_form_signature<K: AngleTuple + ?Sized>(kappa: &K) -> Result<Signature> {
    Ok(Signature::new(p_of(kappa)?, q_of(kappa)))
}

/// κ(σ) = (κ_{σ(1)}, …, κ_{σ(n)}), with `sigma[k-1] = σ(k)` one-based.
pub fn permute(kappa: &CurvatureData, sigma: &[usize]) -> Result<CurvatureData> {
    check_permutation(sigma, kappa.n())?;
    let angles = sigma.iter().map(|&s| kappa.angles()[s - 1]).collect();
    CurvatureData::new(angles)
}

pub(crate) fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "expected {n} entries, got {}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::InvalidPermutation(format!(
                "{sigma:?} is not a bijection on 1..={n}"
            )));
        }
    }
    Ok(())
}
