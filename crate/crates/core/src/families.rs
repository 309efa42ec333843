//! The eight special cases of the signature formula, with exact hypothesis
//! checks and targeted sample generators.
//!
//! Samples are rational multiples of π with denominator [`UNITS_PER_PI`], so
//! boundary hypotheses such as `Σκ = 2π` are hit exactly.

use num_rational::Ratio;
use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::curvature::{Angle, Signature};

/// Sample angles are `u·π / UNITS_PER_PI` for integer `u`.
pub const UNITS_PER_PI: i64 = 12;
const FULL_TURN: i64 = 2 * UNITS_PER_PI;
const MAX_UNIT: i64 = FULL_TURN - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `2π < Σκ < 4π` ⇒ `(1, n−2)`.
    One,
    /// `Σκ = 2π` ⇒ `(0, n−2)`.
    Two,
    /// `Σκ = 2π(n−1)` ⇒ `(n−2, 0)`.
    Three,
    /// `Σκ < 2π` ⇒ `(0, n−1)`.
    Four,
    /// `2π(n−1) < Σκ < 2πn` ⇒ `(n−1, 0)`.
    Five,
    /// `2π(n−2) < Σκ < 2π(n−1)` ⇒ `(n−2, 1)`.
    Six,
    /// Every partial sum `S_i ∈ (2π(i−1), 2πi)` ⇒ `(n−1, 0)`.
    Seven,
    /// `S_i ∈ (2π(i−1), 2πi)` for `i < n` and `S_n = 2πn` ⇒ `(n−2, 0)`.
    Eight,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::One,
        Family::Two,
        Family::Three,
        Family::Four,
        Family::Five,
        Family::Six,
        Family::Seven,
        Family::Eight,
    ];

    pub fn number(self) -> usize {
        Family::ALL.iter().position(|&p| p == self).unwrap() + 1
    }

    pub fn hypothesis(self) -> &'static str {
        match self {
            Family::One => "2π < Σκ < 4π",
            Family::Two => "Σκ = 2π",
            Family::Three => "Σκ = 2π(n−1)",
            Family::Four => "Σκ < 2π",
            Family::Five => "2π(n−1) < Σκ < 2πn",
            Family::Six => "2π(n−2) < Σκ < 2π(n−1)",
            Family::Seven => "2π(i−1) < S_i < 2πi for all i",
            Family::Eight => "2π(i−1) < S_i < 2πi for i < n, S_n = 2πn",
        }
    }

    pub fn expected(self, n: usize) -> Signature {
        match self {
            Family::One => Signature::new(1, n - 2),
            Family::Two => Signature::new(0, n - 2),
            Family::Three => Signature::new(n - 2, 0),
            Family::Four => Signature::new(0, n - 1),
            Family::Five => Signature::new(n - 1, 0),
            Family::Six => Signature::new(n - 2, 1),
            Family::Seven => Signature::new(n - 1, 0),
            Family::Eight => Signature::new(n - 2, 0),
        }
    }

    /// Part 8 forces `κ_n = 2πn − S_{n−1} > 2π`, so its samples leave `(0, 2π)`
    /// in the last entry. Every other part stays inside the admissible domain.
    pub fn admissible(self) -> bool {
        self != Family::Eight
    }

    /// Exact check of the hypothesis on a rational-π tuple. Radian entries
    /// make the check fail.
    pub fn holds(self, angles: &[Angle]) -> bool {
        let Some(prefix) = prefix_sums_in_pi(angles) else {
            return false;
        };
        let n = angles.len() as i64;
        let total = *prefix.last().unwrap_or(&Ratio::from_integer(0));
        let two = |k: i64| Ratio::from_integer(2 * k);
        let staircase = |upto: usize| {
            prefix[..upto]
                .iter()
                .enumerate()
                .all(|(k, s)| two(k as i64) < *s && *s < two(k as i64 + 1))
        };
        match self {
            Family::One => two(1) < total && total < two(2),
            Family::Two => total == two(1),
            Family::Three => total == two(n - 1),
            Family::Four => total < two(1),
            Family::Five => two(n - 1) < total && total < two(n),
            Family::Six => two(n - 2) < total && total < two(n - 1),
            Family::Seven => staircase(angles.len()),
            Family::Eight => staircase(angles.len() - 1) && total == two(n),
        }
    }

    /// Draw a tuple of length `n` satisfying the hypothesis. Supports
    /// `2 ≤ n ≤ 23`.
    pub fn sample<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Vec<Angle> {
        assert!((2..=23).contains(&n), "family samplers support 2 ≤ n ≤ 23");
        let ni = n as i64;
        let units = match self {
            Family::One => composition(rng.random_range(FULL_TURN + 1..2 * FULL_TURN), n, rng),
            Family::Two => composition(FULL_TURN, n, rng),
            Family::Three => composition(FULL_TURN * (ni - 1), n, rng),
            Family::Four => composition(rng.random_range(ni..FULL_TURN), n, rng),
            Family::Five => composition(
                rng.random_range(FULL_TURN * (ni - 1) + 1..=MAX_UNIT * ni),
                n,
                rng,
            ),
            Family::Six => {
                let lo = (FULL_TURN * (ni - 2) + 1).max(ni);
                composition(rng.random_range(lo..FULL_TURN * (ni - 1)), n, rng)
            }
            Family::Seven => staircase(n, rng),
            Family::Eight => {
                let mut units = staircase(n - 1, rng);
                let partial: i64 = units.iter().sum();
                units.push(FULL_TURN * ni - partial);
                units
            }
        };
        units
            .into_iter()
            .map(|u| Angle::rational_pi(u, UNITS_PER_PI).expect("nonzero denominator"))
            .collect()
    }
}

fn prefix_sums_in_pi(angles: &[Angle]) -> Option<Vec<Ratio<i64>>> {
    let mut sum = Ratio::from_integer(0);
    angles
        .iter()
        .map(|a| match a {
            Angle::RationalPi(r) => {
                sum += r;
                Some(sum)
            }
            Angle::Radians(_) => None,
        })
        .collect()
}

/// A uniformly shuffled composition of `total` into `n` parts in `1..=MAX_UNIT`.
fn composition<R: Rng + ?Sized>(total: i64, n: usize, rng: &mut R) -> Vec<i64> {
    let mut remaining = total;
    let mut parts = Vec::with_capacity(n);
    for k in 0..n {
        let left = (n - k - 1) as i64;
        let lo = 1.max(remaining - MAX_UNIT * left);
        let hi = MAX_UNIT.min(remaining - left);
        assert!(lo <= hi, "infeasible composition of {total} into {n} parts");
        let u = if k + 1 == n {
            remaining
        } else {
            rng.random_range(lo..=hi)
        };
        parts.push(u);
        remaining -= u;
    }
    parts.shuffle(rng);
    parts
}

/// Units with `S_i − 2(i−1)·UNITS_PER_PI = r_i` for a strictly decreasing
/// `r_1 > … > r_n` drawn from `1..=MAX_UNIT`; every partial sum then sits strictly
/// inside its own 2π window.
fn staircase<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<i64> {
    let mut r: Vec<i64> = index::sample(rng, MAX_UNIT as usize, n)
        .into_iter()
        .map(|k| k as i64 + 1)
        .collect();
    r.sort_unstable_by(|a, b| b.cmp(a));
    let mut prev = 0;
    r.iter()
        .enumerate()
        .map(|(k, &rk)| {
            let u = if k == 0 { rk } else { FULL_TURN + rk - prev };
            prev = rk;
            u
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_satisfy_their_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for part in Family::ALL {
            for n in 2..=12 {
                for _ in 0..10 {
                    let angles = part.sample(n, &mut rng);
                    assert_eq!(angles.len(), n);
                    assert!(
                        part.holds(&angles),
                        "part {} n={n}: {angles:?}",
                        part.number()
                    );
                    let in_range = angles.iter().all(|a| {
                        let x = a.to_radians();
                        x > 0.0 && x < std::f64::consts::TAU
                    });
                    assert_eq!(in_range, part.admissible(), "part {}", part.number());
                }
            }
        }
    }

    #[test]
    fn part_eight_is_empty_inside_the_admissible_domain() {
        // Exhaustive over units of π/4 for n ≤ 4: no tuple in (0, 2π)^n qualifies.
        for n in 2..=4u32 {
            for code in 0..7i64.pow(n) {
                let angles: Vec<Angle> = (0..n)
                    .map(|k| Angle::rational_pi(code / 7i64.pow(k) % 7 + 1, 4).unwrap())
                    .collect();
                assert!(!Family::Eight.holds(&angles));
            }
        }
    }

    #[test]
    fn hypothesis_checks_reject_radians() {
        assert!(!Family::Four.holds(&[Angle::radians(0.1), Angle::radians(0.2)]));
    }
}
