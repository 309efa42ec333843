//! Self-verification sweep behind `conepoly verify`.

use std::f64::consts::TAU;
use std::fmt::Write;

use conepoly::areaform::{area_pairing, numeric_signature_of, square_norm};
use conepoly::families::Family;
use conepoly::polyspace::{is_member, random_element};
use conepoly::transforms::{decomposition, permute_polygon, reverse};
use conepoly::{
    allpi_signature, closed_form_signature, cut_glue, epsilon, numeric_signature, p_of, permute,
    q_of, recursive_signature, Angle, AngleTuple, Complex64, CurvatureData,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Report `(p, −q)` as the closed form.
    NegateQ,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 8,
            trials: 200,
            seed: 0,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

/// Uniform `(a/b)·π` with `1 ≤ a < 2b ≤ 48`.
pub fn random_rational(rng: &mut impl Rng, n: usize) -> CurvatureData {
    let angles = (0..n)
        .map(|_| {
            let b = rng.random_range(1..=24);
            let a = rng.random_range(1..2 * b);
            Angle::rational_pi(a, b).expect("positive denominator")
        })
        .collect();
    CurvatureData::new(angles).expect("entries in (0, 2π)")
}

/// Uniform radians in `[0.05, 2π − 0.05]`.
pub fn random_real(rng: &mut impl Rng, n: usize) -> CurvatureData {
    let values: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.05..=TAU - 0.05))
        .collect();
    CurvatureData::from_radians(&values).expect("entries in (0, 2π)")
}

fn closed_signed<K: AngleTuple + ?Sized>(kappa: &K, fault: Option<Fault>) -> Option<(i64, i64)> {
    let p = p_of(kappa).ok()? as i64;
    let q = q_of(kappa) as i64;
    Some(match fault {
        None => (p, q),
        Some(Fault::NegateQ) => (p, -q),
    })
}

fn signatures_agree(kappa: &CurvatureData, fault: Option<Fault>) -> bool {
    let Ok(numeric) = numeric_signature(kappa, None) else {
        return false;
    };
    let Ok(recursive) = recursive_signature(kappa) else {
        return false;
    };
    let closed = closed_signed(kappa, fault);
    let numeric_pair = Some((numeric.positive as i64, numeric.negative as i64));
    let recursive_pair = Some((recursive.positive as i64, recursive.negative as i64));
    numeric_pair == closed && recursive_pair == closed && numeric.zero == epsilon(kappa)
}

/// Shrink a failing tuple by keeping whichever half (of length ≥ 2) still fails.
pub fn shrink(mut kappa: CurvatureData, fails: impl Fn(&CurvatureData) -> bool) -> CurvatureData {
    loop {
        let n = kappa.n();
        let h = (n / 2).max(2);
        if h >= n {
            return kappa;
        }
        let halves = [&kappa.angles()[..h], &kappa.angles()[n - h..]];
        let next = halves
            .iter()
            .filter_map(|half| CurvatureData::new(half.to_vec()).ok())
            .find(|k| fails(k));
        match next {
            Some(k) => kappa = k,
            None => return kappa,
        }
    }
}

fn describe(kappa: &CurvatureData) -> String {
    format!("κ = ({})", kappa.tokens().join(","))
}

pub fn run(config: &VerifyConfig) -> Vec<CheckResult> {
    let n_max = config.n_max.clamp(2, 23);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut results = Vec::new();

    let mut triple = CheckResult::new("signature triple agreement");
    for t in 0..config.trials.max(1) {
        let n = rng.random_range(2..=n_max);
        let kappa = if t % 2 == 0 {
            random_rational(&mut rng, n)
        } else {
            random_real(&mut rng, n)
        };
        let fault = config.fault;
        triple.record(signatures_agree(&kappa, fault), || {
            let minimal = shrink(kappa.clone(), |k| !signatures_agree(k, fault));
            format!("{} (minimal: {})", describe(&kappa), describe(&minimal))
        });
    }
    results.push(triple);

    let mut cut = CheckResult::new("cut-glue isometry");
    for seed in 0..config.trials.max(1) as u64 {
        let n = rng.random_range(2..=n_max);
        let kappa = random_rational(&mut rng, n);
        let i = rng.random_range(1..n);
        let z = random_element(&kappa, seed).expect("valid tuple");
        let ok = cut_glue(&kappa, i, &z).is_ok_and(|(target, image)| {
            let before = square_norm(&z);
            is_member(&target, image.coords(), REL_TOL).unwrap_or(false)
                && (square_norm(&image) - before).abs() <= REL_TOL * (1.0 + before.abs())
        });
        cut.record(ok, || format!("{} i = {i} seed = {seed}", describe(&kappa)));
    }
    results.push(cut);

    let mut rev = CheckResult::new("reversal anti-isometry");
    for seed in 0..config.trials.max(1) as u64 {
        let n = rng.random_range(2..=n_max);
        let kappa = random_rational(&mut rng, n);
        let z = random_element(&kappa, seed).expect("valid tuple");
        let ok = reverse(&kappa, &z).is_ok_and(|(target, image)| {
            let before = square_norm(&z);
            is_member(&target, image.coords(), REL_TOL).unwrap_or(false)
                && (square_norm(&image) + before).abs() <= REL_TOL * (1.0 + before.abs())
        });
        rev.record(ok, || format!("{} seed = {seed}", describe(&kappa)));
    }
    results.push(rev);

    let mut decomp = CheckResult::new("decomposition orthogonality");
    let mut attempts = 0;
    while decomp.cases < config.trials.max(1) && n_max >= 3 && attempts < 100 * config.trials.max(1)
    {
        attempts += 1;
        let n = rng.random_range(3..=n_max);
        let kappa = random_rational(&mut rng, n);
        if (kappa.angles()[0] + kappa.angles()[1]).is_two_pi_multiple() {
            continue;
        }
        decomp.record(decomposition_holds(&kappa), || describe(&kappa));
    }
    results.push(decomp);

    let per_part = (config.trials / 10).max(1);
    for part in Family::ALL {
        let mut check =
            CheckResult::new(format!("family {} ({})", part.number(), part.hypothesis()));
        for _ in 0..per_part {
            let n = rng.random_range(2..=n_max);
            let angles = part.sample(n, &mut rng);
            let expected = part.expected(n);
            let expected = Some((expected.positive as i64, expected.negative as i64));
            let numeric = numeric_signature_of(&angles, None)
                .ok()
                .map(|i| (i.positive as i64, i.negative as i64));
            let ok = part.holds(&angles)
                && numeric == expected
                && closed_signed(&angles, config.fault) == expected;
            check.record(ok, || format!("κ = ({})", angles.tokens().join(",")));
        }
        results.push(check);
    }

    let mut allpi = CheckResult::new("all-π tuples");
    for n in 2..=config.n_max.max(2) {
        let kappa = CurvatureData::all_pi(n).expect("n ≥ 2");
        let ok = match (numeric_signature(&kappa, None), allpi_signature(n)) {
            (Ok(i), Ok(s)) => {
                i.signature() == s
                    && i.zero == epsilon(&kappa)
                    && closed_signed(&kappa, config.fault)
                        == Some((s.positive as i64, s.negative as i64))
            }
            _ => false,
        };
        allpi.record(ok, || format!("n = {n}"));
    }
    results.push(allpi);

    let mut perm = CheckResult::new("permutation invariance");
    for seed in 0..(config.trials / 4).max(1) as u64 {
        let n = rng.random_range(2..=n_max);
        let kappa = random_rational(&mut rng, n);
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(&mut rng);
        let ok = permutation_holds(&kappa, &sigma, seed);
        perm.record(ok, || format!("{} σ = {sigma:?}", describe(&kappa)));
    }
    results.push(perm);

    results
}

fn decomposition_holds(kappa: &CurvatureData) -> bool {
    let Ok((x, embedded)) = decomposition(kappa) else {
        return false;
    };
    let orthogonal = embedded.iter().all(|y| {
        let scale = norm2(x.coords()) * norm2(y.coords());
        area_pairing(x.coords(), y.coords()).is_ok_and(|v| v.norm() <= REL_TOL * scale.max(1.0))
    });
    let mut columns = vec![x];
    columns.extend(embedded);
    let rows = 2 * kappa.n();
    let m = nalgebra::DMatrix::from_fn(rows, columns.len(), |r, c| columns[c].coords()[r]);
    let sv = m.singular_values();
    orthogonal && columns.len() == kappa.dim() && sv.min() > 1e-8 * sv.max()
}

fn norm2(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn permutation_holds(kappa: &CurvatureData, sigma: &[usize], seed: u64) -> bool {
    let Ok(target) = permute(kappa, sigma) else {
        return false;
    };
    let z = random_element(kappa, seed).expect("valid tuple");
    let w = random_element(kappa, seed + 1).expect("valid tuple");
    let mapped = (
        permute_polygon(kappa, sigma, &z),
        permute_polygon(kappa, sigma, &w),
    );
    let (Ok((tz, mz)), Ok((_, mw))) = mapped else {
        return false;
    };
    let before = area_pairing(z.coords(), w.coords()).expect("same length");
    let after = area_pairing(mz.coords(), mw.coords()).expect("same length");
    let counts = |k: &CurvatureData| {
        numeric_signature(k, None)
            .ok()
            .map(|i| (i.positive, i.negative, i.zero))
    };
    let same_signature = counts(kappa).is_some() && counts(kappa) == counts(&target);
    tz == target
        && is_member(&target, mz.coords(), REL_TOL).unwrap_or(false)
        && (after - before).norm() <= REL_TOL * (1.0 + before.norm())
        && same_signature
        && closed_form_signature(&target).ok() == closed_form_signature(kappa).ok()
}

pub fn table(results: &[CheckResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.name.chars().count())
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    for r in results {
        let pad = width - r.name.chars().count();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{}{}  {:>6} cases  {:>4} failures  {status}",
            r.name,
            " ".repeat(pad),
            r.cases,
            r.failures
        );
        if let Some(detail) = &r.first_failure {
            let _ = writeln!(s, "    first failure: {detail}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let results = run(&VerifyConfig {
            n_max: 6,
            trials: 20,
            seed: 1,
            fault: None,
        });
        assert!(
            results.iter().all(CheckResult::passed),
            "{}",
            table(&results)
        );
    }

    #[test]
    fn one_trial_still_covers_every_family() {
        let results = run(&VerifyConfig {
            trials: 1,
            ..VerifyConfig::default()
        });
        let parts = results
            .iter()
            .filter(|r| r.name.starts_with("family"))
            .count();
        assert_eq!(parts, 8);
        assert!(results.iter().all(|r| r.cases >= 1));
        assert!(
            results.iter().all(CheckResult::passed),
            "{}",
            table(&results)
        );
    }

    #[test]
    fn injected_fault_is_caught_and_shrunk() {
        let results = run(&VerifyConfig {
            n_max: 8,
            trials: 20,
            seed: 2,
            fault: Some(Fault::NegateQ),
        });
        let triple = &results[0];
        assert!(!triple.passed());
        let detail = triple.first_failure.as_ref().unwrap();
        assert!(detail.contains("minimal"));
    }

    #[test]
    fn shrink_halves_until_stable() {
        let k = CurvatureData::from_rational_pi(&[1, 1, 1, 1, 3, 3, 3, 3], 2).unwrap();
        // "Fails" whenever a 1/2 entry is present.
        let minimal = shrink(k, |k| k.tokens().contains(&"1/2".to_string()));
        assert_eq!(minimal.n(), 2);
        assert_eq!(minimal.tokens(), vec!["1/2", "1/2"]);
    }
}
