//! Seeded randomized checks over the truncated ring.

use evenartin_core::magnus::{
    commutator_closed_form_check, commutator_filtration_check, commutator_power_check,
    power_formula_check, unit_commutator, RingElement, TruncatedRing, Unit,
};
use evenartin_core::{Error, LieAlgebra, LieElement, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COEFF: i64 = 3;
pub const MAX_POWER: u32 = 8;

fn coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-COEFF..=COEFF)).collect()
}

/// A random element of the augmentation ideal whose components below
/// `min_degree` vanish.
pub fn random_ideal_element(
    ring: &TruncatedRing,
    rng: &mut ChaCha8Rng,
    min_degree: u32,
) -> RingElement {
    let n = ring.rank();
    let p = n * (n - 1) / 2;
    let mut c1 = coeffs(rng, n);
    if min_degree >= 2 {
        c1.iter_mut().for_each(|c| *c = 0);
    }
    let (sq, lo, com) = (coeffs(rng, n), coeffs(rng, p), coeffs(rng, p));
    ring.element(0, &c1, &sq, &lo, &com)
        .expect("coordinates have the ring's shape")
}

fn random_lie_element(l: &LieAlgebra, rng: &mut ChaCha8Rng) -> LieElement {
    let deg1 = coeffs(rng, l.rank());
    let deg2 = coeffs(rng, l.slots().len());
    l.element(deg1, deg2)
        .expect("coordinates have the algebra's shape")
}

#[derive(Default)]
struct Tally {
    failures: usize,
    first: Option<usize>,
}

impl Tally {
    fn record(&mut self, trial: usize, ok: bool) {
        if !ok {
            self.failures += 1;
            self.first.get_or_insert(trial);
        }
    }

    fn push(self, report: &mut Report, name: &str, trials: usize, seed: u64) {
        let detail = match self.first {
            None => format!("{trials} trials seed {seed}"),
            Some(t) => format!(
                "{} of {trials} trials failed, first at trial {t}, seed {seed}",
                self.failures
            ),
        };
        report.push(name, self.failures == 0, detail);
    }
}

/// Runs the power formula, the `(ba)^{-n}(ab)^n` identity, the commutator
/// closed form, the filtration property of commutators and the bracket
/// image property on `trials` random instances each.
///
/// Every suite draws from its own stream derived from `seed`, so adding a
/// suite does not change the others.
pub fn magnus_suites(
    ring: &TruncatedRing,
    lie: &LieAlgebra,
    trials: usize,
    seed: u64,
) -> Result<Report, Error> {
    let mut report = Report::new();
    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        rng
    };

    let mut rng = stream(1);
    let (mut power, mut commutator_power, mut closed) =
        (Tally::default(), Tally::default(), Tally::default());
    for trial in 0..trials {
        let u = random_ideal_element(ring, &mut rng, 1);
        let v = random_ideal_element(ring, &mut rng, 1);
        let n = rng.gen_range(1..=MAX_POWER);
        power.record(trial, power_formula_check(ring, &u, &v, n)?);
        let a = Unit::from_perturbation(ring, &u)?;
        let b = Unit::from_perturbation(ring, &v)?;
        commutator_power.record(trial, commutator_power_check(ring, &a, &b, n)?);
        closed.record(trial, commutator_closed_form_check(ring, &a, &b)?);
    }
    power.push(&mut report, "power-formula", trials, seed);
    commutator_power.push(&mut report, "commutator-power", trials, seed);
    closed.push(&mut report, "commutator-closed-form", trials, seed);

    let mut rng = stream(2);
    let mut filtration = Tally::default();
    for trial in 0..trials {
        let k = rng.gen_range(1..=2);
        let l = rng.gen_range(1..=2);
        let u = random_ideal_element(ring, &mut rng, k);
        let v = random_ideal_element(ring, &mut rng, l);
        filtration.record(trial, commutator_filtration_check(ring, &u, &v)?);
    }
    filtration.push(&mut report, "commutator-filtration", trials, seed);

    let mut rng = stream(3);
    let mut image = Tally::default();
    for trial in 0..trials {
        let a = random_lie_element(lie, &mut rng);
        let b = random_lie_element(lie, &mut rng);
        let ua = Unit::from_perturbation(ring, &ring.lie_image(lie, &a)?)?;
        let ub = Unit::from_perturbation(ring, &ring.lie_image(lie, &b)?)?;
        let lhs = ring.lie_image(lie, &lie.bracket(&a, &b)?)?;
        let rhs = unit_commutator(ring, &ua, &ub)?.perturbation();
        image.record(trial, lhs == rhs);
    }
    image.push(&mut report, "bracket-image-random", trials, seed);
    Ok(report)
}
