//! The truncated ring `R = Z⟨X⟩ / (Î³ + J)` and its unit group.
//!
//! `Î` is the ideal generated by the variables `x_s`, so every product of
//! three variables vanishes, and `J` is generated by `n (x_s x_t - x_t x_s)`
//! for each pair with `m_{s,t} = 2n`. Elements are stored in the normal form
//!
//! ```text
//! c0 + Σ c1_s x_s + Σ sq_s x_s² + Σ_{s<t} lo_{s,t} x_t x_s + Σ_{s<t} com_{s,t} c_{s,t}
//! ```
//!
//! where `c_{s,t}` is the class of `x_s x_t - x_t x_s`: of order `n` when
//! `m_{s,t} = 2n` with `n >= 2`, zero when `m_{s,t} = 2`, free when `∞`.
//! A product `x_s x_t` with `s < t` is rewritten as `x_t x_s + c_{s,t}`.
//!
//! Coefficients are arbitrary precision.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lie::{LieAlgebra, LieElement, Modulus};
use crate::{CoxeterMatrix, Entry, Error, Report};

/// Additive type of a commutator class `c_{s,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorClass {
    Zero,
    Torsion(u64),
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedRing {
    matrix: CoxeterMatrix,
    classes: Vec<CommutatorClass>,
}

/// An element of `R` in normal form. Torsion commutator coordinates are kept
/// in `[0, n)` and zero classes are kept at 0, so equality is coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub c0: BigInt,
    pub c1: Vec<BigInt>,
    /// Coefficient of `x_s²`.
    pub sq: Vec<BigInt>,
    /// Coefficient of `x_t x_s` for the pair `s < t`, pairs in lexicographic order.
    pub lo: Vec<BigInt>,
    /// Coefficient of `c_{s,t}` for the pair `s < t`.
    pub com: Vec<BigInt>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.deg1_zero() && self.deg2_zero()
    }

    fn deg1_zero(&self) -> bool {
        self.c1.iter().all(Zero::is_zero)
    }

    fn deg2_zero(&self) -> bool {
        self.sq
            .iter()
            .chain(&self.lo)
            .chain(&self.com)
            .all(Zero::is_zero)
    }

    /// Lowest degree with a nonzero component; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        if !self.c0.is_zero() {
            Some(0)
        } else if !self.deg1_zero() {
            Some(1)
        } else if !self.deg2_zero() {
            Some(2)
        } else {
            None
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let z = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(x, y)| f(x, y)).collect();
        RingElement {
            c0: f(&self.c0, &other.c0),
            c1: z(&self.c1, &other.c1),
            sq: z(&self.sq, &other.sq),
            lo: z(&self.lo, &other.lo),
            com: z(&self.com, &other.com),
        }
    }

    fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let m = |a: &[BigInt]| a.iter().map(&f).collect();
        RingElement {
            c0: f(&self.c0),
            c1: m(&self.c1),
            sq: m(&self.sq),
            lo: m(&self.lo),
            com: m(&self.com),
        }
    }
}

impl TruncatedRing {
    /// Builds `R` for an even matrix.
    pub fn new(matrix: CoxeterMatrix) -> Result<Self, Error> {
        matrix.require_even()?;
        let classes = matrix
            .pairs()
            .map(|(s, t)| match matrix.get(s, t) {
                Entry::Finite(2) => CommutatorClass::Zero,
                Entry::Finite(m) => CommutatorClass::Torsion(m / 2),
                Entry::Infinity => CommutatorClass::Free,
            })
            .collect();
        Ok(TruncatedRing { matrix, classes })
    }

    /// A ring whose commutator classes are given explicitly instead of being
    /// read off the matrix. Relations are still taken from `matrix`, so a
    /// mismatched class list yields a ring in which they may fail; this is
    /// used as a negative control.
    pub fn with_classes(
        matrix: CoxeterMatrix,
        classes: Vec<CommutatorClass>,
    ) -> Result<Self, Error> {
        let pairs = matrix.pairs().count();
        if classes.len() != pairs {
            return Err(Error::ShapeMismatch {
                what: "commutator classes",
                expected: (pairs, 1),
                found: (classes.len(), 1),
            });
        }
        if classes
            .iter()
            .any(|c| matches!(c, CommutatorClass::Torsion(0 | 1)))
        {
            return Err(Error::InvalidParameter(
                "torsion class order must be at least 2",
            ));
        }
        Ok(TruncatedRing { matrix, classes })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn classes(&self) -> &[CommutatorClass] {
        &self.classes
    }

    pub fn class_of(&self, s: usize, t: usize) -> CommutatorClass {
        self.classes[self.pair(s, t)]
    }

    /// Position of the pair `s < t`.
    pub fn pair(&self, s: usize, t: usize) -> usize {
        debug_assert!(s < t && t < self.rank());
        let n = self.rank();
        s * n - s * (s + 1) / 2 + (t - s - 1)
    }

    fn npairs(&self) -> usize {
        self.classes.len()
    }

    pub fn zero(&self) -> RingElement {
        let n = self.rank();
        let p = self.npairs();
        RingElement {
            c0: BigInt::zero(),
            c1: vec![BigInt::zero(); n],
            sq: vec![BigInt::zero(); n],
            lo: vec![BigInt::zero(); p],
            com: vec![BigInt::zero(); p],
        }
    }

    pub fn one(&self) -> RingElement {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> RingElement {
        let mut e = self.zero();
        e.c0 = BigInt::from(c);
        e
    }

    /// The variable `x_s`.
    pub fn x(&self, s: usize) -> RingElement {
        let mut e = self.zero();
        e.c1[s] = BigInt::one();
        e
    }

    /// The class `c_{s,t} = x_s x_t - x_t x_s` for `s < t`, normalized.
    pub fn commutator_class(&self, s: usize, t: usize) -> RingElement {
        let mut e = self.zero();
        e.com[self.pair(s, t)] = BigInt::one();
        self.normalize(e)
    }

    pub fn contains(&self, a: &RingElement) -> bool {
        a.c1.len() == self.rank()
            && a.sq.len() == self.rank()
            && a.lo.len() == self.npairs()
            && a.com.len() == self.npairs()
            && self.normalize(a.clone()) == *a
    }

    fn check(&self, a: &RingElement) -> Result<(), Error> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementMismatch)
        }
    }

    /// Brings commutator coordinates into canonical range.
    pub fn normalize(&self, mut a: RingElement) -> RingElement {
        for (c, class) in a.com.iter_mut().zip(&self.classes) {
            match class {
                CommutatorClass::Zero => *c = BigInt::zero(),
                CommutatorClass::Torsion(n) => *c = c.mod_floor(&BigInt::from(*n)),
                CommutatorClass::Free => {}
            }
        }
        a
    }

    /// Builds an element from raw coordinates and normalizes it.
    pub fn element(
        &self,
        c0: i64,
        c1: &[i64],
        sq: &[i64],
        lo: &[i64],
        com: &[i64],
    ) -> Result<RingElement, Error> {
        if c1.len() != self.rank()
            || sq.len() != self.rank()
            || lo.len() != self.npairs()
            || com.len() != self.npairs()
        {
            return Err(Error::ElementMismatch);
        }
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
        Ok(self.normalize(RingElement {
            c0: BigInt::from(c0),
            c1: big(c1),
            sq: big(sq),
            lo: big(lo),
            com: big(com),
        }))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.normalize(a.zip_with(b, |x, y| x + y)))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.normalize(a.zip_with(b, |x, y| x - y)))
    }

    pub fn scale(&self, k: &BigInt, a: &RingElement) -> Result<RingElement, Error> {
        self.check(a)?;
        Ok(self.normalize(a.map(|x| k * x)))
    }

    /// Product in `R`: degree-3 terms are dropped and `x_s x_t` (`s < t`) is
    /// rewritten to `x_t x_s + c_{s,t}`.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
        self.check(a)?;
        self.check(b)?;
        let n = self.rank();
        let mut out = self.zero();
        out.c0 = &a.c0 * &b.c0;
        for s in 0..n {
            out.c1[s] = &a.c0 * &b.c1[s] + &a.c1[s] * &b.c0;
            out.sq[s] = &a.c0 * &b.sq[s] + &a.sq[s] * &b.c0;
        }
        for k in 0..self.npairs() {
            out.lo[k] = &a.c0 * &b.lo[k] + &a.lo[k] * &b.c0;
            out.com[k] = &a.c0 * &b.com[k] + &a.com[k] * &b.c0;
        }
        for i in 0..n {
            if a.c1[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.c1[j].is_zero() {
                    continue;
                }
                let prod = &a.c1[i] * &b.c1[j];
                match i.cmp(&j) {
                    core::cmp::Ordering::Equal => out.sq[i] += prod,
                    core::cmp::Ordering::Greater => out.lo[self.pair(j, i)] += prod,
                    core::cmp::Ordering::Less => {
                        let k = self.pair(i, j);
                        out.com[k] += &prod;
                        out.lo[k] += prod;
                    }
                }
            }
        }
        Ok(self.normalize(out))
    }

    pub fn pow(&self, a: &RingElement, n: u32) -> Result<RingElement, Error> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Additive order of `a`; `None` when infinite.
    pub fn additive_order(&self, a: &RingElement) -> Option<BigInt> {
        let free_part_zero = a.c0.is_zero()
            && a.deg1_zero()
            && a.sq.iter().chain(&a.lo).all(Zero::is_zero)
            && a.com
                .iter()
                .zip(&self.classes)
                .all(|(c, class)| *class != CommutatorClass::Free || c.is_zero());
        if !free_part_zero {
            return None;
        }
        let mut order = BigInt::one();
        for (c, class) in a.com.iter().zip(&self.classes) {
            if let CommutatorClass::Torsion(n) = class {
                let n = BigInt::from(*n);
                order = order.lcm(&(&n / c.gcd(&n)));
            }
        }
        Some(order)
    }

    /// Image of an element of `L[M]` under `u_s ↦ x_s`, `v_{s,t} ↦ c_{s,t}`.
    pub fn lie_image(&self, l: &LieAlgebra, a: &LieElement) -> Result<RingElement, Error> {
        if l.matrix() != &self.matrix || !l.contains(a) {
            return Err(Error::ElementMismatch);
        }
        let mut e = self.zero();
        for (s, &x) in a.deg1.iter().enumerate() {
            e.c1[s] = BigInt::from(x);
        }
        for (slot, &x) in l.slots().iter().zip(&a.deg2) {
            e.com[self.pair(slot.s, slot.t)] = BigInt::from(x);
        }
        Ok(self.normalize(e))
    }
}

/// An element `1 + w` with `w` in the augmentation ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit(RingElement);

impl Unit {
    pub fn new(element: RingElement) -> Result<Self, Error> {
        if element.c0.is_one() {
            Ok(Unit(element))
        } else {
            Err(Error::NotUnit)
        }
    }

    /// `1 + w` for `w` with zero constant term.
    pub fn from_perturbation(ring: &TruncatedRing, w: &RingElement) -> Result<Self, Error> {
        if !w.c0.is_zero() {
            return Err(Error::NotInIdeal);
        }
        Ok(Unit(ring.add(&ring.one(), w)?))
    }

    pub fn one(ring: &TruncatedRing) -> Self {
        Unit(ring.one())
    }

    pub fn element(&self) -> &RingElement {
        &self.0
    }

    pub fn into_element(self) -> RingElement {
        self.0
    }

    /// `w` such that the unit is `1 + w`.
    pub fn perturbation(&self) -> RingElement {
        let mut w = self.0.clone();
        w.c0 = BigInt::zero();
        w
    }

    pub fn is_one(&self) -> bool {
        self.perturbation().is_zero()
    }

    pub fn mul(&self, ring: &TruncatedRing, other: &Unit) -> Result<Unit, Error> {
        Ok(Unit(ring.mul(&self.0, &other.0)?))
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, ring: &TruncatedRing, n: i64) -> Result<Unit, Error> {
        let base = if n < 0 {
            unit_inverse(ring, self)?
        } else {
            self.clone()
        };
        let mut acc = Unit::one(ring);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(ring, &base)?;
        }
        Ok(acc)
    }
}

/// `(1 + w)⁻¹ = 1 - w + w²`.
pub fn unit_inverse(ring: &TruncatedRing, u: &Unit) -> Result<Unit, Error> {
    let w = u.perturbation();
    let w2 = ring.mul(&w, &w)?;
    let inv = ring.add(&ring.sub(&ring.one(), &w)?, &w2)?;
    Ok(Unit(inv))
}

/// `a⁻¹ b⁻¹ a b`, computed by multiplication.
fn commutator_by_products(ring: &TruncatedRing, a: &Unit, b: &Unit) -> Result<Unit, Error> {
    let ai = unit_inverse(ring, a)?;
    let bi = unit_inverse(ring, b)?;
    ai.mul(ring, &bi)?.mul(ring, a)?.mul(ring, b)
}

/// `1 + uv - vu` for `a = 1 + u`, `b = 1 + v`.
fn commutator_closed_form(ring: &TruncatedRing, a: &Unit, b: &Unit) -> Result<Unit, Error> {
    let (u, v) = (a.perturbation(), b.perturbation());
    let diff = ring.sub(&ring.mul(&u, &v)?, &ring.mul(&v, &u)?)?;
    Ok(Unit(ring.add(&ring.one(), &diff)?))
}

/// Group commutator `[a, b] = a⁻¹ b⁻¹ a b`.
///
/// Panics if the product disagrees with the closed form `1 + uv - vu`.
pub fn unit_commutator(ring: &TruncatedRing, a: &Unit, b: &Unit) -> Result<Unit, Error> {
    let direct = commutator_by_products(ring, a, b)?;
    let closed = commutator_closed_form(ring, a, b)?;
    assert_eq!(direct, closed, "unit commutator disagrees with 1 + uv - vu");
    Ok(direct)
}

/// Non-panicking comparison of the commutator with its closed form.
pub fn commutator_closed_form_check(
    ring: &TruncatedRing,
    a: &Unit,
    b: &Unit,
) -> Result<bool, Error> {
    Ok(commutator_by_products(ring, a, b)? == commutator_closed_form(ring, a, b)?)
}

fn triangular(k: u32) -> BigInt {
    BigInt::from(k as u64 * (k as u64 + 1) / 2)
}

/// Compares `((1+u)(1+v))^n` computed by repeated multiplication with
/// `1 + nu + nv + S_{n-1}(u² + v² + vu) + S_n uv`, `S_k = k(k+1)/2`.
pub fn power_formula_check(
    ring: &TruncatedRing,
    u: &RingElement,
    v: &RingElement,
    n: u32,
) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be at least 1"));
    }
    if !u.c0.is_zero() || !v.c0.is_zero() {
        return Err(Error::NotInIdeal);
    }
    let a = ring.add(&ring.one(), u)?;
    let b = ring.add(&ring.one(), v)?;
    let lhs = ring.pow(&ring.mul(&a, &b)?, n)?;

    let nn = BigInt::from(n);
    let uu = ring.mul(u, u)?;
    let vv = ring.mul(v, v)?;
    let vu = ring.mul(v, u)?;
    let uv = ring.mul(u, v)?;
    let quad = ring.add(&ring.add(&uu, &vv)?, &vu)?;
    let mut rhs = ring.one();
    rhs = ring.add(&rhs, &ring.scale(&nn, u)?)?;
    rhs = ring.add(&rhs, &ring.scale(&nn, v)?)?;
    rhs = ring.add(&rhs, &ring.scale(&triangular(n - 1), &quad)?)?;
    rhs = ring.add(&rhs, &ring.scale(&triangular(n), &uv)?)?;
    Ok(lhs == rhs)
}

/// Compares `(ba)^{-n} (ab)^n` with `[a, b]^n`. Degree-3 terms vanish in
/// `R`, so the congruence modulo the third term of the lower central series
/// becomes an equality here.
pub fn commutator_power_check(
    ring: &TruncatedRing,
    a: &Unit,
    b: &Unit,
    n: u32,
) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be at least 1"));
    }
    let ab = a.mul(ring, b)?;
    let ba = b.mul(ring, a)?;
    let lhs = ba
        .pow(ring, -(n as i64))?
        .mul(ring, &ab.pow(ring, n as i64)?)?;
    let rhs = unit_commutator(ring, a, b)?.pow(ring, n as i64)?;
    Ok(lhs == rhs)
}

/// Commutators of units perturbed in degrees `>= k` and `>= l` are perturbed
/// in degree `>= k + l` (and are trivial once `k + l >= 3`).
pub fn commutator_filtration_check(
    ring: &TruncatedRing,
    u: &RingElement,
    v: &RingElement,
) -> Result<bool, Error> {
    let (Some(k), Some(l)) = (u.min_degree(), v.min_degree()) else {
        return Ok(true);
    };
    if k == 0 || l == 0 {
        return Err(Error::NotInIdeal);
    }
    let a = Unit::from_perturbation(ring, u)?;
    let b = Unit::from_perturbation(ring, v)?;
    let w = unit_commutator(ring, &a, &b)?.perturbation();
    Ok(match w.min_degree() {
        None => true,
        Some(d) => d >= k + l && k + l < 3,
    })
}

/// A letter `s` or `s⁻¹` of a group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }
}

/// The alternating word `s t s ⋯` of length `m`.
pub fn pi_word(s: usize, t: usize, m: usize) -> Vec<Letter> {
    (0..m)
        .map(|i| Letter::new(if i % 2 == 0 { s } else { t }))
        .collect()
}

/// Evaluates a word under `s ↦ 1 + x_s`.
pub fn magnus_eval(ring: &TruncatedRing, word: &[Letter]) -> Result<Unit, Error> {
    let mut acc = Unit::one(ring);
    for letter in word {
        if letter.generator >= ring.rank() {
            return Err(Error::IndexOutOfRange {
                index: letter.generator,
                len: ring.rank(),
            });
        }
        let x = Unit(ring.add(&ring.one(), &ring.x(letter.generator))?);
        let factor = if letter.inverse {
            unit_inverse(ring, &x)?
        } else {
            x
        };
        acc = acc.mul(ring, &factor)?;
    }
    Ok(acc)
}

/// Checks `Π(s,t,m) = Π(t,s,m)` under the Magnus map for every pair with
/// finite entry `m`.
pub fn check_relations(ring: &TruncatedRing) -> Result<Report, Error> {
    let mut report = Report::new();
    let matrix = ring.matrix();
    for (s, t) in matrix.pairs() {
        let Entry::Finite(m) = matrix.get(s, t) else {
            continue;
        };
        let m = usize::try_from(m).map_err(|_| Error::Overflow)?;
        let lhs = magnus_eval(ring, &pi_word(s, t, m))?;
        let rhs = magnus_eval(ring, &pi_word(t, s, m))?;
        let diff = ring.sub(lhs.element(), rhs.element())?;
        let detail = if diff.is_zero() {
            format!("m={m}")
        } else {
            format!("m={m} difference {:?}", diff)
        };
        report.push(format!("relation({s},{t})"), diff.is_zero(), detail);
    }
    Ok(report)
}

fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let (a, b) = (rows[rank][c].clone(), rows[i][c].clone());
            for k in 0..ncols {
                let v = &rows[i][k] * &a - &rows[rank][k] * &b;
                rows[i][k] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Verifies the computable content of the isomorphism `TGr(A[M]) ≅ L[M]`
/// through the Magnus map into `R`:
///
/// * `relations`: the Artin relations hold in `U(R)`;
/// * `degree1-injective`: the degree-1 images `x_s` are linearly independent;
/// * `degree2-orders`: each degree-2 generator `v_{s,t}` maps to `c_{s,t}`
///   (the commutator of `1 + x_s` and `1 + x_t`), which has the same
///   additive order as `v_{s,t}` and sits in its own coordinate;
/// * `bracket-image`: `[1 + x_s, 1 + x_t] - 1` equals the image of
///   `[u_s, u_t]` for all `s != t`.
pub fn verify_magnus_model(matrix: &CoxeterMatrix) -> Result<Report, Error> {
    let ring = TruncatedRing::new(matrix.clone())?;
    let lie = LieAlgebra::new(matrix.clone())?;
    let mut report = Report::new();
    let n = ring.rank();

    let relations = check_relations(&ring)?;
    let failed: Vec<_> = relations.failures().map(|c| c.name.clone()).collect();
    let detail = if failed.is_empty() {
        format!("{} relations hold", relations.checks.len())
    } else {
        format!("failing: {}", failed.join(", "))
    };
    report.push("relations", failed.is_empty(), detail);

    let generators: Vec<Unit> = (0..n)
        .map(|s| magnus_eval(&ring, &[Letter::new(s)]))
        .collect::<Result<_, _>>()?;
    let images: Vec<Vec<BigInt>> = generators.iter().map(|g| g.perturbation().c1).collect();
    let rank = integer_rank(images);
    report.push(
        "degree1-injective",
        rank == n,
        format!("rank {rank} of {n}"),
    );

    let mut ok = true;
    let mut orders = Vec::new();
    for slot in lie.slots() {
        let w = unit_commutator(&ring, &generators[slot.s], &generators[slot.t])?.perturbation();
        let order = ring.additive_order(&w);
        let expected = match slot.modulus {
            Modulus::Torsion(m) => Some(BigInt::from(m)),
            Modulus::Free => None,
        };
        let own = ring.pair(slot.s, slot.t);
        let isolated = w
            .com
            .iter()
            .enumerate()
            .all(|(k, c)| k == own || c.is_zero());
        ok &= order == expected && isolated;
        orders.push(match order {
            Some(o) => format!("{o}"),
            None => "inf".into(),
        });
    }
    report.push(
        "degree2-orders",
        ok,
        format!("orders ({})", orders.join(", ")),
    );

    let mut bad = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let w = unit_commutator(&ring, &generators[s], &generators[t])?.perturbation();
            if w != ring.lie_image(&lie, &lie.generator_bracket(s, t))? {
                bad.push(format!("({s},{t})"));
            }
        }
    }
    report.push("bracket-image", bad.is_empty(), bad.join(" "));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: u64 = 0;

    fn m0() -> CoxeterMatrix {
        CoxeterMatrix::from_u64_rows(&[&[1, 6, 2], &[6, 1, 10], &[2, 10, 1]]).unwrap()
    }

    #[test]
    fn commutator_classes_of_m0() {
        let r = TruncatedRing::new(m0()).unwrap();
        assert_eq!(r.class_of(0, 1), CommutatorClass::Torsion(3));
        assert_eq!(r.class_of(1, 2), CommutatorClass::Torsion(5));
        assert_eq!(r.class_of(0, 2), CommutatorClass::Zero);
        let infs =
            TruncatedRing::new(CoxeterMatrix::from_upper(3, |_, _| Entry::Infinity).unwrap())
                .unwrap();
        assert!(infs.classes().iter().all(|c| *c == CommutatorClass::Free));
        let odd = CoxeterMatrix::from_u64_rows(&[&[1, 3], &[3, 1]]).unwrap();
        assert!(matches!(
            TruncatedRing::new(odd),
            Err(Error::NotEven { .. })
        ));
    }

    #[test]
    fn rewriting_rule() {
        let r = TruncatedRing::new(m0()).unwrap();
        let (x0, x1, x2) = (r.x(0), r.x(1), r.x(2));
        let x0x1 = r.mul(&x0, &x1).unwrap();
        let x1x0 = r.mul(&x1, &x0).unwrap();
        assert_eq!(x0x1, r.add(&x1x0, &r.commutator_class(0, 1)).unwrap());
        assert_eq!(x1x0.lo[r.pair(0, 1)], BigInt::from(1));
        assert!(x1x0.com.iter().all(Zero::is_zero));
        assert!(r.mul(&x0x1, &x2).unwrap().is_zero());
        // m_{0,2} = 2: x0 and x2 commute
        assert_eq!(r.mul(&x0, &x2).unwrap(), r.mul(&x2, &x0).unwrap());
        // three copies of c_{0,1} vanish
        let c = r.commutator_class(0, 1);
        assert!(r.scale(&BigInt::from(3), &c).unwrap().is_zero());
    }

    #[test]
    fn inverses() {
        let r = TruncatedRing::new(m0()).unwrap();
        let a = Unit::from_perturbation(&r, &r.x(0)).unwrap();
        let inv = unit_inverse(&r, &a).unwrap();
        let expected = r
            .element(1, &[-1, 0, 0], &[1, 0, 0], &[0; 3], &[0; 3])
            .unwrap();
        assert_eq!(inv.element(), &expected);
        assert!(a.mul(&r, &inv).unwrap().is_one());
        assert!(unit_inverse(&r, &Unit::one(&r)).unwrap().is_one());

        let w = r.add(&r.x(0), &r.x(1)).unwrap();
        let b = Unit::from_perturbation(&r, &w).unwrap();
        let inv = unit_inverse(&r, &b).unwrap();
        let w2 = r.mul(&w, &w).unwrap();
        let expected = r.add(&r.sub(&r.one(), &w).unwrap(), &w2).unwrap();
        assert_eq!(inv.element(), &expected);
        assert!(b.mul(&r, &inv).unwrap().is_one());
        assert!(inv.mul(&r, &b).unwrap().is_one());
        assert_eq!(Unit::new(r.constant(2)), Err(Error::NotUnit));
    }

    #[test]
    fn commutators() {
        let r = TruncatedRing::new(m0()).unwrap();
        let g = |s| Unit::from_perturbation(&r, &r.x(s)).unwrap();
        let c = unit_commutator(&r, &g(0), &g(1)).unwrap();
        assert_eq!(c.perturbation(), r.commutator_class(0, 1));
        assert!(unit_commutator(&r, &g(0), &g(0)).unwrap().is_one());
        assert!(unit_commutator(&r, &g(0), &g(2)).unwrap().is_one());
    }

    #[test]
    fn power_formula_small_cases() {
        let r = TruncatedRing::new(m0()).unwrap();
        let (u, v) = (r.x(0), r.add(&r.x(1), &r.x(2)).unwrap());
        for n in 1..=6 {
            assert!(power_formula_check(&r, &u, &v, n).unwrap());
        }
        // n = 2 written out: 1 + 2u + 2v + (u² + v² + vu) + 3uv
        let a = r.add(&r.one(), &u).unwrap();
        let b = r.add(&r.one(), &v).unwrap();
        let lhs = r.pow(&r.mul(&a, &b).unwrap(), 2).unwrap();
        let two = BigInt::from(2);
        let quad = r
            .add(
                &r.add(&r.mul(&u, &u).unwrap(), &r.mul(&v, &v).unwrap())
                    .unwrap(),
                &r.mul(&v, &u).unwrap(),
            )
            .unwrap();
        let mut rhs = r
            .add(&r.one(), &r.scale(&two, &r.add(&u, &v).unwrap()).unwrap())
            .unwrap();
        rhs = r.add(&rhs, &quad).unwrap();
        rhs = r
            .add(
                &rhs,
                &r.scale(&BigInt::from(3), &r.mul(&u, &v).unwrap()).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            power_formula_check(&r, &r.one(), &v, 1),
            Err(Error::NotInIdeal)
        );
    }

    #[test]
    fn commutator_power_with_modulus_four() {
        let m = CoxeterMatrix::from_u64_rows(&[&[1, 8], &[8, 1]]).unwrap();
        let r = TruncatedRing::new(m).unwrap();
        let a = Unit::from_perturbation(&r, &r.x(0)).unwrap();
        let b = Unit::from_perturbation(&r, &r.x(1)).unwrap();
        assert!(commutator_power_check(&r, &a, &b, 3).unwrap());
        assert!(commutator_power_check(&r, &a, &b, 1).unwrap());
        let ab = a.mul(&r, &b).unwrap();
        let ba = b.mul(&r, &a).unwrap();
        let lhs = ba
            .pow(&r, -3)
            .unwrap()
            .mul(&r, &ab.pow(&r, 3).unwrap())
            .unwrap();
        let expected = r
            .add(
                &r.one(),
                &r.scale(&BigInt::from(3), &r.commutator_class(0, 1))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(lhs.element(), &expected);
        assert_eq!(expected.com[0], BigInt::from(3));
    }

    #[test]
    fn magnus_words() {
        let r = TruncatedRing::new(m0()).unwrap();
        let one_letter = magnus_eval(&r, &[Letter::new(1)]).unwrap();
        assert_eq!(one_letter.perturbation(), r.x(1));
        assert!(magnus_eval(&r, &[Letter::new(1), Letter::inv(1)])
            .unwrap()
            .is_one());
        let stst = magnus_eval(&r, &pi_word(0, 1, 4)).unwrap();
        let st = r
            .mul(
                &r.add(&r.one(), &r.x(0)).unwrap(),
                &r.add(&r.one(), &r.x(1)).unwrap(),
            )
            .unwrap();
        assert_eq!(stst.element(), &r.pow(&st, 2).unwrap());
        assert_eq!(
            pi_word(0, 1, 3),
            vec![Letter::new(0), Letter::new(1), Letter::new(0)]
        );
        assert!(magnus_eval(&r, &[Letter::new(3)]).is_err());
    }

    #[test]
    fn relations_and_negative_control() {
        let r = TruncatedRing::new(m0()).unwrap();
        let report = check_relations(&r).unwrap();
        assert_eq!(report.checks.len(), 3);
        assert!(report.all_passed());

        let all2 =
            TruncatedRing::new(CoxeterMatrix::from_upper(3, |_, _| Entry::Finite(2)).unwrap())
                .unwrap();
        assert!(check_relations(&all2).unwrap().all_passed());

        let mut classes = r.classes().to_vec();
        classes[0] = CommutatorClass::Torsion(4);
        let bad = TruncatedRing::with_classes(m0(), classes).unwrap();
        let report = check_relations(&bad).unwrap();
        assert!(!report.get("relation(0,1)").unwrap().passed);
        assert!(report.get("relation(1,2)").unwrap().passed);
    }

    #[test]
    fn theorem_checks() {
        let report = verify_magnus_model(&m0()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(
            report.get("degree2-orders").unwrap().detail,
            "orders (3, 5)"
        );
        let infs = CoxeterMatrix::from_u64_rows(&[&[1, INF], &[INF, 1]]).unwrap();
        let report = verify_magnus_model(&infs).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.get("degree2-orders").unwrap().detail, "orders (inf)");
    }

    #[test]
    fn orders() {
        let r = TruncatedRing::new(m0()).unwrap();
        let c = r
            .add(&r.commutator_class(0, 1), &r.commutator_class(1, 2))
            .unwrap();
        assert_eq!(r.additive_order(&c), Some(BigInt::from(15)));
        assert_eq!(r.additive_order(&r.x(0)), None);
        assert_eq!(r.additive_order(&r.zero()), Some(BigInt::one()));
    }
}
