//! The graded Lie ring `L[M] = L_1[M] ⊕ L_2[M]` of an even Coxeter matrix.
//!
//! `L_1` is free abelian on generators `u_s`. `L_2` has one coordinate
//! `v_{s,t}` per pair `s < t` with `m_{s,t} != 2`: cyclic of order `n` when
//! `m_{s,t} = 2n` and infinite cyclic when `m_{s,t} = ∞`. The bracket is
//! `[u_s, u_t] = v_{s,t}` (zero when `m_{s,t} = 2`) and vanishes as soon as
//! one argument lies in `L_2`.

mod family;
mod morphism;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factorize, gcd, PrimePower};
use crate::{CoxeterMatrix, Entry, Error};

pub use family::{
    collapse_p, contract_c, dilate, lie_iso_family, tensor_field, FamilyDecision, ReducedMismatch,
    Separation,
};
pub use morphism::{correspondence, verify_morphism, MorphismWitness};

/// Order of a degree-2 coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modulus {
    /// `Z/nZ` with `n >= 2`.
    Torsion(u64),
    Free,
}

impl Modulus {
    /// Canonical representative: `[0, n)` for torsion, unchanged otherwise.
    pub fn reduce(self, x: i128) -> Result<i64, Error> {
        match self {
            Modulus::Torsion(n) => Ok(x.rem_euclid(n as i128) as i64),
            Modulus::Free => i64::try_from(x).map_err(|_| Error::Overflow),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Torsion(n) => write!(f, "mod {n}"),
            Modulus::Free => f.write_str("free"),
        }
    }
}

/// A degree-2 basis element `v_{s,t}`, `s < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub s: usize,
    pub t: usize,
    pub modulus: Modulus,
}

/// An element of `L[M]`. Torsion coordinates are kept in `[0, n)`, so
/// equality is coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub deg1: Vec<i64>,
    pub deg2: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    matrix: CoxeterMatrix,
    slots: Vec<Slot>,
    // slot position for the pair (s, t), s < t, at s * n + t
    slot_index: Vec<Option<usize>>,
}

impl LieAlgebra {
    /// Builds `L[M]`; `M` must be even.
    pub fn new(matrix: CoxeterMatrix) -> Result<Self, Error> {
        matrix.require_even()?;
        let n = matrix.rank();
        let mut slots = Vec::new();
        let mut slot_index = vec![None; n * n];
        for (s, t) in matrix.pairs() {
            let modulus = match matrix.get(s, t) {
                Entry::Finite(2) => continue,
                Entry::Finite(m) => Modulus::Torsion(m / 2),
                Entry::Infinity => Modulus::Free,
            };
            slot_index[s * n + t] = Some(slots.len());
            slots.push(Slot { s, t, modulus });
        }
        Ok(LieAlgebra {
            matrix,
            slots,
            slot_index,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn moduli(&self) -> Vec<Modulus> {
        self.slots.iter().map(|s| s.modulus).collect()
    }

    /// Rank of the free module `L_1`.
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Position of `v_{s,t}` (`s < t`) in the degree-2 coordinates.
    pub fn slot_of(&self, s: usize, t: usize) -> Option<usize> {
        let n = self.rank();
        if s < t && t < n {
            self.slot_index[s * n + t]
        } else {
            None
        }
    }

    pub fn zero(&self) -> LieElement {
        LieElement {
            deg1: vec![0; self.rank()],
            deg2: vec![0; self.slots.len()],
        }
    }

    /// The generator `u_s`.
    pub fn generator(&self, s: usize) -> LieElement {
        let mut e = self.zero();
        e.deg1[s] = 1;
        e
    }

    /// The degree-2 basis element at slot position `k`.
    pub fn slot_generator(&self, k: usize) -> LieElement {
        let mut e = self.zero();
        e.deg2[k] = 1;
        e
    }

    /// Builds an element from raw coordinates, reducing torsion coordinates.
    pub fn element(&self, deg1: Vec<i64>, deg2: Vec<i64>) -> Result<LieElement, Error> {
        if deg1.len() != self.rank() || deg2.len() != self.slots.len() {
            return Err(Error::ElementMismatch);
        }
        let deg2 = self.reduce_deg2(deg2.iter().map(|&x| x as i128))?;
        Ok(LieElement { deg1, deg2 })
    }

    pub(crate) fn reduce_deg2(
        &self,
        raw: impl IntoIterator<Item = i128>,
    ) -> Result<Vec<i64>, Error> {
        raw.into_iter()
            .zip(&self.slots)
            .map(|(x, slot)| slot.modulus.reduce(x))
            .collect()
    }

    pub fn contains(&self, a: &LieElement) -> bool {
        a.deg1.len() == self.rank()
            && a.deg2.len() == self.slots.len()
            && a.deg2
                .iter()
                .zip(&self.slots)
                .all(|(&x, slot)| match slot.modulus {
                    Modulus::Torsion(n) => 0 <= x && (x as u64) < n,
                    Modulus::Free => true,
                })
    }

    fn check(&self, a: &LieElement) -> Result<(), Error> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementMismatch)
        }
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.combine(1, a, 1, b)
    }

    pub fn sub(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.combine(1, a, -1, b)
    }

    pub fn scale(&self, k: i64, a: &LieElement) -> Result<LieElement, Error> {
        self.combine(k, a, 0, &self.zero())
    }

    /// `x·a + y·b`.
    pub fn combine(
        &self,
        x: i64,
        a: &LieElement,
        y: i64,
        b: &LieElement,
    ) -> Result<LieElement, Error> {
        self.check(a)?;
        self.check(b)?;
        let lin = |p: i64, q: i64| -> i128 { x as i128 * p as i128 + y as i128 * q as i128 };
        let deg1 = a
            .deg1
            .iter()
            .zip(&b.deg1)
            .map(|(&p, &q)| i64::try_from(lin(p, q)).map_err(|_| Error::Overflow))
            .collect::<Result<_, _>>()?;
        let deg2 = self.reduce_deg2(a.deg2.iter().zip(&b.deg2).map(|(&p, &q)| lin(p, q)))?;
        Ok(LieElement { deg1, deg2 })
    }

    /// The Lie bracket. Only degree-1 parts contribute: the coefficient on
    /// `v_{s,t}` is `a_s b_t - a_t b_s`.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.check(a)?;
        self.check(b)?;
        let deg2 = self.reduce_deg2(self.slots.iter().map(|slot| {
            let (s, t) = (slot.s, slot.t);
            a.deg1[s] as i128 * b.deg1[t] as i128 - a.deg1[t] as i128 * b.deg1[s] as i128
        }))?;
        Ok(LieElement {
            deg1: vec![0; self.rank()],
            deg2,
        })
    }

    /// `[u_s, u_t]` for any `s, t`.
    pub fn generator_bracket(&self, s: usize, t: usize) -> LieElement {
        self.bracket(&self.generator(s), &self.generator(t))
            .expect("generators belong to the algebra")
    }

    /// Primary decomposition of the torsion of `L_2` and its free rank.
    pub fn torsion_invariant(&self) -> TorsionInvariant {
        let mut prime_powers = Vec::new();
        let mut free_rank = 0;
        for slot in &self.slots {
            match slot.modulus {
                Modulus::Torsion(n) => prime_powers.extend(factorize(n)),
                Modulus::Free => free_rank += 1,
            }
        }
        prime_powers.sort_unstable();
        TorsionInvariant {
            prime_powers,
            free_rank,
        }
    }

    /// Degree-2 coordinate orders and the coordinates of `[u_s, u_t]` for
    /// every pair `s < t`.
    pub fn structure_table(&self) -> StructureTable {
        StructureTable {
            moduli: self.moduli(),
            brackets: self
                .matrix
                .pairs()
                .map(|(s, t)| self.generator_bracket(s, t).deg2)
                .collect(),
        }
    }

    /// Structure of the algebra with `L_2` replaced by `k·L_2` and bracket
    /// `k·[-,-]`. `k·v_{s,t}` generates a cyclic group of order
    /// `n / gcd(n, k)` inside `Z/n`; coordinates that become trivial are
    /// dropped, and each bracket `[u_s, u_t]` becomes the generator `k·v_{s,t}`.
    pub fn scaled_structure(&self, k: u64) -> StructureTable {
        let mut keep = Vec::new();
        let mut moduli = Vec::new();
        for slot in &self.slots {
            let m = match slot.modulus {
                Modulus::Torsion(n) => match n / gcd(n, k) {
                    1 => None,
                    q => Some(Modulus::Torsion(q)),
                },
                Modulus::Free => Some(Modulus::Free),
            };
            keep.push(m.is_some());
            moduli.extend(m);
        }
        let brackets = self
            .matrix
            .pairs()
            .map(|(s, t)| {
                let mut row = vec![0; moduli.len()];
                let mut pos = 0;
                for (i, _) in self.slots.iter().enumerate() {
                    if !keep[i] {
                        continue;
                    }
                    if Some(i) == self.slot_of(s, t) {
                        row[pos] = 1;
                    }
                    pos += 1;
                }
                row
            })
            .collect();
        StructureTable { moduli, brackets }
    }

    /// Structure of `F_p ⊗ L[M]`: `Z/n ⊗ F_p` is `F_p` when `p | n` and zero
    /// otherwise, `Z ⊗ F_p = F_p`; bracket coefficients are reduced mod `p`.
    pub fn tensor_structure(&self, p: u64) -> StructureTable {
        let keep: Vec<bool> = self
            .slots
            .iter()
            .map(|slot| match slot.modulus {
                Modulus::Torsion(n) => n % p == 0,
                Modulus::Free => true,
            })
            .collect();
        let moduli = keep
            .iter()
            .filter(|&&k| k)
            .map(|_| Modulus::Torsion(p))
            .collect();
        let brackets = self
            .matrix
            .pairs()
            .map(|(s, t)| {
                let full = self.generator_bracket(s, t).deg2;
                full.iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(&x, _)| (x as i128).rem_euclid(p as i128) as i64)
                    .collect()
            })
            .collect();
        StructureTable { moduli, brackets }
    }
}

/// Support of the degree-1 part: indices with nonzero coefficient.
pub fn support(a: &LieElement) -> Vec<usize> {
    a.deg1
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(s, _)| s)
        .collect()
}

/// `p`-support of the degree-1 part: indices whose coefficient is prime to `p`.
pub fn p_support(a: &LieElement, p: u64) -> Result<Vec<usize>, Error> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(a.deg1
        .iter()
        .enumerate()
        .filter(|(_, &x)| (x as i128).rem_euclid(p as i128) != 0)
        .map(|(s, _)| s)
        .collect())
}

/// The isomorphism type of `L_2` as an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionInvariant {
    /// Sorted multiset of prime powers in the primary decomposition.
    pub prime_powers: Vec<PrimePower>,
    pub free_rank: usize,
}

impl fmt::Display for TorsionInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, pp) in self.prime_powers.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        write!(f, "}} free rank {}", self.free_rank)
    }
}

/// Orders of the degree-2 coordinates together with the coordinates of
/// `[u_s, u_t]` for each pair `s < t` in lexicographic order. Two algebras
/// with equal tables are isomorphic through the identity on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub moduli: Vec<Modulus>,
    pub brackets: Vec<Vec<i64>>,
}
