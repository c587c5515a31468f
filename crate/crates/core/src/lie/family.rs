//! Operators on the families `E(c, d)` and the isomorphism decision for
//! `L[M]` inside one family.

use alloc::vec::Vec;

use super::{LieAlgebra, Modulus, MorphismWitness, TorsionInvariant};
use crate::arith::is_prime;
use crate::field::FieldLieAlgebra;
use crate::lie::verify_morphism;
use crate::{matrices_isomorphic, CoxeterMatrix, Entry, Error, Family, IsoWitness, Report};

fn map_entries(m: &CoxeterMatrix, f: impl Fn(Entry) -> Entry) -> CoxeterMatrix {
    CoxeterMatrix::from_upper(m.rank(), |s, t| f(m.get(s, t)))
        .expect("entry maps keep off-diagonal entries >= 2")
}

/// `M^(d)` for `M ∈ E(1, d)`: `2` and `2d` become `2`, `2d^r` becomes
/// `2d^(r-1)` for `r >= 2`, `∞` stays.
pub fn dilate(m: &CoxeterMatrix, d: u64) -> Result<CoxeterMatrix, Error> {
    m.require_family(Family::new(1, d)?)?;
    Ok(map_entries(m, |e| match e {
        Entry::Finite(2) => Entry::Finite(2),
        Entry::Finite(x) => Entry::Finite(x / d),
        Entry::Infinity => Entry::Infinity,
    }))
}

/// `M_(p)` for `M ∈ E(1, d)`: the right-angled matrix keeping the entries
/// equal to `2` and sending every other entry to `∞`.
pub fn collapse_p(m: &CoxeterMatrix, d: u64) -> Result<CoxeterMatrix, Error> {
    m.require_family(Family::new(1, d)?)?;
    Ok(map_entries(m, |e| match e {
        Entry::Finite(2) => Entry::Finite(2),
        _ => Entry::Infinity,
    }))
}

/// `M^(c)` for `M ∈ E(c, d)`: entries `2c` become `2`, the rest is kept.
/// The result lies in `E(1, d)`.
pub fn contract_c(m: &CoxeterMatrix, family: Family) -> Result<CoxeterMatrix, Error> {
    m.require_family(family)?;
    let twice_c = Entry::Finite(2 * family.c());
    Ok(map_entries(m, |e| {
        if e == twice_c {
            Entry::Finite(2)
        } else {
            e
        }
    }))
}

/// `F_p ⊗ L[M]` realized as `L_{F_p}[M_(p)]`, for `M ∈ E(1, d)` and a prime
/// `p | d`.
///
/// Panics if the surviving degree-2 coordinates of `L[M]` (torsion of order
/// divisible by `p`, and free ones) do not match the `∞` entries of `M_(p)`.
pub fn tensor_field(l: &LieAlgebra, p: u64, d: u64) -> Result<FieldLieAlgebra, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let collapsed = collapse_p(l.matrix(), d)?;
    if d % p != 0 {
        return Err(Error::PrimeDoesNotDivide { p, d });
    }
    let field = FieldLieAlgebra::new(collapsed, p)?;
    let surviving: Vec<(usize, usize)> = l
        .slots()
        .iter()
        .filter(|slot| match slot.modulus {
            Modulus::Torsion(n) => n % p == 0,
            Modulus::Free => true,
        })
        .map(|slot| (slot.s, slot.t))
        .collect();
    assert_eq!(
        surviving,
        field.slots(),
        "F_p ⊗ L[M] and L_Fp[M_(p)] disagree on degree-2 coordinates"
    );
    Ok(field)
}

/// Outcome of [`lie_iso_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDecision {
    Isomorphic {
        matrix_witness: IsoWitness,
        witness: MorphismWitness,
        report: Report,
    },
    NonIsomorphic(Separation),
}

/// Why two algebras were declared non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// The ranks of `L_1` differ.
    Degree1Rank { source: usize, target: usize },
    /// `L_2` are non-isomorphic abelian groups.
    Torsion {
        source: TorsionInvariant,
        target: TorsionInvariant,
    },
    /// No computed Lie-level invariant separates the algebras; the matrices
    /// are non-isomorphic (as witnessed by the reduced matrices) and the
    /// rigidity theorem for `E(c, d)` transfers this to the Lie rings.
    ByTheorem(ReducedMismatch),
}

impl Separation {
    pub fn is_invariant(&self) -> bool {
        !matches!(self, Separation::ByTheorem(_))
    }
}

/// How the reduced matrices of two non-isomorphic matrices differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedMismatch {
    ClassCount {
        source: usize,
        target: usize,
    },
    /// The multisets of (class size, label) pairs differ.
    ClassData,
    /// Class data agree but no isomorphism of reduced matrices respects them.
    NoClassIsomorphism,
}

/// Decides `L[M] ≅ L[N]` for `M, N ∈ E(c, d)`.
///
/// Within the family the Lie rings are isomorphic exactly when the matrices
/// are; a matrix isomorphism gives the permutation-induced witness, which is
/// verified before it is returned.
pub fn lie_iso_family(
    m: &CoxeterMatrix,
    n: &CoxeterMatrix,
    family: Family,
) -> Result<FamilyDecision, Error> {
    m.require_family(family)?;
    n.require_family(family)?;
    let src = LieAlgebra::new(m.clone())?;
    let dst = LieAlgebra::new(n.clone())?;

    if let Some(matrix_witness) = matrices_isomorphic(m, n) {
        let witness = MorphismWitness::from_permutation(&src, &dst, &matrix_witness)?;
        let report = verify_morphism(&src, &dst, &witness)?;
        return Ok(FamilyDecision::Isomorphic {
            matrix_witness,
            witness,
            report,
        });
    }

    if src.rank() != dst.rank() {
        return Ok(FamilyDecision::NonIsomorphic(Separation::Degree1Rank {
            source: src.rank(),
            target: dst.rank(),
        }));
    }
    let (ts, tt) = (src.torsion_invariant(), dst.torsion_invariant());
    if ts != tt {
        return Ok(FamilyDecision::NonIsomorphic(Separation::Torsion {
            source: ts,
            target: tt,
        }));
    }

    let mr = m.reduce()?;
    let nr = n.reduce()?;
    let mismatch = if mr.len() != nr.len() {
        ReducedMismatch::ClassCount {
            source: mr.len(),
            target: nr.len(),
        }
    } else {
        let data = |r: &crate::ReducedMatrix| {
            let mut v: Vec<(usize, Option<Entry>)> = r
                .sizes
                .iter()
                .copied()
                .zip(r.labels.iter().copied())
                .collect();
            v.sort_unstable();
            v
        };
        if data(&mr) != data(&nr) {
            ReducedMismatch::ClassData
        } else {
            ReducedMismatch::NoClassIsomorphism
        }
    };
    Ok(FamilyDecision::NonIsomorphic(Separation::ByTheorem(
        mismatch,
    )))
}
