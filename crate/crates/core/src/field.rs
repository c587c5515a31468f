//! Lie algebras `L_K[M]` of right-angled matrices over a prime field
//! `K = F_p`, and centralizers of degree-1 elements.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::is_prime;
use crate::lie::{Modulus, StructureTable};
use crate::linalg::reduce_mod;
use crate::{CoxeterMatrix, Entry, Error};

/// `L_{F_p}[M]` for a right-angled `M`: degree 1 has basis `u_s`, degree 2
/// has one basis vector `v_{s,t}` per pair `s < t` with `m_{s,t} = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldLieAlgebra {
    p: u64,
    matrix: CoxeterMatrix,
    slots: Vec<(usize, usize)>,
}

impl FieldLieAlgebra {
    pub fn new(matrix: CoxeterMatrix, p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        matrix.require_right_angled()?;
        let slots = matrix
            .pairs()
            .filter(|&(s, t)| matrix.get(s, t) == Entry::Infinity)
            .collect();
        Ok(FieldLieAlgebra { p, matrix, slots })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    pub fn dim1(&self) -> usize {
        self.matrix.rank()
    }

    pub fn dim2(&self) -> usize {
        self.slots.len()
    }

    fn check(&self, a: &[u64]) -> Result<(), Error> {
        if a.len() == self.dim1() {
            Ok(())
        } else {
            Err(Error::ElementMismatch)
        }
    }

    /// Bracket of two degree-1 vectors, as a degree-2 vector.
    pub fn bracket(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>, Error> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p;
        Ok(self
            .slots
            .iter()
            .map(|&(s, t)| (a[s] % p * (b[t] % p) + p * p - a[t] % p * (b[s] % p)) % p)
            .collect())
    }

    /// Matrix of the linear map `b ↦ [a, b]` from degree 1 to degree 2, one
    /// row per degree-2 coordinate.
    pub fn bracket_map(&self, a: &[u64]) -> Result<Vec<Vec<u64>>, Error> {
        self.check(a)?;
        let p = self.p;
        Ok(self
            .slots
            .iter()
            .map(|&(s, t)| {
                let mut row = vec![0; self.dim1()];
                row[t] = a[s] % p;
                row[s] = (p - a[t] % p) % p;
                row
            })
            .collect())
    }

    /// A basis of the centralizer `{b ∈ L_1 : [a, b] = 0}`.
    ///
    /// With `X = supp(a)`, the basis is the restriction of `a` to each
    /// connected component of the `∞`-graph on `X`, followed by the `u_s`
    /// with `m_{s,x} = 2` for every `x ∈ X`.
    pub fn centralizer(&self, a: &[u64]) -> Result<Vec<Vec<u64>>, Error> {
        self.check(a)?;
        let n = self.dim1();
        let p = self.p;
        let in_support: Vec<bool> = a.iter().map(|&x| x % p != 0).collect();

        let mut component = vec![usize::MAX; n];
        let mut basis = Vec::new();
        for root in (0..n).filter(|&s| in_support[s]) {
            if component[root] != usize::MAX {
                continue;
            }
            let mut alpha = vec![0; n];
            let mut stack = vec![root];
            component[root] = root;
            while let Some(s) = stack.pop() {
                alpha[s] = a[s] % p;
                for t in 0..n {
                    if in_support[t]
                        && component[t] == usize::MAX
                        && self.matrix.get(s, t) == Entry::Infinity
                    {
                        component[t] = root;
                        stack.push(t);
                    }
                }
            }
            basis.push(alpha);
        }

        for s in 0..n {
            let commutes_with_support = (0..n)
                .filter(|&x| in_support[x])
                .all(|x| x != s && self.matrix.get(s, x) == Entry::Finite(2));
            if commutes_with_support {
                let mut u = vec![0; n];
                u[s] = 1;
                basis.push(u);
            }
        }
        Ok(basis)
    }

    pub fn structure_table(&self) -> StructureTable {
        let n = self.dim1();
        let unit = |s: usize| {
            let mut u = vec![0; n];
            u[s] = 1;
            u
        };
        StructureTable {
            moduli: vec![Modulus::Torsion(self.p); self.dim2()],
            brackets: self
                .matrix
                .pairs()
                .map(|(s, t)| {
                    self.bracket(&unit(s), &unit(t))
                        .expect("basis vectors have the right length")
                        .into_iter()
                        .map(|x| x as i64)
                        .collect()
                })
                .collect(),
        }
    }

    /// Reduces an integer vector into `F_p`.
    pub fn vector(&self, v: &[i64]) -> Vec<u64> {
        v.iter().map(|&x| reduce_mod(x, self.p)).collect()
    }
}
