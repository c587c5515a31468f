//! Exhaustive oracles over small prime fields.
//!
//! [`brute_lie_iso_field`] searches every invertible degree-1 map for a
//! graded isomorphism `L_{F_p}[M] → L_{F_p}[N]` between right-angled
//! matrices. For right-angled matrices `L_2` is spanned by brackets, so the
//! degree-2 part of an isomorphism is forced by its degree-1 part and only
//! the degree-1 matrix has to be enumerated.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::FieldLieAlgebra;
use crate::linalg::{rank_mod_p, EchelonBasis};
use crate::{CoxeterMatrix, Entry, Error};

pub const MAX_DIMENSION: usize = 4;
pub const PRIMES: [u64; 3] = [2, 3, 5];

/// A square matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn column(&self, j: usize) -> Vec<u64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn from_columns(p: u64, nrows: usize, columns: &[Vec<u64>]) -> Self {
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        FpMatrix { p, rows }
    }

    pub fn is_invertible(&self) -> bool {
        let n = self.rows.len();
        self.rows.iter().all(|r| r.len() == n) && rank_mod_p(&self.rows, self.p) == n
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
            .collect()
    }
}

fn check_guard(n: usize, p: u64) -> Result<(), Error> {
    if !PRIMES.contains(&p) {
        return Err(Error::SearchGuard {
            what: "prime",
            value: p,
            limit: 5,
        });
    }
    if n == 0 || n > MAX_DIMENSION {
        return Err(Error::SearchGuard {
            what: "dimension",
            value: n as u64,
            limit: MAX_DIMENSION as u64,
        });
    }
    Ok(())
}

/// Every invertible `n × n` matrix over `F_p`, each exactly once, in
/// row-major lexicographic order of entries.
pub fn enumerate_invertible(n: usize, p: u64) -> Result<InvertibleMatrices, Error> {
    check_guard(n, p)?;
    Ok(InvertibleMatrices::new(n, p))
}

/// Iterator returned by [`enumerate_invertible`].
///
/// Rows are chosen one at a time as odometer digits; a row is accepted only
/// if it is independent of the rows above it, so singular prefixes are never
/// extended.
#[derive(Clone, Debug)]
pub struct InvertibleMatrices {
    n: usize,
    p: u64,
    // row vectors encoded as integers in 0..p^n, most significant entry first
    codes: Vec<u64>,
    // spans of the first k rows, for k = 0..=codes.len()
    spans: Vec<EchelonBasis>,
    limit: u64,
    started: bool,
    done: bool,
}

impl InvertibleMatrices {
    fn new(n: usize, p: u64) -> Self {
        InvertibleMatrices {
            n,
            p,
            codes: Vec::with_capacity(n),
            spans: vec![EchelonBasis::new(p)],
            limit: p.pow(n as u32),
            started: false,
            done: false,
        }
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for x in v.iter_mut().rev() {
            *x = code % self.p;
            code /= self.p;
        }
        v
    }

    // Smallest code >= start that is independent of the current rows.
    fn next_row(&self, start: u64) -> Option<u64> {
        let span = self.spans.last().expect("span stack is never empty");
        (start..self.limit).find(|&c| !span.contains(&self.decode(c)))
    }

    fn push(&mut self, code: u64) {
        let mut span = self
            .spans
            .last()
            .expect("span stack is never empty")
            .clone();
        span.insert(&self.decode(code));
        self.codes.push(code);
        self.spans.push(span);
    }

    fn pop(&mut self) -> Option<u64> {
        self.spans.pop();
        self.codes.pop()
    }

    // Advance to the next full matrix; `resume` is the code to try first at
    // the current depth.
    fn advance(&mut self, mut resume: u64) -> bool {
        loop {
            match self.next_row(resume) {
                Some(code) => {
                    self.push(code);
                    if self.codes.len() == self.n {
                        return true;
                    }
                    resume = 0;
                }
                None => match self.pop() {
                    Some(prev) => resume = prev + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for InvertibleMatrices {
    type Item = FpMatrix;

    fn next(&mut self) -> Option<FpMatrix> {
        if self.done {
            return None;
        }
        let resume = if self.started {
            self.pop().map_or(self.limit, |last| last + 1)
        } else {
            self.started = true;
            0
        };
        if !self.advance(resume) {
            self.done = true;
            return None;
        }
        let rows = self.codes.iter().map(|&c| self.decode(c)).collect();
        Some(FpMatrix { p: self.p, rows })
    }
}

/// A graded isomorphism `L_{F_p}[M] → L_{F_p}[N]`: column `s` of `f1` is the
/// image of `u_s`, column `k` of `f2` the image of the `k`-th degree-2 basis
/// vector of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldIsoWitness {
    pub f1: FpMatrix,
    pub f2: FpMatrix,
}

impl FieldIsoWitness {
    /// Checks invertibility of both parts and that `[f1 u_s, f1 u_t]` equals
    /// `f2([u_s, u_t])` for every pair `s < t`.
    pub fn verify(&self, src: &FieldLieAlgebra, dst: &FieldLieAlgebra) -> bool {
        if src.dim1() != dst.dim1() || src.dim2() != dst.dim2() || !self.f1.is_invertible() {
            return false;
        }
        if src.dim2() > 0 && !self.f2.is_invertible() {
            return false;
        }
        let n = src.dim1();
        let unit = |s: usize| {
            let mut u = vec![0; n];
            u[s] = 1;
            u
        };
        src.matrix().pairs().all(|(s, t)| {
            let lhs = dst
                .bracket(&self.f1.column(s), &self.f1.column(t))
                .expect("dimensions checked");
            let src_bracket = src.bracket(&unit(s), &unit(t)).expect("dimensions checked");
            let rhs = if src.dim2() == 0 {
                vec![0; dst.dim2()]
            } else {
                self.f2.apply(&src_bracket)
            };
            lhs == rhs
        })
    }
}

/// First graded isomorphism `L_{F_p}[M] → L_{F_p}[N]` in enumeration order,
/// or `None`.
///
/// For each invertible degree-1 matrix: every commuting pair (`m_{s,t} = 2`)
/// must map to commuting images, the forced degree-2 map sends `v_{s,t}` to
/// `[f1 u_s, f1 u_t]`, and that map must be invertible.
pub fn brute_lie_iso_field(
    m: &CoxeterMatrix,
    n: &CoxeterMatrix,
    p: u64,
) -> Result<Option<FieldIsoWitness>, Error> {
    let src = FieldLieAlgebra::new(m.clone(), p)?;
    let dst = FieldLieAlgebra::new(n.clone(), p)?;
    check_guard(src.dim1(), p)?;
    if src.dim1() != dst.dim1() || src.dim2() != dst.dim2() {
        return Ok(None);
    }
    let size = src.dim1();
    let commuting: Vec<(usize, usize)> = m
        .pairs()
        .filter(|&(s, t)| m.get(s, t) == Entry::Finite(2))
        .collect();
    for f1 in enumerate_invertible(size, p)? {
        let images: Vec<Vec<u64>> = (0..size).map(|s| f1.column(s)).collect();
        let commutes = commuting.iter().all(|&(s, t)| {
            dst.bracket(&images[s], &images[t])
                .expect("dimensions match")
                .iter()
                .all(|&x| x == 0)
        });
        if !commutes {
            continue;
        }
        let columns: Vec<Vec<u64>> = src
            .slots()
            .iter()
            .map(|&(s, t)| {
                dst.bracket(&images[s], &images[t])
                    .expect("dimensions match")
            })
            .collect();
        let f2 = FpMatrix::from_columns(p, dst.dim2(), &columns);
        if src.dim2() == 0 || f2.is_invertible() {
            return Ok(Some(FieldIsoWitness { f1, f2 }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices_isomorphic;

    const INF: u64 = 0;

    #[test]
    fn general_linear_group_orders() {
        assert_eq!(enumerate_invertible(1, 2).unwrap().count(), 1);
        assert_eq!(enumerate_invertible(2, 2).unwrap().count(), 6);
        assert_eq!(enumerate_invertible(3, 2).unwrap().count(), 168);
        assert_eq!(enumerate_invertible(2, 3).unwrap().count(), 48);
        assert_eq!(enumerate_invertible(1, 5).unwrap().count(), 4);
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let all: Vec<Vec<u64>> = enumerate_invertible(2, 3)
            .unwrap()
            .map(|m| m.rows.concat())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let first = enumerate_invertible(3, 2).unwrap().next().unwrap();
        assert_eq!(
            first.rows,
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn guards() {
        assert!(matches!(
            enumerate_invertible(5, 2),
            Err(Error::SearchGuard { .. })
        ));
        assert!(matches!(
            enumerate_invertible(2, 7),
            Err(Error::SearchGuard { .. })
        ));
        assert!(matches!(
            enumerate_invertible(0, 2),
            Err(Error::SearchGuard { .. })
        ));
    }

    #[test]
    fn two_generator_cases() {
        let free = CoxeterMatrix::from_u64_rows(&[&[1, INF], &[INF, 1]]).unwrap();
        let comm = CoxeterMatrix::from_u64_rows(&[&[1, 2], &[2, 1]]).unwrap();
        let w = brute_lie_iso_field(&free, &free, 2).unwrap().unwrap();
        let l = FieldLieAlgebra::new(free.clone(), 2).unwrap();
        assert!(w.verify(&l, &l));
        assert_eq!(brute_lie_iso_field(&comm, &free, 2).unwrap(), None);
        let w = brute_lie_iso_field(&comm, &comm, 3).unwrap().unwrap();
        let l = FieldLieAlgebra::new(comm, 3).unwrap();
        assert!(w.verify(&l, &l));
    }

    #[test]
    fn path_versus_triangle_free_pair() {
        // path 0 - 1 - 2 in the inf-graph versus edge plus isolated vertex
        let path =
            CoxeterMatrix::from_u64_rows(&[&[1, INF, 2], &[INF, 1, INF], &[2, INF, 1]]).unwrap();
        let edge = CoxeterMatrix::from_u64_rows(&[&[1, INF, 2], &[INF, 1, 2], &[2, 2, 1]]).unwrap();
        assert_eq!(brute_lie_iso_field(&path, &edge, 2).unwrap(), None);
        let relabeled = path.relabel(&[1, 2, 0]);
        assert!(matrices_isomorphic(&path, &relabeled).is_some());
        let w = brute_lie_iso_field(&path, &relabeled, 2).unwrap().unwrap();
        let (a, b) = (
            FieldLieAlgebra::new(path, 2).unwrap(),
            FieldLieAlgebra::new(relabeled, 2).unwrap(),
        );
        assert!(w.verify(&a, &b));
    }

    #[test]
    fn rejects_non_right_angled() {
        let m = CoxeterMatrix::from_u64_rows(&[&[1, 4], &[4, 1]]).unwrap();
        assert!(matches!(
            brute_lie_iso_field(&m, &m, 2),
            Err(Error::NotRightAngled { .. })
        ));
        let free = CoxeterMatrix::from_u64_rows(&[&[1, INF], &[INF, 1]]).unwrap();
        assert!(matches!(
            brute_lie_iso_field(&free, &free, 7),
            Err(Error::SearchGuard { .. })
        ));
    }
}
