//! Dense integer matrices and row reduction over prime fields.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// A dense row-major matrix of `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    what: "matrix row",
                    expected: (1, cols),
                    found: (1, r.len()),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                what: "matrix product operand",
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self[(i, k)]
                        .checked_mul(rhs[(k, j)])
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn checked_apply(&self, v: &[i64]) -> Result<Vec<i64>, Error> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                what: "vector",
                expected: (self.cols, 1),
                found: (v.len(), 1),
            });
        }
        (0..self.rows)
            .map(|i| {
                v.iter().enumerate().try_fold(0i64, |acc, (k, &x)| {
                    acc.checked_add(self[(i, k)].checked_mul(x).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.rows) && self.rows == self.cols
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Canonical residue of `x` modulo `p`.
#[inline]
pub fn reduce_mod(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced row echelon form over `F_p` in place; returns the pivot columns.
pub fn rref_mod_p(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c] % p, p);
        for x in rows[r].iter_mut() {
            *x = *x % p * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] % p != 0 {
                let factor = rows[i][c] % p;
                for k in 0..ncols {
                    let sub = factor * rows[r][k] % p;
                    rows[i][k] = (rows[i][k] % p + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut work = rows.to_vec();
    rref_mod_p(&mut work, p).len()
}

/// Basis of `{x : A x = 0}` over `F_p`, where `A` has the given rows and
/// `ncols` columns.
pub fn kernel_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut work = rows.to_vec();
    let pivots = rref_mod_p(&mut work, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - work[r][f] % p) % p;
            }
            v
        })
        .collect()
}

/// Incremental echelon basis over `F_p`, used to test whether a vector is in
/// the span of the vectors inserted so far.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    p: u64,
    // each row is normalized with pivot entry 1; pivots strictly increase
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u64) -> Self {
        EchelonBasis {
            p,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn residual(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (pc, row) in &self.rows {
            let factor = w[*pc];
            if factor != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns false (and leaves the basis unchanged) when `v`
    /// is already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = self.residual(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], self.p);
        for x in w.iter_mut() {
            *x = *x * inv % self.p;
        }
        // keep earlier rows reduced at the new pivot so residual() stays exact
        for (_, row) in self.rows.iter_mut() {
            let factor = row[pc];
            if factor != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = (*x + self.p - factor * y % self.p) % self.p;
                }
            }
        }
        let pos = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(pos, (pc, w));
        true
    }
}
