//! Coxeter matrices, their classification, the link quasi-order and the
//! reduced matrix, and isomorphism of matrices with explicit witnesses.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{exact_log, gcd};
use crate::{Entry, Error, MatrixError};

/// Largest generator count accepted by [`brute_matrix_iso`].
pub const BRUTE_ISO_LIMIT: usize = 10;

/// A validated Coxeter matrix over the generators `0..n`.
///
/// The index order is the total order on generators used throughout the
/// crate (for instance to orient degree-2 basis elements).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<Entry>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<Entry>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            if rows[i][i] != Entry::Finite(1) {
                return Err(MatrixError::Diagonal {
                    index: i,
                    found: rows[i][i],
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let e = rows[i][j];
                if let Entry::Finite(m) = e {
                    if m < 2 {
                        return Err(MatrixError::OffDiagonalTooSmall {
                            row: i,
                            col: j,
                            found: e,
                        });
                    }
                }
                if e != rows[j][i] {
                    return Err(MatrixError::Asymmetric {
                        row: i,
                        col: j,
                        found: e,
                        mirror: rows[j][i],
                    });
                }
            }
        }
        Ok(CoxeterMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose off-diagonal entry at `(s, t)`, `s < t`, is
    /// `f(s, t)`.
    pub fn from_upper(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Entry,
    ) -> Result<Self, MatrixError> {
        let mut rows = vec![vec![Entry::Finite(1); n]; n];
        for s in 0..n {
            for t in s + 1..n {
                let e = f(s, t);
                rows[s][t] = e;
                rows[t][s] = e;
            }
        }
        Self::new(rows)
    }

    pub fn from_u64_rows(rows: &[&[u64]]) -> Result<Self, MatrixError> {
        Self::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&m| {
                            if m == 0 {
                                Entry::Infinity
                            } else {
                                Entry::Finite(m)
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> Entry {
        self.entries[s * self.n + t]
    }

    pub fn rows(&self) -> Vec<Vec<Entry>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Pairs `(s, t)` with `s < t`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |s| (s + 1..self.n).map(move |t| (s, t)))
    }

    fn check_index(&self, s: usize) -> Result<(), Error> {
        if s < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: s,
                len: self.n,
            })
        }
    }

    /// The matrix `N` with `N[perm[s]][perm[t]] = self[s][t]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut entries = vec![Entry::Finite(1); self.n * self.n];
        for s in 0..self.n {
            for t in 0..self.n {
                entries[perm[s] * self.n + perm[t]] = self.get(s, t);
            }
        }
        CoxeterMatrix { n: self.n, entries }
    }

    pub fn is_even(&self) -> bool {
        self.first_odd().is_none()
    }

    pub fn is_right_angled(&self) -> bool {
        self.pairs()
            .all(|(s, t)| matches!(self.get(s, t), Entry::Finite(2) | Entry::Infinity))
    }

    fn first_odd(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(s, t)| matches!(self.get(s, t), Entry::Finite(m) if m % 2 == 1))
    }

    pub fn require_even(&self) -> Result<(), Error> {
        match self.first_odd() {
            None => Ok(()),
            Some((row, col)) => Err(Error::NotEven {
                row,
                col,
                found: self.get(row, col),
            }),
        }
    }

    pub fn require_right_angled(&self) -> Result<(), Error> {
        for (row, col) in self.pairs() {
            let found = self.get(row, col);
            if !matches!(found, Entry::Finite(2) | Entry::Infinity) {
                return Err(Error::NotRightAngled { row, col, found });
            }
        }
        Ok(())
    }

    /// Checks membership in `E(c, d)`: every off-diagonal entry is `2c`, `∞`
    /// or `2d^r` for some `r >= 1`.
    pub fn require_family(&self, family: Family) -> Result<(), Error> {
        for (row, col) in self.pairs() {
            let found = self.get(row, col);
            if !family.admits(found) {
                return Err(Error::NotInFamily {
                    c: family.c,
                    d: family.d,
                    row,
                    col,
                    found,
                });
            }
        }
        Ok(())
    }

    pub fn in_family(&self, family: Family) -> bool {
        self.require_family(family).is_ok()
    }

    /// `lk_m(s)`: the `t != s` whose entry `m_{s,t}` is finite and divides `m`.
    pub fn link(&self, s: usize, m: u64) -> Result<Vec<usize>, Error> {
        self.check_index(s)?;
        if m < 2 {
            return Err(Error::LinkBound(m));
        }
        Ok((0..self.n)
            .filter(|&t| t != s && self.get(s, t).divides(m))
            .collect())
    }

    /// `st_m(s) = lk_m(s) ∪ {s}`, sorted.
    pub fn star(&self, s: usize, m: u64) -> Result<Vec<usize>, Error> {
        let mut star = self.link(s, m)?;
        let pos = star.partition_point(|&t| t < s);
        star.insert(pos, s);
        Ok(star)
    }

    /// The quasi-order `s ≺ t`: `lk_m(s) ⊆ st_m(t)` for every finite `m >= 2`.
    ///
    /// Evaluated through the equivalent divisibility test: for every
    /// `r ∉ {s, t}` with `m_{s,r}` finite, `m_{t,r}` is finite and divides
    /// `m_{s,r}`.
    pub fn precedes(&self, s: usize, t: usize) -> Result<bool, Error> {
        self.check_index(s)?;
        self.check_index(t)?;
        Ok((0..self.n)
            .filter(|&r| r != s && r != t)
            .all(|r| match self.get(s, r) {
                Entry::Infinity => true,
                Entry::Finite(m) => self.get(t, r).divides(m),
            }))
    }

    /// The quasi-order evaluated from links and stars, with `m` ranging over
    /// the finite off-diagonal entries of row `s`. Kept as a cross-check on
    /// [`CoxeterMatrix::precedes`].
    pub fn precedes_by_links(&self, s: usize, t: usize) -> Result<bool, Error> {
        self.check_index(s)?;
        self.check_index(t)?;
        for r in 0..self.n {
            if r == s {
                continue;
            }
            let Entry::Finite(m) = self.get(s, r) else {
                continue;
            };
            let link = self.link(s, m)?;
            let star = self.star(t, m)?;
            if !link.iter().all(|x| star.binary_search(x).is_ok()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equivalence classes of `s ≡ t ⇔ s ≺ t ∧ t ≺ s`. Each class is sorted
    /// and classes are ordered by their least element.
    pub fn equiv_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of: Vec<Option<usize>> = vec![None; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n {
            if class_of[s].is_some() {
                continue;
            }
            let id = classes.len();
            let mut class = vec![s];
            class_of[s] = Some(id);
            for t in s + 1..self.n {
                if class_of[t].is_none()
                    && self.precedes(s, t).unwrap_or(false)
                    && self.precedes(t, s).unwrap_or(false)
                {
                    class_of[t] = Some(id);
                    class.push(t);
                }
            }
            classes.push(class);
        }
        classes
    }

    /// The reduced matrix on the classes of `≡`, with class sizes and labels.
    pub fn reduce(&self) -> Result<ReducedMatrix, Error> {
        let classes = self.equiv_classes();
        let k = classes.len();
        let mut labels = Vec::with_capacity(k);
        for class in &classes {
            if class.len() == 1 {
                labels.push(None);
                continue;
            }
            let (a, b) = (class[0], class[1]);
            let label = self.get(a, b);
            for (i, &s) in class.iter().enumerate() {
                for &t in &class[i + 1..] {
                    if self.get(s, t) != label {
                        return Err(Error::InconsistentReduction {
                            first: (a, b),
                            second: (s, t),
                        });
                    }
                }
            }
            labels.push(Some(label));
        }
        let mut rows = vec![vec![Entry::Finite(1); k]; k];
        for (ci, c) in classes.iter().enumerate() {
            for (di, d) in classes.iter().enumerate() {
                if ci == di {
                    continue;
                }
                let entry = self.get(c[0], d[0]);
                for &s in c {
                    for &t in d {
                        if self.get(s, t) != entry {
                            return Err(Error::InconsistentReduction {
                                first: (c[0], d[0]),
                                second: (s, t),
                            });
                        }
                    }
                }
                rows[ci][di] = entry;
            }
        }
        let matrix = CoxeterMatrix::new(rows)?;
        let sizes = classes.iter().map(Vec::len).collect();
        Ok(ReducedMatrix {
            classes,
            matrix,
            sizes,
            labels,
        })
    }

    pub fn classify(&self, queries: &[(u64, u64)]) -> Result<Classification, Error> {
        let mut family_memberships = Vec::with_capacity(queries.len());
        for &(c, d) in queries {
            let family = Family::new(c, d)?;
            family_memberships.push((family, self.in_family(family)));
        }
        Ok(Classification {
            is_even: self.is_even(),
            is_right_angled: self.is_right_angled(),
            family_memberships,
        })
    }
}

/// Parameters `(c, d)` of the family `E(c, d)`, with `c >= 1`, `d >= 2` and
/// `gcd(c, d) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    c: u64,
    d: u64,
}

impl Family {
    pub fn new(c: u64, d: u64) -> Result<Self, Error> {
        if c < 1 || d < 2 || gcd(c, d) != 1 {
            return Err(Error::InvalidFamily { c, d });
        }
        Ok(Family { c, d })
    }

    pub fn c(self) -> u64 {
        self.c
    }

    pub fn d(self) -> u64 {
        self.d
    }

    /// Whether an off-diagonal entry is allowed in `E(c, d)`.
    pub fn admits(self, e: Entry) -> bool {
        match e {
            Entry::Infinity => true,
            Entry::Finite(m) => {
                m % 2 == 0 && (m / 2 == self.c || exact_log(self.d, m / 2).is_some())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_even: bool,
    pub is_right_angled: bool,
    /// Membership answers, in query order.
    pub family_memberships: Vec<(Family, bool)>,
}

/// The reduced matrix `M^r` together with the class data needed to lift
/// isomorphisms back to the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    pub classes: Vec<Vec<usize>>,
    pub matrix: CoxeterMatrix,
    pub sizes: Vec<usize>,
    /// `lb(C)`: `None` stands for the label 0 of a singleton class.
    pub labels: Vec<Option<Entry>>,
}

impl ReducedMatrix {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    // Data preserved by any isomorphism of reduced matrices that respects
    // sizes and labels; used to prune the class-level search.
    fn signature(&self, c: usize) -> (usize, Option<Entry>, Vec<(Entry, usize, Option<Entry>)>) {
        let mut row: Vec<_> = (0..self.len())
            .filter(|&d| d != c)
            .map(|d| (self.matrix.get(c, d), self.sizes[d], self.labels[d]))
            .collect();
        row.sort_unstable();
        (self.sizes[c], self.labels[c], row)
    }
}

/// A bijection `π` on generator indices with `m_{s,t} = n_{π(s),π(t)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    pub permutation: Vec<usize>,
}

impl IsoWitness {
    pub fn verify(&self, m: &CoxeterMatrix, n: &CoxeterMatrix) -> bool {
        let size = m.rank();
        if n.rank() != size || self.permutation.len() != size {
            return false;
        }
        let mut seen = vec![false; size];
        for &x in &self.permutation {
            if x >= size || core::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        let p = &self.permutation;
        (0..size).all(|s| (0..size).all(|t| m.get(s, t) == n.get(p[s], p[t])))
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.permutation.len()];
        for (s, &x) in self.permutation.iter().enumerate() {
            inv[x] = s;
        }
        IsoWitness { permutation: inv }
    }
}

/// Decides `M ≅ N` by searching for an isomorphism of reduced matrices that
/// preserves class sizes and labels, then expanding it class by class.
///
/// Classes of `M^r` are assigned in order and candidate images tried in
/// increasing order, so the returned witness is the first one found by that
/// search. Within a class the sorted members are matched in order.
pub fn matrices_isomorphic(m: &CoxeterMatrix, n: &CoxeterMatrix) -> Option<IsoWitness> {
    if m.rank() != n.rank() {
        return None;
    }
    let mr = m.reduce().expect("reduced matrix is consistent");
    let nr = n.reduce().expect("reduced matrix is consistent");
    if mr.len() != nr.len() {
        return None;
    }
    let k = mr.len();
    let msig: Vec<_> = (0..k).map(|c| mr.signature(c)).collect();
    let nsig: Vec<_> = (0..k).map(|c| nr.signature(c)).collect();

    let mut assign = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if !class_search(&mr, &nr, &msig, &nsig, 0, &mut assign, &mut used) {
        return None;
    }

    let mut permutation = vec![0; m.rank()];
    for (c, class) in mr.classes.iter().enumerate() {
        for (&s, &x) in class.iter().zip(&nr.classes[assign[c]]) {
            permutation[s] = x;
        }
    }
    let witness = IsoWitness { permutation };
    assert!(
        witness.verify(m, n),
        "expanded class isomorphism fails entrywise"
    );
    Some(witness)
}

fn class_search<S: PartialEq>(
    mr: &ReducedMatrix,
    nr: &ReducedMatrix,
    msig: &[S],
    nsig: &[S],
    c: usize,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    if c == assign.len() {
        return true;
    }
    for x in 0..assign.len() {
        if used[x] || msig[c] != nsig[x] {
            continue;
        }
        if (0..c).any(|d| mr.matrix.get(c, d) != nr.matrix.get(x, assign[d])) {
            continue;
        }
        assign[c] = x;
        used[x] = true;
        if class_search(mr, nr, msig, nsig, c + 1, assign, used) {
            return true;
        }
        used[x] = false;
    }
    assign[c] = usize::MAX;
    false
}

/// Exhaustive search over permutations in lexicographic order of
/// `(π(0), π(1), …)`; returns the first isomorphism. Partial assignments
/// that already contradict an entry are skipped, which does not change the
/// first witness found.
pub fn brute_matrix_iso(m: &CoxeterMatrix, n: &CoxeterMatrix) -> Result<Option<IsoWitness>, Error> {
    if m.rank() != n.rank() {
        return Ok(None);
    }
    let size = m.rank();
    if size > BRUTE_ISO_LIMIT {
        return Err(Error::SearchGuard {
            what: "generator count",
            value: size as u64,
            limit: BRUTE_ISO_LIMIT as u64,
        });
    }
    let mut perm = Vec::with_capacity(size);
    let mut used = vec![false; size];
    Ok(perm_search(m, n, &mut perm, &mut used).then(|| IsoWitness { permutation: perm }))
}

fn perm_search(
    m: &CoxeterMatrix,
    n: &CoxeterMatrix,
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let s = perm.len();
    if s == m.rank() {
        return true;
    }
    for x in 0..m.rank() {
        if used[x] || (0..s).any(|t| m.get(s, t) != n.get(x, perm[t])) {
            continue;
        }
        perm.push(x);
        used[x] = true;
        if perm_search(m, n, perm, used) {
            return true;
        }
        used[x] = false;
        perm.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: u64 = 0;

    fn m0() -> CoxeterMatrix {
        CoxeterMatrix::from_u64_rows(&[&[1, 6, 2], &[6, 1, 10], &[2, 10, 1]]).unwrap()
    }

    fn n0() -> CoxeterMatrix {
        CoxeterMatrix::from_u64_rows(&[&[1, 2, 2], &[2, 1, 30], &[2, 30, 1]]).unwrap()
    }

    #[test]
    fn validation_errors_carry_coordinates() {
        let e = CoxeterMatrix::from_u64_rows(&[&[1, 2], &[3, 1]]).unwrap_err();
        assert!(matches!(e, MatrixError::Asymmetric { row: 0, col: 1, .. }));
        let e = CoxeterMatrix::from_u64_rows(&[&[2, 2], &[2, 1]]).unwrap_err();
        assert_eq!(
            e,
            MatrixError::Diagonal {
                index: 0,
                found: Entry::Finite(2)
            }
        );
        let e = CoxeterMatrix::from_u64_rows(&[&[1, 1], &[1, 1]]).unwrap_err();
        assert!(matches!(
            e,
            MatrixError::OffDiagonalTooSmall { row: 0, col: 1, .. }
        ));
        assert_eq!(CoxeterMatrix::new(vec![]).unwrap_err(), MatrixError::Empty);
        let single = CoxeterMatrix::from_u64_rows(&[&[1]]).unwrap();
        assert_eq!(single.rank(), 1);
    }

    #[test]
    fn classification() {
        let c = m0().classify(&[(3, 5)]).unwrap();
        assert!(c.is_even && !c.is_right_angled);
        assert!(!c.family_memberships[0].1);

        let all2 = CoxeterMatrix::from_upper(4, |_, _| Entry::Finite(2)).unwrap();
        let c = all2.classify(&[(1, 2)]).unwrap();
        assert!(c.is_even && c.is_right_angled && c.family_memberships[0].1);

        let mixed = CoxeterMatrix::from_u64_rows(&[
            &[1, 2, 4, 8],
            &[2, 1, INF, 2],
            &[4, INF, 1, 4],
            &[8, 2, 4, 1],
        ])
        .unwrap();
        assert!(mixed.in_family(Family::new(1, 2).unwrap()));

        assert_eq!(
            m0().classify(&[(2, 4)]).unwrap_err(),
            Error::InvalidFamily { c: 2, d: 4 }
        );
        assert!(m0().classify(&[(1, 1)]).is_err());
        assert!(m0().classify(&[(0, 3)]).is_err());
        // N0 = {2, 2, 30} lies in E(1,15); M0 has 6, which is neither 2 nor 2*15^r.
        assert!(n0().in_family(Family::new(1, 15).unwrap()));
        assert!(!m0().in_family(Family::new(1, 15).unwrap()));
    }

    #[test]
    fn links() {
        assert_eq!(m0().link(0, 2).unwrap(), vec![2]);
        assert_eq!(m0().link(0, 6).unwrap(), vec![1, 2]);
        assert_eq!(m0().star(1, 10).unwrap(), vec![1, 2]);
        let infs = CoxeterMatrix::from_upper(3, |_, _| Entry::Infinity).unwrap();
        assert!(infs.link(1, 2).unwrap().is_empty());
        assert_eq!(
            m0().link(3, 2),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
        assert_eq!(m0().link(0, 1), Err(Error::LinkBound(1)));
    }

    #[test]
    fn quasi_order_on_m0() {
        let m = m0();
        assert!(m.precedes(1, 0).unwrap());
        assert!(!m.precedes(0, 1).unwrap());
        for s in 0..3 {
            assert!(m.precedes(s, s).unwrap());
        }
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(
                    m.precedes(s, t).unwrap(),
                    m.precedes_by_links(s, t).unwrap()
                );
            }
        }
    }

    #[test]
    fn classes_and_reduction() {
        assert_eq!(n0().equiv_classes(), vec![vec![0], vec![1, 2]]);
        assert_eq!(m0().equiv_classes(), vec![vec![0], vec![1], vec![2]]);
        let all6 = CoxeterMatrix::from_upper(4, |_, _| Entry::Finite(6)).unwrap();
        assert_eq!(all6.equiv_classes(), vec![vec![0, 1, 2, 3]]);

        let r = n0().reduce().unwrap();
        assert_eq!(
            r.matrix,
            CoxeterMatrix::from_u64_rows(&[&[1, 2], &[2, 1]]).unwrap()
        );
        assert_eq!(r.sizes, vec![1, 2]);
        assert_eq!(r.labels, vec![None, Some(Entry::Finite(30))]);

        let r = m0().reduce().unwrap();
        assert_eq!(r.matrix, m0());
        assert_eq!(r.sizes, vec![1, 1, 1]);
        assert!(r.labels.iter().all(Option::is_none));

        let one = CoxeterMatrix::from_u64_rows(&[&[1]]).unwrap();
        let r = one.reduce().unwrap();
        assert_eq!(r.matrix, one);
        assert_eq!((r.sizes, r.labels), (vec![1], vec![None]));
    }

    #[test]
    fn matrix_isomorphism() {
        assert_eq!(matrices_isomorphic(&m0(), &n0()), None);
        assert_eq!(brute_matrix_iso(&m0(), &n0()).unwrap(), None);

        let swapped = n0().relabel(&[1, 0, 2]);
        let w = matrices_isomorphic(&n0(), &swapped).unwrap();
        assert!(w.verify(&n0(), &swapped));
        let b = brute_matrix_iso(&n0(), &swapped).unwrap().unwrap();
        assert!(b.verify(&n0(), &swapped));

        let id = brute_matrix_iso(&m0(), &m0()).unwrap().unwrap();
        assert_eq!(id.permutation, vec![0, 1, 2]);

        let four = CoxeterMatrix::from_u64_rows(&[&[1, 4], &[4, 1]]).unwrap();
        let six = CoxeterMatrix::from_u64_rows(&[&[1, 6], &[6, 1]]).unwrap();
        assert_eq!(brute_matrix_iso(&four, &six).unwrap(), None);
        assert_eq!(brute_matrix_iso(&four, &m0()).unwrap(), None);

        let big = CoxeterMatrix::from_upper(11, |_, _| Entry::Finite(2)).unwrap();
        assert!(matches!(
            brute_matrix_iso(&big, &big),
            Err(Error::SearchGuard { .. })
        ));
        // the reduced search has no size limit
        assert!(matrices_isomorphic(&big, &big).is_some());
    }

    #[test]
    fn relabel_round_trip() {
        let p = [2, 0, 1];
        let r = m0().relabel(&p);
        let w = IsoWitness {
            permutation: p.to_vec(),
        };
        assert!(w.verify(&m0(), &r));
        assert!(w.inverse().verify(&r, &m0()));
    }
}
