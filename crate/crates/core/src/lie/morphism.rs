use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{p_support, support, LieAlgebra, LieElement, Modulus};
use crate::linalg::IntMatrix;
use crate::{Error, IsoWitness, Report};

/// A claimed isomorphism `L[M] → L[N]` given by matrices.
///
/// Column `s` of `f1` holds the image of `u_s` in the target degree-1 basis
/// and `g1` is the claimed inverse. `f2` maps source degree-2 coordinates to
/// target ones (column `k` is the image of the `k`-th source slot) and `g2`
/// is its claimed inverse. Entries acting on torsion coordinates are only
/// meaningful modulo the target moduli, so well-definedness is checked
/// separately by [`verify_morphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismWitness {
    pub f1: IntMatrix,
    pub g1: IntMatrix,
    pub f2: IntMatrix,
    pub g2: IntMatrix,
}

impl MorphismWitness {
    pub fn identity(l: &LieAlgebra) -> Self {
        MorphismWitness {
            f1: IntMatrix::identity(l.rank()),
            g1: IntMatrix::identity(l.rank()),
            f2: IntMatrix::identity(l.slots().len()),
            g2: IntMatrix::identity(l.slots().len()),
        }
    }

    /// The morphism induced by relabelling generators, `u_s ↦ u'_{π(s)}`.
    /// It is an isomorphism exactly when `π` is a matrix isomorphism.
    pub fn from_permutation(
        src: &LieAlgebra,
        dst: &LieAlgebra,
        perm: &IsoWitness,
    ) -> Result<Self, Error> {
        let n = src.rank();
        if dst.rank() != n || perm.permutation.len() != n {
            return Err(Error::ShapeMismatch {
                what: "permutation",
                expected: (n, 1),
                found: (perm.permutation.len(), 1),
            });
        }
        let inv = perm.inverse();
        let (f1, f2) = induced(src, dst, &perm.permutation);
        let (g1, g2) = induced(dst, src, &inv.permutation);
        Ok(MorphismWitness { f1, g1, f2, g2 })
    }

    fn check_shapes(&self, src: &LieAlgebra, dst: &LieAlgebra) -> Result<(), Error> {
        let (n, m) = (src.rank(), dst.rank());
        let (a, b) = (src.slots().len(), dst.slots().len());
        for (what, mat, expected) in [
            ("F", &self.f1, (m, n)),
            ("G", &self.g1, (n, m)),
            ("f2", &self.f2, (b, a)),
            ("g2", &self.g2, (a, b)),
        ] {
            if mat.shape() != expected {
                return Err(Error::ShapeMismatch {
                    what,
                    expected,
                    found: mat.shape(),
                });
            }
        }
        Ok(())
    }

    /// `f(a) = F·a_1 + f2·a_2`, canonicalized in the target.
    pub fn apply(
        &self,
        src: &LieAlgebra,
        dst: &LieAlgebra,
        a: &LieElement,
    ) -> Result<LieElement, Error> {
        self.check_shapes(src, dst)?;
        if !src.contains(a) {
            return Err(Error::ElementMismatch);
        }
        let deg1 = self.f1.checked_apply(&a.deg1)?;
        let raw = self.f2.checked_apply(&a.deg2)?;
        let deg2 = dst.reduce_deg2(raw.iter().map(|&x| x as i128))?;
        Ok(LieElement { deg1, deg2 })
    }
}

fn induced(src: &LieAlgebra, dst: &LieAlgebra, perm: &[usize]) -> (IntMatrix, IntMatrix) {
    let mut f1 = IntMatrix::zeros(dst.rank(), src.rank());
    for (s, &x) in perm.iter().enumerate() {
        f1[(x, s)] = 1;
    }
    let mut f2 = IntMatrix::zeros(dst.slots().len(), src.slots().len());
    for (k, slot) in src.slots().iter().enumerate() {
        let image = dst.generator_bracket(perm[slot.s], perm[slot.t]);
        for (j, &c) in image.deg2.iter().enumerate() {
            // pick the signed representative so that -1 stays -1
            let c = match dst.slots()[j].modulus {
                Modulus::Torsion(n) if c as u64 > n / 2 => c - n as i64,
                _ => c,
            };
            f2[(j, k)] = c;
        }
    }
    (f1, f2)
}

fn reduce_in(l: &LieAlgebra, v: &[i64]) -> Result<Vec<i64>, Error> {
    l.reduce_deg2(v.iter().map(|&x| x as i128))
}

/// Checks that `w` is an isomorphism of graded Lie rings `src → dst`:
///
/// * `degree1-inverse`: `F·G` and `G·F` are identity matrices;
/// * `degree2-inverse`: `f2∘g2` and `g2∘f2` fix every degree-2 basis element
///   modulo its order;
/// * `degree2-well-defined`: a torsion coordinate of order `n` is sent to an
///   element killed by `n` (checked for `f2` and `g2`);
/// * `bracket-preservation`: `[F u_i, F u_j] = f2([u_i, u_j])` for all `i < j`.
pub fn verify_morphism(
    src: &LieAlgebra,
    dst: &LieAlgebra,
    w: &MorphismWitness,
) -> Result<Report, Error> {
    w.check_shapes(src, dst)?;
    let mut report = Report::new();

    let fg = w.f1.checked_mul(&w.g1)?;
    let gf = w.g1.checked_mul(&w.f1)?;
    let detail = match (fg.is_identity(), gf.is_identity()) {
        (true, true) => String::new(),
        (false, _) => format!("F*G = {fg:?}"),
        (_, false) => format!("G*F = {gf:?}"),
    };
    report.push(
        "degree1-inverse",
        fg.is_identity() && gf.is_identity(),
        detail,
    );

    let mut failures = String::new();
    for (label, first, second, outer) in
        [("f2*g2", &w.g2, &w.f2, dst), ("g2*f2", &w.f2, &w.g2, src)]
    {
        for j in 0..outer.slots().len() {
            let image = reduce_in(outer, &second.checked_apply(&first.column(j))?)?;
            let mut unit = vec![0; outer.slots().len()];
            unit[j] = 1;
            if image != unit {
                let slot = outer.slots()[j];
                let _ = write!(
                    failures,
                    "{label} moves v({},{}) to {image:?}; ",
                    slot.s, slot.t
                );
            }
        }
    }
    report.push(
        "degree2-inverse",
        failures.is_empty(),
        failures.trim_end_matches("; "),
    );

    let mut failures = String::new();
    for (label, map, from, to) in [("f2", &w.f2, src, dst), ("g2", &w.g2, dst, src)] {
        for (k, slot) in from.slots().iter().enumerate() {
            let Modulus::Torsion(n) = slot.modulus else {
                continue;
            };
            let scaled: Vec<i128> = map
                .column(k)
                .iter()
                .map(|&x| x as i128 * n as i128)
                .collect();
            let image = to.reduce_deg2(scaled)?;
            if image.iter().any(|&x| x != 0) {
                let _ = write!(
                    failures,
                    "{label}: {n}*image of v({},{}) = {image:?}; ",
                    slot.s, slot.t
                );
            }
        }
    }
    report.push(
        "degree2-well-defined",
        failures.is_empty(),
        failures.trim_end_matches("; "),
    );

    let mut bad = Vec::new();
    let images: Vec<LieElement> = (0..src.rank())
        .map(|i| dst.element(w.f1.column(i), vec![0; dst.slots().len()]))
        .collect::<Result<_, _>>()?;
    for (i, j) in src.matrix().pairs() {
        let lhs = dst.bracket(&images[i], &images[j])?;
        let rhs = w.apply(src, dst, &src.generator_bracket(i, j))?;
        if lhs != rhs {
            bad.push((i, j, lhs.deg2, rhs.deg2));
        }
    }
    let detail = bad
        .iter()
        .map(|(i, j, l, r)| {
            format!("pair ({i},{j}): [F u{i}, F u{j}] = {l:?} but f2([u{i}, u{j}]) = {r:?}")
        })
        .collect::<Vec<_>>()
        .join("; ");
    report.push("bracket-preservation", bad.is_empty(), detail);
    Ok(report)
}

/// `s ↔ x` for a verified witness: `s` lies in the support of `f⁻¹(u_x)`
/// (column `x` of `G`) and `x` lies in the support of `f(u_s)` (column `s`
/// of `F`). With `Some(p)` the `p`-supports are used instead.
pub fn correspondence(
    src: &LieAlgebra,
    dst: &LieAlgebra,
    w: &MorphismWitness,
    s: usize,
    x: usize,
    p: Option<u64>,
) -> Result<bool, Error> {
    if s >= src.rank() {
        return Err(Error::IndexOutOfRange {
            index: s,
            len: src.rank(),
        });
    }
    if x >= dst.rank() {
        return Err(Error::IndexOutOfRange {
            index: x,
            len: dst.rank(),
        });
    }
    if !verify_morphism(src, dst, w)?.all_passed() {
        return Err(Error::UnverifiedWitness);
    }
    let forward = LieElement {
        deg1: w.f1.column(s),
        deg2: Vec::new(),
    };
    let backward = LieElement {
        deg1: w.g1.column(x),
        deg2: Vec::new(),
    };
    let (fwd, bwd) = match p {
        None => (support(&forward), support(&backward)),
        Some(p) => (p_support(&forward, p)?, p_support(&backward, p)?),
    };
    Ok(fwd.contains(&x) && bwd.contains(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CoxeterMatrix;

    fn m0() -> LieAlgebra {
        LieAlgebra::new(
            CoxeterMatrix::from_u64_rows(&[&[1, 6, 2], &[6, 1, 10], &[2, 10, 1]]).unwrap(),
        )
        .unwrap()
    }

    fn n0() -> LieAlgebra {
        LieAlgebra::new(
            CoxeterMatrix::from_u64_rows(&[&[1, 2, 2], &[2, 1, 30], &[2, 30, 1]]).unwrap(),
        )
        .unwrap()
    }

    fn example_witness() -> MorphismWitness {
        MorphismWitness {
            f1: IntMatrix::from_rows(&[vec![2, 0, 1], vec![0, 1, 0], vec![5, 0, 3]], 3).unwrap(),
            g1: IntMatrix::from_rows(&[vec![3, 0, -1], vec![0, 1, 0], vec![-5, 0, 2]], 3).unwrap(),
            f2: IntMatrix::from_rows(&[vec![-5, 3]], 2).unwrap(),
            g2: IntMatrix::from_rows(&[vec![1], vec![2]], 1).unwrap(),
        }
    }

    #[test]
    fn example_witness_verifies() {
        let report = verify_morphism(&m0(), &n0(), &example_witness()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn corrupted_witness_fails_bracket_at_first_pair() {
        let mut w = example_witness();
        w.f2[(0, 0)] = -4;
        let report = verify_morphism(&m0(), &n0(), &w).unwrap();
        let check = report.get("bracket-preservation").unwrap();
        assert!(!check.passed);
        assert!(check.detail.starts_with("pair (0,1)"), "{}", check.detail);
        assert!(!check.detail.contains("pair (1,2)"));
        assert!(!report.get("degree2-well-defined").unwrap().passed);
        assert!(report.get("degree1-inverse").unwrap().passed);
    }

    #[test]
    fn identity_witness() {
        for l in [m0(), n0()] {
            assert!(verify_morphism(&l, &l, &MorphismWitness::identity(&l))
                .unwrap()
                .all_passed());
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let w = MorphismWitness::identity(&m0());
        assert!(matches!(
            verify_morphism(&m0(), &n0(), &w),
            Err(Error::ShapeMismatch { what: "f2", .. })
        ));
    }

    #[test]
    fn permutation_witness() {
        let m = CoxeterMatrix::from_u64_rows(&[&[1, 6, 0], &[6, 1, 10], &[0, 10, 1]]).unwrap();
        let perm = IsoWitness {
            permutation: vec![2, 0, 1],
        };
        let (src, dst) = (
            LieAlgebra::new(m.clone()).unwrap(),
            LieAlgebra::new(m.relabel(&perm.permutation)).unwrap(),
        );
        let w = MorphismWitness::from_permutation(&src, &dst, &perm).unwrap();
        assert!(verify_morphism(&src, &dst, &w).unwrap().all_passed());
        // a permutation that is not a matrix isomorphism gives a failing witness
        let bad = IsoWitness {
            permutation: vec![0, 1, 2],
        };
        let w = MorphismWitness::from_permutation(&src, &dst, &bad).unwrap();
        assert!(!verify_morphism(&src, &dst, &w).unwrap().all_passed());
    }

    #[test]
    fn correspondences() {
        let w = example_witness();
        assert!(correspondence(&m0(), &n0(), &w, 0, 0, None).unwrap());
        assert!(correspondence(&m0(), &n0(), &w, 1, 1, None).unwrap());
        assert!(!correspondence(&m0(), &n0(), &w, 1, 0, None).unwrap());
        // F column 0 = (2,0,5): 5-support is {0}
        assert!(correspondence(&m0(), &n0(), &w, 0, 0, Some(5)).unwrap());
        assert!(!correspondence(&m0(), &n0(), &w, 0, 2, Some(5)).unwrap());
        let mut bad = w.clone();
        bad.f2[(0, 0)] = -4;
        assert_eq!(
            correspondence(&m0(), &n0(), &bad, 0, 0, None),
            Err(Error::UnverifiedWitness)
        );
    }
}
