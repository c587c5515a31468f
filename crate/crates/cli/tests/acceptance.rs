//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use evenartin::io::{parse_morphism, read_matrix};
use evenartin::suites::magnus_suites;
use evenartin_core::brute::brute_lie_iso_field;
use evenartin_core::field::FieldLieAlgebra;
use evenartin_core::lie::{
    collapse_p, dilate, lie_iso_family, verify_morphism, FamilyDecision, Separation,
};
use evenartin_core::linalg::{kernel_mod_p, rank_mod_p, EchelonBasis};
use evenartin_core::magnus::{verify_magnus_model, TruncatedRing};
use evenartin_core::{
    brute_matrix_iso, matrices_isomorphic, CoxeterMatrix, Entry, Family, LieAlgebra,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: u64 = 0;
const SEED: u64 = 2024;

fn entry(code: u64) -> Entry {
    if code == INF {
        Entry::Infinity
    } else {
        Entry::Finite(code)
    }
}

fn all_matrices(n: usize, values: &[u64]) -> Vec<CoxeterMatrix> {
    let pairs = n * (n - 1) / 2;
    let total = values.len().pow(pairs as u32);
    (0..total)
        .map(|mut code| {
            CoxeterMatrix::from_upper(n, |_, _| {
                let e = entry(values[code % values.len()]);
                code /= values.len();
                e
            })
            .unwrap()
        })
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, values: &[u64]) -> CoxeterMatrix {
    CoxeterMatrix::from_upper(n, |_, _| entry(*values.choose(rng).unwrap())).unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

struct Gate {
    failed: usize,
}

impl Gate {
    fn run(
        &mut self,
        id: u32,
        title: &str,
        limit: Option<Duration>,
        f: impl FnOnce() -> Result<String, String>,
    ) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) => match limit {
                Some(l) if elapsed > l => (false, format!("{d}; took {elapsed:.2?}, limit {l:?}")),
                _ => (true, format!("{d}; {elapsed:.2?}")),
            },
            Err(d) => (false, format!("{d}; {elapsed:.2?}")),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "criterion {id} {} {title}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_witness() -> Result<String, String> {
    let (m0, n0) = (
        read_matrix(&data("m0.json")).unwrap(),
        read_matrix(&data("n0.json")).unwrap(),
    );
    let (src, dst) = (
        LieAlgebra::new(m0.clone()).unwrap(),
        LieAlgebra::new(n0.clone()).unwrap(),
    );
    let text = std::fs::read_to_string(data("morphism6.json")).unwrap();
    let w = parse_morphism(&text, &src, &dst).map_err(|e| e.to_string())?;
    let report = verify_morphism(&src, &dst, &w).map_err(|e| e.to_string())?;
    ensure(report.checks.len() == 4 && report.all_passed(), || {
        format!("library report:\n{report}")
    })?;
    ensure(matrices_isomorphic(&m0, &n0).is_none(), || {
        "M0 and N0 reported isomorphic".into()
    })?;

    let bin = env!("CARGO_BIN_EXE_evenartin");
    let out = Command::new(bin)
        .args(["lie", "verify-morphism"])
        .args([data("m0.json"), data("n0.json"), data("morphism6.json")])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let passes = stdout
        .lines()
        .filter(|l| l.starts_with("CHECK ") && l.contains(" PASS"))
        .count();
    ensure(out.status.code() == Some(0) && passes == 4, || {
        format!("verify-morphism: {stdout}")
    })?;
    for (a, b) in [("m0.json", "n0.json"), ("n0.json", "m0.json")] {
        let out = Command::new(bin)
            .arg("iso")
            .args([data(a), data(b)])
            .output()
            .unwrap();
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(
            out.status.code() == Some(2) && stdout.contains("RESULT NON-ISOMORPHIC"),
            || format!("iso {a} {b}: {stdout}"),
        )?;
    }
    Ok("4/4 morphism checks PASS, iso M0 N0 exits 2 both ways".into())
}

fn theorem_suite(corpus: &[CoxeterMatrix]) -> Result<String, String> {
    for m in corpus {
        let r = verify_magnus_model(m).map_err(|e| e.to_string())?;
        ensure(r.checks.len() == 4 && r.all_passed(), || {
            format!("{m:?}\n{r}")
        })?;
    }
    Ok(format!("{} matrices, 4 checks each", corpus.len()))
}

fn claims_suite(corpus: &[CoxeterMatrix]) -> Result<String, String> {
    for (i, m) in corpus.iter().enumerate() {
        let ring = TruncatedRing::new(m.clone()).unwrap();
        let lie = LieAlgebra::new(m.clone()).unwrap();
        let r = magnus_suites(&ring, &lie, 1000, SEED + i as u64).map_err(|e| e.to_string())?;
        ensure(r.all_passed(), || format!("{m:?}\n{r}"))?;
    }
    Ok(format!("{} matrices x 1000 trials, n <= 8", corpus.len()))
}

fn iso_agreement(random_pairs: &[(CoxeterMatrix, CoxeterMatrix)]) -> Result<String, String> {
    let all = all_matrices(3, &[2, 4, 8, INF]);
    let mut iso = 0;
    let mut check = |a: &CoxeterMatrix, b: &CoxeterMatrix| -> Result<(), String> {
        let fast = matrices_isomorphic(a, b);
        let slow = brute_matrix_iso(a, b).map_err(|e| e.to_string())?;
        ensure(fast.is_some() == slow.is_some(), || {
            format!("disagree on {a:?} {b:?}")
        })?;
        if let Some(w) = fast {
            ensure(w.verify(a, b), || format!("bad witness for {a:?} {b:?}"))?;
            iso += 1;
        }
        Ok(())
    };
    for a in &all {
        for b in &all {
            check(a, b)?;
        }
    }
    for (a, b) in random_pairs {
        check(a, b)?;
    }
    Ok(format!(
        "{} exhaustive + {} random pairs, {iso} isomorphic",
        all.len() * all.len(),
        random_pairs.len()
    ))
}

/// Random pairs on 4 or 5 generators: a relabelling, a relabelling with one
/// entry changed, or an independent matrix, in equal proportion.
fn random_pairs() -> Vec<(CoxeterMatrix, CoxeterMatrix)> {
    let values = [2, 4, 6, 10, INF];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..500)
        .map(|k| {
            let n = rng.gen_range(4..=5);
            let m = random_matrix(&mut rng, n, &values);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let other = match k % 3 {
                0 => m.relabel(&perm),
                1 => {
                    let (s, t) = (rng.gen_range(0..n - 1), rng.gen_range(1..n));
                    let t = t.max(s + 1);
                    let e = entry(*values.choose(&mut rng).unwrap());
                    let mut rows = m.rows();
                    rows[s][t] = e;
                    rows[t][s] = e;
                    CoxeterMatrix::new(rows).unwrap().relabel(&perm)
                }
                _ => random_matrix(&mut rng, n, &values),
            };
            (m, other)
        })
        .collect()
}

fn field_search() -> Result<String, String> {
    let right = all_matrices(3, &[2, INF]);
    let mut found = 0;
    for p in [2, 3] {
        for a in &right {
            for b in &right {
                let w = brute_lie_iso_field(a, b, p).map_err(|e| e.to_string())?;
                let iso = brute_matrix_iso(a, b).map_err(|e| e.to_string())?.is_some();
                ensure(w.is_some() == iso, || {
                    format!("p={p}: {a:?} {b:?} field {} matrix {iso}", w.is_some())
                })?;
                if let Some(w) = w {
                    let (la, lb) = (
                        FieldLieAlgebra::new(a.clone(), p).unwrap(),
                        FieldLieAlgebra::new(b.clone(), p).unwrap(),
                    );
                    ensure(w.verify(&la, &lb), || {
                        format!("witness fails for {a:?} {b:?}")
                    })?;
                    found += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} pairs over p in {{2,3}}, {found} witnesses",
        2 * right.len() * right.len()
    ))
}

fn transitivity(corpus: &[CoxeterMatrix]) -> Result<String, String> {
    let mut triples = 0usize;
    for m in corpus {
        let n = m.rank();
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|s| (0..n).map(|t| m.precedes(s, t).unwrap()).collect())
            .collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    triples += 1;
                    ensure(!(rel[a][b] && rel[b][c]) || rel[a][c], || {
                        format!("{m:?}: {a} {b} {c}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{} matrices, {triples} triples", corpus.len()))
}

fn centralizers() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for case in 0..200 {
        let n = rng.gen_range(1..=5);
        let p = *[2u64, 3].choose(&mut rng).unwrap();
        let m = random_matrix(&mut rng, n, &[2, INF]);
        let l = FieldLieAlgebra::new(m.clone(), p).unwrap();
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let basis = l.centralizer(&a).map_err(|e| e.to_string())?;
        let kernel = kernel_mod_p(&l.bracket_map(&a).unwrap(), n, p);
        let mut span = EchelonBasis::new(p);
        for v in &kernel {
            span.insert(v);
        }
        let ok = rank_mod_p(&basis, p) == basis.len()
            && basis.len() == span.dim()
            && basis.iter().all(|v| span.contains(v));
        ensure(ok, || {
            format!("case {case}: {m:?} p={p} a={a:?} basis {basis:?} kernel {kernel:?}")
        })?;
    }
    Ok("200 cases".into())
}

fn family_structures() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=4 {
        for m in all_matrices(n, &[2, 4, 8, INF]) {
            let l = LieAlgebra::new(m.clone()).unwrap();
            let dilated = LieAlgebra::new(dilate(&m, 2).map_err(|e| e.to_string())?).unwrap();
            ensure(l.scaled_structure(2) == dilated.structure_table(), || {
                format!("dilation differs on {m:?}")
            })?;
            let collapsed =
                FieldLieAlgebra::new(collapse_p(&m, 2).map_err(|e| e.to_string())?, 2).unwrap();
            ensure(l.tensor_structure(2) == collapsed.structure_table(), || {
                format!("tensor differs on {m:?}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices"))
}

fn family_decisions() -> Result<String, String> {
    let family = Family::new(1, 2).unwrap();
    let all = all_matrices(3, &[2, 4, 8, INF]);
    let (mut iso, mut by_invariant, mut by_theorem) = (0, 0, 0);
    for a in &all {
        for b in &all {
            let (la, lb) = (
                LieAlgebra::new(a.clone()).unwrap(),
                LieAlgebra::new(b.clone()).unwrap(),
            );
            match lie_iso_family(a, b, family).map_err(|e| e.to_string())? {
                FamilyDecision::Isomorphic {
                    matrix_witness,
                    witness,
                    report,
                } => {
                    let again = verify_morphism(&la, &lb, &witness).map_err(|e| e.to_string())?;
                    ensure(
                        report.all_passed() && again.all_passed() && matrix_witness.verify(a, b),
                        || format!("unverified witness for {a:?} {b:?}"),
                    )?;
                    iso += 1;
                }
                FamilyDecision::NonIsomorphic(sep) => {
                    ensure(brute_matrix_iso(a, b).unwrap().is_none(), || {
                        format!("NON-ISO on isomorphic {a:?} {b:?}")
                    })?;
                    match sep {
                        Separation::Degree1Rank { source, target } => {
                            ensure(source != target, || "equal ranks".into())?;
                            by_invariant += 1;
                        }
                        Separation::Torsion { source, target } => {
                            ensure(
                                source != target
                                    && la.torsion_invariant() != lb.torsion_invariant(),
                                || "torsion invariants agree".into(),
                            )?;
                            by_invariant += 1;
                        }
                        Separation::ByTheorem(_) => by_theorem += 1,
                    }
                }
            }
        }
    }
    Ok(format!("{iso} ISO with verified witness, {by_invariant} NON-ISO by invariant, {by_theorem} NON-ISO by theorem"))
}

fn main() {
    let mut gate = Gate { failed: 0 };
    let theorem_corpus = all_matrices(3, &[2, 4, 6, INF]);
    let pairs = random_pairs();

    gate.run(
        1,
        "example witness and non-isomorphic matrices",
        Some(Duration::from_secs(1)),
        example_witness,
    );
    gate.run(
        2,
        "Magnus model structural checks",
        Some(Duration::from_secs(10)),
        || theorem_suite(&theorem_corpus),
    );
    gate.run(
        3,
        "seeded commutator identities",
        Some(Duration::from_secs(60)),
        || claims_suite(&theorem_corpus),
    );
    gate.run(
        4,
        "class search agrees with permutation search",
        Some(Duration::from_secs(120)),
        || iso_agreement(&pairs),
    );
    gate.run(
        5,
        "field brute force iff matrix isomorphism",
        Some(Duration::from_secs(60)),
        field_search,
    );
    gate.run(6, "quasi-order transitivity", None, || {
        let mut corpus = theorem_corpus.clone();
        corpus.extend(all_matrices(3, &[2, 4, 8, INF]));
        corpus.extend(pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]));
        transitivity(&corpus)
    });
    gate.run(
        7,
        "centralizer basis spans bracket kernel",
        None,
        centralizers,
    );
    gate.run(
        8,
        "dilated and tensored structure tables",
        Some(Duration::from_secs(60)),
        family_structures,
    );
    gate.run(9, "family decisions carry evidence", None, family_decisions);

    if gate.failed > 0 {
        println!("{} criteria failed", gate.failed);
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
