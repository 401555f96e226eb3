//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each check compares library output against an independent
//! brute-force computation.

use std::process::ExitCode;
use std::time::Instant;

use matgeo::grassmann::{
    enumerate_points, enumerate_points_brute_force, is_adjacent_points, is_at_infinity,
    is_complementary, to_matrix,
};
use matgeo::matspace::{
    count_by_rank, enumerate_matrices, is_adjacent, is_dis, DisGraph, DEFAULT_BUDGET,
};
use matgeo::preserver::{
    certify_dis, decompose, invertible_profile_collisions, random_preserver, CertifyMode, MapTable,
};
use matgeo::witness::{
    adjacency_witness, adjacency_witness_in, adjacent_via_dis, separating_matrix, witness_matrix,
};
use matgeo::{FieldSpec, Matrix, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn space(q: u32, m: usize, n: usize) -> SpaceSpec {
    SpaceSpec::new(&FieldSpec::new(q).unwrap(), m, n)
}

fn all(space: &SpaceSpec) -> Vec<Matrix> {
    enumerate_matrices(space, DEFAULT_BUDGET).unwrap().collect()
}

fn dis(a: &Matrix, b: &Matrix) -> bool {
    is_dis(a, b).unwrap()
}

fn separates(a: &Matrix, b: &Matrix, r: &Matrix, x: &Matrix) -> bool {
    dis(x, r) && !dis(x, a) && !dis(x, b)
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Adjacency decided by the literal quantifier scan agrees with rank
/// distance one on every ordered pair of M22(GF3).
fn equivalence_exhaustive() -> Outcome {
    let s = space(3, 2, 2);
    let ms = all(&s);
    let pairs: Vec<(usize, usize)> = (0..ms.len())
        .flat_map(|a| (0..ms.len()).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mismatches: Vec<_> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            adjacent_via_dis(&ms[a], &ms[b], DEFAULT_BUDGET).unwrap()
                != is_adjacent(&ms[a], &ms[b]).unwrap()
        })
        .collect();
    match mismatches.first() {
        None => Ok(format!("{} ordered pairs, 0 mismatches", pairs.len())),
        Some(&&(a, b)) => Err(format!(
            "{} mismatches, first A={:?} B={:?}",
            mismatches.len(),
            ms[a],
            ms[b]
        )),
    }
}

/// The constructed witness for every adjacent pair of M32(GF3) survives a
/// scan over all 729 matrices X. The library verifies against its bitset
/// graph; the independent check uses a `dis` table built from plain ranks.
fn forward_witness() -> Outcome {
    let s = space(3, 3, 2);
    let ms = all(&s);
    let graph = DisGraph::new(&s, DEFAULT_BUDGET).unwrap();
    let dis_table: Vec<Vec<bool>> = ms
        .par_iter()
        .map(|a| ms.iter().map(|b| (a - b).rank() == 2).collect())
        .collect();
    let results: Vec<(u64, Option<String>)> = (0..ms.len())
        .into_par_iter()
        .map(|a| {
            let mut cases = 0;
            for b in (0..ms.len()).filter(|&b| (&ms[b] - &ms[a]).rank() == 1) {
                cases += 1;
                let w = adjacency_witness_in(&graph, a, b).unwrap();
                let r = w.r.index() as usize;
                let own_scan = (0..ms.len())
                    .find(|&x| dis_table[x][r] && !dis_table[x][a] && !dis_table[x][b]);
                if !w.verified || r == a || r == b || own_scan.is_some() {
                    return (
                        cases,
                        Some(format!(
                            "A={:?} B={:?} R={:?} X={own_scan:?}",
                            ms[a], ms[b], w.r
                        )),
                    );
                }
            }
            (cases, None)
        })
        .collect();
    let pairs: u64 = results.iter().map(|r| r.0).sum();
    // the direct-scan entry point on a spread of pairs
    let disagreement = ms.iter().step_by(37).find(|a| {
        let b = ms.iter().find(|b| (*b - *a).rank() == 1).unwrap();
        let w = adjacency_witness(a, b, DEFAULT_BUDGET).unwrap();
        !w.verified || !w.exhaustive || w.r != witness_matrix(a, b).unwrap()
    });
    if let Some(a) = disagreement {
        return Err(format!("direct-scan witness disagrees at A={a:?}"));
    }
    match results.into_iter().find_map(|r| r.1) {
        None if pairs == 729 * 104 => Ok(format!("{pairs} adjacent pairs, 0 counterexamples")),
        None => Err(format!(
            "expected {} adjacent pairs, saw {pairs}",
            729 * 104
        )),
        Some(bad) => Err(bad),
    }
}

/// The separating X works for every rank-two pair and every other R on
/// M22(GF3), and for 10⁴ seeded triples on M32(GF3).
fn converse_separation() -> Outcome {
    let s = space(3, 2, 2);
    let ms = all(&s);
    let failures: Vec<(u64, Option<String>)> = ms
        .par_iter()
        .map(|a| {
            let mut cases = 0;
            for b in ms.iter().filter(|b| (*b - a).rank() == 2) {
                for r in ms.iter().filter(|r| *r != a && *r != b) {
                    cases += 1;
                    let x = separating_matrix(a, b, r).unwrap();
                    if !separates(a, b, r, &x) {
                        return (cases, Some(format!("A={a:?} B={b:?} R={r:?} X={x:?}")));
                    }
                }
            }
            (cases, None)
        })
        .collect();
    let exhaustive: u64 = failures.iter().map(|r| r.0).sum();
    if let Some(bad) = failures.into_iter().find_map(|r| r.1) {
        return Err(format!("M22(GF3): {bad}"));
    }

    let s = space(3, 3, 2);
    let ms = all(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 10_000;
    for _ in 0..samples {
        let a = &ms[rng.gen_range(0..ms.len())];
        let b = loop {
            let b = &ms[rng.gen_range(0..ms.len())];
            if (b - a).rank() == 2 {
                break b;
            }
        };
        let r = loop {
            let r = &ms[rng.gen_range(0..ms.len())];
            if r != a && r != b {
                break r;
            }
        };
        let x = separating_matrix(a, b, r).unwrap();
        if !separates(a, b, r, &x) {
            return Err(format!("M32(GF3): A={a:?} B={b:?} R={r:?} X={x:?}"));
        }
    }
    Ok(format!("{exhaustive} exhaustive triples on M22(GF3), {samples} seeded triples on M32(GF3), 0 failures"))
}

/// Tabulate, decompose, retabulate: identical tables and identical
/// canonical parameters for 100 seeds on each space.
fn round_trip() -> Outcome {
    let mut summary = Vec::new();
    for (q, m, n) in [(3, 2, 2), (4, 2, 2), (3, 3, 2), (9, 2, 2)] {
        let s = space(q, m, n);
        let outcomes: Vec<Result<bool, String>> = (0..100u64)
            .into_par_iter()
            .map(|seed| {
                let f = random_preserver(&s, seed, true).unwrap();
                let table = f.to_table(DEFAULT_BUDGET).unwrap();
                let g =
                    decompose(&table).map_err(|e| format!("GF({q}) {m}x{n} seed {seed}: {e}"))?;
                if g.to_table(DEFAULT_BUDGET).unwrap() != table {
                    return Err(format!("GF({q}) {m}x{n} seed {seed}: table differs"));
                }
                if g != f {
                    return Err(format!("GF({q}) {m}x{n} seed {seed}: parameters differ"));
                }
                Ok(!f.sigma().is_identity())
            })
            .collect();
        let twisted = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
        if let Some(Err(e)) = outcomes.into_iter().find(|o| o.is_err()) {
            return Err(e);
        }
        if q == 4 && twisted == 0 {
            return Err("no nontrivial automorphism drawn over GF(4)".into());
        }
        summary.push(format!("GF({q}) {m}x{n}: 100/100 ({twisted} twisted)"));
    }
    Ok(summary.join(", "))
}

fn brute_force_preserves(table: &MapTable, ms: &[Matrix]) -> bool {
    let images: Vec<Matrix> = ms.iter().map(|a| table.apply(a).unwrap()).collect();
    (0..ms.len()).into_par_iter().all(|a| {
        (0..ms.len())
            .filter(|&b| b != a)
            .all(|b| dis(&ms[a], &ms[b]) == dis(&images[a], &images[b]))
    })
}

/// Single swaps in genuine tables are caught, and each reported pair
/// really breaks preservation.
fn negative_certification() -> Outcome {
    let s = space(3, 2, 2);
    let ms = all(&s);
    let (mut detected, mut excluded) = (0, 0);
    for seed in 0..100u64 {
        let mut table = random_preserver(&s, seed, true)
            .unwrap()
            .to_table(DEFAULT_BUDGET)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..81u64);
        let j = loop {
            let j = rng.gen_range(0..81u64);
            if j != i {
                break j;
            }
        };
        table.swap(i, j);
        if brute_force_preserves(&table, &ms) {
            excluded += 1;
            continue;
        }
        let cert = certify_dis(&table, CertifyMode::Exhaustive);
        let Some((a, b)) = cert.counterexample.clone() else {
            return Err(format!("seed {seed}: swap {i}<->{j} not detected"));
        };
        let (fa, fb) = (table.apply(&a).unwrap(), table.apply(&b).unwrap());
        if cert.preserving || !cert.recheck(&table) || dis(&a, &b) == dis(&fa, &fb) {
            return Err(format!(
                "seed {seed}: counterexample {a:?}, {b:?} does not re-check"
            ));
        }
        detected += 1;
    }
    Ok(format!(
        "{detected}/{detected} detected and re-checked, {excluded} dis-preserving swaps excluded"
    ))
}

/// Gr(2, GF(3)^4): point counts and both correspondences with M22(GF3).
fn grassmann_correspondence() -> Outcome {
    let s = space(3, 2, 2);
    let points = enumerate_points(&s, DEFAULT_BUDGET).unwrap();
    if points != enumerate_points_brute_force(&s, DEFAULT_BUDGET).unwrap() {
        return Err("profile enumeration disagrees with brute force".into());
    }
    let finite: Vec<_> = points.iter().filter(|p| !is_at_infinity(p)).collect();
    if points.len() != 130 || finite.len() != 81 {
        return Err(format!("{} points, {} finite", points.len(), finite.len()));
    }
    let matrices: Vec<Matrix> = finite.iter().map(|p| to_matrix(p).unwrap()).collect();
    let mut distinct: Vec<u64> = matrices.iter().map(Matrix::index).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 81 {
        return Err("finite points do not cover M22(GF3) bijectively".into());
    }
    let mismatches: usize = (0..81)
        .into_par_iter()
        .map(|i| {
            (0..81)
                .filter(|&j| {
                    let (u, v, a, b) = (finite[i], finite[j], &matrices[i], &matrices[j]);
                    is_adjacent_points(u, v).unwrap() != ((a - b).rank() == 1)
                        || is_complementary(u, v).unwrap() != ((a - b).rank() == 2)
                })
                .count()
        })
        .sum();
    match mismatches {
        0 => Ok("130 points, 81 finite, 49 at infinity, 6561 finite pairs, 0 mismatches".into()),
        k => Err(format!("{k} mismatching finite pairs")),
    }
}

fn brute_force_ranks(s: &SpaceSpec) -> Vec<u128> {
    let mut counts = vec![0u128; s.m.min(s.n) + 1];
    for a in all(s) {
        counts[a.rank()] += 1;
    }
    counts
}

fn counting_oracles() -> Outcome {
    let s3 = space(3, 2, 2);
    let formula3: Vec<u128> = (0..=2).map(|r| count_by_rank(&s3, r).unwrap()).collect();
    if formula3 != [1, 32, 48] || brute_force_ranks(&s3) != formula3 {
        return Err(format!(
            "M22(GF3): formula {formula3:?}, brute force {:?}",
            brute_force_ranks(&s3)
        ));
    }
    let s4 = space(4, 2, 2);
    let formula4: Vec<u128> = (0..=2).map(|r| count_by_rank(&s4, r).unwrap()).collect();
    let brute4 = brute_force_ranks(&s4);
    if formula4.iter().sum::<u128>() != 256 || brute4 != formula4 {
        return Err(format!(
            "M22(GF4): formula {formula4:?}, brute force {brute4:?}"
        ));
    }
    Ok(format!(
        "M22(GF3) {formula3:?}, M22(GF4) {formula4:?} (sum 256), both equal to brute force"
    ))
}

/// Invertible 2×2 matrices over GF(3) with equal rank-one perturbation
/// profiles are equal.
fn perturbation_profiles() -> Outcome {
    let s = space(3, 2, 2);
    let collisions = invertible_profile_collisions(&s, DEFAULT_BUDGET).unwrap();
    let ms = all(&s);
    let invertible: Vec<&Matrix> = ms.iter().filter(|a| a.is_invertible()).collect();
    let rank_ones: Vec<&Matrix> = ms.iter().filter(|a| a.rank() == 1).collect();
    let profile =
        |a: &Matrix| -> Vec<bool> { rank_ones.iter().map(|p| (a - *p).is_invertible()).collect() };
    let profiles: Vec<Vec<bool>> = invertible.iter().map(|a| profile(a)).collect();
    let mut own = 0;
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            if profiles[i] == profiles[j] {
                own += 1;
            }
        }
    }
    if collisions.is_empty() && own == 0 && invertible.len() == 48 {
        Ok(format!(
            "{} pairs of invertible matrices, 0 violations",
            48 * 47 / 2
        ))
    } else {
        Err(format!(
            "{} reported collisions, {own} found by direct comparison",
            collisions.len()
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "adjacency via dis equals rank-one distance, M22(GF3) exhaustive",
            equivalence_exhaustive,
        ),
        (
            "forward witness verified over all X, M32(GF3)",
            forward_witness,
        ),
        (
            "converse separating matrix, M22(GF3) exhaustive + M32(GF3) sampled",
            converse_separation,
        ),
        (
            "preserver decomposition round trip, 4 spaces x 100 seeds",
            round_trip,
        ),
        (
            "single-swap corruptions detected with re-checkable pairs",
            negative_certification,
        ),
        (
            "Grassmann correspondence, Gr(2, GF(3)^4)",
            grassmann_correspondence,
        ),
        ("rank counting oracles", counting_oracles),
        (
            "rank-one perturbation profiles separate invertible 2x2 over GF(3)",
            perturbation_profiles,
        ),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
