use std::fs;
use std::path::Path;

use matgeo::grassmann::{
    enumerate_points, enumerate_points_brute_force, from_matrix, gaussian_binomial,
    is_adjacent_points, is_at_infinity, is_complementary, to_matrix,
};
use matgeo::matspace::{
    count_by_rank, enumerate_matrices, is_dis, DisGraph, SpaceTables, DEFAULT_GRAPH_BUDGET,
};
use matgeo::preserver::{certify_dis, decompose, random_preserver, CertifyMode, MapTable};
use matgeo::witness::{
    adjacency_witness_in, adjacent_via_dis_in, separating_matrix, witness_matrix,
};
use matgeo::{Error, FieldSpec, Matrix, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{decomposition_json, matrix_json, Check, Report};

/// Spaces at most this large also get the literal quantifier check.
const EQUIVALENCE_LIMIT: u128 = 100;

pub type CmdResult = std::result::Result<(), String>;

fn usage(e: Error) -> String {
    e.to_string()
}

pub fn space(q: u32, m: usize, n: usize) -> Result<SpaceSpec, String> {
    let field = FieldSpec::new(q).map_err(usage)?;
    Ok(SpaceSpec::new(&field, m, n))
}

fn random_matrix(rng: &mut ChaCha8Rng, field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| rng.gen_range(0..field.q()) as u8)
        .collect();
    Matrix::from_entries(field, rows, cols, entries).expect("entries in range")
}

fn random_nonzero(rng: &mut ChaCha8Rng, field: &FieldSpec, len: usize) -> Matrix {
    loop {
        let v = random_matrix(rng, field, len, 1);
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_rank_one(rng: &mut ChaCha8Rng, space: &SpaceSpec) -> Matrix {
    let x = random_nonzero(rng, &space.field, space.m);
    let y = random_nonzero(rng, &space.field, space.n);
    &x * &y.transpose()
}

fn dis(a: &Matrix, b: &Matrix) -> bool {
    is_dis(a, b).expect("same space")
}

fn triple_json(a: &Matrix, b: &Matrix, r: &Matrix, x: &Matrix) -> Value {
    json!({ "A": matrix_json(a), "B": matrix_json(b), "R": matrix_json(r), "X": matrix_json(x) })
}

/// Forward witness check, converse separation check and, on spaces of at
/// most 100 matrices, the literal quantifier check. In exhaustive mode the
/// converse check falls back to `samples` seeded triples once `N³` exceeds
/// the budget.
pub fn verify_prop22(
    report: &mut Report,
    space: &SpaceSpec,
    exhaustive: bool,
    samples: u64,
    seed: u64,
    budget: u64,
) -> CmdResult {
    space.check_hypotheses().map_err(usage)?;
    let size = space.size();
    let graph = if exhaustive {
        space.check_budget(budget.min(DEFAULT_GRAPH_BUDGET)).map_err(|e| {
            format!("{e}; exhaustive verification needs at most {DEFAULT_GRAPH_BUDGET} matrices, use --mode sampled")
        })?;
        Some(DisGraph::new(space, budget).map_err(usage)?)
    } else {
        None
    };

    report.push(match &graph {
        Some(graph) => forward_exhaustive(graph),
        None => forward_sampled(space, samples, seed),
    });

    let converse_exhaustive = graph.is_some() && size.saturating_pow(3) <= budget as u128;
    report.push(match &graph {
        Some(graph) if converse_exhaustive => converse_exhaustive_check(graph.tables()),
        _ => converse_sampled(space, samples, seed),
    });

    let equivalence = size <= EQUIVALENCE_LIMIT;
    if equivalence {
        let owned;
        let tables = match &graph {
            Some(graph) => graph.tables(),
            None => {
                owned = SpaceTables::new(space, budget).map_err(usage)?;
                &owned
            }
        };
        report.push(equivalence_check(tables));
    }
    report.results = json!({
        "space_size": size as u64,
        "converse_coverage": if converse_exhaustive { "exhaustive" } else { "sampled" },
        "equivalence_checked": equivalence,
    });
    Ok(())
}

fn forward_exhaustive(graph: &DisGraph) -> Check {
    let tables = graph.tables();
    let size = tables.size();
    let results: Vec<(u64, Option<Value>)> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut cases = 0;
            for b in (0..size).filter(|&b| tables.is_adjacent(a, b)) {
                cases += 1;
                let w = adjacency_witness_in(graph, a, b).expect("adjacent pair");
                let (ma, mb) = (tables.matrix(a), tables.matrix(b));
                if w.r == ma || w.r == mb {
                    return (cases, Some(json!({ "A": matrix_json(&ma), "B": matrix_json(&mb), "R": matrix_json(&w.r) })));
                }
                if let Some(x) = w.counterexample {
                    return (cases, Some(triple_json(&ma, &mb, &w.r, &x)));
                }
            }
            (cases, None)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let bad = results.into_iter().find_map(|(_, bad)| bad);
    Check::new("forward_witness", "exhaustive", cases, bad)
}

/// Random adjacent pairs, each tested against a random `X` with `X dis R`.
fn forward_sampled(space: &SpaceSpec, samples: u64, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = &space.field;
    for k in 0..samples {
        let a = random_matrix(&mut rng, field, space.m, space.n);
        let b = &a + &random_rank_one(&mut rng, space);
        let r = witness_matrix(&a, &b).expect("adjacent pair");
        let x = loop {
            let d = random_matrix(&mut rng, field, space.m, space.n);
            if d.rank() == space.n {
                break &r + &d;
            }
        };
        if r == a || r == b || !(dis(&x, &a) || dis(&x, &b)) {
            return Check::new(
                "forward_witness",
                "sampled",
                k + 1,
                Some(triple_json(&a, &b, &r, &x)),
            );
        }
    }
    Check::new("forward_witness", "sampled", samples, None)
}

fn separates(a: &Matrix, b: &Matrix, r: &Matrix, x: &Matrix) -> bool {
    dis(x, r) && !dis(x, a) && !dis(x, b)
}

fn converse_exhaustive_check(tables: &SpaceTables) -> Check {
    let size = tables.size();
    let results: Vec<(u64, Option<Value>)> = (0..size)
        .into_par_iter()
        .map(|a| {
            let ma = tables.matrix(a);
            let mut cases = 0;
            for b in (0..size).filter(|&b| tables.rank_of(tables.diff(a, b)) >= 2) {
                let mb = tables.matrix(b);
                for r in (0..size).filter(|&r| r != a && r != b) {
                    cases += 1;
                    let mr = tables.matrix(r);
                    let x = separating_matrix(&ma, &mb, &mr).expect("valid triple");
                    let xi = x.index() as usize;
                    if !(tables.is_dis(xi, r) && !tables.is_dis(xi, a) && !tables.is_dis(xi, b)) {
                        return (cases, Some(triple_json(&ma, &mb, &mr, &x)));
                    }
                }
            }
            (cases, None)
        })
        .collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let bad = results.into_iter().find_map(|(_, bad)| bad);
    Check::new("converse_separation", "exhaustive", cases, bad)
}

fn converse_sampled(space: &SpaceSpec, samples: u64, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let field = &space.field;
    for k in 0..samples {
        let a = random_matrix(&mut rng, field, space.m, space.n);
        let b = loop {
            let b = random_matrix(&mut rng, field, space.m, space.n);
            if (&b - &a).rank() >= 2 {
                break b;
            }
        };
        let r = loop {
            let r = random_matrix(&mut rng, field, space.m, space.n);
            if r != a && r != b {
                break r;
            }
        };
        let x = separating_matrix(&a, &b, &r).expect("valid triple");
        if !separates(&a, &b, &r, &x) {
            return Check::new(
                "converse_separation",
                "sampled",
                k + 1,
                Some(triple_json(&a, &b, &r, &x)),
            );
        }
    }
    Check::new("converse_separation", "sampled", samples, None)
}

fn equivalence_check(tables: &SpaceTables) -> Check {
    let size = tables.size();
    let bad = (0..size).into_par_iter().find_map_first(|a| {
        (0..size).filter(|&b| b != a).find_map(|b| {
            let direct = tables.is_adjacent(a, b);
            let via = adjacent_via_dis_in(tables, a, b);
            (direct != via).then(|| {
                json!({
                    "A": matrix_json(&tables.matrix(a)),
                    "B": matrix_json(&tables.matrix(b)),
                    "adjacent": direct,
                    "adjacent_via_dis": via,
                })
            })
        })
    });
    Check::new(
        "adjacency_via_dis_equivalence",
        "exhaustive",
        (size * (size - 1)) as u64,
        bad,
    )
}

fn read_table(path: &Path, budget: u64) -> Result<MapTable, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let table = MapTable::parse_text(&text)
        .map_err(|e| format!("malformed table {}: {e}", path.display()))?;
    table.space().check_budget(budget).map_err(usage)?;
    Ok(table)
}

fn describe_table(report: &mut Report, table: &MapTable) {
    let s = table.space();
    report.parameters.q = Some(s.field.q());
    report.parameters.m = Some(s.m);
    report.parameters.n = Some(s.n);
}

fn certification_check(table: &MapTable, mode: CertifyMode) -> Check {
    let cert = certify_dis(table, mode);
    let coverage = match mode {
        CertifyMode::Exhaustive => "exhaustive",
        CertifyMode::Sampled { .. } => "sampled",
    };
    let bad = cert.counterexample.as_ref().map(|(a, b)| {
        let (fa, fb) = (
            table.apply(a).expect("in space"),
            table.apply(b).expect("in space"),
        );
        json!({
            "A": matrix_json(a),
            "B": matrix_json(b),
            "image_A": matrix_json(&fa),
            "image_B": matrix_json(&fb),
            "dis": dis(a, b),
            "image_dis": dis(&fa, &fb),
        })
    });
    Check::new("dis_preserved", coverage, cert.pairs_checked, bad)
}

pub fn certify(report: &mut Report, path: &Path, mode: CertifyMode, budget: u64) -> CmdResult {
    let table = read_table(path, budget)?;
    describe_table(report, &table);
    report.push(certification_check(&table, mode));
    Ok(())
}

pub fn decompose_table(
    report: &mut Report,
    path: &Path,
    budget: u64,
    out: Option<&Path>,
) -> CmdResult {
    let table = read_table(path, budget)?;
    describe_table(report, &table);
    table.space().check_hypotheses().map_err(usage)?;
    let check = certification_check(&table, CertifyMode::Exhaustive);
    let certified = check.passed;
    report.push(check);
    if !certified {
        return Ok(());
    }
    match decompose(&table) {
        Ok(f) => {
            let doc = decomposition_json(&f);
            report.push(Check::new(
                "standard_form_recovered",
                "exhaustive",
                table.len() as u64,
                None,
            ));
            if let Some(out) = out {
                write_json(out, &doc)?;
            }
            report.results = json!({ "decomposition": doc });
        }
        Err(e) => report.push(Check::new(
            "standard_form_recovered",
            "exhaustive",
            table.len() as u64,
            Some(json!({ "step": e.to_string() })),
        )),
    }
    Ok(())
}

pub fn write_json(path: &Path, value: &Value) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("serializes") + "\n";
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

pub fn truth_path(out: &Path) -> std::path::PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".truth.json");
    name.into()
}

pub fn generate(
    report: &mut Report,
    space: &SpaceSpec,
    seed: u64,
    allow_transpose: bool,
    budget: u64,
    out: &Path,
) -> CmdResult {
    space.check_hypotheses().map_err(usage)?;
    let f = random_preserver(space, seed, allow_transpose).map_err(usage)?;
    let table = f.to_table(budget).map_err(usage)?;
    fs::write(out, table.to_text()).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    let doc = decomposition_json(&f);
    let truth = truth_path(out);
    write_json(&truth, &doc)?;
    report.results = json!({
        "table": out.display().to_string(),
        "truth": truth.display().to_string(),
        "decomposition": doc,
    });
    Ok(())
}

pub fn grassmann(report: &mut Report, space: &SpaceSpec, budget: u64) -> CmdResult {
    if space.m == 0 {
        return Err("subspace dimension (--rows) must be at least 1".into());
    }
    let q = space.field.q();
    let width = space.m + space.n;
    let expected = gaussian_binomial(q, width, space.m);
    let points = enumerate_points(space, budget).map_err(usage)?;
    let count_bad = (points.len() as u128 != expected)
        .then(|| json!({ "expected": expected as u64, "found": points.len() }));
    report.push(Check::new("point_count", "exhaustive", 1, count_bad));

    let frame_size = (q as u128).saturating_pow((space.m * width) as u32);
    if frame_size > budget as u128 {
        return Err(format!(
            "brute-force enumeration of {frame_size} basis matrices exceeds the budget of {budget}"
        ));
    }
    let brute = enumerate_points_brute_force(space, budget).map_err(usage)?;
    let first_diff = points.iter().zip(&brute).position(|(a, b)| a != b);
    let enum_bad = (brute.len() != points.len() || first_diff.is_some())
        .then(|| json!({ "brute_force_count": brute.len(), "first_difference": first_diff }));
    report.push(Check::new(
        "enumeration_matches_brute_force",
        "exhaustive",
        frame_size as u64,
        enum_bad,
    ));

    let finite: Vec<_> = points.iter().filter(|p| !is_at_infinity(p)).collect();
    let matrices_expected = space.size();
    let finite_bad = (finite.len() as u128 != matrices_expected)
        .then(|| json!({ "expected": matrices_expected as u64, "found": finite.len() }));
    report.push(Check::new(
        "finite_point_count",
        "exhaustive",
        1,
        finite_bad,
    ));

    let round_trip_bad = finite.iter().find_map(|p| {
        let a = to_matrix(p).expect("finite");
        (from_matrix(&a) != **p).then(|| json!({ "point": p.to_text(), "matrix": matrix_json(&a) }))
    });
    let round_trip_bad = match round_trip_bad {
        Some(bad) => Some(bad),
        None => enumerate_matrices(space, budget)
            .map_err(usage)?
            .find_map(|a| {
                let back = to_matrix(&from_matrix(&a)).expect("finite");
                (back != a)
                    .then(|| json!({ "matrix": matrix_json(&a), "round_trip": matrix_json(&back) }))
            }),
    };
    report.push(Check::new(
        "matrix_round_trip",
        "exhaustive",
        (finite.len() * 2) as u64,
        round_trip_bad,
    ));

    let pairs = (finite.len() as u128).pow(2);
    if pairs > budget as u128 {
        return Err(format!(
            "{pairs} finite point pairs exceed the budget of {budget}"
        ));
    }
    let matrices: Vec<Matrix> = finite
        .iter()
        .map(|p| to_matrix(p).expect("finite"))
        .collect();
    let correspond = |name: &str,
                      point_rel: &(dyn Fn(usize, usize) -> bool + Sync),
                      matrix_rel: &(dyn Fn(&Matrix, &Matrix) -> bool + Sync)| {
        let bad = (0..finite.len()).into_par_iter().find_map_first(|i| {
            (0..finite.len()).find_map(|j| {
                let (p, m) = (point_rel(i, j), matrix_rel(&matrices[i], &matrices[j]));
                (p != m).then(|| {
                    json!({
                        "U": finite[i].to_text(),
                        "V": finite[j].to_text(),
                        "A": matrix_json(&matrices[i]),
                        "B": matrix_json(&matrices[j]),
                        "points_related": p,
                        "matrices_related": m,
                    })
                })
            })
        });
        Check::new(name, "exhaustive", pairs as u64, bad)
    };
    report.push(correspond(
        "adjacency_correspondence",
        &|i, j| is_adjacent_points(finite[i], finite[j]).expect("same space"),
        &|a, b| (a - b).rank() == 1,
    ));
    if space.m == space.n {
        report.push(correspond(
            "complementarity_correspondence",
            &|i, j| is_complementary(finite[i], finite[j]).expect("square"),
            &|a, b| dis(a, b),
        ));
    }

    report.results = json!({
        "total": points.len(),
        "finite": finite.len(),
        "infinite": points.len() - finite.len(),
    });
    Ok(())
}

pub fn count(report: &mut Report, space: &SpaceSpec, budget: u64) -> CmdResult {
    if space.m == 0 || space.n == 0 {
        return Err("--rows and --cols must be at least 1".into());
    }
    let size = space.check_budget(budget).map_err(usage)?;
    let max_rank = space.m.min(space.n);
    let formula: Vec<u64> = (0..=max_rank)
        .map(|r| count_by_rank(space, r).map(|c| c as u64))
        .collect::<matgeo::Result<_>>()
        .map_err(usage)?;
    let mut brute = vec![0u64; max_rank + 1];
    for a in enumerate_matrices(space, budget).map_err(usage)? {
        brute[a.rank()] += 1;
    }
    let bad = (formula != brute).then(|| json!({ "formula": formula, "enumeration": brute }));
    report.push(Check::new(
        "formula_matches_enumeration",
        "exhaustive",
        size,
        bad,
    ));
    let total: u64 = formula.iter().sum();
    let sum_bad = (total != size).then(|| json!({ "sum": total, "space_size": size }));
    report.push(Check::new(
        "counts_sum_to_space_size",
        "exhaustive",
        1,
        sum_bad,
    ));
    report.results = json!({
        "ranks": (0..=max_rank).collect::<Vec<_>>(),
        "counts": formula,
        "total": total,
    });
    Ok(())
}
