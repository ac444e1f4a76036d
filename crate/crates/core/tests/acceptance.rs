//! Acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! The process exits 0 so that a workspace test run stays usable while a
//! criterion is known to fail; set `MAXCOMM_ACCEPTANCE_STRICT=1` to exit 1
//! when any line fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxcomm::algebra::laffey_bound;
use maxcomm::centralizer::{commutant, diagonal_units, is_maximal_commutative, jordan_block};
use maxcomm::normal_form::{
    appendix_replay, apply_to_triple, canonical_321_configuration, canonical_triple, structured_end_solver,
    triple_in_canonical_orbit, triple_normal_form, BaseChange, BlockConfiguration, Triple,
};
use maxcomm::verify::{case_by_id, verify_all, verify_case, CaseReport, InstanceReport, VerifyOptions};
use maxcomm::{Field, Matrix, Subspace};

const SEED: u64 = 0;
const MIN_INSTANCES: usize = 25;
const APPENDIX_BUDGET: Duration = Duration::from_secs(1);
const SQUARE_ZERO_BUDGET: Duration = Duration::from_secs(30);
const BASE_CHANGES: usize = 100;
const RATIONAL_ROWS: usize = 100;
const SMALL_SEARCH_BOUND: i64 = 6;
const MIXED_CONFIGURATIONS: usize = 200;
const LAFFEY_VALUE: f64 = 4.2415;
const LAFFEY_TOLERANCE: f64 = 1e-3;

struct Line {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn line(name: &'static str, pass: bool, detail: String) -> Line {
    Line { name, pass, detail }
}

fn case(report: &[CaseReport], id: &str) -> CaseReport {
    report.iter().find(|c| c.case.id == id).cloned().expect("case id")
}

fn with_filtration<'a>(c: &'a CaseReport, dims: &[usize]) -> Vec<&'a InstanceReport> {
    c.instances.iter().filter(|i| i.filtration.dims() == dims).collect()
}

fn min_end(is: &[&InstanceReport]) -> String {
    is.iter().map(|i| i.end_dim).min().map_or("-".into(), |m| m.to_string())
}

fn appendix() -> Line {
    let start = Instant::now();
    let q = appendix_replay(Field::Rationals);
    let elapsed = start.elapsed();
    let failing: Vec<&str> = q
        .identities
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.as_str())
        .collect();
    let pass = q.passed() && q.structured_dim == 9 && q.oracle_dim == 9 && elapsed < APPENDIX_BUDGET;
    line(
        "class 16 (2,3,1) block replay",
        pass,
        format!(
            "identities {}/{} hold{}, dim = {} (oracle {}, same space {}), {:.0?}",
            q.identities.len() - failing.len(),
            q.identities.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!(" (failing: {})", failing.join(", "))
            },
            q.structured_dim,
            q.oracle_dim,
            q.oracles_agree,
            elapsed
        ),
    )
}

fn square_zero() -> Line {
    let spec = case_by_id(Field::Rationals, "type-1-4").expect("case");
    let start = Instant::now();
    let c = verify_case(
        &spec,
        &VerifyOptions {
            seed: SEED,
            ..VerifyOptions::default()
        },
    );
    let elapsed = start.elapsed();
    let mut pass = elapsed < SQUARE_ZERO_BUDGET;
    let mut parts = Vec::new();
    for (a, b) in [(1, 5), (2, 4), (3, 3), (4, 2), (5, 1)] {
        let is = with_filtration(&c, &[a, b]);
        let bad = is.iter().filter(|i| i.end_dim < a * b + 1 || i.end_dim < 6).count();
        let ok = is.len() >= MIN_INSTANCES && bad == 0;
        pass &= ok;
        let mut p = format!(
            "({a},{b}): {} instances, min End {} vs {}",
            is.len(),
            min_end(&is),
            a * b + 1
        );
        if let Some(s) = c.skipped.iter().find(|s| s.target.dims() == [a, b]) {
            p.push_str(&format!(" [skipped: {}]", s.reason));
        }
        parts.push(p);
    }
    parts.push(format!("{elapsed:.1?}"));
    line("type (1,4): dim End ≥ ab + 1 for every shape", pass, parts.join("; "))
}

fn block_321(all: &[CaseReport]) -> Line {
    let f = Field::Rationals;
    let cfg = canonical_321_configuration(f);
    let s = structured_end_solver(&cfg);
    let g = commutant(cfg.matrices()).expect("square");
    let c = case(all, "type-1-3-1-321");
    let is = with_filtration(&c, &[3, 2, 1]);
    let sampled_ok = is.len() >= MIN_INSTANCES && is.iter().all(|i| i.end_dim >= 6 && i.structured_agrees);
    let pass = s.dim() >= 6 && s.same_space(&g) && sampled_ok;
    line(
        "type (1,3,1), (3,2,1): block solver ≥ 6 on the canonical configuration",
        pass,
        format!(
            "canonical configuration: block solver {}, generic commutant {}, same space {}, generators commute {}; \
             sampled: {} instances, min End {}, all paths agree {}",
            s.dim(),
            g.dim(),
            s.same_space(&g),
            cfg.is_commutative(),
            is.len(),
            min_end(&is),
            is.iter().all(|i| i.structured_agrees)
        ),
    )
}

fn cube_layer(all: &[CaseReport]) -> Line {
    let c = case(all, "type-1-2-1-1");
    let mut pass = !c.instances.is_empty();
    let mut parts = Vec::new();
    let mut filtrations: Vec<Vec<usize>> = c.instances.iter().map(|i| i.filtration.dims().to_vec()).collect();
    filtrations.dedup();
    for fv in &filtrations {
        let is = with_filtration(&c, fv);
        let max_inter = is.iter().map(|i| i.intersection_dim).max().unwrap_or(0);
        let ok = is.iter().all(|i| {
            let a = i.filtration.top();
            i.intersection_dim <= 1 && i.end_dim + i.intersection_dim >= 5 + a && 5 + a >= 6 + i.intersection_dim
        });
        pass &= ok;
        parts.push(format!(
            "{:?}: {} instances, max intersection {max_inter}, min End {}",
            fv,
            is.len(),
            min_end(&is)
        ));
    }
    line(
        "type (1,2,1,1): intersection ≤ 1 and dim End ≥ 5 + a - intersection ≥ 6",
        pass,
        parts.join("; "),
    )
}

fn top_411(all: &[CaseReport]) -> Line {
    let c = case(all, "type-1-3-1-411");
    let is = with_filtration(&c, &[4, 1, 1]);
    let pass = is.len() >= MIN_INSTANCES && is.iter().all(|i| i.end_dim >= 8);
    line(
        "type (1,3,1), (4,1,1): dim End ≥ 8",
        pass,
        format!("{} instances, min End {}", is.len(), min_end(&is)),
    )
}

fn two_two(all: &[CaseReport]) -> Line {
    let c = case(all, "type-1-2-2");
    let c2: Vec<&InstanceReport> = c
        .instances
        .iter()
        .filter(|i| i.filtration.dims().get(2) == Some(&2))
        .collect();
    let t231 = with_filtration(&c, &[2, 3, 1]);
    let pass = !c2.is_empty()
        && !t231.is_empty()
        && c2.iter().all(|i| i.end_dim >= 7)
        && t231.iter().all(|i| i.end_dim >= 7 && i.socle_dim >= 2);
    line(
        "type (1,2,2): c = 2 gives End ≥ 7; (2,3,1) gives socle ≥ 2 and End ≥ 7",
        pass,
        format!(
            "c = 2: {} instances, min End {}; (2,3,1): {} instances, min End {}, min socle {}",
            c2.len(),
            min_end(&c2),
            t231.len(),
            min_end(&t231),
            t231.iter()
                .map(|i| i.socle_dim)
                .min()
                .map_or("-".into(), |m| m.to_string())
        ),
    )
}

fn class16(all: &[CaseReport]) -> Line {
    let c = case(all, "class-16-231");
    let sampled: Vec<&InstanceReport> = c.instances.iter().filter(|i| i.source.starts_with("sample")).collect();
    let case1: Vec<&&InstanceReport> = sampled.iter().filter(|i| i.required_bound == 7).collect();
    let case2_sampled = sampled.len() - case1.len();
    let fixture: Vec<&InstanceReport> = c.instances.iter().filter(|i| !i.source.starts_with("sample")).collect();
    let fixture_ok = fixture.len() == 1 && fixture[0].end_dim == 9;
    let case1_ok = !case1.is_empty() && case1.iter().all(|i| i.socle_dim >= 3 && i.end_dim >= 7);
    line(
        "class 16, (2,3,1): case 1 socle ≥ 3 and End ≥ 7; case 2 fixture End = 9",
        case1_ok && fixture_ok,
        format!(
            "case 1: {} instances, min End {}, min socle {}; sampled case 2: {case2_sampled}; fixture End {}",
            case1.len(),
            case1
                .iter()
                .map(|i| i.end_dim)
                .min()
                .map_or("-".into(), |m| m.to_string()),
            case1
                .iter()
                .map(|i| i.socle_dim)
                .min()
                .map_or("-".into(), |m| m.to_string()),
            fixture.first().map_or("-".into(), |i| i.end_dim.to_string())
        ),
    )
}

fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(f, n, n, |_, _| f.from_i64(rng.random_range(-4..=4)));
        if m.is_invertible() {
            return m;
        }
    }
}

fn with_bottom_row(f: Field, u: i64, v: i64, w: i64) -> Triple {
    let mut t = canonical_triple(f);
    t[2] = Matrix::from_i64(f, &[&[0, 0, 0], &[u, v, w]]);
    t
}

fn normal_form() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let q = Field::Rationals;
    let c = canonical_triple(q);
    let mut reduced = 0;
    for _ in 0..BASE_CHANGES {
        let change = BaseChange {
            layers: vec![random_invertible(q, 3, &mut rng), random_invertible(q, 2, &mut rng)],
            mix: random_invertible(q, 3, &mut rng),
        };
        let t = apply_to_triple(&change, &c);
        if let Ok((out, back)) = triple_normal_form(&t) {
            if out == c && apply_to_triple(&back, &t) == c {
                reduced += 1;
            }
        }
    }

    let fp = Field::prime(101).expect("prime");
    let (mut fp_rows, mut fp_in) = (0, 0);
    for u in 0..=SMALL_SEARCH_BOUND {
        for v in 0..=SMALL_SEARCH_BOUND {
            for w in 0..=SMALL_SEARCH_BOUND {
                if (u, v, w) == (0, 0, 0) {
                    continue;
                }
                fp_rows += 1;
                if triple_in_canonical_orbit(&with_bottom_row(fp, u, v, w)) == Ok(true) {
                    fp_in += 1;
                }
            }
        }
    }
    let (mut q_rows, mut q_in) = (0, 0);
    while q_rows < RATIONAL_ROWS {
        let (u, v, w) = (
            rng.random_range(-5..=5),
            rng.random_range(-5..=5),
            rng.random_range(-5..=5),
        );
        if (u, v, w) == (0, 0, 0) {
            continue;
        }
        q_rows += 1;
        if triple_in_canonical_orbit(&with_bottom_row(q, u, v, w)) == Ok(true) {
            q_in += 1;
        }
    }
    let pass = reduced == BASE_CHANGES && fp_in == fp_rows && q_in == q_rows;
    line(
        "triple normal form: base changes reduce back; every nonzero (u,v,w) is canonical",
        pass,
        format!(
            "reduced {reduced}/{BASE_CHANGES}; rows equivalent to canonical: F_101 {fp_in}/{fp_rows}, Q {q_in}/{q_rows}"
        ),
    )
}

fn maximality(all: &[CaseReport]) -> Line {
    let q = Field::Rationals;
    let j6 = is_maximal_commutative(q, 6, &[jordan_block(q, 6)]).expect("commuting");
    let diag = is_maximal_commutative(q, 6, &diagonal_units(q, 6)).expect("commuting");
    let instances: Vec<&InstanceReport> = all.iter().flat_map(|c| c.instances.iter()).collect();
    let witnessed = instances
        .iter()
        .filter(|i| {
            i.witness_index.is_some() && i.checks.iter().any(|c| c.starts_with("not maximal: witness commutes"))
        })
        .count();
    let pass = j6.maximal
        && j6.algebra_dim == 6
        && diag.maximal
        && diag.algebra_dim == 6
        && !instances.is_empty()
        && witnessed == instances.len();
    line(
        "maximality: J6 and diagonal maximal of dim 6; case instances not maximal",
        pass,
        format!(
            "J6: maximal {} dim {}; diagonal: maximal {} dim {}; witnessed {witnessed}/{} instances",
            j6.maximal,
            j6.algebra_dim,
            diag.maximal,
            diag.algebra_dim,
            instances.len()
        ),
    )
}

fn random_block(f: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| {
        if rng.random_bool(0.4) {
            f.from_i64(rng.random_range(-2..=2))
        } else {
            f.zero()
        }
    })
}

/// Images of the generators span `V_1 ⊕ V_2` and their pairwise products
/// span `V_2`, so every commuting matrix preserves the layer flag.
fn layers_generated(cfg: &BlockConfiguration) -> bool {
    let mats = cfg.matrices();
    let n = cfg.n();
    let f = mats[0].field();
    let d = cfg.dims().dims();
    let (d0, d2) = (d[0], d[2]);
    let cols: Vec<_> = mats.iter().flat_map(|m| m.columns()).collect();
    let mut prods = Vec::new();
    for a in mats {
        for b in mats {
            prods.extend(a.mul(b).expect("square").columns());
        }
    }
    let span = |v: &[Vec<_>]| Subspace::span(f, n, v).expect("ambient").dim();
    span(&cols) == n - d0 && span(&prods) == d2
}

fn oracle_equivalence(all: &[CaseReport]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    let shapes = [
        (2, 3, 1),
        (3, 2, 1),
        (2, 2, 2),
        (1, 3, 2),
        (3, 1, 2),
        (2, 2, 1),
        (1, 2, 3),
    ];
    let fields = [Field::Rationals, Field::prime(101).expect("prime")];
    let (mut tried, mut agreed, mut rejected) = (0, 0, 0);
    while tried < MIXED_CONFIGURATIONS {
        let f = fields[rng.random_range(0..fields.len())];
        let (d0, d1, d2) = shapes[rng.random_range(0..shapes.len())];
        let gens = rng.random_range(2..=3);
        let labels = &["x", "y", "z"][..gens];
        let l: Vec<Matrix> = (0..gens).map(|_| random_block(f, d1, d0, &mut rng)).collect();
        let n: Vec<Matrix> = (0..gens).map(|_| random_block(f, d2, d1, &mut rng)).collect();
        let m: Vec<Matrix> = (0..gens).map(|_| random_block(f, d2, d0, &mut rng)).collect();
        let cfg = BlockConfiguration::from_blocks(f, (d0, d1, d2), labels, &l, &n, &m).expect("shapes");
        if !layers_generated(&cfg) {
            rejected += 1;
            continue;
        }
        tried += 1;
        let s = structured_end_solver(&cfg);
        let g = commutant(cfg.matrices()).expect("square");
        let contained = s.basis().iter().all(|x| g.contains(x)) && g.basis().iter().all(|x| s.contains(x));
        if s.dim() == g.dim() && contained {
            agreed += 1;
        }
    }
    let instances: Vec<&InstanceReport> = all.iter().flat_map(|c| c.instances.iter()).collect();
    let module_agree = instances
        .iter()
        .filter(|i| i.structured_agrees && i.oracle_agrees)
        .count();
    let pass = agreed == tried && module_agree == instances.len();
    line(
        "block solver and generic commutant agree",
        pass,
        format!(
            "random configurations {agreed}/{tried} (redrawn {rejected}); module instances {module_agree}/{}",
            instances.len()
        ),
    )
}

fn laffey() -> Line {
    let b = laffey_bound(6);
    let independent = 144f64.cbrt() - 1.0;
    let note = maxcomm::verify::laffey_note(&b);
    let pass = (b.approximation - independent).abs() <= LAFFEY_TOLERANCE
        && (b.approximation - LAFFEY_VALUE).abs() <= LAFFEY_TOLERANCE
        && b.implied_min_dim == 5
        && note.contains("4.8088");
    line(
        "general bound at n = 6",
        pass,
        format!(
            "{} ≈ {:.4}, implied dim A ≥ {}; {note}",
            b.expression, b.approximation, b.implied_min_dim
        ),
    )
}

fn main() {
    let start = Instant::now();
    let report = verify_all(&VerifyOptions {
        seed: SEED,
        ..VerifyOptions::default()
    });
    let all = &report.cases;
    let lines = vec![
        appendix(),
        square_zero(),
        block_321(all),
        cube_layer(all),
        top_411(all),
        two_two(all),
        class16(all),
        normal_form(),
        maximality(all),
        oracle_equivalence(all),
        laffey(),
    ];
    for l in &lines {
        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} criteria pass ({:.1?})", lines.len(), start.elapsed());
    let strict = std::env::var("MAXCOMM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && passed < lines.len() {
        std::process::exit(1);
    }
}
