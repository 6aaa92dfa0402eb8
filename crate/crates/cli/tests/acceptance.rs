//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Built with `harness = false` so the report is
//! always visible in `cargo test` output.

use modhull_core::conics::{
    count_conic_points_in_box, find_vanishing_form, ConicForm, MonomialSet,
};
use modhull_core::experiments::{exponent_of, sample_coprime, stream_for};
use modhull_core::geometry::normalize_to_box;
use modhull_core::hullfast::{fast_hull, naive_hull, HullMethod, PruneConfig};
use modhull_core::hyperbola::{
    apply_symmetry, count_in_box, enumerate_points, predicted_count, HyperbolaSpec,
};
use modhull_core::ntheory::{divisors, factorize, phi};
use modhull_core::{ConvexPolygon, LatticePoint, SymmetryKind};
use rand_core::RngCore;
use std::process::{Command, ExitCode};
use std::time::Instant;

const SEED: u64 = 20_240_601;

/// Frozen regression bound for the box-count discrepancy: twice the measured
/// maximum (0.010989) of `|count - main| / (sqrt(m) (1 + ln m)^2)` over the
/// seeded tuples below.
const C4_FROZEN: f64 = 0.022;

/// Frozen ceiling for `ln v / ln m` over the exponent sweep: the measured
/// maximum 0.507342 (m = 10561, a = 1) rounded up in the fourth decimal.
const C7_FROZEN: f64 = 0.5074;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sorted(vs: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut v = vs.to_vec();
    v.sort();
    v
}

/// `a = 1`, `a = m - 1` and three seeded samples, deduplicated.
fn c1_residues(m: u64) -> Vec<u64> {
    let mut a = vec![1, m - 1];
    a.extend(sample_coprime(m, 3, SEED));
    a.sort_unstable();
    a.dedup();
    a
}

fn criterion_1(hulls: &mut Vec<ConvexPolygon>) -> Outcome {
    let cfg = PruneConfig { method: HullMethod::Fast, ..Default::default() };
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for m in 10..=3000u64 {
        for a in c1_residues(m) {
            let spec = HyperbolaSpec::new(m, a as i64).unwrap();
            let fast = fast_hull(&spec, &cfg);
            let naive = naive_hull(&spec);
            assert_eq!(fast.method, HullMethod::Fast);
            if sorted(fast.polygon.vertices()) != sorted(naive.polygon.vertices()) {
                bad.push((m, a));
            }
            checked += 1;
            hulls.push(naive.polygon);
        }
    }
    outcome(bad.is_empty(), format!("{checked} (m, a) pairs, m in [10, 3000], mismatches {bad:?}"))
}

fn criterion_2() -> Outcome {
    let census = modhull_core::experiments::lower_bound_census(3, 5000).unwrap();
    let v = |m| naive_hull(&HyperbolaSpec::new(m, 1).unwrap()).polygon.vertex_count();
    let (v5, v7) = (v(5), v(7));
    let pass = census.violations.is_empty() && v5 == 4 && v7 == 6;
    outcome(
        pass,
        format!(
            "m in [3, 5000]: {} violations, {} equality cases; v_1(5) = {v5}, v_1(7) = {v7}",
            census.violations.len(),
            census.equality_count
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = stream_for(3, SEED);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let m = 2 + rng.next_u64() % (10_000 - 1);
        let a = sample_coprime(m, 1, rng.next_u64())[0];
        let spec = HyperbolaSpec::new(m, a as i64).unwrap();
        let card_ok = enumerate_points(&spec).len() as u64 == phi(m);
        let verts = sorted(fast_hull(&spec, &PruneConfig::default()).polygon.vertices());
        let closed = [SymmetryKind::Swap, SymmetryKind::Negate].iter().all(|&k| {
            let image: Vec<LatticePoint> = verts.iter().map(|&p| apply_symmetry(k, p, m)).collect();
            sorted(&image) == verts
        });
        if !(card_ok && closed) {
            failures.push((m, a));
        }
    }
    outcome(failures.is_empty(), format!("100 seeded pairs, m <= 10^4, failures {failures:?}"))
}

fn criterion_4() -> Outcome {
    let mut rng = stream_for(4, SEED);
    let mut worst = (0.0f64, 0u64, 0u64, 0u64, 0u64);
    for _ in 0..200 {
        let m = 3 + rng.next_u64() % (100_000 - 2);
        let a = sample_coprime(m, 1, rng.next_u64())[0];
        let u = 1 + rng.next_u64() % (m - 1);
        let v = 1 + rng.next_u64() % (m - 1);
        let spec = HyperbolaSpec::new(m, a as i64).unwrap();
        let exact = count_in_box(&spec, u, v) as f64;
        let main = predicted_count(&spec, u, v);
        let main = *main.numer() as f64 / *main.denom() as f64;
        let lm = (m as f64).ln();
        let r = (exact - main).abs() / ((m as f64).sqrt() * (1.0 + lm).powi(2));
        if r > worst.0 {
            worst = (r, m, a, u, v);
        }
    }
    let (r, m, a, u, v) = worst;
    outcome(
        r <= C4_FROZEN,
        format!("max normalized discrepancy {r:.6} at (m, a, U, V) = ({m}, {a}, {u}, {v}); frozen C = {C4_FROZEN}"),
    )
}

fn criterion_5() -> Outcome {
    let monos = MonomialSet::conic();
    let pts: Vec<LatticePoint> =
        divisors(&factorize(720)).into_iter().map(|d| LatticePoint::new(d as i64, 720 / d as i64)).collect();
    let form = find_vanishing_form(&pts, &monos).unwrap();
    let got: Option<Vec<i64>> =
        form.map(|c| c.iter().map(|x| i64::try_from(x).unwrap()).collect());
    let want = vec![0, 1, 0, 0, 0, -720];
    let neg: Vec<i64> = want.iter().map(|x| -x).collect();
    let divisor_ok = pts.len() == 30 && (got.as_ref() == Some(&want) || got.as_ref() == Some(&neg));

    let mut rng = stream_for(5, SEED);
    let generic: Vec<LatticePoint> = (0..6)
        .map(|_| LatticePoint::new((rng.next_u64() % 1000) as i64, (rng.next_u64() % 1000) as i64))
        .collect();
    let generic_none = find_vanishing_form(&generic, &monos).unwrap().is_none();
    outcome(
        divisor_ok && generic_none,
        format!("divisors of 720 give {got:?}; 6 generic points give none: {generic_none}"),
    )
}

fn brute_count(g: &ConicForm, h: i64) -> usize {
    let mut n = 0;
    for x in 0..=h {
        for y in 0..=h {
            if g.eval(x as i128, y as i128) == Some(0) {
                n += 1;
            }
        }
    }
    n
}

fn criterion_6() -> Outcome {
    let pell = ConicForm::new([1, 0, -2, 0, 0, -1]).unwrap();
    let circle = ConicForm::new([1, 0, 1, 0, 0, -25]).unwrap();
    let pell_n = count_conic_points_in_box(&pell, 100).unwrap().count;
    let circle_n = count_conic_points_in_box(&circle, 5).unwrap().count;

    let mut rng = stream_for(6, SEED);
    let mut tested = 0;
    let mut with_points = 0;
    let mut bad = Vec::new();
    while tested < 50 {
        let mut c = [0i64; 6];
        for x in c.iter_mut().take(5) {
            *x = (rng.next_u64() % 7) as i64 - 3;
        }
        c[5] = (rng.next_u64() % 401) as i64 - 200;
        let Ok(g) = ConicForm::primitive(c) else { continue };
        let Ok(res) = count_conic_points_in_box(&g, 200) else { continue };
        tested += 1;
        let brute = brute_count(&g, 200);
        if brute > 0 {
            with_points += 1;
        }
        if res.count != brute {
            bad.push((g.coeffs(), res.count, brute));
        }
    }
    let pass = pell_n == 4 && circle_n == 4 && bad.is_empty();
    outcome(
        pass,
        format!(
            "X^2-2Y^2-1 in [0,100]^2: {pell_n}; X^2+Y^2-25 in [0,5]^2: {circle_n}; \
             {tested} random forms at H = 200 ({with_points} with points), mismatches {bad:?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = stream_for(7, SEED);
    let mut moduli: Vec<u64> = Vec::new();
    while moduli.len() < 200 {
        let m = 10_000 + rng.next_u64() % 90_001;
        if !moduli.contains(&m) {
            moduli.push(m);
        }
    }
    let cfg = PruneConfig::default();
    let mut rows = Vec::new();
    for &m in &moduli {
        let mut residues = vec![1];
        residues.extend(sample_coprime(m, 3, SEED).into_iter().filter(|&a| a != 1).take(2));
        let sq = factorize(m).is_squarefree();
        for a in residues {
            let v = fast_hull(&HyperbolaSpec::new(m, a as i64).unwrap(), &cfg).polygon.vertex_count();
            rows.push((m, a, sq, exponent_of(v as u64, m)));
        }
    }
    let max_of = |f: &dyn Fn(bool) -> bool| {
        rows.iter().filter(|r| f(r.2)).map(|r| (r.3, r.0, r.1)).fold((0.0, 0, 0), |b, r| if r.0 > b.0 { r } else { b })
    };
    let all = max_of(&|_| true);
    let sq = max_of(&|s| s);
    let nsq = max_of(&|s| !s);
    outcome(
        all.0 <= C7_FROZEN,
        format!(
            "{} hulls; max ln v / ln m = {:.6} at (m, a) = ({}, {}); squarefree {:.6} at ({}, {}); \
             non-squarefree {:.6} at ({}, {}); frozen ceiling {C7_FROZEN}",
            rows.len(),
            all.0, all.1, all.2, sq.0, sq.1, sq.2, nsq.0, nsq.1, nsq.2
        ),
    )
}

fn criterion_8(hulls: &[ConvexPolygon]) -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    let mut degenerate = 0usize;
    let mut bad = 0usize;
    for poly in hulls {
        if poly.is_degenerate() {
            degenerate += 1;
            continue;
        }
        let n = normalize_to_box(poly).unwrap();
        checked += 1;
        worst = worst.max(n.ratio());
        if !n.within(8) {
            bad += 1;
        }
    }
    outcome(
        bad == 0 && checked > 0,
        format!("{checked} hulls ({degenerate} degenerate skipped), worst u*v/area = {worst:.6}, over 8: {bad}"),
    )
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_modhull");
    let work = tempfile::tempdir().unwrap();
    let run = |name: &str, cache: &str| -> Vec<u8> {
        let out = work.path().join(name);
        let status = Command::new(bin)
            .args(["sweep", "--m-min", "100", "--m-max", "400", "--a-policy", "sample:2", "--seed", "42", "--out"])
            .arg(&out)
            .env("MODHULL_CACHE_DIR", work.path().join(cache))
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        std::fs::read(out).unwrap()
    };
    let first = run("first.csv", "cache-a");
    let second = run("second.csv", "cache-b");
    // a third run served from the first run's cache
    let warm = run("warm.csv", "cache-a");
    let rows = first.iter().filter(|&&b| b == b'\n').count().saturating_sub(1);
    outcome(
        first == second && first == warm,
        format!("{rows} rows; cold runs identical: {}; warm cache identical: {}", first == second, first == warm),
    )
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters: nothing to enumerate beyond the suite
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut hulls = Vec::new();
    let mut all_pass = true;
    let mut report = |label: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        all_pass &= o.pass;
        println!(
            "{} criterion {label}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report("1 (fast hull = naive hull)", &mut || criterion_1(&mut hulls));
    report("2 (v_1(m) >= 2(tau(m-1) - 1))", &mut criterion_2);
    report("3 (cardinality and symmetry)", &mut criterion_3);
    report("4 (box count discrepancy)", &mut criterion_4);
    report("5 (conic recovery)", &mut criterion_5);
    report("6 (conic point counting)", &mut criterion_6);
    report("7 (exponent ceiling)", &mut criterion_7);
    report("8 (box normalization)", &mut || criterion_8(&hulls));
    report("9 (sweep determinism)", &mut criterion_9);
    if all_pass {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}

