//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are visible under `cargo test`.
//!
//! A criterion may be red for a documented reason. Such a criterion is listed
//! in `EXPECTED_RED` together with a check that the failure is exactly the
//! documented one; any other failure makes the run exit non-zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ecfam::catalog::{catalog_list, lookup, specialize};
use ecfam::curves::{ab_isomorphism, two_torsion_roots, Curve, Point};
use ecfam::exact_math::{frac, odd_primes, rat, Poly, Rational};
use ecfam::heights::{canonical_height, gram_matrix, height_pairing, small_integral_model};
use ecfam::rank3::{aux_points, build_rank3, generate_all, quartic_to_cubic, MatchSpec, Rank3Kind, DEFAULT_SEARCH_BOUND};
use ecfam::sieve::{grid, mestre_nagao, scan};
use ecfam::torsion::{count_points_mod_p, torsion_structure};
use ecfam::verify::{check_independent, first_good_integer, first_informative_integer, sample_parameters, verify_membership};

const SEED: u64 = 0;
const HEIGHT_EPS: f64 = 1e-10;
const REGULATOR_MIN: f64 = 1e-6;
const QUADRATIC_TOL: f64 = 5e-10;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Outcome {
        Outcome { passed: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Outcome {
        Outcome { passed: false, detail: detail.into() }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Outcome {
        Outcome { passed: ok, detail: detail.into() }
    }
}

fn symbolic_identities() -> Outcome {
    let entries = catalog_list();
    let reports: Vec<_> = entries.iter().map(verify_membership).collect();
    let claims: usize = reports.iter().map(|r| r.claims.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {}", r.entry, c.name)))
        .collect();
    if failed.is_empty() {
        Outcome::pass(format!("{claims} membership identities over {} entries", entries.len()))
    } else {
        Outcome::fail(failed.join("; "))
    }
}

/// Fibres whose torsion differs from the claim, as (entry, parameter, found, grows).
fn torsion_mismatches() -> Vec<(String, Rational, String, bool)> {
    let mut out = Vec::new();
    for entry in catalog_list() {
        let qs = sample_parameters(entry, 20, SEED).expect("samples");
        assert_eq!(qs.len(), 20, "{}", entry.id);
        for q in qs {
            let fibre = specialize(entry, &q).expect("sampled parameter is clean");
            let found = torsion_structure(&fibre.curve).group;
            if found != entry.claimed_torsion {
                let grows = found.contains(&entry.claimed_torsion);
                out.push((entry.id.clone(), q, found.tag(), grows));
            }
        }
    }
    out
}

fn torsion_suite() -> Outcome {
    let bad = torsion_mismatches();
    let total = catalog_list().len() * 20;
    if bad.is_empty() {
        return Outcome::pass(format!("{total} fibres match the claimed group"));
    }
    let list: Vec<String> = bad.iter().map(|(id, q, g, _)| format!("{id} at {q} has {g}")).collect();
    Outcome::fail(format!("{} of {total} fibres differ: {}", bad.len(), list.join(", ")))
}

/// The red torsion criterion is acceptable only if every mismatch is a fibre
/// where the group strictly grows.
fn torsion_red_is_growth() -> bool {
    torsion_mismatches().iter().all(|m| m.3)
}

fn anchors() -> Outcome {
    let z8 = specialize(lookup("Z8_BASE").unwrap(), &rat(2)).unwrap().curve;
    let z26 = specialize(lookup("Z26_BASE").unwrap(), &rat(2)).unwrap();
    let t = z26.torsion_point.clone().expect("torsion point");
    let mut roots = two_torsion_roots(&z26.curve);
    roots.sort();
    let checks = [
        ("Z8_BASE(2) = (49, 256)", z8 == Curve::ab(rat(49), rat(256)).unwrap()),
        ("#E(F_7) = 8", count_points_mod_p(&z8, 7) == Ok(8)),
        ("Z26_BASE(2) = (-59, 864)", z26.curve == Curve::ab(rat(-59), rat(864)).unwrap()),
        ("torsion point (24, 24)", t == Point::new(rat(24), rat(24))),
        ("order 6", z26.curve.point_order(&t, 12) == Ok(Some(6))),
        ("2-torsion {0, 27, 32}", roots == vec![rat(0), rat(27), rat(32)]),
        ("#E(F_7) = 12", count_points_mod_p(&z26.curve, 7) == Ok(12)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome::check(failed.is_empty(), if failed.is_empty() { "7 exact values".into() } else { failed.join("; ") })
}

fn independence() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for id in ["Z8_R2_A", "Z8_R2_B", "Z26_R2_A", "Z26_R2_B", "Z26_R2_C"] {
        let entry = lookup(id).unwrap();
        let q = first_good_integer(entry, 2).unwrap();
        if first_informative_integer(entry, 2).as_ref() != Ok(&q) {
            ok = false;
            lines.push(format!("{id}: a claimed point is torsion at {q}"));
            continue;
        }
        let fibre = specialize(entry, &q).unwrap();
        let heights: Vec<f64> = fibre
            .points
            .iter()
            .map(|p| canonical_height(&fibre.curve, p, HEIGHT_EPS).map(|h| if h.error_bound <= HEIGHT_EPS { h.value } else { f64::NAN }))
            .collect::<Result<_, _>>()
            .unwrap_or_default();
        let precise = heights.len() == 2 && heights.iter().all(|h| h.is_finite() && *h > 0.0);
        match check_independent(&fibre.curve, &fibre.points, REGULATOR_MIN) {
            Ok(reg) if precise => lines.push(format!("{id}@{q} det {reg:.6}")),
            Ok(_) => {
                ok = false;
                lines.push(format!("{id}@{q} heights not within {HEIGHT_EPS:e}"));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{id}@{q}: {e}"));
            }
        }
    }
    Outcome::check(ok, lines.join(", "))
}

fn rank3_suite() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (kind, seed) in [(Rank3Kind::Z8, (rat(1), rat(60))), (Rank3Kind::Z2xZ6, (rat(1), rat(8)))] {
        let spec = MatchSpec::new(kind);
        ok &= spec.quartic.seed == seed && spec.quartic.contains(&seed.0, &seed.1);
        match build_rank3(&spec, 3, REGULATOR_MIN) {
            Ok(run) => {
                let good = run.curves.len() == 3
                    && run.curves.iter().all(|c| c.torsion == kind.torsion() && c.regulator > REGULATOR_MIN);
                let distinct = good && (0..3).all(|i| (0..i).all(|j| {
                    ab_isomorphism(&run.curves[i].candidate.curve, &run.curves[j].candidate.curve).is_none()
                }));
                ok &= good && distinct;
                let regs: Vec<String> = run.curves.iter().map(|c| format!("{:.3}", c.regulator)).collect();
                lines.push(format!("{} regulators [{}]", kind.tag(), regs.join(", ")));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{}: {e}", kind.tag()));
            }
        }
        let stream = generate_all(&spec, DEFAULT_SEARCH_BOUND).unwrap();
        let (w1, w2) = spec.substitutions();
        let hit = |r: Rational, s: Rational| stream.rejected.iter().any(|j| j.r == r && j.s == s);
        match kind {
            Rank3Kind::Z2xZ6 => {
                let hand = hit(rat(1), rat(-1)) && w1.eval(&rat(1)) == Some(rat(-2)) && w2.eval(&rat(-1)) == Some(rat(-2));
                ok &= hand;
                lines.push(format!("(1,-1) => w=-2 seen and filtered: {hand}"));
            }
            Rank3Kind::Z8 => {
                let filtered = hit(rat(1), frac(29, 6)) && stream.accepted.iter().all(|c| c.r != rat(1));
                ok &= filtered;
                lines.push(format!("(1,29/6) filtered: {filtered}"));
            }
        }
    }
    Outcome::check(ok, lines.join("; "))
}

fn auxiliary_curves() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (kind, point) in [(Rank3Kind::Z8, (99, 990)), (Rank3Kind::Z2xZ6, (7, 14))] {
        let spec = MatchSpec::new(kind);
        let image = quartic_to_cubic(&spec.quartic).map(|m| m.curve);
        let iso = image
            .as_ref()
            .is_ok_and(|c| c.j_invariant() == spec.aux_cubic.j_invariant() && ab_isomorphism(c, &spec.aux_cubic).is_some());
        let p = Point::new(rat(point.0), rat(point.1));
        let found = aux_points(&spec, DEFAULT_SEARCH_BOUND).iter().any(|a| a.point == p && !a.torsion);
        let non_torsion = spec.aux_cubic.is_torsion(&p) == Ok(false);
        ok &= iso && found && non_torsion;
        lines.push(format!("{}: isomorphic {iso}, {p} found {found}, non-torsion {non_torsion}", spec.aux_cubic));
    }
    Outcome::check(ok, lines.join("; "))
}

/// #E(F_p) by the double loop over x and y on an integral model.
fn brute_count(e: &Curve, p: i64) -> Option<u64> {
    let m = |q: &Rational| -> i64 {
        let n = (q.numer() % p).to_string().parse::<i64>().unwrap().rem_euclid(p);
        assert!(q.is_integer());
        n
    };
    let (a, b, c) = (m(e.a()), m(e.b()), m(e.c()));
    if m(&e.discriminant()) == 0 {
        return None;
    }
    let mut count = 1;
    for x in 0..p {
        let f = (x * x % p * x + a * x % p * x + b * x + c).rem_euclid(p);
        for y in 0..p {
            if (y * y - f) % p == 0 {
                count += 1;
            }
        }
    }
    Some(count)
}

fn sieve_suite() -> Outcome {
    let mut ok = true;
    let mut compared = 0;
    let cases = [("Z8_BASE", frac(3, 7)), ("Z8_R1_2", rat(3)), ("Z26_BASE", frac(2, 5)), ("Z26_R1_3", frac(7, 5)), ("Z8_AA", rat(5))];
    for (id, q) in cases {
        let fibre = specialize(lookup(id).unwrap(), &q).unwrap().curve;
        let model = small_integral_model(&fibre);
        let mut oracle = 0.0;
        for p in odd_primes().take_while(|&p| p <= 100) {
            let slow = brute_count(&model, p as i64);
            ok &= count_points_mod_p(&model, p).ok() == slow;
            if let Some(n) = slow {
                compared += 1;
                oracle += (1.0 - (p - 1) as f64 / n as f64) * (p as f64).ln();
            }
        }
        ok &= (mestre_nagao(&fibre, 100).unwrap().value - oracle).abs() < 1e-9;
    }
    let mut listed = Vec::new();
    for (id, q, nums, dens) in [
        ("Z8_R1_2", frac(287, 109), 283..=290, 105..=110),
        ("Z26_R1_3", frac(53, 90), 50..=56, 88..=92),
        ("Z8_R1_6", frac(100, 29), 97..=103, 27..=31),
    ] {
        let entry = lookup(id).unwrap();
        let params = grid(nums, dens);
        let records = scan(entry, &params, 1000, params.len()).unwrap();
        let clean = records.iter().all(|r| !entry.degeneracy.contains(&r.parameter));
        let hit = records.iter().find(|r| r.parameter == q);
        let good = clean && hit.is_some_and(|r| r.torsion_ok);
        ok &= good;
        listed.push(format!("{id} {q} torsion_ok {}", hit.is_some_and(|r| r.torsion_ok)));
    }
    Outcome::check(ok, format!("{compared} prime counts match the double loop; {}", listed.join(", ")))
}

fn add(e: &Curve, p: &Point, q: &Point) -> Point {
    e.add(p, q).expect("points on curve")
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let bases: Vec<(Curve, Vec<Point>)> = vec![
        (Curve::ab(rat(-43), rat(280)).unwrap(), vec![Point::new(rat(7), rat(14)), Point::new(rat(8), rat(0))]),
        (Curve::ab(rat(-463), rat(45936)).unwrap(), vec![Point::new(rat(99), rat(990)), Point::new(rat(144), rat(0))]),
        (Curve::ab(rat(-59), rat(864)).unwrap(), vec![Point::new(rat(24), rat(24)), Point::new(rat(27), rat(0))]),
        (Curve::ab(rat(49), rat(256)).unwrap(), vec![Point::new(rat(-32), rat(96))]),
    ];
    let random_point = |rng: &mut ChaCha8Rng, e: &Curve, gens: &[Point]| {
        gens.iter().fold(Point::Infinity, |acc, g| {
            let k = rng.gen_range(-4..=4i64);
            add(e, &acc, &e.scalar_mul(k, g).unwrap())
        })
    };
    let mut group_ok = 0;
    for i in 0..1000 {
        let (e, gens) = &bases[i % bases.len()];
        let (p, q, r) = (random_point(&mut rng, e, gens), random_point(&mut rng, e, gens), random_point(&mut rng, e, gens));
        let assoc = add(e, &add(e, &p, &q), &r) == add(e, &p, &add(e, &q, &r));
        let comm = add(e, &p, &q) == add(e, &q, &p);
        let ident = add(e, &p, &Point::Infinity) == p;
        let inv = add(e, &p, &e.neg(&p)).is_infinity();
        let on = e.contains(&add(e, &p, &q));
        if assoc && comm && ident && inv && on {
            group_ok += 1;
        }
    }

    let mut samples = vec![
        (Curve::ab(rat(-43), rat(280)).unwrap(), Point::new(rat(7), rat(14))),
        (Curve::ab(rat(-463), rat(45936)).unwrap(), Point::new(rat(99), rat(990))),
    ];
    for id in ["Z8_R2_A", "Z26_R2_C"] {
        let entry = lookup(id).unwrap();
        let fibre = specialize(entry, &first_good_integer(entry, 2).unwrap()).unwrap();
        samples.extend(fibre.points.into_iter().map(|p| (fibre.curve.clone(), p)));
    }
    let mut worst_quad: f64 = 0.0;
    for (e, p) in &samples {
        for k in 1..=3 {
            let pk = e.scalar_mul(k, p).unwrap();
            let h = canonical_height(e, &pk, HEIGHT_EPS / 10.0).unwrap().value;
            let h2 = canonical_height(e, &e.double(&pk), HEIGHT_EPS / 10.0).unwrap().value;
            worst_quad = worst_quad.max((h2 - 4.0 * h).abs());
        }
    }

    let e = Curve::ab(rat(-463), rat(45936)).unwrap();
    let p = Point::new(rat(99), rat(990));
    let q = e.scalar_mul(2, &p).unwrap();
    let t = Point::new(rat(144), rat(0));
    let r = add(&e, &p, &t);
    let pair = |a: &Point, b: &Point| height_pairing(&e, a, b, HEIGHT_EPS).unwrap().value;
    let sym = (pair(&p, &r) - pair(&r, &p)).abs();
    let bilinear = (pair(&add(&e, &p, &q), &r) - pair(&p, &r) - pair(&q, &r)).abs();
    let gram = gram_matrix(&e, &[p.clone(), r.clone()], HEIGHT_EPS).unwrap();
    let gram_sym = (gram[0][1].value - gram[1][0].value).abs();

    let mut hasse_ok = true;
    let mut hasse_n = 0;
    for _ in 0..40 {
        let (a, b) = (rng.gen_range(-200..=200i64), rng.gen_range(-200..=200i64));
        let Ok(e) = Curve::ab(rat(a), rat(b)) else { continue };
        for p in odd_primes().take_while(|&p| p < 400) {
            if let Ok(n) = count_points_mod_p(&e, p) {
                hasse_ok &= ((n as f64) - (p as f64) - 1.0).abs() <= 2.0 * (p as f64).sqrt();
                hasse_n += 1;
            }
        }
    }

    let mut sqrt_ok = true;
    for _ in 0..200 {
        let deg = rng.gen_range(0..6usize);
        let coeffs: Vec<Rational> = (0..=deg).map(|_| frac(rng.gen_range(-30..=30), rng.gen_range(1..=9))).collect();
        let f = Poly::new(coeffs);
        let sq = &f * &f;
        sqrt_ok &= match sq.sqrt() {
            Some(g) => &g * &g == sq && (g == f || g == -&f),
            None => false,
        };
        let shifted = &sq + &Poly::constant(rat(1));
        if !f.is_zero() && f.degree() > Some(0) {
            sqrt_ok &= shifted.sqrt().is_none_or(|g| &g * &g == shifted);
        }
    }

    let ok = group_ok == 1000
        && worst_quad <= QUADRATIC_TOL
        && sym <= 1e-9
        && bilinear <= 1e-9
        && gram_sym <= 1e-12
        && hasse_ok
        && sqrt_ok;
    Outcome::check(
        ok,
        format!(
            "group law {group_ok}/1000, |h(2P)-4h(P)| <= {worst_quad:.1e}, symmetry {sym:.1e}, bilinearity {bilinear:.1e}, Hasse {hasse_n} counts {}, sqrt round-trips {}",
            if hasse_ok { "ok" } else { "FAIL" },
            if sqrt_ok { "ok" } else { "FAIL" }
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

/// Red by necessity, each with the check that the failure is the documented one.
const EXPECTED_RED: &[(u32, fn() -> bool)] = &[(2, torsion_red_is_growth)];

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria: [Criterion; 8] = [
        (1, "symbolic identities", symbolic_identities, Duration::from_secs(120)),
        (2, "torsion suite", torsion_suite, Duration::from_secs(300)),
        (3, "anchor values", anchors, Duration::from_secs(60)),
        (4, "rank-2 independence", independence, Duration::from_secs(60)),
        (5, "rank-3 construction", rank3_suite, Duration::from_secs(300)),
        (6, "auxiliary curves", auxiliary_curves, Duration::from_secs(60)),
        (7, "sieve", sieve_suite, Duration::from_secs(300)),
        (8, "property suites", property_suites, Duration::from_secs(120)),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run, budget) in criteria {
        let t = Instant::now();
        let mut out = run();
        let elapsed = t.elapsed();
        if elapsed > budget {
            out.passed = false;
            out.detail = format!("{} (over the {budget:?} budget)", out.detail);
        }
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {n} {status} {name} [{elapsed:.1?}]: {}", out.detail);
        if !out.passed {
            match EXPECTED_RED.iter().find(|r| r.0 == n) {
                Some((_, documented)) if documented() => {
                    println!("criterion {n}: failure is the documented one (torsion grows on special fibres)");
                }
                _ => unexpected.push(n),
            }
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
