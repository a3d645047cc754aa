use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trop_core::elliptic::{extract_cycle, random_cycle_point, reference_cubic, CycleModel};
use trop_core::exact::{int, rat, Rational};
use trop_core::intersect::{
    candidate_directions, full_support, mixed_area, random_polynomial, stable_intersection, stable_intersection_along,
    transversal_intersections, verify_bernstein_random, verify_bezout, IntersectionMultiset, SupportMode, VerifyReport,
};
use trop_core::{build_curve, TropError, TropicalCurve, TropicalPolynomial};

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(
    results: &mut Vec<bool>,
    id: usize,
    name: &str,
    limit: Option<Duration>,
    f: impl FnOnce() -> Outcome,
) {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took < l);
    let passed = out.passed && in_time;
    let budget = limit.map(|l| format!(" limit {:.0}s", l.as_secs_f64())).unwrap_or_default();
    println!(
        "criterion {id:>2} {}: {name} ({}; {:.2}s{budget})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    results.push(passed);
}

fn curve(text: &str) -> TropicalCurve {
    build_curve(&TropicalPolynomial::parse(text).unwrap()).unwrap()
}

/// Curves rebuilt from the recorded polynomials of a verification report.
fn report_curves(r: &VerifyReport) -> Vec<TropicalCurve> {
    r.trials
        .iter()
        .flat_map(|t| [&t.f, &t.g])
        .map(|s| curve(s))
        .collect()
}

fn quadrics() -> Outcome {
    let (c, d) = (curve("x^2+y"), curve("x+y^2"));
    let stable = stable_intersection(&c, &d);
    let transversal = transversal_intersections(&c, &d);
    let expect = |m: &IntersectionMultiset| {
        m.total == 3 && m.entries.len() == 1 && m.entries[0].point == trop_core::exact::Point2::origin()
            && m.entries[0].multiplicity == 3
    };
    let ok = expect(&stable) && transversal.as_ref().is_ok_and(expect);
    Outcome { passed: ok, detail: format!("stable total {}", stable.total) }
}

fn parallel_lines() -> Outcome {
    let (f, g) = (TropicalPolynomial::parse("0+x").unwrap(), TropicalPolynomial::parse("1+x").unwrap());
    let (c, d) = (build_curve(&f).unwrap(), build_curve(&g).unwrap());
    let meet = stable_intersection(&c, &d);
    let area = mixed_area(&f.newton_polygon(), &g.newton_polygon());
    Outcome { passed: meet.is_empty() && meet.total == 0 && area.is_zero(), detail: format!("mixed area {area}") }
}

fn bezout(mode: SupportMode, all: &mut Vec<TropicalCurve>) -> Outcome {
    let mut trials = 0;
    let mut failures = 0;
    for c in 1..=3 {
        for d in 1..=3 {
            let r = verify_bezout(c, d, 50, SEED + (c * 10 + d) as u64, mode);
            trials += r.trials.len();
            failures += r.failures();
            all.extend(report_curves(&r));
        }
    }
    Outcome { passed: failures == 0 && trials == 450, detail: format!("{trials} trials, {failures} failures") }
}

fn bernstein(all: &mut Vec<TropicalCurve>) -> Outcome {
    let r = verify_bernstein_random(50, SEED);
    all.extend(report_curves(&r));
    Outcome {
        passed: r.passed() && r.trials.len() == 50,
        detail: format!("{} trials, {} failures", r.trials.len(), r.failures()),
    }
}

fn balancing(all: &[TropicalCurve]) -> Outcome {
    let balanced = all.iter().filter(|c| c.check_balancing()).count();
    let mut tampered = reference_curve();
    tampered.bounded_edges[0].weight += 1;
    let control_fails = !tampered.check_balancing();
    Outcome {
        passed: balanced == all.len() && control_fails,
        detail: format!("{balanced}/{} balanced, tampered control rejected {control_fails}", all.len()),
    }
}

fn perturbation_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    let mut agree = true;
    while pairs < 10 {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let c = build_curve(&random_polynomial(&mut rng, &full_support(a))).unwrap();
        let d = build_curve(&random_polynomial(&mut rng, &full_support(b))).unwrap();
        let reference = stable_intersection(&c, &d);
        let mut used = 0;
        let directions = candidate_directions()
            .chain((0..200).map(|_| trop_core::exact::IntVec2::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50))));
        for w in directions {
            if used == 10 {
                break;
            }
            if let Ok((m, _)) = stable_intersection_along(&c, &d, w) {
                agree &= m == reference;
                used += 1;
            }
        }
        agree &= used == 10;
        pairs += 1;
    }
    Outcome { passed: agree, detail: format!("{pairs} pairs x 10 directions") }
}

fn reference_curve() -> TropicalCurve {
    build_curve(&reference_cubic()).unwrap()
}

fn reference_model() -> CycleModel {
    extract_cycle(&reference_curve()).unwrap()
}

fn classification() -> Outcome {
    let c = reference_curve();
    let cubic_ok = c.is_smooth() && c.genus().ok() == Some(1) && extract_cycle(&c).is_ok();
    let conic = curve("0 + (-1)*x + (-1)*y + (-4)*x^2 + (-3)*x*y + (-4)*y^2");
    let conic_smooth = conic.is_smooth() && conic.genus().ok() == Some(0);
    let rejected = matches!(extract_cycle(&conic), Err(TropError::NotElliptic(_)));
    Outcome {
        passed: cubic_ok && conic_smooth && rejected,
        detail: format!("cubic genus 1 {cubic_ok}, smooth conic rejected {}", conic_smooth && rejected),
    }
}

fn group_axioms() -> Outcome {
    let m = reference_model();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pts: Vec<_> = (0..100).map(|_| random_cycle_point(&m, &mut rng)).collect();
    let mut bad = 0;
    for i in 0..pts.len() {
        let (p, q, r) = (&pts[i], &pts[(i + 1) % 100], &pts[(i + 37) % 100]);
        let ok = m.group_add(&m.group_add(p, q), r) == m.group_add(p, &m.group_add(q, r))
            && m.group_add(p, q) == m.group_add(q, p)
            && m.group_add(p, &m.origin) == *p
            && m.group_add(p, &m.group_neg(p)) == m.origin;
        let l = m.lambda(p) + m.lambda(q);
        let lambda_ok = m.lambda(&m.group_add(p, q)) == l.clone() - l.floor();
        bad += usize::from(!(ok && lambda_ok));
    }
    Outcome { passed: bad == 0, detail: format!("100 points, {bad} failures") }
}

fn geometric_agreement() -> Outcome {
    let m = reference_model();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut agree, mut fallback, mut total) = (0, 0, 0);
    for _ in 0..24 {
        let (p, q) = (random_cycle_point(&m, &mut rng), random_cycle_point(&m, &mut rng));
        total += 1;
        if let Ok(g) = m.geometric_add_traced(&p, &q) {
            if g.sum == m.group_add(&p, &q) {
                agree += 1;
                fallback += usize::from(g.used_fallback());
            }
        }
    }
    Outcome {
        passed: agree == total && total >= 20 && fallback >= 1,
        detail: format!("{agree}/{total} agree, {fallback} used the fallback"),
    }
}

fn linear_equivalence() -> Outcome {
    let m = reference_model();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..50 {
        let (p, q) = (random_cycle_point(&m, &mut rng), random_cycle_point(&m, &mut rng));
        let delta = rat(rng.gen_range(-600..=600), rng.gen_range(1..=60));
        let (p2, q2) = (m.shift(&p, &delta), m.shift(&q, &-delta.clone()));
        yes += usize::from(m.linear_equiv_pairs(&p, &q, &p2, &q2));
        // an extra displacement strictly between 0 and L breaks the relation
        let extra = &m.total_length * rat(rng.gen_range(1..=99), 100);
        let q3 = m.shift(&q, &(extra - delta));
        no += usize::from(!m.linear_equiv_pairs(&p, &q, &p2, &q3));
    }
    Outcome { passed: yes == 50 && no == 50, detail: format!("{yes}/50 equivalent, {no}/50 rejected") }
}

fn distance_additivity() -> Outcome {
    let m = reference_model();
    let l = m.total_length.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..100 {
        let (p, q, r) = (
            random_cycle_point(&m, &mut rng),
            random_cycle_point(&m, &mut rng),
            random_cycle_point(&m, &mut rng),
        );
        let s: Rational = m.lattice_distance(&p, &q) + m.lattice_distance(&q, &r) - m.lattice_distance(&p, &r);
        bad += usize::from(!(s / &l).is_integer());
    }
    let walked: Rational = (0..m.len()).map(|i| m.lattice_distance(&m.vertex(i), &m.vertex(i + 1))).sum();
    let loop_ok = walked == l && l == int(6);
    Outcome { passed: bad == 0 && loop_ok, detail: format!("100 triples, {bad} failures, loop {walked}") }
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let mut curves = Vec::new();
    let sec = Duration::from_secs;
    check(&mut results, 1, "quadrics meet once with multiplicity 3", Some(sec(1)), quadrics);
    check(&mut results, 2, "parallel lines are disjoint, mixed area 0", Some(sec(1)), parallel_lines);
    curves.extend([curve("x^2+y"), curve("x+y^2"), curve("0+x"), curve("1+x")]);
    check(&mut results, 3, "Bezout on full supports", Some(sec(60)), || bezout(SupportMode::BothFull, &mut curves));
    check(&mut results, 4, "Bezout with one corner-cut support", Some(sec(60)), || {
        bezout(SupportMode::OneFull, &mut curves)
    });
    check(&mut results, 5, "transversal count equals mixed area", Some(sec(60)), || bernstein(&mut curves));
    check(&mut results, 6, "balancing", None, || balancing(&curves));
    check(&mut results, 7, "perturbation independence", None, perturbation_independence);
    check(&mut results, 8, "elliptic classification", Some(sec(1)), classification);
    check(&mut results, 9, "group axioms", Some(sec(10)), group_axioms);
    check(&mut results, 10, "geometric addition equals arithmetic", Some(sec(30)), geometric_agreement);
    check(&mut results, 11, "linear equivalence of pairs", None, linear_equivalence);
    check(&mut results, 12, "lattice distance additivity", None, distance_additivity);
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
