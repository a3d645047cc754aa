use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trop_core::elliptic::{extract_cycle, random_cycle_point, reference_cubic, tropical_line, CycleModel, CyclePoint};
use trop_core::exact::{int, rat, Point2, Rational};
use trop_core::intersect::stable_intersection;
use trop_core::build_curve;

fn model() -> CycleModel {
    extract_cycle(&build_curve(&reference_cubic()).unwrap()).unwrap()
}

/// Arc positions of a line's stable intersection points, or `None` unless all
/// three lie inside cycle edges with multiplicity one.
fn transversal_cycle_arcs(m: &CycleModel, center: &Point2) -> Option<Vec<Rational>> {
    let meet = stable_intersection(&tropical_line(center), &m.curve);
    if meet.entries.len() != 3 || meet.entries.iter().any(|e| e.multiplicity != 1) {
        return None;
    }
    meet.entries
        .iter()
        .map(|e| m.locate(&e.point).filter(|p| !p.t.is_zero()).map(|p| m.arc(&p)))
        .collect()
}

/// Representative of `x mod L` in `(-L/2, L/2]`.
fn centered(m: &CycleModel, x: Rational) -> Rational {
    let l = &m.total_length;
    let r = x.clone() - (x / l).floor() * l;
    if r > l / int(2) {
        r - l
    } else {
        r
    }
}

#[test]
fn displacement_law() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let delta = rat(1, 1000);
    let mut checked = 0;
    for _ in 0..200 {
        let c = Point2::new(
            int(3) + rat(rng.gen_range(-49..=49), 100),
            int(3) + rat(rng.gen_range(-49..=49), 100),
        );
        let moved = c.offset(trop_core::elliptic::LINE_RAYS[0], &delta);
        let (Some(before), Some(after)) = (transversal_cycle_arcs(&m, &c), transversal_cycle_arcs(&m, &moved))
        else {
            continue;
        };
        let mut shifts: Vec<Rational> = before
            .iter()
            .map(|a| {
                after
                    .iter()
                    .map(|b| centered(&m, b - a))
                    .min_by_key(|d| if d < &Rational::zero() { -d.clone() } else { d.clone() })
                    .unwrap()
            })
            .collect();
        shifts.sort();
        assert_eq!(shifts, vec![-delta.clone(), Rational::zero(), delta.clone()], "center {c}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} transversal configurations");
}

#[test]
fn third_point_sum_rule() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sums: BTreeSet<Rational> = BTreeSet::new();
    let mut with_tentacles = 0;
    for _ in 0..150 {
        let c = Point2::new(rat(rng.gen_range(0..=120), 20), rat(rng.gen_range(0..=120), 20));
        let meet = stable_intersection(&tropical_line(&c), &m.curve);
        assert_eq!(meet.total, 3);
        let mut sum = Rational::zero();
        let mut on_cycle = true;
        for e in &meet.entries {
            on_cycle &= m.locate(&e.point).is_some();
            sum += m.arc(&m.retract(&e.point).unwrap()) * int(e.multiplicity);
        }
        if !on_cycle {
            with_tentacles += 1;
        }
        sums.insert(centered(&m, sum));
    }
    assert_eq!(sums.len(), 1, "sums {sums:?}");
    assert!(with_tentacles > 0);
    // by hand, the line centered at (10/3, 22/7) meets the cycle at arcs
    // 4 + 6/7 on V5V6, 1 + 1/3 on V2V3 and 2 + 17/21 on V3V4, summing to 9 = 3 mod 6
    let hand = rat(34, 7) + rat(4, 3) + rat(59, 21);
    assert_eq!(hand, int(9));
    let arcs = transversal_cycle_arcs(&m, &Point2::new(rat(10, 3), rat(22, 7))).unwrap();
    let mut expect = vec![rat(34, 7), rat(4, 3), rat(59, 21)];
    expect.sort();
    let mut arcs_sorted = arcs.clone();
    arcs_sorted.sort();
    assert_eq!(arcs_sorted, expect);
    assert_eq!(sums.into_iter().next().unwrap(), centered(&m, hand));
}

#[test]
fn distance_is_base_point_independent() {
    let m = model();
    let others = [m.point_at_arc(rat(7, 3)), m.vertex(4), m.point_at_arc(rat(11, 2))];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for o in &others {
        let m2 = m.set_origin(&m.embed(o)).unwrap();
        for _ in 0..20 {
            let (p, q) = (random_cycle_point(&m, &mut rng), random_cycle_point(&m, &mut rng));
            let (p2, q2) = (m2.reindex(&m, &p).unwrap(), m2.reindex(&m, &q).unwrap());
            assert_eq!(m.lattice_distance(&p, &q), m2.lattice_distance(&p2, &q2));
        }
    }
}

#[test]
fn full_loop_is_total_length() {
    let m = model();
    let walked: Rational = (0..m.len()).map(|i| m.lattice_distance(&m.vertex(i), &m.vertex(i + 1))).sum();
    assert_eq!(walked, m.total_length);
    let p = m.point_at_arc(rat(13, 7));
    let steps: Vec<CyclePoint> = (0..7).map(|k| m.shift(&p, &(&m.total_length * rat(k, 7)))).collect();
    let around: Rational = (0..7).map(|k| m.lattice_distance(&steps[k], &steps[(k + 1) % 7])).sum();
    assert_eq!(around, m.total_length);
}

#[test]
fn adding_a_fixed_point_is_injective() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let q = random_cycle_point(&m, &mut rng);
    let ps: BTreeSet<CyclePoint> = (0..100).map(|_| random_cycle_point(&m, &mut rng)).collect();
    let sums: BTreeSet<CyclePoint> = ps.iter().map(|p| m.group_add(p, &q)).collect();
    assert_eq!(sums.len(), ps.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_axioms(seed in any::<u64>(), origin in 0i64..36) {
        let base = model();
        let m = base.set_origin(&base.embed(&base.point_at_arc(rat(origin, 6)))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q, r) = (
            random_cycle_point(&m, &mut rng),
            random_cycle_point(&m, &mut rng),
            random_cycle_point(&m, &mut rng),
        );
        prop_assert_eq!(m.group_add(&m.group_add(&p, &q), &r), m.group_add(&p, &m.group_add(&q, &r)));
        prop_assert_eq!(m.group_add(&p, &q), m.group_add(&q, &p));
        prop_assert_eq!(m.group_add(&p, &m.origin), p.clone());
        prop_assert_eq!(m.group_add(&p, &m.group_neg(&p)), m.origin.clone());
        let l = m.lambda(&p) + m.lambda(&q);
        let expect = l.clone() - l.floor();
        prop_assert_eq!(m.lambda(&m.group_add(&p, &q)), expect);
        let (d1, d2, d3) = (m.lattice_distance(&p, &q), m.lattice_distance(&q, &r), m.lattice_distance(&p, &r));
        let s = d1 + d2 - d3;
        prop_assert!((s.clone() / &m.total_length).is_integer());
    }
}
