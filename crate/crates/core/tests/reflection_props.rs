use proptest::prelude::*;

use quiver_core::checks::{cm_point, rng};
use quiver_core::invariants::points_equal;
use quiver_core::io::{point_from_json, point_to_json};
use quiver_core::lattice::{dual_reflection, simple_reflection};
use quiver_core::reflection::{check_lemma_h, reflect_vertex};
use quiver_core::{Point, Vertex};

fn point(m: usize, n: i64, seed: u64) -> Point {
    cm_point(&mut rng(seed), m, n, seed).unwrap()
}

fn case() -> impl Strategy<Value = (usize, i64, u64, usize)> {
    (2usize..=3).prop_flat_map(|m| (Just(m), 1i64..=2, 0u64..10_000, 0..m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reflection_lands_in_reflected_setting((m, n, seed, i) in case()) {
        let p = point(m, n, seed);
        let q = reflect_vertex(i, &p).unwrap();
        prop_assert_eq!(&q.setting.beta, &simple_reflection(Vertex::Cyc(i), &p.setting.beta).unwrap());
        prop_assert_eq!(&q.setting.tau, &dual_reflection(Vertex::Cyc(i), &p.setting.tau).unwrap());
        prop_assert!(q.moment_residual() < 1e-9, "residual {}", q.moment_residual());
    }

    #[test]
    fn reflecting_twice_returns_the_orbit((m, n, seed, i) in case()) {
        let p = point(m, n, seed);
        let back = reflect_vertex(i, &reflect_vertex(i, &p).unwrap()).unwrap();
        prop_assert_eq!(&back.setting.beta, &p.setting.beta);
        prop_assert!(points_equal(&back, &p, 1e-8).unwrap());
    }

    #[test]
    fn h_invariants_follow_the_valley_rule((m, n, seed, l) in case()) {
        let p = point(m, n, seed);
        let rep = check_lemma_h(l, &p, None).unwrap();
        prop_assert!(rep.max_deviation < 1e-8, "deviation {}", rep.max_deviation);
    }

    #[test]
    fn point_file_round_trip((m, n, seed, _) in case()) {
        let p = point(m, n, seed);
        let back: Point = point_from_json(&point_to_json(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn single_precision_solve_and_reflect() {
    use num_complex::Complex;
    use quiver_core::solver::solve_point;
    use quiver_core::SettingF32;

    let lam = vec![Complex::new(0.8f32, 0.3), Complex::new(-0.4, 0.9)];
    let setting = SettingF32::new(lam, &[2, 2]).unwrap();
    let p = solve_point(&setting, 5).unwrap();
    assert!(p.moment_residual() < 1e-3, "residual {}", p.moment_residual());
    let q = reflect_vertex(1, &p).unwrap();
    assert!(q.moment_residual() < 1e-2, "residual {}", q.moment_residual());
}
