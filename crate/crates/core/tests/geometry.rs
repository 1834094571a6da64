mod common;

use std::collections::BTreeSet;

use kunz_core::geometry::{
    enumerate_integer_points, extreme_rays, find_integer_point, rational_feasible, Feasibility,
    IntegerSearch, LinearConstraint, LinearSystem,
};
use kunz_core::kunz::KunzCone;
use num_bigint::BigInt;
use proptest::prelude::*;

fn system_strategy(max_dim: usize) -> impl Strategy<Value = LinearSystem> {
    (1..=max_dim).prop_flat_map(|dim| {
        prop::collection::vec(
            (prop::collection::vec(-3i64..=3, dim), -5i64..=5, prop::bool::weighted(0.2)),
            1..7,
        )
        .prop_map(move |rows| {
            let mut sys = LinearSystem::new(dim);
            for (a, b, eq) in rows {
                sys.push(if eq {
                    LinearConstraint::eq(&a, b)
                } else {
                    LinearConstraint::ge(&a, b)
                });
            }
            sys
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn simplex_agrees_with_elimination(sys in system_strategy(4)) {
        let oracle = common::fm_feasible(&sys);
        match rational_feasible(&sys) {
            Feasibility::Feasible(w) => {
                prop_assert!(oracle);
                prop_assert!(sys.is_satisfied_by(w.entries()));
            }
            Feasibility::Infeasible => prop_assert!(!oracle),
        }
    }

    #[test]
    fn integer_search_agrees_with_box_scan(sys in system_strategy(3)) {
        // everything lives in [-4, 4]^d
        let d = sys.dim();
        let mut boxed = sys.clone();
        for k in 0..d {
            let mut unit = vec![0i64; d];
            unit[k] = 1;
            boxed.push(LinearConstraint::ge(&unit, -4));
            unit[k] = -1;
            boxed.push(LinearConstraint::ge(&unit, -4));
        }
        let mut brute = BTreeSet::new();
        let mut point = vec![-4i64; d];
        loop {
            let big: Vec<BigInt> = point.iter().map(|&v| v.into()).collect();
            if boxed.is_satisfied_by_integers(&big) {
                brute.insert(big);
            }
            let Some(k) = (0..d).find(|&k| point[k] < 4) else { break };
            point[k] += 1;
            for v in &mut point[..k] {
                *v = -4;
            }
        }
        match find_integer_point(&boxed, 100_000) {
            IntegerSearch::Point(p) => prop_assert!(brute.contains(&p)),
            IntegerSearch::Empty => prop_assert!(brute.is_empty()),
            IntegerSearch::BudgetExhausted => prop_assert!(false, "budget exhausted on a tiny box"),
        }
        let listed = enumerate_integer_points(&sys, &vec![-4; d], &vec![4; d], 1_000_000).unwrap();
        prop_assert_eq!(listed.into_iter().collect::<BTreeSet<_>>(), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn simplex_agrees_with_elimination_in_six_variables(sys in system_strategy(6)) {
        let oracle = common::fm_feasible(&sys);
        prop_assert_eq!(rational_feasible(&sys).is_feasible(), oracle);
    }

    /// Random pointed cones: the orthant cut by a few extra inequalities.
    #[test]
    fn double_description_matches_brute_force(
        dim in 2usize..=4,
        extra in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..=4),
    ) {
        let mut normals: Vec<Vec<i64>> = (0..dim)
            .map(|k| (0..dim).map(|j| (j == k) as i64).collect())
            .collect();
        normals.extend(extra.iter().map(|row| row[..dim].to_vec()).filter(|r| r.iter().any(|&v| v != 0)));
        let sys = LinearSystem::with_constraints(
            dim,
            normals.iter().map(|n| LinearConstraint::ge(n, 0)).collect(),
        );
        let rays: BTreeSet<Vec<i64>> = extreme_rays(&sys)
            .unwrap()
            .into_iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        prop_assert_eq!(rays, common::brute_force_rays(&normals, dim));
    }
}

#[test]
fn kunz_cone_rays_match_brute_force() {
    for m in 3..=9 {
        let cone = KunzCone::new(m).unwrap();
        let rays: BTreeSet<Vec<i64>> = extreme_rays(&cone.system())
            .unwrap()
            .into_iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        let oracle = common::brute_force_rays(&cone.normals(), cone.dim());
        assert_eq!(rays, oracle, "m = {m}");
    }
}

#[test]
fn kunz_cone_ray_counts() {
    let counts: Vec<usize> = (3..=9)
        .map(|m| extreme_rays(&KunzCone::new(m).unwrap().system()).unwrap().len())
        .collect();
    assert_eq!(&counts[4..], &[30, 47, 122]);
}

#[test]
fn rays_of_a_simplicial_cone() {
    // x >= 0, y >= 0, z >= 0
    let mut sys = LinearSystem::new(3);
    for k in 0..3 {
        let mut unit = vec![0i64; 3];
        unit[k] = 1;
        sys.push(LinearConstraint::ge(&unit, 0));
    }
    let rays: BTreeSet<Vec<BigInt>> = extreme_rays(&sys).unwrap().into_iter().collect();
    let expected: BTreeSet<Vec<BigInt>> = (0..3)
        .map(|k| (0..3).map(|j| BigInt::from((j == k) as i64)).collect())
        .collect();
    assert_eq!(rays, expected);
}
