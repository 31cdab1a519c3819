use epsmean::instances::{random_eps, random_space, random_table};
use epsmean::lattice::{greedy_lattice, is_lattice};
use epsmean::mean::min_lattice_size;
use epsmean::oracle::oracle_lattices;
use epsmean::space::{ValidationReport, Violation};
use epsmean::{
    bounds_exact, combine, enumerate_lattices, restrict, sample_mean, validate_metric,
    ConflictGraph, Domain, FnSpec, MetricSpace, NamedMetric, PointId, DEFAULT_CAP,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random space, an ε and a value table, all from one seed.
fn instance(seed: u64, n: usize) -> (MetricSpace, f64, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = random_space(&mut rng, n);
    let eps = random_eps(&mut rng, &space);
    let table = random_table(&mut rng, n);
    (space, eps, table)
}

fn only_coincidences(r: &ValidationReport) -> bool {
    r.violations
        .iter()
        .all(|v| matches!(v, Violation::ZeroDistance { .. }))
}

fn cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=3).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-10.0f64..10.0, dim), 1..10)
    })
}

fn metric() -> impl Strategy<Value = NamedMetric> {
    prop_oneof![
        Just(NamedMetric::Euclidean),
        Just(NamedMetric::Manhattan),
        Just(NamedMetric::Chebyshev)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn named_metrics_satisfy_axioms(coords in cloud(), m in metric()) {
        let s = MetricSpace::from_coords(coords, m).unwrap();
        let report = validate_metric(&s, 1e-9);
        prop_assert!(only_coincidences(&report));
    }

    #[test]
    fn generated_spaces_are_metrics(seed in any::<u64>(), n in 1usize..12) {
        let (s, _, _) = instance(seed, n);
        let report = validate_metric(&s, 1e-9);
        prop_assert!(only_coincidences(&report));
    }

    #[test]
    fn restriction_preserves_distances(seed in any::<u64>(), n in 2usize..12, keep in prop::collection::vec(any::<bool>(), 12)) {
        let (s, _, _) = instance(seed, n);
        let members: Vec<PointId> = (0..n).filter(|&i| keep[i]).map(PointId).collect();
        prop_assume!(!members.is_empty());
        let sub = restrict(&s, members.iter().copied()).unwrap();
        prop_assert_eq!(sub.members(), &members[..]);
        for &a in &members {
            for &b in &members {
                prop_assert_eq!(sub.distance(a, b).unwrap(), s.distance(a, b).unwrap());
            }
        }
    }

    #[test]
    fn combination_is_linear(seed in any::<u64>(), n in 1usize..12, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let (s, _, t) = instance(seed, n);
        let u: Vec<f64> = t.iter().map(|x| x * x - 0.25).collect();
        let h = combine(a, FnSpec::table(t.clone()), b, FnSpec::table(u.clone())).tabulate(&s).unwrap();
        for i in 0..n {
            prop_assert_eq!(h[i], 0.0 + a * t[i] + b * u[i]);
        }
    }

    #[test]
    fn enumerated_sets_are_lattices(seed in any::<u64>(), n in 1usize..13) {
        let (s, eps, _) = instance(seed, n);
        let all = enumerate_lattices(&s, eps, DEFAULT_CAP).unwrap();
        let oracle = oracle_lattices(&s, eps).unwrap();
        prop_assert_eq!(all.len(), oracle.len());
        for l in &all {
            prop_assert!(is_lattice(&s, &l.members, eps).unwrap());
        }
    }

    #[test]
    fn greedy_orders_give_lattices(seed in any::<u64>(), n in 1usize..16) {
        let (s, eps, _) = instance(seed, n);
        let mut order: Vec<PointId> = s.members().to_vec();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let l = greedy_lattice(&s, eps, &order).unwrap();
        prop_assert!(is_lattice(&s, &l.members, eps).unwrap());
    }

    #[test]
    fn every_lattice_average_within_bounds(seed in any::<u64>(), n in 1usize..12) {
        let (s, eps, t) = instance(seed, n);
        let f = FnSpec::table(t);
        let b = bounds_exact(&s, &f, eps, DEFAULT_CAP).unwrap();
        for l in enumerate_lattices(&s, eps, DEFAULT_CAP).unwrap() {
            let m = sample_mean(&s, &f, &l.members).unwrap();
            prop_assert!(b.lower <= m && m <= b.upper);
        }
        prop_assert_eq!(sample_mean(&s, &f, &b.witness_low.members).unwrap(), b.lower);
        prop_assert_eq!(sample_mean(&s, &f, &b.witness_high.members).unwrap(), b.upper);
    }

    #[test]
    fn minimum_size_matches_enumeration(seed in any::<u64>(), n in 1usize..14) {
        let (s, eps, _) = instance(seed, n);
        let g = ConflictGraph::new(&s, eps).unwrap();
        let smallest = enumerate_lattices(&s, eps, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|l| l.len())
            .min()
            .unwrap();
        let (size, witness) = min_lattice_size(&g, 10_000_000).unwrap();
        prop_assert_eq!(size, smallest);
        prop_assert_eq!(witness.len(), size);
    }

    #[test]
    fn constants_have_equal_bounds(seed in any::<u64>(), n in 1usize..12, c in -5.0f64..5.0) {
        let (s, eps, _) = instance(seed, n);
        let b = bounds_exact(&s, &FnSpec::constant(c), eps, DEFAULT_CAP).unwrap();
        prop_assert!((b.lower - c).abs() <= 1e-12 && (b.upper - c).abs() <= 1e-12);
    }
}
