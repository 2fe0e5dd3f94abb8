use proptest::prelude::*;

use groupbell::bounds::{build_bell_operator, classical_bound, expectation, quantum_maximum, run_route, QuantumMethod};
use groupbell::builtin;
use groupbell::games::{classical_game_value, game_from_scenario, question_total_probability, QuestionPolicy};
use groupbell::groups::{FiniteGroup, GroupElement};
use groupbell::linalg::{c, hermitian_eigendecompose, ComplexMatrix, StateVector};
use groupbell::reptheory::Representation;
use groupbell::scenario::{build_scenario, classify_local_events, event_probability, BellScenario, OrbitSeed};

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..13).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
        (2usize..9).prop_map(|n| FiniteGroup::dihedral(n).unwrap()),
    ]
}

/// A builtin representation with its usual initial state.
fn setup_strategy() -> impl Strategy<Value = (Representation, StateVector)> {
    prop::sample::select(vec!["z4-qubit", "z6-qutrit", "d3-qubit", "z6-qubit", "d6-qutrit"]).prop_map(|name| {
        (
            builtin::by_name(name).unwrap(),
            builtin::default_initial_state(name).unwrap(),
        )
    })
}

fn scenario_strategy() -> impl Strategy<Value = BellScenario> {
    (setup_strategy(), 1usize..3, 1usize..4, any::<u64>()).prop_map(|((rep, init), parties, orbits, salt)| {
        let order = rep.group().order() as u64;
        let mut x = salt;
        let seeds: Vec<OrbitSeed> = (0..orbits)
            .map(|_| {
                OrbitSeed(
                    (0..parties)
                        .map(|_| {
                            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            GroupElement(((x >> 33) % order) as usize)
                        })
                        .collect(),
                )
            })
            .collect();
        let local = classify_local_events(&rep, &init).unwrap();
        build_scenario(&local, parties, &seeds).unwrap()
    })
}

fn hermitian_strategy() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..7).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |raw| {
            let mut m = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let (re, im) = raw[i * n + j];
                    m[(i, j)] = c(re, im);
                }
            }
            &m + &m.adjoint()
        })
    })
}

fn random_state(dim: usize, parts: &[(f64, f64)]) -> StateVector {
    StateVector::new((0..dim).map(|i| {
        let (re, im) = parts[i % parts.len()];
        c(re + i as f64 * 0.01, im)
    }).collect())
    .normalized()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(group in group_strategy()) {
        let e = group.identity();
        for g in group.elements() {
            prop_assert_eq!(group.mul(e, g), g);
            prop_assert_eq!(group.mul(g, group.inverse(g)), e);
            for h in group.elements() {
                for k in group.elements() {
                    prop_assert_eq!(group.mul(group.mul(g, h), k), group.mul(g, group.mul(h, k)));
                }
            }
        }
    }

    #[test]
    fn element_names_round_trip(group in group_strategy()) {
        for g in group.elements() {
            prop_assert_eq!(group.parse_element(group.name(g)).unwrap(), g);
        }
    }

    #[test]
    fn eigendecomposition_reconstructs(m in hermitian_strategy()) {
        let pairs = hermitian_eigendecompose(&m).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(m.rows(), m.cols());
        for p in &pairs {
            rebuilt = &rebuilt + &p.vector.projector().scale_real(p.value);
            prop_assert!((p.vector.norm() - 1.0).abs() < 1e-10);
        }
        prop_assert!(rebuilt.max_abs_diff(&m) < 1e-9);
        prop_assert!(pairs.windows(2).all(|w| w[0].value >= w[1].value));
    }

    #[test]
    fn gram_matches_dense(s in scenario_strategy()) {
        let dense = run_route(&s, QuantumMethod::Dense).unwrap();
        let gram = run_route(&s, QuantumMethod::Gram).unwrap();
        prop_assert!((dense.value - gram.value).abs() < 1e-9);
        let p = dense.top_projector().unwrap();
        let q = gram.top_projector().unwrap();
        prop_assert!(p.max_abs_diff(&q) < 1e-8);
    }

    #[test]
    fn bell_operator_is_invariant_and_psd(s in scenario_strategy()) {
        let a = build_bell_operator(&s);
        for g in s.joint_rep().matrices() {
            prop_assert!((g * &a).max_abs_diff(&(&a * g)) < 1e-9);
        }
        let min = hermitian_eigendecompose(&a).unwrap().last().unwrap().value;
        prop_assert!(min > -1e-9);
        // trace A = |G|·N_o for normalized seeds
        let expected = (s.group_order() * s.provenance().len()) as f64;
        prop_assert!((a.trace().re - expected).abs() < 1e-9);
    }

    #[test]
    fn symmetry_route_agrees(s in scenario_strategy()) {
        let q = quantum_maximum(&s, QuantumMethod::All).unwrap();
        prop_assert!(q.method_agreement < 1e-9);
        prop_assert!(q.projector_agreement < 1e-8);
    }

    #[test]
    fn expectation_is_weighted_probability_sum(
        s in scenario_strategy(),
        parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..8),
    ) {
        let state = random_state(s.joint_dim(), &parts);
        let a = build_bell_operator(&s);
        let sum: f64 = s.coefficients().iter()
            .map(|(e, &k)| f64::from(k) * event_probability(&s, e, &state))
            .sum();
        prop_assert!((expectation(&a, &state) - sum).abs() < 1e-9);
    }

    #[test]
    fn classical_witness_replays(s in scenario_strategy()) {
        let bound = classical_bound(&s).unwrap();
        prop_assert_eq!(bound.witness.score(&s), bound.value);
        let total: u64 = s.coefficients().values().map(|&k| u64::from(k)).sum();
        prop_assert!(bound.value <= total);
    }

    #[test]
    fn translated_seeds_give_the_same_scenario(s in scenario_strategy(), pick in any::<prop::sample::Index>()) {
        let group = s.local().rep().group();
        let h = GroupElement(pick.index(group.order()));
        let moved: Vec<OrbitSeed> = s.seeds().iter()
            .map(|seed| OrbitSeed(seed.0.iter().map(|&g| group.mul(h, g)).collect()))
            .collect();
        let t = build_scenario(s.local(), s.parties(), &moved).unwrap();
        prop_assert_eq!(t.coefficients(), s.coefficients());
    }

    #[test]
    fn game_identities(
        s in scenario_strategy(),
        parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..8),
    ) {
        prop_assume!(s.is_multiplicity_free());
        let sc = classical_bound(&s).unwrap().value;
        let state = random_state(s.joint_dim(), &parts);
        for policy in [QuestionPolicy::Restricted, QuestionPolicy::Full] {
            let game = game_from_scenario(&s, policy).unwrap();
            let value = classical_game_value(&game).unwrap();
            prop_assert_eq!(value.value.num, sc);
            prop_assert_eq!(value.value.den, game.question_count() as u64);
            prop_assert_eq!(game.strategy_wins(&value.witness), sc);
            for q in 0..game.question_count() {
                let total = question_total_probability(&game, &s, q, &state);
                prop_assert!((total - 1.0).abs() < 1e-9);
            }
        }
    }
}
