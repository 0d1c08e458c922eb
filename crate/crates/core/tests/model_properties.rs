mod common;

use common::{enumerate_optimum, is_permutation, permutations, random_instance};
use lsap_core::{make_tau, objective, switch_exchange, Assignment, Instance};
use proptest::prelude::*;

fn instance_and_sigma(max_n: usize) -> impl Strategy<Value = (Instance, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-100.0f64..100.0, n * n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(vals, sigma)| (Instance::new(n, vals).unwrap(), sigma))
    })
}

proptest! {
    #[test]
    fn switch_delta_matches_recomputation((inst, sigma) in instance_and_sigma(8), a in 0usize..8, b in 0usize..8) {
        let n = inst.n();
        let (i, j) = (a % n, b % n);
        let asg = Assignment::from_sigma(&inst, sigma).unwrap();
        prop_assume!(asg.tau()[i] != j);
        let before = objective(&inst, &asg).unwrap();
        let next = switch_exchange(i, j, &asg, &inst).unwrap();
        let after = objective(&inst, &next).unwrap();
        let own = asg.tau()[i];
        let other = asg.sigma()[j];
        let four_term = inst.benefit(i, j) + inst.benefit(other, own)
            - inst.benefit(i, own) - inst.benefit(other, j);
        prop_assert!((after - before - four_term).abs() < 1e-9);
        prop_assert!((next.value() - after).abs() < 1e-9);
    }

    #[test]
    fn switch_is_an_involution((inst, sigma) in instance_and_sigma(8), a in 0usize..8, b in 0usize..8) {
        let n = inst.n();
        let (i, j) = (a % n, b % n);
        let asg = Assignment::from_sigma(&inst, sigma).unwrap();
        prop_assume!(asg.tau()[i] != j);
        let once = switch_exchange(i, j, &asg, &inst).unwrap();
        // The displaced agent now holds i's old job; swapping i back onto it undoes the move.
        let twice = switch_exchange(i, asg.tau()[i], &once, &inst).unwrap();
        prop_assert_eq!(twice.sigma(), asg.sigma());
        prop_assert!((twice.value() - asg.value()).abs() < 1e-9);
    }

    #[test]
    fn tau_is_the_inverse(sigma in Just((0..64).collect::<Vec<usize>>()).prop_shuffle()) {
        let tau = make_tau(&sigma).unwrap();
        for (j, &i) in sigma.iter().enumerate() {
            prop_assert_eq!(tau[i], j);
        }
        prop_assert_eq!(make_tau(&tau).unwrap(), sigma);
    }

    #[test]
    fn objective_invariant_under_agent_relabeling(
        (inst, sigma) in instance_and_sigma(7),
        relabel in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let n = inst.n();
        // Restrict the relabeling to 0..n while keeping it a permutation.
        let perm: Vec<usize> = relabel.into_iter().filter(|&k| k < n).collect();
        let mut rows = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                rows[perm[i] * n + j] = inst.benefit(i, j);
            }
        }
        let relabeled = Instance::new(n, rows).unwrap();
        let moved: Vec<usize> = sigma.iter().map(|&i| perm[i]).collect();
        let a = objective(&inst, &Assignment::from_sigma(&inst, sigma).unwrap()).unwrap();
        let b = objective(&relabeled, &Assignment::from_sigma(&relabeled, moved).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn switch_closure_on_all_pairs() {
    for n in 1..=6 {
        let inst = random_instance(n, n as u64, 0.0, 10.0);
        for sigma in permutations(n) {
            let asg = Assignment::from_sigma(&inst, sigma).unwrap();
            for i in 0..n {
                for j in 0..n {
                    if asg.tau()[i] == j {
                        assert!(switch_exchange(i, j, &asg, &inst).is_err());
                        continue;
                    }
                    let next = switch_exchange(i, j, &asg, &inst).unwrap();
                    assert!(is_permutation(next.sigma()));
                    assert_eq!(make_tau(next.sigma()).unwrap(), next.tau());
                    assert_eq!(next.tau()[i], j);
                    assert_eq!(next.tau()[asg.sigma()[j]], asg.tau()[i]);
                    let exact = objective(&inst, &next).unwrap();
                    assert!((next.value() - exact).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn objective_of_best_permutation_is_the_enumerated_maximum() {
    let inst = random_instance(3, 77, -5.0, 5.0);
    let best = permutations(3)
        .into_iter()
        .map(|s| Assignment::from_sigma(&inst, s).unwrap())
        .max_by(|a, b| a.value().total_cmp(&b.value()))
        .unwrap();
    assert_eq!(objective(&inst, &best).unwrap(), enumerate_optimum(&inst));
}

#[test]
fn random_permutation_composition() {
    let sigma = lsap_core::dgs::random_permutation(64, 2024);
    let tau = make_tau(&sigma).unwrap();
    assert!((0..64).all(|j| tau[sigma[j]] == j));
}
