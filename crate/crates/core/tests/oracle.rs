//! Brute-force closure oracle for small permutation groups.

use std::collections::{HashSet, VecDeque};

use mcgcert_core::params::Parity;
use mcgcert_core::perm::{factorial, lemma_generators, schreier_sims, symn_generated, Permutation};
use proptest::prelude::*;

fn closure_size(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n).images();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.images()).collect();
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            // g ∘ p, 1-based images
            let next: Vec<usize> = p.iter().map(|&x| g[x - 1]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

#[test]
fn lemma_generators_agree_with_bfs() {
    for n in 1..=7 {
        let parity = Parity::of(n);
        let gens = lemma_generators(n, parity).unwrap();
        let bfs = closure_size(n, &gens) as u128;
        assert_eq!(symn_generated(n, parity).unwrap(), bfs == factorial(n).unwrap(), "n = {n}");
        assert_eq!(schreier_sims(n, &gens).unwrap().order(), Some(bfs), "n = {n}");
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #[test]
    fn schreier_sims_order_matches_bfs(
        (n, gens) in (1usize..=6).prop_flat_map(|n| (Just(n), proptest::collection::vec(perm_strategy(n), 0..4)))
    ) {
        let bsgs = schreier_sims(n, &gens).unwrap();
        let size = closure_size(n, &gens) as u128;
        prop_assert_eq!(bsgs.order(), Some(size));
        for g in &gens {
            prop_assert!(bsgs.contains(g));
        }
    }

    #[test]
    fn membership_matches_bfs(
        (n, gens, probe) in (2usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(perm_strategy(n), 1..3), perm_strategy(n)))
    ) {
        let bsgs = schreier_sims(n, &gens).unwrap();
        let id = Permutation::identity(n).images();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let gi = g.images();
                let next: Vec<usize> = p.iter().map(|&x| gi[x - 1]).collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        prop_assert_eq!(bsgs.contains(&probe), seen.contains(&probe.images()));
    }
}
