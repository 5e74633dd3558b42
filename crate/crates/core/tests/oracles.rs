mod common;

use common::*;

#[test]
fn mobius_round_trip_corpus() {
    mobius_round_trips(1000, 1).unwrap();
}

#[test]
fn real_weil_round_trip_corpus() {
    weil_round_trips(500, 2).unwrap();
}

#[test]
fn enumerator_covers_all_genus_two_binary_curves() {
    enumerator_completeness_2_2().unwrap();
}

#[test]
fn carlitz_residual_degrees_binary() {
    carlitz_oracle(2, 4, 6).unwrap();
}

#[test]
fn carlitz_residual_degrees_ternary() {
    carlitz_oracle(3, 4, 6).unwrap();
}

#[test]
fn pruning_keeps_every_candidate() {
    use dstab::enumerator::{enumerate, Constraints};
    for g in 1..=4 {
        let pruned = enumerate(2, g, &Constraints::default(), 1).unwrap();
        let full = Constraints {
            no_prune: true,
            ..Default::default()
        };
        let unpruned = enumerate(2, g, &full, 1).unwrap();
        let a = |e: &dstab::enumerator::Enumeration| e.candidates.iter().map(|c| c.a.clone()).collect::<Vec<_>>();
        assert_eq!(a(&pruned), a(&unpruned), "g={g}");
        assert!(pruned.nodes <= unpruned.nodes);
    }
}
