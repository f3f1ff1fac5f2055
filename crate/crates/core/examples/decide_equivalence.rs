//! The sufficient criterion for derived equivalence, from full invariants
//! and from AAG pairs alone.

use gentle_core::decider::{self, AagCase};
use gentle_core::dsl;
use gentle_core::threads::AagInvariant;

fn main() {
    let load = |t: &str| dsl::load(t).expect("shipped file").1;
    let ex1 = load(include_str!("../data/ex1.gentle"));
    let shifted = load(include_str!("../data/ex1_shifted.gentle"));
    let arf0 = load(include_str!("../data/genus2_arf0.gentle"));
    let arf1 = load(include_str!("../data/genus2_arf1.gentle"));

    for (name, a, b) in [("ex1 vs ex1", &ex1, &ex1), ("ex1 vs shifted", &ex1, &shifted), ("arf0 vs arf1", &arf0, &arf1)] {
        let rep = decider::compare_algebras(a, b).unwrap();
        println!("{name}: {} matched {:?} mismatch {:?}", rep.verdict, rep.matched, rep.mismatch);
    }

    let table: [&[(i64, i64)]; 4] = [&[(3, 1)], &[(1, 4), (1, 2)], &[(1, 4), (2, 5)], &[(2, 4), (2, 4)]];
    for pairs in table {
        let aag = AagInvariant::from_pairs(pairs.to_vec());
        let case: Option<AagCase> = decider::aag_case(&aag);
        println!("AAG {pairs:?}: sum {}, case {case:?}", aag.genus_sum());
    }
    println!("fd comparison of ex1 with itself: {}", decider::compare_fd_by_aag(&ex1, &ex1).unwrap().verdict);
}
