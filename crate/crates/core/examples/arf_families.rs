//! Gauss sums and Arf invariants of the explicit quadratic spaces over GF(2).

use gentle_core::quadforms::{self, Family, DEFAULT_MAX_GAUSS_DIM};

fn main() {
    let kinds = (2..=16)
        .step_by(2)
        .map(Family::V)
        .chain([5, 9, 13, 17].map(Family::VBar))
        .chain((1..=8).filter(|k| k % 3 != 2).map(Family::W))
        .chain((4..=16).step_by(2).filter(|n| n % 3 != 2).map(Family::Banded));
    println!("{:<12} {:>4} {:>10} {:>4}", "space", "dim", "gauss", "arf");
    for kind in kinds {
        let s = quadforms::family(kind).expect("valid parameter");
        let g = quadforms::gauss_sum(&s, DEFAULT_MAX_GAUSS_DIM).unwrap();
        let arf = quadforms::arf_symplectic(&s).unwrap();
        assert_eq!(arf, quadforms::arf_gauss(&s, DEFAULT_MAX_GAUSS_DIM).unwrap());
        println!("{:<12} {:>4} {:>10} {:>4}", format!("{kind:?}"), s.dim(), g, arf);
    }
}
