//! Orbit invariants of the line field: sigma, the genus-1 gcd invariant and
//! the Arf invariant, on three shipped algebras.

use gentle_core::dsl;
use gentle_core::linefield::SurfaceAnalysis;
use gentle_core::quadforms::DEFAULT_MAX_GAUSS_DIM;

fn main() {
    for text in [
        include_str!("../data/ex2.gentle"),
        include_str!("../data/genus2_arf0.gentle"),
        include_str!("../data/genus2_arf1.gentle"),
    ] {
        let (doc, alg) = dsl::load(text).expect("shipped file parses");
        let a = SurfaceAnalysis::new(&alg).expect("smooth");
        println!("{}: genus {}, H1 rank {}", doc.name.value, a.genus(), a.basis.rank());
        println!("  generator windings {:?}", a.generator_windings);
        println!("  boundary windings {:?}, sigma {}", a.boundary_windings(), a.sigma());
        if a.genus() == 1 {
            println!("  gcd invariant {}", a.gcd_invariant().unwrap());
        }
        match a.arf_applicability() {
            Ok(()) => println!(
                "  Arf {} (symplectic basis), {} (Gauss sum)",
                a.arf_invariant().unwrap(),
                a.arf_by_gauss(DEFAULT_MAX_GAUSS_DIM).unwrap()
            ),
            Err(why) => println!("  Arf not defined: {why:?}"),
        }
    }
}
