//! Forbidden and permitted threads of the `bd = 0` example, its boundary
//! components and AAG pairs.

use gentle_core::dsl;
use gentle_core::threads::{self, ThreadKind, ThreadSystem};

const TEXT: &str = include_str!("../data/ex1.gentle");

fn main() {
    let (_, alg) = dsl::load(TEXT).expect("ex1 parses");
    let sys = ThreadSystem::new(&alg);
    println!("forbidden threads: {:?}", threads::thread_labels(&alg, &sys, ThreadKind::Forbidden));
    println!("permitted threads: {:?}", threads::thread_labels(&alg, &sys, ThreadKind::Permitted));
    println!("smooth: {}, proper: {}", sys.is_smooth(), sys.is_proper());

    for (i, c) in sys.boundary_components().iter().enumerate() {
        let f: Vec<_> = c.forbidden.iter().map(|&t| sys.forbidden_threads()[t].label(&alg)).collect();
        let p: Vec<_> = c.permitted.iter().map(|&t| sys.permitted_threads()[t].label(&alg)).collect();
        println!("component {i} ({:?}): forbidden {f:?}, permitted {p:?}, n = {}, w = {}", c.ty, c.stops, c.winding);
    }
    let aag = sys.aag_invariants();
    println!("AAG pairs (n, m): {:?}", aag.pairs());
    // sum (n - m + 2) = 4 - 4g
    println!("genus from AAG: {}", (4 - aag.genus_sum()) / 4);
}
