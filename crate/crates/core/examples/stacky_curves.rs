//! Chain and ring gluings of annuli: commutator cycles, genus, boundary
//! data, and the equivalences between stacky curves.

use gentle_core::stacky::{self, StackyKind, StackySpec};

fn show(kind: StackyKind, text: &str) -> StackySpec {
    let spec = StackySpec::parse(kind, text).unwrap();
    let inv = stacky::glued_invariants(&spec).unwrap();
    println!(
        "{spec}: genus {}, boundary {:?}, gcd {:?}, arf {:?}",
        inv.genus, inv.boundary, inv.gcd_invariant, inv.arf
    );
    spec
}

fn main() {
    for (r, k) in [(12, 1), (12, 5), (7, -1), (9, 2)] {
        println!("commutator at r = {r}, k = {k}: (cycles, length) = {:?}", stacky::commutator_cycles(r, k).unwrap());
    }
    let pairs = [
        ((StackyKind::Ring, "7;1"), (StackyKind::Ring, "7;2")),
        ((StackyKind::Ring, "5,5;1,1"), (StackyKind::Ring, "10;1")),
        ((StackyKind::Ring, "7,7;1,1"), (StackyKind::Ring, "14;1")),
        ((StackyKind::Chain, "2,3,4,1;-1,-1"), (StackyKind::Chain, "2,7,1;-1")),
    ];
    for ((ka, a), (kb, b)) in pairs {
        let (sa, sb) = (show(ka, a), show(kb, b));
        let rep = stacky::decide_stacky(&sa, &sb).unwrap();
        println!("  {sa} vs {sb}: {} {:?}\n", rep.verdict, rep.mismatch);
    }
}
