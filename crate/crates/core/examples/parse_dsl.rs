//! The `.gentle` format: parsing, positioned diagnostics and the canonical
//! round trip.

use gentle_core::dsl;

fn main() {
    let text = "algebra demo   # a tiny quiver\nvertices 1 2 3\narrow a:1->2\narrow b:2->3 deg -2\nrel b.a\n";
    let doc = dsl::parse(text).unwrap();
    let canonical = dsl::serialize(&doc);
    print!("{canonical}");
    assert_eq!(dsl::parse(&canonical).unwrap(), doc);

    for bad in [
        "algebra x\nvertices\narrow a : 1 -> 1\n",
        "algebra x\nvertices 1 2 3\narrow a : 1 -> 2\narrow c : 1 -> 3\nrel c.a\n",
        "algebra x\nvertices 1 2 3\narrow a : 1 -> 2\narrow d : 1 -> 2\narrow b : 2 -> 3\nrel b.a\nrel b.d\n",
    ] {
        for d in dsl::load(bad).unwrap_err() {
            println!("{d}");
        }
    }
}
