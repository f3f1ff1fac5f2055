//! Ribbon graph of the `za = by = xc = dt = 0` example: faces, stops and
//! windings, matched against the combinatorial boundary components.

use gentle_core::dsl;
use gentle_core::ribbon::{self, Corner};

fn main() {
    let (_, alg) = dsl::load(include_str!("../data/ex2.gentle")).expect("ex2 parses");
    let (surface, matching) = ribbon::verify_surface(&alg).expect("faces match components");
    let r = &surface.ribbon;
    println!(
        "{} ribbon vertices, {} edges, euler characteristic {}, genus {}",
        r.vertex_count(),
        r.edge_count(),
        surface.euler,
        surface.genus
    );
    for v in 0..r.vertex_count() {
        let rot: Vec<String> = r
            .rotation(v)
            .iter()
            .map(|&h| alg.quiver().vertex_name(r.edge_label(h)).to_string())
            .collect();
        println!("  vertex {v}: cyclic order of edges {rot:?}");
    }
    for &(fi, ci) in &matching.pairs {
        let face = &surface.faces[fi];
        let corners: Vec<String> = face
            .corners
            .iter()
            .map(|&h| match r.corner(h) {
                Corner::Arrow(a) => alg.quiver().arrow(a).name.clone(),
                Corner::Stop(_) => "|".into(),
            })
            .collect();
        println!(
            "face {fi} = component {ci}: {} stops, winding {}, corners {}",
            face.stops,
            face.winding,
            corners.join(" ")
        );
    }
}
