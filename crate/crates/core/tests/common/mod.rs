#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use gentle_core::algebra::{random_gentle, validate_gentle, GradedGentleAlgebra, RandomSpec, RawAlgebra, RawArrow};
use gentle_core::dsl;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn load_data(name: &str) -> GradedGentleAlgebra {
    let text = fs::read_to_string(data_dir().join(format!("{name}.gentle"))).unwrap();
    dsl::load(&text).unwrap().1
}

/// Every `.gentle` file directly under `dir`, sorted.
pub fn gentle_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gentle"))
        .collect();
    v.sort();
    v
}

pub fn build(arrows: &[(&str, &str, &str, i64)], rels: &[(&str, &str)]) -> GradedGentleAlgebra {
    let mut vs: Vec<String> = Vec::new();
    for &(_, s, t, _) in arrows {
        for x in [s, t] {
            if !vs.iter().any(|v| v == x) {
                vs.push(x.into());
            }
        }
    }
    validate_gentle(&RawAlgebra {
        vertices: vs,
        arrows: arrows
            .iter()
            .map(|&(n, s, t, d)| RawArrow {
                name: n.into(),
                source: s.into(),
                target: t.into(),
                degree: d,
            })
            .collect(),
        relations: rels.iter().map(|&(b, a)| (b.into(), a.into())).collect(),
    })
    .unwrap()
}

/// Linear `A_n` with all arrows in degree `deg` and no relations.
pub fn linear(n: usize, deg: i64) -> GradedGentleAlgebra {
    let names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    let verts: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    validate_gentle(&RawAlgebra {
        vertices: verts.clone(),
        arrows: (0..n - 1)
            .map(|i| RawArrow {
                name: names[i].clone(),
                source: verts[i].clone(),
                target: verts[i + 1].clone(),
                degree: deg,
            })
            .collect(),
        relations: vec![],
    })
    .unwrap()
}

/// Smooth random algebras, at most 12 vertices, degrees in [-3, 3].
pub fn smooth_corpus(seeds: std::ops::Range<u64>) -> Vec<GradedGentleAlgebra> {
    seeds
        .map(|s| random_gentle(&RandomSpec::new(s, 12).max_degree(3).smooth(true)).unwrap())
        .collect()
}

/// Proper algebras in degree 0.
pub fn proper_corpus(seeds: std::ops::Range<u64>) -> Vec<GradedGentleAlgebra> {
    seeds
        .map(|s| {
            random_gentle(&RandomSpec::new(s, 12).max_degree(0).proper(true).smooth(false)).unwrap()
        })
        .collect()
}
