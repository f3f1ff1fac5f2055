//! First homology of the thickened ribbon graph.
//!
//! A closed walk is the list of half-edges through which it leaves each
//! vertex; stepping through `h` crosses the edge to `iota(h)`. Crossing from
//! an even half-edge counts `+1` on that edge. Generators are fundamental
//! cycles of a BFS spanning tree, and the coordinates of any cycle are its
//! coefficients on the non-tree edges.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice;
use crate::ribbon::{HalfEdge, RibbonGraph, SurfaceModel};

pub type Walk = Vec<HalfEdge>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("walk is not closed")]
    NotClosed,
    #[error("walk turns back along the edge it arrived on")]
    UTurn,
    #[error("quotient by the boundary classes is not free")]
    DegenerateQuotient,
}

#[derive(Clone, Debug)]
pub struct CycleBasis {
    /// Edge (quiver vertex) of each generator.
    pub non_tree: Vec<usize>,
    pub generators: Vec<Walk>,
    /// Coordinates of each face walk.
    pub boundaries: Vec<Vec<i64>>,
    /// Position of each edge among the non-tree edges.
    index_of_edge: Vec<Option<usize>>,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of a closed walk.
    pub fn coordinates(&self, r: &RibbonGraph, walk: &[HalfEdge]) -> Vec<i64> {
        let mut c = vec![0; self.rank()];
        for &h in walk {
            if let Some(i) = self.index_of_edge[r.edge_label(h)] {
                c[i] += if h % 2 == 0 { 1 } else { -1 };
            }
        }
        c
    }
}

pub fn check_closed(r: &RibbonGraph, walk: &[HalfEdge]) -> Result<(), HomologyError> {
    if walk.is_empty() {
        return Ok(());
    }
    for i in 0..walk.len() {
        let next = walk[(i + 1) % walk.len()];
        if r.vertex_of(r.iota(walk[i])) != r.vertex_of(next) {
            return Err(HomologyError::NotClosed);
        }
    }
    Ok(())
}

pub fn cycle_basis(surface: &SurfaceModel) -> CycleBasis {
    let r = &surface.ribbon;
    let nv = r.vertex_count();
    // parent_step[w] leaves w towards its parent
    let mut parent_step: Vec<Option<HalfEdge>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree_edge = vec![false; r.edge_count()];
    if nv > 0 {
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &h in r.rotation(v) {
                let w = r.vertex_of(r.iota(h));
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_step[w] = Some(r.iota(h));
                    tree_edge[r.edge_label(h)] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut non_tree = Vec::new();
    let mut generators = Vec::new();
    let mut index_of_edge = vec![None; r.edge_count()];
    for e in 0..r.edge_count() {
        if tree_edge[e] {
            continue;
        }
        index_of_edge[e] = Some(non_tree.len());
        non_tree.push(e);
        // cross e from 2e to 2e+1, then return through the tree
        let (x, y) = (r.vertex_of(2 * e), r.vertex_of(2 * e + 1));
        let mut walk = vec![2 * e];
        let (mut up_y, mut up_x) = (Vec::new(), Vec::new());
        let (mut a, mut b) = (y, x);
        while a != b {
            if depth[a] >= depth[b] {
                let h = parent_step[a].expect("non-root");
                up_y.push(h);
                a = r.vertex_of(r.iota(h));
            } else {
                let h = parent_step[b].expect("non-root");
                up_x.push(h);
                b = r.vertex_of(r.iota(h));
            }
        }
        walk.extend(up_y);
        walk.extend(up_x.iter().rev().map(|&h| r.iota(h)));
        generators.push(walk);
    }
    let mut basis = CycleBasis {
        non_tree,
        generators,
        boundaries: Vec::new(),
        index_of_edge,
    };
    basis.boundaries = surface
        .faces
        .iter()
        .map(|f| basis.coordinates(r, &f.steps(r)))
        .collect();
    basis
}

/// Passages `(enter, exit)` of a closed walk through vertices.
pub fn passages(r: &RibbonGraph, walk: &[HalfEdge]) -> Result<Vec<(HalfEdge, HalfEdge)>, HomologyError> {
    check_closed(r, walk)?;
    let n = walk.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let enter = r.iota(walk[(i + n - 1) % n]);
        let exit = walk[i];
        if enter == exit {
            return Err(HomologyError::UTurn);
        }
        out.push((enter, exit));
    }
    Ok(out)
}

/// Position of a lane endpoint on the boundary circle of its disk. The
/// strip coordinate is measured from the left of the `2e -> 2e+1`
/// direction, which reverses at the odd end.
fn circle_coord(r: &RibbonGraph, h: HalfEdge, lane: i64) -> i64 {
    let side = if h % 2 == 0 { lane } else { 3 - lane };
    3 * r.position(h) as i64 + side
}

/// Signed count of crossings between two closed walks without U-turns,
/// routing `a` on lane 1/3 and `b` on lane 2/3 of every strip.
pub fn intersection(r: &RibbonGraph, a: &[HalfEdge], b: &[HalfEdge]) -> Result<i64, HomologyError> {
    let pa = passages(r, a)?;
    let pb = passages(r, b)?;
    let mut total = 0;
    for &(a_in, a_out) in &pa {
        let v = r.vertex_of(a_in);
        let m = 3 * r.valence(v) as i64;
        let p1 = circle_coord(r, a_in, 1);
        let p2 = circle_coord(r, a_out, 1);
        let span = (p2 - p1).rem_euclid(m);
        let inside = |x: i64| {
            let d = (x - p1).rem_euclid(m);
            d > 0 && d < span
        };
        for &(b_in, b_out) in &pb {
            if r.vertex_of(b_in) != v {
                continue;
            }
            let q1 = inside(circle_coord(r, b_in, 2));
            let q2 = inside(circle_coord(r, b_out, 2));
            if q1 != q2 {
                total += if q1 { 1 } else { -1 };
            }
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionForm {
    pub gram: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        lattice::bilinear(&self.gram, x, y)
    }

    pub fn rank_mod2(&self) -> usize {
        let rows: Vec<u64> = self.gram.iter().map(|r| lattice::to_bits(r)).collect();
        lattice::rank_mod2(&rows)
    }
}

pub fn intersection_form(r: &RibbonGraph, basis: &CycleBasis) -> IntersectionForm {
    let n = basis.rank();
    let mut gram = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = intersection(r, &basis.generators[i], &basis.generators[j])
                .expect("fundamental cycles have no U-turns");
            gram[i][j] = x;
            gram[j][i] = -x;
        }
    }
    IntersectionForm { gram }
}

/// Vectors projecting to a Z-basis of `Z^N / span(boundaries)`.
pub fn smith_quotient_basis(rank: usize, boundaries: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, HomologyError> {
    let red = lattice::reduce(boundaries, rank);
    if !red.is_primitive() {
        return Err(HomologyError::DegenerateQuotient);
    }
    Ok(red.complement().to_vec())
}

/// Whether `alpha`, `beta` and the boundary classes together span `Z^N`.
pub fn projects_to_basis(rank: usize, boundaries: &[Vec<i64>], extra: &[&[i64]]) -> bool {
    let red = lattice::reduce(boundaries, rank);
    let k = red.rank();
    if k + extra.len() != rank || !red.is_primitive() {
        return false;
    }
    // a basis of the boundary span is d_i Q_i = Q_i
    let mut m: Vec<Vec<i64>> = red.basis[..k].to_vec();
    m.extend(extra.iter().map(|v| v.to_vec()));
    lattice::determinant(&m).abs() == 1
}

/// Pairs `(a_i, b_i)` of integer combinations of generators whose images in
/// `H/K` mod 2 form a symplectic basis.
pub fn quotient_symplectic_basis(
    form: &IntersectionForm,
    quotient: &[Vec<i64>],
) -> Result<Vec<(Vec<i64>, Vec<i64>)>, HomologyError> {
    let pair = |x: &Vec<i64>, y: &Vec<i64>| form.pair(x, y).rem_euclid(2);
    let add = |x: &Vec<i64>, y: &Vec<i64>| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| (a + b).rem_euclid(2)).collect() };
    let mut pool: Vec<Vec<i64>> = quotient.iter().map(|v| v.iter().map(|x| x.rem_euclid(2)).collect()).collect();
    let mut pairs = Vec::new();
    while let Some(a) = pool.pop() {
        let k = pool
            .iter()
            .position(|b| pair(&a, b) == 1)
            .ok_or(HomologyError::DegenerateQuotient)?;
        let b = pool.swap_remove(k);
        for c in pool.iter_mut() {
            let (ca, cb) = (pair(c, &a), pair(c, &b));
            if cb == 1 {
                *c = add(c, &a);
            }
            if ca == 1 {
                *c = add(c, &b);
            }
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// Graph-simple closed walks (distinct vertices), each listed once up to
/// rotation and reversal; at most `limit` are returned.
pub fn simple_cycles(r: &RibbonGraph, limit: usize) -> Vec<Walk> {
    let nv = r.vertex_count();
    let mut out = Vec::new();
    let mut seen_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in 0..nv {
        let mut on_path = vec![false; nv];
        on_path[s] = true;
        let mut path: Vec<HalfEdge> = Vec::new();
        dfs_cycles(r, s, s, &mut on_path, &mut path, &mut out, &mut seen_sets, limit);
        if out.len() >= limit {
            break;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles(
    r: &RibbonGraph,
    s: usize,
    v: usize,
    on_path: &mut [bool],
    path: &mut Vec<HalfEdge>,
    out: &mut Vec<Walk>,
    seen: &mut BTreeSet<Vec<usize>>,
    limit: usize,
) {
    for &h in r.rotation(v) {
        if out.len() >= limit {
            return;
        }
        if let Some(&last) = path.last() {
            if r.iota(last) == h {
                continue;
            }
        }
        let w = r.vertex_of(r.iota(h));
        if w == s {
            path.push(h);
            let mut key: Vec<usize> = path.iter().map(|&x| r.edge_label(x)).collect();
            key.sort_unstable();
            if passages_ok(r, path) && seen.insert(key) {
                out.push(path.clone());
            }
            path.pop();
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(h);
            dfs_cycles(r, s, w, on_path, path, out, seen, limit);
            path.pop();
            on_path[w] = false;
        }
    }
}

fn passages_ok(r: &RibbonGraph, walk: &[HalfEdge]) -> bool {
    passages(r, walk).is_ok()
}
