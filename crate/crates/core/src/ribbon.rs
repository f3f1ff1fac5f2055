//! Ribbon graph of a smooth graded gentle algebra and its thickened surface.
//!
//! Vertices are forbidden threads and edges are quiver vertices. A half-edge
//! is a forbidden slot, numbered `2v + port`; the edge of quiver vertex `v`
//! joins half-edges `2v` and `2v + 1`. Around a ribbon vertex the half-edges
//! follow the order of the thread, and the stop sits between the last and
//! the first one.
//!
//! Every half-edge `h` is followed (cyclically at its ribbon vertex) by a
//! *corner*: either an arrow of the thread or the stop. Corners carry the
//! arc windings of the line field, `|alpha|` for an arrow and `-|f|` for the
//! stop of `f`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ArrowIdx, GradedGentleAlgebra, VertexIdx};
use crate::threads::{BoundaryComponent, ComponentType, ThreadKind, ThreadSystem};

pub type HalfEdge = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corner {
    Arrow(ArrowIdx),
    /// Stop of the given forbidden thread.
    Stop(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("algebra is not homologically smooth: forbidden cycle {witness}")]
    NotSmooth { witness: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("face/boundary mismatch: {0}")]
pub struct MismatchedComponent(pub String);

#[derive(Clone, Debug)]
pub struct RibbonGraph {
    vertex_of: Vec<usize>,
    position: Vec<usize>,
    rotation: Vec<Vec<HalfEdge>>,
    corner: Vec<Corner>,
    theta: Vec<i64>,
    quiver_vertices: usize,
}

impl RibbonGraph {
    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.quiver_vertices
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.quiver_vertices
    }

    /// Ribbon vertex (forbidden thread index) carrying `h`.
    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.vertex_of[h]
    }

    /// Position of `h` in the linear order at its vertex.
    pub fn position(&self, h: HalfEdge) -> usize {
        self.position[h]
    }

    /// Half-edges at `v` in thread order.
    pub fn rotation(&self, v: usize) -> &[HalfEdge] {
        &self.rotation[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Cyclic successor at the same ribbon vertex.
    pub fn sigma(&self, h: HalfEdge) -> HalfEdge {
        let r = &self.rotation[self.vertex_of[h]];
        r[(self.position[h] + 1) % r.len()]
    }

    pub fn sigma_inv(&self, h: HalfEdge) -> HalfEdge {
        let r = &self.rotation[self.vertex_of[h]];
        r[(self.position[h] + r.len() - 1) % r.len()]
    }

    /// Other end of the edge.
    pub fn iota(&self, h: HalfEdge) -> HalfEdge {
        h ^ 1
    }

    /// Quiver vertex labelling the edge through `h`.
    pub fn edge_label(&self, h: HalfEdge) -> VertexIdx {
        h / 2
    }

    /// Ribbon vertices joined by the edge of quiver vertex `v`.
    pub fn edge_ends(&self, v: VertexIdx) -> (usize, usize) {
        (self.vertex_of[2 * v], self.vertex_of[2 * v + 1])
    }

    /// Corner between `h` and `sigma(h)`.
    pub fn corner(&self, h: HalfEdge) -> Corner {
        self.corner[h]
    }

    /// Arc winding `theta` of the corner after `h`.
    pub fn theta(&self, h: HalfEdge) -> i64 {
        self.theta[h]
    }

    pub fn is_stop(&self, h: HalfEdge) -> bool {
        matches!(self.corner[h], Corner::Stop(_))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &self.rotation[v] {
                let w = self.vertex_of[self.iota(h)];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn build_ribbon(alg: &GradedGentleAlgebra) -> Result<RibbonGraph, RibbonError> {
    build_ribbon_with(alg, &ThreadSystem::new(alg))
}

pub fn build_ribbon_with(alg: &GradedGentleAlgebra, sys: &ThreadSystem) -> Result<RibbonGraph, RibbonError> {
    if let Some(c) = sys.smoothness_witness() {
        return Err(RibbonError::NotSmooth {
            witness: c.label(alg),
        });
    }
    let n = alg.quiver().vertex_count();
    let mut vertex_of = vec![usize::MAX; 2 * n];
    let mut position = vec![0; 2 * n];
    let mut corner = vec![Corner::Stop(0); 2 * n];
    let mut theta = vec![0; 2 * n];
    let mut rotation = Vec::new();
    for (fi, f) in sys.forbidden_threads().iter().enumerate() {
        let hs: Vec<HalfEdge> = f.slots.iter().map(|s| s.index()).collect();
        for (pos, &h) in hs.iter().enumerate() {
            vertex_of[h] = fi;
            position[h] = pos;
            if pos + 1 < hs.len() {
                let a = f.arrows[pos];
                corner[h] = Corner::Arrow(a);
                theta[h] = alg.degree(a);
            } else {
                corner[h] = Corner::Stop(fi);
                theta[h] = -f.grading;
            }
        }
        rotation.push(hs);
    }
    debug_assert!(vertex_of.iter().all(|&v| v != usize::MAX));
    Ok(RibbonGraph {
        vertex_of,
        position,
        rotation,
        corner,
        theta,
        quiver_vertices: n,
    })
}

/// One boundary component of the thickened surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Half-edges `h` whose corner (`h`, `sigma(h)`) lies on this face, in
    /// walking order.
    pub corners: Vec<HalfEdge>,
    pub stops: usize,
    /// Sum of `-theta` over the corners.
    pub winding: i64,
}

impl Face {
    /// Closed walk in the graph: the half-edges through which the boundary
    /// leaves each vertex.
    pub fn steps(&self, r: &RibbonGraph) -> Vec<HalfEdge> {
        self.corners.iter().map(|&h| r.sigma(h)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub ribbon: RibbonGraph,
    pub euler: i64,
    pub genus: i64,
    pub faces: Vec<Face>,
}

impl SurfaceModel {
    pub fn boundary_count(&self) -> usize {
        self.faces.len()
    }

    pub fn total_stops(&self) -> usize {
        self.faces.iter().map(|f| f.stops).sum()
    }

    /// Sorted `(stops, winding)` pairs.
    pub fn boundary_signature(&self) -> Vec<(usize, i64)> {
        let mut v: Vec<_> = self.faces.iter().map(|f| (f.stops, f.winding)).collect();
        v.sort_unstable();
        v
    }
}

/// Faces are the orbits of `iota . sigma`, each corner being visited once.
pub fn trace_faces(r: &RibbonGraph) -> SurfaceModel {
    let m = r.half_edge_count();
    let mut seen = vec![false; m];
    let mut faces = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut corners = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            corners.push(h);
            h = r.iota(r.sigma(h));
        }
        let stops = corners.iter().filter(|&&h| r.is_stop(h)).count();
        let winding = corners.iter().map(|&h| -r.theta(h)).sum();
        faces.push(Face {
            corners,
            stops,
            winding,
        });
    }
    let euler = r.euler_characteristic();
    let genus = (2 - euler - faces.len() as i64) / 2;
    debug_assert_eq!(2 - 2 * genus - faces.len() as i64, euler);
    SurfaceModel {
        ribbon: r.clone(),
        euler,
        genus,
        faces,
    }
}

/// Builds the ribbon graph and traces its faces.
pub fn surface_model(alg: &GradedGentleAlgebra) -> Result<SurfaceModel, RibbonError> {
    Ok(trace_faces(&build_ribbon(alg)?))
}

/// Bijection between faces and combinatorial boundary components:
/// `pairs[i] = (face, component)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatching {
    pub pairs: Vec<(usize, usize)>,
}

/// Matches every face with the combinatorial boundary component it reads.
///
/// A face with stops reads the forbidden threads of its stop corners; a face
/// without stops runs along a permitted cycle. The match must preserve stop
/// counts and windings exactly.
pub fn crosscheck_boundaries(
    sys: &ThreadSystem,
    components: &[BoundaryComponent],
    surface: &SurfaceModel,
) -> Result<BoundaryMatching, MismatchedComponent> {
    let r = &surface.ribbon;
    if components.len() != surface.faces.len() {
        return Err(MismatchedComponent(format!(
            "{} faces but {} components",
            surface.faces.len(),
            components.len()
        )));
    }
    let mut comp_of_thread = vec![usize::MAX; sys.forbidden_threads().len()];
    let mut comp_of_pcycle = vec![usize::MAX; sys.permitted_cycles().len()];
    for (ci, c) in components.iter().enumerate() {
        match c.ty {
            ComponentType::I => {
                for &f in &c.forbidden {
                    comp_of_thread[f] = ci;
                }
            }
            ComponentType::II => comp_of_pcycle[c.cycle.expect("cycle")] = ci,
            ComponentType::IIPrime => {
                return Err(MismatchedComponent("forbidden cycle on a smooth algebra".into()))
            }
        }
    }
    let mut used = vec![false; components.len()];
    let mut pairs = Vec::new();
    for (fi, face) in surface.faces.iter().enumerate() {
        let ci = match face.corners.iter().find_map(|&h| match r.corner(h) {
            Corner::Stop(f) => Some(f),
            Corner::Arrow(_) => None,
        }) {
            Some(f) => comp_of_thread[f],
            None => {
                let Corner::Arrow(a) = r.corner(face.corners[0]) else {
                    unreachable!()
                };
                pcycle_of_arrow(sys, a).map_or(usize::MAX, |pc| comp_of_pcycle[pc])
            }
        };
        if ci == usize::MAX || used[ci] {
            return Err(MismatchedComponent(format!("face {fi} has no unused partner")));
        }
        let c = &components[ci];
        if c.stops != face.stops || c.winding != face.winding {
            return Err(MismatchedComponent(format!(
                "face {fi} has (stops {}, winding {}) but component {ci} has ({}, {})",
                face.stops, face.winding, c.stops, c.winding
            )));
        }
        used[ci] = true;
        pairs.push((fi, ci));
    }
    Ok(BoundaryMatching { pairs })
}

fn pcycle_of_arrow(sys: &ThreadSystem, a: ArrowIdx) -> Option<usize> {
    sys.permitted_cycles().iter().position(|c| c.arrows.contains(&a))
}

/// Convenience: faces of a smooth algebra matched against its components.
pub fn verify_surface(alg: &GradedGentleAlgebra) -> Result<(SurfaceModel, BoundaryMatching), String> {
    let sys = ThreadSystem::new(alg);
    let surface = trace_faces(&build_ribbon_with(alg, &sys).map_err(|e| e.to_string())?);
    let comps = sys.boundary_components();
    let m = crosscheck_boundaries(&sys, &comps, &surface).map_err(|e| e.to_string())?;
    Ok((surface, m))
}

/// Number of half-edge occurrences of each quiver vertex among forbidden
/// threads; always 2 for a smooth algebra.
pub fn slot_counts(sys: &ThreadSystem, n: usize) -> Vec<usize> {
    crate::threads::incidence_counts(sys, ThreadKind::Forbidden, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_gentle, RawAlgebra, RawArrow};

    fn alg(vertices: &[&str], arrows: &[(&str, &str, &str, i64)], rels: &[(&str, &str)]) -> GradedGentleAlgebra {
        validate_gentle(&RawAlgebra {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
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

    #[test]
    fn point_thickens_to_disk() {
        let a = alg(&["v"], &[], &[]);
        let r = build_ribbon(&a).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (2, 1));
        let s = trace_faces(&r);
        assert_eq!((s.genus, s.faces.len(), s.faces[0].stops, s.faces[0].winding), (0, 1, 2, 2));
    }

    #[test]
    fn loop_gives_annulus() {
        let a = alg(&["v"], &[("l", "v", "v", 2)], &[]);
        let r = build_ribbon(&a).unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.edge_ends(0), (0, 0));
        let (s, m) = verify_surface(&a).unwrap();
        assert_eq!(s.genus, 0);
        assert_eq!(s.boundary_signature(), vec![(0, -2), (1, 2)]);
        assert_eq!(m.pairs.len(), 2);
    }

    #[test]
    fn non_smooth_rejected() {
        let a = alg(&["v"], &[("l", "v", "v", 0)], &[("l", "l")]);
        assert!(matches!(build_ribbon(&a), Err(RibbonError::NotSmooth { .. })));
    }

    #[test]
    fn sigma_inverse() {
        let a = alg(&["1", "2", "3"], &[("x", "1", "2", 0), ("y", "2", "3", 0)], &[("y", "x")]);
        let r = build_ribbon(&a).unwrap();
        for h in 0..r.half_edge_count() {
            assert_eq!(r.sigma_inv(r.sigma(h)), h);
        }
    }
}
