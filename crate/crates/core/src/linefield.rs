//! Winding numbers for the line field of a smooth graded gentle algebra and
//! the mapping-class-group orbit invariants built from them.
//!
//! Each ribbon vertex `f` is a disk whose boundary alternates between the
//! `k` half-edges (Lagrangian sides) and `k` arcs (corners), with arc
//! windings `theta` summing to `k - 2`. A curve crossing the disk from side
//! `a` to side `b` counterclockwise passes `d = (b - a) mod k` arcs and picks
//! up
//!
//! ```text
//! CHORD_SLOPE * d + CHORD_OFFSET - sum(theta over the arcs passed)
//! ```
//!
//! The clockwise route gives the negative of the counterclockwise chord
//! from `b` to `a`; the two agree exactly because the arc windings sum to
//! `k - 2`. A boundary face turns through one arc at each corner, so its
//! winding is the sum of `-theta` over its corners.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GradedGentleAlgebra;
use crate::homology::{self, CycleBasis, HomologyError, IntersectionForm, Walk};
use crate::lattice;
use crate::quadforms::{self, QuadError, QuadZ4};
use crate::ribbon::{self, HalfEdge, RibbonError, RibbonGraph, SurfaceModel};

pub const CHORD_SLOPE: i64 = 1;
pub const CHORD_OFFSET: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChordConstants {
    pub slope: i64,
    pub offset: i64,
}

pub const FROZEN: ChordConstants = ChordConstants {
    slope: CHORD_SLOPE,
    offset: CHORD_OFFSET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Ccw,
    Cw,
    /// Counterclockwise unless that passes the stop.
    AvoidStop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Inapplicable {
    Genus,
    BoundaryMod4,
    Sigma,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineFieldError {
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("cycle visits a vertex twice")]
    NonSimpleCycle,
    #[error("gcd invariant needs genus 1, surface has genus {0}")]
    NotGenusOne(i64),
    #[error("Arf invariant not applicable: {0:?}")]
    NotApplicable(Inapplicable),
    #[error("no pair of simple cycles projects to a basis of H1 modulo the boundary")]
    NoBasisPair,
}

/// Arc windings around every disk, in corner order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFieldData {
    pub disks: Vec<Vec<i64>>,
}

impl LineFieldData {
    pub fn from_ribbon(r: &RibbonGraph) -> Self {
        LineFieldData {
            disks: (0..r.vertex_count())
                .map(|v| r.rotation(v).iter().map(|&h| r.theta(h)).collect())
                .collect(),
        }
    }

    /// Disks violating `sum theta = k - 2`.
    pub fn violations(&self) -> Vec<usize> {
        self.disks
            .iter()
            .enumerate()
            .filter(|(_, d)| d.iter().sum::<i64>() != d.len() as i64 - 2)
            .map(|(i, _)| i)
            .collect()
    }
}

fn arc_sum(r: &RibbonGraph, from: HalfEdge, count: usize) -> i64 {
    let mut h = from;
    let mut s = 0;
    for _ in 0..count {
        s += r.theta(h);
        h = r.sigma(h);
    }
    s
}

fn ccw_chord(r: &RibbonGraph, enter: HalfEdge, exit: HalfEdge, c: ChordConstants) -> i64 {
    let k = r.valence(r.vertex_of(enter));
    let d = match (r.position(exit) + k - r.position(enter)) % k {
        0 => k,
        d => d,
    };
    c.slope * d as i64 + c.offset - arc_sum(r, enter, d)
}

fn passes_stop(r: &RibbonGraph, enter: HalfEdge, exit: HalfEdge) -> bool {
    let mut h = enter;
    loop {
        if r.is_stop(h) {
            return true;
        }
        h = r.sigma(h);
        if h == exit {
            return false;
        }
    }
}

/// Winding of one passage through a disk. A passage that enters and leaves
/// through the same side always turns counterclockwise around the disk.
pub fn chord_winding_with(r: &RibbonGraph, enter: HalfEdge, exit: HalfEdge, route: Route, c: ChordConstants) -> i64 {
    let cw = match route {
        Route::Ccw => false,
        Route::Cw => true,
        Route::AvoidStop => passes_stop(r, enter, exit),
    };
    if cw && enter != exit {
        -ccw_chord(r, exit, enter, c)
    } else {
        ccw_chord(r, enter, exit, c)
    }
}

pub fn chord_winding(r: &RibbonGraph, enter: HalfEdge, exit: HalfEdge, route: Route) -> i64 {
    chord_winding_with(r, enter, exit, route, FROZEN)
}

/// Winding of a closed walk, summing chord windings over its passages.
pub fn walk_winding_with(r: &RibbonGraph, walk: &[HalfEdge], route: Route, c: ChordConstants) -> Result<i64, LineFieldError> {
    homology::check_closed(r, walk)?;
    let n = walk.len();
    Ok((0..n)
        .map(|i| chord_winding_with(r, r.iota(walk[(i + n - 1) % n]), walk[i], route, c))
        .sum())
}

pub fn walk_winding(r: &RibbonGraph, walk: &[HalfEdge], route: Route) -> Result<i64, LineFieldError> {
    walk_winding_with(r, walk, route, FROZEN)
}

/// Winding of a graph-simple cycle, which is a simple closed curve on the
/// surface.
pub fn winding_of_cycle(r: &RibbonGraph, walk: &[HalfEdge]) -> Result<i64, LineFieldError> {
    let mut seen = vec![false; r.vertex_count()];
    for &h in walk {
        let v = r.vertex_of(h);
        if std::mem::replace(&mut seen[v], true) {
            return Err(LineFieldError::NonSimpleCycle);
        }
    }
    homology::passages(r, walk)?;
    walk_winding(r, walk, Route::AvoidStop)
}

/// Mapping-class-group orbit invariants of the line field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub genus: i64,
    /// Sorted `(stops, winding)` per boundary component.
    pub boundary: Vec<(usize, i64)>,
    pub sigma: u8,
    pub gcd_invariant: Option<u64>,
    pub arf: Option<u8>,
}

/// Homology, intersection form and `q` for one surface.
#[derive(Clone, Debug)]
pub struct SurfaceAnalysis {
    pub surface: SurfaceModel,
    pub basis: CycleBasis,
    pub form: IntersectionForm,
    pub generator_windings: Vec<i64>,
    pub q: QuadZ4,
}

impl SurfaceAnalysis {
    pub fn new(alg: &GradedGentleAlgebra) -> Result<Self, LineFieldError> {
        Self::from_surface(ribbon::surface_model(alg)?)
    }

    pub fn from_surface(surface: SurfaceModel) -> Result<Self, LineFieldError> {
        let basis = homology::cycle_basis(&surface);
        let form = homology::intersection_form(&surface.ribbon, &basis);
        let generator_windings = basis
            .generators
            .iter()
            .map(|g| winding_of_cycle(&surface.ribbon, g))
            .collect::<Result<Vec<_>, _>>()?;
        let q = q_from_windings(&form, &generator_windings);
        Ok(SurfaceAnalysis {
            surface,
            basis,
            form,
            generator_windings,
            q,
        })
    }

    pub fn genus(&self) -> i64 {
        self.surface.genus
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.surface.ribbon
    }

    pub fn boundary_windings(&self) -> Vec<i64> {
        self.surface.faces.iter().map(|f| f.winding).collect()
    }

    /// `r_i = w_i + 2`.
    pub fn boundary_r(&self) -> Vec<i64> {
        self.boundary_windings().iter().map(|w| w + 2).collect()
    }

    pub fn sigma(&self) -> u8 {
        self.q.sigma()
    }

    /// Simple cycles with their coordinates and windings: the fundamental
    /// cycles, followed by up to `extra` further graph-simple cycles.
    pub fn simple_pool(&self, extra: usize) -> Vec<(Walk, Vec<i64>, i64)> {
        let r = self.ribbon();
        let mut pool: Vec<(Walk, Vec<i64>, i64)> = self
            .basis
            .generators
            .iter()
            .zip(&self.generator_windings)
            .map(|(g, &w)| (g.clone(), self.basis.coordinates(r, g), w))
            .collect();
        if extra > 0 {
            for c in homology::simple_cycles(r, extra) {
                let coords = self.basis.coordinates(r, &c);
                let w = winding_of_cycle(r, &c).expect("enumerated cycles are simple");
                pool.push((c, coords, w));
            }
        }
        pool
    }

    /// `Ã` for every qualifying pair in `pool`, as `(i, j, value)`.
    pub fn gcd_candidates(&self, pool: &[(Walk, Vec<i64>, i64)]) -> Vec<(usize, usize, u64)> {
        let n = self.basis.rank();
        let r = self.boundary_r();
        let mut out = Vec::new();
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                if homology::projects_to_basis(n, &self.basis.boundaries, &[&pool[i].1, &pool[j].1]) {
                    out.push((i, j, gcd_from_windings(pool[i].2, pool[j].2, &r)));
                }
            }
        }
        out
    }

    pub fn gcd_invariant(&self) -> Result<u64, LineFieldError> {
        if self.genus() != 1 {
            return Err(LineFieldError::NotGenusOne(self.genus()));
        }
        for extra in [0, 2000] {
            let pool = self.simple_pool(extra);
            if let Some(&(_, _, v)) = self.gcd_candidates(&pool).first() {
                return Ok(v);
            }
        }
        Err(LineFieldError::NoBasisPair)
    }

    pub fn arf_applicability(&self) -> Result<(), Inapplicable> {
        if self.genus() < 2 {
            Err(Inapplicable::Genus)
        } else if self.boundary_r().iter().any(|r| r.rem_euclid(4) != 0) {
            Err(Inapplicable::BoundaryMod4)
        } else if self.sigma() != 0 {
            Err(Inapplicable::Sigma)
        } else {
            Ok(())
        }
    }

    /// `sum qbar(a_i) qbar(b_i)` over a symplectic basis of `H/K` mod 2.
    pub fn arf_invariant(&self) -> Result<u8, LineFieldError> {
        self.arf_applicability().map_err(LineFieldError::NotApplicable)?;
        let quotient = homology::smith_quotient_basis(self.basis.rank(), &self.basis.boundaries)?;
        let pairs = homology::quotient_symplectic_basis(&self.form, &quotient)?;
        Ok(pairs
            .iter()
            .fold(0, |acc, (a, b)| acc ^ ((self.q.eval(a) / 2) & (self.q.eval(b) / 2) & 1)))
    }

    /// The same invariant from the Gauss sum of `qbar` on the quotient.
    pub fn arf_by_gauss(&self, max_dim: usize) -> Result<u8, LineFieldError> {
        self.arf_applicability().map_err(LineFieldError::NotApplicable)?;
        let (space, _) = self.q.reduce_mod(&self.basis.boundaries)?;
        Ok(quadforms::arf_gauss(&space, max_dim)?)
    }

    pub fn orbit_invariants(&self) -> Result<OrbitInvariants, LineFieldError> {
        let gcd_invariant = match self.genus() {
            1 => Some(self.gcd_invariant()?),
            _ => None,
        };
        let arf = match self.arf_applicability() {
            Ok(()) => Some(self.arf_invariant()?),
            Err(_) => None,
        };
        Ok(OrbitInvariants {
            genus: self.genus(),
            boundary: self.surface.boundary_signature(),
            sigma: self.sigma(),
            gcd_invariant,
            arf,
        })
    }
}

/// `q(g_i) = w(g_i) + 2` on simple generators, extended by the quadratic
/// relation.
pub fn q_from_windings(form: &IntersectionForm, windings: &[i64]) -> QuadZ4 {
    QuadZ4::new(
        form.gram.clone(),
        windings.iter().map(|w| (w + 2).rem_euclid(4) as u8).collect(),
    )
    .expect("intersection form is antisymmetric")
}

/// `gcd(w(alpha), w(beta), r_1, ..., r_d)`.
pub fn gcd_from_windings(w_alpha: i64, w_beta: i64, r: &[i64]) -> u64 {
    r.iter()
        .fold(lattice::gcd(w_alpha, w_beta), |g, &x| lattice::gcd(g, x)) as u64
}

pub fn orbit_invariants(alg: &GradedGentleAlgebra) -> Result<OrbitInvariants, LineFieldError> {
    SurfaceAnalysis::new(alg)?.orbit_invariants()
}
