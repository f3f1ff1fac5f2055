//! Surfaces glued from annuli for chain and ring stacky curves.
//!
//! For a node of order `r` with parameter `k`, the gluing permutation is
//! `sigma(x) = -k x` on `Z/r`, and the commutator with `tau(j) = j - 1`
//! determines the boundary components created by the gluing. The line field
//! is horizontal, so it comes from a vector field and `sigma = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decider::{self, DecisionReport};
use crate::lattice::gcd;
use crate::linefield::OrbitInvariants;
use crate::quadforms::{self, QuadError, Z2QuadraticSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StackyKind {
    Chain,
    Ring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackySpec {
    pub kind: StackyKind,
    pub r: Vec<i64>,
    pub k: Vec<i64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StackyError {
    #[error("k = {k} is not a unit modulo r = {r}")]
    BadK { r: i64, k: i64 },
    #[error("invalid spec: {0}")]
    BadSpec(String),
    #[error("no Arf computation is known for {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

impl fmt::Display for StackySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let name = match self.kind {
            StackyKind::Chain => "C",
            StackyKind::Ring => "R",
        };
        write!(f, "{name}({};{})", join(&self.r), join(&self.k))
    }
}

impl StackySpec {
    pub fn chain(r: Vec<i64>, k: Vec<i64>) -> Result<Self, StackyError> {
        Self::new(StackyKind::Chain, r, k)
    }

    pub fn ring(r: Vec<i64>, k: Vec<i64>) -> Result<Self, StackyError> {
        Self::new(StackyKind::Ring, r, k)
    }

    pub fn new(kind: StackyKind, r: Vec<i64>, k: Vec<i64>) -> Result<Self, StackyError> {
        let spec = StackySpec { kind, r, k };
        spec.check()?;
        Ok(spec)
    }

    /// Parses `r0,r1,...;k1,...` (either part may be empty).
    pub fn parse(kind: StackyKind, text: &str) -> Result<Self, StackyError> {
        let (rs, ks) = text
            .split_once(';')
            .ok_or_else(|| StackyError::BadSpec(format!("missing ';' in {text:?}")))?;
        let list = |s: &str| -> Result<Vec<i64>, StackyError> {
            s.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| StackyError::BadSpec(format!("not an integer: {x:?}"))))
                .collect()
        };
        Self::new(kind, list(rs)?, list(ks)?)
    }

    fn check(&self) -> Result<(), StackyError> {
        let nodes = self.node_orders();
        match self.kind {
            StackyKind::Chain if self.r.len() < 2 => {
                return Err(StackyError::BadSpec("a chain needs r0 and rn".into()))
            }
            StackyKind::Ring if self.r.is_empty() => return Err(StackyError::BadSpec("a ring needs r1".into())),
            _ => {}
        }
        if nodes.len() != self.k.len() {
            return Err(StackyError::BadSpec(format!(
                "{} node orders but {} parameters",
                nodes.len(),
                self.k.len()
            )));
        }
        if self.r.iter().any(|&x| x < 0) {
            return Err(StackyError::BadSpec("orders must be nonnegative".into()));
        }
        for (&r, &k) in nodes.iter().zip(&self.k) {
            if r < 1 || gcd(k, r) != 1 {
                return Err(StackyError::BadK { r, k });
            }
        }
        Ok(())
    }

    /// Orders `r_i` at the glued nodes, paired with `self.k`.
    pub fn node_orders(&self) -> &[i64] {
        match self.kind {
            StackyKind::Chain => &self.r[1..self.r.len().saturating_sub(1).max(1)],
            StackyKind::Ring => &self.r,
        }
    }
}

/// Cycle structure `(count, length)` of `[sigma, tau]` on `Z/r`, computed
/// by composing the permutations.
pub fn commutator_cycles(r: i64, k: i64) -> Result<(i64, i64), StackyError> {
    if r < 1 || gcd(k, r) != 1 {
        return Err(StackyError::BadK { r, k });
    }
    let n = r as usize;
    let sigma: Vec<usize> = (0..r).map(|x| (-k * x).rem_euclid(r) as usize).collect();
    let tau: Vec<usize> = (0..r).map(|j| (j - 1).rem_euclid(r) as usize).collect();
    let inverse = |p: &[usize]| {
        let mut inv = vec![0; n];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        inv
    };
    let (sigma_inv, tau_inv) = (inverse(&sigma), inverse(&tau));
    let comm: Vec<usize> = (0..n).map(|x| sigma[tau[sigma_inv[tau_inv[x]]]]).collect();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for s in 0..n {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = comm[x];
            len += 1;
        }
        if len > 0 {
            lengths.push(len as i64);
        }
    }
    let count = lengths.len() as i64;
    debug_assert!(lengths.iter().all(|&l| l == lengths[0]));
    Ok((count, lengths[0]))
}

/// `gcd(k + 1, r)`.
pub fn commutator_cycle_count(r: i64, k: i64) -> i64 {
    gcd(k + 1, r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedSurfaceInvariants {
    pub genus: i64,
    /// Sorted `(stops, winding)`.
    pub boundary: Vec<(usize, i64)>,
    pub sigma: u8,
    pub gcd_invariant: Option<u64>,
    pub arf: Option<u8>,
    /// Why the Arf invariant is missing although it would be needed.
    pub arf_unavailable: Option<String>,
}

impl GluedSurfaceInvariants {
    pub fn orbit(&self) -> OrbitInvariants {
        OrbitInvariants {
            genus: self.genus,
            boundary: self.boundary.clone(),
            sigma: self.sigma,
            gcd_invariant: self.gcd_invariant,
            arf: self.arf,
        }
    }
}

/// Genus from the gluing formula.
pub fn glued_genus(spec: &StackySpec) -> i64 {
    let excess: i64 = spec
        .node_orders()
        .iter()
        .zip(&spec.k)
        .map(|(&r, &k)| r - commutator_cycle_count(r, k))
        .sum();
    match spec.kind {
        StackyKind::Chain => excess / 2,
        StackyKind::Ring => 1 + excess / 2,
    }
}

pub fn glued_invariants(spec: &StackySpec) -> Result<GluedSurfaceInvariants, StackyError> {
    glued_invariants_with(spec, quadforms::DEFAULT_MAX_GAUSS_DIM)
}

/// As [`glued_invariants`], with an explicit bound on Gauss-sum blocks.
pub fn glued_invariants_with(spec: &StackySpec, max_dim: usize) -> Result<GluedSurfaceInvariants, StackyError> {
    spec.check()?;
    let mut boundary = Vec::new();
    if spec.kind == StackyKind::Chain {
        boundary.push((spec.r[0] as usize, 0));
        boundary.push((spec.r[spec.r.len() - 1] as usize, 0));
    }
    for (&r, &k) in spec.node_orders().iter().zip(&spec.k) {
        let (p, len) = commutator_cycles(r, k)?;
        debug_assert_eq!((p, len), (gcd(k + 1, r), r / gcd(k + 1, r)));
        boundary.extend(std::iter::repeat_n((0usize, -2 * len), p as usize));
    }
    boundary.sort_unstable();
    let genus = glued_genus(spec);
    let gcd_invariant = (genus == 1).then(|| match spec.kind {
        // the special components contribute w + 2 = 2 and every winding
        // of a vector field's line field is even
        StackyKind::Chain => 2,
        // all k_i = -1: horizontal and vertical curves have winding 0
        StackyKind::Ring => 0,
    });
    let mut inv = GluedSurfaceInvariants {
        genus,
        boundary,
        sigma: 0,
        gcd_invariant,
        arf: None,
        arf_unavailable: None,
    };
    if decider::arf_required(&inv.orbit()) {
        match stacky_arf_with(spec, max_dim) {
            Ok(a) => inv.arf = Some(a),
            Err(e) => inv.arf_unavailable = Some(e.to_string()),
        }
    }
    Ok(inv)
}

/// Ring families whose Arf invariant is computed from explicit curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArfFamily {
    /// `R(r; 1)`, `r` odd.
    Irreducible1(i64),
    /// `R(r; 2)`, `r` odd and prime to 3.
    Irreducible2(i64),
    /// `R(r, r; 1, 1)`, `r` odd.
    TwoNodes(i64),
    /// `R(2r; 1)`, `r` odd.
    Doubled(i64),
}

pub fn arf_family(spec: &StackySpec) -> Result<ArfFamily, StackyError> {
    let unsupported = || StackyError::UnsupportedFamily(spec.to_string());
    if spec.kind != StackyKind::Ring {
        return Err(unsupported());
    }
    let norm = |k: i64, r: i64| k.rem_euclid(r);
    match (spec.r.as_slice(), spec.k.as_slice()) {
        (&[r], &[k]) if r >= 3 && r % 2 == 1 && norm(k, r) == 1 => Ok(ArfFamily::Irreducible1(r)),
        (&[r], &[k]) if r >= 5 && r % 2 == 1 && r % 3 != 0 && norm(k, r) == 2 => Ok(ArfFamily::Irreducible2(r)),
        (&[r], &[k]) if r >= 6 && r % 4 == 2 && norm(k, r) == 1 => Ok(ArfFamily::Doubled(r / 2)),
        (&[r1, r2], &[k1, k2]) if r1 == r2 && r1 >= 3 && r1 % 2 == 1 && norm(k1, r1) == 1 && norm(k2, r2) == 1 => {
            Ok(ArfFamily::TwoNodes(r1))
        }
        _ => Err(unsupported()),
    }
}

/// Closed forms for the Arf invariant.
pub fn arf_closed_form(f: ArfFamily) -> u8 {
    let v = match f {
        ArfFamily::Irreducible1(r) => 1 + quadforms::choose2((r - 1) / 2),
        ArfFamily::Irreducible2(r) => 1 + (r - 1) / 2,
        ArfFamily::TwoNodes(_) => 1,
        ArfFamily::Doubled(r) => (r + 1) / 2,
    };
    v.rem_euclid(2) as u8
}

/// Curves on the glued surface: windings and mod-2 intersections, enough to
/// build the quadratic space `qbar = (w + 2) / 2`.
#[derive(Clone, Debug)]
pub struct CurveSystem {
    pub windings: Vec<i64>,
    pub space: Z2QuadraticSpace,
}

impl CurveSystem {
    fn new(windings: Vec<i64>, pair: impl Fn(usize, usize) -> bool) -> Result<Self, StackyError> {
        let q = windings.iter().map(|w| ((w + 2) / 2).rem_euclid(2) as u8).collect();
        let space = Z2QuadraticSpace::from_fn(windings.len(), q, pair)?;
        Ok(CurveSystem { windings, space })
    }
}

/// Curves `alpha_1..alpha_m` around the gluing segments (winding `-2`),
/// followed by the vertical and horizontal curves `alpha, beta` (winding 0).
pub fn curve_system(f: ArfFamily) -> Result<CurveSystem, StackyError> {
    // indices: 0..m are the alpha_i, then alpha, beta
    let with_plane = |m: usize, pair: &dyn Fn(usize, usize) -> bool| {
        let mut w = vec![-2; m];
        w.extend([0, 0]);
        CurveSystem::new(w, |i, j| if j >= m { i == m && j == m + 1 } else { pair(i, j) })
    };
    match f {
        ArfFamily::Irreducible1(r) => with_plane((r - 1) as usize, &|_, _| true),
        ArfFamily::Irreducible2(r) => {
            let n = (r - 1) as usize;
            with_plane(n, &|i, j| j < i + n / 2)
        }
        ArfFamily::TwoNodes(r) => {
            let m = (r - 1) as usize;
            // two groups of pairwise intersecting curves, disjoint from each other
            with_plane(2 * m, &|i, j| (i < m) == (j < m))
        }
        ArfFamily::Doubled(r) => with_plane((2 * r - 1) as usize, &|_, _| true),
    }
}

/// Arf invariant from the explicit curve system and a Gauss sum. For the
/// doubled family the sum of the `alpha_i` is a boundary class and is
/// divided out first.
pub fn arf_explicit(f: ArfFamily, max_dim: usize) -> Result<u8, StackyError> {
    let curves = curve_system(f)?;
    let space = match f {
        ArfFamily::Doubled(r) => {
            let m = (2 * r - 1) as u32;
            curves.space.quotient((1u64 << m) - 1)?
        }
        _ => curves.space,
    };
    Ok(quadforms::arf_gauss(&space, max_dim)?)
}

/// Arf invariant for the documented ring families; the closed form is
/// checked against the explicit curve computation.
pub fn stacky_arf(spec: &StackySpec) -> Result<u8, StackyError> {
    stacky_arf_with(spec, quadforms::DEFAULT_MAX_GAUSS_DIM)
}

pub fn stacky_arf_with(spec: &StackySpec, max_dim: usize) -> Result<u8, StackyError> {
    let f = arf_family(spec)?;
    let closed = arf_closed_form(f);
    let explicit = arf_explicit(f, max_dim)?;
    assert_eq!(closed, explicit, "closed form and curve computation disagree for {spec}");
    Ok(closed)
}

pub fn decide_stacky(a: &StackySpec, b: &StackySpec) -> Result<DecisionReport, StackyError> {
    decide_stacky_with(a, b, quadforms::DEFAULT_MAX_GAUSS_DIM)
}

pub fn decide_stacky_with(a: &StackySpec, b: &StackySpec, max_dim: usize) -> Result<DecisionReport, StackyError> {
    let (ia, ib) = (glued_invariants_with(a, max_dim)?, glued_invariants_with(b, max_dim)?);
    let mut rep = decider::compare_orbit(&ia.orbit(), &ib.orbit());
    for (s, inv) in [(a, &ia), (b, &ib)] {
        if let Some(why) = &inv.arf_unavailable {
            rep.notes.push(format!("{s}: {why}"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator_cycles(5, 1), Ok((1, 5)));
        assert_eq!(commutator_cycles(4, 1), Ok((2, 2)));
        assert_eq!(commutator_cycles(7, -1), Ok((7, 1)));
        assert!(commutator_cycles(4, 2).is_err());
    }

    #[test]
    fn ring_5_1() {
        let inv = glued_invariants(&StackySpec::ring(vec![5], vec![1]).unwrap()).unwrap();
        assert_eq!((inv.genus, inv.boundary.clone()), (3, vec![(0, -10)]));
        assert_eq!(inv.arf, Some(0));
    }

    #[test]
    fn chain_with_unit_nodes() {
        let inv = glued_invariants(&StackySpec::chain(vec![0, 4, 0], vec![-1]).unwrap()).unwrap();
        assert_eq!(inv.genus, 0);
        assert_eq!(inv.boundary, vec![(0, -2), (0, -2), (0, -2), (0, -2), (0, 0), (0, 0)]);
    }

    #[test]
    fn parse_and_display() {
        let s = StackySpec::parse(StackyKind::Chain, "2,3,3,1;-1,-1").unwrap();
        assert_eq!(s.to_string(), "C(2,3,3,1;-1,-1)");
        assert!(StackySpec::parse(StackyKind::Ring, "7;").is_err());
        assert!(StackySpec::parse(StackyKind::Ring, "6;2").is_err());
    }

    #[test]
    fn seven_one_vs_seven_two() {
        let a = StackySpec::ring(vec![7], vec![1]).unwrap();
        let b = StackySpec::ring(vec![7], vec![2]).unwrap();
        assert!(decide_stacky(&a, &b).unwrap().is_equivalent());
    }

    #[test]
    fn unsupported_family_is_inconclusive() {
        let a = StackySpec::ring(vec![9], vec![4]).unwrap();
        let inv = glued_invariants(&a).unwrap();
        assert!(inv.arf.is_none() && inv.arf_unavailable.is_some());
        assert!(!decide_stacky(&a, &a).unwrap().is_equivalent());
    }
}
