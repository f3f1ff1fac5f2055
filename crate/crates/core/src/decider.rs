//! Sufficient criteria for derived equivalence.
//!
//! The verdict is either `Equivalent` or `Inconclusive`; the latter never
//! claims non-equivalence.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GradedGentleAlgebra;
use crate::lattice;
use crate::linefield::{LineFieldError, OrbitInvariants, SurfaceAnalysis};
use crate::threads::{AagInvariant, ThreadSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Equivalent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "EQUIVALENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub matched: Vec<String>,
    pub mismatch: Option<String>,
    /// Which of sigma / gcd / Arf were consulted, and why others were not.
    pub notes: Vec<String>,
}

impl DecisionReport {
    fn new() -> Self {
        DecisionReport {
            verdict: Verdict::Equivalent,
            matched: Vec::new(),
            mismatch: None,
            notes: Vec::new(),
        }
    }

    fn fail(mut self, what: impl Into<String>) -> Self {
        self.verdict = Verdict::Inconclusive;
        self.mismatch = Some(what.into());
        self
    }

    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("{0:?} algebra is not homologically smooth")]
    NotSmooth(Side),
    #[error("{0:?} algebra is not proper")]
    NotProper(Side),
    #[error("{0:?} algebra is not concentrated in degree 0")]
    NotDegreeZero(Side),
    #[error("{1:?} algebra: {0}")]
    LineField(LineFieldError, Side),
}

/// Whether the Arf invariant is part of the orbit data for these
/// invariants: genus at least 2, every `w + 2` divisible by 4, `sigma = 0`.
pub fn arf_required(inv: &OrbitInvariants) -> bool {
    inv.genus >= 2 && inv.sigma == 0 && inv.boundary.iter().all(|&(_, w)| (w + 2).rem_euclid(4) == 0)
}

/// Matches two invariant tuples: genus, boundary `(stops, winding)`
/// multiset, then `gcd` (genus 1) or `sigma` and Arf (genus at least 2).
pub fn compare_orbit(a: &OrbitInvariants, b: &OrbitInvariants) -> DecisionReport {
    let mut rep = DecisionReport::new();
    if a.genus != b.genus {
        return rep.fail(format!("genus {} vs {}", a.genus, b.genus));
    }
    rep.matched.push(format!("genus {}", a.genus));
    let (mut ba, mut bb) = (a.boundary.clone(), b.boundary.clone());
    ba.sort_unstable();
    bb.sort_unstable();
    if ba != bb {
        return rep.fail(format!("boundary multiset {ba:?} vs {bb:?}"));
    }
    rep.matched.push(format!("boundary {ba:?}"));
    match a.genus {
        0 => rep.notes.push("genus 0: boundary data suffice".into()),
        1 => match (a.gcd_invariant, b.gcd_invariant) {
            (Some(x), Some(y)) if x == y => rep.matched.push(format!("gcd invariant {x}")),
            (Some(x), Some(y)) => return rep.fail(format!("gcd invariant {x} vs {y}")),
            _ => return rep.fail("gcd invariant unavailable"),
        },
        _ => {
            if a.sigma != b.sigma {
                return rep.fail(format!("sigma {} vs {}", a.sigma, b.sigma));
            }
            rep.matched.push(format!("sigma {}", a.sigma));
            if arf_required(a) {
                match (a.arf, b.arf) {
                    (Some(x), Some(y)) if x == y => rep.matched.push(format!("arf {x}")),
                    (Some(x), Some(y)) => return rep.fail(format!("arf {x} vs {y}")),
                    _ => return rep.fail("arf invariant unavailable"),
                }
            } else {
                rep.notes.push("Arf invariant not applicable".into());
            }
        }
    }
    rep
}

pub fn compare_algebras(a: &GradedGentleAlgebra, b: &GradedGentleAlgebra) -> Result<DecisionReport, DecideError> {
    let inv = |alg: &GradedGentleAlgebra, side| -> Result<OrbitInvariants, DecideError> {
        if !ThreadSystem::new(alg).is_smooth() {
            return Err(DecideError::NotSmooth(side));
        }
        SurfaceAnalysis::new(alg)
            .and_then(|s| s.orbit_invariants())
            .map_err(|e| DecideError::LineField(e, side))
    };
    let ia = inv(a, Side::First)?;
    let ib = inv(b, Side::Second)?;
    Ok(compare_orbit(&ia, &ib))
}

/// Which of the AAG-only cases applies to a multiset, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AagCase {
    /// `sum (n - m + 2) = 4`.
    A,
    /// `sum = 0` and `gcd(n_i - m_i + 2) = 1`.
    B,
    /// `sum < 0` and some `n_i - m_i` odd.
    C,
}

pub fn aag_case(aag: &AagInvariant) -> Option<AagCase> {
    let s = aag.genus_sum();
    let pairs = aag.pairs();
    if s == 4 {
        Some(AagCase::A)
    } else if s == 0 && pairs.iter().fold(0, |g, &(n, m)| lattice::gcd(g, n - m + 2)) == 1 {
        Some(AagCase::B)
    } else if s < 0 && pairs.iter().any(|&(n, m)| (n - m).rem_euclid(2) == 1) {
        Some(AagCase::C)
    } else {
        None
    }
}

pub fn compare_by_aag(a: &AagInvariant, b: &AagInvariant) -> DecisionReport {
    let mut rep = DecisionReport::new();
    let (mut pa, mut pb) = (a.pairs().to_vec(), b.pairs().to_vec());
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return rep.fail(format!("AAG multiset {pa:?} vs {pb:?}"));
    }
    rep.matched.push(format!("AAG {pa:?}"));
    match aag_case(a) {
        Some(c) => {
            rep.notes.push(format!("case {c:?}"));
            rep
        }
        None => rep.fail(format!("no AAG-only case applies (sum {})", a.genus_sum())),
    }
}

/// AAG comparison for finite-dimensional algebras in degree 0.
pub fn compare_fd_by_aag(a: &GradedGentleAlgebra, b: &GradedGentleAlgebra) -> Result<DecisionReport, DecideError> {
    for (alg, side) in [(a, Side::First), (b, Side::Second)] {
        if !ThreadSystem::new(alg).is_proper() {
            return Err(DecideError::NotProper(side));
        }
        if !alg.is_degree_zero() {
            return Err(DecideError::NotDegreeZero(side));
        }
    }
    Ok(compare_by_aag(
        &ThreadSystem::new(a).aag_invariants(),
        &ThreadSystem::new(b).aag_invariants(),
    ))
}
