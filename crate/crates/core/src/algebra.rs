//! Graded gentle algebras.
//!
//! An algebra is a finite connected quiver, a set of length-two monomial
//! relations and an integer degree on every arrow. Relations are stored as
//! ordered pairs `(beta, alpha)` meaning that the path `beta alpha` (first
//! `alpha`, then `beta`) lies in the ideal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::threads::ThreadSystem;

pub type VertexIdx = usize;
pub type ArrowIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexIdx,
    pub target: VertexIdx,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexIdx) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowIdx) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexIdx> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<ArrowIdx> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows ending at `v`, in index order. A loop at `v` appears here and
    /// in [`Quiver::outgoing`].
    pub fn incoming(&self, v: VertexIdx) -> Vec<ArrowIdx> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].target == v)
            .collect()
    }

    pub fn outgoing(&self, v: VertexIdx) -> Vec<ArrowIdx> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == v)
            .collect()
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<Vec<VertexIdx>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x] = y;
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexIdx>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<VertexIdx>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// A validated graded gentle algebra. Construct through [`validate_gentle`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedGentleAlgebra {
    quiver: Quiver,
    relations: BTreeSet<(ArrowIdx, ArrowIdx)>,
    degrees: Vec<i64>,
}

impl GradedGentleAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Relation pairs `(beta, alpha)` with `beta alpha` in the ideal.
    pub fn relations(&self) -> &BTreeSet<(ArrowIdx, ArrowIdx)> {
        &self.relations
    }

    pub fn is_relation(&self, beta: ArrowIdx, alpha: ArrowIdx) -> bool {
        self.relations.contains(&(beta, alpha))
    }

    pub fn degree(&self, a: ArrowIdx) -> i64 {
        self.degrees[a]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Same algebra with one arrow regraded. Gradings never affect validity.
    pub fn with_degree(&self, a: ArrowIdx, degree: i64) -> Self {
        let mut out = self.clone();
        out.degrees[a] = degree;
        out
    }

    pub fn with_degrees(&self, degrees: Vec<i64>) -> Self {
        assert_eq!(degrees.len(), self.degrees.len());
        let mut out = self.clone();
        out.degrees = degrees;
        out
    }

    pub fn is_degree_zero(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    /// The name-based description of this algebra, accepted back by
    /// [`validate_gentle`].
    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .zip(&self.degrees)
                .map(|(a, &d)| RawArrow {
                    name: a.name.clone(),
                    source: self.quiver.vertices[a.source].clone(),
                    target: self.quiver.vertices[a.target].clone(),
                    degree: d,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(b, a)| {
                    (
                        self.quiver.arrows[b].name.clone(),
                        self.quiver.arrows[a].name.clone(),
                    )
                })
                .collect(),
        }
    }
}

/// Unvalidated, name-based algebra data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
    /// `(beta, alpha)` meaning `beta alpha` lies in the ideal.
    pub relations: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("the quiver has no vertices")]
    NoVertices,
    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("arrow `{0}` is declared twice")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("relation refers to undeclared arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation `{beta}.{alpha}` is listed twice")]
    DuplicateRelation { beta: String, alpha: String },
    #[error("relation `{beta}.{alpha}` is not composable: t({alpha}) != s({beta})")]
    NotComposable { beta: String, alpha: String },
    #[error("axiom 1: vertex `{vertex}` has {incoming} incoming and {outgoing} outgoing arrows")]
    TooManyArrows {
        vertex: String,
        incoming: usize,
        outgoing: usize,
    },
    #[error("axiom 3: arrow `{arrow}` has two relations on the {side} side: `{first}` and `{second}`")]
    AxiomThree {
        arrow: String,
        side: Side,
        first: String,
        second: String,
    },
    #[error("axiom 4: arrow `{arrow}` composes outside the ideal with both `{first}` and `{second}` on the {side} side")]
    AxiomFour {
        arrow: String,
        side: Side,
        first: String,
        second: String,
    },
    #[error("the quiver is disconnected: {components:?}")]
    Disconnected { components: Vec<Vec<String>> },
}

impl Violation {
    /// Number of the gentle axiom violated, if the violation is an axiom
    /// failure rather than a structural error.
    pub fn axiom(&self) -> Option<u8> {
        match self {
            Violation::TooManyArrows { .. } => Some(1),
            Violation::NotComposable { .. } => Some(2),
            Violation::AxiomThree { .. } => Some(3),
            Violation::AxiomFour { .. } => Some(4),
            _ => None,
        }
    }
}

/// Which neighbour of an arrow a violation is about: `after` means arrows
/// `beta` composed as `beta alpha`, `before` means `alpha beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Before,
    After,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Before => "source",
            Side::After => "target",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the algebra has a permitted cycle and is not proper")]
    NotProper,
    #[error("the algebra is not concentrated in degree 0")]
    NotDegreeZero,
    #[error("random generation with seed {seed} found no admissible algebra")]
    ExhaustedAttempts { seed: u64 },
    #[error("invalid generator bounds: {0}")]
    InvalidBounds(&'static str),
}

/// Checks the four gentle axioms and connectivity, collecting every
/// violation found.
pub fn validate_gentle(raw: &RawAlgebra) -> Result<GradedGentleAlgebra, ValidationError> {
    let mut violations = Vec::new();

    let mut vertex_ids: BTreeMap<&str, VertexIdx> = BTreeMap::new();
    let mut vertices = Vec::new();
    for name in &raw.vertices {
        if vertex_ids.contains_key(name.as_str()) {
            violations.push(Violation::DuplicateVertex(name.clone()));
            continue;
        }
        vertex_ids.insert(name, vertices.len());
        vertices.push(name.clone());
    }
    if vertices.is_empty() {
        violations.push(Violation::NoVertices);
    }

    let mut arrow_ids: BTreeMap<&str, ArrowIdx> = BTreeMap::new();
    let mut arrows = Vec::new();
    let mut degrees = Vec::new();
    for ra in &raw.arrows {
        if arrow_ids.contains_key(ra.name.as_str()) {
            violations.push(Violation::DuplicateArrow(ra.name.clone()));
            continue;
        }
        let mut endpoint = |name: &String| {
            let v = vertex_ids.get(name.as_str()).copied();
            if v.is_none() {
                violations.push(Violation::UnknownVertex {
                    arrow: ra.name.clone(),
                    vertex: name.clone(),
                });
            }
            v
        };
        let (s, t) = (endpoint(&ra.source), endpoint(&ra.target));
        if let (Some(source), Some(target)) = (s, t) {
            arrow_ids.insert(&ra.name, arrows.len());
            arrows.push(Arrow {
                name: ra.name.clone(),
                source,
                target,
            });
            degrees.push(ra.degree);
        }
    }

    let mut relations = BTreeSet::new();
    for (b, a) in &raw.relations {
        let lookup = |name: &String| arrow_ids.get(name.as_str()).copied();
        let (beta, alpha) = match (lookup(b), lookup(a)) {
            (Some(beta), Some(alpha)) => (beta, alpha),
            (bi, ai) => {
                if bi.is_none() {
                    violations.push(Violation::UnknownArrow(b.clone()));
                }
                if ai.is_none() {
                    violations.push(Violation::UnknownArrow(a.clone()));
                }
                continue;
            }
        };
        if arrows[beta].source != arrows[alpha].target {
            violations.push(Violation::NotComposable {
                beta: b.clone(),
                alpha: a.clone(),
            });
            continue;
        }
        if !relations.insert((beta, alpha)) {
            violations.push(Violation::DuplicateRelation {
                beta: b.clone(),
                alpha: a.clone(),
            });
        }
    }

    let quiver = Quiver { vertices, arrows };

    for v in 0..quiver.vertex_count() {
        let (i, o) = (quiver.incoming(v).len(), quiver.outgoing(v).len());
        if i > 2 || o > 2 {
            violations.push(Violation::TooManyArrows {
                vertex: quiver.vertices[v].clone(),
                incoming: i,
                outgoing: o,
            });
        }
    }

    let name = |a: ArrowIdx| quiver.arrows[a].name.clone();
    for alpha in 0..quiver.arrow_count() {
        // beta alpha with s(beta) = t(alpha)
        let after = quiver.outgoing(quiver.arrows[alpha].target);
        // alpha beta with t(beta) = s(alpha)
        let before = quiver.incoming(quiver.arrows[alpha].source);
        let checks: [(Side, &Vec<ArrowIdx>); 2] = [(Side::After, &after), (Side::Before, &before)];
        for (side, neighbours) in checks {
            let in_ideal = |beta: ArrowIdx| match side {
                Side::After => relations.contains(&(beta, alpha)),
                Side::Before => relations.contains(&(alpha, beta)),
            };
            let (inside, outside): (Vec<ArrowIdx>, Vec<ArrowIdx>) =
                neighbours.iter().partition(|&&beta| in_ideal(beta));
            if inside.len() > 1 {
                violations.push(Violation::AxiomThree {
                    arrow: name(alpha),
                    side,
                    first: name(inside[0]),
                    second: name(inside[1]),
                });
            }
            if outside.len() > 1 {
                violations.push(Violation::AxiomFour {
                    arrow: name(alpha),
                    side,
                    first: name(outside[0]),
                    second: name(outside[1]),
                });
            }
        }
    }

    if quiver.vertex_count() > 0 {
        let comps = quiver.components();
        if comps.len() > 1 {
            violations.push(Violation::Disconnected {
                components: comps
                    .iter()
                    .map(|c| c.iter().map(|&v| quiver.vertices[v].clone()).collect())
                    .collect(),
            });
        }
    }

    if violations.is_empty() {
        Ok(GradedGentleAlgebra {
            quiver,
            relations,
            degrees,
        })
    } else {
        Err(ValidationError { violations })
    }
}

/// Quadratic dual of a finite-dimensional algebra concentrated in degree 0.
///
/// Arrows keep their names and are reversed; a length-two path of the dual
/// lies in the dual ideal exactly when the corresponding path of `A` does
/// not. Every dual arrow has degree 1.
pub fn koszul_dual(a: &GradedGentleAlgebra) -> Result<GradedGentleAlgebra, AlgebraError> {
    if !a.is_degree_zero() {
        return Err(AlgebraError::NotDegreeZero);
    }
    if !ThreadSystem::new(a).is_proper() {
        return Err(AlgebraError::NotProper);
    }
    Ok(reverse_with_complement(a))
}

fn reverse_with_complement(a: &GradedGentleAlgebra) -> GradedGentleAlgebra {
    let q = &a.quiver;
    let arrows: Vec<Arrow> = q
        .arrows
        .iter()
        .map(|arr| Arrow {
            name: arr.name.clone(),
            source: arr.target,
            target: arr.source,
        })
        .collect();
    // beta alpha composable in A  <=>  alpha* beta* composable in the dual.
    let mut relations = BTreeSet::new();
    for alpha in 0..q.arrow_count() {
        for beta in q.outgoing(q.arrows[alpha].target) {
            if !a.relations.contains(&(beta, alpha)) {
                relations.insert((alpha, beta));
            }
        }
    }
    GradedGentleAlgebra {
        quiver: Quiver {
            vertices: q.vertices.clone(),
            arrows,
        },
        relations,
        degrees: vec![1; q.arrow_count()],
    }
}

/// Forgets the grading and dualises again; used to check that the quadratic
/// dual is an involution on ungraded data.
pub fn ungraded_double_dual(a: &GradedGentleAlgebra) -> GradedGentleAlgebra {
    let once = reverse_with_complement(a);
    let mut twice = reverse_with_complement(&once);
    twice.degrees = vec![0; twice.degrees.len()];
    twice
}

/// Parameters for [`random_gentle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_degree: i64,
    pub proper: bool,
    pub smooth: bool,
}

impl RandomSpec {
    pub fn new(seed: u64, max_vertices: usize) -> Self {
        RandomSpec {
            seed,
            max_vertices,
            max_degree: 0,
            proper: false,
            smooth: true,
        }
    }

    pub fn max_degree(mut self, d: i64) -> Self {
        self.max_degree = d;
        self
    }

    pub fn proper(mut self, yes: bool) -> Self {
        self.proper = yes;
        self
    }

    pub fn smooth(mut self, yes: bool) -> Self {
        self.smooth = yes;
        self
    }
}

const RANDOM_ATTEMPTS: usize = 20_000;

/// Samples a connected gentle algebra, rejecting until the requested
/// smoothness and properness flags hold. Deterministic in the seed.
pub fn random_gentle(spec: &RandomSpec) -> Result<GradedGentleAlgebra, AlgebraError> {
    if spec.max_vertices == 0 {
        return Err(AlgebraError::InvalidBounds("max_vertices must be at least 1"));
    }
    if spec.max_degree < 0 {
        return Err(AlgebraError::InvalidBounds("max_degree must be non-negative"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let Some(raw) = sample_raw(&mut rng, spec) else {
            continue;
        };
        let alg = validate_gentle(&raw).expect("sampler produces gentle data");
        let threads = ThreadSystem::new(&alg);
        if spec.smooth && !threads.is_smooth() {
            continue;
        }
        if spec.proper && !threads.is_proper() {
            continue;
        }
        return Ok(alg);
    }
    Err(AlgebraError::ExhaustedAttempts { seed: spec.seed })
}

fn sample_raw(rng: &mut ChaCha8Rng, spec: &RandomSpec) -> Option<RawAlgebra> {
    let n = rng.gen_range(1..=spec.max_vertices);
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut arrows: Vec<(usize, usize)> = Vec::new();

    for v in 1..n {
        let mut options = Vec::new();
        for u in 0..v {
            if outdeg[u] < 2 && indeg[v] < 2 {
                options.push((u, v));
            }
            if indeg[u] < 2 && outdeg[v] < 2 {
                options.push((v, u));
            }
        }
        let &(s, t) = options.choose(rng)?;
        outdeg[s] += 1;
        indeg[t] += 1;
        arrows.push((s, t));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if outdeg[s] < 2 && indeg[t] < 2 {
            outdeg[s] += 1;
            indeg[t] += 1;
            arrows.push((s, t));
        }
    }

    // At each vertex pick one of the two matchings between the (padded)
    // incoming and outgoing ports; real pairs of that matching are relations.
    let mut relations = Vec::new();
    for v in 0..n {
        let ins: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].1 == v).collect();
        let outs: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].0 == v).collect();
        let swap = rng.gen_bool(0.5);
        for (i, &alpha) in ins.iter().enumerate() {
            let j = if swap { 1 - i } else { i };
            if let Some(&beta) = outs.get(j) {
                relations.push((format!("a{}", beta + 1), format!("a{}", alpha + 1)));
            }
        }
    }

    Some(RawAlgebra {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| RawArrow {
                name: format!("a{}", i + 1),
                source: (s + 1).to_string(),
                target: (t + 1).to_string(),
                degree: rng.gen_range(-spec.max_degree..=spec.max_degree),
            })
            .collect(),
        relations,
    })
}
