//! Subcommands behind the `gentle` binary. Every command returns an exit
//! code and the text destined for standard output and standard error, so the
//! whole pipeline can be driven from tests without spawning processes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{self, GradedGentleAlgebra, RandomSpec};
use crate::decider::{self, DecideError, DecisionReport};
use crate::dsl::{self, AlgebraDocument, Diagnostic};
use crate::linefield::SurfaceAnalysis;
use crate::quadforms::{self, QuadError};
use crate::ribbon::{self, Corner};
use crate::stacky::{self, StackyKind, StackySpec};
use crate::threads::{ComponentType, ThreadSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Debug)]
pub enum Command {
    Validate { file: PathBuf },
    Invariants { file: PathBuf },
    Surface { file: PathBuf },
    Compare { first: PathBuf, second: PathBuf, aag: bool },
    Dual { file: PathBuf },
    /// Each side is `(kind, "r..;k..")` with kind `chain` or `ring`.
    Stacky { first: (String, String), second: (String, String) },
    Random { vertices: usize, max_degree: i64, proper: bool, smooth: bool },
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub json: bool,
    pub seed: u64,
    pub max_gauss_dim: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            seed: 0,
            max_gauss_dim: quadforms::DEFAULT_MAX_GAUSS_DIM,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub stops: usize,
    pub winding: i64,
}

/// Output of `invariants`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsReport {
    pub aag: Vec<[i64; 2]>,
    pub genus: i64,
    pub boundary: Vec<BoundaryEntry>,
    pub sigma: u8,
    pub gcd_invariant: Option<u64>,
    pub arf: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub name: String,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub smooth: bool,
    pub proper: bool,
    pub degree_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub stops: usize,
    pub winding: i64,
    /// Corner labels in boundary order: arrow names, or `stop:<thread>`.
    pub corners: Vec<String>,
    /// `I` or `II`, the combinatorial component read by this face.
    pub component: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub ribbon_vertices: usize,
    pub ribbon_edges: usize,
    pub euler: i64,
    pub genus: i64,
    pub stops: usize,
    pub faces: Vec<FaceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<Diagnostic>,
}

struct Failure {
    exit: i32,
    report: ErrorReport,
}

impl Failure {
    fn new(exit: i32, code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit,
            report: ErrorReport {
                code: code.into(),
                message: message.into(),
                diagnostics: Vec::new(),
            },
        }
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        let code = match e {
            DecideError::NotSmooth(_) => "E500",
            DecideError::NotProper(_) => "E501",
            DecideError::NotDegreeZero(_) => "E502",
            DecideError::LineField(..) => "E510",
        };
        Failure::new(EXIT_PRECONDITION, code, e.to_string())
    }
}

fn load(path: &Path) -> Result<(AlgebraDocument, GradedGentleAlgebra), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, "E400", format!("{}: {e}", path.display())))?;
    dsl::load(&text).map_err(|diagnostics| {
        let head = &diagnostics[0];
        Failure {
            exit: EXIT_INVALID,
            report: ErrorReport {
                code: head.code.clone(),
                message: format!("{}:{head}", path.display()),
                diagnostics,
            },
        }
    })
}

fn require_smooth(alg: &GradedGentleAlgebra) -> Result<ThreadSystem, Failure> {
    let sys = ThreadSystem::new(alg);
    match sys.smoothness_witness() {
        Some(c) => Err(Failure::new(
            EXIT_PRECONDITION,
            "E500",
            format!("not homologically smooth: forbidden cycle {}", c.label(alg)),
        )),
        None => Ok(sys),
    }
}

pub fn invariants_report(alg: &GradedGentleAlgebra, max_gauss_dim: usize) -> Result<InvariantsReport, String> {
    let sys = ThreadSystem::new(alg);
    let analysis = SurfaceAnalysis::new(alg).map_err(|e| e.to_string())?;
    let inv = analysis.orbit_invariants().map_err(|e| e.to_string())?;
    if let Some(a) = inv.arf {
        match analysis.arf_by_gauss(max_gauss_dim) {
            Ok(g) if g != a => return Err(format!("Arf invariant {a} disagrees with its Gauss sum {g}")),
            Ok(_) | Err(crate::linefield::LineFieldError::Quad(QuadError::TooLarge { .. })) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(InvariantsReport {
        aag: sys.aag_invariants().pairs().iter().map(|&(n, m)| [n, m]).collect(),
        genus: inv.genus,
        boundary: inv
            .boundary
            .iter()
            .map(|&(stops, winding)| BoundaryEntry { stops, winding })
            .collect(),
        sigma: inv.sigma,
        gcd_invariant: inv.gcd_invariant,
        arf: inv.arf,
    })
}

pub fn surface_report(alg: &GradedGentleAlgebra) -> Result<SurfaceReport, String> {
    let sys = ThreadSystem::new(alg);
    let (surface, matching) = ribbon::verify_surface(alg)?;
    let comps = sys.boundary_components();
    let r = &surface.ribbon;
    let faces = matching
        .pairs
        .iter()
        .map(|&(fi, ci)| {
            let face = &surface.faces[fi];
            FaceReport {
                stops: face.stops,
                winding: face.winding,
                corners: face
                    .corners
                    .iter()
                    .map(|&h| match r.corner(h) {
                        Corner::Arrow(a) => alg.quiver().arrow(a).name.clone(),
                        Corner::Stop(f) => format!("stop:{}", sys.forbidden_threads()[f].label(alg)),
                    })
                    .collect(),
                component: match comps[ci].ty {
                    ComponentType::I => "I",
                    ComponentType::II => "II",
                    ComponentType::IIPrime => "II'",
                }
                .into(),
            }
        })
        .collect();
    Ok(SurfaceReport {
        ribbon_vertices: r.vertex_count(),
        ribbon_edges: r.edge_count(),
        euler: surface.euler,
        genus: surface.genus,
        stops: surface.total_stops(),
        faces,
    })
}

fn emit<T: Serialize>(opts: &Options, value: &T, human: impl FnOnce(&T) -> String) -> String {
    if opts.json {
        serde_json::to_string_pretty(value).expect("serializable") + "\n"
    } else {
        human(value)
    }
}

fn human_decision(r: &DecisionReport) -> String {
    let mut s = format!("{}\n", r.verdict);
    for m in &r.matched {
        s.push_str(&format!("  matched: {m}\n"));
    }
    if let Some(m) = &r.mismatch {
        s.push_str(&format!("  mismatch: {m}\n"));
    }
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn stacky_spec((kind, text): &(String, String)) -> Result<StackySpec, Failure> {
    let kind = match kind.as_str() {
        "chain" => StackyKind::Chain,
        "ring" => StackyKind::Ring,
        other => return Err(Failure::new(EXIT_USAGE, "E600", format!("unknown surface kind {other:?}"))),
    };
    StackySpec::parse(kind, text).map_err(|e| Failure::new(EXIT_USAGE, "E600", e.to_string()))
}

fn execute(cmd: &Command, opts: &Options) -> Result<String, Failure> {
    Ok(match cmd {
        Command::Validate { file } => {
            let (doc, alg) = load(file)?;
            let sys = ThreadSystem::new(&alg);
            let rep = ValidateReport {
                name: doc.name.value.clone(),
                vertices: doc.vertices.len(),
                arrows: doc.arrows.len(),
                relations: doc.relations.len(),
                smooth: sys.is_smooth(),
                proper: sys.is_proper(),
                degree_zero: alg.is_degree_zero(),
            };
            emit(opts, &rep, |r| {
                format!(
                    "{}: valid gentle algebra, {} vertices, {} arrows, {} relations (smooth: {}, proper: {})\n",
                    r.name, r.vertices, r.arrows, r.relations, r.smooth, r.proper
                )
            })
        }
        Command::Invariants { file } => {
            let (_, alg) = load(file)?;
            require_smooth(&alg)?;
            let rep = invariants_report(&alg, opts.max_gauss_dim).map_err(|m| Failure::new(EXIT_INTERNAL, "E510", m))?;
            emit(opts, &rep, |r| {
                let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                format!(
                    "aag: {:?}\ngenus: {}\nboundary (stops, winding): {:?}\nsigma: {}\ngcd invariant: {}\narf: {}\n",
                    r.aag,
                    r.genus,
                    r.boundary.iter().map(|b| (b.stops, b.winding)).collect::<Vec<_>>(),
                    r.sigma,
                    opt(r.gcd_invariant.map(|x| x.to_string())),
                    opt(r.arf.map(|x| x.to_string())),
                )
            })
        }
        Command::Surface { file } => {
            let (_, alg) = load(file)?;
            require_smooth(&alg)?;
            let rep = surface_report(&alg).map_err(|m| Failure::new(EXIT_INTERNAL, "E520", m))?;
            emit(opts, &rep, |r| {
                let mut s = format!(
                    "ribbon graph: {} vertices, {} edges; euler {}; genus {}; {} stops\n",
                    r.ribbon_vertices, r.ribbon_edges, r.euler, r.genus, r.stops
                );
                for (i, f) in r.faces.iter().enumerate() {
                    s.push_str(&format!(
                        "  boundary {i} (type {}): stops {}, winding {}: {}\n",
                        f.component,
                        f.stops,
                        f.winding,
                        f.corners.join(" ")
                    ));
                }
                s
            })
        }
        Command::Compare { first, second, aag } => {
            let (_, a) = load(first)?;
            let (_, b) = load(second)?;
            let rep = if *aag {
                decider::compare_fd_by_aag(&a, &b)?
            } else {
                decider::compare_algebras(&a, &b)?
            };
            emit(opts, &rep, human_decision)
        }
        Command::Dual { file } => {
            let (doc, alg) = load(file)?;
            let dual = algebra::koszul_dual(&alg).map_err(|e| {
                let code = match e {
                    algebra::AlgebraError::NotDegreeZero => "E502",
                    _ => "E501",
                };
                Failure::new(EXIT_PRECONDITION, code, e.to_string())
            })?;
            let out = AlgebraDocument::from_algebra(&format!("{}_dual", doc.name.value), &dual);
            if opts.json {
                emit(opts, &out, |_| String::new())
            } else {
                dsl::serialize(&out)
            }
        }
        Command::Stacky { first, second } => {
            let (a, b) = (stacky_spec(first)?, stacky_spec(second)?);
            let rep = stacky::decide_stacky_with(&a, &b, opts.max_gauss_dim)
                .map_err(|e| Failure::new(EXIT_PRECONDITION, "E610", e.to_string()))?;
            emit(opts, &rep, human_decision)
        }
        Command::Random { vertices, max_degree, proper, smooth } => {
            let spec = RandomSpec::new(opts.seed, *vertices)
                .max_degree(*max_degree)
                .proper(*proper)
                .smooth(*smooth);
            let alg = algebra::random_gentle(&spec).map_err(|e| Failure::new(EXIT_PRECONDITION, "E700", e.to_string()))?;
            let doc = AlgebraDocument::from_algebra(&format!("random_{}", opts.seed), &alg);
            if opts.json {
                emit(opts, &doc, |_| String::new())
            } else {
                dsl::serialize(&doc)
            }
        }
    })
}

pub fn run(cmd: &Command, opts: &Options) -> Outcome {
    match execute(cmd, opts) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => {
            let stderr = match f.report.diagnostics.as_slice() {
                [] => format!("error[{}]: {}\n", f.report.code, f.report.message),
                ds => ds.iter().map(|d| format!("{d}\n")).collect(),
            };
            let stdout = if opts.json {
                serde_json::to_string_pretty(&serde_json::json!({ "error": f.report })).expect("serializable") + "\n"
            } else {
                String::new()
            };
            Outcome { code: f.exit, stdout, stderr }
        }
    }
}
