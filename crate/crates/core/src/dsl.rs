//! The `.gentle` text format.
//!
//! ```text
//! # Kronecker-like example with one relation
//! algebra ex1
//! vertices 1 2 3 4
//! arrow a : 1 -> 2
//! arrow d : 1 -> 2
//! arrow b : 2 -> 3 deg -1
//! arrow c : 3 -> 4
//! rel b.d
//! ```
//!
//! `rel b.d` puts the composite "first `d`, then `b`" in the ideal. Degrees
//! default to 0. Layout is free; `#` starts a comment running to the end of
//! the line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{self, GradedGentleAlgebra, RawAlgebra, RawArrow, Violation};

const KEYWORDS: [&str; 5] = ["algebra", "vertices", "arrow", "rel", "deg"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub offset: usize,
    pub len: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
}

/// A value with the place it was written. Equality ignores the place, so two
/// documents compare equal when they say the same thing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T> Spanned<T> {
    fn new(value: T, span: Span) -> Self {
        Spanned { value, span }
    }

    fn bare(value: T) -> Self {
        Spanned { value, span: Span::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDecl {
    pub id: Spanned<String>,
    pub source: Spanned<String>,
    pub target: Spanned<String>,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDecl {
    /// Applied second.
    pub beta: Spanned<String>,
    /// Applied first.
    pub alpha: Spanned<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: Spanned<String>,
    pub vertices: Vec<Spanned<String>>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    SyntaxError,
    DuplicateId,
    UnknownReference,
    NotComposable,
    DuplicateRelation,
    GentleAxiom,
    Disconnected,
}

impl DiagnosticKind {
    /// Stable code printed with every diagnostic.
    pub fn code(self) -> &'static str {
        match self {
            DiagnosticKind::SyntaxError => "E100",
            DiagnosticKind::DuplicateId => "E200",
            DiagnosticKind::UnknownReference => "E201",
            DiagnosticKind::NotComposable => "E202",
            DiagnosticKind::DuplicateRelation => "E203",
            DiagnosticKind::GentleAxiom => "E300",
            DiagnosticKind::Disconnected => "E310",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: String,
    pub kind: DiagnosticKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Non-empty for syntax errors only.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub expected: Vec<String>,
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code: kind.code().to_string(),
            kind,
            line: span.line,
            column: span.column,
            message: message.into(),
            expected: Vec::new(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: error[{}]: {}", self.line, self.column, self.code, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    To,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) if KEYWORDS.contains(&w.as_str()) => format!("keyword `{w}`"),
            Tok::Word(w) => format!("`{w}`"),
            Tok::Colon => "`:`".into(),
            Tok::To => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, Diagnostic> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let start = Span { offset: i, len: 0, line, column: col };
        let mut take = |it: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        match c {
            '#' => {
                while it.peek().is_some_and(|&(_, c)| c != '\n') {
                    take(&mut it);
                }
            }
            c if c.is_whitespace() => take(&mut it),
            ':' | '.' => {
                take(&mut it);
                let tok = if c == ':' { Tok::Colon } else { Tok::Dot };
                out.push((tok, Span { len: 1, ..start }));
            }
            '-' => {
                take(&mut it);
                match it.peek() {
                    Some(&(_, '>')) => {
                        take(&mut it);
                        out.push((Tok::To, Span { len: 2, ..start }));
                    }
                    Some(&(_, d)) if d.is_ascii_digit() => {
                        let mut w = String::from("-");
                        while let Some(&(_, d)) = it.peek().filter(|&&(_, d)| is_word_char(d)) {
                            w.push(d);
                            take(&mut it);
                        }
                        out.push((Tok::Word(w.clone()), Span { len: w.len(), ..start }));
                    }
                    _ => {
                        let mut d = Diagnostic::new(DiagnosticKind::SyntaxError, start, "stray `-`");
                        d.expected = vec!["`->`".into(), "integer".into()];
                        return Err(d);
                    }
                }
            }
            c if is_word_char(c) => {
                let mut w = String::new();
                while let Some(&(_, d)) = it.peek().filter(|&&(_, d)| is_word_char(d)) {
                    w.push(d);
                    take(&mut it);
                }
                out.push((Tok::Word(w.clone()), Span { len: w.len(), ..start }));
            }
            other => {
                return Err(Diagnostic::new(
                    DiagnosticKind::SyntaxError,
                    Span { len: other.len_utf8(), ..start },
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    out.push((Tok::Eof, Span { offset: text.len(), len: 0, line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Diagnostic {
        let (tok, span) = self.peek();
        let mut d = Diagnostic::new(DiagnosticKind::SyntaxError, *span, format!("unexpected {}", tok.describe()));
        d.expected = expected.iter().map(|s| s.to_string()).collect();
        d
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().0, Tok::Word(w) if w == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        if self.at_keyword(kw) {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    fn at_ident(&self) -> bool {
        matches!(&self.peek().0, Tok::Word(w) if !KEYWORDS.contains(&w.as_str()) && !w.starts_with('-'))
    }

    fn ident(&mut self, what: &str) -> Result<Spanned<String>, Diagnostic> {
        if self.at_ident() {
            match self.bump() {
                (Tok::Word(w), span) => Ok(Spanned::new(w, span)),
                _ => unreachable!(),
            }
        } else {
            Err(self.error(&[what]))
        }
    }

    fn punct(&mut self, tok: Tok) -> Result<(), Diagnostic> {
        if self.peek().0 == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn document(&mut self) -> Result<AlgebraDocument, Diagnostic> {
        self.keyword("algebra")?;
        let name = self.ident("algebra name")?;
        self.keyword("vertices")?;
        let mut vertices = vec![self.ident("vertex id")?];
        while self.at_ident() {
            vertices.push(self.ident("vertex id")?);
        }
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        loop {
            if self.at_keyword("arrow") {
                self.bump();
                let id = self.ident("arrow id")?;
                self.punct(Tok::Colon)?;
                let source = self.ident("vertex id")?;
                self.punct(Tok::To)?;
                let target = self.ident("vertex id")?;
                let mut degree = 0;
                if self.at_keyword("deg") {
                    self.bump();
                    degree = match self.peek() {
                        (Tok::Word(w), _) if w.parse::<i64>().is_ok() => w.parse().unwrap(),
                        _ => return Err(self.error(&["integer"])),
                    };
                    self.bump();
                }
                arrows.push(ArrowDecl { id, source, target, degree });
            } else if self.at_keyword("rel") {
                self.bump();
                let beta = self.ident("arrow id")?;
                self.punct(Tok::Dot)?;
                let alpha = self.ident("arrow id")?;
                relations.push(RelationDecl { beta, alpha });
            } else if self.peek().0 == Tok::Eof {
                break;
            } else {
                let mut expected = vec!["`arrow`", "`rel`", "end of input"];
                if arrows.is_empty() && relations.is_empty() {
                    expected.insert(0, "vertex id");
                } else if matches!(self.toks[self.pos - 1].0, Tok::Word(_))
                    && arrows.last().is_some_and(|a| a.target.span == self.toks[self.pos - 1].1)
                {
                    expected.insert(0, "`deg`");
                }
                return Err(self.error(&expected));
            }
        }
        Ok(AlgebraDocument { name, vertices, arrows, relations })
    }
}

/// Parses the surface syntax only; see [`check`] for name resolution.
pub fn parse(text: &str) -> Result<AlgebraDocument, Diagnostic> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.document()
}

/// Resolves names: duplicate ids, unknown references, non-composable
/// relations. Every problem found is reported.
pub fn check(doc: &AlgebraDocument) -> Vec<Diagnostic> {
    use DiagnosticKind::*;
    let mut out = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in &doc.vertices {
        if !vertices.insert(v.value.as_str()) {
            out.push(Diagnostic::new(DuplicateId, v.span, format!("vertex `{}` is declared twice", v.value)));
        }
    }
    let mut arrows: BTreeMap<&str, &ArrowDecl> = BTreeMap::new();
    for a in &doc.arrows {
        if arrows.insert(a.id.value.as_str(), a).is_some() {
            out.push(Diagnostic::new(DuplicateId, a.id.span, format!("arrow `{}` is declared twice", a.id.value)));
        }
        for end in [&a.source, &a.target] {
            if !vertices.contains(end.value.as_str()) {
                out.push(Diagnostic::new(UnknownReference, end.span, format!("undeclared vertex `{}`", end.value)));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for r in &doc.relations {
        let (b, a) = (arrows.get(r.beta.value.as_str()), arrows.get(r.alpha.value.as_str()));
        for (name, found) in [(&r.beta, b), (&r.alpha, a)] {
            if found.is_none() {
                out.push(Diagnostic::new(UnknownReference, name.span, format!("undeclared arrow `{}`", name.value)));
            }
        }
        if let (Some(b), Some(a)) = (b, a) {
            if a.target.value != b.source.value {
                out.push(Diagnostic::new(
                    NotComposable,
                    r.beta.span,
                    format!(
                        "`{}.{}` is not composable: `{}` ends at `{}` but `{}` starts at `{}`",
                        r.beta.value, r.alpha.value, r.alpha.value, a.target.value, r.beta.value, b.source.value
                    ),
                ));
            }
        }
        if !seen.insert((&r.beta.value, &r.alpha.value)) {
            out.push(Diagnostic::new(
                DuplicateRelation,
                r.beta.span,
                format!("relation `{}.{}` is listed twice", r.beta.value, r.alpha.value),
            ));
        }
    }
    out
}

impl AlgebraDocument {
    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            vertices: self.vertices.iter().map(|v| v.value.clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    name: a.id.value.clone(),
                    source: a.source.value.clone(),
                    target: a.target.value.clone(),
                    degree: a.degree,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| (r.beta.value.clone(), r.alpha.value.clone()))
                .collect(),
        }
    }

    pub fn from_algebra(name: &str, alg: &GradedGentleAlgebra) -> Self {
        let raw = alg.to_raw();
        AlgebraDocument {
            name: Spanned::bare(name.to_string()),
            vertices: raw.vertices.into_iter().map(Spanned::bare).collect(),
            arrows: raw
                .arrows
                .into_iter()
                .map(|a| ArrowDecl {
                    id: Spanned::bare(a.name),
                    source: Spanned::bare(a.source),
                    target: Spanned::bare(a.target),
                    degree: a.degree,
                })
                .collect(),
            relations: raw
                .relations
                .into_iter()
                .map(|(b, a)| RelationDecl { beta: Spanned::bare(b), alpha: Spanned::bare(a) })
                .collect(),
        }
    }

    fn vertex_span(&self, name: &str) -> Span {
        self.vertices.iter().find(|v| v.value == name).map(|v| v.span).unwrap_or_default()
    }

    fn arrow_span(&self, name: &str) -> Span {
        self.arrows.iter().find(|a| a.id.value == name).map(|a| a.id.span).unwrap_or_default()
    }

    /// Name resolution followed by the gentle axioms; violations come back
    /// as diagnostics pointing at the offending declaration.
    pub fn build(&self) -> Result<GradedGentleAlgebra, Vec<Diagnostic>> {
        let found = check(self);
        if !found.is_empty() {
            return Err(found);
        }
        algebra::validate_gentle(&self.to_raw()).map_err(|e| {
            e.violations
                .iter()
                .map(|v| {
                    let span = match v {
                        Violation::TooManyArrows { vertex, .. } => self.vertex_span(vertex),
                        Violation::AxiomThree { arrow, .. } | Violation::AxiomFour { arrow, .. } => {
                            self.arrow_span(arrow)
                        }
                        Violation::Disconnected { components } => {
                            self.vertex_span(&components.last().and_then(|c| c.first()).cloned().unwrap_or_default())
                        }
                        _ => self.name.span,
                    };
                    let kind = match v {
                        Violation::Disconnected { .. } => DiagnosticKind::Disconnected,
                        _ => DiagnosticKind::GentleAxiom,
                    };
                    Diagnostic::new(kind, span, v.to_string())
                })
                .collect()
        })
    }
}

/// Canonical text: one declaration per line, zero degrees omitted.
pub fn serialize(doc: &AlgebraDocument) -> String {
    let mut s = format!("algebra {}\nvertices", doc.name.value);
    for v in &doc.vertices {
        s.push(' ');
        s.push_str(&v.value);
    }
    s.push('\n');
    for a in &doc.arrows {
        s.push_str(&format!("arrow {} : {} -> {}", a.id.value, a.source.value, a.target.value));
        if a.degree != 0 {
            s.push_str(&format!(" deg {}", a.degree));
        }
        s.push('\n');
    }
    for r in &doc.relations {
        s.push_str(&format!("rel {}.{}\n", r.beta.value, r.alpha.value));
    }
    s
}

/// Parse, resolve and validate in one go.
pub fn load(text: &str) -> Result<(AlgebraDocument, GradedGentleAlgebra), Vec<Diagnostic>> {
    let doc = parse(text).map_err(|d| vec![d])?;
    let alg = doc.build()?;
    Ok((doc, alg))
}
