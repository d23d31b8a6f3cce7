//! Input documents.
//!
//! A document is a sequence of statements. A statement ends at `;` or at a
//! newline outside parentheses; `#` starts a comment that runs to the end of
//! the line. See `docs/input-format.md` for the full grammar.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use relsing::poly::{parse_expression, ARC_PARAMETER, DEFORMATION_PARAMETER};
use relsing::{
    Deformation, PolyRing, Polynomial, Rational, SampleSet, VarietyGerm, VectorField, WeightSystem,
};

/// 1-based line and column (columns count characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    DuplicateName,
    UnresolvedReference,
    ReservedName,
    /// Well-formed but mathematically invalid declaration, such as a vector
    /// field that is not tangent to its variety.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            location,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for Diagnostic {}

type Parsed<T> = Result<T, Diagnostic>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectKind {
    Variable,
    Parameter,
    Weights,
    Polynomial,
    VectorField,
    Variety,
    Deformation,
    Arc,
    Samples,
    Point,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectKind::Variable => "a ring variable",
            ObjectKind::Parameter => "a parameter",
            ObjectKind::Weights => "a weight system",
            ObjectKind::Polynomial => "a polynomial",
            ObjectKind::VectorField => "a vector field",
            ObjectKind::Variety => "a variety",
            ObjectKind::Deformation => "a deformation",
            ObjectKind::Arc => "an arc",
            ObjectKind::Samples => "a sample set",
            ObjectKind::Point => "a point",
        })
    }
}

/// An arc in the parameter `s`. The truncation order falls back to the
/// command-line default when not given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDecl {
    pub components: Vec<Polynomial>,
    pub trunc: Option<u32>,
}

#[derive(Debug, Clone, Default)]
pub struct InputDocument {
    ring: Option<Arc<PolyRing>>,
    names: BTreeMap<String, (ObjectKind, Location)>,
    params: Vec<(String, Option<Rational>)>,
    weights: BTreeMap<String, WeightSystem>,
    polys: BTreeMap<String, Polynomial>,
    fields: Vec<(String, VectorField)>,
    varieties: BTreeMap<String, VarietyGerm>,
    deformations: BTreeMap<String, Deformation>,
    arcs: BTreeMap<String, ArcDecl>,
    samples: BTreeMap<String, SampleSet>,
    points: BTreeMap<String, Vec<Rational>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Parsed<Self> {
        Self::parse_with(text, &BTreeMap::new())
    }

    /// Parses `text`, replacing parameter values by `overrides` where given.
    /// Override names that are not declared are ignored.
    pub fn parse_with(text: &str, overrides: &BTreeMap<String, Rational>) -> Parsed<Self> {
        let mut doc = InputDocument::default();
        for st in split_statements(text)? {
            doc.statement(&st, overrides)?;
        }
        Ok(doc)
    }

    pub fn ring(&self) -> Option<&Arc<PolyRing>> {
        self.ring.as_ref()
    }

    pub fn kind_of(&self, name: &str) -> Option<ObjectKind> {
        self.names.get(name).map(|(k, _)| *k)
    }

    /// Declared parameters in order, with their values after overrides.
    pub fn parameters(&self) -> &[(String, Option<Rational>)] {
        &self.params
    }

    pub fn parameter(&self, name: &str) -> Option<&Option<Rational>> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn weights(&self, name: &str) -> Option<&WeightSystem> {
        self.weights.get(name)
    }

    pub fn polynomial(&self, name: &str) -> Option<&Polynomial> {
        self.polys.get(name)
    }

    pub fn polynomials(&self) -> &BTreeMap<String, Polynomial> {
        &self.polys
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Vector fields in declaration order.
    pub fn fields(&self) -> &[(String, VectorField)] {
        &self.fields
    }

    pub fn variety(&self, name: &str) -> Option<&VarietyGerm> {
        self.varieties.get(name)
    }

    pub fn deformation(&self, name: &str) -> Option<&Deformation> {
        self.deformations.get(name)
    }

    pub fn deformations(&self) -> &BTreeMap<String, Deformation> {
        &self.deformations
    }

    pub fn arc(&self, name: &str) -> Option<&ArcDecl> {
        self.arcs.get(name)
    }

    pub fn sample_set(&self, name: &str) -> Option<&SampleSet> {
        self.samples.get(name)
    }

    pub fn point(&self, name: &str) -> Option<&[Rational]> {
        self.points.get(name).map(Vec::as_slice)
    }

    /// Parses a constant expression over the parameters.
    pub fn constant(&self, text: &str) -> Result<Rational, String> {
        let st = Statement::detached(text);
        let ring = empty_ring();
        self.constant_expr(&st, 0, text, &ring)
            .map_err(|d| d.message)
    }

    fn statement(&mut self, st: &Statement, overrides: &BTreeMap<String, Rational>) -> Parsed<()> {
        let mut cur = Cursor::new(st);
        let (keyword, at) = cur.ident()?;
        match keyword.as_str() {
            "ring" => self.ring_statement(&mut cur),
            "param" => self.param_statement(&mut cur, overrides),
            "weights" => self.weights_statement(&mut cur),
            "poly" => {
                let (name, loc) = self.head(&mut cur)?;
                let ring = self.require_ring(st.loc(at))?;
                let (start, text) = cur.rest()?;
                let p = self.expr(st, start, text, &ring, true)?;
                self.declare(&name, ObjectKind::Polynomial, loc)?;
                self.polys.insert(name, p);
                Ok(())
            }
            "vfield" => {
                let (name, loc) = self.head(&mut cur)?;
                let ring = self.require_ring(st.loc(at))?;
                let (start, inner) = cur.group()?;
                cur.finish()?;
                let comps = self.expr_list(st, start, inner, &ring, true)?;
                let xi = VectorField::new(&ring, comps).map_err(|e| invalid(st, start, e))?;
                self.declare(&name, ObjectKind::VectorField, loc)?;
                self.fields.push((name, xi));
                Ok(())
            }
            "variety" => self.variety_statement(&mut cur),
            "deform" => {
                let (name, loc) = self.head(&mut cur)?;
                let ring = self.require_ring(st.loc(at))?;
                let tring = ring.with_deformation_parameter().map_err(|e| invalid(st, at, e))?;
                let (start, text) = cur.rest()?;
                let family = self.expr(st, start, text, &tring, true)?;
                let d = Deformation::new(&ring, family).map_err(|e| invalid(st, start, e))?;
                self.declare(&name, ObjectKind::Deformation, loc)?;
                self.deformations.insert(name, d);
                Ok(())
            }
            "arc" => self.arc_statement(&mut cur),
            "samples" => {
                let (name, loc) = self.head(&mut cur)?;
                let (start, text) = cur.rest()?;
                let ring = empty_ring();
                let values = split_top(st, start, text)?
                    .into_iter()
                    .map(|(s, item)| self.constant_expr(st, s, item, &ring))
                    .collect::<Parsed<Vec<_>>>()?;
                let set = SampleSet::new(values).map_err(|e| invalid(st, start, e))?;
                self.declare(&name, ObjectKind::Samples, loc)?;
                self.samples.insert(name, set);
                Ok(())
            }
            "point" => {
                let (name, loc) = self.head(&mut cur)?;
                let ring = self.require_ring(st.loc(at))?;
                let (start, inner) = cur.group()?;
                cur.finish()?;
                let empty = empty_ring();
                let coords = split_top(st, start, inner)?
                    .into_iter()
                    .map(|(s, item)| self.constant_expr(st, s, item, &empty))
                    .collect::<Parsed<Vec<_>>>()?;
                if coords.len() != ring.nvars() {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Invalid,
                        st.loc(start),
                        format!("point has {} coordinates, ring has {} variables", coords.len(), ring.nvars()),
                    ));
                }
                self.declare(&name, ObjectKind::Point, loc)?;
                self.points.insert(name, coords);
                Ok(())
            }
            other => Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                st.loc(at),
                format!(
                    "unknown statement `{other}`; expected ring, param, weights, poly, vfield, variety, deform, arc, samples or point"
                ),
            )),
        }
    }

    fn ring_statement(&mut self, cur: &mut Cursor) -> Parsed<()> {
        let st = cur.st;
        if let Some((_, first)) = self
            .names
            .values()
            .find(|(k, _)| *k == ObjectKind::Variable)
        {
            return Err(Diagnostic::new(
                DiagnosticKind::DuplicateName,
                st.loc(0),
                format!("the ring is already declared at {first}"),
            ));
        }
        let (start, text) = cur.rest()?;
        let mut vars = Vec::new();
        for (s, item) in split_top(st, start, text)? {
            let mut c = Cursor { st, pos: s };
            let (name, at) = c.ident()?;
            if c.pos < s + item.len() {
                return Err(syntax(st, c.pos, "expected `,` between variable names"));
            }
            self.declare(&name, ObjectKind::Variable, st.loc(at))?;
            vars.push(name);
        }
        self.ring = Some(PolyRing::new(&vars).map_err(|e| invalid(st, start, e))?);
        Ok(())
    }

    fn param_statement(
        &mut self,
        cur: &mut Cursor,
        overrides: &BTreeMap<String, Rational>,
    ) -> Parsed<()> {
        let st = cur.st;
        let (name, at) = cur.ident()?;
        let declared = if cur.at_end() {
            None
        } else {
            cur.expect('=')?;
            let (start, text) = cur.rest()?;
            Some(self.constant_expr(st, start, text, &empty_ring())?)
        };
        self.declare(&name, ObjectKind::Parameter, st.loc(at))?;
        let value = overrides.get(&name).cloned().or(declared);
        self.params.push((name, value));
        Ok(())
    }

    fn weights_statement(&mut self, cur: &mut Cursor) -> Parsed<()> {
        let st = cur.st;
        let at = cur.pos;
        let (name, loc) = self.head(cur)?;
        let ring = self.require_ring(st.loc(at))?;
        let (start, inner) = cur.group()?;
        let mut weights = Vec::new();
        for (s, item) in split_top(st, start, inner)? {
            weights.push(integer(st, s, item)?);
        }
        let degree = if cur.at_end() {
            None
        } else {
            cur.keyword("degree")?;
            let (s, text) = cur.rest()?;
            Some(integer(st, s, text)?)
        };
        if weights.len() != ring.nvars() {
            return Err(Diagnostic::new(
                DiagnosticKind::Invalid,
                st.loc(start),
                format!("{} weights for {} variables", weights.len(), ring.nvars()),
            ));
        }
        let weights = weights
            .into_iter()
            .map(|w| u32::try_from(w).map_err(|_| syntax(st, start, "weight out of range")))
            .collect::<Parsed<Vec<_>>>()?;
        let w = WeightSystem::new(weights, degree).map_err(|e| invalid(st, start, e))?;
        self.declare(&name, ObjectKind::Weights, loc)?;
        self.weights.insert(name, w);
        Ok(())
    }

    fn variety_statement(&mut self, cur: &mut Cursor) -> Parsed<()> {
        let st = cur.st;
        let at = cur.pos;
        let (name, loc) = self.head(cur)?;
        let ring = self.require_ring(st.loc(at))?;
        let (word, word_at) = cur.ident()?;
        let v = match word.as_str() {
            "space" => {
                cur.finish()?;
                VarietyGerm::whole_space(&ring)
            }
            "equations" => {
                let (start, inner) = cur.group()?;
                let equations = self.expr_list(st, start, inner, &ring, true)?;
                cur.keyword("fields")?;
                let (fstart, finner) = cur.group()?;
                cur.finish()?;
                let mut fields = Vec::new();
                for (s, item) in split_top(st, fstart, finner)? {
                    let mut c = Cursor { st, pos: s };
                    let (fname, fat) = c.ident()?;
                    if c.pos < s + item.len() {
                        return Err(syntax(st, c.pos, "expected a vector field name"));
                    }
                    match self.field(&fname) {
                        Some(xi) => fields.push(xi.clone()),
                        None => return Err(self.unresolved(st, fat, &fname, "a vector field")),
                    }
                }
                VarietyGerm::new(&ring, equations, fields).map_err(|e| invalid(st, word_at, e))?
            }
            _ => {
                return Err(syntax(
                    st,
                    word_at,
                    "expected `space` or `equations(...) fields(...)`",
                ))
            }
        };
        self.declare(&name, ObjectKind::Variety, loc)?;
        self.varieties.insert(name, v);
        Ok(())
    }

    fn arc_statement(&mut self, cur: &mut Cursor) -> Parsed<()> {
        let st = cur.st;
        let (name, loc) = self.head(cur)?;
        let (start, inner) = cur.group()?;
        let ring = arc_ring();
        let components = self.expr_list(st, start, inner, &ring, false)?;
        for (c, (s, _)) in components.iter().zip(split_top(st, start, inner)?) {
            if !is_zero(&c.constant_term()) {
                return Err(Diagnostic::new(
                    DiagnosticKind::Invalid,
                    st.loc(s),
                    "arc component does not vanish at s = 0",
                ));
            }
        }
        let trunc = if cur.at_end() {
            None
        } else {
            cur.keyword("trunc")?;
            let (s, text) = cur.rest()?;
            let n = integer(st, s, text)?;
            match u32::try_from(n) {
                Ok(n) if n >= 1 => Some(n),
                _ => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Invalid,
                        st.loc(s),
                        "truncation order must be positive",
                    ))
                }
            }
        };
        self.declare(&name, ObjectKind::Arc, loc)?;
        self.arcs.insert(name, ArcDecl { components, trunc });
        Ok(())
    }

    /// `NAME =`
    fn head(&self, cur: &mut Cursor) -> Parsed<(String, Location)> {
        let (name, at) = cur.ident()?;
        cur.expect('=')?;
        Ok((name, cur.st.loc(at)))
    }

    fn declare(&mut self, name: &str, kind: ObjectKind, loc: Location) -> Parsed<()> {
        if name == DEFORMATION_PARAMETER || name == ARC_PARAMETER {
            let role = if name == DEFORMATION_PARAMETER {
                "deformation"
            } else {
                "arc"
            };
            return Err(Diagnostic::new(
                DiagnosticKind::ReservedName,
                loc,
                format!("`{name}` is reserved for the {role} parameter"),
            ));
        }
        if let Some((_, first)) = self.names.get(name) {
            return Err(Diagnostic::new(
                DiagnosticKind::DuplicateName,
                loc,
                format!("`{name}` is already declared at {first}"),
            ));
        }
        self.names.insert(name.to_string(), (kind, loc));
        Ok(())
    }

    fn require_ring(&self, loc: Location) -> Parsed<Arc<PolyRing>> {
        self.ring.clone().ok_or_else(|| {
            Diagnostic::new(
                DiagnosticKind::UnresolvedReference,
                loc,
                "no ring declared before this statement",
            )
        })
    }

    fn unresolved(&self, st: &Statement, at: usize, name: &str, expected: &str) -> Diagnostic {
        let message = match self.kind_of(name) {
            Some(kind) => format!("`{name}` is {kind}, expected {expected}"),
            None => format!("unknown name `{name}`, expected {expected}"),
        };
        Diagnostic::new(DiagnosticKind::UnresolvedReference, st.loc(at), message)
    }

    /// Parses `text` (starting at byte `start` of the statement) in `ring`.
    /// Parameters become constants; with `polys`, named polynomials are
    /// lifted into `ring`.
    fn expr(
        &self,
        st: &Statement,
        start: usize,
        text: &str,
        ring: &Arc<PolyRing>,
        polys: bool,
    ) -> Parsed<Polynomial> {
        let failure: RefCell<Option<String>> = RefCell::new(None);
        let resolve = |name: &str| -> Option<Polynomial> {
            let note = |msg: String| {
                failure.borrow_mut().get_or_insert(msg);
                None
            };
            match self.kind_of(name) {
                Some(ObjectKind::Parameter) => match self.parameter(name) {
                    Some(Some(v)) => Some(Polynomial::constant(ring, v.clone())),
                    _ => note(format!(
                        "parameter `{name}` has no value; pass --param {name}=VALUE"
                    )),
                },
                Some(ObjectKind::Polynomial) if polys => {
                    match self.polys[name].substitute(ring, &BTreeMap::new()) {
                        Ok(p) => Some(p),
                        Err(e) => note(format!("`{name}` cannot be used here: {e}")),
                    }
                }
                Some(kind) => note(format!(
                    "`{name}` is {kind} and cannot appear in this expression"
                )),
                None if name == DEFORMATION_PARAMETER => note(format!(
                    "`{name}` is the deformation parameter and only appears in `deform`"
                )),
                None if name == ARC_PARAMETER => note(format!(
                    "`{name}` is the arc parameter and only appears in `arc`"
                )),
                None => note(format!("unknown name `{name}`")),
            }
        };
        parse_expression(text, ring, resolve).map_err(|e| {
            let loc = st.loc(start + e.position);
            match failure.borrow_mut().take() {
                Some(msg) if e.message.starts_with("unknown variable") => {
                    Diagnostic::new(DiagnosticKind::UnresolvedReference, loc, msg)
                }
                _ => Diagnostic::new(DiagnosticKind::Syntax, loc, e.message),
            }
        })
    }

    fn expr_list(
        &self,
        st: &Statement,
        start: usize,
        text: &str,
        ring: &Arc<PolyRing>,
        polys: bool,
    ) -> Parsed<Vec<Polynomial>> {
        split_top(st, start, text)?
            .into_iter()
            .map(|(s, item)| self.expr(st, s, item, ring, polys))
            .collect()
    }

    fn constant_expr(
        &self,
        st: &Statement,
        start: usize,
        text: &str,
        ring: &Arc<PolyRing>,
    ) -> Parsed<Rational> {
        let p = self.expr(st, start, text, ring, false)?;
        if !p.is_constant() {
            return Err(Diagnostic::new(
                DiagnosticKind::Invalid,
                st.loc(start),
                "expected a constant",
            ));
        }
        Ok(p.constant_term())
    }
}

pub(crate) fn is_zero(r: &Rational) -> bool {
    r.numer().bits() == 0
}

fn empty_ring() -> Arc<PolyRing> {
    PolyRing::new::<&str>(&[]).expect("empty ring")
}

fn arc_ring() -> Arc<PolyRing> {
    empty_ring().extend(&[ARC_PARAMETER]).expect("arc ring")
}

fn syntax(st: &Statement, at: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::Syntax, st.loc(at), message)
}

fn invalid(st: &Statement, at: usize, e: relsing::Error) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::Invalid, st.loc(at), e.to_string())
}

fn integer(st: &Statement, start: usize, text: &str) -> Parsed<u64> {
    let lead = text.len() - text.trim_start().len();
    text.trim().parse().map_err(|_| {
        syntax(
            st,
            start + lead,
            format!("expected a nonnegative integer, found `{}`", text.trim()),
        )
    })
}

/// Splits at top-level commas, returning trimmed items with their offsets.
fn split_top<'a>(st: &Statement, start: usize, text: &'a str) -> Parsed<Vec<(usize, &'a str)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut from = 0;
    let push = |from: usize, to: usize, out: &mut Vec<(usize, &'a str)>| {
        let raw = &text[from..to];
        let lead = raw.len() - raw.trim_start().len();
        let item = raw.trim();
        if item.is_empty() {
            return Err(syntax(st, start + to, "empty list item"));
        }
        out.push((start + from + lead, item));
        Ok(())
    };
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                push(from, i, &mut out)?;
                from = i + 1;
            }
            _ => {}
        }
    }
    push(from, text.len(), &mut out)?;
    Ok(out)
}

/// One statement with comments removed; `locs[i]` is the source location of
/// byte `i`.
struct Statement {
    text: String,
    locs: Vec<Location>,
    end: Location,
}

impl Statement {
    fn detached(text: &str) -> Self {
        let locs = text
            .char_indices()
            .flat_map(|(i, c)| {
                std::iter::repeat_n(
                    Location {
                        line: 1,
                        column: i + 1,
                    },
                    c.len_utf8(),
                )
            })
            .collect();
        Statement {
            text: text.to_string(),
            locs,
            end: Location {
                line: 1,
                column: text.len() + 1,
            },
        }
    }

    fn loc(&self, offset: usize) -> Location {
        self.locs.get(offset).copied().unwrap_or(self.end)
    }
}

fn split_statements(text: &str) -> Parsed<Vec<Statement>> {
    let mut out = Vec::new();
    let mut cur = Statement {
        text: String::new(),
        locs: Vec::new(),
        end: Location { line: 1, column: 1 },
    };
    let mut opens: Vec<Location> = Vec::new();
    let mut in_comment = false;
    let (mut line, mut column) = (1, 1);
    let flush = |cur: &mut Statement, end: Location, out: &mut Vec<Statement>| {
        cur.end = end;
        let done = std::mem::replace(
            cur,
            Statement {
                text: String::new(),
                locs: Vec::new(),
                end,
            },
        );
        if !done.text.trim().is_empty() {
            out.push(done);
        }
    };
    for c in text.chars() {
        let here = Location { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
        if in_comment {
            if c != '\n' {
                continue;
            }
            in_comment = false;
        }
        match c {
            '#' => {
                in_comment = true;
                continue;
            }
            ';' | '\n' if opens.is_empty() => {
                flush(&mut cur, here, &mut out);
                continue;
            }
            ';' => {
                return Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    here,
                    "`;` inside parentheses",
                ))
            }
            '(' => opens.push(here),
            ')' if opens.pop().is_none() => {
                return Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    here,
                    "unbalanced `)`",
                ));
            }
            _ => {}
        }
        cur.text.push(c);
        cur.locs.extend(std::iter::repeat_n(here, c.len_utf8()));
    }
    if let Some(open) = opens.pop() {
        return Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            open,
            "unclosed `(`",
        ));
    }
    flush(&mut cur, Location { line, column }, &mut out);
    Ok(out)
}

struct Cursor<'a> {
    st: &'a Statement,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(st: &'a Statement) -> Self {
        Cursor { st, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.st.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.st.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Parsed<(String, usize)> {
        self.skip_ws();
        let rest = &self.st.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphabetic() || (i > 0 && (c.is_ascii_digit() || c == '_')))
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(syntax(self.st, self.pos, "expected a name"));
        }
        let at = self.pos;
        self.pos += len;
        Ok((rest[..len].to_string(), at))
    }

    fn keyword(&mut self, kw: &str) -> Parsed<()> {
        self.skip_ws();
        let at = self.pos;
        match self.ident() {
            Ok((w, _)) if w == kw => Ok(()),
            _ => Err(syntax(self.st, at, format!("expected `{kw}`"))),
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(syntax(self.st, self.pos, format!("expected `{c}`")))
        }
    }

    /// The remaining text, which must be nonempty.
    fn rest(&mut self) -> Parsed<(usize, &'a str)> {
        if self.at_end() {
            return Err(syntax(self.st, self.pos, "unexpected end of statement"));
        }
        let start = self.pos;
        self.pos = self.st.text.len();
        Ok((start, self.st.text[start..].trim_end()))
    }

    /// `( ... )`, returning the inner text and its offset.
    fn group(&mut self) -> Parsed<(usize, &'a str)> {
        self.expect('(')?;
        let start = self.pos;
        let mut depth = 1;
        for (i, c) in self.st.text[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok((start, &self.st.text[start..start + i]));
                    }
                }
                _ => {}
            }
        }
        Err(syntax(self.st, start, "unclosed `(`"))
    }

    fn finish(&mut self) -> Parsed<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(syntax(self.st, self.pos, "unexpected text after statement"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = "ring x, y\npoly Phi = x^3 - y^2\nvfield xi1 = (2*x, 3*y)\nvfield xi2 = (2*y, 3*x^2)\ndeform F = y^2 + x^4 + t*x^5\n";

    #[test]
    fn cusp_document() {
        let doc = InputDocument::parse(CUSP).unwrap();
        assert_eq!(doc.polynomials().len(), 1);
        assert_eq!(doc.fields().len(), 2);
        assert_eq!(doc.deformations().len(), 1);
        assert_eq!(doc.kind_of("xi2"), Some(ObjectKind::VectorField));
    }

    #[test]
    fn semicolons_and_comments() {
        let doc = InputDocument::parse(
            "ring x, y; poly f = x^2 # trailing\n# whole line\npoly g = f*y; poly h = (x +\n y)^2",
        )
        .unwrap();
        assert_eq!(doc.polynomial("g").unwrap().to_string(), "x^2*y");
        assert_eq!(doc.polynomials().len(), 3);
    }

    #[test]
    fn empty_document() {
        let doc = InputDocument::parse("  \n# nothing\n").unwrap();
        assert!(doc.ring().is_none());
        assert!(doc.polynomial("f").is_none());
    }

    #[test]
    fn duplicate_name() {
        let err = InputDocument::parse("ring x, y\npoly Phi = x\npoly Phi = y").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::DuplicateName);
        assert_eq!(err.location, Location { line: 3, column: 6 });
        assert!(err.message.contains("2:6"));
    }

    #[test]
    fn reserved_names() {
        for text in ["ring x, t", "ring x; poly s = x", "param t = 1"] {
            let err = InputDocument::parse(text).unwrap_err();
            assert_eq!(err.kind, DiagnosticKind::ReservedName, "{text}");
        }
    }

    #[test]
    fn unresolved_references() {
        let err = InputDocument::parse("ring x\npoly f = x + g").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnresolvedReference);
        assert_eq!(
            err.location,
            Location {
                line: 2,
                column: 14
            }
        );
        let err = InputDocument::parse("ring x\npoly f = t*x").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnresolvedReference);
        let err =
            InputDocument::parse("ring x\nvfield v = (1)\nvariety V = equations(x) fields(w)")
                .unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnresolvedReference);
        let err = InputDocument::parse("poly f = 1").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnresolvedReference);
    }

    #[test]
    fn parameters() {
        let text = "ring x, y\nparam a\ndeform F = y + (a + t)*x^2\narc g = (s, -a*s^2) trunc 9";
        let err = InputDocument::parse(text).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnresolvedReference);
        assert!(err.message.contains("--param a="));
        let overrides = BTreeMap::from([("a".to_string(), Rational::new(3.into(), 2.into()))]);
        let doc = InputDocument::parse_with(text, &overrides).unwrap();
        assert_eq!(
            doc.deformation("F").unwrap().base().unwrap().to_string(),
            "3/2*x^2 + y"
        );
        let arc = doc.arc("g").unwrap();
        assert_eq!(arc.trunc, Some(9));
        assert_eq!(arc.components[1].to_string(), "-3/2*s^2");
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let err = InputDocument::parse("ring x\npoly f = x^^2").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::Syntax);
        assert_eq!(
            err.location,
            Location {
                line: 2,
                column: 12
            }
        );
        let err = InputDocument::parse("ring x\nvfield v = (x").unwrap_err();
        assert_eq!(
            err.location,
            Location {
                line: 2,
                column: 12
            }
        );
        let err = InputDocument::parse("frobnicate").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::Syntax);
    }

    #[test]
    fn invalid_declarations() {
        let cases = [
            "ring x, y\nvfield v = (x)",
            "ring x, y\nvfield v = (y, x)\nvariety V = equations(x^3 - y^2) fields(v)",
            "arc g = (1 + s)",
            "samples S = 1, 2",
            "ring x\npoint p = (1, 2)",
            "ring x, y\nweights w = (1)",
        ];
        for text in cases {
            let err = InputDocument::parse(text).unwrap_err();
            assert_eq!(err.kind, DiagnosticKind::Invalid, "{text}: {err}");
        }
    }

    #[test]
    fn samples_points_and_weights() {
        let doc = InputDocument::parse(
            "ring x, y\nsamples S = 0, 1/7, -1/3\npoint P = (-1/4, 0)\nweights w = (2, 3) degree 6",
        )
        .unwrap();
        let s: Vec<String> = doc
            .sample_set("S")
            .unwrap()
            .values()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(s, ["0", "1/7", "-1/3"]);
        assert_eq!(doc.point("P").unwrap()[0].to_string(), "-1/4");
        assert_eq!(doc.weights("w").unwrap().degree(), Some(6));
    }

    #[test]
    fn whole_space_variety() {
        let doc = InputDocument::parse("ring x, y, z\nvariety W = space").unwrap();
        assert_eq!(doc.variety("W").unwrap().fields().len(), 3);
    }
}
