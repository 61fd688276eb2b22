//! The `latticeknot v1` text format.
//!
//! ```text
//! latticeknot v1
//! # unit square, true coordinates, first vertex not repeated
//! 0 0 0
//! 1 0 0
//! 1 1 0
//! 0 1 0
//! ```
//!
//! or a single move line starting from the origin:
//!
//! ```text
//! latticeknot v1
//! moves: XYxy
//! ```

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeKnot, LatticePoint, Violation};

pub const HEADER: &str = "latticeknot v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotFileForm {
    Vertices,
    Moves,
}

/// A syntactically valid file whose geometry has not been validated yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedKnotFile {
    pub form: KnotFileForm,
    pub vertices: Vec<LatticePoint>,
    /// For the move form, the position reached after the last move.
    pub end: LatticePoint,
}

impl ParsedKnotFile {
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = lattice::validate(&self.vertices).err().unwrap_or_default();
        if self.form == KnotFileForm::Moves
            && self.end != LatticePoint::ORIGIN
            && !out.iter().any(|v| matches!(v, Violation::NotClosed { .. }))
        {
            out.push(Violation::NotClosed {
                last: self.end,
                first: LatticePoint::ORIGIN,
            });
        }
        out
    }

    pub fn into_knot(self) -> Result<LatticeKnot> {
        let violations = self.violations();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        LatticeKnot::new(self.vertices)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_vertex_line(line: usize, body: &str) -> Result<LatticePoint> {
    let fields: Vec<&str> = body.split(' ').collect();
    if fields.len() != 3 || fields.iter().any(|f| f.is_empty()) {
        return Err(syntax(
            line,
            format!("expected three integers separated by single spaces, got {body:?}"),
        ));
    }
    let mut c = [0i64; 3];
    for (slot, field) in c.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| syntax(line, format!("invalid integer {field:?}")))?;
    }
    LatticePoint::vertex(c[0], c[1], c[2]).map_err(|_| syntax(line, "coordinate out of range"))
}

/// Parses the file structure without checking knot invariants.
pub fn parse_unchecked(text: &str) -> Result<ParsedKnotFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, first)) if first.trim_end() == HEADER => {}
        Some((n, first)) => {
            return Err(syntax(n, format!("expected header {HEADER:?}, got {first:?}")));
        }
        None => return Err(syntax(1, "empty file")),
    }

    let mut vertices = Vec::new();
    let mut moves: Option<(usize, String)> = None;
    for (n, raw) in lines {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if moves.is_some() {
            return Err(syntax(n, "nothing may follow the move line"));
        }
        if let Some(rest) = body.strip_prefix("moves:") {
            if !vertices.is_empty() {
                return Err(syntax(n, "cannot mix vertex lines and a move line"));
            }
            moves = Some((n, rest.trim().to_string()));
        } else {
            vertices.push(parse_vertex_line(n, body)?);
        }
    }

    if let Some((n, m)) = moves {
        let trace = lattice::trace_moves(&m)
            .map_err(|ch| syntax(n, format!("invalid move {ch:?}; expected one of XxYyZz")))?;
        let end = *trace.last().expect("trace includes the start");
        let count = trace.len() - 1;
        let mut vertices = trace;
        vertices.truncate(count.max(1));
        return Ok(ParsedKnotFile {
            form: KnotFileForm::Moves,
            vertices,
            end,
        });
    }
    if vertices.is_empty() {
        return Err(syntax(text.lines().count().max(1), "no vertices"));
    }
    Ok(ParsedKnotFile {
        form: KnotFileForm::Vertices,
        end: vertices[0],
        vertices,
    })
}

/// Parses and validates a knot file.
pub fn parse_knot(text: &str) -> Result<LatticeKnot> {
    parse_unchecked(text)?.into_knot()
}

/// Vertex form in true coordinates.
pub fn write_vertices(knot: &LatticeKnot) -> String {
    let mut out = String::with_capacity(16 * knot.len());
    out.push_str(HEADER);
    out.push('\n');
    for v in knot.vertices() {
        let [x, y, z] = v.true_coords().expect("knot vertices are integral");
        out.push_str(&format!("{x} {y} {z}\n"));
    }
    out
}

/// Move form. The format has no start point, so the knot is read back
/// translated to start at the origin.
pub fn write_moves(knot: &LatticeKnot) -> String {
    format!("{HEADER}\nmoves: {}\n", knot.to_moves())
}
