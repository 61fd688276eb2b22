//! Lattice knot data model.
//!
//! Points are stored in *doubled* coordinates: the stored integer is twice the
//! true coordinate. Vertices therefore have three even components and edge
//! midpoints have exactly one odd component, so every point of interest is an
//! exact integer triple.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A point of the cubic lattice in doubled coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0, z: 0 };

    pub const fn from_doubled(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    /// Vertex at integer true coordinates.
    pub fn vertex(x: i64, y: i64, z: i64) -> Result<Self> {
        let d = |c: i64| c.checked_mul(2).ok_or(Error::Overflow("doubling coordinates"));
        Ok(LatticePoint::from_doubled(d(x)?, d(y)?, d(z)?))
    }

    pub fn coords(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_coords(c: [i64; 3]) -> Self {
        LatticePoint::from_doubled(c[0], c[1], c[2])
    }

    pub fn component(self, axis: Axis) -> i64 {
        self.coords()[axis.index()]
    }

    fn odd_count(self) -> usize {
        self.coords().iter().filter(|c| *c % 2 != 0).count()
    }

    pub fn is_vertex(self) -> bool {
        self.odd_count() == 0
    }

    pub fn is_midpoint(self) -> bool {
        self.odd_count() == 1
    }

    /// Whether the point lies on the cubic lattice (at least two integer true coordinates).
    pub fn on_lattice(self) -> bool {
        self.odd_count() <= 1
    }

    /// The axis of the fractional coordinate of a midpoint.
    pub fn fractional_axis(self) -> Option<Axis> {
        if !self.is_midpoint() {
            return None;
        }
        self.coords()
            .iter()
            .position(|c| c % 2 != 0)
            .map(Axis::from_index)
    }

    /// Taxicab distance in doubled units (twice the true distance).
    pub fn taxicab_doubled(self, other: LatticePoint) -> u64 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) + self.z.abs_diff(other.z)
    }

    /// Squared Euclidean distance in doubled units (four times the true value).
    pub fn euclid_sq_doubled(self, other: LatticePoint) -> u128 {
        let sq = |a: i64, b: i64| {
            let d = a.abs_diff(b) as u128;
            d * d
        };
        sq(self.x, other.x) + sq(self.y, other.y) + sq(self.z, other.z)
    }

    /// True coordinates, only defined for vertices.
    pub fn true_coords(self) -> Option<[i64; 3]> {
        self.is_vertex().then(|| self.coords().map(|c| c / 2))
    }

    pub(crate) fn checked_add(self, other: LatticePoint) -> Option<LatticePoint> {
        Some(LatticePoint::from_doubled(
            self.x.checked_add(other.x)?,
            self.y.checked_add(other.y)?,
            self.z.checked_add(other.z)?,
        ))
    }

    pub(crate) fn checked_scale(self, m: i64) -> Option<LatticePoint> {
        Some(LatticePoint::from_doubled(
            self.x.checked_mul(m)?,
            self.y.checked_mul(m)?,
            self.z.checked_mul(m)?,
        ))
    }

    fn sub(self, other: LatticePoint) -> [i128; 3] {
        [
            self.x as i128 - other.x as i128,
            self.y as i128 - other.y as i128,
            self.z as i128 - other.z as i128,
        ]
    }
}

fn fmt_half(c: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c % 2 == 0 {
        write!(f, "{}", c / 2)
    } else if c == -1 {
        f.write_str("-0.5")
    } else {
        // truncating division keeps the sign for |c| > 1
        write!(f, "{}.5", c / 2)
    }
}

impl fmt::Display for LatticePoint {
    /// Renders true coordinates, e.g. `(0.5, 1, 0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt_half(self.x, f)?;
        f.write_str(", ")?;
        fmt_half(self.y, f)?;
        f.write_str(", ")?;
        fmt_half(self.z, f)?;
        f.write_str(")")
    }
}

/// A broken invariant found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices { count: usize },
    OddLength { count: usize },
    NotAVertex { index: usize, point: LatticePoint },
    NonUnitStep { index: usize, from: LatticePoint, to: LatticePoint },
    NotClosed { last: LatticePoint, first: LatticePoint },
    NotEmbedded { first: usize, second: usize, point: LatticePoint },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { count } => {
                write!(f, "too few vertices: {count} (need at least 4)")
            }
            Violation::OddLength { count } => write!(f, "odd number of edges: {count}"),
            Violation::NotAVertex { index, point } => {
                write!(f, "vertex {index} at {point} is not an integer point")
            }
            Violation::NonUnitStep { index, from, to } => {
                write!(f, "non-unit step from vertex {index} {from} to {to}")
            }
            Violation::NotClosed { last, first } => {
                write!(f, "not closed: last vertex {last} is not adjacent to first vertex {first}")
            }
            Violation::NotEmbedded { first, second, point } => {
                write!(f, "not embedded: vertices {first} and {second} both at {point}")
            }
        }
    }
}

fn is_unit_step(a: LatticePoint, b: LatticePoint) -> bool {
    a.taxicab_doubled(b) == 2 && {
        let d = a.sub(b);
        d.iter().filter(|c| **c != 0).count() == 1
    }
}

/// Checks every lattice knot invariant on a raw vertex cycle.
pub fn validate(vertices: &[LatticePoint]) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let n = vertices.len();
    if n < 4 {
        out.push(Violation::TooFewVertices { count: n });
    }
    if n % 2 == 1 {
        out.push(Violation::OddLength { count: n });
    }
    for (index, &point) in vertices.iter().enumerate() {
        if !point.is_vertex() {
            out.push(Violation::NotAVertex { index, point });
        }
    }
    if n >= 2 {
        for i in 0..n - 1 {
            if !is_unit_step(vertices[i], vertices[i + 1]) {
                out.push(Violation::NonUnitStep {
                    index: i,
                    from: vertices[i],
                    to: vertices[i + 1],
                });
            }
        }
        if !is_unit_step(vertices[n - 1], vertices[0]) {
            out.push(Violation::NotClosed {
                last: vertices[n - 1],
                first: vertices[0],
            });
        }
    }
    let mut seen: HashMap<LatticePoint, usize> = HashMap::with_capacity(n);
    for (i, &p) in vertices.iter().enumerate() {
        if let Some(&first) = seen.get(&p) {
            out.push(Violation::NotEmbedded {
                first,
                second: i,
                point: p,
            });
        } else {
            seen.insert(p, i);
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A unit segment `v_i -> v_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub index: usize,
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub axis: Axis,
    pub midpoint: LatticePoint,
}

/// A maximal straight segment of the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stick {
    pub axis: Axis,
    pub start: LatticePoint,
    pub end: LatticePoint,
    /// Length in true units.
    pub length: u64,
    /// Index of the first edge of the stick.
    pub first_edge: usize,
}

/// A closed, embedded polygon in the cubic lattice with unit edges.
#[derive(Clone, Debug)]
pub struct LatticeKnot {
    vertices: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

impl PartialEq for LatticeKnot {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticeKnot {}

impl LatticeKnot {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        validate(&vertices).map_err(Error::Invalid)?;
        let index = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(LatticeKnot { vertices, index })
    }

    /// Builds a knot from vertices given in true integer coordinates.
    pub fn from_true_coords(coords: &[[i64; 3]]) -> Result<Self> {
        let vertices = coords
            .iter()
            .map(|c| LatticePoint::vertex(c[0], c[1], c[2]))
            .collect::<Result<Vec<_>>>()?;
        LatticeKnot::new(vertices)
    }

    /// Number of edges, which equals the number of vertices and the total length.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: a valid knot has at least four edges.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Vertex `i` modulo `N`.
    pub fn vertex(&self, i: usize) -> LatticePoint {
        self.vertices[i % self.vertices.len()]
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn edge(&self, i: usize) -> Edge {
        let n = self.len();
        let i = i % n;
        let start = self.vertices[i];
        let end = self.vertices[(i + 1) % n];
        let d = end.sub(start);
        let axis = Axis::from_index(d.iter().position(|c| *c != 0).expect("unit edge"));
        let midpoint = LatticePoint::from_doubled(
            (start.x + end.x) / 2,
            (start.y + end.y) / 2,
            (start.z + end.z) / 2,
        );
        Edge {
            index: i,
            start,
            end,
            axis,
            midpoint,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    /// Midpoint of every edge, in edge order.
    pub fn midpoints(&self) -> Vec<LatticePoint> {
        self.edges().map(|e| e.midpoint).collect()
    }

    /// Index of the edge whose midpoint is `m`.
    pub fn edge_of_midpoint(&self, m: LatticePoint) -> Option<usize> {
        let axis = m.fractional_axis()?;
        let mut c = m.coords();
        c[axis.index()] -= 1;
        let lo = self.index_of(LatticePoint::from_coords(c))?;
        c[axis.index()] += 2;
        let hi = self.index_of(LatticePoint::from_coords(c))?;
        let n = self.len();
        if (lo + 1) % n == hi {
            Some(lo)
        } else if (hi + 1) % n == lo {
            Some(hi)
        } else {
            None
        }
    }

    /// Maximal straight segments, starting from the first corner at or after vertex 0.
    pub fn sticks(&self) -> Vec<Stick> {
        let n = self.len();
        let edges: Vec<Edge> = self.edges().collect();
        let dir = |e: &Edge| e.end.sub(e.start);
        // A valid knot cannot be a single straight line, so a corner exists.
        let corner = (0..n)
            .find(|&i| dir(&edges[(i + n - 1) % n]) != dir(&edges[i]))
            .expect("closed polygon has a corner");
        let mut sticks = Vec::new();
        let mut k = 0;
        while k < n {
            let first = (corner + k) % n;
            let d = dir(&edges[first]);
            let mut length = 1;
            while k + length < n && dir(&edges[(corner + k + length) % n]) == d {
                length += 1;
            }
            let last = (first + length - 1) % n;
            sticks.push(Stick {
                axis: edges[first].axis,
                start: edges[first].start,
                end: edges[last].end,
                length: length as u64,
                first_edge: first,
            });
            k += length;
        }
        sticks
    }

    /// Multiplies every coordinate by `m`, inserting the intermediate lattice
    /// points as vertices. The result has `m * N` edges.
    pub fn scale(&self, m: u32) -> Result<LatticeKnot> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        let m = m as i64;
        let total = self
            .len()
            .checked_mul(m as usize)
            .ok_or(Error::Overflow("scaling"))?;
        let mut out = Vec::with_capacity(total);
        for e in self.edges() {
            let base = e.start.checked_scale(m).ok_or(Error::Overflow("scaling"))?;
            let step = LatticePoint::from_coords({
                let d = e.end.sub(e.start);
                [d[0] as i64, d[1] as i64, d[2] as i64]
            });
            let mut p = base;
            out.push(p);
            for _ in 1..m {
                p = p.checked_add(step).ok_or(Error::Overflow("scaling"))?;
                out.push(p);
            }
        }
        LatticeKnot::new(out)
    }

    /// The same polygon traversed in the opposite direction, starting at vertex 0.
    pub fn reversed(&self) -> LatticeKnot {
        let mut v = self.vertices.clone();
        v[1..].reverse();
        LatticeKnot::new(v).expect("reversal preserves validity")
    }

    /// Cyclic relabelling so that vertex `k` becomes vertex 0.
    pub fn rotated(&self, k: usize) -> LatticeKnot {
        let mut v = self.vertices.clone();
        let n = v.len();
        v.rotate_left(k % n);
        LatticeKnot::new(v).expect("rotation preserves validity")
    }

    /// Translation by an integer true-coordinate offset.
    pub fn translated(&self, offset: [i64; 3]) -> Result<LatticeKnot> {
        let shift = LatticePoint::vertex(offset[0], offset[1], offset[2])?;
        let v = self
            .vertices
            .iter()
            .map(|p| p.checked_add(shift).ok_or(Error::Overflow("translating")))
            .collect::<Result<Vec<_>>>()?;
        LatticeKnot::new(v)
    }

    pub fn transformed(&self, iso: &Isometry) -> LatticeKnot {
        let v = self.vertices.iter().map(|p| iso.apply(*p)).collect();
        LatticeKnot::new(v).expect("isometries preserve validity")
    }

    /// Unit moves over `{X,x,Y,y,Z,z}`, uppercase for a positive step.
    pub fn to_moves(&self) -> String {
        self.edges()
            .map(|e| {
                let positive = e.end.component(e.axis) > e.start.component(e.axis);
                match (e.axis, positive) {
                    (Axis::X, true) => 'X',
                    (Axis::X, false) => 'x',
                    (Axis::Y, true) => 'Y',
                    (Axis::Y, false) => 'y',
                    (Axis::Z, true) => 'Z',
                    (Axis::Z, false) => 'z',
                }
            })
            .collect()
    }
}

/// Applies a move string from the origin. Returns every visited position
/// including the final one, so a closed string ends back at the origin.
pub fn trace_moves(moves: &str) -> std::result::Result<Vec<LatticePoint>, char> {
    let mut p = LatticePoint::ORIGIN;
    let mut out = vec![p];
    for ch in moves.chars() {
        let (axis, delta) = match ch {
            'X' => (0, 2),
            'x' => (0, -2),
            'Y' => (1, 2),
            'y' => (1, -2),
            'Z' => (2, 2),
            'z' => (2, -2),
            other => return Err(other),
        };
        let mut c = p.coords();
        c[axis] += delta;
        p = LatticePoint::from_coords(c);
        out.push(p);
    }
    Ok(out)
}

/// One of the 48 signed axis permutations fixing the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    perm: [usize; 3],
    signs: [i64; 3],
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    pub fn all() -> Vec<Isometry> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8 {
                let s = |b: i32| if bits >> b & 1 == 1 { -1 } else { 1 };
                out.push(Isometry {
                    perm,
                    signs: [s(0), s(1), s(2)],
                });
            }
        }
        out
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let c = p.coords();
        LatticePoint::from_coords([
            self.signs[0] * c[self.perm[0]],
            self.signs[1] * c[self.perm[1]],
            self.signs[2] * c[self.perm[2]],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[[i64; 3]]) -> Vec<LatticePoint> {
        c.iter()
            .map(|c| LatticePoint::vertex(c[0], c[1], c[2]).unwrap())
            .collect()
    }

    fn unit_square() -> LatticeKnot {
        LatticeKnot::from_true_coords(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap()
    }

    fn rect_1x2() -> LatticeKnot {
        LatticeKnot::new(trace_moves("XXYxxy").unwrap()[..6].to_vec()).unwrap()
    }

    #[test]
    fn unit_square_is_valid() {
        assert!(validate(unit_square().vertices()).is_ok());
    }

    #[test]
    fn open_path_is_not_closed() {
        let errs = validate(&pts(&[[0, 0, 0], [1, 0, 0], [2, 0, 0]])).unwrap_err();
        assert!(errs.iter().any(|v| matches!(v, Violation::NotClosed { .. })));
        assert!(errs.iter().any(|v| matches!(v, Violation::TooFewVertices { count: 3 })));
    }

    #[test]
    fn repeated_vertex_is_not_embedded() {
        let errs = validate(&pts(&[[0, 0, 0], [1, 0, 0], [0, 0, 0], [0, 1, 0]])).unwrap_err();
        assert!(errs.contains(&Violation::NotEmbedded {
            first: 0,
            second: 2,
            point: LatticePoint::ORIGIN
        }));
    }

    #[test]
    fn diagonal_step_is_rejected() {
        let errs = validate(&pts(&[[0, 0, 0], [1, 1, 0], [1, 2, 0], [0, 1, 0]])).unwrap_err();
        assert!(errs.iter().any(|v| matches!(v, Violation::NonUnitStep { index: 0, .. })));
    }

    #[test]
    fn half_integer_vertex_is_rejected() {
        let mut v = unit_square().vertices().to_vec();
        v[1] = LatticePoint::from_doubled(1, 0, 0);
        let errs = validate(&v).unwrap_err();
        assert!(errs.iter().any(|v| matches!(v, Violation::NotAVertex { index: 1, .. })));
    }

    #[test]
    fn point_parity_classification() {
        assert!(LatticePoint::from_doubled(2, 0, -4).is_vertex());
        assert!(LatticePoint::from_doubled(1, 0, 0).is_midpoint());
        assert!(!LatticePoint::from_doubled(1, 1, 0).on_lattice());
        assert_eq!(LatticePoint::from_doubled(0, 3, 2).fractional_axis(), Some(Axis::Y));
        assert_eq!(LatticePoint::from_doubled(-1, 3, 2).to_string(), "(-0.5, 1.5, 1)");
        assert_eq!(LatticePoint::from_doubled(-3, 0, 0).to_string(), "(-1.5, 0, 0)");
    }

    #[test]
    fn sticks_of_square_and_rectangle() {
        let s = unit_square().sticks();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|s| s.length == 1));

        let r = rect_1x2().sticks();
        let mut lengths: Vec<u64> = r.iter().map(|s| s.length).collect();
        assert_eq!(r.len(), 4);
        assert_eq!(lengths.iter().sum::<u64>(), 6);
        lengths.sort();
        assert_eq!(lengths, vec![1, 1, 2, 2]);
    }

    #[test]
    fn sticks_handle_start_in_middle_of_segment() {
        let k = rect_1x2().rotated(1);
        let s = k.sticks();
        assert_eq!(s.len(), 4);
        // consecutive sticks chain end to start
        for w in 0..s.len() {
            assert_eq!(s[w].end, s[(w + 1) % s.len()].start);
        }
        let cut = s.iter().filter(|s| s.length == 2 && s.axis == Axis::X).count();
        assert_eq!(cut, 2);
    }

    #[test]
    fn scale_square_by_two() {
        let k = unit_square().scale(2).unwrap();
        assert_eq!(k.len(), 8);
        let expected = pts(&[
            [0, 0, 0],
            [1, 0, 0],
            [2, 0, 0],
            [2, 1, 0],
            [2, 2, 0],
            [1, 2, 0],
            [0, 2, 0],
            [0, 1, 0],
        ]);
        assert_eq!(k.vertices(), &expected[..]);
        assert_eq!(unit_square().scale(1).unwrap(), unit_square());
        assert!(matches!(unit_square().scale(0), Err(Error::ZeroScale)));
    }

    #[test]
    fn scale_composes() {
        let k = rect_1x2();
        assert_eq!(k.scale(2).unwrap().scale(2).unwrap(), k.scale(4).unwrap());
        assert_eq!(k.scale(2).unwrap().scale(3).unwrap(), k.scale(6).unwrap());
    }

    #[test]
    fn scale_reports_overflow() {
        let big = LatticeKnot::from_true_coords(&[
            [i64::MAX / 4, 0, 0],
            [i64::MAX / 4 + 1, 0, 0],
            [i64::MAX / 4 + 1, 1, 0],
            [i64::MAX / 4, 1, 0],
        ])
        .unwrap();
        assert!(matches!(big.scale(3), Err(Error::Overflow(_))));
    }

    #[test]
    fn midpoints_of_unit_square() {
        let m = unit_square().midpoints();
        let expected = vec![
            LatticePoint::from_doubled(1, 0, 0),
            LatticePoint::from_doubled(2, 1, 0),
            LatticePoint::from_doubled(1, 2, 0),
            LatticePoint::from_doubled(0, 1, 0),
        ];
        assert_eq!(m, expected);
        for (i, p) in m.iter().enumerate() {
            assert_eq!(unit_square().edge_of_midpoint(*p), Some(i));
        }
    }

    #[test]
    fn midpoints_of_double_are_odd_images() {
        let k = rect_1x2();
        let k2 = k.scale(2).unwrap();
        // vertex 2i+1 of 2K is the doubled image of midpoint i of K
        let m = k.midpoints();
        for (i, p) in m.iter().enumerate() {
            assert_eq!(k2.vertex(2 * i + 1), p.checked_scale(2).unwrap());
        }
    }

    #[test]
    fn moves_round_trip() {
        let k = rect_1x2();
        assert_eq!(k.to_moves(), "XXYxxy");
        assert_eq!(trace_moves("Q"), Err('Q'));
    }

    #[test]
    fn isometries_are_distinct_and_preserve_validity() {
        let all = Isometry::all();
        assert_eq!(all.len(), 48);
        let p = LatticePoint::from_doubled(2, 4, 6);
        let images: std::collections::HashSet<_> = all.iter().map(|i| i.apply(p)).collect();
        assert_eq!(images.len(), 48);
        let k = rect_1x2();
        for iso in &all {
            assert!(validate(k.transformed(iso).vertices()).is_ok());
        }
    }
}
