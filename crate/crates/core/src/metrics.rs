//! Taxicab, arc-length and Euclidean comparisons on `V_m(K)`, the vertices and
//! edge midpoints of a knot.
//!
//! Arc positions count half-units along the knot: vertex `i` sits at offset
//! `2i` and the midpoint of edge `i` at `2i + 1`. Because doubled coordinates
//! use the same half-unit scale, the ratio `arc offsets / doubled taxicab`
//! equals the true ratio with no rescaling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeKnot, LatticePoint};
use crate::ratio::Ratio;

/// A vertex or midpoint together with its cyclic offset along the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcPosition {
    /// Offset in half-units, in `[0, 2N)`.
    pub offset: usize,
    pub point: LatticePoint,
}

impl ArcPosition {
    pub fn is_vertex(&self) -> bool {
        self.offset.is_multiple_of(2)
    }
}

impl LatticeKnot {
    /// Locates a vertex or midpoint on the knot.
    pub fn position(&self, p: LatticePoint) -> Result<ArcPosition> {
        let offset = if p.is_vertex() {
            self.index_of(p).map(|i| 2 * i)
        } else {
            self.edge_of_midpoint(p).map(|e| 2 * e + 1)
        };
        offset
            .map(|offset| ArcPosition { offset, point: p })
            .ok_or(Error::NotOnKnot(p))
    }

    /// Point at a half-unit offset (wrapping).
    pub fn at_offset(&self, offset: usize) -> ArcPosition {
        let offset = offset % (2 * self.len());
        let point = if offset.is_multiple_of(2) {
            self.vertex(offset / 2)
        } else {
            self.edge(offset / 2).midpoint
        };
        ArcPosition { offset, point }
    }

    /// All `2N` points of `V_m(K)` in arc order.
    pub fn vm_points(&self) -> Vec<ArcPosition> {
        (0..2 * self.len()).map(|o| self.at_offset(o)).collect()
    }

    fn check(&self, a: &ArcPosition) -> Result<()> {
        if a.offset < 2 * self.len() && self.at_offset(a.offset).point == a.point {
            Ok(())
        } else {
            Err(Error::NotOnKnot(a.point))
        }
    }
}

/// Shortest arc distance between two offsets, in half-units, on a knot of `n` edges.
#[inline]
pub fn arc_half_units(n: usize, a: usize, b: usize) -> u64 {
    let d = a.abs_diff(b);
    d.min(2 * n - d) as u64
}

/// Taxicab distance in true units.
pub fn d1(a: LatticePoint, b: LatticePoint) -> Ratio {
    Ratio::new(a.taxicab_doubled(b), 2)
}

/// Shortest path length along the knot, in true units.
pub fn arc_distance(knot: &LatticeKnot, a: &ArcPosition, b: &ArcPosition) -> Result<Ratio> {
    knot.check(a)?;
    knot.check(b)?;
    Ok(Ratio::new(arc_half_units(knot.len(), a.offset, b.offset), 2))
}

/// Whether two positions are half the knot's length apart.
pub fn antipodal(knot: &LatticeKnot, a: &ArcPosition, b: &ArcPosition) -> bool {
    arc_half_units(knot.len(), a.offset, b.offset) == knot.len() as u64
}

/// `d_K / d_1` for two positions already known to be on `knot`; 1 on the diagonal.
#[inline]
pub fn rho1_positions(n: usize, a: &ArcPosition, b: &ArcPosition) -> Ratio {
    if a.offset == b.offset {
        return Ratio::ONE;
    }
    Ratio::new(
        arc_half_units(n, a.offset, b.offset),
        a.point.taxicab_doubled(b.point),
    )
}

/// `ρ₁(a, b) = d_K(a, b) / d₁(a, b)` for `a, b ∈ V_m(K)`, with `ρ₁(a, a) = 1`.
pub fn rho1(knot: &LatticeKnot, a: LatticePoint, b: LatticePoint) -> Result<Ratio> {
    let pa = knot.position(a)?;
    let pb = knot.position(b)?;
    Ok(rho1_positions(knot.len(), &pa, &pb))
}

/// `ρ₂² = d_K² / d²` for distinct `a, b ∈ V_m(K)`.
///
/// The squared form keeps the value rational; callers compare it against
/// squared rationals.
pub fn rho2_squared(knot: &LatticeKnot, a: LatticePoint, b: LatticePoint) -> Result<Ratio> {
    if a == b {
        return Err(Error::DegeneratePair(a));
    }
    let pa = knot.position(a)?;
    let pb = knot.position(b)?;
    rho2_squared_positions(knot.len(), &pa, &pb)
}

pub(crate) fn rho2_squared_positions(n: usize, a: &ArcPosition, b: &ArcPosition) -> Result<Ratio> {
    let arc = arc_half_units(n, a.offset, b.offset) as u128;
    let num = arc.checked_mul(arc).ok_or(Error::Overflow("squaring arc length"))?;
    Ratio::from_u128(num, a.point.euclid_sq_doubled(b.point))
        .ok_or(Error::Overflow("reducing squared ratio"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::from_doubled(x, y, z)
    }

    fn unit_square() -> LatticeKnot {
        LatticeKnot::from_true_coords(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap()
    }

    fn rect_1x2() -> LatticeKnot {
        LatticeKnot::from_true_coords(&[
            [0, 0, 0],
            [1, 0, 0],
            [2, 0, 0],
            [2, 1, 0],
            [1, 1, 0],
            [0, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn taxicab_examples() {
        assert_eq!(d1(p(0, 0, 0), p(2, 4, 6)), Ratio::integer(6));
        assert_eq!(d1(p(2, 4, 6), p(2, 4, 6)), Ratio::ZERO);
        assert_eq!(d1(p(0, 0, 0), p(1, 0, 0)), Ratio::new(1, 2));
    }

    #[test]
    fn arc_distance_examples() {
        let k = unit_square();
        let a = k.position(p(0, 0, 0)).unwrap();
        let b = k.position(p(2, 2, 0)).unwrap();
        assert_eq!(arc_distance(&k, &a, &b).unwrap(), Ratio::integer(2));
        assert_eq!(arc_distance(&k, &a, &a).unwrap(), Ratio::ZERO);

        let m1 = k.position(p(1, 0, 0)).unwrap();
        let m2 = k.position(p(1, 2, 0)).unwrap();
        assert_eq!(arc_distance(&k, &m1, &m2).unwrap(), Ratio::integer(2));
        assert!(antipodal(&k, &m1, &m2));
    }

    #[test]
    fn points_off_the_knot_are_rejected() {
        let k = unit_square();
        assert!(matches!(k.position(p(4, 0, 0)), Err(Error::NotOnKnot(_))));
        // a midpoint-shaped point between two non-adjacent vertices
        assert!(matches!(k.position(p(1, 1, 0)), Err(Error::NotOnKnot(_))));
        let forged = ArcPosition {
            offset: 1,
            point: p(0, 0, 0),
        };
        assert!(arc_distance(&k, &forged, &forged).is_err());
    }

    #[test]
    fn rho1_examples() {
        let k = unit_square();
        assert_eq!(rho1(&k, p(0, 0, 0), p(2, 2, 0)).unwrap(), Ratio::ONE);
        assert_eq!(rho1(&k, p(1, 0, 0), p(1, 2, 0)).unwrap(), Ratio::integer(2));
        assert_eq!(rho1(&k, p(1, 0, 0), p(1, 0, 0)).unwrap(), Ratio::ONE);
    }

    #[test]
    fn rho2_squared_examples() {
        let k = unit_square();
        assert_eq!(rho2_squared(&k, p(0, 0, 0), p(2, 2, 0)).unwrap(), Ratio::integer(2));
        let r = rect_1x2();
        // collinear vertices two apart: d_K = 2 along the bottom side, d = 2
        assert_eq!(rho2_squared(&r, p(0, 0, 0), p(4, 0, 0)).unwrap(), Ratio::ONE);
        // antipodal pair across the short side: d_K = 3, d = 1
        assert_eq!(rho2_squared(&r, p(2, 0, 0), p(2, 2, 0)).unwrap(), Ratio::integer(9));
        assert!(matches!(
            rho2_squared(&k, p(0, 0, 0), p(0, 0, 0)),
            Err(Error::DegeneratePair(_))
        ));
    }

    #[test]
    fn antipode_of_vertex_is_vertex() {
        let k = rect_1x2();
        for a in k.vm_points() {
            let anti = k.at_offset(a.offset + k.len());
            assert_eq!(anti.is_vertex(), a.is_vertex());
            assert!(antipodal(&k, &a, &anti));
        }
    }

    fn corpus() -> Vec<LatticeKnot> {
        vec![
            unit_square(),
            rect_1x2(),
            rect_1x2().scale(2).unwrap(),
            // skew hexagon around a cube
            LatticeKnot::from_true_coords(&[
                [0, 0, 0],
                [1, 0, 0],
                [1, 1, 0],
                [1, 1, 1],
                [0, 1, 1],
                [0, 0, 1],
            ])
            .unwrap(),
        ]
    }

    #[test]
    fn metric_comparisons_on_all_pairs() {
        for k in corpus() {
            let n = k.len();
            let pts = k.vm_points();
            for a in &pts {
                for b in &pts {
                    if a == b {
                        continue;
                    }
                    let arc = arc_half_units(n, a.offset, b.offset) as u128;
                    let taxi = a.point.taxicab_doubled(b.point) as u128;
                    let e2 = a.point.euclid_sq_doubled(b.point);
                    // d_K >= d1
                    assert!(arc >= taxi);
                    // d <= d1 <= sqrt(3) d
                    assert!(e2 <= taxi * taxi);
                    assert!(taxi * taxi <= 3 * e2);
                    let r1 = rho1_positions(n, a, b);
                    let r2 = rho2_squared_positions(n, a, b).unwrap();
                    let r1sq = r1.checked_mul(r1).unwrap();
                    assert!(r2 >= r1sq);
                    assert!(r1sq.checked_mul(Ratio::integer(3)).unwrap() >= r2);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn arc_distance_is_a_metric(n in 4usize..60, a in 0usize..120, b in 0usize..120, c in 0usize..120) {
            let (a, b, c) = (a % (2 * n), b % (2 * n), c % (2 * n));
            prop_assert_eq!(arc_half_units(n, a, b), arc_half_units(n, b, a));
            prop_assert!(arc_half_units(n, a, c) <= arc_half_units(n, a, b) + arc_half_units(n, b, c));
            prop_assert!(arc_half_units(n, a, b) <= n as u64);
            prop_assert_eq!(arc_half_units(n, a, a), 0);
        }
    }
}
