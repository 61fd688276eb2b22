//! Midpoint pairs, neighbour replacement and the unknot certificate.

use serde::Serialize;

use crate::distortion::DistortionReport;
use crate::error::{Error, Result};
use crate::lattice::{Axis, LatticeKnot, LatticePoint};
use crate::metrics::{self, ArcPosition};
use crate::ratio::Ratio;

/// The two endpoints of the edge containing midpoint `m`, in the knot's
/// cyclic order.
pub fn neighbors(knot: &LatticeKnot, m: LatticePoint) -> Result<(LatticePoint, LatticePoint)> {
    let e = knot.edge_of_midpoint(m).ok_or(Error::NotAMidpoint(m))?;
    let edge = knot.edge(e);
    Ok((edge.start, edge.end))
}

/// How the knot's orientation runs along two parallel edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOrientation {
    /// Opposite directions along the shared axis: the order
    /// `n_p⁻ → n_p⁺ → n_q⁺ → n_q⁻`, where `⁺` is the larger coordinate.
    Opposite,
    /// Same direction: `n_p⁻ → n_p⁺ → n_q⁻ → n_q⁺`.
    Same,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MidpointPairClass {
    pub p: LatticePoint,
    pub q: LatticePoint,
    pub generic: bool,
    pub antipodal: bool,
    pub parallel_edges: bool,
    /// Axis along which both points have the same half-integer coordinate.
    pub shared_fractional_coordinate: Option<Axis>,
    /// Only set for parallel edges.
    pub orientation: Option<EdgeOrientation>,
    pub d1_pq: Ratio,
    /// `(d₁(p, n_q⁻), d₁(p, n_q⁺))` in cyclic neighbour order.
    pub d1_p_to_q_neighbors: (Ratio, Ratio),
    /// `(d₁(n_p⁻, q), d₁(n_p⁺, q))`.
    pub d1_p_neighbors_to_q: (Ratio, Ratio),
}

impl MidpointPairClass {
    /// The four neighbour distances all equal `d₁(p, q) + 1/2`.
    pub fn neighbor_distances_balanced(&self) -> bool {
        let target = self.d1_pq.checked_add(Ratio::new(1, 2));
        let (a, b) = self.d1_p_to_q_neighbors;
        let (c, d) = self.d1_p_neighbors_to_q;
        [a, b, c, d].iter().all(|x| Some(*x) == target)
    }
}

fn sign(a: LatticePoint, b: LatticePoint, axis: Axis) -> i64 {
    (b.component(axis) - a.component(axis)).signum()
}

pub fn classify_pair(knot: &LatticeKnot, p: LatticePoint, q: LatticePoint) -> Result<MidpointPairClass> {
    if p == q {
        return Err(Error::DegeneratePair(p));
    }
    let (pm, pp) = neighbors(knot, p)?;
    let (qm, qp) = neighbors(knot, q)?;
    let d1_p_to_q_neighbors = (metrics::d1(p, qm), metrics::d1(p, qp));
    let d1_p_neighbors_to_q = (metrics::d1(pm, q), metrics::d1(pp, q));
    let generic = d1_p_to_q_neighbors.0 != d1_p_to_q_neighbors.1
        || d1_p_neighbors_to_q.0 != d1_p_neighbors_to_q.1;

    let axis_p = p.fractional_axis().expect("midpoint");
    let axis_q = q.fractional_axis().expect("midpoint");
    let parallel_edges = axis_p == axis_q;
    let shared_fractional_coordinate =
        (parallel_edges && p.component(axis_p) == q.component(axis_q)).then_some(axis_p);
    let orientation = parallel_edges.then(|| {
        if sign(pm, pp, axis_p) == sign(qm, qp, axis_p) {
            EdgeOrientation::Same
        } else {
            EdgeOrientation::Opposite
        }
    });

    let pa = knot.position(p)?;
    let qa = knot.position(q)?;
    let class = MidpointPairClass {
        p,
        q,
        generic,
        antipodal: metrics::antipodal(knot, &pa, &qa),
        parallel_edges,
        shared_fractional_coordinate,
        orientation,
        d1_pq: metrics::d1(p, q),
        d1_p_to_q_neighbors,
        d1_p_neighbors_to_q,
    };
    debug_assert!(
        class.generic
            || (class.parallel_edges
                && class.shared_fractional_coordinate.is_some()
                && class.neighbor_distances_balanced())
    );
    Ok(class)
}

fn replacement_candidates(knot: &LatticeKnot, a: &ArcPosition) -> Vec<ArcPosition> {
    if a.is_vertex() {
        vec![*a]
    } else {
        vec![knot.at_offset(a.offset - 1), knot.at_offset(a.offset + 1)]
    }
}

/// Searches the neighbour replacements of `p` and `q` (a vertex replaces
/// itself) for a vertex pair whose `ρ₁` is at least `ρ₁(p, q)`. Returns the
/// best such pair, or `None` when no replacement reaches `ρ₁(p, q)`.
pub fn dominating_vertex_pair(
    knot: &LatticeKnot,
    p: LatticePoint,
    q: LatticePoint,
) -> Result<Option<(LatticePoint, LatticePoint)>> {
    if p == q {
        return Err(Error::DegeneratePair(p));
    }
    let n = knot.len();
    let pa = knot.position(p)?;
    let qa = knot.position(q)?;
    let target = metrics::rho1_positions(n, &pa, &qa);
    let mut best: Option<(Ratio, LatticePoint, LatticePoint)> = None;
    for a in replacement_candidates(knot, &pa) {
        for b in replacement_candidates(knot, &qa) {
            let r = metrics::rho1_positions(n, &a, &b);
            if best.is_none_or(|(bv, _, _)| r > bv) {
                best = Some((r, a.point, b.point));
            }
        }
    }
    Ok(best.and_then(|(r, a, b)| (r >= target).then_some((a, b))))
}

/// Rational enclosure of `5π/(3√3) − 1 = 2.02299894039036…`, to ten decimals.
pub const THRESHOLD_LOWER: Ratio = Ratio::new_const(20_229_989_403, 10_000_000_000);
pub const THRESHOLD_UPPER: Ratio = Ratio::new_const(5_057_497_351, 2_500_000_000);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    UnknotCertified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub delta: Ratio,
    /// `delta` is provably at or above the threshold.
    pub threshold_exceeded: bool,
    /// `delta` falls strictly inside the enclosure, so neither side is provable.
    pub near_threshold: bool,
    pub verdict: Verdict,
}

/// A knotted lattice conformation has vertex distortion at least
/// `5π/(3√3) − 1`, so anything provably below it is an unknot. Above the
/// threshold nothing is implied.
pub fn certify_unknot(report: &DistortionReport) -> Certificate {
    let delta = report.delta;
    let below = delta <= THRESHOLD_LOWER;
    let above = delta >= THRESHOLD_UPPER;
    Certificate {
        delta,
        threshold_exceeded: above,
        near_threshold: !below && !above,
        verdict: if below {
            Verdict::UnknotCertified
        } else {
            Verdict::Inconclusive
        },
    }
}
