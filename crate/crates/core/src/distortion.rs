//! Vertex distortion, Gromov 1-distortion and per-vertex heatmaps.
//!
//! The vertex sweep follows the band order of the reference algorithm: arc
//! separation `k` runs from `⌊N/2⌋` down to 1 and band `k` visits the pairs
//! `(i, i - k mod N)`. Every pair in a band shares the numerator `k`, so the
//! band maximum is `k / (smallest taxicab distance in the band)`.
//!
//! With pruning enabled the sweep stops before band `k` once `k < δ`: every
//! pair there has `ρ₁ = k / d₁ ≤ k < δ`, so neither the maximum nor the
//! witness set can change. Bands with `k = δ` are still scanned because
//! their `d₁ = 1` pairs are witnesses.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{LatticeKnot, LatticePoint};
use crate::metrics::{self, ArcPosition};
use crate::ratio::Ratio;

/// Below this many vertices a band is scanned on the calling thread.
const PARALLEL_MIN_VERTICES: usize = 4096;
const PARALLEL_CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pruning {
    #[default]
    Enabled,
    Disabled,
}

/// Maximum `ρ₁` with every pair attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistortionReport {
    pub delta: Ratio,
    /// Unordered pairs, each stored with the smaller arc offset first,
    /// sorted by offsets.
    pub witnesses: Vec<(ArcPosition, ArcPosition)>,
    pub pairs_examined: u64,
    /// Whether the sweep stopped before the last band.
    pub pruned: bool,
}

impl DistortionReport {
    /// Same maximum and same witness set, ignoring sweep statistics.
    pub fn same_result(&self, other: &DistortionReport) -> bool {
        self.delta == other.delta && self.witnesses == other.witnesses
    }

    fn from_index_pairs(
        knot: &LatticeKnot,
        delta: Ratio,
        mut pairs: Vec<(usize, usize)>,
        pairs_examined: u64,
        pruned: bool,
    ) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let witnesses = pairs
            .into_iter()
            .map(|(i, j)| (knot.at_offset(2 * i), knot.at_offset(2 * j)))
            .collect();
        DistortionReport {
            delta,
            witnesses,
            pairs_examined,
            pruned,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeatmapRow {
    pub index: usize,
    pub vertex: LatticePoint,
    /// Maximum of `ρ₁(vertex, ·)` over the other vertices.
    pub value: Ratio,
}

/// `(smallest doubled taxicab distance, pairs attaining it)` for one band.
type BandBest = (u64, Vec<(usize, usize)>);

fn merge_band(mut a: BandBest, b: BandBest) -> BandBest {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            a.1.extend(b.1);
            a
        }
    }
}

fn scan_range(v: &[LatticePoint], k: usize, range: std::ops::Range<usize>) -> BandBest {
    let n = v.len();
    let mut best = (u64::MAX, Vec::new());
    for i in range {
        let j = (i + n - k) % n;
        let d = v[i].taxicab_doubled(v[j]);
        if d < best.0 {
            best.0 = d;
            best.1.clear();
        }
        if d == best.0 {
            best.1.push(if i < j { (i, j) } else { (j, i) });
        }
    }
    best
}

fn scan_band(v: &[LatticePoint], k: usize) -> BandBest {
    let n = v.len();
    if n < PARALLEL_MIN_VERTICES {
        return scan_range(v, k, 0..n);
    }
    (0..n.div_ceil(PARALLEL_CHUNK))
        .into_par_iter()
        .map(|c| scan_range(v, k, c * PARALLEL_CHUNK..((c + 1) * PARALLEL_CHUNK).min(n)))
        .reduce(|| (u64::MAX, Vec::new()), merge_band)
}

/// Exact vertex distortion `δ_V(K)` with its full witness set.
pub fn vertex_distortion(knot: &LatticeKnot) -> DistortionReport {
    vertex_distortion_with(knot, Pruning::Enabled)
}

pub fn vertex_distortion_with(knot: &LatticeKnot, pruning: Pruning) -> DistortionReport {
    let v = knot.vertices();
    let n = v.len();
    let mut delta = Ratio::ONE;
    let mut witnesses: Vec<(usize, usize)> = Vec::new();
    let mut examined = 0u64;
    let mut pruned = false;

    for k in (1..=n / 2).rev() {
        if pruning == Pruning::Enabled && Ratio::integer(k as u64) < delta {
            pruned = true;
            break;
        }
        let (min_doubled, pairs) = scan_band(v, k);
        examined += n as u64;
        // vertices are even, so the true taxicab distance is exact
        let band = Ratio::new(k as u64, min_doubled / 2);
        if band > delta {
            delta = band;
            witnesses = pairs;
        } else if band == delta {
            witnesses.extend(pairs);
        }
    }
    DistortionReport::from_index_pairs(knot, delta, witnesses, examined, pruned)
}

/// Gromov 1-distortion, computed as the vertex distortion of the doubled
/// knot. Witnesses are reported as points of `V_m(K)`.
pub fn gromov1_distortion(knot: &LatticeKnot) -> Result<DistortionReport> {
    gromov1_distortion_with(knot, Pruning::Enabled)
}

pub fn gromov1_distortion_with(knot: &LatticeKnot, pruning: Pruning) -> Result<DistortionReport> {
    let doubled = knot.scale(2)?;
    let report = vertex_distortion_with(&doubled, pruning);
    let halve = |p: &ArcPosition| ArcPosition {
        // vertex j of 2K is the doubled image of the point at offset j of K
        offset: p.offset / 2,
        point: LatticePoint::from_coords(p.point.coords().map(|c| c / 2)),
    };
    let witnesses = report
        .witnesses
        .iter()
        .map(|(a, b)| (halve(a), halve(b)))
        .collect();
    Ok(DistortionReport {
        witnesses,
        ..report
    })
}

struct RowScan {
    value: Ratio,
    argmax: Vec<usize>,
}

fn scan_row(v: &[LatticePoint], i: usize) -> RowScan {
    let n = v.len();
    let mut value = Ratio::ZERO;
    let mut argmax = Vec::new();
    for j in 0..n {
        if j == i {
            continue;
        }
        let arc = i.abs_diff(j).min(n - i.abs_diff(j)) as u64;
        let r = Ratio::new(arc, v[i].taxicab_doubled(v[j]) / 2);
        if r > value {
            value = r;
            argmax.clear();
        }
        if r == value {
            argmax.push(j);
        }
    }
    RowScan { value, argmax }
}

/// Vertex distortion and heatmap from one unpruned all-pairs sweep.
pub fn vertex_distortion_with_heatmap(knot: &LatticeKnot) -> (DistortionReport, Vec<HeatmapRow>) {
    let v = knot.vertices();
    let n = v.len();
    let rows: Vec<RowScan> = (0..n).into_par_iter().map(|i| scan_row(v, i)).collect();
    let delta = rows.iter().map(|r| r.value).max().unwrap_or(Ratio::ONE);
    let pairs = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.value == delta)
        .flat_map(|(i, r)| r.argmax.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let heat = rows
        .iter()
        .enumerate()
        .map(|(i, r)| HeatmapRow {
            index: i,
            vertex: v[i],
            value: r.value,
        })
        .collect();
    let examined = (n as u64) * (n as u64 - 1);
    (
        DistortionReport::from_index_pairs(knot, delta, pairs, examined, false),
        heat,
    )
}

pub fn heatmap(knot: &LatticeKnot) -> Vec<HeatmapRow> {
    vertex_distortion_with_heatmap(knot).1
}

/// Maximum of `ρ₂²` over distinct vertex pairs. Since `d ≤ d₁`, this is at
/// least `δ_V(K)²`, and it is a lower bound for `δ(K)²`.
pub fn euclidean_vertex_lower_bound(knot: &LatticeKnot) -> Result<Ratio> {
    let n = knot.len();
    let positions: Vec<ArcPosition> = (0..n).map(|i| knot.at_offset(2 * i)).collect();
    let row_max = |i: usize| -> Result<Ratio> {
        let mut best = Ratio::ZERO;
        for j in i + 1..n {
            best = best.max(metrics::rho2_squared_positions(n, &positions[i], &positions[j])?);
        }
        Ok(best)
    };
    (0..n)
        .into_par_iter()
        .map(row_max)
        .try_reduce(|| Ratio::ZERO, |a, b| Ok(a.max(b)))
}

/// Exhaustive reference computations with no pruning and no doubling.
pub mod oracle {
    use super::*;

    fn max_over(knot: &LatticeKnot, points: &[ArcPosition]) -> DistortionReport {
        let n = knot.len();
        let mut delta = Ratio::ONE;
        let mut witnesses = Vec::new();
        let mut examined = 0;
        for (ai, a) in points.iter().enumerate() {
            for b in &points[ai + 1..] {
                examined += 1;
                let r = metrics::rho1_positions(n, a, b);
                if r > delta {
                    delta = r;
                    witnesses.clear();
                }
                if r == delta {
                    witnesses.push((*a, *b));
                }
            }
        }
        DistortionReport {
            delta,
            witnesses,
            pairs_examined: examined,
            pruned: false,
        }
    }

    /// Maximum of `ρ₁` over all pairs of `V_m(K)`.
    pub fn brute_force_vm_distortion(knot: &LatticeKnot) -> DistortionReport {
        max_over(knot, &knot.vm_points())
    }

    /// Maximum of `ρ₁` over all vertex pairs.
    pub fn brute_force_vertex_distortion(knot: &LatticeKnot) -> DistortionReport {
        let vertices: Vec<ArcPosition> =
            knot.vm_points().into_iter().filter(|p| p.is_vertex()).collect();
        max_over(knot, &vertices)
    }
}
