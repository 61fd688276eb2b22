//! Machine-readable reports and heatmap CSV.

use serde::Serialize;
use serde_json::{Number, Value};

use crate::distortion::{self, DistortionReport, HeatmapRow, Pruning};
use crate::error::Result;
use crate::lattice::{LatticeKnot, LatticePoint};
use crate::metrics::ArcPosition;
use crate::midpoint::{self, Certificate, Verdict, THRESHOLD_LOWER, THRESHOLD_UPPER};
use crate::ratio::Ratio;

pub const REPORT_SCHEMA: &str = "knotdist.report/v1";
/// Digits after the point in display-only decimals.
pub const DECIMAL_PLACES: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioDoc {
    pub num: u64,
    pub den: u64,
    pub decimal: String,
}

impl From<Ratio> for RatioDoc {
    fn from(r: Ratio) -> Self {
        RatioDoc {
            num: r.num(),
            den: r.den(),
            decimal: r.to_decimal(DECIMAL_PLACES),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnclosureDoc {
    pub lower: RatioDoc,
    pub upper: RatioDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateDoc {
    pub verdict: Verdict,
    pub threshold_exceeded: bool,
    pub near_threshold: bool,
    pub threshold_enclosure: EnclosureDoc,
}

impl From<Certificate> for CertificateDoc {
    fn from(c: Certificate) -> Self {
        CertificateDoc {
            verdict: c.verdict,
            threshold_exceeded: c.threshold_exceeded,
            near_threshold: c.near_threshold,
            threshold_enclosure: EnclosureDoc {
                lower: THRESHOLD_LOWER.into(),
                upper: THRESHOLD_UPPER.into(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeatmapDoc {
    pub index: usize,
    pub vertex: [i64; 3],
    pub value: RatioDoc,
}

/// Output of `knotdist compute`. Exact values live in `num`/`den`; the
/// `decimal` strings are for reading only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub n_edges: usize,
    pub delta: RatioDoc,
    pub witnesses: Vec<[[i64; 3]; 2]>,
    pub gromov1: RatioDoc,
    pub certificate: CertificateDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heatmap: Option<Vec<HeatmapDoc>>,
}

fn vertex_coords(p: LatticePoint) -> [i64; 3] {
    p.true_coords().expect("witness of vertex distortion is a vertex")
}

/// Witness pairs in true coordinates, each pair ordered and the list sorted.
pub fn sorted_vertex_witnesses(report: &DistortionReport) -> Vec<[[i64; 3]; 2]> {
    let mut out: Vec<[[i64; 3]; 2]> = report
        .witnesses
        .iter()
        .map(|(a, b)| {
            let (a, b) = (vertex_coords(a.point), vertex_coords(b.point));
            if a <= b {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect();
    out.sort_unstable();
    out
}

impl ReportDocument {
    pub fn build(knot: &LatticeKnot, pruning: Pruning, with_heatmap: bool) -> Result<Self> {
        let (vertex, heat) = if with_heatmap {
            let (r, rows) = distortion::vertex_distortion_with_heatmap(knot);
            (r, Some(rows))
        } else {
            (distortion::vertex_distortion_with(knot, pruning), None)
        };
        let gromov = distortion::gromov1_distortion_with(knot, pruning)?;
        Ok(ReportDocument {
            schema: REPORT_SCHEMA,
            n_edges: knot.len(),
            delta: vertex.delta.into(),
            witnesses: sorted_vertex_witnesses(&vertex),
            gromov1: gromov.delta.into(),
            certificate: midpoint::certify_unknot(&vertex).into(),
            heatmap: heat.map(|rows| rows.iter().map(heatmap_doc).collect()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text summary.
    pub fn to_human(&self) -> String {
        let ratio = |r: &RatioDoc| format!("{}/{} ({})", r.num, r.den, r.decimal);
        let mut s = format!("edges: {}\n", self.n_edges);
        s += &format!("vertex distortion: {}\n", ratio(&self.delta));
        s += &format!("witnesses ({}):\n", self.witnesses.len());
        for [a, b] in &self.witnesses {
            s += &format!(
                "  ({}, {}, {}) -- ({}, {}, {})\n",
                a[0], a[1], a[2], b[0], b[1], b[2]
            );
        }
        s += &format!("gromov 1-distortion: {}\n", ratio(&self.gromov1));
        let c = &self.certificate;
        s += &format!(
            "certificate: {} (threshold in [{}, {}])\n",
            verdict_str(c.verdict),
            THRESHOLD_LOWER.to_decimal(10),
            THRESHOLD_UPPER.to_decimal(10)
        );
        s
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::UnknotCertified => "unknot_certified",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn heatmap_doc(row: &HeatmapRow) -> HeatmapDoc {
    HeatmapDoc {
        index: row.index,
        vertex: vertex_coords(row.vertex),
        value: row.value.into(),
    }
}

/// `index,x,y,z,value_num,value_den,value_decimal` with a header line.
pub fn heatmap_csv(rows: &[HeatmapRow]) -> String {
    let mut s = String::from("index,x,y,z,value_num,value_den,value_decimal\n");
    for row in rows {
        let [x, y, z] = vertex_coords(row.vertex);
        s += &format!(
            "{},{x},{y},{z},{},{},{}\n",
            row.index,
            row.value.num(),
            row.value.den(),
            row.value.to_decimal(DECIMAL_PLACES)
        );
    }
    s
}

/// A half-integer true coordinate as a JSON number.
fn half_coordinate(doubled: i64) -> Value {
    if doubled % 2 == 0 {
        Value::from(doubled / 2)
    } else {
        Value::Number(Number::from_f64(doubled as f64 / 2.0).expect("finite"))
    }
}

fn point_value(p: &ArcPosition) -> Value {
    Value::Array(p.point.coords().iter().map(|c| half_coordinate(*c)).collect())
}

/// Output of `knotdist gromov1`: witnesses are points of `V_m(K)`, so
/// coordinates may be half-integers.
pub fn gromov1_document(knot: &LatticeKnot, report: &DistortionReport) -> Value {
    let mut witnesses: Vec<(ArcPosition, ArcPosition)> = report
        .witnesses
        .iter()
        .map(|(a, b)| if a.point <= b.point { (*a, *b) } else { (*b, *a) })
        .collect();
    witnesses.sort_unstable_by_key(|(a, b)| (a.point, b.point));
    serde_json::json!({
        "schema": REPORT_SCHEMA,
        "n_edges": knot.len(),
        "gromov1": RatioDoc::from(report.delta),
        "witnesses": witnesses
            .iter()
            .map(|(a, b)| Value::Array(vec![point_value(a), point_value(b)]))
            .collect::<Vec<_>>(),
    })
}
