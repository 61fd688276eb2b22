#![allow(dead_code)]

use knotdist::generators::{random_polygon, rectangle, torus_knot};
use knotdist::LatticeKnot;

pub struct Named {
    pub name: String,
    pub knot: LatticeKnot,
}

pub fn rectangles() -> Vec<Named> {
    let mut out = Vec::new();
    for m in 1..=6 {
        for n in 1..=6 {
            out.push(Named {
                name: format!("rectangle({m},{n})"),
                knot: rectangle(m, n).unwrap(),
            });
        }
    }
    out
}

/// 50 seeded polygons, lengths cycling through the even values 4..=40.
pub fn random_polygons() -> Vec<Named> {
    (0..50u64)
        .map(|seed| {
            let length = 4 + 2 * (seed as usize % 19);
            Named {
                name: format!("random({length}, seed {seed})"),
                knot: random_polygon(length, seed).unwrap(),
            }
        })
        .collect()
}

pub fn trefoil() -> Named {
    Named {
        name: "torus_knot(2,3,4)".into(),
        knot: torus_knot(2, 3, 4).unwrap(),
    }
}

/// Rectangles up to 6x6, 50 random polygons and one trefoil.
pub fn corpus() -> Vec<Named> {
    let mut c = rectangles();
    c.extend(random_polygons());
    c.push(trefoil());
    c
}
