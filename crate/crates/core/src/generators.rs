//! Deterministic and seeded knot conformations for tests, benchmarks and the CLI.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{Isometry, LatticeKnot, LatticePoint};

pub const MIN_TORUS_SCALE: u32 = 3;
const TORUS_RETRIES: u32 = 8;
/// Longest detour the torus repair step may cut out.
const MAX_ERASED_LOOP: usize = 16;
const RANDOM_NODE_BUDGET: u64 = 200_000;
const RANDOM_RESEEDS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Rectangle { m: u32, n: u32 },
    TorusKnot { p: u32, q: u32, scale: u32 },
    RandomPolygon { length: usize, seed: u64 },
    ExhaustiveSmall { max_len: usize },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Vec<LatticeKnot>> {
        match *self {
            GeneratorSpec::Rectangle { m, n } => rectangle(m, n).map(|k| vec![k]),
            GeneratorSpec::TorusKnot { p, q, scale } => torus_knot(p, q, scale).map(|k| vec![k]),
            GeneratorSpec::RandomPolygon { length, seed } => {
                random_polygon(length, seed).map(|k| vec![k])
            }
            GeneratorSpec::ExhaustiveSmall { max_len } => Ok(exhaustive_small(max_len)),
        }
    }
}

/// Axis-aligned rectangle in the `z = 0` plane with a corner at the origin,
/// `m` units along y and `n` units along x, traversed counter-clockwise.
pub fn rectangle(m: u32, n: u32) -> Result<LatticeKnot> {
    if m == 0 || n == 0 {
        return Err(Error::Generator(format!("rectangle sides must be positive, got {m}x{n}")));
    }
    let (w, h) = (n as i64, m as i64);
    let mut c = Vec::with_capacity(2 * (m + n) as usize);
    c.extend((0..w).map(|x| [x, 0, 0]));
    c.extend((0..h).map(|y| [w, y, 0]));
    c.extend((1..=w).rev().map(|x| [x, h, 0]));
    c.extend((1..=h).rev().map(|y| [0, y, 0]));
    LatticeKnot::from_true_coords(&c)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A lattice conformation of the `(p, q)` torus knot.
///
/// The standard curve on a torus with tube radius `s` and core radius `2.5 s`
/// is sampled densely, rounded to integer points and joined by unit steps.
/// Short backtracking loops left by rounding are erased. A loop longer than
/// the repair limit, or an invalid result, triggers a retry at the next scale
/// with a shifted starting parameter.
pub fn torus_knot(p: u32, q: u32, scale: u32) -> Result<LatticeKnot> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::Generator(format!(
            "torus knot needs coprime p, q >= 2, got ({p}, {q})"
        )));
    }
    if scale < MIN_TORUS_SCALE {
        return Err(Error::Generator(format!(
            "torus scale must be at least {MIN_TORUS_SCALE}, got {scale}"
        )));
    }
    let mut attempts = Vec::new();
    for attempt in 0..TORUS_RETRIES {
        let s = scale + attempt;
        attempts.push(s as u64);
        if let Some(k) = trace_torus(p, q, s, attempt) {
            return Ok(k);
        }
    }
    Err(Error::GeneratorExhausted {
        kind: "torus knot",
        attempts,
    })
}

fn trace_torus(p: u32, q: u32, s: u32, attempt: u32) -> Option<LatticeKnot> {
    let (pf, qf) = (p as f64, q as f64);
    let r = s as f64;
    let big_r = 2.5 * r;
    let curve = |t: f64| {
        let rho = big_r + r * (qf * t).cos();
        [rho * (pf * t).cos(), rho * (pf * t).sin(), r * (qf * t).sin()]
    };
    // bound on the curve length, sampled at a quarter lattice unit
    let length = TAU * ((pf * (big_r + r)).powi(2) + (qf * r).powi(2)).sqrt();
    let samples = (4.0 * length).ceil() as usize + 16;
    let phase = attempt as f64 * 0.37;
    let round = |c: [f64; 3]| c.map(|x| x.round() as i64);

    let start = round(curve(phase));
    let mut walk = LoopErasedWalk::new(start);
    let mut cur = start;
    for k in 1..=samples {
        let target = if k == samples {
            start
        } else {
            round(curve(phase + TAU * k as f64 / samples as f64))
        };
        for axis in 0..3 {
            while cur[axis] != target[axis] {
                cur[axis] += (target[axis] - cur[axis]).signum();
                if !walk.step(cur) {
                    return None;
                }
            }
        }
    }
    if !walk.closed {
        return None;
    }
    LatticeKnot::from_true_coords(&walk.path).ok()
}

struct LoopErasedWalk {
    path: Vec<[i64; 3]>,
    at: HashMap<[i64; 3], usize>,
    closed: bool,
}

impl LoopErasedWalk {
    fn new(start: [i64; 3]) -> Self {
        LoopErasedWalk {
            path: vec![start],
            at: HashMap::from([(start, 0)]),
            closed: false,
        }
    }

    /// Appends a point, cutting out a short loop on revisits. Returning to the
    /// start closes the walk; any further step after that fails.
    fn step(&mut self, pt: [i64; 3]) -> bool {
        if self.closed {
            return false;
        }
        match self.at.get(&pt).copied() {
            Some(0) if self.path.len() > MAX_ERASED_LOOP => {
                self.closed = true;
                true
            }
            Some(k) => {
                if self.path.len() - 1 - k > MAX_ERASED_LOOP {
                    return false;
                }
                for gone in self.path.drain(k + 1..) {
                    self.at.remove(&gone);
                }
                true
            }
            None => {
                self.at.insert(pt, self.path.len());
                self.path.push(pt);
                true
            }
        }
    }
}

const STEPS: [[i64; 3]; 6] = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
];

fn add(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn taxicab(a: [i64; 3]) -> usize {
    a.iter().map(|c| c.unsigned_abs() as usize).sum()
}

/// A reproducible closed self-avoiding polygon with `length` edges starting
/// at the origin.
///
/// Depth-first search over unit moves in an order shuffled by a ChaCha8
/// stream seeded with `seed`, pruning any position farther from the origin
/// than the remaining step count. If the node budget runs out the search
/// restarts with a seed drawn from the same stream.
pub fn random_polygon(length: usize, seed: u64) -> Result<LatticeKnot> {
    if length < 4 || length % 2 == 1 {
        return Err(Error::Generator(format!(
            "random polygon length must be even and at least 4, got {length}"
        )));
    }
    let mut seeds = vec![seed];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RESEEDS {
        if let Some(path) = search_polygon(length, &mut rng) {
            return LatticeKnot::from_true_coords(&path);
        }
        let next = rng.gen::<u64>();
        seeds.push(next);
        rng = ChaCha8Rng::seed_from_u64(next);
    }
    Err(Error::GeneratorExhausted {
        kind: "random polygon",
        attempts: seeds,
    })
}

fn search_polygon(length: usize, rng: &mut ChaCha8Rng) -> Option<Vec<[i64; 3]>> {
    let origin = [0, 0, 0];
    let mut path = vec![origin];
    let mut visited: HashSet<[i64; 3]> = HashSet::from([origin]);
    let shuffled = |rng: &mut ChaCha8Rng| {
        let mut order = STEPS;
        order.shuffle(rng);
        (order, 0usize)
    };
    let mut frames = vec![shuffled(rng)];
    let mut budget = RANDOM_NODE_BUDGET;
    while let Some((order, next)) = frames.last_mut() {
        if *next == order.len() {
            frames.pop();
            let gone = path.pop().expect("path tracks frames");
            visited.remove(&gone);
            if frames.is_empty() {
                return None;
            }
            continue;
        }
        let cand = add(*path.last().expect("nonempty"), order[*next]);
        *next += 1;
        let steps_taken = path.len();
        if steps_taken == length {
            if cand == origin {
                return Some(path);
            }
            continue;
        }
        if visited.contains(&cand) || taxicab(cand) > length - steps_taken {
            continue;
        }
        budget = budget.checked_sub(1)?;
        visited.insert(cand);
        path.push(cand);
        let frame = shuffled(rng);
        frames.push(frame);
    }
    None
}

/// Lexicographically least true-coordinate vertex sequence over all 48
/// lattice isometries, translations, cyclic rotations and both orientations.
pub fn canonical_form(knot: &LatticeKnot) -> Vec<[i64; 3]> {
    canonical_form_under(knot, &Isometry::all())
}

fn canonical_form_under(knot: &LatticeKnot, isometries: &[Isometry]) -> Vec<[i64; 3]> {
    let n = knot.len();
    let mut best: Option<Vec<[i64; 3]>> = None;
    for iso in isometries {
        let image: Vec<LatticePoint> = knot.vertices().iter().map(|p| iso.apply(*p)).collect();
        let (start, min) = image
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| **p)
            .map(|(i, p)| (i, *p))
            .expect("nonempty knot");
        for forward in [true, false] {
            let seq: Vec<[i64; 3]> = (0..n)
                .map(|k| {
                    let i = if forward { (start + k) % n } else { (start + n - k) % n };
                    let p = image[i];
                    [(p.x - min.x) / 2, (p.y - min.y) / 2, (p.z - min.z) / 2]
                })
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.expect("at least one isometry")
}

/// Every closed self-avoiding polygon with at most `max_len` edges, one
/// representative per isometry class, each in canonical form. Sorted by
/// length, then by canonical sequence.
pub fn exhaustive_small(max_len: usize) -> Vec<LatticeKnot> {
    enumerate_polygons(max_len, canonical_form)
}

/// Lexicographically least vertex sequence over translations, cyclic
/// rotations and both orientations only.
#[cfg(test)]
fn translation_class(knot: &LatticeKnot) -> Vec<[i64; 3]> {
    canonical_form_under(knot, &[Isometry::IDENTITY])
}

fn enumerate_polygons(
    max_len: usize,
    key: fn(&LatticeKnot) -> Vec<[i64; 3]>,
) -> Vec<LatticeKnot> {
    let mut classes: BTreeSet<(usize, Vec<[i64; 3]>)> = BTreeSet::new();
    let origin = [0i64, 0, 0];
    let mut path = vec![origin];
    let mut visited: HashSet<[i64; 3]> = HashSet::from([origin]);

    fn dfs(
        max_len: usize,
        path: &mut Vec<[i64; 3]>,
        visited: &mut HashSet<[i64; 3]>,
        classes: &mut BTreeSet<(usize, Vec<[i64; 3]>)>,
        key: fn(&LatticeKnot) -> Vec<[i64; 3]>,
    ) {
        let cur = *path.last().expect("nonempty");
        if path.len() >= 4 && taxicab(cur) == 1 {
            let knot = LatticeKnot::from_true_coords(path).expect("closed self-avoiding walk");
            classes.insert((path.len(), key(&knot)));
        }
        for step in STEPS {
            let next = add(cur, step);
            // the origin is the lexicographically least vertex of the polygon
            if next <= [0, 0, 0] || visited.contains(&next) {
                continue;
            }
            if path.len() + taxicab(next) > max_len {
                continue;
            }
            visited.insert(next);
            path.push(next);
            dfs(max_len, path, visited, classes, key);
            path.pop();
            visited.remove(&next);
        }
    }

    if max_len >= 4 {
        dfs(max_len, &mut path, &mut visited, &mut classes, key);
    }
    classes
        .into_iter()
        .map(|(_, seq)| LatticeKnot::from_true_coords(&seq).expect("canonical form is valid"))
        .collect()
}
