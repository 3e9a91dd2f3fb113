use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::projgeo::{ProjMap, ProjPoint};
use crate::scalar::ExactField;

pub fn point_height<F: ExactField>(p: &ProjPoint<F>) -> BigUint {
    p.coords().iter().map(|c| c.height()).max().unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    /// The orbit closes up after `period` steps.
    Periodic(usize),
    /// In both directions the walk left the bounding set for good: the last
    /// point of the window sets the third strict height record of the walk
    /// and exceeds every bounding height.
    InfiniteCertified { back: usize, forward: usize },
    /// Step budget exhausted without either certificate.
    Uncertified,
}

/// A window `h^{-back}(start), …, h^{forward}(start)` of an orbit.
#[derive(Clone, Debug)]
pub struct OrbitWalk<F> {
    pub start: ProjPoint<F>,
    /// `points[i]` is `h^{i - back}(start)`.
    pub points: Vec<ProjPoint<F>>,
    pub back: usize,
    pub status: OrbitStatus,
}

impl<F: ExactField> OrbitWalk<F> {
    /// `h^n(start)` for `n` inside the window.
    pub fn at(&self, n: i64) -> Option<&ProjPoint<F>> {
        let i = n + self.back as i64;
        (i >= 0).then(|| self.points.get(i as usize)).flatten()
    }

    pub fn forward_len(&self) -> usize {
        self.points.len() - 1 - self.back
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.status, OrbitStatus::InfiniteCertified { .. })
    }
}

fn run<F: ExactField>(
    h: &ProjMap<F>,
    start: &ProjPoint<F>,
    bound: &BigUint,
    bounding: &BTreeSet<ProjPoint<F>>,
    max_steps: usize,
) -> (Vec<ProjPoint<F>>, Option<usize>, bool) {
    let mut pts = Vec::new();
    let mut x = start.clone();
    let mut record = point_height(start);
    let mut records = 0;
    let mut remaining: BTreeSet<&ProjPoint<F>> = bounding.iter().collect();
    remaining.remove(start);
    for step in 1..=max_steps {
        x = h.apply(&x);
        if &x == start {
            return (pts, Some(step), false);
        }
        remaining.remove(&x);
        pts.push(x.clone());
        let height = point_height(&x);
        if height <= record {
            continue;
        }
        record = height;
        records += 1;
        // heights over a number field need not grow at every step
        if records >= 3 && &record > bound && remaining.iter().all(|p| point_height(p) < record) {
            return (pts, None, true);
        }
    }
    (pts, None, false)
}

/// Walks the `⟨h⟩`-orbit of `start` until it closes up or provably escapes
/// `bounding` in both directions.
pub fn walk_orbit<F: ExactField>(
    h: &ProjMap<F>,
    start: &ProjPoint<F>,
    bounding: &BTreeSet<ProjPoint<F>>,
    max_steps: usize,
) -> OrbitWalk<F> {
    let bound = bounding.iter().map(point_height).max().unwrap_or_default();
    let (fwd, period, fwd_ok) = run(h, start, &bound, bounding, max_steps);
    if let Some(period) = period {
        let mut points = vec![start.clone()];
        points.extend(fwd);
        return OrbitWalk { start: start.clone(), points, back: 0, status: OrbitStatus::Periodic(period) };
    }
    let (bwd, _, bwd_ok) = run(&h.inverse(), start, &bound, bounding, max_steps);
    let back = bwd.len();
    let forward = fwd.len();
    let mut points: Vec<ProjPoint<F>> = bwd.into_iter().rev().collect();
    points.push(start.clone());
    points.extend(fwd);
    let status = if fwd_ok && bwd_ok {
        OrbitStatus::InfiniteCertified { back, forward }
    } else {
        OrbitStatus::Uncertified
    };
    OrbitWalk { start: start.clone(), points, back, status }
}
