//! Deterministic grid search with local refinement.
//!
//! A coarse uniform grid is scanned first; each refinement round then scans a
//! finer grid spanning one coarse cell on either side of the incumbent. Grid
//! points are evaluated in parallel and reduced by `(value, index)` so the
//! lexicographically first point wins among equal values regardless of
//! evaluation order.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Resolution and refinement schedule for the numeric optimizations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Intervals over `θ ∈ [0, π]`.
    pub theta_steps: usize,
    /// Points over one period of `φ`.
    pub phi_steps: usize,
    pub refine_rounds: usize,
    /// Ratio of successive grid spacings, in `(0, 1)`.
    pub refine_shrink: f64,
    /// Points per phase over `[0, 2π)` for the complementary-basis search.
    pub phase_steps: usize,
    /// Steps per angle for the four-angle general probe search.
    pub general_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            theta_steps: 256,
            phi_steps: 256,
            refine_rounds: 3,
            refine_shrink: 0.1,
            phase_steps: 512,
            general_steps: 12,
        }
    }
}

pub const MIN_STEPS: usize = 8;

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("theta_steps", self.theta_steps),
            ("phi_steps", self.phi_steps),
            ("phase_steps", self.phase_steps),
            ("general_steps", self.general_steps),
        ] {
            if v < MIN_STEPS {
                return Err(Error::InvalidGrid(format!("{name} = {v} is below {MIN_STEPS}")));
            }
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "refine_shrink = {} is outside (0, 1)",
                self.refine_shrink
            )));
        }
        Ok(())
    }

    /// Grid spacing after all refinement rounds for an axis of length `span`
    /// sampled with `steps` intervals.
    pub fn final_cell(&self, span: f64, steps: usize) -> f64 {
        span / steps as f64 * self.refine_shrink.powi(self.refine_rounds as i32)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Axis<T> {
    /// `[lo, hi]`, both ends sampled.
    Closed { lo: T, hi: T },
    /// `[lo, lo + period)`, wraps around.
    Periodic { lo: T, period: T },
}

impl<T: Real> Axis<T> {
    fn coarse(&self, steps: usize) -> (Vec<T>, T) {
        let n = T::lit(steps as f64);
        match *self {
            Axis::Closed { lo, hi } => {
                let h = (hi - lo) / n;
                let pts = (0..=steps).map(|k| lo + h * T::lit(k as f64)).collect();
                (pts, h)
            }
            Axis::Periodic { lo, period } => {
                let h = period / n;
                let pts = (0..steps).map(|k| lo + h * T::lit(k as f64)).collect();
                (pts, h)
            }
        }
    }

    fn window(&self, center: T, half_points: usize, spacing: T) -> Vec<T> {
        let k = half_points as i64;
        (-k..=k)
            .map(|i| self.normalize(center + spacing * T::lit(i as f64)))
            .collect()
    }

    fn normalize(&self, x: T) -> T {
        match *self {
            Axis::Closed { lo, hi } => x.max(lo).min(hi),
            Axis::Periodic { lo, period } => {
                let y = x - period * ((x - lo) / period).floor();
                if y >= lo + period {
                    lo
                } else {
                    y
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Optimum<T, const N: usize> {
    pub point: [T; N],
    pub value: T,
    /// Spacing of the last grid that was scanned, per axis.
    pub cell: [T; N],
}

/// `a` is strictly better than `b` under `sense`; NaN never wins.
fn better<T: Real>(sense: Sense, a: T, b: T) -> bool {
    if a.is_nan() {
        return false;
    }
    if b.is_nan() {
        return true;
    }
    match sense {
        Sense::Minimize => a < b,
        Sense::Maximize => a > b,
    }
}

fn scan<T: Real, const N: usize, F>(samples: &[Vec<T>; N], sense: Sense, f: &F) -> ([T; N], T)
where
    F: Fn(&[T; N]) -> T + Sync,
{
    let total: usize = samples.iter().map(Vec::len).product();
    let point_at = |mut idx: usize| {
        let mut p = [T::zero(); N];
        for axis in (0..N).rev() {
            let len = samples[axis].len();
            p[axis] = samples[axis][idx % len];
            idx /= len;
        }
        p
    };
    let (value, idx) = (0..total)
        .into_par_iter()
        .map(|idx| (f(&point_at(idx)), idx))
        .reduce_with(|a, b| {
            if better(sense, a.0, b.0) {
                a
            } else if better(sense, b.0, a.0) {
                b
            } else {
                match a.1.cmp(&b.1) {
                    Ordering::Greater => b,
                    _ => a,
                }
            }
        })
        .expect("non-empty grid");
    (point_at(idx), value)
}

pub(crate) fn optimize<T: Real, const N: usize, F>(
    axes: [Axis<T>; N],
    steps: [usize; N],
    rounds: usize,
    shrink: f64,
    sense: Sense,
    f: F,
) -> Optimum<T, N>
where
    F: Fn(&[T; N]) -> T + Sync,
{
    let mut cell = [T::zero(); N];
    let samples: [Vec<T>; N] = std::array::from_fn(|k| {
        let (pts, h) = axes[k].coarse(steps[k]);
        cell[k] = h;
        pts
    });
    let (mut point, mut value) = scan(&samples, sense, &f);

    let half_points = (1.0 / shrink).round().max(1.0) as usize;
    let shrink = T::lit(shrink);
    for _ in 0..rounds {
        let fine = cell.map(|h| h * shrink);
        let samples: [Vec<T>; N] = std::array::from_fn(|k| axes[k].window(point[k], half_points, fine[k]));
        let (p, v) = scan(&samples, sense, &f);
        if better(sense, v, value) {
            point = p;
            value = v;
        }
        cell = fine;
    }
    Optimum { point, value, cell }
}

/// Distance between two angles modulo `period`.
pub fn circular_distance<T: Real>(a: T, b: T, period: T) -> T {
    let d = (a - b).abs() % period;
    d.min(period - d)
}
