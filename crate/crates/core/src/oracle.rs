//! Seeded sampling of physical states and the analytic-versus-numeric
//! comparison driver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bd::BdTriple;
use crate::error::Result;
use crate::quantifiers::{classical_correlations_bd, laqc_bd, laqc_search};
use crate::scalar::Real;
use crate::search::GridSpec;

/// Deterministic stream of physical states, rejection-sampled uniformly from
/// the cube `[-1, 1]³`.
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_physical<T: Real>(&mut self) -> BdTriple<T> {
        loop {
            let c: [f64; 3] = std::array::from_fn(|_| self.rng.gen_range(-1.0..=1.0));
            let s = BdTriple::new(T::lit(c[0]), T::lit(c[1]), T::lit(c[2]));
            if s.is_physical(T::zero()) {
                return s;
            }
        }
    }

    /// Next physical state satisfying `keep`.
    pub fn next_where<T: Real>(&mut self, keep: impl Fn(&BdTriple<T>) -> bool) -> BdTriple<T> {
        loop {
            let s = self.next_physical();
            if keep(&s) {
                return s;
            }
        }
    }

    pub fn take<T: Real>(&mut self, n: usize) -> Vec<BdTriple<T>> {
        (0..n).map(|_| self.next_physical()).collect()
    }
}

/// Analytic and numeric values for one state.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow<T> {
    pub state: BdTriple<T>,
    pub classical_analytic: T,
    pub classical_numeric: T,
    pub laqc_analytic: T,
    pub laqc_numeric: T,
}

impl<T: Real> ComparisonRow<T> {
    pub fn delta_classical(&self) -> T {
        (self.classical_analytic - self.classical_numeric).abs()
    }

    pub fn delta_laqc(&self) -> T {
        (self.laqc_analytic - self.laqc_numeric).abs()
    }
}

pub fn compare_state<T: Real>(state: &BdTriple<T>, grid: &GridSpec) -> Result<ComparisonRow<T>> {
    let laqc = laqc_search(state, grid)?;
    Ok(ComparisonRow {
        state: *state,
        classical_analytic: classical_correlations_bd(state)?.value,
        classical_numeric: laqc.classical.result.value,
        laqc_analytic: laqc_bd(state)?.value,
        laqc_numeric: laqc.result.value,
    })
}

#[derive(Clone, Debug)]
pub struct OracleSummary<T> {
    pub rows: Vec<ComparisonRow<T>>,
    pub max_delta_classical: T,
    pub worst_classical: BdTriple<T>,
    pub max_delta_laqc: T,
    pub worst_laqc: BdTriple<T>,
}

impl<T: Real> OracleSummary<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.max_delta_classical <= tol && self.max_delta_laqc <= tol
    }
}

/// Draws `count` physical states from `seed` (optionally preceded by
/// `first`), and runs both paths of both quantifiers on each.
pub fn oracle_compare<T: Real>(
    count: usize,
    seed: u64,
    first: Option<BdTriple<T>>,
    grid: &GridSpec,
) -> Result<OracleSummary<T>> {
    grid.validate()?;
    let mut sampler = StateSampler::new(seed);
    let states: Vec<BdTriple<T>> = first
        .into_iter()
        .chain(std::iter::repeat_with(|| sampler.next_physical()))
        .take(count)
        .collect();
    let rows = states
        .par_iter()
        .map(|s| compare_state(s, grid))
        .collect::<Result<Vec<_>>>()?;

    let worst = |delta: fn(&ComparisonRow<T>) -> T| {
        rows.iter()
            .fold(None::<&ComparisonRow<T>>, |best, r| match best {
                Some(b) if !(delta(r) > delta(b)) => Some(b),
                _ => Some(r),
            })
            .map(|r| (delta(r), r.state))
            .unwrap_or((T::zero(), BdTriple::new(T::zero(), T::zero(), T::zero())))
    };
    let (max_delta_classical, worst_classical) = worst(ComparisonRow::delta_classical);
    let (max_delta_laqc, worst_laqc) = worst(ComparisonRow::delta_laqc);
    Ok(OracleSummary {
        rows,
        max_delta_classical,
        worst_classical,
        max_delta_laqc,
        worst_laqc,
    })
}
