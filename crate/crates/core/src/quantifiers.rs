//! Classical correlations `C` and local available quantum correlations `L`
//! of Bell-diagonal states, through the closed forms in `h(c_m)` / `h(c_M)`
//! and through brute-force optimization over measurement bases.

use std::fmt;

use crate::basis::{
    chi_of_rho, phase_statistics, r_coefficients, r_coefficients_bd, rewrite_in_basis,
    transform_to_optimal_basis, CaseLabel, PhasePair, ProbeBasis,
};
use crate::bd::{BdTriple, DensityMatrix4, DEFAULT_TOL};
use crate::error::Result;
use crate::info::{binary_correlation_entropy, relative_entropy};
use crate::scalar::Real;
use crate::search::{circular_distance, optimize, Axis, GridSpec, Sense};

/// Two objective values closer than this (in bits) are treated as tied.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// Output of [`select_extremal`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremal<T> {
    pub value: T,
    /// 1-based index into `(c1, c2, c3)` of the first coefficient attaining it.
    pub index: usize,
    pub tie: bool,
    /// Which of the three coefficients attain the extremum.
    pub attained: [bool; 3],
}

/// Min or max of `(|c1|, |c2|, |c3|)` with a tie flag.
pub fn select_extremal<T: Real>(state: &BdTriple<T>, mode: Extremum) -> Extremal<T> {
    let abs = state.abs_coefficients();
    let value = match mode {
        Extremum::Min => abs[0].min(abs[1]).min(abs[2]),
        Extremum::Max => abs[0].max(abs[1]).max(abs[2]),
    };
    let attained = abs.map(|a| a == value);
    let index = attained.iter().position(|&b| b).unwrap_or(0) + 1;
    let tie = attained.iter().filter(|&&b| b).count() > 1;
    Extremal {
        value,
        index,
        tie,
        attained,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    Named(CaseLabel),
    Numeric,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Named(c) => c.fmt(f),
            CaseTag::Numeric => f.write_str("numeric"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantifierResult<T> {
    /// Bits.
    pub value: T,
    pub arg_angles: Vec<(&'static str, T)>,
    pub case: CaseTag,
    /// `c_m`, `c_M`, or the realized `|correlation|` for numeric results.
    pub extremal_coefficient: T,
    pub tie: bool,
}

impl<T: Real> QuantifierResult<T> {
    pub fn angle(&self, name: &str) -> Option<T> {
        self.arg_angles.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// Lowest-numbered case whose measured axis attains the minimum `|c_i|`.
fn optimal_case<T: Real>(state: &BdTriple<T>) -> (CaseLabel, bool) {
    let ext = select_extremal(state, Extremum::Min);
    let case = (1..=3)
        .filter(|&k| ext.attained[k - 1])
        .map(CaseLabel::for_axis)
        .min()
        .expect("at least one coefficient attains the minimum");
    (case, ext.tie)
}

/// Closed-form classical correlations `h(c_m)`, `c_m = min |c_i|`.
pub fn classical_correlations_bd<T: Real>(state: &BdTriple<T>) -> Result<QuantifierResult<T>> {
    state.check_physical(T::lit(DEFAULT_TOL))?;
    let ext = select_extremal(state, Extremum::Min);
    let (case, tie) = optimal_case(state);
    let (theta, phi) = case.angles();
    Ok(QuantifierResult {
        value: binary_correlation_entropy(ext.value)?,
        arg_angles: vec![("theta", theta), ("phi", phi)],
        case: CaseTag::Named(case),
        extremal_coefficient: ext.value,
        tie,
    })
}

/// Closed-form LAQC `h(c_M)`, `c_M = max |c_i|`.
///
/// The reported case is the optimal computational basis; its complementary
/// plane always contains the axis of `c_M`.
pub fn laqc_bd<T: Real>(state: &BdTriple<T>) -> Result<QuantifierResult<T>> {
    state.check_physical(T::lit(DEFAULT_TOL))?;
    let ext = select_extremal(state, Extremum::Max);
    let (case, classical_tie) = optimal_case(state);
    let (theta, phi) = case.angles();
    let rotated = case.rotate(state);
    let phase = if rotated.c1.abs() >= rotated.c2.abs() {
        T::zero()
    } else {
        T::FRAC_PI_2()
    };
    Ok(QuantifierResult {
        value: binary_correlation_entropy(ext.value)?,
        arg_angles: vec![("theta", theta), ("phi", phi), ("phase1", phase), ("phase2", phase)],
        case: CaseTag::Named(case),
        extremal_coefficient: ext.value,
        tie: ext.tie || classical_tie,
    })
}

/// A minimizing basis of the classical-correlations search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate<T> {
    pub theta: T,
    pub phi: T,
    pub case: Option<CaseLabel>,
    pub value: T,
}

/// Result of the four-angle search over independent bases on each qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralProbe<T> {
    pub value: T,
    pub basis: ProbeBasis<T>,
}

#[derive(Clone, Debug)]
pub struct ClassicalSearch<T> {
    /// Minimum over symmetric bases `(θ, φ)`.
    pub result: QuantifierResult<T>,
    /// Final grid spacing in `(θ, φ)`.
    pub cell: (T, T),
    /// Named bases tied with the minimum, then the numeric argmin if it is
    /// not one of them.
    pub candidates: Vec<Candidate<T>>,
    pub general: GeneralProbe<T>,
}

/// Named case whose symmetric basis lies within one cell of `(θ, φ)`,
/// accounting for `θ → π - θ` and the `π` period of `φ`.
pub fn named_case_near<T: Real>(theta: T, phi: T, cell: (T, T)) -> Option<CaseLabel> {
    let pi = T::PI();
    let t = theta.min(pi - theta);
    if t <= cell.0 {
        return Some(CaseLabel::I);
    }
    if (t - T::FRAC_PI_2()).abs() <= cell.0 {
        if circular_distance(phi, T::zero(), pi) <= cell.1 {
            return Some(CaseLabel::II);
        }
        if circular_distance(phi, T::FRAC_PI_2(), pi) <= cell.1 {
            return Some(CaseLabel::III);
        }
    }
    None
}

fn symmetric_objective<T: Real>(state: &BdTriple<T>, theta: T, phi: T) -> T {
    r_coefficients_bd(state, theta, phi).mutual_information()
}

/// Minimizes the mutual information of the outcome statistics over local
/// measurement bases, both symmetric `(θ, φ)` and independent per qubit.
pub fn classical_search<T: Real>(state: &BdTriple<T>, grid: &GridSpec) -> Result<ClassicalSearch<T>> {
    state.check_physical(T::lit(DEFAULT_TOL))?;
    grid.validate()?;
    let pi = T::PI();

    let opt = optimize(
        [Axis::Closed { lo: T::zero(), hi: pi }, Axis::Periodic { lo: T::zero(), period: pi }],
        [grid.theta_steps, grid.phi_steps],
        grid.refine_rounds,
        grid.refine_shrink,
        Sense::Minimize,
        |p: &[T; 2]| symmetric_objective(state, p[0], p[1]),
    );
    let [theta, phi] = opt.point;
    let cell = (opt.cell[0], opt.cell[1]);
    let tie_tol = T::floor_tol(TIE_TOL, 64.0);

    let mut candidates: Vec<Candidate<T>> = CaseLabel::ALL
        .iter()
        .filter_map(|&case| {
            let (t, p) = case.angles();
            let value = symmetric_objective(state, t, p);
            (value <= opt.value + tie_tol).then_some(Candidate {
                theta: t,
                phi: p,
                case: Some(case),
                value,
            })
        })
        .collect();
    let argmin_case = named_case_near(theta, phi, cell);
    if !candidates.iter().any(|c| c.case.is_some() && c.case == argmin_case) {
        candidates.push(Candidate {
            theta,
            phi,
            case: None,
            value: opt.value,
        });
    }

    let best = symmetric_objective(state, theta, phi);
    let dist = r_coefficients_bd(state, theta, phi);
    let result = QuantifierResult {
        value: best,
        arg_angles: vec![("theta", theta), ("phi", phi)],
        case: argmin_case.map_or(CaseTag::Numeric, CaseTag::Named),
        extremal_coefficient: dist.correlation().abs(),
        tie: candidates.len() > 1,
    };

    Ok(ClassicalSearch {
        result,
        cell,
        candidates,
        general: general_probe_minimum(&state.density(), grid),
    })
}

/// Four-angle minimization of the outcome mutual information over
/// independent probe bases on each qubit.
pub fn general_probe_minimum<T: Real>(rho: &DensityMatrix4<T>, grid: &GridSpec) -> GeneralProbe<T> {
    let pi = T::PI();
    let theta = Axis::Closed { lo: T::zero(), hi: pi };
    let phi = Axis::Periodic {
        lo: T::zero(),
        period: pi + pi,
    };
    let opt = optimize(
        [theta, phi, theta, phi],
        [grid.general_steps; 4],
        grid.refine_rounds,
        grid.refine_shrink.max(0.25),
        Sense::Minimize,
        |p: &[T; 4]| r_coefficients(rho, &ProbeBasis::from_angles_unchecked(*p)).mutual_information(),
    );
    GeneralProbe {
        value: opt.value,
        basis: ProbeBasis::from_angles_unchecked(opt.point),
    }
}

pub fn classical_correlations_numeric<T: Real>(state: &BdTriple<T>, grid: &GridSpec) -> Result<QuantifierResult<T>> {
    Ok(classical_search(state, grid)?.result)
}

/// Maximum of the outcome mutual information over complementary-basis
/// phases `(Φ1, Φ2) ∈ [0, 2π)²`.
pub fn maximize_over_phases<T: Real>(rho_tilde: &DensityMatrix4<T>, grid: &GridSpec) -> (T, PhasePair<T>) {
    let axis = Axis::Periodic {
        lo: T::zero(),
        period: T::PI() + T::PI(),
    };
    let m = rho_tilde.matrix();
    let opt = optimize(
        [axis, axis],
        [grid.phase_steps; 2],
        grid.refine_rounds,
        grid.refine_shrink,
        Sense::Maximize,
        |p: &[T; 2]| phase_statistics(m, p[0], p[1]).mutual_information(),
    );
    (
        opt.value,
        PhasePair {
            phi1: opt.point[0],
            phi2: opt.point[1],
        },
    )
}

#[derive(Clone, Debug)]
pub struct LaqcSearch<T> {
    pub result: QuantifierResult<T>,
    pub classical: ClassicalSearch<T>,
    /// Optimal computational basis used by the winning candidate.
    pub basis: Candidate<T>,
    pub phases: PhasePair<T>,
    /// Phase maximum reached from each candidate basis, in candidate order.
    pub per_candidate: Vec<T>,
}

/// State rewritten in a candidate optimal computational basis.
pub fn rewrite_for_candidate<T: Real>(state: &BdTriple<T>, cand: &Candidate<T>) -> DensityMatrix4<T> {
    match cand.case {
        Some(case) => transform_to_optimal_basis(state, case),
        None => rewrite_in_basis(&state.density(), cand.theta, cand.phi),
    }
}

/// Numeric LAQC: optimal computational basis from [`classical_search`],
/// then the phase maximization in its complementary basis. Every tied
/// candidate basis is explored and the largest value kept.
pub fn laqc_search<T: Real>(state: &BdTriple<T>, grid: &GridSpec) -> Result<LaqcSearch<T>> {
    let classical = classical_search(state, grid)?;
    let mut best: Option<(usize, T, PhasePair<T>)> = None;
    let mut per_candidate = Vec::with_capacity(classical.candidates.len());
    for (k, cand) in classical.candidates.iter().enumerate() {
        let tilde = rewrite_for_candidate(state, cand);
        let (value, phases) = maximize_over_phases(&tilde, grid);
        per_candidate.push(value);
        if best.map_or(true, |(_, v, _)| value > v) {
            best = Some((k, value, phases));
        }
    }
    let (k, _, phases) = best.expect("at least one candidate basis");
    let basis = classical.candidates[k];
    let tilde = rewrite_for_candidate(state, &basis);
    let dist = phase_statistics(tilde.matrix(), phases.phi1, phases.phi2);
    let result = QuantifierResult {
        value: dist.mutual_information(),
        arg_angles: vec![
            ("theta", basis.theta),
            ("phi", basis.phi),
            ("phase1", phases.phi1),
            ("phase2", phases.phi2),
        ],
        case: basis.case.map_or(CaseTag::Numeric, CaseTag::Named),
        extremal_coefficient: dist.correlation().abs(),
        tie: classical.candidates.len() > 1,
    };
    Ok(LaqcSearch {
        result,
        classical,
        basis,
        phases,
        per_candidate,
    })
}

pub fn laqc_numeric<T: Real>(state: &BdTriple<T>, grid: &GridSpec) -> Result<QuantifierResult<T>> {
    Ok(laqc_search(state, grid)?.result)
}

/// `ρ_A ⊗ ρ_B`, the product state nearest to `rho` when its marginals are
/// maximally mixed.
pub fn product_of_marginals<T: Real>(rho: &DensityMatrix4<T>) -> DensityMatrix4<T> {
    DensityMatrix4::from_matrix_unchecked(rho.reduced_a().kron(&rho.reduced_b()))
}

/// Classical correlations as a relative entropy: `S(χ_ρ ‖ Π)` with `χ_ρ` the
/// state dephased in `basis` and `Π` the product of its marginals.
pub fn classical_via_relative_entropy<T: Real>(rho: &DensityMatrix4<T>, basis: &ProbeBasis<T>) -> Result<T> {
    let chi = chi_of_rho(rho, basis);
    relative_entropy(&chi, &product_of_marginals(&chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::werner;
    use crate::error::Error;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn h(c: f64) -> f64 {
        // independent evaluation of the binary form
        let (p, q) = ((1.0 + c) / 2.0, (1.0 - c) / 2.0);
        let f = |x: f64| if x > 0.0 { x * (2.0 * x).log2() } else { 0.0 };
        f(p) + f(q)
    }

    fn coarse() -> GridSpec {
        GridSpec {
            theta_steps: 64,
            phi_steps: 64,
            refine_rounds: 3,
            refine_shrink: 0.1,
            phase_steps: 64,
            general_steps: 8,
        }
    }

    #[test]
    fn select_extremal_examples() {
        let e = select_extremal(&BdTriple::<f64>::new(0.1, 0.2, 0.6), Extremum::Min);
        assert_eq!((e.value, e.index, e.tie), (0.1, 1, false));
        let e = select_extremal(&BdTriple::new(0.5, 0.5, 0.2), Extremum::Max);
        assert_eq!((e.value, e.index, e.tie), (0.5, 1, true));
        let e = select_extremal(&BdTriple::<f64>::new(-0.2, 0.3, -0.4), Extremum::Max);
        assert_eq!((e.value, e.index, e.tie), (0.4, 3, false));
    }

    #[test]
    fn closed_form_examples() {
        let zero = BdTriple::new(0.0, 0.0, 0.0);
        assert_eq!(classical_correlations_bd(&zero).unwrap().value, 0.0);
        assert_eq!(laqc_bd(&zero).unwrap().value, 0.0);

        let singlet = werner(1.0).unwrap();
        let c = classical_correlations_bd(&singlet).unwrap();
        assert_eq!((c.value, c.extremal_coefficient), (1.0, 1.0));
        assert_eq!(laqc_bd(&singlet).unwrap().value, 1.0);

        let s = BdTriple::<f64>::new(0.1, 0.2, 0.6);
        let c = classical_correlations_bd(&s).unwrap();
        assert!((c.value - h(0.1)).abs() < 1e-15);
        assert!((c.value - 0.007226).abs() < 5e-7);
        assert_eq!(c.case, CaseTag::Named(CaseLabel::II));
        assert!(!c.tie);
        let l = laqc_bd(&s).unwrap();
        assert!((l.value - h(0.6)).abs() < 1e-15);
        assert_eq!(l.extremal_coefficient, 0.6);
        assert_eq!(l.case, CaseTag::Named(CaseLabel::II));
    }

    #[test]
    fn case_labels_follow_minimum() {
        let c = |a, b, d| classical_correlations_bd(&BdTriple::new(a, b, d)).unwrap().case;
        assert_eq!(c(0.5, 0.4, 0.1), CaseTag::Named(CaseLabel::I));
        assert_eq!(c(0.1, 0.4, 0.5), CaseTag::Named(CaseLabel::II));
        assert_eq!(c(0.4, 0.1, 0.5), CaseTag::Named(CaseLabel::III));
        // tie between c1 (case II) and c3 (case I): lowest-numbered case wins
        let r = classical_correlations_bd(&BdTriple::new(0.2, 0.5, 0.2)).unwrap();
        assert_eq!(r.case, CaseTag::Named(CaseLabel::I));
        assert!(r.tie);
    }

    #[test]
    fn unphysical_states_rejected() {
        let s = BdTriple::new(1.0, 1.0, 1.0);
        assert!(matches!(classical_correlations_bd(&s), Err(Error::Unphysical { .. })));
        assert!(matches!(laqc_bd(&s), Err(Error::Unphysical { .. })));
        assert!(classical_correlations_numeric(&s, &coarse()).is_err());
        assert!(laqc_numeric(&s, &coarse()).is_err());
    }

    #[test]
    fn numeric_zero_state() {
        let zero = BdTriple::new(0.0, 0.0, 0.0);
        assert_eq!(classical_correlations_numeric(&zero, &coarse()).unwrap().value, 0.0);
        assert_eq!(laqc_numeric(&zero, &coarse()).unwrap().value, 0.0);
    }

    #[test]
    fn numeric_sample_state_matches_closed_form() {
        let s = BdTriple::<f64>::new(0.1, 0.2, 0.6);
        let search = classical_search(&s, &GridSpec::default()).unwrap();
        let r = &search.result;
        assert!((r.value - h(0.1)).abs() < 1e-6);
        assert_eq!(r.case, CaseTag::Named(CaseLabel::II));
        assert!((r.angle("theta").unwrap() - FRAC_PI_2).abs() <= search.cell.0);
        assert!(circular_distance(r.angle("phi").unwrap(), 0.0, PI) <= search.cell.1);

        let l = laqc_numeric(&s, &coarse()).unwrap();
        assert!((l.value - h(0.6)).abs() < 1e-6);
    }

    #[test]
    fn werner_landscape_is_flat() {
        let w = werner(0.5).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..=32 {
            for j in 0..32 {
                let v = symmetric_objective(&w, PI * i as f64 / 32.0, PI * j as f64 / 32.0);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        assert!(hi - lo < 1e-10);
        assert!((lo - 0.188722).abs() < 5e-7);
        let search = classical_search(&w, &coarse()).unwrap();
        assert!((search.result.value - h(0.5)).abs() < 1e-10);
        // all three named bases tie
        assert_eq!(search.candidates.len(), 3);
    }

    #[test]
    fn mixed_sign_state_example() {
        let s = BdTriple::<f64>::new(-0.2, 0.3, -0.4);
        for (got, want) in s.eigenvalues().iter().zip([0.325, 0.275, 0.025, 0.375]) {
            assert!((got - want).abs() < 1e-15);
        }
        let l = laqc_bd(&s).unwrap();
        assert!((l.value - h(0.4)).abs() < 1e-15);
        assert!((l.value - 0.118709).abs() < 5e-7);
    }

    #[test]
    fn relative_entropy_path_matches_mutual_information() {
        let s = BdTriple::<f64>::new(0.1, 0.2, 0.6);
        let rho = s.density();
        let b = ProbeBasis::symmetric(FRAC_PI_2, 0.0).unwrap();
        let via_s = classical_via_relative_entropy(&rho, &b).unwrap();
        assert!((via_s - h(0.1)).abs() < 1e-10);
    }

    #[test]
    fn single_precision_closed_forms() {
        let s = BdTriple::<f32>::new(0.1, 0.2, 0.6);
        let c = classical_correlations_bd(&s).unwrap();
        assert!((c.value - 0.0072255).abs() < 1e-5);
        let l = laqc_bd(&s).unwrap();
        assert!((l.value - 0.2780719).abs() < 1e-5);
    }
}
