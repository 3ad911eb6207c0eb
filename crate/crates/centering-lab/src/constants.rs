//! Closed-form evaluation and numerical maximization of the sharp constants
//! governing centered p-th moments, together with the extremal two-point
//! constructions that attain them.
//!
//! The central object is the two-point constant
//!
//! ```text
//! C_p(a) = (a^(p-1) + (1-a)^(p-1))^(1/p) * (a^(1/(p-1)) + (1-a)^(1/(p-1)))^(1-1/p)
//! ```
//!
//! whose maximum over `a` in (0, 1) is the best constant `C_p` in
//! `||xi - E xi||_p <= C_p ||xi||_p` over all probability spaces. The
//! maximizer `alpha_p` lies in (0, 1/6) and the curve is symmetric under
//! `a -> 1 - a` and invariant under `p -> p/(p-1)`.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use num_complex::Complex64;

/// Grid step for the bracketing stage of [`max_cp`].
const GRID_STEP: f64 = 1e-4;

/// Target interval width for the golden-section refinement in [`max_cp`].
const REFINE_TOL: f64 = 1e-12;

/// Evaluates the two-point constant `C_p(alpha)` for finite `p > 1` and
/// `alpha` strictly inside (0, 1).
pub fn cp_alpha(p: Exponent, alpha: f64) -> Result<f64> {
    let pf = p.require_finite_above_one()?;
    check_alpha(alpha)?;
    Ok(cp_alpha_unchecked(pf, alpha))
}

/// `C_p(alpha)` without argument validation. The caller guarantees
/// `p > 1` finite and `0 < alpha < 1`.
pub(crate) fn cp_alpha_unchecked(p: f64, alpha: f64) -> f64 {
    let q = 1.0 / (p - 1.0);
    let a = alpha;
    let b = 1.0 - alpha;
    let first = a.powf(p - 1.0) + b.powf(p - 1.0);
    let second = a.powf(q) + b.powf(q);
    first.powf(1.0 / p) * second.powf(1.0 - 1.0 / p)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// Result of maximizing `C_p(alpha)` over `alpha`.
///
/// `argmax_alpha` is `None` in the degenerate cases: `p = 2` (the curve is
/// identically 1) and `p` in `{1, inf}` (the value 2 arises as a limit, not
/// at an interior point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpMax {
    pub value: f64,
    pub argmax_alpha: Option<f64>,
}

/// The sharp constant `C_p = max_alpha C_p(alpha)`.
///
/// For `1 < p < infinity`, `p != 2`, the maximum is located by a dense grid
/// over (0, 1/2] (step 1e-4) followed by golden-section refinement of the
/// bracketing interval down to width 1e-12. The grid stage guards against
/// missed modes; uniqueness of the maximizer is not assumed.
pub fn max_cp(p: Exponent) -> CpMax {
    let pf = match p {
        Exponent::Infinite => {
            return CpMax {
                value: 2.0,
                argmax_alpha: None,
            }
        }
        Exponent::Finite(pf) if pf == 1.0 => {
            return CpMax {
                value: 2.0,
                argmax_alpha: None,
            }
        }
        Exponent::Finite(pf) if pf == 2.0 => {
            return CpMax {
                value: 1.0,
                argmax_alpha: None,
            }
        }
        Exponent::Finite(pf) => pf,
    };

    let steps = (0.5 / GRID_STEP).round() as usize;
    let mut best_k = 1usize;
    let mut best_v = f64::NEG_INFINITY;
    for k in 1..=steps {
        let a = k as f64 * GRID_STEP;
        let v = cp_alpha_unchecked(pf, a);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }

    let mut lo = if best_k > 1 {
        (best_k - 1) as f64 * GRID_STEP
    } else {
        1e-12
    };
    let mut hi = if best_k < steps {
        (best_k + 1) as f64 * GRID_STEP
    } else {
        0.5
    };

    // golden-section: keep the interior probe pair, shrink to REFINE_TOL
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = cp_alpha_unchecked(pf, c);
    let mut fd = cp_alpha_unchecked(pf, d);
    while hi - lo > REFINE_TOL {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = cp_alpha_unchecked(pf, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = cp_alpha_unchecked(pf, d);
        }
    }
    let alpha = 0.5 * (lo + hi);
    CpMax {
        value: cp_alpha_unchecked(pf, alpha),
        argmax_alpha: Some(alpha),
    }
}

/// The interpolation bound `2^|1 - 2/p|`, valid for finite `p >= 1`.
pub fn riesz_thorin_bound(p: Exponent) -> Result<f64> {
    let pf = p.require_finite()?;
    Ok(2f64.powf((1.0 - 2.0 / pf).abs()))
}

/// A distribution concentrated on two complex values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointDistribution {
    value1: Complex64,
    mass1: f64,
    value2: Complex64,
    mass2: f64,
}

impl TwoPointDistribution {
    pub fn new(value1: Complex64, mass1: f64, value2: Complex64, mass2: f64) -> Result<Self> {
        if !(mass1 > 0.0 && mass1 < 1.0) {
            return Err(Error::NonPositiveMass {
                index: 0,
                value: mass1,
            });
        }
        if !(mass2 > 0.0 && mass2 < 1.0) {
            return Err(Error::NonPositiveMass {
                index: 1,
                value: mass2,
            });
        }
        if (mass1 + mass2 - 1.0).abs() > 1e-12 {
            return Err(Error::MassNotNormalized(mass1 + mass2));
        }
        if value1 == value2 {
            return Err(Error::EqualValues);
        }
        Ok(TwoPointDistribution {
            value1,
            mass1,
            value2,
            mass2,
        })
    }

    pub fn value1(&self) -> Complex64 {
        self.value1
    }
    pub fn mass1(&self) -> f64 {
        self.mass1
    }
    pub fn value2(&self) -> Complex64 {
        self.value2
    }
    pub fn mass2(&self) -> f64 {
        self.mass2
    }

    pub fn mean(&self) -> Complex64 {
        self.value1 * self.mass1 + self.value2 * self.mass2
    }

    /// The smaller of the two masses.
    pub fn minor_mass(&self) -> f64 {
        self.mass1.min(self.mass2)
    }
}

/// The extremal two-point random variable for given `(p, alpha)`, together
/// with its moments in closed form.
///
/// The variable takes the value `-b` with probability `1 - alpha` and
/// `1 - b` with probability `alpha`, where
/// `b = alpha^(1/(p-1)) / (alpha^(1/(p-1)) + (1-alpha)^(1/(p-1)))`.
/// Its centered-to-uncentered moment ratio equals `C_p(alpha)` exactly.
#[derive(Debug, Clone)]
pub struct ExtremalTwoPoint {
    pub dist: TwoPointDistribution,
    pub mean: f64,
    pub abs_moment_p: f64,
    pub centered_moment_p: f64,
    pub ratio: f64,
}

pub fn extremal_two_point(p: Exponent, alpha: f64) -> Result<ExtremalTwoPoint> {
    let pf = p.require_finite_above_one()?;
    check_alpha(alpha)?;
    let q = 1.0 / (pf - 1.0);
    let a = alpha;
    let c = 1.0 - alpha;
    let denom = a.powf(q) + c.powf(q);
    let b = a.powf(q) / denom;

    let dist = TwoPointDistribution::new(
        Complex64::new(-b, 0.0),
        c,
        Complex64::new(1.0 - b, 0.0),
        a,
    )?;
    let mean = (a * c.powf(q) - c * a.powf(q)) / denom;
    let abs_moment_p = a * c / denom.powf(pf - 1.0);
    let centered_moment_p = a * c * (a.powf(pf - 1.0) + c.powf(pf - 1.0));
    let ratio = (centered_moment_p / abs_moment_p).powf(1.0 / pf);
    Ok(ExtremalTwoPoint {
        dist,
        mean,
        abs_moment_p,
        centered_moment_p,
        ratio,
    })
}

/// The sharp constant for the uniform distribution on `n` atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformNConstant {
    pub value: f64,
    pub k1: usize,
    pub k2: usize,
}

/// Sharp constant on the uniform n-point space: the value is
/// `max{C_p(k1/n), C_p(k2/n)}` where `k1/n` and `k2/n` are the grid points
/// bracketing the maximizer `alpha_p` from below and above (the latter
/// restricted to `k/n < 1/2`, falling back to `k1` when no such grid point
/// exists).
pub fn uniform_n_constant(p: Exponent, n: usize) -> Result<UniformNConstant> {
    let pf = p.require_finite_above_one()?;
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    if pf == 2.0 {
        // C_2 is identically 1; every grid point attains the maximum
        return Ok(UniformNConstant {
            value: 1.0,
            k1: 1,
            k2: 1,
        });
    }
    let alpha_p = max_cp(p)
        .argmax_alpha
        .expect("finite p != 2 has an interior maximizer");
    let nf = n as f64;
    let k1 = ((nf * alpha_p).floor() as usize).max(1);
    let k2_cand = ((nf * alpha_p).ceil() as usize).max(1);
    let k2 = if (k2_cand as f64) / nf < 0.5 {
        k2_cand
    } else {
        k1
    };
    let v1 = cp_alpha_unchecked(pf, k1 as f64 / nf);
    let v2 = cp_alpha_unchecked(pf, k2 as f64 / nf);
    Ok(UniformNConstant {
        value: v1.max(v2),
        k1,
        k2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(p: f64) -> Exponent {
        Exponent::Finite(p)
    }

    // Frozen oracle values, computed from the closed forms at 30-digit
    // precision (mpmath) and rounded to f64.
    const CP3_AT_01: f64 = 1.094740734959686; // C_3(0.1) = 1.312^(1/3)
    const CP3_AT_03: f64 = 1.035889464056538;
    const CP3_AT_THIRD: f64 = 1.025776007690430;
    const CP3_AT_QUARTER: f64 = 1.052606036785855;

    #[test]
    fn cp_alpha_collapses_at_p2_and_half() {
        assert!((cp_alpha(fin(2.0), 0.37).unwrap() - 1.0).abs() < 1e-12);
        assert!((cp_alpha(fin(3.0), 0.5).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cp_alpha_matches_frozen_values() {
        assert!((cp_alpha(fin(3.0), 0.1).unwrap() - CP3_AT_01).abs() < 1e-14);
        assert!((cp_alpha(fin(3.0), 0.3).unwrap() - CP3_AT_03).abs() < 1e-14);
        // C_3(0.1)^3 = 0.82 * 1.6 = 1.312 exactly
        let v = cp_alpha(fin(3.0), 0.1).unwrap();
        assert!((v.powi(3) - 1.312).abs() < 1e-13);
    }

    #[test]
    fn cp_alpha_domain_errors() {
        assert!(cp_alpha(fin(3.0), 0.0).is_err());
        assert!(cp_alpha(fin(3.0), 1.0).is_err());
        assert!(cp_alpha(fin(3.0), f64::NAN).is_err());
        assert!(cp_alpha(fin(1.0), 0.3).is_err());
        assert!(cp_alpha(Exponent::Infinite, 0.3).is_err());
    }

    #[test]
    fn max_cp_matches_published_closed_forms() {
        // C_3 = (1/3)(17 + 7 sqrt 7)^(1/3), C_4 = (1 + (2/3) sqrt 3)^(1/4)
        let c3 = (17.0 + 7.0 * 7f64.sqrt()).cbrt() / 3.0;
        let c4 = (1.0 + 2.0 / 3.0 * 3f64.sqrt()).powf(0.25);
        assert!((max_cp(fin(3.0)).value - c3).abs() < 1e-9);
        assert!((max_cp(fin(4.0)).value - c4).abs() < 1e-9);
    }

    #[test]
    fn max_cp_degenerate_cases() {
        assert_eq!(max_cp(fin(2.0)), CpMax { value: 1.0, argmax_alpha: None });
        assert_eq!(max_cp(fin(1.0)), CpMax { value: 2.0, argmax_alpha: None });
        assert_eq!(
            max_cp(Exponent::Infinite),
            CpMax { value: 2.0, argmax_alpha: None }
        );
    }

    #[test]
    fn argmax_lies_in_the_known_interval() {
        for &p in &[1.1, 1.5, 3.0, 4.0, 8.0] {
            let m = max_cp(fin(p));
            let a = m.argmax_alpha.unwrap();
            assert!(a > 0.0 && a < 1.0 / 6.0, "p = {p}: argmax {a}");
        }
    }

    #[test]
    fn cp_alpha_tends_to_one_at_the_endpoints() {
        // the approach is O(alpha^(1/(p-1))), so at alpha = 1e-6 the 1e-2
        // tolerance is attainable for p up to about 4
        for &p in &[1.5, 2.5, 3.0, 4.0] {
            assert!((cp_alpha(fin(p), 1e-6).unwrap() - 1.0).abs() < 1e-2);
            assert!((cp_alpha(fin(p), 1.0 - 1e-6).unwrap() - 1.0).abs() < 1e-2);
        }
    }

    #[test]
    fn riesz_thorin_values() {
        assert!((riesz_thorin_bound(fin(2.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((riesz_thorin_bound(fin(1.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!((riesz_thorin_bound(fin(4.0)).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(riesz_thorin_bound(Exponent::Infinite).is_err());
    }

    #[test]
    fn extremal_two_point_symmetric_coin() {
        let e = extremal_two_point(fin(2.0), 0.5).unwrap();
        assert!((e.dist.value1().re + 0.5).abs() < 1e-15);
        assert!((e.dist.value2().re - 0.5).abs() < 1e-15);
        assert!(e.mean.abs() < 1e-15);
        assert!((e.abs_moment_p - 0.25).abs() < 1e-15);
        assert!((e.ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn extremal_two_point_frozen_values() {
        // b(3, 0.3) = sqrt(0.3) / (sqrt(0.3) + sqrt(0.7))
        let e = extremal_two_point(fin(3.0), 0.3).unwrap();
        let b = 0.3f64.sqrt() / (0.3f64.sqrt() + 0.7f64.sqrt());
        assert!((e.dist.value1().re + b).abs() < 1e-15);
        assert!((e.dist.mass1() - 0.7).abs() < 1e-15);
        assert!((e.mean - (0.3 - b)).abs() < 1e-13);
        assert!((e.ratio - CP3_AT_03).abs() < 1e-13);

        // b(3, 0.1) = 1/(1 + 3) exactly
        let e = extremal_two_point(fin(3.0), 0.1).unwrap();
        assert!((e.dist.value1().re + 0.25).abs() < 1e-14);
        assert!((e.ratio - CP3_AT_01).abs() < 1e-13);
    }

    #[test]
    fn uniform_n_small_cases() {
        // n = 2 collapses to C_p(1/2) = 1
        let u = uniform_n_constant(fin(3.0), 2).unwrap();
        assert!((u.value - 1.0).abs() < 1e-12);

        let u = uniform_n_constant(fin(3.0), 3).unwrap();
        assert!((u.value - CP3_AT_THIRD).abs() < 1e-12);

        let u = uniform_n_constant(fin(3.0), 4).unwrap();
        assert!((u.value - CP3_AT_QUARTER).abs() < 1e-12);

        let u = uniform_n_constant(fin(2.0), 5).unwrap();
        assert!((u.value - 1.0).abs() < 1e-15);

        assert!(uniform_n_constant(fin(3.0), 1).is_err());
    }

    #[test]
    fn uniform_n_matches_closed_form_for_small_n() {
        // ((n-1)^(p-1) + 1)^(1/p) ((n-1)^(1/(p-1)) + 1)^(1-1/p) / n
        for &p in &[1.5, 2.5, 3.0, 4.0] {
            for n in 2..=4u32 {
                let nf = n as f64;
                let closed = ((nf - 1.0).powf(p - 1.0) + 1.0).powf(1.0 / p)
                    * ((nf - 1.0).powf(1.0 / (p - 1.0)) + 1.0).powf(1.0 - 1.0 / p)
                    / nf;
                let u = uniform_n_constant(fin(p), n as usize).unwrap();
                assert!(
                    (u.value - closed).abs() < 1e-9,
                    "p={p} n={n}: {} vs {closed}",
                    u.value
                );
            }
        }
    }

    proptest! {
        #[test]
        fn cp_alpha_is_symmetric(p in 1.05f64..16.0, a in 1e-6f64..0.999999) {
            prop_assume!(p != 2.0);
            let lhs = cp_alpha(fin(p), a).unwrap();
            let rhs = cp_alpha(fin(p), 1.0 - a).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
        }

        #[test]
        fn cp_alpha_is_dual_invariant(p in 1.05f64..16.0, a in 1e-4f64..0.9999) {
            let lhs = cp_alpha(fin(p), a).unwrap();
            let rhs = cp_alpha(fin(p).dual(), a).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.max(1.0));
        }

        #[test]
        fn extremal_ratio_equals_cp_alpha(p in 1.05f64..12.0, a in 1e-4f64..0.9999) {
            prop_assume!(p != 2.0);
            let e = extremal_two_point(fin(p), a).unwrap();
            let c = cp_alpha(fin(p), a).unwrap();
            prop_assert!((e.ratio - c).abs() <= 1e-10 * c.max(1.0),
                "p={} a={}: ratio {} vs cp {}", p, a, e.ratio, c);
        }

        #[test]
        fn extremal_masses_form_a_distribution(p in 1.05f64..12.0, a in 1e-4f64..0.9999) {
            let e = extremal_two_point(fin(p), a).unwrap();
            let d = e.dist;
            prop_assert!((d.mass1() + d.mass2() - 1.0).abs() <= 1e-12);
            // explicit mean matches the weighted sum of the two values
            let direct = d.mean().re;
            prop_assert!((direct - e.mean).abs() <= 1e-12 * (1.0 + e.mean.abs()));
        }
    }
}
