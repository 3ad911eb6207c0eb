//! The [0,1] constructions: the measure-pairing sigma-algebra driven by the
//! reflection `J_beta`, its conditional expectation in closed form, the
//! resulting norm `C_p(beta)`, extremal functions, and exact grid
//! discretizations.
//!
//! `J_beta(x) = beta (1 - x) / (1 - beta)` is a homeomorphism of `[beta, 1]`
//! onto `[0, beta]`. Pairing each point `x` in the right part with
//! `J_beta(x)` in the left part generates a sigma-algebra whose conditional
//! expectation averages the two fiber values with weights `(1 - beta)` at
//! `x` and `beta` at `J_beta(x)`:
//!
//! ```text
//! (E^G xi)(x) = (1 - beta) xi(x) + beta xi(J_beta x)
//! ```
//!
//! The norm of `I - E^G` on L^p is exactly `C_p(beta)` for finite `p > 1`
//! and `2 max(beta, 1 - beta)` at `p = 1` and `p = infinity`, so sweeping
//! `beta` realizes every constant in `[1, C_p]`.

use crate::constants::{cp_alpha_unchecked, max_cp};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::opnorm::{cp_of_space, OptReport, OptimizerOptions};
use crate::prob::{FiniteProbSpace, Partition};
use num_complex::Complex64;

/// Largest cell count accepted by [`discretize_check`].
pub const MAX_CELLS: usize = 512;

/// Cap on the exact pair refinement in [`gbeta_cond_exp`].
const MAX_REFINED_CELLS: usize = 1 << 20;

/// The pairing parameter `beta` in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaAlgebra {
    beta: f64,
}

impl BetaAlgebra {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) || !beta.is_finite() {
            return Err(Error::BetaOutOfRange(beta));
        }
        Ok(BetaAlgebra { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// `J_beta(x) = beta (1 - x) / (1 - beta)` for `x` in `[beta, 1]`.
pub fn jbeta_map(b: &BetaAlgebra, x: f64) -> Result<f64> {
    if !(b.beta <= x && x <= 1.0) {
        return Err(Error::PointOutOfRange {
            x,
            lo: b.beta,
            hi: 1.0,
        });
    }
    Ok(b.beta * (1.0 - x) / (1.0 - b.beta))
}

/// The inverse map `1 - (1 - beta) y / beta` for `y` in `[0, beta]`.
pub fn jbeta_inv(b: &BetaAlgebra, y: f64) -> Result<f64> {
    if !(0.0 <= y && y <= b.beta) {
        return Err(Error::PointOutOfRange {
            x: y,
            lo: 0.0,
            hi: b.beta,
        });
    }
    Ok(1.0 - (1.0 - b.beta) * y / b.beta)
}

/// A piecewise-constant function on `cells` uniform cells of `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    cells: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(cells: usize, values: Vec<Complex64>) -> Result<Self> {
        if cells == 0 || values.len() != cells {
            return Err(Error::LengthMismatch {
                expected: cells,
                got: values.len(),
            });
        }
        Ok(GridFunction { cells, values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(
            values.len(),
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Samples `f` at the cell midpoints.
    pub fn from_fn(cells: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(
            cells,
            (0..cells)
                .map(|k| f((k as f64 + 0.5) / cells as f64))
                .collect(),
        )
    }

    pub fn constant(c: Complex64, cells: usize) -> Result<Self> {
        Self::new(cells, vec![c; cells])
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Step-function lookup: the value of the cell containing `x`.
    pub fn value_at(&self, x: f64) -> Complex64 {
        let idx = ((x * self.cells as f64).floor() as usize).min(self.cells - 1);
        self.values[idx]
    }

    /// The L^p norm on `[0, 1]`: uniform cell masses `1/cells`.
    pub fn lp_norm(&self, p: Exponent) -> f64 {
        let w = 1.0 / self.cells as f64;
        match p {
            Exponent::Infinite => self.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
            Exponent::Finite(pf) => self
                .values
                .iter()
                .map(|v| w * v.norm().powf(pf))
                .sum::<f64>()
                .powf(1.0 / pf),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Splits an `cells`-cell grid at `beta`, requiring `beta * cells` to be an
/// integer `m` with `1 <= m <= cells - 1`.
fn beta_cell_split(b: &BetaAlgebra, cells: usize) -> Result<usize> {
    let raw = b.beta * cells as f64;
    let m = raw.round();
    if (raw - m).abs() > 1e-9 * cells as f64 || m < 1.0 || m > (cells - 1) as f64 {
        return Err(Error::GridIncompatible {
            beta: b.beta,
            cells,
        });
    }
    Ok(m as usize)
}

/// The pointwise conditional expectation of a function on `[0, 1]`:
/// `(1-beta) xi(x) + beta xi(J_beta x)` for `x >= beta`, and the mirrored
/// form below `beta`. Exact for any `beta`.
pub fn gbeta_cond_exp_at(
    b: &BetaAlgebra,
    f: impl Fn(f64) -> Complex64,
    x: f64,
) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::PointOutOfRange { x, lo: 0.0, hi: 1.0 });
    }
    let (right, left) = if x >= b.beta {
        (x, jbeta_map(b, x)?)
    } else {
        (jbeta_inv(b, x)?, x)
    };
    let vr = f(right);
    let vl = f(left);
    if vr == vl {
        return Ok(vr);
    }
    Ok(vr * (1.0 - b.beta) + vl * b.beta)
}

/// The conditional expectation of a grid function, computed exactly.
///
/// Requires `beta` to be a cell boundary (`beta * cells` integral). The
/// output lives on the uniform refinement `cells * lcm(m, cells-m) / gcd(m,
/// cells-m)`, the coarsest uniform grid on which both the input and its
/// reflection are cell-constant, so the averaged values are exact and the
/// result takes equal values at paired points. Applying the operation twice
/// reproduces the first output (on a finer grid).
pub fn gbeta_cond_exp(b: &BetaAlgebra, g: &GridFunction) -> Result<GridFunction> {
    let n = g.cells();
    let m = beta_cell_split(b, n)?;
    let r = n - m;
    let g_ = gcd(m, r);
    let lcm = m / g_ * r;
    let factor = lcm / g_;
    let refined = n
        .checked_mul(factor)
        .filter(|&c| c <= MAX_REFINED_CELLS)
        .ok_or(Error::RefinementTooLarge(usize::MAX, MAX_REFINED_CELLS))?;
    if refined > MAX_REFINED_CELLS {
        return Err(Error::RefinementTooLarge(refined, MAX_REFINED_CELLS));
    }

    let beta = b.beta;
    let values = (0..refined)
        .map(|k| {
            let t = (k as f64 + 0.5) / refined as f64;
            let (right, left) = if t > beta {
                (t, beta * (1.0 - t) / (1.0 - beta))
            } else {
                (1.0 - (1.0 - beta) * t / beta, t)
            };
            let vr = g.value_at(right);
            let vl = g.value_at(left);
            if vr == vl {
                vr
            } else {
                vr * (1.0 - beta) + vl * beta
            }
        })
        .collect();
    GridFunction::new(refined, values)
}

/// The norm of `I - E^G` for the pairing algebra: `C_p(beta)` for finite
/// `p > 1`, and `2 max(beta, 1 - beta)` at `p = 1` and `p = infinity` (the
/// p = 1 case by duality with p = infinity).
pub fn gbeta_norm(b: &BetaAlgebra, p: Exponent) -> f64 {
    match p {
        Exponent::Finite(pf) if pf > 1.0 => cp_alpha_unchecked(pf, b.beta),
        _ => 2.0 * b.beta.max(1.0 - b.beta),
    }
}

/// The extremal function for the pairing algebra and its exact data.
#[derive(Debug, Clone)]
pub struct GbetaExtremal {
    /// Piecewise-constant extremal, negative on `[0, beta)`, positive on
    /// `[beta, 1]`, of unit L^p norm.
    pub xi: GridFunction,
    /// `||xi - E^G xi||_p / ||xi||_p`, evaluated in closed form.
    pub ratio: f64,
    /// The optimal right-mass split `gamma*`.
    pub gamma_star: f64,
    /// The prefactor `kappa = (beta ((1-beta)^(p-1) + beta^(p-1)))^(1/p)`.
    pub kappa: f64,
}

/// Builds the extremal function attaining `gbeta_norm` for finite `p > 1`.
///
/// The split of the unit mass between the two parts is
/// `gamma* = beta^(1/(p-1)) / ((1-beta)^(1/(p-1)) + beta^(1/(p-1)))`, and the
/// witness takes the value `(gamma*/(1-beta))^(1/p)` on `[beta, 1]` and
/// `-((1-gamma*)/beta)^(1/p)` on `[0, beta)`. The grid uses the smallest
/// cell count (up to [`MAX_CELLS`]) that carries `beta` as a boundary; for
/// beta with no such representation the breakpoint is rounded to the
/// nearest cell of a `MAX_CELLS` grid, while the reported ratio stays exact.
pub fn gbeta_extremal(b: &BetaAlgebra, p: Exponent) -> Result<GbetaExtremal> {
    let pf = p.require_finite_above_one()?;
    let beta = b.beta;
    let q = 1.0 / (pf - 1.0);
    let gamma_star = beta.powf(q) / ((1.0 - beta).powf(q) + beta.powf(q));
    let kappa = (beta * ((1.0 - beta).powf(pf - 1.0) + beta.powf(pf - 1.0))).powf(1.0 / pf);

    let c_right = (gamma_star / (1.0 - beta)).powf(1.0 / pf);
    let c_left = -((1.0 - gamma_star) / beta).powf(1.0 / pf);
    let ratio = (c_right - c_left)
        * (beta * (1.0 - beta)).powf(1.0 / pf)
        * (beta.powf(pf - 1.0) + (1.0 - beta).powf(pf - 1.0)).powf(1.0 / pf);

    let cells = (2..=MAX_CELLS)
        .find(|&n| {
            let raw = beta * n as f64;
            (raw - raw.round()).abs() <= 1e-9 * n as f64
                && raw.round() >= 1.0
                && raw.round() <= (n - 1) as f64
        })
        .unwrap_or(MAX_CELLS);
    let m = ((beta * cells as f64).round() as usize).clamp(1, cells - 1);
    let mut values = vec![Complex64::new(c_left, 0.0); cells];
    for v in values.iter_mut().skip(m) {
        *v = Complex64::new(c_right, 0.0);
    }
    Ok(GbetaExtremal {
        xi: GridFunction::new(cells, values)?,
        ratio,
        gamma_star,
        kappa,
    })
}

/// The exact finite model of the pairing algebra at resolution `cells`:
/// `m = beta * cells` fibers, each a block of two atoms with masses
/// `beta/m` (left) and `(1-beta)/m` (right), so every block carries the
/// conditional weights `(beta, 1-beta)`.
///
/// Atom `i < m` is the i-th cell of `[0, beta]`; atom `m + i` is its
/// reflection in `[beta, 1]`.
pub fn pair_model(b: &BetaAlgebra, cells: usize) -> Result<(FiniteProbSpace, Partition)> {
    if cells > MAX_CELLS {
        return Err(Error::TooManyCells(cells, MAX_CELLS));
    }
    let m = beta_cell_split(b, cells)?;
    let mut weights = Vec::with_capacity(2 * m);
    weights.extend(std::iter::repeat(b.beta / m as f64).take(m));
    weights.extend(std::iter::repeat((1.0 - b.beta) / m as f64).take(m));
    let sp = FiniteProbSpace::normalize(weights)?;
    let blocks = (0..m).map(|i| vec![i, m + i]).collect();
    let part = Partition::new(blocks, 2 * m)?;
    Ok((sp, part))
}

/// Numeric-versus-analytic check of the pairing-algebra norm.
#[derive(Debug, Clone)]
pub struct DiscretizeCheck {
    pub numeric_norm: f64,
    pub analytic_norm: f64,
    pub report: OptReport,
}

/// Materializes `I - E^G` on the [`pair_model`] space and compares the
/// numerically optimized norm against the closed form. Both values are
/// reported; agreement within 1e-6 is the expected contract.
pub fn discretize_check(
    b: &BetaAlgebra,
    p: Exponent,
    cells: usize,
    opts: &OptimizerOptions,
) -> Result<DiscretizeCheck> {
    let (sp, part) = pair_model(b, cells)?;
    let report = cp_of_space(&sp, &part, p, opts)?;
    Ok(DiscretizeCheck {
        numeric_norm: report.value,
        analytic_norm: gbeta_norm(b, p),
        report,
    })
}

/// Outcome of inverting `beta -> gbeta_norm(beta, p)` for a target value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaTarget {
    Beta(f64),
    /// At `p = 1` or `p = infinity` the value 2 is attained by the trivial
    /// sigma-algebra rather than any interior `beta`.
    TrivialAlgebra,
}

/// Finds `beta` with `gbeta_norm(beta, p)` equal to `target` (within about
/// 1e-12 of machine-attainable accuracy): every constant in `[1, C_p]` is
/// realized by some pairing algebra. Finite `p != 2` uses sign bisection in
/// `ln beta` on `(0, alpha_p]`; at `p = 1` and `p = infinity` the map
/// `beta -> 2 max(beta, 1-beta)` is inverted directly.
pub fn beta_for_target_norm(p: Exponent, target: f64) -> Result<BetaTarget> {
    let cmax = max_cp(p).value;
    if !(target >= 1.0 - 1e-12 && target <= cmax + 1e-12) {
        return Err(Error::TargetOutOfRange {
            target,
            lo: 1.0,
            hi: cmax,
        });
    }
    match p {
        Exponent::Infinite => beta_for_endpoint_exponent(target),
        Exponent::Finite(pf) if pf == 1.0 => beta_for_endpoint_exponent(target),
        Exponent::Finite(pf) if pf == 2.0 => Ok(BetaTarget::Beta(0.5)),
        Exponent::Finite(pf) => {
            let alpha_p = max_cp(p)
                .argmax_alpha
                .expect("finite p != 2 has an interior maximizer");
            // C_p(beta) runs from 1 (beta -> 0) up to C_p at alpha_p;
            // bisect the sign change in log space
            let mut lo = (1e-300f64).ln();
            let mut hi = alpha_p.ln();
            let f = |t: f64| cp_alpha_unchecked(pf, t.exp()) - target;
            if f(hi) < 0.0 {
                return Ok(BetaTarget::Beta(alpha_p));
            }
            let mut best = hi;
            let mut best_err = f(hi).abs();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm.abs() < best_err {
                    best_err = fm.abs();
                    best = mid;
                }
                if fm < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(BetaTarget::Beta(best.exp()))
        }
    }
}

fn beta_for_endpoint_exponent(target: f64) -> Result<BetaTarget> {
    if target >= 2.0 - 1e-12 {
        return Ok(BetaTarget::TrivialAlgebra);
    }
    Ok(BetaTarget::Beta(1.0 - target / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::cp_alpha;
    use proptest::prelude::*;

    fn fin(p: f64) -> Exponent {
        Exponent::Finite(p)
    }

    #[test]
    fn jbeta_endpoints_and_inverse() {
        let b = BetaAlgebra::new(0.5).unwrap();
        assert!((jbeta_map(&b, 1.0).unwrap() - 0.0).abs() < 1e-15);
        assert!((jbeta_map(&b, 0.5).unwrap() - 0.5).abs() < 1e-15);

        let b = BetaAlgebra::new(0.3).unwrap();
        assert!((jbeta_map(&b, 0.65).unwrap() - 0.15).abs() < 1e-15);
        assert!(jbeta_map(&b, 0.2).is_err());
        assert!(jbeta_inv(&b, 0.5).is_err());

        for x in [0.3, 0.55, 0.8, 1.0] {
            let y = jbeta_map(&b, x).unwrap();
            assert!((jbeta_inv(&b, y).unwrap() - x).abs() < 1e-14);
        }
    }

    #[test]
    fn cond_exp_preserves_constants() {
        let b = BetaAlgebra::new(0.3).unwrap();
        let g = GridFunction::constant(Complex64::new(2.5, -1.0), 10).unwrap();
        let out = gbeta_cond_exp(&b, &g).unwrap();
        for v in out.values() {
            assert_eq!(*v, Complex64::new(2.5, -1.0));
        }
    }

    #[test]
    fn cond_exp_of_identity_at_half_is_half() {
        let b = BetaAlgebra::new(0.5).unwrap();
        let g = GridFunction::from_fn(10, |x| Complex64::new(x, 0.0)).unwrap();
        let out = gbeta_cond_exp(&b, &g).unwrap();
        for v in out.values() {
            assert!((v.re - 0.5).abs() < 1e-15, "{}", v.re);
        }
    }

    #[test]
    fn cond_exp_of_right_indicator() {
        let b = BetaAlgebra::new(0.3).unwrap();
        let g = GridFunction::from_fn(10, |x| {
            Complex64::new(if x >= 0.3 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let out = gbeta_cond_exp(&b, &g).unwrap();
        for v in out.values() {
            assert!((v.re - 0.7).abs() < 1e-15);
        }
    }

    #[test]
    fn cond_exp_rejects_incompatible_grids() {
        let b = BetaAlgebra::new(0.3).unwrap();
        let g = GridFunction::constant(Complex64::new(1.0, 0.0), 7).unwrap();
        assert!(matches!(
            gbeta_cond_exp(&b, &g),
            Err(Error::GridIncompatible { .. })
        ));
    }

    #[test]
    fn cond_exp_output_is_fiber_constant_and_idempotent() {
        let b = BetaAlgebra::new(0.3).unwrap();
        let vals: Vec<f64> = (0..10).map(|k| ((k * 37 + 11) % 17) as f64 - 8.0).collect();
        let g = GridFunction::from_real(&vals).unwrap();
        let out = gbeta_cond_exp(&b, &g).unwrap();

        // equal values at paired points
        for i in 0..500 {
            let x = 0.3 + 0.7 * (i as f64 + 0.37) / 500.0;
            let y = jbeta_map(&b, x).unwrap();
            let d = (out.value_at(x) - out.value_at(y)).norm();
            assert!(d < 1e-12, "fiber mismatch at x={x}: {d}");
        }

        // idempotent: a second application reproduces the first output
        let twice = gbeta_cond_exp(&b, &out).unwrap();
        assert_eq!(twice.cells() % out.cells(), 0);
        let k = twice.cells() / out.cells();
        for (i, v) in twice.values().iter().enumerate() {
            assert_eq!(*v, out.values()[i / k], "cell {i}");
        }

        // contractive in every exponent
        for p in [fin(1.0), fin(2.0), fin(3.0), Exponent::Infinite] {
            assert!(out.lp_norm(p) <= g.lp_norm(p) + 1e-12);
        }
    }

    #[test]
    fn gbeta_norm_values() {
        let b = BetaAlgebra::new(0.4).unwrap();
        assert!((gbeta_norm(&b, fin(2.0)) - 1.0).abs() < 1e-15);

        let b = BetaAlgebra::new(0.3).unwrap();
        assert!((gbeta_norm(&b, Exponent::Infinite) - 1.4).abs() < 1e-15);
        assert!((gbeta_norm(&b, fin(1.0)) - 1.4).abs() < 1e-15);
        let want = cp_alpha(fin(3.0), 0.3).unwrap();
        assert!((gbeta_norm(&b, fin(3.0)) - want).abs() < 1e-15);
    }

    #[test]
    fn extremal_closed_forms() {
        let b = BetaAlgebra::new(0.5).unwrap();
        let e = gbeta_extremal(&b, fin(2.0)).unwrap();
        assert!((e.gamma_star - 0.5).abs() < 1e-15);
        assert!((e.kappa - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((e.ratio - 1.0).abs() < 1e-12);

        let b = BetaAlgebra::new(0.3).unwrap();
        let e = gbeta_extremal(&b, fin(3.0)).unwrap();
        // gamma* = sqrt(0.3) / (sqrt(0.7) + sqrt(0.3)), frozen: 0.3956439...
        let want_gs = 0.3f64.sqrt() / (0.7f64.sqrt() + 0.3f64.sqrt());
        assert!((e.gamma_star - want_gs).abs() < 1e-15);
        assert!((e.gamma_star - 0.39564392373896).abs() < 1e-13);
        assert!((e.kappa - 0.5582770171658424).abs() < 1e-14);
        let want = cp_alpha(fin(3.0), 0.3).unwrap();
        assert!((e.ratio - want).abs() < 1e-12);
    }

    #[test]
    fn extremal_grid_witness_achieves_the_ratio() {
        // evaluate the grid function's ratio with grid arithmetic only
        let b = BetaAlgebra::new(0.3).unwrap();
        let p = fin(3.0);
        let e = gbeta_extremal(&b, p).unwrap();
        let norm_before = e.xi.lp_norm(p);
        assert!((norm_before - 1.0).abs() < 1e-12);
        let cond = gbeta_cond_exp(&b, &e.xi).unwrap();
        let k = cond.cells() / e.xi.cells();
        let centered: Vec<Complex64> = cond
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| e.xi.values()[i / k] - v)
            .collect();
        let gf = GridFunction::new(cond.cells(), centered).unwrap();
        let r = gf.lp_norm(p) / norm_before;
        assert!((r - e.ratio).abs() < 1e-10, "{r} vs {}", e.ratio);
    }

    #[test]
    fn pair_model_blocks_carry_beta_weights() {
        let b = BetaAlgebra::new(0.3).unwrap();
        let (sp, part) = pair_model(&b, 10).unwrap();
        assert_eq!(sp.atoms(), 6);
        assert_eq!(part.blocks().len(), 3);
        for block in part.blocks() {
            let mass = sp.mass_of(block);
            assert!((sp.weights()[block[0]] / mass - 0.3).abs() < 1e-12);
            assert!((sp.weights()[block[1]] / mass - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_targets_are_hit() {
        for &p in &[fin(1.5), fin(3.0), fin(8.0)] {
            let cmax = max_cp(p).value;
            for c in [1.0, 0.5 * (1.0 + cmax), cmax] {
                match beta_for_target_norm(p, c).unwrap() {
                    BetaTarget::Beta(beta) => {
                        let b = BetaAlgebra::new(beta).unwrap();
                        assert!(
                            (gbeta_norm(&b, p) - c).abs() <= 1e-9,
                            "p={p:?} c={c}: beta={beta}"
                        );
                    }
                    BetaTarget::TrivialAlgebra => panic!("finite p never needs the trivial case"),
                }
            }
        }
        // endpoint exponents invert the piecewise-linear form directly
        match beta_for_target_norm(Exponent::Infinite, 1.5).unwrap() {
            BetaTarget::Beta(beta) => assert!((beta - 0.25).abs() < 1e-15),
            _ => panic!(),
        }
        assert_eq!(
            beta_for_target_norm(Exponent::Infinite, 2.0).unwrap(),
            BetaTarget::TrivialAlgebra
        );
        assert!(beta_for_target_norm(fin(3.0), 1.5).is_err());
    }

    proptest! {
        #[test]
        fn gbeta_norm_is_dual_invariant(pv in 1.05f64..16.0, beta in 0.01f64..0.99) {
            let b = BetaAlgebra::new(beta).unwrap();
            let lhs = gbeta_norm(&b, fin(pv));
            let rhs = gbeta_norm(&b, fin(pv).dual());
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
        }

        #[test]
        fn extremal_ratio_matches_gbeta_norm(pv in 1.05f64..12.0, beta in 0.01f64..0.99) {
            prop_assume!(pv != 2.0);
            let b = BetaAlgebra::new(beta).unwrap();
            let e = gbeta_extremal(&b, fin(pv)).unwrap();
            let want = gbeta_norm(&b, fin(pv));
            prop_assert!((e.ratio - want).abs() <= 1e-10 * want.max(1.0),
                "p={} beta={}: {} vs {}", pv, beta, e.ratio, want);
        }
    }
}
