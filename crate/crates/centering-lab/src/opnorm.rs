//! Operator norms and lower norms of linear operators on weighted
//! finite-dimensional L^p spaces, with the specializations used throughout
//! the crate: `I - E^G` for partition conditional expectations and
//! `I - gamma E` for scaled means.
//!
//! For `1 < p < infinity` the norm is approximated by a multistart ascent
//! that iterates the dual-norm fixed-point map
//!
//! ```text
//! x  <-  Phi_p'( W^-1 A^H W Phi_p(A x) ),    Phi_p(v) = |v|^(p-1) * v/|v|
//! ```
//!
//! renormalizing after every step. The map is the first-order stationarity
//! condition for the norm ratio, so every limit point is a stationary point
//! and the objective is monotone along the iteration. Deterministic starts
//! at the two-valued extremal configurations are prepended to the seeded
//! Gaussian starts; for conditional-expectation operators these are exactly
//! the known extremal witnesses.
//!
//! At `p = 1` and `p = infinity` the norms are attained at extreme points of
//! the unit ball, so a finite candidate enumeration (weighted basis vectors,
//! per-row optimal phase vectors) evaluates the norm exactly.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::prob::{cond_exp_matrix, lp_norm_slice, FiniteProbSpace, Partition, RandVar};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Magnitudes below this contribute zero to dual vectors, avoiding
/// division underflow when normalizing phases.
const PHASE_FLOOR: f64 = 1e-300;

/// Multistart optimizer configuration. Identical options (including the
/// seed) produce bit-identical reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    pub starts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            starts: 64,
            max_iters: 10_000,
            tol: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerOptions {
    pub fn with_seed(seed: u64) -> Self {
        OptimizerOptions {
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.starts < 1 {
            return Err(Error::InvalidOptions("starts must be >= 1"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidOptions("tol must be > 0"));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidOptions("max_iters must be >= 1"));
        }
        Ok(())
    }
}

/// Outcome of a norm computation: the achieved ratio, the unit witness that
/// achieves it, whether every start converged, and how many starts ran.
#[derive(Debug, Clone)]
pub struct OptReport {
    pub value: f64,
    pub witness: RandVar,
    pub converged: bool,
    pub starts_used: usize,
}

fn check_square(a: &CMatrix, sp: &FiniteProbSpace) -> Result<()> {
    if a.nrows() != sp.atoms() || a.ncols() != sp.atoms() {
        return Err(Error::DimensionMismatch {
            expected: sp.atoms(),
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(())
}

/// Lifts a real matrix into the complex operator type.
pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    CMatrix::from_iterator(m.nrows(), m.ncols(), m.iter().map(|&v| Complex64::new(v, 0.0)))
}

fn unit_phase(v: Complex64) -> Complex64 {
    let n = v.norm();
    if n < PHASE_FLOOR {
        Complex64::new(0.0, 0.0)
    } else {
        v / n
    }
}

/// `Phi_e(v)_i = |v_i|^e * phase(v_i)`, the dual-exponent map. `e = p - 1`
/// sends L^p norming vectors to L^p' and vice versa.
fn dual_power(v: &CVector, e: f64) -> CVector {
    if e == 1.0 {
        return v.clone();
    }
    CVector::from_iterator(
        v.len(),
        v.iter().map(|&z| {
            let n = z.norm();
            if n < PHASE_FLOOR {
                Complex64::new(0.0, 0.0)
            } else {
                (z / n) * n.powf(e)
            }
        }),
    )
}

/// Applies the adjoint with respect to the weighted pairing
/// `<x, y> = sum_i w_i x_i conj(y_i)`, i.e. `W^-1 A^H W`.
fn weighted_adjoint_apply(ah: &CMatrix, w: &[f64], z: &CVector) -> CVector {
    let wz = CVector::from_iterator(z.len(), z.iter().zip(w).map(|(&zi, &wi)| zi * wi));
    let mut u = ah * wz;
    for (ui, &wi) in u.iter_mut().zip(w) {
        *ui /= wi;
    }
    u
}

struct StartOutcome {
    value: f64,
    witness: CVector,
    converged: bool,
}

fn ascent_run(
    a: &CMatrix,
    ah: &CMatrix,
    w: &[f64],
    pf: f64,
    mut x: CVector,
    opts: &OptimizerOptions,
) -> StartOutcome {
    let p = Exponent::Finite(pf);
    let nx = lp_norm_slice(x.as_slice(), w, p);
    if nx == 0.0 {
        return StartOutcome {
            value: 0.0,
            witness: x,
            converged: true,
        };
    }
    x /= Complex64::new(nx, 0.0);

    let mut prev = -1.0;
    for _ in 0..opts.max_iters {
        let y = a * &x;
        let r = lp_norm_slice(y.as_slice(), w, p);
        if r <= PHASE_FLOOR {
            // the start landed in the kernel; ratio 0 is stationary
            return StartOutcome {
                value: 0.0,
                witness: x,
                converged: true,
            };
        }
        if (r - prev).abs() <= opts.tol * r.max(1.0) {
            return StartOutcome {
                value: r,
                witness: x,
                converged: true,
            };
        }
        prev = r;
        let z = dual_power(&y, pf - 1.0);
        let u = weighted_adjoint_apply(ah, w, &z);
        let mut xn = dual_power(&u, 1.0 / (pf - 1.0));
        let nn = lp_norm_slice(xn.as_slice(), w, p);
        if nn == 0.0 {
            // gradient vanished: x is stationary
            return StartOutcome {
                value: r,
                witness: x,
                converged: true,
            };
        }
        xn /= Complex64::new(nn, 0.0);
        x = xn;
    }
    let r = lp_norm_slice((a * &x).as_slice(), w, p);
    StartOutcome {
        value: r,
        witness: x,
        converged: false,
    }
}

fn gaussian_start(n: usize, seed: u64, stream: u64) -> CVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    CVector::from_iterator(
        n,
        (0..n).map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        }),
    )
}

/// The two-valued configuration taking `1 - b` on a set of mass `alpha` and
/// `-b` off it; the extremal witness family for `I - E`.
fn two_valued_vector(n: usize, on: &[usize], alpha: f64, pf: f64) -> CVector {
    let q = 1.0 / (pf - 1.0);
    let denom = alpha.powf(q) + (1.0 - alpha).powf(q);
    let b = alpha.powf(q) / denom;
    let mut x = CVector::from_element(n, Complex64::new(-b, 0.0));
    for &i in on {
        x[i] = Complex64::new(1.0 - b, 0.0);
    }
    x
}

fn prefix_starts(sp: &FiniteProbSpace, pf: f64) -> Vec<CVector> {
    let n = sp.atoms();
    let w = sp.weights();
    let mut starts = Vec::with_capacity(n - 1);
    let mut mass = 0.0;
    for k in 1..n {
        mass += w[k - 1];
        if mass <= 0.0 || mass >= 1.0 {
            continue;
        }
        let on: Vec<usize> = (0..k).collect();
        starts.push(two_valued_vector(n, &on, mass, pf));
    }
    starts
}

fn best_outcome(outcomes: Vec<StartOutcome>, maximize: bool) -> (CVector, bool, usize) {
    let used = outcomes.len();
    let converged = outcomes.iter().all(|o| o.converged);
    let mut best_idx = 0;
    for (i, o) in outcomes.iter().enumerate() {
        let better = if maximize {
            o.value > outcomes[best_idx].value
        } else {
            o.value < outcomes[best_idx].value
        };
        if better {
            best_idx = i;
        }
    }
    let witness = outcomes.into_iter().nth(best_idx).unwrap().witness;
    (witness, converged, used)
}

fn finish_report(
    a: &CMatrix,
    w: &[f64],
    p: Exponent,
    witness: CVector,
    converged: bool,
    starts_used: usize,
) -> OptReport {
    let nx = lp_norm_slice(witness.as_slice(), w, p);
    let unit = if nx > 0.0 {
        &witness / Complex64::new(nx, 0.0)
    } else {
        witness
    };
    let value = lp_norm_slice((a * &unit).as_slice(), w, p);
    OptReport {
        value,
        witness: RandVar::new(unit.as_slice().to_vec()),
        converged,
        starts_used,
    }
}

fn norm_inf_exact(a: &CMatrix, sp: &FiniteProbSpace) -> OptReport {
    let n = sp.atoms();
    let w = sp.weights();
    let mut best: Option<(f64, CVector)> = None;
    for i in 0..n {
        let x = CVector::from_iterator(
            n,
            (0..n).map(|j| {
                let aij = a[(i, j)];
                if aij.norm() < PHASE_FLOOR {
                    Complex64::new(1.0, 0.0)
                } else {
                    aij.conj() / aij.norm()
                }
            }),
        );
        let v = lp_norm_slice((a * &x).as_slice(), w, Exponent::Infinite);
        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
            best = Some((v, x));
        }
    }
    let (_, witness) = best.expect("space has at least two atoms");
    finish_report(a, w, Exponent::Infinite, witness, true, n)
}

fn norm_one_exact(a: &CMatrix, sp: &FiniteProbSpace) -> OptReport {
    let n = sp.atoms();
    let w = sp.weights();
    let mut best = (f64::NEG_INFINITY, 0usize);
    for j in 0..n {
        let col_sum: f64 = (0..n).map(|i| w[i] * a[(i, j)].norm()).sum();
        let v = col_sum / w[j];
        if v > best.0 {
            best = (v, j);
        }
    }
    let mut x = CVector::from_element(n, Complex64::new(0.0, 0.0));
    x[best.1] = Complex64::new(1.0 / w[best.1], 0.0);
    finish_report(a, w, Exponent::Finite(1.0), x, true, n)
}

fn ascent_multistart(
    a: &CMatrix,
    sp: &FiniteProbSpace,
    pf: f64,
    opts: &OptimizerOptions,
    extra_starts: Vec<CVector>,
) -> OptReport {
    let w = sp.weights();
    let n = sp.atoms();
    let ah = a.adjoint();

    let mut starts = prefix_starts(sp, pf);
    starts.extend(extra_starts);
    for s in 0..opts.starts {
        starts.push(gaussian_start(n, opts.seed, s as u64));
    }

    let outcomes: Vec<StartOutcome> = starts
        .into_par_iter()
        .map(|x| ascent_run(a, &ah, w, pf, x, opts))
        .collect();
    let (witness, converged, used) = best_outcome(outcomes, true);
    finish_report(a, w, Exponent::Finite(pf), witness, converged, used)
}

/// The operator norm `sup_{xi != 0} ||A xi||_p / ||xi||_p` on the weighted
/// space, via multistart dual-map ascent for finite `p > 1` and exact
/// extreme-point enumeration at `p = 1` and `p = infinity`. Deterministic
/// given the seed in `opts`.
pub fn operator_norm(
    a: &CMatrix,
    sp: &FiniteProbSpace,
    p: Exponent,
    opts: &OptimizerOptions,
) -> Result<OptReport> {
    operator_norm_with_starts(a, sp, p, opts, Vec::new())
}

/// [`operator_norm`] with caller-supplied additional starting vectors,
/// used by [`cp_of_space`] to seed per-block extremal witnesses.
pub fn operator_norm_with_starts(
    a: &CMatrix,
    sp: &FiniteProbSpace,
    p: Exponent,
    opts: &OptimizerOptions,
    extra_starts: Vec<CVector>,
) -> Result<OptReport> {
    check_square(a, sp)?;
    opts.validate()?;
    match p {
        Exponent::Infinite => Ok(norm_inf_exact(a, sp)),
        Exponent::Finite(pf) if pf == 1.0 => Ok(norm_one_exact(a, sp)),
        Exponent::Finite(pf) => Ok(ascent_multistart(a, sp, pf, opts, extra_starts)),
    }
}

const PLATEAU_WINDOW: usize = 250;
const ZERO_FLOOR: f64 = 1e-13;

fn descent_run(
    a: &CMatrix,
    ah: &CMatrix,
    w: &[f64],
    p: Exponent,
    mut x: CVector,
    opts: &OptimizerOptions,
) -> StartOutcome {
    let nx = lp_norm_slice(x.as_slice(), w, p);
    if nx == 0.0 {
        return StartOutcome {
            value: f64::INFINITY,
            witness: x,
            converged: true,
        };
    }
    x /= Complex64::new(nx, 0.0);

    let mut best_val = f64::INFINITY;
    let mut best_x = x.clone();
    let mut last_improve = 0usize;
    for k in 0..opts.max_iters {
        let y = a * &x;
        let val = lp_norm_slice(y.as_slice(), w, p);
        if val < best_val - opts.tol * best_val.max(1.0) {
            last_improve = k;
        }
        if val < best_val {
            best_val = val;
            best_x = x.clone();
        }
        if best_val <= ZERO_FLOOR {
            return StartOutcome {
                value: best_val,
                witness: best_x,
                converged: true,
            };
        }
        if k - last_improve > PLATEAU_WINDOW {
            return StartOutcome {
                value: best_val,
                witness: best_x,
                converged: true,
            };
        }
        // subgradient of ||A x||_p in the weighted pairing
        let z = match p {
            Exponent::Infinite => {
                let mut imax = 0;
                let mut nmax = -1.0;
                for (i, yi) in y.iter().enumerate() {
                    if yi.norm() > nmax {
                        nmax = yi.norm();
                        imax = i;
                    }
                }
                let mut e = CVector::from_element(y.len(), Complex64::new(0.0, 0.0));
                e[imax] = unit_phase(y[imax]);
                e
            }
            Exponent::Finite(pf) => dual_power(&y, pf - 1.0),
        };
        let d = weighted_adjoint_apply(ah, w, &z);
        let dn = d.norm();
        if dn < PHASE_FLOOR {
            return StartOutcome {
                value: best_val,
                witness: best_x,
                converged: true,
            };
        }
        let step = 0.5 / ((k + 1) as f64).sqrt();
        x -= d * Complex64::new(step / dn, 0.0);
        let nx = lp_norm_slice(x.as_slice(), w, p);
        if nx == 0.0 {
            return StartOutcome {
                value: best_val,
                witness: best_x,
                converged: true,
            };
        }
        x /= Complex64::new(nx, 0.0);
    }
    StartOutcome {
        value: best_val,
        witness: best_x,
        converged: false,
    }
}

fn svd_min_candidate(a: &CMatrix, w: &[f64]) -> Option<CVector> {
    let n = a.nrows();
    let b = CMatrix::from_fn(n, n, |i, j| a[(i, j)] * Complex64::new((w[i] / w[j]).sqrt(), 0.0));
    let svd = b.svd(false, true);
    let vt = svd.v_t?;
    let mut idx = 0;
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < svd.singular_values[idx] {
            idx = i;
        }
    }
    let v = vt.row(idx).adjoint();
    Some(CVector::from_iterator(
        n,
        v.iter()
            .zip(w)
            .map(|(&vi, &wi)| vi / Complex64::new(wi.sqrt(), 0.0)),
    ))
}

/// The lower norm `inf_{||u||_p = 1} ||A u||_p`, via multistart projected
/// subgradient descent on the unit sphere, with deterministic candidate
/// starts (the constant vector and scaled basis vectors) and, at `p = 2`,
/// an exact smallest-singular-value candidate from the SVD of the
/// similarity-transformed matrix.
pub fn lower_norm(
    a: &CMatrix,
    sp: &FiniteProbSpace,
    p: Exponent,
    opts: &OptimizerOptions,
) -> Result<OptReport> {
    check_square(a, sp)?;
    opts.validate()?;
    let w = sp.weights();
    let n = sp.atoms();
    let ah = a.adjoint();

    let mut starts: Vec<CVector> = Vec::new();
    starts.push(CVector::from_element(n, Complex64::new(1.0, 0.0)));
    for j in 0..n {
        let mut e = CVector::from_element(n, Complex64::new(0.0, 0.0));
        e[j] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    if p == Exponent::Finite(2.0) {
        if let Some(v) = svd_min_candidate(a, w) {
            starts.push(v);
        }
    }
    for s in 0..opts.starts {
        starts.push(gaussian_start(n, opts.seed, 1_000_000 + s as u64));
    }

    let outcomes: Vec<StartOutcome> = starts
        .into_par_iter()
        .map(|x| descent_run(a, &ah, w, p, x, opts))
        .collect();
    let (witness, mut converged, used) = best_outcome(outcomes, false);
    let rep = finish_report(a, w, p, witness, converged, used);
    if rep.value <= ZERO_FLOOR {
        // a zero witness settles the infimum exactly, regardless of how
        // other starts fared
        converged = true;
    }
    Ok(OptReport {
        converged,
        ..rep
    })
}

/// The conditionally centered sharp constant of a finite space:
/// `c_p(Omega, F, G, P) = ||I - E^G||` computed by [`operator_norm`] on
/// `I - cond_exp_matrix(part, sp)`, seeded with the per-block two-valued
/// extremal witnesses.
pub fn cp_of_space(
    sp: &FiniteProbSpace,
    part: &Partition,
    p: Exponent,
    opts: &OptimizerOptions,
) -> Result<OptReport> {
    let m = cond_exp_matrix(part, sp)?;
    let n = sp.atoms();
    let a = CMatrix::identity(n, n) - to_complex(&m);

    let mut extra = Vec::new();
    if let Ok(pf) = p.require_finite_above_one() {
        for block in part.blocks() {
            if block.len() < 2 {
                continue;
            }
            let block_mass = sp.mass_of(block);
            let mut mass = 0.0;
            for k in 1..block.len() {
                mass += sp.weights()[block[k - 1]];
                let alpha = mass / block_mass;
                if alpha <= 0.0 || alpha >= 1.0 {
                    continue;
                }
                let q = 1.0 / (pf - 1.0);
                let denom = alpha.powf(q) + (1.0 - alpha).powf(q);
                let b = alpha.powf(q) / denom;
                let mut x = CVector::from_element(n, Complex64::new(0.0, 0.0));
                for (pos, &i) in block.iter().enumerate() {
                    x[i] = if pos < k {
                        Complex64::new(1.0 - b, 0.0)
                    } else {
                        Complex64::new(-b, 0.0)
                    };
                }
                extra.push(x);
            }
        }
    }
    operator_norm_with_starts(&a, sp, p, opts, extra)
}

/// Independent cross-check route for [`cp_of_space`]: the norm of
/// `I - E^G` decomposes over the partition blocks, so it equals the largest
/// per-block constant, each block renormalized to a probability space with
/// the trivial sigma-algebra. Singleton blocks contribute 0.
pub fn cp_of_space_blockwise(
    sp: &FiniteProbSpace,
    part: &Partition,
    p: Exponent,
    opts: &OptimizerOptions,
) -> Result<f64> {
    let mut best = 0.0f64;
    for block in part.blocks() {
        if block.len() < 2 {
            continue;
        }
        let sub = FiniteProbSpace::normalize(
            block.iter().map(|&i| sp.weights()[i]).collect(),
        )?;
        let rep = cp_of_space(&sub, &Partition::trivial(block.len()), p, opts)?;
        best = best.max(rep.value);
    }
    Ok(best)
}

/// Enumeration bound for [`two_value_oracle`].
pub const ORACLE_MAX_ATOMS: usize = 24;

/// Certified lower bound for the trivial-partition constant of a space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoValueOracle {
    pub value: f64,
    /// Mass of the subset realizing the bound (reported as min(m, 1-m)).
    pub subset_mass: f64,
}

/// Maximizes `C_p(P(S))` over all nonempty proper atom subsets `S` by Gray
/// code enumeration (up to [`ORACLE_MAX_ATOMS`] atoms). Every subset carries
/// a two-valued witness, so the result is a certified lower bound for
/// `||I - E||` on the space; equality is conjectured but only proven for
/// uniform spaces of a few sizes.
pub fn two_value_oracle(sp: &FiniteProbSpace, p: Exponent) -> Result<TwoValueOracle> {
    let pf = p.require_finite_above_one()?;
    let n = sp.atoms();
    if n > ORACLE_MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            atoms: n,
            max: ORACLE_MAX_ATOMS,
        });
    }
    let w = sp.weights();
    // enumerate subsets containing atom 0 (complements are equivalent)
    let mut mass = w[0];
    let mut best = (crate::constants::cp_alpha_unchecked(pf, mass), mass);
    let bits = n - 1;
    let full: u64 = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let mut gray_prev = 0u64;
    for k in 1..(1u64 << bits) {
        let gray = k ^ (k >> 1);
        let flipped = gray ^ gray_prev;
        gray_prev = gray;
        let bit = flipped.trailing_zeros() as usize;
        if gray & flipped != 0 {
            mass += w[bit + 1];
        } else {
            mass -= w[bit + 1];
        }
        if gray == full {
            continue; // the full set is not a proper subset
        }
        let m = mass.clamp(1e-15, 1.0 - 1e-15);
        let v = crate::constants::cp_alpha_unchecked(pf, m);
        if v > best.0 {
            best = (v, m);
        }
    }
    Ok(TwoValueOracle {
        value: best.0,
        subset_mass: best.1.min(1.0 - best.1),
    })
}
