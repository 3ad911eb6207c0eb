//! Compact-approximation machinery: partition approximants certifying the
//! constructive bound on `||I - T||`, the benchmark norms `||I - gamma E||`
//! on uniform grids, and the lower-bound experiments that pair an operator
//! norm with a lower norm.
//!
//! The constructive direction is finite and exact: given grid functions and
//! a tolerance, a partition coarsening yields a finite-rank conditional
//! expectation `E^G` with `||f_n - E^G f_n|| < eps` and
//! `||I - E^G|| <= C_p`. The compact-operator lower bound, by contrast, is
//! a statement about nonatomic measure spaces; a fixed finite grid only
//! shadows it. The experiments here therefore report slacks without
//! asserting a sign, and the test suites pin the sanctioned operator family
//! (mean operators, scaled means, conditional expectations whose largest
//! block matches the benchmark resolution) where the finite shadow is
//! exact.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::interval::GridFunction;
use crate::opnorm::{
    cp_of_space, lower_norm, operator_norm, to_complex, CMatrix, OptReport, OptimizerOptions,
};
use crate::prob::{cond_expectation, cond_exp_matrix, FiniteProbSpace, Partition, RandVar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;

/// A partition approximant certificate: the partition, the achieved
/// per-function errors (all below `epsilon`), and the norm bound
/// `||I - E^G||` realized by the partition.
#[derive(Debug, Clone)]
pub struct ApproximationCertificate {
    pub partition: Partition,
    pub per_function_error: Vec<f64>,
    pub norm_bound: f64,
    pub epsilon: f64,
}

/// Builds a finite-rank conditional-expectation approximant for a batch of
/// grid functions sharing one cell count.
///
/// Greedy left-to-right coarsening: a block keeps absorbing the next cell
/// while every function's oscillation (value-set diameter) on the merged
/// block stays strictly below `eps`; since the block mean lies in the
/// convex hull of the block values, the pointwise error stays below the
/// oscillation and so does the L^p error. Singleton cells are always a
/// valid fallback, with zero error.
pub fn build_bcap_approximant(
    fs: &[GridFunction],
    p: Exponent,
    eps: f64,
) -> Result<ApproximationCertificate> {
    let pf = p.require_finite()?;
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEps(eps));
    }
    if fs.is_empty() {
        return Err(Error::Schema("at least one function is required".into()));
    }
    let cells = fs[0].cells();
    for f in fs {
        if f.cells() != cells {
            return Err(Error::LengthMismatch {
                expected: cells,
                got: f.cells(),
            });
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut start = 0usize;
    while start < cells {
        let mut end = start + 1;
        while end < cells && merged_oscillation(fs, start, end + 1) < eps {
            end += 1;
        }
        blocks.push((start..end).collect());
        start = end;
    }
    let partition = Partition::new(blocks, cells)?;
    let sp = FiniteProbSpace::uniform(cells)?;

    let mut per_function_error = Vec::with_capacity(fs.len());
    for f in fs {
        let xi = RandVar::new(f.values().to_vec());
        let cond = cond_expectation(&xi, &partition, &sp)?;
        let centered: Vec<Complex64> = xi
            .values()
            .iter()
            .zip(cond.values())
            .map(|(a, b)| a - b)
            .collect();
        per_function_error.push(crate::prob::lp_norm_slice(
            &centered,
            sp.weights(),
            Exponent::Finite(pf),
        ));
    }
    if let Some(&worst) = per_function_error
        .iter()
        .max_by(|a, b| a.partial_cmp(b).unwrap())
    {
        if worst >= eps {
            return Err(Error::UnattainableEps { eps, best: worst });
        }
    }

    // the norm of I - E^G is the largest per-block constant; uniform blocks
    // of equal size share theirs, so memoize by size
    let opts = OptimizerOptions {
        starts: 32,
        ..Default::default()
    };
    let mut by_size: HashMap<usize, f64> = HashMap::new();
    let mut norm_bound = 0.0f64;
    for block in partition.blocks() {
        let k = block.len();
        if k < 2 {
            continue;
        }
        let c = match by_size.get(&k) {
            Some(&c) => c,
            None => {
                let sub = FiniteProbSpace::uniform(k)?;
                let c = cp_of_space(&sub, &Partition::trivial(k), p, &opts)?.value;
                by_size.insert(k, c);
                c
            }
        };
        norm_bound = norm_bound.max(c);
    }

    Ok(ApproximationCertificate {
        partition,
        per_function_error,
        norm_bound,
        epsilon: eps,
    })
}

fn merged_oscillation(fs: &[GridFunction], start: usize, end: usize) -> f64 {
    let mut worst = 0.0f64;
    for f in fs {
        let vals = &f.values()[start..end];
        let (mut re_lo, mut re_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut im_lo, mut im_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in vals {
            re_lo = re_lo.min(v.re);
            re_hi = re_hi.max(v.re);
            im_lo = im_lo.min(v.im);
            im_hi = im_hi.max(v.im);
        }
        let diag = ((re_hi - re_lo).powi(2) + (im_hi - im_lo).powi(2)).sqrt();
        worst = worst.max(diag);
    }
    worst
}

/// The rank-one mean operator `E` on the uniform n-point space.
pub fn mean_operator(n: usize) -> CMatrix {
    let w = Complex64::new(1.0 / n as f64, 0.0);
    CMatrix::from_element(n, n, w)
}

/// `nu_p(gamma) = ||I - gamma E||` on the uniform n-point space.
///
/// At `gamma = 1` this grows toward `C_p` under refinement in `n`; refining
/// along a divisibility chain (n, 2n, 4n, ...) is monotone because coarse
/// witnesses embed.
pub fn nu_estimate(
    gamma: Complex64,
    p: Exponent,
    n: usize,
    opts: &OptimizerOptions,
) -> Result<f64> {
    Ok(nu_estimate_report(gamma, p, n, opts)?.value)
}

/// [`nu_estimate`] with the full optimizer report.
pub fn nu_estimate_report(
    gamma: Complex64,
    p: Exponent,
    n: usize,
    opts: &OptimizerOptions,
) -> Result<OptReport> {
    p.require_finite()?;
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let sp = FiniteProbSpace::uniform(n)?;
    let a = CMatrix::identity(n, n) - mean_operator(n) * gamma;
    operator_norm(&a, &sp, p, opts)
}

/// One lower-bound experiment: `||I - T||`, the lower norm of
/// `gamma I - T`, the benchmark `nu_p(gamma)`, and the slack
/// `||I - T|| + lower - nu`.
#[derive(Debug, Clone)]
pub struct GammaInequalityReport {
    pub lhs_norm: f64,
    pub lower: f64,
    pub nu: f64,
    pub slack: f64,
    pub converged: bool,
}

/// Runs the paired norm computation for an operator `T` on the uniform
/// n-point grid model. The slack is reported without asserting a sign: the
/// underlying inequality concerns nonatomic spaces, and only the sanctioned
/// operator family shadows it exactly at finite `n`.
pub fn gamma_inequality_experiment(
    t: &CMatrix,
    gamma: Complex64,
    p: Exponent,
    n: usize,
    opts: &OptimizerOptions,
) -> Result<GammaInequalityReport> {
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    let sp = FiniteProbSpace::uniform(n)?;
    let id = CMatrix::identity(n, n);
    let lhs = operator_norm(&(&id - t), &sp, p, opts)?;
    let low = lower_norm(&(&id * gamma - t), &sp, p, opts)?;
    let nu = nu_estimate(gamma, p, n, opts)?;
    Ok(GammaInequalityReport {
        lhs_norm: lhs.value,
        lower: low.value,
        nu,
        slack: lhs.value + low.value - nu,
        converged: lhs.converged && low.converged,
    })
}

/// Eigenvalue-driven lower-bound check for a real operator `T`.
#[derive(Debug, Clone)]
pub struct EigenLowerBoundReport {
    pub eigenvalues_tested: Vec<Complex64>,
    pub min_slack: f64,
}

/// For every distinct eigenvalue `gamma` of `T`, compares `||I - T||` (on
/// the uniform space matching `T`'s dimension) against the benchmark
/// `nu_p(gamma)` at resolution `n`, reporting the minimum slack.
///
/// `T` must be real; the eigenvalues come from a dense real Schur
/// decomposition and are clustered within 1e-8. A failed decomposition or a
/// trace mismatch beyond 1e-8 is reported as an explicit error.
pub fn eigen_lower_bound_check(
    t: &CMatrix,
    p: Exponent,
    n: usize,
    opts: &OptimizerOptions,
) -> Result<EigenLowerBoundReport> {
    let m = t.nrows();
    if t.ncols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    if m < 2 {
        return Err(Error::InvalidN(m));
    }
    if t.iter().any(|z| z.im != 0.0) {
        return Err(Error::EigenSolver(
            "matrix has complex entries; the dense eigen solver handles real operators".into(),
        ));
    }
    let real = DMatrix::<f64>::from_iterator(m, m, t.iter().map(|z| z.re));
    let scale = real.iter().map(|v| v.abs()).fold(1.0f64, f64::max);
    let schur = nalgebra::linalg::Schur::try_new(real.clone(), 1e-12, 100_000)
        .ok_or_else(|| Error::EigenSolver("Schur iteration did not converge".into()))?;
    let raw = schur.complex_eigenvalues();
    let trace: f64 = (0..m).map(|i| real[(i, i)]).sum();
    let eig_sum: Complex64 = raw.iter().sum();
    if (eig_sum.re - trace).abs() > 1e-8 * scale * m as f64 || eig_sum.im.abs() > 1e-8 * scale {
        return Err(Error::EigenSolver(format!(
            "eigenvalue residual check failed: sum {eig_sum} vs trace {trace}"
        )));
    }

    // cluster within 1e-8
    let mut eigenvalues: Vec<Complex64> = Vec::new();
    for &l in raw.iter() {
        if !eigenvalues.iter().any(|&e| (e - l).norm() <= 1e-8 * scale) {
            eigenvalues.push(l);
        }
    }
    eigenvalues.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

    let sp = FiniteProbSpace::uniform(m)?;
    let id = CMatrix::identity(m, m);
    let lhs = operator_norm(&(&id - t), &sp, p, opts)?.value;
    let mut min_slack = f64::INFINITY;
    for &gamma in &eigenvalues {
        let nu = nu_estimate(gamma, p, n, opts)?;
        min_slack = min_slack.min(lhs - nu);
    }
    Ok(EigenLowerBoundReport {
        eigenvalues_tested: eigenvalues,
        min_slack,
    })
}

/// `E^G` on the uniform n-point space as a complex operator, for partition
/// block sizes given as a composition of `n`.
pub fn uniform_block_cond_exp(sizes: &[usize]) -> Result<(CMatrix, Partition, usize)> {
    let n: usize = sizes.iter().sum();
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut at = 0usize;
    for &s in sizes {
        if s == 0 {
            return Err(Error::EmptyBlock(blocks.len()));
        }
        blocks.push((at..at + s).collect());
        at += s;
    }
    let part = Partition::new(blocks, n)?;
    let sp = FiniteProbSpace::uniform(n)?;
    let m = cond_exp_matrix(&part, &sp)?;
    Ok((to_complex(&m), part, n))
}
