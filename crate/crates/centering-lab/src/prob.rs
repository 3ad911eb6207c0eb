//! Finite probability spaces, complex random variables, weighted L^p norms,
//! and conditional expectation with respect to partition-generated
//! sigma-algebras.
//!
//! On a finite space every sub-sigma-algebra is generated by a partition of
//! the atoms, so partitions are the only sigma-algebra representation used
//! here. The conditional expectation averages over each block with the
//! atom weights and is a contractive projection that preserves constants.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Tolerance for the "weights sum to 1" invariant.
const NORMALIZATION_TOL: f64 = 1e-12;

/// A finite probability space: strictly positive atom weights summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteProbSpace {
    weights: Vec<f64>,
}

impl FiniteProbSpace {
    /// Validates the weights: at least two atoms, all strictly positive,
    /// summing to 1 within 1e-12. Weights are never silently repaired; use
    /// [`FiniteProbSpace::normalize`] to rescale explicitly.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewAtoms(weights.len()));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveWeight { index: i, value: w });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::WeightsNotNormalized(sum));
        }
        Ok(FiniteProbSpace { weights })
    }

    /// Rescales positive weights to sum to 1, then validates.
    pub fn normalize(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(Error::WeightsNotNormalized(sum));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    /// The uniform distribution on `n` atoms.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// The two-point space with masses `(alpha, 1 - alpha)`.
    pub fn two_point(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Self::new(vec![alpha, 1.0 - alpha])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atoms(&self) -> usize {
        self.weights.len()
    }

    /// Total mass of a set of atom indices.
    pub fn mass_of(&self, indices: &[usize]) -> f64 {
        indices.iter().map(|&i| self.weights[i]).sum()
    }
}

/// A complex-valued random variable: one scalar per atom.
///
/// Real inputs round-trip exactly; the complex machinery never perturbs a
/// zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct RandVar {
    values: Vec<Complex64>,
}

impl RandVar {
    pub fn new(values: Vec<Complex64>) -> Self {
        RandVar { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        RandVar {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn constant(c: Complex64, n: usize) -> Self {
        RandVar {
            values: vec![c; n],
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn check_space(&self, sp: &FiniteProbSpace) -> Result<()> {
        if self.len() != sp.atoms() {
            return Err(Error::LengthMismatch {
                expected: sp.atoms(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// A partition of the atom indices into disjoint nonempty blocks; the finite
/// sub-sigma-algebra it generates.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    atoms: usize,
}

impl Partition {
    /// Validates that the blocks are nonempty, pairwise disjoint, and cover
    /// `0..atoms` exactly.
    pub fn new(blocks: Vec<Vec<usize>>, atoms: usize) -> Result<Self> {
        let mut seen = vec![false; atoms];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock(bi));
            }
            for &i in block {
                if i >= atoms {
                    return Err(Error::BlockIndexOutOfRange { atom: i, atoms });
                }
                if seen[i] {
                    return Err(Error::OverlappingBlocks(i));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::UncoveredAtom(missing));
        }
        Ok(Partition { blocks, atoms })
    }

    /// The trivial sigma-algebra: a single block holding every atom.
    pub fn trivial(atoms: usize) -> Self {
        Partition {
            blocks: vec![(0..atoms).collect()],
            atoms,
        }
    }

    /// The full sigma-algebra: every atom in its own block.
    pub fn singletons(atoms: usize) -> Self {
        Partition {
            blocks: (0..atoms).map(|i| vec![i]).collect(),
            atoms,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    fn check_space(&self, sp: &FiniteProbSpace) -> Result<()> {
        if self.atoms != sp.atoms() {
            return Err(Error::LengthMismatch {
                expected: sp.atoms(),
                got: self.atoms,
            });
        }
        Ok(())
    }
}

/// The expectation `E xi = sum_i w_i xi_i`.
pub fn expectation(xi: &RandVar, sp: &FiniteProbSpace) -> Result<Complex64> {
    xi.check_space(sp)?;
    Ok(xi
        .values()
        .iter()
        .zip(sp.weights())
        .map(|(v, &w)| v * w)
        .sum())
}

/// The weighted L^p norm: `(sum_i w_i |xi_i|^p)^(1/p)` for finite p, and
/// `max_i |xi_i|` at p = infinity (every atom carries positive mass, so the
/// essential supremum is the maximum).
pub fn lp_norm(xi: &RandVar, sp: &FiniteProbSpace, p: Exponent) -> Result<f64> {
    xi.check_space(sp)?;
    Ok(lp_norm_slice(xi.values(), sp.weights(), p))
}

pub(crate) fn lp_norm_slice(values: &[Complex64], weights: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinite => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        Exponent::Finite(pf) if pf == 1.0 => values
            .iter()
            .zip(weights)
            .map(|(v, &w)| w * v.norm())
            .sum(),
        Exponent::Finite(pf) if pf == 2.0 => values
            .iter()
            .zip(weights)
            .map(|(v, &w)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt(),
        Exponent::Finite(pf) => values
            .iter()
            .zip(weights)
            .map(|(v, &w)| w * v.norm().powf(pf))
            .sum::<f64>()
            .powf(1.0 / pf),
    }
}

/// The conditional expectation `E[xi | G]` for the partition `G`: constant
/// on each block, equal to the block's weighted mean.
///
/// A block whose values are all bitwise equal returns that value untouched,
/// which makes idempotence and constant preservation exact.
pub fn cond_expectation(
    xi: &RandVar,
    part: &Partition,
    sp: &FiniteProbSpace,
) -> Result<RandVar> {
    xi.check_space(sp)?;
    part.check_space(sp)?;
    let mut out = vec![Complex64::new(0.0, 0.0); xi.len()];
    for block in part.blocks() {
        let first = xi.values()[block[0]];
        let mean = if block.iter().all(|&i| xi.values()[i] == first) {
            first
        } else {
            let mass: f64 = block.iter().map(|&i| sp.weights()[i]).sum();
            let num: Complex64 = block
                .iter()
                .map(|&i| xi.values()[i] * sp.weights()[i])
                .sum();
            num / mass
        };
        for &i in block {
            out[i] = mean;
        }
    }
    Ok(RandVar::new(out))
}

/// The matrix of `E[. | G]` acting on atom-indexed vectors: row `i`, column
/// `j` holds `w_j / P(block(i))` when `j` shares a block with `i`, else 0.
pub fn cond_exp_matrix(part: &Partition, sp: &FiniteProbSpace) -> Result<DMatrix<f64>> {
    part.check_space(sp)?;
    let n = sp.atoms();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for block in part.blocks() {
        let mass: f64 = block.iter().map(|&i| sp.weights()[i]).sum();
        for &i in block {
            for &j in block {
                m[(i, j)] = sp.weights()[j] / mass;
            }
        }
    }
    Ok(m)
}

/// The conditionally centered ratio `||xi - E[xi|G]||_p / ||xi||_p`.
pub fn centering_ratio(
    xi: &RandVar,
    part: &Partition,
    sp: &FiniteProbSpace,
    p: Exponent,
) -> Result<f64> {
    let denom = lp_norm(xi, sp, p)?;
    if denom == 0.0 {
        return Err(Error::ZeroRandVar);
    }
    let cond = cond_expectation(xi, part, sp)?;
    let centered: Vec<Complex64> = xi
        .values()
        .iter()
        .zip(cond.values())
        .map(|(a, b)| a - b)
        .collect();
    Ok(lp_norm_slice(&centered, sp.weights(), p) / denom)
}
