//! Decomposition of zero-mean discrete distributions into mixtures of
//! zero-mean two-point distributions, and the moment-ratio bound that the
//! decomposition certifies.
//!
//! Every zero-mean probability distribution on the reals is a mixture of
//! zero-mean distributions concentrated on two points. On a finite set the
//! decomposition is constructive: pair the heaviest positive atom with the
//! heaviest negative atom, peel off the largest zero-mean two-point
//! component that exhausts one of them, and repeat. The pairing order is a
//! determinism choice; any order yields a valid decomposition with at most
//! `atoms - 1` components.

use crate::constants::{cp_alpha, TwoPointDistribution};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::prob::{centering_ratio, expectation, FiniteProbSpace, Partition, RandVar};
use num_complex::Complex64;

/// Mass below which a pool residue is dropped after a subtraction.
const RESIDUE_FLOOR: f64 = 1e-14;

/// Tolerance for the zero-mean precondition, relative to the value scale.
const MEAN_TOL: f64 = 1e-10;

/// A discrete real distribution: pairwise distinct values with positive
/// masses summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteDistribution {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::TooFewDistAtoms { need: 1, got: 0 });
        }
        let mut sum = 0.0;
        for (i, &(v, m)) in atoms.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Schema(format!("atom value {v} is not finite")));
            }
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::NonPositiveMass { index: i, value: m });
            }
            sum += m;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::MassNotNormalized(sum));
        }
        let mut values: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in values.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateValue(w[0]));
            }
        }
        Ok(DiscreteDistribution { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(v, m)| v * m).sum()
    }

    /// Largest absolute value carried by an atom.
    pub fn value_scale(&self) -> f64 {
        self.atoms.iter().map(|a| a.0.abs()).fold(0.0, f64::max)
    }

    /// Drops atoms at value exactly 0 and renormalizes the rest. This is the
    /// preprocessing the decomposition requires; stripping a zero atom does
    /// not move the mean.
    pub fn strip_zero_atoms(&self) -> Result<Self> {
        let kept: Vec<(f64, f64)> = self
            .atoms
            .iter()
            .copied()
            .filter(|&(v, _)| v != 0.0)
            .collect();
        if kept.is_empty() {
            return Err(Error::ConstantRandVar);
        }
        let total: f64 = kept.iter().map(|a| a.1).sum();
        DiscreteDistribution::new(kept.into_iter().map(|(v, m)| (v, m / total)).collect())
    }
}

/// A convex combination of zero-mean two-point distributions.
#[derive(Debug, Clone)]
pub struct MixtureDecomposition {
    components: Vec<(f64, TwoPointDistribution)>,
}

impl MixtureDecomposition {
    pub fn components(&self) -> &[(f64, TwoPointDistribution)] {
        &self.components
    }

    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|c| c.0).sum()
    }

    /// The mixture marginal: accumulated mass per distinct value, sorted by
    /// value. Reconstructs the decomposed distribution.
    pub fn marginal(&self) -> Vec<(f64, f64)> {
        let mut acc: Vec<(f64, f64)> = Vec::new();
        let mut add = |value: f64, mass: f64| {
            if let Some(e) = acc.iter_mut().find(|e| e.0 == value) {
                e.1 += mass;
            } else {
                acc.push((value, mass));
            }
        };
        for (w, d) in &self.components {
            add(d.value1().re, w * d.mass1());
            add(d.value2().re, w * d.mass2());
        }
        acc.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        acc
    }

    /// The largest two-point constant over the components,
    /// `max_k C_p(alpha_k)` with `alpha_k` the component's smaller mass.
    pub fn component_max(&self, p: Exponent) -> Result<f64> {
        let mut best = 1.0f64;
        for (_, d) in &self.components {
            best = best.max(cp_alpha(p, d.minor_mass())?);
        }
        Ok(best)
    }
}

/// Decomposes a zero-mean distribution into at most `atoms - 1` zero-mean
/// two-point components by greedy heaviest-first pairing.
///
/// Preconditions: at least two atoms, mean zero within `1e-10` (relative to
/// the value scale), and no atom at value 0 — strip those first with
/// [`DiscreteDistribution::strip_zero_atoms`].
pub fn decompose_zero_mean(d: &DiscreteDistribution) -> Result<MixtureDecomposition> {
    if d.atoms().len() < 2 {
        return Err(Error::TooFewDistAtoms {
            need: 2,
            got: d.atoms().len(),
        });
    }
    let scale = d.value_scale().max(1.0);
    let mean = d.mean();
    if mean.abs() > MEAN_TOL * scale {
        return Err(Error::NonZeroMean(mean));
    }
    if let Some(i) = d.atoms().iter().position(|&(v, _)| v == 0.0) {
        return Err(Error::ZeroValuedAtom(i));
    }

    let mut pos: Vec<(f64, f64)> = d.atoms().iter().copied().filter(|a| a.0 > 0.0).collect();
    let mut neg: Vec<(f64, f64)> = d.atoms().iter().copied().filter(|a| a.0 < 0.0).collect();
    if pos.is_empty() || neg.is_empty() {
        // a zero-mean distribution without both signs is impossible
        return Err(Error::NonZeroMean(mean));
    }

    let mut components = Vec::with_capacity(d.atoms().len() - 1);
    while !pos.is_empty() && !neg.is_empty() {
        let ip = argmax_mass(&pos);
        let ineg = argmax_mass(&neg);
        let (vp, mp) = pos[ip];
        let (vn, mn) = neg[ineg];
        // zero-mean masses on {vn, vp}: proportional to the other value's size
        let q_neg = vp / (vp - vn);
        let q_pos = 1.0 - q_neg;
        let weight = (mn / q_neg).min(mp / q_pos);
        components.push((
            weight,
            TwoPointDistribution::new(
                Complex64::new(vn, 0.0),
                q_neg,
                Complex64::new(vp, 0.0),
                q_pos,
            )?,
        ));
        let left_n = mn - weight * q_neg;
        let left_p = mp - weight * q_pos;
        if left_n <= RESIDUE_FLOOR {
            neg.swap_remove(ineg);
        } else {
            neg[ineg].1 = left_n;
        }
        if left_p <= RESIDUE_FLOOR {
            pos.swap_remove(ip);
        } else {
            pos[ip].1 = left_p;
        }
    }
    let leftover: f64 = pos.iter().chain(neg.iter()).map(|a| a.1).sum();
    if leftover > 1e-9 {
        return Err(Error::NonZeroMean(leftover));
    }
    Ok(MixtureDecomposition { components })
}

fn argmax_mass(pool: &[(f64, f64)]) -> usize {
    let mut best = 0;
    for (i, a) in pool.iter().enumerate() {
        if a.1 > pool[best].1 {
            best = i;
        }
    }
    best
}

/// Outcome of checking a centering ratio against its mixture bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureRatio {
    /// `||xi - E xi||_p / ||xi||_p`.
    pub ratio: f64,
    /// `max_k C_p(alpha_k)` over the components of `xi - E xi`.
    pub component_max: f64,
}

/// Centers a real nonconstant random variable, decomposes the distribution
/// of `xi - E xi`, and reports the actual centering ratio next to the bound
/// `max_k C_p(alpha_k)` certified by the decomposition. The contract
/// `ratio <= component_max <= C_p` is what the two-point reduction proves.
pub fn verify_ratio_via_mixture(
    xi: &RandVar,
    sp: &FiniteProbSpace,
    p: Exponent,
) -> Result<MixtureRatio> {
    p.require_finite_above_one()?;
    if !xi.is_real() {
        return Err(Error::ComplexValued);
    }
    let first = xi.values()[0];
    if xi.values().iter().all(|&v| v == first) {
        return Err(Error::ConstantRandVar);
    }

    let mean = expectation(xi, sp)?.re;
    // distribution of eta = xi - E xi, merging equal values
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    for (v, &w) in xi.values().iter().zip(sp.weights()) {
        let val = v.re - mean;
        if let Some(e) = atoms.iter_mut().find(|e| e.0 == val) {
            e.1 += w;
        } else {
            atoms.push((val, w));
        }
    }
    let eta = DiscreteDistribution::new(atoms)?.strip_zero_atoms()?;
    let decomposition = decompose_zero_mean(&eta)?;
    let component_max = decomposition.component_max(p)?;
    let ratio = centering_ratio(xi, &Partition::trivial(sp.atoms()), sp, p)?;
    Ok(MixtureRatio {
        ratio,
        component_max,
    })
}
