//! Seeded invariant suites behind `centering-lab verify`.
//!
//! Each suite exercises one module's contracts end to end and reports one
//! line per check. Every random draw comes from a ChaCha stream derived
//! from the configured seed, and no wall-clock data enters the report, so
//! repeated runs with the same configuration produce byte-identical output.

use crate::bcap::{
    build_bcap_approximant, eigen_lower_bound_check, gamma_inequality_experiment, mean_operator,
    nu_estimate, uniform_block_cond_exp,
};
use crate::constants::{cp_alpha, extremal_two_point, max_cp, riesz_thorin_bound};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::interval::{
    beta_for_target_norm, discretize_check, gbeta_cond_exp, gbeta_extremal, gbeta_norm,
    BetaAlgebra, BetaTarget, GridFunction,
};
use crate::io::fmt_num;
use crate::mixture::{decompose_zero_mean, verify_ratio_via_mixture, DiscreteDistribution};
use crate::opnorm::{
    cp_of_space, cp_of_space_blockwise, two_value_oracle, OptimizerOptions,
};
use crate::prob::{
    centering_ratio, cond_expectation, expectation, lp_norm, FiniteProbSpace, Partition, RandVar,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub starts: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, starts: 64 }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(suite: &'static str, name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult {
            suite,
            name,
            passed,
            detail,
        }
    }
}

pub const SUITES: &[&str] = &[
    "constants", "prob", "opnorm", "mixture", "interval", "bcap",
];

/// Runs one suite (or `"all"`) and collects the per-check results.
pub fn run_suite(which: &str, vo: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let run_all = which == "all";
    let mut matched = run_all;
    for &s in SUITES {
        if run_all || which == s {
            matched = true;
            match s {
                "constants" => constants_suite(vo, &mut out),
                "prob" => prob_suite(vo, &mut out),
                "opnorm" => opnorm_suite(vo, &mut out),
                "mixture" => mixture_suite(vo, &mut out),
                "interval" => interval_suite(vo, &mut out),
                "bcap" => bcap_suite(vo, &mut out),
                _ => unreachable!(),
            }
        }
    }
    if !matched {
        return Err(Error::Schema(format!(
            "unknown suite {which:?}; expected one of all, {}",
            SUITES.join(", ")
        )));
    }
    Ok(out)
}

/// Renders the deterministic text report.
pub fn render_report(results: &[CheckResult], vo: &VerifyOptions) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "verify report (seed {}, starts {})\n",
        vo.seed, vo.starts
    ));
    for r in results {
        s.push_str(&format!(
            "[{}] {}/{} — {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.suite,
            r.name,
            r.detail
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    s.push_str(&format!(
        "RESULT: {} ({} checks, {} failed)\n",
        if failed == 0 { "PASS" } else { "FAIL" },
        results.len(),
        failed
    ));
    s
}

fn fin(p: f64) -> Exponent {
    Exponent::Finite(p)
}

fn opts(vo: &VerifyOptions) -> OptimizerOptions {
    OptimizerOptions {
        starts: vo.starts,
        seed: vo.seed,
        ..Default::default()
    }
}

/// Reduced-start options for the experiment-heavy checks.
fn light_opts(vo: &VerifyOptions) -> OptimizerOptions {
    OptimizerOptions {
        starts: vo.starts.min(16),
        seed: vo.seed,
        ..Default::default()
    }
}

fn rng_for(vo: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(vo.seed);
    rng.set_stream(salt);
    rng
}

fn random_space(rng: &mut ChaCha8Rng, max_atoms: usize) -> FiniteProbSpace {
    let n = rng.gen_range(2..=max_atoms);
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    FiniteProbSpace::normalize(weights).expect("positive weights")
}

fn random_partition(rng: &mut ChaCha8Rng, atoms: usize) -> Partition {
    let max_blocks = atoms.min(4);
    let labels: Vec<usize> = (0..atoms).map(|_| rng.gen_range(0..max_blocks)).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut map = std::collections::HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        let bi = *map.entry(*l).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[bi].push(i);
    }
    Partition::new(blocks, atoms).expect("labels cover all atoms")
}

fn random_xi(rng: &mut ChaCha8Rng, atoms: usize) -> RandVar {
    RandVar::new(
        (0..atoms)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect(),
    )
}

const P_POOL: [Exponent; 6] = [
    Exponent::Finite(1.0),
    Exponent::Finite(1.3),
    Exponent::Finite(2.0),
    Exponent::Finite(2.7),
    Exponent::Finite(3.5),
    Exponent::Infinite,
];

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

fn constants_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "constants";

    let mut max_dev = 0.0f64;
    for pk in 1..=40 {
        let p = 1.0 + 0.35 * pk as f64;
        for ak in 1..100 {
            let a = ak as f64 / 100.0;
            let d = (crate::constants::cp_alpha_unchecked(p, a)
                - crate::constants::cp_alpha_unchecked(p, 1.0 - a))
            .abs();
            max_dev = max_dev.max(d);
        }
    }
    out.push(CheckResult::new(
        suite,
        "symmetry",
        max_dev <= 1e-12,
        format!("max |C_p(a) - C_p(1-a)| = {}", fmt_num(max_dev)),
    ));

    let ps = [1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0];
    let mut dual_dev = 0.0f64;
    let mut bound_ok = true;
    for &p in &ps {
        let m = max_cp(fin(p));
        let md = max_cp(fin(p).dual());
        dual_dev = dual_dev.max((m.value - md.value).abs());
        if m.value > riesz_thorin_bound(fin(p)).unwrap() + 1e-12 {
            bound_ok = false;
        }
    }
    out.push(CheckResult::new(
        suite,
        "duality-and-interpolation-bound",
        dual_dev <= 1e-9 && bound_ok,
        format!("max |C_p - C_p'| = {}", fmt_num(dual_dev)),
    ));

    let c3 = (17.0 + 7.0 * 7f64.sqrt()).cbrt() / 3.0;
    let c4 = (1.0 + 2.0 / 3.0 * 3f64.sqrt()).powf(0.25);
    let d3 = (max_cp(fin(3.0)).value - c3).abs();
    let d4 = (max_cp(fin(4.0)).value - c4).abs();
    out.push(CheckResult::new(
        suite,
        "closed-form-c3-c4",
        d3 <= 1e-9 && d4 <= 1e-9,
        format!("|dC_3| = {}, |dC_4| = {}", fmt_num(d3), fmt_num(d4)),
    ));

    let mut in_interval = true;
    for &p in &[1.1, 1.5, 3.0, 4.0, 8.0] {
        match max_cp(fin(p)).argmax_alpha {
            Some(a) if a > 0.0 && a < 1.0 / 6.0 => {}
            _ => in_interval = false,
        }
    }
    out.push(CheckResult::new(
        suite,
        "argmax-in-(0,1/6)",
        in_interval,
        "p in {1.1, 1.5, 3, 4, 8}".into(),
    ));

    // approach rate is alpha^(1/(p-1)): at alpha = 1e-6 the tolerance is
    // attainable for p up to about 4
    let mut edge_dev = 0.0f64;
    for &p in &[1.5, 2.5, 3.0, 4.0] {
        edge_dev = edge_dev.max((cp_alpha(fin(p), 1e-6).unwrap() - 1.0).abs());
        edge_dev = edge_dev.max((cp_alpha(fin(p), 1.0 - 1e-6).unwrap() - 1.0).abs());
    }
    out.push(CheckResult::new(
        suite,
        "endpoint-limits",
        edge_dev <= 1e-2,
        format!("max |C_p(1e-6) - 1| = {}", fmt_num(edge_dev)),
    ));

    let mut rng = rng_for(vo, 11);
    let mut ratio_dev = 0.0f64;
    for _ in 0..1000 {
        let p = rng.gen_range(1.05..12.0);
        let a = rng.gen_range(1e-4..0.9999);
        let e = extremal_two_point(fin(p), a).unwrap();
        let c = cp_alpha(fin(p), a).unwrap();
        ratio_dev = ratio_dev.max((e.ratio - c).abs());
    }
    out.push(CheckResult::new(
        suite,
        "extremal-ratio-equals-cp-alpha",
        ratio_dev <= 1e-10,
        format!("1000 samples, max dev = {}", fmt_num(ratio_dev)),
    ));
}

// ---------------------------------------------------------------------------
// prob
// ---------------------------------------------------------------------------

fn prob_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "prob";
    let mut rng = rng_for(vo, 21);

    let mut contraction_ok = true;
    let mut idempotent_ok = true;
    let mut pythagoras_dev = 0.0f64;
    for _ in 0..400 {
        let sp = random_space(&mut rng, 8);
        let part = random_partition(&mut rng, sp.atoms());
        let xi = random_xi(&mut rng, sp.atoms());
        let p = P_POOL[rng.gen_range(0..P_POOL.len())];
        let cond = cond_expectation(&xi, &part, &sp).unwrap();
        let nc = lp_norm(&cond, &sp, p).unwrap();
        let nx = lp_norm(&xi, &sp, p).unwrap();
        if nc > nx + 1e-12 * nx.max(1.0) {
            contraction_ok = false;
        }
        if cond_expectation(&cond, &part, &sp).unwrap() != cond {
            idempotent_ok = false;
        }
        let c2 = lp_norm(&cond, &sp, fin(2.0)).unwrap().powi(2);
        let centered = RandVar::new(
            xi.values()
                .iter()
                .zip(cond.values())
                .map(|(a, b)| a - b)
                .collect(),
        );
        let r2 = lp_norm(&centered, &sp, fin(2.0)).unwrap().powi(2);
        let x2 = lp_norm(&xi, &sp, fin(2.0)).unwrap().powi(2);
        pythagoras_dev = pythagoras_dev.max((r2 + c2 - x2).abs() / x2.max(1.0));
    }
    out.push(CheckResult::new(
        suite,
        "contractive-projection",
        contraction_ok,
        "400 random (space, partition, xi, p) trials".into(),
    ));
    out.push(CheckResult::new(
        suite,
        "idempotent",
        idempotent_ok,
        "exact equality on repeated application".into(),
    ));
    out.push(CheckResult::new(
        suite,
        "pythagoras-p2",
        pythagoras_dev <= 1e-10,
        format!("max relative defect = {}", fmt_num(pythagoras_dev)),
    ));

    let mut preserved = true;
    for _ in 0..50 {
        let sp = random_space(&mut rng, 6);
        let part = random_partition(&mut rng, sp.atoms());
        let c = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let one = RandVar::constant(c, sp.atoms());
        if cond_expectation(&one, &part, &sp).unwrap() != one {
            preserved = false;
        }
    }
    out.push(CheckResult::new(
        suite,
        "preserves-constants",
        preserved,
        "50 random constant vectors".into(),
    ));

    // the conditional-centering bound, Monte Carlo
    let mut bounds: std::collections::HashMap<u64, f64> = std::collections::HashMap::new();
    let mut violations = 0usize;
    let mut worst_margin = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let sp = random_space(&mut rng, 8);
        let part = random_partition(&mut rng, sp.atoms());
        let xi = random_xi(&mut rng, sp.atoms());
        let p = P_POOL[rng.gen_range(0..P_POOL.len())];
        if lp_norm(&xi, &sp, p).unwrap() < 1e-9 {
            continue;
        }
        let key = match p {
            Exponent::Finite(pf) => pf.to_bits(),
            Exponent::Infinite => u64::MAX,
        };
        let bound = *bounds.entry(key).or_insert_with(|| max_cp(p).value);
        let r = centering_ratio(&xi, &part, &sp, p).unwrap();
        if r > bound + 1e-9 {
            violations += 1;
        }
        worst_margin = worst_margin.max(r - bound);
    }
    out.push(CheckResult::new(
        suite,
        "centering-ratio-bounded-by-cp",
        violations == 0,
        format!(
            "10000 trials, violations = {violations}, worst margin = {}",
            fmt_num(worst_margin)
        ),
    ));
}

// ---------------------------------------------------------------------------
// opnorm
// ---------------------------------------------------------------------------

fn opnorm_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "opnorm";
    let o = opts(vo);
    let mut rng = rng_for(vo, 31);

    let mut sharp_dev = 0.0f64;
    for ai in 0..6 {
        let alpha = 0.08 + 0.07 * ai as f64;
        for &p in &[1.4, 2.0, 3.0, 6.0] {
            let sp = FiniteProbSpace::two_point(alpha).unwrap();
            let rep = cp_of_space(&sp, &Partition::trivial(2), fin(p), &o).unwrap();
            let want = cp_alpha(fin(p), alpha).unwrap();
            sharp_dev = sharp_dev.max((rep.value - want).abs());
        }
    }
    out.push(CheckResult::new(
        suite,
        "two-point-sharpness",
        sharp_dev <= 1e-6,
        format!("max |numeric - C_p(alpha)| = {}", fmt_num(sharp_dev)),
    ));

    let mut unif_dev = 0.0f64;
    for &p in &[1.5, 2.5, 3.0, 4.0] {
        for n in [3usize, 4] {
            let sp = FiniteProbSpace::uniform(n).unwrap();
            let rep = cp_of_space(&sp, &Partition::trivial(n), fin(p), &o).unwrap();
            let want = crate::constants::uniform_n_constant(fin(p), n).unwrap().value;
            unif_dev = unif_dev.max((rep.value - want).abs());
        }
    }
    out.push(CheckResult::new(
        suite,
        "uniform-3-4-closed-form",
        unif_dev <= 1e-6,
        format!("max deviation = {}", fmt_num(unif_dev)),
    ));

    // three-point space concentrating the extremal pair on a small block
    let p3 = fin(3.0);
    let tau = 0.01;
    let alpha_p = max_cp(p3).argmax_alpha.unwrap();
    let sp3 = FiniteProbSpace::new(vec![tau * (1.0 - alpha_p), tau * alpha_p, 1.0 - tau]).unwrap();
    let pair_part = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
    let with_pairs = cp_of_space(&sp3, &pair_part, p3, &o).unwrap().value;
    let d_pair = (with_pairs - max_cp(p3).value).abs();
    let trivial = cp_of_space(&sp3, &Partition::trivial(3), p3, &o).unwrap().value;
    let cap = 1.0 + tau.powf(1.0 / 3.0) + tau.powf(2.0 / 3.0);
    out.push(CheckResult::new(
        suite,
        "three-point-pair-block",
        d_pair <= 1e-6 && trivial <= cap + 1e-6,
        format!(
            "|c_p(pair) - C_3| = {}, c_p(trivial) = {} <= {}",
            fmt_num(d_pair),
            fmt_num(trivial),
            fmt_num(cap)
        ),
    ));

    let mut oracle_ok = true;
    let mut block_dev = 0.0f64;
    let mut cap_ok = true;
    for _ in 0..12 {
        let sp = random_space(&mut rng, 8);
        let p = fin(rng.gen_range(1.2..6.0));
        let rep = cp_of_space(&sp, &Partition::trivial(sp.atoms()), p, &o).unwrap();
        let oracle = two_value_oracle(&sp, p).unwrap();
        if rep.value < oracle.value - 1e-6 {
            oracle_ok = false;
        }
        if rep.value > max_cp(p).value + 1e-6 {
            cap_ok = false;
        }
        let part = random_partition(&mut rng, sp.atoms());
        let direct = cp_of_space(&sp, &part, p, &o).unwrap().value;
        let blockwise = cp_of_space_blockwise(&sp, &part, p, &o).unwrap();
        block_dev = block_dev.max((direct - blockwise).abs());
    }
    out.push(CheckResult::new(
        suite,
        "oracle-lower-bound-and-cp-cap",
        oracle_ok && cap_ok,
        "12 random spaces".into(),
    ));
    out.push(CheckResult::new(
        suite,
        "block-decomposition",
        block_dev <= 1e-6,
        format!("max |direct - blockwise| = {}", fmt_num(block_dev)),
    ));

    let mut dual_dev = 0.0f64;
    for _ in 0..6 {
        let sp = random_space(&mut rng, 6);
        let part = random_partition(&mut rng, sp.atoms());
        let p = fin(rng.gen_range(1.2..5.0));
        let a = cp_of_space(&sp, &part, p, &o).unwrap().value;
        let b = cp_of_space(&sp, &part, p.dual(), &o).unwrap().value;
        dual_dev = dual_dev.max((a - b).abs());
    }
    out.push(CheckResult::new(
        suite,
        "adjoint-duality",
        dual_dev <= 1e-5,
        format!("max |c_p - c_p'| = {}", fmt_num(dual_dev)),
    ));

    let mut p2_dev = 0.0f64;
    for _ in 0..8 {
        let sp = random_space(&mut rng, 7);
        let part = random_partition(&mut rng, sp.atoms());
        if part.blocks().len() == sp.atoms() {
            continue; // singleton partition gives 0, not 1
        }
        let rep = cp_of_space(&sp, &part, fin(2.0), &o).unwrap();
        p2_dev = p2_dev.max((rep.value - 1.0).abs());
    }
    out.push(CheckResult::new(
        suite,
        "p2-norm-is-one",
        p2_dev <= 1e-8,
        format!("max |c_2 - 1| = {}", fmt_num(p2_dev)),
    ));

    let sp = random_space(&mut rng, 6);
    let part = random_partition(&mut rng, sp.atoms());
    let a = cp_of_space(&sp, &part, fin(2.6), &o).unwrap();
    let b = cp_of_space(&sp, &part, fin(2.6), &o).unwrap();
    out.push(CheckResult::new(
        suite,
        "determinism",
        a.value.to_bits() == b.value.to_bits() && a.witness == b.witness,
        "identical options give bit-identical reports".into(),
    ));
}

// ---------------------------------------------------------------------------
// mixture
// ---------------------------------------------------------------------------

fn mixture_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "mixture";
    let mut rng = rng_for(vo, 41);

    let mut recon_dev = 0.0f64;
    let mut shape_ok = true;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let d = random_zero_mean(&mut rng, n);
        let m = decompose_zero_mean(&d).unwrap();
        if m.components().len() > d.atoms().len() - 1 {
            shape_ok = false;
        }
        let scale = d.value_scale().max(1.0);
        for (_, c) in m.components() {
            if c.mean().norm() > 1e-10 * scale
                || !(c.value1().re < 0.0 && c.value2().re > 0.0)
            {
                shape_ok = false;
            }
        }
        let marg = m.marginal();
        let mut want: Vec<(f64, f64)> = d.atoms().to_vec();
        want.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if marg.len() != want.len() {
            shape_ok = false;
        } else {
            for ((v, mass), (wv, wm)) in marg.iter().zip(&want) {
                if v != wv {
                    shape_ok = false;
                }
                recon_dev = recon_dev.max((mass - wm).abs());
            }
        }
    }
    out.push(CheckResult::new(
        suite,
        "reconstruction",
        recon_dev <= 1e-10 && shape_ok,
        format!("1000 distributions, max mass defect = {}", fmt_num(recon_dev)),
    ));

    let mut bound_ok = true;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..300 {
        let sp = random_space(&mut rng, 7);
        let vals: Vec<f64> = (0..sp.atoms())
            .map(|_| rng.gen_range(-4.0..4.0))
            .collect();
        let xi = RandVar::from_real(&vals);
        let p = fin(rng.gen_range(1.2..8.0));
        match verify_ratio_via_mixture(&xi, &sp, p) {
            Ok(r) => {
                if r.ratio > r.component_max + 1e-9
                    || r.component_max > max_cp(p).value + 1e-9
                {
                    bound_ok = false;
                }
                worst = worst.max(r.ratio - r.component_max);
            }
            Err(Error::ConstantRandVar) => {}
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
    out.push(CheckResult::new(
        suite,
        "ratio-below-component-max",
        bound_ok,
        format!("300 trials, worst ratio - bound = {}", fmt_num(worst)),
    ));
}

fn random_zero_mean(rng: &mut ChaCha8Rng, n: usize) -> DiscreteDistribution {
    loop {
        let masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = masses.iter().sum();
        let masses: Vec<f64> = masses.iter().map(|m| m / total).collect();
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let mag = rng.gen_range(0.2..3.0) + i as f64;
                if i % 2 == 0 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        let mean: f64 = values.iter().zip(&masses).map(|(v, m)| v * m).sum();
        let atoms: Vec<(f64, f64)> = values
            .iter()
            .zip(&masses)
            .map(|(&v, &m)| (v - mean, m))
            .collect();
        if atoms.iter().any(|&(v, _)| v.abs() < 1e-6) {
            continue;
        }
        if let Ok(d) = DiscreteDistribution::new(atoms) {
            return d;
        }
    }
}

// ---------------------------------------------------------------------------
// interval
// ---------------------------------------------------------------------------

fn interval_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "interval";
    let o = opts(vo);
    let mut rng = rng_for(vo, 51);

    let ps = [
        fin(1.0),
        fin(1.25),
        fin(1.5),
        fin(2.0),
        fin(2.5),
        fin(3.0),
        fin(4.0),
        fin(8.0),
        fin(16.0),
        Exponent::Infinite,
    ];
    let mut disc_dev = 0.0f64;
    for &p in &ps {
        for bk in 1..=9 {
            let b = BetaAlgebra::new(bk as f64 / 10.0).unwrap();
            let chk = discretize_check(&b, p, 10, &o).unwrap();
            disc_dev = disc_dev.max((chk.numeric_norm - chk.analytic_norm).abs());
        }
    }
    out.push(CheckResult::new(
        suite,
        "discretized-norm-matches-closed-form",
        disc_dev <= 1e-6,
        format!("10x9 (p, beta) grid, max dev = {}", fmt_num(disc_dev)),
    ));

    let mut extremal_dev = 0.0f64;
    for &p in &ps {
        if p.require_finite_above_one().is_err() {
            continue;
        }
        for bk in 1..=9 {
            let b = BetaAlgebra::new(bk as f64 / 10.0).unwrap();
            let e = gbeta_extremal(&b, p).unwrap();
            extremal_dev = extremal_dev.max((e.ratio - gbeta_norm(&b, p)).abs());
        }
    }
    out.push(CheckResult::new(
        suite,
        "extremal-ratio",
        extremal_dev <= 1e-10,
        format!("max |ratio - C_p(beta)| = {}", fmt_num(extremal_dev)),
    ));

    let mut dual_dev = 0.0f64;
    for _ in 0..200 {
        let p = rng.gen_range(1.05..16.0);
        let beta = rng.gen_range(0.01..0.99);
        let b = BetaAlgebra::new(beta).unwrap();
        dual_dev = dual_dev.max((gbeta_norm(&b, fin(p)) - gbeta_norm(&b, fin(p).dual())).abs());
        if gbeta_norm(&b, fin(1.0)) != gbeta_norm(&b, Exponent::Infinite) {
            dual_dev = f64::INFINITY;
        }
    }
    out.push(CheckResult::new(
        suite,
        "dual-exponent-invariance",
        dual_dev <= 1e-12,
        format!("max deviation = {}", fmt_num(dual_dev)),
    ));

    let mut fiber_ok = true;
    let mut contract_ok = true;
    for _ in 0..20 {
        let (n, m) = *[(10usize, 3usize), (12, 4), (8, 4), (10, 5), (12, 3)]
            .iter()
            .nth(rng.gen_range(0..5))
            .unwrap();
        let beta = m as f64 / n as f64;
        let b = BetaAlgebra::new(beta).unwrap();
        let g = GridFunction::new(
            n,
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect(),
        )
        .unwrap();
        let cond = gbeta_cond_exp(&b, &g).unwrap();
        for _ in 0..50 {
            let x = rng.gen_range(beta..1.0);
            let y = beta * (1.0 - x) / (1.0 - beta);
            if (cond.value_at(x) - cond.value_at(y)).norm() > 1e-12 {
                fiber_ok = false;
            }
        }
        for p in [fin(1.0), fin(2.0), fin(3.0), Exponent::Infinite] {
            if cond.lp_norm(p) > g.lp_norm(p) + 1e-12 {
                contract_ok = false;
            }
        }
        let twice = gbeta_cond_exp(&b, &cond).unwrap();
        let k = twice.cells() / cond.cells();
        for (i, v) in twice.values().iter().enumerate() {
            if *v != cond.values()[i / k] {
                fiber_ok = false;
            }
        }
    }
    out.push(CheckResult::new(
        suite,
        "pair-averaging-measurable-idempotent-contractive",
        fiber_ok && contract_ok,
        "20 random grid functions".into(),
    ));

    let mut target_dev = 0.0f64;
    for &p in &ps {
        let cmax = max_cp(p).value;
        for c in [1.0, 0.5 * (1.0 + cmax), cmax] {
            match beta_for_target_norm(p, c).unwrap() {
                BetaTarget::Beta(beta) => {
                    let b = BetaAlgebra::new(beta).unwrap();
                    target_dev = target_dev.max((gbeta_norm(&b, p) - c).abs());
                }
                BetaTarget::TrivialAlgebra => {
                    // the value 2 is carried by the trivial sigma-algebra
                    target_dev = target_dev.max((max_cp(p).value - c).abs());
                }
            }
        }
    }
    out.push(CheckResult::new(
        suite,
        "range-sweep-hits-targets",
        target_dev <= 1e-9,
        format!("targets {{1, mid, C_p}}, max miss = {}", fmt_num(target_dev)),
    ));
}

// ---------------------------------------------------------------------------
// bcap
// ---------------------------------------------------------------------------

fn bcap_suite(vo: &VerifyOptions, out: &mut Vec<CheckResult>) {
    let suite = "bcap";
    let o = light_opts(vo);
    let mut rng = rng_for(vo, 61);

    let mut cert_ok = true;
    let mut worst_bound = 0.0f64;
    for _ in 0..50 {
        let cells = *[32usize, 48, 64].iter().nth(rng.gen_range(0..3)).unwrap();
        let count = rng.gen_range(1..=4);
        let p = fin(*[1.5, 2.0, 3.0, 4.0].iter().nth(rng.gen_range(0..4)).unwrap());
        let eps = rng.gen_range(0.05..0.5);
        let fs: Vec<GridFunction> = (0..count)
            .map(|_| {
                let scale = rng.gen_range(0.2..1.5);
                let shift = rng.gen_range(-1.0..1.0);
                let freq = rng.gen_range(1.0..4.0);
                GridFunction::from_fn(cells, |x| {
                    Complex64::new(scale * (freq * x).sin() + shift * x, 0.0)
                })
                .unwrap()
            })
            .collect();
        let cert = build_bcap_approximant(&fs, p, eps).unwrap();
        let cap = max_cp(p).value + 1e-9;
        if cert.per_function_error.iter().any(|&e| e >= eps) || cert.norm_bound > cap {
            cert_ok = false;
        }
        worst_bound = worst_bound.max(cert.norm_bound - max_cp(p).value);
    }
    out.push(CheckResult::new(
        suite,
        "certificates",
        cert_ok,
        format!(
            "50 batches, worst norm_bound - C_p = {}",
            fmt_num(worst_bound)
        ),
    ));

    let one = Complex64::new(1.0, 0.0);
    let mut chain_ok = true;
    let mut prev = 0.0f64;
    let mut last = 0.0;
    for &n in &[2usize, 4, 8, 16, 32, 64] {
        let v = nu_estimate(one, fin(3.0), n, &o).unwrap();
        if v < prev - 1e-6 || v > max_cp(fin(3.0)).value + 1e-6 {
            chain_ok = false;
        }
        prev = v;
        last = v;
    }
    let gap = max_cp(fin(3.0)).value - last;
    out.push(CheckResult::new(
        suite,
        "nu-refinement-chain",
        chain_ok && gap.abs() <= 5e-3,
        format!("n in {{2..64}}, C_3 - nu(1, 3, 64) = {}", fmt_num(gap)),
    ));

    let mut oracle_dev = 0.0f64;
    for &n in &[5usize, 9, 13, 17] {
        let sp = FiniteProbSpace::uniform(n).unwrap();
        let oracle = two_value_oracle(&sp, fin(3.0)).unwrap().value;
        let nu = nu_estimate(one, fin(3.0), n, &o).unwrap();
        oracle_dev = oracle_dev.max((nu - oracle).abs());
    }
    out.push(CheckResult::new(
        suite,
        "nu-matches-subset-oracle",
        oracle_dev <= 1e-6,
        format!("max |nu - oracle| = {}", fmt_num(oracle_dev)),
    ));

    // sanctioned lower-bound family: exact finite shadows
    let mut min_slack = f64::INFINITY;
    let p3 = fin(3.0);
    let t = mean_operator(32);
    min_slack = min_slack.min(eigen_lower_bound_check(&t, p3, 32, &o).unwrap().min_slack);
    let t = mean_operator(32) * Complex64::new(0.5, 0.0);
    min_slack = min_slack.min(eigen_lower_bound_check(&t, p3, 32, &o).unwrap().min_slack);
    for sizes in [
        vec![32usize, 32],
        vec![48, 16],
        vec![40, 24],
        vec![32, 16, 16],
    ] {
        let (t, _, _) = uniform_block_cond_exp(&sizes).unwrap();
        let rep = eigen_lower_bound_check(&t, p3, 32, &o).unwrap();
        min_slack = min_slack.min(rep.min_slack);
    }
    out.push(CheckResult::new(
        suite,
        "eigenvalue-lower-bounds",
        min_slack >= -1e-4,
        format!("sanctioned family at n = 32, min slack = {}", fmt_num(min_slack)),
    ));

    // gamma experiments where both sides are the same operator
    let mut slack_dev = 0.0f64;
    let mut lower_ok = true;
    for &n in &[8usize, 16, 32] {
        for gamma in [Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.3)] {
            let t = mean_operator(n) * gamma;
            let r = gamma_inequality_experiment(&t, gamma, p3, n, &o).unwrap();
            slack_dev = slack_dev.max(r.slack.abs());
            if r.lower > 1e-10 {
                lower_ok = false;
            }
        }
    }
    out.push(CheckResult::new(
        suite,
        "gamma-experiment-scaled-means",
        slack_dev <= 1e-6 && lower_ok,
        format!("max |slack| = {}", fmt_num(slack_dev)),
    ));

    // expectation example: E xi known by hand on the extremal pair
    let e = extremal_two_point(p3, 0.3).unwrap();
    let sp = FiniteProbSpace::new(vec![0.7, 0.3]).unwrap();
    let xi = RandVar::new(vec![e.dist.value1(), e.dist.value2()]);
    let mean_dev = (expectation(&xi, &sp).unwrap().re - e.mean).abs();
    out.push(CheckResult::new(
        suite,
        "moment-bookkeeping",
        mean_dev <= 1e-13,
        format!("|E xi - closed form| = {}", fmt_num(mean_dev)),
    ));
}
