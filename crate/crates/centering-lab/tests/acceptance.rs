//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use centering_lab::bcap::{
    build_bcap_approximant, eigen_lower_bound_check, mean_operator, nu_estimate,
    uniform_block_cond_exp,
};
use centering_lab::constants::{cp_alpha, max_cp, riesz_thorin_bound, uniform_n_constant};
use centering_lab::exponent::Exponent;
use centering_lab::interval::{
    beta_for_target_norm, discretize_check, gbeta_extremal, gbeta_norm, BetaAlgebra, BetaTarget,
    GridFunction,
};
use centering_lab::mixture::{decompose_zero_mean, DiscreteDistribution};
use centering_lab::opnorm::{cp_of_space, OptimizerOptions};
use centering_lab::prob::{centering_ratio, lp_norm, FiniteProbSpace, Partition, RandVar};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

fn fin(p: f64) -> Exponent {
    Exponent::Finite(p)
}

fn opts(starts: usize) -> OptimizerOptions {
    OptimizerOptions {
        starts,
        seed: 7,
        ..Default::default()
    }
}

struct Criterion {
    number: usize,
    label: &'static str,
    budget: Option<Duration>,
    run: fn(),
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        Criterion {
            number: 1,
            label: "explicit C_3 and C_4 closed forms",
            budget: Some(Duration::from_secs(1)),
            run: criterion_01,
        },
        Criterion {
            number: 2,
            label: "duality sweep and interpolation bound",
            budget: Some(Duration::from_secs(5)),
            run: criterion_02,
        },
        Criterion {
            number: 3,
            label: "two-point sharpness on a 20x20 (p, alpha) grid",
            budget: Some(Duration::from_secs(30)),
            run: criterion_03,
        },
        Criterion {
            number: 4,
            label: "uniform n = 3, 4 closed form",
            budget: Some(Duration::from_secs(10)),
            run: criterion_04,
        },
        Criterion {
            number: 5,
            label: "conditional centering bound, 10000 Monte Carlo trials",
            budget: Some(Duration::from_secs(30)),
            run: criterion_05,
        },
        Criterion {
            number: 6,
            label: "three-point pair-block space at tau = 0.01",
            budget: Some(Duration::from_secs(5)),
            run: criterion_06,
        },
        Criterion {
            number: 7,
            label: "pairing algebra: discretization, extremals, range sweep",
            budget: Some(Duration::from_secs(60)),
            run: criterion_07,
        },
        Criterion {
            number: 8,
            label: "mixture decomposition of 1000 zero-mean distributions",
            budget: Some(Duration::from_secs(5)),
            run: criterion_08,
        },
        Criterion {
            number: 9,
            label: "approximation certificates and nu refinement",
            budget: Some(Duration::from_secs(60)),
            run: criterion_09,
        },
        Criterion {
            number: 10,
            label: "eigenvalue lower bounds on the sanctioned family",
            budget: Some(Duration::from_secs(60)),
            run: criterion_10,
        },
        Criterion {
            number: 11,
            label: "byte-identical verify reports",
            budget: None,
            run: criterion_11,
        },
    ];

    let mut failures = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let timed_out = c.budget.map_or(false, |b| elapsed > b);
        let passed = outcome.is_ok() && !timed_out;
        println!(
            "[{}] criterion {:>2}: {} ({:.2}s{})",
            if passed { "PASS" } else { "FAIL" },
            c.number,
            c.label,
            elapsed.as_secs_f64(),
            c.budget
                .map(|b| format!(" / budget {}s", b.as_secs()))
                .unwrap_or_default(),
        );
        if !passed {
            let why = match outcome {
                Err(e) => panic_text(e),
                Ok(()) => format!("exceeded runtime budget {:?}", c.budget.unwrap()),
            };
            failures.push(format!("criterion {}: {}", c.number, why));
        }
    }
    assert!(
        failures.is_empty(),
        "acceptance failures:\n{}",
        failures.join("\n")
    );
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn criterion_01() {
    let c3 = (17.0 + 7.0 * 7f64.sqrt()).cbrt() / 3.0;
    let c4 = (1.0 + 2.0 / 3.0 * 3f64.sqrt()).powf(0.25);
    let got3 = max_cp(fin(3.0)).value;
    let got4 = max_cp(fin(4.0)).value;
    assert!((got3 - c3).abs() <= 1e-9, "C_3: {got3} vs {c3}");
    assert!((got4 - c4).abs() <= 1e-9, "C_4: {got4} vs {c4}");
}

fn criterion_02() {
    for &p in &[1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0] {
        let v = max_cp(fin(p)).value;
        let vd = max_cp(fin(p).dual()).value;
        assert!((v - vd).abs() <= 1e-9, "p = {p}: {v} vs dual {vd}");
        let bound = riesz_thorin_bound(fin(p)).unwrap();
        assert!(v <= bound + 1e-12, "p = {p}: {v} > bound {bound}");
    }
}

fn criterion_03() {
    let o = opts(8);
    for i in 0..20 {
        let p = 1.1 + 0.3 * i as f64;
        for j in 0..20 {
            let alpha = (j + 1) as f64 / 21.0;
            let sp = FiniteProbSpace::two_point(alpha).unwrap();
            let rep = cp_of_space(&sp, &Partition::trivial(2), fin(p), &o).unwrap();
            let want = cp_alpha(fin(p), alpha).unwrap();
            assert!(
                (rep.value - want).abs() <= 1e-6,
                "p = {p}, alpha = {alpha}: {} vs {want}",
                rep.value
            );
        }
    }
}

fn criterion_04() {
    let o = opts(16);
    for &p in &[1.5, 2.5, 3.0, 4.0] {
        for n in [3usize, 4] {
            let nf = n as f64;
            let closed = ((nf - 1.0).powf(p - 1.0) + 1.0).powf(1.0 / p)
                * ((nf - 1.0).powf(1.0 / (p - 1.0)) + 1.0).powf(1.0 - 1.0 / p)
                / nf;
            let sp = FiniteProbSpace::uniform(n).unwrap();
            let rep = cp_of_space(&sp, &Partition::trivial(n), fin(p), &o).unwrap();
            assert!(
                (rep.value - closed).abs() <= 1e-6,
                "p = {p}, n = {n}: {} vs {closed}",
                rep.value
            );
            // the grid-point form agrees with the closed form
            let grid = uniform_n_constant(fin(p), n).unwrap().value;
            assert!((grid - closed).abs() <= 1e-9);
        }
    }
}

fn criterion_05() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = [
        fin(1.0),
        fin(1.3),
        fin(1.7),
        fin(2.0),
        fin(2.5),
        fin(3.0),
        fin(4.0),
        fin(8.0),
        Exponent::Infinite,
    ];
    let bounds: Vec<f64> = pool.iter().map(|&p| max_cp(p).value).collect();
    let mut violations = 0usize;
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=8);
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let sp = FiniteProbSpace::normalize(weights).unwrap();
        let max_blocks = n.min(4);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..max_blocks)).collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut map = std::collections::HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            let bi = *map.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[bi].push(i);
        }
        let part = Partition::new(blocks, n).unwrap();
        let xi = RandVar::new(
            (0..n)
                .map(|_| {
                    Complex64::new(
                        StandardNormal.sample(&mut rng),
                        StandardNormal.sample(&mut rng),
                    )
                })
                .collect(),
        );
        let pi = rng.gen_range(0..pool.len());
        if lp_norm(&xi, &sp, pool[pi]).unwrap() < 1e-9 {
            continue;
        }
        let r = centering_ratio(&xi, &part, &sp, pool[pi]).unwrap();
        if r > bounds[pi] + 1e-9 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "{violations} trials exceeded C_p");
}

fn criterion_06() {
    let o = opts(32);
    let p = fin(3.0);
    let tau = 0.01;
    let alpha_p = max_cp(p).argmax_alpha.unwrap();
    let sp =
        FiniteProbSpace::new(vec![tau * (1.0 - alpha_p), tau * alpha_p, 1.0 - tau]).unwrap();
    let pair = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
    let v = cp_of_space(&sp, &pair, p, &o).unwrap().value;
    assert!(
        (v - max_cp(p).value).abs() <= 1e-6,
        "pair block: {v} vs {}",
        max_cp(p).value
    );
    let trivial = cp_of_space(&sp, &Partition::trivial(3), p, &o).unwrap().value;
    let cap = 1.0 + tau.powf(1.0 / 3.0) + tau.powf(2.0 / 3.0);
    assert!(trivial <= cap + 1e-6, "trivial: {trivial} > {cap}");
}

fn criterion_07() {
    let o = opts(16);
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
    for &p in &ps {
        for bk in 1..=9 {
            let b = BetaAlgebra::new(bk as f64 / 10.0).unwrap();
            let chk = discretize_check(&b, p, 10, &o).unwrap();
            assert!(
                (chk.numeric_norm - chk.analytic_norm).abs() <= 1e-6,
                "p = {p}, beta = {}: {} vs {}",
                b.beta(),
                chk.numeric_norm,
                chk.analytic_norm
            );
            if p.require_finite_above_one().is_ok() {
                let e = gbeta_extremal(&b, p).unwrap();
                assert!(
                    (e.ratio - gbeta_norm(&b, p)).abs() <= 1e-10,
                    "extremal p = {p}, beta = {}",
                    b.beta()
                );
            }
        }
        let cmax = max_cp(p).value;
        for c in [1.0, 0.5 * (1.0 + cmax), cmax] {
            match beta_for_target_norm(p, c).unwrap() {
                BetaTarget::Beta(beta) => {
                    let b = BetaAlgebra::new(beta).unwrap();
                    assert!(
                        (gbeta_norm(&b, p) - c).abs() <= 1e-9,
                        "p = {p}, target {c}: beta {beta}"
                    );
                }
                BetaTarget::TrivialAlgebra => {
                    assert!((c - 2.0).abs() <= 1e-9, "trivial case only carries 2");
                }
            }
        }
    }
}

fn criterion_08() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let d = loop {
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
                break d;
            }
        };
        let m = decompose_zero_mean(&d).unwrap();
        assert!(m.components().len() <= d.atoms().len() - 1);
        let scale = d.value_scale().max(1.0);
        for (_, c) in m.components() {
            assert!(c.mean().norm() <= 1e-10 * scale, "component mean off zero");
            assert!(c.value1().re < 0.0 && c.value2().re > 0.0);
        }
        let marg = m.marginal();
        let mut want: Vec<(f64, f64)> = d.atoms().to_vec();
        want.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        assert_eq!(marg.len(), want.len());
        for ((v, mass), (wv, wm)) in marg.iter().zip(&want) {
            assert_eq!(v, wv, "marginal carries a foreign value");
            assert!((mass - wm).abs() <= 1e-10, "mass defect {}", (mass - wm).abs());
        }
    }
}

fn criterion_09() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
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
        for e in &cert.per_function_error {
            assert!(*e < eps, "error {e} >= eps {eps}");
        }
        assert!(
            cert.norm_bound <= max_cp(p).value + 1e-9,
            "norm_bound {} exceeds C_p",
            cert.norm_bound
        );
    }

    // the compact-operator lower bound is not reproducible at desk scale as
    // stated (it quantifies over all compact operators on a nonatomic
    // space); the substituted property tracks nu(1, p, n) under refinement
    let o = opts(16);
    let one = Complex64::new(1.0, 0.0);
    for &p in &[1.5, 3.0, 4.0] {
        let mut prev = 0.0;
        for &n in &[2usize, 4, 8, 16, 32, 64] {
            let v = nu_estimate(one, fin(p), n, &o).unwrap();
            assert!(v >= prev - 1e-6, "p = {p}: nu not monotone at n = {n}");
            assert!(v <= max_cp(fin(p)).value + 1e-6, "p = {p}: nu above C_p");
            prev = v;
        }
        if p == 3.0 {
            assert!(
                (max_cp(fin(p)).value - prev).abs() <= 5e-3,
                "nu(1, 3, 64) = {prev} is not within 5e-3 of C_3"
            );
        }
    }
}

fn criterion_10() {
    let o = opts(16);
    let p = fin(3.0);
    let n = 32;

    let mut worst = f64::INFINITY;
    let t = mean_operator(32);
    worst = worst.min(eigen_lower_bound_check(&t, p, n, &o).unwrap().min_slack);
    let t = mean_operator(32) * Complex64::new(0.5, 0.0);
    worst = worst.min(eigen_lower_bound_check(&t, p, n, &o).unwrap().min_slack);
    for sizes in [
        vec![32usize, 32],
        vec![48, 16],
        vec![40, 24],
        vec![32, 16, 16],
    ] {
        let (t, _, _) = uniform_block_cond_exp(&sizes).unwrap();
        let rep = eigen_lower_bound_check(&t, p, n, &o).unwrap();
        worst = worst.min(rep.min_slack);
    }
    assert!(worst >= -1e-4, "sanctioned family min slack {worst}");
}

fn criterion_11() {
    let bin = env!("CARGO_BIN_EXE_centering-lab");
    let run = || {
        let out = std::process::Command::new(bin)
            .args(["verify", "--suite", "all", "--seed", "7"])
            .output()
            .expect("spawn centering-lab");
        assert!(
            out.status.success(),
            "verify failed:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "verify reports differ between runs");
}
