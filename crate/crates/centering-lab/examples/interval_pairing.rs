//! The pairing sigma-algebra on [0, 1]: every constant in [1, C_p] is the
//! norm of I - E^G for some pairing parameter beta.
//!
//! ```bash
//! cargo run --example interval_pairing
//! ```

use centering_lab::constants::max_cp;
use centering_lab::exponent::Exponent;
use centering_lab::interval::{
    beta_for_target_norm, discretize_check, gbeta_cond_exp, gbeta_extremal, gbeta_norm,
    jbeta_map, BetaAlgebra, BetaTarget, GridFunction,
};
use centering_lab::opnorm::OptimizerOptions;
use num_complex::Complex64;

fn main() {
    let p = Exponent::Finite(3.0);
    let opts = OptimizerOptions::with_seed(0);

    // the reflection J_beta pairs [beta, 1] with [0, beta]
    let b = BetaAlgebra::new(0.3).unwrap();
    println!("J_0.3 maps 0.65 -> {:.4}, 1 -> {:.4}, 0.3 -> {:.4}\n",
        jbeta_map(&b, 0.65).unwrap(), jbeta_map(&b, 1.0).unwrap(), jbeta_map(&b, 0.3).unwrap());

    // analytic norm vs the numerically optimized norm of the exact finite
    // pair model, plus the extremal data
    println!(
        "{:>6}  {:>14}  {:>14}  {:>12}  {:>12}",
        "beta", "analytic", "numeric(10)", "gamma*", "kappa"
    );
    for k in 1..=9 {
        let b = BetaAlgebra::new(k as f64 / 10.0).unwrap();
        let chk = discretize_check(&b, p, 10, &opts).unwrap();
        let e = gbeta_extremal(&b, p).unwrap();
        println!(
            "{:>6.1}  {:>14.10}  {:>14.10}  {:>12.8}  {:>12.8}",
            b.beta(),
            chk.analytic_norm,
            chk.numeric_norm,
            e.gamma_star,
            e.kappa,
        );
    }

    // conditional expectation of a grid function: fiber-averaged, exactly
    let g = GridFunction::from_fn(10, |x| Complex64::new(if x >= 0.3 { 1.0 } else { 0.0 }, 0.0))
        .unwrap();
    let cond = gbeta_cond_exp(&b, &g).unwrap();
    println!(
        "\nE^G of the indicator of [0.3, 1] is constant {:.4} (on {} refined cells)",
        cond.values()[0].re,
        cond.cells()
    );

    // hitting prescribed targets in [1, C_p] by bisection in beta
    let cmax = max_cp(p).value;
    println!("\ninverting beta -> norm at p = 3 (C_3 = {cmax:.10}):");
    for c in [1.0, 1.02, 0.5 * (1.0 + cmax), cmax] {
        match beta_for_target_norm(p, c).unwrap() {
            BetaTarget::Beta(beta) => {
                let achieved = gbeta_norm(&BetaAlgebra::new(beta).unwrap(), p);
                println!("  target {c:.10} -> beta = {beta:.6e}, norm {achieved:.10}");
            }
            BetaTarget::TrivialAlgebra => println!("  target {c:.10} -> trivial sigma-algebra"),
        }
    }

    // p = infinity: the norm is 2 max(beta, 1 - beta); the value 2 itself
    // needs the trivial sigma-algebra
    let pinf = Exponent::Infinite;
    println!("\np = inf: norm at beta = 0.3 is {:.4}", gbeta_norm(&b, pinf));
    match beta_for_target_norm(pinf, 2.0).unwrap() {
        BetaTarget::TrivialAlgebra => println!("target 2 at p = inf: trivial sigma-algebra"),
        BetaTarget::Beta(beta) => println!("target 2 at p = inf: beta = {beta}"),
    }
}
