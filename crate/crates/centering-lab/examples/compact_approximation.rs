//! Compact-approximation machinery: partition certificates bounding
//! ||I - T|| by C_p, the benchmark norms ||I - gamma E|| under refinement,
//! and the eigenvalue-driven lower-bound experiments.
//!
//! ```bash
//! cargo run --example compact_approximation
//! ```

use centering_lab::bcap::{
    build_bcap_approximant, eigen_lower_bound_check, gamma_inequality_experiment, mean_operator,
    nu_estimate, uniform_block_cond_exp,
};
use centering_lab::constants::max_cp;
use centering_lab::exponent::Exponent;
use centering_lab::interval::GridFunction;
use centering_lab::opnorm::OptimizerOptions;
use num_complex::Complex64;

fn main() {
    let p = Exponent::Finite(3.0);
    let opts = OptimizerOptions::with_seed(0);
    let c_p = max_cp(p).value;

    // constructive direction: a finite-rank conditional expectation
    // approximates any finite set of functions within eps while keeping
    // ||I - E^G|| below C_p
    let fs = vec![
        GridFunction::from_fn(64, |x| Complex64::new((3.0 * x).sin(), 0.0)).unwrap(),
        GridFunction::from_fn(64, |x| Complex64::new(x * x, 0.0)).unwrap(),
    ];
    let eps = 0.1;
    let cert = build_bcap_approximant(&fs, p, eps).unwrap();
    println!("certificate for 2 functions on 64 cells, eps = {eps}:");
    println!("  blocks:     {}", cert.partition.blocks().len());
    println!("  errors:     {:?}", cert.per_function_error);
    println!("  norm bound: {:.10} <= C_3 = {c_p:.10}\n", cert.norm_bound);

    // the benchmark norm nu(1) = ||I - E|| grows toward C_p along a
    // refinement chain
    println!("nu(1, 3, n) under refinement:");
    let one = Complex64::new(1.0, 0.0);
    for &n in &[2usize, 4, 8, 16, 32, 64] {
        let v = nu_estimate(one, p, n, &opts).unwrap();
        println!("  n = {n:>3}: {v:.10}   (C_3 - nu = {:.3e})", c_p - v);
    }

    // scaled means: both sides of the lower-bound experiment are the same
    // operator, so the slack vanishes and the constant vector witnesses
    // the zero lower norm
    let n = 16;
    let gamma = Complex64::new(0.5, 0.0);
    let t = mean_operator(n) * gamma;
    let r = gamma_inequality_experiment(&t, gamma, p, n, &opts).unwrap();
    println!("\ngamma experiment, T = 0.5 E at n = {n}:");
    println!("  ||I - T|| = {:.10}", r.lhs_norm);
    println!("  lower     = {:.3e}", r.lower);
    println!("  nu(0.5)   = {:.10}", r.nu);
    println!("  slack     = {:.3e}", r.slack);

    // eigenvalue route: every eigenvalue of T yields the lower bound
    // nu(gamma) for ||I - T||; exact on the sanctioned family
    println!("\neigenvalue lower bounds at benchmark n = 32, p = 3:");
    let t = mean_operator(32);
    let rep = eigen_lower_bound_check(&t, p, 32, &opts).unwrap();
    println!("  T = E (dim 32):       eigenvalues {:?}, min slack {:.3e}",
        rep.eigenvalues_tested.iter().map(|z| z.re).collect::<Vec<_>>(), rep.min_slack);
    for sizes in [vec![32usize, 32], vec![48, 16]] {
        let (t, _, dim) = uniform_block_cond_exp(&sizes).unwrap();
        let rep = eigen_lower_bound_check(&t, p, 32, &opts).unwrap();
        println!(
            "  E^G blocks {sizes:?} (dim {dim}): min slack {:.3e}",
            rep.min_slack
        );
    }

    // the identity is the canonical non-example: it is not compact on the
    // continuum, and the finite model reports the honest negative slack
    let t = centering_lab::opnorm::CMatrix::identity(16, 16);
    let rep = eigen_lower_bound_check(&t, p, 32, &opts).unwrap();
    println!(
        "  T = I (not in the family): min slack {:.4} (negative, as it must be)",
        rep.min_slack
    );
}
