//! The sharp constants C_p: closed-form evaluation, maximization, duality,
//! and the interpolation bound.
//!
//! ```bash
//! cargo run --example sharp_constants
//! ```

use centering_lab::constants::{cp_alpha, max_cp, riesz_thorin_bound};
use centering_lab::exponent::Exponent;

fn main() {
    println!("sharp constants C_p = max_a C_p(a)\n");
    println!("{:>6}  {:>12}  {:>14}  {:>14}  {:>14}", "p", "alpha_p", "C_p", "C_p'", "2^|1-2/p|");
    for &p in &[1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0] {
        let e = Exponent::Finite(p);
        let m = max_cp(e);
        let dual = max_cp(e.dual());
        let bound = riesz_thorin_bound(e).unwrap();
        println!(
            "{:>6}  {:>12}  {:>14.10}  {:>14.10}  {:>14.10}",
            p,
            m.argmax_alpha
                .map(|a| format!("{a:.8}"))
                .unwrap_or_else(|| "-".into()),
            m.value,
            dual.value,
            bound,
        );
    }

    // the two published closed forms
    let c3 = (17.0 + 7.0 * 7f64.sqrt()).cbrt() / 3.0;
    let c4 = (1.0 + 2.0 / 3.0 * 3f64.sqrt()).powf(0.25);
    println!("\nclosed forms:");
    println!("  C_3 = (1/3)(17 + 7 sqrt 7)^(1/3) = {c3:.12}");
    println!("      computed                     = {:.12}", max_cp(Exponent::Finite(3.0)).value);
    println!("  C_4 = (1 + (2/3) sqrt 3)^(1/4)   = {c4:.12}");
    println!("      computed                     = {:.12}", max_cp(Exponent::Finite(4.0)).value);

    // a slice of the curve C_3(alpha): symmetric, equal to 1 at 1/2,
    // maximal near alpha_3 ~ 0.082
    println!("\nC_3(alpha) on a coarse grid:");
    for k in 1..10 {
        let a = k as f64 / 10.0;
        println!("  alpha = {a:.1}:  {:.10}", cp_alpha(Exponent::Finite(3.0), a).unwrap());
    }
}
