//! The two-point random variables that attain C_p(alpha), with their
//! moments evaluated both in closed form and through the probability-space
//! machinery.
//!
//! ```bash
//! cargo run --example two_point_extremal
//! ```

use centering_lab::constants::{cp_alpha, extremal_two_point};
use centering_lab::exponent::Exponent;
use centering_lab::prob::{centering_ratio, expectation, FiniteProbSpace, Partition, RandVar};

fn main() {
    let p = Exponent::Finite(3.0);

    println!("extremal two-point laws at p = 3\n");
    println!(
        "{:>6}  {:>12}  {:>12}  {:>12}  {:>14}  {:>14}",
        "alpha", "-b", "1-b", "E xi", "ratio", "C_p(alpha)"
    );
    for &alpha in &[0.05, 0.1, 0.2, 0.3, 0.5, 0.7] {
        let e = extremal_two_point(p, alpha).unwrap();
        println!(
            "{:>6}  {:>12.8}  {:>12.8}  {:>12.8}  {:>14.10}  {:>14.10}",
            alpha,
            e.dist.value1().re,
            e.dist.value2().re,
            e.mean,
            e.ratio,
            cp_alpha(p, alpha).unwrap(),
        );
    }

    // realize the law on an actual two-atom space and measure the ratio
    // with the generic norm machinery
    let alpha = 0.1;
    let e = extremal_two_point(p, alpha).unwrap();
    let sp = FiniteProbSpace::new(vec![1.0 - alpha, alpha]).unwrap();
    let xi = RandVar::new(vec![e.dist.value1(), e.dist.value2()]);
    let measured = centering_ratio(&xi, &Partition::trivial(2), &sp, p).unwrap();
    println!("\nalpha = {alpha}: closed-form ratio {:>.12}", e.ratio);
    println!("           measured on the space {measured:>.12}");
    println!("           mean via weighted sum {:>.12}", expectation(&xi, &sp).unwrap().re);
    println!("           mean in closed form   {:>.12}", e.mean);

    // at alpha = 0.1 and p = 3 everything is rational: b = 1/4 and
    // ratio^3 = 1.312
    println!("\nexact checks at (p, alpha) = (3, 0.1):");
    println!("  b          = {:.15} (exactly 1/4)", -e.dist.value1().re);
    println!("  ratio^3    = {:.15} (exactly 1.312)", e.ratio.powi(3));
}
