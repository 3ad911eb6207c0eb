//! Numerical operator norms of I - E^G on finite probability spaces, with
//! the two-valued subset oracle as the independent certification route.
//!
//! ```bash
//! cargo run --example operator_norms
//! ```

use centering_lab::constants::max_cp;
use centering_lab::exponent::Exponent;
use centering_lab::opnorm::{
    cp_of_space, cp_of_space_blockwise, two_value_oracle, OptimizerOptions,
};
use centering_lab::prob::{FiniteProbSpace, Partition};

fn main() {
    let p = Exponent::Finite(3.0);
    let opts = OptimizerOptions::with_seed(0);

    println!("c_p of finite spaces at p = 3 (C_3 = {:.10})\n", max_cp(p).value);

    // trivial sigma-algebra on assorted spaces: multistart ascent against
    // the subset enumeration oracle
    let spaces = [
        vec![0.3, 0.7],
        vec![0.25, 0.25, 0.25, 0.25],
        vec![0.05, 0.1, 0.15, 0.3, 0.4],
        vec![0.01, 0.04, 0.2, 0.25, 0.5],
    ];
    println!("{:>28}  {:>14}  {:>14}  {:>10}", "weights", "ascent", "oracle", "gap");
    for w in &spaces {
        let sp = FiniteProbSpace::new(w.clone()).unwrap();
        let rep = cp_of_space(&sp, &Partition::trivial(sp.atoms()), p, &opts).unwrap();
        let oracle = two_value_oracle(&sp, p).unwrap();
        println!(
            "{:>28}  {:>14.10}  {:>14.10}  {:>10.2e}",
            format!("{w:?}"),
            rep.value,
            oracle.value,
            (rep.value - oracle.value).abs(),
        );
    }

    // a partition decomposes the norm into per-block constants
    let sp = FiniteProbSpace::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let part = Partition::new(vec![vec![0, 3], vec![1, 2]], 4).unwrap();
    let direct = cp_of_space(&sp, &part, p, &opts).unwrap().value;
    let blockwise = cp_of_space_blockwise(&sp, &part, p, &opts).unwrap();
    println!("\nblock decomposition on weights [0.1, 0.2, 0.3, 0.4], blocks {{0,3}} {{1,2}}:");
    println!("  direct     {direct:.12}");
    println!("  blockwise  {blockwise:.12}");

    // concentrating an extremal pair on a small block drives the
    // conditional constant up to C_p even though the unconditional constant
    // stays near 1
    let tau = 0.01;
    let alpha_p = max_cp(p).argmax_alpha.unwrap();
    let sp = FiniteProbSpace::new(vec![tau * (1.0 - alpha_p), tau * alpha_p, 1.0 - tau]).unwrap();
    let pair = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
    let conditional = cp_of_space(&sp, &pair, p, &opts).unwrap().value;
    let unconditional = cp_of_space(&sp, &Partition::trivial(3), p, &opts).unwrap().value;
    println!("\nthree-point space with a mass-{tau} extremal pair:");
    println!("  c_p with the pair block   {conditional:.10}  (= C_3)");
    println!("  c_p with the trivial one  {unconditional:.10}  (near 1)");
    println!("  conditioning can be strictly worse than plain centering");

    // p = 1 and p = infinity are evaluated exactly by extreme-point
    // enumeration, and agree by duality
    let sp = FiniteProbSpace::new(vec![0.2, 0.3, 0.5]).unwrap();
    let one = cp_of_space(&sp, &Partition::trivial(3), Exponent::Finite(1.0), &opts)
        .unwrap()
        .value;
    let inf = cp_of_space(&sp, &Partition::trivial(3), Exponent::Infinite, &opts)
        .unwrap()
        .value;
    println!("\nendpoint exponents on weights [0.2, 0.3, 0.5]:");
    println!("  p = 1:   {one:.12}");
    println!("  p = inf: {inf:.12}");
}
