//! Decomposing zero-mean discrete distributions into two-point mixtures,
//! and the centering-ratio bound the decomposition certifies.
//!
//! ```bash
//! cargo run --example mixture_decomposition
//! ```

use centering_lab::constants::max_cp;
use centering_lab::exponent::Exponent;
use centering_lab::mixture::{decompose_zero_mean, verify_ratio_via_mixture, DiscreteDistribution};
use centering_lab::prob::{FiniteProbSpace, RandVar};

fn main() {
    // the worked three-atom example: two components, weights 1/2 each
    let d = DiscreteDistribution::new(vec![(-1.0, 0.625), (1.0, 0.25), (3.0, 0.125)]).unwrap();
    println!("decomposing atoms {:?} (mean {})\n", d.atoms(), d.mean());
    let m = decompose_zero_mean(&d).unwrap();
    for (i, (w, c)) in m.components().iter().enumerate() {
        println!(
            "  component {i}: weight {w:.6}  on {{{:.4}, {:.4}}} with masses ({:.4}, {:.4})  mean {:.2e}",
            c.value1().re,
            c.value2().re,
            c.mass1(),
            c.mass2(),
            c.mean().re,
        );
    }
    println!("\n  reconstructed marginal: {:?}", m.marginal());

    // a bigger zero-mean distribution
    let values = [-3.5, -2.0, -0.75, 0.5, 1.25, 2.5, 4.0];
    let masses = [0.08, 0.12, 0.23, 0.22, 0.15, 0.12, 0.08];
    let mean: f64 = values.iter().zip(&masses).map(|(v, m)| v * m).sum();
    let atoms: Vec<(f64, f64)> = values.iter().zip(&masses).map(|(&v, &m)| (v - mean, m)).collect();
    let d = DiscreteDistribution::new(atoms).unwrap();
    let m = decompose_zero_mean(&d).unwrap();
    println!(
        "\n7-atom distribution decomposes into {} components (at most {}):",
        m.components().len(),
        d.atoms().len() - 1
    );
    for (w, c) in m.components() {
        println!(
            "  weight {w:.5}  pair ({:+.4}, {:+.4})  smaller mass {:.5}",
            c.value1().re,
            c.value2().re,
            c.minor_mass(),
        );
    }

    // the bound: the centering ratio of any real variable is below the
    // largest two-point constant among its components
    let p = Exponent::Finite(3.0);
    let sp = FiniteProbSpace::new(masses.to_vec()).unwrap();
    let xi = RandVar::from_real(&values);
    let out = verify_ratio_via_mixture(&xi, &sp, p).unwrap();
    println!("\ncentering ratio at p = 3:   {:.10}", out.ratio);
    println!("component bound max C_p(a): {:.10}", out.component_max);
    println!("global constant C_3:        {:.10}", max_cp(p).value);
    assert!(out.ratio <= out.component_max + 1e-9);
    assert!(out.component_max <= max_cp(p).value + 1e-9);
}
