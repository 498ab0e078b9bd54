//! How a single correction step turns into a seed: scalar fits, the trust
//! interval and the diagonal coefficients under each bound choice.
//!
//! ```text
//! cargo run --example seed_scaling
//! ```

use structured_lbfgs::scaling::{
    bb_scalars, build_diagonal_seed, cautious_bounds, restrict_interval, trust_interval,
    BoundChoice, CautiousParams, SeedFormula,
};

fn main() {
    // a step and the part of the gradient change the regularizer does not explain
    let s = [1.0, -0.5, 0.25, 0.0];
    let z = [3.0, -0.4, -0.05, 0.7];
    let prev = [1.0; 4];

    let bb = bb_scalars(&s, &z).expect("non-zero step");
    println!("z's = {:.4}", bb.rho);
    println!(
        "tau_s = {:.4}  tau_g = {:.4}  tau_z = {:?}",
        bb.tau_s, bb.tau_g, bb.tau_z
    );

    let bounds = cautious_bounds(0.3, &CautiousParams::default());
    let interval = trust_interval(&bb, bounds);
    println!("cautious bounds [{:.1e}, {:.1e}]", bounds.0, bounds.1);

    for choice in [BoundChoice::Full, BoundChoice::UpperZ, BoundChoice::BbBand] {
        let r = restrict_interval(&interval, choice, &bb);
        let ds = build_diagonal_seed(&s, &z, &r, SeedFormula::Ds, &prev).unwrap();
        let dg = build_diagonal_seed(&s, &z, &r, SeedFormula::Dg, &prev).unwrap();
        println!("\n{choice:?}: [{:.3e}, {:.3e}]", r.lower, r.upper);
        println!("  Ds = {}", fmt(&ds));
        println!("  Dg = {}", fmt(&dg));
    }
    println!(
        "\nthe last coordinate has s = 0 and keeps its previous value, projected into the interval"
    );
}

fn fmt(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    parts.join("  ")
}
