//! Finite and rational function fields, and the two kinds of context built on them.

use orecodes::context::{make_differential_context, make_frobenius_context};
use orecodes::fields::{gf, rat, GfField};
use orecodes::Result;

fn main() -> Result<()> {
    let f9 = GfField::default_of_degree(3, 2)?;
    let g = gf(&f9, &[0, 1]);
    println!("F_9 = F_3[i]/({:?}), g^4 = {}, g^8 = {}", f9.modulus(), g.pow(4), g.pow(8));

    let t = rat(2, &[0, 1], &[1]);
    let u = t.try_div(&rat(2, &[1, 1], &[1]))?;
    println!("in F_2(t): t/(1+t) = {u}, its inverse {}", u.inv()?);

    // Frobenius: K = F_9, θ = x ↦ x^3, δ = 0. Z = X^2 and F = F_3.
    let a = make_frobenius_context(3, 1, 2, None)?;
    let z: Vec<String> = a.z_coeffs().iter().map(|c| c.to_string()).collect();
    println!("frobenius Z(X) coefficients: {z:?}");
    println!("θ(g) = {}, trace(g) = {}, norm(g) = {}", a.theta(&g), a.field_trace(&g), a.field_norm(&g));

    // Differential: K = F_2(t), δ = d/dt. Z = X^2 and F = F_2(t^2).
    let b = make_differential_context(2, &rat(2, &[1], &[1]))?;
    println!("differential δ(t^3) = {}, t^2 in F: {}", b.delta(&t.pow(3)), b.is_in_f(&t.pow(2)));
    println!("descriptor: {}", serde_json::to_string(&b.descriptor()).unwrap());
    Ok(())
}
