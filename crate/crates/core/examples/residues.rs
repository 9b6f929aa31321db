//! Skew residues and the residue theorem for Ore fractions with split denominators.

use orecodes::context::standard;
use orecodes::fields::rat;
use orecodes::taylor::{residue_sum, sres};
use orecodes::{CentralPoly, OreFraction, OrePoly, Result};

fn main() -> Result<()> {
    let ctx = standard::ctx_b();
    let t = rat(2, &[0, 1], &[1]);
    let w = &t.pow(2) + &ctx.one();
    // f = t·X / ((Z + 1)(Z + t² + 1))
    let den = CentralPoly::linear(&ctx, &ctx.one()).try_mul(&CentralPoly::linear(&ctx, &w))?;
    let f = OreFraction::new(OrePoly::monomial(&ctx, t, 1), den)?;
    for z in [ctx.one(), w] {
        println!("sres at Z = {z}: {}", sres(&f, &z)?);
    }
    let rep = residue_sum(&f)?;
    let vals: Vec<String> = rep.values.iter().map(|v| v.to_string()).collect();
    println!("T_rd residues {vals:?}, sum {} (asserted {})", rep.sum, rep.asserted);
    assert!(rep.sum.is_zero());
    Ok(())
}
