//! Linearized Reed–Solomon codes and their minimum sum-rank distance.

use orecodes::codes::{lrs_basis, min_distance, sum_rank_weight};
use orecodes::context::standard;
use orecodes::Result;

fn main() -> Result<()> {
    let ctx = standard::ctx_a();
    let g = ctx.basis()[1].clone();
    let cs = [ctx.one(), &ctx.one() + &g];
    let vs = [ctx.full_space(), ctx.span(&[g.clone()])];
    for k in 1..=3 {
        let code = lrs_basis(&ctx, k, &cs, &vs)?;
        let d = min_distance(&code)?;
        println!("LRS k = {k}: n = {}, d = {d}, MSRD = {}", code.length(), k + d == code.length() + 1);
        let w = code.codeword(&vec![ctx.one(); k])?;
        println!("  weight of the all-ones message: {}", sum_rank_weight(&w));
    }
    Ok(())
}
