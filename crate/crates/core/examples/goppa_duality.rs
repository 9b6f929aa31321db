//! Linearized Goppa codes as duals of linearized Reed–Solomon codes.

use orecodes::codes::{dual_code, lg_basis, lrs_basis, psi_setup};
use orecodes::context::standard;
use orecodes::dual::{c_dual, orthogonal_subspace};
use orecodes::linalg::Subspace;
use orecodes::suites::check_duality;
use orecodes::Result;

fn main() -> Result<()> {
    for ctx in [standard::ctx_a(), standard::ctx_b()] {
        let g = ctx.basis()[1].clone();
        let cs = vec![ctx.one(), g.clone()];
        let cs = match ctx.kind() {
            orecodes::Kind::Frobenius => vec![ctx.one(), &ctx.one() + &g],
            orecodes::Kind::Differential => cs,
        };
        let vs = vec![ctx.full_space(), ctx.span(&[g.clone()])];
        let n: usize = vs.iter().map(Subspace::dim).sum();
        let k = 2;
        let lrs = lrs_basis(&ctx, k, &cs, &vs)?;
        let dual_cs = cs.iter().map(|c| c_dual(&ctx, c)).collect::<Result<Vec<_>>>()?;
        let perp: Vec<_> = vs.iter().map(|v| orthogonal_subspace(&ctx, v)).collect();
        let lg = lg_basis(&ctx, n - k, &dual_cs, &perp)?;
        check_duality(&lrs, &lg)?;
        assert!(dual_code(&lrs)?.same_code(&lg));
        println!("[{:?}] LRS(k = {k})^⊥ = LG(k = {}) on n = {n}", ctx.kind(), n - k);

        // Ψ carries LRS codes on V onto LG codes on the matching quotient.
        let vs = [ctx.zero_space(), ctx.span(&[g.clone()])];
        let psi = psi_setup(&ctx, 1, &cs, &vs)?;
        println!("  Ψ target quotients have dims {:?}", psi.w().iter().map(Subspace::dim).collect::<Vec<_>>());
    }
    Ok(())
}
