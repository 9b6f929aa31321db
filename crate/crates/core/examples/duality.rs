//! The anti-involution f ↦ f^⋆, dual points and orthogonal subspaces.

use orecodes::context::standard;
use orecodes::dual::{adjoint, c_dual, orthogonal_subspace, pairing_k, star};
use orecodes::evalmap::ev;
use orecodes::{OrePoly, Result};

fn main() -> Result<()> {
    for ctx in [standard::ctx_a(), standard::ctx_b()] {
        let g = ctx.basis()[1].clone();
        let f = OrePoly::new(&ctx, vec![g.clone(), ctx.one()]);
        println!("[{:?}] f = {f}, f^⋆ = {}", ctx.kind(), star(&f));

        let c = ctx.one();
        let cd = c_dual(&ctx, &c)?;
        let op = ev(&f, &c);
        println!("  dual point of 1: {cd}; adjoint of ev(f, 1): {:?}", adjoint(&op));

        let v = ctx.span(&[g.clone()]);
        let perp = orthogonal_subspace(&ctx, &v);
        for x in ctx.subspace_elems(&perp) {
            assert!(pairing_k(&ctx, &g, &x).is_zero());
        }
        println!("  ⟨g⟩^⊥ has dimension {}", perp.dim());
    }
    Ok(())
}
