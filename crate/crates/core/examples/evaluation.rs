//! Evaluation maps ev(f, c), their kernels and annihilators of subspaces.

use orecodes::context::standard;
use orecodes::evalmap::{annihilator, ev, ev_kernel, multi_annihilator};
use orecodes::{OrePoly, Result};

fn main() -> Result<()> {
    let ctx = standard::ctx_a();
    let g = ctx.basis()[1].clone();
    let c = ctx.one();

    // ev(X − c, c) has rank s − 1 for unramified c.
    let xc = OrePoly::linear(&ctx, &c);
    println!("ev(X − 1, 1) = {:?}, kernel dim {}", ev(&xc, &c), ev_kernel(&xc, &c)?.dim());

    let v = ctx.span(&[g.clone()]);
    let ann = annihilator(&ctx, &c, &v)?;
    assert!(ev(&ann, &c).kernel().contains(&ctx.coords(&g)));
    println!("annihilator of ⟨g⟩ at 1: {ann}");

    let cs = [ctx.one(), &ctx.one() + &g];
    let vs = [v, ctx.full_space()];
    let m = multi_annihilator(&ctx, &cs, &vs)?;
    println!("multi-point annihilator: {m} (degree {})", m.degree());
    for (ci, vi) in cs.iter().zip(&vs) {
        assert_eq!(ev(&m, ci).kernel(), *vi);
    }
    Ok(())
}
