//! Multiplication, Euclidean division and gcd/lclm in K[X; θ, δ].

use orecodes::context::standard;
use orecodes::{OrePoly, Result};

fn main() -> Result<()> {
    for ctx in [standard::ctx_a(), standard::ctx_b()] {
        let g = ctx.basis()[1].clone();
        let x = OrePoly::x(&ctx);
        let a = OrePoly::constant(&ctx, g.clone());
        // X·a = θ(a)·X + δ(a)
        println!("[{:?}] X·g = {}, g·X = {}", ctx.kind(), x.try_mul(&a)?, a.try_mul(&x)?);

        let f = OrePoly::new(&ctx, vec![g.clone(), ctx.one(), ctx.zero(), g.clone()]);
        let d = OrePoly::linear(&ctx, &ctx.one());
        let (q, r) = f.divrem_right(&d)?;
        assert_eq!(q.try_mul(&d)?.try_add(&r)?, f);
        println!("  f = q·(X − 1) + r with q = {q}, r = {r}");

        let z = OrePoly::z(&ctx);
        assert_eq!(z.try_mul(&a)?, a.try_mul(&z)?);
        println!("  Z = {z} commutes with g");
        println!("  rgcd(f, X − 1) = {}, lclm degree {}", f.rgcd(&d)?, f.lclm(&d)?.degree());
    }
    Ok(())
}
