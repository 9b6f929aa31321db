//! The reduced trace K[X; θ, δ] → F[Z] and its basic properties.

use orecodes::context::standard;
use orecodes::trd::{trd, trd_closed, trd_matrix};
use orecodes::{OrePoly, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ctx in [standard::ctx_a(), standard::ctx_b()] {
        let f = OrePoly::random_of_degree(&ctx, 5, true, &mut rng);
        let g = OrePoly::random_of_degree(&ctx, 3, false, &mut rng);
        let t = trd(&f);
        assert_eq!(t, trd_matrix(&f));
        assert_eq!(t, trd_closed(&f));
        assert_eq!(trd(&f.try_mul(&g)?), trd(&g.try_mul(&f)?));
        println!("[{:?}] f = {f}\n  T_rd(f) = {t}", ctx.kind());
    }
    Ok(())
}
