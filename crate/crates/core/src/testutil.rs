use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::context::Ctx;
use crate::fields::{gf, rat, Elem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// a + b·g in a finite-field context.
pub fn k2(c: &Ctx, a: i64, b: i64) -> Elem {
    gf(c.zero().as_gf().unwrap().field(), &[a, b])
}

/// num/den in t for a differential context.
pub fn rt(c: &Ctx, num: &[i64], den: &[i64]) -> Elem {
    rat(c.p(), num, den)
}

pub fn t(c: &Ctx) -> Elem {
    rt(c, &[0, 1], &[1])
}
