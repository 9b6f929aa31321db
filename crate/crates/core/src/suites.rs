//! The verification suites behind `selftest` and the acceptance tests.
//!
//! Each suite returns a [`SuiteReport`]; a failed check is reported, not
//! panicked on, so one broken suite does not hide the others.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{
    dual_code, lg_basis, lrs_basis, lrs_encode, min_distance, pairing, psi_setup, standard_grid, sum_rank_weight, CodeBasis,
    GridPoint, HomTuple,
};
use crate::context::standard::{all, ctx_a, ctx_b};
use crate::context::{Ctx, Kind};
use crate::dual::{adjoint, c_dual, orthogonal_subspace, star, star_fraction, star_poly};
use crate::error::{Error, Result};
use crate::evalmap::{central_product, complement_cofactor, ev, ev_fraction, multi_annihilator};
use crate::fields::Elem;
use crate::linalg::{Matrix, Subspace};
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};
use crate::taylor::{build_admissible, n_at, residue_degree_bound, residue_sum, sres, sres_simple, ts_poly};
use crate::trd::{comm_residue, sigma0, trd, trd_closed, trd_fraction, trd_matrix, CentralFraction};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub const SUITE_NAMES: [&str; 9] = [
    "ore ring laws and division",
    "evaluation kernel and surjectivity",
    "upsilon closed form",
    "reduced trace",
    "taylor machinery",
    "residues and reduced trace",
    "duality commutations",
    "codes are MSRD",
    "duality theorem",
];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Error::Verification(format!($($fmt)+)));
        }
    };
}

/// Runs suite `id` (1..=9) with randomness derived from `seed`.
pub fn run_suite(id: u8, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1000).wrapping_add(id as u64));
    let out = match id {
        1 => ring_laws(&mut rng),
        2 => evaluation_kernel(&mut rng),
        3 => upsilon_cross_check(&mut rng),
        4 => reduced_trace(&mut rng),
        5 => taylor_machinery(&mut rng),
        6 => residues(&mut rng),
        7 => duality_commutations(&mut rng),
        8 => codes_msrd(&mut rng),
        9 => duality_theorem(),
        _ => Err(Error::InvalidParameter(format!("no suite {id}"))),
    };
    let name = SUITE_NAMES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    let (passed, detail) = match out {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    SuiteReport { id, name, passed, detail, millis: start.elapsed().as_millis() }
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    (1..=9).map(|i| run_suite(i, seed)).collect()
}

fn unramified(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let c = ctx.random_k(rng);
        if !ctx.is_ramified(&c) {
            return c;
        }
    }
}

fn ring_laws(rng: &mut ChaCha8Rng) -> Result<String> {
    let mut checks = 0;
    for (name, ctx) in all() {
        for _ in 0..500 {
            let f = OrePoly::random(&ctx, 3, rng);
            let g = OrePoly::random(&ctx, 3, rng);
            let h = OrePoly::random(&ctx, 3, rng);
            ensure!(&(&f * &g) * &h == &f * &(&g * &h), "{name}: (fg)h ≠ f(gh)");
            ensure!(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), "{name}: left distributivity");
            ensure!(&(&f + &g) * &h == &(&f * &h) + &(&g * &h), "{name}: right distributivity");
            checks += 3;
        }
        for _ in 0..500 {
            let d = rng.gen_range(1..4);
            let g = OrePoly::random_of_degree(&ctx, d, false, rng);
            let q = OrePoly::random(&ctx, 3, rng);
            let r = OrePoly::random(&ctx, d - 1, rng);
            let (q1, r1) = (&(&q * &g) + &r).divrem_right(&g)?;
            ensure!(q1 == q && r1 == r, "{name}: right division is not unique");
            let (q2, r2) = (&(&g * &q) + &r).divrem_left(&g)?;
            ensure!(q2 == q && r2 == r, "{name}: left division is not unique");
            checks += 2;
        }
    }
    Ok(format!("{checks} identities"))
}

fn evaluation_kernel(rng: &mut ChaCha8Rng) -> Result<String> {
    for (name, ctx) in all() {
        let s = ctx.s();
        for _ in 0..50 {
            let c = unramified(&ctx, rng);
            let n = n_at(&ctx, &ctx.upsilon(&c));
            ensure!(ev(&n, &c).is_zero(), "{name}: ev(Z − υ(c), c) ≠ 0");
            let f = OrePoly::random(&ctx, s + 2, rng);
            ensure!(ev(&(&f * &n), &c).is_zero(), "{name}: the ideal generated by Z − υ(c) is not killed");
            let r = f.rem_right(&n)?;
            ensure!(ev(&f, &c).is_zero() == r.is_zero(), "{name}: ker ev_c ≠ A⁺(Z − υ(c))");
            ensure!(ev(&f, &c) == ev(&r, &c), "{name}: ev_c does not factor through A⁺/N");
        }
        let c = unramified(&ctx, rng);
        let mut rows = Vec::new();
        for j in 0..s {
            for b in ctx.basis() {
                rows.push(ev(&OrePoly::monomial(&ctx, b.clone(), j), &c).matrix().entries().to_vec());
            }
        }
        let rank = Matrix::from_rows(rows, s * s, &ctx.zero()).rank();
        ensure!(rank == s * s, "{name}: ev_c has rank {rank} < s²");
    }
    Ok("4 contexts × 50 points, rank s² reached".into())
}

fn upsilon_cross_check(rng: &mut ChaCha8Rng) -> Result<String> {
    for (name, ctx) in all() {
        for _ in 0..100 {
            let c = ctx.random_k(rng);
            let u = ctx.upsilon(&c);
            let rem = OrePoly::z(&ctx).rem_right(&OrePoly::linear(&ctx, &c))?;
            ensure!(rem == OrePoly::constant(&ctx, u.clone()), "{name}: υ({c}) ≠ Z mod (X − c)");
            ensure!(ctx.is_in_f(&u), "{name}: υ({c}) ∉ F");
        }
    }
    Ok("400 points".into())
}

fn reduced_trace(rng: &mut ChaCha8Rng) -> Result<String> {
    for (name, ctx) in all() {
        let deg = 2 * ctx.s() + 1;
        for _ in 0..300 {
            let f = OrePoly::random(&ctx, deg, rng);
            ensure!(trd_matrix(&f) == trd_closed(&f), "{name}: matrix and closed reduced traces differ on {f}");
            let g = OrePoly::random(&ctx, deg, rng);
            ensure!(trd(&(&f * &g)) == trd(&(&g * &f)), "{name}: T_rd(fg) ≠ T_rd(gf)");
        }
        for _ in 0..100 {
            let f = OrePoly::random(&ctx, deg, rng);
            let c = unramified(&ctx, rng);
            ensure!(ev(&f, &c).trace() == trd(&f).eval(&ctx.upsilon(&c)), "{name}: Tr ev_c(f) ≠ T_rd(f)(υ(c))");
        }
    }
    let b = ctx_b();
    let f = OrePoly::monomial(&b, crate::fields::rat(2, &[0, 1], &[1]), 1);
    let lhs = ev(&f, &b.one()).trace();
    let rhs = trd(&f).eval(&b.upsilon(&b.one()));
    ensure!(lhs == b.one() && rhs == b.one(), "worked instance: {lhs} vs {rhs}");
    Ok("worked instance: both sides 1".into())
}

fn points(ctx: &Ctx, rng: &mut ChaCha8Rng, n: usize) -> Vec<Elem> {
    (0..n)
        .map(|_| match ctx.kind() {
            Kind::Frobenius => ctx.random_nonzero_f(rng),
            Kind::Differential => ctx.random_f(rng),
        })
        .collect()
}

fn taylor_machinery(rng: &mut ChaCha8Rng) -> Result<String> {
    let mut isos = 0;
    for (name, ctx) in all() {
        let zs = points(&ctx, rng, 20);
        for z in &zs {
            for m in 1..=6 {
                build_admissible(&ctx, z, m)?.verify().map_err(|e| Error::Verification(format!("{name}: {e}")))?;
                isos += 1;
            }
        }
        for i in 0..100 {
            let z = &zs[i % zs.len()];
            let iso = build_admissible(&ctx, z, 1 + i % 3)?;
            let f = OrePoly::random(&ctx, 3 * ctx.s(), rng);
            let back = ts_poly(&f, &iso).reconstruct(&iso)?;
            ensure!(back == f.rem_right(iso.modulus())?, "{name}: TS round trip failed");
        }
    }
    let mut n_simple = 0;
    for ctx in [ctx_a(), ctx_b()] {
        let grid = standard_grid(&ctx);
        for i in 0..25 {
            let gp = &grid[(i * 7) % grid.len()];
            let (cs, vs) = (&gp.points, &gp.subspaces);
            let d = multi_annihilator(&ctx, cs, vs)?;
            let dp = complement_cofactor(&d, cs)?;
            let g = OrePoly::random(&ctx, 3, rng);
            let f = OreFraction::new(&g * &dp, central_product(&ctx, cs))?;
            for (j, c) in cs.iter().enumerate() {
                ensure!(sres_simple(&g, cs, vs, j)? == sres(&f, &ctx.upsilon(c))?, "sres_simple ≠ sres");
            }
            n_simple += 1;
        }
    }
    Ok(format!("{isos} admissible isomorphisms (M ≤ 6), {n_simple} simple-pole instances"))
}

fn split_fraction(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (OrePoly, CentralPoly, Vec<Elem>) {
    let zs = points(ctx, rng, 2);
    let mut den = CentralPoly::linear(ctx, &zs[0]).pow(rng.gen_range(1..3));
    if zs[1] != zs[0] {
        den = &den * &CentralPoly::linear(ctx, &zs[1]);
    }
    (OrePoly::random(ctx, 2 * ctx.s() + 2, rng), den, zs)
}

fn residues(rng: &mut ChaCha8Rng) -> Result<String> {
    for (name, ctx) in all() {
        for _ in 0..50 {
            let (num, den, zs) = split_fraction(&ctx, rng);
            let f = OreFraction::new(num.clone(), den.clone())?;
            let g = trd_fraction(&f);
            for z in &zs {
                let s = sres(&f, z)?;
                ensure!(trd(&s).eval(z) == comm_residue(&g, z)?, "{name}: T_rd(sres) ≠ res T_rd at {z}");
                if ctx.kind() == Kind::Differential {
                    let sf = CentralFraction::new(sigma0(&num)?, den.clone())?;
                    ensure!(sigma0(&s)?.coeff(0) == comm_residue(&sf, z)?, "{name}: σ₀ refinement fails at {z}");
                }
            }
        }
        let mut double = 0;
        for _ in 0..50 {
            let zs = points(&ctx, rng, 3);
            let mut den = CentralPoly::linear(&ctx, &zs[0]).pow(2);
            double += 1;
            for z in &zs[1..] {
                if !den.eval(z).is_zero() {
                    den = &den * &CentralPoly::linear(&ctx, z);
                }
            }
            let bound = residue_degree_bound(&ctx, &den);
            let num = OrePoly::random(&ctx, bound.max(0) as usize, rng);
            if num.is_zero() || num.degree() > bound {
                continue;
            }
            let rep = residue_sum(&OreFraction::new(num, den)?)?;
            ensure!(rep.asserted && rep.sum.is_zero(), "{name}: residue sum {} ≠ 0", rep.sum);
        }
        ensure!(double > 0, "no order-2 poles were drawn");
    }
    Ok("T_rd of sres, σ₀ and residue sums on 4 contexts".into())
}

fn duality_commutations(rng: &mut ChaCha8Rng) -> Result<String> {
    for (name, ctx) in all() {
        for _ in 0..50 {
            let c = unramified(&ctx, rng);
            let f = OrePoly::random(&ctx, 5, rng);
            let lhs = adjoint(&ev(&f, &c));
            let rhs = ev_fraction(&star(&f), &c_dual(&ctx, &c)?)?;
            ensure!(lhs == rhs, "{name}: ev_c(f)^⋆ ≠ ev_{{c∨}}(f^⋆)");
        }
        for _ in 0..50 {
            let zbar = ctx.random_nonzero_f(rng);
            let w = ctx.random_nonzero_f(rng);
            let mut den = CentralPoly::linear(&ctx, &zbar);
            if w != zbar {
                den = &den * &CentralPoly::linear(&ctx, &w).pow(2);
            }
            let f = OreFraction::new(OrePoly::random(&ctx, 6, rng), den)?;
            let (lhs, rhs) = match ctx.kind() {
                Kind::Differential => {
                    let z = -&zbar;
                    let s = sres(&f, &zbar)?;
                    (sres(&star_fraction(&f), &z)?, -&star_poly(&s)?.rem_right(&n_at(&ctx, &z))?)
                }
                Kind::Frobenius => {
                    let z = zbar.inv()?;
                    let s = star(&sres(&f, &zbar)?);
                    let k = s.den().deg().unwrap_or(0) as i64 + 2;
                    let rhs = s.num().rem_right(&n_at(&ctx, &z))?.scale_left(&-&z.powi(-k)?);
                    (sres(&star_fraction(&f), &z)?, rhs)
                }
            };
            ensure!(lhs == rhs, "{name}: residue adjunction fails at z̄ = {zbar}");
        }
    }
    Ok("evaluation and residue adjunctions on 4 contexts".into())
}

fn random_codeword(code: &CodeBasis, rng: &mut ChaCha8Rng) -> Result<HomTuple> {
    let lam: Vec<Elem> = (0..code.k()).map(|_| code.ctx().random_k(rng)).collect();
    code.codeword(&lam)
}

/// Subspaces U_i ⊆ V_i with Σ dim U_i = r, taken from the echelon bases.
fn sub_pick(ctx: &Ctx, vs: &[Subspace], mut r: usize) -> Vec<Subspace> {
    vs.iter()
        .map(|v| {
            let take = r.min(v.dim());
            r -= take;
            ctx.span(&ctx.subspace_elems(v)[..take])
        })
        .collect()
}

/// An LRS codeword of weight n − k + 1: evaluation of the annihilator of k − 1 dimensions.
fn lrs_witness(ctx: &Ctx, k: usize, gp: &GridPoint) -> Result<HomTuple> {
    let us = sub_pick(ctx, &gp.subspaces, k - 1);
    lrs_encode(&multi_annihilator(ctx, &gp.points, &us)?, &gp.points, &gp.subspaces)
}

fn codes_msrd(rng: &mut ChaCha8Rng) -> Result<String> {
    let mut instances = 0;
    for ctx in [ctx_a(), ctx_b()] {
        let exhaustive = ctx.kind() == Kind::Frobenius;
        for gp in standard_grid(&ctx) {
            let (cs, vs) = (&gp.points, &gp.subspaces);
            let n: usize = vs.iter().map(Subspace::dim).sum();
            for k in 1..=n {
                let code = lrs_basis(&ctx, k, cs, vs)?;
                check_msrd(&code, exhaustive, rng, Some(lrs_witness(&ctx, k, &gp)?))?;
                instances += 1;
            }
            let n_lg: usize = vs.iter().map(|v| ctx.s() - v.dim()).sum();
            for k in 1..n_lg {
                let code = lg_basis(&ctx, k, cs, vs)?;
                let psi = psi_setup(&ctx, k, cs, vs)?;
                let lrs_w = lrs_basis(&ctx, k, cs, psi.w())?;
                for _ in 0..100 {
                    let x = random_codeword(&lrs_w, rng)?;
                    let y = psi.apply(&x)?;
                    ensure!(sum_rank_weight(&x) == sum_rank_weight(&y), "Ψ changed a weight");
                    ensure!(code.contains(&y), "Ψ(LRS(W)) ⊄ LG");
                }
                let w_gp = GridPoint { points: cs.clone(), subspaces: psi.w().to_vec() };
                let witness = psi.apply(&lrs_witness(&ctx, k, &w_gp)?)?;
                check_msrd(&code, exhaustive, rng, Some(witness))?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} LRS/LG instances"))
}

/// d = n − k + 1: exhaustively when K is finite, otherwise from a weight-(n−k+1)
/// witness plus 100 sampled codewords that all respect the lower bound.
fn check_msrd(code: &CodeBasis, exhaustive: bool, rng: &mut ChaCha8Rng, witness: Option<HomTuple>) -> Result<()> {
    let (n, k) = (code.length(), code.k());
    let target = n - k + 1;
    let d = if exhaustive {
        min_distance(code)?
    } else {
        let w = witness.ok_or_else(|| Error::Verification("no witness".into()))?;
        ensure!(code.contains(&w) && !w.is_zero(), "witness is not a nonzero codeword");
        let wd = sum_rank_weight(&w);
        for _ in 0..100 {
            let x = random_codeword(code, rng)?;
            ensure!(x.is_zero() || sum_rank_weight(&x) >= target, "sampled weight below n − k + 1");
        }
        wd
    };
    ensure!(k + d <= n + 1, "Singleton bound violated: k = {k}, d = {d}, n = {n}");
    ensure!(d == target, "d = {d}, expected n − k + 1 = {target}");
    Ok(())
}

fn duality_theorem() -> Result<String> {
    let mut instances = 0;
    for ctx in [ctx_a(), ctx_b()] {
        for gp in standard_grid(&ctx) {
            let (cs, vs) = (&gp.points, &gp.subspaces);
            let n: usize = vs.iter().map(Subspace::dim).sum();
            let dual_cs = cs.iter().map(|c| c_dual(&ctx, c)).collect::<Result<Vec<_>>>()?;
            let perp: Vec<Subspace> = vs.iter().map(|v| orthogonal_subspace(&ctx, v)).collect();
            for k in 1..=n {
                let lrs = lrs_basis(&ctx, k, cs, vs)?;
                let lg = lg_basis(&ctx, n - k, &dual_cs, &perp)?;
                check_duality(&lrs, &lg)?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} instances"))
}

/// LRS^⊥ = LG: every pairing vanishes, dimensions add up and the computed
/// orthogonal coincides with LG.
pub fn check_duality(lrs: &CodeBasis, lg: &CodeBasis) -> Result<()> {
    let ctx = lrs.ctx();
    for g in lg.generators() {
        for h in lrs.generators() {
            for b in ctx.basis() {
                let v = pairing(g, &h.scale_k(b))?;
                ensure!(v.is_zero(), "⟨γ, ρ⟩ = {v} ≠ 0");
            }
        }
    }
    ensure!(lrs.k() + lg.k() == lrs.length(), "dim LRS + dim LG = {} ≠ n = {}", lrs.k() + lg.k(), lrs.length());
    let d = dual_code(lrs)?;
    ensure!(lg.generators().iter().all(|g| d.contains(g)), "LG ⊄ LRS^⊥");
    ensure!(d.generators().iter().all(|g| lg.contains(g)), "LRS^⊥ ⊄ LG");
    Ok(())
}
