//! The star involution, c ↦ c^∨, the pairing τ(xy) and adjoints.

use crate::context::{Ctx, Kind};
use crate::error::{Error, Result};
use crate::evalmap::LinearOperator;
use crate::fields::Elem;
use crate::linalg::{Matrix, Subspace};
use crate::orepoly::{CentralPoly, LaurentOre, OreFraction, OrePoly};

/// Σ (-1)^i X^i a_i (θ = id); only meaningful for the differential kind.
pub fn star_poly(f: &OrePoly) -> Result<OrePoly> {
    let ctx = f.ctx();
    if ctx.kind() != Kind::Differential {
        return Err(Error::WrongKind("use star_laurent when θ ≠ id".into()));
    }
    let x = OrePoly::x(ctx);
    let mut acc = OrePoly::zero(ctx);
    let mut xi = OrePoly::one(ctx);
    for (i, a) in f.coeffs().iter().enumerate() {
        let term = &xi * &OrePoly::constant(ctx, a.clone());
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
        xi = &xi * &x;
    }
    Ok(acc)
}

/// Σ c_j Y^{v+j} ↦ Σ Y^{-(v+j)} c_j.
pub fn star_laurent(f: &LaurentOre) -> LaurentOre {
    let ctx = f.ctx();
    let top = f.top();
    let coeffs: Vec<Elem> = (0..f.coeffs().len())
        .rev()
        .map(|j| {
            let e = f.val() + j as i64;
            ctx.theta_pow(&f.coeffs()[j], -e)
        })
        .collect();
    LaurentOre::new(ctx, -top, coeffs).expect("frobenius kind")
}

/// f^⋆ as an Ore function in both kinds.
pub fn star(f: &OrePoly) -> OreFraction {
    match f.ctx().kind() {
        Kind::Differential => OreFraction::from_poly(star_poly(f).expect("differential")),
        Kind::Frobenius => star_laurent(&LaurentOre::from_ore(f).expect("frobenius")).to_fraction(),
    }
}

/// (num/den)^⋆ = den^⋆^{-1}·num^⋆ with Z^⋆ = -Z (θ = id) or Z^{-1} (θ ≠ id).
pub fn star_fraction(f: &OreFraction) -> OreFraction {
    let ctx = f.ctx();
    let den = f.den();
    match ctx.kind() {
        Kind::Differential => {
            let d = den.map_coeffs(|c| c.clone());
            let flipped: Vec<Elem> = d.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
            OreFraction::new(star_poly(f.num()).expect("differential"), CentralPoly::new(ctx, flipped)).expect("nonzero")
        }
        Kind::Frobenius => {
            let a = star(f.num());
            let d = den.deg().unwrap();
            let mut rev = den.coeffs().to_vec();
            rev.reverse();
            let num = &a.num().clone() * &CentralPoly::z(ctx).pow(d).to_ore();
            let den = a.den() * &CentralPoly::new(ctx, rev);
            OreFraction::new(num, den).expect("nonzero")
        }
    }
}

/// c^∨ = -c (θ = id) or 1/(c + a) - a.
pub fn c_dual(ctx: &Ctx, c: &Elem) -> Result<Elem> {
    ctx.check_unramified(c)?;
    Ok(match ctx.kind() {
        Kind::Differential => -c,
        Kind::Frobenius => &(c + ctx.a()).inv()? - ctx.a(),
    })
}

/// Gram matrix τ(b_i b_j) of the pairing on the fixed basis.
pub fn gram(ctx: &Ctx) -> &Matrix {
    ctx.gram()
}

/// The adjoint for ⟨x, y⟩ = τ(xy): G^{-1} Mᵀ G.
pub fn adjoint_matrix(ctx: &Ctx, m: &Matrix) -> Matrix {
    ctx.gram_inv().mul(&m.transpose()).and_then(|x| x.mul(ctx.gram())).expect("square")
}

pub fn adjoint(op: &LinearOperator) -> LinearOperator {
    LinearOperator::new(op.ctx(), adjoint_matrix(op.ctx(), op.matrix()))
}

/// ⟨x, y⟩ = τ(xy).
pub fn pairing_k(ctx: &Ctx, x: &Elem, y: &Elem) -> Elem {
    ctx.tau(&(x * y))
}

/// V^⊥ for the pairing τ(xy).
pub fn orthogonal_subspace(ctx: &Ctx, v: &Subspace) -> Subspace {
    let cols = v.basis_columns();
    let m = cols.transpose().mul(ctx.gram()).expect("shapes");
    let ker = if v.dim() == 0 { ctx.full_space().basis() } else { m.kernel() };
    Subspace::span(&ker, ctx.s(), &ctx.zero())
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::context::standard::*;
    use crate::evalmap::{ev, ev_fraction};
    use crate::taylor::sres;
    use crate::testutil::*;

    #[test]
    fn star_examples() {
        let b = ctx_b();
        let tx = OrePoly::monomial(&b, t(&b), 1);
        let st = star_poly(&tx).unwrap();
        assert_eq!(st, OrePoly::new(&b, vec![b.one(), t(&b)]));
        assert_eq!(star_poly(&st).unwrap(), tx);
        let a = ctx_a();
        let ix = LaurentOre::from_ore(&OrePoly::monomial(&a, k2(&a, 0, 1), 1)).unwrap();
        assert_eq!(star_laurent(&ix), LaurentOre::monomial(&a, k2(&a, 0, 2), -1).unwrap());
    }

    #[test]
    fn star_on_the_centre() {
        for (_, ctx) in all() {
            let z = OrePoly::z(&ctx);
            let want = match ctx.kind() {
                Kind::Differential => OreFraction::from_poly(-&z),
                Kind::Frobenius => OreFraction::inv_central(&CentralPoly::z(&ctx)).unwrap(),
            };
            assert_eq!(star(&z), want);
        }
    }

    #[test]
    fn star_is_an_anti_involution() {
        let mut r = rng(51);
        for (_, ctx) in all() {
            for _ in 0..20 {
                let f = OrePoly::random(&ctx, 5, &mut r);
                let g = OrePoly::random(&ctx, 5, &mut r);
                assert_eq!(star(&(&f * &g)), &star(&g) * &star(&f));
                assert_eq!(star(&(&f + &g)), &star(&f) + &star(&g));
                assert_eq!(star_fraction(&star(&f)), OreFraction::from_poly(f.clone()));
                let den = CentralPoly::new(&ctx, vec![ctx.random_nonzero_f(&mut r), ctx.random_f(&mut r), ctx.one()]);
                let h = OreFraction::new(f.clone(), den).unwrap();
                assert_eq!(star_fraction(&star_fraction(&h)), h);
            }
            if ctx.kind() == Kind::Frobenius {
                let mut r2 = rng(52);
                for _ in 0..10 {
                    let v = r2.gen_range(-4..4);
                    let l = LaurentOre::new(&ctx, v, (0..3).map(|_| ctx.random_k(&mut r2)).collect()).unwrap();
                    assert_eq!(star_laurent(&star_laurent(&l)), l);
                }
            }
        }
    }

    #[test]
    fn c_dual_examples() {
        let b = ctx_b();
        assert_eq!(c_dual(&b, &b.one()).unwrap(), b.one());
        let a = ctx_a();
        let cd = c_dual(&a, &k2(&a, 1, 1)).unwrap();
        assert_eq!(cd, k2(&a, 2, 1));
        assert_eq!(a.upsilon(&cd), a.int(2));
        let c = ctx_c();
        assert_eq!(c_dual(&c, &t(&c)).unwrap(), rt(&c, &[0, 2], &[1]));
        assert!(c_dual(&a, &a.zero()).is_err());
        let mut r = rng(53);
        for (_, ctx) in all() {
            for _ in 0..20 {
                let c = ctx.random_k(&mut r);
                if ctx.is_ramified(&c) {
                    continue;
                }
                let u = ctx.upsilon(&c);
                let ud = ctx.upsilon(&c_dual(&ctx, &c).unwrap());
                match ctx.kind() {
                    Kind::Differential => assert_eq!(ud, -&u),
                    Kind::Frobenius => assert_eq!(ud, u.inv().unwrap()),
                }
            }
        }
    }

    #[test]
    fn gram_and_orthogonals() {
        let b = ctx_b();
        let (o, z) = (b.one(), b.zero());
        assert_eq!(gram(&b), &Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]], 2, &z));
        let a = ctx_a();
        assert_eq!(gram(&a), &Matrix::from_rows(vec![vec![a.int(2), a.zero()], vec![a.zero(), a.one()]], 2, &a.zero()));
        assert_eq!(adjoint(&LinearOperator::identity(&a)), LinearOperator::identity(&a));
        assert_eq!(orthogonal_subspace(&b, &b.span(&[t(&b)])), b.span(&[t(&b)]));
        assert_eq!(orthogonal_subspace(&a, &a.span(&[a.one()])), a.span(&[k2(&a, 0, 1)]));
        assert_eq!(orthogonal_subspace(&a, &a.full_space()), a.zero_space());
        let mut r = rng(54);
        for (_, ctx) in all() {
            for _ in 0..10 {
                let k = r.gen_range(0..=ctx.s());
                let v = ctx.span(&(0..k).map(|_| ctx.random_k(&mut r)).collect::<Vec<_>>());
                let w = orthogonal_subspace(&ctx, &v);
                assert_eq!(v.dim() + w.dim(), ctx.s());
                assert_eq!(orthogonal_subspace(&ctx, &w), v);
                let x = ctx.random_k(&mut r);
                assert_eq!(adjoint(&LinearOperator::from_fn(&ctx, |y| &x * y)), LinearOperator::from_fn(&ctx, |y| &x * y));
            }
        }
    }

    #[test]
    fn theta_and_delta_adjoints() {
        for (_, ctx) in all() {
            let th = LinearOperator::new(&ctx, ctx.theta_matrix());
            let th_inv = LinearOperator::from_fn(&ctx, |x| ctx.theta_inv(x));
            assert_eq!(adjoint(&th), th_inv);
            let de = LinearOperator::new(&ctx, ctx.delta_matrix());
            let want = match ctx.kind() {
                Kind::Differential => de.scale(&ctx.int(-1)),
                Kind::Frobenius => LinearOperator::from_fn(&ctx, |x| {
                    let y = ctx.a() * x;
                    &ctx.theta_inv(&y) - &y
                }),
            };
            assert_eq!(adjoint(&de), want);
        }
    }

    #[test]
    fn evaluation_commutes_with_star() {
        let mut r = rng(55);
        for (_, ctx) in all() {
            for _ in 0..15 {
                let c = ctx.random_k(&mut r);
                if ctx.is_ramified(&c) {
                    continue;
                }
                let f = OrePoly::random(&ctx, 5, &mut r);
                let lhs = adjoint(&ev(&f, &c));
                let rhs = ev_fraction(&star(&f), &c_dual(&ctx, &c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn residues_commute_with_star_at_simple_poles() {
        let mut r = rng(56);
        for (_, ctx) in all() {
            for _ in 0..8 {
                let zbar = ctx.random_nonzero_f(&mut r);
                let w = ctx.random_nonzero_f(&mut r);
                let mut den = CentralPoly::linear(&ctx, &zbar);
                if w != zbar {
                    den = &den * &CentralPoly::linear(&ctx, &w).pow(2);
                }
                let f = OreFraction::new(OrePoly::random(&ctx, 6, &mut r), den).unwrap();
                let (z, lhs, rhs) = match ctx.kind() {
                    Kind::Differential => {
                        let z = -&zbar;
                        let s = sres(&f, &zbar).unwrap();
                        let rhs = -&star_poly(&s).unwrap().rem_right(&crate::taylor::n_at(&ctx, &z)).unwrap();
                        (z.clone(), sres(&star_fraction(&f), &z).unwrap(), rhs)
                    }
                    Kind::Frobenius => {
                        let z = zbar.inv().unwrap();
                        let s = star(&sres(&f, &zbar).unwrap());
                        let k = s.den().deg().unwrap() as i64 + 2;
                        let scale = -&z.powi(-k).unwrap();
                        let rhs = s.num().rem_right(&crate::taylor::n_at(&ctx, &z)).unwrap().scale_left(&scale);
                        (z.clone(), sres(&star_fraction(&f), &z).unwrap(), rhs)
                    }
                };
                assert_eq!(lhs, rhs, "z = {z}");
            }
        }
    }
}
