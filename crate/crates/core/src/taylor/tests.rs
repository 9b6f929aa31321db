use rand::Rng;

use super::*;
use crate::context::standard::*;
use crate::testutil::*;
use crate::trd::{sigma0, CentralFraction};

fn frac(num: OrePoly, den: CentralPoly) -> OreFraction {
    OreFraction::new(num, den).unwrap()
}

fn points(ctx: &Ctx) -> Vec<Elem> {
    let mut r = rng(41);
    let mut out = Vec::new();
    while out.len() < 4 {
        let z = ctx.random_f(&mut r);
        if ctx.kind() == Kind::Frobenius && z.is_zero() {
            continue;
        }
        out.push(z);
    }
    out
}

#[test]
fn admissible_examples() {
    let b = ctx_b();
    let tt = t(&b);
    let iso = build_admissible(&b, &b.zero(), 2).unwrap();
    let want = &OrePoly::x(&b) + &OrePoly::z(&b).scale_left(&tt);
    assert_eq!(iso.y(), &want);
    let iso = build_admissible(&b, &b.one(), 2).unwrap();
    let want = &OrePoly::x(&b) + &n_at(&b, &b.one()).scale_left(&tt);
    assert_eq!(iso.y(), &want);
    for (_, ctx) in all() {
        let z = points(&ctx)[0].clone();
        assert_eq!(build_admissible(&ctx, &z, 1).unwrap().y(), &OrePoly::x(&ctx));
    }
    assert_eq!(build_admissible(&ctx_a(), &ctx_a().zero(), 2).unwrap_err(), Error::ZeroPointFrobenius);
    assert_eq!(build_admissible(&b, &b.one(), 0).unwrap_err(), Error::TruncationTooSmall);
}

#[test]
fn admissible_isos_verify() {
    for (_, ctx) in all().into_iter().chain([("T", ctx_t())]) {
        for z in points(&ctx).iter().take(2) {
            for m in 1..=4 {
                build_admissible(&ctx, z, m).unwrap().verify().unwrap();
            }
        }
    }
}

#[test]
fn series_examples() {
    let b = ctx_b();
    let one = b.one();
    let n = CentralPoly::linear(&b, &one);
    let s = ts(&frac(n.to_ore(), CentralPoly::one(&b)), &one, 3).unwrap();
    assert_eq!(s.leading(), Some((1, OrePoly::one(&b))));
    assert!(s.coeffs()[2].is_zero());
    let s = ts(&OreFraction::from_poly(OrePoly::x(&b)), &one, 2).unwrap();
    assert_eq!(s.coeffs(), &[OrePoly::x(&b), OrePoly::constant(&b, t(&b))]);
    let s = ts(&OreFraction::inv_central(&n).unwrap(), &one, 2).unwrap();
    assert_eq!(s.val(), -1);
    assert_eq!(s.coeffs(), &[OrePoly::one(&b), OrePoly::zero(&b)]);
}

#[test]
fn order_and_principal_examples() {
    for (_, ctx) in all() {
        let z = points(&ctx)[1].clone();
        let n = CentralPoly::linear(&ctx, &z);
        let one = OrePoly::one(&ctx);
        assert_eq!(ord_and_principal(&frac(one.clone(), n.pow(2)), &z).unwrap(), (-2, one.clone()));
        assert_eq!(ord_and_principal(&OreFraction::from_poly(one.clone()), &z).unwrap(), (0, one.clone()));
        let xn = &OrePoly::x(&ctx) * &n.to_ore();
        assert_eq!(ord_and_principal(&OreFraction::from_poly(xn), &z).unwrap(), (1, OrePoly::x(&ctx)));
        assert_eq!(ord_and_principal(&OreFraction::zero(&ctx), &z).unwrap_err(), Error::ZeroFunction);
    }
}

/// An element of ker τ, to perturb the τ-unit.
fn trace_zero(ctx: &Ctx) -> Elem {
    ctx.basis().iter().find(|b| ctx.tau(b).is_zero()).cloned().expect("ker τ ≠ 0")
}

#[test]
fn order_and_principal_do_not_depend_on_the_unit() {
    let mut r = rng(42);
    for (_, ctx) in all() {
        let unit2 = ctx.tau_unit() + &trace_zero(&ctx);
        for _ in 0..5 {
            let z = points(&ctx)[r.gen_range(0..4)].clone();
            let num = OrePoly::random(&ctx, 2 * ctx.s() + 1, &mut r);
            if num.is_zero() {
                continue;
            }
            let den = CentralPoly::linear(&ctx, &z).pow(r.gen_range(0..3));
            let f = frac(num, den);
            assert_eq!(ord_and_principal(&f, &z).unwrap(), ord_and_principal_with(&f, &z, &unit2).unwrap());
        }
    }
}

#[test]
fn skew_residue_examples() {
    let b = ctx_b();
    let one = b.one();
    let n = CentralPoly::linear(&b, &one);
    assert_eq!(sres(&frac(OrePoly::x(&b), n.clone()), &one).unwrap(), OrePoly::x(&b));
    for (_, ctx) in all() {
        let z = points(&ctx)[0].clone();
        let n = CentralPoly::linear(&ctx, &z);
        assert!(sres(&OreFraction::inv_central(&n.pow(2)).unwrap(), &z).unwrap().is_zero());
        assert!(sres(&OreFraction::from_poly(OrePoly::z(&ctx)), &z).unwrap().is_zero());
    }
}

#[test]
fn ts_is_multiplicative_and_round_trips() {
    let mut r = rng(43);
    for (_, ctx) in all() {
        let zs = points(&ctx);
        for k in 0..6 {
            let z = &zs[k % zs.len()];
            let m = 1 + k % 4;
            let iso = build_admissible(&ctx, z, m).unwrap();
            let f = OrePoly::random(&ctx, 3 * ctx.s() - 1, &mut r);
            let g = OrePoly::random(&ctx, 3 * ctx.s() - 1, &mut r);
            let (sf, sg) = (ts_poly(&f, &iso), ts_poly(&g, &iso));
            let prod = sf.mul(&sg);
            assert_eq!(prod.coeffs(), ts_poly(&(&f * &g), &iso).coeffs());
            assert_eq!(sf.reconstruct(&iso).unwrap(), f.rem_right(iso.modulus()).unwrap());
        }
    }
}

#[test]
fn simple_pole_formula_matches_series() {
    let mut r = rng(44);
    let a = ctx_a();
    let b = ctx_b();
    let grids: Vec<(Ctx, Vec<Elem>)> = vec![
        (a.clone(), vec![a.one(), k2(&a, 1, 1)]),
        (b.clone(), vec![b.one(), t(&b)]),
    ];
    for (ctx, pts) in grids {
        for _ in 0..6 {
            let m = r.gen_range(1..=2);
            let cs: Vec<Elem> = pts[..m].to_vec();
            let vs: Vec<Subspace> = (0..m)
                .map(|_| {
                    let k = r.gen_range(0..=ctx.s());
                    ctx.span(&(0..k).map(|_| ctx.random_k(&mut r)).collect::<Vec<_>>())
                })
                .collect();
            let d = multi_annihilator(&ctx, &cs, &vs).unwrap();
            let dp = complement_cofactor(&d, &cs).unwrap();
            let nn = crate::evalmap::central_product(&ctx, &cs);
            let g = OrePoly::random(&ctx, 3, &mut r);
            let f = frac(&g * &dp, nn);
            for i in 0..m {
                let zi = ctx.upsilon(&cs[i]);
                assert_eq!(sres_simple(&g, &cs, &vs, i).unwrap(), sres(&f, &zi).unwrap());
            }
        }
    }
}

#[test]
fn residue_formula_example() {
    let b = ctx_b();
    let w = rt(&b, &[1, 0, 1], &[1]);
    let den = &CentralPoly::linear(&b, &b.one()) * &CentralPoly::linear(&b, &w);
    let f = frac(OrePoly::monomial(&b, t(&b), 1), den.clone());
    let rep = residue_sum(&f).unwrap();
    let inv_t2 = rt(&b, &[1], &[0, 0, 1]);
    assert_eq!(rep.values, vec![inv_t2.clone(), inv_t2]);
    assert!(rep.sum.is_zero());
    assert!(rep.asserted);
    let high = frac(OrePoly::monomial(&b, b.one(), 3), den);
    assert!(!residue_sum(&high).unwrap().asserted);
}

#[test]
fn frobenius_residue_at_infinity() {
    let a = ctx_a();
    let f = OreFraction::inv_central(&CentralPoly::linear(&a, &a.one())).unwrap();
    let rep = residue_sum(&f).unwrap();
    assert_eq!(rep.sum, a.int(2));
    assert!(!rep.asserted);
}

#[test]
fn residues_commute_with_reduced_trace() {
    let mut r = rng(45);
    for (_, ctx) in all() {
        let zs = points(&ctx);
        for _ in 0..6 {
            let (z1, z2) = (zs[0].clone(), zs[1].clone());
            let mut den = CentralPoly::linear(&ctx, &z1).pow(r.gen_range(1..3));
            if z1 != z2 {
                den = &den * &CentralPoly::linear(&ctx, &z2);
            }
            let num = OrePoly::random(&ctx, 2 * ctx.s() + 2, &mut r);
            let f = frac(num.clone(), den.clone());
            let g = trd_fraction(&f);
            for z in [&z1, &z2] {
                let s = sres(&f, z).unwrap();
                assert_eq!(trd(&s).eval(z), comm_residue(&g, z).unwrap());
                if ctx.kind() == Kind::Differential {
                    let lhs = sigma0(&s).unwrap().coeff(0);
                    let sf = CentralFraction::new(sigma0(&num).unwrap(), den.clone()).unwrap();
                    assert_eq!(lhs, comm_residue(&sf, z).unwrap());
                }
            }
        }
    }
}

#[test]
fn residue_sums_vanish() {
    let mut r = rng(46);
    for (_, ctx) in all() {
        let zs = points(&ctx);
        for _ in 0..4 {
            let mut den = CentralPoly::linear(&ctx, &zs[0]).pow(2);
            for z in &zs[1..3] {
                if !den.eval(z).is_zero() {
                    den = &den * &CentralPoly::linear(&ctx, z);
                }
            }
            let bound = residue_degree_bound(&ctx, &den);
            let num = OrePoly::random(&ctx, bound as usize, &mut r);
            let rep = residue_sum(&frac(num, den)).unwrap();
            assert!(rep.asserted);
            assert!(rep.sum.is_zero());
        }
    }
}
