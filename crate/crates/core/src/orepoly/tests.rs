use super::*;
use crate::context::standard::*;
use crate::linalg::Matrix;
use crate::testutil::*;

fn p(ctx: &Ctx, cs: Vec<Elem>) -> OrePoly {
    OrePoly::new(ctx, cs)
}

#[test]
fn commutation_rule() {
    let b = ctx_b();
    let tt = t(&b);
    let xt = &OrePoly::x(&b) * &OrePoly::constant(&b, tt.clone());
    assert_eq!(xt, p(&b, vec![b.one(), tt.clone()]));

    let a = ctx_a();
    let xi = &OrePoly::x(&a) * &OrePoly::constant(&a, k2(&a, 0, 1));
    assert_eq!(xi, p(&a, vec![a.zero(), k2(&a, 0, 2)]));

    let f = p(&b, vec![tt.clone(), b.one()]);
    assert_eq!(&f * &f, p(&b, vec![rt(&b, &[1, 0, 1], &[1]), b.zero(), b.one()]));
}

#[test]
fn division_examples() {
    let a = ctx_a();
    let c = k2(&a, 1, 1);
    let (q, r) = OrePoly::z(&a).divrem_right(&OrePoly::linear(&a, &c)).unwrap();
    assert_eq!(q, p(&a, vec![k2(&a, 1, 2), a.one()]));
    assert_eq!(r, OrePoly::constant(&a, a.int(2)));

    let b = ctx_b();
    let tt = t(&b);
    let (q, r) = OrePoly::z(&b).divrem_right(&OrePoly::linear(&b, &tt)).unwrap();
    assert_eq!(q, p(&b, vec![tt.clone(), b.one()]));
    assert_eq!(r, OrePoly::constant(&b, rt(&b, &[1, 0, 1], &[1])));

    let x = OrePoly::x(&b);
    let (q, r) = x.divrem_right(&x).unwrap();
    assert_eq!((q, r), (OrePoly::one(&b), OrePoly::zero(&b)));
    assert_eq!(x.divrem_right(&OrePoly::zero(&b)).unwrap_err(), Error::DivisionByZero);
}

#[test]
fn gcd_examples() {
    let a = ctx_a();
    let one = a.one();
    let f = p(&a, vec![-&one, a.zero(), one.clone()]);
    let g = OrePoly::linear(&a, &one);
    assert_eq!(f.rgcd(&g).unwrap(), g);
    assert_eq!(f.rgcd(&OrePoly::zero(&a)).unwrap(), f);
    let h = OrePoly::linear(&a, &k2(&a, 1, 1));
    assert_eq!(g.rgcd(&h).unwrap(), OrePoly::one(&a));
    assert_eq!(OrePoly::zero(&a).rgcd(&OrePoly::zero(&a)).unwrap_err(), Error::ZeroInput);
}

/// X^j mod (X - c) for δ = 0 is the norm-like product c·θ(c)⋯θ^{j-1}(c).
fn rem_x_pow(ctx: &Ctx, c: &Elem, j: usize) -> Elem {
    (0..j).fold(ctx.one(), |acc, k| &acc * &ctx.theta_pow(c, k as i64))
}

#[test]
fn lclm_example() {
    let a = ctx_a();
    let c1 = a.one();
    let c2 = k2(&a, 1, 1);
    let l = OrePoly::linear(&a, &c1).lclm(&OrePoly::linear(&a, &c2)).unwrap();
    assert_eq!(l, p(&a, vec![k2(&a, 2, 2), k2(&a, 0, 1), a.one()]));

    // brute force over all monic quadratics
    let all = a.zero().all_like().unwrap();
    let mut hits = Vec::new();
    for al in &all {
        for be in &all {
            let ok = [&c1, &c2].iter().all(|c| (&(&rem_x_pow(&a, c, 2) + &(al * &rem_x_pow(&a, c, 1))) + be).is_zero());
            if ok {
                hits.push(p(&a, vec![be.clone(), al.clone(), a.one()]));
            }
        }
    }
    assert_eq!(hits, vec![l]);
}

/// Minimal monic common left multiple by solving A·f = B·g over K.
fn lclm_oracle(f: &OrePoly, g: &OrePoly) -> OrePoly {
    let ctx = f.ctx();
    let (df, dg) = (f.deg().unwrap(), g.deg().unwrap());
    for d in df.max(dg)..=df + dg {
        let mut cols = Vec::new();
        for i in 0..=d - df {
            let v = &OrePoly::x(ctx).pow(i) * f;
            cols.push((0..=d).map(|k| v.coeff(k)).collect());
        }
        for j in 0..=d - dg {
            let v = -&(&OrePoly::x(ctx).pow(j) * g);
            cols.push((0..=d).map(|k| v.coeff(k)).collect());
        }
        let m = Matrix::from_cols(cols, d + 1, &ctx.zero());
        for kv in m.kernel() {
            let l: OrePoly = (0..=d - df).fold(OrePoly::zero(ctx), |acc, i| &acc + &(&OrePoly::monomial(ctx, kv[i].clone(), i) * f));
            if l.deg() == Some(d) {
                return l.monic();
            }
        }
    }
    unreachable!("f·g is a common multiple")
}

#[test]
fn lclm_matches_oracle_and_degree_law() {
    let mut r = rng(11);
    for (_, ctx) in all().into_iter().chain([("T", ctx_t())]) {
        for _ in 0..15 {
            let f = OrePoly::random_of_degree(&ctx, r.gen_range(1..4), false, &mut r);
            let g = OrePoly::random_of_degree(&ctx, r.gen_range(1..4), false, &mut r);
            let l = f.lclm(&g).unwrap();
            assert!(l.rem_right(&f).unwrap().is_zero());
            assert!(l.rem_right(&g).unwrap().is_zero());
            assert_eq!(l, lclm_oracle(&f, &g));
            let gd = f.rgcd(&g).unwrap();
            assert_eq!(l.degree() + gd.degree(), f.degree() + g.degree());
            assert_eq!(f.lclm(&f).unwrap(), f.monic());
        }
    }
}

#[test]
fn ring_laws_and_division() {
    let mut r = rng(5);
    for (_, ctx) in all() {
        for _ in 0..30 {
            let f = OrePoly::random(&ctx, 5, &mut r);
            let g = OrePoly::random(&ctx, 4, &mut r);
            let h = OrePoly::random(&ctx, 3, &mut r);
            assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            if !f.is_zero() && !g.is_zero() {
                assert_eq!((&f * &g).degree(), f.degree() + g.degree());
            }
            if g.is_zero() {
                continue;
            }
            let (q, rm) = f.divrem_right(&g).unwrap();
            assert!(rm.degree() < g.degree());
            assert_eq!(&(&q * &g) + &rm, f);
            let (q, rm) = f.divrem_left(&g).unwrap();
            assert!(rm.degree() < g.degree());
            assert_eq!(&(&g * &q) + &rm, f);
        }
    }
}

#[test]
fn centre_is_central() {
    let mut r = rng(6);
    for (_, ctx) in all().into_iter().chain([("T", ctx_t())]) {
        let z = OrePoly::z(&ctx);
        for _ in 0..20 {
            let f = OrePoly::random(&ctx, 5, &mut r);
            assert_eq!(&z * &f, &f * &z);
            let c = CentralPoly::new(&ctx, (0..3).map(|_| ctx.random_f(&mut r)).collect()).to_ore();
            assert_eq!(&c * &f, &f * &c);
        }
    }
}

#[test]
fn centre_coords_examples_and_roundtrip() {
    let b = ctx_b();
    let x = OrePoly::x(&b);
    let zb = CentralPoly::z(&b);
    assert_eq!(x.pow(2).centre_coords(), vec![zb.clone(), CentralPoly::zero(&b)]);
    assert_eq!(x.pow(3).centre_coords(), vec![CentralPoly::zero(&b), zb]);

    let a = ctx_a();
    let i = k2(&a, 0, 1);
    let f = p(&a, vec![i.clone(), k2(&a, 1, 1), i.clone()]);
    let cc = f.centre_coords();
    assert_eq!(cc[0], CentralPoly::new(&a, vec![i.clone(), i.clone()]));
    assert_eq!(cc[1], CentralPoly::constant(&a, k2(&a, 1, 1)));

    let mut r = rng(7);
    for (_, ctx) in all() {
        for _ in 0..30 {
            let f = OrePoly::random(&ctx, 9, &mut r);
            assert_eq!(OrePoly::from_centre_coords(&ctx, &f.centre_coords()), f);
        }
    }
}

#[test]
fn reduced_trace_coordinate_table() {
    for ctx in [ctx_b(), ctx_c()] {
        let pr = ctx.s() as i64;
        let z = ctx.z_linearized();
        for i in 0..pr {
            for v in -i..pr {
                let got = OrePoly::x(&ctx).pow((i + v) as usize).centre_coords()[i as usize].clone();
                let want = if v == 0 {
                    ctx.one()
                } else if v == pr - 1 && i >= 1 {
                    -&z[0]
                } else {
                    ctx.zero()
                };
                assert_eq!(got, CentralPoly::constant(&ctx, want), "i={i} v={v}");
            }
        }
    }
}

#[test]
fn upsilon_is_remainder_of_z() {
    let mut r = rng(8);
    for (_, ctx) in all().into_iter().chain([("T", ctx_t())]) {
        for _ in 0..20 {
            let c = ctx.random_k(&mut r);
            let rem = OrePoly::z(&ctx).rem_right(&OrePoly::linear(&ctx, &c)).unwrap();
            assert_eq!(rem.coeff(0), ctx.upsilon(&c));
            assert!(ctx.is_in_f(&rem.coeff(0)));
        }
    }
}

#[test]
fn hilbert_twists() {
    let d = ctx_d();
    let tw = hilbert_twist(&d, &-&k2(&d, 0, 1)).unwrap();
    assert!(tw.target().a().is_zero());
    assert_eq!(tw.target().z_coeffs(), ctx_a().z_coeffs());
    let id = hilbert_twist(&d, &d.zero()).unwrap();
    let mut r = rng(9);
    for _ in 0..30 {
        let f = OrePoly::random(&d, 5, &mut r);
        let g = OrePoly::random(&d, 5, &mut r);
        assert_eq!(id.apply(&f).unwrap(), f);
        let tf = tw.apply(&f).unwrap();
        assert_eq!(tw.invert(&tf).unwrap(), f);
        assert_eq!(tw.apply(&(&f * &g)).unwrap(), &tf * &tw.apply(&g).unwrap());
    }
    assert!(hilbert_twist(&ctx_b(), &ctx_b().one()).is_err());
}

#[test]
fn laurent_examples() {
    let a = ctx_a();
    let xinv = LaurentOre::y_pow(&a, -1).unwrap();
    let x = LaurentOre::y_pow(&a, 1).unwrap();
    assert_eq!(&xinv * &x, LaurentOre::y_pow(&a, 0).unwrap());
    let i = LaurentOre::monomial(&a, k2(&a, 0, 1), 0).unwrap();
    assert_eq!(&xinv * &i, LaurentOre::monomial(&a, k2(&a, 0, 2), -1).unwrap());
    let m2 = LaurentOre::y_pow(&a, -2).unwrap();
    assert_eq!(&m2 * &LaurentOre::y_pow(&a, 2).unwrap(), LaurentOre::y_pow(&a, 0).unwrap());
    assert_eq!(m2.to_fraction(), OreFraction::inv_central(&CentralPoly::z(&a)).unwrap());
    assert!(LaurentOre::y_pow(&ctx_b(), 1).is_err());

    let d = ctx_d();
    let mut r = rng(10);
    for _ in 0..20 {
        let f = OrePoly::random(&d, 4, &mut r);
        let g = OrePoly::random(&d, 4, &mut r);
        let (lf, lg) = (LaurentOre::from_ore(&f).unwrap(), LaurentOre::from_ore(&g).unwrap());
        assert_eq!((&lf * &lg).to_ore().unwrap(), &f * &g);
        let sh = &LaurentOre::y_pow(&d, -3).unwrap() * &lf;
        assert_eq!(LaurentOre::from_fraction(&sh.to_fraction()).unwrap(), sh);
    }
}

#[test]
fn fractions() {
    let b = ctx_b();
    let n = CentralPoly::linear(&b, &b.one());
    let x = OrePoly::x(&b);
    let f = OreFraction::new(x.clone(), n.clone()).unwrap();
    let g = OreFraction::new(&x * &n.to_ore(), &n * &n).unwrap();
    assert_eq!(f, g);
    let sum = &f + &f.neg();
    assert!(sum.is_zero());
    assert_eq!(OreFraction::new(n.to_ore(), n.clone()).unwrap().as_poly(), Some(OrePoly::one(&b)));
}

#[test]
fn json_roundtrip() {
    let mut r = rng(12);
    for (_, ctx) in all() {
        let f = OrePoly::random(&ctx, 4, &mut r);
        assert_eq!(OrePoly::from_json(&ctx, &f.to_json()).unwrap(), f);
    }
    let a = ctx_a();
    let l = LaurentOre::monomial(&a, k2(&a, 1, 2), -3).unwrap();
    assert_eq!(LaurentOre::from_json(&a, &l.to_json()).unwrap(), l);
}
