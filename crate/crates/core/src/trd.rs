//! Reduced trace A⁺ → Z⁺, central τ and υ, σ₀, and residues on Frac(F[Z]).

use std::fmt;

use crate::context::{Ctx, Kind};
use crate::error::{Error, Result};
use crate::fields::{fp, Elem, RatFunc};
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};

/// Trace of x ↦ x·f on the C⁺-basis 1, X, …, X^{s-1}.
pub fn trd_matrix(f: &OrePoly) -> CentralPoly {
    let ctx = f.ctx();
    let mut acc = CentralPoly::zero(ctx);
    let mut xj = OrePoly::one(ctx);
    for j in 0..ctx.s() {
        let col = (&xj * f).centre_coords();
        acc = &acc + &col[j];
        xj = xj.shift(1);
    }
    assert!(acc.is_central(), "reduced trace left the centre");
    acc
}

/// Closed form: Σ Tr(b_{sk}) Z^k in the variable X + a, or τ(π_{s-1}(f)) when θ = id.
pub fn trd_closed(f: &OrePoly) -> CentralPoly {
    let ctx = f.ctx();
    match ctx.kind() {
        Kind::Frobenius => {
            let b = f.expand_at(ctx.a());
            let s = ctx.s();
            let cs = b.iter().step_by(s).map(|x| ctx.field_trace(x)).collect();
            CentralPoly::new(ctx, cs)
        }
        Kind::Differential => {
            let top = f.centre_coords().pop().expect("s ≥ 2");
            top.map_coeffs(|c| ctx.tau(c))
        }
    }
}

pub fn trd(f: &OrePoly) -> CentralPoly {
    trd_closed(f)
}

/// T_rd(num/den) = T_rd(num)/den.
pub fn trd_fraction(f: &OreFraction) -> CentralFraction {
    CentralFraction::new(trd(f.num()), f.den().clone()).expect("nonzero denominator")
}

/// π_{s-1}, the top centre coordinate (θ = id only).
pub fn sigma0(f: &OrePoly) -> Result<CentralPoly> {
    if f.ctx().kind() != Kind::Differential {
        return Err(Error::WrongKind("σ₀ is defined for θ = id".into()));
    }
    Ok(f.centre_coords().pop().expect("s ≥ 2"))
}

fn need_differential(ctx: &Ctx) -> Result<()> {
    if ctx.kind() == Kind::Differential {
        Ok(())
    } else {
        Err(Error::WrongKind("differential trace and norm need θ = id".into()))
    }
}

/// δ applied coefficientwise to an element of C⁺.
fn delta_central(c: &CentralPoly) -> CentralPoly {
    let ctx = c.ctx();
    c.map_coeffs(|x| ctx.delta(x))
}

fn delta_central_pow(c: &CentralPoly, n: u64) -> CentralPoly {
    (0..n).fold(c.clone(), |acc, _| delta_central(&acc))
}

/// C^(p^m) computed coefficientwise.
fn frobenius_central(c: &CentralPoly, m: u32) -> CentralPoly {
    let ctx = c.ctx();
    let e = ctx.p().pow(m);
    let mut v = vec![ctx.zero(); c.coeffs().len().saturating_sub(1) * e as usize + 1];
    for (k, x) in c.coeffs().iter().enumerate() {
        v[k * e as usize] = x.pow(e);
    }
    CentralPoly::new(ctx, v)
}

/// τ(C) = Σ z_i δ^{p^i - 1}(C).
pub fn tau_central(c: &CentralPoly) -> Result<CentralPoly> {
    let ctx = c.ctx();
    need_differential(ctx)?;
    let out = c.map_coeffs(|x| ctx.tau(x));
    debug_assert!(out.is_central());
    Ok(out)
}

/// υ(C) = Σ_i Σ_{j ≤ i} (z_i δ^{p^j - 1}(C))^{p^{i-j}}.
pub fn upsilon_central(c: &CentralPoly) -> Result<CentralPoly> {
    let ctx = c.ctx();
    need_differential(ctx)?;
    let z = ctx.z_linearized();
    let mut acc = CentralPoly::zero(ctx);
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            continue;
        }
        for j in 0..=i {
            let inner = delta_central_pow(c, ctx.p().pow(j as u32) - 1).scale(zi);
            acc = &acc + &frobenius_central(&inner, (i - j) as u32);
        }
    }
    if !acc.is_central() {
        return Err(Error::Verification("υ(C) is not central".into()));
    }
    Ok(acc)
}

/// An element of Frac(F[Z]) with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFraction {
    pub num: CentralPoly,
    pub den: CentralPoly,
}

impl CentralFraction {
    pub fn new(num: CentralPoly, den: CentralPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = den.lead().unwrap().inv()?;
        let (num, den) = (num.scale(&l), den.scale(&l));
        let g = num.gcd(&den)?;
        if g.deg().is_some_and(|d| d > 0) {
            return Ok(CentralFraction { num: num.div_exact(&g)?, den: den.div_exact(&g)? });
        }
        Ok(CentralFraction { num, den })
    }

    pub fn eval(&self, z: &Elem) -> Result<Elem> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(z) / &d)
    }
}

impl fmt::Display for CentralFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Elements of F, for a finite F.
pub fn f_elements(ctx: &Ctx) -> Result<Vec<Elem>> {
    Ok(ctx.zero().all_like()?.into_iter().filter(|x| ctx.is_in_f(x)).collect())
}

fn monic_divisors(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let (_, fac) = fp::factor(f, p);
    let mut out = vec![vec![1]];
    for (g, m) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..m {
                acc = fp::pmul(&acc, &g, p);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}

/// A root of P in F_p(t) by the rational root theorem.
fn rat_root(poly: &CentralPoly) -> Option<Elem> {
    let ctx = poly.ctx();
    let p = ctx.p();
    let mut l = vec![1u64];
    for c in poly.coeffs() {
        let r = c.as_rat().expect("rational coefficients");
        l = fp::pmul(&l, &fp::pdivrem(r.den(), &fp::pgcd(&l, r.den(), p), p).0, p);
    }
    let lf = Elem::Rat(RatFunc::from_poly(p, l));
    let ints: Vec<Vec<u64>> = poly.coeffs().iter().map(|c| (c * &lf).as_rat().unwrap().num().to_vec()).collect();
    let c0 = &ints[0];
    let cn = ints.last().unwrap();
    for u in monic_divisors(c0, p) {
        for v in monic_divisors(cn, p) {
            for lam in 1..p {
                let r = RatFunc::new(p, fp::pscale(&u, lam, p), v.clone()).ok()?;
                let r = Elem::Rat(r);
                if ctx.is_in_f(&r) && poly.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Roots of a central polynomial in F with multiplicities, or `NonSplitDenominator`.
pub fn split_roots(poly: &CentralPoly) -> Result<Vec<(Elem, usize)>> {
    let ctx = poly.ctx();
    if poly.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rest = poly.monic();
    let mut roots: Vec<(Elem, usize)> = Vec::new();
    let candidates = match ctx.kind() {
        Kind::Frobenius => Some(f_elements(ctx)?),
        Kind::Differential => None,
    };
    while rest.deg().is_some_and(|d| d > 0) {
        let r = if rest.coeff(0).is_zero() {
            Some(ctx.zero())
        } else {
            match &candidates {
                Some(c) => c.iter().find(|x| rest.eval(x).is_zero()).cloned(),
                None => rat_root(&rest),
            }
        };
        let Some(r) = r.filter(|r| ctx.is_in_f(r)) else {
            return Err(Error::NonSplitDenominator);
        };
        rest = rest.div_exact(&CentralPoly::linear(ctx, &r))?;
        match roots.iter_mut().find(|(x, _)| *x == r) {
            Some((_, m)) => *m += 1,
            None => roots.push((r, 1)),
        }
    }
    Ok(roots)
}

/// Multiplicity of (Z - z) in d and the cofactor.
pub fn split_off(d: &CentralPoly, z: &Elem) -> (usize, CentralPoly) {
    let lin = CentralPoly::linear(d.ctx(), z);
    let mut rest = d.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.divrem(&lin).expect("monic divisor");
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

/// First `n` coefficients of num/den as a power series (den(0) ≠ 0).
pub fn series_div(num: &CentralPoly, den: &CentralPoly, n: usize) -> Vec<Elem> {
    let d0 = den.coeff(0).inv().expect("invertible constant term");
    let mut out: Vec<Elem> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.coeffs().len().saturating_sub(1)) {
            acc = &acc - &(&den.coeff(j) * &out[k - j]);
        }
        out.push(&acc * &d0);
    }
    out
}

/// Residue at Z = z of g·dZ.
pub fn comm_residue(g: &CentralFraction, z: &Elem) -> Result<Elem> {
    let ctx = g.num.ctx();
    split_roots(&g.den)?;
    let (e, rest) = split_off(&g.den, z);
    if e == 0 {
        return Ok(ctx.zero());
    }
    let num = g.num.taylor_shift(z);
    let rest = rest.taylor_shift(z);
    Ok(series_div(&num, &rest, e).pop().unwrap())
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::context::standard::*;
    use crate::evalmap::ev;
    use crate::testutil::*;

    #[test]
    fn trd_examples() {
        let a = ctx_a();
        let z2 = |c: Elem| OrePoly::monomial(&a, c, 2);
        assert!(trd_matrix(&z2(k2(&a, 0, 1))).is_zero());
        assert_eq!(trd_matrix(&z2(k2(&a, 1, 1))), CentralPoly::z(&a).scale(&a.int(2)));
        assert_eq!(trd_matrix(&OrePoly::z(&a)), CentralPoly::z(&a).scale(&a.int(2)));
        assert!(trd_closed(&OrePoly::x(&a)).is_zero());
        let b = ctx_b();
        assert!(trd_matrix(&OrePoly::z(&b)).is_zero());
        assert_eq!(trd_closed(&OrePoly::monomial(&b, t(&b), 1)), CentralPoly::one(&b));
        let mut r = rng(31);
        for _ in 0..10 {
            assert!(trd_closed(&OrePoly::constant(&b, b.random_k(&mut r))).is_zero());
        }
    }

    #[test]
    fn sigma0_examples() {
        let b = ctx_b();
        assert_eq!(sigma0(&OrePoly::monomial(&b, t(&b), 1)).unwrap(), CentralPoly::constant(&b, t(&b)));
        assert!(sigma0(&OrePoly::z(&b)).unwrap().is_zero());
        assert!(sigma0(&OrePoly::one(&b)).unwrap().is_zero());
        assert!(sigma0(&OrePoly::one(&ctx_a())).is_err());
    }

    #[test]
    fn central_tau_upsilon_examples() {
        let b = ctx_b();
        let tz = CentralPoly::z(&b).scale(&t(&b));
        let want = CentralPoly::new(&b, vec![b.zero(), b.one(), rt(&b, &[0, 0, 1], &[1])]);
        assert_eq!(upsilon_central(&tz).unwrap(), want);
        assert_eq!(tau_central(&tz).unwrap(), CentralPoly::z(&b));
        let mut r = rng(32);
        for (_, ctx) in [("B", ctx_b()), ("C", ctx_c()), ("T", ctx_t())] {
            for _ in 0..10 {
                let c = ctx.random_k(&mut r);
                assert_eq!(upsilon_central(&CentralPoly::constant(&ctx, c.clone())).unwrap(), CentralPoly::constant(&ctx, ctx.upsilon(&c)));
            }
        }
    }

    #[test]
    fn residue_examples() {
        let b = ctx_b();
        let one = b.one();
        let n1 = CentralPoly::linear(&b, &one);
        let f = CentralFraction::new(CentralPoly::one(&b), n1.clone()).unwrap();
        assert_eq!(comm_residue(&f, &one).unwrap(), one);
        let w = rt(&b, &[1, 0, 1], &[1]);
        let d = &n1 * &CentralPoly::linear(&b, &w);
        let f = CentralFraction::new(CentralPoly::one(&b), d).unwrap();
        assert_eq!(comm_residue(&f, &one).unwrap(), rt(&b, &[1], &[0, 0, 1]));
        let poly = CentralFraction::new(CentralPoly::z(&b), CentralPoly::one(&b)).unwrap();
        assert!(comm_residue(&poly, &w).unwrap().is_zero());
        let ns = CentralFraction::new(CentralPoly::one(&b), CentralPoly::new(&b, vec![rt(&b, &[0, 0, 1], &[1]), b.zero(), one.clone()])).unwrap();
        assert_eq!(comm_residue(&ns, &one).unwrap_err(), Error::NonSplitDenominator);
    }

    #[test]
    fn double_pole_residue() {
        // 1/((Z-1)^2 (Z-2)) at 1 over F_3: d/dZ (1/(Z-2)) at 1 = -1/(1-2)^2 = -1
        let a = ctx_a();
        let d = &CentralPoly::linear(&a, &a.one()).pow(2) * &CentralPoly::linear(&a, &a.int(2));
        let f = CentralFraction::new(CentralPoly::one(&a), d).unwrap();
        assert_eq!(comm_residue(&f, &a.one()).unwrap(), a.int(-1));
        assert_eq!(comm_residue(&f, &a.int(2)).unwrap(), a.one());
    }

    #[test]
    fn matrix_equals_closed_and_trace_relations() {
        let mut r = rng(33);
        for (_, ctx) in all().into_iter().chain([("T", ctx_t())]) {
            for _ in 0..20 {
                let f = OrePoly::random(&ctx, 7, &mut r);
                let g = OrePoly::random(&ctx, 4, &mut r);
                assert_eq!(trd_matrix(&f), trd_closed(&f));
                assert_eq!(trd(&(&f * &g)), trd(&(&g * &f)));
                let eps = CentralPoly::new(&ctx, (0..2).map(|_| ctx.random_f(&mut r)).collect());
                assert_eq!(trd(&(&eps.to_ore() * &f)), &eps * &trd(&f));
                let c = ctx.random_k(&mut r);
                assert_eq!(ev(&f, &c).trace(), trd(&f).eval(&ctx.upsilon(&c)));
            }
        }
    }

    #[test]
    fn worked_trace_evaluation_instance() {
        let b = ctx_b();
        let f = OrePoly::monomial(&b, t(&b), 1);
        assert_eq!(ev(&f, &b.one()).trace(), b.one());
        assert_eq!(trd(&f).eval(&b.upsilon(&b.one())), b.one());
    }

    #[test]
    fn z_of_shifted_variable() {
        let mut r = rng(34);
        for ctx in [ctx_b(), ctx_c(), ctx_t()] {
            for _ in 0..10 {
                let c = CentralPoly::new(&ctx, (0..r.gen_range(1..3)).map(|_| ctx.random_k(&mut r)).collect());
                let y = &OrePoly::x(&ctx) + &c.to_ore();
                let zy = OrePoly::z(&ctx).compose(&y);
                assert_eq!(zy, &OrePoly::z(&ctx) + &upsilon_central(&c).unwrap().to_ore());
                let eps = CentralPoly::new(&ctx, vec![ctx.zero(), ctx.random_f(&mut r)]);
                let lhs = upsilon_central(&(&eps * &c)).unwrap();
                let rhs = &eps * &tau_central(&c).unwrap();
                let e2 = &eps * &eps;
                assert!(e2.is_zero() || (&lhs - &rhs).rem(&e2).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn split_roots_differential() {
        let b = ctx_b();
        let w = rt(&b, &[1, 0, 1], &[0, 0, 1]);
        let d = &CentralPoly::linear(&b, &b.one()).pow(2) * &CentralPoly::linear(&b, &w);
        let roots = split_roots(&d).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&(b.one(), 2)));
        assert!(roots.contains(&(w, 1)));
    }
}
