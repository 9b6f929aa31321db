//! Ore polynomials K[X;θ,δ] with Xa = θ(a)X + δ(a).

mod central;
mod fraction;
mod laurent;

pub use central::CentralPoly;
pub use fraction::OreFraction;
pub use laurent::LaurentOre;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use crate::context::{make_frobenius_context, Ctx, Kind, OreContext};
use crate::error::{Error, Result};
use crate::fields::Elem;

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || (a.kind() == b.kind() && a.p() == b.p() && a.e() == b.e() && a.s() == b.s() && a.a() == b.a())
}

fn trim(v: &mut Vec<Elem>) {
    while v.last().is_some_and(Elem::is_zero) {
        v.pop();
    }
}

#[derive(Clone)]
pub struct OrePoly {
    ctx: Ctx,
    coeffs: Vec<Elem>,
}

impl PartialEq for OrePoly {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && same_ctx(&self.ctx, &o.ctx)
    }
}

impl Eq for OrePoly {}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly({self})")
    }
}

impl OrePoly {
    pub fn new(ctx: &Ctx, mut coeffs: Vec<Elem>) -> Self {
        trim(&mut coeffs);
        OrePoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        OrePoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn constant(ctx: &Ctx, a: Elem) -> Self {
        Self::new(ctx, vec![a])
    }

    pub fn x(ctx: &Ctx) -> Self {
        Self::monomial(ctx, ctx.one(), 1)
    }

    /// a·X^n
    pub fn monomial(ctx: &Ctx, a: Elem, n: usize) -> Self {
        let mut v = vec![ctx.zero(); n + 1];
        v[n] = a;
        Self::new(ctx, v)
    }

    /// X - c
    pub fn linear(ctx: &Ctx, c: &Elem) -> Self {
        Self::new(ctx, vec![-c, ctx.one()])
    }

    /// The centre generator Z(X).
    pub fn z(ctx: &Ctx) -> Self {
        Self::new(ctx, ctx.z_coeffs().to_vec())
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    fn check(&self, o: &OrePoly) -> Result<()> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Ok(OrePoly::new(&self.ctx, v))
    }

    pub fn try_sub(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Ok(OrePoly::new(&self.ctx, v))
    }

    pub fn try_mul(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        Ok(OrePoly { ctx: self.ctx.clone(), coeffs: self.ctx.mul_coeffs(&self.coeffs, &o.coeffs) })
    }

    /// a·f
    pub fn scale_left(&self, a: &Elem) -> OrePoly {
        OrePoly::new(&self.ctx, self.coeffs.iter().map(|c| a * c).collect())
    }

    /// f·a
    pub fn scale_right(&self, a: &Elem) -> OrePoly {
        self * &OrePoly::constant(&self.ctx, a.clone())
    }

    /// f·X^n
    pub fn shift(&self, n: usize) -> OrePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ctx.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        OrePoly { ctx: self.ctx.clone(), coeffs: v }
    }

    /// X·f
    pub fn x_times(&self) -> OrePoly {
        let ctx = &self.ctx;
        let mut v = vec![ctx.zero(); self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            v[j + 1] = &v[j + 1] + &ctx.theta(b);
            v[j] = &v[j] + &ctx.delta(b);
        }
        OrePoly::new(ctx, v)
    }

    pub fn pow(&self, n: usize) -> OrePoly {
        let mut r = OrePoly::one(&self.ctx);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Left-scaled to leading coefficient 1; right divisors are unchanged.
    pub fn monic(&self) -> OrePoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale_left(&l.inv().expect("nonzero lead")),
        }
    }

    /// Right division: f = Q·g + R with deg R < deg g.
    pub fn divrem_right(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.check(g)?;
        let Some(m) = g.deg() else { return Err(Error::DivisionByZero) };
        let ctx = &self.ctx;
        let mut r = self.coeffs.clone();
        if r.len() <= m {
            return Ok((OrePoly::zero(ctx), self.clone()));
        }
        let n = r.len() - 1;
        let mut q = vec![ctx.zero(); n - m + 1];
        let mut xg = vec![g.clone()];
        for d in 1..=n - m {
            let next = xg[d - 1].x_times();
            xg.push(next);
        }
        let lg = g.lead().unwrap();
        for top in (m..=n).rev() {
            let c = &r[top];
            if c.is_zero() {
                continue;
            }
            let d = top - m;
            let f = c / &ctx.theta_pow(lg, d as i64);
            for (j, b) in xg[d].coeffs.iter().enumerate() {
                if !b.is_zero() {
                    r[j] = &r[j] - &(&f * b);
                }
            }
            debug_assert!(r[top].is_zero());
            q[d] = f;
        }
        r.truncate(m);
        Ok((OrePoly::new(ctx, q), OrePoly::new(ctx, r)))
    }

    /// Left division: f = g·Q + R with deg R < deg g.
    pub fn divrem_left(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.check(g)?;
        let Some(m) = g.deg() else { return Err(Error::DivisionByZero) };
        let ctx = &self.ctx;
        let mut r = self.clone();
        let mut q = vec![ctx.zero(); self.coeffs.len().saturating_sub(m)];
        let lg = g.lead().unwrap();
        while let Some(top) = r.deg().filter(|&t| t >= m) {
            let d = top - m;
            let c = ctx.theta_pow(&(r.lead().unwrap() / lg), -(m as i64));
            let term = (g * &OrePoly::constant(ctx, c.clone())).shift(d);
            r = &r - &term;
            debug_assert!(r.deg().map_or(true, |t| t < top));
            q[d] = c;
        }
        Ok((OrePoly::new(ctx, q), r))
    }

    pub fn rem_right(&self, g: &OrePoly) -> Result<OrePoly> {
        Ok(self.divrem_right(g)?.1)
    }

    /// Exact right quotient, `NonDivisible` otherwise.
    pub fn div_exact_right(&self, g: &OrePoly) -> Result<OrePoly> {
        let (q, r) = self.divrem_right(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonDivisible)
        }
    }

    /// Monic greatest common right divisor.
    pub fn rgcd(&self, g: &OrePoly) -> Result<OrePoly> {
        self.check(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem_right(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    /// Monic least common left multiple, from the cofactors of the right Euclidean algorithm.
    pub fn lclm(&self, g: &OrePoly) -> Result<OrePoly> {
        self.check(g)?;
        if self.is_zero() || g.is_zero() {
            return Err(Error::ZeroInput);
        }
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (OrePoly::one(ctx), OrePoly::zero(ctx));
        loop {
            let (q, r2) = r0.divrem_right(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            if r2.is_zero() {
                return Ok((&s2 * self).monic());
            }
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
    }

    /// Substitutes X ↦ y: returns Σ a_i y^i.
    pub fn compose(&self, y: &OrePoly) -> OrePoly {
        let mut h = OrePoly::zero(&self.ctx);
        for a in self.coeffs.iter().rev() {
            h = &(&h * y) + &OrePoly::constant(&self.ctx, a.clone());
        }
        h
    }

    /// Coefficients b_i with f = Σ b_i (X + c)^i (left scalars).
    pub fn expand_at(&self, c: &Elem) -> Vec<Elem> {
        let lin = OrePoly::new(&self.ctx, vec![c.clone(), self.ctx.one()]);
        let mut out = Vec::new();
        let mut r = self.clone();
        while !r.is_zero() {
            let (q, rem) = r.divrem_right(&lin).expect("nonzero divisor");
            out.push(rem.coeff(0));
            r = q;
        }
        out
    }

    /// Inverse of [`OrePoly::expand_at`].
    pub fn from_expansion(ctx: &Ctx, coeffs: &[Elem], c: &Elem) -> OrePoly {
        let lin = OrePoly::new(ctx, vec![c.clone(), ctx.one()]);
        OrePoly::new(ctx, coeffs.to_vec()).compose(&lin)
    }

    /// Coordinates g_0, ..., g_{s-1} in C⁺ = K[Z] with f = Σ g_i(Z) X^i.
    pub fn centre_coords(&self) -> Vec<CentralPoly> {
        let ctx = &self.ctx;
        let s = ctx.s();
        let z = OrePoly::z(ctx);
        let mut cols: Vec<Vec<Elem>> = vec![Vec::new(); s];
        let mut r = self.clone();
        while !r.is_zero() {
            let (q, rem) = r.divrem_right(&z).expect("Z is monic");
            for (i, col) in cols.iter_mut().enumerate() {
                col.push(rem.coeff(i));
            }
            r = q;
        }
        cols.into_iter().map(|c| CentralPoly::new(ctx, c)).collect()
    }

    pub fn from_centre_coords(ctx: &Ctx, g: &[CentralPoly]) -> OrePoly {
        let mut acc = OrePoly::zero(ctx);
        for (i, gi) in g.iter().enumerate() {
            acc = &acc + &gi.to_ore().shift(i);
        }
        acc
    }

    /// The element as a central polynomial, if it lies in F[Z].
    pub fn to_central(&self) -> Option<CentralPoly> {
        let cc = self.centre_coords();
        if cc.iter().skip(1).any(|g| !g.is_zero()) {
            return None;
        }
        let g = cc.into_iter().next().unwrap_or_else(|| CentralPoly::zero(&self.ctx));
        g.is_central().then_some(g)
    }

    pub fn random<R: Rng + ?Sized>(ctx: &Ctx, max_deg: usize, rng: &mut R) -> OrePoly {
        let d = rng.gen_range(0..=max_deg);
        OrePoly::new(ctx, (0..=d).map(|_| ctx.random_k(rng)).collect())
    }

    /// Random polynomial of exact degree `d` (monic when requested).
    pub fn random_of_degree<R: Rng + ?Sized>(ctx: &Ctx, d: usize, monic: bool, rng: &mut R) -> OrePoly {
        let mut v: Vec<Elem> = (0..d).map(|_| ctx.random_k(rng)).collect();
        v.push(if monic { ctx.one() } else { ctx.random_nonzero_k(rng) });
        OrePoly::new(ctx, v)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Elem::to_json).collect())
    }

    pub fn from_json(ctx: &Ctx, v: &Value) -> Result<OrePoly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of coefficients".into()))?;
        let z = ctx.zero();
        let cs = arr.iter().map(|x| Elem::from_json_like(&z, x)).collect::<Result<_>>()?;
        Ok(OrePoly::new(ctx, cs))
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match (i, c.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{cs}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{cs}*X^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&OrePoly> for &OrePoly {
            type Output = OrePoly;
            fn $m(self, o: &OrePoly) -> OrePoly {
                self.$f(o).unwrap_or_else(|e| panic!("{}: {e}", stringify!($m)))
            }
        }
        impl $tr<OrePoly> for OrePoly {
            type Output = OrePoly;
            fn $m(self, o: OrePoly) -> OrePoly {
                (&self).$m(&o)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Coordinate change X ↦ X + b from K[X;θ,δ] to K[X;θ,δ + b·δ₀].
#[derive(Clone, Debug)]
pub struct HilbertTwist {
    source: Ctx,
    target: Ctx,
    shift: Elem,
}

impl HilbertTwist {
    pub fn source(&self) -> &Ctx {
        &self.source
    }

    pub fn target(&self) -> &Ctx {
        &self.target
    }

    pub fn apply(&self, f: &OrePoly) -> Result<OrePoly> {
        if !same_ctx(f.ctx(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        let t = &self.target;
        let y = OrePoly::new(t, vec![self.shift.clone(), t.one()]);
        Ok(OrePoly::new(t, f.coeffs().to_vec()).compose(&y))
    }

    pub fn invert(&self, f: &OrePoly) -> Result<OrePoly> {
        if !same_ctx(f.ctx(), &self.target) {
            return Err(Error::ContextMismatch);
        }
        let s = &self.source;
        let y = OrePoly::new(s, vec![-&self.shift, s.one()]);
        Ok(OrePoly::new(s, f.coeffs().to_vec()).compose(&y))
    }
}

/// The context with derivation δ + b·δ₀ and the substitution X ↦ X + b.
pub fn hilbert_twist(ctx: &Ctx, b: &Elem) -> Result<HilbertTwist> {
    if ctx.kind() != Kind::Frobenius {
        return Err(Error::NotApplicable("Hilbert twists need θ ≠ id".into()));
    }
    let new_a = ctx.a() + b;
    let target = make_frobenius_context(ctx.p(), ctx.e(), ctx.s(), Some(&new_a))?;
    Ok(HilbertTwist { source: ctx.clone(), target, shift: b.clone() })
}

impl OreContext {
    pub fn poly(self: &Arc<Self>, coeffs: Vec<Elem>) -> OrePoly {
        OrePoly::new(self, coeffs)
    }
}

#[cfg(test)]
mod tests;
