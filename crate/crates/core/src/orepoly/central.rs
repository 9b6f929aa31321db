use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use super::{same_ctx, trim, OrePoly};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::fields::Elem;

/// A commutative polynomial in the centre generator Z.
///
/// Coefficients normally lie in F (an element of Z⁺); K coefficients are
/// allowed for the centre coordinates of [`OrePoly::centre_coords`].
#[derive(Clone)]
pub struct CentralPoly {
    ctx: Ctx,
    coeffs: Vec<Elem>,
}

impl PartialEq for CentralPoly {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && same_ctx(&self.ctx, &o.ctx)
    }
}

impl Eq for CentralPoly {}

impl fmt::Debug for CentralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CentralPoly({self})")
    }
}

impl CentralPoly {
    pub fn new(ctx: &Ctx, mut coeffs: Vec<Elem>) -> Self {
        trim(&mut coeffs);
        CentralPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        CentralPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn constant(ctx: &Ctx, a: Elem) -> Self {
        Self::new(ctx, vec![a])
    }

    /// The variable Z.
    pub fn z(ctx: &Ctx) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// Z - w
    pub fn linear(ctx: &Ctx, w: &Elem) -> Self {
        Self::new(ctx, vec![-w, ctx.one()])
    }

    /// Π (Z - w)
    pub fn from_roots(ctx: &Ctx, roots: &[Elem]) -> Self {
        roots.iter().fold(Self::one(ctx), |acc, w| &acc * &Self::linear(ctx, w))
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

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// True when every coefficient lies in F.
    pub fn is_central(&self) -> bool {
        self.coeffs.iter().all(|c| self.ctx.is_in_f(c))
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Elem::is_one)
    }

    fn check(&self, o: &CentralPoly) -> Result<()> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, o: &CentralPoly) -> Result<CentralPoly> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(CentralPoly::new(&self.ctx, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()))
    }

    pub fn try_sub(&self, o: &CentralPoly) -> Result<CentralPoly> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(CentralPoly::new(&self.ctx, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect()))
    }

    pub fn try_mul(&self, o: &CentralPoly) -> Result<CentralPoly> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(CentralPoly::zero(&self.ctx));
        }
        let mut v = vec![self.ctx.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Ok(CentralPoly::new(&self.ctx, v))
    }

    pub fn scale(&self, a: &Elem) -> CentralPoly {
        CentralPoly::new(&self.ctx, self.coeffs.iter().map(|c| a * c).collect())
    }

    /// self·Z^n
    pub fn shift(&self, n: usize) -> CentralPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ctx.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        CentralPoly { ctx: self.ctx.clone(), coeffs: v }
    }

    pub fn pow(&self, n: usize) -> CentralPoly {
        let mut r = CentralPoly::one(&self.ctx);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn monic(&self) -> CentralPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Elem) -> Elem) -> CentralPoly {
        CentralPoly::new(&self.ctx, self.coeffs.iter().map(f).collect())
    }

    pub fn divrem(&self, g: &CentralPoly) -> Result<(CentralPoly, CentralPoly)> {
        self.check(g)?;
        let Some(m) = g.deg() else { return Err(Error::DivisionByZero) };
        let ctx = &self.ctx;
        let mut r = self.coeffs.clone();
        if r.len() <= m {
            return Ok((CentralPoly::zero(ctx), self.clone()));
        }
        let n = r.len() - 1;
        let li = g.lead().unwrap().inv()?;
        let mut q = vec![ctx.zero(); n - m + 1];
        for top in (m..=n).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] * &li;
            let d = top - m;
            for (j, b) in g.coeffs.iter().enumerate() {
                r[d + j] = &r[d + j] - &(&c * b);
            }
            q[d] = c;
        }
        r.truncate(m);
        Ok((CentralPoly::new(ctx, q), CentralPoly::new(ctx, r)))
    }

    pub fn rem(&self, g: &CentralPoly) -> Result<CentralPoly> {
        Ok(self.divrem(g)?.1)
    }

    pub fn div_exact(&self, g: &CentralPoly) -> Result<CentralPoly> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonDivisible)
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, g: &CentralPoly) -> Result<CentralPoly> {
        self.check(g)?;
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &CentralPoly) -> Result<CentralPoly> {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (m.clone(), self.rem(m)?);
        let (mut t0, mut t1) = (CentralPoly::zero(ctx), CentralPoly::one(ctx));
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1)?;
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.deg() != Some(0) {
            return Err(Error::NonDivisible);
        }
        let c = r0.coeff(0).inv()?;
        t0.scale(&c).rem(m)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        self.coeffs.iter().rev().fold(self.ctx.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Coefficients of P(W + z) in W.
    pub fn taylor_shift(&self, z: &Elem) -> CentralPoly {
        let ctx = &self.ctx;
        let lin = CentralPoly::new(ctx, vec![z.clone(), ctx.one()]);
        self.coeffs.iter().rev().fold(CentralPoly::zero(ctx), |acc, c| &(&acc * &lin) + &CentralPoly::constant(ctx, c.clone()))
    }

    pub fn derivative(&self) -> CentralPoly {
        let ctx = &self.ctx;
        CentralPoly::new(ctx, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| &ctx.int(i as i64) * c).collect())
    }

    /// Expansion Σ c_j Z(X)^j in A⁺.
    pub fn to_ore(&self) -> OrePoly {
        let ctx = &self.ctx;
        let z = OrePoly::z(ctx);
        self.coeffs.iter().rev().fold(OrePoly::zero(ctx), |acc, c| &(&acc * &z) + &OrePoly::constant(ctx, c.clone()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Elem::to_json).collect())
    }

    pub fn from_json(ctx: &Ctx, v: &Value) -> Result<CentralPoly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of coefficients".into()))?;
        let z = ctx.zero();
        let cs = arr.iter().map(|x| Elem::from_json_like(&z, x)).collect::<Result<_>>()?;
        Ok(CentralPoly::new(ctx, cs))
    }
}

impl fmt::Display for CentralPoly {
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
                (1, true) => write!(f, "Z")?,
                (1, false) => write!(f, "{cs}*Z")?,
                (_, true) => write!(f, "Z^{i}")?,
                (_, false) => write!(f, "{cs}*Z^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! central_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CentralPoly> for &CentralPoly {
            type Output = CentralPoly;
            fn $m(self, o: &CentralPoly) -> CentralPoly {
                self.$f(o).unwrap_or_else(|e| panic!("{}: {e}", stringify!($m)))
            }
        }
        impl $tr<CentralPoly> for CentralPoly {
            type Output = CentralPoly;
            fn $m(self, o: CentralPoly) -> CentralPoly {
                (&self).$m(&o)
            }
        }
    };
}

central_binop!(Add, add, try_add);
central_binop!(Sub, sub, try_sub);
central_binop!(Mul, mul, try_mul);

impl Neg for &CentralPoly {
    type Output = CentralPoly;
    fn neg(self) -> CentralPoly {
        CentralPoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
