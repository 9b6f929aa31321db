use std::fmt;

use serde_json::{json, Value};

use super::{same_ctx, CentralPoly, OreFraction, OrePoly};
use crate::context::{Ctx, Kind};
use crate::error::{Error, Result};
use crate::fields::Elem;

/// Element Σ_j c_j Y^{val+j} of A⁺[1/Y], Y = X + a, with Y·b = θ(b)·Y.
#[derive(Clone)]
pub struct LaurentOre {
    ctx: Ctx,
    val: i64,
    coeffs: Vec<Elem>,
}

impl PartialEq for LaurentOre {
    fn eq(&self, o: &Self) -> bool {
        same_ctx(&self.ctx, &o.ctx) && self.val == o.val && self.coeffs == o.coeffs
    }
}

impl Eq for LaurentOre {}

impl fmt::Debug for LaurentOre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentOre({self})")
    }
}

impl fmt::Display for LaurentOre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*Y^{}", self.val + j as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn check_kind(ctx: &Ctx) -> Result<()> {
    if ctx.kind() == Kind::Frobenius {
        Ok(())
    } else {
        Err(Error::WrongKind("Laurent elements exist only for θ ≠ id".into()))
    }
}

impl LaurentOre {
    pub fn new(ctx: &Ctx, val: i64, coeffs: Vec<Elem>) -> Result<Self> {
        check_kind(ctx)?;
        Ok(Self::normalized(ctx, val, coeffs))
    }

    fn normalized(ctx: &Ctx, mut val: i64, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead_zeros);
        val += lead_zeros as i64;
        if coeffs.is_empty() {
            val = 0;
        }
        LaurentOre { ctx: ctx.clone(), val, coeffs }
    }

    pub fn zero(ctx: &Ctx) -> Result<Self> {
        Self::new(ctx, 0, Vec::new())
    }

    /// b·Y^n
    pub fn monomial(ctx: &Ctx, b: Elem, n: i64) -> Result<Self> {
        Self::new(ctx, n, vec![b])
    }

    /// Y^n
    pub fn y_pow(ctx: &Ctx, n: i64) -> Result<Self> {
        Self::monomial(ctx, ctx.one(), n)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of Y^i.
    pub fn coeff(&self, i: i64) -> Elem {
        let j = i - self.val;
        if j < 0 {
            return self.ctx.zero();
        }
        self.coeffs.get(j as usize).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn top(&self) -> i64 {
        self.val + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn from_ore(f: &OrePoly) -> Result<Self> {
        let ctx = f.ctx();
        check_kind(ctx)?;
        Ok(Self::normalized(ctx, 0, f.expand_at(ctx.a())))
    }

    /// The polynomial, when no negative powers occur.
    pub fn to_ore(&self) -> Option<OrePoly> {
        if self.is_zero() {
            return Some(OrePoly::zero(&self.ctx));
        }
        if self.val < 0 {
            return None;
        }
        let mut v = vec![self.ctx.zero(); self.val as usize];
        v.extend(self.coeffs.iter().cloned());
        Some(OrePoly::from_expansion(&self.ctx, &v, self.ctx.a()))
    }

    /// g / Z^k with g a polynomial, using Y^s = Z.
    pub fn to_fraction(&self) -> OreFraction {
        let s = self.ctx.s() as i64;
        let k = if self.val < 0 { (-self.val + s - 1) / s } else { 0 };
        let shifted = LaurentOre { ctx: self.ctx.clone(), val: self.val + k * s, coeffs: self.coeffs.clone() };
        let num = shifted.to_ore().expect("nonnegative valuation");
        let den = CentralPoly::z(&self.ctx).pow(k as usize);
        OreFraction::new(num, den).expect("Z^k is a valid denominator")
    }

    /// Inverse of [`LaurentOre::to_fraction`] for denominators c·Z^k.
    pub fn from_fraction(f: &OreFraction) -> Result<Self> {
        let ctx = f.ctx();
        let den = f.den();
        let k = den.deg().unwrap();
        if den.coeffs()[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotApplicable("denominator is not a power of Z".into()));
        }
        let num = Self::from_ore(f.num())?;
        let inv = den.lead().unwrap().inv()?;
        Ok(Self::normalized(ctx, num.val - (k * ctx.s()) as i64, num.coeffs.iter().map(|c| c * &inv).collect()))
    }

    pub fn try_add(&self, o: &LaurentOre) -> Result<LaurentOre> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(Error::ContextMismatch);
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.val.min(o.val);
        let hi = self.top().max(o.top());
        let v = (lo..=hi).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Ok(Self::normalized(&self.ctx, lo, v))
    }

    pub fn neg(&self) -> LaurentOre {
        LaurentOre { ctx: self.ctx.clone(), val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn try_sub(&self, o: &LaurentOre) -> Result<LaurentOre> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &LaurentOre) -> Result<LaurentOre> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(Error::ContextMismatch);
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Self::normalized(&self.ctx, 0, Vec::new()));
        }
        let ctx = &self.ctx;
        let mut v = vec![ctx.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            for (j, c) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(b * &ctx.theta_pow(c, e));
            }
        }
        Ok(Self::normalized(ctx, self.val + o.val, v))
    }

    pub fn to_json(&self) -> Value {
        json!({"val": self.val, "coeffs": self.coeffs.iter().map(Elem::to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(ctx: &Ctx, v: &Value) -> Result<LaurentOre> {
        let val = v["val"].as_i64().ok_or_else(|| Error::Parse("missing \"val\"".into()))?;
        let arr = v["coeffs"].as_array().ok_or_else(|| Error::Parse("missing \"coeffs\"".into()))?;
        let z = ctx.zero();
        let cs = arr.iter().map(|x| Elem::from_json_like(&z, x)).collect::<Result<_>>()?;
        LaurentOre::new(ctx, val, cs)
    }
}

impl std::ops::Mul for &LaurentOre {
    type Output = LaurentOre;
    fn mul(self, o: &LaurentOre) -> LaurentOre {
        self.try_mul(o).expect("mul")
    }
}

impl std::ops::Add for &LaurentOre {
    type Output = LaurentOre;
    fn add(self, o: &LaurentOre) -> LaurentOre {
        self.try_add(o).expect("add")
    }
}
