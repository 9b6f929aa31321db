use std::fmt;

use serde_json::{json, Value};

use super::{same_ctx, CentralPoly, OrePoly};
use crate::context::Ctx;
use crate::error::{Error, Result};

/// An Ore function num / den with den in Z⁺ and monic.
#[derive(Clone)]
pub struct OreFraction {
    num: OrePoly,
    den: CentralPoly,
}

impl fmt::Debug for OreFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OreFraction({self})")
    }
}

impl fmt::Display for OreFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.deg() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl PartialEq for OreFraction {
    fn eq(&self, o: &Self) -> bool {
        same_ctx(self.num.ctx(), o.num.ctx()) && &self.num * &o.den.to_ore() == &o.num * &self.den.to_ore()
    }
}

impl Eq for OreFraction {}

impl OreFraction {
    pub fn new(num: OrePoly, den: CentralPoly) -> Result<Self> {
        if !same_ctx(num.ctx(), den.ctx()) {
            return Err(Error::ContextMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !den.is_central() {
            return Err(Error::InvalidParameter("denominator must have coefficients in F".into()));
        }
        let l = den.lead().unwrap().inv()?;
        let num = num.scale_left(&l);
        let den = den.scale(&l);
        Ok(OreFraction { num, den }.cancel_z_powers())
    }

    pub fn from_poly(num: OrePoly) -> Self {
        let den = CentralPoly::one(num.ctx());
        OreFraction { num, den }
    }

    /// 1 / den
    pub fn inv_central(den: &CentralPoly) -> Result<Self> {
        Self::new(OrePoly::one(den.ctx()), den.clone())
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::from_poly(OrePoly::zero(ctx))
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &OrePoly {
        &self.num
    }

    pub fn den(&self) -> &CentralPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Removes common factors Z from numerator and denominator.
    fn cancel_z_powers(mut self) -> Self {
        let ctx = self.num.ctx().clone();
        let z = OrePoly::z(&ctx);
        while self.den.coeff(0).is_zero() && self.den.deg().is_some_and(|d| d > 0) {
            match self.num.divrem_right(&z) {
                Ok((q, r)) if r.is_zero() => {
                    self.num = q;
                    self.den = CentralPoly::new(&ctx, self.den.coeffs()[1..].to_vec());
                }
                _ => break,
            }
        }
        self
    }

    /// The polynomial, when the denominator divides the numerator.
    pub fn as_poly(&self) -> Option<OrePoly> {
        self.num.divrem_right(&self.den.to_ore()).ok().filter(|(_, r)| r.is_zero()).map(|(q, _)| q)
    }

    pub fn try_add(&self, o: &OreFraction) -> Result<OreFraction> {
        if self.den == o.den {
            return OreFraction::new(self.num.try_add(&o.num)?, self.den.clone());
        }
        let a = &self.num * &o.den.to_ore();
        let b = &o.num * &self.den.to_ore();
        OreFraction::new(a.try_add(&b)?, &self.den * &o.den)
    }

    pub fn neg(&self) -> OreFraction {
        OreFraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn try_sub(&self, o: &OreFraction) -> Result<OreFraction> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &OreFraction) -> Result<OreFraction> {
        OreFraction::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn mul_poly_left(&self, f: &OrePoly) -> OreFraction {
        OreFraction { num: f * &self.num, den: self.den.clone() }
    }

    pub fn mul_poly_right(&self, f: &OrePoly) -> OreFraction {
        OreFraction { num: &self.num * f, den: self.den.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

impl std::ops::Add for &OreFraction {
    type Output = OreFraction;
    fn add(self, o: &OreFraction) -> OreFraction {
        self.try_add(o).expect("add")
    }
}

impl std::ops::Sub for &OreFraction {
    type Output = OreFraction;
    fn sub(self, o: &OreFraction) -> OreFraction {
        self.try_sub(o).expect("sub")
    }
}

impl std::ops::Mul for &OreFraction {
    type Output = OreFraction;
    fn mul(self, o: &OreFraction) -> OreFraction {
        self.try_mul(o).expect("mul")
    }
}
