//! Exact scalar fields: finite fields and the rational function field F_p(t).
//!
//! [`Elem`] is the single scalar type used by the Ore machinery. Operator
//! overloads panic on mixed fields; the `try_*` methods report
//! [`Error::FieldMismatch`] instead.

pub mod fp;
pub mod gf;
pub mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

pub use gf::{Gf, GfField};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Gf(Gf),
    Rat(RatFunc),
}

impl Elem {
    pub fn characteristic(&self) -> u64 {
        match self {
            Elem::Gf(a) => a.field().p(),
            Elem::Rat(a) => a.p(),
        }
    }

    pub fn zero_like(&self) -> Elem {
        match self {
            Elem::Gf(a) => Elem::Gf(Gf::zero(a.field())),
            Elem::Rat(a) => Elem::Rat(RatFunc::zero(a.p())),
        }
    }

    pub fn one_like(&self) -> Elem {
        match self {
            Elem::Gf(a) => Elem::Gf(Gf::one(a.field())),
            Elem::Rat(a) => Elem::Rat(RatFunc::one(a.p())),
        }
    }

    pub fn int_like(&self, n: i64) -> Elem {
        match self {
            Elem::Gf(a) => Elem::Gf(Gf::from_int(a.field(), n)),
            Elem::Rat(a) => Elem::Rat(RatFunc::from_int(a.p(), n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Gf(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    pub fn try_add(&self, o: &Elem) -> Result<Elem> {
        match (self, o) {
            (Elem::Gf(a), Elem::Gf(b)) => a.try_add(b).map(Elem::Gf),
            (Elem::Rat(a), Elem::Rat(b)) => a.try_add(b).map(Elem::Rat),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_sub(&self, o: &Elem) -> Result<Elem> {
        match (self, o) {
            (Elem::Gf(a), Elem::Gf(b)) => a.try_sub(b).map(Elem::Gf),
            (Elem::Rat(a), Elem::Rat(b)) => a.try_sub(b).map(Elem::Rat),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_mul(&self, o: &Elem) -> Result<Elem> {
        match (self, o) {
            (Elem::Gf(a), Elem::Gf(b)) => a.try_mul(b).map(Elem::Gf),
            (Elem::Rat(a), Elem::Rat(b)) => a.try_mul(b).map(Elem::Rat),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_div(&self, o: &Elem) -> Result<Elem> {
        if matches!((self, o), (Elem::Gf(_), Elem::Rat(_)) | (Elem::Rat(_), Elem::Gf(_))) {
            return Err(Error::FieldMismatch);
        }
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Elem> {
        match self {
            Elem::Gf(a) => a.inv().map(Elem::Gf),
            Elem::Rat(a) => a.inv().map(Elem::Rat),
        }
    }

    pub fn pow(&self, e: u64) -> Elem {
        match self {
            Elem::Gf(a) => Elem::Gf(a.pow(e)),
            Elem::Rat(a) => Elem::Rat(a.pow(e)),
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn as_gf(&self) -> Option<&Gf> {
        match self {
            Elem::Gf(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&RatFunc> {
        match self {
            Elem::Rat(a) => Some(a),
            _ => None,
        }
    }

    /// Every element, when the field is finite.
    pub fn all_like(&self) -> Result<Vec<Elem>> {
        match self {
            Elem::Gf(a) => Ok(Gf::all(a.field()).into_iter().map(Elem::Gf).collect()),
            Elem::Rat(_) => Err(Error::NotAFiniteField),
        }
    }

    /// Field cardinality, `None` for F_p(t).
    pub fn field_order(&self) -> Option<u128> {
        match self {
            Elem::Gf(a) => Some(a.field().order()),
            Elem::Rat(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Elem::Gf(a) if a.field().degree() == 1 => json!(a.coeffs()[0]),
            Elem::Gf(a) => json!(a.coeffs()),
            Elem::Rat(a) => json!({"num": a.num(), "den": a.den()}),
        }
    }

    /// Decodes an element of the same field as `template`.
    pub fn from_json_like(template: &Elem, v: &Value) -> Result<Elem> {
        let ints = |v: &Value| -> Result<Vec<i64>> {
            match v {
                Value::Array(xs) => xs
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("not an integer: {x}"))))
                    .collect(),
                Value::Number(n) => Ok(vec![n.as_i64().ok_or_else(|| Error::Parse(n.to_string()))?]),
                _ => Err(Error::Parse(format!("expected integer list: {v}"))),
            }
        };
        match template {
            Elem::Gf(a) => {
                let f = a.field();
                let p = f.p();
                let cs = ints(v)?;
                if cs.len() > f.degree() {
                    return Err(Error::Parse(format!("too many coefficients: {v}")));
                }
                Ok(Elem::Gf(Gf::new(f, cs.iter().map(|&c| fp::reduce_int(c, p)).collect())))
            }
            Elem::Rat(a) => {
                let p = a.p();
                let (num, den) = match v {
                    Value::Object(m) => {
                        let num = ints(m.get("num").ok_or_else(|| Error::Parse("missing num".into()))?)?;
                        let den = match m.get("den") {
                            Some(d) => ints(d)?,
                            None => vec![1],
                        };
                        (num, den)
                    }
                    other => (ints(other)?, vec![1]),
                };
                let r = |xs: Vec<i64>| xs.iter().map(|&c| fp::reduce_int(c, p)).collect();
                Ok(Elem::Rat(RatFunc::new(p, r(num), r(den))?))
            }
        }
    }

    /// Command-line syntax: `"1,2"` is `1+2i` in F_9, `"0,1/1"` is `t` in F_p(t).
    pub fn parse_like(template: &Elem, s: &str) -> Result<Elem> {
        let s = s.trim();
        let ints = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{x}: {e}"))))
                .collect()
        };
        match template {
            Elem::Gf(_) => Elem::from_json_like(template, &json!(ints(s)?)),
            Elem::Rat(_) => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (ints(n)?, ints(d)?),
                    None => (ints(s)?, vec![1]),
                };
                Elem::from_json_like(template, &json!({"num": n, "den": d}))
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Gf(a) => a.fmt(f),
            Elem::Rat(a) => a.fmt(f),
        }
    }
}

impl From<Gf> for Elem {
    fn from(a: Gf) -> Self {
        Elem::Gf(a)
    }
}

impl From<RatFunc> for Elem {
    fn from(a: RatFunc) -> Self {
        Elem::Rat(a)
    }
}

/// Shorthand for F_q elements from integer coefficients.
pub fn gf(field: &Arc<GfField>, coeffs: &[i64]) -> Elem {
    let p = field.p();
    Elem::Gf(Gf::new(field, coeffs.iter().map(|&c| fp::reduce_int(c, p)).collect()))
}

/// Shorthand for F_p(t) elements from integer coefficients.
pub fn rat(p: u64, num: &[i64], den: &[i64]) -> Elem {
    let r = |xs: &[i64]| xs.iter().map(|&c| fp::reduce_int(c, p)).collect();
    Elem::Rat(RatFunc::new(p, r(num), r(den)).expect("nonzero denominator"))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                self.$f(o).unwrap_or_else(|e| panic!("{}: {e}", stringify!($m)))
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$m(&o)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                (&self).$m(o)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Gf(a) => Elem::Gf(a.neg()),
            Elem::Rat(a) => Elem::Rat(a.neg()),
        }
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<GfField> {
        GfField::default_of_degree(3, 2).unwrap()
    }

    // (a + b i)(c + d i) = (ac - bd) + (ad + bc) i, reduced mod 3
    fn f9_oracle_mul(x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let re = (x.0 * y.0 - x.1 * y.1).rem_euclid(3);
        let im = (x.0 * y.1 + x.1 * y.0).rem_euclid(3);
        (re, im)
    }

    #[test]
    fn f3_division() {
        let f3 = GfField::prime(3).unwrap();
        assert_eq!(gf(&f3, &[1]).try_div(&gf(&f3, &[2])).unwrap(), gf(&f3, &[2]));
    }

    #[test]
    fn f9_products_match_oracle() {
        let f = f9();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let (re, im) = f9_oracle_mul((a, b), (c, d));
                        assert_eq!(gf(&f, &[a, b]) * gf(&f, &[c, d]), gf(&f, &[re, im]));
                    }
                }
            }
        }
        assert_eq!(gf(&f, &[1, 1]) * gf(&f, &[1, -1]), gf(&f, &[2]));
    }

    #[test]
    fn f9_frobenius_of_i() {
        let f = f9();
        assert_eq!(gf(&f, &[0, 1]).pow(3), gf(&f, &[0, 2]));
    }

    #[test]
    fn ratfunc_derivatives() {
        let inv_t = rat(2, &[1], &[0, 1]);
        assert_eq!(Elem::Rat(inv_t.as_rat().unwrap().derivative()), rat(2, &[1], &[0, 0, 1]));
        assert!(rat(2, &[0, 0, 1], &[1]).as_rat().unwrap().derivative().is_zero());
    }

    #[test]
    fn mismatch_and_zero_division() {
        let f = f9();
        let a = gf(&f, &[1]);
        let b = rat(3, &[1], &[1]);
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.try_div(&a.zero_like()), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_and_cli_syntax() {
        let f = f9();
        let t = gf(&f, &[0]);
        let a = Elem::parse_like(&t, "1,2").unwrap();
        assert_eq!(a, gf(&f, &[1, 2]));
        assert_eq!(Elem::from_json_like(&t, &a.to_json()).unwrap(), a);
        let r = rat(2, &[0], &[1]);
        let tt = Elem::parse_like(&r, "0,1/1").unwrap();
        assert_eq!(tt, rat(2, &[0, 1], &[1]));
        assert_eq!(Elem::from_json_like(&r, &tt.to_json()).unwrap(), tt);
    }
}
