//! The rational function field F_p(t).

use std::fmt;

use super::fp;
use crate::error::{Error, Result};

/// Reduced fraction `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    p: u64,
    num: Vec<u64>,
    den: Vec<u64>,
}

impl RatFunc {
    pub fn new(p: u64, num: Vec<u64>, den: Vec<u64>) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let num = fp::trimmed(num, p);
        let den = fp::trimmed(den, p);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(p, num, den))
    }

    fn reduce(p: u64, num: Vec<u64>, den: Vec<u64>) -> Self {
        if num.is_empty() {
            return RatFunc { p, num, den: vec![1] };
        }
        let g = fp::pgcd(&num, &den, p);
        let (mut n, mut d) = if g.len() > 1 {
            (fp::pdivrem(&num, &g, p).0, fp::pdivrem(&den, &g, p).0)
        } else {
            (num, den)
        };
        let l = fp::inv(*d.last().unwrap(), p).unwrap();
        if l != 1 {
            n = fp::pscale(&n, l, p);
            d = fp::pscale(&d, l, p);
        }
        RatFunc { p, num: n, den: d }
    }

    pub fn from_poly(p: u64, num: Vec<u64>) -> Self {
        RatFunc { p, num: fp::trimmed(num, p), den: vec![1] }
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        Self::from_poly(p, vec![fp::reduce_int(n, p)])
    }

    pub fn zero(p: u64) -> Self {
        RatFunc { p, num: Vec::new(), den: vec![1] }
    }

    pub fn one(p: u64) -> Self {
        RatFunc { p, num: vec![1], den: vec![1] }
    }

    /// The transcendental `t`.
    pub fn t(p: u64) -> Self {
        RatFunc { p, num: vec![0, 1], den: vec![1] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num(&self) -> &[u64] {
        &self.num
    }

    pub fn den(&self) -> &[u64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let p = self.p;
        if self.den == o.den {
            return Ok(Self::reduce(p, fp::padd(&self.num, &o.num, p), self.den.clone()));
        }
        let n = fp::padd(&fp::pmul(&self.num, &o.den, p), &fp::pmul(&o.num, &self.den, p), p);
        Ok(Self::reduce(p, n, fp::pmul(&self.den, &o.den, p)))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let p = self.p;
        Ok(Self::reduce(p, fp::pmul(&self.num, &o.num, p), fp::pmul(&self.den, &o.den, p)))
    }

    pub fn neg(&self) -> Self {
        RatFunc { p: self.p, num: fp::pneg(&self.num, self.p), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.p, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::one(self.p);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.try_mul(&b).unwrap();
            }
            b = b.try_mul(&b).unwrap();
            e >>= 1;
        }
        r
    }

    /// d/dt.
    pub fn derivative(&self) -> Self {
        let p = self.p;
        let n = fp::psub(
            &fp::pmul(&fp::pderiv(&self.num, p), &self.den, p),
            &fp::pmul(&self.num, &fp::pderiv(&self.den, p), p),
            p,
        );
        Self::reduce(p, n, fp::pmul(&self.den, &self.den, p))
    }

    /// True when both numerator and denominator are polynomials in `t^k`.
    pub fn is_in_powers(&self, k: usize) -> bool {
        fp::pdeflate(&self.num, k).is_some() && fp::pdeflate(&self.den, k).is_some()
    }

    /// Coordinates on the basis `1, t, ..., t^{p-1}` over F_p(t^p).
    pub fn coords_over_pth_powers(&self) -> Vec<RatFunc> {
        let p = self.p;
        let k = p as usize;
        // num/den = num*den^{p-1} / den^p, and den^p lies in F_p[t^p].
        let mut n = self.num.clone();
        for _ in 1..k {
            n = fp::pmul(&n, &self.den, p);
        }
        let dp = fp::pinflate(&self.den, k);
        (0..k)
            .map(|j| {
                let part: Vec<u64> = n.iter().skip(j).step_by(k).copied().collect();
                RatFunc::reduce(p, fp::pinflate(&fp::trimmed(part, p), k), dp.clone())
            })
            .collect()
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, a: &[u64]) -> fmt::Result {
    if a.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, "+")?;
        }
        first = false;
        match (i, c) {
            (0, _) => write!(f, "{c}")?,
            (1, 1) => write!(f, "t")?,
            (1, _) => write!(f, "{c}t")?,
            (_, 1) => write!(f, "t^{i}")?,
            _ => write!(f, "{c}t^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == [1] {
            return fmt_poly(f, &self.num);
        }
        write!(f, "(")?;
        fmt_poly(f, &self.num)?;
        write!(f, ")/(")?;
        fmt_poly(f, &self.den)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = RatFunc::new(2, vec![0, 1, 1], vec![0, 0, 1]).unwrap();
        assert_eq!(a.num(), &[1, 1]);
        assert_eq!(a.den(), &[0, 1]);
    }

    #[test]
    fn coords_recombine() {
        let p = 3;
        let a = RatFunc::new(p, vec![2, 1, 0, 1, 1], vec![1, 2, 1]).unwrap();
        let cs = a.coords_over_pth_powers();
        let mut acc = RatFunc::zero(p);
        for (j, c) in cs.iter().enumerate() {
            assert!(c.is_in_powers(3));
            acc = acc.try_add(&c.try_mul(&RatFunc::t(p).pow(j as u64)).unwrap()).unwrap();
        }
        assert_eq!(acc, a);
    }
}
