//! Finite fields F_p[x]/(m(x)).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::fp;
use crate::error::{Error, Result};

/// A finite field given by a prime and a monic irreducible modulus.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GfField {
    p: u64,
    modulus: Vec<u64>,
    var: char,
}

impl GfField {
    /// Validates primality of `p` and irreducibility of `modulus` (trial division).
    pub fn new(p: u64, modulus: Vec<u64>, var: char) -> Result<Arc<Self>> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = fp::trimmed(modulus, p);
        if modulus.len() < 2 || !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus);
        }
        let modulus = fp::pmonic(&modulus, p);
        Ok(Arc::new(GfField { p, modulus, var }))
    }

    /// F_p viewed as a degree-one extension.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(p, vec![0, 1], 'x')
    }

    /// The default field of order p^d: F_9 = F_3[i]/(i^2+1), F_4 = F_2[w]/(w^2+w+1),
    /// otherwise the lexicographically first monic irreducible.
    pub fn default_of_degree(p: u64, d: usize) -> Result<Arc<Self>> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match (p, d) {
            (_, 0) => Err(Error::InvalidParameter("extension degree 0".into())),
            (_, 1) => Self::prime(p),
            (3, 2) => Self::new(3, vec![1, 0, 1], 'i'),
            (2, 2) => Self::new(2, vec![1, 1, 1], 'w'),
            _ => {
                let m = fp::monic_of_degree(d, p)
                    .find(|m| fp::is_irreducible(m, p))
                    .expect("irreducibles exist in every degree");
                Self::new(p, m, 'x')
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }
}

/// Element of a [`GfField`], stored as a trimmed coefficient vector.
#[derive(Clone, Debug)]
pub struct Gf {
    field: Arc<GfField>,
    c: Vec<u64>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Gf {
    pub fn new(field: &Arc<GfField>, coeffs: Vec<u64>) -> Self {
        let p = field.p;
        let c = fp::prem(&fp::trimmed(coeffs, p), &field.modulus, p);
        Gf { field: field.clone(), c }
    }

    pub fn from_int(field: &Arc<GfField>, n: i64) -> Self {
        Self::new(field, vec![fp::reduce_int(n, field.p)])
    }

    pub fn zero(field: &Arc<GfField>) -> Self {
        Gf { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Arc<GfField>) -> Self {
        Self::new(field, vec![1])
    }

    pub fn gen(field: &Arc<GfField>) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &Arc<GfField> {
        &self.field
    }

    /// Ascending coefficients over F_p, padded to the field degree.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut v = self.c.clone();
        v.resize(self.field.degree(), 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &o.field) || self.field == o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Gf { field: self.field.clone(), c: fp::padd(&self.c, &o.c, self.field.p) })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Gf { field: self.field.clone(), c: fp::psub(&self.c, &o.c, self.field.p) })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let p = self.field.p;
        let c = fp::prem(&fp::pmul(&self.c, &o.c, p), &self.field.modulus, p);
        Ok(Gf { field: self.field.clone(), c })
    }

    pub fn neg(&self) -> Self {
        Gf { field: self.field.clone(), c: fp::pneg(&self.c, self.field.p) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        let (g, u, _) = fp::pxgcd(&self.c, &self.field.modulus, p);
        debug_assert_eq!(g, vec![1]);
        Ok(Gf { field: self.field.clone(), c: fp::prem(&u, &self.field.modulus, p) })
    }

    pub fn pow(&self, e: u64) -> Self {
        let p = self.field.p;
        Gf { field: self.field.clone(), c: fp::ppow_mod(&self.c, e, &self.field.modulus, p) }
    }

    /// Every element of the field, in counting order.
    pub fn all(field: &Arc<GfField>) -> Vec<Gf> {
        let d = field.degree();
        let p = field.p;
        let total = p.pow(d as u32);
        (0..total)
            .map(|mut n| {
                let mut v = Vec::with_capacity(d);
                for _ in 0..d {
                    v.push(n % p);
                    n /= p;
                }
                Gf::new(field, v)
            })
            .collect()
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let v = self.field.var;
        let mut first = true;
        for (i, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{v}")?,
                (1, _) => write!(f, "{c}{v}")?,
                (_, 1) => write!(f, "{v}^{i}")?,
                _ => write!(f, "{c}{v}^{i}")?,
            }
        }
        Ok(())
    }
}
