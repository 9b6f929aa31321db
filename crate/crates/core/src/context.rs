//! The ambient data (K, F, θ, δ, Z(X), τ, υ) of an Ore ring.
//!
//! Two instantiations are supported:
//!
//! * Frobenius kind: K = F_{q^s}, F = F_q, θ(x) = x^q, δ = a(θ - id).
//!   The centre is F[(X+a)^s].
//! * Differential kind: K = F_p(t), F = F_p(t^p), θ = id, δ = a d/dt.
//!   The centre is F[Z(X)] with Z(X) = X^p + z_0 X.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fields::{fp, Elem, Gf, GfField, RatFunc};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Frobenius,
    Differential,
}

/// Shared handle used by every Ore object.
pub type Ctx = Arc<OreContext>;

#[derive(Debug)]
pub struct OreContext {
    kind: Kind,
    p: u64,
    e: usize,
    s: usize,
    q: u64,
    /// θ-derivation coefficient: δ = a·δ₀ (Frobenius) or δ = a·d/dt (differential).
    a: Elem,
    zero: Elem,
    basis: Vec<Elem>,
    /// Linearized coefficients z_0, ..., z_r = 1 (differential kind only).
    z_lin: Vec<Elem>,
    /// Z(X) expanded in powers of X.
    z_coeffs: Vec<Elem>,
    tau_unit: Elem,
    gram: Matrix,
    gram_inv: Matrix,
    /// Inverse Gram matrix of the field trace form, for coordinates when e > 1.
    trace_gram_inv: Option<Matrix>,
}

/// JSON descriptor of a context; round-trips through [`OreContext::from_descriptor`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextDescriptor {
    pub kind: Kind,
    pub p: u64,
    pub e: usize,
    pub s: usize,
    pub twist: Option<Value>,
    pub a: Option<Value>,
}

pub fn make_frobenius_context(p: u64, e: usize, s: usize, twist: Option<&Elem>) -> Result<Ctx> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("e must be at least 1".into()));
    }
    if s < 2 {
        return Err(Error::SIsOne);
    }
    let k = GfField::default_of_degree(p, e * s)?;
    let zero = Elem::Gf(Gf::zero(&k));
    let a = match twist {
        None => zero.clone(),
        Some(t) => Elem::from_json_like(&zero, &t.to_json())?,
    };
    let gen = Elem::Gf(Gf::gen(&k));
    let basis: Vec<Elem> = (0..s).map(|i| gen.pow(i as u64)).collect();
    let mut ctx = OreContext {
        kind: Kind::Frobenius,
        p,
        e,
        s,
        q: p.pow(e as u32),
        a,
        zero: zero.clone(),
        basis,
        z_lin: Vec::new(),
        z_coeffs: Vec::new(),
        tau_unit: zero.clone(),
        gram: Matrix::zeros(0, 0, &zero),
        gram_inv: Matrix::zeros(0, 0, &zero),
        trace_gram_inv: None,
    };
    if e > 1 {
        let g = Matrix::from_rows(
            (0..s)
                .map(|i| (0..s).map(|j| ctx.field_trace(&(&ctx.basis[i] * &ctx.basis[j]))).collect())
                .collect(),
            s,
            &zero,
        );
        ctx.trace_gram_inv = Some(g.inverse()?);
    }
    // Z(X) = (X + a)^s
    let lin = vec![ctx.a.clone(), zero.one_like()];
    let mut z = vec![zero.one_like()];
    for _ in 0..s {
        z = ctx.mul_coeffs(&z, &lin);
    }
    ctx.z_coeffs = z;
    ctx.finish()
}

pub fn make_differential_context(p: u64, a: &Elem) -> Result<Ctx> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let zero = Elem::Rat(RatFunc::zero(p));
    let a = Elem::from_json_like(&zero, &a.to_json())?;
    if a.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    let t = Elem::Rat(RatFunc::t(p));
    let basis: Vec<Elem> = (0..p).map(|i| t.pow(i)).collect();
    let mut ctx = OreContext {
        kind: Kind::Differential,
        p,
        e: 1,
        s: p as usize,
        q: 1,
        a,
        zero: zero.clone(),
        basis,
        z_lin: Vec::new(),
        z_coeffs: Vec::new(),
        tau_unit: zero.clone(),
        gram: Matrix::zeros(0, 0, &zero),
        gram_inv: Matrix::zeros(0, 0, &zero),
        trace_gram_inv: None,
    };
    let z0 = ctx.linearized_annihilator()?;
    let mut zc = vec![zero.clone(); p as usize + 1];
    zc[1] = z0.clone();
    zc[p as usize] = zero.one_like();
    ctx.z_lin = vec![z0, zero.one_like()];
    ctx.z_coeffs = zc;
    ctx.finish()
}

impl OreContext {
    fn finish(mut self) -> Result<Ctx> {
        let s = self.s;
        self.tau_unit = self
            .basis
            .iter()
            .find_map(|b| {
                let t = self.tau(b);
                (!t.is_zero()).then(|| b / &t)
            })
            .ok_or_else(|| Error::Verification("tau vanishes on the basis".into()))?;
        let gram = Matrix::from_rows(
            (0..s)
                .map(|i| (0..s).map(|j| self.tau(&(&self.basis[i] * &self.basis[j]))).collect())
                .collect(),
            s,
            &self.zero,
        );
        self.gram_inv = gram.inverse()?;
        self.gram = gram;
        Ok(Arc::new(self))
    }

    /// Solves δ^p + z_0 δ = 0 over F on the matrices of δ.
    fn linearized_annihilator(&self) -> Result<Elem> {
        let d = self.delta_matrix();
        let mut dp = Matrix::identity(self.s, &self.zero);
        for _ in 0..self.p {
            dp = dp.mul(&d)?;
        }
        let col = Matrix::from_cols(vec![d.entries().to_vec()], self.s * self.s, &self.zero);
        let rhs: Vec<Elem> = dp.entries().iter().map(|x| -x).collect();
        let sol = col.solve(&rhs).ok_or(Error::NoLinearizedAnnihilator)?;
        let z0 = sol[0].clone();
        if !self.is_in_f(&z0) {
            return Err(Error::NoLinearizedAnnihilator);
        }
        Ok(z0)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Degree [K:F] = deg Z(X).
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The twist a of the Frobenius kind (δ = a·δ₀), or the coefficient a of δ = a·d/dt.
    pub fn a(&self) -> &Elem {
        &self.a
    }

    /// Twist of the centre generator: Z(X) = (X + twist)^s in the Frobenius kind, 0 otherwise.
    pub fn twist(&self) -> Elem {
        match self.kind {
            Kind::Frobenius => self.a.clone(),
            Kind::Differential => self.zero.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        self.zero.clone()
    }

    pub fn one(&self) -> Elem {
        self.zero.one_like()
    }

    pub fn int(&self, n: i64) -> Elem {
        self.zero.int_like(n)
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn z_coeffs(&self) -> &[Elem] {
        &self.z_coeffs
    }

    /// z_0, ..., z_r with z_r = 1; empty in the Frobenius kind.
    pub fn z_linearized(&self) -> &[Elem] {
        &self.z_lin
    }

    pub fn tau_unit(&self) -> &Elem {
        &self.tau_unit
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn theta(&self, x: &Elem) -> Elem {
        match self.kind {
            Kind::Frobenius => x.pow(self.q),
            Kind::Differential => x.clone(),
        }
    }

    /// θ^i for any integer i.
    pub fn theta_pow(&self, x: &Elem, i: i64) -> Elem {
        match self.kind {
            Kind::Frobenius => {
                let k = i.rem_euclid(self.s as i64) as u32;
                x.pow(self.q.pow(k))
            }
            Kind::Differential => x.clone(),
        }
    }

    pub fn theta_inv(&self, x: &Elem) -> Elem {
        self.theta_pow(x, -1)
    }

    pub fn delta(&self, x: &Elem) -> Elem {
        match self.kind {
            Kind::Frobenius => {
                if self.a.is_zero() {
                    self.zero.clone()
                } else {
                    &self.a * &(self.theta(x) - x)
                }
            }
            Kind::Differential => &self.a * &Elem::Rat(x.as_rat().expect("F_p(t) element").derivative()),
        }
    }

    pub fn delta_pow(&self, x: &Elem, n: u64) -> Elem {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.delta(&y);
        }
        y
    }

    /// Tr_{K/F} = sum of the θ^i, i < s (Frobenius kind).
    pub fn field_trace(&self, x: &Elem) -> Elem {
        let mut acc = self.zero.clone();
        let mut y = x.clone();
        for _ in 0..self.s {
            acc = &acc + &y;
            y = self.theta(&y);
        }
        acc
    }

    /// N_{K/F} = product of the θ^i, i < s (Frobenius kind).
    pub fn field_norm(&self, x: &Elem) -> Elem {
        let mut acc = self.one();
        let mut y = x.clone();
        for _ in 0..self.s {
            acc = &acc * &y;
            y = self.theta(&y);
        }
        acc
    }

    /// Coordinates in F on the fixed basis.
    pub fn coords(&self, x: &Elem) -> Vec<Elem> {
        match (self.kind, x) {
            (Kind::Frobenius, Elem::Gf(g)) => match &self.trace_gram_inv {
                None => g.coeffs().into_iter().map(|c| self.int(c as i64)).collect(),
                Some(ginv) => {
                    let t: Vec<Elem> = self.basis.iter().map(|b| self.field_trace(&(x * b))).collect();
                    ginv.mul_vec(&t)
                }
            },
            (Kind::Differential, Elem::Rat(r)) => r.coords_over_pth_powers().into_iter().map(Elem::Rat).collect(),
            _ => panic!("element from a foreign field"),
        }
    }

    pub fn from_coords(&self, v: &[Elem]) -> Elem {
        assert_eq!(v.len(), self.s);
        let mut acc = self.zero.clone();
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &(c * b);
            }
        }
        acc
    }

    /// Membership in F (θ-fixed and δ-constant).
    pub fn is_in_f(&self, x: &Elem) -> bool {
        match (self.kind, x) {
            (Kind::Frobenius, _) => x.pow(self.q) == *x,
            (Kind::Differential, Elem::Rat(r)) => r.is_in_powers(self.p as usize),
            _ => false,
        }
    }

    /// Matrix over F of an F-linear map K → K, columns are images of the basis.
    pub fn matrix_of(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        let cols = self.basis.iter().map(|b| self.coords(&f(b))).collect();
        Matrix::from_cols(cols, self.s, &self.zero)
    }

    pub fn apply_matrix(&self, m: &Matrix, x: &Elem) -> Elem {
        self.from_coords(&m.mul_vec(&self.coords(x)))
    }

    pub fn mult_matrix(&self, a: &Elem) -> Matrix {
        self.matrix_of(|x| a * x)
    }

    pub fn theta_matrix(&self) -> Matrix {
        self.matrix_of(|x| self.theta(x))
    }

    pub fn delta_matrix(&self) -> Matrix {
        self.matrix_of(|x| self.delta(x))
    }

    /// τ: field trace (θ ≠ id) or Σ z_i δ^{p^i - 1} (θ = id).
    pub fn tau(&self, x: &Elem) -> Elem {
        match self.kind {
            Kind::Frobenius => self.field_trace(x),
            Kind::Differential => {
                let mut acc = self.zero.clone();
                for (i, z) in self.z_lin.iter().enumerate() {
                    if z.is_zero() {
                        continue;
                    }
                    let n = self.p.pow(i as u32) - 1;
                    acc = &acc + &(z * &self.delta_pow(x, n));
                }
                acc
            }
        }
    }

    /// υ(c) = Z(X) mod_right (X - c), in closed form.
    pub fn upsilon(&self, c: &Elem) -> Elem {
        match self.kind {
            Kind::Frobenius => self.field_norm(&(c + &self.a)),
            Kind::Differential => {
                let r = self.z_lin.len() - 1;
                let mut acc = self.zero.clone();
                for i in 0..=r {
                    for j in 0..=i {
                        let inner = &self.z_lin[i] * &self.delta_pow(c, self.p.pow(j as u32) - 1);
                        acc = &acc + &inner.pow(self.p.pow((i - j) as u32));
                    }
                }
                acc
            }
        }
    }

    /// True iff δ + cθ is a scalar multiple of the identity.
    pub fn is_ramified(&self, c: &Elem) -> bool {
        match self.kind {
            Kind::Frobenius => (c + &self.a).is_zero(),
            Kind::Differential => false,
        }
    }

    pub fn check_unramified(&self, c: &Elem) -> Result<()> {
        if self.is_ramified(c) {
            Err(Error::RamifiedPoint(c.to_string()))
        } else {
            Ok(())
        }
    }

    /// F-subspace of K spanned by the given elements.
    pub fn span(&self, elems: &[Elem]) -> Subspace {
        let vs: Vec<Vec<Elem>> = elems.iter().map(|x| self.coords(x)).collect();
        Subspace::span(&vs, self.s, &self.zero)
    }

    pub fn subspace_elems(&self, v: &Subspace) -> Vec<Elem> {
        v.basis().iter().map(|c| self.from_coords(c)).collect()
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.s, &self.zero)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.s, &self.zero)
    }

    /// Coefficients of the product of two coefficient vectors in K[X;θ,δ].
    pub(crate) fn mul_coeffs(&self, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero.clone(); f.len() + g.len() - 1];
        // h = X^i g, updated with X·(b X^j) = θ(b) X^{j+1} + δ(b) X^j
        let mut h: Vec<Elem> = g.to_vec();
        for (i, a) in f.iter().enumerate() {
            if i > 0 {
                let mut nh = vec![self.zero.clone(); h.len() + 1];
                for (j, b) in h.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    nh[j + 1] = &nh[j + 1] + &self.theta(b);
                    let d = self.delta(b);
                    if !d.is_zero() {
                        nh[j] = &nh[j] + &d;
                    }
                }
                h = nh;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in h.iter().enumerate() {
                if !b.is_zero() {
                    out[j] = &out[j] + &(a * b);
                }
            }
        }
        while out.last().is_some_and(Elem::is_zero) {
            out.pop();
        }
        out
    }

    pub fn descriptor(&self) -> ContextDescriptor {
        match self.kind {
            Kind::Frobenius => ContextDescriptor {
                kind: self.kind,
                p: self.p,
                e: self.e,
                s: self.s,
                twist: Some(self.a.to_json()),
                a: None,
            },
            Kind::Differential => ContextDescriptor {
                kind: self.kind,
                p: self.p,
                e: 1,
                s: self.s,
                twist: None,
                a: Some(self.a.to_json()),
            },
        }
    }

    pub fn from_descriptor(d: &ContextDescriptor) -> Result<Ctx> {
        match d.kind {
            Kind::Frobenius => {
                let twist = match &d.twist {
                    Some(v) if !v.is_null() => {
                        let k = GfField::default_of_degree(d.p, d.e * d.s)?;
                        Some(Elem::from_json_like(&Elem::Gf(Gf::zero(&k)), v)?)
                    }
                    _ => None,
                };
                make_frobenius_context(d.p, d.e, d.s, twist.as_ref())
            }
            Kind::Differential => {
                if d.s != d.p as usize || d.e != 1 {
                    return Err(Error::InvalidParameter("differential contexts have e = 1 and s = p".into()));
                }
                let template = Elem::Rat(RatFunc::zero(d.p));
                let a = match &d.a {
                    Some(v) if !v.is_null() => Elem::from_json_like(&template, v)?,
                    _ => template.one_like(),
                };
                make_differential_context(d.p, &a)
            }
        }
    }

    /// Random element of K. Rational functions are kept to small degrees.
    pub fn random_k<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.zero {
            Elem::Gf(g) => {
                let f = g.field();
                let cs = (0..f.degree()).map(|_| rng.gen_range(0..self.p)).collect();
                Elem::Gf(Gf::new(f, cs))
            }
            Elem::Rat(_) => {
                let p = self.p;
                let nd = rng.gen_range(0..=2usize);
                let num: Vec<u64> = (0..=nd).map(|_| rng.gen_range(0..p)).collect();
                let den: Vec<u64> = if rng.gen_bool(0.3) { vec![rng.gen_range(0..p), 1] } else { vec![1] };
                Elem::Rat(RatFunc::new(p, num, den).expect("monic denominator"))
            }
        }
    }

    pub fn random_nonzero_k<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random_k(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Random element of F.
    pub fn random_f<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self.kind {
            Kind::Frobenius if self.e == 1 => self.int(rng.gen_range(0..self.p) as i64),
            Kind::Frobenius => self.field_trace(&self.random_k(rng)),
            Kind::Differential => {
                let p = self.p;
                let k = p as usize;
                let nd = rng.gen_range(0..=1usize);
                let num: Vec<u64> = (0..=nd).map(|_| rng.gen_range(0..p)).collect();
                let den: Vec<u64> = if rng.gen_bool(0.2) { vec![rng.gen_range(1..p), 1] } else { vec![1] };
                Elem::Rat(RatFunc::new(p, fp::pinflate(&num, k), fp::pinflate(&den, k)).expect("nonzero"))
            }
        }
    }

    pub fn random_nonzero_f<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random_f(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// Standard contexts used throughout docs and tests.
pub mod standard {
    use super::*;
    use crate::fields::rat;

    /// F_9 over F_3, θ = cube, δ = 0.
    pub fn ctx_a() -> Ctx {
        make_frobenius_context(3, 1, 2, None).expect("valid parameters")
    }

    /// F_2(t) over F_2(t^2), δ = d/dt.
    pub fn ctx_b() -> Ctx {
        make_differential_context(2, &rat(2, &[1], &[1])).expect("valid parameters")
    }

    /// F_3(t) over F_3(t^3), δ = d/dt.
    pub fn ctx_c() -> Ctx {
        make_differential_context(3, &rat(3, &[1], &[1])).expect("valid parameters")
    }

    /// F_9 over F_3 with δ = i·δ₀.
    pub fn ctx_d() -> Ctx {
        let f9 = GfField::default_of_degree(3, 2).expect("F_9");
        let i = crate::fields::gf(&f9, &[0, 1]);
        make_frobenius_context(3, 1, 2, Some(&i)).expect("valid parameters")
    }

    /// F_2(t) with δ = t d/dt, so Z(X) = X^2 + X.
    pub fn ctx_t() -> Ctx {
        make_differential_context(2, &rat(2, &[0, 1], &[1])).expect("valid parameters")
    }

    pub fn all() -> Vec<(&'static str, Ctx)> {
        vec![("CTX-A", ctx_a()), ("CTX-B", ctx_b()), ("CTX-C", ctx_c()), ("CTX-D", ctx_d())]
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::fields::{gf, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn i9(c: &Ctx, a: i64, b: i64) -> Elem {
        gf(c.zero().as_gf().unwrap().field(), &[a, b])
    }

    #[test]
    fn centre_generators() {
        let a = ctx_a();
        assert_eq!(a.z_coeffs(), &[a.zero(), a.zero(), a.one()]);
        let b = ctx_b();
        assert_eq!(b.z_linearized(), &[b.zero(), b.one()]);
        let t = ctx_t();
        assert_eq!(t.z_coeffs(), &[t.zero(), t.one(), t.one()]);
        let c = ctx_c();
        assert_eq!(c.z_coeffs().len(), 4);
        assert!(c.z_coeffs()[1].is_zero());
        let d = ctx_d();
        // (X+i)^2 = X^2 + (i + θ(i)) X + ... with the twisted rule
        assert_eq!(d.z_coeffs().len(), 3);
    }

    #[test]
    fn s_one_rejected() {
        assert_eq!(make_frobenius_context(2, 1, 1, None).unwrap_err(), Error::SIsOne);
        assert_eq!(make_differential_context(2, &rat(2, &[], &[1])).unwrap_err(), Error::ZeroDerivation);
    }

    #[test]
    fn tau_and_upsilon_values() {
        let b = ctx_b();
        let t = rat(2, &[0, 1], &[1]);
        assert_eq!(b.tau(&t), b.one());
        assert!(b.tau(&b.one()).is_zero());
        assert_eq!(b.tau_unit(), &t);
        assert_eq!(b.upsilon(&t), rat(2, &[1, 0, 1], &[1]));
        let a = ctx_a();
        assert!(a.tau(&i9(&a, 0, 1)).is_zero());
        assert_eq!(a.upsilon(&i9(&a, 1, 1)), a.int(2));
        assert!(a.upsilon(&a.zero()).is_zero());
    }

    #[test]
    fn ramification() {
        let a = ctx_a();
        assert!(a.is_ramified(&a.zero()));
        assert!(!a.is_ramified(&a.one()));
        assert!(!ctx_b().is_ramified(&ctx_b().zero()));
        let d = ctx_d();
        assert!(d.is_ramified(&i9(&d, 0, 2)));
    }

    #[test]
    fn gram_matrices() {
        let b = ctx_b();
        let (z, o) = (b.zero(), b.one());
        assert_eq!(b.gram(), &Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]], 2, &b.zero()));
        let a = ctx_a();
        let g = a.gram();
        assert_eq!((g.get(0, 0), g.get(0, 1), g.get(1, 1)), (&a.int(2), &a.zero(), &a.one()));
    }

    #[test]
    fn theta_derivation_rule_and_f_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (_, c) in all().into_iter().chain([("t", ctx_t())]) {
            for _ in 0..50 {
                let x = c.random_k(&mut rng);
                let y = c.random_k(&mut rng);
                let lhs = c.delta(&(&x * &y));
                let rhs = &c.theta(&x) * &c.delta(&y) + &c.delta(&x) * &y;
                assert_eq!(lhs, rhs);
                assert_eq!(c.from_coords(&c.coords(&x)), x);
                let f = c.random_f(&mut rng);
                assert!(c.is_in_f(&f));
                assert_eq!(c.theta(&f), f);
                assert!(c.delta(&f).is_zero());
                assert!(c.is_in_f(&c.tau(&x)));
                assert!(c.is_in_f(&c.upsilon(&x)));
            }
        }
    }

    #[test]
    fn tau_kernel_is_image_of_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for c in [ctx_b(), ctx_c(), ctx_t()] {
            for _ in 0..30 {
                let x = c.random_k(&mut rng);
                assert!(c.tau(&c.delta(&x)).is_zero());
            }
            let tau_row = c.matrix_of(|x| c.tau(x));
            assert_eq!(tau_row.rank(), 1);
            let im_delta = Subspace::span(&c.delta_matrix().col_vecs(), c.s(), &c.zero());
            let ker_tau = Subspace::span(&tau_row.kernel(), c.s(), &c.zero());
            assert_eq!(im_delta, ker_tau);
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = ctx_a();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = a.random_k(&mut rng);
            let y = a.random_k(&mut rng);
            assert_eq!(a.upsilon(&(&x * &y)), &a.upsilon(&x) * &a.upsilon(&y));
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for (_, c) in all() {
            let d = c.descriptor();
            let json = serde_json::to_string(&d).unwrap();
            let back: ContextDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(OreContext::from_descriptor(&back).unwrap().descriptor(), d);
        }
    }

    #[test]
    fn tower_coordinates() {
        // F_16 over F_4
        let c = make_frobenius_context(2, 2, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = c.random_k(&mut rng);
            let v = c.coords(&x);
            assert!(v.iter().all(|y| c.is_in_f(y)));
            assert_eq!(c.from_coords(&v), x);
        }
    }
}
