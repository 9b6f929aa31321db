//! Taylor expansions at F-rational central points, orders, principal parts and skew residues.

use std::fmt;

use crate::context::{Ctx, Kind};
use crate::error::{Error, Result};
use crate::evalmap::{complement_cofactor, multi_annihilator};
use crate::fields::Elem;
use crate::linalg::Subspace;
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};
use crate::trd::{comm_residue, split_off, split_roots, trd, trd_fraction};

/// N = Z(X) - z as an element of A⁺.
pub fn n_at(ctx: &Ctx, z: &Elem) -> OrePoly {
    CentralPoly::linear(ctx, z).to_ore()
}

fn n_pow(ctx: &Ctx, z: &Elem, m: usize) -> OrePoly {
    CentralPoly::linear(ctx, z).pow(m).to_ore()
}

/// f(y) reduced modulo a central element.
pub fn compose_mod(f: &OrePoly, y: &OrePoly, modulus: &OrePoly) -> OrePoly {
    let ctx = f.ctx();
    let mut h = OrePoly::zero(ctx);
    for a in f.coeffs().iter().rev() {
        h = (&(&h * y) + &OrePoly::constant(ctx, a.clone())).rem_right(modulus).expect("nonzero modulus");
    }
    h
}

/// An element Y with N(Y) ≡ 0 mod N^M and Y ≡ X mod N.
#[derive(Clone, Debug)]
pub struct AdmissibleIso {
    ctx: Ctx,
    z: Elem,
    m: usize,
    y: OrePoly,
    modulus: OrePoly,
}

impl AdmissibleIso {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn z(&self) -> &Elem {
        &self.z
    }

    pub fn precision(&self) -> usize {
        self.m
    }

    /// The image of X.
    pub fn y(&self) -> &OrePoly {
        &self.y
    }

    /// N^M as an element of A⁺.
    pub fn modulus(&self) -> &OrePoly {
        &self.modulus
    }

    /// g(Y) mod N^M.
    pub fn substitute(&self, g: &OrePoly) -> OrePoly {
        compose_mod(g, &self.y, &self.modulus)
    }

    /// Raw check of N(Y) ≡ 0 mod N^M, Y ≡ X mod N and Y·b = θ(b)·Y + δ(b).
    pub fn verify(&self) -> Result<()> {
        let ctx = &self.ctx;
        let zy = self.substitute(&OrePoly::z(ctx));
        let ny = (&zy - &OrePoly::constant(ctx, self.z.clone())).rem_right(&self.modulus)?;
        if !ny.is_zero() {
            return Err(Error::Verification("N(Y) is not divisible by N^M".into()));
        }
        let n = n_at(ctx, &self.z);
        if !(&self.y - &OrePoly::x(ctx)).rem_right(&n)?.is_zero() {
            return Err(Error::Verification("Y differs from X modulo N".into()));
        }
        for b in ctx.basis() {
            let lhs = (&self.y * &OrePoly::constant(ctx, b.clone())).rem_right(&self.modulus)?;
            let rhs = &(&OrePoly::constant(ctx, ctx.theta(b)) * &self.y) + &OrePoly::constant(ctx, ctx.delta(b));
            if lhs != rhs.rem_right(&self.modulus)? {
                return Err(Error::Verification("Y does not satisfy the commutation rule".into()));
            }
        }
        Ok(())
    }
}

/// Successive approximation with the context's τ-unit.
pub fn build_admissible(ctx: &Ctx, z: &Elem, m: usize) -> Result<AdmissibleIso> {
    build_admissible_with(ctx, z, m, ctx.tau_unit())
}

/// Successive approximation with any `unit` satisfying τ(unit) = 1.
pub fn build_admissible_with(ctx: &Ctx, z: &Elem, m: usize, unit: &Elem) -> Result<AdmissibleIso> {
    if m < 1 {
        return Err(Error::TruncationTooSmall);
    }
    if !ctx.is_in_f(z) {
        return Err(Error::InvalidParameter(format!("{z} is not in F")));
    }
    if !ctx.tau(unit).is_one() {
        return Err(Error::InvalidParameter("τ(unit) ≠ 1".into()));
    }
    let frob = ctx.kind() == Kind::Frobenius;
    if frob && z.is_zero() {
        return Err(Error::ZeroPointFrobenius);
    }
    let modulus = n_pow(ctx, z, m);
    let unit_p = OrePoly::constant(ctx, unit.clone());
    let shift = OrePoly::constant(ctx, ctx.a().clone());
    let make_y = |eta: &CentralPoly| -> OrePoly {
        let e = &unit_p * &eta.to_ore();
        let y = if frob {
            &(&(&OrePoly::x(ctx) + &shift) * &(&OrePoly::one(ctx) + &e)) - &shift
        } else {
            &OrePoly::x(ctx) + &e
        };
        y.rem_right(&modulus).expect("nonzero modulus")
    };
    let mut eta = CentralPoly::zero(ctx);
    let zinv = if frob { Some(z.inv()?) } else { None };
    for k in 1..m {
        let y = make_y(&eta);
        let modk = n_pow(ctx, z, k + 1);
        let zy = compose_mod(&OrePoly::z(ctx), &y, &modk);
        let q = &zy - &OrePoly::constant(ctx, z.clone());
        let r = q.div_exact_right(&n_pow(ctx, z, k)).map_err(|_| Error::Verification("residual not divisible by N^m".into()))?;
        let r = r.rem_right(&n_at(ctx, z))?;
        if r.deg().is_some_and(|d| d > 0) || !ctx.is_in_f(&r.coeff(0)) {
            return Err(Error::Verification("residual is not central".into()));
        }
        let r = r.coeff(0);
        let step = CentralPoly::linear(ctx, z).pow(k);
        let eps = match &zinv {
            Some(zi) => -&(&r * zi),
            None => -&r,
        };
        eta = &eta + &step.scale(&eps);
    }
    let iso = AdmissibleIso { ctx: ctx.clone(), z: z.clone(), m, y: make_y(&eta), modulus };
    iso.verify()?;
    Ok(iso)
}

/// Σ_j c_j T^{val+j} with c_j in A⁺/NA⁺ (representatives of degree < s), known modulo T^{val+len}.
#[derive(Clone)]
pub struct TruncatedSeries {
    ctx: Ctx,
    z: Elem,
    val: i64,
    coeffs: Vec<OrePoly>,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*T^{}", self.val + j as i64))
            .collect();
        if terms.is_empty() {
            write!(f, "O(T^{})", self.end())
        } else {
            write!(f, "{} + O(T^{})", terms.join(" + "), self.end())
        }
    }
}

impl TruncatedSeries {
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn coeffs(&self) -> &[OrePoly] {
        &self.coeffs
    }

    /// Exponent of the first unknown term.
    pub fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn z(&self) -> &Elem {
        &self.z
    }

    /// Coefficient of T^i (zero below the stored range).
    pub fn coeff(&self, i: i64) -> Result<OrePoly> {
        if i >= self.end() {
            return Err(Error::TruncationTooSmall);
        }
        if i < self.val {
            return Ok(OrePoly::zero(&self.ctx));
        }
        Ok(self.coeffs[(i - self.val) as usize].clone())
    }

    /// Order and leading coefficient, if a nonzero term is known.
    pub fn leading(&self) -> Option<(i64, OrePoly)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(j, c)| (self.val + j as i64, c.clone()))
    }

    /// Product, truncated to the known range.
    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = n_at(&self.ctx, &self.z);
        let len = self.coeffs.len().min(o.coeffs.len());
        let val = self.val + o.val;
        let mut out = vec![OrePoly::zero(&self.ctx); len];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = OrePoly::zero(&self.ctx);
            for i in 0..=k {
                if i < self.coeffs.len() && k - i < o.coeffs.len() {
                    acc = &acc + &(&self.coeffs[i] * &o.coeffs[k - i]);
                }
            }
            *slot = acc.rem_right(&n).expect("monic");
        }
        TruncatedSeries { ctx: self.ctx.clone(), z: self.z.clone(), val, coeffs: out }
    }

    /// Σ c_j(Y) N^{val+j} mod N^{end}, for series without negative powers.
    pub fn reconstruct(&self, iso: &AdmissibleIso) -> Result<OrePoly> {
        if self.val < 0 {
            return Err(Error::NotApplicable("negative powers of T".into()));
        }
        let n = n_at(&self.ctx, &self.z);
        let mut acc = OrePoly::zero(&self.ctx);
        let mut np = n.pow(self.val as usize);
        for c in &self.coeffs {
            acc = &acc + &(&iso.substitute(c) * &np);
            np = &np * &n;
        }
        acc.rem_right(iso.modulus())
    }
}

/// Coefficients g_0, …, g_{M-1} with f ≡ Σ g_k(Y) N^k mod N^M.
pub fn ts_poly(f: &OrePoly, iso: &AdmissibleIso) -> TruncatedSeries {
    let ctx = iso.ctx();
    let n = n_at(ctx, iso.z());
    let mut r = f.rem_right(iso.modulus()).expect("monic");
    let mut out = Vec::with_capacity(iso.precision());
    for _ in 0..iso.precision() {
        let g = r.rem_right(&n).expect("monic");
        let diff = &r - &iso.substitute(&g);
        r = diff.div_exact_right(&n).expect("Y ≡ X mod N");
        out.push(g);
    }
    TruncatedSeries { ctx: ctx.clone(), z: iso.z().clone(), val: 0, coeffs: out }
}

/// Power series of 1/u for u ∈ F[W] with u(0) ≠ 0, to `len` terms.
fn scalar_inverse(u: &CentralPoly, len: usize) -> Vec<Elem> {
    crate::trd::series_div(&CentralPoly::one(u.ctx()), u, len)
}

/// TS_z(f) = TS(num)·TS(den)^{-1} from an admissible iso of precision M.
pub fn ts_with(f: &OreFraction, iso: &AdmissibleIso) -> Result<TruncatedSeries> {
    let out = ts_unchecked(f, iso);
    if !f.is_zero() && out.leading().is_none() {
        return Err(Error::TruncationTooSmall);
    }
    Ok(out)
}

fn ts_unchecked(f: &OreFraction, iso: &AdmissibleIso) -> TruncatedSeries {
    let ctx = f.ctx();
    let z = iso.z();
    let (e, rest) = split_off(f.den(), z);
    let num = ts_poly(f.num(), iso);
    let inv = scalar_inverse(&rest.taylor_shift(z), num.coeffs.len());
    let coeffs: Vec<OrePoly> = (0..num.coeffs.len())
        .map(|k| {
            (0..=k).fold(OrePoly::zero(ctx), |acc, i| &acc + &num.coeffs[i].scale_left(&inv[k - i]))
        })
        .collect();
    TruncatedSeries { ctx: ctx.clone(), z: z.clone(), val: -(e as i64), coeffs }
}

pub fn ts(f: &OreFraction, z: &Elem, m: usize) -> Result<TruncatedSeries> {
    ts_with(f, &build_admissible(f.ctx(), z, m)?)
}

/// Order of vanishing at z and the coefficient of T^{ord}.
pub fn ord_and_principal(f: &OreFraction, z: &Elem) -> Result<(i64, OrePoly)> {
    ord_and_principal_with(f, z, f.ctx().tau_unit())
}

pub fn ord_and_principal_with(f: &OreFraction, z: &Elem, unit: &Elem) -> Result<(i64, OrePoly)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let s = f.ctx().s();
    let m = f.num().deg().unwrap() / s + 1;
    let series = ts_with(f, &build_admissible_with(f.ctx(), z, m, unit)?)?;
    series.leading().ok_or(Error::TruncationTooSmall)
}

/// Coefficient of T^{-1} in TS_z(f).
pub fn sres(f: &OreFraction, z: &Elem) -> Result<OrePoly> {
    let (e, _) = split_off(f.den(), z);
    if e == 0 || f.is_zero() {
        return Ok(OrePoly::zero(f.ctx()));
    }
    ts_unchecked(f, &build_admissible(f.ctx(), z, e + 1)?).coeff(-1)
}

/// sres at z_i = υ(c_i) of g·D^{-1}, from D'·D = N: the class of g·D'·(N/N_i)(z_i)^{-1} mod N_i.
pub fn sres_simple(g: &OrePoly, cs: &[Elem], vs: &[Subspace], i: usize) -> Result<OrePoly> {
    let ctx = g.ctx();
    let d = multi_annihilator(ctx, cs, vs)?;
    let dp = complement_cofactor(&d, cs)?;
    let zs: Vec<Elem> = cs.iter().map(|c| ctx.upsilon(c)).collect();
    let zi = &zs[i];
    let hat = zs.iter().enumerate().filter(|(j, _)| *j != i).fold(ctx.one(), |acc, (_, w)| &acc * &(zi - w));
    let h = (g * &dp).rem_right(&n_at(ctx, zi))?;
    Ok(h.scale_left(&hat.inv()?))
}

/// Per-point values T_rd(sres_z(f)) and their sum.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub points: Vec<Elem>,
    pub values: Vec<Elem>,
    pub sum: Elem,
    /// Whether the degree hypothesis of the residue formula holds (the sum is then asserted to vanish).
    pub asserted: bool,
}

/// Largest numerator degree for which the finite residues must sum to zero.
pub fn residue_degree_bound(ctx: &Ctx, den: &CentralPoly) -> i64 {
    let dx = (ctx.s() * den.deg().unwrap_or(0)) as i64;
    match ctx.kind() {
        Kind::Differential => dx - 2,
        Kind::Frobenius => dx - ctx.s() as i64 - 1,
    }
}

/// Σ_z res_z(T_rd(f) dZ) over the roots of the denominator, cross-checked against T_rd(sres_z(f)).
pub fn residue_sum(f: &OreFraction) -> Result<ResidueReport> {
    let ctx = f.ctx();
    let roots = split_roots(f.den())?;
    if ctx.kind() == Kind::Frobenius && roots.iter().any(|(r, _)| r.is_zero()) {
        return Err(Error::ZeroPointFrobenius);
    }
    let g = trd_fraction(f);
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut sum = ctx.zero();
    for (z, _) in roots {
        let v = comm_residue(&g, &z)?;
        let via_series = trd(&sres(f, &z)?).eval(&z);
        if v != via_series {
            return Err(Error::Verification(format!("residue mismatch at {z}: {v} vs {via_series}")));
        }
        sum = &sum + &v;
        points.push(z);
        values.push(v);
    }
    let asserted = f.num().degree() <= residue_degree_bound(ctx, f.den());
    if asserted && !sum.is_zero() {
        return Err(Error::Verification(format!("residue sum is {sum}")));
    }
    Ok(ResidueReport { points, values, sum, asserted })
}

#[cfg(test)]
mod tests;
