//! Sum-rank codes: linearized Reed-Solomon (LRS) and linearized Goppa (LG)
//! codes, the pairing between their ambient Hom-spaces, duals and Ψ.
//!
//! Codewords are tuples of F-matrices. A block over a restriction domain V
//! is s × dim V (columns follow the echelon basis of V); a block over a
//! quotient domain K/W is a full s × s matrix that kills W.

use serde_json::{json, Value};

use crate::context::{Ctx, Kind};
use crate::dual::{adjoint_matrix, orthogonal_subspace};
use crate::error::{Error, Result};
use crate::evalmap::{central_product, check_points, ev, ev_fraction, multi_annihilator};
use crate::fields::Elem;
use crate::linalg::{Matrix, Subspace};
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};
use crate::taylor::sres;


/// Default cap on the number of K-lines visited by [`min_distance`].
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// Hom_F(V_1, K) × … × Hom_F(V_m, K).
    Restriction,
    /// Hom_F(K/W_1, K) × … × Hom_F(K/W_m, K).
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    kind: DomainKind,
    spaces: Vec<Subspace>,
}

impl Domain {
    pub fn restriction(vs: &[Subspace]) -> Self {
        Domain { kind: DomainKind::Restriction, spaces: vs.to_vec() }
    }

    pub fn quotient(ws: &[Subspace]) -> Self {
        Domain { kind: DomainKind::Quotient, spaces: ws.to_vec() }
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn m(&self) -> usize {
        self.spaces.len()
    }

    /// Code length: Σ dim V_i, or Σ dim K/W_i.
    pub fn length(&self) -> usize {
        self.spaces
            .iter()
            .map(|v| match self.kind {
                DomainKind::Restriction => v.dim(),
                DomainKind::Quotient => v.ambient() - v.dim(),
            })
            .sum()
    }

    fn block_cols(&self, i: usize) -> usize {
        match self.kind {
            DomainKind::Restriction => self.spaces[i].dim(),
            DomainKind::Quotient => self.spaces[i].ambient(),
        }
    }

    /// The other side of the pairing: V ↔ K/V^⊥.
    pub fn paired(&self, ctx: &Ctx) -> Domain {
        let orth: Vec<Subspace> = self.spaces.iter().map(|v| orthogonal_subspace(ctx, v)).collect();
        match self.kind {
            DomainKind::Restriction => Domain::quotient(&orth),
            DomainKind::Quotient => Domain::restriction(&orth),
        }
    }

    /// An F-basis of the ambient Hom-space.
    pub fn f_basis(&self, ctx: &Ctx) -> Vec<HomTuple> {
        let s = ctx.s();
        let z = ctx.zero();
        let mut out = Vec::new();
        for (i, v) in self.spaces.iter().enumerate() {
            let rows: Vec<Vec<Elem>> = match self.kind {
                DomainKind::Restriction => (0..v.dim())
                    .map(|j| (0..v.dim()).map(|l| if l == j { ctx.one() } else { z.clone() }).collect())
                    .collect(),
                // rows of a block killing W lie in the left kernel of its basis
                DomainKind::Quotient => {
                    if v.dim() == 0 {
                        Matrix::identity(s, &z).row_vecs()
                    } else {
                        v.basis_columns().transpose().kernel()
                    }
                }
            };
            for r in 0..s {
                for row in &rows {
                    let mut t = HomTuple::zero(ctx, self);
                    for (j, x) in row.iter().enumerate() {
                        t.blocks[i].set(r, j, x.clone());
                    }
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn to_json(&self, ctx: &Ctx) -> Value {
        json!({
            "domain": match self.kind { DomainKind::Restriction => "restriction", DomainKind::Quotient => "quotient" },
            "subspaces": self.spaces.iter().map(|v| subspace_json(ctx, v)).collect::<Vec<_>>(),
        })
    }
}

fn subspace_json(ctx: &Ctx, v: &Subspace) -> Value {
    Value::Array(ctx.subspace_elems(v).iter().map(Elem::to_json).collect())
}

pub fn subspace_from_json(ctx: &Ctx, v: &Value) -> Result<Subspace> {
    let xs = v.as_array().ok_or_else(|| Error::Parse("subspace must be a list of elements".into()))?;
    let elems = xs.iter().map(|x| Elem::from_json_like(&ctx.zero(), x)).collect::<Result<Vec<_>>>()?;
    Ok(ctx.span(&elems))
}

/// A sum-rank codeword.
#[derive(Clone, Debug)]
pub struct HomTuple {
    ctx: Ctx,
    domain: Domain,
    blocks: Vec<Matrix>,
}

impl PartialEq for HomTuple {
    fn eq(&self, o: &Self) -> bool {
        self.domain == o.domain && self.blocks == o.blocks
    }
}

impl Eq for HomTuple {}

impl HomTuple {
    pub fn new(ctx: &Ctx, domain: &Domain, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.len() != domain.m() {
            return Err(Error::ShapeMismatch(format!("{} blocks for {} subspaces", blocks.len(), domain.m())));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.rows() != ctx.s() || b.cols() != domain.block_cols(i) {
                return Err(Error::ShapeMismatch(format!("block {i} is {}×{}", b.rows(), b.cols())));
            }
            if !b.entries().iter().all(|x| ctx.is_in_f(x)) {
                return Err(Error::InvalidParameter(format!("block {i} has entries outside F")));
            }
            if domain.kind == DomainKind::Quotient && !b.mul(&domain.spaces[i].basis_columns())?.is_zero() {
                return Err(Error::InvalidParameter(format!("block {i} does not vanish on W_{i}")));
            }
        }
        Ok(HomTuple { ctx: ctx.clone(), domain: domain.clone(), blocks })
    }

    pub fn zero(ctx: &Ctx, domain: &Domain) -> Self {
        let blocks = (0..domain.m()).map(|i| Matrix::zeros(ctx.s(), domain.block_cols(i), &ctx.zero())).collect();
        HomTuple { ctx: ctx.clone(), domain: domain.clone(), blocks }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    fn zip(&self, o: &HomTuple, f: impl Fn(&Matrix, &Matrix) -> Result<Matrix>) -> Result<HomTuple> {
        if self.domain != o.domain {
            return Err(Error::ShapeMismatch("codewords over different domains".into()));
        }
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(HomTuple { ctx: self.ctx.clone(), domain: self.domain.clone(), blocks })
    }

    pub fn add(&self, o: &HomTuple) -> Result<HomTuple> {
        self.zip(o, Matrix::add)
    }

    pub fn sub(&self, o: &HomTuple) -> Result<HomTuple> {
        self.zip(o, Matrix::sub)
    }

    /// F-scalar multiple.
    pub fn scale_f(&self, c: &Elem) -> HomTuple {
        HomTuple { ctx: self.ctx.clone(), domain: self.domain.clone(), blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    /// The K-action a·φ = μ_a ∘ φ.
    pub fn scale_k(&self, a: &Elem) -> HomTuple {
        let mu = self.ctx.mult_matrix(a);
        let blocks = self.blocks.iter().map(|b| mu.mul(b).expect("s rows")).collect();
        HomTuple { ctx: self.ctx.clone(), domain: self.domain.clone(), blocks }
    }

    /// Row-major F-coordinates of all blocks, concatenated.
    pub fn flatten(&self) -> Vec<Elem> {
        self.blocks.iter().flat_map(|b| b.entries().to_vec()).collect()
    }

    fn flat_len(&self) -> usize {
        self.blocks.iter().map(|b| b.rows() * b.cols()).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|b| Value::Array(b.row_vecs().iter().map(|r| Value::Array(r.iter().map(Elem::to_json).collect())).collect()))
                .collect(),
        )
    }

    pub fn from_json(ctx: &Ctx, domain: &Domain, v: &Value) -> Result<HomTuple> {
        let bad = || Error::Parse("codeword must be a list of matrices".into());
        let blocks = v
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .enumerate()
            .map(|(i, b)| {
                if i >= domain.m() {
                    return Err(Error::ShapeMismatch(format!("more than {} blocks", domain.m())));
                }
                let rows = b
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|r| r.as_array().ok_or_else(bad)?.iter().map(|x| Elem::from_json_like(&ctx.zero(), x)).collect())
                    .collect::<Result<Vec<Vec<Elem>>>>()?;
                let cols = domain.block_cols(i);
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeMismatch(format!("block {i} has rows of the wrong length")));
                }
                Ok(Matrix::from_rows(rows, cols, &ctx.zero()))
            })
            .collect::<Result<Vec<_>>>()?;
        HomTuple::new(ctx, domain, blocks)
    }
}

/// Σ_i rank_F(φ_i).
pub fn sum_rank_weight(w: &HomTuple) -> usize {
    w.blocks.iter().map(Matrix::rank).sum()
}

pub fn sum_rank_distance(x: &HomTuple, y: &HomTuple) -> Result<usize> {
    Ok(sum_rank_weight(&x.sub(y)?))
}

/// F-span of the K-span of `gens`.
fn k_span(ctx: &Ctx, gens: &[HomTuple], flat_len: usize) -> Subspace {
    let rows: Vec<Vec<Elem>> = gens.iter().flat_map(|g| ctx.basis().iter().map(move |b| g.scale_k(b).flatten())).collect();
    Subspace::span(&rows, flat_len, &ctx.zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lrs,
    Lg,
    /// An orthogonal computed by [`dual_code`].
    Dual,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lrs => "lrs",
            Family::Lg => "lg",
            Family::Dual => "dual",
        }
    }
}

/// A K-linear code given by a K-basis.
#[derive(Clone, Debug)]
pub struct CodeBasis {
    ctx: Ctx,
    family: Family,
    points: Vec<Elem>,
    domain: Domain,
    generators: Vec<HomTuple>,
}

impl CodeBasis {
    /// Checks that `generators` live over `domain` and are K-free.
    pub fn new(ctx: &Ctx, family: Family, points: Vec<Elem>, domain: Domain, generators: Vec<HomTuple>) -> Result<Self> {
        if generators.iter().any(|g| g.domain != domain) {
            return Err(Error::ShapeMismatch("generator over a different domain".into()));
        }
        let code = CodeBasis { ctx: ctx.clone(), family, points, domain, generators };
        if code.f_span().dim() != ctx.s() * code.generators.len() {
            return Err(Error::Verification("generators are not K-linearly independent".into()));
        }
        if code.generators.len() > code.length() {
            return Err(Error::KOutOfRange(format!("k = {} > n = {}", code.generators.len(), code.length())));
        }
        Ok(code)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn generators(&self) -> &[HomTuple] {
        &self.generators
    }

    /// dim_K.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn length(&self) -> usize {
        self.domain.length()
    }

    fn flat_len(&self) -> usize {
        HomTuple::zero(&self.ctx, &self.domain).flat_len()
    }

    /// The code as an F-subspace of the flattened ambient space.
    pub fn f_span(&self) -> Subspace {
        k_span(&self.ctx, &self.generators, self.flat_len())
    }

    pub fn contains(&self, w: &HomTuple) -> bool {
        w.domain == self.domain && self.f_span().contains(&w.flatten())
    }

    /// Equality as subspaces (both inclusions, via the canonical echelon basis).
    pub fn same_code(&self, o: &CodeBasis) -> bool {
        self.domain == o.domain && self.f_span() == o.f_span()
    }

    /// Σ λ_i g_i with λ_i ∈ K.
    pub fn codeword(&self, lambda: &[Elem]) -> Result<HomTuple> {
        if lambda.len() != self.k() {
            return Err(Error::ShapeMismatch(format!("{} coefficients for dimension {}", lambda.len(), self.k())));
        }
        let mut acc = HomTuple::zero(&self.ctx, &self.domain);
        for (l, g) in lambda.iter().zip(&self.generators) {
            acc = acc.add(&g.scale_k(l))?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.domain.to_json(&self.ctx);
        v["kind"] = json!(self.family.name());
        v["k"] = json!(self.k());
        v["n"] = json!(self.length());
        v["points"] = Value::Array(self.points.iter().map(Elem::to_json).collect());
        v["generators"] = Value::Array(self.generators.iter().map(HomTuple::to_json).collect());
        v
    }

    pub fn from_json(ctx: &Ctx, v: &Value) -> Result<CodeBasis> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")));
        let family = match field("kind")?.as_str() {
            Some("lrs") => Family::Lrs,
            Some("lg") => Family::Lg,
            Some("dual") => Family::Dual,
            other => return Err(Error::Parse(format!("unknown code kind {other:?}"))),
        };
        let spaces = field("subspaces")?
            .as_array()
            .ok_or_else(|| Error::Parse("subspaces must be a list".into()))?
            .iter()
            .map(|s| subspace_from_json(ctx, s))
            .collect::<Result<Vec<_>>>()?;
        let domain = match v.get("domain").and_then(Value::as_str) {
            Some("quotient") => Domain::quotient(&spaces),
            Some("restriction") => Domain::restriction(&spaces),
            None if family == Family::Lg => Domain::quotient(&spaces),
            None => Domain::restriction(&spaces),
            Some(other) => return Err(Error::Parse(format!("unknown domain {other}"))),
        };
        let points = match v.get("points") {
            Some(Value::Array(ps)) => ps.iter().map(|p| Elem::from_json_like(&ctx.zero(), p)).collect::<Result<Vec<_>>>()?,
            _ => Vec::new(),
        };
        let generators = field("generators")?
            .as_array()
            .ok_or_else(|| Error::Parse("generators must be a list".into()))?
            .iter()
            .map(|g| HomTuple::from_json(ctx, &domain, g))
            .collect::<Result<Vec<_>>>()?;
        let code = CodeBasis::new(ctx, family, points, domain, generators)?;
        if let Some(k) = v.get("k").and_then(Value::as_u64) {
            if k as usize != code.k() {
                return Err(Error::Parse(format!("k = {k} but {} generators", code.k())));
            }
        }
        Ok(code)
    }
}

fn check_shape(ctx: &Ctx, cs: &[Elem], vs: &[Subspace]) -> Result<Vec<Elem>> {
    if cs.len() != vs.len() {
        return Err(Error::ShapeMismatch("points and subspaces differ in number".into()));
    }
    if cs.is_empty() {
        return Err(Error::InvalidParameter("m = 0".into()));
    }
    if vs.iter().any(|v| v.ambient() != ctx.s()) {
        return Err(Error::ShapeMismatch("subspace of the wrong ambient dimension".into()));
    }
    check_points(ctx, cs)
}

/// (ev(P, c_i) restricted to V_i)_i.
pub fn lrs_encode(p: &OrePoly, cs: &[Elem], vs: &[Subspace]) -> Result<HomTuple> {
    let ctx = p.ctx();
    check_shape(ctx, cs, vs)?;
    let blocks = cs.iter().zip(vs).map(|(c, v)| ev(p, c).restrict(v)).collect();
    HomTuple::new(ctx, &Domain::restriction(vs), blocks)
}

/// LRS(k, c, V) with generators ev(X^j), j < k.
pub fn lrs_basis(ctx: &Ctx, k: usize, cs: &[Elem], vs: &[Subspace]) -> Result<CodeBasis> {
    check_shape(ctx, cs, vs)?;
    let domain = Domain::restriction(vs);
    let n = domain.length();
    if n == 0 {
        return Err(Error::InvalidParameter("n = 0".into()));
    }
    if k > n {
        return Err(Error::KOutOfRange(format!("k = {k} > n = {n}")));
    }
    let gens = (0..k).map(|j| lrs_encode(&OrePoly::monomial(ctx, ctx.one(), j), cs, vs)).collect::<Result<Vec<_>>>()?;
    CodeBasis::new(ctx, Family::Lrs, cs.to_vec(), domain, gens)
}

/// The D with im ev(D, c_i) = V_i, as D = A^{-1}·N where A is the multi-point
/// annihilator of V. Returns (A, D); A·D = D·A = N.
pub fn goppa_denominator(ctx: &Ctx, cs: &[Elem], vs: &[Subspace]) -> Result<(OrePoly, OrePoly)> {
    let ann = multi_annihilator(ctx, cs, vs)?;
    let d = central_product(ctx, cs).to_ore().div_exact_right(&ann)?;
    for (c, v) in cs.iter().zip(vs) {
        if ev(&d, c).image() != *v {
            return Err(Error::Verification("im ev(D) ≠ V".into()));
        }
    }
    Ok((ann, d))
}

fn lg_length(ctx: &Ctx, vs: &[Subspace]) -> usize {
    vs.iter().map(|v| ctx.s() - v.dim()).sum()
}

/// P = D^{-1} (θ = id) or Z^{-m-1}·(X+a)^{n-k}·D^{-1}, written over the centre.
/// Any k ≤ n is accepted here; the code itself needs k < n.
pub fn goppa_multiplier(ctx: &Ctx, k: usize, cs: &[Elem], vs: &[Subspace]) -> Result<OreFraction> {
    check_shape(ctx, cs, vs)?;
    let n = lg_length(ctx, vs);
    if k > n {
        return Err(Error::KOutOfRange(format!("k = {k} > n = {n}")));
    }
    let (ann, _) = goppa_denominator(ctx, cs, vs)?;
    let big_n = central_product(ctx, cs);
    match ctx.kind() {
        Kind::Differential => OreFraction::new(ann, big_n),
        Kind::Frobenius => {
            let xa = OrePoly::linear(ctx, &-ctx.a()).pow(n - k);
            let den = &CentralPoly::z(ctx).pow(cs.len() + 1) * &big_n;
            OreFraction::new(&xa * &ann, den)
        }
    }
}

/// γ(f) = (ev(sres_{z_i}(f), c_i))_i, checked to vanish on each V_i.
pub fn gamma(f: &OreFraction, cs: &[Elem], vs: &[Subspace]) -> Result<HomTuple> {
    let ctx = f.ctx();
    let zs = check_shape(ctx, cs, vs)?;
    let domain = Domain::quotient(vs);
    let blocks = cs
        .iter()
        .zip(&zs)
        .map(|(c, z)| Ok(ev(&sres(f, z)?, c).matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    HomTuple::new(ctx, &domain, blocks).map_err(|e| match e {
        Error::InvalidParameter(_) => Error::Verification("γ(f) does not vanish on V".into()),
        e => e,
    })
}

/// LG(k, c, V) with generators γ(X^j·P), j < k. k = 0 gives the zero code.
pub fn lg_basis(ctx: &Ctx, k: usize, cs: &[Elem], vs: &[Subspace]) -> Result<CodeBasis> {
    check_shape(ctx, cs, vs)?;
    let domain = Domain::quotient(vs);
    if domain.length() == 0 {
        return Err(Error::InvalidParameter("n = 0".into()));
    }
    if k == 0 {
        return CodeBasis::new(ctx, Family::Lg, cs.to_vec(), domain, Vec::new());
    }
    if k >= domain.length() {
        return Err(Error::KOutOfRange(format!("need k < n, got k = {k}, n = {}", domain.length())));
    }
    let p = goppa_multiplier(ctx, k, cs, vs)?;
    let gens = (0..k)
        .map(|j| gamma(&p.mul_poly_left(&OrePoly::monomial(ctx, ctx.one(), j)), cs, vs))
        .collect::<Result<Vec<_>>>()?;
    CodeBasis::new(ctx, Family::Lg, cs.to_vec(), domain, gens)
}

/// Echelon basis of V completed by unit vectors: (square invertible matrix, dim V).
fn completed_basis(ctx: &Ctx, v: &Subspace) -> Matrix {
    let s = ctx.s();
    let mut cols = v.basis();
    for e in Matrix::identity(s, &ctx.zero()).row_vecs() {
        if cols.len() == s {
            break;
        }
        let mut trial = cols.clone();
        trial.push(e.clone());
        if Matrix::from_rows(trial.clone(), s, &ctx.zero()).rank() == trial.len() {
            cols = trial;
        }
    }
    Matrix::from_cols(cols, s, &ctx.zero())
}

/// Extends ψ: V → K to K, sending the completing unit vectors to the columns of `rest`.
pub fn extend_with(ctx: &Ctx, psi: &Matrix, v: &Subspace, rest: &Matrix) -> Result<Matrix> {
    let m = completed_basis(ctx, v);
    psi.hstack(rest)?.mul(&m.inverse()?)
}

/// The extension of ψ that vanishes on the completing unit vectors.
pub fn extend(ctx: &Ctx, psi: &Matrix, v: &Subspace) -> Result<Matrix> {
    extend_with(ctx, psi, v, &Matrix::zeros(ctx.s(), ctx.s() - v.dim(), &ctx.zero()))
}

/// ⟨φ, ψ⟩ = Σ_i Tr(φ_i^⋆ ∘ ψ̃_i) for φ over K/V^⊥ and ψ over V.
pub fn pairing(phi: &HomTuple, psi: &HomTuple) -> Result<Elem> {
    let ctx = phi.ctx();
    if phi.domain.kind != DomainKind::Quotient || psi.domain.kind != DomainKind::Restriction {
        return Err(Error::ShapeMismatch("pairing takes (K/V^⊥-tuple, V-tuple)".into()));
    }
    if psi.domain.paired(ctx) != phi.domain {
        return Err(Error::ShapeMismatch("domains are not orthogonal partners".into()));
    }
    let mut acc = ctx.zero();
    for ((f, g), v) in phi.blocks.iter().zip(&psi.blocks).zip(&psi.domain.spaces) {
        let adj = adjoint_matrix(ctx, f);
        acc = &acc + &adj.mul(&extend(ctx, g, v)?)?.trace();
    }
    Ok(acc)
}

/// The pairing with arguments in either order.
fn pair_any(x: &HomTuple, y: &HomTuple) -> Result<Elem> {
    match x.domain.kind {
        DomainKind::Quotient => pairing(x, y),
        DomainKind::Restriction => pairing(y, x),
    }
}

/// Greedy K-basis of an F-spanning list whose F-span is K-stable.
fn greedy_k_basis(ctx: &Ctx, candidates: Vec<HomTuple>, flat_len: usize, want: usize) -> Vec<HomTuple> {
    let mut chosen: Vec<HomTuple> = Vec::new();
    let mut span = Subspace::zero(flat_len, &ctx.zero());
    for c in candidates {
        if chosen.len() == want {
            break;
        }
        if !span.contains(&c.flatten()) {
            span = span.sum(&k_span(ctx, std::slice::from_ref(&c), flat_len));
            chosen.push(c);
        }
    }
    chosen
}

/// The orthogonal of a code in the paired Hom-space, as a K-basis.
pub fn dual_code(code: &CodeBasis) -> Result<CodeBasis> {
    let ctx = code.ctx();
    let s = ctx.s();
    let other = code.domain.paired(ctx);
    let ambient = other.f_basis(ctx);
    let code_f: Vec<HomTuple> = code.generators.iter().flat_map(|g| ctx.basis().iter().map(move |b| g.scale_k(b))).collect();
    let mut rows = Vec::with_capacity(code_f.len());
    for c in &code_f {
        rows.push(ambient.iter().map(|a| pair_any(a, c)).collect::<Result<Vec<_>>>()?);
    }
    let system = Matrix::from_rows(rows, ambient.len(), &ctx.zero());
    let kernel = if code_f.is_empty() {
        Matrix::identity(ambient.len(), &ctx.zero()).row_vecs()
    } else {
        system.kernel()
    };
    let zero = HomTuple::zero(ctx, &other);
    let perp: Vec<HomTuple> = kernel
        .iter()
        .map(|x| {
            x.iter().zip(&ambient).fold(zero.clone(), |acc, (c, a)| acc.add(&a.scale_f(c)).expect("same domain"))
        })
        .collect();
    let n = code.length();
    if perp.len() != s * (n - code.k()) {
        return Err(Error::Verification(format!("dim_F C^⊥ = {} ≠ s·(n − k)", perp.len())));
    }
    let flat_len = zero.flat_len();
    let gens = greedy_k_basis(ctx, perp, flat_len, n - code.k());
    if gens.len() + code.k() != n {
        return Err(Error::Verification("C^⊥ is not K-stable".into()));
    }
    for g in &gens {
        for b in ctx.basis() {
            let bg = g.scale_k(b);
            for c in &code_f {
                if !pair_any(&bg, c)?.is_zero() {
                    return Err(Error::Verification("C^⊥ is not K-stable".into()));
                }
            }
        }
    }
    CodeBasis::new(ctx, Family::Dual, Vec::new(), other, gens)
}

/// The maps τ̃_i = ev(P·N_i, c_i) behind Ψ: Hom(W, K) → Hom(K/V, K).
#[derive(Clone, Debug)]
pub struct PsiSetup {
    ctx: Ctx,
    vs: Vec<Subspace>,
    w: Vec<Subspace>,
    tau: Vec<Matrix>,
    /// τ̃_i in the echelon basis of W_i (dim W_i × s).
    coords: Vec<Matrix>,
}

impl PsiSetup {
    pub fn w(&self) -> &[Subspace] {
        &self.w
    }

    pub fn tau(&self) -> &[Matrix] {
        &self.tau
    }

    /// Ψ(φ) = (φ_i ∘ τ_i)_i.
    pub fn apply(&self, phi: &HomTuple) -> Result<HomTuple> {
        if phi.domain != Domain::restriction(&self.w) {
            return Err(Error::ShapeMismatch("Ψ takes tuples over W".into()));
        }
        let blocks = phi.blocks.iter().zip(&self.coords).map(|(b, t)| b.mul(t)).collect::<Result<Vec<_>>>()?;
        HomTuple::new(&self.ctx, &Domain::quotient(&self.vs), blocks)
    }
}

pub fn psi_setup(ctx: &Ctx, k: usize, cs: &[Elem], vs: &[Subspace]) -> Result<PsiSetup> {
    if k == 0 || k >= lg_length(ctx, vs) {
        return Err(Error::KOutOfRange(format!("need 0 < k < n, got k = {k}")));
    }
    let p = goppa_multiplier(ctx, k, cs, vs)?;
    let mut w = Vec::new();
    let mut tau = Vec::new();
    let mut coords = Vec::new();
    for (c, v) in cs.iter().zip(vs) {
        let ni = CentralPoly::linear(ctx, &ctx.upsilon(c));
        let pn = OreFraction::new(p.num().clone(), p.den().div_exact(&ni)?)?;
        let t = ev_fraction(&pn, c)?;
        if t.kernel() != *v {
            return Err(Error::Verification("ker τ̃_i ≠ V_i".into()));
        }
        let wi = t.image();
        let ci = wi.basis_columns().solve_matrix(t.matrix()).ok_or_else(|| Error::Verification("τ̃_i not onto W_i".into()))?;
        w.push(wi);
        tau.push(t.matrix().clone());
        coords.push(ci);
    }
    Ok(PsiSetup { ctx: ctx.clone(), vs: vs.to_vec(), w, tau, coords })
}

/// ORECODES_BUDGET, or the default.
pub fn budget() -> u128 {
    std::env::var("ORECODES_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

pub fn min_distance(code: &CodeBasis) -> Result<usize> {
    min_distance_with_budget(code, budget())
}

/// Exhaustive minimum over K-lines: coefficient vectors whose last nonzero entry is 1.
pub fn min_distance_with_budget(code: &CodeBasis, budget: u128) -> Result<usize> {
    let ctx = code.ctx();
    let k = code.k();
    if k == 0 {
        return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
    }
    let elems = ctx.zero().all_like().map_err(|_| Error::BudgetExceeded("K is infinite".into()))?;
    let q = elems.len() as u128;
    let lines = (0..k as u32).try_fold(0u128, |acc, i| q.checked_pow(i).and_then(|x| acc.checked_add(x)));
    match lines {
        Some(l) if l <= budget => {}
        _ => return Err(Error::BudgetExceeded(format!("more than {budget} K-lines to visit"))),
    }
    // scaled[i][a] = elems[a]·g_i
    let scaled: Vec<Vec<HomTuple>> = code.generators.iter().map(|g| elems.iter().map(|a| g.scale_k(a)).collect()).collect();
    let mut best = usize::MAX;
    for lead in 0..k {
        let mut idx = vec![0usize; lead];
        loop {
            let mut w = code.generators[lead].clone();
            for (i, &a) in idx.iter().enumerate() {
                w = w.add(&scaled[i][a])?;
            }
            best = best.min(sum_rank_weight(&w));
            let mut pos = 0;
            while pos < lead {
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == lead {
                break;
            }
        }
    }
    Ok(best)
}

/// One parameter set (c, V) of the test grid.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub points: Vec<Elem>,
    pub subspaces: Vec<Subspace>,
}

/// m ∈ {1, 2}, points among {1, 1+g} (Frobenius) or {1, g} (differential),
/// subspaces among {0, ⟨1⟩, ⟨g⟩, K} where g is the second basis element.
/// Parameter sets with n = 0 or clashing points are skipped.
pub fn standard_grid(ctx: &Ctx) -> Vec<GridPoint> {
    let g = ctx.basis()[1].clone();
    let pts = match ctx.kind() {
        Kind::Frobenius => vec![ctx.one(), &ctx.one() + &g],
        Kind::Differential => vec![ctx.one(), g.clone()],
    };
    let spaces = vec![ctx.zero_space(), ctx.span(&[ctx.one()]), ctx.span(&[g]), ctx.full_space()];
    let mut out = Vec::new();
    for c in &pts {
        for v in &spaces {
            out.push(GridPoint { points: vec![c.clone()], subspaces: vec![v.clone()] });
        }
    }
    for v1 in &spaces {
        for v2 in &spaces {
            out.push(GridPoint { points: pts.clone(), subspaces: vec![v1.clone(), v2.clone()] });
        }
    }
    out.retain(|gp| gp.subspaces.iter().any(|v| v.dim() > 0) && check_points(ctx, &gp.points).is_ok());
    out
}
