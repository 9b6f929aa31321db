//! Pseudo-linear evaluation ev_c: A⁺ → End_F(K), P ↦ P(δ + cθ).

use serde_json::Value;

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::linalg::{Matrix, Subspace};
use crate::orepoly::{CentralPoly, OreFraction, OrePoly};

/// An F-linear endomorphism of K as an s×s matrix over F (columns are images of the basis).
#[derive(Clone)]
pub struct LinearOperator {
    ctx: Ctx,
    matrix: Matrix,
}

impl PartialEq for LinearOperator {
    fn eq(&self, o: &Self) -> bool {
        self.matrix == o.matrix
    }
}

impl Eq for LinearOperator {}

impl std::fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearOperator({})", self.matrix)
    }
}

impl LinearOperator {
    pub fn new(ctx: &Ctx, matrix: Matrix) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (ctx.s(), ctx.s()));
        LinearOperator { ctx: ctx.clone(), matrix }
    }

    pub fn from_fn(ctx: &Ctx, f: impl Fn(&Elem) -> Elem) -> Self {
        Self::new(ctx, ctx.matrix_of(f))
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Self::new(ctx, Matrix::identity(ctx.s(), &ctx.zero()))
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::new(ctx, Matrix::zeros(ctx.s(), ctx.s(), &ctx.zero()))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        self.ctx.apply_matrix(&self.matrix, x)
    }

    /// self ∘ other
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        Self::new(&self.ctx, self.matrix.mul(&other.matrix).expect("square"))
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        Self::new(&self.ctx, self.matrix.add(&other.matrix).expect("square"))
    }

    pub fn scale(&self, c: &Elem) -> LinearOperator {
        Self::new(&self.ctx, self.matrix.scale(c))
    }

    pub fn trace(&self) -> Elem {
        self.matrix.trace()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(&self.matrix.kernel(), self.ctx.s(), &self.ctx.zero())
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(&self.matrix.col_vecs(), self.ctx.s(), &self.ctx.zero())
    }

    /// The s×dim V matrix of the restriction to V.
    pub fn restrict(&self, v: &Subspace) -> Matrix {
        self.matrix.mul(&v.basis_columns()).expect("shapes")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.matrix.row_vecs().iter().map(|r| Value::Array(r.iter().map(Elem::to_json).collect())).collect())
    }
}

/// u = δ + cθ applied to x.
pub fn apply_u(ctx: &Ctx, c: &Elem, x: &Elem) -> Elem {
    &ctx.delta(x) + &(c * &ctx.theta(x))
}

pub fn operator_matrix(ctx: &Ctx, c: &Elem) -> LinearOperator {
    LinearOperator::from_fn(ctx, |x| apply_u(ctx, c, x))
}

/// ev_c(P)(x) = Σ a_i u^i(x).
pub fn ev_apply(p: &OrePoly, c: &Elem, x: &Elem) -> Elem {
    let ctx = p.ctx();
    let mut acc = ctx.zero();
    let mut y = x.clone();
    for (i, a) in p.coeffs().iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &(a * &y);
        }
        if i + 1 < p.coeffs().len() {
            y = apply_u(ctx, c, &y);
        }
    }
    acc
}

pub fn ev(p: &OrePoly, c: &Elem) -> LinearOperator {
    LinearOperator::from_fn(p.ctx(), |x| ev_apply(p, c, x))
}

/// ev_c of num/den, defined when den(υ(c)) ≠ 0.
pub fn ev_fraction(f: &OreFraction, c: &Elem) -> Result<LinearOperator> {
    let ctx = f.ctx();
    let d = f.den().eval(&ctx.upsilon(c));
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(ev(f.num(), c).scale(&d.inv()?))
}

pub fn ev_kernel(p: &OrePoly, c: &Elem) -> Result<Subspace> {
    p.ctx().check_unramified(c)?;
    Ok(ev(p, c).kernel())
}

/// The monic P of degree dim V whose evaluation at c vanishes exactly on V.
pub fn annihilator(ctx: &Ctx, c: &Elem, v: &Subspace) -> Result<OrePoly> {
    annihilator_of(ctx, c, &ctx.subspace_elems(v))
}

/// Annihilator of the span of `gens`, processed left to right.
pub fn annihilator_of(ctx: &Ctx, c: &Elem, gens: &[Elem]) -> Result<OrePoly> {
    ctx.check_unramified(c)?;
    let mut pending = gens.to_vec();
    let mut acc = OrePoly::one(ctx);
    while !pending.is_empty() {
        let w = pending.remove(0);
        if w.is_zero() {
            continue;
        }
        let factor = OrePoly::linear(ctx, &(&apply_u(ctx, c, &w) / &w));
        pending = pending.iter().map(|x| ev_apply(&factor, c, x)).collect();
        acc = &factor * &acc;
    }
    if acc.deg() != Some(ctx.span(gens).dim()) {
        return Err(Error::Verification("annihilator degree differs from dim V".into()));
    }
    Ok(acc)
}

/// Rejects ramified points and repeated values of υ.
pub fn check_points(ctx: &Ctx, cs: &[Elem]) -> Result<Vec<Elem>> {
    let mut ups: Vec<Elem> = Vec::with_capacity(cs.len());
    for c in cs {
        ctx.check_unramified(c)?;
        let u = ctx.upsilon(c);
        if ups.contains(&u) {
            return Err(Error::RepeatedUpsilon);
        }
        ups.push(u);
    }
    Ok(ups)
}

/// Monic D of degree Σ dim V_i with ev(D, c_i) vanishing on V_i.
pub fn multi_annihilator(ctx: &Ctx, cs: &[Elem], vs: &[Subspace]) -> Result<OrePoly> {
    if cs.len() != vs.len() {
        return Err(Error::ShapeMismatch("points and subspaces differ in number".into()));
    }
    check_points(ctx, cs)?;
    let mut d = OrePoly::one(ctx);
    for (c, v) in cs.iter().zip(vs) {
        d = d.lclm(&annihilator(ctx, c, v)?)?;
    }
    let n: usize = vs.iter().map(Subspace::dim).sum();
    if d.deg() != Some(n) {
        return Err(Error::Verification("multi-point annihilator has the wrong degree".into()));
    }
    Ok(d)
}

/// N = Π (Z - υ(c_i)).
pub fn central_product(ctx: &Ctx, cs: &[Elem]) -> CentralPoly {
    let ups: Vec<Elem> = cs.iter().map(|c| ctx.upsilon(c)).collect();
    CentralPoly::from_roots(ctx, &ups)
}

/// D' with D'·D = N = Π (Z - υ(c_i)).
pub fn complement_cofactor(d: &OrePoly, cs: &[Elem]) -> Result<OrePoly> {
    let ctx = d.ctx();
    let n = central_product(ctx, cs).to_ore();
    let dp = n.div_exact_right(d)?;
    if d * &dp != n {
        return Err(Error::Verification("D·D' ≠ N".into()));
    }
    Ok(dp)
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::context::standard::*;
    use crate::testutil::*;

    fn m(ctx: &Ctx, rows: &[&[Elem]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), ctx.s(), &ctx.zero())
    }

    #[test]
    fn operator_examples() {
        let b = ctx_b();
        let (o, z) = (b.one(), b.zero());
        assert_eq!(operator_matrix(&b, &o).matrix(), &m(&b, &[&[o.clone(), o.clone()], &[z.clone(), o.clone()]]));
        let a = ctx_a();
        assert!(operator_matrix(&a, &a.zero()).is_zero());
        assert_eq!(operator_matrix(&a, &a.one()).matrix(), &a.theta_matrix());
    }

    #[test]
    fn ev_examples() {
        let a = ctx_a();
        assert_eq!(ev(&OrePoly::z(&a), &a.one()), LinearOperator::identity(&a));
        let b = ctx_b();
        let tt = t(&b);
        assert_eq!(ev(&OrePoly::one(&b), &tt), LinearOperator::identity(&b));
        assert_eq!(ev(&OrePoly::x(&b), &b.one()).apply(&tt), &tt + &b.one());
    }

    #[test]
    fn kernel_examples() {
        let a = ctx_a();
        let one = a.one();
        let z1 = &OrePoly::z(&a) - &OrePoly::one(&a);
        assert_eq!(ev_kernel(&z1, &one).unwrap(), a.full_space());
        assert_eq!(ev_kernel(&OrePoly::one(&a), &one).unwrap(), a.zero_space());
        assert_eq!(ev_kernel(&OrePoly::linear(&a, &one), &one).unwrap(), a.span(&[one.clone()]));
        assert!(matches!(ev_kernel(&z1, &a.zero()), Err(Error::RamifiedPoint(_))));
    }

    #[test]
    fn annihilator_examples() {
        let a = ctx_a();
        let one = a.one();
        assert_eq!(annihilator(&a, &one, &a.span(&[one.clone()])).unwrap(), OrePoly::linear(&a, &one));
        let z1 = &OrePoly::z(&a) - &OrePoly::one(&a);
        assert_eq!(annihilator(&a, &one, &a.full_space()).unwrap(), z1);
        let b = ctx_b();
        let tt = t(&b);
        let want = OrePoly::linear(&b, &rt(&b, &[1, 1], &[0, 1]));
        assert_eq!(annihilator(&b, &b.one(), &b.span(&[tt])).unwrap(), want);
    }

    #[test]
    fn multi_annihilator_examples() {
        let a = ctx_a();
        let one = a.one();
        let c2 = k2(&a, 1, 1);
        let v1 = a.span(&[one.clone()]);
        let d = multi_annihilator(&a, &[one.clone(), c2.clone()], &[v1.clone(), v1.clone()]).unwrap();
        assert_eq!(d, OrePoly::new(&a, vec![k2(&a, 2, 2), k2(&a, 0, 1), one.clone()]));
        assert_eq!(multi_annihilator(&a, &[one.clone()], &[v1.clone()]).unwrap(), annihilator(&a, &one, &v1).unwrap());
        assert_eq!(
            multi_annihilator(&a, &[one.clone(), k2(&a, 0, 1)], &[v1.clone(), v1]).unwrap_err(),
            Error::RepeatedUpsilon
        );
    }

    #[test]
    fn cofactor_examples() {
        let a = ctx_a();
        let one = a.one();
        let d = multi_annihilator(&a, &[one.clone()], &[a.full_space()]).unwrap();
        assert_eq!(complement_cofactor(&d, &[one.clone()]).unwrap(), OrePoly::one(&a));
        let d = multi_annihilator(&a, &[one.clone()], &[a.span(&[one.clone()])]).unwrap();
        assert_eq!(complement_cofactor(&d, &[one.clone()]).unwrap(), OrePoly::new(&a, vec![one.clone(), one.clone()]));
        let b = ctx_b();
        let d = multi_annihilator(&b, &[b.one()], &[b.zero_space()]).unwrap();
        assert_eq!(d, OrePoly::one(&b));
        let n = OrePoly::new(&b, vec![b.one(), b.zero(), b.one()]);
        assert_eq!(complement_cofactor(&d, &[b.one()]).unwrap(), n);
    }

    #[test]
    fn pseudo_linearity_and_homomorphism() {
        let mut r = rng(21);
        for (_, ctx) in all() {
            for _ in 0..20 {
                let c = ctx.random_k(&mut r);
                let (a, x) = (ctx.random_k(&mut r), ctx.random_k(&mut r));
                let u = |y: &Elem| apply_u(&ctx, &c, y);
                assert_eq!(u(&(&a * &x)), &(&ctx.theta(&a) * &u(&x)) + &(&ctx.delta(&a) * &x));
                let f = OrePoly::random(&ctx, 4, &mut r);
                let g = OrePoly::random(&ctx, 4, &mut r);
                assert_eq!(ev(&(&f * &g), &c), ev(&f, &c).compose(&ev(&g, &c)));
            }
        }
    }

    #[test]
    fn euclidean_evaluation_formula() {
        let mut r = rng(22);
        for (_, ctx) in all() {
            for _ in 0..20 {
                let c = ctx.random_k(&mut r);
                let a = ctx.random_nonzero_k(&mut r);
                let f = OrePoly::random(&ctx, 5, &mut r);
                let lin = OrePoly::linear(&ctx, &(&apply_u(&ctx, &c, &a) / &a));
                let rem = (&OrePoly::constant(&ctx, a.clone()) * &f).rem_right(&lin).unwrap();
                assert_eq!(ev_apply(&f, &c, &a), rem.coeff(0));
            }
        }
    }

    #[test]
    fn annihilator_is_basis_independent() {
        let mut r = rng(23);
        for (_, ctx) in all() {
            for _ in 0..10 {
                let c = ctx.random_k(&mut r);
                if ctx.is_ramified(&c) {
                    continue;
                }
                let k = r.gen_range(0..=ctx.s());
                let gens: Vec<Elem> = (0..k).map(|_| ctx.random_k(&mut r)).collect();
                let v = ctx.span(&gens);
                let p = annihilator(&ctx, &c, &v).unwrap();
                assert_eq!(ev_kernel(&p, &c).unwrap(), v);
                let mut rev = ctx.subspace_elems(&v);
                rev.reverse();
                let mixed: Vec<Elem> = rev.iter().scan(ctx.zero(), |s, x| {
                    *s = &*s + x;
                    Some(s.clone())
                }).collect();
                assert_eq!(annihilator_of(&ctx, &c, &mixed).unwrap(), p);
            }
        }
    }
}
