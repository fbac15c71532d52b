//! Explicit switching polynomials for n = 2, 3, 4 and a classifier that
//! matches an arbitrary L against them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linpoly::LinearizedPoly;
use crate::presemifield::{
    build_switch, canonical_alpha, find_zero_divisor, ganley_bierbrauer_test, nuclei, unitalize,
    BinaryOp, GanleyResult, Nuclei, SwitchSpec, ZeroDivisor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyKind {
    N2,
    N3,
    N4,
    N4Commutative,
}

/// A family member together with the linearized polynomial it induces.
/// Parameters: (a_1, a_0) for N2 and N4, (u, v, θ, a) for N3, (a_1, ã_0)
/// for N4Commutative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub params: Vec<FieldElem>,
    pub l: LinearizedPoly,
}

fn require_n(ctx: &FieldCtx, n: u32) -> Result<()> {
    if ctx.n() != n {
        return Err(Error::Precondition(format!("needs n = {n}, got {}", ctx.n())));
    }
    Ok(())
}

fn require_odd(ctx: &FieldCtx) -> Result<()> {
    if ctx.p() == 2 {
        return Err(Error::Precondition("needs odd characteristic".into()));
    }
    Ok(())
}

/// Whether X² + Tr(a_0)X + a_1^{q+1} has two distinct roots in F_q.
pub fn n2_criterion(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<bool> {
    require_n(ctx, 2)?;
    let b = ctx.rel_trace(a0);
    let c = ctx.pow(a1, ctx.q() as u128 + 1);
    let roots = ctx
        .subfield()
        .iter()
        .filter(|&&x| ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(b, x)), c).is_zero())
        .count();
    Ok(roots == 2)
}

/// All y ∈ F_{q²}^* with a_1y² + Tr(a_0)y + a_1^q = 0. Zero is left out
/// since y stands for x^{q-1} with x ≠ 0.
pub fn n2_lemma_roots(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<Vec<FieldElem>> {
    require_n(ctx, 2)?;
    let b = ctx.rel_trace(a0);
    let c = ctx.frobenius_q(a1, 1);
    Ok(ctx
        .nonzero()
        .filter(|&y| ctx.sum([ctx.mul(a1, ctx.mul(y, y)), ctx.mul(b, y), c]).is_zero())
        .collect())
}

/// The switching predicate for a_1X^q + a_0X read off the quadratic roots:
/// true iff no root y is a (q-1)-th power of a nonzero element.
pub fn n2_lemma_predicate(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<bool> {
    let q1 = ctx.q() as u128 + 1;
    Ok(n2_lemma_roots(ctx, a1, a0)?
        .into_iter()
        .all(|y| ctx.pow(y, q1) != FieldElem::ONE))
}

pub fn n2_instance(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<FamilyInstance> {
    if !n2_criterion(ctx, a1, a0)? {
        return Err(Error::Precondition("quadratic lacks two distinct roots in F_q".into()));
    }
    let l = LinearizedPoly::from_terms(ctx, &[(0, a0), (1, a1)])?;
    assert_switching(ctx, &l)?;
    Ok(FamilyInstance { kind: FamilyKind::N2, params: vec![a1, a0], l })
}

fn assert_switching(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<()> {
    match l.switching_witness(ctx) {
        None => Ok(()),
        Some(x) => Err(Error::Contradiction(format!(
            "constructed L = {:?} has Tr(L(x)/x) = 0 at x = {x}",
            l.coeffs()
        ))),
    }
}

/// u^{q²} v^q
fn n3_scale(ctx: &FieldCtx, u: FieldElem, v: FieldElem) -> FieldElem {
    ctx.mul(ctx.frobenius_q(u, 2), ctx.frobenius_q(v, 1))
}

/// {x : Tr(u^{q²}v^q x) = u^{q²+q+1} + v^{q²+q+1}} in γ-power order.
pub fn n3_b_set(ctx: &FieldCtx, u: FieldElem, v: FieldElem) -> Result<Vec<FieldElem>> {
    require_n(ctx, 3)?;
    if u.is_zero() || v.is_zero() {
        return Err(Error::Precondition("u and v must be nonzero".into()));
    }
    let c = n3_scale(ctx, u, v);
    let rhs = ctx.add(ctx.rel_norm(u), ctx.rel_norm(v));
    Ok(ctx.elements().filter(|&x| ctx.rel_trace(ctx.mul(c, x)) == rhs).collect())
}

fn n3_params_valid(ctx: &FieldCtx, u: FieldElem, v: FieldElem) -> Result<()> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::Precondition("u and v must be nonzero".into()));
    }
    if ctx.rel_norm(ctx.neg(ctx.div(v, u)?)) == FieldElem::ONE {
        return Err(Error::Precondition("N(-v/u) = 1".into()));
    }
    Ok(())
}

/// L = u^{q²}v^q (u a^{q²-1} X^{q²} + v a^{q-1} X^q + θX).
pub fn n3_construct(
    ctx: &FieldCtx,
    u: FieldElem,
    v: FieldElem,
    theta: FieldElem,
    a: FieldElem,
) -> Result<FamilyInstance> {
    require_n(ctx, 3)?;
    n3_params_valid(ctx, u, v)?;
    if a.is_zero() {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    if !n3_b_set(ctx, u, v)?.contains(&theta) {
        return Err(Error::Precondition(format!("theta = {theta} is not in the admissible set")));
    }
    let q = ctx.q() as u128;
    let c = n3_scale(ctx, u, v);
    let a2 = ctx.mul(c, ctx.mul(u, ctx.pow(a, q * q - 1)));
    let a1 = ctx.mul(c, ctx.mul(v, ctx.pow(a, q - 1)));
    let a0 = ctx.mul(c, theta);
    let l = LinearizedPoly::from_terms(ctx, &[(0, a0), (1, a1), (2, a2)])?;
    assert_switching(ctx, &l)?;
    Ok(FamilyInstance { kind: FamilyKind::N3, params: vec![u, v, theta, a], l })
}

/// Checks (a·x) *_a y = x *_1 (a·y) for all x, y, where *_a is the
/// switched product of the N3 member with parameter a.
pub fn n3_a_isotopy_check(
    ctx: &FieldCtx,
    u: FieldElem,
    v: FieldElem,
    theta: FieldElem,
    a: FieldElem,
) -> Result<bool> {
    let one = n3_construct(ctx, u, v, theta, FieldElem::ONE)?;
    let other = n3_construct(ctx, u, v, theta, a)?;
    let op1 = build_switch(ctx, &SwitchSpec::from_linearized(ctx, &one.l))?;
    let opa = build_switch(ctx, &SwitchSpec::from_linearized(ctx, &other.l))?;
    Ok(ctx.elements().all(|x| {
        ctx.elements()
            .all(|y| opa.eval(ctx.mul(a, x), y) == op1.eval(x, ctx.mul(a, y)))
    }))
}

/// For a_1 ≠ 0, p odd: a_1^{q²+1} is a nonzero square of F_q and Tr(a_0) = 0.
pub fn n4_criterion(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<bool> {
    require_n(ctx, 4)?;
    require_odd(ctx)?;
    if a1.is_zero() {
        return Err(Error::Precondition("a_1 = 0 is the monomial case".into()));
    }
    let q = ctx.q() as u128;
    Ok(ctx.is_square_in_base(ctx.pow(a1, q * q + 1)) && ctx.rel_trace(a0).is_zero())
}

pub fn n4_instance(ctx: &FieldCtx, a1: FieldElem, a0: FieldElem) -> Result<FamilyInstance> {
    if !n4_criterion(ctx, a1, a0)? {
        return Err(Error::Precondition("criterion fails for (a_1, a_0)".into()));
    }
    let l = LinearizedPoly::from_terms(ctx, &[(0, a0), (2, a1)])?;
    assert_switching(ctx, &l)?;
    Ok(FamilyInstance { kind: FamilyKind::N4, params: vec![a1, a0], l })
}

/// x*y = xy + Tr(a_1 x y^{q²} + ã_0 x y), with Tr(ã_0) = -1.
pub struct N4Commutative<'f> {
    pub instance: FamilyInstance,
    pub spec: SwitchSpec,
    pub op: BinaryOp<'f>,
}

pub fn n4_commutative_construct(
    ctx: &FieldCtx,
    a1: FieldElem,
    a0_tilde: FieldElem,
) -> Result<N4Commutative<'_>> {
    require_n(ctx, 4)?;
    require_odd(ctx)?;
    let q = ctx.q() as u128;
    if a1.is_zero() || !ctx.is_square_in_base(ctx.pow(a1, q * q + 1)) {
        return Err(Error::Precondition("a_1^{q²+1} must be a nonzero square of F_q".into()));
    }
    if ctx.rel_trace(a0_tilde) != ctx.neg_one() {
        return Err(Error::Precondition("Tr(ã_0) must be -1".into()));
    }
    let spec = SwitchSpec::new(
        ctx,
        vec![a0_tilde, FieldElem::ZERO, a1, FieldElem::ZERO],
        FieldElem::ONE,
    )?;
    let alpha = canonical_alpha(ctx);
    let l = LinearizedPoly::from_terms(ctx, &[(0, ctx.add(a0_tilde, alpha)), (2, a1)])?;
    assert_switching(ctx, &l)?;
    let op = build_switch(ctx, &spec)?;
    if let Some(z) = find_zero_divisor(&op) {
        return Err(Error::Contradiction(format!("zero divisor {} * {} = 0", z.x, z.y)));
    }
    Ok(N4Commutative {
        instance: FamilyInstance { kind: FamilyKind::N4Commutative, params: vec![a1, a0_tilde], l },
        spec,
        op,
    })
}

/// Parameters (u, v, θ, a) reproducing a given L at n = 3, if any.
pub fn n3_match(ctx: &FieldCtx, l: &LinearizedPoly) -> Option<[FieldElem; 4]> {
    if ctx.n() != 3 {
        return None;
    }
    let (c0, c1, c2) = (l.coeff(0), l.coeff(1), l.coeff(2));
    if c1.is_zero() || c2.is_zero() {
        return None;
    }
    let q = ctx.q() as u128;
    for u in ctx.nonzero() {
        for v in ctx.nonzero() {
            if n3_params_valid(ctx, u, v).is_err() {
                continue;
            }
            let scale = n3_scale(ctx, u, v);
            // w = a^{q-1} must be a (q-1)-th power, i.e. of norm one.
            let w = ctx.div(c1, ctx.mul(scale, v)).expect("nonzero");
            if ctx.rel_norm(w) != FieldElem::ONE {
                continue;
            }
            if ctx.mul(ctx.mul(scale, u), ctx.pow(w, q + 1)) != c2 {
                continue;
            }
            let theta = ctx.div(c0, scale).expect("nonzero");
            let rhs = ctx.add(ctx.rel_norm(u), ctx.rel_norm(v));
            if ctx.rel_trace(ctx.mul(scale, theta)) != rhs {
                continue;
            }
            let a = ctx
                .nonzero()
                .find(|&a| ctx.pow(a, q - 1) == w)
                .expect("norm-one elements are (q-1)-th powers");
            return Some([u, v, theta, a]);
        }
    }
    None
}

/// Everything known about the presemifield induced by L.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub predicate: bool,
    pub monomial: bool,
    pub families: Vec<FamilyKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n3_params: Option<[FieldElem; 4]>,
    pub spec: SwitchSpec,
    pub presemifield: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_divisor: Option<ZeroDivisor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ganley: Option<GanleyResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nuclei: Option<Nuclei>,
}

/// Family membership of L (by matching parameters).
pub fn family_membership(ctx: &FieldCtx, l: &LinearizedPoly) -> (Vec<FamilyKind>, Option<[FieldElem; 4]>) {
    let mut kinds = Vec::new();
    if ctx.n() == 2 && n2_criterion(ctx, l.coeff(1), l.coeff(0)).unwrap_or(false) {
        kinds.push(FamilyKind::N2);
    }
    let n3 = n3_match(ctx, l);
    if n3.is_some() {
        kinds.push(FamilyKind::N3);
    }
    if ctx.n() == 4
        && ctx.p() != 2
        && l.higher_support() == [2]
        && n4_criterion(ctx, l.coeff(2), l.coeff(0)).unwrap_or(false)
    {
        kinds.push(FamilyKind::N4);
    }
    (kinds, n3)
}

pub fn classify(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<Classification> {
    let predicate = l.is_switching(ctx);
    let (families, n3_params) = family_membership(ctx, l);
    let spec = SwitchSpec::from_linearized(ctx, l);
    let op = build_switch(ctx, &spec)?;
    let zero_divisor = find_zero_divisor(&op);
    let presemifield = zero_divisor.is_none();
    if presemifield != predicate {
        return Err(Error::Contradiction(format!(
            "predicate {predicate} but presemifield {presemifield} for L = {:?}",
            l.coeffs()
        )));
    }
    let mut report = Classification {
        predicate,
        monomial: l.is_monomial(),
        families,
        n3_params,
        spec,
        presemifield,
        zero_divisor,
        commutative: None,
        ganley: None,
        nuclei: None,
    };
    if presemifield {
        report.commutative = Some(op.is_commutative());
        report.ganley = Some(ganley_bierbrauer_test(&op)?);
        report.nuclei = Some(nuclei(&unitalize(op)?)?);
    }
    Ok(report)
}
