//! Switched multiplications x*y = xy + B(x,y)ξ on F_{q^n} and the usual
//! presemifield toolkit: cancellation check, unitalization, nuclei,
//! commutativity and the Ganley–Bierbrauer isotopy test.
//!
//! Every operation built here is F_q-bilinear, so identities in x and y are
//! checked on pairs of basis vectors only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{fp_rank, FieldCtx, FieldElem};
use crate::linpoly::LinearizedPoly;

/// Default cap on q^{2n} for materializing a full multiplication table.
pub const DEFAULT_OP_TABLE_BUDGET: u64 = 1 << 24;

/// Coefficients b_0..b_{n-1} and ξ of B(x,y) = Tr(Σ b_i x y^{q^i}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub b: Vec<FieldElem>,
    pub xi: FieldElem,
}

/// The first element of trace one in γ-power order.
pub fn canonical_alpha(ctx: &FieldCtx) -> FieldElem {
    ctx.elements()
        .find(|&x| ctx.rel_trace(x) == FieldElem::ONE)
        .expect("the trace is onto")
}

impl SwitchSpec {
    pub fn new(ctx: &FieldCtx, b: Vec<FieldElem>, xi: FieldElem) -> Result<Self> {
        if b.len() != ctx.n() as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} form coefficients, got {}",
                ctx.n(),
                b.len()
            )));
        }
        for &c in &b {
            ctx.validate(c)?;
        }
        if ctx.validate(xi)?.is_zero() {
            return Err(Error::Precondition("xi must be nonzero".into()));
        }
        Ok(SwitchSpec { b, xi })
    }

    /// The field multiplication itself (b = 0, ξ = 1).
    pub fn trivial(ctx: &FieldCtx) -> Self {
        SwitchSpec { b: vec![FieldElem::ZERO; ctx.n() as usize], xi: FieldElem::ONE }
    }

    /// M(X) = L(X) - αX with ξ = 1, for the canonical α of trace one.
    pub fn from_linearized(ctx: &FieldCtx, l: &LinearizedPoly) -> Self {
        Self::from_linearized_with_alpha(ctx, l, canonical_alpha(ctx))
    }

    pub fn from_linearized_with_alpha(
        ctx: &FieldCtx,
        l: &LinearizedPoly,
        alpha: FieldElem,
    ) -> Self {
        let mut b = l.coeffs().to_vec();
        b[0] = ctx.sub(b[0], alpha);
        SwitchSpec { b, xi: FieldElem::ONE }
    }

    /// M(X) = ξ Σ b_i X^{q^i}.
    pub fn m_poly(&self, ctx: &FieldCtx) -> LinearizedPoly {
        LinearizedPoly::new(ctx, self.b.clone())
            .expect("validated length")
            .scaled(ctx, self.xi)
    }

    /// The same form rescaled to ξ = 1: coefficients ξ·b_i.
    pub fn normalized(&self, ctx: &FieldCtx) -> Self {
        SwitchSpec {
            b: self.b.iter().map(|&c| ctx.mul(self.xi, c)).collect(),
            xi: FieldElem::ONE,
        }
    }

    /// Σ b_i y^{q^i}, so that B(x,y) = Tr(x · r(y)).
    pub fn right_poly(&self, ctx: &FieldCtx, y: FieldElem) -> FieldElem {
        ctx.sum(
            self.b
                .iter()
                .enumerate()
                .map(|(i, &c)| ctx.mul(c, ctx.frobenius_q(y, i as u64))),
        )
    }

    pub fn bilinear(&self, ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> FieldElem {
        ctx.rel_trace(ctx.mul(x, self.right_poly(ctx, y)))
    }

    /// First a ≠ 0 with Tr(M(a)/a) = -1, if any.
    pub fn predicate_witness(&self, ctx: &FieldCtx) -> Option<FieldElem> {
        let m = self.m_poly(ctx);
        ctx.nonzero().find(|&a| m.trace_quotient(ctx, a) == ctx.neg_one())
    }

    /// Coefficient form of the symmetry B(x,y) = B(y,x):
    /// b_k = b_{n-k}^{q^k} for every k (indices mod n).
    pub fn commutative_criterion(&self, ctx: &FieldCtx) -> bool {
        let n = self.b.len();
        (0..n).all(|k| self.b[k] == ctx.frobenius_q(self.b[(n - k) % n], k as u64))
    }

    /// The map A with A(x)*1 = x: A(x) = x + Tr(s·x)ξ, s = -t/(1 + Tr(tξ)),
    /// t = Σ b_i.
    pub fn unital_a(&self, ctx: &FieldCtx) -> Result<UnitalMap> {
        let t = ctx.sum(self.b.iter().copied());
        let denom = ctx.add(FieldElem::ONE, ctx.rel_trace(ctx.mul(t, self.xi)));
        if denom.is_zero() {
            return Err(Error::Precondition("1 + Tr(t xi) = 0, so 1*1 = 0".into()));
        }
        let s = ctx.neg(ctx.div(t, denom)?);
        Ok(UnitalMap { s, xi: self.xi })
    }
}

/// x ↦ x + Tr(s·x)ξ
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitalMap {
    pub s: FieldElem,
    pub xi: FieldElem,
}

impl UnitalMap {
    pub fn apply(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        ctx.add(x, ctx.mul(ctx.rel_trace(ctx.mul(self.s, x)), self.xi))
    }
}

enum OpKind<'f> {
    Field,
    /// xy + Tr(x·r(y))ξ with r tabulated by ordinal.
    Switch { r: Vec<FieldElem>, xi: FieldElem },
    /// xy + w(y)·Tr(x) with w(y) = a_1 y^{q²} + ã_0 y tabulated by ordinal.
    DualSpread { w: Vec<FieldElem> },
    /// B^{-1}(B_1(x) * y), both maps tabulated by ordinal.
    Isotope { inner: Box<BinaryOp<'f>>, b1: Vec<FieldElem>, b_inv: Vec<FieldElem> },
}

/// A biadditive, F_q-bilinear binary operation on F_{q^n}.
pub struct BinaryOp<'f> {
    ctx: &'f FieldCtx,
    kind: OpKind<'f>,
    table: Option<Vec<FieldElem>>,
}

impl<'f> BinaryOp<'f> {
    pub fn field(ctx: &'f FieldCtx) -> Self {
        BinaryOp { ctx, kind: OpKind::Field, table: None }
    }

    pub fn ctx(&self) -> &'f FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn eval(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if let Some(t) = &self.table {
            return t[x.ordinal() * self.ctx.order() as usize + y.ordinal()];
        }
        self.eval_direct(x, y)
    }

    fn eval_direct(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let ctx = self.ctx;
        match &self.kind {
            OpKind::Field => ctx.mul(x, y),
            OpKind::Switch { r, xi } => {
                let tr = ctx.rel_trace(ctx.mul(x, r[y.ordinal()]));
                ctx.add(ctx.mul(x, y), ctx.mul(tr, *xi))
            }
            OpKind::DualSpread { w } => {
                ctx.add(ctx.mul(x, y), ctx.mul(w[y.ordinal()], ctx.rel_trace(x)))
            }
            OpKind::Isotope { inner, b1, b_inv } => {
                b_inv[inner.eval(b1[x.ordinal()], y).ordinal()]
            }
        }
    }

    /// Materializes the full q^n × q^n table when it fits `budget` entries.
    /// Returns whether a table is now in use.
    pub fn cache_table(&mut self, budget: u64) -> bool {
        if self.table.is_some() {
            return true;
        }
        let q = self.ctx.order() as usize;
        if (q as u128) * (q as u128) > budget as u128 {
            return false;
        }
        let table: Vec<FieldElem> = (0..q * q)
            .into_par_iter()
            .map(|k| self.eval_direct(self.ctx.from_ordinal(k / q), self.ctx.from_ordinal(k % q)))
            .collect();
        self.table = Some(table);
        true
    }

    /// The map x ↦ x*c, tabulated by ordinal.
    pub fn right_mul_table(&self, c: FieldElem) -> Vec<FieldElem> {
        self.ctx.elements().map(|x| self.eval(x, c)).collect()
    }

    /// The map x ↦ c*x, tabulated by ordinal.
    pub fn left_mul_table(&self, c: FieldElem) -> Vec<FieldElem> {
        self.ctx.elements().map(|x| self.eval(c, x)).collect()
    }

    /// Whether 1 is a two-sided identity (checked on an F_q-basis).
    pub fn is_unital(&self) -> bool {
        self.ctx
            .basis()
            .iter()
            .all(|&e| self.eval(e, FieldElem::ONE) == e && self.eval(FieldElem::ONE, e) == e)
    }

    pub fn is_commutative(&self) -> bool {
        let basis = self.ctx.basis();
        basis.iter().enumerate().all(|(i, &x)| {
            basis[i + 1..].iter().all(|&y| self.eval(x, y) == self.eval(y, x))
        })
    }
}

/// x*y = xy + B(x,y)ξ.
pub fn build_switch<'f>(ctx: &'f FieldCtx, spec: &SwitchSpec) -> Result<BinaryOp<'f>> {
    if spec.xi.is_zero() {
        return Err(Error::Precondition("xi must be nonzero".into()));
    }
    let r = ctx.elements().map(|y| spec.right_poly(ctx, y)).collect();
    Ok(BinaryOp { ctx, kind: OpKind::Switch { r, xi: spec.xi }, table: None })
}

/// x∘y = xy + (a_1 y^{q²} + ã_0 y)·Tr(x), defined for n = 4.
pub fn dual_spread_op(ctx: &FieldCtx, a1: FieldElem, a0_tilde: FieldElem) -> Result<BinaryOp<'_>> {
    if ctx.n() != 4 {
        return Err(Error::Precondition(format!("dual spread needs n = 4, got {}", ctx.n())));
    }
    let w = ctx
        .elements()
        .map(|y| ctx.add(ctx.mul(a1, ctx.frobenius_q(y, 2)), ctx.mul(a0_tilde, y)))
        .collect();
    Ok(BinaryOp { ctx, kind: OpKind::DualSpread { w }, table: None })
}

/// Nonzero x, y with x*y = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDivisor {
    pub x: FieldElem,
    pub y: FieldElem,
}

fn rank_of(op: &BinaryOp<'_>, basis: &[FieldElem], f: impl Fn(FieldElem) -> FieldElem) -> usize {
    let ctx = op.ctx;
    fp_rank(basis.iter().map(|&e| ctx.vector(f(e))).collect(), ctx.p())
}

/// First zero divisor, scanning a in γ-power order and checking the F_p-rank
/// of x ↦ x*a and x ↦ a*x.
pub fn find_zero_divisor(op: &BinaryOp<'_>) -> Option<ZeroDivisor> {
    let ctx = op.ctx;
    let basis = ctx.prime_basis();
    let full = basis.len();
    let bad = (0..ctx.group_order()).into_par_iter().find_first(|&k| {
        let a = ctx.from_log(k);
        rank_of(op, &basis, |e| op.eval(e, a)) < full || rank_of(op, &basis, |e| op.eval(a, e)) < full
    })?;
    let a = ctx.from_log(bad);
    ctx.nonzero()
        .find_map(|x| {
            if op.eval(x, a).is_zero() {
                Some(ZeroDivisor { x, y: a })
            } else if op.eval(a, x).is_zero() {
                Some(ZeroDivisor { x: a, y: x })
            } else {
                None
            }
        })
}

/// Whether both one-sided multiplications by every a ≠ 0 are bijective.
pub fn verify_presemifield(op: &BinaryOp<'_>) -> bool {
    find_zero_divisor(op).is_none()
}

/// Whether the cancellation check on the switched operation agrees with the
/// trace condition Tr(M(a)/a) ≠ -1 for all a ≠ 0.
pub fn predicate_equivalence_check(ctx: &FieldCtx, spec: &SwitchSpec) -> Result<bool> {
    let op = build_switch(ctx, spec)?;
    Ok(verify_presemifield(&op) == spec.predicate_witness(ctx).is_none())
}

fn invert_table(ctx: &FieldCtx, map: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut inv = vec![None; map.len()];
    for (ord, &img) in map.iter().enumerate() {
        let slot = &mut inv[img.ordinal()];
        if slot.is_some() {
            return Err(Error::Precondition("operation is not cancellative".into()));
        }
        *slot = Some(ctx.from_ordinal(ord));
    }
    Ok(inv.into_iter().map(|x| x.expect("bijection")).collect())
}

/// x⋆y = B^{-1}(B_1(x)*y) with B(x) = 1*x and B_1(x)*1 = 1*x.
pub fn unitalize<'f>(op: BinaryOp<'f>) -> Result<BinaryOp<'f>> {
    let ctx = op.ctx;
    if let Some(z) = find_zero_divisor(&op) {
        return Err(Error::Precondition(format!(
            "operation is not cancellative: {} * {} = 0",
            z.x, z.y
        )));
    }
    let b = op.left_mul_table(FieldElem::ONE);
    let r_inv = invert_table(ctx, &op.right_mul_table(FieldElem::ONE))?;
    let b1 = b.iter().map(|y| r_inv[y.ordinal()]).collect();
    let b_inv = invert_table(ctx, &b)?;
    Ok(BinaryOp { ctx, kind: OpKind::Isotope { inner: Box::new(op), b1, b_inv }, table: None })
}

/// Cardinalities of the left, middle and right nucleus and the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nuclei {
    pub left: u64,
    pub middle: u64,
    pub right: u64,
    pub center: u64,
}

impl Nuclei {
    pub fn as_array(&self) -> [u64; 4] {
        [self.left, self.middle, self.right, self.center]
    }
}

/// Membership masks (by ordinal) of the three nuclei and the center.
pub struct NucleusSets {
    pub left: Vec<bool>,
    pub middle: Vec<bool>,
    pub right: Vec<bool>,
    pub center: Vec<bool>,
}

pub fn nucleus_sets(op: &BinaryOp<'_>) -> Result<NucleusSets> {
    if !op.is_unital() {
        return Err(Error::Precondition("nuclei need a unital operation".into()));
    }
    let ctx = op.ctx;
    let basis = ctx.basis();
    let pairs: Vec<(FieldElem, FieldElem)> =
        basis.iter().flat_map(|&x| basis.iter().map(move |&y| (x, y))).collect();
    let m = |x, y| op.eval(x, y);
    let flags: Vec<[bool; 4]> = ctx
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| {
            let l = pairs.iter().all(|&(x, y)| m(m(a, x), y) == m(a, m(x, y)));
            let mid = pairs.iter().all(|&(x, y)| m(m(x, a), y) == m(x, m(a, y)));
            let r = pairs.iter().all(|&(x, y)| m(m(x, y), a) == m(x, m(y, a)));
            let comm = basis.iter().all(|&x| m(a, x) == m(x, a));
            [l, mid, r, l && mid && r && comm]
        })
        .collect();
    let column = |i: usize| flags.iter().map(|f| f[i]).collect::<Vec<bool>>();
    Ok(NucleusSets { left: column(0), middle: column(1), right: column(2), center: column(3) })
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1
}

pub fn nuclei(op: &BinaryOp<'_>) -> Result<Nuclei> {
    let sets = nucleus_sets(op)?;
    let count = |v: &[bool]| v.iter().filter(|&&b| b).count() as u64;
    let out = Nuclei {
        left: count(&sets.left),
        middle: count(&sets.middle),
        right: count(&sets.right),
        center: count(&sets.center),
    };
    let ctx = op.ctx;
    for size in out.as_array() {
        if !is_power_of(size, ctx.p() as u64) || ctx.order() % size != 0 {
            return Err(Error::Contradiction(format!(
                "nucleus of size {size} is not a subfield of F_{}",
                ctx.order()
            )));
        }
    }
    Ok(out)
}

/// Outcome of the Ganley–Bierbrauer scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GanleyResult {
    pub isotopic_to_commutative: bool,
    pub witness: Option<FieldElem>,
}

/// Whether some v ≠ 0 satisfies A(v*x)*y = A(v*y)*x, where A(x)*1 = x.
/// The first witness in γ-power order is reported.
pub fn ganley_bierbrauer_test(op: &BinaryOp<'_>) -> Result<GanleyResult> {
    let ctx = op.ctx;
    let a = invert_table(ctx, &op.right_mul_table(FieldElem::ONE))?;
    let basis = ctx.basis();
    let witness = (0..ctx.group_order()).into_par_iter().find_first(|&k| {
        let v = ctx.from_log(k);
        basis.iter().enumerate().all(|(i, &x)| {
            basis[i + 1..].iter().all(|&y| {
                op.eval(a[op.eval(v, x).ordinal()], y) == op.eval(a[op.eval(v, y).ordinal()], x)
            })
        })
    });
    let witness = witness.map(|k| ctx.from_log(k));
    Ok(GanleyResult { isotopic_to_commutative: witness.is_some(), witness })
}
