//! q-linearized polynomials L(X) = Σ a_i X^{q^i} over F_{q^n}, the switching
//! predicate Tr(L(x)/x) ≠ 0 on F_{q^n}^*, and a search over coefficient space.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};

/// Default cap on the number of candidates a search may visit.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElem>,
}

impl LinearizedPoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != ctx.n() as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                ctx.n(),
                coeffs.len()
            )));
        }
        for &c in &coeffs {
            ctx.validate(c)?;
        }
        Ok(LinearizedPoly { coeffs })
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        LinearizedPoly { coeffs: vec![FieldElem::ZERO; ctx.n() as usize] }
    }

    /// a·X^{q^i}
    pub fn monomial(ctx: &FieldCtx, i: usize, a: FieldElem) -> Self {
        let mut l = Self::zero(ctx);
        l.coeffs[i % ctx.n() as usize] = a;
        l
    }

    /// Builds L from (index, coefficient) pairs; unspecified coefficients are zero.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(usize, FieldElem)]) -> Result<Self> {
        let mut l = Self::zero(ctx);
        for &(i, a) in terms {
            if i >= l.coeffs.len() {
                return Err(Error::InvalidInput(format!("term index {i} out of range")));
            }
            l.coeffs[i] = ctx.validate(a)?;
        }
        Ok(l)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Indices i ≥ 1 with a_i ≠ 0.
    pub fn higher_support(&self) -> Vec<usize> {
        (1..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// True when a_i = 0 for every i ≥ 1.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        ctx.sum(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| ctx.mul(a, ctx.frobenius_q(x, i as u64))),
        )
    }

    /// The element a_0 + Σ_{i≥1} a_i x^{q^i - 1}, equal to L(x)/x for x ≠ 0
    /// and to a_0 at x = 0.
    pub fn quotient(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        if x.is_zero() {
            return self.coeffs[0];
        }
        let n = ctx.group_order() as u128;
        ctx.sum(self.coeffs.iter().enumerate().map(|(i, &a)| {
            let e = (ctx.q_power_mod_group(i as u64) as u128 + n - 1) % n;
            ctx.mul(a, ctx.pow(x, e))
        }))
    }

    /// Tr(L(x)/x), with the value Tr(a_0) at x = 0.
    pub fn trace_quotient(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        ctx.rel_trace(self.quotient(ctx, x))
    }

    /// First nonzero x (γ-power order) with Tr(L(x)/x) = 0.
    pub fn switching_witness(&self, ctx: &FieldCtx) -> Option<FieldElem> {
        QuotientEvaluator::new(ctx).first_zero(&self.coeffs)
    }

    /// Tr(L(x)/x) ≠ 0 for every x ∈ F_{q^n}^*.
    pub fn is_switching(&self, ctx: &FieldCtx) -> bool {
        self.switching_witness(ctx).is_none()
    }

    /// Whether x ↦ L(x) has trivial kernel.
    pub fn is_permutation(&self, ctx: &FieldCtx) -> bool {
        ctx.nonzero().all(|x| !self.eval(ctx, x).is_zero())
    }

    /// c·L(X)
    pub fn scaled(&self, ctx: &FieldCtx, c: FieldElem) -> Self {
        LinearizedPoly { coeffs: self.coeffs.iter().map(|&a| ctx.mul(c, a)).collect() }
    }

    /// L(dX)/d, i.e. coefficients a_i d^{q^i - 1}.
    pub fn reparametrized(&self, ctx: &FieldCtx, d: FieldElem) -> Result<Self> {
        let d_inv = ctx.inv(d)?;
        Ok(LinearizedPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| ctx.mul(ctx.mul(a, ctx.frobenius_q(d, i as u64)), d_inv))
                .collect(),
        })
    }
}

/// Evaluates Tr(L(x)/x) along γ-powers with precomputed exponents q^i - 1.
#[derive(Clone)]
pub struct QuotientEvaluator<'f> {
    ctx: &'f FieldCtx,
    exps: Vec<u64>,
}

impl<'f> QuotientEvaluator<'f> {
    pub fn new(ctx: &'f FieldCtx) -> Self {
        let n = ctx.group_order();
        let exps = (0..ctx.n() as u64)
            .map(|i| (ctx.q_power_mod_group(i) + n - 1) % n)
            .collect();
        QuotientEvaluator { ctx, exps }
    }

    /// Tr(Σ a_i γ^{k(q^i-1)}) for x = γ^k.
    #[inline]
    pub fn at_log(&self, coeffs: &[FieldElem], k: u64) -> FieldElem {
        let ctx = self.ctx;
        let n = ctx.group_order();
        let mut acc = FieldElem::ZERO;
        for (&a, &e) in coeffs.iter().zip(&self.exps) {
            if a.is_zero() {
                continue;
            }
            let x = ctx.from_log(((k as u128 * e as u128) % n as u128) as u64);
            acc = ctx.add(acc, ctx.rel_trace(ctx.mul(a, x)));
        }
        acc
    }

    pub fn first_zero(&self, coeffs: &[FieldElem]) -> Option<FieldElem> {
        (0..self.ctx.group_order())
            .find(|&k| self.at_log(coeffs, k).is_zero())
            .map(|k| self.ctx.from_log(k))
    }

    pub fn is_switching(&self, coeffs: &[FieldElem]) -> bool {
        self.first_zero(coeffs).is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SearchMode {
    /// Every coefficient tuple on the support.
    Exhaustive,
    /// `budget` uniform samples drawn from ChaCha8 seeded with `seed`.
    Random { seed: u64 },
}

fn validate_support(ctx: &FieldCtx, support: &[usize]) -> Result<Vec<usize>> {
    let mut s = support.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&i) = s.iter().find(|&&i| i >= ctx.n() as usize) {
        return Err(Error::InvalidInput(format!("support index {i} exceeds n - 1")));
    }
    Ok(s)
}

/// Number of candidates an exhaustive search over `support` visits.
pub fn exhaustive_size(ctx: &FieldCtx, support_len: usize) -> u128 {
    (ctx.order() as u128).checked_pow(support_len as u32).unwrap_or(u128::MAX)
}

/// All (exhaustive) or sampled (random) switching polynomials whose nonzero
/// coefficients lie on `support`. Exhaustive results come back in
/// lexicographic order of coefficient ordinals; random results in sample
/// order without duplicates.
pub fn search(
    ctx: &FieldCtx,
    support: &[usize],
    mode: SearchMode,
    budget: u64,
) -> Result<Vec<LinearizedPoly>> {
    let support = validate_support(ctx, support)?;
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let eval = QuotientEvaluator::new(ctx);
    let n = ctx.n() as usize;
    let order = ctx.order() as usize;
    match mode {
        SearchMode::Exhaustive => {
            let needed = exhaustive_size(ctx, support.len());
            if needed > budget as u128 {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let (&top, rest) = support.split_last().expect("nonempty");
            let mut found: Vec<LinearizedPoly> = (0..order)
                .into_par_iter()
                .flat_map_iter(|top_ord| {
                    let mut hits = Vec::new();
                    let mut coeffs = vec![FieldElem::ZERO; n];
                    coeffs[top] = ctx.from_ordinal(top_ord);
                    let mut digits = vec![0usize; rest.len()];
                    loop {
                        for (&i, &d) in rest.iter().zip(&digits) {
                            coeffs[i] = ctx.from_ordinal(d);
                        }
                        if eval.is_switching(&coeffs) {
                            hits.push(LinearizedPoly { coeffs: coeffs.clone() });
                        }
                        // odometer
                        let mut pos = 0;
                        loop {
                            if pos == digits.len() {
                                return hits;
                            }
                            digits[pos] += 1;
                            if digits[pos] < order {
                                break;
                            }
                            digits[pos] = 0;
                            pos += 1;
                        }
                    }
                })
                .collect();
            found.sort();
            Ok(found)
        }
        SearchMode::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let candidates: Vec<Vec<FieldElem>> = (0..budget)
                .map(|_| {
                    let mut coeffs = vec![FieldElem::ZERO; n];
                    for &i in &support {
                        coeffs[i] = ctx.from_ordinal(rng.gen_range(0..order));
                    }
                    coeffs
                })
                .collect();
            let keep: Vec<bool> = candidates.par_iter().map(|c| eval.is_switching(c)).collect();
            let mut seen = HashSet::new();
            Ok(candidates
                .into_iter()
                .zip(keep)
                .filter(|(c, k)| *k && seen.insert(c.clone()))
                .map(|(coeffs, _)| LinearizedPoly { coeffs })
                .collect())
        }
    }
}
