//! Base-q digit combinatorics behind the (q-1)-th power expansion of
//! Tr(L(x)/x): the index set Ω₀ with its wrapped addition ⊕, the run
//! vectors s(j,i), ascent/descent multisets, the coefficients C(α), and a
//! direct expansion used to cross-check them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linpoly::{search, LinearizedPoly, SearchMode};

/// Default cap on the number of (j, i) tuples enumerated by [`c_alpha`].
pub const DEFAULT_TUPLE_BUDGET: u64 = 1 << 24;

/// Digits d_0..d_{n-1} in base q, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitVector {
    pub q: u64,
    pub digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(q: u64, digits: Vec<u64>) -> Result<Self> {
        if q < 2 || digits.iter().any(|&d| d >= q) {
            return Err(Error::InvalidInput(format!("digits {digits:?} not in base {q}")));
        }
        Ok(DigitVector { q, digits })
    }

    /// ψ(value): the n base-q digits of a value below q^n.
    pub fn from_value(q: u64, n: u32, mut value: u64) -> Result<Self> {
        if value >= q.pow(n) {
            return Err(Error::InvalidInput(format!("{value} needs more than {n} digits")));
        }
        let digits = (0..n)
            .map(|_| {
                let d = value % q;
                value /= q;
                d
            })
            .collect();
        Ok(DigitVector { q, digits })
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }
}

/// (q^n - 1)/(q - 1), the top of Ω₀.
pub fn omega0_top(q: u64, n: u32) -> u64 {
    (q.pow(n) - 1) / (q - 1)
}

/// α ⊕ β on Ω₀: the sum modulo (q^n-1)/(q-1), where a vanishing sum of
/// not-both-zero operands is reported as the top value instead of 0.
pub fn oplus(alpha: u64, beta: u64, q: u64, n: u32) -> Result<u64> {
    let top = omega0_top(q, n);
    if alpha > top || beta > top {
        return Err(Error::InvalidInput(format!("{alpha} or {beta} outside 0..={top}")));
    }
    Ok(oplus_unchecked(alpha, beta, top))
}

#[inline]
fn oplus_unchecked(alpha: u64, beta: u64, top: u64) -> u64 {
    if alpha == 0 && beta == 0 {
        return 0;
    }
    match (alpha + beta) % top {
        0 => top,
        r => r,
    }
}

/// s(j,i): i ones starting at position j, wrapping modulo n.
pub fn s_digits(j: u32, i: u32, n: u32) -> Vec<u64> {
    let mut d = vec![0u64; n as usize];
    for k in 0..i.min(n) {
        d[((j + k) % n) as usize] = 1;
    }
    d
}

pub fn s_value(j: u32, i: u32, q: u64, n: u32) -> u64 {
    s_digits(j, i, n).iter().rev().fold(0, |acc, &d| acc * q + d)
}

/// Ascending and descending positions with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AscDes {
    pub asc: Vec<usize>,
    pub des: Vec<usize>,
    pub count: usize,
}

/// Position i (mod n) ascends when d_i > d_{i-1} and descends when
/// d_i < d_{i-1}, with multiplicity |d_i - d_{i-1}|.
pub fn asc_des(digits: &[u64]) -> AscDes {
    let n = digits.len();
    let mut asc = Vec::new();
    let mut des = Vec::new();
    for i in 0..n {
        let (cur, prev) = (digits[i], digits[(i + n - 1) % n]);
        if cur > prev {
            asc.extend(std::iter::repeat_n(i, (cur - prev) as usize));
        } else {
            des.extend(std::iter::repeat_n(i, (prev - cur) as usize));
        }
    }
    let count = asc.len();
    debug_assert_eq!(count, des.len());
    AscDes { asc, des, count }
}

/// Coefficient of X^{α(q-1)} in [Σ_{i,j} a_i^{q^j} X^{q^j(q^i-1)}]^{q-1}
/// reduced mod X^{q^n} - X, computed as the raw sum over all (q-1)-tuples of
/// pairs (j, i) whose s-values ⊕-add to α.
pub fn c_alpha(ctx: &FieldCtx, l: &LinearizedPoly, alpha: u64, budget: u64) -> Result<FieldElem> {
    let (q, n) = (ctx.q(), ctx.n());
    let top = omega0_top(q, n);
    if alpha > top {
        return Err(Error::InvalidInput(format!("alpha {alpha} outside 0..={top}")));
    }
    let k = (q - 1) as u32;
    let pairs = (n as u64) * (n as u64);
    let needed = (pairs as u128).pow(k);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    // (s value, a_i^{q^j}) for every (j, i)
    let terms: Vec<(u64, FieldElem)> = (0..n)
        .flat_map(|j| (0..n).map(move |i| (j, i)))
        .map(|(j, i)| {
            (s_value(j, i, q, n), ctx.frobenius_q(l.coeff(i as usize), j as u64))
        })
        .collect();
    let mut total = FieldElem::ZERO;
    let mut idx = vec![0usize; k as usize];
    loop {
        let mut s = 0u64;
        let mut prod = FieldElem::ONE;
        for &t in &idx {
            s = oplus_unchecked(s, terms[t].0, top);
            prod = ctx.mul(prod, terms[t].1);
        }
        if s == alpha {
            total = ctx.add(total, prod);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < terms.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Exponent reduction modulo X^{q^n} - X: 0 stays 0, e > 0 lands in 1..=q^n-1.
#[inline]
fn reduce_exponent(e: u128, group: u128) -> u64 {
    if e == 0 {
        0
    } else {
        (1 + (e - 1) % group) as u64
    }
}

/// All nonzero coefficients of [Σ_{i,j} a_i^{q^j} X^{q^j(q^i-1)}]^{q-1}
/// reduced mod X^{q^n} - X, by repeated sparse multiplication.
pub fn expansion_oracle(ctx: &FieldCtx, l: &LinearizedPoly) -> BTreeMap<u64, FieldElem> {
    let (q, n) = (ctx.q() as u128, ctx.n());
    let group = ctx.group_order() as u128;
    let mut base: BTreeMap<u64, FieldElem> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let e = q.pow(j) * (q.pow(i) - 1);
            let c = ctx.frobenius_q(l.coeff(i as usize), j as u64);
            let slot = base.entry(reduce_exponent(e, group)).or_insert(FieldElem::ZERO);
            *slot = ctx.add(*slot, c);
        }
    }
    base.retain(|_, c| !c.is_zero());
    let mut acc: BTreeMap<u64, FieldElem> = BTreeMap::from([(0, FieldElem::ONE)]);
    for _ in 0..(q - 1) {
        let mut next = BTreeMap::new();
        for (&e1, &c1) in &acc {
            for (&e2, &c2) in &base {
                let slot = next
                    .entry(reduce_exponent(e1 as u128 + e2 as u128, group))
                    .or_insert(FieldElem::ZERO);
                *slot = ctx.add(*slot, ctx.mul(c1, c2));
            }
        }
        next.retain(|_, c: &mut FieldElem| !c.is_zero());
        acc = next;
    }
    acc
}

/// The expected right-hand side Tr(a_0)^{q-1} + [1 - Tr(a_0)^{q-1}]X^{q^n-1}.
pub fn congruence_target(ctx: &FieldCtx, l: &LinearizedPoly) -> BTreeMap<u64, FieldElem> {
    let c = ctx.pow(ctx.rel_trace(l.coeff(0)), ctx.q() as u128 - 1);
    let mut out = BTreeMap::new();
    if !c.is_zero() {
        out.insert(0, c);
    }
    let top = ctx.sub(FieldElem::ONE, c);
    if !top.is_zero() {
        out.insert(ctx.group_order(), top);
    }
    out
}

/// First exponent where the expansion differs from the congruence target.
pub fn congruence_violation(ctx: &FieldCtx, l: &LinearizedPoly) -> Option<u64> {
    let got = expansion_oracle(ctx, l);
    let want = congruence_target(ctx, l);
    got.keys()
        .chain(want.keys())
        .copied()
        .filter(|e| got.get(e) != want.get(e))
        .min()
}

pub fn congruence_holds(ctx: &FieldCtx, l: &LinearizedPoly) -> bool {
    congruence_violation(ctx, l).is_none()
}

/// Index data (i_1 < … < i_{p-1}; t_1 ≥ … ≥ t_{p-2}) of one vanishing sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma42Tuple {
    pub i: Vec<usize>,
    pub t: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma42Outcome {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<Lemma42Tuple>,
}

fn combinations(lo: usize, hi: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in combinations(first + 1, hi, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Non-increasing tuples of length k with entries in 0..=max.
fn non_increasing(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in non_increasing(k - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Lexicographic successor of an index permutation; false after the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// For q = p prime and a switching L, every sum
/// Σ_τ a_{i_{p-1}+τ(p-1)} Π_{k<p-1} a_{i_k+τ(k)}^{p^{i_{p-1}-i_k}}
/// over all orderings τ of (t_1, …, t_{p-2}, 0) vanishes.
pub fn lemma42_check(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<Lemma42Outcome> {
    if ctx.m() != 1 {
        return Err(Error::Precondition("needs q prime".into()));
    }
    if !l.is_switching(ctx) {
        return Err(Error::Precondition("L does not satisfy the switching predicate".into()));
    }
    let p = ctx.p() as usize;
    let n = ctx.n() as usize;
    let mut checked = 0;
    if n < 3 {
        return Ok(Lemma42Outcome { holds: true, checked, witness: None });
    }
    for is in combinations(1, n - 2, p - 1) {
        let top = is[p - 2];
        for ts in non_increasing(p - 2, n - 2 - top) {
            let mut shifts = ts.clone();
            shifts.push(0);
            let mut order: Vec<usize> = (0..p - 1).collect();
            let mut sum = FieldElem::ZERO;
            loop {
                // τ(k) = shifts[order[k]] for k = 1..p-1 (0-based here)
                let tau = |k: usize| shifts[order[k]];
                let mut term = l.coeff(top + tau(p - 2));
                for k in 0..p - 2 {
                    let c = l.coeff(is[k] + tau(k));
                    term = ctx.mul(term, ctx.pow(c, (p as u128).pow((top - is[k]) as u32)));
                }
                sum = ctx.add(sum, term);
                if !next_permutation(&mut order) {
                    break;
                }
            }
            checked += 1;
            if !sum.is_zero() {
                return Ok(Lemma42Outcome {
                    holds: false,
                    checked,
                    witness: Some(Lemma42Tuple { i: is, t: ts }),
                });
            }
        }
    }
    Ok(Lemma42Outcome { holds: true, checked, witness: None })
}

/// ½(p-1)(p²-p+4): above this n only monomials satisfy the predicate.
pub fn monomial_bound(p: u64) -> u64 {
    (p - 1) * (p * p - p + 4) / 2
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarnessReport {
    pub p: u32,
    pub n: u32,
    pub bound: u64,
    pub bound_applies: bool,
    pub exhaustive: bool,
    pub solutions: usize,
    pub all_monomial: bool,
    pub witnesses: Vec<LinearizedPoly>,
}

/// Searches F_{p^n} for switching L and reports whether all are monomials.
pub fn monomial_theorem_harness(
    p: u32,
    n: u32,
    mode: SearchMode,
    budget: u64,
) -> Result<HarnessReport> {
    let ctx = FieldCtx::new(p, 1, n, None)?;
    let support: Vec<usize> = (0..n as usize).collect();
    let found = search(&ctx, &support, mode, budget)?;
    let witnesses: Vec<LinearizedPoly> =
        found.iter().filter(|l| !l.is_monomial()).take(16).cloned().collect();
    let bound = monomial_bound(p as u64);
    Ok(HarnessReport {
        p,
        n,
        bound,
        bound_applies: n as u64 >= bound,
        exhaustive: mode == SearchMode::Exhaustive,
        solutions: found.len(),
        all_monomial: witnesses.is_empty(),
        witnesses,
    })
}
