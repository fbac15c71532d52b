//! Necessary conditions from point counts on the Artin-Schreier curves
//! y^q - y = L(x)/x. Everything is integer arithmetic; curves are never built.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linpoly::{LinearizedPoly, QuotientEvaluator};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Canonical residue of j modulo q^n - 1.
pub fn res(j: i128, q: u64, n: u32) -> u64 {
    let modulus = (q as i128).pow(n) - 1;
    j.rem_euclid(modulus) as u64
}

/// Smallest element of the p-cyclotomic coset of j modulo p^{mn} - 1.
pub fn lead(j: u64, p: u64, mn: u32) -> u64 {
    let modulus = p.pow(mn) - 1;
    let mut best = j % modulus;
    let mut x = best;
    for _ in 1..mn {
        x = ((x as u128 * p as u128) % modulus as u128) as u64;
        best = best.min(x);
    }
    best
}

/// max over the higher support of Lead(Res(j(q^i - 1))).
pub fn ell_j(ctx: &FieldCtx, support: &[usize], j: u64) -> u64 {
    let q = ctx.q();
    let mn = ctx.m() * ctx.n();
    support
        .iter()
        .map(|&i| {
            let e = j as i128 * (q.pow(i as u32) as i128 - 1);
            lead(res(e, q, ctx.n()), ctx.p() as u64, mn)
        })
        .max()
        .unwrap_or(0)
}

/// (ℓ, j): the minimum of ℓ(j) over j coprime to q^n - 1, smallest j on ties.
pub fn ell(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<(u64, u64)> {
    let support = l.higher_support();
    if support.is_empty() {
        return Err(Error::Precondition("ℓ needs a nonzero coefficient a_i with i ≥ 1".into()));
    }
    let modulus = ctx.group_order();
    (1..modulus.max(2))
        .into_par_iter()
        .filter(|&j| gcd(j, modulus) == 1)
        .map(|j| (ell_j(ctx, &support, j), j))
        .min()
        .ok_or_else(|| Error::Precondition("no admissible exponent j".into()))
}

/// ⌊2q^{n/2}⌋, computed as ⌊√(4q^n)⌋.
pub fn serre_term(q: u64, n: u32) -> u64 {
    (4 * (q as u128).pow(n)).isqrt() as u64
}

pub fn genus(q: u64, ell: u64) -> u64 {
    (q - 1) * ell.saturating_sub(1) / 2
}

/// Lower bounds on ℓ for the nonzero-trace and zero-trace cases.
pub fn corollary_thresholds(q: u64, n: u32) -> (u64, u64) {
    let qn = q.pow(n);
    let denom = (q - 1) * serre_term(q, n);
    (1 + (2 * qn).div_ceil(denom), 1 + (2 * (qn - q)).div_ceil(denom))
}

/// 1 + q·#{x : Tr(f(x)) = 0} with f(0) = a_0.
pub fn point_count(ctx: &FieldCtx, l: &LinearizedPoly) -> u64 {
    let eval = QuotientEvaluator::new(ctx);
    let zeros = (0..ctx.group_order())
        .into_par_iter()
        .filter(|&k| eval.at_log(l.coeffs(), k).is_zero())
        .count() as u64;
    let at_zero = ctx.rel_trace(l.coeff(0)).is_zero() as u64;
    1 + ctx.q() * (zeros + at_zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwsReport {
    pub q: u64,
    pub n: u32,
    pub ell: u64,
    pub argmin_j: u64,
    pub genus: u64,
    pub serre_term: u64,
    /// Tr(a_0) ≠ 0 case: q^n + 1 - g·⌊2q^{n/2}⌋ > 1.
    pub verdict_case_nonzero_trace: bool,
    /// Tr(a_0) = 0 case: q^n + 1 - g·⌊2q^{n/2}⌋ > q + 1.
    pub verdict_case_zero_trace: bool,
    pub thresholds: (u64, u64),
    pub trace_a0_zero: bool,
    pub n_chi: u64,
}

impl HwsReport {
    fn margin(&self) -> i128 {
        (self.q as i128).pow(self.n) + 1 - self.genus as i128 * self.serre_term as i128
    }

    /// The verdict for the trace case L actually falls into.
    pub fn triggered(&self) -> bool {
        if self.trace_a0_zero {
            self.verdict_case_zero_trace
        } else {
            self.verdict_case_nonzero_trace
        }
    }

    pub fn applicable_threshold(&self) -> u64 {
        if self.trace_a0_zero {
            self.thresholds.1
        } else {
            self.thresholds.0
        }
    }

    pub fn meets_threshold(&self) -> bool {
        self.ell >= self.applicable_threshold()
    }

    /// |N - (q^n + 1)| ≤ g·⌊2q^{n/2}⌋.
    pub fn within_serre_band(&self) -> bool {
        let dev = (self.n_chi as i128 - (self.q as i128).pow(self.n) - 1).unsigned_abs();
        dev <= self.genus as u128 * self.serre_term as u128
    }

    pub fn is_consistent(&self) -> bool {
        let margin = self.margin();
        self.genus == genus(self.q, self.ell)
            && self.serre_term == serre_term(self.q, self.n)
            && self.verdict_case_nonzero_trace == (margin > 1)
            && self.verdict_case_zero_trace == (margin > self.q as i128 + 1)
    }
}

pub fn verdicts(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<HwsReport> {
    let (q, n) = (ctx.q(), ctx.n());
    let (ell, argmin_j) = ell(ctx, l)?;
    let mut report = HwsReport {
        q,
        n,
        ell,
        argmin_j,
        genus: genus(q, ell),
        serre_term: serre_term(q, n),
        verdict_case_nonzero_trace: false,
        verdict_case_zero_trace: false,
        thresholds: corollary_thresholds(q, n),
        trace_a0_zero: ctx.rel_trace(l.coeff(0)).is_zero(),
        n_chi: point_count(ctx, l),
    };
    let margin = report.margin();
    report.verdict_case_nonzero_trace = margin > 1;
    report.verdict_case_zero_trace = margin > q as i128 + 1;
    Ok(report)
}
