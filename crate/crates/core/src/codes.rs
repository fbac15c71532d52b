//! The cyclic code of length q^n - 1 whose words are the trace transcripts
//! k ↦ Tr(a_0 + Σ a_i γ^{k(q^i-1)}), its dimension via cyclotomic cosets,
//! and the correspondence between full-weight words and switching L.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linpoly::{search, LinearizedPoly, QuotientEvaluator, SearchMode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub base: u64,
    pub modulus: u64,
    pub representative: u64,
    pub members: Vec<u64>,
}

/// {e·base^u mod N : u ≥ 0}
pub fn coset(base: u64, modulus: u64, e: u64) -> Result<CyclotomicCoset> {
    if e >= modulus {
        return Err(Error::InvalidInput(format!("{e} is not a residue mod {modulus}")));
    }
    let mut members = BTreeSet::new();
    let mut x = e;
    while members.insert(x) {
        x = ((x as u128 * base as u128) % modulus as u128) as u64;
    }
    let members: Vec<u64> = members.into_iter().collect();
    Ok(CyclotomicCoset { base, modulus, representative: members[0], members })
}

/// Whether the exponents lie in pairwise distinct q-cyclotomic cosets mod N.
pub fn basic_zero_set_check(q: u64, modulus: u64, exponents: &[u64]) -> Result<bool> {
    let mut reps = BTreeSet::new();
    for &e in exponents {
        if !reps.insert(coset(q, modulus, e % modulus)?.representative) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exponents 0, q-1, q²-1, …, q^{n-1}-1.
pub fn defining_exponents(q: u64, n: u32) -> Vec<u64> {
    (0..n).map(|i| q.pow(i) - 1).collect()
}

/// Size of the union of the q-cyclotomic cosets of 0, q-1, …, q^{n-1}-1
/// modulo q^n - 1; checked against n² - n + 1.
pub fn code_dimension(q: u64, n: u32) -> Result<u64> {
    let modulus = q
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidInput("q^n overflows".into()))?
        - 1;
    let mut union = BTreeSet::new();
    for e in defining_exponents(q, n) {
        union.extend(coset(q, modulus, e % modulus.max(1))?.members);
    }
    let dim = union.len() as u64;
    let expected = (n as u64) * (n as u64) - n as u64 + 1;
    if dim != expected {
        return Err(Error::Contradiction(format!(
            "coset union has {dim} elements, expected {expected} at q = {q}, n = {n}"
        )));
    }
    Ok(dim)
}

/// A word of length q^n - 1 over F_q, indexed by x = γ^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub values: Vec<FieldElem>,
    pub coeffs: Vec<FieldElem>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_full_weight(&self) -> bool {
        self.weight() == self.values.len()
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Digits of the values as positions in the code-sorted F_q list.
    pub fn digits(&self, ctx: &FieldCtx) -> Vec<usize> {
        self.values
            .iter()
            .map(|&v| ctx.subfield_digit(v).expect("codeword values lie in F_q"))
            .collect()
    }

    pub fn csv_row(&self, ctx: &FieldCtx) -> String {
        let digits: Vec<String> = self.digits(ctx).iter().map(|d| d.to_string()).collect();
        digits.join(",")
    }
}

pub fn delsarte_codeword(ctx: &FieldCtx, coeffs: &[FieldElem]) -> Result<Codeword> {
    let l = LinearizedPoly::new(ctx, coeffs.to_vec())?;
    let eval = QuotientEvaluator::new(ctx);
    let values = (0..ctx.group_order())
        .into_par_iter()
        .map(|k| eval.at_log(l.coeffs(), k))
        .collect();
    Ok(Codeword { values, coeffs: l.coeffs().to_vec() })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FullWeightSummary {
    pub total: u128,
    pub full_weight_constant: usize,
    pub full_weight_nonconstant: usize,
    pub witnesses: Vec<LinearizedPoly>,
}

/// Coefficient tuples whose codeword has full weight, split into constant
/// words (monomial L) and the rest.
pub fn full_weight_search(ctx: &FieldCtx, mode: SearchMode, budget: u64) -> Result<FullWeightSummary> {
    let support: Vec<usize> = (0..ctx.n() as usize).collect();
    let found = search(ctx, &support, mode, budget)?;
    let total = match mode {
        SearchMode::Exhaustive => (ctx.order() as u128).pow(ctx.n()),
        SearchMode::Random { .. } => budget as u128,
    };
    let (constant, nonconstant): (Vec<_>, Vec<_>) = found.into_iter().partition(|l| l.is_monomial());
    Ok(FullWeightSummary {
        total,
        full_weight_constant: constant.len(),
        full_weight_nonconstant: nonconstant.len(),
        witnesses: nonconstant.into_iter().take(16).collect(),
    })
}
