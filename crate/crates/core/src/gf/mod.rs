//! Table-driven arithmetic in F_{q^n}, q = p^m.
//!
//! Every element is stored as its discrete logarithm with respect to a fixed
//! primitive element γ (zero gets a reserved marker). The context keeps the
//! exponent table (log -> coefficient vector), the inverse log table and a
//! Zech table, so multiplication is an index addition and addition is one
//! Zech lookup. The coefficient vector of an element over F_p is its "code",
//! the integer Σ c_i p^i.
//!
//! Fields are built in one shot and are immutable afterwards; a context is
//! shared by reference between worker threads.

mod linalg;
mod poly;

pub use linalg::fp_rank;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest field order for which tables are built unless overridden.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

const ZERO_LOG: u32 = u32::MAX;

/// An element of F_{q^n}, identified by its discrete log base γ.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(ZERO_LOG);
    pub const ONE: FieldElem = FieldElem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_LOG
    }

    /// Discrete log, or `None` for zero.
    #[inline]
    pub fn index(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }

    /// Position in γ-power order: zero first, then γ^0, γ^1, ...
    #[inline]
    pub fn ordinal(self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.0 as usize + 1
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ordinal().cmp(&other.ordinal())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            None => write!(f, "0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.index().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idx = Option::<u32>::deserialize(d)?;
        match idx {
            None => Ok(FieldElem::ZERO),
            Some(ZERO_LOG) => Err(serde::de::Error::custom("reserved element index")),
            Some(k) => Ok(FieldElem(k)),
        }
    }
}

/// Reproducible description of a field: enough to rebuild identical tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    /// c_0..c_{mn}, monic.
    pub modulus: Vec<u32>,
    /// Code (Σ c_i p^i) of the primitive element γ.
    pub generator_index: u32,
}

#[derive(Clone, Debug)]
pub struct FieldBuilder {
    p: u32,
    m: u32,
    n: u32,
    modulus: Option<Vec<u32>>,
    generator: Option<u32>,
    cap: u64,
}

impl FieldBuilder {
    pub fn new(p: u32, m: u32, n: u32) -> Self {
        FieldBuilder { p, m, n, modulus: None, generator: None, cap: DEFAULT_TABLE_CAP }
    }

    pub fn modulus(mut self, coeffs: Vec<u32>) -> Self {
        self.modulus = Some(coeffs);
        self
    }

    pub fn generator(mut self, code: u32) -> Self {
        self.generator = Some(code);
        self
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn build(self) -> Result<FieldCtx> {
        FieldCtx::construct(self)
    }
}

/// Immutable context for F_p ⊂ F_q ⊂ F_{q^n}.
pub struct FieldCtx {
    p: u32,
    m: u32,
    n: u32,
    q: u64,
    order: u64,
    /// |F_{q^n}^*|
    group: u64,
    modulus: Vec<u32>,
    generator_code: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[k] = log(1 + γ^k), ZERO_LOG when 1 + γ^k = 0.
    zech: Vec<u32>,
    /// Tr_{q^n/q} indexed by ordinal.
    trace: Vec<FieldElem>,
    neg_one: FieldElem,
    subfield: Vec<FieldElem>,
    basis: Vec<FieldElem>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator_code", &self.generator_code)
            .finish()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0)
}

fn digits_of(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (code % p as u64) as u32;
        code /= p as u64;
    }
    out
}

fn code_of(digits: &[u32], p: u32) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

fn is_primitive(g: &[u32], modulus: &[u32], p: u32, group: u64, factors: &[u64]) -> bool {
    let mut g = g.to_vec();
    poly::trim(&mut g);
    if g.is_empty() {
        return false;
    }
    factors.iter().all(|&r| poly::pow_mod(&g, (group / r) as u128, modulus, p) != [1])
        && poly::pow_mod(&g, group as u128, modulus, p) == [1]
}

impl FieldCtx {
    pub fn new(p: u32, m: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        let mut b = FieldBuilder::new(p, m, n);
        if let Some(f) = modulus {
            b = b.modulus(f);
        }
        b.build()
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::from_spec_with_cap(spec, DEFAULT_TABLE_CAP)
    }

    pub fn from_spec_with_cap(spec: &FieldSpec, cap: u64) -> Result<Self> {
        FieldBuilder::new(spec.p, spec.m, spec.n)
            .modulus(spec.modulus.clone())
            .generator(spec.generator_index)
            .cap(cap)
            .build()
    }

    fn construct(b: FieldBuilder) -> Result<Self> {
        let FieldBuilder { p, m, n, modulus, generator, cap } = b;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if m == 0 || n == 0 {
            return Err(Error::InvalidField("m and n must be positive".into()));
        }
        let d = (m * n) as usize;
        let order = (p as u128).checked_pow(m * n).unwrap_or(u128::MAX);
        if order > cap as u128 || order > u32::MAX as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let order = order as u64;
        let group = order - 1;

        let modulus = match modulus {
            Some(f) => {
                if f.len() != d + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must have {} coefficients, got {}",
                        d + 1,
                        f.len()
                    )));
                }
                if f.iter().any(|&c| c >= p) || f[d] != 1 {
                    return Err(Error::InvalidField(
                        "modulus coefficients must lie in 0..p and be monic".into(),
                    ));
                }
                if !poly::is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulus { p, modulus: f });
                }
                f
            }
            None => (0..order)
                .map(|c| {
                    let mut f = digits_of(c, p, d);
                    f.push(1);
                    f
                })
                .find(|f| poly::is_irreducible(f, p))
                .ok_or_else(|| Error::InvalidField("no irreducible modulus found".into()))?,
        };

        let factors = poly::distinct_prime_factors(group);
        let generator_code = match generator {
            Some(code) => {
                if code as u64 >= order
                    || !is_primitive(&digits_of(code as u64, p, d), &modulus, p, group, &factors)
                {
                    return Err(Error::InvalidField(format!(
                        "generator code {code} is not a primitive element"
                    )));
                }
                code
            }
            None => (1..order)
                .find(|&c| is_primitive(&digits_of(c, p, d), &modulus, p, group, &factors))
                .ok_or_else(|| Error::NoPrimitive(modulus.clone()))? as u32,
        };

        // Columns of the multiplication-by-γ matrix: γ·X^k mod f.
        let g_digits = digits_of(generator_code as u64, p, d);
        let columns: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let mut xk = vec![0u32; k + 1];
                xk[k] = 1;
                let mut col = poly::mul_mod(&g_digits, &xk, &modulus, p);
                col.resize(d, 0);
                col
            })
            .collect();

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![ZERO_LOG; order as usize];
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        let mut next = vec![0u64; d];
        for k in 0..group {
            let code = code_of(&cur, p);
            if log[code as usize] != ZERO_LOG {
                return Err(Error::NoPrimitive(modulus));
            }
            log[code as usize] = k as u32;
            exp.push(code as u32);
            next.iter_mut().for_each(|v| *v = 0);
            for (k, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (acc, &col) in next.iter_mut().zip(&columns[k]) {
                    *acc += c as u64 * col as u64;
                }
            }
            for (dst, &v) in cur.iter_mut().zip(&next) {
                *dst = (v % p as u64) as u32;
            }
        }
        if code_of(&cur, p) != 1 {
            return Err(Error::NoPrimitive(modulus));
        }

        let zech = exp
            .iter()
            .map(|&code| {
                let c0 = code % p;
                let bumped = code - c0 + (c0 + 1) % p;
                if bumped == 0 {
                    ZERO_LOG
                } else {
                    log[bumped as usize]
                }
            })
            .collect();

        let neg_one = if p == 2 { FieldElem::ONE } else { FieldElem((group / 2) as u32) };
        let q = (p as u64).pow(m);

        let mut ctx = FieldCtx {
            p,
            m,
            n,
            q,
            order,
            group,
            modulus,
            generator_code,
            exp,
            log,
            zech,
            trace: Vec::new(),
            neg_one,
            subfield: Vec::new(),
            basis: Vec::new(),
        };

        let trace: Vec<FieldElem> = ctx
            .elements()
            .map(|x| (0..n as u64).fold(FieldElem::ZERO, |acc, i| ctx.add(acc, ctx.frobenius_q(x, i))))
            .collect();
        ctx.trace = trace;

        let step = group / (q - 1);
        let mut subfield: Vec<FieldElem> = std::iter::once(FieldElem::ZERO)
            .chain((0..q - 1).map(|k| FieldElem((k * step) as u32)))
            .collect();
        subfield.sort_by_key(|&x| ctx.code(x));
        ctx.subfield = subfield;
        ctx.basis = (0..n).map(|k| ctx.from_log(k as u64)).collect();
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            n: self.n,
            modulus: self.modulus.clone(),
            generator_index: self.generator_code,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// q^n
    pub fn order(&self) -> u64 {
        self.order
    }
    /// q^n - 1
    pub fn group_order(&self) -> u64 {
        self.group
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The primitive element γ.
    pub fn generator(&self) -> FieldElem {
        if self.group == 1 {
            FieldElem::ONE
        } else {
            FieldElem(1)
        }
    }

    #[inline]
    pub fn from_log(&self, k: u64) -> FieldElem {
        FieldElem((k % self.group) as u32)
    }

    /// Element with the given ordinal (inverse of [`FieldElem::ordinal`]).
    #[inline]
    pub fn from_ordinal(&self, ord: usize) -> FieldElem {
        if ord == 0 {
            FieldElem::ZERO
        } else {
            FieldElem(ord as u32 - 1)
        }
    }

    pub fn from_code(&self, code: u64) -> Result<FieldElem> {
        if code >= self.order {
            return Err(Error::InvalidInput(format!("element code {code} out of range")));
        }
        Ok(FieldElem(self.log[code as usize]))
    }

    pub fn from_vector(&self, vector: &[u32]) -> Result<FieldElem> {
        if vector.len() != (self.m * self.n) as usize || vector.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!("bad coefficient vector {vector:?}")));
        }
        self.from_code(code_of(vector, self.p))
    }

    /// The prime-field element c mod p.
    pub fn from_int(&self, c: i64) -> FieldElem {
        let c = c.rem_euclid(self.p as i64) as u64;
        FieldElem(self.log[c as usize])
    }

    /// Checks that a deserialized element belongs to this field.
    pub fn validate(&self, x: FieldElem) -> Result<FieldElem> {
        match x.index() {
            Some(k) if k as u64 >= self.group => {
                Err(Error::InvalidInput(format!("element index {k} out of range")))
            }
            _ => Ok(x),
        }
    }

    #[inline]
    pub fn code(&self, x: FieldElem) -> u32 {
        match x.index() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    pub fn vector(&self, x: FieldElem) -> Vec<u32> {
        digits_of(self.code(x) as u64, self.p, (self.m * self.n) as usize)
    }

    /// All elements in γ-power order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone + '_ {
        (0..self.order as usize).map(|o| self.from_ordinal(o))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + Clone + '_ {
        (0..self.group as u32).map(FieldElem)
    }

    /// F_q ⊂ F_{q^n}, sorted by code. For prime q this is 0, 1, ..., p-1.
    pub fn subfield(&self) -> &[FieldElem] {
        &self.subfield
    }

    /// Position of x in [`Self::subfield`], if x ∈ F_q.
    pub fn subfield_digit(&self, x: FieldElem) -> Option<usize> {
        let code = self.code(x);
        self.subfield.binary_search_by_key(&code, |&y| self.code(y)).ok()
    }

    /// The F_q-basis 1, γ, ..., γ^{n-1}.
    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    /// The F_p-basis X^0, ..., X^{mn-1} of the polynomial representation.
    pub fn prime_basis(&self) -> Vec<FieldElem> {
        let mut code = 1u64;
        (0..self.m * self.n)
            .map(|_| {
                let e = FieldElem(self.log[code as usize]);
                code *= self.p as u64;
                e
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let g = self.group as u32;
        let k = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + g - a.0 };
        let z = self.zech[k as usize];
        if z == ZERO_LOG {
            FieldElem::ZERO
        } else {
            let s = a.0 as u64 + z as u64;
            FieldElem((s % self.group) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let s = a.0 as u64 + b.0 as u64;
        FieldElem((s % self.group) as u32)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        match a.index() {
            None => Err(Error::DivisionByZero),
            Some(k) => Ok(FieldElem(((self.group - k as u64) % self.group) as u32)),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x^e with 0^0 = 1.
    #[inline]
    pub fn pow(&self, x: FieldElem, e: u128) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        match x.index() {
            None => FieldElem::ZERO,
            Some(k) => FieldElem((k as u128 * (e % self.group as u128) % self.group as u128) as u32),
        }
    }

    /// q^k mod (q^n - 1), i.e. the exponent of the k-th q-Frobenius on F^*.
    #[inline]
    pub fn q_power_mod_group(&self, k: u64) -> u64 {
        let mut r = 1u128;
        for _ in 0..(k % self.n as u64) {
            r = r * self.q as u128 % self.group as u128;
        }
        r as u64
    }

    /// x^{q^k}
    #[inline]
    pub fn frobenius_q(&self, x: FieldElem, k: u64) -> FieldElem {
        match x.index() {
            None => FieldElem::ZERO,
            Some(i) => {
                let e = self.q_power_mod_group(k) as u128;
                FieldElem((i as u128 * e % self.group as u128) as u32)
            }
        }
    }

    /// Tr_{q^n/q}(x)
    #[inline]
    pub fn rel_trace(&self, x: FieldElem) -> FieldElem {
        self.trace[x.ordinal()]
    }

    /// N_{q^n/q}(x), with N(0) = 0.
    pub fn rel_norm(&self, x: FieldElem) -> FieldElem {
        match x.index() {
            None => FieldElem::ZERO,
            Some(k) => {
                let e = self.group / (self.q - 1);
                FieldElem((k as u64 * e % self.group) as u32)
            }
        }
    }

    /// Whether x ∈ F_{q^d}; d must divide n.
    pub fn in_subfield(&self, x: FieldElem, d: u32) -> Result<bool> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::Precondition(format!("{d} does not divide n = {}", self.n)));
        }
        Ok(self.frobenius_q(x, d as u64) == x)
    }

    /// Discrete log of c ∈ F_q^* with respect to γ^{(q^n-1)/(q-1)}.
    pub fn subfield_log(&self, c: FieldElem) -> Option<u64> {
        let k = c.index()? as u64;
        let step = self.group / (self.q - 1);
        (k % step == 0).then_some(k / step)
    }

    /// Whether c is a nonzero square of F_q.
    pub fn is_square_in_base(&self, c: FieldElem) -> bool {
        match self.subfield_log(c) {
            None => false,
            Some(k) => self.p == 2 || k % 2 == 0,
        }
    }

    /// -1
    pub fn neg_one(&self) -> FieldElem {
        self.neg_one
    }

    /// Σ of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = FieldElem>>(&self, it: I) -> FieldElem {
        it.into_iter().fold(FieldElem::ZERO, |acc, x| self.add(acc, x))
    }
}
