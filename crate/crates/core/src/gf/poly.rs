//! Dense polynomials over a prime field, little-endian, used only while a
//! field context is being constructed.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `f` (f need not be monic).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    let p64 = p as u64;
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        if c != 0 {
            let shift = dr - df;
            for (i, &fi) in f.iter().enumerate() {
                let sub = c * fi as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    let prod: Poly = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u128, f: &[u32], p: u32) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn distinct_prime_factors(n: u64) -> Vec<u64> {
    prime_factors(n)
}

/// X^(p^k) mod f.
fn frobenius_power_of_x(k: u32, f: &[u32], p: u32) -> Poly {
    let mut x: Poly = rem(&[0, 1], f, p);
    for _ in 0..k {
        x = pow_mod(&x, p as u128, f, p);
    }
    x
}

/// Rabin's irreducibility test for a polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = (f.len() - 1) as u32;
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    if !sub(&frobenius_power_of_x(d, f, p), &rem(&x, f, p), p).is_empty() {
        return false;
    }
    for r in prime_factors(d as u64) {
        let h = sub(&frobenius_power_of_x(d / r as u32, f, p), &x, p);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
