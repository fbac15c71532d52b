//! Exhaustive and sampled searches for L with Tr(L(x)/x) never zero.

use semiswitch::linpoly::{search, LinearizedPoly};
use semiswitch::{FieldCtx, Result, SearchMode};

fn show(ctx: &FieldCtx, found: &[LinearizedPoly]) {
    let monomials = found.iter().filter(|l| l.is_monomial()).count();
    println!("  {} found, {monomials} monomial", found.len());
    for l in found.iter().filter(|l| !l.is_monomial()).take(3) {
        println!("  e.g. {:?}  witness-free: {}", l.coeffs(), l.switching_witness(ctx).is_none());
    }
}

fn main() -> Result<()> {
    let f8 = FieldCtx::new(2, 1, 3, None)?;
    println!("q = 2, n = 3, full support:");
    show(&f8, &search(&f8, &[0, 1, 2], SearchMode::Exhaustive, 1 << 20)?);

    let f81 = FieldCtx::new(3, 1, 4, None)?;
    println!("q = 3, n = 4, support {{0, 2}}:");
    show(&f81, &search(&f81, &[0, 2], SearchMode::Exhaustive, 1 << 20)?);

    let f243 = FieldCtx::new(3, 1, 5, None)?;
    println!("q = 3, n = 5, 100000 random samples:");
    show(&f243, &search(&f243, &[0, 1, 2, 3, 4], SearchMode::Random { seed: 7 }, 100_000)?);
    Ok(())
}
