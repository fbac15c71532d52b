//! The trace code of length q^n - 1 and its full-weight words.

use semiswitch::codes::{code_dimension, coset, delsarte_codeword, full_weight_search};
use semiswitch::{FieldCtx, Result, SearchMode};

fn main() -> Result<()> {
    for (q, n) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
        println!("q = {q}, n = {n}: dimension {}", code_dimension(q, n)?);
    }
    println!("3-coset of 8 mod 80: {:?}", coset(3, 80, 8)?.members);

    let k = FieldCtx::new(3, 1, 2, None)?;
    let s = full_weight_search(&k, SearchMode::Exhaustive, 1 << 10)?;
    println!(
        "q = 3, n = 2: {} constant and {} non-constant full-weight words out of {}",
        s.full_weight_constant, s.full_weight_nonconstant, s.total
    );
    if let Some(l) = s.witnesses.first() {
        let w = delsarte_codeword(&k, l.coeffs())?;
        println!("  {:?} -> {}", l.coeffs(), w.csv_row(&k));
    }
    Ok(())
}
