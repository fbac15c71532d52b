//! Base-q digit bookkeeping and the expansion of (Σ a_i^{q^j} X^{q^j(q^i-1)})^{q-1}.

use semiswitch::digits::{asc_des, c_alpha, congruence_holds, expansion_oracle, lemma42_check, oplus, s_digits};
use semiswitch::linpoly::LinearizedPoly;
use semiswitch::{FieldCtx, Result};

fn main() -> Result<()> {
    let r = asc_des(&[2, 0, 1, 1, 3, 0]);
    println!("asc/des of (2 0 1 1 3 0): asc {:?}, des {:?}, count {}", r.asc, r.des, r.count);
    println!("s(1,3) = {:?}, s(3,2) = {:?}", s_digits(1, 3, 4), s_digits(3, 2, 4));
    println!("3 ⊕ 3 over q = 3, n = 2: {}", oplus(3, 3, 3, 2)?);

    let k = FieldCtx::new(3, 1, 3, None)?;
    let l = LinearizedPoly::new(&k, vec![k.from_log(4), k.from_log(9), k.from_log(0)])?;
    let oracle = expansion_oracle(&k, &l);
    for (alpha, c) in [0u64, 1, 4, 13].map(|a| (a, c_alpha(&k, &l, a, 1 << 16))) {
        println!("c_{alpha} = {} (expansion: {:?})", c?, oracle.get(&(alpha * 2)));
    }
    println!("switching: {}, congruence: {}", l.is_switching(&k), congruence_holds(&k, &l));

    let f81 = FieldCtx::new(3, 1, 4, None)?;
    let x9 = LinearizedPoly::monomial(&f81, 2, f81.from_log(0));
    let out = lemma42_check(&f81, &x9)?;
    println!("vanishing sums for X^9 over F_81: {} checked, all zero: {}", out.checked, out.holds);
    Ok(())
}
