//! A presemifield of order 64 over F_4 that is not isotopic to a
//! commutative one.

use semiswitch::families::{n3_b_set, n3_construct};
use semiswitch::presemifield::{build_switch, ganley_bierbrauer_test, nuclei, unitalize, verify_presemifield, SwitchSpec};
use semiswitch::{FieldCtx, FieldElem, Result};

fn main() -> Result<()> {
    let k = FieldCtx::new(2, 2, 3, Some(vec![1, 1, 0, 1, 1, 0, 1]))?;
    let g = |e| k.from_log(e);
    let (u, v, theta) = (g(5), g(1), g(62));
    println!("theta admissible: {}", n3_b_set(&k, u, v)?.contains(&theta));

    let inst = n3_construct(&k, u, v, theta, FieldElem::ONE)?;
    println!("L = {:?}", inst.l.coeffs());
    println!("predicate: {}", inst.l.is_switching(&k));

    let op = build_switch(&k, &SwitchSpec::from_linearized(&k, &inst.l))?;
    println!("presemifield: {}", verify_presemifield(&op));
    println!("commutative: {}", op.is_commutative());
    println!("isotopic to commutative: {}", ganley_bierbrauer_test(&op)?.isotopic_to_commutative);
    println!("nuclei: {:?}", nuclei(&unitalize(op)?)?.as_array());
    Ok(())
}
