//! The explicit families for n = 2, 3 and 4.

use semiswitch::families::{n2_criterion, n3_b_set, n4_commutative_construct, n4_criterion};
use semiswitch::presemifield::{ganley_bierbrauer_test, nuclei, unitalize};
use semiswitch::{FieldCtx, FieldElem, Result};

fn main() -> Result<()> {
    let f9 = FieldCtx::new(3, 1, 2, None)?;
    let n2 = f9
        .elements()
        .flat_map(|a1| f9.elements().map(move |a0| (a1, a0)))
        .filter(|&(a1, a0)| n2_criterion(&f9, a1, a0).unwrap())
        .count();
    println!("n = 2, q = 3: {n2} of 81 pairs (a1, a0) pass the quadratic criterion");

    let f27 = FieldCtx::new(3, 1, 3, None)?;
    let b = n3_b_set(&f27, FieldElem::ONE, FieldElem::ONE)?;
    println!("n = 3, q = 3, u = v = 1: {} admissible theta", b.len());

    let f81 = FieldCtx::new(3, 1, 4, None)?;
    let hyperplane: Vec<FieldElem> = f81.elements().filter(|&x| f81.rel_trace(x).is_zero()).collect();
    let n4 = f81
        .nonzero()
        .flat_map(|a1| hyperplane.iter().map(move |&a0| (a1, a0)))
        .filter(|&(a1, a0)| n4_criterion(&f81, a1, a0).unwrap())
        .count();
    println!("n = 4, q = 3: {n4} pairs pass the square criterion");

    let a0t = f81.elements().find(|&x| f81.rel_trace(x) == f81.neg_one()).unwrap();
    let inst = n4_commutative_construct(&f81, FieldElem::ONE, a0t)?;
    println!("commutative instance L = {:?}", inst.instance.l.coeffs());
    println!("  commutative: {}", inst.op.is_commutative());
    println!("  Ganley: {}", ganley_bierbrauer_test(&inst.op)?.isotopic_to_commutative);
    println!("  nuclei: {:?}", nuclei(&unitalize(inst.op)?)?.as_array());
    Ok(())
}
