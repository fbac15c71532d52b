//! Build F_81 as a degree-4 extension of F_3 and poke at it.

use semiswitch::{FieldCtx, Result};

fn main() -> Result<()> {
    let k = FieldCtx::new(3, 1, 4, None)?;
    let spec = k.spec();
    println!("F_{} over F_{}: modulus {:?}, generator code {}", k.order(), k.q(), spec.modulus, spec.generator_index);

    let g = k.generator();
    let x = k.pow(g, 17);
    let y = k.add(x, k.from_int(2));
    println!("x = g^17 = {:?}", k.vector(x));
    println!("x + 2 = {y} = {:?}", k.vector(y));
    println!("x * (x + 2) = {}", k.mul(x, y));
    println!("1 / x = {}", k.inv(x)?);
    println!("Tr(x) = {}, N(x) = {}", k.rel_trace(x), k.rel_norm(x));

    let zero_trace = k.elements().filter(|&e| k.rel_trace(e).is_zero()).count();
    println!("{zero_trace} elements have trace 0");
    Ok(())
}
