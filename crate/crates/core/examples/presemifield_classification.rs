//! Turn switching polynomials into presemifields and classify them.

use semiswitch::families::classify;
use semiswitch::linpoly::search;
use semiswitch::presemifield::{build_switch, find_zero_divisor, SwitchSpec};
use semiswitch::{FieldCtx, Result, SearchMode};

fn main() -> Result<()> {
    let k = FieldCtx::new(3, 1, 2, None)?;
    for l in search(&k, &[0, 1], SearchMode::Exhaustive, 1 << 10)?.iter().take(6) {
        let c = classify(&k, l)?;
        println!(
            "{:?}: families {:?}, commutative {:?}, Ganley {:?}, nuclei {:?}",
            l.coeffs(),
            c.families,
            c.commutative,
            c.ganley.map(|g| g.isotopic_to_commutative),
            c.nuclei.map(|n| n.as_array()),
        );
    }

    // A switch with a zero divisor.
    let spec = SwitchSpec::new(&k, vec![k.from_log(2), k.from_log(5)], k.from_log(1))?;
    let op = build_switch(&k, &spec)?;
    match find_zero_divisor(&op) {
        Some(z) => println!("b = {:?}: {} * {} = 0", spec.b, z.x, z.y),
        None => println!("b = {:?} gives a presemifield", spec.b),
    }
    Ok(())
}
