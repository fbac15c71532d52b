//! Genus bounds and point counts for y^q - y = L(x)/x.

use semiswitch::hws::{corollary_thresholds, lead, verdicts};
use semiswitch::linpoly::LinearizedPoly;
use semiswitch::{FieldCtx, FieldElem, Result};

fn main() -> Result<()> {
    println!("lead(12) mod 15 = {}, lead(8) mod 80 = {}", lead(12, 2, 4), lead(8, 3, 4));
    println!("thresholds at (3,4): {:?}", corollary_thresholds(3, 4));

    let k = FieldCtx::new(3, 1, 4, None)?;
    for l in [
        LinearizedPoly::monomial(&k, 2, FieldElem::ONE),
        LinearizedPoly::new(&k, vec![k.from_log(3), k.from_log(1), FieldElem::ZERO, FieldElem::ZERO])?,
    ] {
        let r = verdicts(&k, &l)?;
        println!(
            "{:?}: ell {} at j = {}, genus {}, N = {}, triggered {}, switching {}",
            l.coeffs(),
            r.ell,
            r.argmin_j,
            r.genus,
            r.n_chi,
            r.triggered(),
            l.is_switching(&k)
        );
    }
    Ok(())
}
