//! The Cayley-Hamilton expression vanishes on random elements.

use nilbound::genmat::chi_battery;

fn main() -> nilbound::Result<()> {
    for n in [2, 3] {
        let r = chi_battery(n, 2, 3, 10, 7, 5)?;
        println!("n = {n}: {} cases, all zero {}", r.cases, r.all_zero);
    }
    Ok(())
}
