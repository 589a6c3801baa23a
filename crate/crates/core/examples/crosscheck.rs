//! Index against generator degrees and the known bounds.

use nilbound::nilideal::{crosscheck_main_inequality, Caps, DEFAULT_BUDGET};

fn main() -> nilbound::Result<()> {
    for (m, beta_cap) in [(1, 6), (2, 6)] {
        let caps = Caps { d_cap: 8, beta_cap_next: beta_cap, beta_cap_same: beta_cap, budget: DEFAULT_BUDGET };
        let r = crosscheck_main_inequality(2, m, 2, caps)?;
        println!("n=2 m={m}: d = {:?}, overall {:?}", r.d, r.status);
        for c in &r.checks {
            println!("  {:?} {}: {}", c.status, c.name, c.detail);
        }
    }
    Ok(())
}
