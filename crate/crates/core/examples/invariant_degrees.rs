//! Generator degrees of matrix invariants.

use nilbound::nilideal::{compute_beta, DEFAULT_BUDGET};

fn main() -> nilbound::Result<()> {
    for (n, m, cap) in [(2, 1, 32), (2, 2, 6), (2, 3, 6)] {
        let r = compute_beta(n, m, 2, cap, DEFAULT_BUDGET)?;
        println!(
            "beta({n},{m}) over F_2: {} (exact {}, stable {})",
            r.beta_estimate, r.exact, r.stable
        );
        println!("  generators: {}", r.generators.join(", "));
    }
    Ok(())
}
