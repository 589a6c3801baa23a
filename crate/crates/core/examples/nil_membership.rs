//! Membership of words in the nil ideal over a prime field.

use nilbound::freealg::parse_word;
use nilbound::nilideal::{word_member, DEFAULT_BUDGET};

fn main() -> nilbound::Result<()> {
    for (n, m, p, w) in [(2, 2, 2, "x1 x2 x1"), (2, 2, 2, "x1 x2"), (3, 2, 3, "x2 x1 x2 x1 x1"), (3, 2, 3, "x1^3")] {
        let v = word_member(n, m, p, &parse_word(w, Some(m))?, DEFAULT_BUDGET)?;
        println!(
            "n={n} m={m} p={p} {w}: member {} (block rank {} of {})",
            v.member, v.block_rank, v.block_dim
        );
    }
    Ok(())
}
