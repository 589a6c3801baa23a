//! Normal forms of two-letter words.

use nilbound::breduce::{decompose, word_normal_form};
use nilbound::freealg::Word;

fn main() -> nilbound::Result<()> {
    for (w, n) in [("yxyxx", 3), ("xxyx", 3), ("xyxxyx", 3), ("xx", 2), ("xy", 2)] {
        let word = Word::parse(w)?;
        println!("{w} = {} -> {}", decompose(&word)?, word_normal_form(&word, n)?);
    }
    Ok(())
}
