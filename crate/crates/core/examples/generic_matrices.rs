//! Generic matrices, characteristic coefficients and cyclic invariance.

use nilbound::freealg::Word;
use nilbound::genmat::{sigma, word_matrix};
use nilbound::ring::Integers;

fn main() -> nilbound::Result<()> {
    let xy = word_matrix(&Integers, 2, 2, &Word::new(&[1, 2]));
    let yx = word_matrix(&Integers, 2, 2, &Word::new(&[2, 1]));
    println!("X1 X2 =\n{}", xy.render());
    for l in 1..=2 {
        let a = sigma(l, &xy)?;
        let b = sigma(l, &yx)?;
        println!("s_{l}(x1 x2) = {a}");
        println!("  equals s_{l}(x2 x1): {}", a == b);
    }
    Ok(())
}
