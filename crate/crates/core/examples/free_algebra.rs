//! Words, products and linearizations in the free algebra.

use nilbound::freealg::{complete_linearization, multihomogeneous_component, parse_word, FreeElement, MultiDegree};
use nilbound::ring::Integers;

fn main() -> nilbound::Result<()> {
    let a = FreeElement::from_int_terms(2, &[(parse_word("x1", Some(2))?, 1), (parse_word("x2", Some(2))?, 1)])?;
    println!("(x1 + x2)^3 = {}", a.pow(3));

    let p3 = complete_linearization(3, false)?;
    println!("P_3 has {} terms", p3.num_terms());

    let p21 = multihomogeneous_component(3, &MultiDegree(vec![2, 1]))?;
    println!("P_(2,1) = {p21}");

    let w = parse_word("x1 x2^2 x1", Some(2))?;
    let f = FreeElement::from_word(Integers, 2, w)?;
    println!("x1 * ({f}) * x2 = {}", f.sandwich(&parse_word("x1", None)?, &parse_word("x2", None)?));
    Ok(())
}
