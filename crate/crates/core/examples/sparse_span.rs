//! Incremental row echelon spans over a prime field.

use nilbound::exactla::{GradedSpan, SparseVec};
use nilbound::ring::PrimeField;

fn main() -> nilbound::Result<()> {
    let f = PrimeField::new(5)?;
    let mut span = GradedSpan::with_provenance(f, 4);
    for row in [[1, 2, 0, 1], [0, 1, 1, 0], [1, 3, 1, 1]] {
        let added = span.insert(&SparseVec::from_dense(&f, &row))?;
        println!("insert {row:?}: new direction {added}, rank {}", span.rank());
    }
    let target = SparseVec::from_dense(&f, &[2, 0, 1, 2]);
    println!("member: {}", span.member(&target)?);
    println!("combination of inserted rows: {:?}", span.express(&target)?);
    Ok(())
}
