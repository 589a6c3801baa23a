//! In one letter and small characteristic, linearizations span less than the ideal.

use nilbound::nilideal::linearization_gap;

fn main() -> nilbound::Result<()> {
    for (n, p) in [(2, 2), (3, 2), (3, 3), (3, 5)] {
        let r = linearization_gap(n, p, n + 2)?;
        let ranks: Vec<String> = r.degrees.iter().map(|d| format!("{}/{}", d.linearization_rank, d.ideal_rank)).collect();
        println!("n={n} p={p}: {}  witness {:?}", ranks.join(" "), r.witness);
    }
    Ok(())
}
