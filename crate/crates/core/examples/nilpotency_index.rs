//! Nilpotency index scans.

use nilbound::nilideal::{compute_d, DEFAULT_BUDGET};

fn main() -> nilbound::Result<()> {
    for (n, m, p) in [(2, 1, 2), (2, 2, 2), (2, 3, 2), (2, 2, 3), (3, 1, 2)] {
        let r = compute_d(n, m, p, 10, DEFAULT_BUDGET)?;
        let rows: Vec<String> = r.degrees.iter().map(|d| format!("{}/{}", d.members, d.words)).collect();
        println!("d({n},{m}) over F_{p} = {:?}  [{}]", r.d, rows.join(" "));
    }
    Ok(())
}
