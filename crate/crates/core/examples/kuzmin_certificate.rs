//! Certificates for the quadratic lower bound on the nilpotency index.

use nilbound::breduce::kuzmin_certificate;

fn main() -> nilbound::Result<()> {
    for n in 2..=6 {
        let c = kuzmin_certificate(n, 0)?;
        println!("{}", serde_json::to_string(&c).expect("json"));
    }
    Ok(())
}
