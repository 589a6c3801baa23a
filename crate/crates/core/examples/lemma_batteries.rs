//! Finite instance batteries for the rewriting lemmas.

use nilbound::breduce::{run_batteries, BatteryConfig};

fn main() {
    for r in run_batteries(BatteryConfig { seed: 0, cases: 200 }) {
        println!("{:<24} {:>6} instances, {} failures", r.name, r.instances, r.failures);
    }
}
