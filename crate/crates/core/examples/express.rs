//! Writing generic-matrix words through invariants.

use nilbound::freealg::words_of_length;
use nilbound::nilideal::{ExpressOutcome, ExpressSolver, DEFAULT_BUDGET};

fn main() -> nilbound::Result<()> {
    let mut solver = ExpressSolver::new(2, 2, 2, DEFAULT_BUDGET)?;
    for w in words_of_length(2, 3) {
        let r = solver.solve(&w)?;
        match r.outcome {
            ExpressOutcome::Expressed { terms } => {
                let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                println!("{w} = {}", parts.join(" + "));
            }
            ExpressOutcome::NoExpression => println!("{w}: no expression"),
        }
    }
    Ok(())
}
