// Derivations of negativity and positivity for the example knots.

use obstruction_lab::bipolar::{certify_example_knots, check_certificate, example_facts, example_knot};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let facts = example_facts(1);
    for n in 2..=4 {
        let certs = certify_example_knots(n, 1)?;
        println!("{}", example_knot(n, 1));
        for c in [&certs.negative, &certs.positive] {
            let claim = check_certificate(&facts, c)?;
            println!("  {:?} at level {} ({} steps)", claim.polarity, claim.level, c.node_count());
        }
    }
    println!("{}", serde_json::to_string_pretty(&certify_example_knots(2, 1)?.negative)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bipolarity example");
}
