// First homology of the m-fold cover, its linking form and the order-q metabolizers.

use obstruction_lab::cover;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in [3u32, 5, 9] {
        assert!(cover::verify_inverse(m)?);
        let g = cover::homology(m)?;
        let (x1, x2) = (g.x1.clone().unwrap_or_default(), g.x2.clone().unwrap_or_default());
        println!("m = {m}: H1 = Z/{0} + Z/{0}, lambda(x1, x2) = {1}", g.modulus, g.pair_value(&x1, &x2));
        let report = cover::metabolizers(&g)?;
        for met in &report.metabolizers {
            println!("  metabolizer {} (contains x1: {})", met.label, met.contains_x1);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("branched cover example");
}
