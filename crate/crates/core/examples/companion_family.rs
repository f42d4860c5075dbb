// Choose family parameters whose first signature jump sits in each window.

use obstruction_lab::family::{self, choose_family_parameters};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sel = choose_family_parameters(&[3, 5, 7], 2, family::DEFAULT_SEARCH_CAP)?;
    for row in &sel.rows {
        let bound = family::rho_lower_bound(&row.profile, row.prime)?;
        println!(
            "p = {:>2}: (a, b) = ({}, {}), theta ~ {:.4}, rho >= {bound}, N = {}",
            row.prime,
            row.profile.a,
            row.profile.b,
            row.profile.jump.approx_radians(),
            row.profile.multiplicity
        );
        assert!(family::check_certificate(row));
    }
    assert!(sel.independence_matrix().iter().all(|e| e.2));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("family example");
}
