// Alexander polynomial, Levine-Tristram signatures and rho averages of the right trefoil.

use obstruction_lab::seifert::{rho_average, SeifertMatrix, SignatureFunction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = SeifertMatrix::right_trefoil();
    println!("Alexander polynomial: {}", v.alexander_polynomial());
    let sig = SignatureFunction::new(&v);
    println!("component values: {:?}", sig.component_values());
    for d in [2u64, 3, 6, 7] {
        let values: Vec<i64> = (1..d as i64).map(|k| sig.at_root_of_unity(k, d)).collect();
        println!("d = {d}: sigma {values:?}, rho {}", rho_average(&v, d));
    }
    assert_eq!(sig.at_root_of_unity(1, 2), -2);
    let doubled = v.connected_sum(&v.mirror());
    assert_eq!(SignatureFunction::new(&doubled).at_root_of_unity(1, 2), 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("seifert example");
}
