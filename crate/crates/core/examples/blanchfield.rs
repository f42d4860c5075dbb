// Alexander module, Blanchfield pairing and its metabolizers for [[0,2],[1,0]].

use obstruction_lab::seifert::{
    alexander_module, basis_element, blanchfield_metabolizers, blanchfield_pairing, SeifertMatrix,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = SeifertMatrix::from_rows(&[&[0, 2], &[1, 0]])?;
    let module = alexander_module(&v);
    for c in &module.components {
        println!("summand annihilated by {}", c.label());
    }
    for i in 0..2 {
        for j in 0..2 {
            let b = blanchfield_pairing(&v, &basis_element(2, i), &basis_element(2, j))?;
            println!("Bl(e{}, e{}) = {b}", i + 1, j + 1);
        }
    }
    let mets = blanchfield_metabolizers(&v)?;
    println!("metabolizers: {:?}", mets.iter().map(|m| &m.label).collect::<Vec<_>>());
    assert_eq!(mets.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("blanchfield example");
}
