// Lens space correction terms and the assembled bound.

use obstruction_lab::dinv::{lens_d, spin_index, theorem_assembly};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q) in [(3u64, 1u64), (5, 2), (7, 3)] {
        let values: Vec<String> = (0..p).map(|i| lens_d(p, q, i).map(|d| d.to_string())).collect::<Result<_, _>>()?;
        let spin = spin_index(p, q)?;
        println!("L({p},{q}): [{}], spin index {:?}", values.join(", "), spin.indices);
    }
    for m in [3u32, 5, 7, 9] {
        let t = theorem_assembly(m)?;
        println!("m = {m}: {} - {} = {}", t.ym_bound, t.rhs_bound, t.final_bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("d-invariant example");
}
