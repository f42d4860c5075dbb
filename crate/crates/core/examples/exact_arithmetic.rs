// Smith normal form of a small integer matrix and certified roots of a polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use obstruction_lab::exact::{isolate_roots_in_interval, smith_normal_form, IntMatrix, IntPoly};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_normal_form(&m);
    let diag: Vec<String> = s.diag.iter().map(BigInt::to_string).collect();
    println!("elementary divisors: {}", diag.join(", "));
    assert_eq!(s.left.mul(&m)?.mul(&s.right)?.get(2, 2), &s.diag[2]);

    // x^2 - 2 on (-2, 2)
    let p = IntPoly::from_i64(&[-2, 0, 1]);
    let two = BigRational::from_integer(2.into());
    for mut root in isolate_roots_in_interval(&p, &-two.clone(), &two) {
        root.refine_below(&BigRational::new(1.into(), BigInt::from(1u64 << 20)));
        println!("root in [{}, {}]", root.lo(), root.hi());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("exact arithmetic example");
}
