// Linking-number conditions, the characteristic class and the b2/signature ledger.

use obstruction_lab::cobordism::{self, AssignmentScope, CurveClassAssignment};
use obstruction_lab::cover::SurgeryLinkingData;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in [3u32, 5, 7] {
        let data = SurgeryLinkingData::new(m)?;
        let asg = CurveClassAssignment::standard(m)?;
        let one = cobordism::condition_one(&data, &asg);
        let two = cobordism::condition_two(&data, AssignmentScope::All)?;
        let ch = cobordism::characteristic_check(&data, AssignmentScope::All)?;
        let led = cobordism::ledger(m, &cobordism::base_knot())?;
        println!(
            "m = {m}: sum = {}, {} parity cases pass = {}, w^2 = {}, b2(W) = {}, sign(W) = {}",
            one.sum,
            two.cases.len(),
            two.pass,
            ch.w_squared,
            led.b2_w,
            led.sign_w
        );
        assert!(led.negative_definite);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cobordism example");
}
