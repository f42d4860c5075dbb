// Drive the command-line front end in process and read back its JSON.

use obstruction_lab::cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["obstruction-lab", "theorem", "--m", "5"], &mut out, &mut err);
    let report: serde_json::Value = serde_json::from_slice(&out)?;
    for v in report["verdicts"].as_array().into_iter().flatten() {
        println!("{}: {}", v["check"], v["verdict"]);
    }
    println!("exit code {code}");
    assert_eq!(code, 0);

    let code = cli::run(["obstruction-lab", "verify-all", "--m", "6..4"], &mut out, &mut err);
    println!("empty range: exit {code}, {}", String::from_utf8_lossy(&err).trim());
    assert_eq!(code, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli example");
}
