// Parse, print and validate structure equations.
use bcwb::dsl::{parse_model, print_model};

pub fn run_example() -> (String, bool, bool) {
    let text = "# a nilpotent model\nmodel demo {\n  dim 3\n  d w1 = 0\n  d w2 = w1^cw1\n  d w3 = w1^w2 + w1^cw2\n}\n";
    let m = parse_model(text).unwrap();
    let printed = print_model(&m);
    assert_eq!(parse_model(&printed).unwrap(), m);
    let report = m.validate();
    let broken = parse_model("model broken { dim 3 d w1 = w1^w3 d w2 = w1^w2 d w3 = 0 }").unwrap();
    (printed, report.passed() && report.nilpotent, broken.validate().passed())
}

#[allow(dead_code)]
fn main() {
    let (printed, valid, broken_valid) = run_example();
    print!("{printed}");
    println!("valid nilpotent model: {valid}; broken model passes: {broken_valid}");
}
