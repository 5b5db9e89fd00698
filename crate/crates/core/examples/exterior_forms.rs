// Forms on a complex 3-dimensional Lie model: wedge, conjugation and d.
use bcwb::dsl::{parse_form, parse_model};

pub fn run_example() -> Vec<String> {
    let m = parse_model("model iwasawa { dim 3 d w1 = 0 d w2 = 0 d w3 = - w1^w2 }").unwrap();
    let a = parse_form("w1 + i w3", 3).unwrap();
    let b = parse_form("cw2", 3).unwrap();
    let ab = a.wedge(&b).unwrap();
    let w3 = parse_form("w3", 3).unwrap();
    vec![
        ab.to_string(),
        ab.conjugate().to_string(),
        m.d(&w3).to_string(),
        m.del(&parse_form("w3^cw3", 3).unwrap()).to_string(),
        m.delbar(&parse_form("w3^cw3", 3).unwrap()).to_string(),
    ]
}

#[allow(dead_code)]
fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
