// A selective computation serialized as a versioned JSON result document.
use bcwb::io::{compute, load_model, to_json, ResultDocument, Selection};

pub fn run_example() -> (usize, Vec<String>, bool) {
    let loaded = load_model("corpus:h7").unwrap();
    let sel = Selection { maps_c: true, ..Selection::default() };
    let doc = compute(&loaded, &sel);
    let json = to_json(&doc);
    let back: ResultDocument = serde_json::from_str(&json).unwrap();
    let c2 = &doc.maps.c["2"];
    (c2.ker_dim, c2.coker_generators.clone(), back == doc)
}

#[allow(dead_code)]
fn main() {
    let (ker, coker, round_trip) = run_example();
    println!("C^2: ker {ker}, coker {coker:?}; round trip {round_trip}");
}
