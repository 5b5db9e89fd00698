// Blow-up predictions: spade and club survive, Betti numbers grow by the center's.
use bcwb::cohomology::Engine;
use bcwb::diamond::{invariance_check, DimTables};

pub fn run_example() -> Vec<(usize, bool, Vec<i64>)> {
    let x = DimTables::from_engine(&Engine::new(bcwb::corpus::load("iwasawa").unwrap()), 1, 1);
    let curve = DimTables::from_engine(&Engine::new(bcwb::corpus::load("torus1").unwrap()), 1, 1);
    let mut out = Vec::new();
    for (z, c) in [(DimTables::point(), 3), (curve, 2)] {
        let r = invariance_check(&x, &z, c).unwrap();
        out.push((c, r.passed(), r.betti_gain.clone()));
    }
    out
}

#[allow(dead_code)]
fn main() {
    for (c, passed, gain) in run_example() {
        println!("codimension {c}: invariance {passed}, betti gain {gain:?}");
    }
}
