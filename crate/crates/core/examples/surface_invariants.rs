// Closed-form invariants of compact complex surfaces.
use bcwb::diamond::{surface_invariants, SurfaceData, SCHEMA};

fn surface(h10: i64, h20: i64, h11: i64, b1: i64, chi_top: i64, chi_o: i64) -> SurfaceData {
    SurfaceData {
        schema: SCHEMA.into(),
        name: None,
        h10,
        h01: h10,
        h20,
        h11_dol: h11,
        h11_bc: h11,
        b1,
        chi_top,
        chi_o,
    }
}

pub fn run_example() -> Vec<[i64; 4]> {
    let p2 = surface(0, 0, 1, 0, 3, 1);
    let k3 = surface(0, 1, 20, 0, 24, 2);
    let torus = surface(2, 1, 4, 4, 0, 0);
    [p2, k3, torus].iter().map(surface_invariants).collect()
}

#[allow(dead_code)]
fn main() {
    for (name, s) in ["P2", "K3", "torus"].iter().zip(run_example()) {
        println!("{name}: {s:?}");
    }
}
