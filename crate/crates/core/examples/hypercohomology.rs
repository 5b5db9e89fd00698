// Bott-Chern hypercohomology H^k_BC(C(1,1)), truncated de Rham H^k(C(1)) and the map C^k.
use bcwb::cohomology::Engine;

pub fn run_example() -> (Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
    let e = Engine::new(bcwb::corpus::load("h7").unwrap());
    let bc: Vec<usize> = (1..=6).map(|k| e.hyper_bc(k, 1, 1).dim()).collect();
    let c1: Vec<usize> = (1..=6).map(|k| e.hyper_truncated(k, 1).dim()).collect();
    let maps = (1..=6).map(|k| e.map_c(k)).map(|m| (m.ker_dim(), m.coker_dim())).collect();
    (bc, c1, maps)
}

#[allow(dead_code)]
fn main() {
    let (bc, c1, maps) = run_example();
    println!("H^k_BC(C(1,1)): {bc:?}");
    println!("H^k(C(1)):      {c1:?}");
    println!("C^k ker/coker:  {maps:?}");
}
