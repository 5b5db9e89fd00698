// Bott-Chern and Dolbeault generators of the Iwasawa model and the comparison map I.
use bcwb::cohomology::Engine;

pub fn run_example() -> (Vec<String>, usize, Vec<String>) {
    let e = Engine::new(bcwb::corpus::load("iwasawa").unwrap());
    let bc = e.bott_chern(1, 1);
    let gens = bc.generators.iter().map(|f| f.normalized().to_string()).collect();
    let i11 = e.map_i(1, 1);
    let coker = i11.coker_generators.iter().map(|f| f.normalized().to_string()).collect();
    (gens, i11.ker_dim(), coker)
}

#[allow(dead_code)]
fn main() {
    let (gens, ker, coker) = run_example();
    println!("H^{{1,1}}_BC generators: {}", gens.join(", "));
    println!("I^{{1,1}}: ker {ker}, coker {}", coker.join(", "));
}
