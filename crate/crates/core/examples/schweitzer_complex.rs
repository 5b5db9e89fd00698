// The complex L(p,q) and its cohomology next to the direct Bott-Chern and Aeppli groups.
use bcwb::cohomology::{cohomology, Engine};
use bcwb::complex::build_l;

pub fn run_example() -> Vec<(i64, i64, usize, usize, usize, usize)> {
    let m = bcwb::corpus::load("iwasawa").unwrap();
    let e = Engine::new(m.clone());
    let mut rows = Vec::new();
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let l = build_l(&m, p, q).unwrap();
        let bc_via_l = cohomology(&l, p + q - 1).dim();
        let a_via_l = cohomology(&l, p + q - 2).dim();
        rows.push((p, q, bc_via_l, e.bott_chern(p, q).dim(), a_via_l, e.aeppli(p - 1, q - 1).dim()));
    }
    rows
}

#[allow(dead_code)]
fn main() {
    for (p, q, bc_l, bc, a_l, a) in run_example() {
        println!("L({p},{q}): H^{{p+q-1}} = {bc_l} (BC {bc}), H^{{p+q-2}} = {a_l} (Aeppli {a})");
    }
}
