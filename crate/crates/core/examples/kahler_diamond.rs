// Invariants of a compact Kahler manifold from its Hodge diamond alone.
use bcwb::diamond::{kahler_tables, HodgeDiamond};

pub fn run_example() -> (Vec<i64>, Vec<i64>) {
    let quintic = HodgeDiamond::new(
        3,
        vec![vec![1, 0, 0, 1], vec![0, 1, 101, 0], vec![0, 101, 1, 0], vec![1, 0, 0, 1]],
    );
    let t = kahler_tables(&quintic).unwrap();
    (t.spade().unwrap().values, t.club().unwrap().values)
}

#[allow(dead_code)]
fn main() {
    let (spade, club) = run_example();
    println!("quintic threefold: spade {spade:?}, club {club:?}");
}
