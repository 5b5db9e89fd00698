// Rank, kernel and a subquotient over Q(i), all exact.
use bcwb::linalg::{subquotient, MatrixQI};
use bcwb::scalar::Qi;

pub fn run_example() -> (usize, usize, usize) {
    // Rows (1, i) and (i, -1) are proportional: i * (1, i) = (i, -1).
    let mut a = MatrixQI::zeros(2, 2);
    a.set(0, 0, Qi::from_int(1));
    a.set(0, 1, Qi::i());
    a.set(1, 0, Qi::i());
    a.set(1, 1, Qi::from_int(-1));
    let rank = a.rank();
    let kernel = a.kernel_basis();
    for v in &kernel {
        assert!(a.mul_vec(v).iter().all(num::Zero::is_zero));
    }
    // Cycles span C^3, boundaries span one line: the quotient has dimension 2.
    let z = MatrixQI::identity(3).columns();
    let b = vec![vec![Qi::from_int(1), Qi::from_ratio(1, 2), Qi::i()]];
    let h = subquotient(3, &z, &b).unwrap();
    (rank, kernel.len(), h.dim())
}

#[allow(dead_code)]
fn main() {
    let (rank, nullity, quotient) = run_example();
    println!("rank {rank}, nullity {nullity}, quotient dimension {quotient}");
}
