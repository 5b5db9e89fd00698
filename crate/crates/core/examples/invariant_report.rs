// The spade and club invariants with the consistency checks of a model.
use bcwb::cohomology::Engine;
use bcwb::invariants::consistency_report;

pub fn run_example() -> (Vec<i64>, Vec<i64>, bool, bool) {
    let e = Engine::new(bcwb::corpus::load("iwasawa").unwrap());
    let r = consistency_report(&e);
    (r.spade.values.clone(), r.club.values.clone(), r.all_structural_pass(), r.ddbar_lemma)
}

#[allow(dead_code)]
fn main() {
    let (spade, club, ok, ddbar) = run_example();
    println!("spade {spade:?}\nclub  {club:?}\nstructural checks pass: {ok}; ddbar-lemma: {ddbar}");
}
