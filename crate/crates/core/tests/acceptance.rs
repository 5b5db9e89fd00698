// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero if
// any fails. All comparisons are exact.

use std::fmt::Debug;
use std::path::PathBuf;
use std::process::Command;

use bcwb::cohomology::{cohomology, CohomologySpace, Engine};
use bcwb::complex::build_l;
use bcwb::diamond::{invariance_check, kahler_tables, surface_invariants, DimTables, HodgeDiamond};
use bcwb::dsl::parse_form;
use bcwb::exterior::Form;
use bcwb::io::{read_hodge_diamond, read_surface};

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn eq<T: PartialEq + Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn engine(name: &str) -> Engine {
    Engine::new(bcwb::corpus::load(name).unwrap())
}

fn forms(list: &[&str]) -> Vec<Form> {
    list.iter().map(|s| parse_form(s, 3).unwrap()).collect()
}

fn dims(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> usize) -> Vec<i64> {
    range.map(|k| f(k) as i64).collect()
}

/// Betti, H(C(1)), H_BC(C(1,1)), spade and club for k = 1..=2n, straight from the engine.
fn five_rows(e: &Engine) -> [Vec<i64>; 5] {
    let top = 2 * e.dim() as i64;
    let b = dims(1..=top, |k| e.betti(k));
    let c1 = dims(1..=top, |k| e.hyper_truncated(k, 1).dim());
    let bc = dims(1..=top, |k| e.hyper_bc(k, 1, 1).dim());
    let spade = c1.iter().zip(&bc).map(|(a, b)| a - b).collect();
    let club = b.iter().zip(&bc).map(|(a, b)| a - b).collect();
    [b, c1, bc, spade, club]
}

fn check_rows(o: &mut Outcome, model: &str, e: &Engine, want: [&[i64]; 5]) {
    let names = ["betti", "H(C(1))", "H_BC(C(1,1))", "spade", "club"];
    for ((name, got), want) in names.iter().zip(five_rows(e)).zip(want) {
        o.eq(&format!("{model} {name}"), got, want.to_vec());
    }
}

/// Every listed form is a cycle with a nonzero class, and the list is a basis.
fn check_basis(o: &mut Outcome, what: &str, space: &CohomologySpace, list: &[&str], dim: usize) {
    let fs = forms(list);
    for (s, f) in list.iter().zip(&fs) {
        o.holds(&format!("{what}: {s} is not a nonzero class"), space.has_nonzero_class(f));
    }
    o.eq(&format!("{what} dimension"), space.dim(), dim);
    o.holds(&format!("{what}: listed generators do not form a basis"), space.spanned_by(&fs));
}

fn check_map(o: &mut Outcome, what: &str, m: &bcwb::cohomology::MapSummary, ker: &[&str], coker: &[&str]) {
    o.eq(&format!("{what} ker/coker dims"), (m.ker_dim(), m.coker_dim()), (ker.len(), coker.len()));
    o.holds(&format!("{what}: kernel not spanned by the listed classes"), m.kernel_spanned_by(&forms(ker)));
    o.holds(&format!("{what}: cokernel not spanned by the listed classes"), m.cokernel_spanned_by(&forms(coker)));
}

fn diamond_rows(n: usize, h: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    HodgeDiamond::new(n, h).rows()
}

fn bidegree_dims(e: &Engine, f: impl Fn(&Engine, i64, i64) -> usize) -> Vec<Vec<i64>> {
    let n = e.dim() as i64;
    (0..=n).map(|p| (0..=n).map(|q| f(e, p, q) as i64).collect()).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::default();
    check_rows(
        &mut o,
        "iwasawa",
        &engine("iwasawa"),
        [&[4, 8, 10, 8, 4, 1], &[2, 6, 9, 8, 4, 1], &[1, 4, 8, 8, 4, 1], &[1, 2, 1, 0, 0, 0], &[3, 4, 2, 0, 0, 0]],
    );
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::default();
    let e = engine("iwasawa");
    check_basis(&mut o, "H^{1,1}_BC", &e.bott_chern(1, 1), &["w1^cw1", "w1^cw2", "w2^cw1", "w2^cw2"], 4);
    check_basis(
        &mut o,
        "H^{1,1}_dbar",
        &e.dolbeault(1, 1),
        &["w1^cw1", "w1^cw2", "w2^cw1", "w2^cw2", "w3^cw1", "w3^cw2"],
        6,
    );
    check_basis(
        &mut o,
        "H^{1,2}_BC",
        &e.bott_chern(1, 2),
        &["w1^cw1^cw2", "w1^cw1^cw3", "w1^cw2^cw3", "w2^cw1^cw2", "w2^cw1^cw3", "w2^cw2^cw3"],
        6,
    );
    check_basis(
        &mut o,
        "H^{2,2}_BC",
        &e.bott_chern(2, 2),
        &[
            "w1^w2^cw1^cw3",
            "w1^w2^cw2^cw3",
            "w1^w3^cw1^cw2",
            "w1^w3^cw1^cw3",
            "w1^w3^cw2^cw3",
            "w2^w3^cw1^cw2",
            "w2^w3^cw1^cw3",
            "w2^w3^cw2^cw3",
        ],
        8,
    );
    check_map(&mut o, "I^{1,1}", &e.map_i(1, 1), &[], &["w3^cw1", "w3^cw2"]);
    check_map(&mut o, "I^{1,2}", &e.map_i(1, 2), &["w1^cw1^cw2", "w2^cw1^cw2"], &["w3^cw1^cw3", "w3^cw2^cw3"]);
    check_map(&mut o, "I^{2,2}", &e.map_i(2, 2), &["w1^w3^cw1^cw2", "w2^w3^cw1^cw2"], &[]);
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::default();
    let e = engine("h6");
    check_rows(
        &mut o,
        "h6",
        &e,
        [&[4, 9, 11, 9, 4, 1], &[2, 7, 11, 9, 4, 1], &[1, 5, 10, 9, 4, 1], &[1, 2, 1, 0, 0, 0], &[3, 4, 1, 0, 0, 0]],
    );
    let hodge = bidegree_dims(&e, |e, p, q| e.dolbeault(p, q).dim());
    let bc = bidegree_dims(&e, |e, p, q| e.bott_chern(p, q).dim());
    let expected_hodge = [vec![1], vec![2, 2], vec![2, 5, 2], vec![1, 5, 5, 1], vec![2, 5, 2], vec![2, 2], vec![1]];
    let expected_bc = [vec![1], vec![2, 2], vec![2, 5, 2], vec![1, 6, 6, 1], vec![2, 6, 2], vec![3, 3], vec![1]];
    o.eq("h6 Hodge diamond", diamond_rows(3, hodge.clone()), expected_hodge.to_vec());
    o.eq("h6 Bott-Chern diamond", diamond_rows(3, bc.clone()), expected_bc.to_vec());
    let row_sums: Vec<i64> = diamond_rows(3, hodge).iter().map(|r| r.iter().sum()).collect();
    let betti = dims(0..=6, |k| e.betti(k));
    o.eq("h6 Frolicher E1 (row sums of the Hodge diamond vs Betti)", row_sums, betti);
    // The ddbar-lemma holds iff sum_{p+q=k} (h_BC + h_A) = 2 b_k in every degree.
    let ddbar = (0..=6).all(|k| {
        let sum: i64 = (0..=k.min(3))
            .filter(|&p| k - p <= 3)
            .map(|p| bc[p as usize][(k - p) as usize] + e.aeppli(p, k - p).dim() as i64)
            .sum();
        sum == 2 * e.betti(k) as i64
    });
    o.eq("h6 ddbar-lemma verdict", ddbar, false);
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::default();
    let e = engine("h7");
    check_rows(
        &mut o,
        "h7",
        &e,
        [&[3, 8, 12, 8, 3, 1], &[1, 6, 12, 8, 3, 1], &[1, 5, 11, 8, 3, 1], &[0, 1, 1, 0, 0, 0], &[2, 3, 1, 0, 0, 0]],
    );
    check_map(&mut o, "C^2", &e.map_c(2), &["w1^cw1"], &["w1^w3", "w2^w3 - w3^cw2"]);
    check_map(&mut o, "C^3", &e.map_c(3), &[], &["w1^w2^w3"]);
    for ((p, q), want) in [((1, 1), (2, 1)), ((1, 2), (2, 1)), ((2, 1), (1, 0)), ((2, 2), (2, 0))] {
        let m = e.map_i(p, q);
        o.eq(&format!("h7 I^{{{p},{q}}} ker/coker dims"), (m.ker_dim(), m.coker_dim()), want);
    }
    let hodge = bidegree_dims(&e, |e, p, q| e.dolbeault(p, q).dim());
    let bc = bidegree_dims(&e, |e, p, q| e.bott_chern(p, q).dim());
    let expected_hodge = [vec![1], vec![1, 2], vec![2, 4, 2], vec![1, 5, 5, 1], vec![3, 4, 2], vec![2, 2], vec![1]];
    let expected_bc = [vec![1], vec![1, 1], vec![3, 5, 3], vec![1, 6, 6, 1], vec![2, 5, 2], vec![3, 3], vec![1]];
    o.eq("h7 Hodge diamond", diamond_rows(3, hodge), expected_hodge.to_vec());
    o.eq("h7 Bott-Chern diamond", diamond_rows(3, bc), expected_bc.to_vec());
    o
}

fn alternating(v: &[i64], k_min: i64) -> i64 {
    v.iter().enumerate().map(|(i, x)| if (k_min + i as i64) % 2 == 0 { *x } else { -x }).sum()
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::default();
    for name in bcwb::corpus::names() {
        let e = engine(name);
        let n = e.dim() as i64;
        o.holds(&format!("{name}: d^2 != 0"), e.model().validate().passed());
        for p in 1..=n {
            for q in 1..=n {
                let l = build_l(e.model(), p, q).unwrap();
                let bc_l = cohomology(&l, p + q - 1);
                let a_l = cohomology(&l, p + q - 2);
                o.holds(
                    &format!("{name}: H^{{p+q-1}}(L({p},{q})) is not H^{{{p},{q}}}_BC"),
                    e.bott_chern(p, q).spanned_by(&bc_l.generators),
                );
                o.holds(
                    &format!("{name}: H^{{p+q-2}}(L({p},{q})) is not H^{{{},{}}}_A", p - 1, q - 1),
                    e.aeppli(p - 1, q - 1).spanned_by(&a_l.generators),
                );
                for k in 0..=2 * n + 1 {
                    let a = e.hyper_bc(k, p, q).dim();
                    let b = e.hyper_bc(2 * n + 1 - k, n - p + 1, n - q + 1).dim();
                    o.eq(&format!("{name}: hyper duality k={k} (p,q)=({p},{q})"), a, b);
                }
            }
        }
        for p in 0..=n {
            for q in 0..=n {
                o.eq(
                    &format!("{name}: h_BC^{{{p},{q}}} vs h_A^{{{},{}}}", n - p, n - q),
                    e.bott_chern(p, q).dim(),
                    e.aeppli(n - p, n - q).dim(),
                );
            }
        }
        let [b, c1, bc, spade, club] = five_rows(&e);
        let chi_o = alternating(&dims(0..=n, |q| e.dolbeault(0, q).dim()), 0);
        let chi_top = 1 + alternating(&b, 1);
        let chi_bc = alternating(&bc, 1);
        o.eq(&format!("{name}: chi(B(1,1)) vs chi(C(1)) - chi(O)"), chi_bc, alternating(&c1, 1) - chi_o);
        o.eq(&format!("{name}: chi(B(1,1)) vs chi_top - 2 chi(O)"), chi_bc, chi_top - 2 * chi_o);
        if n >= 2 {
            let high = e.hyper_bc(2 * n - 1, n - 1, n - 1).dim();
            let low = e.hyper_bc(2, 2, 2).dim();
            o.eq(&format!("{name}: dim H^{}_BC(C({},{})) vs dim H^2_BC(C(2,2))", 2 * n - 1, n - 1, n - 1), high, low);
            o.eq(&format!("{name}: dim H^2_BC(C(2,2)) vs b_1"), low, e.betti(1));
        }
        for k in n + 2..=2 * n {
            let i = (k - 1) as usize;
            o.eq(&format!("{name}: spade/club in degree {k}"), (spade[i], club[i]), (0, 0));
        }
        for k in 1..=2 * n {
            let m = e.map_c(k);
            o.eq(
                &format!("{name}: spade^{k} vs coker - ker of C^{k}"),
                spade[(k - 1) as usize],
                m.coker_dim() as i64 - m.ker_dim() as i64,
            );
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::default();
    for (file, want) in [("p2.json", [-1, 0, 0, 0]), ("k3.json", [-1, 1, 0, 0]), ("torus_surface.json", [1, 1, 0, 0])] {
        let s = read_surface(&data(file)).unwrap();
        o.eq(&format!("surface formula for {file}"), surface_invariants(&s), want);
    }
    for (name, want) in [("kodaira_primary", vec![0, 0, 0, 0]), ("torus2", vec![1, 1, 0, 0])] {
        let [_, _, _, spade, _] = five_rows(&engine(name));
        o.eq(&format!("engine spade of {name}"), spade, want);
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::default();
    let q = kahler_tables(&read_hodge_diamond(&data("quintic.json")).unwrap()).unwrap();
    o.eq("quintic spade", q.spade().unwrap().values, vec![-1, 0, 1, 0, 0, 0]);
    o.eq("quintic club", q.club().unwrap().values, vec![-1, 0, 2, 0, 0, 0]);
    let c = kahler_tables(&read_hodge_diamond(&data("cubic.json")).unwrap()).unwrap();
    o.eq("cubic spade", c.spade().unwrap().values, vec![-1, 0, 0, 0, 0, 0]);
    o.eq("cubic club", c.club().unwrap().values, vec![-1, 0, 0, 0, 0, 0]);
    let t = kahler_tables(&read_hodge_diamond(&data("torus3_diamond.json")).unwrap()).unwrap();
    let from_engine = DimTables::from_engine(&engine("torus3"), 1, 1);
    o.holds("T^3 Kahler tables differ from the engine tables of the abelian model", t.same_dimensions(&from_engine));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::default();
    let curve = DimTables::from_engine(&engine("torus1"), 1, 1);
    for name in bcwb::corpus::names() {
        let e = engine(name);
        if e.dim() != 3 {
            continue;
        }
        let x = DimTables::from_engine(&e, 1, 1);
        for (center, z, c) in [("point", DimTables::point(), 3usize), ("elliptic curve", curve.clone(), 2)] {
            let r = invariance_check(&x, &z, c).unwrap();
            o.eq(&format!("{name} + {center}: spade"), &r.spade_after, &r.spade_before);
            o.eq(&format!("{name} + {center}: club"), &r.club_after, &r.club_before);
            let gain: Vec<i64> =
                (0..=6).map(|k| (1..c as i64).map(|i| z.betti_at(k - 2 * i)).sum()).collect();
            let predicted_gain: Vec<i64> =
                (0..=6).map(|k| r.predicted.betti_at(k) - x.betti_at(k)).collect();
            o.eq(&format!("{name} + {center}: Betti gain"), predicted_gain, gain);
            o.holds(&format!("{name} + {center}: invariance verdict failed"), r.passed());
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::default();
    let run = |model: &str, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_bcwb"))
            .args(["compute", model])
            .env("BCWB_THREADS", threads)
            .output()
            .unwrap()
    };
    for model in ["corpus:iwasawa", "corpus:h6", "corpus:h7"] {
        let one = run(model, "1");
        let eight = run(model, "8");
        o.holds(&format!("{model}: compute failed"), one.status.success() && eight.status.success());
        o.holds(&format!("{model}: output differs between 1 and 8 threads"), one.stdout == eight.stdout);
    }
    o
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("Iwasawa tables", criterion_1),
        ("Iwasawa generator spans and I maps", criterion_2),
        ("h6 tables, diamonds, Frolicher and ddbar verdict", criterion_3),
        ("h7 tables, C and I maps, diamonds", criterion_4),
        ("property suite on every corpus model", criterion_5),
        ("surface invariants", criterion_6),
        ("Kahler mode", criterion_7),
        ("blow-up invariance", criterion_8),
        ("determinism across thread counts", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let o = f();
        if o.failures.is_empty() {
            println!("PASS criterion {}: {title}", i + 1);
        } else {
            failed += 1;
            println!("FAIL criterion {}: {title}", i + 1);
            for msg in &o.failures {
                println!("    {msg}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
