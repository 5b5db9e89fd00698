//! Numerical invariants of a Lie model and the cross-identity consistency report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::Engine;

/// A sequence indexed by degree, starting at `k_min`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Graded<T> {
    pub k_min: i64,
    pub values: Vec<T>,
}

impl<T: Copy + Default> Graded<T> {
    pub fn from_fn(k_min: i64, k_max: i64, f: impl Fn(i64) -> T) -> Self {
        Graded { k_min, values: (k_min..=k_max).map(f).collect() }
    }

    /// Value in degree `k`; the default outside the stored range.
    pub fn get(&self, k: i64) -> T {
        let i = k - self.k_min;
        if i < 0 {
            return T::default();
        }
        self.values.get(i as usize).copied().unwrap_or_default()
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.k_min..=self.k_max()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Must hold for every model; a failure means a bug or an invalid model.
    Structural,
    /// A property of the particular model, reported but not required.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerCharacteristics {
    /// `sum (-1)^k b_k`.
    pub topological: i64,
    /// `sum (-1)^q h^{0,q}`.
    pub structure_sheaf: i64,
    /// Alternating sum of `H^k(C(1))`.
    pub truncated_c1: i64,
    /// Alternating sum of `H^k_BC(C(1,1))`.
    pub bott_chern_11: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub n: usize,
    pub betti: Graded<i64>,
    /// `hodge[p][q] = dim H^{p,q}_dbar`.
    pub hodge: Vec<Vec<i64>>,
    pub bott_chern: Vec<Vec<i64>>,
    pub aeppli: Vec<Vec<i64>>,
    /// `dim H^k(C(1))`.
    pub hyper_c1: Graded<i64>,
    /// `dim H^k_BC(C(1,1))`.
    pub hyper_bc11: Graded<i64>,
    pub spade: Graded<i64>,
    pub club: Graded<i64>,
    /// `h_BC^{p,q} - h_dbar^{p,q}`.
    pub delta_bc_dol: Vec<Vec<i64>>,
    pub nk_degree: Graded<i64>,
    pub ddbar_lemma: bool,
    pub frolicher_e1: bool,
    pub euler: EulerCharacteristics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn structural_failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.kind == CheckKind::Structural && !c.passed)
    }

    pub fn all_structural_pass(&self) -> bool {
        self.structural_failures().next().is_none()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn alternating(g: &Graded<i64>) -> i64 {
    g.degrees().map(|k| if k.rem_euclid(2) == 0 { g.get(k) } else { -g.get(k) }).sum()
}

fn fmt_list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn bidegree_table(e: &Engine, f: impl Fn(&Engine, i64, i64) -> usize + Sync) -> Vec<Vec<i64>> {
    let n = e.dim() as i64;
    let pairs: Vec<(i64, i64)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
    let dims: Vec<i64> = pairs.par_iter().map(|&(p, q)| f(e, p, q) as i64).collect();
    dims.chunks(n as usize + 1).map(<[i64]>::to_vec).collect()
}

pub fn betti(e: &Engine) -> Graded<i64> {
    let n = e.dim() as i64;
    let v: Vec<i64> = (0..=2 * n).into_par_iter().map(|k| e.betti(k) as i64).collect();
    Graded { k_min: 0, values: v }
}

pub fn hyper_c1(e: &Engine) -> Graded<i64> {
    let n = e.dim() as i64;
    let v: Vec<i64> = (1..=2 * n).into_par_iter().map(|k| e.hyper_truncated(k, 1).dim() as i64).collect();
    Graded { k_min: 1, values: v }
}

pub fn hyper_bc11(e: &Engine) -> Graded<i64> {
    let n = e.dim() as i64;
    let v: Vec<i64> = (1..=2 * n).into_par_iter().map(|k| e.hyper_bc(k, 1, 1).dim() as i64).collect();
    Graded { k_min: 1, values: v }
}

/// `dim H^k(C(1)) - dim H^k_BC(C(1,1))` for `k = 1..=2n`.
pub fn spade(e: &Engine) -> Graded<i64> {
    let c1 = hyper_c1(e);
    let bc = hyper_bc11(e);
    Graded::from_fn(1, 2 * e.dim() as i64, |k| c1.get(k) - bc.get(k))
}

/// `b_k - dim H^k_BC(C(1,1))` for `k = 1..=2n`.
pub fn club(e: &Engine) -> Graded<i64> {
    let b = betti(e);
    let bc = hyper_bc11(e);
    Graded::from_fn(1, 2 * e.dim() as i64, |k| b.get(k) - bc.get(k))
}

pub fn delta_bc_dol(e: &Engine) -> Vec<Vec<i64>> {
    let bc = bidegree_table(e, |e, p, q| e.bott_chern(p, q).dim());
    let dol = bidegree_table(e, |e, p, q| e.dolbeault(p, q).dim());
    bc.iter().zip(&dol).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect()
}

/// Non-Kählerness degrees `sum_{p+q=k} (h_BC + h_A) - 2 b_k` for `k = 0..=2n`, and
/// whether they all vanish (the `del delbar`-lemma).
pub fn nk_degrees(e: &Engine) -> (Graded<i64>, bool) {
    let n = e.dim() as i64;
    let bc = bidegree_table(e, |e, p, q| e.bott_chern(p, q).dim());
    let a = bidegree_table(e, |e, p, q| e.aeppli(p, q).dim());
    let b = betti(e);
    let g = Graded::from_fn(0, 2 * n, |k| {
        let s: i64 = (0..=n)
            .filter(|p| (0..=n).contains(&(k - p)))
            .map(|p| bc[p as usize][(k - p) as usize] + a[p as usize][(k - p) as usize])
            .sum();
        s - 2 * b.get(k)
    });
    let verdict = g.values.iter().all(|&x| x == 0);
    (g, verdict)
}

/// Computes every invariant and evaluates the identities relating them.
pub fn consistency_report(e: &Engine) -> InvariantReport {
    let n = e.dim() as i64;
    let nu = e.dim();
    let betti = betti(e);
    let hodge = bidegree_table(e, |e, p, q| e.dolbeault(p, q).dim());
    let bc = bidegree_table(e, |e, p, q| e.bott_chern(p, q).dim());
    let aeppli = bidegree_table(e, |e, p, q| e.aeppli(p, q).dim());
    let hyper_c1 = hyper_c1(e);
    let hyper_bc11 = hyper_bc11(e);
    let spade = Graded::from_fn(1, 2 * n, |k| hyper_c1.get(k) - hyper_bc11.get(k));
    let club = Graded::from_fn(1, 2 * n, |k| betti.get(k) - hyper_bc11.get(k));
    let delta_bc_dol = delta_bc_dol(e);
    let (nk_degree, ddbar_lemma) = nk_degrees(e);

    let mut checks = Vec::new();
    let mut push = |name: &str, kind, passed, detail: String| {
        checks.push(Check { name: name.into(), kind, passed, detail });
    };

    let validation = e.model().validate();
    let detail = validation.failures().map(|f| format!("{} at {:?}", f.identity.name(), f.bidegree)).collect::<Vec<_>>();
    push("d-squared", CheckKind::Structural, validation.passed(), if detail.is_empty() { "all identities hold".into() } else { detail.join("; ") });
    push(
        "nilpotent",
        CheckKind::Informational,
        validation.nilpotent,
        if validation.nilpotent { "nilpotent Lie algebra".into() } else { "not nilpotent; invariant cohomology is a model value only".into() },
    );

    let euler = EulerCharacteristics {
        topological: alternating(&betti),
        structure_sheaf: (0..=nu).map(|q| if q % 2 == 0 { hodge[0][q] } else { -hodge[0][q] }).sum(),
        truncated_c1: alternating(&hyper_c1),
        bott_chern_11: alternating(&hyper_bc11),
    };
    let lhs = euler.bott_chern_11;
    let via_c1 = euler.truncated_c1 - euler.structure_sheaf;
    let via_top = euler.topological - 2 * euler.structure_sheaf;
    push(
        "euler-bc11-vs-c1",
        CheckKind::Structural,
        lhs == via_c1,
        format!("chi(B(1,1)) = {lhs}, chi(C(1)) - chi(O) = {via_c1}"),
    );
    push(
        "euler-bc11-vs-topological",
        CheckKind::Structural,
        lhs == via_top,
        format!("chi(B(1,1)) = {lhs}, chi_top - 2 chi(O) = {via_top}"),
    );

    // Hypercohomology duality k <-> 2n+1-k, (p,q) <-> (n-p+1, n-q+1)
    let triples: Vec<(i64, i64, i64)> =
        (0..=2 * n + 1).flat_map(|k| (1..=n).flat_map(move |p| (1..=n).map(move |q| (k, p, q)))).collect();
    let bad: Vec<String> = triples
        .par_iter()
        .filter_map(|&(k, p, q)| {
            let a = e.hyper_bc(k, p, q).dim();
            let b = e.hyper_bc(2 * n + 1 - k, n - p + 1, n - q + 1).dim();
            (a != b).then(|| format!("k={k} (p,q)=({p},{q}): {a} vs {b}"))
        })
        .collect();
    push("hyper-bc-duality", CheckKind::Structural, bad.is_empty(), if bad.is_empty() { format!("{} triples", triples.len()) } else { bad.join("; ") });

    let mut bad = Vec::new();
    for p in 0..=nu {
        for q in 0..=nu {
            if bc[p][q] != aeppli[nu - p][nu - q] {
                bad.push(format!("h_BC^({p},{q}) = {} vs h_A^({},{}) = {}", bc[p][q], nu - p, nu - q, aeppli[nu - p][nu - q]));
            }
        }
    }
    push("bc-aeppli-duality", CheckKind::Structural, bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    let mut l_checks = 0;
    for p in 1..=n {
        for q in 1..=n {
            l_checks += 1;
            let direct = e.bott_chern(p, q);
            let via_l = e.hyper_bc(p + q, p, q);
            if direct.dim() != via_l.dim() || !direct.spanned_by(&via_l.generators) {
                bad.push(format!("BC ({p},{q})"));
            }
            let l = crate::complex::build_l(e.model(), p, q).expect("in range");
            let a = e.aeppli(p - 1, q - 1);
            let via_l = crate::cohomology::cohomology(&l, p + q - 2);
            if a.dim() != via_l.dim() || !a.spanned_by(&via_l.generators) {
                bad.push(format!("Aeppli ({},{})", p - 1, q - 1));
            }
        }
    }
    push("l-complex-identification", CheckKind::Structural, bad.is_empty(), if bad.is_empty() { format!("{l_checks} bidegrees") } else { bad.join("; ") });

    let frolicher_sums: Vec<i64> = (0..=2 * n)
        .map(|k| (0..=n).filter(|p| (0..=n).contains(&(k - p))).map(|p| hodge[p as usize][(k - p) as usize]).sum())
        .collect();
    let frolicher_e1 = frolicher_sums == betti.values;
    push(
        "frolicher-e1",
        CheckKind::Informational,
        frolicher_e1,
        format!("sum h_dbar = {}, betti = {}", fmt_list(&frolicher_sums), fmt_list(&betti.values)),
    );

    if n >= 2 {
        let a = e.hyper_bc(2 * n - 1, n - 1, n - 1).dim() as i64;
        let b = e.hyper_bc(2, 2, 2).dim() as i64;
        push(
            "h2n-1-bc(n-1,n-1)-vs-h2-bc(2,2)",
            CheckKind::Structural,
            a == b,
            format!("dim H^{}_BC(C({},{})) = {a}, dim H^2_BC(C(2,2)) = {b}", 2 * n - 1, n - 1, n - 1),
        );
        push(
            "h2-bc(2,2)-equals-b1",
            CheckKind::Informational,
            b == betti.get(1),
            format!("dim H^2_BC(C(2,2)) = {b}, b_1 = {}", betti.get(1)),
        );
    }

    let bad: Vec<String> = (1..=n)
        .flat_map(|p| (1..=n).map(move |q| (p, q)))
        .filter_map(|(p, q)| {
            let d = e.hyper_bc(1, p, q).dim();
            (d != 1).then(|| format!("({p},{q}): {d}"))
        })
        .collect();
    push("h1-bc-is-one", CheckKind::Structural, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = (n + 2..=2 * n)
        .filter(|&k| spade.get(k) != 0 || club.get(k) != 0)
        .map(|k| format!("k={k}: spade {} club {}", spade.get(k), club.get(k)))
        .collect();
    push("spade-club-vanish-high-degree", CheckKind::Structural, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = (1..=2 * n)
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&k| {
            let c = e.map_c(k);
            let diff = c.coker_dim() as i64 - c.ker_dim() as i64;
            (diff != spade.get(k)).then(|| format!("k={k}: coker-ker {diff} vs spade {}", spade.get(k)))
        })
        .collect();
    push("spade-equals-coker-minus-ker", CheckKind::Structural, bad.is_empty(), bad.join("; "));

    push(
        "ddbar-lemma",
        CheckKind::Informational,
        ddbar_lemma,
        format!("non-Kahlerness degrees {}", fmt_list(&nk_degree.values)),
    );

    InvariantReport {
        n: nu,
        betti,
        hodge,
        bott_chern: bc,
        aeppli,
        hyper_c1,
        hyper_bc11,
        spade,
        club,
        delta_bc_dol,
        nk_degree,
        ddbar_lemma,
        frolicher_e1,
        euler,
        checks,
    }
}
