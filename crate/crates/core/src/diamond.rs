//! Dimension-table arithmetic without a Lie model: Kähler closed forms, surface
//! formulas, and blow-up / projective-bundle predictions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::Engine;
use crate::invariants::{Check, CheckKind, Graded, InvariantReport};

pub const SCHEMA: &str = "bcwb/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiamondError {
    #[error("diamond is not symmetric: h[{p}][{q}] = {a} but h[{q}][{p}] = {b}")]
    AsymmetricDiamond { p: usize, q: usize, a: i64, b: i64 },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("missing table entries: {}", holes.join(", "))]
    MissingTableEntry { holes: Vec<String> },
    #[error("codimension >= 2 required, got {0}")]
    Codimension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeDiamond {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    /// `h[p][q]` for `0 <= p, q <= n`.
    pub h: Vec<Vec<i64>>,
}

impl HodgeDiamond {
    pub fn new(n: usize, h: Vec<Vec<i64>>) -> Self {
        HodgeDiamond { schema: SCHEMA.into(), name: None, n, h }
    }

    /// Shape, nonnegativity and `h[0][0] = h[n][n] = 1`.
    pub fn validate(&self) -> Result<(), DiamondError> {
        if self.schema != SCHEMA {
            return Err(DiamondError::InvalidTable(format!("schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        if self.h.len() != self.n + 1 || self.h.iter().any(|r| r.len() != self.n + 1) {
            return Err(DiamondError::InvalidTable(format!("h must be {0}x{0}", self.n + 1)));
        }
        if self.h.iter().flatten().any(|&x| x < 0) {
            return Err(DiamondError::InvalidTable("negative Hodge number".into()));
        }
        if self.h[0][0] != 1 || self.h[self.n][self.n] != 1 {
            return Err(DiamondError::InvalidTable("h[0][0] and h[n][n] must be 1".into()));
        }
        Ok(())
    }

    pub fn check_symmetric(&self) -> Result<(), DiamondError> {
        for p in 0..=self.n {
            for q in p + 1..=self.n {
                if self.h[p][q] != self.h[q][p] {
                    return Err(DiamondError::AsymmetricDiamond { p, q, a: self.h[p][q], b: self.h[q][p] });
                }
            }
        }
        Ok(())
    }

    /// `h[p][q]`, zero outside `0..=n`.
    pub fn get(&self, p: i64, q: i64) -> i64 {
        let n = self.n as i64;
        if (0..=n).contains(&p) && (0..=n).contains(&q) {
            self.h[p as usize][q as usize]
        } else {
            0
        }
    }

    /// Rows of the usual picture: row `r` lists `h[p][q]` with `p + q = r`, `p`
    /// descending from left to right.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        let n = self.n as i64;
        (0..=2 * n)
            .map(|r| (0..=n).rev().filter(|p| (0..=n).contains(&(r - p))).map(|p| self.get(p, r - p)).collect())
            .collect()
    }

    pub fn render(&self) -> String {
        let rows = self.rows();
        let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        let widest = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = String::new();
        for row in &rows {
            let pad = (widest - row.len()) * (width + 1) / 2;
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            out.push_str(&" ".repeat(pad));
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Engine,
    Kahler,
    User,
    Predicted,
}

/// Dimension tables of a compact complex manifold (or model).
///
/// `hyper_bc` is keyed `"p,q"`, `hyper_c` is keyed `"p"`. Entries whose indices are
/// both nonpositive are never stored: they are the Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimTables {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    /// Poincaré duality expected for the Betti numbers.
    pub closed: bool,
    pub betti: Vec<i64>,
    pub hyper_bc: BTreeMap<String, Graded<i64>>,
    pub hyper_c: BTreeMap<String, Graded<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bott_chern: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aeppli: Option<Vec<Vec<i64>>>,
    pub provenance: Provenance,
}

pub fn pq_key(p: i64, q: i64) -> String {
    format!("{p},{q}")
}

impl DimTables {
    fn empty(n: usize, provenance: Provenance) -> Self {
        DimTables {
            schema: SCHEMA.into(),
            name: None,
            n,
            closed: true,
            betti: vec![0; 2 * n + 1],
            hyper_bc: BTreeMap::new(),
            hyper_c: BTreeMap::new(),
            hodge: None,
            bott_chern: None,
            aeppli: None,
            provenance,
        }
    }

    /// A point: `b_0 = 1`, `H^1_BC(C(1,1)) = C`, and `H(C(p)) = 0` for `p >= 1`.
    pub fn point() -> Self {
        let mut t = DimTables::empty(0, Provenance::User);
        t.name = Some("point".into());
        t.betti = vec![1];
        t.hyper_bc.insert(pq_key(1, 1), Graded { k_min: 1, values: vec![1] });
        t.hyper_c.insert("1".into(), Graded { k_min: 1, values: vec![] });
        t
    }

    pub fn from_report(name: &str, r: &InvariantReport) -> Self {
        let mut t = DimTables::empty(r.n, Provenance::Engine);
        t.name = Some(name.into());
        t.betti = r.betti.values.clone();
        t.hyper_bc.insert(pq_key(1, 1), r.hyper_bc11.clone());
        t.hyper_c.insert("1".into(), r.hyper_c1.clone());
        t.hodge = Some(r.hodge.clone());
        t.bott_chern = Some(r.bott_chern.clone());
        t.aeppli = Some(r.aeppli.clone());
        t
    }

    /// Engine tables with `hyper_c` for `p = 1..=n` and `hyper_bc` for every
    /// `(p,q)` in `pq_min..=pq_max` squared.
    pub fn from_engine(e: &Engine, pq_min: i64, pq_max: i64) -> Self {
        let n = e.dim() as i64;
        let r = crate::invariants::consistency_report(e);
        let mut t = DimTables::from_report(e.model().name(), &r);
        for p in 1..=n {
            t.hyper_c.insert(p.to_string(), Graded::from_fn(1, 2 * n, |k| e.hyper_truncated(k, p).dim() as i64));
        }
        for p in pq_min..=pq_max {
            for q in pq_min..=pq_max {
                if p <= 0 && q <= 0 {
                    continue;
                }
                t.hyper_bc.insert(pq_key(p, q), Graded::from_fn(1, 2 * n, |k| e.hyper_bc(k, p, q).dim() as i64));
            }
        }
        t
    }

    pub fn betti_at(&self, k: i64) -> i64 {
        if k < 0 {
            return 0;
        }
        self.betti.get(k as usize).copied().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), DiamondError> {
        if self.schema != SCHEMA {
            return Err(DiamondError::InvalidTable(format!("schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        if self.betti.len() != 2 * self.n + 1 {
            return Err(DiamondError::InvalidTable(format!("betti needs {} entries", 2 * self.n + 1)));
        }
        if self.betti[0] != 1 {
            return Err(DiamondError::InvalidTable("betti[0] must be 1".into()));
        }
        let negative = self.betti.iter().any(|&x| x < 0)
            || self.hyper_bc.values().chain(self.hyper_c.values()).flat_map(|g| &g.values).any(|&x| x < 0);
        if negative {
            return Err(DiamondError::InvalidTable("negative dimension".into()));
        }
        for key in self.hyper_bc.keys() {
            parse_pq(key).ok_or_else(|| DiamondError::InvalidTable(format!("bad hyper_bc key {key:?}")))?;
        }
        for key in self.hyper_c.keys() {
            key.parse::<i64>().map_err(|_| DiamondError::InvalidTable(format!("bad hyper_c key {key:?}")))?;
        }
        Ok(())
    }

    /// Degrees violating `b_k = b_{2n-k}`.
    pub fn poincare_violations(&self) -> Vec<usize> {
        let top = 2 * self.n;
        (0..=self.n).filter(|&k| self.betti_at(k as i64) != self.betti_at((top - k) as i64)).collect()
    }

    /// `H^k_BC(C(p,q))`; both indices nonpositive reads the Betti numbers.
    pub fn bc_entry(&self, p: i64, q: i64, k: i64) -> Option<i64> {
        if p <= 0 && q <= 0 {
            return Some(self.betti_at(k));
        }
        self.hyper_bc.get(&pq_key(p, q)).map(|g| g.get(k))
    }

    /// `H^k(C(p))`; `p <= 0` reads the Betti numbers and `p > n` is zero.
    pub fn c_entry(&self, p: i64, k: i64) -> Option<i64> {
        if p <= 0 {
            return Some(self.betti_at(k));
        }
        if p > self.n as i64 {
            return Some(0);
        }
        self.hyper_c.get(&p.to_string()).map(|g| g.get(k))
    }

    /// `dim H^k(C(1)) - dim H^k_BC(C(1,1))` for `k = 1..=2n`.
    pub fn spade(&self) -> Option<Graded<i64>> {
        let n = self.n as i64;
        let c1 = self.hyper_c.get("1")?;
        let bc = self.hyper_bc.get(&pq_key(1, 1))?;
        Some(Graded::from_fn(1, 2 * n, |k| c1.get(k) - bc.get(k)))
    }

    /// `b_k - dim H^k_BC(C(1,1))` for `k = 1..=2n`.
    pub fn club(&self) -> Option<Graded<i64>> {
        let n = self.n as i64;
        let bc = self.hyper_bc.get(&pq_key(1, 1))?;
        Some(Graded::from_fn(1, 2 * n, |k| self.betti_at(k) - bc.get(k)))
    }

    /// The tables compared entry for entry, ignoring name and provenance.
    pub fn same_dimensions(&self, other: &DimTables) -> bool {
        let strip = |t: &DimTables| {
            let mut t = t.clone();
            t.name = None;
            t.provenance = Provenance::User;
            t
        };
        strip(self) == strip(other)
    }
}

fn parse_pq(key: &str) -> Option<(i64, i64)> {
    let (p, q) = key.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

/// Tables of a compact Kähler manifold from its Hodge diamond. With the
/// `del delbar`-lemma the Bott–Chern and Aeppli numbers equal the Hodge numbers,
/// `H^k(C(p)) = sum_{s >= p} h^{s,k-s}`, and `H^k_BC(C(1,1))` is `1` for `k = 1`
/// and `b_k - h^{0,k} - h^{k,0}` for `k >= 2`.
pub fn kahler_tables(h: &HodgeDiamond) -> Result<DimTables, DiamondError> {
    h.validate()?;
    h.check_symmetric()?;
    let n = h.n as i64;
    let mut t = DimTables::empty(h.n, Provenance::Kahler);
    t.name = h.name.clone();
    t.betti = (0..=2 * n).map(|k| (0..=k).map(|p| h.get(p, k - p)).sum()).collect();
    for p in 1..=n {
        t.hyper_c.insert(p.to_string(), Graded::from_fn(1, 2 * n, |k| (p..=n).map(|s| h.get(s, k - s)).sum()));
    }
    let betti = t.betti.clone();
    t.hyper_bc.insert(
        pq_key(1, 1),
        Graded::from_fn(1, 2 * n, |k| if k == 1 { 1 } else { betti[k as usize] - h.get(0, k) - h.get(k, 0) }),
    );
    t.hodge = Some(h.h.clone());
    t.bott_chern = Some(h.h.clone());
    t.aeppli = Some(h.h.clone());
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceData {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub h10: i64,
    pub h01: i64,
    pub h20: i64,
    pub h11_dol: i64,
    pub h11_bc: i64,
    pub b1: i64,
    pub chi_top: i64,
    pub chi_o: i64,
}

impl SurfaceData {
    pub fn validate(&self) -> Result<(), DiamondError> {
        if self.schema != SCHEMA {
            return Err(DiamondError::InvalidTable(format!("schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        if [self.h10, self.h01, self.h20, self.h11_dol, self.h11_bc, self.b1].iter().any(|&x| x < 0) {
            return Err(DiamondError::InvalidTable("negative dimension".into()));
        }
        Ok(())
    }
}

/// `spade^1..spade^4` of a compact complex surface.
pub fn surface_invariants(s: &SurfaceData) -> [i64; 4] {
    [
        s.h10 - 1,
        s.h11_dol - s.h11_bc + s.h20,
        s.b1 - s.h11_bc - 2 * s.chi_o + s.chi_top,
        0,
    ]
}

/// Adds `sum_{i in range} Z[(p-i, q-i)][k-2i]` to every table of `base`.
fn add_shifted(
    base: &DimTables,
    z: &DimTables,
    range: std::ops::Range<i64>,
    holes: &mut Vec<String>,
) -> DimTables {
    let n = base.n as i64;
    let mut out = base.clone();
    out.name = None;
    out.provenance = Provenance::Predicted;
    out.closed = base.closed && z.closed;
    out.hodge = None;
    out.bott_chern = None;
    out.aeppli = None;
    out.betti = (0..=2 * n)
        .map(|k| base.betti_at(k) + range.clone().map(|i| z.betti_at(k - 2 * i)).sum::<i64>())
        .collect();
    for (key, g) in out.hyper_bc.iter_mut() {
        let (p, q) = parse_pq(key).expect("validated key");
        let old = g.clone();
        for i in range.clone() {
            if z.bc_entry(p - i, q - i, 0).is_none() {
                holes.push(format!("hyper_bc[{}] (needed for k-{})", pq_key(p - i, q - i), 2 * i));
            }
        }
        *g = Graded::from_fn(old.k_min, old.k_max(), |k| {
            old.get(k) + range.clone().map(|i| z.bc_entry(p - i, q - i, k - 2 * i).unwrap_or(0)).sum::<i64>()
        });
    }
    for (key, g) in out.hyper_c.iter_mut() {
        let p: i64 = key.parse().expect("validated key");
        let old = g.clone();
        for i in range.clone() {
            if z.c_entry(p - i, 0).is_none() {
                holes.push(format!("hyper_c[{}] (needed for k-{})", p - i, 2 * i));
            }
        }
        *g = Graded::from_fn(old.k_min, old.k_max(), |k| {
            old.get(k) + range.clone().map(|i| z.c_entry(p - i, k - 2 * i).unwrap_or(0)).sum::<i64>()
        });
    }
    holes.sort();
    holes.dedup();
    out
}

/// Tables of the blow-up of `x` along a center `z` of codimension `c >= 2`.
pub fn blowup_predict(x: &DimTables, z: &DimTables, c: usize) -> Result<DimTables, DiamondError> {
    if c < 2 {
        return Err(DiamondError::Codimension(c));
    }
    x.validate()?;
    z.validate()?;
    if z.n + c != x.n {
        return Err(DiamondError::InvalidTable(format!(
            "center of dimension {} and codimension {c} in a manifold of dimension {}",
            z.n, x.n
        )));
    }
    let mut holes = Vec::new();
    let mut out = add_shifted(x, z, 1..c as i64, &mut holes);
    if !holes.is_empty() {
        return Err(DiamondError::MissingTableEntry { holes });
    }
    out.name = x.name.as_ref().map(|n| format!("blowup of {n}"));
    Ok(out)
}

/// Tables of the projectivization of a rank-`c` bundle over `z`.
pub fn bundle_predict(z: &DimTables, c: usize) -> Result<DimTables, DiamondError> {
    if c < 1 {
        return Err(DiamondError::InvalidTable("bundle rank must be positive".into()));
    }
    z.validate()?;
    let n = z.n + c - 1;
    let mut base = DimTables::empty(n, Provenance::Predicted);
    base.closed = z.closed;
    for key in z.hyper_bc.keys() {
        base.hyper_bc.insert(key.clone(), Graded::from_fn(1, 2 * n as i64, |_| 0));
    }
    for key in z.hyper_c.keys() {
        base.hyper_c.insert(key.clone(), Graded::from_fn(1, 2 * n as i64, |_| 0));
    }
    let mut holes = Vec::new();
    let mut out = add_shifted(&base, z, 0..c as i64, &mut holes);
    if !holes.is_empty() {
        return Err(DiamondError::MissingTableEntry { holes });
    }
    out.name = z.name.as_ref().map(|name| format!("P(rank {c} bundle over {name})"));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvarianceReport {
    pub codimension: usize,
    pub spade_before: Graded<i64>,
    pub spade_after: Graded<i64>,
    pub club_before: Graded<i64>,
    pub club_after: Graded<i64>,
    /// `b_k(blow-up) - b_k(X)`.
    pub betti_gain: Vec<i64>,
    pub checks: Vec<Check>,
    pub predicted: DimTables,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Predicts the blow-up and checks that `spade` and `club` are unchanged, that
/// Betti numbers grow by `sum_{i=1}^{c-1} b_{k-2i}(Z)`, and that closed inputs
/// satisfy Poincaré duality.
pub fn invariance_check(x: &DimTables, z: &DimTables, c: usize) -> Result<InvarianceReport, DiamondError> {
    let predicted = blowup_predict(x, z, c)?;
    let missing = |what: &str| DiamondError::MissingTableEntry { holes: vec![what.into()] };
    let spade_before = x.spade().ok_or_else(|| missing("X hyper_c[1] or hyper_bc[1,1]"))?;
    let spade_after = predicted.spade().expect("keys preserved");
    let club_before = x.club().ok_or_else(|| missing("X hyper_bc[1,1]"))?;
    let club_after = predicted.club().expect("keys preserved");
    let n = x.n as i64;
    let betti_gain: Vec<i64> = (0..=2 * n).map(|k| predicted.betti_at(k) - x.betti_at(k)).collect();
    let expected_gain: Vec<i64> = (0..=2 * n).map(|k| (1..c as i64).map(|i| z.betti_at(k - 2 * i)).sum()).collect();

    let mut checks = Vec::new();
    let differing = |a: &Graded<i64>, b: &Graded<i64>| -> Vec<String> {
        a.degrees().filter(|&k| a.get(k) != b.get(k)).map(|k| format!("k={k}: {} -> {}", a.get(k), b.get(k))).collect()
    };
    for (name, a, b) in [("spade-invariant", &spade_before, &spade_after), ("club-invariant", &club_before, &club_after)] {
        let diff = differing(a, b);
        checks.push(Check { name: name.into(), kind: CheckKind::Structural, passed: diff.is_empty(), detail: diff.join("; ") });
    }
    checks.push(Check {
        name: "betti-gain".into(),
        kind: CheckKind::Structural,
        passed: betti_gain == expected_gain,
        detail: format!("gain {:?}, expected {:?}", betti_gain, expected_gain),
    });
    for (label, t) in [("base", x), ("center", z)] {
        if t.closed {
            let bad = t.poincare_violations();
            checks.push(Check {
                name: format!("{label}-poincare-duality"),
                kind: CheckKind::Structural,
                passed: bad.is_empty(),
                detail: bad
                    .iter()
                    .map(|&k| format!("b_{k} = {} but b_{} = {}", t.betti_at(k as i64), 2 * t.n - k, t.betti_at((2 * t.n - k) as i64)))
                    .collect::<Vec<_>>()
                    .join("; "),
            });
        }
    }
    Ok(InvarianceReport { codimension: c, spade_before, spade_after, club_before, club_after, betti_gain, checks, predicted })
}
