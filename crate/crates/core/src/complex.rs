//! Finite cochain complexes of invariant forms: Dolbeault rows, the complexes
//! `L(p,q)` computing Bott–Chern hypercohomology, truncated total complexes, and the
//! comparison map from `L(1,1)` into the truncation `s >= 1`.

use thiserror::Error;

use crate::exterior::{basis, Form, Monomial};
use crate::linalg::MatrixQI;
use crate::model::LieModel;
use crate::scalar::Qi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("index {value} outside 0..={n}")]
    RangeError { value: i64, n: usize },
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("differential squares to a nonzero map at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("basis label {label} repeated in degree {degree}")]
    DuplicateLabel { degree: i64, label: String },
    #[error("chain map fails to commute at source degree {degree}")]
    NotAChainMap { degree: i64 },
}

/// A cochain complex concentrated in degrees `lo..=hi`, each degree spanned by a list
/// of monomials (labels) with differentials `diff(d): C^d -> C^{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    n: usize,
    lo: i64,
    spaces: Vec<Vec<Monomial>>,
    diffs: Vec<MatrixQI>,
}

impl ChainComplex {
    /// `spaces[i]` and `diffs[i]` describe degree `lo + i`. The last differential
    /// must map into the zero space.
    pub fn new(n: usize, lo: i64, spaces: Vec<Vec<Monomial>>, diffs: Vec<MatrixQI>) -> Result<Self, ComplexError> {
        let c = ChainComplex { n, lo, spaces, diffs };
        for i in 0..c.spaces.len() {
            let d = lo + i as i64;
            let mut seen = std::collections::BTreeSet::new();
            for m in &c.spaces[i] {
                if !seen.insert(*m) {
                    return Err(ComplexError::DuplicateLabel { degree: d, label: m.to_string() });
                }
            }
            let expected = (c.dim(d + 1), c.dim(d));
            let found = c.diffs.get(i).map_or((0, 0), |m| (m.nrows(), m.ncols()));
            if expected != found {
                return Err(ComplexError::ShapeMismatch { degree: d, expected, found });
            }
        }
        for i in 1..c.spaces.len() {
            let d = lo + i as i64;
            if !c.diffs[i].mul(&c.diffs[i - 1]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: d - 1 });
            }
        }
        Ok(c)
    }

    /// Complex dimension of the underlying model.
    pub fn model_dim(&self) -> usize {
        self.n
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.spaces.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    fn slot(&self, d: i64) -> Option<usize> {
        (d >= self.lo && d <= self.hi()).then(|| (d - self.lo) as usize)
    }

    /// Basis labels of degree `d` (empty outside the range).
    pub fn space(&self, d: i64) -> &[Monomial] {
        self.slot(d).map_or(&[], |i| &self.spaces[i])
    }

    pub fn dim(&self, d: i64) -> usize {
        self.space(d).len()
    }

    /// `diff(d): C^d -> C^{d+1}`, a zero matrix of the right shape outside the range.
    pub fn diff(&self, d: i64) -> MatrixQI {
        match self.slot(d) {
            Some(i) => self.diffs[i].clone(),
            None => MatrixQI::zeros(self.dim(d + 1), self.dim(d)),
        }
    }

    pub fn form(&self, d: i64, coords: &[Qi]) -> Form {
        Form::from_coordinates(self.n, self.space(d), coords)
    }

    /// Euler characteristic of the chain groups.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(d) as i64).sum()
    }
}

fn bidegree_span(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = pairs.into_iter().flat_map(|(s, t)| basis(n, s, t)).collect();
    out.sort();
    out
}

/// All `(s, t)` with `s + t = total` and `0 <= s, t <= n` satisfying `keep`.
fn bidegrees_of(n: usize, total: i64, keep: impl Fn(i64, i64) -> bool) -> Vec<(usize, usize)> {
    (0..=n as i64)
        .filter_map(|s| {
            let t = total - s;
            (t >= 0 && t <= n as i64 && keep(s, t)).then_some((s as usize, t as usize))
        })
        .collect()
}

fn check_range(value: i64, n: usize) -> Result<(), ComplexError> {
    if value < 0 || value > n as i64 {
        Err(ComplexError::RangeError { value, n })
    } else {
        Ok(())
    }
}

/// `A^{p,0} -> A^{p,1} -> ... -> A^{p,n}` with `delbar`; degree = `t`.
pub fn build_dolbeault_row(m: &LieModel, p: usize) -> Result<ChainComplex, ComplexError> {
    let n = m.dim();
    check_range(p as i64, n)?;
    let spaces: Vec<Vec<Monomial>> = (0..=n).map(|t| basis(n, p, t)).collect();
    let diffs = (0..=n)
        .map(|t| {
            let dst = if t < n { spaces[t + 1].clone() } else { Vec::new() };
            m.operator_matrix(&spaces[t], &dst, |f| m.delbar(f))
        })
        .collect();
    ChainComplex::new(n, 0, spaces, diffs)
}

/// The complex `L(p,q)`, `k = p + q`:
///
/// * degree `l <= k-2`: `sum A^{s,t}` over `s+t = l`, `s < p`, `t < q`, differential the
///   projection of `d` (at `l = k-2` the differential is `del delbar` into `A^{p,q}`);
/// * degree `l >= k-1`: `sum A^{s,t}` over `s+t = l+1`, `s >= p`, `t >= q`, differential `d`.
///
/// Its degree `k-1` cohomology is Bott–Chern cohomology of bidegree `(p,q)` and
/// `H^{l}(L(p,q))` is the Bott–Chern hypercohomology in degree `l+1`. Nonpositive
/// `p`, `q` are allowed; `p = q = 0` gives the de Rham complex shifted by one.
pub fn build_l(m: &LieModel, p: i64, q: i64) -> Result<ChainComplex, ComplexError> {
    let n = m.dim();
    let k = p + q;
    if p > n as i64 {
        return Err(ComplexError::RangeError { value: p, n });
    }
    if q > n as i64 {
        return Err(ComplexError::RangeError { value: q, n });
    }
    let lo = (k - 1).min(0);
    let hi = (2 * n as i64 - 1).max(lo);
    let space = |l: i64| -> Vec<Monomial> {
        if l <= k - 2 {
            bidegree_span(n, bidegrees_of(n, l, |s, t| s < p && t < q))
        } else {
            bidegree_span(n, bidegrees_of(n, l + 1, |s, t| s >= p && t >= q))
        }
    };
    let spaces: Vec<Vec<Monomial>> = (lo..=hi).map(space).collect();
    let diffs = (lo..=hi)
        .map(|l| {
            let src = &spaces[(l - lo) as usize];
            let dst = if l < hi { spaces[(l - lo + 1) as usize].clone() } else { Vec::new() };
            if l == k - 2 {
                m.operator_matrix(src, &dst, |f| m.del(&m.delbar(f)))
            } else {
                // the matrix builder drops components outside `dst`, which is the projection
                m.operator_matrix(src, &dst, |f| m.d(f))
            }
        })
        .collect();
    ChainComplex::new(n, lo, spaces, diffs)
}

/// Total complex of the columns `smin <= s <= smax` in natural grading
/// (degree `s + t`), with the projected differential.
pub fn build_truncated_total(m: &LieModel, smin: usize, smax: usize) -> Result<ChainComplex, ComplexError> {
    let n = m.dim();
    check_range(smin as i64, n)?;
    check_range(smax as i64, n)?;
    let spaces: Vec<Vec<Monomial>> = (0..=2 * n as i64)
        .map(|d| bidegree_span(n, bidegrees_of(n, d, |s, _| s >= smin as i64 && s <= smax as i64)))
        .collect();
    let diffs = (0..spaces.len())
        .map(|i| {
            let dst = spaces.get(i + 1).cloned().unwrap_or_default();
            m.operator_matrix(&spaces[i], &dst, |f| m.d(f))
        })
        .collect();
    ChainComplex::new(n, 0, spaces, diffs)
}

/// The full de Rham complex of invariant forms.
pub fn build_de_rham(m: &LieModel) -> ChainComplex {
    build_truncated_total(m, 0, m.dim()).expect("full range is valid")
}

/// A degree-`shift` map of complexes; `map(d): src^d -> dst^{d+shift}`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub src: ChainComplex,
    pub dst: ChainComplex,
    pub shift: i64,
    maps: Vec<MatrixQI>,
}

impl ChainMap {
    /// `maps[i]` is the component on source degree `src.lo() + i`. Checks
    /// `dst.diff . f = f . src.diff` in every degree.
    pub fn new(src: ChainComplex, dst: ChainComplex, shift: i64, maps: Vec<MatrixQI>) -> Result<Self, ComplexError> {
        let cm = ChainMap { src, dst, shift, maps };
        for d in cm.src.degrees() {
            let f = cm.map(d);
            let expected = (cm.dst.dim(d + shift), cm.src.dim(d));
            if (f.nrows(), f.ncols()) != expected {
                return Err(ComplexError::ShapeMismatch { degree: d, expected, found: (f.nrows(), f.ncols()) });
            }
        }
        for d in cm.src.lo() - 1..=cm.src.hi() {
            let left = cm.dst.diff(d + shift).mul(&cm.map(d));
            let right = cm.map(d + 1).mul(&cm.src.diff(d));
            if left != right {
                return Err(ComplexError::NotAChainMap { degree: d });
            }
        }
        Ok(cm)
    }

    pub fn map(&self, d: i64) -> MatrixQI {
        let i = d - self.src.lo();
        if i >= 0 && (i as usize) < self.maps.len() {
            self.maps[i as usize].clone()
        } else {
            MatrixQI::zeros(self.dst.dim(d + self.shift), self.src.dim(d))
        }
    }
}

/// Matrix sending each source label to the same label in `dst` (labels missing in
/// `dst` go to zero).
fn inclusion(src: &[Monomial], dst: &[Monomial]) -> MatrixQI {
    let mut m = MatrixQI::zeros(dst.len(), src.len());
    for (j, mono) in src.iter().enumerate() {
        if let Some(i) = dst.iter().position(|x| x == mono) {
            m.set(i, j, Qi::from_int(1));
        }
    }
    m
}

/// The map `L(1,1) -> (s >= 1 truncation)` of shift one inducing
/// `H^k_BC(C(1,1)) -> H^k(C(1))`. Degree 0 is `-del` on functions; higher degrees
/// are inclusions. The sign makes the square at degree 0 commute strictly.
pub fn chain_map_c(m: &LieModel) -> ChainMap {
    let src = build_l(m, 1, 1).expect("(1,1) is in range");
    let dst = build_truncated_total(m, 1, m.dim()).expect("valid truncation");
    let maps = src
        .degrees()
        .map(|d| {
            if d == 0 {
                m.operator_matrix(src.space(0), dst.space(1), |f| m.del(f).scale(&Qi::from_int(-1)))
            } else {
                inclusion(src.space(d), dst.space(d + 1))
            }
        })
        .collect();
    ChainMap::new(src, dst, 1, maps).expect("the comparison map commutes with differentials")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_model;

    fn iwasawa() -> LieModel {
        parse_model("model iwasawa { dim 3 d w1 = 0 d w2 = 0 d w3 = - w1^w2 }").unwrap()
    }

    fn h7() -> LieModel {
        parse_model("model h7 { dim 3 d w1 = 0 d w2 = w1^cw1 d w3 = w1^w2 + w1^cw2 }").unwrap()
    }

    #[test]
    fn dolbeault_rows() {
        let m = iwasawa();
        let row = build_dolbeault_row(&m, 0).unwrap();
        assert_eq!(row.degrees().map(|d| row.dim(d)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        let top = build_dolbeault_row(&m, 3).unwrap();
        assert!(top.diff(3).is_zero());
        assert!(build_dolbeault_row(&m, 4).is_err());
    }

    #[test]
    fn l_complex_shapes() {
        let m = iwasawa();
        let l = build_l(&m, 1, 1).unwrap();
        assert_eq!((l.lo(), l.hi()), (0, 5));
        assert_eq!(l.space(0), basis(3, 0, 0).as_slice());
        assert_eq!(l.space(1), basis(3, 1, 1).as_slice());
        assert_eq!(l.dim(1), 9);
        let mut deg2 = basis(3, 2, 1);
        deg2.extend(basis(3, 1, 2));
        assert_eq!(l.space(2), deg2.as_slice());
        // the hinge is del delbar
        let expected = m.operator_matrix(l.space(0), l.space(1), |f| m.del(&m.delbar(f)));
        assert_eq!(l.diff(0), expected);

        let l33 = build_l(&m, 3, 3).unwrap();
        let mut deg2: Vec<Monomial> = basis(3, 2, 0);
        deg2.extend(basis(3, 1, 1));
        deg2.extend(basis(3, 0, 2));
        assert_eq!(l33.space(2), deg2.as_slice());
        assert_eq!(l33.diff(1), m.operator_matrix(l33.space(1), l33.space(2), |f| m.d(f)));
    }

    #[test]
    fn l_complex_hinge_spaces() {
        let m = h7();
        for p in 1..=3i64 {
            for q in 1..=3i64 {
                let l = build_l(&m, p, q).unwrap();
                assert_eq!(l.space(p + q - 1), basis(3, p as usize, q as usize).as_slice());
                assert_eq!(l.space(p + q - 2), basis(3, p as usize - 1, q as usize - 1).as_slice());
            }
        }
    }

    #[test]
    fn l_complex_with_nonpositive_indices_is_shifted_de_rham() {
        let m = iwasawa();
        let l = build_l(&m, 0, 0).unwrap();
        let dr = build_de_rham(&m);
        assert_eq!(l.lo(), -1);
        for d in 0..=6 {
            assert_eq!(l.space(d - 1), dr.space(d));
            assert_eq!(l.diff(d - 1), dr.diff(d));
        }
    }

    #[test]
    fn truncated_shapes() {
        let m = iwasawa();
        let t = build_truncated_total(&m, 1, 3).unwrap();
        assert_eq!(t.dim(0), 0);
        assert_eq!(t.dim(1), 3);
        assert_eq!(t.dim(2), 3 + 9);
        assert_eq!(build_de_rham(&m).degrees().map(|d| build_de_rham(&m).dim(d)).sum::<usize>(), 64);
        assert_eq!(build_de_rham(&m).euler_characteristic(), 0);
    }

    #[test]
    fn comparison_map() {
        for m in [iwasawa(), h7()] {
            let c = chain_map_c(&m);
            assert!(c.map(0).is_zero(), "constants are del-closed");
            let w11 = Monomial::new(&[1], &[1]);
            let j = c.src.space(1).iter().position(|x| *x == w11).unwrap();
            let i = c.dst.space(2).iter().position(|x| *x == w11).unwrap();
            assert_eq!(c.map(1).get(i, j), Qi::from_int(1));
        }
    }

    #[test]
    fn rejects_broken_complexes() {
        let a = vec![Monomial::one()];
        let b = vec![Monomial::new(&[1], &[])];
        let bad = ChainComplex::new(1, 0, vec![a.clone(), b.clone(), a.clone()], vec![
            MatrixQI::from_i64(&[&[1]]),
            MatrixQI::from_i64(&[&[1]]),
            MatrixQI::zeros(0, 1),
        ]);
        assert_eq!(bad.unwrap_err(), ComplexError::NotAComplex { degree: 0 });
        let dup = ChainComplex::new(1, 0, vec![vec![b[0], b[0]]], vec![MatrixQI::zeros(0, 2)]);
        assert!(matches!(dup, Err(ComplexError::DuplicateLabel { .. })));
    }
}
