//! Exact linear algebra over Q(i): echelon forms, ranks, kernels, subquotients
//! `Z/B`, and the maps they induce.
//!
//! Vectors are dense `Vec<Qi>`. Matrices are stored sparsely and act on column
//! vectors. Elimination keeps a reduced row echelon form with pivots normalized to
//! one, using dense rows below [`DENSE_COLUMN_LIMIT`] columns and sparse rows above.

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::scalar::Qi;

pub type Vector = Vec<Qi>;

/// Below this many columns elimination runs on dense rows.
pub const DENSE_COLUMN_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("boundary vector #{index} does not lie in the span of the cycles")]
    ContainmentViolation { index: usize },
    #[error("map does not induce a map on the subquotients: {reason}")]
    NotAChainMap { reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Qi::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Qi::one();
    v
}

pub fn is_zero_vector(v: &[Qi]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `v += c * w`
fn axpy(v: &mut [Qi], c: &Qi, w: &[Qi]) {
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQI {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Qi>,
}

impl MatrixQI {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQI { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Qi::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| Qi::from_int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Qi {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Qi::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Qi) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Qi) {
        let v = self.get(r, c) + x;
        self.set(r, c, v);
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Qi)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.cols); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r][c] = x.clone();
        }
        out
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Qi>> {
        let mut out = vec![BTreeMap::new(); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r].insert(c, x.clone());
        }
        out
    }

    pub fn column(&self, c: usize) -> Vector {
        let mut v = zero_vector(self.rows);
        for (&(r, cc), x) in &self.entries {
            if cc == c {
                v[r] = x.clone();
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.rows); self.cols];
        for (&(r, c), x) in &self.entries {
            out[c][r] = x.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(r, c), x) in &self.entries {
            t.entries.insert((c, r), x.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &[Qi]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zero_vector(self.rows);
        for (&(r, c), x) in &self.entries {
            if !v[c].is_zero() {
                out[r] += &(x * &v[c]);
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixQI) -> MatrixQI {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let rhs = other.sparse_rows();
        let mut out = MatrixQI::zeros(self.rows, other.cols);
        for (&(r, k), x) in &self.entries {
            for (&c, y) in &rhs[k] {
                out.add_to(r, c, &(x * y));
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixQI) -> MatrixQI {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), x) in &other.entries {
            out.add_to(r, c, x);
        }
        out
    }

    pub fn scale(&self, s: &Qi) -> MatrixQI {
        let mut out = MatrixQI::zeros(self.rows, self.cols);
        for (&(r, c), x) in &self.entries {
            out.set(r, c, x * s);
        }
        out
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &MatrixQI) -> MatrixQI {
        assert_eq!(self.rows, other.rows);
        let mut out = MatrixQI::zeros(self.rows, self.cols + other.cols);
        out.entries = self.entries.clone();
        for (&(r, c), x) in &other.entries {
            out.entries.insert((r, c + self.cols), x.clone());
        }
        out
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &MatrixQI) -> MatrixQI {
        assert_eq!(self.cols, other.cols);
        let mut out = MatrixQI::zeros(self.rows + other.rows, self.cols);
        out.entries = self.entries.clone();
        for (&(r, c), x) in &other.entries {
            out.entries.insert((r + self.rows, c), x.clone());
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        if self.cols < DENSE_COLUMN_LIMIT {
            Echelon::from_vectors(self.cols, self.row_vectors())
        } else {
            Echelon::from_sparse_rows(self.cols, self.sparse_rows())
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.echelon().null_space()
    }
}

/// A subspace held as the rows of a reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vector>>(ncols: usize, vectors: I) -> Self {
        let mut e = Self::new(ncols);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    /// Same result as [`Echelon::from_vectors`], eliminating on sparse rows.
    pub fn from_sparse_rows(ncols: usize, vectors: Vec<BTreeMap<usize, Qi>>) -> Self {
        let mut rows: Vec<BTreeMap<usize, Qi>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vectors {
            v.retain(|_, x| !x.is_zero());
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(c) = v.get(&p).cloned() {
                    for (&j, y) in row {
                        let nv = v.get(&j).cloned().unwrap_or_else(Qi::zero) - &(&c * y);
                        if nv.is_zero() {
                            v.remove(&j);
                        } else {
                            v.insert(j, nv);
                        }
                    }
                }
            }
            let Some((&p, lead)) = v.iter().next() else { continue };
            let inv = lead.inv();
            for x in v.values_mut() {
                *x = &*x * &inv;
            }
            for row in rows.iter_mut() {
                if let Some(c) = row.get(&p).cloned() {
                    for (&j, y) in &v {
                        let nv = row.get(&j).cloned().unwrap_or_else(Qi::zero) - &(&c * y);
                        if nv.is_zero() {
                            row.remove(&j);
                        } else {
                            row.insert(j, nv);
                        }
                    }
                }
            }
            let at = pivots.partition_point(|&q| q < p);
            pivots.insert(at, p);
            rows.insert(at, v);
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut d = zero_vector(ncols);
                for (j, x) in r {
                    d[j] = x;
                }
                d
            })
            .collect();
        Echelon { ncols, rows, pivots }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the echelon rows so that `v` vanishes on every pivot column.
    pub fn reduce(&self, v: &[Qi]) -> Vector {
        assert_eq!(v.len(), self.ncols, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -v[p].clone();
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Qi]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Qi]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Basis of `{x : r . x = 0 for every row r}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit_vector(self.ncols, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// A subquotient `Z/B` of a coordinate space, with chosen representatives of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubquotientSpace {
    pub ambient_dim: usize,
    pub cycles: Vec<Vector>,
    pub boundaries: Vec<Vector>,
    pub reps: Vec<Vector>,
    cycle_echelon: Echelon,
    boundary_echelon: Echelon,
    rep_echelon: Echelon,
}

/// Builds `span(z) / span(b)`.
///
/// Representatives are the reduced echelon basis of `span(z)` reduced modulo the
/// echelon basis of `span(b)` and echelonized again, so they depend only on the
/// two spans and vanish on the pivot columns of `b`.
pub fn subquotient(ambient_dim: usize, z: &[Vector], b: &[Vector]) -> Result<SubquotientSpace, LinalgError> {
    for v in z.iter().chain(b) {
        if v.len() != ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
    }
    let cycle_echelon = Echelon::from_vectors(ambient_dim, z.iter().cloned());
    if let Some(index) = b.iter().position(|v| !cycle_echelon.contains(v)) {
        return Err(LinalgError::ContainmentViolation { index });
    }
    let boundary_echelon = Echelon::from_vectors(ambient_dim, b.iter().cloned());
    let rep_echelon = Echelon::from_vectors(
        ambient_dim,
        cycle_echelon.rows().iter().map(|v| boundary_echelon.reduce(v)),
    );
    Ok(SubquotientSpace {
        ambient_dim,
        cycles: cycle_echelon.rows().to_vec(),
        boundaries: boundary_echelon.rows().to_vec(),
        reps: rep_echelon.rows().to_vec(),
        cycle_echelon,
        boundary_echelon,
        rep_echelon,
    })
}

impl SubquotientSpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn is_cycle(&self, v: &[Qi]) -> bool {
        self.cycle_echelon.contains(v)
    }

    pub fn is_boundary(&self, v: &[Qi]) -> bool {
        self.boundary_echelon.contains(v)
    }

    /// Coordinates of the class of `v` in the representative basis; `None` if `v`
    /// is not a cycle.
    pub fn class_coordinates(&self, v: &[Qi]) -> Option<Vector> {
        if !self.is_cycle(v) {
            return None;
        }
        let w = self.boundary_echelon.reduce(v);
        Some(self.rep_echelon.pivots().iter().map(|&p| w[p].clone()).collect())
    }

    /// Dimension of the span of the classes of `vs`; `None` if one of them is not a cycle.
    pub fn class_rank(&self, vs: &[Vector]) -> Option<usize> {
        let coords = vs.iter().map(|v| self.class_coordinates(v)).collect::<Option<Vec<_>>>()?;
        Some(Echelon::from_vectors(self.dim(), coords).rank())
    }

    /// The representative combination `sum c_i rep_i`.
    pub fn lift(&self, coords: &[Qi]) -> Vector {
        let mut v = zero_vector(self.ambient_dim);
        for (c, r) in coords.iter().zip(&self.reps) {
            if !c.is_zero() {
                axpy(&mut v, c, r);
            }
        }
        v
    }
}

/// The map between two subquotients induced by an ambient linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    /// `dst.dim() x src.dim()` matrix in the representative bases.
    pub matrix: MatrixQI,
    pub rank: usize,
    /// Ambient source vectors whose classes form a basis of the kernel.
    pub kernel: Vec<Vector>,
    /// Destination representatives whose classes complete the image to a basis.
    pub cokernel: Vec<Vector>,
}

impl InducedMap {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.cokernel.len()
    }
}

pub fn induced_map(
    f: &MatrixQI,
    src: &SubquotientSpace,
    dst: &SubquotientSpace,
) -> Result<InducedMap, LinalgError> {
    if f.ncols() != src.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: src.ambient_dim, found: f.ncols() });
    }
    if f.nrows() != dst.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: dst.ambient_dim, found: f.nrows() });
    }
    for (i, z) in src.cycles.iter().enumerate() {
        if !dst.is_cycle(&f.mul_vec(z)) {
            return Err(LinalgError::NotAChainMap { reason: format!("image of cycle #{i} is not a cycle") });
        }
    }
    for (i, b) in src.boundaries.iter().enumerate() {
        if !dst.is_boundary(&f.mul_vec(b)) {
            return Err(LinalgError::NotAChainMap {
                reason: format!("image of boundary #{i} is not a boundary"),
            });
        }
    }
    let images: Vec<Vector> = src
        .reps
        .iter()
        .map(|r| dst.class_coordinates(&f.mul_vec(r)).expect("cycles map to cycles"))
        .collect();
    let matrix = MatrixQI::from_columns(dst.dim(), &images);

    let kernel_coords = matrix.kernel_basis();
    let kernel = Echelon::from_vectors(src.ambient_dim, kernel_coords.iter().map(|c| src.lift(c)))
        .rows()
        .to_vec();

    let mut span = Echelon::from_vectors(dst.dim(), images);
    let rank = span.rank();
    let mut cokernel = Vec::new();
    for j in 0..dst.dim() {
        if span.insert(unit_vector(dst.dim(), j)) {
            cokernel.push(dst.reps[j].clone());
        }
    }
    Ok(InducedMap { matrix, rank, kernel, cokernel })
}
