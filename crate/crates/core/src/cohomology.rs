//! Cohomology spaces with representatives: de Rham, Dolbeault, Bott–Chern, Aeppli,
//! Bott–Chern hypercohomology and the truncated hypercohomology `H(C(p))`, plus the
//! natural maps between them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::complex::{build_de_rham, build_dolbeault_row, build_l, build_truncated_total, chain_map_c, ChainComplex};
use crate::exterior::{basis, Form, Monomial};
use crate::linalg::{induced_map, subquotient, MatrixQI, SubquotientSpace, Vector};
use crate::model::LieModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
    /// `H^k_BC(C(p,q))`, indices `(k, p, q)`.
    HyperBottChern,
    /// `H^k(C(p))`, indices `(k, p)`.
    HyperTruncated,
    /// Cohomology of an arbitrary complex.
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub kind: Kind,
    pub indices: Vec<i64>,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.indices;
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match (self.kind, i.as_slice()) {
            (Kind::DeRham, [k]) => write!(f, "H^{k}_dR"),
            (Kind::Dolbeault, [p, q]) => write!(f, "H^{{{p},{q}}}_dbar"),
            (Kind::BottChern, [p, q]) => write!(f, "H^{{{p},{q}}}_BC"),
            (Kind::Aeppli, [p, q]) => write!(f, "H^{{{p},{q}}}_A"),
            (Kind::HyperBottChern, [k, p, q]) => write!(f, "H^{k}_BC(C({p},{q}))"),
            (Kind::HyperTruncated, [k, p]) => write!(f, "H^{k}(C({p}))"),
            (_, v) => write!(f, "H[{}]", join(v)),
        }
    }
}

/// A subquotient of a span of monomials, with representative forms for a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySpace {
    pub label: Label,
    n: usize,
    /// Labels of the ambient coordinates.
    pub ambient: Vec<Monomial>,
    pub presentation: SubquotientSpace,
    pub generators: Vec<Form>,
}

impl CohomologySpace {
    fn new(label: Label, n: usize, ambient: Vec<Monomial>, z: &[Vector], b: &[Vector]) -> Self {
        let presentation = subquotient(ambient.len(), z, b).expect("boundaries are cycles");
        let generators = presentation.reps.iter().map(|r| Form::from_coordinates(n, &ambient, r)).collect();
        CohomologySpace { label, n, ambient, presentation, generators }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn model_dim(&self) -> usize {
        self.n
    }

    fn coordinates(&self, f: &Form) -> Option<Vector> {
        f.to_coordinates(&self.ambient)
    }

    pub fn is_cycle(&self, f: &Form) -> bool {
        self.coordinates(f).is_some_and(|v| self.presentation.is_cycle(&v))
    }

    /// Coordinates of the class of `f` in the generator basis; `None` if `f` is not
    /// a cycle of the presenting complex.
    pub fn class_of(&self, f: &Form) -> Option<Vector> {
        self.presentation.class_coordinates(&self.coordinates(f)?)
    }

    /// True when `f` is a cycle whose class is nonzero.
    pub fn has_nonzero_class(&self, f: &Form) -> bool {
        self.class_of(f).is_some_and(|c| c.iter().any(|x| !num::Zero::is_zero(x)))
    }

    /// Dimension of the span of the classes of `forms`; `None` if one is not a cycle.
    pub fn class_rank(&self, forms: &[Form]) -> Option<usize> {
        let vs = forms.iter().map(|f| self.coordinates(f)).collect::<Option<Vec<_>>>()?;
        self.presentation.class_rank(&vs)
    }

    /// The classes of `forms` form a basis of this space.
    pub fn spanned_by(&self, forms: &[Form]) -> bool {
        forms.len() == self.dim() && self.class_rank(forms) == Some(self.dim())
    }
}

/// An induced map of cohomology spaces with kernel and cokernel representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSummary {
    pub src: Arc<CohomologySpace>,
    pub dst: Arc<CohomologySpace>,
    pub matrix: MatrixQI,
    pub rank: usize,
    pub ker_generators: Vec<Form>,
    pub coker_generators: Vec<Form>,
}

impl MapSummary {
    fn new(f: &MatrixQI, src: Arc<CohomologySpace>, dst: Arc<CohomologySpace>) -> Self {
        let induced = induced_map(f, &src.presentation, &dst.presentation).expect("chain map");
        let ker_generators = induced.kernel.iter().map(|v| Form::from_coordinates(src.n, &src.ambient, v)).collect();
        let coker_generators =
            induced.cokernel.iter().map(|v| Form::from_coordinates(dst.n, &dst.ambient, v)).collect();
        MapSummary { matrix: induced.matrix, rank: induced.rank, src, dst, ker_generators, coker_generators }
    }

    pub fn ker_dim(&self) -> usize {
        self.ker_generators.len()
    }

    pub fn coker_dim(&self) -> usize {
        self.coker_generators.len()
    }

    /// The kernel is spanned by the classes of `forms` (each in the source space).
    pub fn kernel_spanned_by(&self, forms: &[Form]) -> bool {
        if forms.len() != self.ker_dim() || self.src.class_rank(forms) != Some(forms.len()) {
            return false;
        }
        forms.iter().all(|f| {
            let c = self.src.class_of(f).expect("checked cycle");
            self.matrix.mul_vec(&c).iter().all(num::Zero::is_zero)
        })
    }

    /// The classes of `forms` complete the image to a basis of the target.
    pub fn cokernel_spanned_by(&self, forms: &[Form]) -> bool {
        if forms.len() != self.coker_dim() {
            return false;
        }
        let Some(coords) = forms.iter().map(|f| self.dst.class_of(f)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let mut all = self.matrix.columns();
        all.extend(coords);
        crate::linalg::Echelon::from_vectors(self.dst.dim(), all).rank() == self.dst.dim()
    }
}

/// Degree-`d` cohomology of a complex.
pub fn cohomology(c: &ChainComplex, d: i64) -> CohomologySpace {
    cohomology_labeled(c, d, Label { kind: Kind::Complex, indices: vec![d] })
}

fn cohomology_labeled(c: &ChainComplex, d: i64, label: Label) -> CohomologySpace {
    let z = c.diff(d).kernel_basis();
    let b = c.diff(d - 1).columns();
    CohomologySpace::new(label, c.model_dim(), c.space(d).to_vec(), &z, &b)
}

fn stacked(top: &MatrixQI, bottom: &MatrixQI) -> MatrixQI {
    top.vstack(bottom)
}

/// Cohomology computations for one model, with an internally synchronized cache.
pub struct Engine {
    model: LieModel,
    cache: Mutex<HashMap<Label, Arc<CohomologySpace>>>,
}

impl Engine {
    pub fn new(model: LieModel) -> Self {
        Engine { model, cache: Mutex::new(HashMap::new()) }
    }

    pub fn model(&self) -> &LieModel {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    fn cached(&self, label: Label, compute: impl FnOnce() -> CohomologySpace) -> Arc<CohomologySpace> {
        if let Some(hit) = self.cache.lock().unwrap().get(&label) {
            return hit.clone();
        }
        let value = Arc::new(compute());
        self.cache.lock().unwrap().entry(label).or_insert(value).clone()
    }

    fn in_range(&self, p: i64, q: i64) -> bool {
        (0..=self.dim() as i64).contains(&p) && (0..=self.dim() as i64).contains(&q)
    }

    fn zero_space(&self, label: Label) -> CohomologySpace {
        CohomologySpace::new(label, self.dim(), Vec::new(), &[], &[])
    }

    pub fn de_rham(&self, k: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::DeRham, indices: vec![k] };
        self.cached(label.clone(), || cohomology_labeled(&build_de_rham(&self.model), k, label))
    }

    pub fn betti(&self, k: i64) -> usize {
        self.de_rham(k).dim()
    }

    pub fn dolbeault(&self, p: i64, q: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::Dolbeault, indices: vec![p, q] };
        self.cached(label.clone(), || {
            if !self.in_range(p, q) {
                return self.zero_space(label);
            }
            cohomology_labeled(&build_dolbeault_row(&self.model, p as usize).unwrap(), q, label)
        })
    }

    /// `(ker del ∩ ker delbar) / im del delbar` on `A^{p,q}`.
    pub fn bott_chern(&self, p: i64, q: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::BottChern, indices: vec![p, q] };
        self.cached(label.clone(), || {
            if !self.in_range(p, q) {
                return self.zero_space(label);
            }
            let n = self.dim();
            let (pu, qu) = (p as usize, q as usize);
            let ambient = basis(n, pu, qu);
            let m = &self.model;
            let del = m.operator_matrix(&ambient, &basis(n, pu + 1, qu), |f| m.del(f));
            let delbar = m.operator_matrix(&ambient, &basis(n, pu, qu + 1), |f| m.delbar(f));
            let z = stacked(&del, &delbar).kernel_basis();
            let b = if p >= 1 && q >= 1 {
                let src = basis(n, pu - 1, qu - 1);
                m.operator_matrix(&src, &ambient, |f| m.del(&m.delbar(f))).columns()
            } else {
                Vec::new()
            };
            CohomologySpace::new(label, n, ambient, &z, &b)
        })
    }

    /// `ker del delbar / (im del + im delbar)` on `A^{p,q}`.
    pub fn aeppli(&self, p: i64, q: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::Aeppli, indices: vec![p, q] };
        self.cached(label.clone(), || {
            if !self.in_range(p, q) {
                return self.zero_space(label);
            }
            let n = self.dim();
            let (pu, qu) = (p as usize, q as usize);
            let ambient = basis(n, pu, qu);
            let m = &self.model;
            let z = m
                .operator_matrix(&ambient, &basis(n, pu + 1, qu + 1), |f| m.del(&m.delbar(f)))
                .kernel_basis();
            let mut b = Vec::new();
            if p >= 1 {
                b.extend(m.operator_matrix(&basis(n, pu - 1, qu), &ambient, |f| m.del(f)).columns());
            }
            if q >= 1 {
                b.extend(m.operator_matrix(&basis(n, pu, qu - 1), &ambient, |f| m.delbar(f)).columns());
            }
            CohomologySpace::new(label, n, ambient, &z, &b)
        })
    }

    /// `H^k_BC(C(p,q)) = H^{k-1}(L(p,q))`.
    pub fn hyper_bc(&self, k: i64, p: i64, q: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::HyperBottChern, indices: vec![k, p, q] };
        self.cached(label.clone(), || match build_l(&self.model, p, q) {
            Ok(l) => cohomology_labeled(&l, k - 1, label),
            Err(_) => self.zero_space(label),
        })
    }

    /// `H^k(C(p))`: degree-`k` cohomology of the columns `s >= p` of the double complex.
    pub fn hyper_truncated(&self, k: i64, p: i64) -> Arc<CohomologySpace> {
        let label = Label { kind: Kind::HyperTruncated, indices: vec![k, p] };
        self.cached(label.clone(), || {
            let n = self.dim() as i64;
            if p <= 0 {
                return cohomology_labeled(&build_de_rham(&self.model), k, label);
            }
            if p > n {
                return self.zero_space(label);
            }
            cohomology_labeled(&build_truncated_total(&self.model, p as usize, n as usize).unwrap(), k, label)
        })
    }

    /// The natural map from Bott–Chern to Dolbeault cohomology in bidegree `(p,q)`.
    pub fn map_i(&self, p: i64, q: i64) -> MapSummary {
        let src = self.bott_chern(p, q);
        let dst = self.dolbeault(p, q);
        MapSummary::new(&MatrixQI::identity(src.ambient.len()), src, dst)
    }

    /// The natural map `H^k_BC(C(1,1)) -> H^k(C(1))`.
    pub fn map_c(&self, k: i64) -> MapSummary {
        let src = self.hyper_bc(k, 1, 1);
        let dst = self.hyper_truncated(k, 1);
        let f = chain_map_c(&self.model).map(k - 1);
        MapSummary::new(&f, src, dst)
    }
}
