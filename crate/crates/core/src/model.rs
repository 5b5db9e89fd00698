//! Lie models: structure equations `d w_k` on invariant (1,0)-forms, the induced
//! operators `d`, `del`, `delbar` on the whole exterior algebra, and their validation.

use std::fmt;

use thiserror::Error;

use crate::exterior::{basis, canonicalize_monomial, Form, Gen, Monomial, MAX_DIM};
use crate::linalg::{Echelon, MatrixQI, Vector};
use crate::scalar::Qi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("bidegree ({s},{t}) outside 0..={n}")]
    RangeError { s: usize, t: usize, n: usize },
    #[error("d w{k} has a (0,2) component; the complex structure would not be integrable")]
    Integrability { k: usize },
    #[error("d w{k} is not a 2-form")]
    Degree { k: usize },
    #[error("expected {expected} structure equations, found {found}")]
    EquationCount { expected: usize, found: usize },
    #[error("complex dimension {n} unsupported (1..={max})")]
    UnsupportedDimension { n: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModel {
    name: String,
    n: usize,
    structure: Vec<Form>,
    /// `d` of each generator, indexed by canonical position (holomorphic first).
    dgen: Vec<Form>,
}

impl LieModel {
    /// `structure[k-1]` is `d w_k`. Only (2,0) and (1,1) components are allowed;
    /// `d cw_k` is the conjugate.
    pub fn new(name: impl Into<String>, n: usize, structure: Vec<Form>) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_DIM {
            return Err(ModelError::UnsupportedDimension { n, max: MAX_DIM });
        }
        if structure.len() != n {
            return Err(ModelError::EquationCount { expected: n, found: structure.len() });
        }
        for (i, f) in structure.iter().enumerate() {
            let k = i + 1;
            for (s, t) in f.bidegrees() {
                if s + t != 2 || f.dim() != n {
                    return Err(ModelError::Degree { k });
                }
                if t == 2 {
                    return Err(ModelError::Integrability { k });
                }
            }
        }
        let mut dgen: Vec<Form> = structure.clone();
        dgen.extend(structure.iter().map(Form::conjugate));
        Ok(LieModel { name: name.into(), n, structure, dgen })
    }

    pub fn abelian(name: impl Into<String>, n: usize) -> Self {
        Self::new(name, n, vec![Form::zero(n); n]).expect("abelian model is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d w_k` for `k` in `1..=n`.
    pub fn structure(&self, k: usize) -> &Form {
        &self.structure[k - 1]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Form::is_zero)
    }

    pub fn d_generator(&self, g: Gen) -> &Form {
        match g {
            Gen::Holo(k) => &self.dgen[k - 1],
            Gen::Anti(k) => &self.dgen[self.n + k - 1],
        }
    }

    /// Graded Leibniz rule on a monomial of 1-form generators.
    pub fn d_monomial(&self, m: &Monomial) -> Form {
        let factors = m.factors();
        let mut out = Form::zero(self.n);
        for (r, &g) in factors.iter().enumerate() {
            let sign_r = if r % 2 == 0 { 1 } else { -1 };
            for (dm, c) in self.d_generator(g).terms() {
                let mut fs: Vec<Gen> = factors[..r].to_vec();
                fs.extend(dm.factors());
                fs.extend_from_slice(&factors[r + 1..]);
                if let Some((sign, mono)) = canonicalize_monomial(&fs, self.n).expect("indices in range") {
                    let s = Qi::from_int((sign as i64) * sign_r);
                    out.add_term(mono, &(c * &s));
                }
            }
        }
        out
    }

    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in f.terms() {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        out
    }

    /// The part of `d` raising the holomorphic degree.
    pub fn del(&self, f: &Form) -> Form {
        self.split_d(f, true)
    }

    /// The part of `d` raising the antiholomorphic degree.
    pub fn delbar(&self, f: &Form) -> Form {
        self.split_d(f, false)
    }

    fn split_d(&self, f: &Form, holomorphic: bool) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in f.terms() {
            let (s, t) = m.bidegree();
            let target = if holomorphic { (s + 1, t) } else { (s, t + 1) };
            out = out.add(&self.d_monomial(m).component(target.0, target.1).scale(c));
        }
        out
    }

    /// Matrix of a linear operator between spans of monomials.
    pub fn operator_matrix(&self, src: &[Monomial], dst: &[Monomial], op: impl Fn(&Form) -> Form) -> MatrixQI {
        let mut m = MatrixQI::zeros(dst.len(), src.len());
        let index: std::collections::HashMap<Monomial, usize> =
            dst.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        for (j, mono) in src.iter().enumerate() {
            let image = op(&Form::monomial(self.n, *mono, Qi::from_int(1)));
            for (tm, c) in image.terms() {
                if let Some(&i) = index.get(tm) {
                    m.set(i, j, c.clone());
                }
            }
        }
        m
    }

    /// Matrices of `del: A^{s,t} -> A^{s+1,t}` and `delbar: A^{s,t} -> A^{s,t+1}`.
    pub fn differential_matrices(&self, s: usize, t: usize) -> Result<(MatrixQI, MatrixQI), ModelError> {
        if s > self.n || t > self.n {
            return Err(ModelError::RangeError { s, t, n: self.n });
        }
        let src = basis(self.n, s, t);
        let del = self.operator_matrix(&src, &basis(self.n, s + 1, t), |f| self.del(f));
        let delbar = self.operator_matrix(&src, &basis(self.n, s, t + 1), |f| self.delbar(f));
        Ok((del, delbar))
    }

    /// Checks `del^2 = 0`, `delbar^2 = 0` and `del delbar + delbar del = 0` on every
    /// basis monomial, and classifies the underlying Lie algebra.
    pub fn validate(&self) -> ValidationReport {
        let mut entries = Vec::new();
        for s in 0..=self.n {
            for t in 0..=self.n {
                let mut first: [Option<(Monomial, Form)>; 3] = [None, None, None];
                for m in basis(self.n, s, t) {
                    let f = Form::monomial(self.n, m, Qi::from_int(1));
                    let del = self.del(&f);
                    let delbar = self.delbar(&f);
                    let values = [
                        self.del(&del),
                        self.delbar(&delbar),
                        self.del(&delbar).add(&self.delbar(&del)),
                    ];
                    for (slot, v) in first.iter_mut().zip(values) {
                        if slot.is_none() && !v.is_zero() {
                            *slot = Some((m, v));
                        }
                    }
                }
                for (identity, offending) in Identity::ALL.into_iter().zip(first) {
                    entries.push(ValidationEntry { identity, bidegree: (s, t), offending });
                }
            }
        }
        ValidationReport {
            entries,
            abelian: self.is_abelian(),
            nilpotent: self.is_nilpotent(),
        }
    }

    /// Nilpotency of the real Lie algebra via the ascending series of the dual:
    /// `V_0 = 0`, `V_{j+1} = { a : d a in V_j ^ V_j }`; nilpotent iff it exhausts all 1-forms.
    pub fn is_nilpotent(&self) -> bool {
        let gens: Vec<Gen> = (1..=self.n).map(Gen::Holo).chain((1..=self.n).map(Gen::Anti)).collect();
        let two_forms: Vec<Monomial> = (0..=2).rev().flat_map(|s| basis(self.n, s, 2 - s)).collect();
        let one_forms: Vec<Monomial> = gens.iter().map(|&g| canonicalize_monomial(&[g], self.n).unwrap().unwrap().1).collect();
        let d = self.operator_matrix(&one_forms, &two_forms, |f| self.d(f));
        let width = gens.len();

        let mut current: Vec<Vector> = Vec::new();
        loop {
            // V_j ^ V_j inside the 2-forms
            let mut wedges = Vec::new();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let fa = Form::from_coordinates(self.n, &one_forms, a);
                    let fb = Form::from_coordinates(self.n, &one_forms, b);
                    let w = fa.wedge(&fb).expect("same dimension");
                    wedges.push(w.to_coordinates(&two_forms).expect("2-form"));
                }
            }
            let w = Echelon::from_vectors(two_forms.len(), wedges);
            let wmat = MatrixQI::from_columns(two_forms.len(), w.rows());
            let system = d.hstack(&wmat.scale(&Qi::from_int(-1)));
            let next = Echelon::from_vectors(
                width,
                system.kernel_basis().into_iter().map(|v| v[..width].to_vec()),
            );
            if next.rank() == current.len() {
                return next.rank() == width;
            }
            current = next.rows().to_vec();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    DelSquared,
    DelbarSquared,
    Anticommutator,
}

impl Identity {
    pub const ALL: [Identity; 3] = [Identity::DelSquared, Identity::DelbarSquared, Identity::Anticommutator];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DelSquared => "del^2 = 0",
            Identity::DelbarSquared => "delbar^2 = 0",
            Identity::Anticommutator => "del delbar + delbar del = 0",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationEntry {
    pub identity: Identity,
    pub bidegree: (usize, usize),
    /// First basis monomial (in basis order) on which the identity fails, with the nonzero value.
    pub offending: Option<(Monomial, Form)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
    pub abelian: bool,
    pub nilpotent: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.offending.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries.iter().filter(|e| e.offending.is_some())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.nilpotent {
            w.push("Lie algebra is not nilpotent; invariant cohomology may differ from the manifold's".into());
        }
        w
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.failures() {
            let (m, v) = e.offending.as_ref().unwrap();
            writeln!(f, "d-squared: {} fails in bidegree {:?} on {m}: {v}", e.identity.name(), e.bidegree)?;
        }
        if self.passed() {
            writeln!(f, "d-squared: all identities hold")?;
        }
        writeln!(f, "abelian: {}", self.abelian)?;
        write!(f, "nilpotent: {}", self.nilpotent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{Anti, Holo};

    fn prod(n: usize, gs: &[Gen]) -> Form {
        Form::product(n, gs).unwrap()
    }

    fn iwasawa() -> LieModel {
        let minus_w12 = prod(3, &[Holo(1), Holo(2)]).scale(&Qi::from_int(-1));
        LieModel::new("iwasawa", 3, vec![Form::zero(3), Form::zero(3), minus_w12]).unwrap()
    }

    #[test]
    fn iwasawa_differentials() {
        let m = iwasawa();
        let w3 = prod(3, &[Holo(3)]);
        assert_eq!(m.del(&w3), prod(3, &[Holo(1), Holo(2)]).scale(&Qi::from_int(-1)));
        assert!(m.delbar(&w3).is_zero());
        assert_eq!(m.d_generator(Anti(3)), &prod(3, &[Anti(1), Anti(2)]).scale(&Qi::from_int(-1)));
        let w33 = prod(3, &[Holo(3), Anti(3)]);
        let expected = prod(3, &[Holo(1), Holo(2), Anti(3)])
            .scale(&Qi::from_int(-1))
            .add(&prod(3, &[Holo(3), Anti(1), Anti(2)]));
        assert_eq!(m.d(&w33), expected);
    }

    #[test]
    fn top_holomorphic_degree_has_zero_del() {
        let m = iwasawa();
        for t in 0..=3 {
            let (del, _) = m.differential_matrices(3, t).unwrap();
            assert!(del.is_zero());
            assert_eq!(del.nrows(), 0);
        }
        assert!(matches!(m.differential_matrices(4, 0), Err(ModelError::RangeError { .. })));
    }

    #[test]
    fn conjugation_intertwines_del_and_delbar() {
        let m = LieModel::new(
            "h6",
            3,
            vec![
                Form::zero(3),
                Form::zero(3),
                prod(3, &[Holo(1), Holo(2)]).add(&prod(3, &[Holo(1), Anti(1)])).add(&prod(3, &[Holo(1), Anti(2)])),
            ],
        )
        .unwrap();
        for s in 0..=3 {
            for t in 0..=3 {
                for mono in basis(3, s, t) {
                    let f = Form::monomial(3, mono, Qi::i());
                    assert_eq!(m.del(&f).conjugate(), m.delbar(&f.conjugate()));
                }
            }
        }
        assert!(m.validate().passed());
        assert!(m.validate().nilpotent);
    }

    #[test]
    fn integrability_is_enforced() {
        let bad = vec![Form::zero(3), Form::zero(3), prod(3, &[Anti(1), Anti(2)])];
        assert_eq!(LieModel::new("bad", 3, bad), Err(ModelError::Integrability { k: 3 }));
    }

    #[test]
    fn junk_model_reports_d_squared() {
        let m = LieModel::new(
            "junk",
            3,
            vec![prod(3, &[Holo(1), Holo(3)]), prod(3, &[Holo(1), Holo(2)]), Form::zero(3)],
        )
        .unwrap();
        let r = m.validate();
        assert!(!r.passed());
        let e = r.failures().find(|e| e.bidegree == (1, 0)).unwrap();
        assert_eq!(e.identity, Identity::DelSquared);
        assert!(r.failures().any(|e| e.bidegree == (0, 1) && e.identity == Identity::DelbarSquared));
        let (mono, value) = e.offending.as_ref().unwrap();
        assert_eq!(*mono, Monomial::new(&[2], &[]));
        // d d w2 = d(w1^w2) = w1^w3^w2 = -w1^w2^w3
        assert_eq!(*value, prod(3, &[Holo(1), Holo(2), Holo(3)]).scale(&Qi::from_int(-1)));
    }

    #[test]
    fn abelian_passes() {
        let r = LieModel::abelian("torus3", 3).validate();
        assert!(r.passed() && r.abelian && r.nilpotent);
    }

    #[test]
    fn iwasawa_is_nilpotent_and_valid() {
        let r = iwasawa().validate();
        assert!(r.passed());
        assert!(r.nilpotent && !r.abelian);
    }

    #[test]
    fn non_nilpotent_detected() {
        // d w1 = w1^cw1 is a solvable (non-nilpotent) structure in complex dimension 1:
        // [e, ebar] proportional to e - ebar, never terminating.
        let m = LieModel::new("solv", 1, vec![prod(1, &[Holo(1), Anti(1)])]).unwrap();
        assert!(!m.is_nilpotent());
    }
}
