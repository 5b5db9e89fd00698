//! Bigraded exterior algebra on `w1..wn` and their conjugates `cw1..cwn`.
//!
//! A [`Monomial`] is stored in canonical order: all unbarred generators, then all
//! barred ones, each block ascending. Index sets are bitmasks, bit `k-1` for index `k`.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::scalar::Qi;

/// Largest supported complex dimension.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("forms live in different dimensions ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
}

/// A degree-one generator: `w_k` (type (1,0)) or its conjugate `cw_k` (type (0,1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    Holo(usize),
    Anti(usize),
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::Holo(k) | Gen::Anti(k) => k,
        }
    }

    pub fn conj(self) -> Gen {
        match self {
            Gen::Holo(k) => Gen::Anti(k),
            Gen::Anti(k) => Gen::Holo(k),
        }
    }

    fn position(self, n: usize) -> usize {
        match self {
            Gen::Holo(k) => k - 1,
            Gen::Anti(k) => n + k - 1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Holo(k) => write!(f, "w{k}"),
            Gen::Anti(k) => write!(f, "cw{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub holo: u32,
    pub anti: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(holo: &[usize], anti: &[usize]) -> Self {
        let mask = |ix: &[usize]| ix.iter().fold(0u32, |m, &k| m | (1 << (k - 1)));
        Monomial { holo: mask(holo), anti: mask(anti) }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.count_ones() as usize, self.anti.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        let (s, t) = self.bidegree();
        s + t
    }

    pub fn holo_indices(&self) -> Vec<usize> {
        mask_indices(self.holo)
    }

    pub fn anti_indices(&self) -> Vec<usize> {
        mask_indices(self.anti)
    }

    /// Generators in canonical order.
    pub fn factors(&self) -> Vec<Gen> {
        self.holo_indices()
            .into_iter()
            .map(Gen::Holo)
            .chain(self.anti_indices().into_iter().map(Gen::Anti))
            .collect()
    }

    pub fn max_index(&self) -> usize {
        (32 - (self.holo | self.anti).leading_zeros()) as usize
    }
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Basis order: higher holomorphic degree first, then colexicographic in the
/// holomorphic and antiholomorphic index sets.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (Reverse(self.holo.count_ones()), self.holo, self.anti)
            .cmp(&(Reverse(other.holo.count_ones()), other.holo, other.anti))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = factors.iter().map(Gen::to_string).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Sorts a product of generators into canonical order.
///
/// Returns `None` when a generator repeats (the product vanishes), otherwise the
/// permutation sign and the monomial.
pub fn canonicalize_monomial(factors: &[Gen], n: usize) -> Result<Option<(i8, Monomial)>, ExteriorError> {
    let mut keys = Vec::with_capacity(factors.len());
    for &g in factors {
        let k = g.index();
        if k == 0 || k > n {
            return Err(ExteriorError::IndexOutOfRange { index: k, n });
        }
        keys.push(g.position(n));
    }
    let mut inversions = 0usize;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            match keys[i].cmp(&keys[j]) {
                Ordering::Equal => return Ok(None),
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    let mut m = Monomial::one();
    for &g in factors {
        match g {
            Gen::Holo(k) => m.holo |= 1 << (k - 1),
            Gen::Anti(k) => m.anti |= 1 << (k - 1),
        }
    }
    Ok(Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, m)))
}

/// Canonical basis of `A^{s,t}` in basis order.
pub fn basis(n: usize, s: usize, t: usize) -> Vec<Monomial> {
    let holo = subsets(n, s);
    let anti = subsets(n, t);
    let mut out = Vec::with_capacity(holo.len() * anti.len());
    for &h in &holo {
        for &a in &anti {
            out.push(Monomial { holo: h, anti: a });
        }
    }
    out
}

/// Size-`k` subsets of `{1..n}` as bitmasks in increasing (colex) order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A linear combination of monomials with Q(i) coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Monomial, Qi>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, m: Monomial, c: Qi) -> Self {
        let mut f = Form::zero(n);
        f.add_term(m, &c);
        f
    }

    pub fn constant(n: usize, c: Qi) -> Self {
        Form::monomial(n, Monomial::one(), c)
    }

    pub fn generator(n: usize, g: Gen) -> Result<Self, ExteriorError> {
        Self::product(n, &[g])
    }

    /// The wedge product of the given generators.
    pub fn product(n: usize, factors: &[Gen]) -> Result<Self, ExteriorError> {
        Ok(match canonicalize_monomial(factors, n)? {
            Some((sign, m)) => Form::monomial(n, m, Qi::from_int(sign as i64)),
            None => Form::zero(n),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Qi)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Qi {
        self.terms.get(m).cloned().unwrap_or_else(Qi::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Qi) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Qi::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&Qi::from_int(-1)))
    }

    pub fn scale(&self, c: &Qi) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Set of bidegrees carrying a nonzero coefficient.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.terms.keys().map(Monomial::bidegree).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The `(s,t)` component.
    pub fn component(&self, s: usize, t: usize) -> Form {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (s, t))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = Form::zero(self.n);
        for (m1, c1) in &self.terms {
            let f1 = m1.factors();
            for (m2, c2) in &other.terms {
                let mut fs = f1.clone();
                fs.extend(m2.factors());
                if let Some((sign, m)) = canonicalize_monomial(&fs, self.n)? {
                    let c = c1 * c2;
                    out.add_term(m, &if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugation: `conj(w^I ^ cw^J) = (-1)^{|I||J|} w^J ^ cw^I`, coefficients conjugated.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let (s, t) = m.bidegree();
            let swapped = Monomial { holo: m.anti, anti: m.holo };
            let c = c.conj();
            out.add_term(swapped, &if (s * t) % 2 == 1 { -c } else { c });
        }
        out
    }

    /// Coefficients against an ordered list of monomials; `None` if some term is
    /// not in the list.
    pub fn to_coordinates(&self, basis: &[Monomial]) -> Option<Vec<Qi>> {
        let mut v = vec![Qi::zero(); basis.len()];
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coordinates(n: usize, basis: &[Monomial], coords: &[Qi]) -> Form {
        let mut f = Form::zero(n);
        for (m, c) in basis.iter().zip(coords) {
            f.add_term(*m, c);
        }
        f
    }

    /// Scales so that the first term in basis order has coefficient one.
    pub fn normalized(&self) -> Form {
        match self.terms.values().next() {
            Some(lead) if !lead.is_one() => self.scale(&lead.inv()),
            _ => self.clone(),
        }
    }
}

/// Prints in the structure-equation syntax, e.g. `w1^cw1 - (1/2+i)*w2^cw3`.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_sign_negative();
            let c = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = format_coefficient(&c);
            match (coeff, m.degree()) {
                (None, 0) => write!(f, "1")?,
                (None, _) => write!(f, "{m}")?,
                (Some(c), 0) => write!(f, "{c}")?,
                (Some(c), _) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient text for a term whose sign has already been pulled out; `None` for one.
fn format_coefficient(c: &Qi) -> Option<String> {
    if c.is_one() {
        None
    } else if c.is_real() || *c == Qi::i() {
        Some(c.to_string())
    } else {
        Some(format!("({c})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{Anti, Holo};

    #[test]
    fn canonical_signs() {
        assert_eq!(canonicalize_monomial(&[Holo(2), Holo(1)], 3).unwrap(), Some((-1, Monomial::new(&[1, 2], &[]))));
        assert_eq!(canonicalize_monomial(&[Anti(1), Holo(1)], 3).unwrap(), Some((-1, Monomial::new(&[1], &[1]))));
        assert_eq!(canonicalize_monomial(&[Holo(1), Holo(1)], 3).unwrap(), None);
        assert_eq!(
            canonicalize_monomial(&[Holo(4)], 3),
            Err(ExteriorError::IndexOutOfRange { index: 4, n: 3 })
        );
    }

    #[test]
    fn wedge_examples() {
        let w = |g| Form::generator(3, g).unwrap();
        assert!(w(Holo(1)).wedge(&w(Holo(1))).unwrap().is_zero());
        assert_eq!(
            w(Holo(1)).wedge(&w(Anti(2))).unwrap(),
            Form::monomial(3, Monomial::new(&[1], &[2]), Qi::one())
        );
        let lhs = w(Holo(1)).add(&w(Holo(2)));
        let rhs = Form::product(3, &[Anti(1), Anti(2)]).unwrap();
        let expected = Form::monomial(3, Monomial::new(&[1], &[1, 2]), Qi::one())
            .add(&Form::monomial(3, Monomial::new(&[2], &[1, 2]), Qi::one()));
        assert_eq!(lhs.wedge(&rhs).unwrap(), expected);
        assert!(matches!(
            w(Holo(1)).wedge(&Form::zero(2)),
            Err(ExteriorError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn graded_commutativity() {
        let a = Form::product(3, &[Holo(1), Anti(2)]).unwrap();
        let b = Form::product(3, &[Holo(3)]).unwrap();
        let c = Form::product(3, &[Anti(3)]).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().scale(&Qi::from_int(-1)));
    }

    #[test]
    fn conjugation() {
        let f = Form::product(3, &[Holo(1), Holo(2)]).unwrap();
        assert_eq!(f.conjugate(), Form::product(3, &[Anti(1), Anti(2)]).unwrap());
        // i w1^cw1 is a real form
        let g = Form::monomial(3, Monomial::new(&[1], &[1]), Qi::i());
        assert_eq!(g.conjugate(), g);
        let h = Form::product(3, &[Holo(1), Holo(2), Anti(3)]).unwrap();
        assert_eq!(h.conjugate().conjugate(), h);
    }

    #[test]
    fn conjugation_matches_generator_swap() {
        // conj(a ^ b) = conj(a) ^ conj(b) on all pairs of generators
        let gens: Vec<Gen> = (1..=3).flat_map(|k| [Holo(k), Anti(k)]).collect();
        for &a in &gens {
            for &b in &gens {
                let lhs = Form::product(3, &[a, b]).unwrap().conjugate();
                let rhs = Form::product(3, &[a.conj(), b.conj()]).unwrap();
                assert_eq!(lhs, rhs, "{a} ^ {b}");
            }
        }
    }

    #[test]
    fn basis_sizes() {
        let n = 3;
        let mut total = 0;
        for s in 0..=n {
            for t in 0..=n {
                let b = basis(n, s, t);
                assert_eq!(b.len(), binomial(n, s) * binomial(n, t));
                assert!(b.windows(2).all(|w| w[0] < w[1]));
                total += b.len();
            }
        }
        assert_eq!(total, 64);
    }

    #[test]
    fn display_syntax() {
        let f = Form::product(3, &[Holo(2), Holo(3)])
            .unwrap()
            .sub(&Form::product(3, &[Holo(3), Anti(2)]).unwrap())
            .add(&Form::monomial(3, Monomial::new(&[1], &[1]), Qi::from_parts((1, 2), (1, 1))));
        assert_eq!(f.to_string(), "w2^w3 + (1/2+i)*w1^cw1 - w3^cw2");
        assert_eq!(Form::constant(2, Qi::one()).to_string(), "1");
        assert_eq!(Form::zero(2).to_string(), "0");
    }
}
