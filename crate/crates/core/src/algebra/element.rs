use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{bits, Bidegree, Genus, Monomial, Var};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, QScalar};

/// A rational linear combination of monomials in the descendent algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    genus: Genus,
    terms: BTreeMap<Monomial, QScalar>,
}

impl Element {
    pub fn zero(g: Genus) -> Self {
        Element {
            genus: g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: Genus) -> Self {
        Self::constant(g, QScalar::one())
    }

    pub fn constant(g: Genus, c: QScalar) -> Self {
        Self::term(g, Monomial::ONE, c)
    }

    pub fn term(g: Genus, m: Monomial, c: QScalar) -> Self {
        let mut e = Self::zero(g);
        e.add_term(m, c);
        e
    }

    pub fn monomial(g: Genus, m: Monomial) -> Self {
        Self::term(g, m, QScalar::one())
    }

    pub fn var(g: Genus, v: Var) -> Result<Self> {
        Ok(Self::monomial(g, v.check(g)?.monomial()))
    }

    pub fn alpha(g: Genus) -> Self {
        Self::monomial(g, Var::Alpha.monomial())
    }

    pub fn beta(g: Genus) -> Self {
        Self::monomial(g, Var::Beta.monomial())
    }

    pub fn psi(g: Genus, i: u32) -> Result<Self> {
        Self::var(g, Var::Psi(i))
    }

    /// `gamma = -2 sum_{i<=g} psi_i psi_{i+g}`.
    pub fn gamma(g: Genus) -> Self {
        let n = g.get();
        let mut e = Self::zero(g);
        for i in 0..n {
            e.add_term(Monomial::new(0, 0, (1 << i) | (1 << (i + n))), q(-2));
        }
        e
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_genus(&self, o: &Element) -> Result<()> {
        if self.genus == o.genus {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "elements of genus {} and {} cannot be combined",
                self.genus, o.genus
            )))
        }
    }

    pub fn checked_add(&self, o: &Element) -> Result<Element> {
        self.same_genus(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Element) -> Result<Element> {
        self.same_genus(o)?;
        let mut r = Element::zero(self.genus);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((m, neg)) = m1.times(*m2) {
                    let c = c1 * c2;
                    r.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &QScalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.genus);
        }
        Element {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut r = Element::one(self.genus);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// The common bidegree of all terms; `None` for zero or inhomogeneous elements.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| m.bidegree());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Highest Chern degree among the terms.
    pub fn max_chern(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.bidegree().chern).max()
    }

    pub fn component(&self, bd: Bidegree) -> Element {
        self.filter(|m| m.bidegree() == bd)
    }

    pub fn chern_component(&self, chern: u32) -> Element {
        self.filter(|m| m.bidegree().chern == chern)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Partial derivative; for `psi_i` this is the left super-derivation, which
    /// picks up `(-1)^(p-1)` when `psi_i` sits at position `p` of the sorted factors.
    pub fn derive(&self, v: Var) -> Result<Element> {
        let v = v.check(self.genus)?;
        let mut r = Element::zero(self.genus);
        for (m, c) in &self.terms {
            if let Some((dm, k, neg)) = derive_monomial(*m, v) {
                let c = c * q(k as i64);
                r.add_term(dm, if neg { -c } else { c });
            }
        }
        Ok(r)
    }

    /// Multiplies every term's coefficient by `f(monomial)`.
    pub fn map_coeffs(&self, f: impl Fn(&Monomial) -> QScalar) -> Element {
        let mut r = Element::zero(self.genus);
        for (m, c) in &self.terms {
            r.add_term(*m, c * f(m));
        }
        r
    }

    /// Coefficient vector against an ordered monomial basis. Terms outside the
    /// basis are reported as an error.
    pub fn coords(&self, basis: &[Monomial]) -> Result<Vec<QScalar>> {
        let mut v = vec![QScalar::zero(); basis.len()];
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (m, c) in &self.terms {
            let i = index.get(m).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "term {} lies outside the given basis",
                    show_monomial(m)
                ))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(g: Genus, basis: &[Monomial], v: &[QScalar]) -> Element {
        let mut e = Element::zero(g);
        for (m, c) in basis.iter().zip(v) {
            e.add_term(*m, c.clone());
        }
        e
    }
}

/// `(monomial, multiplicity, negative)` for the derivative of one monomial.
pub(crate) fn derive_monomial(m: Monomial, v: Var) -> Option<(Monomial, u32, bool)> {
    match v {
        Var::Alpha => (m.a > 0).then(|| (Monomial::new(m.a - 1, m.b, m.psi), m.a, false)),
        Var::Beta => (m.b > 0).then(|| (Monomial::new(m.a, m.b - 1, m.psi), m.b, false)),
        Var::Psi(i) => {
            let bit = 1u32 << (i - 1);
            if m.psi & bit == 0 {
                return None;
            }
            let before = (m.psi & (bit - 1)).count_ones();
            Some((Monomial::new(m.a, m.b, m.psi & !bit), 1, before % 2 == 1))
        }
    }
}

pub(crate) fn show_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    match m.a {
        0 => {}
        1 => parts.push("alpha".to_string()),
        a => parts.push(format!("alpha^{a}")),
    }
    match m.b {
        0 => {}
        1 => parts.push("beta".to_string()),
        b => parts.push(format!("beta^{b}")),
    }
    parts.extend(bits(m.psi).map(|b| format!("psi{}", b + 1)));
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for Element {
    /// Writes the element in the input grammar, terms in ascending
    /// (coh, descending chern, monomial) order so output is deterministic.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| {
            let bd = m.bidegree();
            (bd.coh, std::cmp::Reverse(bd.chern), **m)
        });
        for (i, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = show_monomial(m);
            if m == &Monomial::ONE {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{} {mono}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, o: &Element) -> Element {
        self.checked_add(o).expect("genus mismatch in addition")
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, o: &Element) -> Element {
        self.checked_add(&-o)
            .expect("genus mismatch in subtraction")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, o: &Element) -> Element {
        self.checked_mul(o)
            .expect("genus mismatch in multiplication")
    }
}
