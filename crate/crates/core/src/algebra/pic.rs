use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

use super::element::Element;
use super::monomial::{bits, koszul_odd, Genus, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, QScalar};

/// A class in the exterior algebra on `eps_1 .. eps_2g`, keyed by index mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicClass {
    genus: Genus,
    terms: BTreeMap<u32, QScalar>,
}

impl PicClass {
    pub fn zero(g: Genus) -> Self {
        PicClass {
            genus: g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: Genus) -> Self {
        Self::basis(g, 0)
    }

    /// `eps_I` for the index set encoded by `mask`.
    pub fn basis(g: Genus, mask: u32) -> Self {
        let mut p = Self::zero(g);
        p.add_term(mask, QScalar::one());
        p
    }

    pub fn eps(g: Genus, i: u32) -> Result<Self> {
        if i == 0 || i > g.num_psi() {
            return Err(Error::Usage(format!(
                "eps{i} is not a generator at genus {g}"
            )));
        }
        Ok(Self::basis(g, 1 << (i - 1)))
    }

    /// `theta = 2 sum_{i<=g} eps_i eps_{i+g}`.
    pub fn theta(g: Genus) -> Self {
        let n = g.get();
        let mut p = Self::zero(g);
        for i in 0..n {
            p.add_term((1 << i) | (1 << (i + n)), q(2));
        }
        p
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &QScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mask: u32, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(QScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// The common exterior degree of all terms; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &QScalar) -> PicClass {
        let mut p = Self::zero(self.genus);
        for (m, x) in &self.terms {
            p.add_term(*m, x * c);
        }
        p
    }

    pub fn pow(&self, n: u32) -> PicClass {
        let mut r = Self::one(self.genus);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn coords(&self, basis: &[u32]) -> Vec<QScalar> {
        basis
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(QScalar::zero))
            .collect()
    }
}

/// Replaces each `eps_I` by `psi_I` with the same coefficient.
pub fn sigma_from_pic(a: &PicClass) -> Element {
    let mut e = Element::zero(a.genus);
    for (m, c) in &a.terms {
        e.add_term(Monomial::new(0, 0, *m), c.clone());
    }
    e
}

impl Add for &PicClass {
    type Output = PicClass;

    fn add(self, o: &PicClass) -> PicClass {
        assert_eq!(self.genus, o.genus, "genus mismatch");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl Mul for &PicClass {
    type Output = PicClass;

    fn mul(self, o: &PicClass) -> PicClass {
        assert_eq!(self.genus, o.genus, "genus mismatch");
        let mut r = PicClass::zero(self.genus);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let c = c1 * c2;
                r.add_term(m1 | m2, if koszul_odd(*m1, *m2) { -c } else { c });
            }
        }
        r
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let name: Vec<String> = bits(*m).map(|b| format!("eps{}", b + 1)).collect();
            match (name.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", fmt_q(&abs))?,
                (false, true) => write!(f, "{}", name.join(" "))?,
                (false, false) => write!(f, "{} {}", fmt_q(&abs), name.join(" "))?,
            }
        }
        Ok(())
    }
}
