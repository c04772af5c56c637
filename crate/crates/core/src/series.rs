//! Truncated power series in `t` over `Q[alpha, beta, gamma] / (gamma^(g+1))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

use crate::algebra::{Bidegree, Element, Genus};
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, fmt_q, q, qfrac, qint, QScalar};

/// A polynomial in `alpha, beta, gamma` with `gamma^(g+1) = 0`, keyed by the
/// exponent triple `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPoly {
    genus: Genus,
    terms: BTreeMap<(u32, u32, u32), QScalar>,
}

impl InvariantPoly {
    pub fn zero(g: Genus) -> Self {
        InvariantPoly {
            genus: g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: Genus) -> Self {
        Self::term(g, (0, 0, 0), QScalar::one())
    }

    pub fn term(g: Genus, exps: (u32, u32, u32), c: QScalar) -> Self {
        let mut p = Self::zero(g);
        p.add_term(exps, c);
        p
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: (u32, u32, u32)) -> QScalar {
        self.terms.get(&exps).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, exps: (u32, u32, u32), c: QScalar) {
        if c.is_zero() || exps.2 > self.genus.get() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(QScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut p = Self::zero(self.genus);
        for (e, x) in &self.terms {
            p.add_term(*e, x * c);
        }
        p
    }

    /// Multiplies by `alpha^a beta^b gamma^c`.
    pub fn shift(&self, a: u32, b: u32, c: u32) -> Self {
        let mut p = Self::zero(self.genus);
        for ((x, y, z), v) in &self.terms {
            p.add_term((x + a, y + b, z + c), v.clone());
        }
        p
    }

    pub fn bidegree_of(exps: (u32, u32, u32)) -> Bidegree {
        let (a, b, c) = exps;
        Bidegree::new(2 * a + 4 * b + 6 * c, 2 * a + 2 * b + 4 * c)
    }

    /// Cohomological degree shared by all terms, if homogeneous.
    pub fn coh_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| Self::bidegree_of(*e).coh);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Terms of Chern degree exactly `chern`.
    pub fn chern_component(&self, chern: u32) -> Self {
        InvariantPoly {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::bidegree_of(**e).chern == chern)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Expands `gamma` into `-2 sum psi_i psi_{i+g}`.
    pub fn to_element(&self) -> Element {
        let g = self.genus;
        let gamma = Element::gamma(g);
        let max_c = self.terms.keys().map(|e| e.2).max().unwrap_or(0);
        let mut gpow = vec![Element::one(g)];
        for c in 1..=max_c as usize {
            let next = &gpow[c - 1] * &gamma;
            gpow.push(next);
        }
        let mut out = Element::zero(g);
        for ((a, b, c), v) in &self.terms {
            for (m, x) in gpow[*c as usize].terms() {
                let mut m = *m;
                m.a += a;
                m.b += b;
                out.add_term(m, x * v);
            }
        }
        out
    }
}

impl Add for &InvariantPoly {
    type Output = InvariantPoly;

    fn add(self, o: &InvariantPoly) -> InvariantPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Mul for &InvariantPoly {
    type Output = InvariantPoly;

    fn mul(self, o: &InvariantPoly) -> InvariantPoly {
        let mut p = InvariantPoly::zero(self.genus);
        for ((a1, b1, c1), x) in &self.terms {
            for ((a2, b2, c2), y) in &o.terms {
                p.add_term((a1 + a2, b1 + b2, c1 + c2), x * y);
            }
        }
        p
    }
}

impl fmt::Display for InvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b, c), v)) in self.terms.iter().rev().enumerate() {
            let neg = v.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            for (name, e) in [("alpha", a), ("beta", b), ("gamma", c)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let abs = v.abs();
            match (parts.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", fmt_q(&abs))?,
                (false, true) => write!(f, "{}", parts.join(" "))?,
                (false, false) => write!(f, "{} {}", fmt_q(&abs), parts.join(" "))?,
            }
        }
        Ok(())
    }
}

/// A power series `sum_{n <= order} coeffs[n] t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    genus: Genus,
    coeffs: Vec<InvariantPoly>,
}

impl TSeries {
    pub fn zero(g: Genus, order: usize) -> Self {
        TSeries {
            genus: g,
            coeffs: vec![InvariantPoly::zero(g); order + 1],
        }
    }

    pub fn one(g: Genus, order: usize) -> Self {
        let mut s = Self::zero(g, order);
        s.coeffs[0] = InvariantPoly::one(g);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[InvariantPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &InvariantPoly {
        &self.coeffs[n]
    }

    pub fn set(&mut self, n: usize, p: InvariantPoly) {
        if n < self.coeffs.len() {
            self.coeffs[n] = p;
        }
    }

    pub fn add(&self, o: &TSeries) -> TSeries {
        let n = self.order().min(o.order());
        TSeries {
            genus: self.genus,
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> TSeries {
        TSeries {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, o: &TSeries) -> TSeries {
        let n = self.order().min(o.order());
        let mut out = TSeries::zero(self.genus, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        out
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<TSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Usage(
                "exp needs a series without constant term".into(),
            ));
        }
        let n = self.order();
        let mut e = TSeries::one(self.genus, n);
        // n e_n = sum_k k x_k e_{n-k}
        for m in 1..=n {
            let mut acc = InvariantPoly::zero(self.genus);
            for k in 1..=m {
                if self.coeffs[k].is_zero() || e.coeffs[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &e.coeffs[m - k]).scale(&q(k as i64));
            }
            e.coeffs[m] = acc.scale(&qfrac(1, m as i64));
        }
        Ok(e)
    }

    /// `log(self)`; the constant term must be 1.
    pub fn log(&self) -> Result<TSeries> {
        if self.coeffs[0] != InvariantPoly::one(self.genus) {
            return Err(Error::Usage(
                "log needs a series with constant term 1".into(),
            ));
        }
        let n = self.order();
        let mut y = TSeries::zero(self.genus, n);
        // y_m = f_m - (1/m) sum_{k<m} k y_k f_{m-k}
        for m in 1..=n {
            let mut acc = InvariantPoly::zero(self.genus);
            for k in 1..m {
                if y.coeffs[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&y.coeffs[k] * &self.coeffs[m - k]).scale(&q(k as i64));
            }
            y.coeffs[m] = &self.coeffs[m] + &acc.scale(&qfrac(-1, m as i64));
        }
        Ok(y)
    }
}

/// Coefficients `c_{d,0} .. c_{d,n}` of the Mumford series
/// `(1 - beta t^2)^(d - 3/2) exp(alpha sum_{k>=0} beta^k t^(2k+1)/(2k+1)
///   + 2 gamma sum_{k>=1} beta^(k-1) t^(2k+1)/(2k+1))`.
pub fn phi_coefficients(d: i64, g: Genus, n: usize) -> Vec<InvariantPoly> {
    let mut expo = TSeries::zero(g, n);
    let power = qfrac(2 * d - 3, 2);
    for k in 1..=n / 2 {
        // (d - 3/2) log(1 - beta t^2) = -(d - 3/2) sum beta^k t^{2k} / k
        let c = -&power * qfrac(1, k as i64);
        expo.coeffs[2 * k].add_term((0, k as u32, 0), c);
    }
    for k in 0..=(n.saturating_sub(1)) / 2 {
        let deg = 2 * k + 1;
        if deg > n {
            break;
        }
        let c = qfrac(1, deg as i64);
        expo.coeffs[deg].add_term((1, k as u32, 0), c.clone());
        if k >= 1 {
            expo.coeffs[deg].add_term((0, k as u32 - 1, 1), c * q(2));
        }
    }
    expo.exp().expect("exponent has no constant term").coeffs
}

/// `xi_r = c_{1,r}`.
pub fn xi(r: usize, g: Genus) -> InvariantPoly {
    phi_coefficients(1, g, r).swap_remove(r)
}

/// `xi_{r,s} = sum_l C(r+s-l, r) beta^(s-l) (2 gamma)^l / l! xi_{r-l}`.
pub fn xi_rs(r: usize, s: usize, g: Genus) -> InvariantPoly {
    let xis = phi_coefficients(1, g, r);
    let mut out = InvariantPoly::zero(g);
    for l in 0..=r.min(s) {
        let c = qint(binomial((r + s - l) as i64, r as i64)) * crate::scalar::pow2(l as i64)
            / qint(factorial(l as u64));
        out = &out + &xis[r - l].shift(0, (s - l) as u32, l as u32).scale(&c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn low_phi_coefficients() {
        for d in -1..=3 {
            let c = phi_coefficients(d, g(2), 2);
            assert_eq!(c[0], InvariantPoly::one(g(2)));
            assert_eq!(c[1], InvariantPoly::term(g(2), (1, 0, 0), q(1)));
        }
        let c12 = &phi_coefficients(1, g(2), 2)[2];
        assert_eq!(
            c12.to_element(),
            parse_element(g(2), "1/2 alpha^2 + 1/2 beta").unwrap()
        );
    }

    #[test]
    fn xi_values() {
        assert_eq!(xi(0, g(3)), InvariantPoly::one(g(3)));
        assert_eq!(xi(1, g(3)).to_string(), "alpha");
        assert_eq!(xi(2, g(3)).to_string(), "1/2 alpha^2 + 1/2 beta");
        assert_eq!(xi_rs(0, 0, g(2)), InvariantPoly::one(g(2)));
        assert_eq!(xi_rs(0, 1, g(2)).to_string(), "beta");
        assert_eq!(
            xi_rs(1, 1, g(2)).to_element(),
            parse_element(g(2), "2 alpha beta + 2 gamma").unwrap()
        );
    }

    #[test]
    fn xi_rs_degrees() {
        for r in 0..4 {
            for s in 0..3 {
                let x = xi_rs(r, s, g(3));
                assert_eq!(x.coh_degree(), Some(2 * r as u32 + 4 * s as u32));
                let e = x.to_element();
                assert!(e.max_chern().unwrap() <= 2 * (r + s) as u32);
            }
        }
    }

    #[test]
    fn phi_degrees_and_top_chern() {
        for d in 0..=2 {
            let cs = phi_coefficients(d, g(3), 10);
            for (n, c) in cs.iter().enumerate() {
                let n32 = n as u32;
                assert_eq!(c.coh_degree(), Some(2 * n32));
                let top = c.chern_component(2 * n32);
                let expect =
                    InvariantPoly::term(g(3), (n32, 0, 0), qint(factorial(n as u64)).recip());
                assert_eq!(top, expect);
            }
        }
    }

    #[test]
    fn gamma_truncation() {
        let gm = InvariantPoly::term(g(2), (0, 0, 1), q(1));
        assert!((&(&gm * &gm) * &gm).is_zero());
        assert_eq!(
            Element::gamma(g(2)).pow(3),
            (&gm * &gm).shift(0, 0, 1).to_element()
        );
    }

    #[test]
    fn exp_log_inverse() {
        let mut x = TSeries::zero(g(2), 7);
        x.set(1, InvariantPoly::term(g(2), (1, 0, 0), q(1)));
        x.set(2, InvariantPoly::term(g(2), (0, 1, 0), qfrac(-1, 3)));
        x.set(3, InvariantPoly::term(g(2), (0, 0, 1), q(2)));
        let e = x.exp().unwrap();
        assert_eq!(e.log().unwrap(), x);
        let back = e.log().unwrap().exp().unwrap();
        assert_eq!(back, e);
        assert!(e.exp().is_err());
        assert!(x.log().is_err());
    }

    #[test]
    fn exp_of_sum_is_product() {
        let mut x = TSeries::zero(g(2), 6);
        x.set(1, InvariantPoly::term(g(2), (1, 0, 0), q(1)));
        let mut y = TSeries::zero(g(2), 6);
        y.set(2, InvariantPoly::term(g(2), (0, 1, 0), q(3)));
        let lhs = x.add(&y).exp().unwrap();
        let rhs = x.exp().unwrap().mul(&y.exp().unwrap());
        assert_eq!(lhs, rhs);
    }
}
