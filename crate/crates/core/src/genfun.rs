//! Exact bivariate Laurent polynomials and rational functions in `(q, t)`, the
//! closed-form refined Poincaré series and the identities they satisfy.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Bidegree, Genus};
use crate::error::{Error, Result};
use crate::omega::OmegaTable;
use crate::scalar::{binomial, fmt_q, q, qint, QScalar};

/// `sum c_{i,j} q^i t^j` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(i32, i32), QScalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::mono(0, 0, QScalar::one())
    }

    pub fn mono(i: i32, j: i32, c: QScalar) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// `1 + s q^i t^j` for `s = +1` or `-1`; the building block of every formula.
    pub fn binom(s: i64, i: i32, j: i32) -> Self {
        let mut p = BiPoly::one();
        p.add_term(i, j, q(s));
        p
    }

    pub fn from_terms(ts: impl IntoIterator<Item = ((i32, i32), QScalar)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in ts {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i32, j: i32, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(QScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i32, j: i32) -> QScalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(QScalar::zero)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for ((i, j), c) in &o.terms {
            r.add_term(*i, *j, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> BiPoly {
        let mut r = BiPoly::zero();
        for ((i, j), x) in &self.terms {
            r.add_term(*i, *j, x * c);
        }
        r
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                r.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut r = BiPoly::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn shift(&self, i: i32, j: i32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    /// `p(1/q, 1/t)`.
    pub fn invert(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t = c` for `c` in {1, -1}; the result only involves `q`.
    pub fn at_t_sign(&self, c: i64) -> BiPoly {
        let mut r = BiPoly::zero();
        for ((a, b), x) in &self.terms {
            let s = if c < 0 && b.rem_euclid(2) == 1 {
                -x
            } else {
                x.clone()
            };
            r.add_term(*a, 0, s);
        }
        r
    }

    /// Substitutes `q = t`, returning a polynomial in `t` alone.
    pub fn at_q_equals_t(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for ((a, b), x) in &self.terms {
            r.add_term(0, a + b, x.clone());
        }
        r
    }

    /// Substitutes `q = 1, t = 1`.
    pub fn total(&self) -> QScalar {
        self.terms.values().cloned().sum()
    }

    fn bounds(&self) -> Option<((i32, i32), (i32, i32))> {
        let qs = self.terms.keys().map(|k| k.0);
        let ts = self.terms.keys().map(|k| k.1);
        Some((
            (qs.clone().min()?, qs.max()?),
            (ts.clone().min()?, ts.max()?),
        ))
    }

    /// `self / d` if the division is exact, by lexicographic leading terms.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        let Some(((fq0, fq1), (ft0, ft1))) = self.bounds() else {
            return Some(BiPoly::zero());
        };
        let ((dq0, dq1), (dt0, dt1)) = d.bounds()?;
        let (lead, lc) = d.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((k, c)) = rem.terms.iter().next_back().map(|(k, c)| (*k, c.clone())) {
            let (i, j) = (k.0 - lead.0, k.1 - lead.1);
            if i < fq0 - dq0 || i > fq1 - dq1 || j < ft0 - dt0 || j > ft1 - dt1 {
                return None;
            }
            let c = c / &lc;
            rem = rem.sub(&d.shift(i, j).scale(&c));
            quot.add_term(i, j, c);
        }
        Some(quot)
    }

    /// Terms of weight `i + j <= w`.
    pub fn truncate(&self, w: i32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a + b <= w)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    fn weight_parts(&self) -> BTreeMap<i32, BiPoly> {
        let mut parts: BTreeMap<i32, BiPoly> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            parts.entry(a + b).or_default().add_term(*a, *b, c.clone());
        }
        parts
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|((a, b), _)| (a + b, *a));
        for (n, ((a, b), c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            for (name, e) in [("q", a), ("t", b)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            match (parts.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", fmt_q(&abs))?,
                (false, true) => write!(f, "{}", parts.join(" "))?,
                (false, false) => write!(f, "{} {}", fmt_q(&abs), parts.join(" "))?,
            }
        }
        Ok(())
    }
}

/// `num / den` with a nonzero denominator.
#[derive(Clone, Debug)]
pub struct BiRational {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl PartialEq for BiRational {
    fn eq(&self, o: &BiRational) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl BiRational {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Usage("zero denominator".into()));
        }
        Ok(BiRational { num, den })
    }

    pub fn poly(p: BiPoly) -> Self {
        BiRational {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn add(&self, o: &BiRational) -> BiRational {
        BiRational {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn sub(&self, o: &BiRational) -> BiRational {
        self.add(&BiRational {
            num: o.num.scale(&q(-1)),
            den: o.den.clone(),
        })
    }

    pub fn mul(&self, o: &BiRational) -> BiRational {
        BiRational {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn invert_vars(&self) -> BiRational {
        BiRational {
            num: self.num.invert(),
            den: self.den.invert(),
        }
    }

    /// The polynomial `num / den` when the division is exact.
    pub fn as_poly(&self) -> Option<BiPoly> {
        self.num.div_exact(&self.den)
    }

    /// Removes common factors `f` from numerator and denominator while both are divisible.
    pub fn cancel(&self, f: &BiPoly) -> BiRational {
        let mut r = self.clone();
        loop {
            match (r.num.div_exact(f), r.den.div_exact(f)) {
                (Some(n), Some(d)) if !r.num.is_zero() => r = BiRational { num: n, den: d },
                _ => return r,
            }
        }
    }

    /// Substitutes `t = -1` after cancelling factors of `1 + t`.
    pub fn at_t_minus_one(&self) -> Result<BiRational> {
        let c = self.cancel(&BiPoly::binom(1, 0, 1));
        BiRational::new(c.num.at_t_sign(-1), c.den.at_t_sign(-1))
    }

    /// Substitutes `t = 1` after cancelling factors of `1 - t`.
    pub fn at_t_one(&self) -> Result<BiRational> {
        let c = self.cancel(&BiPoly::binom(-1, 0, 1));
        BiRational::new(c.num.at_t_sign(1), c.den.at_t_sign(1))
    }

    pub fn at_q_equals_t(&self) -> Result<BiRational> {
        BiRational::new(self.num.at_q_equals_t(), self.den.at_q_equals_t())
    }

    /// Power series expansion up to weight `w`, grading `q^i t^j` by `i + j`.
    /// Needs a denominator whose weight-0 part is a nonzero constant and no
    /// negative weights.
    pub fn expand(&self, w: i32) -> Result<BiPoly> {
        let dparts = self.den.weight_parts();
        let nparts = self.num.weight_parts();
        let min_weight = dparts
            .keys()
            .chain(nparts.keys())
            .min()
            .copied()
            .unwrap_or(0);
        let d0 = dparts.get(&0).cloned().unwrap_or_default();
        if min_weight < 0 || d0.terms.len() != 1 || d0.coeff(0, 0).is_zero() {
            return Err(Error::Usage(
                "denominator is not invertible as a power series".into(),
            ));
        }
        let inv0 = d0.coeff(0, 0).recip();
        let mut out: BTreeMap<i32, BiPoly> = BTreeMap::new();
        for n in 0..=w {
            let mut acc = nparts.get(&n).cloned().unwrap_or_default();
            for (k, dk) in dparts.range(1..).take_while(|(k, _)| **k <= n) {
                if let Some(s) = out.get(&(n - k)) {
                    acc = acc.sub(&dk.mul(s));
                }
            }
            out.insert(n, acc.scale(&inv0));
        }
        Ok(out.values().fold(BiPoly::zero(), |a, p| a.add(p)))
    }
}

/// `prod_{k=2}^r (1 + q^k t^(k-1))^(2g) / ((1 - q^k t^(k-2)) (1 - q^k t^k))`.
pub fn omega_stack(r: u32, g: Genus) -> Result<BiRational> {
    if r < 2 {
        return Err(Error::Usage(format!("rank {r} is below 2")));
    }
    let n = 2 * g.get();
    let mut num = BiPoly::one();
    let mut den = BiPoly::one();
    for k in 2..=r as i32 {
        num = num.mul(&BiPoly::binom(1, k, k - 1).pow(n));
        den = den
            .mul(&BiPoly::binom(-1, k, k - 2))
            .mul(&BiPoly::binom(-1, k, k));
    }
    BiRational::new(num, den)
}

/// `((1 + q^2 t)^(2g) - q^(2g+4d) (1 + t)^(2g)) / ((1 - q^2)(1 - q^2 t^2))`.
pub fn omega_n21_closed(g: Genus, d: u32) -> BiRational {
    let n = 2 * g.get();
    let num = BiPoly::binom(1, 2, 1)
        .pow(n)
        .sub(&BiPoly::binom(1, 0, 1).pow(n).shift((n + 4 * d) as i32, 0));
    BiRational {
        num,
        den: BiPoly::binom(-1, 2, 0).mul(&BiPoly::binom(-1, 2, 2)),
    }
}

/// The level-0 closed form as a polynomial; the division must be exact.
pub fn omega_n21_polynomial(g: Genus) -> Result<BiPoly> {
    omega_n21_closed(g, 0)
        .as_poly()
        .ok_or_else(|| Error::Inconsistent(format!("closed form at genus {g} is not a polynomial")))
}

/// `q^(2g+4d-4) (1+t)^(2g) (1+q^2) / (1 - q^2 t^2)`.
pub fn stratum_difference(g: Genus, d: u32) -> BiRational {
    let n = 2 * g.get();
    BiRational {
        num: BiPoly::binom(1, 0, 1)
            .pow(n)
            .mul(&BiPoly::binom(1, 2, 0))
            .shift((n + 4 * d - 4) as i32, 0),
        den: BiPoly::binom(-1, 2, 2),
    }
}

/// The conjectured rank-3 series, transcribed term by term:
/// `[A - B + C] / ((1-q^2)(1-q^2 t^2)(1-q^3 t)(1-q^3 t^3))` with
/// `A = (1+q^2 t)^(2g) (1+q^3 t^2)^(2g)`,
/// `B = q^(4g-2) (1+qt)(1-q^3 t)/(1-t^2) (1+t)^(2g) (1+qt^2)^(2g)`,
/// `C = q^(4g-2) t^(2g) (1-q^2)(1+qt+q^2 t^2)/(1-t^2) (1+q)^(2g) (1+t)^(2g)`.
pub fn omega_n31_conjecture(g: Genus) -> BiRational {
    let n = 2 * g.get();
    let shift = (4 * g.get() - 2) as i32;
    let a = BiPoly::binom(1, 2, 1)
        .pow(n)
        .mul(&BiPoly::binom(1, 3, 2).pow(n));
    let b = BiPoly::binom(1, 1, 1)
        .mul(&BiPoly::binom(-1, 3, 1))
        .mul(&BiPoly::binom(1, 0, 1).pow(n))
        .mul(&BiPoly::binom(1, 1, 2).pow(n))
        .shift(shift, 0);
    let trinomial = BiPoly::from_terms([((0, 0), q(1)), ((1, 1), q(1)), ((2, 2), q(1))]);
    let c = BiPoly::binom(-1, 2, 0)
        .mul(&trinomial)
        .mul(&BiPoly::binom(1, 1, 0).pow(n))
        .mul(&BiPoly::binom(1, 0, 1).pow(n))
        .shift(shift, n as i32);
    let one_minus_t2 = BiPoly::binom(-1, 0, 2);
    let den = BiPoly::binom(-1, 2, 0)
        .mul(&BiPoly::binom(-1, 2, 2))
        .mul(&BiPoly::binom(-1, 3, 1))
        .mul(&BiPoly::binom(-1, 3, 3));
    BiRational {
        num: a.mul(&one_minus_t2).sub(&b).add(&c),
        den: den.mul(&one_minus_t2),
    }
}

/// Whether `q^((r+2)(r-1)(g-1)) t^(r(r-1)(g-1)) f(1/q, 1/t) = f(q, t)`.
pub fn check_shift_symmetry(f: &BiRational, r: u32, g: Genus) -> bool {
    let (r, g1) = (r as i32, g.get() as i32 - 1);
    let a = (r + 2) * (r - 1) * g1;
    let b = r * (r - 1) * g1;
    let inv = f.invert_vars();
    let lhs = BiRational {
        num: inv.num.shift(a, b),
        den: inv.den,
    };
    lhs == *f
}

/// `prod_{k=2}^r (1 - (-q)^k)^(2g-2)`.
pub fn t_minus_one_product(r: u32, g: Genus) -> BiPoly {
    let e = 2 * g.get() - 2;
    let mut p = BiPoly::one();
    for k in 2..=r as i32 {
        let s = if k % 2 == 0 { -1 } else { 1 };
        p = p.mul(&BiPoly::binom(s, k, 0).pow(e));
    }
    p
}

/// The five-fold sum over `2p + l + r + s + h = g - 1` of
/// `2^h C(g,h) C(g-h,p) q^(2r+2s+2h+4p) t^(2s+h+2p) (1 + q^(4l) t^(2l) - [l = 0])`.
pub fn zagier_combinatorial_omega(g: Genus) -> BiPoly {
    let gi = g.get() as i64;
    let total = gi - 1;
    let mut out = BiPoly::zero();
    for p in 0..=total / 2 {
        for l in 0..=(total - 2 * p) {
            for r in 0..=(total - 2 * p - l) {
                for s in 0..=(total - 2 * p - l - r) {
                    let h = total - 2 * p - l - r - s;
                    let c = qint(binomial(gi, h) * binomial(gi - h, p)) * q(2).pow(h as i32);
                    let (qe, te) = (
                        (2 * r + 2 * s + 2 * h + 4 * p) as i32,
                        (2 * s + h + 2 * p) as i32,
                    );
                    let mut factor = BiPoly::mono(4 * l as i32, 2 * l as i32, q(1));
                    if l != 0 {
                        factor = factor.add(&BiPoly::one());
                    }
                    out = out.add(&factor.shift(qe, te).scale(&c));
                }
            }
        }
    }
    out
}

/// Coefficients of `Omega(q, 1)` at `q^0, q^2, .., q^(4g-4)`; the odd powers vanish.
pub fn omega_q1_coefficients(g: Genus) -> Result<Vec<QScalar>> {
    let p = omega_n21_polynomial(g)?.at_t_sign(1);
    let top = 4 * g.get() as i32 - 4;
    for ((i, _), c) in p.terms() {
        if i % 2 != 0 && !c.is_zero() {
            return Err(Error::Inconsistent(format!(
                "odd power q^{i} in Omega(q, 1)"
            )));
        }
    }
    Ok((0..=top).step_by(2).map(|i| p.coeff(i, 0)).collect())
}

/// Whether a sequence increases weakly to a peak and then decreases weakly.
pub fn is_unimodal(a: &[QScalar]) -> bool {
    let mut i = 0;
    while i + 1 < a.len() && a[i] <= a[i + 1] {
        i += 1;
    }
    while i + 1 < a.len() && a[i] >= a[i + 1] {
        i += 1;
    }
    i + 1 >= a.len()
}

pub fn check_unimodality(g: Genus) -> Result<bool> {
    Ok(is_unimodal(&omega_q1_coefficients(g)?))
}

/// `sum dim q^chern t^(coh - chern)`.
pub fn table_to_poly(t: &OmegaTable) -> BiPoly {
    let mut p = BiPoly::zero();
    for (bd, n) in t.entries() {
        p.add_term(bd.chern as i32, (bd.coh - bd.chern) as i32, q(n as i64));
    }
    p
}

/// The inverse of [`table_to_poly`] for series whose terms are dimensions.
pub fn poly_to_table(g: Genus, d: u32, max_coh: u32, p: &BiPoly) -> Result<OmegaTable> {
    let mut t = OmegaTable::new(g, d, max_coh);
    for ((i, j), c) in p.terms() {
        let (chern, coh) = (*i, i + j);
        if coh > max_coh as i32 {
            continue;
        }
        let dim = (chern >= 0 && *j >= 0 && c.is_integer() && !c.is_negative())
            .then(|| c.to_integer().to_u64())
            .flatten()
            .ok_or_else(|| {
                Error::Inconsistent(format!("coefficient {c} of q^{i} t^{j} is not a dimension"))
            })?;
        t.set(Bidegree::new(coh as u32, chern as u32), dim);
    }
    Ok(t)
}

/// The recursion for the stacks without fixed determinant at `q = t`,
/// `(1+t)^(2g)/(1-t^2) Omega(N, t, t) + sum_{k=1}^d t^(2g+4k-4) (1+t)^(4g)/(1-t^2)^2`,
/// and the closed form `(1+t)^(2g)/(1-t^2) ((1+t^3)^(2g) - t^(2g+4d)(1+t)^(2g)) / ((1-t^2)(1-t^4))`.
pub fn stack_recursion_at_q_equals_t(g: Genus, d: u32) -> Result<(BiRational, BiRational)> {
    let n = 2 * g.get();
    // univariate polynomials in t are stored with q-exponent 0
    let t1 = BiPoly::binom(1, 0, 1).pow(n);
    let one_minus_t2 = BiPoly::binom(-1, 0, 2);
    let prefactor = BiRational::new(t1.clone(), one_minus_t2.clone())?;
    let mut lhs = prefactor.mul(&omega_n21_closed(g, 0).at_q_equals_t()?);
    for k in 1..=d {
        let term = BiRational::new(
            t1.pow(2).shift(0, (n + 4 * k - 4) as i32),
            one_minus_t2.pow(2),
        )?;
        lhs = lhs.add(&term);
    }
    let closed = BiRational::new(
        BiPoly::binom(1, 0, 3)
            .pow(n)
            .sub(&t1.shift(0, (n + 4 * d) as i32)),
        one_minus_t2.mul(&BiPoly::binom(-1, 0, 4)),
    )?;
    Ok((lhs, prefactor.mul(&closed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn genus_two_poly() -> BiPoly {
        BiPoly::from_terms([
            ((0, 0), q(1)),
            ((2, 0), q(1)),
            ((2, 1), q(4)),
            ((2, 2), q(1)),
            ((4, 2), q(1)),
        ])
    }

    #[test]
    fn closed_form_genus_two() {
        assert_eq!(omega_n21_polynomial(g(2)).unwrap(), genus_two_poly());
        let pt = genus_two_poly().at_q_equals_t();
        let expect = BiPoly::from_terms([
            ((0, 0), q(1)),
            ((0, 2), q(1)),
            ((0, 3), q(4)),
            ((0, 4), q(1)),
            ((0, 6), q(1)),
        ]);
        assert_eq!(pt, expect);
        assert!(omega_n21_closed(g(2), 1).as_poly().is_none());
    }

    #[test]
    fn division() {
        let a = BiPoly::binom(1, 1, 1).mul(&BiPoly::binom(-1, 2, 0));
        assert_eq!(
            a.div_exact(&BiPoly::binom(-1, 2, 0)),
            Some(BiPoly::binom(1, 1, 1))
        );
        assert_eq!(
            BiPoly::binom(1, 1, 0).div_exact(&BiPoly::binom(1, 0, 1)),
            None
        );
        assert_eq!(
            BiPoly::zero().div_exact(&BiPoly::binom(1, 0, 1)),
            Some(BiPoly::zero())
        );
        assert_eq!(a.div_exact(&BiPoly::zero()), None);
    }

    #[test]
    fn stack_examples() {
        let s = omega_stack(2, g(3)).unwrap();
        let expect = BiRational::new(
            BiPoly::binom(1, 2, 1).pow(6),
            BiPoly::binom(-1, 2, 0).mul(&BiPoly::binom(-1, 2, 2)),
        )
        .unwrap();
        assert_eq!(s, expect);
        for gen in 2..=4 {
            let tm1 = omega_stack(2, g(gen)).unwrap().at_t_minus_one().unwrap();
            assert_eq!(
                tm1,
                BiRational::poly(BiPoly::binom(-1, 2, 0).pow(2 * gen - 2))
            );
            let tm3 = omega_stack(3, g(gen)).unwrap().at_t_minus_one().unwrap();
            let p = BiPoly::binom(-1, 2, 0)
                .mul(&BiPoly::binom(1, 3, 0))
                .pow(2 * gen - 2);
            assert_eq!(tm3, BiRational::poly(p));
        }
        assert!(omega_stack(1, g(2)).is_err());
    }

    #[test]
    fn symmetry_examples() {
        for gen in 2..=4 {
            assert!(check_shift_symmetry(
                &omega_stack(2, g(gen)).unwrap(),
                2,
                g(gen)
            ));
            assert!(check_shift_symmetry(
                &omega_n21_closed(g(gen), 0),
                2,
                g(gen)
            ));
        }
        assert!(!check_shift_symmetry(&omega_n21_closed(g(2), 1), 2, g(2)));
    }

    #[test]
    fn consecutive_differences() {
        for gen in 2..=4 {
            for d in 1..=3 {
                let diff = omega_n21_closed(g(gen), d).sub(&omega_n21_closed(g(gen), d - 1));
                assert_eq!(diff, stratum_difference(g(gen), d));
            }
        }
    }

    #[test]
    fn table_round_trip() {
        let t = poly_to_table(g(2), 0, 6, &genus_two_poly()).unwrap();
        assert_eq!(t.get(Bidegree::new(3, 2)), 4);
        assert_eq!(table_to_poly(&t), genus_two_poly());
        let bad = BiPoly::mono(2, 1, q(-1));
        assert!(poly_to_table(g(2), 0, 6, &bad).is_err());
    }

    #[test]
    fn zagier_genus_two() {
        assert_eq!(zagier_combinatorial_omega(g(2)), genus_two_poly());
        assert_eq!(zagier_combinatorial_omega(g(2)).total(), q(8));
    }

    #[test]
    fn unimodal_sequences() {
        assert_eq!(omega_q1_coefficients(g(2)).unwrap(), vec![q(1), q(6), q(1)]);
        assert!(check_unimodality(g(2)).unwrap());
        assert!(!is_unimodal(&[q(1), q(2), q(1), q(3), q(1)]));
        assert!(is_unimodal(&[q(1)]));
        assert!(is_unimodal(&[]));
    }

    #[test]
    fn expansion_matches_division() {
        let f = omega_n21_closed(g(3), 0);
        let poly = omega_n21_polynomial(g(3)).unwrap();
        assert_eq!(f.expand(40).unwrap(), poly);
        let series = omega_n21_closed(g(2), 1).expand(10).unwrap();
        assert_eq!(series.truncate(3), genus_two_poly().truncate(3));
        let stratum = stratum_difference(g(2), 1).expand(10).unwrap();
        assert_eq!(series.sub(&genus_two_poly()), stratum);
        assert_eq!(stratum.coeff(4, 0), q(1));
    }

    #[test]
    fn rank_three_specializations() {
        for gen in 2..=3 {
            let f = omega_n31_conjecture(g(gen));
            let tm1 = f.at_t_minus_one().unwrap();
            let p = BiPoly::binom(-1, 2, 0)
                .mul(&BiPoly::binom(1, 3, 0))
                .pow(2 * gen - 2);
            assert_eq!(tm1, BiRational::poly(p));
        }
    }

    #[test]
    fn stack_recursion() {
        for gen in 2..=3 {
            for d in 0..=3 {
                let (lhs, rhs) = stack_recursion_at_q_equals_t(g(gen), d).unwrap();
                assert_eq!(lhs, rhs);
                let n = 2 * gen;
                let t1 = BiPoly::binom(1, 0, 1).pow(n);
                let bare = BiRational::new(
                    BiPoly::binom(1, 0, 3)
                        .pow(n)
                        .sub(&t1.shift(0, (n + 4 * d) as i32)),
                    BiPoly::binom(-1, 0, 2).mul(&BiPoly::binom(-1, 0, 4)),
                )
                .unwrap();
                assert!(lhs != bare);
            }
        }
    }
}
