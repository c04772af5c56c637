use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Genus of the underlying curve.
///
/// The exterior part has `2g` generators stored as bits of a `u32`, and the
/// enumerations over subsets stay in memory up to `g = 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Genus(u32);

impl Genus {
    pub const MIN: u32 = 2;
    pub const MAX: u32 = 8;

    pub fn new(g: u32) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&g) {
            Ok(Genus(g))
        } else {
            Err(Error::Config(format!(
                "genus {g} outside supported range {}..={}",
                Self::MIN,
                Self::MAX
            )))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of odd generators `psi_1 .. psi_2g`.
    pub fn num_psi(self) -> u32 {
        2 * self.0
    }

    /// Mask with one bit per odd generator.
    pub fn psi_mask(self) -> u32 {
        (1u32 << self.num_psi()) - 1
    }

    /// Cohomological and Chern degree of the top class: `(6g-6, 4g-4)`.
    pub fn top(self) -> Bidegree {
        Bidegree::new(6 * self.0 - 6, 4 * self.0 - 4)
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub coh: u32,
    pub chern: u32,
}

impl Bidegree {
    pub const fn new(coh: u32, chern: u32) -> Self {
        Bidegree { coh, chern }
    }

    /// The bidegree pairing with `self` into the top bidegree, if any.
    pub fn complement(self, g: Genus) -> Option<Bidegree> {
        let top = g.top();
        Some(Bidegree::new(
            top.coh.checked_sub(self.coh)?,
            top.chern.checked_sub(self.chern)?,
        ))
    }

    /// Shift by a signed bidegree offset; `None` if a component goes negative.
    pub fn offset(self, coh: i32, chern: i32) -> Option<Bidegree> {
        Some(Bidegree::new(
            self.coh.checked_add_signed(coh)?,
            self.chern.checked_add_signed(chern)?,
        ))
    }
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.coh + o.coh, self.chern + o.chern)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(coh {}, chern {})", self.coh, self.chern)
    }
}

/// `alpha^a beta^b psi_S` with `S` stored as a bitmask, bit `i-1` for `psi_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub psi: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, psi: 0 };

    pub const fn new(a: u32, b: u32, psi: u32) -> Self {
        Monomial { a, b, psi }
    }

    pub fn psi_count(self) -> u32 {
        self.psi.count_ones()
    }

    pub fn bidegree(self) -> Bidegree {
        let s = self.psi_count();
        Bidegree::new(2 * self.a + 4 * self.b + 3 * s, 2 * (self.a + self.b + s))
    }

    pub fn is_odd(self) -> bool {
        self.psi_count() % 2 == 1
    }

    /// 1-based indices of the odd factors, ascending.
    pub fn psi_indices(self) -> Vec<u32> {
        bits(self.psi).map(|b| b + 1).collect()
    }

    /// Product of two monomials: the monomial and whether the Koszul sign is
    /// negative, or `None` when an odd generator repeats.
    pub fn times(self, o: Monomial) -> Option<(Monomial, bool)> {
        if self.psi & o.psi != 0 {
            return None;
        }
        Some((
            Monomial::new(self.a + o.a, self.b + o.b, self.psi | o.psi),
            koszul_odd(self.psi, o.psi),
        ))
    }
}

/// Parity of the number of transpositions needed to sort the concatenation of
/// the ascending sequences `left` and `right` (disjoint masks).
pub(crate) fn koszul_odd(left: u32, right: u32) -> bool {
    let mut inversions = 0;
    for j in bits(right) {
        inversions += (left >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = u32> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

/// All `n`-bit masks with exactly `k` bits set, in increasing numeric order.
pub(crate) fn subsets(n: u32, k: u32) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut next = if k > n {
        None
    } else {
        Some(((1u64 << k) - 1) as u32)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if (cur as u64) >= limit {
            next = None;
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur as u64;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let g = (((ripple ^ c) >> 2) / low) | ripple;
            if g >= limit {
                None
            } else {
                Some(g as u32)
            }
        };
        Some(cur)
    })
}

/// A generator of the descendent algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha,
    Beta,
    /// 1-based index `1..=2g`.
    Psi(u32),
}

impl Var {
    pub fn parse(name: &str) -> Result<Var> {
        match name {
            "alpha" => Ok(Var::Alpha),
            "beta" => Ok(Var::Beta),
            _ => name
                .strip_prefix("psi")
                .and_then(|i| i.parse::<u32>().ok())
                .map(Var::Psi)
                .ok_or_else(|| Error::Usage(format!("unknown generator `{name}`"))),
        }
    }

    pub fn check(self, g: Genus) -> Result<Var> {
        match self {
            Var::Psi(i) if i == 0 || i > g.num_psi() => Err(Error::Usage(format!(
                "psi{i} is not a generator at genus {g} (indices 1..={})",
                g.num_psi()
            ))),
            v => Ok(v),
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Var::Psi(_))
    }

    pub fn monomial(self) -> Monomial {
        match self {
            Var::Alpha => Monomial::new(1, 0, 0),
            Var::Beta => Monomial::new(0, 1, 0),
            Var::Psi(i) => Monomial::new(0, 0, 1 << (i - 1)),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Alpha => write!(f, "alpha"),
            Var::Beta => write!(f, "beta"),
            Var::Psi(i) => write!(f, "psi{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_range() {
        assert!(Genus::new(1).is_err());
        assert!(Genus::new(9).is_err());
        assert_eq!(Genus::new(3).unwrap().top(), Bidegree::new(12, 8));
    }

    #[test]
    fn monomial_degrees() {
        assert_eq!(Monomial::new(2, 1, 0).bidegree(), Bidegree::new(8, 6));
        assert_eq!(Monomial::new(1, 1, 0).bidegree(), Bidegree::new(6, 4));
        assert_eq!(Monomial::new(0, 0, 0b11).bidegree(), Bidegree::new(6, 4));
    }

    #[test]
    fn koszul_signs() {
        // psi2 * psi1 = -psi1 psi2
        let (m, neg) = Monomial::new(0, 0, 0b10)
            .times(Monomial::new(0, 0, 0b01))
            .unwrap();
        assert_eq!(m.psi, 0b11);
        assert!(neg);
        assert!(Monomial::new(0, 0, 1)
            .times(Monomial::new(0, 0, 1))
            .is_none());
        // (psi1 psi3)(psi2) = -psi1 psi2 psi3
        assert!(koszul_odd(0b101, 0b010));
        // (psi2)(psi1 psi3) = -psi1 psi2 psi3
        assert!(koszul_odd(0b010, 0b101));
        assert!(!koszul_odd(0b011, 0b100));
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<u32> = subsets(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets(3, 4).count(), 0);
        assert_eq!(subsets(16, 8).count(), 12870);
        assert_eq!(subsets(16, 16).collect::<Vec<_>>(), vec![0xffff]);
    }

    #[test]
    fn var_names() {
        assert_eq!(Var::parse("psi12").unwrap(), Var::Psi(12));
        assert!(Var::parse("delta").is_err());
        let g = Genus::new(2).unwrap();
        assert!(Var::Psi(5).check(g).is_err());
        assert!(Var::Psi(4).check(g).is_ok());
    }
}
