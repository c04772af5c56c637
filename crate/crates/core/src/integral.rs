//! The graded integral on the top bidegree `(6g-6, 4g-4)` and the pairing it induces.
//!
//! Along the top line the monomial `alpha^n beta^n gamma^p` (with `n = g-1-p`)
//! integrates to `I_p`, where `I_0 = B` and
//! `(g-p) I_p = -2 (g-1-p) I_{p+1}`. A product of `p` symplectic pairs
//! `gamma_i = psi_i psi_{i+g}` integrates to `I_p / ((-2)^p g(g-1)..(g-p+1))`,
//! and any other exterior monomial integrates to zero.
//!
//! `B` defaults to 1. Every kernel, rank and dimension computed from the
//! pairing is unchanged when `B` is rescaled.

use rayon::prelude::*;

use num_traits::Zero;

use crate::algebra::{monomial_basis, Bidegree, Element, Genus, Monomial};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalar::{falling, q, qint, QScalar};

#[derive(Clone, Debug)]
pub struct IntegralConfig {
    genus: Genus,
    b: QScalar,
    /// Value of a single product of `p` symplectic pairs, indexed by `p`.
    pair_values: Vec<QScalar>,
}

impl IntegralConfig {
    pub fn new(genus: Genus, b: QScalar) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::Config("normalization B must be nonzero".into()));
        }
        let g = genus.get() as i64;
        let mut line = vec![b.clone()];
        for p in 0..g - 1 {
            let den = 2 * (g - 1 - p);
            assert!(den != 0, "Virasoro step divides by zero");
            let next = -&line[p as usize] * q(g - p) / q(den);
            line.push(next);
        }
        let pair_values = line
            .iter()
            .enumerate()
            .map(|(p, ip)| {
                let den = q(-2).pow(p as i32) * qint(falling(g, p as u64));
                ip / den
            })
            .collect();
        Ok(IntegralConfig {
            genus,
            b,
            pair_values,
        })
    }

    pub fn unit(genus: Genus) -> Self {
        Self::new(genus, q(1)).expect("1 is nonzero")
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn normalization(&self) -> &QScalar {
        &self.b
    }

    /// `I_p`, the integral of `alpha^(g-1-p) beta^(g-1-p) gamma^p`.
    pub fn gamma_line(&self, p: u32) -> QScalar {
        let g = self.genus.get();
        assert!(p < g, "gamma^p has no top-degree partner for p >= g");
        &self.pair_values[p as usize] * q(-2).pow(p as i32) * qint(falling(g as i64, p as u64))
    }

    /// The integral of one monomial (zero off the top bidegree).
    pub fn monomial_value(&self, m: Monomial) -> QScalar {
        if m.bidegree() != self.genus.top() {
            return QScalar::zero();
        }
        match pair_sign(self.genus, m.psi) {
            None => QScalar::zero(),
            Some(neg) => {
                let v = self.pair_values[(m.psi_count() / 2) as usize].clone();
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

/// For an exterior monomial closed under `i <-> i+g`, whether reordering it into
/// adjacent pairs `psi_i1 psi_{i1+g} psi_i2 psi_{i2+g} ..` costs an odd number of
/// transpositions. `None` if the set is not closed.
pub fn pair_sign(g: Genus, mask: u32) -> Option<bool> {
    let n = g.get();
    let low = mask & ((1 << n) - 1);
    if mask >> n != low {
        return None;
    }
    let mut seq = Vec::new();
    for i in 0..n {
        if low & (1 << i) != 0 {
            seq.push(i);
            seq.push(i + n);
        }
    }
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    Some(inversions % 2 == 1)
}

pub fn graded_integral(d: &Element, cfg: &IntegralConfig) -> Result<QScalar> {
    if d.genus() != cfg.genus {
        return Err(Error::Config(format!(
            "element of genus {} integrated with a genus {} configuration",
            d.genus(),
            cfg.genus
        )));
    }
    Ok(d.terms().fold(QScalar::zero(), |acc, (m, c)| {
        acc + c * cfg.monomial_value(*m)
    }))
}

pub fn graded_pairing(d: &Element, e: &Element, cfg: &IntegralConfig) -> Result<QScalar> {
    graded_integral(&d.checked_mul(e)?, cfg)
}

fn monomial_pairing(a: Monomial, b: Monomial, cfg: &IntegralConfig) -> QScalar {
    match a.times(b) {
        None => QScalar::zero(),
        Some((m, neg)) => {
            let v = cfg.monomial_value(m);
            if neg {
                -v
            } else {
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub matrix: QMatrix,
}

/// Pairing of the slice at `bd` against the complementary slice. If the
/// complement leaves the cone the matrix has no columns.
pub fn pairing_matrix(g: Genus, bd: Bidegree, cfg: &IntegralConfig) -> PairingMatrix {
    let rows = monomial_basis(g, bd);
    let cols = bd
        .complement(g)
        .map(|c| monomial_basis(g, c))
        .unwrap_or_default();
    let entries: Vec<Vec<QScalar>> = rows
        .par_iter()
        .map(|r| cols.iter().map(|c| monomial_pairing(*r, *c, cfg)).collect())
        .collect();
    let matrix = QMatrix::from_rows(cols.len(), entries).expect("rows have equal length");
    PairingMatrix { rows, cols, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::linalg::row_reduce;
    use crate::scalar::qfrac;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn int(genus: u32, s: &str) -> QScalar {
        let cfg = IntegralConfig::unit(g(genus));
        graded_integral(&parse_element(g(genus), s).unwrap(), &cfg).unwrap()
    }

    #[test]
    fn genus_two_values() {
        assert_eq!(int(2, "alpha beta"), q(1));
        assert_eq!(int(2, "gamma"), q(-1));
        assert_eq!(int(2, "psi1 psi3"), qfrac(1, 4));
        assert_eq!(int(2, "psi1 psi2"), q(0));
        assert_eq!(int(2, "alpha^2 beta psi1 psi2"), q(0));
        assert_eq!(int(2, "1/2 alpha beta"), qfrac(1, 2));
        assert_eq!(int(2, "alpha^2"), q(0));
        assert_eq!(int(2, "alpha beta + alpha"), q(1));
    }

    #[test]
    fn pairings() {
        let cfg = IntegralConfig::unit(g(2));
        let p = |a: &str, b: &str| {
            graded_pairing(
                &parse_element(g(2), a).unwrap(),
                &parse_element(g(2), b).unwrap(),
                &cfg,
            )
            .unwrap()
        };
        assert_eq!(p("alpha", "beta"), q(1));
        assert_eq!(p("1", "2 alpha beta + 2 gamma"), q(0));
        assert_eq!(p("alpha", "alpha"), q(0));
    }

    #[test]
    fn zero_normalization_rejected() {
        assert!(IntegralConfig::new(g(2), q(0)).is_err());
    }

    #[test]
    fn pairing_matrices_at_genus_two() {
        let cfg = IntegralConfig::unit(g(2));
        let pm = pairing_matrix(g(2), Bidegree::new(0, 0), &cfg);
        assert_eq!(pm.matrix.rows(), 1);
        // columns: alpha beta, then the six psi pairs
        let values: Vec<QScalar> = pm.matrix.row(0).to_vec();
        assert_eq!(values[0], q(1));
        let gamma = parse_element(g(2), "gamma")
            .unwrap()
            .coords(&pm.cols)
            .unwrap();
        let dot: QScalar = values.iter().zip(&gamma).map(|(a, b)| a * b).sum();
        assert_eq!(dot, q(-1));

        let psi = pairing_matrix(g(2), Bidegree::new(3, 2), &cfg);
        assert_eq!((psi.matrix.rows(), psi.matrix.cols()), (4, 4));
        for i in 0..4 {
            for j in 0..4 {
                let v = psi.matrix.get(i, j).clone();
                let partner = (i + 2) % 4 == j;
                if partner {
                    assert!(v == qfrac(1, 4) || v == qfrac(-1, 4));
                } else {
                    assert_eq!(v, q(0));
                }
            }
        }
        assert_eq!(row_reduce(&psi.matrix).rank, 4);
        let top = pairing_matrix(g(2), Bidegree::new(6, 4), &cfg);
        assert_eq!(top.matrix.cols(), 1);
        assert_eq!(row_reduce(&top.matrix).rank, 1);
        let off = pairing_matrix(g(2), Bidegree::new(8, 6), &cfg);
        assert_eq!(off.matrix.cols(), 0);
    }

    #[test]
    fn pair_sign_matches_multiplication() {
        // sorting psi_S into adjacent pairs must agree with multiplying the pairs
        for genus in 2..=4 {
            let gg = g(genus);
            let n = genus;
            for low in 0u32..(1 << n) {
                let mut prod = Element::one(gg);
                for i in 0..n {
                    if low & (1 << i) != 0 {
                        let pair =
                            Element::monomial(gg, Monomial::new(0, 0, (1 << i) | (1 << (i + n))));
                        prod = &prod * &pair;
                    }
                }
                let mask = low | (low << n);
                let c = prod.coeff(&Monomial::new(0, 0, mask));
                let neg = pair_sign(gg, mask).unwrap();
                assert_eq!(c, if neg { q(-1) } else { q(1) });
            }
            assert_eq!(pair_sign(gg, 0b1), None);
        }
    }

    #[test]
    fn virasoro_and_monodromy_agree() {
        for genus in 2..=5 {
            let gg = g(genus);
            for b in [q(1), qfrac(7, 3)] {
                let cfg = IntegralConfig::new(gg, b).unwrap();
                let gamma = Element::gamma(gg);
                for p in 0..genus {
                    let n = genus - 1 - p;
                    let ab = Element::monomial(gg, Monomial::new(n, n, 0));
                    let direct = graded_integral(&(&ab * &gamma.pow(p)), &cfg).unwrap();
                    assert_eq!(direct, cfg.gamma_line(p));
                    if p + 1 < genus {
                        // (g-p) I(n, n, p) = -2n I(n-1, n-1, p+1)
                        let lower = Element::monomial(gg, Monomial::new(n - 1, n - 1, 0));
                        let next = graded_integral(&(&lower * &gamma.pow(p + 1)), &cfg).unwrap();
                        assert_eq!(q((genus - p) as i64) * direct, q(-2 * n as i64) * next);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishes_off_top() {
        let cfg = IntegralConfig::unit(g(3));
        for (bd, ms) in crate::algebra::monomials_up_to(g(3), 14) {
            if bd != g(3).top() {
                assert!(ms.iter().all(|m| cfg.monomial_value(*m).is_zero()));
            }
        }
    }
}
