//! Bigraded dimension tables of the associated graded ring.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{bidegrees, monomial_basis, Bidegree, Genus};
use crate::error::{Error, Result};
use crate::integral::{pairing_matrix, IntegralConfig};
use crate::linalg::rank;
use crate::relations::{ideal_slice, RelationContext};

/// Dimensions `dim gr_chern H^coh`, keeping only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTable {
    pub genus: Genus,
    pub d: u32,
    pub max_coh: u32,
    dims: BTreeMap<Bidegree, u64>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    genus: u32,
    d: u32,
    #[serde(rename = "maxCoh")]
    max_coh: u32,
    table: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    coh: u32,
    chern: u32,
    dim: u64,
}

impl OmegaTable {
    pub fn new(genus: Genus, d: u32, max_coh: u32) -> Self {
        OmegaTable {
            genus,
            d,
            max_coh,
            dims: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, bd: Bidegree, dim: u64) {
        if dim == 0 {
            self.dims.remove(&bd);
        } else {
            self.dims.insert(bd, dim);
        }
    }

    pub fn get(&self, bd: Bidegree) -> u64 {
        self.dims.get(&bd).copied().unwrap_or(0)
    }

    /// Nonzero entries in (coh, chern) order.
    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, u64)> + '_ {
        self.dims.iter().map(|(b, d)| (*b, *d))
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn to_json(&self) -> String {
        let j = TableJson {
            genus: self.genus.get(),
            d: self.d,
            max_coh: self.max_coh,
            table: self
                .entries()
                .map(|(b, dim)| EntryJson {
                    coh: b.coh,
                    chern: b.chern,
                    dim,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = OmegaTable::new(Genus::new(j.genus)?, j.d, j.max_coh);
        for e in j.table {
            t.set(Bidegree::new(e.coh, e.chern), e.dim);
        }
        Ok(t)
    }
}

/// `dim = |slice| - rank(ideal slice)` for every bidegree with `coh <= max_coh`.
pub fn omega_from_ideal(ctx: &RelationContext, d: u32, max_coh: u32) -> Result<OmegaTable> {
    let g = ctx.genus();
    let dims: Vec<(Bidegree, u64)> = bidegrees(g, max_coh)
        .into_par_iter()
        .map(|bd| {
            let size = monomial_basis(g, bd).len();
            let ideal = ideal_slice(ctx, d, bd)?;
            Ok((bd, (size - ideal.len()) as u64))
        })
        .collect::<Result<_>>()?;
    let mut t = OmegaTable::new(g, d, max_coh);
    for (bd, n) in dims {
        t.set(bd, n);
    }
    Ok(t)
}

/// `dim = rank(pairing matrix)` for every bidegree up to the top degree.
pub fn omega_from_pairing(cfg: &IntegralConfig) -> OmegaTable {
    let g = cfg.genus();
    let top = g.top().coh;
    let dims: Vec<(Bidegree, u64)> = bidegrees(g, top)
        .into_par_iter()
        .map(|bd| (bd, rank(&pairing_matrix(g, bd, cfg).matrix) as u64))
        .collect();
    let mut t = OmegaTable::new(g, 0, top);
    for (bd, n) in dims {
        t.set(bd, n);
    }
    t
}

/// Nonzero entries with `coh >= 2g-2` and `chern < coh - (2g-2)`, which must
/// not occur in a level-0 table.
pub fn vanishing_violations(table: &OmegaTable) -> Vec<(Bidegree, u64)> {
    let shift = 2 * (table.genus.get() - 1);
    table
        .entries()
        .filter(|(b, _)| b.coh >= shift && b.chern < b.coh - shift)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn genus_two_expected() -> OmegaTable {
        let mut t = OmegaTable::new(g(2), 0, 6);
        for (coh, chern, n) in [(0, 0, 1), (2, 2, 1), (3, 2, 4), (4, 2, 1), (6, 4, 1)] {
            t.set(Bidegree::new(coh, chern), n);
        }
        t
    }

    #[test]
    fn genus_two_tables() {
        let ctx = RelationContext::new(g(2));
        let ideal = omega_from_ideal(&ctx, 0, 6).unwrap();
        assert_eq!(ideal, genus_two_expected());
        let pairing = omega_from_pairing(&IntegralConfig::unit(g(2)));
        assert_eq!(pairing, genus_two_expected());
    }

    #[test]
    fn genus_three_pairing_is_symmetric() {
        let t = omega_from_pairing(&IntegralConfig::unit(g(3)));
        for (b, n) in t.entries() {
            assert_eq!(t.get(Bidegree::new(12 - b.coh, 8 - b.chern)), n);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = genus_two_expected();
        let s = t.to_json();
        assert!(s.contains("\"maxCoh\": 6"));
        assert_eq!(OmegaTable::from_json(&s).unwrap(), t);
        assert!(OmegaTable::from_json("{\"genus\": 1}").is_err());
    }

    #[test]
    fn vanishing_corollary() {
        let t = genus_two_expected();
        assert!(vanishing_violations(&t).is_empty());
        let t3 = omega_from_pairing(&IntegralConfig::unit(g(3)));
        assert!(vanishing_violations(&t3).is_empty());
        let mut bad = genus_two_expected();
        bad.set(Bidegree::new(6, 2), 1);
        assert_eq!(vanishing_violations(&bad), vec![(Bidegree::new(6, 2), 1)]);
    }
}
