//! Primitive classes, Mumford relations and the graded relation ideals.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::algebra::{sigma_from_pic, subsets, Bidegree, Element, Genus, Monomial, PicClass};
use crate::error::{Error, Result};
use crate::linalg::{row_reduce, QMatrix};
use crate::scalar::{binomial, factorial, falling, pow2, q, qint, sign, QScalar};
use crate::series::{phi_coefficients, InvariantPoly};

/// A basis of the degree-`l` primitive classes, the kernel of `theta^(g-l+1)`.
#[derive(Clone, Debug)]
pub struct PrimBasis {
    pub genus: Genus,
    pub l: u32,
    pub classes: Vec<PicClass>,
}

/// `C(2g, l) - C(2g, l-2)`.
pub fn prim_dimension(g: Genus, l: u32) -> u64 {
    let n = g.num_psi() as i64;
    let l = l as i64;
    let v = binomial(n, l) - binomial(n, l - 2);
    u64::try_from(v).expect("dimension is nonnegative")
}

/// Exact kernel of multiplication by `theta^(g-l+1)` on degree-`l` classes.
///
/// Multiplying by `theta` only adds whole pairs `eps_i eps_{i+g}`, so the set of
/// indices whose partner is absent is preserved and the map splits into blocks,
/// one per such set; each block is reduced separately.
pub fn prim_basis(g: Genus, l: u32) -> Result<PrimBasis> {
    let n = g.get();
    if l > n {
        return Err(Error::Usage(format!(
            "primitive degree {l} exceeds genus {n}"
        )));
    }
    let k = n - l + 1;
    let theta_k = PicClass::theta(g).pow(k);
    let mut blocks: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for mask in subsets(g.num_psi(), l) {
        let low = mask & ((1 << n) - 1);
        let high = mask >> n;
        let singles = mask & !((low & high) | ((low & high) << n));
        blocks.entry(singles).or_default().push(mask);
    }
    let mut classes = Vec::new();
    for domain in blocks.values() {
        let images: Vec<PicClass> = domain
            .iter()
            .map(|m| &PicClass::basis(g, *m) * &theta_k)
            .collect();
        let mut targets: Vec<u32> = images
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| *m))
            .collect();
        targets.sort_unstable();
        targets.dedup();
        let mut mat = QMatrix::zeros(targets.len(), domain.len());
        for (c, img) in images.iter().enumerate() {
            for (m, v) in img.terms() {
                let r = targets.binary_search(m).expect("target collected above");
                mat.set(r, c, v.clone());
            }
        }
        for v in row_reduce(&mat).kernel_basis {
            let mut p = PicClass::zero(g);
            for (m, c) in domain.iter().zip(v) {
                p.add_term(*m, c);
            }
            classes.push(p);
        }
    }
    Ok(PrimBasis {
        genus: g,
        l,
        classes,
    })
}

/// Caches primitive bases and Mumford series coefficients for one genus.
#[derive(Debug)]
pub struct RelationContext {
    genus: Genus,
    prims: Mutex<BTreeMap<u32, Arc<PrimBasis>>>,
    phis: Mutex<BTreeMap<i64, Arc<Vec<InvariantPoly>>>>,
}

impl RelationContext {
    pub fn new(genus: Genus) -> Self {
        RelationContext {
            genus,
            prims: Mutex::new(BTreeMap::new()),
            phis: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn prim(&self, l: u32) -> Result<Arc<PrimBasis>> {
        if let Some(p) = self.prims.lock().expect("poisoned").get(&l) {
            return Ok(p.clone());
        }
        let p = Arc::new(prim_basis(self.genus, l)?);
        self.prims.lock().expect("poisoned").insert(l, p.clone());
        Ok(p)
    }

    /// `c_{d,0} .. c_{d,n}`, recomputed with a larger order when needed.
    pub fn phi(&self, d: i64, n: usize) -> Arc<Vec<InvariantPoly>> {
        let mut cache = self.phis.lock().expect("poisoned");
        if let Some(v) = cache.get(&d) {
            if v.len() > n {
                return v.clone();
            }
        }
        let v = Arc::new(phi_coefficients(
            d,
            self.genus,
            n.max(8 * self.genus.get() as usize),
        ));
        cache.insert(d, v.clone());
        v
    }
}

fn sig_degree(sig: &PicClass) -> Result<u32> {
    if sig.is_zero() {
        return Ok(0);
    }
    sig.degree()
        .ok_or_else(|| Error::Usage("primitive class must be homogeneous".into()))
}

fn check_genus(ctx: &RelationContext, sig: &PicClass) -> Result<()> {
    if sig.genus() != ctx.genus {
        return Err(Error::Config(
            "class and context have different genus".into(),
        ));
    }
    Ok(())
}

/// The invariant part of the Mumford relation for `theta^m sigma_l`, i.e.
/// `(-1)^l 2^(2g-m-k) [t^(k+m-g-l)] Phi_d(t) sum_j C(m,j) (g-l-j)_{m-j}
/// (1 - beta t^2)^(m-j) (-2 gamma t^3)^j`.
fn mumford_invariant(ctx: &RelationContext, d: i64, k: i64, m: i64, l: i64) -> InvariantPoly {
    let g = ctx.genus;
    let gi = g.get() as i64;
    let n = k + m - gi - l;
    let mut out = InvariantPoly::zero(g);
    if n < 0 {
        return out;
    }
    let phi = ctx.phi(d, n as usize);
    for j in 0..=m {
        let cj = qint(binomial(m, j) * falling(gi - l - j, (m - j) as u64)) * q(-2).pow(j as i32);
        if cj.is_zero() {
            continue;
        }
        for i in 0..=(m - j) {
            let idx = n - 3 * j - 2 * i;
            if idx < 0 {
                break;
            }
            let c = &cj * qint(binomial(m - j, i)) * sign(i % 2 == 1);
            out = &out + &phi[idx as usize].shift(0, i as u32, j as u32).scale(&c);
        }
    }
    out.scale(&(sign(l % 2 == 1) * pow2(2 * gi - m - k)))
}

pub fn mumford_relation(
    ctx: &RelationContext,
    d: i64,
    k: u32,
    m: u32,
    sig: &PicClass,
) -> Result<Element> {
    check_genus(ctx, sig)?;
    let l = sig_degree(sig)?;
    let inv = mumford_invariant(ctx, d, k as i64, m as i64, l as i64);
    Ok(&inv.to_element() * &sigma_from_pic(sig))
}

type RelationPhi<'a> = (&'a RelationContext, i64);

/// `(-1)^l 2^(2g-m-k) m!/(g-l-m)! sum (g-l-c)! c_{d,a} beta^b/b! (2 gamma)^c/c!`
/// over `b + c = m`, `a + b + 2c = k - g - l`. Without a Mumford series, `c_{d,a}`
/// is replaced by `alpha^a / a!` and the leading constant is dropped.
fn closed_form_invariant(
    g: Genus,
    phi: Option<&RelationPhi>,
    k: i64,
    m: i64,
    l: i64,
) -> InvariantPoly {
    let gi = g.get() as i64;
    let mut out = InvariantPoly::zero(g);
    if m < 0 || l + m > gi {
        return out;
    }
    let total = k - gi - l;
    let phi = phi.map(|(ctx, d)| ctx.phi(*d, total.max(0) as usize));
    for c in 0..=m {
        let b = m - c;
        let a = total - b - 2 * c;
        if a < 0 {
            continue;
        }
        let coeff = qint(factorial((gi - l - c) as u64)) / qint(factorial(b as u64)) * pow2(c)
            / qint(factorial(c as u64));
        let base = match &phi {
            Some(p) => p[a as usize].clone(),
            None => InvariantPoly::term(g, (a as u32, 0, 0), qint(factorial(a as u64)).recip()),
        };
        out = &out + &base.shift(0, b as u32, c as u32).scale(&coeff);
    }
    if phi.is_none() {
        out
    } else {
        let lead = sign(l % 2 == 1) * pow2(2 * gi - m - k) * qint(factorial(m as u64))
            / qint(factorial((gi - l - m) as u64));
        out.scale(&lead)
    }
}

/// The constant `(-1)^l 2^(2g-m-k) m!/(g-l-m)!` relating the top Chern part of a
/// modified relation to the corresponding generator.
pub fn modified_leading_constant(g: Genus, k: u32, m: u32, l: u32) -> QScalar {
    let gi = g.get() as i64;
    let (k, m, l) = (k as i64, m as i64, l as i64);
    sign(l % 2 == 1) * pow2(2 * gi - m - k) * qint(factorial(m as u64))
        / qint(factorial((gi - l - m) as u64))
}

/// The modified Mumford relation, computed both as the alternating sum of
/// Mumford relations and from the closed form; the two must agree.
pub fn modified_mumford(
    ctx: &RelationContext,
    d: i64,
    k: u32,
    m: u32,
    sig: &PicClass,
) -> Result<Element> {
    check_genus(ctx, sig)?;
    let l = sig_degree(sig)?;
    let gi = ctx.genus.get() as i64;
    if l + m > ctx.genus.get() {
        return Err(Error::Usage(format!(
            "l + m = {} exceeds genus {gi}",
            l + m
        )));
    }
    let sigma = sigma_from_pic(sig);
    let (k, m, l) = (k as i64, m as i64, l as i64);
    let mut alternating = InvariantPoly::zero(ctx.genus);
    for s in 0..=m {
        let c = qint(binomial(m, s) * falling(gi - l - s, (m - s) as u64)) * sign(s % 2 == 1);
        alternating = &alternating + &mumford_invariant(ctx, d, k + m - s, s, l).scale(&c);
    }
    let closed = closed_form_invariant(ctx.genus, Some(&(ctx, d)), k, m, l);
    let via_sum = &alternating.to_element() * &sigma;
    let via_closed = &closed.to_element() * &sigma;
    if via_sum != via_closed {
        return Err(Error::Inconsistent(format!(
            "modified relation d={d} k={k} m={m} l={l}: alternating sum {via_sum} != closed form {via_closed}"
        )));
    }
    Ok(via_closed)
}

/// `R_{k,m,l}` without the primitive factor; zero for empty index ranges.
pub(crate) fn rel_invariant(g: Genus, k: i64, m: i64, l: i64) -> InvariantPoly {
    closed_form_invariant(g, None, k, m, l)
}

/// `R_{k,m,l} sigma_l = sum (g-l-c)! alpha^a/a! beta^b/b! (2 gamma)^c/c! sigma_l`.
pub fn rel_generator(g: Genus, k: u32, m: u32, sig: &PicClass) -> Result<Element> {
    if sig.genus() != g {
        return Err(Error::Config("class has a different genus".into()));
    }
    let l = sig_degree(sig)?;
    if l + m > g.get() {
        return Err(Error::Usage(format!("l + m = {} exceeds genus {g}", l + m)));
    }
    if k < g.get() + l {
        return Err(Error::Usage(format!(
            "k = {k} is below g + l = {}",
            g.get() + l
        )));
    }
    let inv = rel_invariant(g, k as i64, m as i64, l as i64);
    Ok(&inv.to_element() * &sigma_from_pic(sig))
}

/// Index of one spanning element `beta^ell R_{k,m,l} sigma` of an ideal slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationKey {
    pub beta_power: u32,
    pub k: u32,
    pub m: u32,
    pub l: u32,
    pub prim_index: usize,
}

/// All keys landing in `bd` for the ideal of level `d`, in (ell, k, m, l, index) order.
pub fn ideal_keys(ctx: &RelationContext, d: u32, bd: Bidegree) -> Result<Vec<RelationKey>> {
    let g = ctx.genus.get();
    let mut keys = Vec::new();
    if bd.chern % 2 == 1 || bd.coh < bd.chern {
        return Ok(keys);
    }
    let half = bd.chern / 2;
    for ell in 0..=half {
        // chern = 2k - 2g + 2 ell
        let k = half + g - ell;
        if k < 2 * g + 2 * d {
            continue;
        }
        let Some(rest) = (bd.coh - bd.chern).checked_sub(2 * ell) else {
            continue;
        };
        // rest = 2m + l
        for m in 0..=rest / 2 {
            let l = rest - 2 * m;
            if l + m > g {
                continue;
            }
            let prim = ctx.prim(l)?;
            for i in 0..prim.classes.len() {
                keys.push(RelationKey {
                    beta_power: ell,
                    k,
                    m,
                    l,
                    prim_index: i,
                });
            }
        }
    }
    Ok(keys)
}

pub fn key_element(ctx: &RelationContext, key: &RelationKey) -> Result<Element> {
    let prim = ctx.prim(key.l)?;
    let r = rel_generator(ctx.genus, key.k, key.m, &prim.classes[key.prim_index])?;
    let beta = Element::monomial(ctx.genus, Monomial::new(0, key.beta_power, 0));
    Ok(&beta * &r)
}

/// The spanning family of the level-`d` graded ideal in bidegree `bd`, checked
/// to be linearly independent.
pub fn ideal_slice(ctx: &RelationContext, d: u32, bd: Bidegree) -> Result<Vec<Element>> {
    let keys = ideal_keys(ctx, d, bd)?;
    let elems: Vec<Element> = keys
        .iter()
        .map(|k| key_element(ctx, k))
        .collect::<Result<_>>()?;
    let basis = crate::algebra::monomial_basis(ctx.genus, bd);
    let rows: Vec<Vec<QScalar>> = elems
        .iter()
        .map(|e| e.coords(&basis))
        .collect::<Result<_>>()?;
    let rank = row_reduce(&QMatrix::from_rows(basis.len(), rows)?).rank;
    if rank != elems.len() {
        return Err(Error::Inconsistent(format!(
            "ideal family at {bd} (d = {d}) has {} elements but rank {rank}",
            elems.len()
        )));
    }
    Ok(elems)
}
