//! The two commuting sl2-triples acting on the descendent algebra by
//! differential operators, and the checks built on them.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{
    bidegrees, monomial_basis, monomials_up_to, sigma_from_pic, Bidegree, Element, Genus, Monomial,
    Var,
};
use crate::error::{Error, Result};
use crate::integral::{graded_pairing, IntegralConfig};
use crate::linalg::Span;
use crate::relations::{ideal_slice, rel_generator, rel_invariant, RelationContext};
use crate::report::Report;
use crate::scalar::{q, qfrac, QScalar};

/// A linear operator on the descendent algebra built from multiplication and
/// differentiation by generators.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorSpec {
    Mul(Var),
    Partial(Var),
    Scalar(QScalar),
    Sum(Vec<OperatorSpec>),
    Scale(QScalar, Box<OperatorSpec>),
    /// Applied right to left.
    Compose(Vec<OperatorSpec>),
}

use OperatorSpec::*;

impl OperatorSpec {
    pub fn scale(self, c: QScalar) -> OperatorSpec {
        Scale(c, Box::new(self))
    }

    /// `Some(true)` for odd, `Some(false)` for even, `None` for mixed sums.
    pub fn parity(&self) -> Option<bool> {
        match self {
            Mul(v) | Partial(v) => Some(v.is_odd()),
            Scalar(_) => Some(false),
            Scale(_, op) => op.parity(),
            Sum(ops) => {
                let mut it = ops.iter().map(OperatorSpec::parity);
                let first = it.next().unwrap_or(Some(false))?;
                it.all(|p| p == Some(first)).then_some(first)
            }
            Compose(ops) => ops
                .iter()
                .try_fold(false, |acc, op| Some(acc ^ op.parity()?)),
        }
    }

    /// The `(coh, chern)` shift of a bihomogeneous operator.
    pub fn shift(&self) -> Option<(i32, i32)> {
        let gen = |v: &Var| match v {
            Var::Alpha => (2, 2),
            Var::Beta => (4, 2),
            Var::Psi(_) => (3, 2),
        };
        match self {
            Mul(v) => Some(gen(v)),
            Partial(v) => {
                let (a, b) = gen(v);
                Some((-a, -b))
            }
            Scalar(_) => Some((0, 0)),
            Scale(_, op) => op.shift(),
            Sum(ops) => {
                let mut it = ops.iter().map(OperatorSpec::shift);
                let first = it.next().unwrap_or(Some((0, 0)))?;
                it.all(|s| s == Some(first)).then_some(first)
            }
            Compose(ops) => ops.iter().try_fold((0, 0), |(a, b), op| {
                let (c, d) = op.shift()?;
                Some((a + c, b + d))
            }),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mul(v) => write!(f, "{v}"),
            Partial(v) => write!(f, "d/d{v}"),
            Scalar(c) => write!(f, "{c}"),
            Scale(c, op) => write!(f, "{c}*({op})"),
            Sum(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Compose(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "{}", parts.join(" . "))
            }
        }
    }
}

pub fn apply(op: &OperatorSpec, x: &Element) -> Result<Element> {
    let g = x.genus();
    Ok(match op {
        Mul(v) => Element::var(g, *v)?.checked_mul(x)?,
        Partial(v) => x.derive(*v)?,
        Scalar(c) => x.scale(c),
        Scale(c, inner) => apply(inner, x)?.scale(c),
        Sum(ops) => {
            let mut acc = Element::zero(g);
            for o in ops {
                acc = acc.checked_add(&apply(o, x)?)?;
            }
            acc
        }
        Compose(ops) => {
            let mut acc = x.clone();
            for o in ops.iter().rev() {
                acc = apply(o, &acc)?;
            }
            acc
        }
    })
}

/// The super-commutator `ab - (-1)^(|a||b|) ba`; mixed-parity operators are treated as even.
pub fn commutator(a: &OperatorSpec, b: &OperatorSpec) -> OperatorSpec {
    let both_odd = a.parity().unwrap_or(false) && b.parity().unwrap_or(false);
    let s = if both_odd { q(1) } else { q(-1) };
    Sum(vec![
        Compose(vec![a.clone(), b.clone()]),
        Compose(vec![b.clone(), a.clone()]).scale(s),
    ])
}

/// `sum_{i=1}^{2g} psi_i d/dpsi_i`.
pub fn psi_euler(g: Genus) -> OperatorSpec {
    Sum((1..=g.num_psi())
        .map(|i| Compose(vec![Mul(Var::Psi(i)), Partial(Var::Psi(i))]))
        .collect())
}

/// `sum_{i=1}^{g} d/dpsi_i d/dpsi_{i+g}`.
pub fn pair_laplacian(g: Genus) -> OperatorSpec {
    let n = g.get();
    Sum((1..=n)
        .map(|i| Compose(vec![Partial(Var::Psi(i)), Partial(Var::Psi(i + n))]))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Alpha,
    Beta,
    Diagonal,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Diagonal => "diagonal",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: OperatorSpec,
    pub h: OperatorSpec,
    pub f: OperatorSpec,
}

fn single_family(x: Var, y: Var, g: Genus, c: &QScalar) -> Sl2Triple {
    let e = Mul(x);
    let h = Sum(vec![
        Compose(vec![Mul(x), Partial(x)]).scale(q(2)),
        psi_euler(g),
        Scalar(-c),
    ]);
    let f = Sum(vec![
        Compose(vec![Mul(x), Partial(x), Partial(x)]).scale(q(-1)),
        Partial(x).scale(c.clone()),
        Compose(vec![Partial(x), psi_euler(g)]).scale(q(-1)),
        Compose(vec![Mul(y), pair_laplacian(g)]).scale(qfrac(-1, 4)),
    ]);
    Sl2Triple { e, h, f }
}

/// The triple with `c` in place of `g + 2d - 1`.
pub fn make_sl2_with_constant(family: Family, g: Genus, c: &QScalar) -> Sl2Triple {
    match family {
        Family::Alpha => single_family(Var::Alpha, Var::Beta, g, c),
        Family::Beta => single_family(Var::Beta, Var::Alpha, g, c),
        Family::Diagonal => {
            let a = single_family(Var::Alpha, Var::Beta, g, c);
            let b = single_family(Var::Beta, Var::Alpha, g, c);
            Sl2Triple {
                e: Sum(vec![a.e, b.e]),
                h: Sum(vec![a.h, b.h]),
                f: Sum(vec![a.f, b.f]),
            }
        }
    }
}

pub fn make_sl2(family: Family, d: u32, g: Genus) -> Sl2Triple {
    make_sl2_with_constant(family, g, &q(g.get() as i64 + 2 * d as i64 - 1))
}

/// An operator identity `lhs = rhs` to be checked on monomials.
#[derive(Clone, Debug)]
pub struct Identity {
    pub label: String,
    pub lhs: OperatorSpec,
    pub rhs: OperatorSpec,
}

pub fn triple_identities(t: &Sl2Triple, name: &str) -> Vec<Identity> {
    vec![
        Identity {
            label: format!("[e,f]=h ({name})"),
            lhs: commutator(&t.e, &t.f),
            rhs: t.h.clone(),
        },
        Identity {
            label: format!("[h,e]=2e ({name})"),
            lhs: commutator(&t.h, &t.e),
            rhs: t.e.clone().scale(q(2)),
        },
        Identity {
            label: format!("[h,f]=-2f ({name})"),
            lhs: commutator(&t.h, &t.f),
            rhs: t.f.clone().scale(q(-2)),
        },
    ]
}

pub fn cross_identities(a: &Sl2Triple, b: &Sl2Triple) -> Vec<Identity> {
    let names = ["e", "h", "f"];
    let aops = [&a.e, &a.h, &a.f];
    let bops = [&b.e, &b.h, &b.f];
    let mut out = Vec::new();
    for (i, x) in aops.iter().enumerate() {
        for (j, y) in bops.iter().enumerate() {
            out.push(Identity {
                label: format!("[{}_alpha,{}_beta]=0", names[i], names[j]),
                lhs: commutator(x, y),
                rhs: Scalar(q(0)),
            });
        }
    }
    out
}

/// Evaluates every identity on every monomial with `coh <= max_coh`.
pub fn check_identities(
    g: Genus,
    max_coh: u32,
    identities: &[Identity],
    report: &mut Report,
) -> Result<()> {
    let monomials: Vec<Monomial> = monomials_up_to(g, max_coh)
        .into_iter()
        .flat_map(|(_, ms)| ms)
        .collect();
    for id in identities {
        let results: Vec<(Monomial, Element, Element)> = monomials
            .par_iter()
            .map(|m| {
                let x = Element::monomial(g, *m);
                Ok((*m, apply(&id.lhs, &x)?, apply(&id.rhs, &x)?))
            })
            .collect::<Result<_>>()?;
        for (m, l, r) in results {
            report.record(
                l == r,
                || format!("{} on {}", id.label, Element::monomial(g, m)),
                || r.to_string(),
                || l.to_string(),
            );
        }
    }
    Ok(())
}

/// The sl2 relations of each family and the diagonal, and the vanishing of
/// all nine cross-commutators.
pub fn check_sl2_relations(g: Genus, d: u32, max_coh: u32) -> Result<Report> {
    let a = make_sl2(Family::Alpha, d, g);
    let b = make_sl2(Family::Beta, d, g);
    let diag = make_sl2(Family::Diagonal, d, g);
    let mut ids = triple_identities(&a, "alpha");
    ids.extend(triple_identities(&b, "beta"));
    ids.extend(triple_identities(&diag, "diagonal"));
    ids.extend(cross_identities(&a, &b));
    let mut report = Report::check("relations", g.get(), d);
    check_identities(g, max_coh, &ids, &mut report)?;
    Ok(report)
}

/// `h(D) = (chern(D) - (2g-2)) D` for the diagonal level-0 triple.
pub fn check_diagonal_grading(g: Genus, max_coh: u32) -> Result<Report> {
    let h = make_sl2(Family::Diagonal, 0, g).h;
    let mut report = Report::check("diagonal-grading", g.get(), 0);
    for (bd, ms) in monomials_up_to(g, max_coh) {
        let c = q(bd.chern as i64 - 2 * (g.get() as i64 - 1));
        for m in ms {
            let x = Element::monomial(g, m);
            let got = apply(&h, &x)?;
            report.expect_eq(|| format!("h on {x}"), &x.scale(&c), &got);
        }
    }
    Ok(report)
}

/// `<F D, D'> = s <D, F D'>` for every pair of monomials whose product with
/// the shift of `F` reaches the top bidegree; `s = -1` when `anti`.
pub fn check_operator_adjoint(
    g: Genus,
    cfg: &IntegralConfig,
    op: &OperatorSpec,
    anti: bool,
    label: &str,
    report: &mut Report,
) -> Result<()> {
    let (dc, dh) = op
        .shift()
        .ok_or_else(|| Error::Usage(format!("{label} is not bihomogeneous")))?;
    let top = g.top();
    let mut images: BTreeMap<Bidegree, Vec<(Element, Element)>> = BTreeMap::new();
    let mut image_of = |bd: Bidegree| -> Result<Vec<(Element, Element)>> {
        if let Some(v) = images.get(&bd) {
            return Ok(v.clone());
        }
        let v: Vec<(Element, Element)> = monomial_basis(g, bd)
            .into_par_iter()
            .map(|m| {
                let x = Element::monomial(g, m);
                let fx = apply(op, &x)?;
                Ok((x, fx))
            })
            .collect::<Result<_>>()?;
        images.insert(bd, v.clone());
        Ok(v)
    };
    let sign = if anti { q(-1) } else { q(1) };
    for bd1 in bidegrees(g, top.coh) {
        let Some(bd2) = bd1.offset(dc, dh).and_then(|t| t.complement(g)) else {
            continue;
        };
        let left = image_of(bd1)?;
        let right = image_of(bd2)?;
        let cases: Vec<(String, QScalar, QScalar)> = left
            .par_iter()
            .flat_map_iter(|(x, fx)| {
                right.iter().map(move |(y, fy)| {
                    let l = graded_pairing(fx, y, cfg)?;
                    let r = graded_pairing(x, fy, cfg)?;
                    Ok((format!("{label}: <F({x}), {y}>"), l, r))
                })
            })
            .collect::<Result<_>>()?;
        for (loc, l, r) in cases {
            let r = &r * &sign;
            report.record(l == r, || loc, || r.to_string(), || l.to_string());
        }
    }
    Ok(())
}

/// Self-adjointness of `e` and `f` and anti-self-adjointness of `h` for both
/// level-0 families.
pub fn check_adjointness(g: Genus, cfg: &IntegralConfig) -> Result<Report> {
    let mut report = Report::check("adjoint", g.get(), 0);
    for family in [Family::Alpha, Family::Beta] {
        let t = make_sl2(family, 0, g);
        check_operator_adjoint(g, cfg, &t.e, false, &format!("e_{family}"), &mut report)?;
        check_operator_adjoint(g, cfg, &t.f, false, &format!("f_{family}"), &mut report)?;
        check_operator_adjoint(g, cfg, &t.h, true, &format!("h_{family}"), &mut report)?;
    }
    Ok(report)
}

/// `f_alpha^d R_{k,m,l} sigma = (2g+2d-k) R_{k-1,m,l} sigma` and
/// `f_beta^d R_{k,m,l} sigma = (2g+2d-k) R_{k-1,m-1,l} sigma`.
pub fn check_descent(ctx: &RelationContext, d: u32, k_max: u32) -> Result<Report> {
    let g = ctx.genus();
    let gi = g.get();
    let fa = make_sl2(Family::Alpha, d, g).f;
    let fb = make_sl2(Family::Beta, d, g).f;
    let mut report = Report::check("descent", gi, d);
    let mut jobs = Vec::new();
    for k in (2 * gi + 2 * d)..=k_max {
        for l in 0..=gi {
            let prim = ctx.prim(l)?;
            for m in 0..=(gi - l) {
                for (i, sig) in prim.classes.iter().enumerate() {
                    jobs.push((k, m, l, i, sig.clone()));
                }
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(k, m, l, i, sig)| {
            let r = rel_generator(g, *k, *m, sig)?;
            let c = q(2 * gi as i64 + 2 * d as i64 - *k as i64);
            let sigma = sigma_from_pic(sig);
            let (k, m, l) = (*k as i64, *m as i64, *l as i64);
            let ra = &rel_invariant(g, k - 1, m, l).to_element() * &sigma;
            let rb = &rel_invariant(g, k - 1, m - 1, l).to_element() * &sigma;
            Ok((
                format!("k={k} m={m} l={l} sigma#{i}"),
                apply(&fa, &r)?,
                ra.scale(&c),
                apply(&fb, &r)?,
                rb.scale(&c),
            ))
        })
        .collect::<Result<_>>()?;
    for (loc, la, ea, lb, eb) in results {
        report.expect_eq(|| format!("f_alpha {loc}"), &ea, &la);
        report.expect_eq(|| format!("f_beta {loc}"), &eb, &lb);
    }
    Ok(report)
}

/// `f_alpha^d` and `f_beta^d` map each level-`d` ideal slice with `coh <= max_coh`
/// into the ideal slice of the target bidegree.
pub fn check_ideal_preservation(ctx: &RelationContext, d: u32, max_coh: u32) -> Result<Report> {
    let g = ctx.genus();
    let mut report = Report::check("ideal-preservation", g.get(), d);
    for family in [Family::Alpha, Family::Beta] {
        let f = make_sl2(family, d, g).f;
        let (dc, dh) = f.shift().expect("f is bihomogeneous");
        for bd in bidegrees(g, max_coh) {
            let Some(target) = bd.offset(dc, dh) else {
                continue;
            };
            let basis = monomial_basis(g, target);
            let mut span = Span::new(basis.len());
            for e in ideal_slice(ctx, d, target)? {
                span.insert(&e.coords(&basis)?);
            }
            for x in ideal_slice(ctx, d, bd)? {
                let fx = apply(&f, &x)?;
                let inside = span.contains(&fx.coords(&basis)?);
                report.record(
                    inside,
                    || format!("f_{family} on ideal element at {bd}"),
                    || "element of the target ideal slice".into(),
                    || fx.to_string(),
                );
            }
        }
    }
    Ok(report)
}

/// On `alpha^a beta^b gamma^c`: `sum psi_i d/dpsi_i = 2 gamma d/dgamma` and
/// `sum d/dpsi_i d/dpsi_{i+g} = -2 gamma d^2/dgamma^2 + 2g d/dgamma`.
pub fn check_invariant_subring(g: Genus, max_ab: u32) -> Result<Report> {
    let gi = g.get() as i64;
    let mut report = Report::check("invariant-subring", g.get(), 0);
    let gamma = Element::gamma(g);
    let euler = psi_euler(g);
    let lap = pair_laplacian(g);
    for a in 0..=max_ab {
        for b in 0..=max_ab {
            let ab = Element::monomial(g, Monomial::new(a, b, 0));
            for c in 0..=g.get() {
                let ci = c as i64;
                let x = &ab * &gamma.pow(c);
                let lower = if c == 0 {
                    Element::zero(g)
                } else {
                    &ab * &gamma.pow(c - 1)
                };
                let loc = format!("alpha^{a} beta^{b} gamma^{c}");
                report.expect_eq(
                    || format!("euler on {loc}"),
                    &x.scale(&q(2 * ci)),
                    &apply(&euler, &x)?,
                );
                let expect = lower.scale(&q(-2 * ci * (ci - 1) + 2 * gi * ci));
                report.expect_eq(|| format!("laplacian on {loc}"), &expect, &apply(&lap, &x)?);
            }
        }
    }
    Ok(report)
}

/// Dimensions of the closure restricted to `coh <= 6g-6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTable {
    pub genus: Genus,
    pub buffer: u32,
    pub dims: BTreeMap<Bidegree, usize>,
}

/// The smallest family of subspaces `J(bd)`, `coh <= 6g-6+buffer`, containing every
/// monomial of Chern degree above `4g-4` and closed under multiplication by the
/// generators and under the bihomogeneous components of the diagonal `f`.
pub fn sl2_closure(g: Genus, buffer: u32) -> Result<ClosureTable> {
    let window = g.top().coh + buffer;
    let chern_top = g.top().chern;
    let f = make_sl2(Family::Diagonal, 0, g).f;
    let gens: Vec<Var> = [Var::Alpha, Var::Beta]
        .into_iter()
        .chain((1..=g.num_psi()).map(Var::Psi))
        .collect();
    let mut bases: BTreeMap<Bidegree, Vec<Monomial>> = BTreeMap::new();
    let mut spans: BTreeMap<Bidegree, Span> = BTreeMap::new();
    for (bd, ms) in monomials_up_to(g, window) {
        spans.insert(bd, Span::new(ms.len()));
        bases.insert(bd, ms);
    }
    let mut work: Vec<Element> = Vec::new();
    for (bd, ms) in &bases {
        if bd.chern > chern_top {
            let span = spans.get_mut(bd).expect("span allocated");
            for m in ms {
                let x = Element::monomial(g, *m);
                span.insert(&x.coords(ms)?);
                work.push(x);
            }
        }
    }
    while let Some(x) = work.pop() {
        let mut images = Vec::new();
        for v in &gens {
            images.push(Element::var(g, *v)?.checked_mul(&x)?);
        }
        let fx = apply(&f, &x)?;
        let mut parts: BTreeMap<Bidegree, Element> = BTreeMap::new();
        for (m, c) in fx.terms() {
            parts
                .entry(m.bidegree())
                .or_insert_with(|| Element::zero(g))
                .add_term(*m, c.clone());
        }
        images.extend(parts.into_values());
        for y in images {
            let Some(bd) = y.bidegree() else {
                continue;
            };
            let (Some(span), Some(basis)) = (spans.get_mut(&bd), bases.get(&bd)) else {
                continue;
            };
            if span.insert(&y.coords(basis)?) {
                work.push(y);
            }
        }
    }
    let dims = spans
        .into_iter()
        .filter(|(bd, _)| bd.coh <= g.top().coh)
        .map(|(bd, s)| (bd, s.dim()))
        .collect();
    Ok(ClosureTable {
        genus: g,
        buffer,
        dims,
    })
}

/// Runs the closure for each buffer, requires the last two restrictions to
/// agree, and compares the last one with the level-0 ideal slices.
pub fn check_closure(ctx: &RelationContext, buffers: &[u32]) -> Result<Report> {
    let g = ctx.genus();
    let mut report = Report::check("closure", g.get(), 0);
    let tables: Vec<ClosureTable> = buffers
        .iter()
        .map(|b| sl2_closure(g, *b))
        .collect::<Result<_>>()?;
    let Some(last) = tables.last() else {
        return Err(Error::Usage("closure needs at least one buffer".into()));
    };
    if let [.., prev, last] = tables.as_slice() {
        report.record(
            prev.dims == last.dims,
            || format!("buffers {} and {}", prev.buffer, last.buffer),
            || "stable restriction".into(),
            || "restriction still changing; enlarge the buffer".into(),
        );
    }
    for (bd, dim) in &last.dims {
        let ideal = ideal_slice(ctx, 0, *bd)?.len();
        report.expect_eq(|| format!("dim J{bd}"), &ideal, dim);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use proptest::prelude::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn el(genus: u32, s: &str) -> Element {
        parse_element(g(genus), s).unwrap()
    }

    #[test]
    fn single_values() {
        for genus in 2..=4 {
            let gg = g(genus);
            let gi = genus as i64;
            let t0 = make_sl2(Family::Alpha, 0, gg);
            assert!(apply(&t0.f, &Element::one(gg)).unwrap().is_zero());
            let a = Element::alpha(gg);
            assert_eq!(apply(&t0.f, &a).unwrap(), Element::constant(gg, q(gi - 1)));
            assert_eq!(apply(&t0.h, &a).unwrap(), a.scale(&q(3 - gi)));
            let fg = apply(&t0.f, &Element::gamma(gg)).unwrap();
            assert_eq!(fg, Element::beta(gg).scale(&qfrac(-gi, 2)));
            for d in 0..=2 {
                let t = make_sl2(Family::Alpha, d, gg);
                let v = apply(&t.f, &a).unwrap();
                assert_eq!(v, Element::constant(gg, q(gi + 2 * d as i64 - 1)));
            }
        }
        let t = make_sl2(Family::Alpha, 0, g(2));
        assert_eq!(apply(&t.e, &el(2, "beta")).unwrap(), el(2, "alpha beta"));
    }

    #[test]
    fn operator_leibniz() {
        let gg = g(2);
        let t = make_sl2(Family::Alpha, 0, gg);
        let a = Element::alpha(gg);
        let lhs = apply(&t.f, &(&a * &a)).unwrap();
        let bracket = apply(&commutator(&t.f, &Mul(Var::Alpha)), &a).unwrap();
        let rhs = &bracket + &(&a * &apply(&t.f, &a).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shapes() {
        let gg = g(3);
        let t = make_sl2(Family::Alpha, 0, gg);
        assert_eq!(t.f.shift(), Some((-2, -2)));
        assert_eq!(t.e.shift(), Some((2, 2)));
        assert_eq!(t.h.shift(), Some((0, 0)));
        assert_eq!(make_sl2(Family::Beta, 0, gg).f.shift(), Some((-4, -2)));
        assert_eq!(make_sl2(Family::Diagonal, 0, gg).f.shift(), None);
        assert_eq!(t.f.parity(), Some(false));
        assert_eq!(Mul(Var::Psi(1)).parity(), Some(true));
        assert_eq!(Sum(vec![Mul(Var::Psi(1)), Mul(Var::Alpha)]).parity(), None);
    }

    #[test]
    fn relations_hold_and_perturbation_fails() {
        assert!(check_sl2_relations(g(2), 0, 6).unwrap().pass);
        let gg = g(2);
        let good = make_sl2(Family::Alpha, 0, gg);
        let bad = make_sl2_with_constant(Family::Alpha, gg, &q(2));
        let perturbed = Sl2Triple { f: bad.f, ..good };
        let mut r = Report::check("perturbed", 2, 0);
        check_identities(gg, 6, &triple_identities(&perturbed, "alpha"), &mut r).unwrap();
        assert!(!r.pass);
        assert!(r.failures[0].location.starts_with("[e,f]=h"));
    }

    #[test]
    fn literal_bracket_order_fails() {
        let t = make_sl2(Family::Alpha, 0, g(2));
        let x = Element::beta(g(2));
        let eh = apply(&commutator(&t.e, &t.h), &x).unwrap();
        assert_eq!(eh, apply(&t.e, &x).unwrap().scale(&q(-2)));
    }

    #[test]
    fn diagonal_h_counts_chern_degree() {
        assert!(check_diagonal_grading(g(3), 12).unwrap().pass);
    }

    #[test]
    fn adjointness_genus_two() {
        let r = check_adjointness(g(2), &IntegralConfig::unit(g(2))).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert!(r.cases > 0);
        let f1 = make_sl2(Family::Alpha, 1, g(2)).f;
        let mut neg = Report::check("neg", 2, 1);
        check_operator_adjoint(
            g(2),
            &IntegralConfig::unit(g(2)),
            &f1,
            false,
            "f_alpha^1",
            &mut neg,
        )
        .unwrap();
        assert!(!neg.pass);
    }

    #[test]
    fn invariant_subring() {
        for genus in 2..=3 {
            assert!(check_invariant_subring(g(genus), 2).unwrap().pass);
        }
    }

    #[test]
    fn descent_genus_two() {
        let ctx = RelationContext::new(g(2));
        for d in 0..=1 {
            let r = check_descent(&ctx, d, 4 + 2 * d + 4).unwrap();
            assert!(r.pass, "{:?}", r.failures);
        }
    }

    #[test]
    fn ideal_preserved_genus_two() {
        let ctx = RelationContext::new(g(2));
        for d in 0..=1 {
            assert!(check_ideal_preservation(&ctx, d, 10).unwrap().pass);
        }
    }

    #[test]
    fn closure_genus_two() {
        let ctx = RelationContext::new(g(2));
        let r = check_closure(&ctx, &[4, 8]).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        let t = sl2_closure(g(2), 4).unwrap();
        assert_eq!(t.dims[&Bidegree::new(3, 2)], 0);
        assert_eq!(t.dims[&Bidegree::new(4, 4)], 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn commutator_with_psi(terms in proptest::collection::vec((0usize..10_000, -3i64..=3), 1..12)) {
            let gg = g(2);
            let ms = monomials_up_to(gg, 9);
            let flat: Vec<Monomial> = ms.into_iter().flat_map(|(_, v)| v).collect();
            let mut x = Element::zero(gg);
            for (i, c) in terms {
                x.add_term(flat[i % flat.len()], q(c));
            }
            let f = make_sl2(Family::Alpha, 0, gg).f;
            let lhs = apply(&commutator(&f, &Mul(Var::Psi(1))), &x).unwrap();
            let rhs_op = Sum(vec![
                Compose(vec![Partial(Var::Alpha), Mul(Var::Psi(1))]).scale(q(-1)),
                Compose(vec![Mul(Var::Beta), Partial(Var::Psi(3))]).scale(qfrac(1, 4)),
            ]);
            prop_assert_eq!(lhs, apply(&rhs_op, &x).unwrap());
        }
    }
}
