//! Verification suites tying the computed rings to the closed forms.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{
    bidegrees, monomial_basis, monomials_up_to, Bidegree, Element, Genus, Monomial, PicClass, Var,
};
use crate::error::{Error, Result};
use crate::genfun::{
    check_shift_symmetry, is_unimodal, omega_n21_closed, omega_n21_polynomial,
    omega_n31_conjecture, omega_q1_coefficients, omega_stack, stack_recursion_at_q_equals_t,
    stratum_difference, t_minus_one_product, table_to_poly, zagier_combinatorial_omega, BiPoly,
    BiRational,
};
use crate::integral::{graded_integral, IntegralConfig};
use crate::linalg::Span;
use crate::omega::{omega_from_ideal, omega_from_pairing, vanishing_violations};
use crate::relations::{
    ideal_slice, modified_mumford, prim_basis, prim_dimension, RelationContext,
};
use crate::report::Report;
use crate::scalar::{pow2, q, qfrac};
use crate::sl2::{
    check_adjointness, check_closure, check_descent, check_diagonal_grading,
    check_ideal_preservation, check_invariant_subring, check_sl2_relations,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Main,
    Intermediate,
    Sl2,
    Pairing,
    Closure,
    Genfun,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "main" => Suite::Main,
            "intermediate" => Suite::Intermediate,
            "sl2" => Suite::Sl2,
            "pairing" => Suite::Pairing,
            "closure" => Suite::Closure,
            "genfun" => Suite::Genfun,
            "properties" => Suite::Properties,
            "all" => Suite::All,
            _ => return Err(Error::Usage(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Main => "main",
            Suite::Intermediate => "intermediate",
            Suite::Sl2 => "sl2",
            Suite::Pairing => "pairing",
            Suite::Closure => "closure",
            Suite::Genfun => "genfun",
            Suite::Properties => "properties",
            Suite::All => "all",
        })
    }
}

/// Inputs shared by every suite.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub genus: Genus,
    pub d: u32,
    pub integral: IntegralConfig,
}

impl RunConfig {
    pub fn new(genus: Genus, d: u32) -> Self {
        RunConfig {
            genus,
            d,
            integral: IntegralConfig::unit(genus),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    let g = cfg.genus;
    match suite {
        Suite::Main => main_suite(g, &cfg.integral),
        Suite::Intermediate => intermediate_suite(g, cfg.d),
        Suite::Sl2 => sl2_suite(g, cfg.d, &cfg.integral),
        Suite::Pairing => pairing_suite(&cfg.integral),
        Suite::Closure => closure_suite(g),
        Suite::Genfun => genfun_suite(2..=8),
        Suite::Properties => properties_suite(g, &cfg.integral),
        Suite::All => {
            let mut all = Report::suite("all", g.get(), cfg.d);
            for s in [
                Suite::Main,
                Suite::Intermediate,
                Suite::Sl2,
                Suite::Pairing,
                Suite::Closure,
                Suite::Genfun,
                Suite::Properties,
            ] {
                all.absorb(run_suite(s, cfg)?);
            }
            Ok(all)
        }
    }
}

fn poly_report(r: &mut Report, loc: &str, expected: &BiPoly, got: &BiPoly) {
    r.record(
        expected == got,
        || loc.to_string(),
        || expected.to_string(),
        || got.to_string(),
    );
}

fn rational_report(r: &mut Report, loc: &str, expected: &BiRational, got: &BiRational) {
    r.record(
        expected == got,
        || loc.to_string(),
        || format!("({}) / ({})", expected.num, expected.den),
        || format!("({}) / ({})", got.num, got.den),
    );
}

/// Level-0 tables from the pairing and from the ideal against the closed form,
/// the top-degree statement and the vanishing corollary.
pub fn main_suite(g: Genus, integral: &IntegralConfig) -> Result<Report> {
    let mut r = Report::suite("main", g.get(), 0);
    let top = g.top();
    let closed = omega_n21_polynomial(g)?;
    let pairing = omega_from_pairing(integral);
    poly_report(
        &mut r,
        "Ω computed == closed form",
        &closed,
        &table_to_poly(&pairing),
    );
    let ctx = RelationContext::new(g);
    let ideal = omega_from_ideal(&ctx, 0, top.coh)?;
    r.record(
        ideal == pairing,
        || "Ω from ideal == Ω from pairing".into(),
        || pairing.to_json(),
        || ideal.to_json(),
    );
    for table in [&pairing, &ideal] {
        for chern in (0..=top.coh).step_by(2) {
            let want = u64::from(chern == top.chern);
            let got = table.get(Bidegree::new(top.coh, chern));
            r.expect_eq(
                || format!("dim at coh {} chern {chern}", top.coh),
                &want,
                &got,
            );
        }
        let bad = vanishing_violations(table);
        r.record(
            bad.is_empty(),
            || "vanishing corollary".into(),
            || "no entries".into(),
            || format!("{bad:?}"),
        );
    }
    let n = g.get() - 1;
    let x = Element::monomial(g, Monomial::new(n, n, 0)).scale(&pow2(-(n as i64)));
    let v = graded_integral(&x, integral)?;
    let want = integral.normalization() * pow2(-(n as i64));
    r.expect_eq(|| "∫ (alpha/2)^(g-1) beta^(g-1)".into(), &want, &v);
    let tm1 = table_to_poly(&pairing).at_t_sign(-1);
    poly_report(
        &mut r,
        "Ω(q,-1) of the computed table",
        &t_minus_one_product(2, g),
        &tm1,
    );
    Ok(r)
}

/// The level-`d` table against the series expansion of the closed form, and the
/// two routes to the modified relations.
pub fn intermediate_suite(g: Genus, d: u32) -> Result<Report> {
    let mut r = Report::suite("intermediate", g.get(), d);
    let max_coh = g.top().coh + 4 * d;
    let ctx = RelationContext::new(g);
    let table = omega_from_ideal(&ctx, d, max_coh)?;
    let series = omega_n21_closed(g, d).expand(max_coh as i32)?;
    poly_report(
        &mut r,
        &format!("Ω(d={d}) computed == closed form through coh {max_coh}"),
        &series,
        &table_to_poly(&table),
    );
    modified_routes(&ctx, d as i64, &mut r)?;
    Ok(r)
}

/// Every modified relation with `k <= 2g+2d+4`, `l+m <= g` over full primitive bases.
pub fn modified_routes(ctx: &RelationContext, d: i64, r: &mut Report) -> Result<()> {
    let gi = ctx.genus().get();
    let k_max = 2 * gi + 2 * d as u32 + 4;
    let mut jobs = Vec::new();
    for l in 0..=gi {
        let prim = ctx.prim(l)?;
        for m in 0..=(gi - l) {
            for k in 0..=k_max {
                for (i, sig) in prim.classes.iter().enumerate() {
                    jobs.push((k, m, l, i, sig.clone()));
                }
            }
        }
    }
    let outcomes: Vec<(String, Option<String>)> = jobs
        .par_iter()
        .map(|(k, m, l, i, sig)| {
            let loc = format!("modified relation d={d} k={k} m={m} l={l} sigma#{i}");
            match modified_mumford(ctx, d, *k, *m, sig) {
                Ok(_) => Ok((loc, None)),
                Err(Error::Inconsistent(msg)) => Ok((loc, Some(msg))),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    for (loc, err) in outcomes {
        let ok = err.is_none();
        r.record(
            ok,
            || loc,
            || "alternating sum == closed form".into(),
            || err.unwrap_or_default(),
        );
    }
    Ok(())
}

pub fn sl2_suite(g: Genus, d: u32, integral: &IntegralConfig) -> Result<Report> {
    let mut r = Report::suite("sl2", g.get(), d);
    let top = g.top().coh;
    let ctx = RelationContext::new(g);
    r.absorb(check_sl2_relations(g, d, top)?);
    r.absorb(check_descent(&ctx, d, 2 * g.get() + 2 * d + 4)?);
    r.absorb(check_ideal_preservation(&ctx, d, top)?);
    r.absorb(check_diagonal_grading(g, top)?);
    r.absorb(check_invariant_subring(g, 2)?);
    r.absorb(check_adjointness(g, integral)?);
    Ok(r)
}

/// The two rules for top-degree integrals, independence of the tables from
/// the normalization, and Poincaré duality of the computed table.
pub fn pairing_suite(integral: &IntegralConfig) -> Result<Report> {
    let g = integral.genus();
    let mut r = Report::suite("pairing", g.get(), 0);
    virasoro_monodromy(integral, &mut r)?;
    let table = omega_from_pairing(integral);
    let unit = omega_from_pairing(&IntegralConfig::unit(g));
    r.record(
        table == unit,
        || {
            format!(
                "table at B = {} equals table at B = 1",
                integral.normalization()
            )
        },
        || unit.to_json(),
        || table.to_json(),
    );
    let top = g.top();
    for (bd, n) in table.entries() {
        let dual = bd.complement(g).map(|c| table.get(c)).unwrap_or(0);
        r.expect_eq(|| format!("duality at {bd} against {top}"), &n, &dual);
    }
    Ok(r)
}

/// `(g-p) ∫ a^n b^n gamma^p = -2n ∫ a^(n-1) b^(n-1) gamma^(p+1)` against the
/// closed value of each monomial from pair counting.
pub fn virasoro_monodromy(cfg: &IntegralConfig, r: &mut Report) -> Result<()> {
    let g = cfg.genus();
    let gi = g.get();
    let gamma = Element::gamma(g);
    for p in 0..gi {
        let n = gi - 1 - p;
        let ab = Element::monomial(g, Monomial::new(n, n, 0));
        let direct = graded_integral(&(&ab * &gamma.pow(p)), cfg)?;
        r.expect_eq(
            || format!("monodromy value p={p}"),
            &cfg.gamma_line(p),
            &direct,
        );
        if p + 1 < gi {
            let lower = Element::monomial(g, Monomial::new(n - 1, n - 1, 0));
            let next = graded_integral(&(&lower * &gamma.pow(p + 1)), cfg)?;
            r.expect_eq(
                || format!("Virasoro step p={p}"),
                &(q((gi - p) as i64) * &direct),
                &(q(-2 * n as i64) * next),
            );
        }
    }
    Ok(())
}

pub fn closure_suite(g: Genus) -> Result<Report> {
    let mut r = Report::suite("closure", g.get(), 0);
    r.absorb(check_closure(&RelationContext::new(g), &[4, 8, 12])?);
    Ok(r)
}

/// Symmetries, specializations, the combinatorial sum, unimodality and the
/// telescoping identities, over the given genera.
pub fn genfun_suite(genera: std::ops::RangeInclusive<u32>) -> Result<Report> {
    let mut r = Report::suite("genfun", *genera.start(), 0);
    for gi in genera {
        let g = Genus::new(gi)?;
        for rank in 2..=5 {
            let s = omega_stack(rank, g)?;
            r.record(
                check_shift_symmetry(&s, rank, g),
                || format!("stack symmetry r={rank} g={gi}"),
                || "symmetric".into(),
                || "not symmetric".into(),
            );
            let tm1 = s.at_t_minus_one()?;
            rational_report(
                &mut r,
                &format!("stack at t=-1, r={rank} g={gi}"),
                &BiRational::poly(t_minus_one_product(rank, g)),
                &tm1,
            );
        }
        let n21 = omega_n21_closed(g, 0);
        r.record(
            check_shift_symmetry(&n21, 2, g),
            || format!("closed form symmetry g={gi}"),
            || "symmetric".into(),
            || "not symmetric".into(),
        );
        r.record(
            !check_shift_symmetry(&omega_n21_closed(g, 1), 2, g),
            || format!("level-1 series is not symmetric, g={gi}"),
            || "not symmetric".into(),
            || "symmetric".into(),
        );
        let poly = omega_n21_polynomial(g)?;
        poly_report(
            &mut r,
            &format!("closed form at t=-1, g={gi}"),
            &t_minus_one_product(2, g),
            &poly.at_t_sign(-1),
        );
        poly_report(
            &mut r,
            &format!("combinatorial sum g={gi}"),
            &poly,
            &zagier_combinatorial_omega(g),
        );
        let coeffs = omega_q1_coefficients(g)?;
        r.record(
            is_unimodal(&coeffs),
            || format!("unimodality g={gi}"),
            || "unimodal".into(),
            || format!("{coeffs:?}"),
        );
        // Ω(stack) - Ω(N) = sum_{d>=1} of the stratum terms, summed as a geometric series
        let n = 2 * gi;
        let tail = BiRational::new(
            BiPoly::binom(1, 0, 1)
                .pow(n)
                .mul(&BiPoly::binom(1, 2, 0))
                .shift(n as i32, 0),
            BiPoly::binom(-1, 4, 0).mul(&BiPoly::binom(-1, 2, 2)),
        )?;
        rational_report(
            &mut r,
            &format!("telescoping g={gi}"),
            &tail,
            &omega_stack(2, g)?.sub(&n21),
        );
        for d in 1..=3 {
            let mut partial = n21.clone();
            for k in 1..=d {
                partial = partial.add(&stratum_difference(g, k));
            }
            rational_report(
                &mut r,
                &format!("partial sums d={d} g={gi}"),
                &omega_n21_closed(g, d),
                &partial,
            );
        }
        for d in 0..=3 {
            let (lhs, rhs) = stack_recursion_at_q_equals_t(g, d)?;
            rational_report(
                &mut r,
                &format!("stack recursion at q=t, d={d} g={gi}"),
                &rhs,
                &lhs,
            );
        }
        if gi <= 5 {
            let c = omega_n31_conjecture(g);
            r.record(
                check_shift_symmetry(&c, 3, g),
                || format!("rank-3 symmetry g={gi}"),
                || "symmetric".into(),
                || "not symmetric".into(),
            );
            let want = BiRational::poly(t_minus_one_product(3, g));
            rational_report(
                &mut r,
                &format!("rank-3 at t=-1, g={gi}"),
                &want,
                &c.at_t_minus_one()?,
            );
        }
        if gi <= 3 {
            let order = 16 * (gi as i32 - 1);
            let series = omega_n31_conjecture(g).at_q_equals_t()?.expand(order)?;
            let bad: Vec<String> = series
                .terms()
                .filter(|(_, c)| !c.is_integer() || *c < &q(0))
                .map(|((_, j), c)| format!("t^{j}: {c}"))
                .collect();
            r.record(
                bad.is_empty(),
                || format!("rank-3 at q=t has nonnegative integer coefficients, g={gi}"),
                || "none negative".into(),
                || bad.join(", "),
            );
        }
    }
    let synthetic = [1, 2, 1, 3, 1].map(q);
    r.record(
        !is_unimodal(&synthetic),
        || "synthetic (1,2,1,3,1)".into(),
        || "not unimodal".into(),
        || "unimodal".into(),
    );
    Ok(r)
}

/// Exhaustive versions of the algebra laws on small slices, nilpotency of
/// gamma, the degree cone, primitive dimensions, the integral rules and the
/// multiplicative closure of the level-0 ideal.
pub fn properties_suite(g: Genus, integral: &IntegralConfig) -> Result<Report> {
    let mut r = Report::suite("properties", g.get(), 0);
    let gi = g.get();
    let small: Vec<Monomial> = monomials_up_to(g, 6)
        .into_iter()
        .flat_map(|(_, v)| v)
        .filter(|m| m.psi_count() <= 2)
        .collect();
    let els: Vec<Element> = small.iter().map(|m| Element::monomial(g, *m)).collect();
    let sample: Vec<&Element> = els.iter().step_by((els.len() / 12).max(1)).collect();
    for x in &sample {
        for y in &sample {
            let xy = *x * *y;
            let yx = *y * *x;
            let sign = if x.terms().next().is_some_and(|(m, _)| m.is_odd())
                && y.terms().next().is_some_and(|(m, _)| m.is_odd())
            {
                q(-1)
            } else {
                q(1)
            };
            r.expect_eq(
                || format!("supercommutativity {x} * {y}"),
                &yx.scale(&sign),
                &xy,
            );
            for z in &sample {
                r.expect_eq(
                    || format!("associativity {x} {y} {z}"),
                    &(&xy * *z),
                    &(*x * &(*y * *z)),
                );
                r.expect_eq(
                    || format!("distributivity {x} {y} {z}"),
                    &(&xy + &(*x * *z)),
                    &(*x * &(*y + *z)),
                );
            }
            for v in [Var::Alpha, Var::Beta, Var::Psi(1), Var::Psi(gi + 1)] {
                let dx = x.derive(v)?;
                let lhs = xy.derive(v)?;
                let s = if v.is_odd() && x.terms().next().is_some_and(|(m, _)| m.is_odd()) {
                    q(-1)
                } else {
                    q(1)
                };
                let rhs = &(&dx * *y) + &(*x * &y.derive(v)?).scale(&s);
                r.expect_eq(|| format!("Leibniz d/d{v} on {x} * {y}"), &rhs, &lhs);
            }
        }
    }
    let gamma = Element::gamma(g);
    r.record(
        gamma.pow(gi + 1).is_zero(),
        || "gamma^(g+1) = 0".into(),
        || "0".into(),
        || "nonzero".into(),
    );
    r.record(
        !gamma.pow(gi).is_zero(),
        || "gamma^g != 0".into(),
        || "nonzero".into(),
        || "0".into(),
    );
    for (bd, ms) in monomials_up_to(g, g.top().coh + 4) {
        for m in ms {
            let cone = bd.chern <= bd.coh && bd.coh <= 2 * bd.chern;
            let low_edge = (bd.coh == bd.chern) == (m.b == 0 && m.psi == 0);
            let high_edge = (bd.coh == 2 * bd.chern) == (m.a == 0 && m.psi == 0);
            r.record(
                cone && low_edge && high_edge,
                || format!("degree cone at {bd}"),
                || "inside".into(),
                || Element::monomial(g, m).to_string(),
            );
        }
    }
    for l in 0..=gi {
        let p = prim_basis(g, l)?;
        r.expect_eq(
            || format!("dim Prim_{l}"),
            &prim_dimension(g, l),
            &(p.classes.len() as u64),
        );
        let th = PicClass::theta(g).pow(gi - l + 1);
        r.record(
            p.classes.iter().all(|c| (c * &th).is_zero()),
            || format!("Prim_{l} is killed by theta^(g-l+1)"),
            || "0".into(),
            || "nonzero".into(),
        );
    }
    virasoro_monodromy(integral, &mut r)?;
    let scaled = IntegralConfig::new(g, qfrac(7, 3))?;
    virasoro_monodromy(&scaled, &mut r)?;
    ideal_closure_guard(&RelationContext::new(g), g.top().coh, &mut r)?;
    let table = omega_from_pairing(integral);
    r.record(
        vanishing_violations(&table).is_empty(),
        || "vanishing corollary".into(),
        || "no entries".into(),
        || format!("{:?}", vanishing_violations(&table)),
    );
    Ok(r)
}

/// Multiplying a level-0 ideal slice by any generator stays in the ideal.
pub fn ideal_closure_guard(ctx: &RelationContext, max_coh: u32, r: &mut Report) -> Result<()> {
    let g = ctx.genus();
    let gens: Vec<Var> = [Var::Alpha, Var::Beta]
        .into_iter()
        .chain((1..=g.num_psi()).map(Var::Psi))
        .collect();
    for bd in bidegrees(g, max_coh) {
        let slice = ideal_slice(ctx, 0, bd)?;
        if slice.is_empty() {
            continue;
        }
        for v in &gens {
            let target = bd + v.monomial().bidegree();
            let basis = monomial_basis(g, target);
            let mut span = Span::new(basis.len());
            for e in ideal_slice(ctx, 0, target)? {
                span.insert(&e.coords(&basis)?);
            }
            let x = Element::var(g, *v)?;
            for e in &slice {
                let p = &x * e;
                let inside = span.contains(&p.coords(&basis)?);
                r.record(
                    inside,
                    || format!("{v} times ideal element at {bd}"),
                    || "in the ideal".into(),
                    || p.to_string(),
                );
            }
        }
    }
    Ok(())
}
