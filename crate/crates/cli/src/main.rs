use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chern_core::algebra::{bidegrees, parse_element, Bidegree, Genus};
use chern_core::genfun::{
    check_shift_symmetry, check_unimodality, omega_n21_closed, omega_n21_polynomial,
    omega_n31_conjecture, omega_stack, poly_to_table, t_minus_one_product,
    zagier_combinatorial_omega, BiPoly, BiRational,
};
use chern_core::integral::{graded_integral, IntegralConfig};
use chern_core::omega::{omega_from_ideal, omega_from_pairing, OmegaTable};
use chern_core::relations::{ideal_keys, key_element, RelationContext};
use chern_core::report::Report;
use chern_core::scalar::{fmt_q, parse_q, QScalar};
use chern_core::sl2::{
    check_adjointness, check_closure, check_descent, check_diagonal_grading,
    check_ideal_preservation, check_invariant_subring, check_sl2_relations,
};
use chern_core::verify::{run_suite, RunConfig, Suite};
use chern_core::Error;

#[derive(Parser)]
#[command(
    name = "chern",
    version,
    about = "Chern filtration computations for rank-2 bundles on a curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_parser = parse_genus)]
    genus: Genus,
    #[arg(long, default_value_t = 0)]
    d: u32,
    /// Normalization of the top-degree integral of alpha^(g-1) beta^(g-1).
    #[arg(long, value_parser = parse_scalar, default_value = "1")]
    normalization: QScalar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Ideal,
    Pairing,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sl2Check {
    Relations,
    Adjoint,
    Descent,
    Closure,
    Grading,
    Invariant,
    Ideal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Stack,
    N21,
    Intermediate,
    Rank3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenfunCheck {
    Symmetry,
    Tminus1,
    Unimodal,
    Zagier,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded dimension table of the associated graded ring.
    Omega {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_coh: Option<u32>,
        #[arg(long, value_enum, default_value = "ideal")]
        source: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Graded integral of an element, e.g. "alpha beta" or "gamma".
    Integral {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// Spanning elements of the relation ideal, per bidegree.
    Relations {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_coh: Option<u32>,
        #[arg(long)]
        coh: Option<u32>,
        #[arg(long)]
        chern: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Checks on the sl2 operators.
    Sl2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        check: Sl2Check,
        #[arg(long)]
        max_coh: Option<u32>,
    },
    /// Closed-form series: identities or expansions.
    Genfun {
        #[arg(long, value_parser = parse_genus)]
        genus: Genus,
        #[arg(long, default_value_t = 0)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, value_enum, default_value = "n21")]
        formula: Formula,
        #[arg(long, value_enum, default_value = "all")]
        check: GenfunCheck,
        /// Print the expansion through this cohomological degree instead of checking.
        #[arg(long)]
        expand: Option<i32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Acceptance suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
}

fn parse_genus(s: &str) -> Result<Genus, String> {
    let g: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Genus::new(g).map_err(|e| e.to_string())
}

fn parse_scalar(s: &str) -> Result<QScalar, String> {
    parse_q(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Done,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistent(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn integral_config(c: &Common) -> chern_core::Result<IntegralConfig> {
    IntegralConfig::new(c.genus, c.normalization.clone())
}

fn emit(s: &str) -> chern_core::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{s}").map_err(|e| Error::Usage(e.to_string()))
}

fn emit_report(r: &Report) -> chern_core::Result<Outcome> {
    emit(&r.to_json())?;
    Ok(if r.pass {
        Outcome::Done
    } else {
        Outcome::Failed
    })
}

#[derive(Serialize)]
struct TableRow {
    coh: u32,
    chern: u32,
    dim: u64,
}

fn emit_table(t: &OmegaTable, format: Format) -> chern_core::Result<()> {
    match format {
        Format::Json => emit(&t.to_json()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            for (bd, dim) in t.entries() {
                w.serialize(TableRow {
                    coh: bd.coh,
                    chern: bd.chern,
                    dim,
                })
                .map_err(|e| Error::Usage(e.to_string()))?;
            }
            w.flush().map_err(|e| Error::Usage(e.to_string()))
        }
        Format::Text => {
            for (bd, dim) in t.entries() {
                emit(&format!("coh={} chern={} dim={dim}", bd.coh, bd.chern))?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SeriesRow {
    q: i32,
    t: i32,
    coeff: String,
}

fn emit_series(p: &BiPoly, format: Format) -> chern_core::Result<()> {
    let mut rows: Vec<SeriesRow> = p
        .terms()
        .map(|((i, j), c)| SeriesRow {
            q: *i,
            t: *j,
            coeff: fmt_q(c),
        })
        .collect();
    rows.sort_by_key(|r| (r.q + r.t, r.q));
    match format {
        Format::Json => emit(&serde_json::to_string_pretty(&rows).expect("rows serialize")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Usage(e.to_string()))?;
            }
            w.flush().map_err(|e| Error::Usage(e.to_string()))
        }
        Format::Text => emit(&p.to_string()),
    }
}

#[derive(Serialize)]
struct RelationRow {
    coh: u32,
    chern: u32,
    #[serde(rename = "betaPower")]
    beta_power: u32,
    k: u32,
    m: u32,
    l: u32,
    #[serde(rename = "primIndex")]
    prim_index: usize,
    element: String,
}

fn run(cmd: Command) -> chern_core::Result<Outcome> {
    match cmd {
        Command::Omega {
            common,
            max_coh,
            source,
            format,
        } => {
            let g = common.genus;
            let max_coh = max_coh.unwrap_or(g.top().coh + 4 * common.d);
            let table = match source {
                Source::Ideal => omega_from_ideal(&RelationContext::new(g), common.d, max_coh)?,
                Source::Pairing => {
                    if common.d != 0 {
                        return Err(Error::Usage(
                            "the pairing source only exists at d = 0".into(),
                        ));
                    }
                    let full = omega_from_pairing(&integral_config(&common)?);
                    let mut cut = OmegaTable::new(g, 0, max_coh);
                    for (bd, n) in full.entries().filter(|(bd, _)| bd.coh <= max_coh) {
                        cut.set(bd, n);
                    }
                    cut
                }
                Source::Closed => {
                    let series = omega_n21_closed(g, common.d).expand(max_coh as i32)?;
                    poly_to_table(g, common.d, max_coh, &series)?
                }
            };
            emit_table(&table, format)?;
            Ok(Outcome::Done)
        }
        Command::Integral { common, expr } => {
            let cfg = integral_config(&common)?;
            let x = parse_element(common.genus, &expr)?;
            emit(&fmt_q(&graded_integral(&x, &cfg)?))?;
            Ok(Outcome::Done)
        }
        Command::Relations {
            common,
            max_coh,
            coh,
            chern,
            format,
        } => {
            let g = common.genus;
            let ctx = RelationContext::new(g);
            let slices: Vec<Bidegree> = match (coh, chern) {
                (Some(c), Some(h)) => vec![Bidegree::new(c, h)],
                (None, None) => bidegrees(g, max_coh.unwrap_or(g.top().coh)),
                _ => {
                    return Err(Error::Usage(
                        "give both --coh and --chern, or neither".into(),
                    ))
                }
            };
            let mut rows = Vec::new();
            for bd in slices {
                for key in ideal_keys(&ctx, common.d, bd)? {
                    rows.push(RelationRow {
                        coh: bd.coh,
                        chern: bd.chern,
                        beta_power: key.beta_power,
                        k: key.k,
                        m: key.m,
                        l: key.l,
                        prim_index: key.prim_index,
                        element: key_element(&ctx, &key)?.to_string(),
                    });
                }
            }
            match format {
                Format::Json => {
                    emit(&serde_json::to_string_pretty(&rows).expect("rows serialize"))?
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout().lock());
                    for r in rows {
                        w.serialize(r).map_err(|e| Error::Usage(e.to_string()))?;
                    }
                    w.flush().map_err(|e| Error::Usage(e.to_string()))?;
                }
                Format::Text => {
                    for r in rows {
                        emit(&format!(
                            "({}, {}) beta^{} R[{},{},{}] #{}: {}",
                            r.coh, r.chern, r.beta_power, r.k, r.m, r.l, r.prim_index, r.element
                        ))?;
                    }
                }
            }
            Ok(Outcome::Done)
        }
        Command::Sl2 {
            common,
            check,
            max_coh,
        } => {
            let g = common.genus;
            let d = common.d;
            let max_coh = max_coh.unwrap_or(g.top().coh);
            let ctx = RelationContext::new(g);
            let report = match check {
                Sl2Check::Relations => check_sl2_relations(g, d, max_coh)?,
                Sl2Check::Adjoint => check_adjointness(g, &integral_config(&common)?)?,
                Sl2Check::Descent => check_descent(&ctx, d, 2 * g.get() + 2 * d + 4)?,
                Sl2Check::Closure => check_closure(&ctx, &[4, 8, 12])?,
                Sl2Check::Grading => check_diagonal_grading(g, max_coh)?,
                Sl2Check::Invariant => check_invariant_subring(g, 2)?,
                Sl2Check::Ideal => check_ideal_preservation(&ctx, d, max_coh)?,
            };
            emit_report(&report)
        }
        Command::Genfun {
            genus,
            d,
            rank,
            formula,
            check,
            expand,
            format,
        } => {
            let (f, r) = match formula {
                Formula::Stack => (omega_stack(rank, genus)?, rank),
                Formula::N21 => (omega_n21_closed(genus, 0), 2),
                Formula::Intermediate => (omega_n21_closed(genus, d), 2),
                Formula::Rank3 => (omega_n31_conjecture(genus), 3),
            };
            if let Some(w) = expand {
                emit_series(&f.expand(w)?, format)?;
                return Ok(Outcome::Done);
            }
            let mut report = Report::check("genfun", genus.get(), d);
            let all = check == GenfunCheck::All;
            if all || check == GenfunCheck::Symmetry {
                report.record(
                    check_shift_symmetry(&f, r, genus),
                    || format!("shift symmetry r={r}"),
                    || "symmetric".into(),
                    || "not symmetric".into(),
                );
            }
            if all || check == GenfunCheck::Tminus1 {
                let got = f.at_t_minus_one()?;
                let want = BiRational::poly(t_minus_one_product(r, genus));
                report.record(
                    got == want,
                    || "value at t = -1".into(),
                    || want.num.to_string(),
                    || format!("({}) / ({})", got.num, got.den),
                );
            }
            if all || check == GenfunCheck::Unimodal {
                report.record(
                    check_unimodality(genus)?,
                    || "unimodality of Omega(q, 1)".into(),
                    || "unimodal".into(),
                    || "not unimodal".into(),
                );
            }
            if all || check == GenfunCheck::Zagier {
                let z = zagier_combinatorial_omega(genus);
                report.expect_eq(
                    || "combinatorial sum".into(),
                    &omega_n21_polynomial(genus)?,
                    &z,
                );
            }
            emit_report(&report)
        }
        Command::Verify { common, suite } => {
            let cfg = RunConfig {
                genus: common.genus,
                d: common.d,
                integral: integral_config(&common)?,
            };
            emit_report(&run_suite(suite, &cfg)?)
        }
    }
}
