use waring_core::coprime_sums::{enumerate_coprime_sums, r_max_star_oracle, r_max_star_with_witness};
use waring_core::monomials::{enumerate_monomials, r_max_with_witness};
use waring_core::rank_tables::{generic_rank, is_exceptional, known_examples, upper_bounds, vanished_corrections};
use waring_core::verify::{
    d_limit, ratio_decay_fixed_d, ratio_growth_fixed_n, Claim, RatioPoint, RatioSubject,
    VerificationReport, Verifier,
};
use waring_core::{CoprimeSum, Mode, Monomial, Natural, Ratio, Witness};

use crate::{Cli, CliError, Command, GridArgs, ReportDocument, EXIT_COUNTEREXAMPLE, EXIT_OK};

/// Columns shared by the tabulating commands.
pub const RECORD_COLUMNS: [&str; 6] = ["n", "d", "kind", "value", "value_approx", "witness"];

type Outcome = Result<(ReportDocument, i32), CliError>;

pub fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Rank { monomial, sum, n } => rank(monomial.as_deref(), sum.as_deref(), *n),
        Command::GenericRank(grid) => generic(grid),
        Command::MaxRank { grid, oracle } => max_rank(grid, *oracle),
        Command::MaxRankSum {
            grid,
            oracle,
            spanning,
        } => max_rank_sum(grid, *oracle, *spanning),
        Command::Bounds(grid) => bounds(grid),
        Command::Enumerate {
            n,
            d,
            sums,
            spanning,
        } => enumerate(*n, *d, *sums, *spanning),
        Command::Verify {
            claim,
            n_range,
            d_range,
        } => verify(claim, *n_range, *d_range, cli.threads, cli.deterministic),
        Command::Asymptotics {
            mode,
            n,
            d,
            d_samples,
            n_max,
            which,
        } => asymptotics(mode, *n, *d, d_samples, *n_max, *which),
        Command::Table { name } => table(name),
    }
}

fn grid_cells(grid: &GridArgs) -> Result<Vec<(u32, u32)>, CliError> {
    if grid.n.min == 0 || grid.d.min == 0 {
        return Err(CliError::usage("n and d must be positive"));
    }
    Ok(grid
        .n
        .iter()
        .flat_map(|n| grid.d.iter().map(move |d| (n, d)))
        .collect())
}

fn record_row(n: u32, d: u32, kind: &str, value: &Natural, witness: Option<&Witness>) -> Vec<String> {
    vec![
        n.to_string(),
        d.to_string(),
        kind.to_string(),
        value.to_string(),
        value.approx(),
        witness.map(Witness::syntax).unwrap_or_default(),
    ]
}

fn rank(monomial: Option<&str>, sum: Option<&str>, n: Option<u32>) -> Outcome {
    let mut doc = ReportDocument::new(
        "rank",
        &["n", "d", "kind", "value", "value_approx", "witness", "vars_used", "blocks", "form"],
    );
    let (witness, kind) = match (monomial, sum) {
        (Some(text), _) => {
            doc.param("monomial", text);
            (Witness::Monomial(Monomial::parse(text, n)?), "monomial")
        }
        (None, Some(text)) => {
            doc.param("sum", text);
            (Witness::Sum(CoprimeSum::parse(text, n)?), "coprime_sum")
        }
        (None, None) => return Err(CliError::usage("pass --monomial or --sum")),
    };
    if let Some(n) = n {
        doc.param("n", n);
    }
    let (vars_used, blocks) = match &witness {
        Witness::Monomial(m) => (m.vars_used(), 1),
        Witness::Sum(f) => (f.vars_used(), f.blocks().len()),
    };
    let mut row = record_row(
        witness.ambient_vars(),
        witness.degree(),
        kind,
        &witness.rank(),
        Some(&witness),
    );
    row.extend([vars_used.to_string(), blocks.to_string(), witness.to_string()]);
    doc.push_row(row);
    Ok((doc, EXIT_OK))
}

fn generic(grid: &GridArgs) -> Outcome {
    let mut columns = RECORD_COLUMNS.to_vec();
    columns.push("exceptional");
    let mut doc = ReportDocument::new("generic-rank", &columns);
    doc.param("n", grid.n).param("d", grid.d);
    for (n, d) in grid_cells(grid)? {
        let mut row = record_row(n, d, "generic", &generic_rank(n, d), None);
        row.push(is_exceptional(n, d).to_string());
        doc.push_row(row);
    }
    Ok((doc, EXIT_OK))
}

fn mode_name(oracle: bool) -> &'static str {
    if oracle {
        "oracle"
    } else {
        "closed_form"
    }
}

fn max_rank(grid: &GridArgs, oracle: bool) -> Outcome {
    let mut doc = ReportDocument::new("max-rank", &RECORD_COLUMNS);
    doc.param("n", grid.n).param("d", grid.d).param("mode", mode_name(oracle));
    let mode = if oracle { Mode::Oracle } else { Mode::ClosedForm };
    for (n, d) in grid_cells(grid)? {
        let (r, m) = r_max_with_witness(n, d, mode)?;
        doc.push_row(record_row(n, d, "r_max", &r, Some(&Witness::Monomial(m))));
    }
    Ok((doc, EXIT_OK))
}

fn max_rank_sum(grid: &GridArgs, oracle: bool, spanning: bool) -> Outcome {
    let mut doc = ReportDocument::new("max-rank-sum", &RECORD_COLUMNS);
    let oracle = oracle || spanning;
    doc.param("n", grid.n)
        .param("d", grid.d)
        .param("mode", mode_name(oracle))
        .param("spanning", spanning);
    let mode = if oracle { Mode::Oracle } else { Mode::ClosedForm };
    for (n, d) in grid_cells(grid)? {
        let (r, f) = if spanning {
            r_max_star_oracle(n, d, true)?
        } else {
            r_max_star_with_witness(n, d, mode)?
        };
        doc.push_row(record_row(n, d, "r_max_star", &r, Some(&Witness::Sum(f))));
    }
    Ok((doc, EXIT_OK))
}

fn bounds(grid: &GridArgs) -> Outcome {
    let mut columns = RECORD_COLUMNS.to_vec();
    columns.push("note");
    let mut doc = ReportDocument::new("bounds", &columns);
    doc.param("n", grid.n).param("d", grid.d);
    for (n, d) in grid_cells(grid)? {
        let (jel_gone, bdp_gone) = vanished_corrections(n, d);
        for rec in upper_bounds(n, d) {
            let note = match rec.kind.as_str() {
                "jelisiejew_bound" if jel_gone => "correction vanished",
                "ballico_deparis_bound" if jel_gone && bdp_gone => "corrections vanished",
                "ballico_deparis_bound" if bdp_gone => "correction vanished",
                _ => "",
            };
            let mut row = record_row(n, d, rec.kind.as_str(), &rec.value, None);
            row.push(note.to_string());
            doc.push_row(row);
        }
        let g = generic_rank(n, d);
        let mut row = record_row(n, d, "generic", &g, None);
        // dn/(d+n-1): the heuristic size of the gap between bounds and generic rank
        let gap = Ratio::from_naturals(&Natural::from(d * n), &Natural::from(d + n - 1))?;
        row.push(format!("gap_heuristic_approx={}", gap.approx()));
        doc.push_row(row);
    }
    Ok((doc, EXIT_OK))
}

fn enumerate(n: u32, d: u32, sums: bool, spanning: bool) -> Outcome {
    if n == 0 || d == 0 {
        return Err(CliError::usage("n and d must be positive"));
    }
    let mut columns = RECORD_COLUMNS.to_vec();
    columns.push("form");
    let mut doc = ReportDocument::new("enumerate", &columns);
    doc.param("n", n).param("d", d).param("sums", sums).param("spanning", spanning);
    let witnesses: Box<dyn Iterator<Item = (&str, Witness)>> = if sums {
        Box::new(enumerate_coprime_sums(n, d, spanning).map(|f| ("coprime_sum", Witness::Sum(f))))
    } else {
        Box::new(enumerate_monomials(n, d).map(|m| ("monomial", Witness::Monomial(m))))
    };
    let mut count = 0u64;
    for (kind, w) in witnesses {
        let mut row = record_row(n, d, kind, &w.rank(), Some(&w));
        row.push(w.to_string());
        doc.push_row(row);
        count += 1;
    }
    doc.summary("count", count);
    Ok((doc, EXIT_OK))
}

fn case_line(report: &VerificationReport, c: &waring_core::verify::Case) -> String {
    let witness = c
        .witness
        .as_ref()
        .map(|w| format!(" witness={}", w.syntax()))
        .unwrap_or_default();
    format!(
        "n={} d={}{witness}: {} {} {}",
        c.n,
        c.d,
        c.lhs,
        report.relation.symbol(),
        c.rhs
    )
}

fn verify(
    claim: &str,
    n_range: Option<waring_core::verify::GridRange>,
    d_range: Option<waring_core::verify::GridRange>,
    threads: usize,
    deterministic: bool,
) -> Outcome {
    let claim: Claim = claim.parse()?;
    let (default_n, default_d) = claim.default_grid();
    let report = Verifier::new(threads).run(
        claim,
        n_range.unwrap_or(default_n),
        d_range.unwrap_or(default_d),
    )?;

    let mut doc = ReportDocument::new(
        "verify",
        &["n", "d", "witness", "lhs", "expected_relation", "rhs", "expected"],
    );
    doc.param("claim", claim.id())
        .param("n_range", report.n_range)
        .param("d_range", report.d_range);
    if !deterministic {
        doc.param("threads", threads);
    }
    doc.summary("status", report.status)
        .summary("relation", format!("lhs {} rhs", report.relation.symbol()))
        .summary("checked_count", report.checked_count)
        .summary("violations", report.violations.len())
        .summary("unexpected_violations", report.unexpected_violations().count())
        .summary("expected_exceptions_matched", report.expected_exceptions_matched);
    if let Some(t) = &report.tightest {
        doc.summary("tightest", case_line(&report, t));
    }
    if !deterministic {
        doc.summary("elapsed_ms", report.elapsed_ms);
    }
    for c in &report.violations {
        doc.push_row(vec![
            c.n.to_string(),
            c.d.to_string(),
            c.witness.as_ref().map(Witness::syntax).unwrap_or_default(),
            c.lhs.to_string(),
            report.relation.symbol().to_string(),
            c.rhs.to_string(),
            c.expected.to_string(),
        ]);
    }
    let code = if report.status.is_success() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    Ok((doc, code))
}

fn ratio_row(kind: &str, p: &RatioPoint) -> Vec<String> {
    vec![
        p.n.to_string(),
        p.d.to_string(),
        kind.to_string(),
        p.ratio.to_string(),
        p.ratio.approx(),
        p.limit.to_string(),
        p.limit.approx(),
        p.gap.to_string(),
        p.gap.approx(),
        p.bound_only.to_string(),
    ]
}

fn asymptotics(
    mode: &str,
    n: Option<u32>,
    d: Option<u32>,
    d_samples: &[u32],
    n_max: Option<u32>,
    which: RatioSubject,
) -> Outcome {
    let mut doc = ReportDocument::new(
        "asymptotics",
        &[
            "n", "d", "kind", "value", "value_approx", "limit", "limit_approx", "gap", "gap_approx",
            "bound_only",
        ],
    );
    doc.param("mode", mode);
    match mode {
        "d-limit" => {
            let n = n.ok_or_else(|| CliError::usage("d-limit needs --n"))?;
            if d_samples.is_empty() {
                return Err(CliError::usage("d-limit needs --d-samples"));
            }
            let kind = match which {
                RatioSubject::Monomial => "r_max/r_gen",
                RatioSubject::Coprime => "r_max_star/r_gen",
            };
            doc.param("n", n).param(
                "d_samples",
                d_samples.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            );
            doc.param("which", kind);
            let points = ratio_growth_fixed_n(n, d_samples, which)?;
            doc.summary("limit", d_limit(n)?);
            for p in &points {
                doc.push_row(ratio_row(kind, p));
            }
        }
        "n-limit" => {
            let d = d.ok_or_else(|| CliError::usage("n-limit needs --d"))?;
            let n_max = n_max.ok_or_else(|| CliError::usage("n-limit needs --n-max"))?;
            doc.param("d", d).param("n_max", n_max);
            let points = ratio_decay_fixed_d(d, n_max)?;
            doc.summary("limit", 0);
            if let Some(last) = points.last() {
                doc.summary("final_ratio", &last.ratio);
            }
            for p in &points {
                doc.push_row(ratio_row("r_max_star/r_gen", p));
            }
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown mode {other:?}; expected d-limit or n-limit"
            )))
        }
    }
    Ok((doc, EXIT_OK))
}

/// Monomials of the exceptional cells (4,4) and (5,3), ranked high to low.
fn table_exceptional() -> ReportDocument {
    let mut doc = ReportDocument::new("table", &["n", "d", "monomial", "rank", "generic_rank"]);
    doc.param("name", "exceptional-44-53");
    for (n, d) in [(4, 4), (5, 3)] {
        let g = generic_rank(n, d);
        let mut ms: Vec<Monomial> = enumerate_monomials(n, d).collect();
        ms.sort_by_key(|m| std::cmp::Reverse(m.rank()));
        for m in ms {
            doc.push_row(vec![
                n.to_string(),
                d.to_string(),
                m.to_string(),
                m.rank().to_string(),
                g.to_string(),
            ]);
        }
    }
    doc
}

/// Spanning coprime sums at (4,3), ranked low to high.
fn table_coprime_43() -> ReportDocument {
    let (n, d) = (4, 3);
    let mut doc = ReportDocument::new(
        "table",
        &["n", "d", "form", "blocks", "rank", "generic_rank"],
    );
    doc.param("name", "coprime-43");
    let g = generic_rank(n, d);
    let mut sums: Vec<CoprimeSum> = enumerate_coprime_sums(n, d, true).collect();
    sums.sort_by_key(|f| (f.rank(), std::cmp::Reverse(f.blocks().len())));
    for f in sums {
        doc.push_row(vec![
            n.to_string(),
            d.to_string(),
            f.to_string(),
            f.block_string(),
            f.rank().to_string(),
            g.to_string(),
        ]);
    }
    doc
}

fn table_known_examples() -> ReportDocument {
    let mut doc = ReportDocument::new(
        "table",
        &["label", "n", "d", "rank", "generic_rank", "source"],
    );
    doc.param("name", "known-examples");
    for e in known_examples() {
        doc.push_row(vec![
            e.label,
            e.n.to_string(),
            e.d.to_string(),
            e.rank.to_string(),
            generic_rank(e.n, e.d).to_string(),
            e.source_note,
        ]);
    }
    doc
}

fn table(name: &str) -> Outcome {
    let doc = match name {
        "exceptional-44-53" => table_exceptional(),
        "coprime-43" => table_coprime_43(),
        "known-examples" => table_known_examples(),
        other => {
            return Err(CliError::usage(format!(
                "unknown table {other:?}; expected exceptional-44-53, coprime-43, or known-examples"
            )))
        }
    };
    Ok((doc, EXIT_OK))
}
