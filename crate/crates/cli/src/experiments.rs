//! One function per CLI command, each turning an [`ExperimentConfig`] into a [`Report`].

use std::fs::File;
use std::io::{self, BufWriter, Write};

use boxmat_core::fit::loglog_slope;
use boxmat_core::spectra::{near_integers, symmetric_eigenvalues, DEGENERACY_TOLERANCE};
use boxmat_core::{
    associativity_gap, exact_p2_entry, near_boundary_tail, p2_partial_sum, pp2p_direct_partial,
    q_spectrum_pairing, q_squared, quad_power_entry, r_entry, sweep_triple_sum,
    truncate_after_squaring, BasisIndex, TailEstimate, TruncationSpec,
};

use crate::config::{Command, ExperimentConfig, OutputFormat};
use crate::error::CliError;
use crate::report::{Cell, Column, Precision, Report};

const TABLE1_DIGITS: Precision = Precision::Significant {
    digits: 5,
    max_decimals: 3,
};
const TABLE2_DIGITS: Precision = Precision::Significant {
    digits: 7,
    max_decimals: 6,
};
const ERROR_DIGITS: Precision = Precision::Scientific(3);

/// Levels listed per size by `spectrum-pairs`.
const PAIR_LEVELS: usize = 10;

fn pair(m: usize, n: usize) -> Result<(BasisIndex, BasisIndex), CliError> {
    Ok((BasisIndex::new(m)?, BasisIndex::new(n)?))
}

fn echo(config: &ExperimentConfig) -> serde_json::Value {
    serde_json::to_value(config).expect("config serializes")
}

/// Runs the configured experiment and builds its report.
pub fn build_report(config: &ExperimentConfig) -> Result<Report, CliError> {
    config.validate()?;
    match config.command {
        Command::Table1 => run_table1(config),
        Command::Table2 => run_table2(config),
        Command::P2check => run_p2check(config),
        Command::Assoc => run_assoc(config),
        Command::Diverge => run_diverge(config),
        Command::Tails => run_tails(config),
        Command::SpectrumPairs => run_spectrum_pairs(config),
    }
}

/// Builds the report and writes it to the configured path (or stdout).
pub fn run(config: &ExperimentConfig) -> Result<Report, CliError> {
    let report = build_report(config)?;
    let text = match config.output_format {
        OutputFormat::Csv => report.to_csv_string(),
        OutputFormat::Json => report.to_json_string(),
    };
    match &config.output_path {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.clone(),
                source,
            };
            let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
            out.write_all(text.as_bytes()).map_err(io_err)?;
            out.flush().map_err(io_err)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(report)
}

/// `-i·S_mn` against `-i·R_mn` for every (pair, N).
pub fn run_table1(config: &ExperimentConfig) -> Result<Report, CliError> {
    let mut report = Report::new(
        "table1",
        echo(config),
        vec![
            Column::int("m"),
            Column::int("n"),
            Column::int("N"),
            Column::float("minus_i_S", TABLE1_DIGITS),
            Column::float("minus_i_R", TABLE1_DIGITS),
            Column::float("abs_error", ERROR_DIGITS),
        ],
    );
    for &(m, n) in &config.pairs {
        let (bm, bn) = pair(m, n)?;
        let series = sweep_triple_sum(bm, bn, &config.sizes)?;
        let target = r_entry(bm, bn);
        for (order, value) in series.points {
            report.push(vec![
                m.into(),
                n.into(),
                order.into(),
                value.into(),
                target.into(),
                (value - target).abs().into(),
            ]);
        }
    }
    Ok(report)
}

/// Ascending spectra of `Q²` at each size, with the trailing-deletion repair of
/// the largest size laid out next to it.
pub fn run_table2(config: &ExperimentConfig) -> Result<Report, CliError> {
    let largest = *config.sizes.last().expect("validated nonempty");
    let mut names: Vec<String> = Vec::new();
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for &order in &config.sizes[..config.sizes.len() - 1] {
        names.push(format!("N{order}_complete"));
        spectra.push(symmetric_eigenvalues(&q_squared(order)?)?);
    }
    if config.delete_tail > 0 {
        let spec = TruncationSpec::new(largest, config.delete_tail)?;
        names.push(format!("N{largest}_truncated_{}", spec.kept_order()));
        spectra.push(symmetric_eigenvalues(&truncate_after_squaring(spec)?)?);
    }
    names.push(format!("N{largest}_complete"));
    spectra.push(symmetric_eigenvalues(&q_squared(largest)?)?);

    let mut columns = vec![Column::int("rank")];
    columns.extend(
        names
            .into_iter()
            .map(|name| Column::float(name, TABLE2_DIGITS)),
    );
    let mut report = Report::new("table2", echo(config), columns);
    let rows = spectra.iter().map(Vec::len).max().unwrap_or(0);
    for rank in 1..=rows {
        let mut row = vec![Cell::from(rank)];
        row.extend(spectra.iter().map(|s| Cell::from(s.get(rank - 1).copied())));
        report.push(row);
    }
    Ok(report)
}

/// Partial sums of `P²` entries against `mn·δ_mn`, with the fitted log-log
/// slope of the error per pair.
pub fn run_p2check(config: &ExperimentConfig) -> Result<Report, CliError> {
    let mut report = Report::new(
        "p2check",
        echo(config),
        vec![
            Column::int("m"),
            Column::int("n"),
            Column::int("N"),
            Column::float("partial_sum", Precision::Decimals(9)),
            Column::float("exact", Precision::Decimals(1)),
            Column::float("abs_error", ERROR_DIGITS),
            Column::float("error_slope", Precision::Decimals(4)),
        ],
    );
    for &(m, n) in &config.pairs {
        let (bm, bn) = pair(m, n)?;
        let exact = exact_p2_entry(bm, bn);
        let values: Vec<(usize, f64)> = config
            .sizes
            .iter()
            .map(|&order| (order, p2_partial_sum(bm, bn, order)))
            .collect();
        let slope = loglog_slope(
            &values
                .iter()
                .map(|&(order, v)| (order as f64, (v - exact).abs()))
                .collect::<Vec<_>>(),
        );
        for (order, v) in values {
            report.push(vec![
                m.into(),
                n.into(),
                order.into(),
                v.into(),
                exact.into(),
                (v - exact).abs().into(),
                slope.into(),
            ]);
        }
    }
    Ok(report)
}

/// `P·P²` against `P²·P` (i-factored) and the Hermitian mean `R`.
pub fn run_assoc(config: &ExperimentConfig) -> Result<Report, CliError> {
    let digits = Precision::Significant {
        digits: 10,
        max_decimals: 9,
    };
    let mut report = Report::new(
        "assoc",
        echo(config),
        vec![
            Column::int("m"),
            Column::int("n"),
            Column::float("p_p2", digits),
            Column::float("p2_p", digits),
            Column::float("ratio", Precision::Decimals(6)),
            Column::float("minus_i_R", digits),
        ],
    );
    for &(m, n) in &config.pairs {
        let (bm, bn) = pair(m, n)?;
        let gap = associativity_gap(bm, bn);
        let ratio = (gap.right != 0.0).then(|| gap.left / gap.right);
        report.push(vec![
            m.into(),
            n.into(),
            gap.left.into(),
            gap.right.into(),
            ratio.into(),
            r_entry(bm, bn).into(),
        ]);
    }
    Ok(report)
}

/// `(Q⁴)_mn` against the exact `m²n²δ_mn`, next to the direct `PP²P` partial
/// sum cut at `s ≤ N`. The growth slope is the log-log slope of `|Q⁴ - exact|`.
pub fn run_diverge(config: &ExperimentConfig) -> Result<Report, CliError> {
    let mut report = Report::new(
        "diverge",
        echo(config),
        vec![
            Column::int("m"),
            Column::int("n"),
            Column::int("N"),
            Column::float("q4_value", Precision::Decimals(4)),
            Column::float("exact_p4", Precision::Decimals(1)),
            Column::float("pp2p_partial", Precision::Decimals(4)),
            Column::float("q4_growth_slope", Precision::Decimals(4)),
        ],
    );
    for &(m, n) in &config.pairs {
        let (bm, bn) = pair(m, n)?;
        let exact = exact_p2_entry(bm, bn).powi(2);
        let same_parity = (m + n) % 2 == 0;
        let mut rows = Vec::with_capacity(config.sizes.len());
        for &order in &config.sizes {
            let q4 = quad_power_entry(bm, bn, order)?;
            let pp2p = if same_parity {
                Some(pp2p_direct_partial(bm, bn, order)?)
            } else {
                None
            };
            rows.push((order, q4, pp2p));
        }
        let slope = loglog_slope(
            &rows
                .iter()
                .map(|&(order, q4, _)| (order as f64, (q4 - exact).abs()))
                .collect::<Vec<_>>(),
        );
        for (order, q4, pp2p) in rows {
            report.push(vec![
                m.into(),
                n.into(),
                order.into(),
                q4.into(),
                exact.into(),
                pp2p.into(),
                slope.into(),
            ]);
        }
    }
    Ok(report)
}

/// Boundary-row tail, its near-boundary approximation with `k_max = N/10`, and
/// the telescoped estimate.
pub fn run_tails(config: &ExperimentConfig) -> Result<Report, CliError> {
    let sci = Precision::Scientific(6);
    let mut report = Report::new(
        "tails",
        echo(config),
        vec![
            Column::int("m"),
            Column::int("n"),
            Column::int("N"),
            Column::int("k_max"),
            Column::float("boundary_tail", sci),
            Column::float("near_boundary_tail", sci),
            Column::float("telescoped", sci),
            Column::float("n2_boundary_tail", Precision::Decimals(6)),
            Column::float("ratio_to_previous", Precision::Decimals(4)),
        ],
    );
    for &(m, n) in &config.pairs {
        let (bm, bn) = pair(m, n)?;
        let mut previous: Option<(usize, f64)> = None;
        for &order in &config.sizes {
            let k_max = order / 10;
            let t = TailEstimate::compute(bm, bn, order, k_max)?;
            debug_assert_eq!(t.near_boundary, near_boundary_tail(order, k_max)?);
            let ratio = previous
                .filter(|&(prev, _)| 2 * prev == order)
                .map(|(_, v)| t.exact / v);
            report.push(vec![
                m.into(),
                n.into(),
                order.into(),
                k_max.into(),
                t.exact.into(),
                t.near_boundary.into(),
                t.telescoped.into(),
                (t.exact * (order * order) as f64).into(),
                ratio.into(),
            ]);
            previous = Some((order, t.exact));
        }
    }
    Ok(report)
}

/// `±λ` pairing of `Q` and the distance of the lowest magnitudes to integers
/// of parity opposite to `N`.
pub fn run_spectrum_pairs(config: &ExperimentConfig) -> Result<Report, CliError> {
    let tol = config.tolerance("grouping", DEGENERACY_TOLERANCE);
    let mut report = Report::new(
        "spectrum-pairs",
        echo(config),
        vec![
            Column::int("N"),
            Column::int("zero_modes"),
            Column::int("pairs"),
            Column::int("consistent"),
            Column::int("level"),
            Column::float("magnitude", Precision::Decimals(6)),
            Column::int("nearest_integer"),
            Column::float("distance", ERROR_DIGITS),
        ],
    );
    for &order in &config.sizes {
        let pairing = q_spectrum_pairing(order, tol)?;
        let near = near_integers(order, &pairing.pair_magnitudes);
        for (level, e) in near.iter().take(PAIR_LEVELS).enumerate() {
            report.push(vec![
                order.into(),
                pairing.zero_modes.into(),
                pairing.pair_count().into(),
                pairing.is_consistent().into(),
                (level + 1).into(),
                e.magnitude.into(),
                Cell::Int(e.integer as i64),
                e.error.into(),
            ]);
        }
    }
    Ok(report)
}
