//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use boxmat_core::fit::loglog_slope;
use boxmat_core::spectra::{parity_blocks, symmetric_eigenvalues, DEGENERACY_TOLERANCE};
use boxmat_core::{
    boundary_row_tail, exact_p2_entry, momentum_entry, naive_p3_entry, near_boundary_parts,
    near_boundary_tail, p2_partial_sum, pp2p_direct_partial, q_spectrum_pairing, q_squared,
    quad_power_entry, quadrature_entry, r_entry, telescoping_closed_form, telescoping_sum,
    triple_sum, truncate_after_squaring, BasisIndex, SpectrumReport, TruncationSpec,
};

type Outcome = Result<String, String>;

fn ix(v: usize) -> BasisIndex {
    BasisIndex::new(v).unwrap()
}

/// Half a unit in the last printed decimal place of `printed`.
fn half_ulp(printed: &str) -> f64 {
    let decimals = printed.split('.').nth(1).map_or(0, str::len);
    0.5 * 10f64.powi(-(decimals as i32))
}

fn within_printed(value: f64, printed: &str) -> bool {
    let target: f64 = printed.parse().unwrap();
    // Tiny slack for the decimal-to-binary conversion of the bound itself.
    (value - target).abs() <= half_ulp(printed) * (1.0 + 1e-9)
}

const TABLE1_SIZES: [usize; 6] = [99, 100, 999, 1000, 1999, 2000];
const TABLE1: [(usize, usize, [&str; 6], &str); 4] = [
    (
        1,
        2,
        ["2.156", "2.088", "2.127", "2.117", "2.125", "2.120"],
        "2.122",
    ),
    (
        2,
        3,
        ["9.828", "10.032", "9.918", "9.945", "9.924", "9.939"],
        "9.931",
    ),
    (
        20,
        31,
        ["935.67", "959.59", "956.05", "958.89", "956.77", "958.31"],
        "957.56",
    ),
    (
        60,
        91,
        ["5198.7", "6667.9", "8803.1", "8828.4", "8814.0", "8827.5"],
        "8822.4",
    ),
];

fn table1() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (m, n, row, target) in TABLE1 {
        for (order, printed) in TABLE1_SIZES.iter().zip(row) {
            let v = triple_sum(ix(m), ix(n), *order).map_err(|e| e.to_string())?;
            checked += 1;
            if !within_printed(v, printed) {
                failures.push(format!("S({m},{n};{order}) = {v:.6} vs {printed}"));
            }
        }
        let r = r_entry(ix(m), ix(n));
        checked += 1;
        if !within_printed(r, target) {
            failures.push(format!("R({m},{n}) = {r:.6} vs {target}"));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{checked} cells within half a unit of the printed digit"
        ))
    } else {
        Err(failures.join("; "))
    }
}

const TABLE2_RANKS: [usize; 10] = [1, 2, 3, 4, 5, 996, 997, 998, 999, 1000];
// Columns: N = 999 complete, N = 1000 truncated to 999, N = 1000 complete.
const TABLE2: [[&str; 3]; 10] = [
    ["0.000000", "0.996663", "0.996663"],
    ["3.986641", "3.986641", "0.996663"],
    ["3.986641", "8.969969", "8.969969"],
    ["15.94656", "15.94656", "8.969969"],
    ["15.94656", "24.91658", "24.91658"],
    ["988294.4", "988294.4", "986110.2"],
    ["988294.4", "990283.2", "990283.2"],
    ["992673.3", "992673.3", "990283.2"],
    ["992673.3", "994666.5", "994666.5"],
    ["", "", "994666.5"],
];

struct Spectra {
    complete_999: Vec<f64>,
    truncated_999: Vec<f64>,
    complete_1000: Vec<f64>,
}

fn spectra() -> Result<Spectra, String> {
    let e = |err: boxmat_core::Error| err.to_string();
    Ok(Spectra {
        complete_999: symmetric_eigenvalues(&q_squared(999).map_err(e)?).map_err(e)?,
        truncated_999: symmetric_eigenvalues(
            &truncate_after_squaring(TruncationSpec::new(1000, 1).map_err(e)?).map_err(e)?,
        )
        .map_err(e)?,
        complete_1000: symmetric_eigenvalues(&q_squared(1000).map_err(e)?).map_err(e)?,
    })
}

fn table2(s: &Spectra) -> Outcome {
    let columns = [&s.complete_999, &s.truncated_999, &s.complete_1000];
    let mut checked = 0;
    let mut failures = Vec::new();
    for (rank, row) in TABLE2_RANKS.iter().zip(TABLE2) {
        for (values, printed) in columns.iter().zip(row) {
            if printed.is_empty() {
                continue;
            }
            let v = values[rank - 1];
            checked += 1;
            if !within_printed(v, printed) {
                failures.push(format!("rank {rank}: {v:.7} vs {printed}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} printed eigenvalues reproduced"))
    } else {
        Err(failures.join("; "))
    }
}

fn p2_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 1..=5 {
        for n in 1..=5 {
            let err = (p2_partial_sum(ix(m), ix(n), 100_000) - exact_p2_entry(ix(m), ix(n))).abs();
            worst = worst.max(err);
        }
    }
    if worst > 1e-3 {
        return Err(format!("max |partial - mn δ| at N = 1e5 is {worst:e}"));
    }
    let sizes = [1_000usize, 2_000, 5_000, 10_000, 20_000, 50_000, 100_000];
    let mut slopes = Vec::new();
    for m in 1..=5usize {
        for n in m..=5usize {
            // Opposite-parity pairs have no nonzero terms at all: error is identically 0.
            if (m + n) % 2 == 1 {
                continue;
            }
            let points: Vec<(f64, f64)> = sizes
                .iter()
                .map(|&order| {
                    let err =
                        (p2_partial_sum(ix(m), ix(n), order) - exact_p2_entry(ix(m), ix(n))).abs();
                    (order as f64, err)
                })
                .collect();
            let slope = loglog_slope(&points).ok_or(format!("no slope for ({m},{n})"))?;
            if !(-1.2..=-0.8).contains(&slope) {
                return Err(format!("log-log slope for ({m},{n}) is {slope:.3}"));
            }
            slopes.push(slope);
        }
    }
    let (lo, hi) = slopes
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    Ok(format!(
        "max error {worst:.2e}; slopes over {} same-parity pairs in [{lo:.3}, {hi:.3}]",
        slopes.len()
    ))
}

fn pairing(s: &Spectra) -> Outcome {
    let q999 = q_spectrum_pairing(999, DEGENERACY_TOLERANCE).map_err(|e| e.to_string())?;
    if q999.zero_modes != 1 || q999.pair_count() != 499 || !q999.unpaired.is_empty() {
        return Err(format!(
            "Q(999): {} zero modes, {} pairs, {} unpaired",
            q999.zero_modes,
            q999.pair_count(),
            q999.unpaired.len()
        ));
    }
    let full = SpectrumReport::from_eigenvalues(s.complete_1000.clone(), DEGENERACY_TOLERANCE);
    let doublets = full.degeneracy_groups.iter().filter(|g| g.1 == 2).count();
    if full.degeneracy_groups.len() != 500 || doublets != 500 {
        return Err(format!(
            "Q²(1000): {} levels, {doublets} doublets",
            full.degeneracy_groups.len()
        ));
    }
    let truncated = SpectrumReport::from_eigenvalues(s.truncated_999.clone(), DEGENERACY_TOLERANCE);
    if !truncated.is_nondegenerate() || truncated.order != 999 {
        return Err("truncated spectrum has a degenerate level".into());
    }
    Ok(
        "Q(999): 1 zero mode + 499 pairs; Q²(1000): 500 doublets; truncated: 999 simple levels"
            .into(),
    )
}

fn block_identity() -> Outcome {
    let e = |err: boxmat_core::Error| err.to_string();
    let truncated = truncate_after_squaring(TruncationSpec::new(1000, 1).map_err(e)?).map_err(e)?;
    let (t_odd, t_even) = parity_blocks(&truncated);
    let (f_odd, _) = parity_blocks(&q_squared(1000).map_err(e)?);
    let (_, s_even) = parity_blocks(&q_squared(999).map_err(e)?);
    if t_odd != f_odd {
        return Err("odd-odd block differs from Q²(1000)".into());
    }
    if t_even != s_even {
        return Err("even-even block differs from Q²(999)".into());
    }
    Ok(format!(
        "odd block {}x{} == Q²(1000), even block {}x{} == Q²(999), bitwise",
        t_odd.order(),
        t_odd.order(),
        t_even.order(),
        t_even.order()
    ))
}

fn divergence_contrast() -> Outcome {
    let e = |err: boxmat_core::Error| err.to_string();
    let q4 = |order| quad_power_entry(ix(1), ix(1), order).map(|v| (v - 1.0).abs());
    let (d500, d1000, d2000) = (
        q4(500).map_err(e)?,
        q4(1000).map_err(e)?,
        q4(2000).map_err(e)?,
    );
    if !(d2000 > d1000 && d1000 > d500) {
        return Err(format!(
            "|Q⁴_11 - 1| not increasing: {d500}, {d1000}, {d2000}"
        ));
    }
    let target = 2.12207;
    let s500 = (triple_sum(ix(1), ix(2), 500).map_err(e)? - target).abs();
    let s2000 = (triple_sum(ix(1), ix(2), 2000).map_err(e)? - target).abs();
    if s2000 >= s500 {
        return Err(format!("S_12 error not shrinking: {s500:e} -> {s2000:e}"));
    }
    Ok(format!(
        "|Q⁴_11 - 1| = {d500:.1}, {d1000:.1}, {d2000:.1}; |S_12 - R_12| = {s500:.2e} -> {s2000:.2e}"
    ))
}

fn pp2p_linear() -> Outcome {
    let e = |err: boxmat_core::Error| err.to_string();
    let a = pp2p_direct_partial(ix(1), ix(3), 2000).map_err(e)? / 2000.0;
    let b = pp2p_direct_partial(ix(1), ix(3), 4000).map_err(e)? / 4000.0;
    let rel = (a - b).abs() / b.abs();
    if rel > 0.05 || b == 0.0 {
        return Err(format!("per-unit growth {a} vs {b} (rel {rel:.3})"));
    }
    Ok(format!(
        "PP²P_13(S)/S = {a:.5} at 2000, {b:.5} at 4000 (rel diff {rel:.2e})"
    ))
}

fn asymptotics() -> Outcome {
    let e = |err: boxmat_core::Error| err.to_string();
    for k in [0usize, 1, 10, 1_000_000] {
        let diff = (telescoping_sum(k) - telescoping_closed_form(k)).abs();
        if diff > 1e-14 {
            return Err(format!("telescoping sum at k_max = {k} off by {diff:e}"));
        }
    }
    let mut ratios = Vec::new();
    for order in [200usize, 400, 800] {
        let r = boundary_row_tail(ix(1), ix(2), 2 * order).map_err(e)?
            / boundary_row_tail(ix(1), ix(2), order).map_err(e)?;
        if !(0.15..=0.40).contains(&r) {
            return Err(format!("tail ratio at N = {order} is {r}"));
        }
        ratios.push(r);
    }
    let order = 100_000;
    let mut prev = (0.0, 0.0);
    for k in [10usize, 100, 1_000, 10_000] {
        let parts = near_boundary_parts(order, k).map_err(e)?;
        if parts.0 <= prev.0 || parts.1 <= prev.1 {
            return Err(format!("individual sums not growing at k_max = {k}"));
        }
        prev = parts;
    }
    let mut scaled = Vec::new();
    for order in [1_000usize, 10_000, 100_000] {
        scaled.push(order as f64 * near_boundary_tail(order, order / 10).map_err(e)?);
    }
    if !scaled.windows(2).all(|w| w[1].abs() < w[0].abs()) {
        return Err(format!("N·tail not shrinking: {scaled:?}"));
    }
    Ok(format!(
        "ratios {:.3}/{:.3}/{:.3}; N·tail = {:.2e}, {:.2e}, {:.2e}",
        ratios[0], ratios[1], ratios[2], scaled[0], scaled[1], scaled[2]
    ))
}

fn oracle_gate() -> Outcome {
    let mut worst = [0.0_f64; 3];
    for m in 1..=30 {
        for n in 1..=30 {
            let (m, n) = (ix(m), ix(n));
            let q1 = quadrature_entry(m, n, 1);
            let q2 = quadrature_entry(m, n, 2);
            let q3 = quadrature_entry(m, n, 3);
            worst[0] = worst[0]
                .max((q1.im - momentum_entry(m, n)).abs())
                .max(q1.re.abs());
            worst[1] = worst[1]
                .max((q2.re - exact_p2_entry(m, n)).abs())
                .max(q2.im.abs());
            worst[2] = worst[2]
                .max((q3.im - naive_p3_entry(m, n)).abs())
                .max(q3.re.abs());
        }
    }
    if worst.iter().any(|&w| w > 1e-9) {
        return Err(format!("max deviations {worst:?}"));
    }
    Ok(format!(
        "max |quadrature - closed form| = {:.1e} (P), {:.1e} (P²), {:.1e} (P³)",
        worst[0], worst[1], worst[2]
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {id} ({name}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {id} ({name}): {detail} [{secs:.1}s]");
            }
        }
    };

    report(9, "quadrature oracle gate", &oracle_gate);
    report(1, "reference triple sums", &table1);
    let spectra = spectra();
    match &spectra {
        Ok(s) => {
            report(2, "reference Q² eigenvalues", &|| table2(s));
            report(4, "pairing and degeneracy", &|| pairing(s));
        }
        Err(e) => {
            let e = e.clone();
            report(2, "reference Q² eigenvalues", &|| Err(e.clone()));
            report(4, "pairing and degeneracy", &|| Err(e.clone()));
        }
    }
    report(3, "P² partial sums", &p2_identity);
    report(5, "parity block identity", &block_identity);
    report(6, "divergence contrast", &divergence_contrast);
    report(7, "PP²P linear growth", &pp2p_linear);
    report(8, "tail asymptotics", &asymptotics);

    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
