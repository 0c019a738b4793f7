//! Text renderings of the minimum-`N` overview.

use std::fmt::Write as _;

use partial_profile::construct::{plan_minimum_n, ConstructionPlan};

pub const RHO_RANGE: std::ops::RangeInclusive<usize> = 2..=6;
pub const N_RANGE: std::ops::RangeInclusive<usize> = 3..=15;

const CELL_WIDTH: usize = 13;

/// Plans for every populated cell (`n > rho`), row by row.
pub fn table1_plans() -> Vec<ConstructionPlan> {
    RHO_RANGE
        .flat_map(|rho| N_RANGE.filter(move |&n| n > rho).map(move |n| plan_minimum_n(n, rho).expect("valid cell")))
        .collect()
}

/// Cells where Method-W needs strictly fewer sets than Method-H.
pub fn table2_plans() -> Vec<ConstructionPlan> {
    table1_plans().into_iter().filter(ConstructionPlan::improves_on_method_h).collect()
}

fn push_row(out: &mut String, label: &str, cells: impl IntoIterator<Item = String>) {
    let mut line = format!("{label:<CELL_WIDTH$}");
    for c in cells {
        let _ = write!(line, "{c:<CELL_WIDTH$}");
    }
    out.push_str(line.trim_end());
    out.push('\n');
}

/// Grid of `N, tag` cells; `*` marks cells improved by Method-W.
pub fn render_table1() -> String {
    let plans = table1_plans();
    let mut out = String::from("Minimum N for an optimal paired design (rows rho, columns n)\n");
    push_row(&mut out, "rho\\n", N_RANGE.map(|n| n.to_string()));
    for rho in RHO_RANGE {
        let cells = N_RANGE.map(|n| {
            plans
                .iter()
                .find(|p| p.n == n && p.rho == rho)
                .map_or_else(|| "-".to_string(), ConstructionPlan::table_cell)
        });
        push_row(&mut out, &rho.to_string(), cells);
    }
    out
}

pub fn render_table2() -> String {
    let plans = table2_plans();
    let mut out = String::from("Cases improved by Method-W\n");
    push_row(&mut out, "(rho, n)", plans.iter().map(|p| format!("({}, {})", p.rho, p.n)));
    push_row(&mut out, "Method-H", plans.iter().map(|p| p.method_h_sets.to_string()));
    push_row(&mut out, "Method-W", plans.iter().map(|p| p.n_sets.to_string()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn populated_cell_count() {
        assert_eq!(table1_plans().len(), 13 + 12 + 11 + 10 + 9);
        assert_eq!(table2_plans().len(), 8);
    }

    #[test]
    fn rendering_is_stable() {
        assert_eq!(render_table1(), render_table1());
        assert!(render_table1().lines().all(|l| !l.ends_with(' ')));
    }
}
