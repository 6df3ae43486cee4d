//! Export of aggregates and boxplot summaries.

use super::stats::AggregateRow;
use crate::stats::BoxplotSummary;

/// Header of the aggregate CSV.
pub const STATS_HEADER: &str = "method,params,n,median,mad,count";

/// Aggregates as CSV (`method,params,n,median,mad,count`).
pub fn export_stats_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from(STATS_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.method, row.params, row.n, row.median, row.mad, row.count
        ));
    }
    out
}

/// Aggregates as an aligned text table.
pub fn export_stats_table(rows: &[AggregateRow]) -> String {
    let mut lines: Vec<[String; 6]> = vec![[
        "method".into(),
        "params".into(),
        "n".into(),
        "median".into(),
        "mad".into(),
        "count".into(),
    ]];
    for row in rows {
        lines.push([
            row.method.clone(),
            row.params.clone(),
            row.n.to_string(),
            format!("{:.4}", row.median),
            format!("{:.4}", row.mad),
            row.count.to_string(),
        ]);
    }
    let widths: Vec<usize> =
        (0..6).map(|col| lines.iter().map(|l| l[col].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for line in &lines {
        let rendered: Vec<String> =
            line.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        out.push_str(rendered.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Plot-data series: one row per `(series, n)` point with the median as
/// the y value and the MAD as the error bar, sorted by series then n.
pub fn export_plot_data(rows: &[AggregateRow]) -> String {
    let mut sorted: Vec<&AggregateRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.method, &a.params, a.n).cmp(&(&b.method, &b.params, b.n))
    });
    let mut out = String::from("series,n,median,mad\n");
    for row in sorted {
        out.push_str(&format!(
            "{}({}),{},{},{}\n",
            row.method, row.params, row.n, row.median, row.mad
        ));
    }
    out
}

/// Boxplot quantiles per group: `group,count,min,q1,median,q3,max,outliers`
/// with the outlier list `;`-joined inside the final field.
pub fn export_boxplot_csv(groups: &[(String, Vec<f64>)]) -> String {
    let mut out = String::from("group,count,min,q1,median,q3,max,outliers\n");
    for (name, values) in groups {
        match BoxplotSummary::from_values(values) {
            Some(s) => {
                let outliers =
                    s.outliers.iter().map(f64::to_string).collect::<Vec<_>>().join(";");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    name,
                    values.len(),
                    s.min,
                    s.q1,
                    s.median,
                    s.q3,
                    s.max,
                    outliers
                ));
            }
            None => log::warn!("boxplot group '{name}' is empty; omitted"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(method: &str, n: usize, median: f64) -> AggregateRow {
        AggregateRow {
            method: method.to_owned(),
            params: "p=1".to_owned(),
            n,
            median,
            mad: 0.1,
            count: 50,
        }
    }

    #[test]
    fn empty_stats_export_is_header_only() {
        assert_eq!(export_stats_csv(&[]), "method,params,n,median,mad,count\n");
        assert_eq!(export_plot_data(&[]), "series,n,median,mad\n");
    }

    #[test]
    fn single_group_exports_one_row_with_expected_columns() {
        let out = export_stats_csv(&[row("sa", 10, 0.5)]);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), STATS_HEADER);
        assert_eq!(lines.next().unwrap(), "sa,p=1,10,0.5,0.1,50");
        assert!(lines.next().is_none());
    }

    #[test]
    fn table_is_aligned_and_complete() {
        let out = export_stats_table(&[row("sa", 10, 0.5), row("diqa", 14, 0.25)]);
        assert_eq!(out.lines().count(), 3);
        assert!(out.contains("0.2500"));
    }

    #[test]
    fn plot_data_sorted_by_series_then_n() {
        let out = export_plot_data(&[row("sa", 14, 0.3), row("sa", 10, 0.5), row("diqa", 10, 0.2)]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[1], "diqa(p=1),10,0.2,0.1");
        assert_eq!(lines[2], "sa(p=1),10,0.5,0.1");
        assert_eq!(lines[3], "sa(p=1),14,0.3,0.1");
    }

    #[test]
    fn boxplot_rows_carry_quantiles_and_outliers() {
        let groups = vec![
            ("pp=50".to_owned(), vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 9.0]),
            ("empty".to_owned(), vec![]),
        ];
        let out = export_boxplot_csv(&groups);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2); // empty group omitted
        assert!(lines[1].starts_with("pp=50,8,"));
        assert!(lines[1].ends_with(",9"));
    }

    #[test]
    fn exports_are_deterministic() {
        let rows = vec![row("sa", 10, 1.0 / 3.0), row("qasa", 18, 0.125)];
        assert_eq!(export_stats_csv(&rows), export_stats_csv(&rows));
        assert_eq!(export_plot_data(&rows), export_plot_data(&rows));
    }
}
