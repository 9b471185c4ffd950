//! CSV and LaTeX renderings of a comparison table.
//!
//! Both put one row per predicate group and one column per contribution;
//! a cell holding several objects joins them with `"; "`.

use super::ComparisonTable;
use crate::scalar::Scalar;

pub const CELL_SEPARATOR: &str = "; ";

fn cell_text<S>(table: &ComparisonTable<S>, g: usize, c: usize) -> String {
    table.cells[g][c]
        .iter()
        .map(|v| v.label.as_str())
        .collect::<Vec<_>>()
        .join(CELL_SEPARATOR)
}

/// RFC 4180 CSV: fields quoted only when needed, CRLF line endings.
pub fn to_csv<S: Scalar>(table: &ComparisonTable<S>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    let header = std::iter::once("Property".to_owned()).chain(table.contributions.iter().map(|c| c.title.clone()));
    writer.write_record(header).expect("in-memory write");
    for (g, group) in table.groups.iter().enumerate() {
        let row = std::iter::once(group.display_label.clone())
            .chain((0..table.contributions.len()).map(|c| cell_text(table, g, c)));
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("UTF-8 input")
}

/// Escapes the LaTeX special characters.
pub fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '\n' | '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// A `tabular` environment with a rule under the header.
pub fn to_latex<S: Scalar>(table: &ComparisonTable<S>) -> String {
    let n = table.contributions.len();
    let mut out = String::new();
    out.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n\\hline\n", "l".repeat(n)));
    let header: Vec<String> = std::iter::once("Property".to_owned())
        .chain(table.contributions.iter().map(|c| latex_escape(&c.title)))
        .collect();
    out.push_str(&header.join(" & "));
    out.push_str(" \\\\\n\\hline\n");
    for (g, group) in table.groups.iter().enumerate() {
        let row: Vec<String> = std::iter::once(latex_escape(&group.display_label))
            .chain((0..n).map(|c| latex_escape(&cell_text(table, g, c))))
            .collect();
        out.push_str(&row.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
