//! Rendering helpers shared by the subcommands.
//!
//! JSON is the machine interface: every numeric value is emitted exactly
//! (full cyclotomic coordinates) together with a float shadow.  The pretty
//! format is a human view of the same data; CSV is offered for character
//! grids only.

use crate::config::RunConfig;
use serde_json::{json, Value};
use spindex_core::exactnum::{rat_display, CycNum, Rat};
use spindex_core::springerdb::FileRat;

/// A JSON value cell: exact cyclotomic coordinates, algebraic pretty form,
/// and the float shadow.
pub fn cyc_cell(v: &CycNum) -> Value {
    let (re, im) = v.float_shadow();
    json!({
        "exact": v,
        "pretty": v.pretty(),
        "shadow": {"re": re, "im": im},
    })
}

/// A JSON value cell for a plain rational.
pub fn rat_cell(r: &Rat) -> Value {
    let (re, im) = CycNum::from_rat(r.clone()).float_shadow();
    json!({
        "exact": FileRat(r.clone()),
        "pretty": rat_display(r),
        "shadow": {"re": re, "im": im},
    })
}

/// Inline pretty form with the shadow attached: `14/3 (≈4.6667)`.
pub fn cyc_inline(v: &CycNum) -> String {
    format!("{} (≈{})", v.pretty(), shadow_str(v))
}

/// Short float-shadow string; complex values get both coordinates.
pub fn shadow_str(v: &CycNum) -> String {
    let (re, im) = v.float_shadow();
    if im.abs() > 1e-12 {
        format!("{:.4}{:+.4}i", re, im)
    } else {
        format!("{:.4}", re)
    }
}

pub fn rat_inline(r: &Rat) -> String {
    let v = CycNum::from_rat(r.clone());
    format!("{} (≈{})", rat_display(r), shadow_str(&v))
}

/// The full JSON envelope: resolved configuration plus the result.
pub fn json_envelope(config: &RunConfig, result: Value) -> String {
    let doc = json!({"config": config.to_json(), "result": result});
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON output serializes");
    s.push('\n');
    s
}

/// The two header lines shared by the pretty and CSV formats.
pub fn text_header(config: &RunConfig) -> String {
    let compact = serde_json::to_string(&config.to_json()).expect("config serializes");
    format!("# spindex {}\n# config {}\n", config.command, compact)
}

/// Align columns of a text table; the first row is the header.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut width = vec![0usize; cols];
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            width[j] = width[j].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = width[j].saturating_sub(cell.chars().count());
            if j + 1 < row.len() {
                line.extend(std::iter::repeat(' ').take(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// One CSV line; cells are plain algebraic strings and never contain
/// commas or quotes.
pub fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}
