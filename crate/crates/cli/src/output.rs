//! Deterministic CSV serialization with provenance headers.

use std::io::Write;

/// Formats a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV document: `#`-prefixed provenance lines, a header row, a units
/// row, then one record per grid point.
pub struct Csv {
    lines: Vec<String>,
    columns: usize,
}

impl Csv {
    pub fn new(
        subcommand: &str,
        path_label: &str,
        provenance: &str,
        header: &[&str],
        units: &[&str],
    ) -> Self {
        assert_eq!(header.len(), units.len());
        let lines = vec![
            format!("# cpt-shift {}", env!("CARGO_PKG_VERSION")),
            format!("# subcommand: {subcommand}"),
            format!("# path: {path_label}"),
            format!("# params: {provenance}"),
            header.join(","),
            units.join(","),
        ];
        Self {
            lines,
            columns: header.len(),
        }
    }

    /// Appends one data record; numeric fields pre-formatted by the caller
    /// so non-numeric status columns stay possible.
    pub fn push_record(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns);
        self.lines.push(fields.join(","));
    }

    pub fn push_floats(&mut self, values: &[f64]) {
        let fields: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
        self.push_record(&fields);
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        for line in &self.lines {
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_string(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}
