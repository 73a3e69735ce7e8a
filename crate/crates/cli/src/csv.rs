//! Number formatting shared by every table the CLI writes.
//!
//! Values are printed with 12 significant digits, `.` as decimal separator
//! and `\n` line endings. Fixed notation is used for magnitudes in
//! `[1e-4, 1e12)` and exponent notation otherwise, so output is stable
//! across runs and platforms and parses back with `str::parse::<f64>`.

use std::fmt::Write;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs();
    if (1e-4..1e12).contains(&magnitude) {
        let exponent = magnitude.log10().floor() as i64;
        let decimals = (SIGNIFICANT_DIGITS as i64 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = SIGNIFICANT_DIGITS - 1)
    }
}

/// Accumulates a header and numeric rows.
#[derive(Debug, Clone)]
pub struct Table {
    columns: usize,
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self {
            columns: header.len(),
            text,
        }
    }

    /// Appends a row of preformatted cells.
    pub fn push_cells(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width must match the header");
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn push(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| format_number(*v)).collect();
        self.push_cells(&cells);
    }

    pub fn rows(&self) -> usize {
        self.text.lines().count() - 1
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// `"1 2 3"`-style rendering of an index list, safe inside a CSV cell.
pub fn format_indices(xs: &[usize]) -> String {
    let mut out = String::new();
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write!(out, "{x}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.5), "0.500000000000");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(-2.0), "-2.00000000000");
        assert_eq!(format_number(12.5), "12.5000000000");
        assert_eq!(format_number(1.5e-7), "1.50000000000e-7");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn parses_back_closely() {
        for x in [0.707106781186547, 2.8284271247, 1e-9, 31.99999999, 0.000123456789] {
            let y: f64 = format_number(x).parse().unwrap();
            assert!((x - y).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push(&[1.0, 0.25]);
        assert_eq!(t.rows(), 1);
        assert_eq!(t.into_string(), "a,b\n1.00000000000,0.250000000000\n");
        assert_eq!(format_indices(&[1, 2, 3]), "1 2 3");
    }
}
