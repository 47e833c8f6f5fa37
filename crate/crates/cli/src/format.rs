//! Plain-text tables.

/// `x` with 6 significant digits; scientific notation outside `[1e-4, 1e6)`.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mut exp = x.abs().log10().floor() as i32;
    // rounding may carry into the next decade (9.999996 -> 10.0000)
    if (x.abs() / 10f64.powi(exp)) * 1e5 >= 999_999.5 {
        exp += 1;
    }
    if !(-4..6).contains(&exp) {
        format!("{x:.5e}")
    } else {
        format!("{x:.*}", (5 - exp) as usize)
    }
}

/// Right-aligned columns separated by two spaces.
pub fn render(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(9.792877), "9.79288");
        assert_eq!(sig6(25.0), "25.0000");
        assert_eq!(sig6(0.98722), "0.987220");
        assert_eq!(sig6(46.76485), "46.7649");
        assert_eq!(sig6(9.9999996), "10.0000");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(0.00001234), "1.23400e-5");
        assert_eq!(sig6(-2.5), "-2.50000");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn aligned() {
        let t = render(&["K", "value"], &[vec!["5".into(), "1.00000".into()], vec!["100".into(), "x".into()]]);
        assert_eq!(t, "  K    value\n  5  1.00000\n100        x\n");
    }
}
