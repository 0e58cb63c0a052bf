//! Deterministic float formatting for CSV and golden files.

/// Formats with 12 significant digits, printf `%.12g` style: positional
/// notation for decimal exponents in `[-4, 12)`, scientific otherwise.
/// Trailing zeros are kept so equal values always produce equal bytes.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        // normalizes -0.0 as well
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    // exponent taken after mantissa rounding
    let exp: i32 = sci
        .split('e')
        .nth(1)
        .expect("scientific format")
        .parse()
        .expect("exponent");
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        sci
    }
}

/// Joins one CSV row, no quoting (fields never contain commas).
pub fn csv_row(fields: &[String]) -> String {
    fields.join(",")
}
