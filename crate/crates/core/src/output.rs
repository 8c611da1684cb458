//! Shared float formatting for tabular output.

/// Round-trippable scientific notation (17 significant digits).
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}
