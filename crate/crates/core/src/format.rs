//! Deterministic float rendering for reports.

pub const DEFAULT_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant digits. `-0.0` becomes `0.0`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let digits = digits.clamp(1, 17);
    let y: f64 = format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("valid float text");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Shortest text of `x` after rounding to `digits` significant digits;
/// exponent form below `1e-5` and from `1e16`.
pub fn fmt_float(x: f64, digits: usize) -> String {
    let y = round_sig(x, digits);
    let a = y.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}
