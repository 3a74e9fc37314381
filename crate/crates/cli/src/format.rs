//! Fixed numeric display.

/// `x` with 6 significant digits, trailing zeros dropped (C `%.6g`).
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.5e}");
    let (mantissa, e) = s.split_once('e').expect("exponent form");
    let e: i32 = e.parse().expect("integer exponent");
    if (-4..6).contains(&e) {
        let decimals = (5 - e).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{e}", trim(mantissa))
    }
}

/// `x` rounded to 6 significant digits, as a number.
pub fn round6(x: f64) -> f64 {
    sig6(x).parse().expect("sig6 output parses")
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
