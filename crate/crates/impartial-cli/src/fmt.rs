//! Numeric formatting for CSV and report output: reals at six significant
//! digits with trailing zeros trimmed, exact rationals as decimal strings
//! when they terminate.

use num_rational::Ratio;

fn trim_decimal(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Formats with six significant digits, no trailing zeros. The decimal
/// magnitude is found by repeated scaling rather than `log10`, so output
/// never depends on the platform's libm rounding.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mut magnitude = 0i32;
    let mut scaled = x.abs();
    while scaled >= 10.0 {
        scaled /= 10.0;
        magnitude += 1;
    }
    while scaled < 1.0 {
        scaled *= 10.0;
        magnitude -= 1;
    }
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    trim_decimal(format!("{x:.decimals$}"))
}

/// Decimal string of a rational: exact when the reduced denominator has only
/// factors 2 and 5, six significant digits otherwise.
pub fn ratio_decimal(r: Ratio<u64>) -> String {
    let numer = *r.numer();
    let denom = *r.denom();
    if numer == 0 {
        return "0".to_string();
    }
    let mut rest = denom;
    let mut twos = 0u32;
    let mut fives = 0u32;
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    let places = twos.max(fives);
    if rest != 1 || places > 30 {
        return sig6(numer as f64 / denom as f64);
    }
    let scaled = numer as u128 * 10u128.pow(places) / denom as u128;
    let divisor = 10u128.pow(places);
    let integer = scaled / divisor;
    let fraction = scaled % divisor;
    if places == 0 {
        integer.to_string()
    } else {
        trim_decimal(format!(
            "{integer}.{fraction:0width$}",
            width = places as usize
        ))
    }
}
