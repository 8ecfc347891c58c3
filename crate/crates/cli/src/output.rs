//! Number formatting and CSV/JSON serialization of row records.

use std::fmt::Write as _;

use serde::Serialize;

use crate::args::Format;

pub const SIGNIFICANT: usize = 12;

/// `x` to 12 significant digits in `%g` style: plain decimals for moderate
/// exponents, scientific otherwise, trailing zeros dropped, `-0` printed as `0`.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest.replace('.', "")),
        None => (false, mantissa.replace('.', "")),
    };
    if digits.bytes().all(|b| b == b'0') {
        return "0".into();
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(digits.trim_end_matches('0'));
        } else {
            let split = exp as usize + 1;
            let (int, frac) = digits.split_at(split);
            out.push_str(int);
            let frac = frac.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        out.push_str(&digits[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        let _ = write!(out, "e{exp}");
    }
    out
}

/// `x` rounded to the precision used in CSV output.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_sig(x).parse().expect("formatted number parses")
    } else {
        x
    }
}

/// A record that can be written as one CSV row or one JSON object.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn render<R: Row>(rows: &[R], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = R::header().join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&row.cells().join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => json(rows),
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("records serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(-7.0), "-7");
        assert_eq!(fmt_sig(7.0 * 0.01), "0.07");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(-5.372281323269), "-5.37228132327");
        assert_eq!(fmt_sig(123456.0), "123456");
        assert_eq!(fmt_sig(1e-7), "1e-7");
        assert_eq!(fmt_sig(2.5e-5), "0.000025");
        assert_eq!(fmt_sig(-1.23e15), "-1.23e15");
        assert_eq!(fmt_sig(9.9999999999999e-13), "1e-12");
        assert_eq!(fmt_sig(1e-15), "1e-15");
    }

    #[test]
    fn rounding_matches_formatting() {
        for x in [0.1 + 0.2, -2.0000000000004, std::f64::consts::PI] {
            assert_eq!(fmt_sig(round_sig(x)), fmt_sig(x));
        }
    }
}
