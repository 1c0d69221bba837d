use std::fmt::Write as _;

use crate::theorem::MvtResult;

/// Formats `x` with at most `digits` significant digits, dropping trailing
/// zeros (C's `%.{digits}g`). With 17 digits the text parses back to the
/// same binary64 value.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits_only: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits_only = digits_only.trim_end_matches('0');
    let digits_only = if digits_only.is_empty() {
        "0"
    } else {
        digits_only
    };

    if exponent < -5 || exponent >= digits as i32 {
        let (head, tail) = digits_only.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exponent}")
        } else {
            format!("{sign}{head}.{tail}e{exponent}")
        }
    } else if exponent < 0 {
        let zeros = "0".repeat((-exponent - 1) as usize);
        format!("{sign}0.{zeros}{digits_only}")
    } else {
        let int_len = exponent as usize + 1;
        if digits_only.len() <= int_len {
            let pad = "0".repeat(int_len - digits_only.len());
            format!("{sign}{digits_only}{pad}")
        } else {
            let (int, frac) = digits_only.split_at(int_len);
            format!("{sign}{int}.{frac}")
        }
    }
}

fn number(x: f64) -> String {
    format_significant(x, 17)
}

/// Single-line JSON object describing a verification result.
///
/// Keys in order: `status`, then `c`, `m`, `f_prime_at_c`, `residual`,
/// `iterations`, `method` for applicable results, `reason` and `witness`
/// for non-applicable ones, and `detail` for unknown ones. Absent values
/// are omitted. Numbers carry 17 significant digits.
pub fn render_json(result: &MvtResult) -> String {
    let mut out = format!("{{\"status\":\"{}\"", result.tag());
    match result {
        MvtResult::Applicable(p) => {
            let _ = write!(
                out,
                ",\"c\":{},\"m\":{},\"f_prime_at_c\":{},\"residual\":{},\"iterations\":{},\"method\":\"{}\"",
                number(p.c),
                number(p.m),
                number(p.f_prime_at_c),
                number(p.residual),
                p.iterations,
                p.method.as_str()
            );
        }
        MvtResult::NotApplicable { reason, witness } => {
            let _ = write!(out, ",\"reason\":\"{}\"", reason.as_str());
            if let Some(w) = witness {
                let _ = write!(out, ",\"witness\":{}", number(*w));
            }
        }
        MvtResult::Unknown { detail } => {
            let escaped = serde_json::to_string(detail).expect("strings always serialize");
            let _ = write!(out, ",\"detail\":{escaped}");
        }
    }
    out.push('}');
    out
}
