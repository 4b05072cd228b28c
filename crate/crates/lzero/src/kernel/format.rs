//! Deterministic decimal rendering.
//!
//! One code path produces every numeric string the tools emit, so JSON and
//! CSV runs of the same computation are byte-identical and stable across
//! platforms: round-to-nearest into an exact integer mantissa, then place
//! the point. ASCII only, `-` sign, `.` point, no locale anywhere.

use crate::error::{Error, Result};
use crate::kernel::PrecisionContext;
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// Render x with exactly `digits` significant decimal digits.
///
/// Fixed-point notation while the leading digit's decimal exponent e lies in
/// -6 <= e < digits, scientific `d.ddd...e<exp>` otherwise.
pub fn format_real(x: &Float, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_sign_negative();
    let ax = x.clone().abs();

    // decimal exponent: 10^e10 <= ax < 10^(e10+1)
    let e2 = ax.get_exp().unwrap() as f64;
    let mut e10 = ((e2 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
    let cmp_prec = ax.prec().max(64) + 64;
    loop {
        let hi = Float::with_val(cmp_prec, 10u32).pow(e10 + 1);
        if ax >= hi {
            e10 += 1;
            continue;
        }
        let lo = Float::with_val(cmp_prec, 10u32).pow(e10);
        if ax < lo {
            e10 -= 1;
            continue;
        }
        break;
    }

    // integer mantissa with `digits` digits (one retry if rounding carries)
    let mut mantissa = String::new();
    for _ in 0..2 {
        let shift = digits as i64 - 1 - e10;
        let work = (3.33 * shift.unsigned_abs() as f64) as u32 + ax.prec() + 64;
        let scaled = Float::with_val(work, &ax) * Float::with_val(work, 10u32).pow(shift);
        let (int, _) = scaled.to_integer_round(Round::Nearest).unwrap();
        mantissa = int.to_string();
        if mantissa.len() == digits {
            break;
        }
        // 99.96 -> 100.0 style carry
        e10 += 1;
    }

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if -6 <= e10 && e10 < digits as i64 {
        if e10 >= 0 {
            let split = (e10 + 1) as usize;
            out.push_str(&mantissa[..split]);
            if split < digits {
                out.push('.');
                out.push_str(&mantissa[split..]);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-e10 - 1) {
                out.push('0');
            }
            out.push_str(&mantissa);
        }
    } else {
        out.push_str(&mantissa[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
    }
    out
}

/// Parse a decimal string into the context's working precision.
pub fn parse_real(s: &str, ctx: &PrecisionContext) -> Result<Float> {
    let incomplete = Float::parse(s)
        .map_err(|e| Error::InvalidConfig(format!("unparseable number {s:?}: {e}")))?;
    Ok(Float::with_val(ctx.prec(), incomplete))
}
