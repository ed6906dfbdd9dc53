//! Deterministic number formatting and serde helpers for complex values.
//!
//! Every float written to disk goes through [`round_sig`] so that identical
//! inputs give byte-identical files.

use num_complex::Complex64;

use crate::series::TruncatedSeries;

/// Significant digits kept in all emitted data files.
pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to [`SIG_DIGITS`] significant digits (non-finite values pass through).
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    s.parse().unwrap_or(x)
}

/// `%g`-style text with [`SIG_DIGITS`] significant digits, used for CSV cells.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..SIG_DIGITS as i32).contains(&exp) {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mant, e) = s.split_once('e').unwrap();
        format!("{}e{}", trim_zeros(mant), e)
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Serde adapter for a single complex value as `[re, im]`.
pub mod complex_pair {
    use super::round_sig;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [round_sig(z.re), round_sig(z.im)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde adapter for a list of complex values as `[[re, im], ...]`.
pub mod complex_vec {
    use super::round_sig;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [round_sig(z.re), round_sig(z.im)])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// Serde adapter for an `f64` rounded on output.
pub mod rounded {
    use super::round_sig;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round_sig(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d)
    }
}

/// Serde adapter for an optional `f64` rounded on output.
pub mod rounded_opt {
    use super::round_sig;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        x.map(round_sig).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

/// `a+bi` text with [`SIG_DIGITS`] digits per part.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) { '-' } else { '+' };
    format!("{}{}{}i", fmt_g(z.re), sign, fmt_g(z.im.abs()))
}

/// Parts below `1e-13` of the coefficient's modulus are shown as zero.
fn clean(z: Complex64) -> Complex64 {
    let tiny = 1e-13 * z.norm();
    let zap = |x: f64| if x.abs() <= tiny { 0.0 } else { x };
    Complex64::new(zap(z.re), zap(z.im))
}

fn coefficient(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_g(z.re)
    } else {
        format!("({})", fmt_complex(z))
    }
}

/// One-line text of a truncated series, e.g. `f_1(w) = 1 - 0.5 w + 0.375 w^2`.
pub fn fmt_series(name: &str, var: &str, s: &TruncatedSeries) -> String {
    let mut text = format!("{name} =");
    for (k, &c) in s.coeffs().iter().enumerate() {
        let c = clean(c);
        let (negative, body) = if c.im == 0.0 && c.re < 0.0 {
            (true, coefficient(-c))
        } else {
            (false, coefficient(c))
        };
        let power = match k {
            0 => String::new(),
            1 => format!(" {var}"),
            _ => format!(" {var}^{k}"),
        };
        match (k, negative) {
            (0, true) => text.push_str(&format!(" -{body}{power}")),
            (0, false) => text.push_str(&format!(" {body}{power}")),
            (_, true) => text.push_str(&format!(" - {body}{power}")),
            (_, false) => text.push_str(&format!(" + {body}{power}")),
        }
    }
    text
}
