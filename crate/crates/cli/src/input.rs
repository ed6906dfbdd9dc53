//! Parsers for the command-line mini-languages: real literals such as
//! `pi/70`, complex literals, comma lists and polynomials in `z`.

use std::f64::consts::PI;
use std::str::FromStr;

use clap::Args;
use multicentric::{model_polynomial, Complex64, MonicPolynomial, Poly};

use crate::error::{CliError, CliResult};

/// A product or quotient of numbers and `pi`, with an optional sign:
/// `0.5`, `pi/70`, `-2*pi/3`, `1e-3`.
pub fn parse_real(input: &str) -> CliResult<f64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| CliError::parse("number", input, reason);
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(&s)),
    };
    if body.is_empty() {
        return Err(err("empty"));
    }
    let mut value = 1.0;
    let mut op = '*';
    let mut start = 0;
    let bytes: Vec<char> = body.chars().collect();
    for i in 0..=bytes.len() {
        if i < bytes.len() && bytes[i] != '*' && bytes[i] != '/' {
            continue;
        }
        let token: String = bytes[start..i].iter().collect();
        let factor = match token.as_str() {
            "pi" | "π" => PI,
            "" => return Err(err("missing operand")),
            t => t.parse::<f64>().map_err(|e| err(&e.to_string()))?,
        };
        if op == '*' {
            value *= factor;
        } else {
            value /= factor;
        }
        if i < bytes.len() {
            op = bytes[i];
        }
        start = i + 1;
    }
    if !value.is_finite() {
        return Err(err("not finite"));
    }
    Ok(if negative { -value } else { value })
}

/// `1`, `-0.5`, `2i`, `1+2i`, `pi/4` and similar.
pub fn parse_complex(input: &str) -> CliResult<Complex64> {
    let s = input.trim();
    if let Ok(x) = parse_real(s) {
        return Ok(Complex64::new(x, 0.0));
    }
    let z = Complex64::from_str(s).map_err(|_| CliError::parse("complex number", input, "expected a+bi"))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CliError::parse("complex number", input, "not finite"));
    }
    Ok(z)
}

pub fn parse_list<T>(input: &str, item: impl Fn(&str) -> CliResult<T>) -> CliResult<Vec<T>> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    input.split(',').map(|t| item(t.trim())).collect()
}

/// Splits at `+`/`-` that start a new term (outside parentheses and not
/// part of an exponent like `1e-3`).
fn split_terms(s: &str) -> Vec<String> {
    let chars: Vec<char> = s.chars().collect();
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => {
                let prev = chars[i - 1];
                let exponent = (prev == 'e' || prev == 'E')
                    && i >= 2
                    && (chars[i - 2].is_ascii_digit() || chars[i - 2] == '.');
                let after_op = matches!(prev, '*' | '/' | '^');
                if !exponent && !after_op && !current.is_empty() {
                    terms.push(std::mem::take(&mut current));
                }
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.is_empty() {
        terms.push(current);
    }
    terms
}

fn parse_term(term: &str, full: &str) -> CliResult<(usize, Complex64)> {
    let err = |reason: &str| CliError::parse("polynomial", full, reason);
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, term.strip_prefix('+').unwrap_or(term)),
    };
    let Some(pos) = body.find('z') else {
        let c = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            parse_complex(inner)?
        } else {
            parse_complex(body)?
        };
        return Ok((0, c * sign));
    };
    let coef_text = body[..pos].trim_end_matches('*');
    let coef = if coef_text.is_empty() {
        Complex64::new(1.0, 0.0)
    } else if let Some(inner) = coef_text.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        parse_complex(inner)?
    } else {
        parse_complex(coef_text)?
    };
    let rest = &body[pos + 1..];
    let power = if rest.is_empty() {
        1
    } else if let Some(exp) = rest.strip_prefix('^') {
        exp.parse::<usize>().map_err(|_| err("exponent must be a non-negative integer"))?
    } else {
        return Err(err(&format!("unexpected text after z in {term:?}")));
    };
    Ok((power, coef * sign))
}

/// A monic polynomial in `z` written as a sum of terms `c*z^k`,
/// for example `z^4+1`, `z^2-1` or `z^3-(0.5+1i)*z+2`.
///
/// Roots are numbered by increasing argument in `[0, 2 pi)`.
pub fn parse_polynomial(input: &str) -> CliResult<MonicPolynomial> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::parse("polynomial", input, "empty"));
    }
    let mut coeffs: Vec<Complex64> = Vec::new();
    for term in split_terms(&s) {
        let (k, c) = parse_term(&term, input)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Complex64::new(0.0, 0.0));
        }
        coeffs[k] += c;
    }
    let poly = Poly::new(coeffs);
    if poly.degree() == 0 {
        return Err(CliError::parse("polynomial", input, "degree must be at least 1"));
    }
    let lead = poly.coeffs()[poly.degree()];
    if (lead - 1.0).norm() > 1e-14 {
        return Err(CliError::parse("polynomial", input, "leading coefficient must be 1"));
    }
    let mut roots = poly.roots()?;
    roots.sort_by(|a, b| {
        let key = |z: &Complex64| z.im.atan2(z.re).rem_euclid(2.0 * PI);
        key(a).total_cmp(&key(b)).then(a.norm().total_cmp(&b.norm()))
    });
    Ok(MonicPolynomial::from_roots(&roots)?)
}

/// Where the polynomial `p` comes from.
#[derive(Debug, Clone, Args)]
pub struct PolySource {
    /// Monic polynomial in z, e.g. "z^4+1"
    #[arg(long, conflicts_with_all = ["roots", "model_degree"])]
    pub poly: Option<String>,
    /// Comma-separated roots, e.g. "1,-1" or "1+1i,-1-1i"
    #[arg(long, allow_hyphen_values = true, conflicts_with = "model_degree")]
    pub roots: Option<String>,
    /// Degree of the rotated and perturbed model family
    #[arg(long)]
    pub model_degree: Option<usize>,
    /// Perturbation angle of the model family, e.g. "pi/70"
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub epsilon: String,
}

impl PolySource {
    /// The selected polynomial, or `default` when no source flag is given.
    pub fn resolve(&self, default: &str) -> CliResult<MonicPolynomial> {
        if let Some(p) = &self.poly {
            return parse_polynomial(p);
        }
        if let Some(r) = &self.roots {
            let roots = parse_list(r, parse_complex)?;
            return Ok(MonicPolynomial::from_roots(&roots)?);
        }
        if let Some(d) = self.model_degree {
            return Ok(model_polynomial(d, parse_real(&self.epsilon)?)?);
        }
        parse_polynomial(default)
    }
}
