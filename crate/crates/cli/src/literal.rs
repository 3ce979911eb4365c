//! Numeric literals accepted on the command line.
//!
//! Angles may be plain radians (`0.3927`) or multiples of π: `pi`, `-pi/4`,
//! `3pi/8`, `3*pi/8`, `π/2`.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let text = s.trim();
    if text.is_empty() {
        return Err("empty angle".into());
    }
    let value = match split_pi(text) {
        Some((coef, denom)) => {
            let coef = match coef.trim_end_matches('*') {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => parse_number(c)?,
            };
            let denom = match denom {
                None => 1.0,
                Some(d) => parse_number(d)?,
            };
            if denom == 0.0 {
                return Err(format!("zero denominator in angle '{s}'"));
            }
            coef * PI / denom
        }
        None => parse_number(text)?,
    };
    if !value.is_finite() {
        return Err(format!("angle '{s}' is not finite"));
    }
    Ok(value)
}

/// Splits `<coef>pi[/<denom>]` around the π token.
fn split_pi(text: &str) -> Option<(&str, Option<&str>)> {
    let (idx, len) = text
        .find("pi")
        .map(|i| (i, 2))
        .or_else(|| text.find('π').map(|i| (i, 'π'.len_utf8())))?;
    let coef = &text[..idx];
    let rest = &text[idx + len..];
    if rest.is_empty() {
        return Some((coef, None));
    }
    rest.strip_prefix('/').map(|d| (coef, Some(d)))
}

fn parse_number(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("cannot parse '{s}' as a number"))
}

/// A nonempty string over `{0, 1}`.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, String> {
    if s.is_empty() {
        return Err("bit string is empty".into());
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format!("invalid bit '{other}' in '{s}'")),
        })
        .collect()
}

/// Command-line form of a bit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString(pub Vec<bool>);

impl std::str::FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s).map(BitString)
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
