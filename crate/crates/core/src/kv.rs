//! Flat `key = value` files with exact rational values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{LabError, Result};

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
/// Duplicate keys are rejected.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| LabError::Parse(format!("line {}: expected `key = value`", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(LabError::Parse(format!("line {}: empty key or value", lineno + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(LabError::Parse(format!("line {}: duplicate key `{k}`", lineno + 1)));
        }
    }
    Ok(out)
}

/// Parses an exact rational from `"p/q"`, an integer, or a decimal such as
/// `"-1.25e-3"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || LabError::Parse(format!("not a rational or decimal number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(LabError::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let shift = exp10 - frac_part.len() as i64;
    if shift.abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10u32);
    let mut q = BigRational::from_integer(all);
    if shift >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -q } else { q })
}

/// `p/q` rendering used in reports; integers print without a denominator.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_decimals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/3").unwrap(), r(1, 3));
        assert_eq!(parse_rational(" -2/4 ").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("160").unwrap(), r(160, 1));
        assert_eq!(parse_rational("9.6459").unwrap(), r(96459, 10000));
        assert_eq!(parse_rational("1.5e-3").unwrap(), r(3, 2000));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn kv_file() {
        let m = parse_kv("# comment\ntheta = 1/3\n\nc_IJ=0.25 # trailing\n").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m["theta"], "1/3");
        assert_eq!(m["c_IJ"], "0.25");
        assert!(parse_kv("a = 1\na = 2").is_err());
        assert!(parse_kv("novalue").is_err());
    }

    #[test]
    fn format() {
        assert_eq!(format_rational(&BigRational::new(4.into(), 6.into())), "2/3");
        assert_eq!(format_rational(&BigRational::new(6.into(), 3.into())), "2");
    }
}
