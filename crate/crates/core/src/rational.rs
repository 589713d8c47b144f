//! Small helpers for exact rationals: construction, parsing, rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/4"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = BigRational::new(whole.abs() * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let v: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(v))
}

/// Lowest-terms `p/q` (or just `p` for integers).
pub fn exact(x: &BigRational) -> String {
    x.to_string()
}

/// Decimal rendering rounded half-up to `digits` significant digits,
/// computed with integer arithmetic so it never depends on float rounding.
pub fn decimal(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10u32);

    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(ten.pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }

    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = q;
    if BigInt::from(2u32) * r >= *scaled.denom() {
        mantissa += 1;
    }
    if mantissa.to_string().len() > digits as usize {
        mantissa /= &ten;
        e += 1;
    }
    let mut body = mantissa.to_string();
    let sign = if negative { "-" } else { "" };

    if (-6..digits as i64).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            let (ip, fp) = body.split_at(int_len);
            let fp = fp.trim_end_matches('0');
            if fp.is_empty() {
                format!("{sign}{ip}")
            } else {
                format!("{sign}{ip}.{fp}")
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            let fp = body.trim_end_matches('0');
            format!("{sign}0.{zeros}{fp}")
        }
    } else {
        let rest = body.split_off(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{body}e{e}")
        } else {
            format!("{sign}{body}.{rest}e{e}")
        }
    }
}

/// The `p/q` form followed by a 12-significant-digit decimal.
pub fn render(x: &BigRational) -> String {
    format!("{} ({})", exact(x), decimal(x, 12))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= x`.
pub fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&ratio(23, 96), 12), "0.239583333333");
        assert_eq!(decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(decimal(&int(6), 12), "6");
        assert_eq!(decimal(&ratio(11, 72), 12), "0.152777777778");
        assert_eq!(decimal(&int(17179869184), 12), "17179869184");
        assert_eq!(decimal(&ratio(-1, 8), 12), "-0.125");
        assert_eq!(decimal(&ratio(9_999_999_999_999, 10), 12), "1e12");
        assert_eq!(decimal(&int(1192092895507812500), 12), "1.19209289551e18");
        assert_eq!(decimal(&ratio(1, 3_000_000_000), 12), "3.33333333333e-10");
        assert_eq!(render(&ratio(1, 2)), "1/2 (0.5)");
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil(&ratio(15, 2)), BigInt::from(8));
        assert_eq!(ceil(&int(10)), BigInt::from(10));
        assert_eq!(ceil(&ratio(-1, 2)), BigInt::from(0));
    }
}
