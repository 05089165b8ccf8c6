//! Arbitrary-precision rational scalars and the decimal display conventions
//! used by the report tables.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on a zero denominator; intended for
/// literals in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer '{num}'"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer '{den}'"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// Canonical `p` or `p/q` form, matching `parse_rat`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range values only arise from pathological inputs; saturate.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Nearest integer to `x`, ties to even.
pub fn round_half_even(x: &Rat) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - Rat::from_integer(floor.clone());
    let twice = &frac * rat_i(2);
    let one = Rat::one();
    if twice < one {
        floor
    } else if twice > one {
        floor + 1
    } else if (&floor % BigInt::from(2)).is_zero() {
        floor
    } else {
        floor + 1
    }
}

/// Decimal exponent: the unique `e` with `10^(e-1) <= |x| < 10^e` for x != 0.
fn exponent10(x: &Rat) -> i64 {
    let a = x.abs();
    // Digit counts give the exponent within 1; fix up by direct comparison.
    let mut e = a.numer().to_string().trim_start_matches('-').len() as i64
        - a.denom().to_string().len() as i64
        + 1;
    loop {
        let lo = pow10(e - 1);
        let hi = pow10(e);
        if a < lo {
            e -= 1;
        } else if a >= hi {
            e += 1;
        } else {
            return e;
        }
    }
}

fn pow10(e: i64) -> Rat {
    let base = BigInt::from(10);
    if e >= 0 {
        Rat::from_integer(base.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), base.pow((-e) as u32))
    }
}

/// Rounds `x` to `digits` significant decimal digits, ties to even, exactly.
pub fn round_significant(x: &Rat, digits: u32) -> Rat {
    assert!(digits >= 1);
    if x.is_zero() {
        return Rat::zero();
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let a = x.abs();
    let e = exponent10(&a);
    let shift = digits as i64 - e;
    let mut n = round_half_even(&(&a * pow10(shift)));
    let mut shift = shift;
    // Rounding can carry into one more digit (0.999... -> 1.00).
    if n == BigInt::from(10).pow(digits) {
        n /= 10;
        shift -= 1;
    }
    Rat::from_integer(n * sign) * pow10(-shift)
}

/// Plain decimal string of `x` rounded to `digits` significant digits
/// (half-even), e.g. `0.692`, `1.40`, `13.0`.
pub fn decimal_significant(x: &Rat, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let e = exponent10(&a);
    let shift = digits as i64 - e;
    let mut n = round_half_even(&(&a * pow10(shift)));
    let mut e = e;
    if n == BigInt::from(10).pow(digits) {
        n /= 10;
        e += 1;
    }
    let ds = n.to_string();
    debug_assert_eq!(ds.len(), digits as usize);
    let body = if e >= digits as i64 {
        format!("{}{}", ds, "0".repeat((e - digits as i64) as usize))
    } else if e > 0 {
        format!("{}.{}", &ds[..e as usize], &ds[e as usize..])
    } else {
        format!("0.{}{}", "0".repeat((-e) as usize), ds)
    };
    format!("{sign}{body}")
}

/// Three-significant-digit table display. The value is first rounded to four
/// significant digits, then to three, then trailing zeros are stripped; this
/// double rounding is the convention the reference tables follow (65/94
/// renders as 0.692, not 0.691).
pub fn display_3sig(x: &Rat) -> String {
    let pre = round_significant(x, 4);
    let s = decimal_significant(&pre, 3);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Parses a plain decimal such as `0.692`, `1.50`, or `3` into the exact
/// rational it denotes.
pub fn parse_decimal(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty decimal: {s:?}"));
    }
    for c in int_part.chars().chain(frac_part.chars()) {
        if !c.is_ascii_digit() {
            return Err(format!("bad decimal: {s:?}"));
        }
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|e| format!("{e}"))?
    };
    Ok(Rat::from_integer(n * sign) * pow10(-(frac_part.len() as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "2/5", "-19/65", "100/7"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&x), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert_eq!(parse_decimal("0.692").unwrap(), rat(692, 1000));
        assert_eq!(parse_decimal("1.50").unwrap(), rat(3, 2));
        assert_eq!(parse_decimal("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_decimal("3").unwrap(), rat_i(3));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(round_half_even(&rat(1, 2)), BigInt::from(0));
        assert_eq!(round_half_even(&rat(3, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_even(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(round_half_even(&rat(7, 3)), BigInt::from(2));
    }

    #[test]
    fn significant_rounding() {
        assert_eq!(round_significant(&rat(65, 94), 4), rat(6915, 10000));
        assert_eq!(round_significant(&rat(999, 1000), 2), rat_i(1));
        assert_eq!(decimal_significant(&rat(65, 94), 4), "0.6915");
        assert_eq!(decimal_significant(&rat_i(12345), 3), "12300");
        assert_eq!(decimal_significant(&rat(1, 800), 3), "0.00125");
        assert_eq!(decimal_significant(&rat(-7, 5), 3), "-1.40");
    }

    #[test]
    fn table_display_convention() {
        let cases = [
            ((65, 94), "0.692"),
            ((17, 19), "0.895"),
            ((1, 1), "1"),
            ((7, 5), "1.4"),
            ((5, 3), "1.67"),
            ((5, 7), "0.714"),
            ((11, 13), "0.846"),
            ((19, 21), "0.905"),
            ((6, 7), "0.857"),
        ];
        for ((n, d), want) in cases {
            assert_eq!(display_3sig(&rat(n, d)), want, "for {n}/{d}");
        }
    }
}
