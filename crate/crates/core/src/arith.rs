//! Small exact-arithmetic helpers shared by the other modules: prime-power
//! validation, rational powers of q, decimal rendering and the string
//! encoding used for rationals in JSON.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial factorization of `q` as `p^k`. Returns `(p, k)` when `q` is a
/// prime power, `None` otherwise.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn check_prime_power(q: u64) -> Result<u64> {
    prime_power(q)
        .map(|_| q)
        .ok_or(Error::NotPrimePower { value: q })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a possibly negative exponent.
pub fn q_pow(q: u64, e: i64) -> Rational {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new_raw(BigInt::one(), base)
    }
}

pub fn uint_pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Lower bound for `exp(x) - 1` with `x >= 0`, obtained from the first
/// `terms` terms of the Taylor series (every term is nonnegative).
pub fn exp_minus_one_lower(x: &Rational, terms: u32) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for k in 1..=terms {
        term = term * x / int(k as i64);
        sum += &term;
    }
    sum
}

/// Decimal rendering with `digits` digits after the point, rounded half away
/// from zero.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    // Integer division only: the rationals rendered here can be far too
    // large for gcd-normalising arithmetic.
    let (floor, rem) = (x.numer().abs() * &scale).div_rem(x.denom());
    let rounded = if rem * 2u32 >= *x.denom() {
        floor + BigInt::one()
    } else {
        floor
    };
    let (whole, fractional) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded_is_zero(&whole, &fractional) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!(
            "{sign}{whole}.{:0>width$}",
            fractional.to_string(),
            width = digits
        )
    }
}

fn rounded_is_zero(whole: &BigInt, fractional: &BigInt) -> bool {
    whole.is_zero() && fractional.is_zero()
}

/// Parses `"n"` or `"n/d"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || {
        Error::parse(
            0,
            format!("invalid rational {s:?}"),
            "\"num\" or \"num/den\"",
        )
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Serde adapter storing a rational as its `"num/den"` string.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for a list of rationals.
pub mod rational_vec {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter storing any `Display + FromStr` value (big integers here)
/// as a decimal string.
pub mod display_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// List version of [`display_string`].
pub mod display_vec {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
        assert!(check_prime_power(10).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&frac(8, 3), 4), "2.6667");
        assert_eq!(to_decimal(&frac(1, 3), 0), "0");
        assert_eq!(to_decimal(&frac(-1, 16), 3), "-0.063");
        assert_eq!(to_decimal(&frac(-1, 10000), 2), "0.00");
        assert_eq!(to_decimal(&int(5), 2), "5.00");
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(frac(3, 4).to_string(), "3/4");
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(frac(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn exp_lower_bound_is_below_exp() {
        let x = frac(1, 8);
        let lower = exp_minus_one_lower(&x, 12);
        let approx = (0.125f64).exp() - 1.0;
        let lower_f = lower.numer().to_string().parse::<f64>().unwrap()
            / lower.denom().to_string().parse::<f64>().unwrap();
        assert!(lower_f <= approx + 1e-15);
        assert!(approx - lower_f < 1e-12);
    }
}
