//! Dense truncated power series in one variable with exact rational
//! coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rational_vec, Rational};
use crate::error::{Error, Result};

/// Coefficients of `t^0 ..= t^order`; everything above is unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    #[serde(with = "rational_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncSeries { coeffs: raw.coeffs })
    }
}

impl TruncSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c * t^k`
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller of the two orders. Zero
    /// coefficients are skipped, which matters for the sparse local factors.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Domain(
                "cannot invert a series with zero constant term".into(),
            ));
        }
        let inv0 = a0.recip();
        let mut b = Vec::with_capacity(self.coeffs.len());
        b.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let ak = &self.coeffs[k];
                if !ak.is_zero() {
                    acc += ak * &b[n - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// Expansion of `(1 - c t^k)^{-1}`.
    pub fn geometric_factor(c: &Rational, k: usize, order: usize) -> Self {
        assert!(k >= 1, "geometric factor needs k >= 1");
        let mut s = Self::zero(order);
        let mut power = Rational::one();
        for m in 0..=order / k {
            s.coeffs[m * k] = power.clone();
            power *= c;
        }
        s
    }

    /// Expansion of `(1 - c t^k)^{-mult}` via the negative binomial series,
    /// which avoids `mult` repeated multiplications.
    pub fn geometric_factor_pow(c: &Rational, k: usize, mult: &BigInt, order: usize) -> Self {
        assert!(k >= 1, "geometric factor needs k >= 1");
        let mut s = Self::zero(order);
        // coefficient of t^{mk} is binom(mult + m - 1, m) c^m
        let mut coeff = Rational::one();
        for m in 0..=order / k {
            s.coeffs[m * k] = coeff.clone();
            let m_big = BigInt::from(m as u64);
            coeff = coeff * c * Rational::new(mult + &m_big, m_big + 1);
        }
        s
    }

    /// `P(inner)` for an integer polynomial `P`, by Horner's rule.
    pub fn poly_eval_series(poly: &[BigInt], inner: &Self) -> Self {
        let order = inner.order();
        let mut acc = Self::zero(order);
        for c in poly.iter().rev() {
            acc = acc.mul_series(inner);
            acc.coeffs[0] += Rational::from_integer(c.clone());
        }
        acc
    }

    /// Substitutes `t -> c t^k`.
    pub fn substitute_monomial(&self, c: &Rational, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        let mut power = Rational::one();
        for (n, a) in self.coeffs.iter().enumerate() {
            if n * k > order {
                break;
            }
            out.coeffs[n * k] = a * &power;
            power *= c;
        }
        out
    }

    /// Finite sum of the known coefficients at `t = x`.
    pub fn eval_truncated(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Index and values of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Rational, Rational)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(n, (a, b))| (n, a.clone(), b.clone()))
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.mul_series(rhs)
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        self.mul_series(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int, q_pow};

    fn ints(c: &[i64], order: usize) -> TruncSeries {
        TruncSeries::from_ints(c, order)
    }

    #[test]
    fn products() {
        assert_eq!(&ints(&[1, 1], 2) * &ints(&[1, -1], 2), ints(&[1, 0, -1], 2));
        assert_eq!(&ints(&[1; 6], 5) * &ints(&[1, -1], 5), TruncSeries::one(5));

        let a = TruncSeries::new((0..=2).map(|n| q_pow(2, -n)).collect(), 2);
        let b = TruncSeries::new((0..=2).map(|n| q_pow(2, -2 * n)).collect(), 2);
        assert_eq!((&a * &b).coeff(2), &frac(7, 16));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let s = &ints(&[1, 2, 3], 2) + &ints(&[1, 1, 1, 1, 1], 4);
        assert_eq!(s, ints(&[2, 3, 4], 2));
        let p = &ints(&[1, 1], 1) * &ints(&[1, 1, 1], 4);
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn inversion() {
        assert_eq!(
            ints(&[1, -1], 4).invert().unwrap(),
            ints(&[1, 1, 1, 1, 1], 4)
        );
        assert_eq!(
            ints(&[1, -2, 1], 3).invert().unwrap(),
            ints(&[1, 2, 3, 4], 3)
        );
        assert!(ints(&[0, 1], 3).invert().is_err());
        let s = TruncSeries::new(vec![frac(2, 3), int(5), frac(-1, 7)], 6);
        assert_eq!(&s * &s.invert().unwrap(), TruncSeries::one(6));
    }

    #[test]
    fn geometric_factors() {
        let quarter = frac(1, 4);
        assert_eq!(
            TruncSeries::geometric_factor(&quarter, 1, 2),
            TruncSeries::new(vec![int(1), frac(1, 4), frac(1, 16)], 2)
        );
        assert_eq!(
            TruncSeries::geometric_factor(&quarter, 2, 5),
            TruncSeries::new(
                vec![int(1), int(0), frac(1, 4), int(0), frac(1, 16), int(0)],
                5
            )
        );
        assert_eq!(
            TruncSeries::geometric_factor(&int(-1), 1, 3),
            ints(&[1, -1, 1, -1], 3)
        );
    }

    #[test]
    fn geometric_power_matches_repeated_product() {
        let c = frac(-3, 5);
        for k in 1..4 {
            for mult in 0..6u32 {
                let direct = (0..mult).fold(TruncSeries::one(9), |acc, _| {
                    &acc * &TruncSeries::geometric_factor(&c, k, 9)
                });
                let fast = TruncSeries::geometric_factor_pow(&c, k, &BigInt::from(mult), 9);
                assert_eq!(direct, fast, "k={k} mult={mult}");
            }
        }
    }

    #[test]
    fn polynomial_composition() {
        let inner = TruncSeries::monomial(frac(1, 4), 1, 2);
        let p: Vec<BigInt> = [1, 0, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(
            TruncSeries::poly_eval_series(&p, &inner),
            TruncSeries::new(vec![int(1), int(0), frac(1, 8)], 2)
        );
        let inner = TruncSeries::monomial(int(1), 2, 4);
        assert_eq!(
            TruncSeries::poly_eval_series(&[BigInt::from(1)], &ints(&[3, 1], 4)),
            TruncSeries::one(4)
        );
        assert_eq!(
            TruncSeries::poly_eval_series(&[BigInt::from(1), BigInt::from(-1)], &inner),
            ints(&[1, 0, -1], 4)
        );
    }

    #[test]
    fn json_shape() {
        let s = TruncSeries::new(vec![int(1), frac(3, 4)], 1);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":1,"coeffs":["1","3/4"]}"#);
        let back: TruncSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<TruncSeries>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<TruncSeries>(r#"{"order":0,"coeffs":["1/0"]}"#).is_err());
    }
}
