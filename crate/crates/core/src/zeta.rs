//! Zeta functions of smooth projective curves over `F_q`, stored through the
//! integer Weil numerator `P(t)` of `Z(t) = P(t) / ((1 - t)(1 - q t))`.
//!
//! Frobenius eigenvalues are never extracted: power sums come from Newton's
//! identities on the integer coefficients, so every derived quantity is
//! exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime_power, is_prime, q_pow, Rational};
use crate::error::{Error, Result};

/// Range of `r` over which point counts are validated.
pub const VALIDATION_RANGE: u32 = 8;
pub const MAX_ELLIPTIC_PRIME: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveZeta {
    q: u64,
    genus: u32,
    #[serde(with = "crate::arith::display_vec")]
    numerator: Vec<BigInt>,
}

/// Closed-point counts `a_d` for `d = 1 ..= max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPointTable {
    pub counts: BTreeMap<u32, BigInt>,
}

impl CurveZeta {
    pub fn projective_line(q: u64) -> Result<CurveZeta> {
        check_prime_power(q)?;
        Ok(CurveZeta {
            q,
            genus: 0,
            numerator: vec![BigInt::one()],
        })
    }

    /// Validates a user-supplied Weil numerator `a_0, ..., a_{2g}`.
    pub fn from_numerator(q: u64, genus: u32, coeffs: Vec<BigInt>) -> Result<CurveZeta> {
        check_prime_power(q)?;
        let g = genus as usize;
        if coeffs.len() != 2 * g + 1 {
            return Err(Error::NumeratorLength {
                expected: 2 * g + 1,
                actual: coeffs.len(),
            });
        }
        if !coeffs[0].is_one() {
            return Err(Error::NumeratorConstant(coeffs[0].to_string()));
        }
        for j in 0..=g {
            let shift = (g - j) as u32;
            let expected = BigInt::from(q).pow(shift) * &coeffs[j];
            if coeffs[2 * g - j] != expected {
                return Err(Error::FunctionalEquation {
                    index: j,
                    mirror: 2 * g - j,
                    shift,
                    found: coeffs[2 * g - j].to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        let zeta = CurveZeta {
            q,
            genus,
            numerator: coeffs,
        };
        let sums = zeta.power_sums(VALIDATION_RANGE);
        for r in 1..=VALIDATION_RANGE {
            let s = &sums[r as usize - 1];
            let count = zeta.count_from_power_sum(r, s);
            if count.is_negative() {
                return Err(Error::NegativePointCount {
                    r,
                    count: count.to_string(),
                });
            }
            // |s_r| <= 2g q^{r/2}  <=>  s_r^2 <= 4 g^2 q^r
            let bound = BigInt::from(4u64 * genus as u64 * genus as u64) * BigInt::from(q).pow(r);
            if s * s > bound {
                return Err(Error::WeilBound {
                    r,
                    deviation: s.abs().to_string(),
                });
            }
        }
        for d in 1..=VALIDATION_RANGE {
            let a = zeta.closed_points(d);
            if a.is_negative() {
                return Err(Error::NegativeClosedPoints {
                    d,
                    count: a.to_string(),
                });
            }
        }
        Ok(zeta)
    }

    /// Elliptic curve `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over
    /// `F_p`, point-counted by exhaustive enumeration.
    pub fn elliptic_from_weierstrass(p: u64, a: [i64; 5]) -> Result<CurveZeta> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        if p > MAX_ELLIPTIC_PRIME {
            return Err(Error::Unsupported(format!(
                "elliptic point counting needs p <= {MAX_ELLIPTIC_PRIME}, got {p}"
            )));
        }
        if weierstrass_discriminant(a)
            .mod_floor(&BigInt::from(p))
            .is_zero()
        {
            return Err(Error::SingularCurve { p });
        }
        let n1 = count_weierstrass_points(p, a);
        let trace_term = BigInt::from(n1) - BigInt::from(p) - 1;
        CurveZeta::from_numerator(p, 1, vec![BigInt::one(), trace_term, BigInt::from(p)])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// Power sums `s_r = sum_j alpha_j^r` for `r = 1 ..= r_max` via Newton's
    /// identities for `P(t) = prod_j (1 - alpha_j t)`.
    pub fn power_sums(&self, r_max: u32) -> Vec<BigInt> {
        let a = &self.numerator;
        let coeff = |k: usize| a.get(k).cloned().unwrap_or_default();
        let mut s: Vec<BigInt> = Vec::with_capacity(r_max as usize);
        for r in 1..=r_max as usize {
            let mut v = -BigInt::from(r) * coeff(r);
            for k in 1..r.min(a.len()) {
                v -= &a[k] * &s[r - k - 1];
            }
            s.push(v);
        }
        s
    }

    fn count_from_power_sum(&self, r: u32, s: &BigInt) -> BigInt {
        BigInt::from(self.q).pow(r) + 1 - s
    }

    /// `N_r = |X(F_{q^r})| = q^r + 1 - s_r`.
    pub fn point_count(&self, r: u32) -> BigInt {
        assert!(r >= 1, "point counts start at r = 1");
        let s = self.power_sums(r);
        self.count_from_power_sum(r, &s[r as usize - 1])
    }

    /// Number of closed points of degree `d`, by Möbius inversion.
    pub fn closed_points(&self, d: u32) -> BigInt {
        assert!(d >= 1, "closed-point degrees start at 1");
        let sums = self.power_sums(d);
        let mut total = BigInt::zero();
        for e in 1..=d {
            if !d.is_multiple_of(e) {
                continue;
            }
            let mu = mobius(d / e);
            if mu != 0 {
                total += BigInt::from(mu) * self.count_from_power_sum(e, &sums[e as usize - 1]);
            }
        }
        let (quot, rem) = total.div_rem(&BigInt::from(d));
        debug_assert!(rem.is_zero(), "Möbius sum not divisible by d");
        quot
    }

    pub fn closed_point_table(&self, max_degree: u32) -> ClosedPointTable {
        let sums = self.power_sums(max_degree);
        let counts: Vec<BigInt> = (1..=max_degree)
            .map(|r| self.count_from_power_sum(r, &sums[r as usize - 1]))
            .collect();
        let mut table = BTreeMap::new();
        for d in 1..=max_degree {
            let mut total = BigInt::zero();
            for e in (1..=d).filter(|e| d % e == 0) {
                let mu = mobius(d / e);
                if mu != 0 {
                    total += BigInt::from(mu) * &counts[e as usize - 1];
                }
            }
            table.insert(d, total / BigInt::from(d));
        }
        ClosedPointTable { counts: table }
    }

    /// `P(x)` for a rational argument.
    pub fn numerator_at(&self, x: &Rational) -> Rational {
        self.numerator
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| {
                acc * x + Rational::from_integer(c.clone())
            })
    }

    /// `zeta_X(s) = Z(q^{-s})` for an integer `s >= 2`.
    pub fn zeta_value(&self, s: i64) -> Result<Rational> {
        if s < 2 {
            return Err(Error::Domain(format!(
                "zeta value needs s >= 2 (pole at s = 1), got {s}"
            )));
        }
        let x = q_pow(self.q, -s);
        let denom = (Rational::one() - &x) * (Rational::one() - q_pow(self.q, 1 - s));
        Ok(self.numerator_at(&x) / denom)
    }
}

impl ClosedPointTable {
    pub fn get(&self, d: u32) -> &BigInt {
        &self.counts[&d]
    }
}

pub fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut result: i32 = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn weierstrass_discriminant(a: [i64; 5]) -> BigInt {
    let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
    let k = |c: i64| BigInt::from(c);
    let b2 = &a1 * &a1 + k(4) * &a2;
    let b4 = k(2) * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + k(4) * &a6;
    let b8 = &a1 * &a1 * &a6 + k(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
    -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6
}

/// Affine solutions plus the point at infinity.
fn count_weierstrass_points(p: u64, a: [i64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = a.map(|c| c.rem_euclid(p as i64) as u64);
    let mut count = 1;
    for x in 0..p {
        let rhs = (((x + a2) % p * x % p + a4) % p * x % p + a6) % p;
        let lin = (a1 * x + a3) % p;
        for y in 0..p {
            if (y * y + lin * y) % p == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Curve descriptions accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    ProjectiveLine,
    Weil {
        q: u64,
        genus: u32,
        numerator: Vec<BigInt>,
    },
    Elliptic {
        p: u64,
        a: [i64; 5],
    },
}

const CURVE_GRAMMAR: &str =
    "\"p1\", \"weil:q=<int>,g=<int>,num=<int>,<int>,...\" or \"elliptic:p=<prime>,a=[a1,a2,a3,a4,a6]\"";

impl CurveSpec {
    /// Builds the zeta function. `q` is required for `p1` and must agree
    /// with the field size fixed by the description otherwise.
    pub fn resolve(&self, q: Option<u64>) -> Result<CurveZeta> {
        let agree = |own: u64| match q {
            Some(q) if q != own => Err(Error::Domain(format!(
                "--q {q} disagrees with the curve's field size {own}"
            ))),
            _ => Ok(()),
        };
        match self {
            CurveSpec::ProjectiveLine => {
                let q =
                    q.ok_or_else(|| Error::Domain("curve p1 needs a field size (--q)".into()))?;
                CurveZeta::projective_line(q)
            }
            CurveSpec::Weil {
                q: own,
                genus,
                numerator,
            } => {
                agree(*own)?;
                CurveZeta::from_numerator(*own, *genus, numerator.clone())
            }
            CurveSpec::Elliptic { p, a } => {
                agree(*p)?;
                CurveZeta::elliptic_from_weierstrass(*p, *a)
            }
        }
    }
}

impl CurveSpec {
    /// Genus, known without resolving the field size.
    pub fn genus(&self) -> u32 {
        match self {
            CurveSpec::ProjectiveLine => 0,
            CurveSpec::Weil { genus, .. } => *genus,
            CurveSpec::Elliptic { .. } => 1,
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::ProjectiveLine => write!(f, "p1"),
            CurveSpec::Weil {
                q,
                genus,
                numerator,
            } => {
                let num: Vec<String> = numerator.iter().map(|c| c.to_string()).collect();
                write!(f, "weil:q={q},g={genus},num={}", num.join(","))
            }
            CurveSpec::Elliptic { p, a } => {
                let a: Vec<String> = a.iter().map(|c| c.to_string()).collect();
                write!(f, "elliptic:p={p},a=[{}]", a.join(","))
            }
        }
    }
}

/// Cursor over a curve description that reports byte offsets on failure.
struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, message, CURVE_GRAMMAR))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.fail(format!("expected {lit:?}"))
        }
    }

    fn integer<T: FromStr>(&mut self) -> Result<T> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        match rest[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.fail("expected an integer"),
        }
    }

    fn integer_list<T: FromStr>(&mut self) -> Result<Vec<T>> {
        let mut out = vec![self.integer()?];
        while self.rest().starts_with(',') {
            self.pos += 1;
            out.push(self.integer()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }
}

impl FromStr for CurveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { src: s, pos: 0 };
        if s.eq_ignore_ascii_case("p1") {
            return Ok(CurveSpec::ProjectiveLine);
        }
        if s.starts_with("weil:") {
            cur.pos = 5;
            cur.expect("q=")?;
            let q = cur.integer()?;
            cur.expect(",g=")?;
            let genus = cur.integer()?;
            cur.expect(",num=")?;
            let numerator = cur.integer_list()?;
            cur.finish()?;
            Ok(CurveSpec::Weil {
                q,
                genus,
                numerator,
            })
        } else if s.starts_with("elliptic:") {
            cur.pos = 9;
            cur.expect("p=")?;
            let p = cur.integer()?;
            cur.expect(",a=[")?;
            let start = cur.pos;
            let coeffs: Vec<i64> = cur.integer_list()?;
            if coeffs.len() != 5 {
                cur.pos = start;
                return cur.fail(format!("expected 5 coefficients, got {}", coeffs.len()));
            }
            cur.expect("]")?;
            cur.finish()?;
            let a = [coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]];
            Ok(CurveSpec::Elliptic { p, a })
        } else {
            cur.fail("unknown curve kind")
        }
    }
}
