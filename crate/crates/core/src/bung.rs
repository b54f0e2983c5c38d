//! Frobenius traces on the cohomology of the moduli stack of `G`-bundles on a
//! curve, for a split simply connected `G` over a complete curve `X / F_q`.
//!
//! The cohomology is a free graded-commutative algebra on `H*(X, M)`, where
//! `M` has one generator per fundamental degree `d_i`. Everything here is a
//! consequence of that description, written as exact rational series:
//!
//! * the global side `prod_i P(q^{-d_i} t) / ((1 - q^{1-d_i} t)(1 - q^{-d_i} t))`,
//! * the local side `prod_x prod_i (1 - q_x^{-d_i} t^{deg x})^{-1}`,
//! * the Euler product at `t = 1`, with a proved bound on the omitted factors,
//! * the traces per cohomological degree and the Poincaré series.
//!
//! Local factors use the degrees `d_i = e_i + 1`, not the exponents. This is
//! forced by `prod_i (1 - q_x^{-d_i})^{-1} = q_x^{dim G} / |G(k_x)|`, which
//! [`local_factor`] and the tests check exactly. Read against a normalization
//! where Frobenius acts on the `e`-th summand of `M` by `q^e`, the shift by
//! one is the Tate twist carried by the `!`-fibers of `M`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big, q_pow, rational_string, Rational};
use crate::error::{Error, Result};
use crate::powerseries::TruncSeries;
use crate::rootsys::GroupInvariants;
use crate::zeta::CurveZeta;

pub const DEFAULT_SERIES_ORDER: usize = 20;
pub const DEFAULT_COHOMOLOGY_CUTOFF: usize = 40;
pub const DEFAULT_POINT_DEGREE: u32 = 12;

/// Largest exact Euler-product value we are willing to materialize, in bits
/// of numerator plus denominator.
pub const EULER_BIT_BUDGET: f64 = (1u64 << 20) as f64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BunGContext {
    group: GroupInvariants,
    curve: CurveZeta,
}

impl BunGContext {
    pub fn new(group: GroupInvariants, curve: CurveZeta) -> Result<Self> {
        if curve.q() < 2 {
            return Err(Error::Domain("field size must be at least 2".into()));
        }
        if let Some(&d) = group.degrees.iter().find(|&&d| d < 2) {
            return Err(Error::Domain(format!(
                "fundamental degree {d} < 2; only semisimple groups are supported"
            )));
        }
        Ok(BunGContext { group, curve })
    }

    pub fn group(&self) -> &GroupInvariants {
        &self.group
    }

    pub fn curve(&self) -> &CurveZeta {
        &self.curve
    }

    fn q(&self) -> u64 {
        self.curve.q()
    }

    /// `(g - 1) dim G`.
    pub fn dim_bun_g(&self) -> i64 {
        (self.curve.genus() as i64 - 1) * self.group.dim_g as i64
    }
}

/// `prod_i zeta_X(d_i)`: the alternating trace of `Frob^{-1}` on `H*(Bun_G)`.
pub fn trace_total(ctx: &BunGContext) -> Rational {
    ctx.group
        .degrees
        .iter()
        .map(|&d| {
            ctx.curve
                .zeta_value(d as i64)
                .expect("degrees are at least 2")
        })
        .product()
}

/// `q^{dim Bun_G} * trace_total`: the groupoid mass `|Bun_G(F_q)|`.
pub fn tamagawa_rhs(ctx: &BunGContext) -> Rational {
    q_pow(ctx.q(), ctx.dim_bun_g()) * trace_total(ctx)
}

/// `P(c * t^k)` truncated at `order`.
fn numerator_substituted(curve: &CurveZeta, c: &Rational, k: usize, order: usize) -> TruncSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut power = Rational::one();
    for (j, a) in curve.numerator().iter().enumerate() {
        if j * k > order {
            break;
        }
        coeffs[j * k] = Rational::from_integer(a.clone()) * &power;
        power *= c;
    }
    TruncSeries::new(coeffs, order)
}

/// Generating series of `Tr(Frob^{-1}, Sym^n H*(X, M))`, from the closed form
/// `prod_i P(q^{-d_i} t) / ((1 - q^{1-d_i} t)(1 - q^{-d_i} t))`.
pub fn ser1(ctx: &BunGContext, order: usize) -> TruncSeries {
    let q = ctx.q();
    let mut acc = TruncSeries::one(order);
    for &d in &ctx.group.degrees {
        let d = d as i64;
        let c = q_pow(q, -d);
        acc = &acc * &numerator_substituted(&ctx.curve, &c, 1, order);
        acc = &acc * &TruncSeries::geometric_factor(&q_pow(q, 1 - d), 1, order);
        acc = &acc * &TruncSeries::geometric_factor(&c, 1, order);
    }
    acc
}

/// The rational function behind [`ser1`], evaluated exactly at `t`.
pub fn ser1_closed_form(ctx: &BunGContext, t: &Rational) -> Result<Rational> {
    let q = ctx.q();
    let mut acc = Rational::one();
    for &d in &ctx.group.degrees {
        let d = d as i64;
        let c = q_pow(q, -d) * t;
        let denom = (Rational::one() - q_pow(q, 1 - d) * t) * (Rational::one() - &c);
        if denom.is_zero() {
            return Err(Error::Domain(format!("t = {t} is a pole")));
        }
        acc *= ctx.curve.numerator_at(&c) / denom;
    }
    Ok(acc)
}

/// Product over closed points of degree `<= order` of the local factors
/// `prod_i (1 - q^{-d_i deg x} t^{deg x})^{-1}`. Exact through `t^order`.
pub fn ser2(ctx: &BunGContext, order: usize) -> TruncSeries {
    let q = ctx.q();
    let mut acc = TruncSeries::one(order);
    if order == 0 {
        return acc;
    }
    let table = ctx.curve.closed_point_table(order as u32);
    for (&deg, count) in &table.counts {
        if count.is_zero() {
            continue;
        }
        for (&d, &mult) in &ctx.group.generator_degrees {
            let c = q_pow(q, -((d * deg) as i64));
            let exponent = count * BigInt::from(mult);
            acc = &acc * &TruncSeries::geometric_factor_pow(&c, deg as usize, &exponent, order);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub index: usize,
    #[serde(with = "rational_string")]
    pub ser1: Rational,
    #[serde(with = "rational_string")]
    pub ser2: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesComparison {
    pub order: usize,
    pub identical: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

pub fn series_identity_check(ctx: &BunGContext, order: usize) -> SeriesComparison {
    let global = ser1(ctx, order);
    let local = ser2(ctx, order);
    let first_discrepancy = global
        .first_difference(&local)
        .map(|(index, ser1, ser2)| Discrepancy { index, ser1, ser2 });
    SeriesComparison {
        order,
        identical: first_discrepancy.is_none(),
        first_discrepancy,
    }
}

/// `min_i q^{d_i - 1}`: every pole of the global series has at least this
/// modulus. Numerator zeros sit at `q^{d_i - 1/2}`, further out.
pub fn convergence_radius_bound(ctx: &BunGContext) -> Rational {
    let q = ctx.q();
    let bound = ctx
        .group
        .degrees
        .iter()
        .map(|&d| q_pow(q, d as i64 - 1))
        .min()
        .expect("groups have positive rank");
    assert!(
        bound >= Rational::from_integer(2.into()),
        "radius bound below 2"
    );
    bound
}

/// `prod_i (1 - q^{-d_i d})^{-1} = q^{d dim G} / |G(F_{q^d})|`: the local factor
/// at a closed point of degree `d`.
pub fn local_factor(ctx: &BunGContext, deg: u32) -> Rational {
    let q = ctx.q();
    ctx.group
        .degrees
        .iter()
        .map(|&d| (Rational::one() - q_pow(q, -((d * deg) as i64))).recip())
        .product()
}

/// Partial Euler product over closed points of degree `<= degree_cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTruncation {
    #[serde(rename = "D")]
    pub degree_cutoff: u32,
    #[serde(with = "rational_string")]
    pub value: Rational,
    /// Upper bound on `log(full product / value)`, which is nonnegative.
    #[serde(with = "rational_string")]
    pub tail_bound: Rational,
}

impl EulerTruncation {
    /// Whether `|target / value - 1| <= exp(tail_bound) - 1`, decided exactly
    /// through a Taylor lower bound for the right-hand side.
    pub fn brackets(&self, target: &Rational) -> bool {
        // With value = v/w and target = a/b the relative distance is
        // |a w - b v| / (b v); compare by cross-multiplying so the
        // million-bit value never goes through a gcd.
        let (v, w) = (self.value.numer(), self.value.denom());
        let (a, b) = (target.numer(), target.denom());
        let gap = (a * w - b * v).abs();
        let scale = b * v;
        let within = |bound: &Rational| &gap * bound.denom() <= bound.numer() * &scale;
        within(&self.tail_bound) || within(&crate::arith::exp_minus_one_lower(&self.tail_bound, 24))
    }
}

/// Approximate bit size of the exact partial product, used to refuse cutoffs
/// whose value would not fit in memory.
pub fn euler_value_bits(ctx: &BunGContext, degree_cutoff: u32) -> f64 {
    let log_q = (ctx.q() as f64).log2();
    let table = ctx.curve.closed_point_table(degree_cutoff);
    let degree_sum: f64 = ctx.group.degrees.iter().map(|&d| d as f64).sum();
    table
        .counts
        .iter()
        .map(|(&deg, a)| {
            a.to_f64().unwrap_or(f64::INFINITY) * deg as f64 * degree_sum * log_q * 2.0
        })
        .sum()
}

/// Largest cutoff (at most `ceiling`) whose partial product fits the budget.
pub fn max_feasible_point_degree(ctx: &BunGContext, ceiling: u32) -> u32 {
    (1..=ceiling)
        .take_while(|&d| euler_value_bits(ctx, d) <= EULER_BIT_BUDGET)
        .last()
        .unwrap_or(1)
}

pub fn euler_product_partial(ctx: &BunGContext, degree_cutoff: u32) -> Result<EulerTruncation> {
    if degree_cutoff < 1 {
        return Err(Error::Domain(
            "Euler product cutoff must be at least 1".into(),
        ));
    }
    let bits = euler_value_bits(ctx, degree_cutoff);
    if bits > EULER_BIT_BUDGET {
        return Err(Error::Unsupported(format!(
            "exact partial product through degree {degree_cutoff} needs about {bits:.0} bits; \
             the largest feasible cutoff here is {}",
            max_feasible_point_degree(ctx, degree_cutoff)
        )));
    }
    let q = ctx.q();
    let table = ctx.curve.closed_point_table(degree_cutoff);
    // (1 - q^{-k})^{-a} = q^{k a} / (q^k - 1)^a; q^k - 1 is prime to q, so the
    // assembled fraction is already in lowest terms.
    let mut q_exponent = BigInt::zero();
    let mut denom = BigInt::one();
    for (&deg, count) in &table.counts {
        if count.is_zero() {
            continue;
        }
        for (&d, &mult) in &ctx.group.generator_degrees {
            let k = d * deg;
            let a = count * BigInt::from(mult);
            let a_small = a.to_u32().ok_or_else(|| {
                Error::Unsupported("closed-point count too large for exact product".into())
            })?;
            q_exponent += BigInt::from(k) * &a;
            denom *= (BigInt::from(q).pow(k) - 1u32).pow(a_small);
        }
    }
    let q_exponent = q_exponent.to_u32().expect("bounded by the bit budget");
    let value = Rational::new_raw(BigInt::from(q).pow(q_exponent), denom);
    Ok(EulerTruncation {
        degree_cutoff,
        value,
        tail_bound: euler_tail_bound(ctx, degree_cutoff),
    })
}

/// Rigorous bound on `sum_{deg x > D} sum_i -log(1 - q_x^{-d_i})`.
///
/// For a point of degree `d`, `q_x^{-d_i} <= q^{-2d} <= 1/4`, and on
/// `[0, 1/4]` we have `-log(1 - x) <= x / (1 - x) <= (4/3) x`. The number of
/// closed points of degree `d` satisfies `d a_d <= N_d <= q^d + 1 + 2g q^{ceil(d/2)}`,
/// and `1/d <= 1/(D+1)`. What remains are geometric sums, split by parity of
/// `d` to keep `q^{ceil(d/2)}` rational:
///
/// `tail <= 4r / (3(D+1)) * [ sum q^{-d} + sum q^{-2d} + 2g sum q^{ceil(d/2) - 2d} ]`.
pub fn euler_tail_bound(ctx: &BunGContext, degree_cutoff: u32) -> Rational {
    let q = ctx.q();
    let r = ctx.group.rank as i64;
    let g = ctx.curve.genus() as i64;
    let cut = degree_cutoff as i64;
    let one = Rational::one();
    let geometric_tail = |x: Rational, start: i64| {
        let head = (0..start).fold(Rational::one(), |acc, _| acc * &x);
        head / (&one - x)
    };
    let x = q_pow(q, -1);
    let x2 = q_pow(q, -2);
    let y = q_pow(q, -3);
    let even_start = cut / 2 + 1;
    let odd_start = (cut + 1) / 2;
    let twisted = geometric_tail(y.clone(), even_start) + &x * geometric_tail(y, odd_start);
    let sum = geometric_tail(x, cut + 1)
        + geometric_tail(x2, cut + 1)
        + Rational::from_integer((2 * g).into()) * twisted;
    Rational::new((4 * r).into(), (3 * (cut + 1)).into()) * sum
}

/// Per-degree traces of `Frob^{-1}` and Betti numbers of `H*(Bun_G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiGradedTrace {
    pub degree_cutoff: usize,
    #[serde(with = "crate::arith::rational_vec")]
    pub traces: Vec<Rational>,
    #[serde(with = "crate::arith::display_vec")]
    pub dims: Vec<BigInt>,
}

impl BiGradedTrace {
    /// Checks `traces[k]^2 <= dims[k]^2 * 2^{-k}` exactly for every `k`.
    pub fn satisfies_weight_bound(&self) -> bool {
        self.traces
            .iter()
            .zip(&self.dims)
            .enumerate()
            .all(|(k, (t, d))| {
                let d = big(&d.to_biguint().unwrap_or_default());
                t * t <= &d * &d * q_pow(2, -(k as i64))
            })
    }
}

/// Traces per cohomological degree `k <= cutoff`, from
/// `prod_i P(-q^{-d_i} s^{2d_i-1}) / ((1 - q^{1-d_i} s^{2d_i-2})(1 - q^{-d_i} s^{2d_i}))`.
pub fn bigraded_trace(ctx: &BunGContext, cutoff: usize) -> BiGradedTrace {
    let q = ctx.q();
    let mut acc = TruncSeries::one(cutoff);
    for &d in &ctx.group.degrees {
        let d = d as i64;
        let odd = (2 * d - 1) as usize;
        acc = &acc * &numerator_substituted(&ctx.curve, &-q_pow(q, -d), odd, cutoff);
        acc = &acc * &TruncSeries::geometric_factor(&q_pow(q, 1 - d), (2 * d - 2) as usize, cutoff);
        acc = &acc * &TruncSeries::geometric_factor(&q_pow(q, -d), (2 * d) as usize, cutoff);
    }
    let dims = poincare_series(&ctx.group, ctx.curve.genus(), cutoff)
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect();
    BiGradedTrace {
        degree_cutoff: cutoff,
        traces: acc.coeffs().to_vec(),
        dims,
    }
}

/// Poincaré series `prod_i (1 + s^{2d_i-1})^{2g} / ((1 - s^{2d_i-2})(1 - s^{2d_i}))`.
pub fn poincare_series(group: &GroupInvariants, genus: u32, cutoff: usize) -> TruncSeries {
    let one = Rational::one();
    let mut acc = TruncSeries::one(cutoff);
    for &d in &group.degrees {
        let d = d as usize;
        let odd =
            &TruncSeries::one(cutoff) + &TruncSeries::monomial(one.clone(), 2 * d - 1, cutoff);
        for _ in 0..2 * genus {
            acc = &acc * &odd;
        }
        acc = &acc * &TruncSeries::geometric_factor(&one, 2 * d - 2, cutoff);
        acc = &acc * &TruncSeries::geometric_factor(&one, 2 * d, cutoff);
    }
    acc
}

/// `S_K = sum_{k <= K} (-1)^k traces[k]`.
pub fn alternating_partial_sums(trace: &BiGradedTrace) -> Vec<Rational> {
    let mut sum = Rational::zero();
    trace
        .traces
        .iter()
        .enumerate()
        .map(|(k, t)| {
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            sum.clone()
        })
        .collect()
}
