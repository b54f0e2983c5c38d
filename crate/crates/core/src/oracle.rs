//! Brute-force verifiers that share no code path with the closed formulas
//! in [`crate::bung`] and [`crate::rootsys`].
//!
//! * The groupoid mass of `SL_n`-bundles on `P^1`, summed over Grothendieck
//!   splitting types with their automorphism group orders.
//! * `|SL_n(F_q)|` by enumerating matrices.
//! * `|W|` by generating the reflection group as permutations of the roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big, check_prime_power, int, q_pow, rational_string, Rational};
use crate::bung::{tamagawa_rhs, BunGContext};
use crate::error::{Error, Result};
use crate::rootsys::{CartanLabel, Family, GroupInvariants, RootDatum};
use crate::zeta::CurveZeta;

pub const DEFAULT_MAX_TWIST: u32 = 20;
pub const MAX_RANK: usize = 4;

/// `O(a_1) + ... + O(a_n)` on `P^1` with `a_1 >= ... >= a_n` and trivial
/// determinant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Domain(
                "splitting type needs at least one summand".into(),
            ));
        }
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "splitting type {a:?} is not non-increasing"
            )));
        }
        if a.iter().sum::<i64>() != 0 {
            return Err(Error::Domain(format!(
                "splitting type {a:?} does not sum to zero"
            )));
        }
        Ok(SplittingType(a))
    }

    pub fn twists(&self) -> &[i64] {
        &self.0
    }

    /// `(value, multiplicity)` blocks in decreasing order of value.
    fn blocks(&self) -> Vec<(i64, u32)> {
        let mut out: Vec<(i64, u32)> = Vec::new();
        for &a in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == a => *m += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `|GL_m(F_q)| = prod_{i<m} (q^m - q^i)`.
pub fn gl_order(m: u32, q: u64) -> BigUint {
    let qm = BigUint::from(q).pow(m);
    (0..m).map(|i| &qm - BigUint::from(q).pow(i)).product()
}

/// `|Aut(O(a_1) + ... + O(a_n))| = q^u * prod_j |GL_{m_j}(F_q)|`, where `u`
/// is the dimension of the strictly block-upper-triangular part of `End`.
pub fn aut_order(t: &SplittingType, q: u64) -> BigUint {
    let blocks = t.blocks();
    let mut u: u64 = 0;
    for (j, &(vj, mj)) in blocks.iter().enumerate() {
        for &(vk, mk) in &blocks[j + 1..] {
            u += mj as u64 * mk as u64 * (vj - vk + 1) as u64;
        }
    }
    let levi: BigUint = blocks.iter().map(|&(_, m)| gl_order(m, q)).product();
    BigUint::from(q).pow(u as u32) * levi
}

/// All splitting types of rank `n` with `a_1 <= max_twist`.
pub fn splitting_types(n: usize, max_twist: u32) -> Vec<SplittingType> {
    fn extend(
        prefix: &mut Vec<i64>,
        slots: usize,
        cap: i64,
        sum: i64,
        out: &mut Vec<SplittingType>,
    ) {
        if slots == 1 {
            if sum <= cap {
                prefix.push(sum);
                out.push(SplittingType(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        // the largest remaining entry is at least the average
        let low = sum.div_euclid(slots as i64) + i64::from(sum.rem_euclid(slots as i64) != 0);
        for x in (low..=cap).rev() {
            prefix.push(x);
            extend(prefix, slots - 1, x, sum - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, max_twist as i64, 0, &mut out);
    out
}

/// Both sides of the mass identity for `SL_n` on `P^1 / F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassReport {
    pub n: usize,
    pub q: u64,
    #[serde(rename = "B")]
    pub max_twist: u32,
    pub types_enumerated: usize,
    #[serde(with = "rational_string")]
    pub partial_mass: Rational,
    #[serde(with = "rational_string")]
    pub tail_bound: Rational,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
    pub verdict: bool,
}

/// `binom(l + k, k)` for small `k`.
fn binomial(top: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bound on `(q-1) * sum 1/|Aut E|` over splitting types with `a_1 > B`.
///
/// Write a type by its gaps `b_k = a_k - a_{k+1} >= 0`, `k < n`. The gaps
/// determine the type, `n a_1 = sum_k (n-k) b_k =: L`, and
/// `u >= sum_{i<j} (a_i - a_j) = sum_k k(n-k) b_k >= L`. Every Levi factor
/// satisfies `|GL_m| >= (q-1)^m`, so `|Aut E| >= (q-1)^n q^L`. At most
/// `binom(L + n - 2, n - 2)` gap vectors share a given `L`, hence
///
/// `tail <= (q-1)^{1-n} * sum_{L > nB} binom(L + n - 2, n - 2) q^{-L}`,
///
/// which is the tail of `(1 - 1/q)^{-(n-1)}` and is evaluated exactly as the
/// full sum minus its head.
pub fn mass_tail_bound(n: usize, q: u64, max_twist: u32) -> Rational {
    let k = (n - 2) as u64;
    let x = q_pow(q, -1);
    let full = (Rational::one() - &x).pow(-((n - 1) as i32));
    let mut head = Rational::zero();
    let mut power = Rational::one();
    for l in 0..=(n as u64 * max_twist as u64) {
        head += Rational::from_integer(binomial(l + k, k)) * &power;
        power *= &x;
    }
    let scale = Rational::from_integer(BigInt::from(q - 1)).pow(1 - n as i32);
    scale * (full - head)
}

pub fn sl_mass_p1(n: usize, q: u64, max_twist: u32) -> Result<MassReport> {
    if !(2..=MAX_RANK).contains(&n) {
        return Err(Error::Unsupported(format!(
            "bundle enumeration supports SL_n with 2 <= n <= {MAX_RANK}, got n = {n}"
        )));
    }
    check_prime_power(q)?;
    if max_twist < 1 {
        return Err(Error::Domain("max twist must be at least 1".into()));
    }
    let types = splitting_types(n, max_twist);
    // Every |Aut| divides their lcm, so summing numerators over a common
    // denominator avoids a gcd per term.
    let orders: Vec<BigUint> = types.iter().map(|t| aut_order(t, q)).collect();
    let lcm = orders
        .iter()
        .fold(BigUint::one(), |acc, o| num_integer::Integer::lcm(&acc, o));
    let numerator: BigUint = orders.iter().map(|o| &lcm / o).sum();
    let partial_mass = int(q as i64 - 1) * Rational::new(numerator.into(), lcm.into());

    let label = CartanLabel::new(Family::A, n as u32 - 1)?;
    let ctx = BunGContext::new(
        GroupInvariants::for_label(label),
        CurveZeta::projective_line(q)?,
    )?;
    let rhs = tamagawa_rhs(&ctx);
    let tail_bound = mass_tail_bound(n, q, max_twist);
    let verdict = (&partial_mass - &rhs).abs() <= tail_bound;
    Ok(MassReport {
        n,
        q,
        max_twist,
        types_enumerated: types.len(),
        partial_mass,
        tail_bound,
        rhs,
        verdict,
    })
}

/// Finite field with at most 4 elements, as lookup tables.
struct SmallField {
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl SmallField {
    fn new(q: u64) -> Option<Self> {
        let size = q as usize;
        let (add, mul) = match q {
            2 | 3 => {
                let add = (0..size)
                    .map(|a| (0..size).map(|b| (a + b) % size).collect())
                    .collect();
                let mul = (0..size)
                    .map(|a| (0..size).map(|b| (a * b) % size).collect())
                    .collect();
                (add, mul)
            }
            4 => {
                // F_2[w]/(w^2 + w + 1): 0, 1, w, w + 1 as 2-bit masks
                let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
                let mul = vec![
                    vec![0, 0, 0, 0],
                    vec![0, 1, 2, 3],
                    vec![0, 2, 3, 1],
                    vec![0, 3, 1, 2],
                ];
                (add, mul)
            }
            _ => return None,
        };
        Some(SmallField { size, add, mul })
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.size)
            .find(|&b| self.add[a][b] == 0)
            .expect("additive inverse")
    }

    fn det(&self, m: &[usize], n: usize) -> usize {
        if n == 1 {
            return m[0];
        }
        let mut total = 0;
        for col in 0..n {
            let minor: Vec<usize> = (1..n)
                .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
                .map(|(r, c)| m[r * n + c])
                .collect();
            let mut term = self.mul[m[col]][self.det(&minor, n - 1)];
            if col % 2 == 1 {
                term = self.neg(term);
            }
            total = self.add[total][term];
        }
        total
    }
}

/// `|SL_n(F_q)|` by counting determinant-one matrices.
pub fn brute_group_order(n: usize, q: u64) -> Result<u64> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!(
            "matrix enumeration needs n in {{2, 3}}, got {n}"
        )));
    }
    let field = SmallField::new(q).ok_or_else(|| {
        Error::Unsupported(format!(
            "matrix enumeration needs q in {{2, 3, 4}}, got {q}"
        ))
    })?;
    let cells = n * n;
    let total = field.size.pow(cells as u32);
    let mut entries = vec![0usize; cells];
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = c % field.size;
            c /= field.size;
        }
        if field.det(&entries, n) == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// `|W|` by closing the simple reflections, acting as permutations of all
/// roots, under composition. Gives up (returns `None`) past `limit` elements.
pub fn weyl_order_by_reflections(datum: &RootDatum, limit: usize) -> Option<u64> {
    let r = datum.rank();
    let mut roots: Vec<Vec<i64>> = datum.positive_roots().to_vec();
    roots.extend(
        datum
            .positive_roots()
            .iter()
            .map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()),
    );
    let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let generators: Vec<Vec<u16>> = (0..r)
        .map(|i| {
            roots
                .iter()
                .map(|beta| {
                    let pairing = datum.pairing(beta, i);
                    let mut image = beta.clone();
                    image[i] -= pairing;
                    index[&image] as u16
                })
                .collect()
        })
        .collect();
    let identity: Vec<u16> = (0..roots.len() as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for s in &generators {
            let composed: Vec<u16> = w.iter().map(|&k| s[k as usize]).collect();
            if seen.insert(composed.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(composed);
            }
        }
    }
    Some(seen.len() as u64)
}

/// `(q-1) * [1/|GL_2| + sum_{a>=1} 1/((q-1)^2 q^{2a+1})] = 1/((q-1)(q^2-1))`,
/// the closed form of the rank-2 enumeration.
pub fn sl2_mass_closed_form(q: u64) -> Rational {
    let q = BigInt::from(q);
    Rational::new(BigInt::one(), (&q - 1) * (&q * &q - 1))
}

/// Mass of types with `a_1 <= B` for `SL_2`, from the same closed form.
pub fn sl2_partial_closed_form(q: u64, max_twist: u32) -> Rational {
    let qq = big(&BigUint::from(q));
    let gl2 = big(&gl_order(2, q));
    let mut sum = gl2.recip();
    for a in 1..=max_twist as i64 {
        sum += (int(q as i64 - 1).pow(2) * q_pow(q, 2 * a + 1)).recip();
    }
    (qq - int(1)) * sum
}
