//! Split simply connected semisimple groups described by their Cartan type.
//!
//! The positive roots are generated from the Cartan matrix by root strings,
//! and every numerical invariant (exponents, degrees, dimension, Weyl group
//! order) is derived from that root set rather than read off a table.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime_power, uint_pow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A Cartan type such as `A2` or `E8`. Construction validates admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanLabel {
    family: Family,
    rank: u32,
}

impl CartanLabel {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanLabel { family, rank })
        } else {
            Err(Error::InadmissibleLabel {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Every admissible label with rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<CartanLabel> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        let mut out = Vec::new();
        for family in families {
            for rank in 1..=max_rank {
                if let Ok(label) = CartanLabel::new(family, rank) {
                    out.push(label);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const GRAMMAR: &str =
            "a Cartan label: letter A-G followed by a decimal rank, e.g. \"A1\", \"E8\"";
        let mut chars = s.chars();
        let first = chars
            .next()
            .ok_or_else(|| Error::parse(0, "empty group label", GRAMMAR))?;
        let family = Family::from_letter(first)
            .ok_or_else(|| Error::parse(0, format!("unknown family {first:?}"), GRAMMAR))?;
        let digits = &s[first.len_utf8()..];
        if digits.is_empty() {
            return Err(Error::parse(1, "missing rank", GRAMMAR));
        }
        if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
            return Err(Error::parse(
                1 + pos,
                "rank must be a decimal integer",
                GRAMMAR,
            ));
        }
        let rank: u32 = digits
            .parse()
            .map_err(|_| Error::parse(1, "rank out of range", GRAMMAR))?;
        CartanLabel::new(family, rank)
    }
}

/// Cartan matrix with `m[i][j] = <alpha_i^vee, alpha_j>`, Bourbaki numbering.
pub fn cartan_matrix(label: CartanLabel) -> Vec<Vec<i64>> {
    let n = label.rank as usize;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match label.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            // 1-3-4-5-6(-7-8) with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match label.family {
        // alpha_n short
        Family::B => m[n - 1][n - 2] = -2,
        // alpha_n long
        Family::C => m[n - 2][n - 1] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Family::F => m[2][1] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => m[0][1] = -3,
        _ => {}
    }
    m
}

/// A root system with its positive roots written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    label: CartanLabel,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Generates the positive roots by closure under root strings.
    pub fn build(label: CartanLabel) -> RootDatum {
        let cartan = cartan_matrix(label);
        let r = label.rank as usize;
        let mut roots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        // Roots of height h are exactly those reachable from height h-1, so a
        // level-by-level sweep visits each root once.
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..r {
                    // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                    let mut p = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if seen.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        RootDatum {
            label,
            cartan,
            positive_roots: roots,
        }
    }

    pub fn label(&self) -> CartanLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank as usize
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `h_k` = number of positive roots of height `k`, indexed from `k = 1`.
    pub fn height_distribution(&self) -> Vec<usize> {
        let max = self.positive_roots.last().map(|r| height(r)).unwrap_or(0) as usize;
        let mut counts = vec![0usize; max];
        for root in &self.positive_roots {
            counts[height(root) as usize - 1] += 1;
        }
        counts
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots
            .last()
            .expect("root systems are nonempty")
    }

    /// `<beta, alpha_i^vee>` for a root given in the simple-root basis.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, c)| b * c).sum()
    }

    pub fn invariants(&self) -> GroupInvariants {
        GroupInvariants::from_datum(self)
    }
}

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

/// Exponents as the conjugate partition of the height distribution.
pub fn exponents_from_heights(heights: &[usize]) -> Vec<u32> {
    let rows = heights.first().copied().unwrap_or(0);
    let mut exps: Vec<u32> = (1..=rows)
        .map(|j| heights.iter().filter(|&&h| h >= j).count() as u32)
        .collect();
    exps.sort_unstable();
    exps
}

fn determinant(m: &[Vec<i64>]) -> BigInt {
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// Numerical invariants of a split simply connected group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub label: String,
    pub rank: u32,
    pub exponents: Vec<u32>,
    pub degrees: Vec<u32>,
    pub num_pos_roots: u64,
    pub dim_g: u64,
    /// `|W|` from the highest-root formula `r! * prod(m_i) * det(Cartan)`.
    #[serde(with = "crate::arith::display_string")]
    pub weyl_order: BigUint,
    /// Generators of `H*(BG)`: degree `d` maps to its multiplicity; each
    /// generator sits in cohomological degree `2d`.
    pub generator_degrees: BTreeMap<u32, u32>,
}

impl GroupInvariants {
    pub fn from_datum(datum: &RootDatum) -> GroupInvariants {
        let r = datum.rank();
        let n = datum.num_positive_roots() as u64;
        let exponents = exponents_from_heights(&datum.height_distribution());
        let degrees: Vec<u32> = exponents.iter().map(|e| e + 1).collect();
        let mut generator_degrees = BTreeMap::new();
        for &d in &degrees {
            *generator_degrees.entry(d).or_insert(0) += 1;
        }
        let factorial: BigUint = (1..=r as u64).map(BigUint::from).product();
        let marks: BigUint = datum
            .highest_root()
            .iter()
            .map(|&m| BigUint::from(m as u64))
            .product();
        let connection = determinant(datum.cartan_matrix())
            .to_biguint()
            .expect("Cartan determinants are positive");
        GroupInvariants {
            label: datum.label().to_string(),
            rank: r as u32,
            exponents,
            degrees,
            num_pos_roots: n,
            dim_g: 2 * n + r as u64,
            weyl_order: factorial * marks * connection,
            generator_degrees,
        }
    }

    pub fn for_label(label: CartanLabel) -> GroupInvariants {
        RootDatum::build(label).invariants()
    }

    pub fn coxeter_number(&self) -> u32 {
        self.exponents.last().map(|e| e + 1).unwrap_or(0)
    }

    pub fn degree_product(&self) -> BigUint {
        self.degrees.iter().map(|&d| BigUint::from(d)).product()
    }

    /// `|G(F_q)| = q^N * prod_i (q^{d_i} - 1)`.
    pub fn chevalley_order(&self, q: u64) -> Result<BigUint> {
        check_prime_power(q)?;
        Ok(self.chevalley_order_unchecked(q))
    }

    pub(crate) fn chevalley_order_unchecked(&self, q: u64) -> BigUint {
        let mut order = uint_pow(q, self.num_pos_roots);
        for &d in &self.degrees {
            order *= uint_pow(q, d as u64) - BigUint::one();
        }
        order
    }
}
