use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tamagawa_core::arith::{parse_rational, q_pow, to_decimal, Rational};
use tamagawa_core::bung::{
    bigraded_trace, poincare_series, ser1, series_identity_check, BunGContext,
};
use tamagawa_core::oracle::{sl2_partial_closed_form, sl_mass_p1};
use tamagawa_core::powerseries::TruncSeries;
use tamagawa_core::rootsys::{CartanLabel, GroupInvariants};
use tamagawa_core::zeta::CurveZeta;

const ORDER: usize = 8;
const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
const PRIME_POWERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn series() -> impl Strategy<Value = TruncSeries> {
    proptest::collection::vec(rational(), ORDER + 1).prop_map(|c| TruncSeries::new(c, ORDER))
}

fn label() -> impl Strategy<Value = CartanLabel> {
    prop::sample::select(CartanLabel::all_up_to_rank(4))
}

/// Nonsingular elliptic curves over small prime fields.
fn elliptic() -> impl Strategy<Value = CurveZeta> {
    (
        prop::sample::select(SMALL_PRIMES.to_vec()),
        prop::array::uniform5(-3i64..=3),
    )
        .prop_filter_map("singular", |(p, a)| {
            CurveZeta::elliptic_from_weierstrass(p, a).ok()
        })
}

fn curve() -> impl Strategy<Value = CurveZeta> {
    prop_oneof![
        prop::sample::select(PRIME_POWERS.to_vec())
            .prop_map(|q| CurveZeta::projective_line(q).unwrap()),
        elliptic(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &TruncSeries::one(ORDER), a.clone());
        prop_assert_eq!(&a - &a, TruncSeries::zero(ORDER));
    }

    #[test]
    fn invert_is_two_sided(a in series()) {
        prop_assume!(!a.coeff(0).is_zero());
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, TruncSeries::one(ORDER));
        prop_assert_eq!(inv.invert().unwrap(), a);
    }

    #[test]
    fn geometric_factor_inverts_binomial(c in rational(), k in 1usize..=4, m in 0u32..=5) {
        let binomial = &TruncSeries::one(ORDER) - &TruncSeries::monomial(c.clone(), k, ORDER);
        let g = TruncSeries::geometric_factor(&c, k, ORDER);
        prop_assert_eq!(&binomial * &g, TruncSeries::one(ORDER));
        let mut power = TruncSeries::one(ORDER);
        for _ in 0..m {
            power = &power * &g;
        }
        prop_assert_eq!(TruncSeries::geometric_factor_pow(&c, k, &BigInt::from(m), ORDER), power);
    }

    #[test]
    fn truncated_euler_identity(curve in curve(), s in 2i64..=4, depth in 1usize..=6) {
        let q = curve.q();
        let x = q_pow(q, -s);
        let table = curve.closed_point_table(depth as u32);
        let mut product = TruncSeries::one(depth);
        for (&d, a) in &table.counts {
            let c = num_traits::pow(x.clone(), d as usize);
            product = &product * &TruncSeries::geometric_factor_pow(&c, d as usize, a, depth);
        }
        let inner = TruncSeries::monomial(x.clone(), 1, depth);
        let rational = &(&TruncSeries::poly_eval_series(curve.numerator(), &inner)
            * &TruncSeries::geometric_factor(&x, 1, depth))
            * &TruncSeries::geometric_factor(&(x * Rational::from_integer(q.into())), 1, depth);
        prop_assert_eq!(product, rational);
    }

    #[test]
    fn closed_points_compatible(curve in curve()) {
        let table = curve.closed_point_table(8);
        for r in 1..=8u32 {
            let mut sum = BigInt::zero();
            for d in (1..=r).filter(|d| r % d == 0) {
                prop_assert!(table.get(d) >= &BigInt::zero());
                sum += BigInt::from(d) * table.get(d);
            }
            prop_assert_eq!(sum, curve.point_count(r));
        }
    }

    #[test]
    fn elliptic_numerators_revalidate(curve in elliptic()) {
        let again = CurveZeta::from_numerator(curve.q(), 1, curve.numerator().to_vec()).unwrap();
        prop_assert_eq!(again, curve);
    }

    #[test]
    fn zeta_values_positive(curve in curve(), s in 2i64..=6) {
        prop_assert!(curve.zeta_value(s).unwrap() > Rational::zero());
    }

    #[test]
    fn traces_respect_weight_bound(label in label(), curve in curve()) {
        let ctx = BunGContext::new(GroupInvariants::for_label(label), curve).unwrap();
        prop_assert!(bigraded_trace(&ctx, 24).satisfies_weight_bound());
    }

    #[test]
    fn series_identity_holds(label in label(), curve in curve()) {
        let ctx = BunGContext::new(GroupInvariants::for_label(label), curve).unwrap();
        let cmp = series_identity_check(&ctx, 10);
        prop_assert!(cmp.identical, "{:?}", cmp.first_discrepancy);
    }

    #[test]
    fn poincare_coefficients_are_counts(label in label(), genus in 0u32..=4) {
        let series = poincare_series(&GroupInvariants::for_label(label), genus, 24);
        prop_assert!(series.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::zero()));
        prop_assert!(series.coeff(0).is_one());
    }

    #[test]
    fn computations_are_deterministic(label in label(), curve in curve()) {
        let a = BunGContext::new(GroupInvariants::for_label(label), curve.clone()).unwrap();
        let b = BunGContext::new(GroupInvariants::for_label(label), curve).unwrap();
        prop_assert_eq!(ser1(&a, 12), ser1(&b, 12));
        prop_assert_eq!(bigraded_trace(&a, 12), bigraded_trace(&b, 12));
    }

    #[test]
    fn sl2_enumeration_matches_closed_form(
        q in prop::sample::select(PRIME_POWERS.to_vec()),
        b in 1u32..=12,
    ) {
        let report = sl_mass_p1(2, q, b).unwrap();
        prop_assert_eq!(report.partial_mass, sl2_partial_closed_form(q, b));
    }

    #[test]
    fn rational_strings_round_trip(x in rational(), digits in 0usize..=12) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x.clone());
        let shown = to_decimal(&x, digits);
        let back = parse_decimal(&shown);
        let half_ulp = Rational::new(BigInt::one(), BigInt::from(2) * BigInt::from(10).pow(digits as u32));
        prop_assert!((back - x).abs() <= half_ulp);
    }
}

fn parse_decimal(s: &str) -> Rational {
    let (sign, body) = s.strip_prefix('-').map_or((1, s), |b| (-1, b));
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{whole}{frac}").parse().unwrap();
    Rational::new(digits * sign, BigInt::from(10).pow(frac.len() as u32))
}
