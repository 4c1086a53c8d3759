use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use quatunit::realalg::{log_interval, rat, weil_height, AlgebraicComplex, AlgebraicReal, RInterval, Rat};

fn tiny(bits: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits)
}

/// p + q·√n for small rationals p, q and n ∈ {2, 3, 5}.
fn quadratic() -> impl Strategy<Value = AlgebraicReal> {
    (-20i64..=20, 1i64..=6, -10i64..=10, 1i64..=6, prop::sample::select(vec![2i64, 3, 5])).prop_map(
        |(pn, pd, qn, qd, n)| {
            let p = AlgebraicReal::from_rat(rat(pn, pd));
            let q = AlgebraicReal::from_rat(rat(qn, qd));
            p.add(&q.mul(&AlgebraicReal::sqrt_int(n)))
        },
    )
}

fn nonzero() -> impl Strategy<Value = AlgebraicReal> {
    quadratic().prop_filter("nonzero", |x| !x.is_zero())
}

fn positive() -> impl Strategy<Value = AlgebraicReal> {
    nonzero().prop_map(|x| if x.is_negative() { x.neg() } else { x })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_results_stay_inside_wide_interval_arithmetic(
        x in quadratic(),
        y in nonzero(),
        op in 0u8..4,
        eps_bits in 1usize..=256,
    ) {
        let (xi, yi) = (x.refine(&tiny(1000)), y.refine(&tiny(1000)));
        let (exact, approx) = match op {
            0 => (x.add(&y), xi.add(&yi)),
            1 => (x.sub(&y), xi.sub(&yi)),
            2 => (x.mul(&y), xi.mul(&yi)),
            _ => (x.div(&y).unwrap(), xi.div(&yi).unwrap()),
        };
        prop_assert!(exact.refine(&tiny(eps_bits)).intersects(&approx));
    }

    #[test]
    fn comparison_agrees_with_separated_intervals(x in quadratic(), y in quadratic()) {
        let (xi, yi) = (x.refine(&tiny(64)), y.refine(&tiny(64)));
        if xi.hi < yi.lo {
            prop_assert_eq!(x.cmp_exact(&y), Ordering::Less);
        } else if yi.hi < xi.lo {
            prop_assert_eq!(x.cmp_exact(&y), Ordering::Greater);
        }
        prop_assert_eq!(x.cmp_exact(&y), y.cmp_exact(&x).reverse());
        prop_assert_eq!(x.cmp_exact(&x), Ordering::Equal);
    }

    #[test]
    fn logarithms_add(x in positive(), y in positive()) {
        let b = 80;
        let whole = log_interval(&x.mul(&y), b).unwrap();
        let parts = log_interval(&x, b + 1).unwrap().add(&log_interval(&y, b + 1).unwrap());
        prop_assert!(whole.intersects(&parts));
    }

    #[test]
    fn heights_of_rational_powers_scale(num in 1i64..=60, den in 1i64..=60, n in 1u32..=10) {
        let alpha = AlgebraicReal::from_rat(rat(num, den));
        let h = weil_height(&AlgebraicComplex::from_real(alpha.clone()), 64).unwrap();
        let hn = weil_height(&AlgebraicComplex::from_real(alpha.pow(n)), 64).unwrap();
        let scaled = h.scale(&Rat::from_integer(n.into()));
        let slack = RInterval::new(-tiny(50), tiny(50));
        prop_assert!(hn.intersects(&scaled.add(&slack)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn square_roots_square_back(a in quadratic(), b in -4i64..=4) {
        // degree up to 4: p + q√n + b√7
        let x = a.add(&AlgebraicReal::from_int(b).mul(&AlgebraicReal::sqrt_int(7)));
        let x = if x.is_negative() { x.neg() } else { x };
        prop_assert!(x.degree() <= 4);
        let r = x.sqrt().unwrap();
        prop_assert!(!r.is_negative());
        prop_assert_eq!(r.square(), x);
    }
}
