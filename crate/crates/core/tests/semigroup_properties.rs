use std::collections::HashSet;

use proptest::prelude::*;

use quatunit::quat::Quaternion;
use quatunit::realalg::AlgebraicReal;
use quatunit::semigroup::{enumerate_up_to, enumerate_with_stats, membership, validate, SemigroupSpec};

const CAP: u64 = 1_000_000;

type Q = [i64; 4];

fn q_mul(x: &Q, y: &Q) -> Q {
    let [a1, b1, c1, d1] = *x;
    let [a2, b2, c2, d2] = *y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn q_norm(x: &Q) -> i64 {
    x.iter().map(|c| c * c).sum()
}

fn quat(x: &Q) -> Quaternion {
    Quaternion::from_ints(x[0], x[1], x[2], x[3])
}

fn ints(q: &Quaternion) -> Q {
    q.coords().map(|c| {
        let r = c.as_rat().expect("integer coordinate");
        assert!(r.is_integer());
        i64::try_from(r.to_integer()).unwrap()
    })
}

/// Integer quaternions of norm 2..=5.
fn small_generator() -> impl Strategy<Value = Q> {
    let mut pool = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    let q = [a, b, c, d];
                    if (2..=5).contains(&q_norm(&q)) {
                        pool.push(q);
                    }
                }
            }
        }
    }
    prop::sample::select(pool)
}

fn small_spec() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(small_generator(), 1..=2).prop_filter("distinct generators", |g| g.len() < 2 || g[0] != g[1])
}

/// All words of length ≤ L with L = ⌈ln B / ln(min norm)⌉, evaluated naively.
fn naive(gens: &[Q], bound: i64) -> HashSet<Q> {
    let min_norm = gens.iter().map(q_norm).min().unwrap() as f64;
    let len = ((bound as f64).ln() / min_norm.ln()).ceil() as usize;
    let mut layer = gens.to_vec();
    let mut out: HashSet<Q> = HashSet::new();
    for depth in 1..=len.max(1) {
        out.extend(layer.iter().filter(|q| q_norm(q) <= bound));
        if depth < len {
            layer = layer.iter().flat_map(|x| gens.iter().map(move |g| q_mul(x, g))).collect();
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_equals_naive_words(gens in small_spec(), bound in 2i64..=256) {
        let spec = SemigroupSpec::new(gens.iter().map(quat).collect());
        let els = enumerate_up_to(&spec, &AlgebraicReal::from_int(bound), CAP).unwrap();
        let got: HashSet<Q> = els.iter().map(|e| ints(&e.value)).collect();
        prop_assert_eq!(got.len(), els.len());
        prop_assert_eq!(got, naive(&gens, bound));
    }

    #[test]
    fn enumeration_is_sound(gens in small_spec(), bound in 2i64..=256) {
        let spec = SemigroupSpec::new(gens.iter().map(quat).collect());
        let b = AlgebraicReal::from_int(bound);
        for e in enumerate_up_to(&spec, &b, CAP).unwrap() {
            prop_assert!(e.abs_sq.cmp_exact(&b).is_le());
            prop_assert_eq!(e.abs_sq.clone(), e.value.norm());
            for w in &e.witnesses {
                prop_assert_eq!(w.eval(&spec), e.value.clone());
            }
        }
    }

    #[test]
    fn enumeration_is_monotone(gens in small_spec(), b1 in 2i64..=128, extra in 0i64..=128) {
        let spec = SemigroupSpec::new(gens.iter().map(quat).collect());
        let small: HashSet<Q> = enumerate_up_to(&spec, &AlgebraicReal::from_int(b1), CAP)
            .unwrap().iter().map(|e| ints(&e.value)).collect();
        let large: HashSet<Q> = enumerate_up_to(&spec, &AlgebraicReal::from_int(b1 + extra), CAP)
            .unwrap().iter().map(|e| ints(&e.value)).collect();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn membership_inverts_evaluation(gens in small_spec(), bound in 2i64..=200, pick in any::<prop::sample::Index>()) {
        let spec = SemigroupSpec::new(gens.iter().map(quat).collect());
        let els = enumerate_up_to(&spec, &AlgebraicReal::from_int(bound), CAP).unwrap();
        prop_assume!(!els.is_empty());
        let e = &els[pick.index(els.len())];
        let w = membership(&spec, &e.value, None, CAP).unwrap().expect("enumerated elements are members");
        prop_assert_eq!(w.eval(&spec), e.value.clone());
        prop_assert!(w.len() <= e.shortest().len());
    }

    #[test]
    fn commutative_search_visits_lattice_points_only(
        a in 2i64..=6,
        b in 2i64..=6,
        axis in 0usize..4,
        bound in 16i64..=4096,
    ) {
        // generators on one complex line through 1 and the chosen axis commute
        let mut g2 = [1i64, 0, 0, 0];
        g2[axis] += b;
        let gens = [[a, 0, 0, 0], g2];
        prop_assume!(gens[0] != gens[1]);
        let spec = SemigroupSpec::new(gens.iter().map(quat).collect());
        prop_assert!(validate(&spec).unwrap().commutative);
        let norms: Vec<i64> = gens.iter().map(q_norm).collect();
        let mut lattice = 0usize;
        let mut x = 1i64;
        while x <= bound {
            let mut y = x;
            while y <= bound {
                lattice += 1;
                y *= norms[1];
            }
            x *= norms[0];
        }
        lattice -= 1; // the empty word
        let e = enumerate_with_stats(&spec, &AlgebraicReal::from_int(bound), CAP).unwrap();
        prop_assert!(e.explored <= lattice, "explored {} > {} lattice points", e.explored, lattice);
    }
}
