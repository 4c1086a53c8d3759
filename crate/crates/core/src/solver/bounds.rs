//! Certified exponent caps for both solution branches.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{embed_commutative, HeightCap, LocusInstance, UnitEquationInstance};
use crate::baker::{explicit_constants, solve_height_cap_scaled, BakerCertificate, LogGenerator};
use crate::error::Result;
use crate::quat::Quaternion;
use crate::realalg::interval::{ceil_dyadic, ceil_int, floor_dyadic, floor_int, pi_interval};
use crate::realalg::{log_interval, AlgebraicComplex, AlgebraicReal, RInterval, Rat};
use crate::semigroup::log_norm_data;

/// Fractional bits kept for the comparability constants.
const ENVELOPE_BITS: u32 = 64;

/// Envelopes C₁·max mᵢ < max n_j < C₂·max mᵢ and C₂' = max(C₂, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparability {
    pub c1: Rat,
    pub c2: Rat,
    pub c2_p: Rat,
}

#[derive(Clone, Debug)]
pub struct ReductionBound {
    pub h_cap: HeightCap,
    pub baker: BakerCertificate,
    pub comparability: Comparability,
    /// Caps from the three regimes: |afa'| < 2, max mᵢ below the
    /// comparability threshold, and the Baker regime.
    pub regime_caps: [BigInt; 3],
    /// Coefficient height multiplier K after merging equal α's.
    pub height_multiplier: BigInt,
    /// Whether c = ln(|aa'|/|bb'|) vanished and left the form.
    pub constant_dropped: bool,
    pub decay_rate: RInterval,
    pub decay_scale: RInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusKind {
    /// No quaternion of Γ can lie on the hyperplane.
    Empty,
    /// All generators real; the cap follows from growth alone.
    Real,
    /// Cap from a linear form in iπ, i(π/2+θ) and the iθ_j.
    Baker,
}

#[derive(Clone, Debug)]
pub struct LocusBound {
    pub kind: LocusKind,
    pub cap: HeightCap,
    pub baker: Option<BakerCertificate>,
    pub height_multiplier: BigInt,
    /// Bound |m| ≤ C'·max n_j on the multiple of π.
    pub c_prime: Option<BigInt>,
}

impl LocusBound {
    /// Whether the cap excludes every exponent vector.
    pub fn is_empty(&self) -> bool {
        self.kind == LocusKind::Empty || self.cap == HeightCap::Finite(1)
    }
}

fn max_hi(v: &[RInterval]) -> Rat {
    v.iter().map(|x| x.hi.clone()).max().expect("nonempty")
}

fn max_lo(v: &[RInterval]) -> Rat {
    v.iter().map(|x| x.lo.clone()).max().expect("nonempty")
}

fn min_lo(v: &[RInterval]) -> Rat {
    v.iter().map(|x| x.lo.clone()).min().expect("nonempty")
}

/// ⌊x⌋ + 1, never below 1.
fn cap_above(x: &Rat) -> BigInt {
    (floor_int(x) + BigInt::one()).max(BigInt::one())
}

/// |q| as an exact algebraic real.
fn modulus(q: &Quaternion) -> AlgebraicReal {
    q.abs()
}

/// Positive-real logarithm generators, merged on equal α; returns the
/// generators and the largest merged coefficient multiplier.
fn merge_real(entries: Vec<(AlgebraicReal, u64)>, bits: u32) -> Result<(Vec<LogGenerator>, u64)> {
    let mut groups: Vec<(AlgebraicReal, u64)> = Vec::new();
    for (alpha, weight) in entries {
        match groups.iter_mut().find(|(a, _)| *a == alpha) {
            Some(g) => g.1 += weight,
            None => groups.push((alpha, weight)),
        }
    }
    groups.retain(|(a, _)| !a.is_one());
    let k = groups.iter().map(|g| g.1).max().unwrap_or(1);
    let gens = groups
        .into_iter()
        .map(|(a, _)| LogGenerator::real(a, bits))
        .collect::<Result<Vec<_>>>()?;
    Ok((gens, k))
}

/// Cap on max exponent for solutions off the hyperplane.
pub fn reduction_bound(inst: &UnitEquationInstance, bits: u32) -> Result<ReductionBound> {
    inst.validate()?;
    let xs = log_norm_data(&inst.gamma1, bits)?;
    let ys = log_norm_data(&inst.gamma2, bits)?;
    let t = Rat::from_integer(BigInt::from(xs.len()));
    let u = Rat::from_integer(BigInt::from(ys.len()));
    let (minx, maxx_hi, maxx_lo) = (min_lo(&xs), max_hi(&xs), max_lo(&xs));
    let (miny, maxy_hi) = (min_lo(&ys), max_hi(&ys));

    let two = Rat::from_integer(BigInt::from(2));
    let c2 = ceil_dyadic(&(&two * &t * &maxx_hi / &miny), ENVELOPE_BITS);
    let c1 = floor_dyadic(&(&minx / (&two * &u * &maxy_hi)), ENVELOPE_BITS);
    let c2_p = c2.clone().max(Rat::one());

    let aa = modulus(&inst.a).mul(&modulus(&inst.a_p));
    let bb = modulus(&inst.b).mul(&modulus(&inst.b_p));
    let ratio = aa.div(&bb)?;
    let constant_dropped = ratio.is_one();
    let c_abs_hi = if constant_dropped {
        Rat::zero()
    } else {
        log_interval(&ratio, bits)?.abs_upper()
    };

    // |afa'| < 2 forces |bgb'| < 3
    let ln_a_room = log_interval(&AlgebraicReal::from_int(2).div(&aa)?, bits)?.hi;
    let ln_b_room = log_interval(&AlgebraicReal::from_int(3).div(&bb)?, bits)?.hi;
    let cap1 = cap_above(&(ln_a_room / &minx)).max(cap_above(&(ln_b_room / &miny)));

    // below the threshold max mᵢ < m_up, and max n_j follows from Σ n y ≤ Σ m x + |c| + 1
    let m_up = (&c_abs_hi + Rat::one()) / (&t * &maxx_lo);
    let n_up = (&c_abs_hi + Rat::one() + &t * &maxx_hi * &m_up) / &miny;
    let cap2 = cap_above(&m_up.clone().max(n_up));

    // Baker regime: |Λ| ≤ (2/|aa'|)·e^(−min xᵢ·max mᵢ) and H ≤ C₂'·max mᵢ
    let mut entries: Vec<(AlgebraicReal, u64)> = Vec::new();
    if !constant_dropped {
        entries.push((ratio.clone(), 1));
    }
    for g in inst.gamma1.generators.iter().chain(inst.gamma2.generators.iter()) {
        entries.push((modulus(g), 1));
    }
    let (gens, k) = merge_real(entries, bits)?;
    let baker = explicit_constants(&gens)?;
    let multiplier = BigInt::from(k);
    let x_min_iv = xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.min(x));
    let decay_rate = x_min_iv.scale(&c2_p.recip());
    let decay_scale = AlgebraicReal::from_int(2).div(&aa)?.refine_relative(bits);
    let cap3 = solve_height_cap_scaled(&baker, &multiplier, &decay_rate, &decay_scale)?;

    let h = cap1.clone().max(cap2.clone()).max(cap3.clone());
    Ok(ReductionBound {
        h_cap: HeightCap::from_big(h),
        baker,
        comparability: Comparability { c1, c2, c2_p },
        regime_caps: [cap1, cap2, cap3],
        height_multiplier: multiplier,
        constant_dropped,
        decay_rate,
        decay_scale,
    })
}

/// Cap on every exponent of f ∈ Γ lying on the hyperplane 2⟨d, f⟩ = N(d).
pub fn locus_bound(inst: &LocusInstance, bits: u32) -> Result<LocusBound> {
    inst.validate()?;
    let emb = embed_commutative(&inst.gamma, bits)?;
    let d = inst.d()?;
    let nd = d.norm();
    let w = AlgebraicComplex::new(d.a.clone(), d.dot(&emb.u));
    let empty = || LocusBound {
        kind: LocusKind::Empty,
        cap: HeightCap::Finite(1),
        baker: None,
        height_multiplier: BigInt::one(),
        c_prime: None,
    };
    if w.is_zero() {
        return Ok(empty());
    }
    let rhos = log_norm_data(&inst.gamma, bits)?;
    let rho_lo = min_lo(&rhos);

    if emb.images.iter().all(|z| z.is_real()) {
        // f real: |f| = Π r_j^(n_j) must equal |N(d)/(2·w₀)|
        if w.re.is_zero() {
            return Ok(empty());
        }
        let target = nd.div(&w.re.add(&w.re))?;
        let target = if target.is_negative() { target.neg() } else { target };
        if target.cmp_exact(&AlgebraicReal::one()).is_le() {
            return Ok(LocusBound {
                kind: LocusKind::Real,
                ..empty()
            });
        }
        let ln_t = log_interval(&target, bits)?.hi;
        return Ok(LocusBound {
            kind: LocusKind::Real,
            cap: HeightCap::from_big(cap_above(&(ln_t / &rho_lo))),
            baker: None,
            height_multiplier: BigInt::one(),
            c_prime: None,
        });
    }

    // ⟨v, F⟩ = M with v = w/|w|, M = N(d)/(2|w|)
    let w_abs = w.abs();
    let v = w.unit()?;
    let m_val = nd.div(&w_abs.add(&w_abs))?;

    let s = Rat::from_integer(BigInt::from(emb.images.len()));
    let pi = pi_interval(bits);
    let theta_max = max_hi(&emb.theta_intervals);
    let c_prime = ceil_int(&((&s * &theta_max + Rat::new(5.into(), 2.into()) * &pi.hi) / &pi.lo)).max(BigInt::one());
    let c_prime_u64 = u64::try_from(&c_prime).unwrap_or(u64::MAX);

    let mut entries: Vec<(AlgebraicComplex, u64)> = Vec::new();
    let push = |entries: &mut Vec<(AlgebraicComplex, u64)>, z: AlgebraicComplex, wgt: u64| {
        match entries.iter_mut().find(|(a, _)| *a == z) {
            Some(e) => e.1 = e.1.saturating_add(wgt),
            None => entries.push((z, wgt)),
        }
    };
    push(&mut entries, AlgebraicComplex::i().mul(&v), 1);
    push(&mut entries, AlgebraicComplex::from_real(AlgebraicReal::from_int(-1)), c_prime_u64);
    for z in &emb.images {
        push(&mut entries, z.unit()?, 1);
    }
    let one = AlgebraicComplex::from_real(AlgebraicReal::one());
    entries.retain(|(a, _)| *a != one);
    let k = entries.iter().map(|e| e.1).max().unwrap_or(1);
    let gens = entries
        .into_iter()
        .map(|(a, _)| LogGenerator::principal(a, bits))
        .collect::<Result<Vec<_>>>()?;
    let baker = explicit_constants(&gens)?;
    let multiplier = BigInt::from(k);
    let decay_rate = rhos.iter().skip(1).fold(rhos[0].clone(), |acc, x| acc.min(x));
    let scale = m_val.add(&m_val).refine_relative(bits);
    let cap = solve_height_cap_scaled(&baker, &multiplier, &decay_rate, &scale)?;
    debug_assert!(cap.is_positive());
    Ok(LocusBound {
        kind: LocusKind::Baker,
        cap: HeightCap::from_big(cap),
        baker: Some(baker),
        height_multiplier: multiplier,
        c_prime: Some(c_prime),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::{interval::rat_to_f64, rat};
    use crate::semigroup::SemigroupSpec;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn inst(b: i64, g1: Vec<Quaternion>, g2: Vec<Quaternion>) -> UnitEquationInstance {
        UnitEquationInstance {
            a: Quaternion::one(),
            a_p: Quaternion::one(),
            b: q(b, 0, 0, 0),
            b_p: Quaternion::one(),
            gamma1: SemigroupSpec::new(g1),
            gamma2: SemigroupSpec::new(g2),
        }
    }

    #[test]
    fn catalan_bound_is_finite_and_positive() {
        let r = reduction_bound(&inst(-1, vec![q(3, 0, 0, 0)], vec![q(2, 0, 0, 0)]), 64).unwrap();
        assert!(r.constant_dropped);
        assert_eq!(r.baker.r, 2);
        assert_eq!(r.height_multiplier, BigInt::one());
        assert!(r.comparability.c1.is_positive());
        assert!(r.comparability.c2 >= r.comparability.c1);
        // C₂ = 2·ln3/ln2 ≈ 3.17
        assert!((rat_to_f64(&r.comparability.c2) - 2.0 * 3f64.ln() / 2f64.ln()).abs() < 1e-9);
        assert!(r.regime_caps.iter().all(|c| c.is_positive()));
        let cap = r.h_cap.as_big();
        assert!(cap > BigInt::from(3));
        assert_eq!(cap, r.regime_caps[2]);
    }

    #[test]
    fn merged_alphas_raise_the_multiplier() {
        let r = reduction_bound(
            &inst(1, vec![q(1, 1, 0, 0)], vec![q(1, 0, 1, 0), q(1, 0, 0, 1)]),
            64,
        )
        .unwrap();
        assert_eq!(r.baker.r, 1);
        assert_eq!(r.baker.d, 2);
        assert_eq!(r.height_multiplier, BigInt::from(3));
    }

    #[test]
    fn nonzero_constant_is_kept() {
        let mut i = inst(1, vec![q(2, 0, 0, 0)], vec![q(3, 0, 0, 0)]);
        i.b = q(5, 0, 0, 0);
        let r = reduction_bound(&i, 64).unwrap();
        assert!(!r.constant_dropped);
        assert_eq!(r.baker.r, 3);
        // threshold cap reflects |c| = ln 5
        let m_up = (5f64.ln() + 1.0) / 2f64.ln();
        let n_up = (5f64.ln() + 1.0 + 2f64.ln() * m_up) / 3f64.ln();
        assert_eq!(r.regime_caps[1], BigInt::from((m_up.max(n_up)).floor() as i64 + 1));
    }

    fn locus(a: Rat, g: Quaternion) -> LocusInstance {
        LocusInstance {
            a: Quaternion::from_rats(a, rat(0, 1), rat(0, 1), rat(0, 1)),
            a_p: Quaternion::one(),
            gamma: SemigroupSpec::new(vec![g]),
        }
    }

    #[test]
    fn real_locus_caps() {
        // hyperplane Re f = 1/2 against powers of 2
        let b = locus_bound(&locus(rat(1, 1), q(2, 0, 0, 0)), 64).unwrap();
        assert_eq!(b.kind, LocusKind::Real);
        assert!(b.is_empty());
        // Re f = 8 against powers of 2: 2^n = 8 needs n < 4
        let b = locus_bound(&locus(rat(1, 16), q(2, 0, 0, 0)), 64).unwrap();
        assert_eq!(b.cap, HeightCap::Finite(4));
        // Re f = −9 against powers of −3
        let b = locus_bound(&locus(rat(-1, 18), q(-3, 0, 0, 0)), 64).unwrap();
        assert_eq!(b.cap, HeightCap::Finite(3));
    }

    #[test]
    fn complex_locus_uses_baker() {
        let b = locus_bound(&locus(rat(1, 2), q(1, 1, 0, 0)), 64).unwrap();
        assert_eq!(b.kind, LocusKind::Baker);
        let cert = b.baker.unwrap();
        // α's: i (from v = 1), −1, and (1+i)/√2
        assert_eq!(cert.r, 3);
        assert_eq!(b.c_prime, Some(BigInt::from(3)));
        assert_eq!(b.height_multiplier, BigInt::from(3));
        assert!(b.cap.as_big() > BigInt::from(50));
    }
}
