//! Explicit lower bounds for nonvanishing linear forms in logarithms.
//!
//! For integers a_1..a_r, not all zero, with H = max|a_i|, the certificate
//! asserts that Λ = Σ a_i λ_i is either 0 or satisfies |Λ| > k·H^(−C), with
//! k = 1 and C = C(r,d)·Π h'(λ_i) where
//! C(r,d) = 18·(r+1)!·r^(r+1)·(32d)^(r+2)·ln(2rd) and
//! h'(λ) = max(h(α), |λ|/d, 1/d).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::realalg::interval::{ceil_dyadic, ceil_int, ln2_interval, ln_rat_interval, sqrt_bounds};
use crate::realalg::{
    arg_interval, log_interval, rat_literal, weil_height, AlgebraicComplex, AlgebraicReal, RInterval, Rat,
};

/// Fractional bits kept when rounding C upward.
const CONSTANT_BITS: u32 = 32;

/// One logarithm λ with e^λ = α algebraic.
#[derive(Clone, Debug)]
pub struct LogGenerator {
    pub alpha: AlgebraicComplex,
    pub lambda_re: RInterval,
    pub lambda_im: RInterval,
    /// Degree of the field generated by all α's, or an upper bound; `None`
    /// falls back to the product of the minimal-polynomial degrees.
    pub degree_bound: Option<u64>,
}

impl LogGenerator {
    /// λ = ln α for a positive real α.
    pub fn real(alpha: AlgebraicReal, bits: u32) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let re = log_interval(&alpha, bits)?;
        Ok(LogGenerator {
            alpha: alpha.into(),
            lambda_re: re,
            lambda_im: RInterval::point(Rat::zero()),
            degree_bound: None,
        })
    }

    /// Principal branch λ = ln|α| + i·arg α with arg α ∈ [0, 2π).
    pub fn principal(alpha: AlgebraicComplex, bits: u32) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let re = log_interval(&alpha.norm_sq(), bits + 1)?.scale(&half);
        let im = arg_interval(&alpha, bits)?;
        Ok(LogGenerator {
            alpha,
            lambda_re: re,
            lambda_im: im,
            degree_bound: None,
        })
    }

    /// Explicit branch supplied by the caller.
    pub fn with_lambda(alpha: AlgebraicComplex, lambda_re: RInterval, lambda_im: RInterval) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(LogGenerator {
            alpha,
            lambda_re,
            lambda_im,
            degree_bound: None,
        })
    }

    pub fn with_degree_bound(mut self, d: u64) -> Self {
        self.degree_bound = Some(d);
        self
    }

    /// Upper bound for |λ|.
    pub fn abs_upper(&self) -> Rat {
        let x = self.lambda_re.abs_upper();
        let y = self.lambda_im.abs_upper();
        sqrt_bounds(&(&x * &x + &y * &y), 64).1
    }
}

#[derive(Clone, Debug)]
pub struct BakerCertificate {
    pub k: Rat,
    pub c: Rat,
    pub r: usize,
    pub d: u64,
    pub generators: Vec<LogGenerator>,
}

#[derive(Serialize)]
struct CertificateJson {
    k: String,
    #[serde(rename = "C")]
    c: String,
    r: usize,
    d: u64,
}

impl BakerCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            k: rat_literal(&self.k),
            c: rat_literal(&self.c),
            r: self.r,
            d: self.d,
        })
        .expect("plain struct")
    }
}

/// Upper bound for C(r, d) = 18·(r+1)!·r^(r+1)·(32d)^(r+2)·ln(2rd).
pub fn constant_rd(r: usize, d: u64) -> Result<Rat> {
    let r_big = BigInt::from(r);
    let fact: BigInt = (1..=r + 1).map(BigInt::from).product();
    let pow_r = num_traits::pow(r_big.clone(), r + 1);
    let pow_d = num_traits::pow(BigInt::from(32u64) * BigInt::from(d), r + 2);
    let integer = BigInt::from(18) * fact * pow_r * pow_d;
    let ln_part = ln_rat_interval(&Rat::from_integer(BigInt::from(2) * r_big * BigInt::from(d)), 64)?.hi;
    Ok(Rat::from_integer(integer) * ln_part)
}

fn field_degree(gens: &[LogGenerator]) -> u64 {
    if let Some(d) = gens.iter().map(|g| g.degree_bound).collect::<Option<Vec<u64>>>() {
        return d.into_iter().max().unwrap_or(1).max(1);
    }
    gens.iter()
        .map(|g| g.alpha.minpoly().degree() as u64)
        .fold(1u64, |acc, x| acc.saturating_mul(x.max(1)))
}

/// Builds the certificate |Λ| > H^(−C).
pub fn explicit_constants(gens: &[LogGenerator]) -> Result<BakerCertificate> {
    if gens.is_empty() {
        return Err(Error::Invalid("a linear form needs at least one logarithm".into()));
    }
    if gens.iter().any(|g| g.alpha.is_zero()) {
        return Err(Error::ZeroAlpha);
    }
    let r = gens.len();
    let d = field_degree(gens);
    let d_rat = Rat::from_integer(BigInt::from(d));
    let mut c = constant_rd(r, d)?;
    for g in gens {
        let h = weil_height(&g.alpha, 64)?.hi;
        let by_lambda = g.abs_upper() / &d_rat;
        let floor = d_rat.recip();
        let h_prime = h.max(by_lambda).max(floor);
        c *= h_prime;
    }
    Ok(BakerCertificate {
        k: Rat::one(),
        c: ceil_dyadic(&c, CONSTANT_BITS),
        r,
        d,
        generators: gens.to_vec(),
    })
}

/// Positive number mantissa·2^exp2, able to hold values like 2^(−10^15).
#[derive(Clone, PartialEq, Eq)]
pub struct TinyRat {
    pub mantissa: Rat,
    pub exp2: BigInt,
}

impl TinyRat {
    pub fn from_rat(q: Rat) -> Self {
        TinyRat {
            mantissa: q,
            exp2: BigInt::zero(),
        }
    }

    /// Exact rational value when the exponent is moderate.
    pub fn to_rat(&self, max_bits: u64) -> Option<Rat> {
        let e = self.exp2.to_i64()?;
        if e.unsigned_abs() > max_bits {
            return None;
        }
        let p = Rat::from_integer(BigInt::one() << e.unsigned_abs() as usize);
        Some(if e >= 0 { &self.mantissa * p } else { &self.mantissa / p })
    }

    /// floor(log2) bounds of the mantissa: 2^lo ≤ mantissa < 2^(hi).
    fn mantissa_log2(&self) -> (i64, i64) {
        let n = self.mantissa.numer().bits() as i64;
        let d = self.mantissa.denom().bits() as i64;
        // 2^(n−1) ≤ num < 2^n, 2^(d−1) ≤ den < 2^d
        (n - 1 - d, n - d + 1)
    }

    /// Exact comparison against a positive rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        assert!(x.is_positive());
        if let Some(v) = self.to_rat(1 << 16) {
            return v.cmp(x);
        }
        let (mlo, mhi) = self.mantissa_log2();
        let xn = x.numer().bits() as i64;
        let xd = x.denom().bits() as i64;
        let (xlo, xhi) = (xn - 1 - xd, xn - xd + 1);
        let self_hi = &self.exp2 + mhi;
        let self_lo = &self.exp2 + mlo;
        if self_hi <= BigInt::from(xlo) {
            Ordering::Less
        } else if self_lo >= BigInt::from(xhi) {
            Ordering::Greater
        } else {
            self.to_rat(u64::MAX).expect("exponent fits").cmp(x)
        }
    }

    pub fn lt_rat(&self, x: &Rat) -> bool {
        self.cmp_rat(x) == Ordering::Less
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mantissa": rat_literal(&self.mantissa),
            "exp2": self.exp2.to_string(),
        })
    }
}

impl fmt::Debug for TinyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{}", rat_literal(&self.mantissa), self.exp2)
    }
}

/// Largest exponent for which H^C is formed exactly.
const EXACT_POWER_BITS: u64 = 1 << 14;

/// Heights below this are raised to it: the explicit inequality is stated in
/// terms of max(H, e), and H^(−C) alone would claim |ln 2| > 1 at H = 1.
pub const HEIGHT_FLOOR: u32 = 3;

/// A value ≤ k·max(H, 3)^(−C) ≤ k·H^(−C), rounded down.
pub fn lower_bound(cert: &BakerCertificate, h: &BigInt) -> TinyRat {
    assert!(h.is_positive(), "height must be at least 1");
    if cert.c.is_zero() {
        return TinyRat::from_rat(cert.k.clone());
    }
    let h = &h.clone().max(BigInt::from(HEIGHT_FLOOR));
    if cert.c.is_integer() {
        if let Some(c) = cert.c.to_integer().to_u64() {
            if c.saturating_mul(h.bits()) <= EXACT_POWER_BITS {
                let p = num_traits::pow(h.clone(), c as usize);
                return TinyRat::from_rat(&cert.k / Rat::from_integer(p));
            }
        }
    }
    // H^(−C) = 2^(−C·log2 H) ≥ 2^(−E) with E = ⌈upper bound of C·ln H / ln 2⌉
    let bits = 64 + cert.c.numer().bits() as u32;
    let ln_h = ln_rat_interval(&Rat::from_integer(h.clone()), bits).expect("H ≥ 1");
    let log2_h_up = ln_h.hi / ln2_interval(bits).lo;
    let e = ceil_int(&(&cert.c * log2_h_up));
    // k ≥ 2^(floor log2 k)
    let k_floor = if cert.k.is_one() {
        0
    } else {
        cert.k.numer().bits() as i64 - cert.k.denom().bits() as i64 - 1
    };
    TinyRat {
        mantissa: Rat::one(),
        exp2: BigInt::from(k_floor) - e,
    }
}

/// Smallest verified H0 ≥ 1 with scale·e^(−rate·H) < k·H^(−C) for every H ≥ H0.
pub fn solve_height_cap(cert: &BakerCertificate, rate: &RInterval, scale: &RInterval) -> Result<BigInt> {
    solve_height_cap_scaled(cert, &BigInt::one(), rate, scale)
}

/// As [`solve_height_cap`] against k·(K·H)^(−C), for forms whose coefficient
/// height is at most K·H. The answer never drops below the first H with
/// K·H ≥ 3, where the lower bound takes its power form.
pub fn solve_height_cap_scaled(
    cert: &BakerCertificate,
    multiplier: &BigInt,
    rate: &RInterval,
    scale: &RInterval,
) -> Result<BigInt> {
    if !rate.is_positive() || !scale.is_positive() || !multiplier.is_positive() {
        return Err(Error::Invalid("decay rate, scale and multiplier must be positive".into()));
    }
    let bits = 64 + cert.c.numer().bits() as u32;
    let ln_scale_hi = scale.ln(bits)?.hi;
    let ln_k_lo = cert.k.clone();
    let ln_k_lo = ln_rat_interval(&ln_k_lo, bits)?.lo;
    let ln_mult_hi = ln_rat_interval(&Rat::from_integer(multiplier.clone()), bits)?.hi;
    let c = cert.c.clone();
    // certified lower bound of φ(H) = rate·H − C·ln(K·H) − ln scale + ln k
    let phi_lo = |h: &BigInt| -> Result<Rat> {
        let ln_h = ln_rat_interval(&Rat::from_integer(h.clone()), bits)?.hi;
        Ok(&rate.lo * Rat::from_integer(h.clone()) - &c * (ln_h + &ln_mult_hi) - &ln_scale_hi + &ln_k_lo)
    };
    let positive = |h: &BigInt| -> Result<bool> { Ok(phi_lo(h)?.is_positive()) };
    let floor = BigInt::from(HEIGHT_FLOOR).div_ceil(multiplier).max(BigInt::one());
    Ok(first_positive(&c, &rate.lo, bits, positive)?.max(floor))
}

/// Least H ≥ 1 from which a convex φ with minimum at C/rate stays positive.
fn first_positive(
    c: &Rat,
    rate_lo: &Rat,
    bits: u32,
    positive: impl Fn(&BigInt) -> Result<bool>,
) -> Result<BigInt> {
    // on integers φ increases from ⌈C/rate⌉ on
    let turning = ceil_int(&(c / rate_lo)).max(BigInt::one());
    let before = (&turning - 1u32).max(BigInt::one());
    if positive(&before)? && positive(&turning)? {
        return Ok(BigInt::one());
    }
    let mut lo = turning.clone(); // φ(lo) not certified positive
    if positive(&lo)? {
        // only `before` failed, so H0 = turning
        return Ok(lo);
    }
    let mut step = BigInt::one();
    let mut hi = &lo + &step;
    while !positive(&hi)? {
        lo = hi.clone();
        step <<= 1;
        hi = &lo + &step;
        if step.bits() > 4096 {
            return Err(Error::PrecisionFailure { bits });
        }
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if positive(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::interval::rat_to_f64;
    use crate::realalg::{interval::pi_interval, rat, rat_int};

    fn cert(k: Rat, c: Rat) -> BakerCertificate {
        BakerCertificate {
            k,
            c,
            r: 1,
            d: 1,
            generators: Vec::new(),
        }
    }

    #[test]
    fn single_log_of_two() {
        let g = LogGenerator::real(2.into(), 64).unwrap().with_degree_bound(1);
        let c = explicit_constants(&[g]).unwrap();
        // C(1,1)·max(ln2, ln2, 1) = 18·2·1·32³·ln2
        let expect = 18.0 * 2.0 * 32768.0 * std::f64::consts::LN_2;
        let got = rat_to_f64(&c.c);
        assert!(got >= expect && got - expect < 1e-6);
        assert_eq!(c.k, Rat::one());
        assert_eq!((c.r, c.d), (1, 1));
    }

    #[test]
    fn vacuous_certificate_for_alpha_one() {
        let g = LogGenerator::real(1.into(), 64).unwrap();
        let c = explicit_constants(&[g]).unwrap();
        assert!(c.c.is_positive());
        assert!(LogGenerator::real(0.into(), 64).is_err());
    }

    #[test]
    fn constant_grows_with_rank_and_height() {
        let g2 = LogGenerator::real(2.into(), 64).unwrap();
        let g3 = LogGenerator::real(3.into(), 64).unwrap();
        let g5 = LogGenerator::real(5.into(), 64).unwrap();
        let c1 = explicit_constants(std::slice::from_ref(&g2)).unwrap().c;
        let c2 = explicit_constants(&[g2.clone(), g3.clone()]).unwrap().c;
        let c3 = explicit_constants(&[g2.clone(), g3.clone(), g5]).unwrap().c;
        assert!(c1 < c2 && c2 < c3);
        let big = LogGenerator::real(1000.into(), 64).unwrap();
        assert!(explicit_constants(&[g2, big]).unwrap().c > c2);
    }

    #[test]
    fn lower_bound_examples() {
        let c = cert(Rat::one(), rat_int(3));
        // heights below 3 are raised to 3
        assert_eq!(lower_bound(&c, &BigInt::one()).to_rat(64), Some(rat(1, 27)));
        assert_eq!(lower_bound(&c, &BigInt::from(2)).to_rat(64), Some(rat(1, 27)));
        assert_eq!(lower_bound(&c, &BigInt::from(10)).to_rat(64), Some(rat(1, 1000)));
        let huge = cert(Rat::one(), rat_int(1) * rat(10_000_000_000_000, 3));
        let lb = lower_bound(&huge, &BigInt::from(50));
        assert!(lb.exp2 < BigInt::from(-10_000_000_000_000i64));
        assert!(lb.lt_rat(&rat(1, 1_000_000)));
    }

    #[test]
    fn lower_bound_is_nonincreasing() {
        let c = cert(Rat::one(), rat(7, 2));
        let mut prev: Option<Rat> = None;
        for h in 1..40 {
            let v = lower_bound(&c, &BigInt::from(h));
            // non-integer C goes through the power-of-two branch
            let exact = v.to_rat(4096).unwrap();
            let true_val = (h.max(3) as f64).powf(-3.5);
            assert!(rat_to_f64(&exact) <= true_val * (1.0 + 1e-12));
            if let Some(p) = &prev {
                assert!(&exact <= p);
            }
            prev = Some(exact);
        }
    }

    #[test]
    fn height_cap_examples() {
        let one = RInterval::point(Rat::one());
        // H − ln H > 0 already at H = 1, but the power form starts at H = 3
        assert_eq!(solve_height_cap(&cert(Rat::one(), Rat::one()), &one, &one).unwrap(), BigInt::from(3));
        let two = RInterval::point(rat_int(2));
        assert_eq!(solve_height_cap(&cert(Rat::one(), Rat::zero()), &one, &two).unwrap(), BigInt::from(3));
        let fast = RInterval::point(rat_int(50));
        assert_eq!(solve_height_cap(&cert(Rat::one(), rat_int(3)), &fast, &two).unwrap(), BigInt::from(3));
        // with K = 3 every H ≥ 1 has K·H ≥ 3
        let k3 = solve_height_cap_scaled(&cert(Rat::one(), rat_int(3)), &BigInt::from(3), &fast, &two).unwrap();
        assert_eq!(k3, BigInt::one());
    }

    fn holds(c: &BakerCertificate, k_mult: f64, rate: f64, scale: f64, h: f64) -> bool {
        (scale.ln() - rate * h) < -(c.c.to_integer().to_f64().unwrap()) * (k_mult * h).ln()
    }

    #[test]
    fn height_cap_is_tight() {
        let c = cert(Rat::one(), rat_int(40));
        let rate = RInterval::point(rat(1, 3));
        let scale = RInterval::point(rat_int(5));
        let h0 = solve_height_cap(&c, &rate, &scale).unwrap().to_f64().unwrap();
        assert!(holds(&c, 1.0, 1.0 / 3.0, 5.0, h0));
        assert!(!holds(&c, 1.0, 1.0 / 3.0, 5.0, h0 - 1.0));
        for extra in [1.0, 7.0, 100.0, 1e6] {
            assert!(holds(&c, 1.0, 1.0 / 3.0, 5.0, h0 + extra));
        }
        let scaled = solve_height_cap_scaled(&c, &BigInt::from(3), &rate, &scale).unwrap().to_f64().unwrap();
        assert!(scaled > h0);
        assert!(holds(&c, 3.0, 1.0 / 3.0, 5.0, scaled));
        assert!(!holds(&c, 3.0, 1.0 / 3.0, 5.0, scaled - 1.0));
    }

    #[test]
    fn principal_branch_of_minus_one() {
        let g = LogGenerator::principal(AlgebraicComplex::from_real((-1).into()), 64).unwrap();
        assert!(g.lambda_im.intersects(&pi_interval(64)));
        assert!(g.lambda_re.contains(&Rat::zero()));
    }
}
