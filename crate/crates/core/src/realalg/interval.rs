//! Rational intervals with outward rounding, and certified fixed-point
//! evaluation of `ln`, `atan` and `π`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Rat;
use crate::error::{Error, Result};

/// Hard ceiling for precision escalation.
pub const MAX_PRECISION_BITS: u32 = 1 << 16;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl fmt::Debug for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }
}

impl Serialize for RInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [super::rat_literal(&self.lo), super::rat_literal(&self.hi)].serialize(s)
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    // Scale so both parts fit comfortably in f64 before dividing.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb - db) - 60;
    let scaled = if shift > 0 {
        Rat::new(q.numer().clone(), q.denom() << shift as usize)
    } else {
        Rat::new(q.numer() << (-shift) as usize, q.denom().clone())
    };
    let v = scaled.to_integer().to_f64().unwrap_or(f64::NAN);
    v * 2f64.powi(shift as i32)
}

impl RInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Rat::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn add(&self, o: &Self) -> Self {
        RInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RInterval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().expect("four corners").clone();
        let hi = c.iter().max().expect("four corners").clone();
        RInterval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_negative() {
            RInterval::new(&self.hi * k, &self.lo * k)
        } else {
            RInterval::new(&self.lo * k, &self.hi * k)
        }
    }

    /// Quotient; `None` when the divisor straddles zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if !o.excludes_zero() {
            return None;
        }
        let inv = RInterval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn abs_upper(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Self) -> Self {
        RInterval::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
        )
    }

    pub fn max(&self, o: &Self) -> Self {
        RInterval::new(
            self.lo.clone().max(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
        )
    }

    pub fn min(&self, o: &Self) -> Self {
        RInterval::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().min(o.hi.clone()),
        )
    }

    /// Natural log of a positive interval at the given working precision.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::NonPositiveOperand);
        }
        let lo = ln_rat(&self.lo, prec).lower();
        let hi = ln_rat(&self.hi, prec).upper();
        Ok(RInterval::new(lo, hi))
    }

    /// Arctangent of an interval (monotone).
    pub fn atan(&self, prec: u32) -> Self {
        RInterval::new(atan_rat(&self.lo, prec).lower(), atan_rat(&self.hi, prec).upper())
    }

    /// Outward rounding of both endpoints to multiples of 2^-bits.
    pub fn round_out(&self, bits: u32) -> Self {
        RInterval::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }
}

pub fn floor_dyadic(q: &Rat, bits: u32) -> Rat {
    let scaled = (q.numer() << bits as usize).div_floor(q.denom());
    Rat::new(scaled, BigInt::one() << bits as usize)
}

pub fn ceil_dyadic(q: &Rat, bits: u32) -> Rat {
    let scaled = -((-(q.numer() << bits as usize)).div_floor(q.denom()));
    Rat::new(scaled, BigInt::one() << bits as usize)
}

/// Smallest integer ≥ q.
pub fn ceil_int(q: &Rat) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Largest integer ≤ q.
pub fn floor_int(q: &Rat) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Rational lower and upper bounds for √q (q ≥ 0) within 2^-bits relative to q's denominator.
pub fn sqrt_bounds(q: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!q.is_negative());
    let (a, b) = (q.numer(), q.denom());
    // √(a/b) = √(a·b)/b
    let scaled = (a * b) << (2 * bits as usize);
    let s = scaled.sqrt();
    let den = b << bits as usize;
    let lo = Rat::new(s.clone(), den.clone());
    let hi = if &s * &s == scaled {
        lo.clone()
    } else {
        Rat::new(s + 1, den)
    };
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Fixed-point kernels. A `Fixed` value stands for the interval
// [(mid - err)·2^-prec, (mid + err)·2^-prec].

#[derive(Clone, Debug)]
pub(crate) struct Fixed {
    pub mid: BigInt,
    pub err: BigInt,
    pub prec: u32,
}

impl Fixed {
    fn scale_of(prec: u32) -> BigInt {
        BigInt::one() << prec as usize
    }

    pub fn from_rat(q: &Rat, prec: u32) -> Fixed {
        let num = q.numer() << prec as usize;
        let (mid, rem) = num.div_mod_floor(q.denom());
        Fixed {
            mid,
            err: if rem.is_zero() {
                BigInt::zero()
            } else {
                BigInt::one()
            },
            prec,
        }
    }

    pub fn lower(&self) -> Rat {
        Rat::new(&self.mid - &self.err, Self::scale_of(self.prec))
    }

    pub fn upper(&self) -> Rat {
        Rat::new(&self.mid + &self.err, Self::scale_of(self.prec))
    }

    pub fn interval(&self) -> RInterval {
        RInterval::new(self.lower(), self.upper())
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        assert_eq!(self.prec, o.prec);
        Fixed {
            mid: &self.mid + &o.mid,
            err: &self.err + &o.err,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Fixed {
        Fixed {
            mid: -&self.mid,
            err: self.err.clone(),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed {
            mid: &self.mid * k,
            err: &self.err * k.abs(),
            prec: self.prec,
        }
    }

    /// Drops to a coarser precision, widening the error to stay sound.
    pub fn with_prec(&self, prec: u32) -> Fixed {
        if prec >= self.prec {
            let sh = (prec - self.prec) as usize;
            return Fixed {
                mid: &self.mid << sh,
                err: &self.err << sh,
                prec,
            };
        }
        let sh = (self.prec - prec) as usize;
        Fixed {
            mid: self.mid.clone() >> sh,
            err: (self.err.clone() >> sh) + 2,
            prec,
        }
    }
}

/// Σ s_j t^{2j+1}/(2j+1) with s_j = 1 (atanh) or (-1)^j (atan); |t| ≤ 1/2.
fn odd_power_series(t: &Rat, prec: u32, alternating: bool) -> Fixed {
    debug_assert!(t.abs() <= Rat::new(BigInt::one(), BigInt::from(2)));
    let guard = 16 + 64 - (prec as u64).leading_zeros();
    let w = prec + guard;
    let scale = BigInt::one() << w as usize;
    let tt = Fixed::from_rat(t, w).mid;
    let t2 = (&tt * &tt).div_floor(&scale);
    let mut power = tt;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = power.div_floor(&BigInt::from(2 * j + 1));
        if alternating && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power = (&power * &t2).div_floor(&scale);
        j += 1;
        if power.is_zero() || (power.abs() == BigInt::one() && j > 2) {
            break;
        }
    }
    // per-term error ≤ 5 ulps; tail ≤ 2|P| + 6 ulps
    let err = BigInt::from(5 * j + 8) + power.abs() * 2;
    Fixed {
        mid: sum,
        err,
        prec: w,
    }
    .with_prec(prec)
}

pub(crate) fn ln2(prec: u32) -> Fixed {
    let third = Rat::new(BigInt::one(), BigInt::from(3));
    let s = odd_power_series(&third, prec + 2, false);
    s.mul_int(&BigInt::from(2)).with_prec(prec)
}

pub(crate) fn pi(prec: u32) -> Fixed {
    let p = prec + 6;
    let a = odd_power_series(&Rat::new(BigInt::one(), BigInt::from(5)), p, true);
    let b = odd_power_series(&Rat::new(BigInt::one(), BigInt::from(239)), p, true);
    a.mul_int(&BigInt::from(16))
        .add(&b.mul_int(&BigInt::from(-4)))
        .with_prec(prec)
}

/// π / 2^halvings at precision `prec`.
fn pi_scaled(prec: u32, halvings: u32) -> Fixed {
    let p = pi(prec);
    Fixed {
        mid: p.mid,
        err: p.err,
        prec: p.prec + halvings,
    }
    .with_prec(prec)
}

/// ln(x) for rational x > 0.
pub(crate) fn ln_rat(x: &Rat, prec: u32) -> Fixed {
    assert!(x.is_positive(), "ln of non-positive rational");
    if x.is_one() {
        return Fixed {
            mid: BigInt::zero(),
            err: BigInt::zero(),
            prec,
        };
    }
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let pow2 = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from_integer(BigInt::one() << e as usize)
        } else {
            Rat::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let mut y = x / pow2(k);
    let three_half = Rat::new(BigInt::from(3), BigInt::from(2));
    let three_quarter = Rat::new(BigInt::from(3), BigInt::from(4));
    while y >= three_half {
        y /= Rat::from_integer(BigInt::from(2));
        k += 1;
    }
    while y < three_quarter {
        y *= Rat::from_integer(BigInt::from(2));
        k -= 1;
    }
    let t = (&y - Rat::one()) / (&y + Rat::one());
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let p = prec + kbits + 4;
    let series = odd_power_series(&t, p, false).mul_int(&BigInt::from(2));
    let total = if k == 0 {
        series
    } else {
        series.add(&ln2(p).mul_int(&BigInt::from(k)))
    };
    total.with_prec(prec)
}

/// atan(t) for any rational t.
pub(crate) fn atan_rat(t: &Rat, prec: u32) -> Fixed {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    if t.is_negative() {
        return atan_rat(&-t, prec).neg();
    }
    if t.is_zero() {
        return Fixed {
            mid: BigInt::zero(),
            err: BigInt::zero(),
            prec,
        };
    }
    let p = prec + 4;
    if t > &Rat::one() {
        // π/2 − atan(1/t)
        let rest = atan_rat(&t.recip(), p);
        return pi_scaled(p, 1).add(&rest.neg()).with_prec(prec);
    }
    if t > &half {
        // π/4 + atan((t−1)/(t+1))
        let u = (t - Rat::one()) / (t + Rat::one());
        return pi_scaled(p, 2).add(&atan_rat(&u, p)).with_prec(prec);
    }
    odd_power_series(t, prec, true)
}

/// Runs `attempt` at doubling precisions until it yields a result.
pub(crate) fn escalate<T>(
    start: u32,
    mut attempt: impl FnMut(u32) -> Result<Option<T>>,
) -> Result<T> {
    let mut prec = start.max(32);
    loop {
        if let Some(v) = attempt(prec)? {
            return Ok(v);
        }
        if prec >= MAX_PRECISION_BITS {
            return Err(Error::PrecisionFailure { bits: prec });
        }
        prec = (prec * 2).min(MAX_PRECISION_BITS);
    }
}

/// Certified interval for π of width ≤ 2^-bits.
pub fn pi_interval(bits: u32) -> RInterval {
    pi(bits + 8).interval()
}

/// Certified interval for ln 2 of width ≤ 2^-bits.
pub fn ln2_interval(bits: u32) -> RInterval {
    ln2(bits + 8).interval()
}

/// Certified interval for ln(x), x a positive rational.
pub fn ln_rat_interval(x: &Rat, bits: u32) -> Result<RInterval> {
    if !x.is_positive() {
        return Err(Error::NonPositiveOperand);
    }
    Ok(ln_rat(x, bits + 8).interval())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_and_ln2_agree_with_f64() {
        let p = pi_interval(60);
        assert!(rat_to_f64(&p.lo) <= std::f64::consts::PI + 1e-15);
        assert!(rat_to_f64(&p.hi) >= std::f64::consts::PI - 1e-15);
        assert!(p.width() < r(1, 1 << 50));
        let l = ln2_interval(60);
        assert!((rat_to_f64(&l.mid()) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn ln_is_additive() {
        let a = ln_rat_interval(&r(6, 1), 100).unwrap();
        let b = ln_rat_interval(&r(2, 1), 100).unwrap().add(&ln_rat_interval(&r(3, 1), 100).unwrap());
        assert!(a.intersects(&b));
        let tiny = ln_rat_interval(&r(1, 1000), 80).unwrap();
        assert!((rat_to_f64(&tiny.mid()) - (0.001f64).ln()).abs() < 1e-13);
    }

    #[test]
    fn atan_known_values() {
        let one = atan_rat(&r(1, 1), 80).interval();
        let quarter_pi = pi_interval(90).scale(&r(1, 4));
        assert!(one.intersects(&quarter_pi));
        let big = atan_rat(&r(1000, 1), 80).interval();
        assert!((rat_to_f64(&big.mid()) - 1000f64.atan()).abs() < 1e-14);
        let neg = atan_rat(&r(-3, 4), 80).interval();
        assert!((rat_to_f64(&neg.mid()) - (-0.75f64).atan()).abs() < 1e-14);
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let (lo, hi) = sqrt_bounds(&r(2, 1), 40);
        assert!(&lo * &lo <= r(2, 1) && r(2, 1) <= &hi * &hi);
        let (lo, hi) = sqrt_bounds(&r(9, 4), 10);
        assert_eq!(lo, r(3, 2));
        assert_eq!(hi, r(3, 2));
    }
}
