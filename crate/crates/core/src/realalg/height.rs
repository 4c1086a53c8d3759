//! Absolute logarithmic (Weil) height in the Mahler-measure normalisation:
//! h(α) = (1/d)(ln|a_d| + Σ ln max(1, |α_i|)) over the conjugates of α.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::interval::{escalate, ln_rat_interval};
use super::roots::{certified_roots, leading_abs};
use super::{AlgebraicComplex, IntPoly, RInterval, Rat};
use crate::error::{Error, Result};

/// Certified interval for h(α) of width ≤ 2^-bits.
pub fn weil_height(alpha: &AlgebraicComplex, bits: u32) -> Result<RInterval> {
    if alpha.is_zero() {
        return Err(Error::ZeroOperand);
    }
    if alpha.is_real() {
        if let Some(q) = alpha.re.as_rat() {
            let m = q.numer().abs().max(q.denom().clone());
            return ln_rat_interval(&Rat::from_integer(m), bits);
        }
    }
    poly_height(&alpha.minpoly(), bits)
}

/// ln M(f) / deg f for an irreducible f.
pub fn poly_height(f: &IntPoly, bits: u32) -> Result<RInterval> {
    let d = f.degree();
    let target = Rat::new(BigInt::one(), BigInt::one() << bits as usize);
    let one = Rat::one();
    escalate(bits + 8, |prec| {
        let discs = certified_roots(f, prec)?;
        let mut sum = ln_rat_interval(&Rat::from_integer(leading_abs(f)), prec)?;
        for disc in &discs {
            let (lo, hi) = disc.modulus_bounds(prec + 4);
            let lo = if lo < one { one.clone() } else { lo };
            let hi = if hi < one { one.clone() } else { hi };
            sum = sum.add(&RInterval::new(lo, hi).ln(prec + 4)?);
        }
        let h = sum.scale(&Rat::new(BigInt::one(), BigInt::from(d)));
        let h = RInterval::new(if h.lo.is_negative() { Rat::from_integer(0.into()) } else { h.lo }, h.hi);
        Ok((h.width() <= target).then_some(h))
    })
}
