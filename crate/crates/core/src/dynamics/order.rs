//! Imaginary quadratic orders ℤ[ω] with ω² = t·ω − n and discriminant t² − 4n < 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadOrderElem {
    pub x: BigInt,
    pub y: BigInt,
    pub disc: i64,
}

/// (t, n) with ω² = t·ω − n for a discriminant D ≡ 0, 1 mod 4.
pub fn order_params(disc: i64) -> Result<(i64, i64)> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::Invalid(format!(
            "discriminant {disc} is not a negative quadratic discriminant"
        )));
    }
    let t = disc.rem_euclid(2);
    Ok((t, (t * t - disc) / 4))
}

impl QuadOrderElem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, disc: i64) -> Result<Self> {
        order_params(disc)?;
        Ok(QuadOrderElem {
            x: x.into(),
            y: y.into(),
            disc,
        })
    }

    pub fn from_int(x: impl Into<BigInt>, disc: i64) -> Result<Self> {
        Self::new(x, 0, disc)
    }

    fn params(&self) -> (BigInt, BigInt) {
        let (t, n) = order_params(self.disc).expect("checked on construction");
        (t.into(), n.into())
    }

    fn same_order(&self, o: &Self) {
        assert_eq!(self.disc, o.disc, "elements of different orders");
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_order(o);
        QuadOrderElem {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            disc: self.disc,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_order(o);
        QuadOrderElem {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            disc: self.disc,
        }
    }

    pub fn sub_int(&self, k: i64) -> Self {
        QuadOrderElem {
            x: &self.x - k,
            y: self.y.clone(),
            disc: self.disc,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadOrderElem {
            x: &self.x * k,
            y: &self.y * k,
            disc: self.disc,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_order(o);
        let (t, n) = self.params();
        // (x₁ + y₁ω)(x₂ + y₂ω) with ω² = tω − n
        let yy = &self.y * &o.y;
        QuadOrderElem {
            x: &self.x * &o.x - &n * &yy,
            y: &self.x * &o.y + &self.y * &o.x + &t * &yy,
            disc: self.disc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1, self.disc).expect("valid order");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Conjugate x + y·ω̄ = (x + t·y) − y·ω; corresponds to the dual isogeny.
    pub fn conj(&self) -> Self {
        let (t, _) = self.params();
        QuadOrderElem {
            x: &self.x + &t * &self.y,
            y: -&self.y,
            disc: self.disc,
        }
    }

    /// x² + t·x·y + n·y², the degree of the corresponding isogeny.
    pub fn norm(&self) -> BigInt {
        let (t, n) = self.params();
        &self.x * &self.x + &t * &self.x * &self.y + &n * &self.y * &self.y
    }

    pub fn trace(&self) -> BigInt {
        let (t, _) = self.params();
        BigInt::from(2) * &self.x + t * &self.y
    }

    /// Exact quotient self / o when it lies in the order.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj());
        let (qx, rx) = num.x.div_rem(&n);
        let (qy, ry) = num.y.div_rem(&n);
        (rx.is_zero() && ry.is_zero()).then_some(QuadOrderElem {
            x: qx,
            y: qy,
            disc: self.disc,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "disc": self.disc,
        })
    }
}

impl fmt::Debug for QuadOrderElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}ω [D={}]", self.x, sign, self.y.abs(), self.disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gi(x: i64, y: i64) -> QuadOrderElem {
        QuadOrderElem::new(x, y, -4).unwrap()
    }

    #[test]
    fn gaussian_integers() {
        assert_eq!(gi(0, 1).mul(&gi(0, 1)), gi(-1, 0));
        assert_eq!(gi(1, 1).norm(), BigInt::from(2));
        assert_eq!(gi(1, 1).conj(), gi(1, -1));
        assert_eq!(gi(1, 1).pow(4), gi(-4, 0));
        assert_eq!(gi(3, 4).div_exact(&gi(2, 1)), Some(gi(2, 1)));
        assert_eq!(gi(1, 0).div_exact(&gi(1, 1)), None);
    }

    #[test]
    fn eisenstein_order() {
        // ω = (1 + √−3)/2, a primitive sixth root of unity
        let w = QuadOrderElem::new(0, 1, -3).unwrap();
        assert_eq!(w.norm(), BigInt::one());
        assert_eq!(w.pow(6), QuadOrderElem::from_int(1, -3).unwrap());
        assert_eq!(w.pow(3), QuadOrderElem::from_int(-1, -3).unwrap());
        assert_eq!(w.trace(), BigInt::one());
    }

    #[test]
    fn bad_discriminants() {
        assert!(QuadOrderElem::new(1, 1, 5).is_err());
        assert!(QuadOrderElem::new(1, 1, -2).is_err());
    }

    fn elem() -> impl Strategy<Value = QuadOrderElem> {
        (-50i64..50, -50i64..50, prop::sample::select(vec![-3i64, -4, -7, -8, -15, -20]))
            .prop_map(|(x, y, d)| QuadOrderElem::new(x, y, d).unwrap())
    }

    proptest! {
        #[test]
        fn norm_is_z_times_conj(z in elem()) {
            let p = z.mul(&z.conj());
            prop_assert!(p.y.is_zero());
            prop_assert_eq!(p.x, z.norm());
        }

        #[test]
        fn norm_is_multiplicative(a in elem(), b in -50i64..50, c in -50i64..50) {
            let b = QuadOrderElem::new(b, c, a.disc).unwrap();
            prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }
    }
}
