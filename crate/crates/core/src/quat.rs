//! Hamilton quaternions over exact real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::realalg::{AlgebraicReal, Rat};

/// `a + b·i + c·j + d·k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: AlgebraicReal,
    pub b: AlgebraicReal,
    pub c: AlgebraicReal,
    pub d: AlgebraicReal,
}

impl Quaternion {
    pub fn new(a: AlgebraicReal, b: AlgebraicReal, c: AlgebraicReal, d: AlgebraicReal) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn from_rats(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn real(a: AlgebraicReal) -> Self {
        let z = AlgebraicReal::zero();
        Self::new(a, z.clone(), z.clone(), z)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn coords(&self) -> [&AlgebraicReal; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|x| x.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Whether all four coordinates are rational.
    pub fn is_rational(&self) -> bool {
        self.coords().iter().all(|x| x.is_rational())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c), self.d.sub(&o.d))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    pub fn scale(&self, k: &AlgebraicReal) -> Self {
        Self::new(self.a.mul(k), self.b.mul(k), self.c.mul(k), self.d.mul(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        let a = a1.mul(a2).sub(&b1.mul(b2)).sub(&c1.mul(c2)).sub(&d1.mul(d2));
        let b = a1.mul(b2).add(&b1.mul(a2)).add(&c1.mul(d2)).sub(&d1.mul(c2));
        let c = a1.mul(c2).sub(&b1.mul(d2)).add(&c1.mul(a2)).add(&d1.mul(b2));
        let d = a1.mul(d2).add(&b1.mul(c2)).sub(&c1.mul(b2)).add(&d1.mul(a2));
        Self::new(a, b, c, d)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    /// N(q) = a² + b² + c² + d².
    pub fn norm(&self) -> AlgebraicReal {
        self.dot(self)
    }

    /// tr(q) = 2a.
    pub fn trace(&self) -> AlgebraicReal {
        self.a.add(&self.a)
    }

    /// |q| = √N(q).
    pub fn abs(&self) -> AlgebraicReal {
        self.norm().sqrt().expect("norm is nonnegative")
    }

    /// Euclidean inner product of coordinate vectors.
    pub fn dot(&self, o: &Self) -> AlgebraicReal {
        self.a
            .mul(&o.a)
            .add(&self.b.mul(&o.b))
            .add(&self.c.mul(&o.c))
            .add(&self.d.mul(&o.d))
    }

    /// Pure part b·i + c·j + d·k.
    pub fn vector(&self) -> Self {
        Self::new(AlgebraicReal::zero(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        // xy − yx = 2·(vec x × vec y), so commuting is parallelism of the pure parts.
        let (b1, c1, d1) = (&self.b, &self.c, &self.d);
        let (b2, c2, d2) = (&o.b, &o.c, &o.d);
        c1.mul(d2) == d1.mul(c2) && d1.mul(b2) == b1.mul(d2) && b1.mul(c2) == c1.mul(b2)
    }

    /// Lexicographic exact order on (a, b, c, d).
    pub fn cmp_coords(&self, o: &Self) -> Ordering {
        for (x, y) in self.coords().iter().zip(o.coords().iter()) {
            match x.cmp_exact(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn to_literal(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords().iter().map(|x| x.to_literal()).collect())
    }
}

/// Whether q² − tr(q)·q + N(q) = 0 holds exactly.
pub fn quadratic_relation_check(q: &Quaternion) -> bool {
    let lhs = q
        .mul(q)
        .sub(&q.scale(&q.trace()))
        .add(&Quaternion::real(q.norm()));
    lhs.is_zero()
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::rat;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    #[test]
    fn basis_products() {
        assert_eq!(Quaternion::i().mul(&Quaternion::j()), Quaternion::k());
        assert_eq!(Quaternion::j().mul(&Quaternion::i()), Quaternion::k().neg());
        assert_eq!(Quaternion::j().mul(&Quaternion::k()), Quaternion::i());
        assert_eq!(Quaternion::k().mul(&Quaternion::i()), Quaternion::j());
        assert_eq!(Quaternion::i().mul(&Quaternion::i()), q(-1, 0, 0, 0));
        assert_eq!(q(1, 1, 0, 0).mul(&q(1, 0, 1, 0)), q(1, 1, 1, 1));
    }

    #[test]
    fn norm_trace_conj() {
        assert_eq!(q(1, 1, 1, 1).norm(), AlgebraicReal::from_int(4));
        assert_eq!(q(3, 5, 0, 0).trace(), AlgebraicReal::from_int(6));
        assert_eq!(Quaternion::i().conj().mul(&Quaternion::i()), Quaternion::one());
        assert_eq!(q(1, 1, 1, 1).abs(), AlgebraicReal::from_int(2));
        assert_eq!(q(1, 1, 0, 0).abs(), AlgebraicReal::sqrt_int(2));
    }

    #[test]
    fn inverses() {
        assert_eq!(q(2, 0, 0, 0).inv().unwrap(), Quaternion::from_rats(rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)));
        assert_eq!(Quaternion::i().inv().unwrap(), Quaternion::i().neg());
        let x = q(1, 1, 1, 1);
        let inv = x.inv().unwrap();
        assert_eq!(inv, Quaternion::from_rats(rat(1, 4), rat(-1, 4), rat(-1, 4), rat(-1, 4)));
        assert_eq!(x.mul(&inv), Quaternion::one());
        assert_eq!(inv.mul(&x), Quaternion::one());
        assert_eq!(Quaternion::zero().inv().unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn quadratic_relation_examples() {
        assert!(quadratic_relation_check(&Quaternion::i()));
        assert!(quadratic_relation_check(&q(7, 0, 0, 0)));
        assert!(quadratic_relation_check(&q(1, 2, 3, 4)));
        let s2 = AlgebraicReal::sqrt_int(2);
        let x = Quaternion::new(s2.clone(), AlgebraicReal::sqrt_int(3), 1.into(), s2);
        assert!(quadratic_relation_check(&x));
    }

    #[test]
    fn commuting_detection() {
        assert!(q(1, 1, 0, 0).commutes_with(&q(3, -2, 0, 0)));
        assert!(!q(1, 1, 0, 0).commutes_with(&q(1, 0, 1, 0)));
        assert!(q(2, 0, 0, 0).commutes_with(&q(1, 2, 3, 4)));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-100i64..=100, 1i64..=100).prop_map(|(n, d)| rat(n, d))
    }

    fn rat_quat() -> impl Strategy<Value = Quaternion> {
        (small_rat(), small_rat(), small_rat(), small_rat())
            .prop_map(|(a, b, c, d)| Quaternion::from_rats(a, b, c, d))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in rat_quat(), y in rat_quat()) {
            prop_assert_eq!(x.mul(&y).norm(), x.norm().mul(&y.norm()));
        }

        #[test]
        fn conjugation_reverses_products(x in rat_quat(), y in rat_quat()) {
            prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
        }

        #[test]
        fn multiplication_is_associative(x in rat_quat(), y in rat_quat(), z in rat_quat()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }

        #[test]
        fn quadratic_relation_always_holds(x in rat_quat()) {
            prop_assert!(quadratic_relation_check(&x));
        }

        #[test]
        fn modulus_is_multiplicative(x in rat_quat(), y in rat_quat()) {
            prop_assert_eq!(x.mul(&y).abs(), x.abs().mul(&y.abs()));
        }
    }
}
