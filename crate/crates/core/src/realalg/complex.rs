use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::irreducible_factors;
use super::poly::{interpolate, resultant};
use super::roots::{certified_roots, CRat};
use super::{exact_shift_neg, AlgebraicReal, IntPoly, Rat};
use crate::error::{Error, Result};

/// Complex algebraic number as a pair of real algebraic coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicComplex {
    pub re: AlgebraicReal,
    pub im: AlgebraicReal,
}

impl AlgebraicComplex {
    pub fn new(re: AlgebraicReal, im: AlgebraicReal) -> Self {
        AlgebraicComplex { re, im }
    }

    pub fn from_real(re: AlgebraicReal) -> Self {
        AlgebraicComplex {
            re,
            im: AlgebraicReal::zero(),
        }
    }

    pub fn i() -> Self {
        Self::new(AlgebraicReal::zero(), AlgebraicReal::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Self::new(re, im)
    }

    pub fn scale(&self, k: &AlgebraicReal) -> Self {
        Self::new(self.re.mul(k), self.im.mul(k))
    }

    /// |z|² = re² + im².
    pub fn norm_sq(&self) -> AlgebraicReal {
        self.re.square().add(&self.im.square())
    }

    pub fn abs(&self) -> AlgebraicReal {
        self.norm_sq().sqrt().expect("sum of squares is nonnegative")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(Self::new(self.re.div(&n)?, self.im.neg().div(&n)?))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::from_real(AlgebraicReal::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// z / |z| for z ≠ 0.
    pub fn unit(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let a = self.abs();
        Ok(Self::new(self.re.div(&a)?, self.im.div(&a)?))
    }

    /// Minimal polynomial over ℚ.
    pub fn minpoly(&self) -> IntPoly {
        if self.im.is_zero() {
            return self.re.minpoly();
        }
        let px = self.re.minpoly();
        let q2 = imaginary_square_poly(&self.im.minpoly());
        let deg = px.degree() * q2.degree();
        let xs: Vec<BigInt> = (0..=deg as i64).map(BigInt::from).collect();
        let pr = px.to_rat();
        let ys: Vec<Rat> = xs
            .iter()
            .map(|z| resultant(&pr, &exact_shift_neg(&q2, z).to_rat()))
            .collect();
        let cand = interpolate(&xs, &ys).to_primitive_int();
        let factors = irreducible_factors(&cand);
        if factors.len() == 1 {
            return factors.into_iter().next().unwrap();
        }
        self.select_factor(factors)
    }

    /// Picks the factor with a certified root disc meeting a small box around self.
    fn select_factor(&self, factors: Vec<IntPoly>) -> IntPoly {
        let mut bits = 16u32;
        loop {
            let eps = Rat::new(BigInt::one(), BigInt::one() << bits as usize);
            let bx = self.re.refine(&eps);
            let by = self.im.refine(&eps);
            let center = CRat::new(bx.mid(), by.mid());
            // half-diagonal of the box, squared, bounded by eps²/2 ≤ eps²
            let rho = eps.clone();
            let mut hits = Vec::new();
            for (idx, f) in factors.iter().enumerate() {
                let discs = certified_roots(f, bits).expect("irreducible factor certifies");
                if discs.iter().any(|d| d.may_meet(&center, &rho)) {
                    hits.push(idx);
                }
            }
            if hits.len() == 1 {
                return factors[hits[0]].clone();
            }
            bits *= 2;
        }
    }
}

/// q(iW)·q(−iW), the integer polynomial whose roots are ±i·(roots of q).
fn imaginary_square_poly(q: &IntPoly) -> IntPoly {
    let mut a = vec![BigInt::zero(); q.degree() + 1];
    let mut b = vec![BigInt::zero(); q.degree() + 1];
    for (k, c) in q.coeffs().iter().enumerate() {
        // i^k = ±1 or ±i
        let v = if (k / 2) % 2 == 0 { c.clone() } else { -c };
        if k % 2 == 0 {
            a[k] = v;
        } else {
            b[k] = v;
        }
    }
    let (a, b) = (IntPoly::new(a), IntPoly::new(b));
    a.mul(&a).add(&b.mul(&b))
}

impl Hash for AlgebraicComplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.hash(state);
        self.im.hash(state);
    }
}

impl fmt::Debug for AlgebraicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})i", self.re, self.im)
    }
}

impl From<AlgebraicReal> for AlgebraicComplex {
    fn from(re: AlgebraicReal) -> Self {
        Self::from_real(re)
    }
}
