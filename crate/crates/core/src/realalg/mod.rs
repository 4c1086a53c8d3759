//! Exact real and complex algebraic numbers.
//!
//! A real algebraic number is either a rational or the unique root of an
//! irreducible integer polynomial (degree ≥ 2) inside an isolating interval
//! with rational endpoints. Sums and products go through resultants, then
//! the factor carrying the true value is selected by interval refinement.

mod complex;
pub mod factor;
mod height;
pub mod interval;
pub mod poly;
pub mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use complex::AlgebraicComplex;
pub use height::{poly_height, weil_height};
pub use interval::RInterval;
pub use poly::IntPoly;

use crate::error::{Error, Result};
use factor::irreducible_factors;
use interval::{escalate, sqrt_bounds};
use poly::{interpolate, resultant, Sturm};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form of a rational: `p` or `p/q`.
pub fn rat_literal(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone)]
enum Repr {
    Rational(Rat),
    Root { poly: IntPoly, lo: Rat, hi: Rat },
}

/// Exact real algebraic number.
#[derive(Clone)]
pub struct AlgebraicReal {
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl AlgebraicReal {
    pub fn from_rat(q: Rat) -> Self {
        AlgebraicReal {
            repr: Repr::Rational(q),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The unique root of `poly` in `[lo, hi]`; fails unless the closed
    /// interval contains exactly one distinct real root.
    pub fn from_poly_interval(poly: &IntPoly, lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid("isolating interval has lo > hi".into()));
        }
        if poly.degree() == 0 {
            return Err(Error::Invalid("polynomial must have positive degree".into()));
        }
        let sf = poly.squarefree_part();
        if Sturm::new(&sf).count_closed(&lo, &hi) != 1 {
            return Err(Error::Invalid(
                "interval does not isolate exactly one real root".into(),
            ));
        }
        let factors = irreducible_factors(&sf);
        for f in factors {
            if Sturm::new(&f).count_closed(&lo, &hi) == 1 {
                return Ok(Self::from_irreducible(f, lo, hi));
            }
        }
        unreachable!("the isolated root belongs to exactly one factor")
    }

    /// `f` irreducible with exactly one root in `[lo, hi]`.
    fn from_irreducible(f: IntPoly, lo: Rat, hi: Rat) -> Self {
        if f.degree() == 1 {
            let r = Rat::new(-f.coeff(0), f.coeff(1));
            return Self::from_rat(r);
        }
        if lo == hi {
            unreachable!("irrational root cannot sit on a rational point");
        }
        AlgebraicReal {
            repr: Repr::Root { poly: f, lo, hi },
        }
    }

    /// √n for a nonnegative integer, convenience for tests and literals.
    pub fn sqrt_int(n: i64) -> Self {
        Self::from_int(n).sqrt().expect("nonnegative")
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, Repr::Rational(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Root { .. } => None,
        }
    }

    /// Minimal polynomial: primitive, positive leading coefficient.
    pub fn minpoly(&self) -> IntPoly {
        match &self.repr {
            Repr::Rational(q) => IntPoly::linear_for(q),
            Repr::Root { poly, .. } => poly.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match &self.repr {
            Repr::Rational(_) => 1,
            Repr::Root { poly, .. } => poly.degree(),
        }
    }

    /// Current isolating interval (a point for rationals).
    pub fn isolating_interval(&self) -> RInterval {
        match &self.repr {
            Repr::Rational(q) => RInterval::point(q.clone()),
            Repr::Root { lo, hi, .. } => RInterval::new(lo.clone(), hi.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Root { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rational(q) if q.is_one())
    }

    /// Exact sign: -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        match &self.repr {
            Repr::Rational(q) => poly::sign_of(q.numer()),
            Repr::Root { poly, lo, hi } => {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                loop {
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    bisect(poly, &mut lo, &mut hi);
                }
            }
        }
    }

    /// Interval containing the value with width ≤ eps.
    pub fn refine(&self, eps: &Rat) -> RInterval {
        assert!(eps.is_positive(), "refine needs eps > 0");
        match &self.repr {
            Repr::Rational(q) => RInterval::point(q.clone()),
            Repr::Root { poly, lo, hi } => {
                let (en, ed) = (eps.numer(), eps.denom());
                narrow(poly, lo, hi, |a, b, k| (b - a) * ed <= en << k)
            }
        }
    }

    /// Interval of relative width ≤ 2^-bits around a nonzero value.
    pub(crate) fn refine_relative(&self, bits: u32) -> RInterval {
        match &self.repr {
            Repr::Rational(q) => RInterval::point(q.clone()),
            Repr::Root { poly, lo, hi } => narrow(poly, lo, hi, |a, b, _| {
                (a.is_positive() || b.is_negative()) && (b - a) << bits as usize <= a.abs().min(b.abs())
            }),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let i = self.refine(&rat(1, 1 << 60));
        interval::rat_to_f64(&i.mid())
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Rational(q) => Self::from_rat(-q),
            Repr::Root { poly, lo, hi } => AlgebraicReal {
                repr: Repr::Root {
                    poly: poly.negate_var().primitive(),
                    lo: -hi,
                    hi: -lo,
                },
            },
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::from_rat(a + b),
            (Repr::Rational(r), Repr::Root { .. }) => o.add_rat(r),
            (Repr::Root { .. }, Repr::Rational(r)) => self.add_rat(r),
            _ => self.combine(o, ArithOp::Add),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::from_rat(a * b),
            (Repr::Rational(r), Repr::Root { .. }) => o.mul_rat(r),
            (Repr::Root { .. }, Repr::Rational(r)) => self.mul_rat(r),
            _ => self.combine(o, ArithOp::Mul),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Self::from_rat(q.recip()))
                }
            }
            Repr::Root { poly, lo, hi } => {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                while !(lo.is_positive() || hi.is_negative()) {
                    bisect(poly, &mut lo, &mut hi);
                }
                Ok(AlgebraicReal {
                    repr: Repr::Root {
                        poly: poly.reverse().primitive(),
                        lo: hi.recip(),
                        hi: lo.recip(),
                    },
                })
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn arith(&self, op: ArithOp, o: &Self) -> Result<Self> {
        match op {
            ArithOp::Add => Ok(self.add(o)),
            ArithOp::Sub => Ok(self.sub(o)),
            ArithOp::Mul => Ok(self.mul(o)),
            ArithOp::Div => self.div(o),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn add_rat(&self, r: &Rat) -> Self {
        let Repr::Root { poly, lo, hi } = &self.repr else {
            unreachable!()
        };
        // value + r is a root of p(X − r)
        AlgebraicReal {
            repr: Repr::Root {
                poly: poly.compose_linear(&Rat::one(), &-r),
                lo: lo + r,
                hi: hi + r,
            },
        }
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let Repr::Root { poly, lo, hi } = &self.repr else {
            unreachable!()
        };
        let (lo, hi) = if r.is_positive() {
            (lo * r, hi * r)
        } else {
            (hi * r, lo * r)
        };
        AlgebraicReal {
            repr: Repr::Root {
                poly: poly.compose_linear(&r.recip(), &Rat::zero()),
                lo,
                hi,
            },
        }
    }

    /// Sum or product of two irrational values via resultants.
    fn combine(&self, o: &Self, op: ArithOp) -> Self {
        let (Repr::Root { poly: p, lo: plo, hi: phi }, Repr::Root { poly: q, lo: qlo, hi: qhi }) =
            (&self.repr, &o.repr)
        else {
            unreachable!()
        };
        let cand = match op {
            ArithOp::Add => sum_resultant(p, q),
            ArithOp::Mul => product_resultant(p, q),
            _ => unreachable!(),
        };
        let factors: Vec<IntPoly> = irreducible_factors(&cand);
        let sturms: Vec<Sturm> = factors.iter().map(Sturm::new).collect();
        let (mut xlo, mut xhi) = (plo.clone(), phi.clone());
        let (mut ylo, mut yhi) = (qlo.clone(), qhi.clone());
        loop {
            let xi = RInterval::new(xlo.clone(), xhi.clone());
            let yi = RInterval::new(ylo.clone(), yhi.clone());
            let zi = if op == ArithOp::Add {
                xi.add(&yi)
            } else {
                xi.mul(&yi)
            };
            if let Some(idx) = select_factor(&sturms, &zi) {
                return Self::from_irreducible(factors[idx].clone(), zi.lo, zi.hi);
            }
            bisect(p, &mut xlo, &mut xhi);
            bisect(q, &mut ylo, &mut yhi);
        }
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Result<Self> {
        match self.sign() {
            -1 => return Err(Error::NegativeOperand),
            0 => return Ok(Self::zero()),
            _ => {}
        }
        match &self.repr {
            Repr::Rational(q) => {
                let (n, d) = (q.numer(), q.denom());
                let (sn, sd) = (n.sqrt(), d.sqrt());
                if &sn * &sn == *n && &sd * &sd == *d {
                    return Ok(Self::from_rat(Rat::new(sn, sd)));
                }
                let poly = IntPoly::new(vec![-n.clone(), BigInt::zero(), d.clone()]);
                Ok(AlgebraicReal {
                    repr: Repr::Root {
                        poly,
                        lo: Rat::zero(),
                        hi: q + Rat::one(),
                    },
                })
            }
            Repr::Root { poly, lo, hi } => {
                let cand = poly.square_var();
                let factors = irreducible_factors(&cand);
                let sturms: Vec<Sturm> = factors.iter().map(Sturm::new).collect();
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let mut bits = 16;
                loop {
                    let base = if lo.is_negative() { Rat::zero() } else { lo.clone() };
                    let s_lo = sqrt_bounds(&base, bits).0;
                    let s_hi = sqrt_bounds(&hi, bits).1;
                    let zi = RInterval::new(s_lo, s_hi);
                    if let Some(idx) = select_factor(&sturms, &zi) {
                        return Ok(Self::from_irreducible(factors[idx].clone(), zi.lo, zi.hi));
                    }
                    bisect(poly, &mut lo, &mut hi);
                    bits += 4;
                }
            }
        }
    }

    /// Exact three-way comparison.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Rational(r), Repr::Root { poly, lo, hi }) => {
                cmp_root_rat(poly, lo, hi, r).reverse()
            }
            (Repr::Root { poly, lo, hi }, Repr::Rational(r)) => cmp_root_rat(poly, lo, hi, r),
            (
                Repr::Root { poly: p, lo: plo, hi: phi },
                Repr::Root { poly: q, lo: qlo, hi: qhi },
            ) => {
                if p == q {
                    let ilo = plo.clone().max(qlo.clone());
                    let ihi = phi.clone().min(qhi.clone());
                    if ilo < ihi && p.sign_at(&ilo) * p.sign_at(&ihi) < 0 {
                        return Ordering::Equal;
                    }
                }
                let (mut plo, mut phi) = (plo.clone(), phi.clone());
                let (mut qlo, mut qhi) = (qlo.clone(), qhi.clone());
                loop {
                    if phi < qlo {
                        return Ordering::Less;
                    }
                    if qhi < plo {
                        return Ordering::Greater;
                    }
                    bisect(p, &mut plo, &mut phi);
                    bisect(q, &mut qlo, &mut qhi);
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Textual literal: `"p/q"` for rationals, minpoly + interval otherwise.
    pub fn to_literal(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Rational(q) => serde_json::Value::String(rat_literal(q)),
            Repr::Root { poly, lo, hi } => serde_json::json!({
                "minpoly": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "interval": [rat_literal(lo), rat_literal(hi)],
            }),
        }
    }
}

/// Index of the only factor with a root in `zi`, provided it has exactly one there.
fn select_factor(sturms: &[Sturm], zi: &RInterval) -> Option<usize> {
    let mut found = None;
    for (i, s) in sturms.iter().enumerate() {
        match s.count_closed(&zi.lo, &zi.hi) {
            0 => {}
            1 if found.is_none() => found = Some(i),
            _ => return None,
        }
    }
    found
}

fn cmp_root_rat(poly: &IntPoly, lo: &Rat, hi: &Rat, r: &Rat) -> Ordering {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    loop {
        if &hi < r {
            return Ordering::Less;
        }
        if &lo > r {
            return Ordering::Greater;
        }
        bisect(poly, &mut lo, &mut hi);
    }
}

/// Halves an isolating interval of an irrational root of `poly`.
fn bisect(poly: &IntPoly, lo: &mut Rat, hi: &mut Rat) {
    let mid = dyadic_midpoint(lo, hi);
    let s_mid = poly.sign_at(&mid);
    debug_assert!(s_mid != 0, "irreducible polynomial of degree ≥ 2 has no rational roots");
    if poly.sign_at(lo) == s_mid {
        *lo = mid;
    } else {
        *hi = mid;
    }
}

/// Bisects an isolating interval until `done(a, b, k)` holds for the
/// endpoints a/2^k, b/2^k. Works on integer numerators over a common power of
/// two so no step pays for a gcd.
fn narrow(poly: &IntPoly, lo: &Rat, hi: &Rat, done: impl Fn(&BigInt, &BigInt, usize) -> bool) -> RInterval {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    // a couple of ordinary steps make both endpoints dyadic
    let (mut a, mut b, mut k) = loop {
        if let (Some(ka), Some(kb)) = (dyadic_exponent(&lo), dyadic_exponent(&hi)) {
            let k = ka.max(kb);
            break (lo.numer() << (k - ka), hi.numer() << (k - kb), k);
        }
        bisect(poly, &mut lo, &mut hi);
    };
    let s_lo = poly.sign_at(&lo);
    while !done(&a, &b, k) {
        let m = &a + &b;
        k += 1;
        if poly.sign_at_dyadic(&m, k) == s_lo {
            a = m;
            b <<= 1;
        } else {
            b = m;
            a <<= 1;
        }
    }
    let den = BigInt::one() << k;
    RInterval::new(Rat::new(a, den.clone()), Rat::new(b, den))
}

/// k with q·2^k an integer, when the denominator is a power of two.
fn dyadic_exponent(q: &Rat) -> Option<usize> {
    let d = q.denom();
    let k = d.trailing_zeros().unwrap_or(0);
    (d.bits() == k + 1).then_some(k as usize)
}

/// A short rational strictly between lo and hi, close to the midpoint.
fn dyadic_midpoint(lo: &Rat, hi: &Rat) -> Rat {
    let exact = (lo + hi) / rat_int(2);
    let width = hi - lo;
    // round to a dyadic grid a few bits finer than the width
    let bits = (width.denom().bits() as i64 - width.numer().bits() as i64 + 4).max(1) as u32;
    let cand = interval::floor_dyadic(&exact, bits);
    if &cand > lo && &cand < hi {
        cand
    } else {
        exact
    }
}

fn exact_shift_neg(q: &IntPoly, z: &BigInt) -> IntPoly {
    // q(z − Y) as a polynomial in Y, exactly.
    let n = q.degree();
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, c) in q.coeffs().iter().enumerate() {
        // (z − Y)^i = Σ_k C(i,k) z^{i−k} (−Y)^k
        let mut binom = BigInt::one();
        for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
            let term = c * &binom * num_traits::pow(z.clone(), i - k);
            if k % 2 == 0 {
                *slot += term;
            } else {
                *slot -= term;
            }
            binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
        }
    }
    IntPoly::new(out)
}

/// Integer polynomial vanishing at every α + β, α root of p, β root of q.
pub(crate) fn sum_resultant(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let deg = p.degree() * q.degree();
    let xs: Vec<BigInt> = (0..=deg as i64).map(BigInt::from).collect();
    let pr = p.to_rat();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|z| resultant(&pr, &exact_shift_neg(q, z).to_rat()))
        .collect();
    interpolate(&xs, &ys).to_primitive_int()
}

/// Integer polynomial vanishing at every α·β.
pub(crate) fn product_resultant(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let n = q.degree();
    let deg = p.degree() * n;
    let xs: Vec<BigInt> = (0..=deg as i64).map(BigInt::from).collect();
    let pr = p.to_rat();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|z| {
            // Y^n q(z / Y) = Σ q_i z^i Y^{n−i}
            let mut coeffs = vec![BigInt::zero(); n + 1];
            for (i, c) in q.coeffs().iter().enumerate() {
                coeffs[n - i] = c * num_traits::pow(z.clone(), i);
            }
            resultant(&pr, &IntPoly::new(coeffs).to_rat())
        })
        .collect();
    interpolate(&xs, &ys).to_primitive_int()
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, o: &Self) -> bool {
        match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Root { poly: p, .. }, Repr::Root { poly: q, .. }) => {
                p == q && self.cmp_exact(o) == Ordering::Equal
            }
            _ => false,
        }
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_exact(o)
    }
}

impl Hash for AlgebraicReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rational(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Repr::Root { poly, .. } => {
                1u8.hash(state);
                poly.hash(state);
            }
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{}", rat_literal(q)),
            Repr::Root { poly, .. } => write!(f, "root({}) ≈ {:.12}", poly, self.to_f64()),
        }
    }
}

impl From<Rat> for AlgebraicReal {
    fn from(q: Rat) -> Self {
        Self::from_rat(q)
    }
}

impl From<i64> for AlgebraicReal {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Certified interval around ln(x), width ≤ 2^-bits.
pub fn log_interval(x: &AlgebraicReal, bits: u32) -> Result<RInterval> {
    if x.sign() <= 0 {
        return Err(Error::NonPositiveOperand);
    }
    let target = Rat::new(BigInt::one(), BigInt::one() << bits as usize);
    escalate(bits + 16, |prec| {
        let xi = x.refine_relative(prec.min(bits + 8) + 2);
        let out = xi.ln(prec)?;
        Ok((out.width() <= target).then_some(out))
    })
}

/// Certified interval around the principal argument of z in [0, 2π), width ≤ 2^-bits.
pub fn arg_interval(z: &AlgebraicComplex, bits: u32) -> Result<RInterval> {
    let sx = z.re.sign();
    let sy = z.im.sign();
    let target = Rat::new(BigInt::one(), BigInt::one() << bits as usize);
    let pi_at = |prec: u32| interval::pi(prec).interval();
    match (sx, sy) {
        (0, 0) => return Err(Error::ZeroOperand),
        (1, 0) => return Ok(RInterval::point(Rat::zero())),
        (-1, 0) => return escalate(bits + 8, |p| {
            let v = pi_at(p);
            Ok((v.width() <= target).then_some(v))
        }),
        (0, 1) => return escalate(bits + 8, |p| {
            let v = pi_at(p).scale(&rat(1, 2));
            Ok((v.width() <= target).then_some(v))
        }),
        (0, -1) => return escalate(bits + 8, |p| {
            let v = pi_at(p).scale(&rat(3, 2));
            Ok((v.width() <= target).then_some(v))
        }),
        _ => {}
    }
    escalate(bits + 16, |prec| {
        let xi = z.re.refine_relative(prec.min(bits + 8) + 2);
        let yi = z.im.refine_relative(prec.min(bits + 8) + 2);
        let ratio = yi.div(&xi).expect("x excludes zero");
        let base = ratio.atan(prec);
        let pi = pi_at(prec);
        let out = match (sx, sy) {
            (1, 1) => base,
            (-1, _) => base.add(&pi),
            (1, -1) => base.add(&pi.scale(&rat_int(2))),
            _ => unreachable!(),
        };
        Ok((out.width() <= target).then_some(out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> AlgebraicReal {
        AlgebraicReal::sqrt_int(2)
    }

    fn phi() -> AlgebraicReal {
        AlgebraicReal::from_poly_interval(&IntPoly::from_i64s(&[-1, -1, 1]), rat_int(1), rat_int(2))
            .unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let s = sqrt2();
        assert!(s.add(&s.neg()).is_zero());
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt2();
        let p = s.mul(&s);
        assert!(p.is_rational());
        assert_eq!(p, AlgebraicReal::from_int(2));
    }

    #[test]
    fn inverse_of_golden_ratio() {
        let phi = phi();
        let inv = AlgebraicReal::one().div(&phi).unwrap();
        assert_eq!(inv, phi.sub(&AlgebraicReal::one()));
        assert!(inv.mul(&phi).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            sqrt2().div(&AlgebraicReal::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(AlgebraicReal::from_int(4).sqrt().unwrap(), AlgebraicReal::from_int(2));
        let s = sqrt2();
        assert_eq!(s.minpoly(), IntPoly::from_i64s(&[-2, 0, 1]));
        let iv = s.refine(&rat(1, 100));
        assert!(iv.lo >= rat_int(1) && iv.hi <= rat_int(2));
        // sqrt(3 + 2√2) = 1 + √2
        let x = AlgebraicReal::from_int(3).add(&s.mul(&AlgebraicReal::from_int(2)));
        let r = x.sqrt().unwrap();
        assert_eq!(r, AlgebraicReal::one().add(&s));
        assert_eq!(r.mul(&r), x);
        assert_eq!(
            AlgebraicReal::from_int(-1).sqrt().unwrap_err(),
            Error::NegativeOperand
        );
    }

    #[test]
    fn compare_cases() {
        let s = sqrt2();
        assert_eq!(s.mul(&s).cmp_exact(&AlgebraicReal::from_int(2)), Ordering::Equal);
        assert_eq!(
            s.cmp_exact(&AlgebraicReal::from_rat(rat(141, 100))),
            Ordering::Greater
        );
        assert_eq!(AlgebraicReal::zero().cmp_exact(&AlgebraicReal::zero()), Ordering::Equal);
        let s3 = AlgebraicReal::sqrt_int(3);
        assert_eq!(s.cmp_exact(&s3), Ordering::Less);
        assert_eq!(s.neg().cmp_exact(&s), Ordering::Less);
    }

    #[test]
    fn refine_cases() {
        assert_eq!(AlgebraicReal::from_int(2).refine(&rat(1, 10)), RInterval::from_int(2));
        assert_eq!(AlgebraicReal::zero().refine(&rat(1, 1)), RInterval::from_int(0));
        let iv = sqrt2().refine(&rat(1, 100));
        assert!(iv.width() <= rat(1, 100));
        assert!(iv.contains(&rat(141421, 100000)));
    }

    #[test]
    fn mixed_fields() {
        let s2 = sqrt2();
        let s3 = AlgebraicReal::sqrt_int(3);
        let sum = s2.add(&s3);
        assert_eq!(sum.minpoly(), IntPoly::from_i64s(&[1, 0, -10, 0, 1]));
        let back = sum.sub(&s3);
        assert_eq!(back, s2);
        let prod = s2.mul(&s3);
        assert_eq!(prod, AlgebraicReal::sqrt_int(6));
    }

    #[test]
    fn from_poly_interval_rejects_bad_isolation() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        assert!(AlgebraicReal::from_poly_interval(&p, rat_int(-2), rat_int(2)).is_err());
        assert!(AlgebraicReal::from_poly_interval(&p, rat_int(2), rat_int(3)).is_err());
        // reducible input narrows to the right factor
        let q = IntPoly::from_i64s(&[-2, 0, 1]).mul(&IntPoly::from_i64s(&[-5, 1]));
        let v = AlgebraicReal::from_poly_interval(&q, rat_int(4), rat_int(6)).unwrap();
        assert_eq!(v, AlgebraicReal::from_int(5));
    }

    #[test]
    fn log_interval_cases() {
        let one = log_interval(&AlgebraicReal::one(), 40).unwrap();
        assert!(one.contains(&Rat::zero()));
        let two = log_interval(&AlgebraicReal::from_int(2), 64).unwrap();
        assert!(two.width() <= rat(1, 1) / Rat::from_integer(BigInt::one() << 64));
        assert!((interval::rat_to_f64(&two.mid()) - std::f64::consts::LN_2).abs() < 1e-15);
        let four = log_interval(&AlgebraicReal::from_int(4), 32).unwrap();
        let twice = log_interval(&AlgebraicReal::from_int(2), 33).unwrap().scale(&rat_int(2));
        assert!(four.intersects(&twice));
        assert_eq!(
            log_interval(&AlgebraicReal::zero(), 10).unwrap_err(),
            Error::NonPositiveOperand
        );
        let lphi = log_interval(&phi(), 80).unwrap();
        assert!((interval::rat_to_f64(&lphi.mid()) - 1.618033988749895f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn arg_interval_cases() {
        let c = |x: i64, y: i64| AlgebraicComplex::new(x.into(), y.into());
        assert!(arg_interval(&c(1, 0), 32).unwrap().contains(&Rat::zero()));
        let half_pi = arg_interval(&c(0, 1), 32).unwrap();
        assert!((interval::rat_to_f64(&half_pi.mid()) - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
        let quarter = arg_interval(&c(1, 1), 64).unwrap();
        assert!(quarter.width() <= Rat::new(BigInt::one(), BigInt::one() << 64));
        assert!((interval::rat_to_f64(&quarter.mid()) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let third_quadrant = arg_interval(&c(-1, -1), 40).unwrap();
        assert!((interval::rat_to_f64(&third_quadrant.mid()) - 5.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-11);
        let fourth = arg_interval(&c(1, -1), 40).unwrap();
        assert!((interval::rat_to_f64(&fourth.mid()) - 7.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-11);
        assert_eq!(arg_interval(&c(0, 0), 8).unwrap_err(), Error::ZeroOperand);
    }
}
