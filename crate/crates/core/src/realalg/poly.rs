//! Dense univariate polynomials over ℤ and ℚ.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Integer polynomial, coefficients stored from the constant term upward.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `den·x − num`, the primitive polynomial of a rational.
    pub fn linear_for(r: &Rat) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        // Homogenised Horner keeps everything integral: den^n·p(num/den).
        let n = self.degree();
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // den_pow overshoots by one factor
        let scale = num_traits::pow(den.clone(), n);
        Rat::new(acc, scale)
    }

    /// Sign of p(x): -1, 0 or 1.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        let n = self.degree();
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        let _ = n;
        sign_of(&acc)
    }

    /// Sign of p(m / 2^k).
    pub fn sign_at_dyadic(&self, m: &BigInt, k: usize) -> i32 {
        // 2^(k·n)·p(m/2^k) = Σ cᵢ·mⁱ·2^(k(n−i))
        let mut acc = BigInt::zero();
        for (j, c) in self.coeffs.iter().rev().enumerate() {
            acc = acc * m + (c << (k * j));
        }
        sign_of(&acc)
    }

    /// X^n p(1/X).
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// p(−X).
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// p(X²).
    pub fn square_var(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Self::new(out)
    }

    /// Primitive integer multiple of p(a·X + b).
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let lin = RatPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&RatPoly::constant(Rat::from(c.clone())));
        }
        acc.to_primitive_int()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rat::from(c.clone())).collect())
    }

    /// Exact quotient over ℤ, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_rat().div_rem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(q.coeffs.len());
        for c in q.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.to_rat().gcd(&other.to_rat()).to_primitive_int()
    }

    /// Product of the distinct irreducible factors, as a primitive polynomial.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() < 1 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.div_exact(&g).expect("gcd divides").primitive()
    }

    /// Upper bound on the modulus of every complex root: 1 + max |a_i / a_n|.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        Rat::one() + Rat::new(m, lc)
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    match x.cmp(&BigInt::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Polynomial with rational coefficients; used for Euclidean steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub(crate) coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dn = d.degree();
        let lc = d.leading();
        if r.len() <= dn {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = &r[i + dn] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Clears denominators and content; positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rat::from(l.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Resultant of two univariate rational polynomials via the Euclidean recurrence.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    let (m, n) = (a.degree(), b.degree());
    if n == 0 {
        return num_traits::pow(b.leading(), m);
    }
    if m == 0 {
        return num_traits::pow(a.leading(), n);
    }
    if m < n {
        let r = resultant(b, a);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    let r = a.rem(b);
    if r.is_zero() {
        return Rat::zero();
    }
    let k = r.degree();
    let mut out = num_traits::pow(b.leading(), m - k) * resultant(b, &r);
    if (m * n) % 2 == 1 {
        out = -out;
    }
    out
}

/// Coefficients of the unique polynomial of degree < len through the points.
pub fn interpolate(xs: &[BigInt], ys: &[Rat]) -> RatPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // Newton divided differences.
    let mut dd: Vec<Rat> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = Rat::from(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    let mut acc = RatPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = RatPoly::new(vec![Rat::from(-xs[i].clone()), Rat::one()]);
        acc = acc.mul(&lin).add(&RatPoly::constant(dd[i].clone()));
    }
    acc
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree() >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].to_rat().rem(&chain[n - 1].to_rat());
                if r.is_zero() {
                    break;
                }
                // positive rescaling preserves signs
                let ri = r.to_primitive_int();
                let sign_fix = r.leading().is_negative();
                chain.push(if sign_fix { ri } else { ri.neg() });
            }
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut last = 0;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_half_open(&self, a: &Rat, b: &Rat) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct real roots in the closed interval [a, b].
    pub fn count_closed(&self, a: &Rat, b: &Rat) -> usize {
        let at_a = usize::from(self.chain[0].sign_at(a) == 0);
        if a == b {
            return at_a;
        }
        at_a + self.count_half_open(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(IntPoly::from_i64s(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(IntPoly::from_i64s(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x - 5) = 2 - 5 = -3
        let a = IntPoly::from_i64s(&[-2, 1]).to_rat();
        let b = IntPoly::from_i64s(&[-5, 1]).to_rat();
        assert_eq!(resultant(&a, &b), rat(-3, 1));
        // Res(x^2 - 2, x^2 - 3): product over roots of b of a(root) = (3-2)^2 = 1
        let a = IntPoly::from_i64s(&[-2, 0, 1]).to_rat();
        let b = IntPoly::from_i64s(&[-3, 0, 1]).to_rat();
        assert_eq!(resultant(&a, &b), rat(1, 1));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = IntPoly::from_i64s(&[3, -1, 0, 2]);
        let xs: Vec<BigInt> = (0..4).map(BigInt::from).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| Rat::from(p.eval_int(x))).collect();
        assert_eq!(interpolate(&xs, &ys).to_primitive_int(), p);
    }

    #[test]
    fn sturm_counts_roots_of_x3_minus_x() {
        let p = IntPoly::from_i64s(&[0, -1, 0, 1]);
        let s = Sturm::new(&p);
        assert_eq!(s.count_closed(&rat(-2, 1), &rat(2, 1)), 3);
        assert_eq!(s.count_half_open(&rat(-1, 1), &rat(1, 1)), 2);
        assert_eq!(s.count_closed(&rat(1, 2), &rat(1, 2)), 0);
        assert_eq!(s.count_closed(&rat(1, 1), &rat(1, 1)), 1);
    }

    #[test]
    fn dyadic_signs_match_rational_signs() {
        let p = IntPoly::from_i64s(&[-7, 3, -5, 2]);
        for m in -40i64..=40 {
            for k in 0..6usize {
                let x = Rat::new(m.into(), BigInt::one() << k);
                assert_eq!(p.sign_at_dyadic(&BigInt::from(m), k), p.sign_at(&x), "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        // (x-1)^2 (x+2)
        let p = IntPoly::from_i64s(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree_part(), IntPoly::from_i64s(&[-2, 1, 1]));
    }

    #[test]
    fn compose_linear_shifts() {
        // p(x) = x^2 - 2, p(x + 1/2) = x^2 + x - 7/4 -> 4x^2 + 4x - 7
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(
            p.compose_linear(&rat(1, 1), &rat(1, 2)),
            IntPoly::from_i64s(&[-7, 4, 4])
        );
    }
}
