//! Certified isolation of all complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iteration (f64 first, then dyadic
//! rationals). Certification is exact: with distinct approximations z_i the
//! discs |z − z_i| ≤ n·|p(z_i) / (a_n Π_{j≠i}(z_i − z_j))| cover all roots and
//! each connected cluster of m discs holds m roots, so pairwise disjoint discs
//! isolate one root each.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{rat_to_f64, sqrt_bounds, MAX_PRECISION_BITS};
use super::{IntPoly, Rat};
use crate::error::{Error, Result};

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::new(Rat::zero(), Rat::zero())
    }

    fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(CRat::new(Rat::from_float(re)?, Rat::from_float(im)?))
    }

    pub fn add(&self, o: &Self) -> Self {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sq();
        if n.is_zero() {
            return None;
        }
        let conj = CRat::new(o.re.clone(), -&o.im);
        let p = self.mul(&conj);
        Some(CRat::new(p.re / &n, p.im / n))
    }

}

/// A disc holding exactly one root.
#[derive(Clone, Debug)]
pub struct RootDisc {
    pub center: CRat,
    /// Exact square of the inclusion radius.
    pub radius_sq: Rat,
    /// Rational upper bound for the radius.
    pub radius: Rat,
}

impl RootDisc {
    /// Whether the disc can meet the disc of radius `rho` around `z`.
    pub fn may_meet(&self, z: &CRat, rho: &Rat) -> bool {
        let reach = &self.radius + rho;
        self.center.sub(z).norm_sq() <= &reach * &reach
    }

    /// Interval bounds on the modulus of the enclosed root.
    pub fn modulus_bounds(&self, bits: u32) -> (Rat, Rat) {
        let (lo, hi) = sqrt_bounds(&self.center.norm_sq(), bits);
        let lo = &lo - &self.radius;
        (if lo.is_negative() { Rat::zero() } else { lo }, hi + &self.radius)
    }
}

fn eval_with_derivative(p: &IntPoly, z: &CRat) -> (CRat, CRat) {
    let mut val = CRat::zero();
    let mut der = CRat::zero();
    for c in p.coeffs().iter().rev() {
        der = der.mul(z).add(&val);
        val = val.mul(z);
        val.re += Rat::from_integer(c.clone());
    }
    (val, der)
}

fn eval(p: &IntPoly, z: &CRat) -> CRat {
    eval_with_derivative(p, z).0
}

fn f64_aberth(p: &IntPoly) -> Option<Vec<(f64, f64)>> {
    let n = p.degree();
    let lead = Rat::from_integer(p.leading());
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| rat_to_f64(&(Rat::from_integer(c.clone()) / &lead)))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let radius = 1.0 + coeffs[..n].iter().fold(0f64, |m, c| m.max(c.abs()));
    if !radius.is_finite() {
        return None;
    }
    let r0 = radius.min(1e150).powf(1.0 / n as f64).max(0.5);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (r0 * t.cos(), r0 * t.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0f64;
        for i in 0..n {
            let zi = z[i];
            let mut v = (0.0, 0.0);
            let mut d = (0.0, 0.0);
            for &c in coeffs.iter().rev() {
                d = cmul(d, zi);
                d = (d.0 + v.0, d.1 + v.1);
                v = cmul(v, zi);
                v.0 += c;
            }
            if v.0 == 0.0 && v.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(v, d);
            let mut s = (0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let inv = cdiv((1.0, 0.0), (zi.0 - zj.0, zi.1 - zj.1));
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let rs = cmul(ratio, s);
            let w = cdiv(ratio, (1.0 - rs.0, -rs.1));
            if !(w.0.is_finite() && w.1.is_finite()) {
                continue;
            }
            z[i] = (zi.0 - w.0, zi.1 - w.1);
            moved = moved.max((w.0.abs() + w.1.abs()) / (1.0 + zi.0.abs() + zi.1.abs()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter().all(|c| c.0.is_finite() && c.1.is_finite()).then_some(z)
}

/// Complex fixed-point number (re + i·im)·2^(−prec).
#[derive(Clone)]
struct Fix {
    re: BigInt,
    im: BigInt,
}

impl Fix {
    fn from_crat(z: &CRat, prec: u32) -> Self {
        let scale = |q: &Rat| (q.numer() << prec as usize).div_floor(q.denom());
        Fix { re: scale(&z.re), im: scale(&z.im) }
    }

    fn to_crat(&self, prec: u32) -> CRat {
        let den = BigInt::one() << prec as usize;
        CRat::new(Rat::new(self.re.clone(), den.clone()), Rat::new(self.im.clone(), den))
    }

    fn sub(&self, o: &Self) -> Self {
        Fix { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn add(&self, o: &Self) -> Self {
        Fix { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &Self, prec: u32) -> Self {
        let p = prec as usize;
        Fix {
            re: (&self.re * &o.re - &self.im * &o.im) >> p,
            im: (&self.re * &o.im + &self.im * &o.re) >> p,
        }
    }

    fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let n = &o.re * &o.re + &o.im * &o.im;
        if n.is_zero() {
            return None;
        }
        let p = prec as usize;
        Some(Fix {
            re: ((&self.re * &o.re + &self.im * &o.im) << p).div_floor(&n),
            im: ((&self.im * &o.re - &self.re * &o.im) << p).div_floor(&n),
        })
    }
}

/// One Gauss–Seidel Aberth sweep in fixed point; returns the largest
/// correction in units of 2^(−prec). Rounding here only affects convergence,
/// never the certificate.
fn aberth_sweep(coeffs: &[BigInt], z: &mut [Fix], prec: u32) -> BigInt {
    let n = z.len();
    let one = Fix { re: BigInt::one() << prec as usize, im: BigInt::zero() };
    let mut largest = BigInt::zero();
    for i in 0..n {
        let mut v = Fix { re: BigInt::zero(), im: BigInt::zero() };
        let mut d = v.clone();
        for c in coeffs.iter().rev() {
            d = d.mul(&z[i], prec).add(&v);
            v = v.mul(&z[i], prec);
            v.re += c;
        }
        if v.re.is_zero() && v.im.is_zero() {
            continue;
        }
        let Some(ratio) = v.div(&d, prec) else { continue };
        let mut s = Fix { re: BigInt::zero(), im: BigInt::zero() };
        for j in 0..n {
            if j != i {
                if let Some(inv) = one.div(&z[i].sub(&z[j]), prec) {
                    s = s.add(&inv);
                }
            }
        }
        let Some(w) = ratio.div(&one.sub(&ratio.mul(&s, prec)), prec) else { continue };
        largest = largest.max(w.re.abs()).max(w.im.abs());
        z[i] = z[i].sub(&w);
    }
    largest
}

/// Inclusion discs for the approximations, or None if they are not pairwise disjoint.
fn certify(p: &IntPoly, z: &[CRat], bits: u32) -> Option<Vec<RootDisc>> {
    let n = z.len();
    let lead_sq = Rat::from_integer(p.leading() * p.leading());
    let n_sq = Rat::from_integer(BigInt::from(n * n));
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let mut denom = lead_sq.clone();
        for j in 0..n {
            if j != i {
                let dist = z[i].sub(&z[j]).norm_sq();
                if dist.is_zero() {
                    return None;
                }
                denom *= dist;
            }
        }
        let radius_sq = &n_sq * eval(p, &z[i]).norm_sq() / denom;
        let radius = sqrt_bounds(&radius_sq, bits + 8).1;
        discs.push(RootDisc {
            center: z[i].clone(),
            radius_sq,
            radius,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let reach = &discs[i].radius + &discs[j].radius;
            if z[i].sub(&z[j]).norm_sq() <= &reach * &reach {
                return None;
            }
        }
    }
    Some(discs)
}

/// Certified discs, one per complex root of the squarefree polynomial `p`,
/// each of radius ≤ 2^-bits.
pub fn certified_roots(p: &IntPoly, bits: u32) -> Result<Vec<RootDisc>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let root = Rat::new(-p.coeff(0), p.coeff(1));
        return Ok(vec![RootDisc {
            center: CRat::new(root, Rat::zero()),
            radius_sq: Rat::zero(),
            radius: Rat::zero(),
        }]);
    }
    let mut z: Vec<CRat> = match f64_aberth(p) {
        Some(start) => start
            .into_iter()
            .map(|(a, b)| CRat::from_f64(a, b).expect("finite"))
            .collect(),
        None => {
            // circle of radius 2^k enclosing the Cauchy bound
            let r = super::interval::ceil_int(&p.cauchy_bound());
            (0..n)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                    let unit = CRat::from_f64(t.cos(), t.sin()).expect("finite");
                    unit.mul(&CRat::new(Rat::from_integer(r.clone()), Rat::zero()))
                })
                .collect()
        }
    };
    let target = Rat::new(1.into(), BigInt::from(1) << bits as usize);
    let mut prec = 64u32.max(bits + 16);
    loop {
        let coeffs: Vec<BigInt> = p.coeffs().iter().map(|c| c << prec as usize).collect();
        let mut fz: Vec<Fix> = z.iter().map(|c| Fix::from_crat(c, prec)).collect();
        let tol = BigInt::from(1u32 << 6);
        for _ in 0..200 {
            if aberth_sweep(&coeffs, &mut fz, prec) <= tol {
                break;
            }
        }
        z = fz.iter().map(|c| c.to_crat(prec)).collect();
        if let Some(discs) = certify(p, &z, prec) {
            if discs.iter().all(|d| d.radius <= target) {
                return Ok(discs);
            }
        }
        if prec >= MAX_PRECISION_BITS {
            return Err(Error::PrecisionFailure { bits: prec });
        }
        prec = (prec * 2).min(MAX_PRECISION_BITS);
    }
}

/// Sorted f64 approximations of the roots, for diagnostics and tests.
pub fn approximate_roots(p: &IntPoly) -> Vec<(f64, f64)> {
    let discs = certified_roots(p, 40).unwrap_or_default();
    let mut out: Vec<(f64, f64)> = discs
        .iter()
        .map(|d| (rat_to_f64(&d.center.re), rat_to_f64(&d.center.im)))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

pub(crate) fn leading_abs(p: &IntPoly) -> BigInt {
    p.leading().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let p = IntPoly::from_i64s(&[-1, 0, 0, 0, 1]);
        let r = approximate_roots(&p);
        assert_eq!(r.len(), 4);
        let expect = [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)];
        for (a, b) in r.iter().zip(expect.iter()) {
            assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        }
    }

    #[test]
    fn discs_are_tight_and_contain_roots() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        let discs = certified_roots(&p, 100).unwrap();
        let eps = Rat::new(1.into(), BigInt::from(1) << 100usize);
        for d in &discs {
            assert!(d.radius <= eps);
            let m = d.modulus_bounds(120);
            assert!(&m.0 * &m.0 <= Rat::from_integer(2.into()));
        }
    }

    #[test]
    fn clustered_roots_separate() {
        // (x − 1)(x − 1 − 10^-6)… scaled to integers: 10^6 x − 10^6 − 1 times x − 1
        let p = IntPoly::from_i64s(&[-1, 1]).mul(&IntPoly::from_i64s(&[-1_000_001, 1_000_000]));
        let discs = certified_roots(&p, 40).unwrap();
        assert_eq!(discs.len(), 2);
    }

    #[test]
    fn high_degree_swinnerton_dyer() {
        let p = IntPoly::from_i64s(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        let discs = certified_roots(&p, 64).unwrap();
        assert_eq!(discs.len(), 8);
        assert!(discs.iter().all(|d| d.center.im.is_zero() || rat_to_f64(&d.center.im).abs() < 1e-12));
    }
}
