//! Elliptic curves over prime fields, affine dynamics g = τ_Q ∘ h, orbit
//! intersections, and the passage from a common-orbit relation to a unit
//! equation over a quadratic order embedded in the quaternions.

mod field;
mod order;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::realalg::{rat, AlgebraicReal, Rat};
use crate::semigroup::SemigroupSpec;
use crate::solver::UnitEquationInstance;

pub use field::is_prime;
pub use order::{order_params, QuadOrderElem};

/// y² = x³ + a4·x + a6 over 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeCurve {
    pub p: u64,
    pub a4: u64,
    pub a6: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl CurvePoint {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CurvePoint::Infinity => "O".into(),
            CurvePoint::Affine { x, y } => serde_json::json!([x, y]),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl PrimeCurve {
    pub fn new(p: u64, a4: i64, a6: i64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::parse("curve.p", format!("{p} is not a prime above 3")));
        }
        let c = PrimeCurve {
            p,
            a4: field::reduce(a4 as i128, p),
            a6: field::reduce(a6 as i128, p),
        };
        let disc = field::add(
            field::mul(4, field::pow(c.a4, 3, p), p),
            field::mul(27, field::mul(c.a6, c.a6, p), p),
            p,
        );
        if disc == 0 {
            return Err(Error::parse("curve", "4·a4³ + 27·a6² vanishes mod p"));
        }
        Ok(c)
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        field::add(field::add(field::pow(x, 3, p), field::mul(self.a4, x, p), p), self.a6, p)
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                x < self.p && y < self.p && field::mul(y, y, self.p) == self.rhs(x)
            }
        }
    }

    pub fn point(&self, x: u64, y: u64) -> Result<CurvePoint> {
        let pt = CurvePoint::Affine { x, y };
        if self.contains(&pt) {
            Ok(pt)
        } else {
            Err(Error::OffCurve)
        }
    }

    fn check(&self, pt: &CurvePoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn random_point<R: Rng>(&self, rng: &mut R) -> CurvePoint {
        loop {
            let x = rng.gen_range(0..self.p);
            if let Some(y) = field::sqrt(self.rhs(x), self.p) {
                let y = if rng.gen::<bool>() { field::neg(y, self.p) } else { y };
                return CurvePoint::Affine { x, y };
            }
        }
    }

    pub fn neg(&self, pt: &CurvePoint) -> CurvePoint {
        match *pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x,
                y: field::neg(y, self.p),
            },
        }
    }

    fn add_unchecked(&self, a: &CurvePoint, b: &CurvePoint) -> CurvePoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*a, *b) {
            (CurvePoint::Infinity, q) => return q,
            (q, CurvePoint::Infinity) => return q,
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if field::add(y1, y2, p) == 0 {
                return CurvePoint::Infinity;
            }
            let num = field::add(field::mul(3, field::mul(x1, x1, p), p), self.a4, p);
            field::mul(num, field::inv(field::mul(2, y1, p), p), p)
        } else {
            field::mul(field::sub(y2, y1, p), field::inv(field::sub(x2, x1, p), p), p)
        };
        let x3 = field::sub(field::sub(field::mul(slope, slope, p), x1, p), x2, p);
        let y3 = field::sub(field::mul(slope, field::sub(x1, x3, p), p), y1, p);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn add(&self, a: &CurvePoint, b: &CurvePoint) -> Result<CurvePoint> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &CurvePoint, b: &CurvePoint) -> Result<CurvePoint> {
        self.add(a, &self.neg(b))
    }

    /// n·P by double-and-add; negative n uses −P.
    pub fn scalar_mul(&self, pt: &CurvePoint, n: &BigInt) -> Result<CurvePoint> {
        self.check(pt)?;
        let base = if n.is_negative() { self.neg(pt) } else { *pt };
        let k = n.abs();
        let mut acc = CurvePoint::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if k.bit(i) {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        Ok(acc)
    }

    pub fn mul_int(&self, pt: &CurvePoint, n: i64) -> Result<CurvePoint> {
        self.scalar_mul(pt, &BigInt::from(n))
    }

    /// ω acting on the curve, for the two CM orders with an automorphism of
    /// order 4 or 6 visible over 𝔽_p.
    fn omega(&self, disc: i64, pt: &CurvePoint) -> Result<CurvePoint> {
        let p = self.p;
        let (x, y) = match *pt {
            CurvePoint::Infinity => return Ok(CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => (x, y),
        };
        if !self.has_cm(disc) {
            return Err(self.unsupported(disc));
        }
        match disc {
            -4 => {
                // (x, y) ↦ (−x, ι·y) with ι² = −1
                let iota = field::sqrt(p - 1, p).expect("p ≡ 1 mod 4");
                Ok(CurvePoint::Affine {
                    x: field::neg(x, p),
                    y: field::mul(iota, y, p),
                })
            }
            _ => {
                // ω = −ζ₃² with ζ₃: (x, y) ↦ (βx, y), β a primitive cube root of 1
                let s = field::sqrt(p - 3, p).expect("p ≡ 1 mod 3");
                let beta = field::mul(field::sub(s, 1, p), field::inv(2, p), p);
                Ok(CurvePoint::Affine {
                    x: field::mul(field::mul(beta, beta, p), x, p),
                    y: field::neg(y, p),
                })
            }
        }
    }

    /// Whether ω of the given discriminant acts: i on y² = x³ + a4·x with
    /// p ≡ 1 mod 4, or a sixth root of unity on y² = x³ + a6 with p ≡ 1 mod 3.
    pub fn has_cm(&self, disc: i64) -> bool {
        match disc {
            -4 => self.a6 == 0 && self.p % 4 == 1,
            -3 => self.a4 == 0 && self.p % 3 == 1,
            _ => false,
        }
    }

    fn unsupported(&self, disc: i64) -> Error {
        Error::UnsupportedEndomorphism(format!(
            "the order of discriminant {disc} does not act on y² = x³ + {}x + {} over F_{}",
            self.a4, self.a6, self.p
        ))
    }
}

/// An endomorphism: multiplication by an integer, or by x + y·ω in a CM order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endomorphism {
    Scalar(i64),
    Order(QuadOrderElem),
}

impl Endomorphism {
    pub fn apply(&self, curve: &PrimeCurve, pt: &CurvePoint) -> Result<CurvePoint> {
        match self {
            Endomorphism::Scalar(m) => curve.mul_int(pt, *m),
            Endomorphism::Order(z) if z.y.is_zero() => curve.scalar_mul(pt, &z.x),
            Endomorphism::Order(z) => {
                let xp = curve.scalar_mul(pt, &z.x)?;
                let wp = curve.omega(z.disc, pt)?;
                let yp = curve.scalar_mul(&wp, &z.y)?;
                curve.add(&xp, &yp)
            }
        }
    }

    /// Fails unless the endomorphism is realizable on this curve.
    pub fn check_supported(&self, curve: &PrimeCurve) -> Result<()> {
        match self {
            Endomorphism::Scalar(_) => Ok(()),
            Endomorphism::Order(z) if z.y.is_zero() => Ok(()),
            Endomorphism::Order(z) if curve.has_cm(z.disc) => Ok(()),
            Endomorphism::Order(z) => Err(curve.unsupported(z.disc)),
        }
    }

    /// Degree of the isogeny: m² or the norm of x + yω.
    pub fn degree(&self) -> BigInt {
        match self {
            Endomorphism::Scalar(m) => BigInt::from(*m) * BigInt::from(*m),
            Endomorphism::Order(z) => z.norm(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Endomorphism::Scalar(m) => serde_json::json!({"type": "scalar", "m": m}),
            Endomorphism::Order(z) => serde_json::json!({
                "type": "order",
                "x": z.x.to_string(),
                "y": z.y.to_string(),
                "disc": z.disc,
            }),
        }
    }
}

/// g = τ_Q ∘ h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDynamic {
    pub h: Endomorphism,
    pub q: CurvePoint,
}

impl AffineDynamic {
    pub fn apply(&self, curve: &PrimeCurve, pt: &CurvePoint) -> Result<CurvePoint> {
        curve.add(&self.h.apply(curve, pt)?, &self.q)
    }

    pub fn iterate(&self, curve: &PrimeCurve, pt: &CurvePoint, n: u64) -> Result<CurvePoint> {
        (0..n).try_fold(*pt, |acc, _| self.apply(curve, &acc))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub checks: u64,
    pub failures: u64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// gⁿ(P) = (hⁿ − 1)(R) + hⁿ(P) for g = τ_Q ∘ h, every P given and 1 ≤ n ≤ n_max.
pub fn verify_translation_identity(
    curve: &PrimeCurve,
    h: &Endomorphism,
    q: &CurvePoint,
    r: &CurvePoint,
    n_max: u64,
    points: &[CurvePoint],
) -> Result<IdentityCheck> {
    if n_max == 0 {
        return Err(Error::PreconditionFailed("n_max must be at least 1".into()));
    }
    if curve.sub(&h.apply(curve, r)?, r)? != *q {
        return Err(Error::PreconditionFailed("(h − 1)(R) differs from Q".into()));
    }
    let g = AffineDynamic { h: h.clone(), q: *q };
    let mut out = IdentityCheck { checks: 0, failures: 0 };
    for pt in points {
        let (mut gn, mut hn_p, mut hn_r) = (*pt, *pt, *r);
        for _ in 1..=n_max {
            gn = g.apply(curve, &gn)?;
            hn_p = h.apply(curve, &hn_p)?;
            hn_r = h.apply(curve, &hn_r)?;
            let closed = curve.add(&curve.sub(&hn_r, r)?, &hn_p)?;
            out.checks += 1;
            if closed != gn {
                out.failures += 1;
            }
        }
    }
    Ok(out)
}

/// The identity over `trials` random pairs (P, R) with Q = (h − 1)(R).
pub fn translation_identity_sweep(
    curve: &PrimeCurve,
    h: &Endomorphism,
    n_max: u64,
    trials: usize,
    seed: u64,
) -> Result<IdentityCheck> {
    h.check_supported(curve)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = IdentityCheck { checks: 0, failures: 0 };
    for _ in 0..trials {
        let p = curve.random_point(&mut rng);
        let r = curve.random_point(&mut rng);
        let q = curve.sub(&h.apply(curve, &r)?, &r)?;
        let c = verify_translation_identity(curve, h, &q, &r, n_max, &[p])?;
        total.checks += c.checks;
        total.failures += c.failures;
    }
    Ok(total)
}

/// All (m, n) in [1, max_iter]² with f^m(A) = g^n(B).
pub fn orbit_intersection(
    curve: &PrimeCurve,
    f: &AffineDynamic,
    g: &AffineDynamic,
    a: &CurvePoint,
    b: &CurvePoint,
    max_iter: u64,
) -> Result<Vec<(u64, u64)>> {
    let mut seen: HashMap<CurvePoint, Vec<u64>> = HashMap::new();
    let mut pt = *a;
    for m in 1..=max_iter {
        pt = f.apply(curve, &pt)?;
        seen.entry(pt).or_default().push(m);
    }
    let mut out = Vec::new();
    let mut pt = *b;
    for n in 1..=max_iter {
        pt = g.apply(curve, &pt)?;
        if let Some(ms) = seen.get(&pt) {
            out.extend(ms.iter().map(|&m| (m, n)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoCheck {
    pub u: QuadOrderElem,
    pub d: BigInt,
    /// hⁿ(u + d) − f^m·d = u.
    pub holds: bool,
    /// u = 0 with h̄^{n₀} ≠ 1, which forces f^{m₀} = h^{n₀}.
    pub common_iterate: bool,
}

fn unit_data(f: &QuadOrderElem, h: &QuadOrderElem, m0: u32, n0: u32) -> Result<(QuadOrderElem, BigInt)> {
    if f.disc != h.disc {
        return Err(Error::PreconditionFailed("f and h lie in different orders".into()));
    }
    if f.norm() <= BigInt::one() || h.norm() <= BigInt::one() {
        return Err(Error::PreconditionFailed("f and h need norm above 1".into()));
    }
    if m0 == 0 || n0 == 0 {
        return Err(Error::PreconditionFailed("m0 and n0 must be positive".into()));
    }
    let hn0 = h.pow(n0);
    let u = hn0.conj().sub_int(1).mul(&f.pow(m0).sub(&hn0));
    let d = hn0.sub_int(1).norm();
    Ok((u, d))
}

/// u = (h̄^{n₀} − 1)(f^{m₀} − h^{n₀}), d = deg(h^{n₀} − 1), and the relation at (m, n).
pub fn endo_equation_check(
    f: &QuadOrderElem,
    h: &QuadOrderElem,
    m0: u32,
    n0: u32,
    m: u32,
    n: u32,
) -> Result<EndoCheck> {
    let (u, d) = unit_data(f, h, m0, n0)?;
    let lhs = h.pow(n).mul(&u.add(&QuadOrderElem::from_int(d.clone(), u.disc)?)).sub(&f.pow(m).scale(&d));
    let common_iterate = u.is_zero() && !h.pow(n0).conj().is_one();
    Ok(EndoCheck {
        holds: lhs == u,
        u,
        d,
        common_iterate,
    })
}

/// Image of ω = (t + √D)/2 in the quaternions: t/2 + (B·i + C·j + E·k)/2
/// with B² + C² + E² = |D| when such integers exist, else t/2 + (√|D|/2)·i.
pub fn omega_quaternion(disc: i64) -> Result<Quaternion> {
    let (t, _) = order_params(disc)?;
    let m = disc.unsigned_abs() as i64;
    let half = |v: i64| AlgebraicReal::from_rat(rat(v, 2));
    let root = |v: i64| (v as f64).sqrt() as i64 + 1;
    for b in (0..=root(m)).rev() {
        let rest = m - b * b;
        if rest < 0 {
            continue;
        }
        for c in (0..=root(rest)).rev() {
            let e2 = rest - c * c;
            if e2 < 0 {
                continue;
            }
            let e = (e2 as f64).sqrt().round() as i64;
            if e * e == e2 {
                return Ok(Quaternion::new(half(t), half(b), half(c), half(e)));
            }
        }
    }
    let s = AlgebraicReal::sqrt_int(m).mul(&AlgebraicReal::from_rat(rat(1, 2)));
    Ok(Quaternion::new(half(t), s, AlgebraicReal::zero(), AlgebraicReal::zero()))
}

pub fn order_to_quaternion(z: &QuadOrderElem) -> Result<Quaternion> {
    let w = omega_quaternion(z.disc)?;
    let x = AlgebraicReal::from_rat(Rat::from_integer(z.x.clone()));
    let y = AlgebraicReal::from_rat(Rat::from_integer(z.y.clone()));
    Ok(Quaternion::real(x).add(&w.scale(&y)))
}

#[derive(Clone, Debug)]
pub enum BridgeOutcome {
    CommonIterate { u: QuadOrderElem, d: BigInt },
    Instance { u: QuadOrderElem, d: BigInt, instance: Box<UnitEquationInstance> },
}

/// h^n·(u + d)u⁻¹ − f^m·d·u⁻¹ = 1 as a unit equation with a = b = 1,
/// a' = (u + d)u⁻¹, b' = −d·u⁻¹, Γ₁ = ⟨h⟩, Γ₂ = ⟨f⟩.
pub fn dynamics_to_unit_equation(f: &QuadOrderElem, h: &QuadOrderElem, m0: u32, n0: u32) -> Result<BridgeOutcome> {
    let (u, d) = unit_data(f, h, m0, n0)?;
    if u.is_zero() {
        return Ok(BridgeOutcome::CommonIterate { u, d });
    }
    let uq = order_to_quaternion(&u)?;
    let dq = Quaternion::real(AlgebraicReal::from_rat(Rat::from_integer(d.clone())));
    let u_inv = uq.inv()?;
    let instance = UnitEquationInstance {
        a: Quaternion::one(),
        a_p: uq.add(&dq).mul(&u_inv),
        b: Quaternion::one(),
        b_p: dq.neg().mul(&u_inv),
        gamma1: SemigroupSpec::with_labels(vec![order_to_quaternion(h)?], vec!["h".into()]),
        gamma2: SemigroupSpec::with_labels(vec![order_to_quaternion(f)?], vec!["f".into()]),
    };
    Ok(BridgeOutcome::Instance {
        u,
        d,
        instance: Box::new(instance),
    })
}
