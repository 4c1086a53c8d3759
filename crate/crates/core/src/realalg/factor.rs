//! Factorisation of integer polynomials into irreducibles over ℚ.
//!
//! Zassenhaus: factor modulo a small prime (distinct-degree then
//! Cantor–Zassenhaus equal-degree splitting), Hensel-lift to a modulus above
//! the Mignotte-style coefficient bound, then recombine modular factors by
//! trial division over ℤ.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::IntPoly;

/// Distinct irreducible factors of `f` (multiplicities and content dropped),
/// each primitive with positive leading coefficient, in canonical order.
pub fn irreducible_factors(f: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let sf = f.squarefree_part();
    factor_squarefree(sf, &mut out);
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out.dedup();
    out
}

fn factor_squarefree(f: IntPoly, out: &mut Vec<IntPoly>) {
    if f.degree() == 0 {
        return;
    }
    if f.degree() == 1 {
        out.push(f.primitive());
        return;
    }
    if f.coeff(0).is_zero() {
        out.push(IntPoly::from_i64s(&[0, 1]));
        let rest = IntPoly::new(f.coeffs()[1..].to_vec());
        factor_squarefree(rest, out);
        return;
    }
    if f.degree() == 2 {
        factor_quadratic(&f, out);
        return;
    }
    zassenhaus(&f, out);
}

fn factor_quadratic(f: &IntPoly, out: &mut Vec<IntPoly>) {
    let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if !disc.is_negative() {
        let s = disc.sqrt();
        if &s * &s == disc {
            // roots (-b ± s) / 2a
            let two_a = BigInt::from(2) * &a;
            for root_num in [-&b + &s, -&b - &s] {
                out.push(IntPoly::new(vec![-root_num, two_a.clone()]).primitive());
            }
            return;
        }
    }
    out.push(f.primitive());
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31, coefficients low to high.

type Fp = Vec<u64>;

fn fp_norm(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_deg(a: &Fp) -> usize {
    a.len().saturating_sub(1)
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_norm(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_norm(out)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = fp_deg(b);
    let inv = fp_inv(*b.last().expect("nonzero divisor"), p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), fp_norm(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    (fp_norm(q), fp_norm(r))
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = fp_inv(lc, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns (s, t) with s·a + t·b = 1 when gcd(a, b) = 1.
fn fp_ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = fp_inv(*r0.last().expect("nonzero gcd"), p);
    let scale = |v: &Fp| fp_norm(v.iter().map(|&c| c * inv % p).collect());
    (scale(&s0), scale(&t0))
}

fn fp_powmod(base: &Fp, exp: &BigUint, modulus: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let b = fp_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = fp_rem(&fp_mul(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = fp_rem(&fp_mul(&result, &b, p), modulus, p);
        }
    }
    result
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    fp_norm(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn reduce_mod_p(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_norm(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pexp = BigUint::from(p);
    let mut i = 1;
    while fp_deg(&rest) >= 2 * i {
        h = fp_powmod(&h, &pexp, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if fp_deg(&g) > 0 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_rem(&h, &rest, p);
            out.push((g, i));
        }
        i += 1;
    }
    if fp_deg(&rest) > 0 {
        let d = fp_deg(&rest);
        out.push((fp_monic(&rest, p), d));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), odd p.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = fp_deg(f);
    if n == d {
        out.push(fp_monic(f, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = fp_norm((0..n).map(|_| rng.gen_range(0..p)).collect());
        if fp_deg(&a) == 0 {
            continue;
        }
        let g = fp_gcd(&a, f, p);
        let split = if fp_deg(&g) > 0 && fp_deg(&g) < n {
            Some(g)
        } else {
            let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
            let g = fp_gcd(&b, f, p);
            (fp_deg(&g) > 0 && fp_deg(&g) < n).then_some(g)
        };
        if let Some(g) = split {
            let h = fp_divrem(f, &g, p).0;
            edf(&g, d, p, rng, out);
            edf(&h, d, p, rng, out);
            return;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((fp_deg(f) as u64) << 32));
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        edf(&g, d, p, &mut rng, &mut out);
    }
    out
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over ℤ/mℤ with BigInt coefficients, for Hensel lifting.

type Zm = Vec<BigInt>;

fn zm_norm(mut a: Zm, m: &BigInt) -> Zm {
    for c in a.iter_mut() {
        *c = c.mod_floor(m);
    }
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zm_add(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zm_sub(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zm_mul(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_norm(out, m)
}

/// Division by a polynomial whose leading coefficient is a unit mod m.
fn zm_divrem(a: &Zm, b: &Zm, m: &BigInt) -> (Zm, Zm) {
    let db = b.len() - 1;
    let lc_inv = b[db]
        .modinv(m)
        .expect("leading coefficient must be a unit");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), zm_norm(r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = (&r[i + db] * &lc_inv).mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (zm_norm(q, m), zm_norm(r, m))
}

fn to_zm(f: &Fp) -> Zm {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from f ≡ g·h (mod m), s·g + t·h ≡ 1 (mod m),
/// h monic, to the same relations modulo m².
fn hensel_step(f: &Zm, g: &Zm, h: &Zm, s: &Zm, t: &Zm, m: &BigInt) -> (Zm, Zm, Zm, Zm) {
    let m2 = m * m;
    let e = zm_sub(&zm_norm(f.clone(), &m2), &zm_mul(g, h, &m2), &m2);
    let (q, r) = zm_divrem(&zm_mul(s, &e, &m2), h, &m2);
    let g1 = zm_add(&zm_add(g, &zm_mul(t, &e, &m2), &m2), &zm_mul(&q, g, &m2), &m2);
    let h1 = zm_add(h, &r, &m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g1, &m2), &zm_mul(t, &h1, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = zm_divrem(&zm_mul(s, &b, &m2), &h1, &m2);
    let s1 = zm_sub(s, &d, &m2);
    let t1 = zm_sub(&zm_sub(t, &zm_mul(t, &b, &m2), &m2), &zm_mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lifts f ≡ lc(f)·Π u_i (mod p) to monic factors modulo `modulus`.
fn multi_lift(f: &Zm, us: &[Fp], p: u64, modulus: &BigInt, out: &mut Vec<Zm>) {
    let pb = BigInt::from(p);
    let fm = zm_norm(f.clone(), modulus);
    let lc = fm.last().expect("nonzero").clone();
    if us.len() == 1 {
        let inv = lc.modinv(modulus).expect("unit leading coefficient");
        out.push(zm_norm(fm.iter().map(|c| c * &inv).collect(), modulus));
        return;
    }
    let lc_p = lc.mod_floor(&pb).to_u64().expect("small");
    let g0: Fp = fp_norm(us[0].iter().map(|&c| c * lc_p % p).collect());
    let h0: Fp = us[1..]
        .iter()
        .fold(vec![1u64], |acc, u| fp_mul(&acc, u, p));
    let (s0, t0) = fp_ext_gcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (to_zm(&g0), to_zm(&h0), to_zm(&s0), to_zm(&t0));
    let mut m = pb.clone();
    while &m < modulus {
        let next = hensel_step(&fm, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let g = zm_norm(g, modulus);
    let h = zm_norm(h, modulus);
    let glc = g.last().expect("nonzero").clone();
    let inv = glc.modinv(modulus).expect("unit");
    out.push(zm_norm(g.iter().map(|c| c * &inv).collect(), modulus));
    multi_lift(&h, &us[1..], p, modulus, out);
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zassenhaus(f: &IntPoly, out: &mut Vec<IntPoly>) {
    let n = f.degree();
    let lc = f.leading();

    // Pick the prime (among the first few usable ones) with fewest modular factors.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_small_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp_deg(&fp) != n {
            continue;
        }
        if fp_deg(&fp_gcd(&fp, &fp_deriv(&fp, p), p)) != 0 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp_monic(&fp, p), p);
        if facs.len() == 1 {
            out.push(f.primitive());
            return;
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("some prime is usable for a squarefree polynomial");

    // Coefficients of any factor g of f obey |g_j| <= 2^deg(g)·M(f) <= 2^n·||f||_2.
    let norm = f.norm2_sq().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }

    let mut lifted = Vec::new();
    multi_lift(&f.coeffs().to_vec(), &facs, p, &modulus, &mut lifted);

    let mut rest = f.clone();
    let mut pool: Vec<Zm> = lifted;
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc_rest = rest.leading();
            let mut g: Zm = vec![lc_rest.mod_floor(&modulus)];
            for &i in &combo {
                g = zm_mul(&g, &pool[i], &modulus);
            }
            let cand = IntPoly::new(g.iter().map(|c| symmetric(c, &modulus)).collect()).primitive();
            if cand.degree() > 0 {
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q;
                    for &i in combo.iter().rev() {
                        pool.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.degree() > 0 {
        out.push(rest.primitive());
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[allow(dead_code)]
fn sign_positive(x: &BigInt) -> bool {
    x.sign() == Sign::Plus
}
