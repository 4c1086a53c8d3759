//! Arithmetic in 𝔽_p for word-sized primes.

pub(crate) fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// a⁻¹ for a ≠ 0 and p prime.
pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// Reduces a signed integer into [0, p).
pub(crate) fn reduce(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

pub(crate) fn is_square(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || pow(a, (p - 1) / 2, p) == 1
}

/// Tonelli–Shanks; returns the root in [0, p/2] when one exists.
pub(crate) fn sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if !is_square(a, p) {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| !is_square(z, p)).expect("p is an odd prime");
    let (mut m, mut c, mut t, mut r) = (s, pow(z, q, p), pow(a, q, p), pow(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2, p);
            i += 1;
        }
        let b = pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b, p);
        t = mul(t, c, p);
        r = mul(r, b, p);
    }
    Some(r.min(p - r))
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
