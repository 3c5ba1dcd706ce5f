//! Small exact integer helpers shared by the grid and quasigroup code.

use num_integer::Integer;

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub(crate) fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

/// Returns `(g, s, t)` with `g = s·a + t·b = gcd(a, b) ≥ 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Remainder in `[0, m)`; `m` must be positive.
pub(crate) fn modp(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

/// Solves `x ≡ a1 (mod m1)`, `x ≡ a2 (mod m2)` for positive moduli.
/// Returns the solution in `[0, lcm)` together with the lcm.
pub(crate) fn crt(a1: i128, m1: i128, a2: i128, m2: i128) -> Option<(i128, i128)> {
    let (g, s, _) = ext_gcd(m1, m2);
    let diff = a2 - a1;
    if diff % g != 0 {
        return None;
    }
    let l = m1 / g * m2;
    // x = a1 + m1 * k with m1*k ≡ diff (mod m2)  =>  k ≡ s * diff/g (mod m2/g)
    let step = m2 / g;
    let k = modp(s % step * modp(diff / g, step), step);
    Some((modp(a1 + m1 * k, l), l))
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of a unit `a` modulo `m ≥ 2`.
pub(crate) fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}
