//! Small integer helpers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    for p in prime_factors(n) {
        m /= p;
        if m % p == 0 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Non-negative residue of `a` modulo `n`.
pub fn modulo(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % n as u128) as u64;
        }
        base = (base as u128 * base as u128 % n as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: i64, n: u64) -> Option<u64> {
    let a = modulo(a, n) as i64;
    let e = a.extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| modulo(e.x, n))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
