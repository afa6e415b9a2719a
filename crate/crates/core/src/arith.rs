//! Small number-theoretic helpers on machine integers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
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

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(q, a)` when `n = q^a` with `q` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factor(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Extended gcd on signed integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd((a % m) as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Least primitive root modulo an odd prime or 2.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let f = factor(phi);
    (2..p)
        .find(|&g| f.iter().all(|&(q, _)| mod_pow(g, phi / q, p) != 1))
        .expect("prime modulus has a primitive root")
}

/// Multiplicative order of `a` modulo `m`, for a unit `a`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// Legendre symbol test: whether `a` is a nonzero square modulo the odd prime `p`.
pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let a = a % p;
    a != 0 && mod_pow(a, (p - 1) / 2, p) == 1
}

pub fn num_divisors(n: u64) -> u64 {
    factor(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_primes() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(7) && !is_prime(9));
        assert_eq!(num_divisors(15), 4);
        assert_eq!(num_divisors(9), 3);
    }

    #[test]
    fn inverses_and_roots() {
        for m in 2..40u64 {
            for a in 0..m {
                match mod_inv(a, m) {
                    Some(x) => assert_eq!(a * x % m, 1 % m),
                    None => assert!(gcd(a, m) != 1),
                }
            }
        }
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(mult_order(primitive_root(p), p), p - 1);
        }
        assert!(is_quadratic_residue(1, 3));
        assert!(!is_quadratic_residue(2, 5));
        assert!(!is_quadratic_residue(3, 7));
        assert!(is_quadratic_residue(2, 7));
    }
}
