//! Small number-theory helpers: divisors, Euler's totient, prime powers.

use num_integer::Integer;

/// Prime factorization by trial division, as `(prime, multiplicity)` pairs in
/// ascending order. `factorize(1)` is empty.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n >= 1, "divisors(0)");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient via the product formula over the prime factorization.
pub fn totient(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Euler's totient by counting `1 <= k <= n` with `gcd(k, n) = 1`.
pub fn totient_by_count(n: usize) -> usize {
    assert!(n >= 1);
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some((p, s))` when `n = p^s` with `p` prime and `s >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    match factorize(n).as_slice() {
        &[(p, s)] => Some((p, s)),
        _ => None,
    }
}
