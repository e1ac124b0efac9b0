//! Small-integer number theory used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Degree of `Q(ζ_n)^+` over `Q`, with the convention that `n ∈ {1, 2}` gives 1.
pub fn real_cyclotomic_degree(n: u64) -> usize {
    if n <= 2 {
        1
    } else {
        (totient(n) / 2) as usize
    }
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

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
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
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..)
        .take_while(|d| d * d <= n)
        .filter(|d| n % d == 0)
        .flat_map(|d| if d * d == n { vec![d] } else { vec![d, n / d] })
        .collect();
    out.sort_unstable();
    out
}

/// The largest divisor of `n` coprime to `ell`.
pub fn prime_to_part(mut n: u64, ell: u64) -> u64 {
    while n % ell == 0 {
        n /= ell;
    }
    n
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Modular inverse for prime modulus.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

/// Reduce a signed integer into `[0, m)`.
pub fn rem_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn rem_big(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    r.to_u64().expect("remainder fits")
}

/// Legendre symbol `(a/p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Multiplicative order of `a` modulo `n` up to sign: the least `f ≥ 1` with
/// `a^f ≡ ±1 (mod n)`. This is the residue degree of an unramified prime `a`
/// in `Q(ζ_n)^+`.
pub fn order_up_to_sign(a: u64, n: u64) -> u32 {
    if n <= 2 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut f = 1;
    while x != 1 && x != n - 1 {
        x = x * a % n;
        f += 1;
        assert!(f as u64 <= n, "{a} is not a unit mod {n}");
    }
    f
}

/// Prime divisors of a big integer found by trial division up to `bound`,
/// and the remaining cofactor (1 when fully factored).
pub fn trial_factor_big(n: &BigInt, bound: u64) -> (Vec<u64>, BigInt) {
    let mut m = n.abs();
    let mut primes = Vec::new();
    if m.is_zero() {
        return (primes, m);
    }
    for p in primes_up_to(bound) {
        let bp = BigInt::from(p);
        if (&m % &bp).is_zero() {
            primes.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        if m.is_one() {
            break;
        }
        if &bp * &bp > m {
            // every prime factor of m exceeds p, so m is prime
            if let Some(v) = m.to_u64() {
                primes.push(v);
                m = BigInt::one();
            }
            break;
        }
    }
    (primes, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_degree() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(49), 42);
        assert_eq!(real_cyclotomic_degree(2), 1);
        assert_eq!(real_cyclotomic_degree(10), 2);
        assert_eq!(real_cyclotomic_degree(15), 4);
    }

    #[test]
    fn residue_degrees() {
        assert_eq!(order_up_to_sign(7, 10), 2);
        assert_eq!(order_up_to_sign(11, 10), 1);
        assert_eq!(order_up_to_sign(19, 10), 1);
        assert_eq!(order_up_to_sign(2, 7), 3);
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(14, 7), 0);
    }

    #[test]
    fn big_trial_factoring() {
        let n = BigInt::from(-864);
        let (ps, rest) = trial_factor_big(&n, 1000);
        assert_eq!(ps, vec![2, 3]);
        assert!(rest.is_one());
        let (ps, rest) = trial_factor_big(&BigInt::from(2u64 * 1_000_003), 100);
        assert_eq!(ps, vec![2]);
        assert_eq!(rest, BigInt::from(1_000_003));
        let (ps, rest) = trial_factor_big(&BigInt::from(2u64 * 1_000_003), 1100);
        assert_eq!(ps, vec![2, 1_000_003]);
        assert!(rest.is_one());
    }

    #[test]
    fn prime_to_parts() {
        assert_eq!(prime_to_part(10, 5), 2);
        assert_eq!(prime_to_part(45, 3), 5);
        assert_eq!(prime_to_part(7, 3), 7);
    }
}
