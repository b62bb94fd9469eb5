//! Unit-ball volumes ω_k and integer combinatorics.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Scalar;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// n!! with (−1)!! = 0!! = 1. Panics below −1.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n}");
    let mut r = BigInt::one();
    let mut i = n;
    while i > 1 {
        r *= i;
        i -= 2;
    }
    r
}

/// C(n, k), zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn factorial_s(n: u32) -> Scalar {
    Scalar::from_bigint(factorial(n))
}

pub fn double_factorial_s(n: i64) -> Scalar {
    Scalar::from_bigint(double_factorial(n))
}

pub fn binomial_s(n: i64, k: i64) -> Scalar {
    Scalar::from_bigint(binomial(n, k))
}

fn table() -> &'static RwLock<HashMap<u32, Scalar>> {
    static T: OnceLock<RwLock<HashMap<u32, Scalar>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

fn omega_uncached(k: u32) -> Scalar {
    let j = k / 2;
    let pi_j = Scalar::pi().powi(j as i32);
    if k.is_multiple_of(2) {
        pi_j / factorial_s(j)
    } else {
        let two = Scalar::from_bigint(BigInt::from(2).pow(j + 1));
        two * pi_j / double_factorial_s(2 * j as i64 + 1)
    }
}

/// Volume of the k-dimensional unit ball, with π̂ formal.
pub fn omega(k: u32) -> Scalar {
    if let Some(v) = table().read().expect("omega table").get(&k) {
        return v.clone();
    }
    let v = omega_uncached(k);
    table()
        .write()
        .expect("omega table")
        .entry(k)
        .or_insert(v)
        .clone()
}

/// ω_a / ω_b.
pub fn omega_ratio(a: u32, b: u32) -> Scalar {
    omega(a) / omega(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(omega(0), Scalar::one());
        assert_eq!(omega(1), Scalar::from_int(2));
        assert_eq!(omega(2), Scalar::pi());
        assert_eq!(omega(3), Scalar::ratio(4, 3) * Scalar::pi());
        assert_eq!(omega(5), Scalar::ratio(8, 15) * Scalar::pi().powi(2));
    }

    #[test]
    fn recursion_in_dimension() {
        let two_pi = Scalar::from_int(2) * Scalar::pi();
        for k in 2..20u32 {
            assert_eq!(Scalar::from_int(k as i64) * omega(k), &two_pi * &omega(k - 2));
        }
    }

    #[test]
    fn combinatorics() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
    }
}
