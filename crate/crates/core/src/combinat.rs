//! Exact binomials, factorials and Fuss–Catalan numbers.

use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

thread_local! {
    static PASCAL: RefCell<Vec<Vec<BigInt>>> = RefCell::new(vec![vec![BigInt::one()]]);
}

/// `C(n, k)` for integer `n` (negative allowed, via the upper-negation rule) and `k`.
/// Returns zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        // C(n, k) = (-1)^k C(k - n - 1, k)
        let c = binomial(k - n - 1, k);
        return if k % 2 == 0 { c } else { -c };
    }
    if k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    PASCAL.with(|rows| {
        let mut rows = rows.borrow_mut();
        while rows.len() <= n {
            let prev = rows.last().unwrap();
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(BigInt::one());
            for w in prev.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            rows.push(next);
        }
        rows[n][k].clone()
    })
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of m-Dyck paths of size n: `C((m+1)n, n) / (mn + 1)`.
pub fn fuss_catalan(m: u32, n: u32) -> BigUint {
    let (m, n) = (m as i64, n as i64);
    let c = binomial((m + 1) * n, n);
    let q = c / BigInt::from(m * n + 1);
    q.to_biguint().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::one());
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn fuss_catalan_values() {
        let catalan: Vec<u32> = (0..8).map(|n| fuss_catalan(1, n).try_into().unwrap()).collect();
        assert_eq!(catalan, [1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(fuss_catalan(2, 3), BigUint::from(12u32));
    }
}
