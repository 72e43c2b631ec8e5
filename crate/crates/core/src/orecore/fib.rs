//! The Fibonacci conjugation α(x) = y, α(y) = x + y: α^n(x) = a_{n−1}x + a_n·y.

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

type M2 = [[BigUint; 2]; 2];

fn mat_mul(a: &M2, b: &M2, modulus: &Option<BigUint>) -> M2 {
    let cell = |i: usize, j: usize| {
        let v = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        match modulus {
            Some(m) => v % m,
            None => v,
        }
    };
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// (a_{n−1}, a_n) reduced modulo `modulus` (0 means exact), with a_0 = 0, a_1 = 1, a_{−1} = 1.
pub fn fib_power(n: u64, modulus: u64) -> (BigUint, BigUint) {
    let m = (modulus != 0).then(|| BigUint::from(modulus));
    let one = || BigUint::one();
    let zero = || BigUint::zero();
    let mut result: M2 = [[one(), zero()], [zero(), one()]];
    let mut base: M2 = [[zero(), one()], [one(), one()]];
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul(&result, &base, &m);
        }
        base = mat_mul(&base, &base, &m);
        k >>= 1;
    }
    // [[0,1],[1,1]]^n = [[a_{n−1}, a_n], [a_n, a_{n+1}]]
    let [[a_prev, a_n], _] = result;
    let red = |v: BigUint| match &m {
        Some(q) => v % q,
        None => v,
    };
    (red(a_prev), red(a_n))
}

/// Least n ≥ 1 with α^n the identity on span{x, y} over Z/modulus (the Pisano period).
pub fn order_of_alpha(modulus: u64) -> Order {
    if modulus == 0 {
        return Order::Infinite;
    }
    if modulus == 1 {
        return Order::Finite(1);
    }
    let (mut a, mut b) = (1 % modulus, 1 % modulus); // (a_1, a_2)
    let mut n = 1u64;
    loop {
        // (a, b) = (a_n, a_{n+1}); α^n = id iff a_n ≡ 0 and a_{n+1} ≡ 1
        if a == 0 && b == 1 {
            return Order::Finite(n);
        }
        let c = (a + b) % modulus;
        a = b;
        b = c;
        n += 1;
        if n > 6 * modulus + 6 {
            unreachable!("Pisano periods are bounded by 6m");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_powers() {
        assert_eq!(fib_power(2, 0), (BigUint::one(), BigUint::one()));
        assert_eq!(fib_power(10, 0), (BigUint::from(34u32), BigUint::from(55u32)));
        assert_eq!(fib_power(0, 0), (BigUint::one(), BigUint::zero()));
        assert_eq!(fib_power(10, 7), (BigUint::from(6u32), BigUint::from(6u32)));
    }

    #[test]
    fn orders() {
        assert_eq!(order_of_alpha(2), Order::Finite(3));
        assert_eq!(order_of_alpha(10), Order::Finite(60));
        assert_eq!(order_of_alpha(0), Order::Infinite);
    }
}
