//! Small integer helpers shared by the group and field code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Splits `n = p^a * r` with `p` not dividing `r`; returns `(a, p^a, r)`.
pub fn split_prime_power(n: u64, p: u64) -> (u32, u64, u64) {
    let mut a = 0;
    let mut pa = 1;
    let mut r = n;
    while r.is_multiple_of(p) {
        r /= p;
        pa *= p;
        a += 1;
    }
    (a, pa, r)
}

/// Least `d >= 1` with `p^d = 1 (mod m)`. Requires `gcd(p, m) = 1`.
pub fn multiplicative_order(p: u64, m: u64) -> u32 {
    if m == 1 {
        return 1;
    }
    let mut acc = p % m;
    let mut d = 1;
    while acc != 1 {
        acc = acc * (p % m) % m;
        d += 1;
    }
    d
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `log_p(n)` when `n` is a power of `p`.
pub fn exact_log(n: u64, p: u64) -> Option<u32> {
    let (a, _, r) = split_prime_power(n, p);
    (r == 1).then_some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(7, 6), 1);
        assert_eq!(multiplicative_order(5, 6), 2);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 8), None);
        assert_eq!(split_prime_power(360, 2), (3, 8, 45));
        assert_eq!(prime_divisors(2520), vec![2, 3, 5, 7]);
        assert_eq!(exact_log(125, 5), Some(3));
        assert_eq!(exact_log(12, 2), None);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
