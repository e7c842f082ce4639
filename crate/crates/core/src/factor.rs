//! Integer factorization: trial division, Miller–Rabin, Pollard rho.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_LIMIT: u32 = 1000;
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Prime factorization of `n > 0` as `prime → exponent`. `factorize(1)` is empty.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for p in 2..SMALL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = split(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

/// Miller–Rabin with the first thirteen prime bases; deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &WITNESSES {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial divisor of an odd composite `n` (Brent's variant of Pollard rho).
fn split(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..r.min(128).min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// `v_p(n)` for small `p`, used by tests.
pub fn valuation_u64(n: u64, p: u64) -> u32 {
    let mut n = n;
    let mut k = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Product of the factorization, to check it.
pub fn expand(f: &BTreeMap<BigUint, u32>) -> BigUint {
    f.iter().fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
}

/// Convenience for small inputs.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    factorize(&BigUint::from(n)).into_iter().map(|(p, e)| (p.to_u64().expect("fits"), e)).collect()
}
