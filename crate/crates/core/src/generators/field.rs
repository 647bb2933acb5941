//! Arithmetic in prime fields.

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Smallest generator of `F_q^*`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1))
        .expect("prime fields have primitive roots")
}

/// The multiplicative subgroup of `F_q^*` of the given order, sorted.
pub fn subgroup(q: u64, size: u64) -> Vec<u64> {
    let h = pow_mod(primitive_root(q), (q - 1) / size, q);
    let mut out: Vec<u64> = std::iter::successors(Some(1u64), |&x| Some(x * h % q)).take(size as usize).collect();
    out.sort_unstable();
    out
}
