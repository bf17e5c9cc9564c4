use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Int;
use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
const RHO_SEED: u64 = 0x5eed_0f_7a11;

// Deterministic for every n < 3.3 * 10^24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p`, zero when `p` does not occur.
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Int {
        self.factors
            .iter()
            .fold(Int::one(), |acc, &(p, e)| acc * num_traits::pow(Int::from(p), e as usize))
    }

    fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary integer. Exact below `3.3 * 10^24`; above that the
/// fixed-base Miller-Rabin answer is a strong probable-prime verdict.
pub fn is_prime(n: &Int) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor of the odd
/// composite `n`.
fn pollard_brent(n: u64, rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let m = 64u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn split_into(n: u64, out: &mut Vec<u64>, rng: &mut ChaCha8Rng) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let g = pollard_brent(n, rng);
    split_into(g, out, rng);
    split_into(n / g, out, rng);
}

/// Factors `n >= 2`: trial division up to `10^6`, then seeded Pollard-Brent
/// with Miller-Rabin certification of every prime.
pub fn factor_u64(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Domain(format!("factor requires n >= 2, got {n}")));
    }
    let mut primes = Vec::new();
    let mut m = n;
    while m % 2 == 0 {
        primes.push(2);
        m /= 2;
    }
    let mut q = 3u64;
    while q <= TRIAL_LIMIT && q * q <= m {
        while m % q == 0 {
            primes.push(q);
            m /= q;
        }
        q += 2;
    }
    if m > 1 {
        if q * q > m {
            primes.push(m);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
            split_into(m, &mut primes, &mut rng);
        }
    }
    Ok(Factorization::from_primes(primes))
}

/// Factors an arbitrary-precision `n >= 2` whose size is within 64 bits.
pub fn factor(n: &Int) -> Result<Factorization> {
    if *n < BigInt::from(2) {
        return Err(Error::Domain(format!("factor requires n >= 2, got {n}")));
    }
    match n.to_u64() {
        Some(small) => factor_u64(small),
        None => Err(Error::Unsupported(format!(
            "factorization beyond 64-bit inputs: {n}"
        ))),
    }
}
