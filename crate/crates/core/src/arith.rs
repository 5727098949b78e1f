//! Euler's totient and the Möbius function: a linear sieve, brute-force
//! oracles, and the divisor-sum identities tying them together.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Which arithmetic function weights a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Totient,
    Moebius,
}

impl Weight {
    pub fn name(self) -> &'static str {
        match self {
            Weight::Totient => "totient",
            Weight::Moebius => "moebius",
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "totient" | "phi" => Ok(Weight::Totient),
            "moebius" | "mobius" | "mu" => Ok(Weight::Moebius),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// Sieved `φ(n)`, `μ(n)` and smallest prime factors for `1 ≤ n ≤ limit`.
/// Index 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithFnTable {
    limit: usize,
    totient: Vec<u64>,
    moebius: Vec<i8>,
    smallest_prime_factor: Vec<usize>,
}

fn try_zeroed<T: Clone>(len: usize, fill: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Resource {
        requested_bytes: len as u128 * core::mem::size_of::<T>() as u128,
    })?;
    v.resize(len, fill);
    Ok(v)
}

impl ArithFnTable {
    /// Linear sieve over `1..=limit` in O(limit) steps.
    pub fn build(limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain("sieve limit must be at least 1"));
        }
        let len = limit.checked_add(1).ok_or(Error::Resource {
            requested_bytes: u128::MAX,
        })?;
        let per_entry = (core::mem::size_of::<u64>()
            + core::mem::size_of::<i8>()
            + core::mem::size_of::<usize>()) as u128;
        if len as u128 * per_entry > isize::MAX as u128 {
            return Err(Error::Resource {
                requested_bytes: len as u128 * per_entry,
            });
        }
        let mut totient = try_zeroed(len, 0u64)?;
        let mut moebius = try_zeroed(len, 0i8)?;
        let mut spf = try_zeroed(len, 0usize)?;
        let mut primes: Vec<usize> = Vec::new();

        totient[1] = 1;
        moebius[1] = 1;
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i;
                totient[i] = i as u64 - 1;
                moebius[i] = -1;
                primes.push(i);
            }
            for &p in &primes {
                if p > spf[i] || p > limit / i {
                    break;
                }
                let m = i * p;
                spf[m] = p;
                if p == spf[i] {
                    totient[m] = totient[i] * p as u64;
                    moebius[m] = 0;
                } else {
                    totient[m] = totient[i] * (p as u64 - 1);
                    moebius[m] = -moebius[i];
                }
            }
        }
        Ok(ArithFnTable {
            limit,
            totient,
            moebius,
            smallest_prime_factor: spf,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn index(&self, n: usize) -> Result<usize> {
        if n == 0 || n > self.limit {
            return Err(Error::TableTooSmall {
                required: n,
                limit: self.limit,
            });
        }
        Ok(n)
    }

    pub fn totient(&self, n: usize) -> Result<u64> {
        self.index(n).map(|n| self.totient[n])
    }

    pub fn moebius(&self, n: usize) -> Result<i8> {
        self.index(n).map(|n| self.moebius[n])
    }

    /// `None` for `n = 1`.
    pub fn smallest_prime_factor(&self, n: usize) -> Result<Option<usize>> {
        self.index(n).map(|n| (n >= 2).then(|| self.smallest_prime_factor[n]))
    }

    pub fn weight(&self, weight: Weight, n: usize) -> Result<i64> {
        match weight {
            Weight::Totient => self.totient(n).map(|v| v as i64),
            Weight::Moebius => self.moebius(n).map(i64::from),
        }
    }

    /// Prime factorization as `(p, e)` pairs in increasing `p`.
    pub fn factorize(&self, n: usize) -> Result<Vec<(usize, u32)>> {
        let mut n = self.index(n)?;
        let mut out: Vec<(usize, u32)> = Vec::new();
        while n > 1 {
            let p = self.smallest_prime_factor[n];
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p;
        }
        Ok(out)
    }

    /// All positive divisors of `n`, ascending.
    pub fn divisors(&self, n: usize) -> Result<Vec<usize>> {
        let mut divs = vec![1usize];
        for (p, e) in self.factorize(n)? {
            let base = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for j in 0..base {
                    divs.push(divs[j] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }

    /// `Σ_{d|n} φ(d)`, which equals `n`.
    pub fn divisor_sum_totient(&self, n: usize) -> Result<u64> {
        self.divisors(n)?.into_iter().map(|d| self.totient(d)).sum()
    }

    /// `Σ_{d|n} μ(d)`, which is 1 at `n = 1` and 0 otherwise.
    pub fn divisor_sum_moebius(&self, n: usize) -> Result<i64> {
        self.divisors(n)?
            .into_iter()
            .map(|d| self.moebius(d).map(i64::from))
            .sum()
    }

    /// `n · Σ_{d|n} μ(d)/d`, evaluated as `Σ μ(d)·(n/d)` in integers.
    pub fn totient_via_moebius(&self, n: usize) -> Result<u64> {
        let total: i64 = self
            .divisors(n)?
            .into_iter()
            .map(|d| self.moebius(d).map(|mu| i64::from(mu) * (n / d) as i64))
            .sum::<Result<i64>>()?;
        Ok(total as u64)
    }

    /// Copy of the table with `μ(n)` replaced; used for mutation testing.
    pub fn with_moebius_override(&self, n: usize, value: i8) -> Result<Self> {
        let n = self.index(n)?;
        let mut t = self.clone();
        t.moebius[n] = value;
        Ok(t)
    }

    /// Copy of the table with `φ(n)` replaced; used for mutation testing.
    pub fn with_totient_override(&self, n: usize, value: u64) -> Result<Self> {
        let n = self.index(n)?;
        let mut t = self.clone();
        t.totient[n] = value;
        Ok(t)
    }
}

/// Counts `1 ≤ m ≤ n` with `gcd(m, n) = 1`, so `φ(1) = 1`.
pub fn brute_totient(n: u64) -> u64 {
    (1..=n).filter(|&m| m.gcd(&n) == 1).count() as u64
}

/// Trial factorization: 0 on a repeated prime, else `(−1)^(number of primes)`.
pub fn brute_moebius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
