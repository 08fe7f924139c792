//! Binomial coefficients and subset enumeration helpers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Pascal's triangle up to row `max_n`, as exact big integers.
#[derive(Debug, Clone)]
pub struct Binomials {
    rows: Vec<Vec<BigUint>>,
}

impl Binomials {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    /// `C(n, k)`, zero when `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            BigUint::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn get_ref(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    /// `Σ_{x = lo}^{n} C(n, x)`.
    pub fn tail(&self, n: usize, lo: usize) -> BigUint {
        if lo > n {
            return BigUint::zero();
        }
        self.rows[n][lo..].iter().sum()
    }
}

/// `C(n, k)` in saturating `u128` arithmetic, for cap checks.
pub fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the size-`k` subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
