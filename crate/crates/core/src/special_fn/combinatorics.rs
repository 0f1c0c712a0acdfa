//! Exact integer combinatorics: Stirling numbers of the second kind and the
//! g-coefficients of the iterated operator `(x d/dx)^s 1/(x-1)`.
//!
//! Values are held as arbitrary-precision integers. The `u128` accessors
//! report [`Error::Overflow`] instead of wrapping.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default largest `n` held by [`StirlingTable::default`].
pub const DEFAULT_MAX_N: usize = 64;

/// Triangular table of Stirling numbers of the second kind `{n, k}` for
/// `0 <= k <= n <= max_n`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                // {n,k} = k{n-1,k} + {n-1,k-1}
                let stay = if k < n { &prev[k] * BigUint::from(k) } else { BigUint::zero() };
                row[k] = stay + &prev[k - 1];
            }
            rows.push(row);
        }
        Self { max_n, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Exact `{n, k}`; zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Result<BigUint> {
        if n > self.max_n {
            return Err(Error::Range { index: n, bound: self.max_n });
        }
        Ok(self.rows[n].get(k).cloned().unwrap_or_default())
    }
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_N)
    }
}

fn shared_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(StirlingTable::default)
}

fn to_u128(value: BigUint, what: impl FnOnce() -> String) -> Result<u128> {
    value.to_u128().ok_or_else(|| Error::Overflow(what()))
}

/// Stirling number of the second kind `{n, k}` from the shared table
/// (`n <= 64`).
pub fn stirling2(n: usize, k: usize) -> Result<u128> {
    let v = shared_table().get(n, k)?;
    to_u128(v, || format!("stirling2({n}, {k})"))
}

/// Arbitrary-precision `{n, k}`, not limited by the shared table.
pub fn stirling2_big(n: usize, k: usize) -> BigUint {
    if n <= shared_table().max_n() {
        return shared_table().get(n, k).unwrap_or_default();
    }
    StirlingTable::new(n).get(n, k).unwrap_or_default()
}

/// `g_s^j` from the recurrence `g_{s+1}^j = (j+1)(g_s^j + g_s^{j-1})`,
/// `g_0^0 = 1`.
pub fn g_coeff_big(s: usize, j: usize) -> Result<BigUint> {
    if j > s {
        return Err(Error::domain(format!("g_coeff requires j <= s, got s = {s}, j = {j}")));
    }
    let mut row = vec![BigUint::one()];
    for step in 0..s {
        let mut next = vec![BigUint::zero(); step + 2];
        for (jj, slot) in next.iter_mut().enumerate() {
            let here = row.get(jj).cloned().unwrap_or_default();
            let below = if jj > 0 { row[jj - 1].clone() } else { BigUint::zero() };
            *slot = BigUint::from(jj + 1) * (here + below);
        }
        row = next;
    }
    Ok(row.swap_remove(j))
}

/// `g_s^j` as a checked `u128`.
pub fn g_coeff(s: usize, j: usize) -> Result<u128> {
    let v = g_coeff_big(s, j)?;
    to_u128(v, || format!("g_coeff({s}, {j})"))
}

/// Exact `n!`.
pub fn factorial_big(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `j! {s+1, j+1}` for `j = 0..=s`: the integer weights of
/// `(x-1)^{-(j+1)}` in `(-1)^s (x d/dx)^s 1/(x-1)`.
pub fn stirling_weights(s: usize) -> Vec<BigUint> {
    let table;
    let t = if s < shared_table().max_n() {
        shared_table()
    } else {
        table = StirlingTable::new(s + 1);
        &table
    };
    (0..=s).map(|j| factorial_big(j) * t.get(s + 1, j + 1).unwrap_or_default()).collect()
}
