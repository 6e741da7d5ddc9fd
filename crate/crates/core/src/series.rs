//! Truncated power series with exact integer coefficients.
//!
//! A [`TruncSeries`] stores the coefficients of a power series up to an
//! inclusive truncation order. Arithmetic never changes the order silently:
//! binary operations truncate to the smaller order of the two operands.
//!
//! The module also houses the series-side ingredients used everywhere else:
//! binomial coefficients with the `C(a,b) = 0` convention for `0 <= a < b`,
//! generator degree profiles, the Fröberg series of a profile and the
//! bracket operator that zeroes a series from its first negative
//! coefficient onward.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Binomial coefficient `C(a, b)` for `a >= 0`.
///
/// Returns 0 when `0 <= a < b` (the convention every closed formula in this
/// crate relies on) and rejects `a < 0`.
pub fn binom(a: i64, b: u64) -> Result<BigInt> {
    if a < 0 {
        return Err(domain(format!("binom: negative upper argument {a}")));
    }
    if (a as u64) < b {
        return Ok(BigInt::zero());
    }
    let b = b.min(a as u64 - b); // symmetry keeps the loop short
    let mut result = BigInt::one();
    for i in 0..b {
        result *= a - i as i64;
        result /= i as i64 + 1; // exact: product of i+1 consecutive integers
    }
    Ok(result)
}

/// `C(a, b)` in machine integers; `None` on overflow.
pub fn binom_i128(a: i64, b: u64) -> Option<i128> {
    if a < 0 {
        return None;
    }
    if (a as u64) < b {
        return Some(0);
    }
    let b = b.min(a as u64 - b);
    let mut result: i128 = 1;
    for i in 0..b {
        result = result.checked_mul((a - i as i64) as i128)?;
        result /= i as i128 + 1;
    }
    Some(result)
}

/// Exact `d!` as a `BigInt`.
pub fn factorial(d: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=d as i64 {
        f *= i;
    }
    f
}

/// A multiset of generator degrees `d_1, ..., d_s`.
///
/// Stored as a sorted list; equality and all derived quantities treat the
/// profile as a multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    degrees: Vec<u32>,
}

impl DegreeProfile {
    /// Build a profile from explicit degrees. Degrees must all be >= 1.
    pub fn new(mut degrees: Vec<u32>) -> Result<Self> {
        if degrees.iter().any(|&d| d == 0) {
            return Err(domain("degree profile: all degrees must be >= 1"));
        }
        degrees.sort_unstable();
        Ok(Self { degrees })
    }

    /// Build a profile from multiplicities `m_1, m_2, ...` where `m_i` is
    /// the number of generators of degree `i`.
    pub fn from_multiplicities(mults: &[u64]) -> Result<Self> {
        let mut degrees = Vec::new();
        for (i, &m) in mults.iter().enumerate() {
            let d = (i + 1) as u32;
            for _ in 0..m {
                degrees.push(d);
            }
        }
        Self::new(degrees)
    }

    pub fn empty() -> Self {
        Self { degrees: Vec::new() }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.degrees.first().copied()
    }

    /// Multiplicity vector `m_1..m_D` with `D` the largest degree present.
    pub fn multiplicities(&self) -> Vec<u64> {
        let max = self.degrees.last().copied().unwrap_or(0) as usize;
        let mut mults = vec![0u64; max];
        for &d in &self.degrees {
            mults[d as usize - 1] += 1;
        }
        mults
    }
}

/// Power series truncated at an inclusive order.
///
/// Invariants: `coeffs.len() == order + 1`; all arithmetic preserves this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    /// The constant series 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        Self { order, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Self { order: coeffs.len() - 1, coeffs }
    }

    /// `1/(1-t)^e` truncated at `order`: coefficients `C(k+e-1, e-1)`.
    pub fn inv_one_minus_t_pow(e: u64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        // incremental C(k+e-1, e-1): multiply by (k+e-1)/k
        let mut c = BigInt::one();
        if e == 0 {
            coeffs.push(BigInt::one());
            coeffs.extend(std::iter::repeat_n(BigInt::zero(), order));
            return Self { order, coeffs };
        }
        for k in 0..=order as u64 {
            if k == 0 {
                coeffs.push(c.clone());
            } else {
                c *= BigInt::from(k + e - 1);
                c /= BigInt::from(k);
                coeffs.push(c.clone());
            }
        }
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient at degree `k`; zero series convention does not apply
    /// beyond the truncation order, which is an error to read.
    pub fn coeff(&self, k: usize) -> Result<&BigInt> {
        self.coeffs
            .get(k)
            .ok_or_else(|| domain(format!("coefficient {k} beyond truncation order {}", self.order)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Self { order, coeffs }
    }

    /// Product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { order, coeffs }
    }

    /// Multiply in place by `(1 - t^k)^e`.
    ///
    /// Each factor is applied as `c_i -= c_{i-k}` descending, so the whole
    /// operation is `O(e * order)` without building intermediate series.
    pub fn mul_one_minus_tk_pow(&mut self, k: usize, e: u64) {
        if k == 0 {
            // (1 - 1)^e = 0 for e > 0
            if e > 0 {
                for c in &mut self.coeffs {
                    *c = BigInt::zero();
                }
            }
            return;
        }
        for _ in 0..e {
            for i in (k..=self.order).rev() {
                let lower = self.coeffs[i - k].clone();
                self.coeffs[i] -= lower;
            }
        }
    }
}

/// Zero a series from its first negative coefficient onward.
///
/// Idempotent; the identity on series with all coefficients nonnegative.
pub fn bracket(s: &TruncSeries) -> TruncSeries {
    let mut out = s.clone();
    let mut seen_negative = false;
    for c in &mut out.coeffs {
        if c.is_negative() {
            seen_negative = true;
        }
        if seen_negative {
            *c = BigInt::zero();
        }
    }
    out
}

/// The series `prod_i (1 - t^{d_i}) / (1 - t)^{n+1}` truncated at `order`.
pub fn froberg_series(n: u64, profile: &DegreeProfile, order: usize) -> TruncSeries {
    let mut s = TruncSeries::inv_one_minus_t_pow(n + 1, order);
    for &d in profile.degrees() {
        s.mul_one_minus_tk_pow(d as usize, 1);
    }
    s
}

/// Coefficient of degree `d` in the bracketed Fröberg series of the profile.
pub fn froberg_coeff(n: u64, profile: &DegreeProfile, d: usize) -> BigInt {
    let s = froberg_series(n, profile, d);
    bracket(&s).coeffs[d].clone()
}
