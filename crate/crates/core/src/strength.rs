//! The codimension function `f_{n,d}` and the machinery around it.
//!
//! For a degree `d >= 4`, a truncation level `m` and a tail
//! `(l_2, ..., l_{floor(d/2)})` of nonnegative integers,
//!
//! ```text
//! f_{n,d}(m, l_2, ...) = sum_beta (-1)^{|beta|}
//!       prod_i C(l_i, beta_{1,i}) C(l_i, beta_{2,i}) C(m + d - ||beta||, m)
//!     - (n - m)(m + 1),
//! ```
//!
//! where `beta` runs over 2 x (floor(d/2) - 1) matrices of nonnegative
//! integers, `||beta|| = sum_i (beta_{1,i} i + beta_{2,i} (d-i))` and
//! `|beta|` is the entry sum. Only matrices with `||beta|| <= d` and
//! entries `<= l_i` contribute; everything else vanishes under the
//! binomial conventions.
//!
//! The same number is the degree-`d` coefficient of
//! `prod_i (1-t^i)^{l_i} (1-t^{d-i})^{l_i} / (1-t)^{m+1}` minus
//! `(n-m)(m+1)`; [`f_eval_series`] evaluates along that independent path.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{domain, range, Result};
use crate::series::{binom, binom_i128, DegreeProfile, TruncSeries};
use crate::slicerank::general_slice_rank;

/// A tuple `(l_1, ..., l_{floor(d/2)})` of factor-degree multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllProfile {
    d: u32,
    ells: Vec<u64>,
}

impl EllProfile {
    pub fn new(d: u32, ells: Vec<u64>) -> Result<Self> {
        if d < 4 {
            return Err(domain(format!("ell profile: need d >= 4, got {d}")));
        }
        if ells.len() != (d / 2) as usize {
            return Err(domain(format!(
                "ell profile: expected {} entries for d={d}, got {}",
                d / 2,
                ells.len()
            )));
        }
        Ok(Self { d, ells })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ells(&self) -> &[u64] {
        &self.ells
    }

    /// Total number of summands `r = sum_i l_i`.
    pub fn r(&self) -> u64 {
        self.ells.iter().sum()
    }

    /// The tail `(l_2, ...)` used by the codimension function.
    pub fn tail(&self) -> &[u64] {
        &self.ells[1..]
    }
}

/// One admissible exponent matrix: per column `i = 2..=floor(d/2)` the pair
/// `(beta_{1,i}, beta_{2,i})`, plus the cached norm and entry sum.
#[derive(Debug, Clone)]
pub(crate) struct BetaMatrix {
    pub(crate) entries: Vec<(u32, u32)>,
    pub(crate) norm: u32,
    pub(crate) parity_neg: bool,
}

fn enumerate_betas(d: u32) -> Vec<BetaMatrix> {
    let half = (d / 2) as usize;
    let ncols = half.saturating_sub(1);
    let mut out = Vec::new();
    let mut entries = vec![(0u32, 0u32); ncols];
    fn rec(
        d: u32,
        col: usize,
        norm: u32,
        abs: u32,
        entries: &mut Vec<(u32, u32)>,
        out: &mut Vec<BetaMatrix>,
    ) {
        if col == entries.len() {
            out.push(BetaMatrix {
                entries: entries.clone(),
                norm,
                parity_neg: abs % 2 == 1,
            });
            return;
        }
        let i = col as u32 + 2;
        let mut b1 = 0u32;
        while norm + b1 * i <= d {
            let mut b2 = 0u32;
            while norm + b1 * i + b2 * (d - i) <= d {
                entries[col] = (b1, b2);
                rec(d, col + 1, norm + b1 * i + b2 * (d - i), abs + b1 + b2, entries, out);
                b2 += 1;
            }
            b1 += 1;
        }
        entries[col] = (0, 0);
    }
    rec(d, 0, 0, 0, &mut entries, &mut out);
    out
}

const BETA_CACHE_MAX: usize = 64;
static BETA_CACHE: [OnceLock<Vec<BetaMatrix>>; BETA_CACHE_MAX] =
    [const { OnceLock::new() }; BETA_CACHE_MAX];

pub(crate) fn betas(d: u32) -> &'static Vec<BetaMatrix> {
    assert!((d as usize) < BETA_CACHE_MAX, "degree {d} out of supported range");
    BETA_CACHE[d as usize].get_or_init(|| enumerate_betas(d))
}

fn check_f_args(d: u32, tail: &[u64]) -> Result<usize> {
    if d < 4 {
        return Err(domain(format!("f: need d >= 4, got {d}")));
    }
    let ntail = (d / 2) as usize - 1;
    if tail.len() > ntail {
        return Err(domain(format!(
            "f: tail has {} entries but d={d} admits at most {ntail}",
            tail.len()
        )));
    }
    Ok(ntail)
}

/// Exact evaluation of `f_{n,d}(m, tail)` by the alternating binomial sum.
///
/// A tail shorter than `floor(d/2) - 1` is padded with zeros.
pub fn f_eval(n: u64, d: u32, m: u64, tail: &[u64]) -> Result<BigInt> {
    let ntail = check_f_args(d, tail)?;
    let ell = |col: usize| -> u64 { tail.get(col).copied().unwrap_or(0) };
    let mut sum = BigInt::zero();
    'matrices: for beta in betas(d) {
        let mut term = binom((m + (d - beta.norm) as u64) as i64, (d - beta.norm) as u64)?;
        if term.is_zero() {
            continue;
        }
        for (col, &(b1, b2)) in beta.entries.iter().enumerate().take(ntail) {
            let l = ell(col);
            if (b1 as u64) > l || (b2 as u64) > l {
                continue 'matrices;
            }
            if b1 > 0 {
                term *= binom(l as i64, b1 as u64)?;
            }
            if b2 > 0 {
                term *= binom(l as i64, b2 as u64)?;
            }
        }
        if beta.parity_neg {
            sum -= term;
        } else {
            sum += term;
        }
    }
    sum -= (BigInt::from(n) - BigInt::from(m)) * BigInt::from(m + 1);
    Ok(sum)
}

/// Machine-integer evaluation of `f_{n,d}`; `None` on overflow, in which
/// case callers fall back to [`f_eval`]. Exact whenever it returns a value.
pub fn f_eval_i128(n: u64, d: u32, m: u64, tail: &[u64]) -> Option<i128> {
    let ntail = check_f_args(d, tail).ok()?;
    let ell = |col: usize| -> u64 { tail.get(col).copied().unwrap_or(0) };
    let mut sum: i128 = 0;
    'matrices: for beta in betas(d) {
        let mut term = binom_i128((m + (d - beta.norm) as u64) as i64, (d - beta.norm) as u64)?;
        if term == 0 {
            continue;
        }
        for (col, &(b1, b2)) in beta.entries.iter().enumerate().take(ntail) {
            let l = ell(col);
            if (b1 as u64) > l || (b2 as u64) > l {
                continue 'matrices;
            }
            if b1 > 0 {
                term = term.checked_mul(binom_i128(l as i64, b1 as u64)?)?;
            }
            if b2 > 0 {
                term = term.checked_mul(binom_i128(l as i64, b2 as u64)?)?;
            }
        }
        sum = if beta.parity_neg { sum.checked_sub(term)? } else { sum.checked_add(term)? };
    }
    let linear = (n as i128 - m as i128).checked_mul(m as i128 + 1)?;
    sum.checked_sub(linear)
}

/// Series-path evaluation of `f_{n,d}(m, tail)`: the degree-`d` coefficient
/// of `prod_i (1-t^i)^{l_i}(1-t^{d-i})^{l_i} / (1-t)^{m+1}` minus
/// `(n-m)(m+1)`. Independent of [`f_eval`]'s summation route.
pub fn f_eval_series(n: u64, d: u32, m: u64, tail: &[u64]) -> Result<BigInt> {
    let ntail = check_f_args(d, tail)?;
    let mut s = TruncSeries::inv_one_minus_t_pow(m + 1, d as usize);
    for col in 0..ntail {
        let l = tail.get(col).copied().unwrap_or(0);
        if l == 0 {
            continue;
        }
        let i = col + 2;
        s.mul_one_minus_tk_pow(i, l);
        s.mul_one_minus_tk_pow(d as usize - i, l);
    }
    let mut value = s.coeff(d as usize)?.clone();
    value -= (BigInt::from(n) - BigInt::from(m)) * BigInt::from(m + 1);
    Ok(value)
}

/// Codimension of the r-th secant variety of the forms with a linear
/// factor: the raw value `f_{n,d}(n-r, 0, ..., 0)` together with its clamp
/// at zero (the raw value goes negative once the secant variety fills the
/// ambient space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCodim {
    pub raw: BigInt,
    pub codim: BigInt,
}

pub fn codim_sigma_linear(n: u64, d: u32, r: u64) -> Result<SigmaCodim> {
    if r == 0 {
        return Err(domain("codim_sigma_linear: r >= 1 required"));
    }
    if r > n {
        return Err(domain(format!("codim_sigma_linear: r={r} exceeds n={n}")));
    }
    let raw = f_eval(n, d, n - r, &[])?;
    let codim = if raw.is_negative() { BigInt::zero() } else { raw.clone() };
    Ok(SigmaCodim { raw, codim })
}

/// Degree multiplicities of the `2r` tangent-ideal generators attached to
/// an ell-profile: `m_i = m_{d-i} = l_i` for `i < d/2`, and `m_{d/2} =
/// 2 l_{d/2}` when `d` is even.
pub fn generator_profile(ells: &EllProfile) -> Result<DegreeProfile> {
    let d = ells.d();
    let mut mults = vec![0u64; d as usize - 1];
    for (idx, &l) in ells.ells().iter().enumerate() {
        let i = idx as u32 + 1;
        if 2 * i < d {
            mults[i as usize - 1] += l;
            mults[(d - i) as usize - 1] += l;
        } else {
            // even d, i = d/2: the two factors have the same degree
            mults[i as usize - 1] += 2 * l;
        }
    }
    DegreeProfile::from_multiplicities(&mults)
}

/// Both sides of the key inequality
/// `f_{n,d}(m, tail) >= f_{n,d}(m - sum(tail), 0, ..., 0)` at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyInequality {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
    pub strict: bool,
    /// The one quartic family where equality of codimension-one components
    /// is expected: nonzero tail with `(n, d, m - l_2) = (3, 4, 1)`.
    pub exceptional: bool,
}

pub fn key_inequality(n: u64, d: u32, m: u64, tail: &[u64]) -> Result<KeyInequality> {
    check_f_args(d, tail)?;
    if m > n {
        return Err(range(format!("key inequality: m={m} exceeds n={n}")));
    }
    let tail_sum: u64 = tail.iter().sum();
    let defect = n - general_slice_rank(n, d)?;
    if m < tail_sum || m - tail_sum < defect + 1 {
        return Err(range(format!(
            "key inequality: m - sum(tail) = {} is below n - slrk + 1 = {}",
            m as i128 - tail_sum as i128,
            defect + 1
        )));
    }
    let lhs = f_eval(n, d, m, tail)?;
    let rhs = f_eval(n, d, m - tail_sum, &[])?;
    let ell2 = tail.first().copied().unwrap_or(0);
    let exceptional = tail_sum > 0 && n == 3 && d == 4 && m >= ell2 && m - ell2 == 1;
    Ok(KeyInequality { holds: lhs >= rhs, strict: lhs > rhs, lhs, rhs, exceptional })
}

/// Status of the generic strength = generic slice rank question at `(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    /// Known from the study of complete intersection curves on general
    /// hypersurfaces: `2d >= 3n - 1` (plus the ternary quadric cell).
    Red,
    /// Known from low-rank secant dimension arguments: `2 slrk <= n + 2`.
    Green,
    /// Covered by the finite verification: `d` in {2,...,7, 9}.
    Blue,
    /// Open.
    Open,
}

impl Coverage {
    pub fn as_str(self) -> &'static str {
        match self {
            Coverage::Red => "red",
            Coverage::Green => "green",
            Coverage::Blue => "blue",
            Coverage::Open => "open",
        }
    }
}

/// Classification of a cell of the known-cases grid, with the tie-breaking
/// priority red > green > blue used in its printed form.
pub fn coverage_cell(n: u64, d: u32) -> Result<Coverage> {
    if n < 2 || d < 2 {
        return Err(domain(format!("coverage_cell: need n >= 2 and d >= 2, got n={n}, d={d}")));
    }
    if 2 * d as u64 >= 3 * n - 1 || (n, d) == (2, 2) {
        return Ok(Coverage::Red);
    }
    if 2 * general_slice_rank(n, d)? <= n + 2 {
        return Ok(Coverage::Green);
    }
    if matches!(d, 2..=7 | 9) {
        return Ok(Coverage::Blue);
    }
    Ok(Coverage::Open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn quartic_threefold_codimension_one_family() {
        assert_eq!(f_eval(3, 4, 1, &[0]).unwrap(), big(1));
        assert_eq!(f_eval(3, 4, 2, &[1]).unwrap(), big(1));
        assert_eq!(f_eval(3, 4, 3, &[2]).unwrap(), big(1));
    }

    #[test]
    fn zero_tail_closed_form() {
        for n in 0..=20u64 {
            for d in 4..=10u32 {
                for m in 0..=20u64 {
                    let expected = binom((m + d as u64) as i64, d as u64).unwrap()
                        - (big(n as i64) - big(m as i64)) * big(m as i64 + 1);
                    assert_eq!(f_eval(n, d, m, &[]).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn series_path_agrees_with_sum_path() {
        assert_eq!(f_eval_series(3, 4, 1, &[0]).unwrap(), big(1));
        assert_eq!(f_eval_series(3, 4, 3, &[2]).unwrap(), big(1));
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..300 {
            let d = rng.gen_range(4..=10u32);
            let n = rng.gen_range(0..=30u64);
            let m = rng.gen_range(0..=30u64);
            let tail: Vec<u64> =
                (0..(d / 2 - 1) as usize).map(|_| rng.gen_range(0..=5u64)).collect();
            let a = f_eval(n, d, m, &tail).unwrap();
            let b = f_eval_series(n, d, m, &tail).unwrap();
            assert_eq!(a, b, "n={n}, d={d}, m={m}, tail={tail:?}");
            let c = f_eval_i128(n, d, m, &tail).unwrap();
            assert_eq!(a, BigInt::from(c));
        }
    }

    #[test]
    fn rejects_low_degree_and_long_tails() {
        assert!(f_eval(3, 3, 1, &[]).is_err());
        assert!(f_eval(3, 4, 1, &[1, 2]).is_err());
    }

    #[test]
    fn sigma_codimension() {
        assert_eq!(codim_sigma_linear(3, 4, 2).unwrap().codim, big(1));
        let filled = codim_sigma_linear(3, 4, 3).unwrap();
        assert_eq!(filled.codim, big(0));
        assert!(filled.raw.is_negative());
        assert!(codim_sigma_linear(3, 4, 0).is_err());
        assert!(codim_sigma_linear(3, 4, 4).is_err());
    }

    #[test]
    fn filling_threshold() {
        for n in 1..=50u64 {
            for d in 4..=10u32 {
                let slrk = general_slice_rank(n, d).unwrap();
                for r in 1..slrk {
                    assert!(
                        codim_sigma_linear(n, d, r).unwrap().codim > big(0),
                        "positive codim expected at n={n}, d={d}, r={r}"
                    );
                }
                assert!(
                    codim_sigma_linear(n, d, slrk).unwrap().raw <= big(0),
                    "raw value must be <= 0 at the filling rank, n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn generator_profiles() {
        let p = generator_profile(&EllProfile::new(4, vec![1, 1]).unwrap()).unwrap();
        assert_eq!(p.degrees(), &[1, 2, 2, 3]);
        let p = generator_profile(&EllProfile::new(5, vec![1, 1]).unwrap()).unwrap();
        assert_eq!(p.degrees(), &[1, 2, 3, 4]);
        let p = generator_profile(&EllProfile::new(9, vec![0, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(p.degrees(), &[4, 5]);
    }

    #[test]
    fn generator_count_is_twice_r() {
        for d in 4..=10u32 {
            let ells: Vec<u64> = (0..d / 2).map(|i| (i as u64 % 3) + 1).collect();
            let profile = EllProfile::new(d, ells).unwrap();
            let gens = generator_profile(&profile).unwrap();
            assert_eq!(gens.len() as u64, 2 * profile.r(), "d={d}");
        }
    }

    #[test]
    fn key_inequality_examples() {
        let k = key_inequality(3, 4, 2, &[1]).unwrap();
        assert_eq!((k.lhs, k.rhs), (big(1), big(1)));
        assert!(k.holds && !k.strict && k.exceptional);

        let k = key_inequality(3, 4, 3, &[2]).unwrap();
        assert!(k.holds && !k.strict && k.exceptional);

        // a zero tail compares a value with itself
        for (n, d, m) in [(9u64, 4u32, 6u64), (12, 6, 9), (20, 5, 18)] {
            let k = key_inequality(n, d, m, &[]).unwrap();
            assert!(k.holds && !k.strict && !k.exceptional);
            assert_eq!(k.lhs, k.rhs);
        }

        assert!(key_inequality(3, 4, 4, &[3]).is_err()); // m > n
        assert!(key_inequality(9, 4, 3, &[3]).is_err()); // below the claim level
    }

    #[test]
    fn coverage_examples() {
        assert_eq!(coverage_cell(2, 5).unwrap(), Coverage::Red);
        assert_eq!(coverage_cell(5, 4).unwrap(), Coverage::Blue);
        assert_eq!(coverage_cell(6, 8).unwrap(), Coverage::Open);
        assert_eq!(coverage_cell(2, 3).unwrap(), Coverage::Red);
        assert_eq!(coverage_cell(4, 5).unwrap(), Coverage::Green);
        assert_eq!(coverage_cell(8, 10).unwrap(), Coverage::Open);
        assert!(coverage_cell(1, 4).is_err());
    }
}
