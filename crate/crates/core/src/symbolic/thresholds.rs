//! Recomputation of the per-degree case-bound thresholds.
//!
//! For each degree the asymptotic argument needs, per statement family
//! (one family per admissible `j` plus the combined family), an `N` with
//! `N >= (x + w - 1)^{d-1} / d!` where `x` is the largest real root of the
//! family's majorant polynomial, together with the largeness condition on
//! `n` under which the root-polynomial lower bound holds. This module
//! isolates the roots with certified rational intervals and produces the
//! smallest integer satisfying all of it, alongside the published value
//! for comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, internal, Result};
use crate::series::factorial;
use crate::slicerank::{largeness_condition_narrow, largeness_condition_wide};

use super::build::{b_threshold_poly, build_g_a, choose_w, tilde_transform};
use super::poly::{rat_pow, UniPoly};
use super::roots::{highest_root, RootIsolation};

/// Published thresholds for degrees 4 through 10.
pub const N_PAPER: [(u32, u64); 7] = [
    (4, 755),
    (5, 3056),
    (6, 1742),
    (7, 32215),
    (8, 1408841),
    (9, 73305293),
    (10, 4393224603),
];

pub fn n_paper(d: u32) -> Option<u64> {
    N_PAPER.iter().find(|&&(dd, _)| dd == d).map(|&(_, n)| n)
}

/// Which statement family a bounding polynomial belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatementId {
    /// Moving one summand from degree `j` down to `j-1` at fixed `m`.
    A(u32),
    /// Lowering `m` and the degree-2 multiplicity together.
    B,
}

impl std::fmt::Display for StatementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StatementId::A(j) => write!(f, "A{j}"),
            StatementId::B => write!(f, "B"),
        }
    }
}

/// A statement family's majorant polynomial with its isolated largest root.
#[derive(Debug, Clone)]
pub struct StatementRoot {
    pub id: StatementId,
    pub poly: UniPoly,
    pub isolation: RootIsolation,
}

/// Everything the verifier needs for one degree.
#[derive(Debug, Clone)]
pub struct DegreeConfig {
    pub d: u32,
    pub w: BigRational,
    pub statements: Vec<StatementRoot>,
    /// Cases only need checking for `m` up to this bound (floor of the
    /// largest certified root-interval endpoint).
    pub m_bound: u64,
    /// Smallest `n` meeting the largeness condition of the root-bound
    /// regime in force for this degree.
    pub largeness_threshold: u64,
    pub n_paper: Option<u64>,
    pub n_computed: u64,
}

fn largeness_threshold(d: u32) -> u64 {
    let cond: fn(u64, u32) -> bool =
        if d <= 5 { largeness_condition_wide } else { largeness_condition_narrow };
    let mut hi = 1u64;
    while !cond(hi, d) {
        hi *= 2;
    }
    let mut lo = 0u64;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if cond(mid, d) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `ceil((x + w - 1)^(d-1) / d!)` as an integer.
fn case_threshold(d: u32, w: &BigRational, x: &BigRational) -> BigInt {
    let base = x + w - BigRational::one();
    if base.is_negative() {
        return BigInt::zero();
    }
    let value = rat_pow(&base, d - 1) / BigRational::from(factorial(d));
    value.ceil().to_integer()
}

/// Build the per-degree configuration: majorant polynomials for every
/// statement family, certified root intervals of the requested width, the
/// recomputed threshold and the case bound.
pub fn compute_n(d: u32, width: &BigRational) -> Result<DegreeConfig> {
    if d < 4 {
        return Err(domain(format!("compute_n: need d >= 4, got {d}")));
    }
    let w = choose_w(d)?;
    let mut statements = Vec::new();
    for j in 3..=d / 2 {
        let poly = tilde_transform(&build_g_a(d, j)?);
        let isolation = highest_root(&poly, width)?;
        statements.push(StatementRoot { id: StatementId::A(j), poly, isolation });
    }
    let poly = b_threshold_poly(d, &w)?;
    let isolation = highest_root(&poly, width)?;
    statements.push(StatementRoot { id: StatementId::B, poly, isolation });

    let largeness = largeness_threshold(d);
    let mut n_computed = BigInt::from(largeness);
    let mut m_bound_hi: Option<BigRational> = None;
    for s in &statements {
        if let Some(iv) = s.isolation.interval() {
            let t = case_threshold(d, &w, &iv.hi);
            if t > n_computed {
                n_computed = t;
            }
            if m_bound_hi.as_ref().is_none_or(|cur| iv.hi > *cur) {
                m_bound_hi = Some(iv.hi.clone());
            }
        }
    }
    let m_bound = match m_bound_hi {
        Some(hi) if hi.is_positive() => u64::try_from(&hi.floor().to_integer())
            .map_err(|_| internal("case bound does not fit in u64"))?,
        _ => 0,
    };
    let n_computed = u64::try_from(&n_computed)
        .map_err(|_| internal(format!("threshold for d={d} does not fit in u64")))?;

    Ok(DegreeConfig {
        d,
        w,
        statements,
        m_bound,
        largeness_threshold: largeness,
        n_paper: n_paper(d),
        n_computed,
    })
}

/// The validity predicate a threshold must pass: at least the largeness
/// threshold, and at least `(hi + w - 1)^{d-1}/d!` for the certified upper
/// endpoint of every statement root.
pub fn threshold_is_valid(config: &DegreeConfig, n: u64) -> bool {
    if n < config.largeness_threshold {
        return false;
    }
    let n_big = BigInt::from(n);
    config.statements.iter().all(|s| match s.isolation.interval() {
        Some(iv) => case_threshold(config.d, &config.w, &iv.hi) <= n_big,
        None => true,
    })
}
