//! Certified isolation of the largest real root of a rational polynomial.
//!
//! The method is exact-sign bisection below a Cauchy bound. Soundness of
//! the returned interval `[lo, hi]` means three certified facts:
//!
//! 1. `p(lo) <= 0 < p(hi)`, so a root lies in the interval;
//! 2. `p` has no root in `(hi, C]` where `C` is an integer at least the
//!    Cauchy bound, established by Descartes sign-variation counts on
//!    Moebius-transformed coefficient vectors (subdividing as needed);
//! 3. `p > 0` on `[C, oo)` because no root exceeds the Cauchy bound and
//!    the leading coefficient is positive.
//!
//! A polynomial with no real root at all is reported as such, certified by
//! positivity over `[-C, C]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, internal, Result};

use super::poly::UniPoly;

/// A closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Result of isolating the largest real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootIsolation {
    Root(RootInterval),
    /// The polynomial is positive on the whole real line.
    NoRealRoot,
}

impl RootIsolation {
    pub fn interval(&self) -> Option<&RootInterval> {
        match self {
            RootIsolation::Root(iv) => Some(iv),
            RootIsolation::NoRealRoot => None,
        }
    }
}

/// Integer upper bound on the absolute value of every complex root:
/// `ceil(1 + max_i |a_i| / |a_deg|)`.
pub fn cauchy_bound(p: &UniPoly) -> BigInt {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let mut max = BigRational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let q = c.abs() / &lead;
        if q > max {
            max = q;
        }
    }
    (max + BigRational::one()).ceil().to_integer()
}

const SPLIT_DEPTH: u32 = 48;

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `(1+t)^deg * p((a + b t)/(1 + t))`. Zero sign variations
/// certify that `p` has no root in the open interval `(a, b)`.
fn moebius_coeffs(p: &UniPoly, a: &BigRational, b: &BigRational) -> Vec<BigRational> {
    let deg = p.degree().expect("nonzero polynomial");
    let mut out = vec![BigRational::zero(); deg + 1];
    // running (a + b t)^k
    let mut num = vec![BigRational::one()];
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            // (1 + t)^{deg - k}
            let mut term = num.clone();
            for _ in 0..deg - k {
                term = poly_mul(&term, &[BigRational::one(), BigRational::one()]);
            }
            for (i, v) in term.into_iter().enumerate() {
                out[i] += v * c;
            }
        }
        if k < deg {
            num = poly_mul(&num, &[a.clone(), b.clone()]);
        }
    }
    out
}

fn sign_variations(coeffs: &[BigRational]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let pos = c.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Certified absence of roots in the open interval `(a, b)`.
fn no_root_in_open(p: &UniPoly, a: &BigRational, b: &BigRational, depth: u32) -> bool {
    if a >= b {
        return true;
    }
    if sign_variations(&moebius_coeffs(p, a, b)) == 0 {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let mid = (a + b) / BigRational::from(BigInt::from(2));
    if p.eval(&mid).is_zero() {
        return false;
    }
    no_root_in_open(p, a, &mid, depth - 1) && no_root_in_open(p, &mid, b, depth - 1)
}

/// Certified `p > 0` on the closed interval `[a, b]`.
fn cert_strictly_positive(p: &UniPoly, a: &BigRational, b: &BigRational, depth: u32) -> bool {
    if a > b {
        return true;
    }
    p.eval(a).is_positive() && p.eval(b).is_positive() && no_root_in_open(p, a, b, depth)
}

/// Search for a point with `p <= 0` in `[a, b]`, preferring larger points.
fn find_nonpositive(p: &UniPoly, a: &BigRational, b: &BigRational, depth: u32) -> Option<BigRational> {
    if !p.eval(b).is_positive() {
        return Some(b.clone());
    }
    if !p.eval(a).is_positive() {
        return Some(a.clone());
    }
    if sign_variations(&moebius_coeffs(p, a, b)) == 0 || depth == 0 {
        return None;
    }
    let mid = (a + b) / BigRational::from(BigInt::from(2));
    find_nonpositive(p, &mid, b, depth - 1).or_else(|| find_nonpositive(p, a, &mid, depth - 1))
}

/// Isolate the largest real root of `p` in an interval of width at most
/// `width`, certifying positivity above the interval.
///
/// Requires a nonconstant polynomial with positive leading coefficient.
pub fn highest_root(p: &UniPoly, width: &BigRational) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(domain("highest_root: zero polynomial"));
    }
    if p.degree() == Some(0) {
        return Err(domain("highest_root: constant polynomial"));
    }
    if !p.leading().unwrap().is_positive() {
        return Err(domain("highest_root: leading coefficient must be positive"));
    }
    if !width.is_positive() {
        return Err(domain("highest_root: width must be positive"));
    }

    let cb = cauchy_bound(p);
    let cb_r = BigRational::from(cb.clone());
    if !p.eval(&cb_r).is_positive() {
        return Err(internal("highest_root: polynomial not positive at its Cauchy bound"));
    }

    // Greatest integer point with p <= 0, scanning down from the bound.
    let mut probe = cb.clone();
    let neg_cb = -cb.clone();
    let mut start: Option<BigRational> = None;
    while probe >= neg_cb {
        let v = BigRational::from(probe.clone());
        if !p.eval(&v).is_positive() {
            start = Some(v);
            break;
        }
        probe -= 1;
    }
    if start.is_none() {
        // could still dip below zero between integer points
        let neg_cb_r = BigRational::from(neg_cb.clone());
        start = find_nonpositive(p, &neg_cb_r, &cb_r, 24);
        if start.is_none() {
            if cert_strictly_positive(p, &neg_cb_r, &cb_r, SPLIT_DEPTH) {
                return Ok(RootIsolation::NoRealRoot);
            }
            return Err(internal("highest_root: no sign change found and positivity not certifiable"));
        }
    }

    // Bisect [lo, hi] keeping p(lo) <= 0 < p(hi); hi only moves down across
    // segments certified root-free, so no root lies above hi at any stage.
    let mut lo = start.unwrap();
    let mut hi = cb_r.clone();
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if !p.eval(&mid).is_positive() {
            lo = mid;
        } else if no_root_in_open(p, &mid, &hi, SPLIT_DEPTH) {
            hi = mid;
        } else if let Some(q) = find_nonpositive(p, &mid, &hi, 24) {
            lo = q;
        } else {
            return Err(internal(
                "highest_root: cannot certify the sign of the interval above the midpoint",
            ));
        }
    }
    Ok(RootIsolation::Root(RootInterval { lo, hi }))
}

/// Certified strict positivity of `p` on `[a, oo)`: endpoint sign, absence
/// of roots up to the Cauchy bound, and the positive leading coefficient
/// beyond it.
pub fn certify_positive_beyond(p: &UniPoly, a: &BigRational) -> bool {
    if p.is_zero() || !p.leading().map(|c| c.is_positive()).unwrap_or(false) {
        return false;
    }
    let cb = BigRational::from(cauchy_bound(p));
    if *a >= cb {
        return p.eval(a).is_positive();
    }
    cert_strictly_positive(p, a, &cb, SPLIT_DEPTH)
}
