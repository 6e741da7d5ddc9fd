//! Generic slice rank and the integer data attached to it.
//!
//! The central quantity is `slrk(n, d)`: the slice rank of a general form
//! of degree `d` in `n+1` variables, i.e. the least `r` with
//! `r(n+1-r) >= C(d+n-r, d)` (for `d >= 3`; for `d = 2` the closed form
//! `ceil((n+1)/2)`). The defect `n - slrk(n, d)` equals the floor of the
//! unique nonnegative root of
//!
//! ```text
//!     p(x) = (x+d)(x+d-1)...(x+2) - d! (n - x),
//! ```
//!
//! which this module brackets with certified rational bounds. Plateau
//! points (the `n` where the generic slice rank does not grow from `n` to
//! `n+1`) are produced by inverting the defect, so enumerating them up to
//! `N` costs `O((d! N)^{1/(d-1)})` instead of `O(N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::series::{binom, factorial, DegreeProfile};

/// Dimension count `delta(n, d, r) = (r+1)(n-r) - C(d+r, d)` for the family
/// of r-planes on a general degree-d hypersurface in projective n-space.
/// The family is nonempty exactly when the value is nonnegative.
pub fn fano_delta(n: u64, d: u32, r: u64) -> Result<BigInt> {
    if n < 1 || d < 3 {
        return Err(domain(format!("fano_delta: need n >= 1 and d >= 3, got n={n}, d={d}")));
    }
    let lin = BigInt::from(r + 1) * (BigInt::from(n) - BigInt::from(r));
    Ok(lin - binom(d as i64 + r as i64, d as u64)?)
}

fn slice_rank_predicate(n: u64, d: u32, r: u64) -> bool {
    // r(n+1-r) >= C(d+n-r, d); r <= n is assumed by callers
    let lhs = BigInt::from(r) * BigInt::from(n + 1 - r);
    let rhs = binom((d as u64 + n - r) as i64, d as u64).expect("nonnegative arguments");
    lhs >= rhs
}

/// Slice rank of a general form of degree `d >= 2` in `n+1` variables.
pub fn general_slice_rank(n: u64, d: u32) -> Result<u64> {
    if n < 1 || d < 2 {
        return Err(domain(format!("general_slice_rank: need n >= 1 and d >= 2, got n={n}, d={d}")));
    }
    if d == 2 {
        return Ok((n + 1).div_ceil(2));
    }
    // The predicate is monotone in r (divide both sides by n-r+1 ... x+1),
    // and r = n always satisfies it, so binary search for the least r.
    let (mut lo, mut hi) = (0u64, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if slice_rank_predicate(n, d, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Least `r` with `r(n+1-r) >= sum_i C(d_i+n-r, d_i)` for a family of
/// general forms of the given degrees (all must be >= 3).
pub fn simultaneous_slice_rank(n: u64, profile: &DegreeProfile) -> Result<u64> {
    if profile.is_empty() {
        return Err(domain("simultaneous_slice_rank: empty degree profile"));
    }
    if profile.degrees().iter().any(|&d| d < 3) {
        return Err(domain("simultaneous_slice_rank: all degrees must be >= 3"));
    }
    if n < 1 {
        return Err(domain("simultaneous_slice_rank: need n >= 1"));
    }
    let pred = |r: u64| {
        let lhs = BigInt::from(r) * BigInt::from(n + 1 - r);
        let mut rhs = BigInt::zero();
        for &d in profile.degrees() {
            rhs += binom((d as u64 + n - r) as i64, d as u64).expect("nonnegative arguments");
        }
        lhs >= rhs
    };
    if !pred(n) {
        // more generators than n: no linear space lies on the common zero locus
        return Err(domain(format!(
            "simultaneous_slice_rank: no admissible r for n={n} with {} generators",
            profile.len()
        )));
    }
    let (mut lo, mut hi) = (0u64, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Exact evaluation of `p(x) = (x+d)...(x+2) - d!(n-x)` at an integer.
pub fn root_poly_eval(n: u64, d: u32, x: &BigInt) -> BigInt {
    let mut prod = BigInt::one();
    for i in 2..=d as i64 {
        prod *= x + BigInt::from(i);
    }
    prod - factorial(d) * (BigInt::from(n) - x)
}

fn root_poly_eval_rational(n: u64, d: u32, x: &BigRational) -> BigRational {
    let mut prod = BigRational::one();
    for i in 2..=d as i64 {
        prod *= x + BigRational::from(BigInt::from(i));
    }
    prod - BigRational::from(factorial(d)) * (BigRational::from(BigInt::from(n)) - x)
}

/// Certified bracketing data for the unique nonnegative root of `p`.
#[derive(Debug, Clone)]
pub struct RootBound {
    /// `floor` of the root; equals `n - slrk(n, d)`.
    pub floor_a: u64,
    /// Rational upper bound on the root, certified by `p(upper) > 0`.
    pub upper: BigRational,
    /// Rational lower bound, present only when the largeness conditions on
    /// `n` justify one; certified by `p(lower) < 0`.
    pub lower: Option<BigRational>,
    /// The offset used by the asymptotic argument: `d+2` for `d <= 5`,
    /// `d/2 + 1` otherwise (a half-integer for odd `d`).
    pub w: BigRational,
}

/// `w(d)`: `d+2` for `d <= 5`, else `d/2 + 1` as an exact rational.
pub fn offset_w(d: u32) -> BigRational {
    if d <= 5 {
        BigRational::from(BigInt::from(d as i64 + 2))
    } else {
        BigRational::new(BigInt::from(d as i64 + 2), BigInt::from(2))
    }
}

/// Largeness condition on `n` for the lower bound with offset `d+2`
/// (requires `d >= 4`): `d! n >= max(d^{d-1}, ((d-1)!)^{(d-1)/(d-3)})`,
/// compared exactly by clearing the fractional exponent.
pub fn largeness_condition_wide(n: u64, d: u32) -> bool {
    if d < 4 {
        return false;
    }
    let dn = factorial(d) * BigInt::from(n);
    if dn < BigInt::from(d as i64).pow(d - 1) {
        return false;
    }
    dn.pow(d - 3) >= factorial(d - 1).pow(d - 1)
}

/// Largeness condition on `n` for the lower bound with offset `d/2 + 1`
/// (requires `d >= 5`): `d! n >= max(d^{d-1}, (d!/(d/2-1)^2)^{(d-1)/(d-4)})`.
pub fn largeness_condition_narrow(n: u64, d: u32) -> bool {
    if d < 5 {
        return false;
    }
    let dn = factorial(d) * BigInt::from(n);
    if dn < BigInt::from(d as i64).pow(d - 1) {
        return false;
    }
    // (d!n)^{d-4} >= (d!/((d-2)^2/4))^{d-1}
    //   <=>  (d!n)^{d-4} (d-2)^{2(d-1)} >= (4 d!)^{d-1}
    let lhs = dn.pow(d - 4) * BigInt::from(d as i64 - 2).pow(2 * (d - 1));
    let rhs = (BigInt::from(4) * factorial(d)).pow(d - 1);
    lhs >= rhs
}

/// Rational `c` with `c^(d-1) >= d! n` (for `up = true`) or
/// `c^(d-1) <= d! n` (for `up = false`), within 1/1024 of the exact root.
fn nth_root_bound(n: u64, d: u32, up: bool) -> BigRational {
    let target = factorial(d) * BigInt::from(n);
    let e = d - 1;
    // integer part by doubling + binary search
    let mut hi = BigInt::one();
    while hi.pow(e) < target {
        hi *= 2;
    }
    let mut lo = BigInt::zero();
    while &lo + 1u32 < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if mid.pow(e) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // refine with denominator 1024: find least j with (lo + j/1024)^e >= target
    let den = BigInt::from(1024);
    let base = &lo * &den;
    let (mut jlo, mut jhi) = (0i64, 1024i64);
    while jlo < jhi {
        let jmid = (jlo + jhi) / 2;
        let num = &base + BigInt::from(jmid);
        if num.pow(e) >= &target * den.pow(e) {
            jhi = jmid;
        } else {
            jlo = jmid + 1;
        }
    }
    let val = BigRational::new(&base + BigInt::from(jlo), den.clone());
    if up {
        val
    } else {
        val - BigRational::new(BigInt::one(), den)
    }
}

/// Bracket the unique nonnegative root of `p(x) = (x+d)...(x+2) - d!(n-x)`.
///
/// `floor_a` is certified by `p(floor_a) <= 0 < p(floor_a + 1)`; the upper
/// bound comes from a rational over-approximation of `(d! n)^{1/(d-1)} - 2`
/// and is certified by a positive sign; the lower bound (when the largeness
/// conditions hold) from an under-approximation of `(d! n)^{1/(d-1)} - w`
/// certified by a negative sign.
pub fn root_poly_floor(n: u64, d: u32) -> Result<RootBound> {
    if n < 1 || d < 3 {
        return Err(domain(format!("root_poly_floor: need n >= 1 and d >= 3, got n={n}, d={d}")));
    }
    // p is strictly increasing for x >= 0 and p(0) = d!(1 - n) <= 0, so the
    // floor is the largest integer k with p(k) <= 0.
    let mut hi = 1u64;
    while root_poly_eval(n, d, &BigInt::from(hi)) <= BigInt::zero() {
        hi *= 2;
    }
    let mut lo = 0u64;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if root_poly_eval(n, d, &BigInt::from(mid)) <= BigInt::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let floor_a = lo;
    debug_assert!(root_poly_eval(n, d, &BigInt::from(floor_a)) <= BigInt::zero());
    debug_assert!(root_poly_eval(n, d, &BigInt::from(floor_a + 1)) > BigInt::zero());

    let two = BigRational::from(BigInt::from(2));
    let upper = nth_root_bound(n, d, true) - &two;
    if root_poly_eval_rational(n, d, &upper) <= BigRational::zero() {
        return Err(crate::error::internal(format!(
            "upper root bound failed its sign certificate at n={n}, d={d}"
        )));
    }

    // Tightest certified lower bound available: offset d/2+1 under the
    // narrow condition, else d+2 under the wide condition.
    let under = nth_root_bound(n, d, false);
    let mut lower = None;
    for (cond, offset) in [
        (largeness_condition_narrow(n, d), BigRational::new(BigInt::from(d as i64 + 2), BigInt::from(2))),
        (largeness_condition_wide(n, d), BigRational::from(BigInt::from(d as i64 + 2))),
    ] {
        if cond {
            let cand = &under - &offset;
            if root_poly_eval_rational(n, d, &cand) < BigRational::zero() {
                lower = Some(cand);
                break;
            }
        }
    }

    Ok(RootBound { floor_a, upper, lower, w: offset_w(d) })
}

/// Least `n` with defect `n - slrk(n, d) >= k`:
/// `n_k = k + ceil((k+2)(k+3)...(k+d) / d!)`.
fn defect_threshold(d: u32, k: u64) -> BigInt {
    let mut prod = BigInt::one();
    for i in 2..=d as u64 {
        prod *= BigInt::from(k + i);
    }
    let (q, r) = prod.div_rem(&factorial(d));
    let ceil = if r.is_zero() { q } else { q + 1 };
    BigInt::from(k) + ceil
}

/// All `n <= n_max` with `slrk(n, d) = slrk(n+1, d)`, paired with the
/// defect `n - slrk(n, d)`.
///
/// The defect jumps from `k-1` to `k` exactly at `n_k`, so the plateau
/// points are the `n_k - 1`; the list has `O((d! n_max)^{1/(d-1)})` entries.
pub fn plateau_points_with_defect(d: u32, n_max: u64) -> Result<Vec<(u64, u64)>> {
    if d < 3 || n_max < 1 {
        return Err(domain(format!("plateau set: need d >= 3 and N >= 1, got d={d}, N={n_max}")));
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let nk = defect_threshold(d, k);
        let point = nk - 1;
        if point > BigInt::from(n_max) {
            break;
        }
        if point >= BigInt::one() {
            let n: u64 = u64::try_from(&point).expect("plateau point fits u64");
            out.push((n, k - 1));
        }
        k += 1;
    }
    Ok(out)
}

/// Plateau points only (see [`plateau_points_with_defect`]).
pub fn plateau_set(d: u32, n_max: u64) -> Result<Vec<u64>> {
    Ok(plateau_points_with_defect(d, n_max)?.into_iter().map(|(n, _)| n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Increment-scan oracle for the defining minimization.
    fn slice_rank_brute(n: u64, d: u32) -> u64 {
        (0..=n).find(|&r| slice_rank_predicate(n, d, r)).unwrap()
    }

    fn simultaneous_brute(n: u64, degrees: &[u32]) -> Option<u64> {
        (0..=n).find(|&r| {
            let lhs = BigInt::from(r) * BigInt::from(n + 1 - r);
            let rhs: BigInt = degrees
                .iter()
                .map(|&d| binom((d as u64 + n - r) as i64, d as u64).unwrap())
                .sum();
            lhs >= rhs
        })
    }

    #[test]
    fn fano_delta_examples() {
        assert_eq!(fano_delta(3, 3, 1).unwrap(), BigInt::from(0));
        assert_eq!(fano_delta(3, 4, 1).unwrap(), BigInt::from(-1));
        for n in 1..10u64 {
            for d in 3..8u32 {
                assert_eq!(fano_delta(n, d, 0).unwrap(), BigInt::from(n as i64 - 1));
            }
        }
    }

    #[test]
    fn general_slice_rank_examples() {
        assert_eq!(general_slice_rank(3, 2).unwrap(), 2);
        assert_eq!(general_slice_rank(3, 4).unwrap(), 3);
        assert_eq!(general_slice_rank(3, 3).unwrap(), 2);
        assert_eq!(general_slice_rank(1, 9).unwrap(), 1);
        // binary search agrees with the increment scan
        for n in 1..=60u64 {
            for d in 3..=10u32 {
                assert_eq!(general_slice_rank(n, d).unwrap(), slice_rank_brute(n, d), "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn quadric_closed_form() {
        for n in 1..=50u64 {
            assert_eq!(general_slice_rank(n, 2).unwrap(), (n + 1).div_ceil(2));
        }
    }

    #[test]
    fn fano_consistency() {
        // slrk(n, d) = min { r : delta(n, d, n-r) >= 0 } for d >= 3
        for n in 1..=25u64 {
            for d in 3..=9u32 {
                let via_fano = (0..=n)
                    .find(|&r| fano_delta(n, d, n - r).unwrap() >= BigInt::zero())
                    .unwrap();
                assert_eq!(general_slice_rank(n, d).unwrap(), via_fano, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn simultaneous_slice_rank_examples() {
        // a single degree reduces to the plain generic slice rank
        for n in 1..=30u64 {
            for d in 3..=9u32 {
                let p = DegreeProfile::new(vec![d]).unwrap();
                assert_eq!(
                    simultaneous_slice_rank(n, &p).unwrap(),
                    general_slice_rank(n, d).unwrap()
                );
            }
        }
        let p = DegreeProfile::new(vec![3, 3]).unwrap();
        assert_eq!(simultaneous_slice_rank(3, &p).unwrap(), 3);
        // frozen from the increment-scan oracle below
        let p = DegreeProfile::new(vec![3]).unwrap();
        assert_eq!(simultaneous_brute(5, &[3]), Some(4));
        assert_eq!(simultaneous_slice_rank(5, &p).unwrap(), 4);
        // oracle agreement on a grid
        for n in 1..=15u64 {
            for degs in [vec![3, 3], vec![3, 4], vec![4, 5, 5], vec![3, 3, 3, 3]] {
                let p = DegreeProfile::new(degs.clone()).unwrap();
                match simultaneous_brute(n, &degs) {
                    Some(r) => assert_eq!(simultaneous_slice_rank(n, &p).unwrap(), r),
                    None => assert!(simultaneous_slice_rank(n, &p).is_err()),
                }
            }
        }
        assert!(simultaneous_slice_rank(3, &DegreeProfile::empty()).is_err());
        assert!(simultaneous_slice_rank(3, &DegreeProfile::new(vec![2, 3]).unwrap()).is_err());
    }

    #[test]
    fn root_floor_examples_and_certificates() {
        let rb = root_poly_floor(3, 4).unwrap();
        assert_eq!(rb.floor_a, 0);

        for n in [1u64, 2, 5, 17, 100, 1234, 99991] {
            for d in 3..=10u32 {
                let rb = root_poly_floor(n, d).unwrap();
                let slrk = general_slice_rank(n, d).unwrap();
                assert_eq!(rb.floor_a, n - slrk, "defect identity at n={n}, d={d}");
                assert!(root_poly_eval_rational(n, d, &rb.upper) > BigRational::zero());
                if let Some(lower) = &rb.lower {
                    assert!(root_poly_eval_rational(n, d, lower) < BigRational::zero());
                    assert!(lower < &rb.upper);
                }
            }
        }
    }

    #[test]
    fn lower_bound_present_in_the_largeness_regime() {
        // beyond the largeness threshold the certified lower bound exists
        for (d, n) in [(4u32, 9u64), (4, 755), (5, 6), (6, 604), (7, 130), (8, 61), (9, 119), (10, 276)] {
            let rb = root_poly_floor(n, d).unwrap();
            assert!(rb.lower.is_some(), "d={d}, n={n}");
        }
        // and w matches the offset convention
        assert_eq!(offset_w(4), BigRational::from(BigInt::from(6)));
        assert_eq!(offset_w(6), BigRational::from(BigInt::from(4)));
        assert_eq!(offset_w(9), BigRational::new(BigInt::from(11), BigInt::from(2)));
    }

    #[test]
    fn plateau_set_examples() {
        let p = plateau_set(4, 10).unwrap();
        assert!(p.contains(&3) && p.contains(&6), "{p:?}");
        assert_eq!(general_slice_rank(3, 4).unwrap(), general_slice_rank(4, 4).unwrap());
        assert_eq!(general_slice_rank(6, 4).unwrap(), general_slice_rank(7, 4).unwrap());

        for d in 3..=10u32 {
            let pts = plateau_set(d, 1).unwrap();
            let brute: Vec<u64> = (1..=1u64)
                .filter(|&n| general_slice_rank(n, d).unwrap() == general_slice_rank(n + 1, d).unwrap())
                .collect();
            assert_eq!(pts, brute, "d={d}");
        }
    }

    #[test]
    fn plateau_set_matches_brute_force_scan() {
        for d in 3..=10u32 {
            let cap = 400u64;
            let brute: Vec<u64> = (1..=cap)
                .filter(|&n| general_slice_rank(n, d).unwrap() == general_slice_rank(n + 1, d).unwrap())
                .collect();
            assert_eq!(plateau_set(d, cap).unwrap(), brute, "d={d}");
            for (n, defect) in plateau_points_with_defect(d, cap).unwrap() {
                assert_eq!(defect, n - general_slice_rank(n, d).unwrap());
            }
        }
    }

    #[test]
    fn monotonicity_in_n() {
        for d in 3..=12u32 {
            let mut prev = general_slice_rank(1, d).unwrap();
            for n in 2..=300u64 {
                let cur = general_slice_rank(n, d).unwrap();
                assert!(cur >= prev && cur <= prev + 1, "n={n}, d={d}");
                prev = cur;
            }
        }
    }
}
