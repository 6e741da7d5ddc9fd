//! Exhaustive verification of the boundary cases of the key inequality.
//!
//! For a degree `4 <= d <= 10` the inequality
//! `f_{n,d}(m, tail) >= f_{n,d}(m - sum(tail), 0...)` reduces, for `n` up
//! to the certified threshold, to finitely many boundary cases: `n` a
//! plateau point of the generic slice rank, `m - sum(tail)` exactly one
//! more than the defect `n - slrk(n,d)`, and `m` at most the certified
//! case bound. [`verify_degree`] enumerates exactly those cases, evaluates
//! both sides exactly, and emits a machine-readable [`Certificate`].
//!
//! Cases are checked by direct evaluation of both sides; the bounding
//! polynomial machinery is used only to bound the case space, and
//! [`certify_asymptotic`] separately certifies the sign facts the
//! reduction rests on.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, internal, Result};
use crate::slicerank::plateau_points_with_defect;
use crate::strength::{f_eval, f_eval_i128};
use crate::symbolic::poly::rational_decimal_approx;
use crate::symbolic::{certify_positive_beyond, compute_n, threshold_is_valid, DegreeConfig};

/// Tuning knobs for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Width of the certified root intervals driving the thresholds.
    pub interval_width: BigRational,
    /// Worker threads; `None` uses the ambient thread pool.
    pub workers: Option<usize>,
    /// At most this many violations are kept in the certificate.
    pub violation_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            interval_width: BigRational::new(BigInt::from(1), BigInt::from(1000)),
            workers: None,
            violation_cap: 1000,
        }
    }
}

/// One verified instance of the key inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub n: u64,
    pub d: u32,
    pub m: u64,
    pub ell_tail: Vec<u64>,
    /// Exact integers as decimal strings.
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub strict: bool,
    pub exceptional: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootIntervalRecord {
    pub statement: String,
    pub poly: String,
    /// `"none"` when the polynomial has no real root, else exact rationals.
    pub lo: String,
    pub hi: String,
    pub lo_approx: String,
    pub hi_approx: String,
}

/// Machine-readable record of one exhaustive verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub d: u32,
    pub tool_version: String,
    pub verdict: String,
    pub w: String,
    pub n_paper: Option<u64>,
    pub n_computed: u64,
    /// The bound the run actually covered: max of the published and the
    /// recomputed threshold.
    pub n_used: u64,
    pub largeness_threshold: u64,
    pub m_bound: u64,
    pub threshold_valid: bool,
    pub root_intervals: Vec<RootIntervalRecord>,
    pub plateau_count: u64,
    pub case_count: u64,
    pub exceptional: Vec<CaseRecord>,
    pub violations: Vec<CaseRecord>,
    pub violations_truncated: bool,
    pub duration_ms: u128,
    pub reduction_notes: String,
}

impl Certificate {
    /// Case records as comma-separated rows (header included).
    pub fn cases_csv(records: &[CaseRecord], d: u32) -> String {
        let mut out = csv_header(d);
        for r in records {
            csv_row(&mut out, r);
        }
        out
    }
}

fn csv_header(d: u32) -> String {
    let mut out = String::from("n,d,m");
    for i in 2..=d / 2 {
        out.push_str(&format!(",l{i}"));
    }
    out.push_str(",lhs,rhs,strict,exceptional\n");
    out
}

fn csv_row(out: &mut String, r: &CaseRecord) {
    out.push_str(&format!("{},{},{}", r.n, r.d, r.m));
    for l in &r.ell_tail {
        out.push_str(&format!(",{l}"));
    }
    out.push_str(&format!(",{},{},{},{}\n", r.lhs, r.rhs, r.strict, r.exceptional));
}

/// Iterator over all ways of writing `total` as an ordered sum of `parts`
/// nonnegative integers, in a fixed deterministic order.
pub struct Compositions {
    state: Option<Vec<u64>>,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        assert!(parts >= 1);
        let mut first = vec![0; parts];
        first[0] = total;
        Self { state: Some(first) }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.state.take()?;
        // successor: move one unit from the leftmost positive entry to the
        // next slot, gathering everything before it back onto the first
        let parts = current.len();
        let mut next = current.clone();
        let mut i = 0;
        while i < parts && next[i] == 0 {
            i += 1;
        }
        if i + 1 < parts {
            let head: u64 = next[..=i].iter().sum();
            next[..=i].iter_mut().for_each(|v| *v = 0);
            next[0] = head - 1;
            next[i + 1] += 1;
            self.state = Some(next);
        }
        Some(current)
    }
}

/// The claim-level case coordinates for one degree: for every plateau
/// point `n <= n_max` with defect `k`, every `m` with
/// `k + 1 <= m <= min(n, m_bound)`; tails summing to `m - k - 1` are
/// enumerated per coordinate by [`Compositions`].
pub fn enumerate_cases(d: u32, config: &DegreeConfig, n_max: u64) -> Result<Vec<(u64, u64, u64)>> {
    if !(4..=10).contains(&d) {
        return Err(domain(format!("enumerate_cases: degree must be between 4 and 10, got {d}")));
    }
    let mut units = Vec::new();
    for (n, defect) in plateau_points_with_defect(d, n_max)? {
        let m_hi = n.min(config.m_bound);
        for m in defect + 1..=m_hi {
            units.push((n, defect, m));
        }
    }
    Ok(units)
}

struct UnitOutcome {
    count: u64,
    exceptional: Vec<CaseRecord>,
    violations: Vec<CaseRecord>,
}

fn check_unit(d: u32, n: u64, defect: u64, m: u64) -> Result<UnitOutcome> {
    let parts = (d / 2) as usize - 1;
    let tail_sum = m - defect - 1;
    let tail_nonzero = tail_sum > 0;
    let rhs_small = f_eval_i128(n, d, defect + 1, &[]);
    let rhs_big = match rhs_small {
        Some(v) => BigInt::from(v),
        None => f_eval(n, d, defect + 1, &[])?,
    };
    let mut out = UnitOutcome { count: 0, exceptional: Vec::new(), violations: Vec::new() };
    for tail in Compositions::new(tail_sum, parts) {
        out.count += 1;
        let (lhs_big, holds, strict);
        match (f_eval_i128(n, d, m, &tail), rhs_small) {
            (Some(l), Some(r)) => {
                holds = l >= r;
                strict = l > r;
                lhs_big = BigInt::from(l);
            }
            _ => {
                lhs_big = f_eval(n, d, m, &tail)?;
                holds = lhs_big >= rhs_big;
                strict = lhs_big > rhs_big;
            }
        }
        let exceptional = tail_nonzero && n == 3 && d == 4 && m - tail[0] == 1;
        let violating = !holds || (tail_nonzero && !exceptional && !strict);
        if violating || exceptional {
            let record = CaseRecord {
                n,
                d,
                m,
                ell_tail: tail.clone(),
                lhs: lhs_big.to_string(),
                rhs: rhs_big.to_string(),
                holds,
                strict,
                exceptional,
            };
            if violating {
                out.violations.push(record.clone());
            }
            if exceptional {
                out.exceptional.push(record);
            }
        }
    }
    Ok(out)
}

fn sort_records(records: &mut [CaseRecord]) {
    records.sort_by(|a, b| (a.n, a.m, &a.ell_tail).cmp(&(b.n, b.m, &b.ell_tail)));
}

fn root_interval_records(config: &DegreeConfig) -> Vec<RootIntervalRecord> {
    config
        .statements
        .iter()
        .map(|s| match s.isolation.interval() {
            Some(iv) => RootIntervalRecord {
                statement: s.id.to_string(),
                poly: s.poly.to_string(),
                lo: iv.lo.to_string(),
                hi: iv.hi.to_string(),
                lo_approx: rational_decimal_approx(&iv.lo, 6),
                hi_approx: rational_decimal_approx(&iv.hi, 6),
            },
            None => RootIntervalRecord {
                statement: s.id.to_string(),
                poly: s.poly.to_string(),
                lo: "none".into(),
                hi: "none".into(),
                lo_approx: "none".into(),
                hi_approx: "none".into(),
            },
        })
        .collect()
}

fn run_verification(
    d: u32,
    options: &VerifyOptions,
    mut csv: Option<&mut dyn std::io::Write>,
) -> Result<Certificate> {
    if !(4..=10).contains(&d) {
        return Err(domain(format!("verify: degree must be between 4 and 10, got {d}")));
    }
    let start = Instant::now();
    let config = compute_n(d, &options.interval_width)?;
    let n_used = config.n_paper.unwrap_or(0).max(config.n_computed);
    let threshold_valid = threshold_is_valid(&config, n_used);
    if !threshold_valid {
        return Err(internal(format!(
            "verify: the threshold actually used (n={n_used}) fails its validity predicate"
        )));
    }
    let plateau_count = plateau_points_with_defect(d, n_used)?.len() as u64;
    let units = enumerate_cases(d, &config, n_used)?;

    let outcomes: Vec<UnitOutcome> = if let Some(w) = csv.as_deref_mut() {
        // CSV export wants every record; run sequentially and stream rows.
        w.write_all(csv_header(d).as_bytes()).map_err(|e| internal(format!("csv write: {e}")))?;
        let mut all = Vec::with_capacity(units.len());
        for &(n, defect, m) in &units {
            let parts = (d / 2) as usize - 1;
            let tail_nonzero = m - defect - 1 > 0;
            let rhs = match f_eval_i128(n, d, defect + 1, &[]) {
                Some(v) => BigInt::from(v),
                None => f_eval(n, d, defect + 1, &[])?,
            };
            let mut buf = String::new();
            for tail in Compositions::new(m - defect - 1, parts) {
                let lhs = match f_eval_i128(n, d, m, &tail) {
                    Some(v) => BigInt::from(v),
                    None => f_eval(n, d, m, &tail)?,
                };
                csv_row(
                    &mut buf,
                    &CaseRecord {
                        n,
                        d,
                        m,
                        ell_tail: tail.clone(),
                        holds: lhs >= rhs,
                        strict: lhs > rhs,
                        exceptional: tail_nonzero && n == 3 && d == 4 && m - tail[0] == 1,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    },
                );
            }
            w.write_all(buf.as_bytes()).map_err(|e| internal(format!("csv write: {e}")))?;
            all.push(check_unit(d, n, defect, m)?);
        }
        all
    } else {
        let work = || -> Result<Vec<UnitOutcome>> {
            units.par_iter().map(|&(n, defect, m)| check_unit(d, n, defect, m)).collect()
        };
        match options.workers {
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| internal(format!("thread pool: {e}")))?
                .install(work),
            None => work(),
        }?
    };

    let mut case_count = 0u64;
    let mut exceptional = Vec::new();
    let mut violations = Vec::new();
    for o in outcomes {
        case_count += o.count;
        exceptional.extend(o.exceptional);
        violations.extend(o.violations);
    }
    sort_records(&mut exceptional);
    sort_records(&mut violations);
    let violations_truncated = violations.len() > options.violation_cap;
    violations.truncate(options.violation_cap);

    let verdict = if violations.is_empty() { "verified" } else { "refuted" };
    Ok(Certificate {
        d,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        verdict: verdict.to_string(),
        w: config.w.to_string(),
        n_paper: config.n_paper,
        n_computed: config.n_computed,
        n_used,
        largeness_threshold: config.largeness_threshold,
        m_bound: config.m_bound,
        threshold_valid,
        root_intervals: root_interval_records(&config),
        plateau_count,
        case_count,
        exceptional,
        violations,
        violations_truncated,
        duration_ms: start.elapsed().as_millis(),
        reduction_notes: format!(
            "cases cover plateau points n <= {n_used} with m - sum(tail) = defect + 1 and m <= min(n, {}); \
             larger m and larger n are handled by the certified sign bounds",
            config.m_bound
        ),
    })
}

/// Run the exhaustive check for one degree and produce a certificate.
pub fn verify_degree(d: u32, options: &VerifyOptions) -> Result<Certificate> {
    run_verification(d, options, None)
}

/// Same as [`verify_degree`], additionally streaming every case record as
/// CSV into the given writer (runs sequentially).
pub fn verify_degree_with_csv(
    d: u32,
    options: &VerifyOptions,
    csv: &mut dyn std::io::Write,
) -> Result<Certificate> {
    run_verification(d, options, Some(csv))
}

/// Per-statement certificate that the bounding polynomial is positive
/// beyond its isolated root interval.
#[derive(Debug, Clone, Serialize)]
pub struct StatementCertificate {
    pub statement: String,
    pub leading_positive: bool,
    /// Positive value at the interval's upper endpoint (trivially true for
    /// root-free polynomials).
    pub positive_at_hi: bool,
    /// Certified sign constancy on `[hi, oo)`.
    pub positive_beyond: bool,
    pub no_real_root: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub d: u32,
    pub n_used: u64,
    pub statements: Vec<StatementCertificate>,
    /// The largeness condition holds from `n_used + 1` on.
    pub largeness_holds_beyond: bool,
    pub ok: bool,
}

/// Certify the sign facts behind the reduction: every statement family's
/// majorant polynomial is positive beyond its root interval, and the
/// largeness condition holds past the threshold actually used.
pub fn certify_asymptotic(d: u32, options: &VerifyOptions) -> Result<AsymptoticReport> {
    if !(4..=10).contains(&d) {
        return Err(domain(format!("certify_asymptotic: degree must be between 4 and 10, got {d}")));
    }
    let config = compute_n(d, &options.interval_width)?;
    let n_used = config.n_paper.unwrap_or(0).max(config.n_computed);
    let mut ok = true;
    let mut statements = Vec::new();
    for s in &config.statements {
        let leading_positive = s.poly.leading().map(|c| c.is_positive()).unwrap_or(false);
        let cert = match s.isolation.interval() {
            Some(iv) => {
                let positive_at_hi = s.poly.eval(&iv.hi).is_positive();
                let positive_beyond = certify_positive_beyond(&s.poly, &iv.hi);
                StatementCertificate {
                    statement: s.id.to_string(),
                    leading_positive,
                    positive_at_hi,
                    positive_beyond,
                    no_real_root: false,
                }
            }
            None => StatementCertificate {
                statement: s.id.to_string(),
                leading_positive,
                positive_at_hi: true,
                positive_beyond: true,
                no_real_root: true,
            },
        };
        ok &= cert.leading_positive && cert.positive_at_hi && cert.positive_beyond;
        statements.push(cert);
    }
    let largeness_holds_beyond = n_used + 1 >= config.largeness_threshold;
    ok &= largeness_holds_beyond;
    Ok(AsymptoticReport { d, n_used, statements, largeness_holds_beyond, ok })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpotCheckReport {
    pub d: u32,
    pub samples: u64,
    pub n_cap: u64,
    pub seed: u64,
    pub failures: Vec<CaseRecord>,
    pub all_hold: bool,
}

/// Sample tuples strictly above the claim level (`m - sum(tail) >
/// defect + 1`) and confirm the key inequality directly on each.
pub fn spot_check_reduction(d: u32, samples: u64, n_cap: u64, seed: u64) -> Result<SpotCheckReport> {
    use rand::Rng;
    use rand::SeedableRng;
    if !(4..=10).contains(&d) {
        return Err(domain(format!("spot_check: degree must be between 4 and 10, got {d}")));
    }
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let parts = (d / 2) as usize - 1;
    let mut failures = Vec::new();
    let mut done = 0u64;
    let mut attempts = 0u64;
    while done < samples {
        attempts += 1;
        if attempts > samples.saturating_mul(1000) {
            return Err(internal("spot_check: could not find enough admissible tuples"));
        }
        let n = rng.gen_range(2..=n_cap);
        let defect = n - crate::slicerank::general_slice_rank(n, d)?;
        if defect + 2 > n {
            continue;
        }
        let m = rng.gen_range(defect + 2..=n);
        let budget = m - defect - 2;
        let total = rng.gen_range(0..=budget);
        let mut tail = vec![0u64; parts];
        for _ in 0..total {
            let slot = rng.gen_range(0..parts);
            tail[slot] += 1;
        }
        let lhs = f_eval(n, d, m, &tail)?;
        let rhs = f_eval(n, d, m - total, &[])?;
        if lhs < rhs {
            failures.push(CaseRecord {
                n,
                d,
                m,
                ell_tail: tail,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                holds: false,
                strict: false,
                exceptional: false,
            });
        }
        done += 1;
    }
    sort_records(&mut failures);
    Ok(SpotCheckReport { d, samples, n_cap, seed, all_hold: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicerank::general_slice_rank;
    use crate::strength::key_inequality;

    #[test]
    fn compositions_enumerate_exactly_once() {
        let all: Vec<Vec<u64>> = Compositions::new(4, 3).collect();
        assert_eq!(all.len(), 15); // C(4+2, 2)
        let mut seen = std::collections::HashSet::new();
        for c in &all {
            assert_eq!(c.iter().sum::<u64>(), 4);
            assert!(seen.insert(c.clone()));
        }
        assert_eq!(Compositions::new(0, 1).collect::<Vec<_>>(), vec![vec![0]]);
        assert_eq!(Compositions::new(3, 1).collect::<Vec<_>>(), vec![vec![3]]);
    }

    #[test]
    fn quartic_enumeration_matches_brute_force() {
        let options = VerifyOptions::default();
        let config = compute_n(4, &options.interval_width).unwrap();
        let n_cap = 100u64;
        let units = enumerate_cases(4, &config, n_cap).unwrap();
        let mut fast: Vec<(u64, u64, u64)> = Vec::new();
        for &(n, defect, m) in &units {
            for tail in Compositions::new(m - defect - 1, 1) {
                fast.push((n, m, tail[0]));
            }
        }
        // brute force straight from the definitions
        let mut brute = Vec::new();
        for n in 1..=n_cap {
            let slrk = general_slice_rank(n, 4).unwrap();
            if slrk != general_slice_rank(n + 1, 4).unwrap() {
                continue;
            }
            for m in 1..=n.min(config.m_bound) {
                for l2 in 0..=m {
                    if m - l2 == n - slrk + 1 {
                        brute.push((n, m, l2));
                    }
                }
            }
        }
        fast.sort_unstable();
        brute.sort_unstable();
        assert_eq!(fast, brute);
        // the cited expansion at the first plateau point
        let at3: Vec<(u64, u64)> =
            fast.iter().filter(|c| c.0 == 3).map(|c| (c.1, c.2)).collect();
        assert_eq!(at3, vec![(1, 0), (2, 1), (3, 2)]);
    }

    #[test]
    fn quartic_verification_is_clean_with_two_exceptional_cases() {
        let cert = verify_degree(4, &VerifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, "verified");
        assert!(cert.threshold_valid);
        assert_eq!(cert.n_paper, Some(755));
        assert_eq!(cert.n_used, 755u64.max(cert.n_computed));
        let keys: Vec<(u64, u64, Vec<u64>)> =
            cert.exceptional.iter().map(|r| (r.n, r.m, r.ell_tail.clone())).collect();
        assert_eq!(keys, vec![(3, 2, vec![1]), (3, 3, vec![2])]);
        for r in &cert.exceptional {
            assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("1", "1"));
            assert!(r.holds && !r.strict);
        }
        // enumerated cases satisfy the key-inequality preconditions
        let config = compute_n(4, &VerifyOptions::default().interval_width).unwrap();
        for (n, defect, m) in enumerate_cases(4, &config, 60).unwrap() {
            for tail in Compositions::new(m - defect - 1, 1) {
                key_inequality(n, 4, m, &tail).unwrap();
            }
        }
    }

    #[test]
    fn degree_out_of_range_is_rejected() {
        assert!(verify_degree(11, &VerifyOptions::default()).is_err());
        assert!(verify_degree(3, &VerifyOptions::default()).is_err());
    }

    #[test]
    fn certificates_are_deterministic_modulo_timing() {
        let a = verify_degree(4, &VerifyOptions::default()).unwrap();
        let b = verify_degree(4, &VerifyOptions { workers: Some(2), ..VerifyOptions::default() })
            .unwrap();
        let mut va = serde_json::to_value(&a).unwrap();
        let mut vb = serde_json::to_value(&b).unwrap();
        va.as_object_mut().unwrap().remove("duration_ms");
        vb.as_object_mut().unwrap().remove("duration_ms");
        assert_eq!(va, vb);
    }

    #[test]
    fn csv_export_has_all_cases() {
        let mut buf = Vec::new();
        let cert = verify_degree_with_csv(4, &VerifyOptions::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows = text.lines().count() as u64 - 1; // header
        assert_eq!(rows, cert.case_count);
        assert!(text.lines().next().unwrap().starts_with("n,d,m,l2,lhs,rhs"));
    }

    #[test]
    fn asymptotic_certificates_hold() {
        for d in [4u32, 6] {
            let report = certify_asymptotic(d, &VerifyOptions::default()).unwrap();
            assert!(report.ok, "{report:?}");
        }
    }

    #[test]
    fn spot_checks_pass() {
        let r = spot_check_reduction(4, 150, 60, 42).unwrap();
        assert!(r.all_hold, "{:?}", r.failures);
        let r = spot_check_reduction(5, 100, 60, 43).unwrap();
        assert!(r.all_hold);
        // a slack-1 instance above the claim level
        let lhs = f_eval(6, 4, 4, &[1]).unwrap();
        let rhs = f_eval(6, 4, 3, &[]).unwrap();
        assert!(lhs >= rhs);
    }
}
