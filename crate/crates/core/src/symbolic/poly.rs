//! Exact multivariate and univariate polynomials over the rationals.
//!
//! `MultiPoly` is a sparse map from exponent vectors to nonzero rational
//! coefficients with a fixed, named variable list. It supports exactly the
//! algebra the bounding-polynomial constructions need: ring operations,
//! shifting a variable by an integer, evaluation, degree queries and a
//! canonical textual dump (total degree descending, then exponent vectors
//! lexicographically descending) for golden-file tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{internal, Result};

pub fn rat_int(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// Truncated decimal rendering of a rational, e.g. for display next to the
/// exact numerator/denominator form.
pub fn rational_decimal_approx(x: &BigRational, digits: u32) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let x = x.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * BigRational::from(scale.clone())).floor().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let frac = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    format!("{sign}{int_part}.{frac}")
}

pub(crate) fn rat_pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn var(vars: Vec<String>, idx: usize) -> Self {
        assert!(idx < vars.len());
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists must match");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists must match");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists must match");
        let mut out = Self::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let mut out = Self::zero(self.vars.clone());
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn add_constant(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.insert(vec![0; self.vars.len()], c.clone());
        out
    }

    /// Substitute `x_idx -> x_idx + delta`, expanding binomially.
    pub fn shift_var(&self, idx: usize, delta: i64) -> Self {
        assert!(idx < self.vars.len());
        if delta == 0 {
            return self.clone();
        }
        let dr = rat_int(delta);
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let k = e[idx];
            // (x + delta)^k = sum_j C(k, j) delta^{k-j} x^j
            let mut coef = BigRational::one();
            // walk j = k down to 0 keeping C(k,j) delta^{k-j} incrementally
            let mut binom_c = BigRational::one();
            for j in (0..=k).rev() {
                let mut ne = e.clone();
                ne[idx] = j;
                out.insert(ne, c * &binom_c * &coef);
                if j > 0 {
                    // next: j-1; C(k, j-1) = C(k, j) * j / (k - j + 1)
                    binom_c *= rat_int(j as i64);
                    binom_c /= rat_int((k - j + 1) as i64);
                    coef *= &dr;
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term *= rat_pow(&point[idx], exp);
                }
            }
            sum += term;
        }
        sum
    }

    pub fn eval_ints(&self, point: &[i64]) -> BigRational {
        let pt: Vec<BigRational> = point.iter().map(|&v| rat_int(v)).collect();
        self.eval(&pt)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// The homogeneous component of top total degree.
    pub fn top_homogeneous(&self) -> Self {
        let deg = self.total_degree();
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == deg {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn involves_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e[idx] > 0)
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Drop a variable that no term uses, reindexing the remaining ones.
    pub fn remove_unused_var(&self, idx: usize) -> Result<Self> {
        if self.involves_var(idx) {
            return Err(internal(format!(
                "variable {} still occurs and cannot be removed",
                self.vars[idx]
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.remove(idx);
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Canonical term order: total degree descending, then exponent vector
    /// lexicographically descending.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        let mut terms: Vec<(Vec<u32>, BigRational)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(&a.0))
        });
        terms
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let constant = exps.iter().all(|&e| e == 0);
            if constant || mag != BigRational::one() {
                parts.push(fmt_coeff(&mag));
            }
            for (idx, &e) in exps.iter().enumerate() {
                if e == 1 {
                    parts.push(self.vars[idx].clone());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.vars[idx], e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Dense univariate polynomial over the rationals; index = power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from(x.clone()))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a - b
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// `(x + shift)^e`, expanded.
    pub fn shifted_power(shift: &BigRational, e: u32) -> Self {
        let mut coeffs = vec![BigRational::zero(); e as usize + 1];
        // C(e, j) shift^{e-j} x^j
        let mut binom_c = BigRational::one();
        let mut pow = rat_pow(shift, e);
        let shift_is_zero = shift.is_zero();
        for j in 0..=e {
            coeffs[j as usize] = if shift_is_zero {
                if j == e {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            } else {
                &binom_c * &pow
            };
            if j < e {
                binom_c *= rat_int((e - j) as i64);
                binom_c /= rat_int(j as i64 + 1);
                if !shift_is_zero {
                    pow /= shift;
                }
            }
        }
        Self::new(coeffs)
    }

    /// View a polynomial in one free variable as univariate; every term may
    /// use only `var_idx`.
    pub fn from_multipoly(p: &MultiPoly, var_idx: usize) -> Result<Self> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (e, c) in p.terms() {
            for (idx, &exp) in e.iter().enumerate() {
                if idx != var_idx && exp > 0 {
                    return Err(internal(format!(
                        "polynomial is not univariate in {}",
                        p.vars()[var_idx]
                    )));
                }
            }
            let k = e[var_idx] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += c;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 || mag != BigRational::one() {
                write!(f, "{}", fmt_coeff(&mag))?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k == 1 {
                write!(f, "x")?;
            } else if k > 1 {
                write!(f, "x^{k}")?;
            }
        }
        Ok(())
    }
}
