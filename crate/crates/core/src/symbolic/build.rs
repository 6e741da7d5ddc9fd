//! Construction of the bounding polynomials used by the asymptotic
//! argument, their one-variable majorants and the threshold polynomial.
//!
//! Everything here is built from a fully symbolic copy of the codimension
//! function: `f_{n,d}(m, l_2, ..., l_j, 0, ..., 0)` as a polynomial in
//! `n, m, l_2, ..., l_j`. The two difference polynomials are
//!
//! - `g_a(d, j) = f(m, ..., l_{j-1}, l_j, 0...) - f(m, ..., l_{j-1}+1,
//!   l_j - 1, 0...) - 1`, in which `n` cancels identically, and
//! - `g_b(d) = f(m, l, 0...) - f(m-1, l-1, 0...) - 1 + n`, in which the
//!   `n`-coefficient of the difference is exactly `-1`.
//!
//! Both constructors verify those cancellations symbolically and fail
//! loudly if they do not hold, along with the degree and top-coefficient
//! laws they are known to satisfy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, internal, Result};
use crate::series::factorial;
use crate::slicerank::offset_w;
use crate::strength::betas;

use super::poly::{rat_int, MultiPoly, UniPoly};

/// `C(x + e, e)` expanded as a polynomial of degree `e` in variable `idx`.
pub fn binom_poly(vars: Vec<String>, idx: usize, e: u32) -> MultiPoly {
    let mut p = MultiPoly::constant(vars.clone(), BigRational::one());
    let x = MultiPoly::var(vars, idx);
    for t in 1..=e as i64 {
        p = p.mul(&x.add_constant(&rat_int(t)));
    }
    p.scale(&BigRational::new(BigInt::one(), factorial(e)))
}

/// `C(x, b)` = `x(x-1)...(x-b+1)/b!` in variable `idx`.
fn falling_binom_poly(vars: Vec<String>, idx: usize, b: u32) -> MultiPoly {
    let mut p = MultiPoly::constant(vars.clone(), BigRational::one());
    let x = MultiPoly::var(vars, idx);
    for t in 0..b as i64 {
        p = p.mul(&x.add_constant(&rat_int(-t)));
    }
    p.scale(&BigRational::new(BigInt::one(), factorial(b)))
}

/// Variable list `[n, m, l2, ..., l_j]`.
fn f_vars(j: u32) -> Vec<String> {
    let mut vars = vec!["n".to_string(), "m".to_string()];
    for i in 2..=j {
        vars.push(format!("l{i}"));
    }
    vars
}

/// Fully symbolic `f_{n,d}(m, l_2, ..., l_j, 0, ..., 0)` in the variables
/// `n, m, l_2, ..., l_j`.
fn symbolic_f(d: u32, j: u32) -> MultiPoly {
    assert!(d >= 4 && 2 <= j && j <= d / 2);
    let vars = f_vars(j);
    let mut sum = MultiPoly::zero(vars.clone());
    'matrices: for beta in betas(d) {
        // columns beyond j carry l_i = 0: only the zero entry survives
        for &(b1, b2) in beta.entries.iter().skip(j as usize - 1) {
            if b1 > 0 || b2 > 0 {
                continue 'matrices;
            }
        }
        let mut term = binom_poly(vars.clone(), 1, d - beta.norm);
        for (col, &(b1, b2)) in beta.entries.iter().enumerate().take(j as usize - 1) {
            let var_idx = col + 2;
            if b1 > 0 {
                term = term.mul(&falling_binom_poly(vars.clone(), var_idx, b1));
            }
            if b2 > 0 {
                term = term.mul(&falling_binom_poly(vars.clone(), var_idx, b2));
            }
        }
        if beta.parity_neg {
            term = term.neg();
        }
        sum = sum.add(&term);
    }
    // - (n - m)(m + 1)
    let n = MultiPoly::var(vars.clone(), 0);
    let m = MultiPoly::var(vars.clone(), 1);
    let linear = n.sub(&m).mul(&m.add_constant(&BigRational::one()));
    sum.sub(&linear)
}

/// The difference polynomial for moving one summand from degree `j` to
/// degree `j-1`; free of `n`, of total degree `d-j+1`, with top part
/// `m^{d-j+1}/(d-j+1)!`. Variables: `m, l2, ..., l_j`.
pub fn build_g_a(d: u32, j: u32) -> Result<MultiPoly> {
    if d < 6 || j < 3 || j > d / 2 {
        return Err(domain(format!("g_a: need d >= 6 and 3 <= j <= d/2, got d={d}, j={j}")));
    }
    let f1 = symbolic_f(d, j);
    let f2 = f1.shift_var(j as usize - 1, 1).shift_var(j as usize, -1);
    let g = f1.sub(&f2).add_constant(&rat_int(-1));
    if g.involves_var(0) {
        return Err(internal(format!("g_a({d},{j}): n failed to cancel")));
    }
    let g = g.remove_unused_var(0)?;
    let deg = d - j + 1;
    if g.total_degree() != deg {
        return Err(internal(format!(
            "g_a({d},{j}): total degree {} instead of {deg}",
            g.total_degree()
        )));
    }
    let top = g.top_homogeneous();
    let mut expected_exps = vec![0u32; g.vars().len()];
    expected_exps[0] = deg;
    let expected_coeff = BigRational::new(BigInt::one(), factorial(deg));
    if top.num_terms() != 1 || top.coeff(&expected_exps) != expected_coeff {
        return Err(internal(format!("g_a({d},{j}): top homogeneous part is not m^{deg}/{deg}!")));
    }
    Ok(g)
}

/// The difference polynomial for lowering both `m` and the number of
/// degree-2 summands by one. Variables: `m, l2`; total degree `d-1`,
/// leading pure-`m` coefficient `1/(d-1)!`.
pub fn build_g_b(d: u32) -> Result<MultiPoly> {
    if d < 4 {
        return Err(domain(format!("g_b: need d >= 4, got {d}")));
    }
    let f1 = symbolic_f(d, 2);
    let f2 = f1.shift_var(1, -1).shift_var(2, -1);
    let h = f1.sub(&f2).add_constant(&rat_int(-1));
    // the n-part of the difference must be exactly -n
    let n = MultiPoly::var(h.vars().to_vec(), 0);
    let g = h.add(&n);
    if g.involves_var(0) {
        return Err(internal(format!("g_b({d}): n-coefficient of the difference is not -1")));
    }
    let g = g.remove_unused_var(0)?;
    if g.total_degree() != d - 1 {
        return Err(internal(format!(
            "g_b({d}): total degree {} instead of {}",
            g.total_degree(),
            d - 1
        )));
    }
    let mut top_m = vec![0u32; g.vars().len()];
    top_m[0] = d - 1;
    if g.coeff(&top_m) != BigRational::new(BigInt::one(), factorial(d - 1)) {
        return Err(internal(format!("g_b({d}): leading pure-m coefficient is not 1/{}!", d - 1)));
    }
    Ok(g)
}

/// One-variable majorant: zero out every positive coefficient with a
/// nonzero ell-exponent, then substitute each `l_i -> m`. The result
/// satisfies `g(m, l) >= tilde(g)(m)` whenever `0 <= l_i <= m`.
pub fn tilde_transform(p: &MultiPoly) -> UniPoly {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (exps, c) in p.terms() {
        let ell_total: u32 = exps[1..].iter().sum();
        if c > &BigRational::from(BigInt::ZERO) && ell_total > 0 {
            continue;
        }
        let k = (exps[0] + ell_total) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::from(BigInt::ZERO));
        }
        coeffs[k] += c;
    }
    UniPoly::new(coeffs)
}

/// `tilde(g_b)(x) - (x + w - 1)^{d-1}/d!`: positive from the largest real
/// root onward; degree `d-1` with leading coefficient `(d-1)/d!`.
pub fn b_threshold_poly(d: u32, w: &BigRational) -> Result<UniPoly> {
    let tilde = tilde_transform(&build_g_b(d)?);
    let shift = w - BigRational::one();
    let pow = UniPoly::shifted_power(&shift, d - 1)
        .scale(&BigRational::new(BigInt::one(), factorial(d)));
    Ok(tilde.sub(&pow))
}

/// The offset used by the threshold computation: `d+2` for `d <= 5`,
/// `d/2 + 1` (exact rational) for larger degrees.
pub fn choose_w(d: u32) -> Result<BigRational> {
    if d < 4 {
        return Err(domain(format!("choose_w: need d >= 4, got {d}")));
    }
    Ok(offset_w(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strength::f_eval;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn binom_poly_examples() {
        let vars = vec!["m".to_string()];
        assert_eq!(binom_poly(vars.clone(), 0, 0).to_string(), "1");
        assert_eq!(binom_poly(vars.clone(), 0, 2).to_string(), "1/2*m^2 + 3/2*m + 1");
        assert_eq!(binom_poly(vars.clone(), 0, 4).eval_ints(&[1]), rat_int(5));
    }

    #[test]
    fn sextic_j3_difference_polynomial() {
        let g = build_g_a(6, 3).unwrap();
        // golden form in variables m, l2, l3
        assert_eq!(
            g.to_string(),
            "1/24*m^4 + 1/12*m^3 - 1/2*m^2*l2 - 1/24*m^2 - 3/2*m*l2 + 1/2*l2^2 - 1/12*m - 3/2*l2 + 2*l3 - 3"
        );
        let tilde = tilde_transform(&g);
        assert_eq!(tilde.to_string(), "1/24*x^4 - 5/12*x^3 - 37/24*x^2 - 19/12*x - 3");
    }

    #[test]
    fn quartic_b_polynomial() {
        let g = build_g_b(4).unwrap();
        assert_eq!(g.to_string(), "1/6*m^3 - 2*m*l2 + 17/6*m + 2*l2 - 3");
        // ell-degree is 1
        assert!(g.terms().all(|(e, _)| e[1] <= 1));
        // cross-check against the integer evaluation path at (m, l) = (5, 2):
        // g(m, l) - n == f(m, l) - f(m-1, l-1) - 1 for any n
        for n in [7u64, 11, 40] {
            let direct = f_eval(n, 4, 5, &[2]).unwrap() - f_eval(n, 4, 4, &[1]).unwrap()
                - BigInt::from(1);
            let via_g = g.eval_ints(&[5, 2]) - rat_int(n as i64);
            assert_eq!(via_g, BigRational::from(direct));
        }
    }

    #[test]
    fn difference_polynomials_match_integer_evaluations() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for d in 6..=10u32 {
            for j in 3..=d / 2 {
                let g = build_g_a(d, j).unwrap();
                for _ in 0..40 {
                    let m = rng.gen_range(0..=12u64);
                    let mut tail: Vec<u64> =
                        (0..(d / 2 - 1) as usize).map(|_| 0).collect();
                    for t in tail.iter_mut().take(j as usize - 1) {
                        *t = rng.gen_range(0..=6u64);
                    }
                    if tail[j as usize - 2] == 0 {
                        tail[j as usize - 2] = 1; // the move needs l_j >= 1
                    }
                    let mut moved = tail.clone();
                    moved[j as usize - 3] += 1;
                    moved[j as usize - 2] -= 1;
                    let n = rng.gen_range(0..=30u64);
                    let diff = f_eval(n, d, m, &tail).unwrap()
                        - f_eval(n, d, m, &moved).unwrap()
                        - BigInt::from(1);
                    let mut point = vec![m as i64];
                    point.extend(tail.iter().take(j as usize - 1).map(|&v| v as i64));
                    assert_eq!(
                        g.eval_ints(&point),
                        BigRational::from(diff),
                        "d={d}, j={j}, m={m}, tail={tail:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn top_coefficient_laws() {
        for d in 6..=12u32 {
            for j in 3..=d / 2 {
                build_g_a(d, j).unwrap(); // constructor asserts the law
            }
        }
        for d in 4..=12u32 {
            build_g_b(d).unwrap();
        }
    }

    #[test]
    fn tilde_dominates_on_the_box() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for d in [4u32, 6, 7, 10] {
            let polys: Vec<MultiPoly> = if d >= 6 {
                let mut v = vec![build_g_b(d).unwrap()];
                v.extend((3..=d / 2).map(|j| build_g_a(d, j).unwrap()));
                v
            } else {
                vec![build_g_b(d).unwrap()]
            };
            for g in polys {
                let tilde = tilde_transform(&g);
                for _ in 0..60 {
                    let m = rng.gen_range(0..=20i64);
                    let point: Vec<i64> = std::iter::once(m)
                        .chain((1..g.vars().len()).map(|_| rng.gen_range(0..=m.max(0))))
                        .collect();
                    let lhs = g.eval_ints(&point);
                    let rhs = tilde.eval(&rat_int(m));
                    assert!(lhs >= rhs, "d={d}, point={point:?}");
                }
            }
        }
    }

    #[test]
    fn tilde_is_identity_on_pure_m_polynomials() {
        let g = build_g_b(5).unwrap();
        let only_m: Vec<(Vec<u32>, BigRational)> = g
            .sorted_terms()
            .into_iter()
            .filter(|(e, _)| e[1..].iter().all(|&x| x == 0))
            .collect();
        let mut pure = MultiPoly::zero(g.vars().to_vec());
        for (e, c) in only_m {
            pure = pure.add(&MultiPoly::constant(g.vars().to_vec(), c).mul(&{
                let mut p = MultiPoly::constant(g.vars().to_vec(), BigRational::one());
                for _ in 0..e[0] {
                    p = p.mul(&MultiPoly::var(g.vars().to_vec(), 0));
                }
                p
            }));
        }
        let t = tilde_transform(&pure);
        for v in 0..8i64 {
            assert_eq!(t.eval(&rat_int(v)), pure.eval_ints(&[v, 0]));
        }
    }

    #[test]
    fn b_threshold_shape() {
        let w = choose_w(4).unwrap();
        assert_eq!(w, rat_int(6));
        let p = b_threshold_poly(4, &w).unwrap();
        assert_eq!(p.degree(), Some(3));
        // leading coefficient (d-1)/d!
        assert_eq!(*p.leading().unwrap(), BigRational::new(BigInt::from(3), factorial(4)));
        assert!(p.eval(&rat_int(100)) > BigRational::zero());
        for d in 4..=10u32 {
            let p = b_threshold_poly(d, &choose_w(d).unwrap()).unwrap();
            assert_eq!(
                *p.leading().unwrap(),
                BigRational::new(BigInt::from(d as i64 - 1), factorial(d))
            );
        }
        assert_eq!(choose_w(6).unwrap(), rat_int(4));
        assert_eq!(choose_w(9).unwrap(), BigRational::new(BigInt::from(11), BigInt::from(2)));
    }
}
