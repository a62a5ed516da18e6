//! Order-by-order solvers for the functional equations linking quarter
//! plane loops `Q(a, u)`, connected standard arch systems `C(b, v)`, and
//! achievable permutations `S(t)`:
//!
//! - `Q(A(b,v), U(b,v)) = 1 + 2 C(b, v)` with `A = 1 + (1 + 2C)(b - 1)` and
//!   `U = v / (1 + 2C)^2`;
//! - `Q(a, u) = 1 + 2 C(1 - (1-a)/Q, u Q^2)`;
//! - `S = 1 + C(1 - 1/S, t S^2)`;
//! - `Q(-S•, t / (1 + S•)^2) = (1 + S•) / (1 - S•)` and `S = 1 / (1 - S•)`;
//! - `S~ = 1 + C(1, t S~^2)` for standard operation sequences.
//!
//! Every solution is checked by substituting it back into its defining
//! equation before it is returned.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactnum::{compose_bivariate, IntPolynomial, Polynomial, Ring, TruncatedSeries, Var};
use crate::Error;

/// Which equation produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `C` from `Q(A, U) = 1 + 2C`.
    CFromQ,
    /// `S` from `S = 1 + C(1 - 1/S, t S^2)`.
    SFromC,
    /// `S•` from `Q(-S•, t/(1+S•)^2) = (1+S•)/(1-S•)`.
    SprimFromQ,
    /// `S = 1/(1 - S•)` with `S•` from [`Route::SprimFromQ`].
    SFromSprim,
    /// `S~ = 1 + C(1, t S~^2)`.
    STildeFromC,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::CFromQ => "c-from-q",
            Route::SFromC => "s-from-c",
            Route::SprimFromQ => "sprim-from-q",
            Route::SFromSprim => "s-from-sprim",
            Route::STildeFromC => "stilde-from-c",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A solved series, the equation it came from, and the order through
/// which that equation was verified by back-substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationSolution<R> {
    pub series: TruncatedSeries<R>,
    pub route: Route,
    pub residual_order: usize,
}

fn need_order<R>(q: &TruncatedSeries<R>, n: usize) -> Result<(), Error>
where
    R: Ring,
{
    if q.order() < n {
        return Err(Error::OrderMismatch {
            left: q.order(),
            right: n,
        });
    }
    Ok(())
}

fn half(c: &IntPolynomial, what: &str) -> Result<IntPolynomial, Error> {
    c.try_div_int(2)
        .ok_or_else(|| Error::NonIntegral(format!("{what}: {c:?} is odd")))
}

fn b_poly() -> IntPolynomial {
    IntPolynomial::from_i64s(&[0, 1])
}

/// `A(b, v) = b + 2C(b - 1)` and `U(b, v) = v / (1 + 2C)^2`.
pub fn change_of_variables(
    c: &TruncatedSeries<IntPolynomial>,
) -> Result<(TruncatedSeries<IntPolynomial>, TruncatedSeries<IntPolynomial>), Error> {
    let n = c.order();
    let bm1 = IntPolynomial::from_i64s(&[-1, 1]);
    let two_c = c.scale(&IntPolynomial::from_i64(2));
    let a = &TruncatedSeries::constant(Var::V, n, b_poly()) + &two_c.scale(&bm1);
    let one_2c = &TruncatedSeries::one(Var::V, n) + &two_c;
    let u = TruncatedSeries::variable(Var::V, n).try_mul(&(&one_2c * &one_2c).inverse()?)?;
    Ok((a, u))
}

/// `B(a, u) = 1 - (1 - a)/Q` and `V(a, u) = u Q^2`.
pub fn inverse_change_of_variables(
    q: &TruncatedSeries<IntPolynomial>,
) -> Result<(TruncatedSeries<IntPolynomial>, TruncatedSeries<IntPolynomial>), Error> {
    let n = q.order();
    let one_minus_a = IntPolynomial::from_i64s(&[1, -1]);
    let b = &TruncatedSeries::one(Var::U, n) - &q.inverse()?.scale(&one_minus_a);
    let v = TruncatedSeries::variable(Var::U, n).try_mul(&(q * q))?;
    Ok((b, v))
}

/// `Q(A(b, v), U(b, v))` as a series in `v` to the order of `c`.
fn q_of_a_u(
    q: &TruncatedSeries<IntPolynomial>,
    c: &TruncatedSeries<IntPolynomial>,
) -> Result<TruncatedSeries<IntPolynomial>, Error> {
    let (a, u) = change_of_variables(c)?;
    compose_bivariate(q, &a, &u)
}

/// Solves `Q(A, U) = 1 + 2C` for `C(b, v)` to order `n`.
///
/// The `v^m` coefficient of `Q(A, U)` does not involve `c_m`: `A` meets
/// `q_k` only for `k >= 2`, where it is multiplied by `U^k` of valuation
/// `k`, and `c_m` first shows up in `U` at `v^(m+1)`. So each order is an
/// explicit halving.
pub fn solve_c(
    q: &TruncatedSeries<IntPolynomial>,
    n: usize,
) -> Result<EquationSolution<IntPolynomial>, Error> {
    need_order(q, n)?;
    let mut coeffs = vec![IntPolynomial::zero()];
    for m in 1..=n {
        let partial = TruncatedSeries::new(Var::V, m, coeffs.clone());
        let lhs = q_of_a_u(q, &partial)?;
        let cm = half(lhs.coeff(m), "coefficient of C")?;
        if cm.degree().is_some_and(|d| d >= m) {
            return Err(Error::Contract(format!("C coefficient {m} has b-degree {:?}", cm.degree())));
        }
        coeffs.push(cm);
    }
    let c = TruncatedSeries::new(Var::V, n, coeffs);
    let lhs = q_of_a_u(q, &c)?;
    let rhs = &TruncatedSeries::one(Var::V, n) + &c.scale(&IntPolynomial::from_i64(2));
    if lhs != rhs {
        return Err(Error::Contract("Q(A, U) = 1 + 2C fails after solving".into()));
    }
    let q_n = q.truncate(n)?;
    if fe_qc_residual(&q_n, &c)? != TruncatedSeries::zero(Var::U, n) {
        return Err(Error::Contract("Q = 1 + 2C(B, V) fails after solving".into()));
    }
    Ok(EquationSolution {
        series: c,
        route: Route::CFromQ,
        residual_order: n,
    })
}

/// `Q - 1 - 2C(1 - (1-a)/Q, u Q^2)` to the order of `q`.
pub fn fe_qc_residual(
    q: &TruncatedSeries<IntPolynomial>,
    c: &TruncatedSeries<IntPolynomial>,
) -> Result<TruncatedSeries<IntPolynomial>, Error> {
    let n = q.order();
    let (b, v) = inverse_change_of_variables(q)?;
    let cbv = compose_bivariate(&c.truncate(n)?, &b, &v)?;
    let rhs = &TruncatedSeries::one(Var::U, n) + &cbv.scale(&IntPolynomial::from_i64(2));
    q.try_sub(&rhs)
}

fn int_series(var: Var, n: usize, coeffs: Vec<BigInt>) -> TruncatedSeries<BigInt> {
    TruncatedSeries::new(var, n, coeffs)
}

/// `1 + C(1 - 1/S, t S^2)` to the order of `s`.
fn fe_sc_rhs(
    c: &TruncatedSeries<IntPolynomial>,
    s: &TruncatedSeries<BigInt>,
) -> Result<TruncatedSeries<BigInt>, Error> {
    let n = s.order();
    let one = TruncatedSeries::one(Var::T, n);
    let b = &one - &s.inverse()?;
    let v = TruncatedSeries::variable(Var::T, n).try_mul(&(s * s))?;
    let cbv = compose_bivariate(&c.truncate(n)?, &b, &v)?;
    one.try_add(&cbv)
}

/// `1 + C(1, t S~^2)` to the order of `s`.
fn s_tilde_rhs(
    c1: &TruncatedSeries<Polynomial<BigInt>>,
    s: &TruncatedSeries<BigInt>,
) -> Result<TruncatedSeries<BigInt>, Error> {
    let n = s.order();
    let one = TruncatedSeries::one(Var::T, n);
    let v = TruncatedSeries::variable(Var::T, n).try_mul(&(s * s))?;
    let cv = compose_bivariate(&c1.truncate(n)?, &one, &v)?;
    one.try_add(&cv)
}

/// Solves an equation `S = F(S)` where the `t^m` coefficient of `F(S)`
/// only involves coefficients of `S` below `m`.
fn explicit_fixed_point(
    n: usize,
    rhs: impl Fn(&TruncatedSeries<BigInt>) -> Result<TruncatedSeries<BigInt>, Error>,
) -> Result<TruncatedSeries<BigInt>, Error> {
    let mut coeffs = vec![BigInt::from(1)];
    for m in 1..=n {
        let partial = int_series(Var::T, m, coeffs.clone());
        coeffs.push(rhs(&partial)?.coeff(m).clone());
    }
    let s = int_series(Var::T, n, coeffs);
    if rhs(&s)? != s {
        return Err(Error::Contract("fixed point fails after solving".into()));
    }
    Ok(s)
}

/// Solves `S = 1 + C(1 - 1/S, t S^2)` to order `n`.
///
/// `s_m` enters `1 - 1/S` at `t^m` and `t S^2` at `t^(m+1)`; since
/// `t S^2` has valuation one, neither reaches the `t^m` coefficient of the
/// right side.
pub fn solve_s_via_c(
    c: &EquationSolution<IntPolynomial>,
    n: usize,
) -> Result<EquationSolution<BigInt>, Error> {
    need_order(&c.series, n)?;
    let s = explicit_fixed_point(n, |s| fe_sc_rhs(&c.series, s))?;
    Ok(EquationSolution {
        series: s,
        route: Route::SFromC,
        residual_order: n,
    })
}

/// Solves `S~ = 1 + C(1, t S~^2)` to order `n`.
pub fn solve_s_tilde(
    c: &EquationSolution<IntPolynomial>,
    n: usize,
) -> Result<EquationSolution<BigInt>, Error> {
    need_order(&c.series, n)?;
    let c1 = c.series.map(|p| Polynomial::constant(p.eval(&BigInt::from(1))));
    let s = explicit_fixed_point(n, |s| s_tilde_rhs(&c1, s))?;
    Ok(EquationSolution {
        series: s,
        route: Route::STildeFromC,
        residual_order: n,
    })
}

/// `Q(-S•, t/(1+S•)^2) - (1+S•)/(1-S•)` to the order of `sp`.
pub fn sprim_residual(
    q: &TruncatedSeries<IntPolynomial>,
    sp: &TruncatedSeries<BigInt>,
) -> Result<TruncatedSeries<BigInt>, Error> {
    let n = sp.order();
    let one = TruncatedSeries::one(Var::T, n);
    let one_plus = &one + sp;
    let u = TruncatedSeries::variable(Var::T, n).try_mul(&(&one_plus * &one_plus).inverse()?)?;
    let lhs = compose_bivariate(&q.truncate(n)?, &-sp, &u)?;
    let rhs = one_plus.try_mul(&(&one - sp).inverse()?)?;
    lhs.try_sub(&rhs)
}

/// Solves `Q(-S•, t/(1+S•)^2) = (1+S•)/(1-S•)` for `S•` to order `n`
/// and returns `(S•, S)` with `S = 1/(1 - S•)`.
///
/// The `t^m` coefficient of the residual is affine in the unknown `s•_m`;
/// it is evaluated at `s•_m = 0` and `1`, the root of the line is taken,
/// and a nonzero slope and an integral root are required.
pub fn solve_sprim_via_q(
    q: &TruncatedSeries<IntPolynomial>,
    n: usize,
) -> Result<(EquationSolution<BigInt>, EquationSolution<BigInt>), Error> {
    need_order(q, n)?;
    let mut coeffs = vec![BigInt::from(0)];
    for m in 1..=n {
        let mut trial = coeffs.clone();
        trial.push(BigInt::from(0));
        let f0 = sprim_residual(q, &int_series(Var::T, m, trial.clone()))?.coeff(m).clone();
        trial[m] = BigInt::from(1);
        let f1 = sprim_residual(q, &int_series(Var::T, m, trial))?.coeff(m).clone();
        let slope = &f1 - &f0;
        if Ring::is_zero(&slope) {
            return Err(Error::Contract(format!("no linear term in s•_{m}")));
        }
        let (x, r) = num_integer::Integer::div_rem(&-f0, &slope);
        if !Ring::is_zero(&r) {
            return Err(Error::NonIntegral(format!("s•_{m} is not an integer")));
        }
        coeffs.push(x);
    }
    let sp = int_series(Var::T, n, coeffs);
    if !sprim_residual(q, &sp)?.is_zero() {
        return Err(Error::Contract("S• equation fails after solving".into()));
    }
    let s = (&TruncatedSeries::one(Var::T, n) - &sp).inverse()?;
    Ok((
        EquationSolution {
            series: sp,
            route: Route::SprimFromQ,
            residual_order: n,
        },
        EquationSolution {
            series: s,
            route: Route::SFromSprim,
            residual_order: n,
        },
    ))
}

/// Outcome of one identity in [`inversion_checks`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub holds: bool,
}

/// Checks the compositional identities between `(A, U)` and `(B, V)`
/// through order `n`:
/// `A(B, V) = a`, `U(B, V) = u`, `B(A, U) = b`, `V(A, U) = v`, and
/// `B(a, 0) = a`.
pub fn inversion_checks(
    q: &TruncatedSeries<IntPolynomial>,
    c: &TruncatedSeries<IntPolynomial>,
    n: usize,
) -> Result<Vec<IdentityCheck>, Error> {
    need_order(q, n)?;
    need_order(c, n)?;
    let q = q.truncate(n)?;
    let c = c.truncate(n)?;
    let two = IntPolynomial::from_i64(2);
    let a_var = IntPolynomial::from_i64s(&[0, 1]);

    let (b, v) = inverse_change_of_variables(&q)?;
    let one_u = TruncatedSeries::one(Var::U, n);
    let c_bv = compose_bivariate(&c, &b, &v)?;
    // A(B, V) = B + 2 C(B, V) (B - 1)
    let a_of = &b + &(&c_bv.scale(&two) * &(&b - &one_u));
    let one_2c = &one_u + &c_bv.scale(&two);
    let u_of = v.try_mul(&(&one_2c * &one_2c).inverse()?)?;

    let (a, u) = change_of_variables(&c)?;
    let one_v = TruncatedSeries::one(Var::V, n);
    let q_au = compose_bivariate(&q, &a, &u)?;
    let q_inv = q_au.inverse()?;
    // B(A, U) = 1 - (1 - A) / Q(A, U)
    let b_of = &one_v - &(&(&one_v - &a) * &q_inv);
    let v_of = u.try_mul(&(&q_au * &q_au))?;

    Ok(vec![
        IdentityCheck {
            identity: "A(B,V) = a",
            holds: a_of == TruncatedSeries::constant(Var::U, n, a_var.clone()),
        },
        IdentityCheck {
            identity: "U(B,V) = u",
            holds: u_of == TruncatedSeries::variable(Var::U, n),
        },
        IdentityCheck {
            identity: "B(A,U) = b",
            holds: b_of == TruncatedSeries::constant(Var::V, n, b_poly()),
        },
        IdentityCheck {
            identity: "V(A,U) = v",
            holds: v_of == TruncatedSeries::variable(Var::V, n),
        },
        IdentityCheck {
            identity: "B(a,0) = a",
            holds: b.coeff(0) == &a_var,
        },
    ])
}

/// Residuals of the four defining equations, each through order `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub order: usize,
    pub q_from_c: bool,
    pub s_from_c: bool,
    pub sprim_from_q: bool,
    pub s_tilde_from_c: bool,
}

impl ResidualReport {
    pub fn all_vanish(&self) -> bool {
        self.q_from_c && self.s_from_c && self.sprim_from_q && self.s_tilde_from_c
    }
}

/// Substitutes already solved series into their equations.
pub fn residual_checks(
    q: &TruncatedSeries<IntPolynomial>,
    c: &TruncatedSeries<IntPolynomial>,
    s: &TruncatedSeries<BigInt>,
    sprim: &TruncatedSeries<BigInt>,
    s_tilde: &TruncatedSeries<BigInt>,
    n: usize,
) -> Result<ResidualReport, Error> {
    let c1 = c.map(|p| Polynomial::constant(p.eval(&BigInt::from(1))));
    let s = s.truncate(n)?;
    let st = s_tilde.truncate(n)?;
    Ok(ResidualReport {
        order: n,
        q_from_c: fe_qc_residual(&q.truncate(n)?, c)?.is_zero(),
        s_from_c: fe_sc_rhs(c, &s)? == s,
        sprim_from_q: sprim_residual(q, &sprim.truncate(n)?)?.is_zero(),
        s_tilde_from_c: s_tilde_rhs(&c1, &st)? == st,
    })
}

/// Minimum coefficient of `C - v - b v^2 - 2C(C - v)` over all powers of
/// `v` and `b`, with the first order where it is negative, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub order: usize,
    #[serde(with = "crate::report::bigint_string")]
    pub min_coeff: BigInt,
    pub first_negative: Option<usize>,
}

impl InequalityReport {
    pub fn passes(&self) -> bool {
        self.first_negative.is_none()
    }
}

/// Expands `C - v - b v^2 - 2C(C - v)` through order `n`.
pub fn appendix_b_series(
    c: &TruncatedSeries<IntPolynomial>,
    n: usize,
) -> Result<TruncatedSeries<IntPolynomial>, Error> {
    need_order(c, n)?;
    let c = c.truncate(n)?;
    let v = TruncatedSeries::variable(Var::V, n);
    let bv2 = TruncatedSeries::monomial(Var::V, n, b_poly(), 2);
    let c_minus_v = &c - &v;
    let two_c = c.scale(&IntPolynomial::from_i64(2));
    Ok(&(&c_minus_v - &bv2) - &(&two_c * &c_minus_v))
}

/// Checks that every coefficient of [`appendix_b_series`] is nonnegative.
pub fn appendix_b_inequality_check(
    c: &TruncatedSeries<IntPolynomial>,
    n: usize,
) -> Result<InequalityReport, Error> {
    let f = appendix_b_series(c, n)?;
    let mut min = BigInt::from(0);
    let mut first_negative = None;
    for (k, p) in f.coeffs().iter().enumerate() {
        let m = p.min_coeff();
        if m < BigInt::from(0) && first_negative.is_none() {
            first_negative = Some(k);
        }
        if m < min {
            min = m;
        }
    }
    Ok(InequalityReport {
        order: n,
        min_coeff: min,
        first_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arches::{connected_standard_polynomial, count_standard_words};
    use crate::walks::quarter_loop_series;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn c_series(n: usize) -> EquationSolution<IntPolynomial> {
        solve_c(&quarter_loop_series(n), n).unwrap()
    }

    #[test]
    fn c_first_terms() {
        let c = c_series(3).series;
        let p = IntPolynomial::from_i64s;
        assert_eq!(c.coeffs(), &[p(&[]), p(&[1]), p(&[0, 1]), p(&[0, 2, 1])]);
    }

    #[test]
    fn c_matches_arch_enumeration() {
        let c = c_series(5).series;
        for n in 1..=5 {
            assert_eq!(c.coeff(n), &connected_standard_polynomial(n), "n = {n}");
        }
    }

    #[test]
    fn s_by_both_routes() {
        let n = 8;
        let expect = ints(&[1, 1, 2, 6, 23, 103, 513, 2760, 15741]);
        let q = quarter_loop_series(n);
        let s1 = solve_s_via_c(&solve_c(&q, n).unwrap(), n).unwrap();
        let (sp, s2) = solve_sprim_via_q(&q, n).unwrap();
        assert_eq!(s1.series.coeffs(), expect.as_slice());
        assert_eq!(s2.series.coeffs(), expect.as_slice());
        assert_eq!(&sp.series.coeffs()[..5], ints(&[0, 1, 1, 3, 12]).as_slice());
    }

    #[test]
    fn s_tilde_matches_standard_words() {
        let c = c_series(6);
        let st = solve_s_tilde(&c, 6).unwrap().series;
        let s = solve_s_via_c(&c, 6).unwrap().series;
        assert_eq!(st.coeff(1), &BigInt::from(1));
        for n in 0..=6 {
            assert_eq!(st.coeff(n), &BigInt::from(count_standard_words(n)), "n = {n}");
            assert!(st.coeff(n) >= s.coeff(n));
        }
    }

    #[test]
    fn inversion_and_residuals() {
        let n = 8;
        let q = quarter_loop_series(n);
        let c = solve_c(&q, n).unwrap().series;
        assert!(inversion_checks(&q, &c, n).unwrap().iter().all(|c| c.holds));
        let cs = EquationSolution {
            series: c.clone(),
            route: Route::CFromQ,
            residual_order: n,
        };
        let s = solve_s_via_c(&cs, n).unwrap().series;
        let (sp, _) = solve_sprim_via_q(&q, n).unwrap();
        let st = solve_s_tilde(&cs, n).unwrap().series;
        let r = residual_checks(&q, &c, &s, &sp.series, &st, n).unwrap();
        assert!(r.all_vanish());
        // a wrong coefficient is caught
        let mut bad = s.clone();
        bad.set_coeff(3, BigInt::from(7));
        assert!(!residual_checks(&q, &c, &bad, &sp.series, &st, n).unwrap().all_vanish());
    }

    #[test]
    fn appendix_b_low_orders() {
        let c = c_series(10).series;
        let f = appendix_b_series(&c, 10).unwrap();
        assert!(f.coeff(1).is_zero());
        assert!(f.coeff(2).is_zero());
        assert!(appendix_b_inequality_check(&c, 10).unwrap().passes());
    }

    #[test]
    fn insufficient_order_is_an_error() {
        let q = quarter_loop_series(3);
        assert!(matches!(solve_c(&q, 5), Err(Error::OrderMismatch { .. })));
    }
}
