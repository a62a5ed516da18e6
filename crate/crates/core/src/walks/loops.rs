//! Quarter-plane loop series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dp::{self, Corners, FloatCorners, MarkedCorners, Region, ScaledRational, WalkQuery};
use crate::exactnum::{IntPolynomial, Polynomial, Ring, TruncatedSeries, Var};
use crate::machine::Step;
use crate::Error;

fn loop_query(n: usize, kill_origin: bool) -> WalkQuery {
    WalkQuery {
        region: Region::Quadrant,
        length: 2 * n,
        target: (0, 0),
        kill_origin,
    }
}

fn even_layers<W: Clone>(layers: Vec<W>) -> Vec<W> {
    layers.into_iter().step_by(2).collect()
}

/// `Q(a, u) = sum_n q_n(a) u^n` to order `n`, where `q_n` counts quarter
/// plane loops of length `2n` by corners.
pub fn quarter_loop_series(n: usize) -> TruncatedSeries<IntPolynomial> {
    let layers = dp::run(&Corners, &loop_query(n, false));
    TruncatedSeries::new(Var::U, n, even_layers(layers))
}

/// `Q(a, s, u)`: each coefficient is a polynomial in `s` (number of `E`
/// steps) whose coefficients are polynomials in `a`.
pub fn quarter_loop_series_refined(n: usize) -> TruncatedSeries<Polynomial<IntPolynomial>> {
    let layers = dp::run(&MarkedCorners::east(), &loop_query(n, false));
    TruncatedSeries::new(Var::U, n, even_layers(layers).into_iter().map(Polynomial::new).collect())
}

/// `q_k(a)` for `k <= n` at a rational `a`, computed without expanding the
/// polynomials.
pub fn quarter_loop_values_at(n: usize, a: &BigRational) -> TruncatedSeries<BigRational> {
    let wt = ScaledRational {
        p: a.numer().clone(),
        d: a.denom().clone(),
    };
    let d = a.denom().abs();
    let layers = even_layers(dp::run(&wt, &loop_query(n, false)));
    let mut scale = BigInt::from(1);
    let d2 = &d * &d;
    let mut coeffs = Vec::with_capacity(n + 1);
    for v in layers {
        coeffs.push(BigRational::new(v, scale.clone()));
        scale *= &d2;
    }
    TruncatedSeries::new(Var::U, n, coeffs)
}

/// Floating-point `q_k(a)` for `k <= n`.
pub fn quarter_loop_values_f64(n: usize, a: f64) -> Vec<f64> {
    even_layers(dp::run(&FloatCorners(a), &loop_query(n, false)))
}

/// `Q• = 1 - 1/Q`, the series of primitive loops (those that meet the
/// origin only at their ends).
pub fn primitive_quarter_loop_series(n: usize) -> Result<TruncatedSeries<IntPolynomial>, Error> {
    let q = quarter_loop_series(n);
    TruncatedSeries::one(Var::U, n).try_sub(&q.inverse()?)
}

/// Refined `Q•(a, s, u) = 1 - 1/Q(a, s, u)`.
pub fn primitive_quarter_loop_series_refined(
    n: usize,
) -> Result<TruncatedSeries<Polynomial<IntPolynomial>>, Error> {
    let q = quarter_loop_series_refined(n);
    TruncatedSeries::one(Var::U, n).try_sub(&q.inverse()?)
}

/// Primitive loops counted directly, by discarding walks that return to
/// the origin early.
pub fn primitive_quarter_loop_series_by_dp(n: usize) -> TruncatedSeries<IntPolynomial> {
    let layers = even_layers(dp::run(&Corners, &loop_query(n, true)));
    let mut coeffs = layers;
    coeffs[0] = IntPolynomial::zero();
    TruncatedSeries::new(Var::U, n, coeffs)
}

/// Refined primitive loops counted directly.
pub fn primitive_quarter_loop_series_refined_by_dp(n: usize) -> TruncatedSeries<Polynomial<IntPolynomial>> {
    let layers = even_layers(dp::run(&MarkedCorners::east(), &loop_query(n, true)));
    let mut coeffs: Vec<Polynomial<IntPolynomial>> = layers.into_iter().map(Polynomial::new).collect();
    coeffs[0] = Polynomial::zero();
    TruncatedSeries::new(Var::U, n, coeffs)
}

/// Rewrites a polynomial in `a` in powers of `a + 1`.
pub fn to_a_plus_one(p: &IntPolynomial) -> IntPolynomial {
    p.rebase_shifted(1)
}

/// Key: (length, x, y, number of horizontal steps).
pub type EndpointKey = (usize, i64, i64, usize);

/// All quarter plane walks of length at most `max_len`, by endpoint and
/// number of horizontal steps, as polynomials in `a`.
pub fn quarter_walks_by_endpoint(max_len: usize) -> BTreeMap<EndpointKey, IntPolynomial> {
    // state: (x, y, horizontal, last) -> weight
    type State = (i64, i64, usize, Option<Step>);
    let mut layer: BTreeMap<State, IntPolynomial> = BTreeMap::new();
    layer.insert((0, 0, 0, None), IntPolynomial::one());
    let mut out = BTreeMap::new();
    for len in 0..=max_len {
        for (&(x, y, h, _), w) in &layer {
            out.entry((len, x, y, h))
                .or_insert_with(IntPolynomial::zero)
                .add_assign_ref(w);
        }
        if len == max_len {
            break;
        }
        let mut next: BTreeMap<State, IntPolynomial> = BTreeMap::new();
        for (&(x, y, h, last), w) in &layer {
            for s in Step::ALL {
                let (dx, dy) = s.delta();
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 {
                    continue;
                }
                let corner = matches!((last, s), (Some(Step::N), Step::W) | (Some(Step::E), Step::S));
                let nh = h + usize::from(matches!(s, Step::E | Step::W));
                next.entry((nx, ny, nh, Some(s)))
                    .or_insert_with(IntPolynomial::zero)
                    .add_shifted(w, usize::from(corner));
            }
        }
        layer = next;
    }
    out
}

/// Checks the refined kernel equation for quarter plane walks up to length
/// `max_len`, with `Q(x, y)` taken from [`quarter_walks_by_endpoint`]:
///
/// `K(x,y) Q(x,y) = 1 - u y^-1 (1 + u s x (a-1)) Q(x,0) - u s x^-1 (1 + u y (a-1)) Q(0,y)`,
///
/// with `K = 1 - u(s x + s/x + y + 1/y) - u^2 s (a-1)(x/y + y/x)`. Both sides
/// are multiplied by `xy` and compared for every `u`-degree up to `max_len`.
pub fn kernel_residual_check(max_len: usize) -> bool {
    let q = quarter_walks_by_endpoint(max_len);
    let am1 = IntPolynomial::from_i64s(&[-1, 1]);
    let one = IntPolynomial::one();
    // (du, dx, dy, ds, coefficient) terms, applied to xy*K on the left
    let lhs_terms: Vec<(usize, i64, i64, usize, IntPolynomial)> = vec![
        (0, 1, 1, 0, one.clone()),
        (1, 2, 1, 1, one.neg_ref()),
        (1, 0, 1, 1, one.neg_ref()),
        (1, 1, 2, 0, one.neg_ref()),
        (1, 1, 0, 0, one.neg_ref()),
        (2, 2, 0, 1, am1.neg_ref()),
        (2, 0, 2, 1, am1.neg_ref()),
    ];
    // moved to the left: + u x (1 + u s x (a-1)) Q(x,0)
    let xaxis_terms = vec![(1, 1, 0, 0, one.clone()), (2, 2, 0, 1, am1.clone())];
    // + u s y (1 + u y (a-1)) Q(0,y)
    let yaxis_terms = vec![(1, 0, 1, 1, one.clone()), (2, 0, 2, 1, am1.clone())];

    let mut acc: BTreeMap<EndpointKey, IntPolynomial> = BTreeMap::new();
    let mut apply = |terms: &[(usize, i64, i64, usize, IntPolynomial)], filter: &dyn Fn(i64, i64) -> bool| {
        for (&(k, x, y, h), w) in &q {
            if !filter(x, y) {
                continue;
            }
            for (du, dx, dy, ds, c) in terms {
                if k + du > max_len {
                    continue;
                }
                acc.entry((k + du, x + dx, y + dy, h + ds))
                    .or_insert_with(IntPolynomial::zero)
                    .add_assign_ref(&w.mul_ref(c));
            }
        }
    };
    apply(&lhs_terms, &|_, _| true);
    apply(&xaxis_terms, &|_, y| y == 0);
    apply(&yaxis_terms, &|x, _| x == 0);
    // right side is xy
    acc.entry((0, 1, 1, 0))
        .or_insert_with(IntPolynomial::zero)
        .sub_assign_ref(&one);
    acc.values().all(Ring::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::catalan;
    use crate::walks::brute;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn first_terms() {
        let q = quarter_loop_series(3);
        assert_eq!(q.coeffs(), &[p(&[1]), p(&[2]), p(&[8, 2]), p(&[44, 24, 2])]);
    }

    #[test]
    fn catalan_products_at_one() {
        let q = quarter_loop_series(20);
        for n in 0..=20u64 {
            let v = q.coeff(n as usize).eval(&BigInt::from(1));
            assert_eq!(v, catalan(n) * catalan(n + 1), "n = {n}");
        }
    }

    #[test]
    fn dp_matches_enumeration() {
        let q = quarter_loop_series(6);
        let qr = quarter_loop_series_refined(6);
        for n in 0..=6 {
            assert_eq!(q.coeff(n), &brute::brute_quarter_loops(n, 8).unwrap());
            assert_eq!(qr.coeff(n), &brute::brute_quarter_loops_refined(n, 8).unwrap());
        }
    }

    #[test]
    fn degree_bound_and_positivity() {
        let q = quarter_loop_series(12);
        for n in 1..=12 {
            let c = q.coeff(n);
            assert!(c.degree().unwrap() < n);
            assert!(c.min_coeff() >= BigInt::from(0));
        }
    }

    #[test]
    fn rational_and_float_values_agree_with_symbolic() {
        let q = quarter_loop_series(10);
        let a = BigRational::new(BigInt::from(-3), BigInt::from(7));
        let vals = quarter_loop_values_at(10, &a);
        let f = quarter_loop_values_f64(10, -3.0 / 7.0);
        for n in 0..=10 {
            let exact = q.coeff(n).to_rational().eval(&a);
            assert_eq!(vals.coeff(n), &exact);
            let approx = num_traits::ToPrimitive::to_f64(&exact).unwrap();
            assert!((f[n] - approx).abs() <= 1e-9 * approx.abs().max(1.0));
        }
    }

    #[test]
    fn primitive_series() {
        let qp = primitive_quarter_loop_series(2).unwrap();
        assert_eq!(qp.coeffs(), &[p(&[]), p(&[2]), p(&[4, 2])]);
        let direct = primitive_quarter_loop_series_by_dp(8);
        assert_eq!(primitive_quarter_loop_series(8).unwrap(), direct);
        for n in 1..=6 {
            assert_eq!(direct.coeff(n), &brute::brute_primitive_quarter_loops(n, 8).unwrap());
        }
        assert_eq!(
            primitive_quarter_loop_series_refined(8).unwrap(),
            primitive_quarter_loop_series_refined_by_dp(8)
        );
    }

    #[test]
    fn refined_sums_to_plain() {
        let q = quarter_loop_series(8);
        let qr = quarter_loop_series_refined(8);
        for n in 0..=8 {
            let total = qr.coeff(n).eval(&IntPolynomial::one());
            assert_eq!(&total, q.coeff(n));
        }
    }

    #[test]
    fn a_plus_one_basis() {
        // 44 + 24a + 2a^2 = 22 + 20(a+1) + 2(a+1)^2
        assert_eq!(to_a_plus_one(&p(&[44, 24, 2])), p(&[22, 20, 2]));
    }

    #[test]
    fn kernel_equation_holds() {
        assert!(kernel_residual_check(10));
    }

    #[test]
    fn endpoint_walks_contain_loops() {
        let q = quarter_loop_series(4);
        let by_end = quarter_walks_by_endpoint(8);
        for n in 0..=4 {
            let mut total = IntPolynomial::zero();
            for (&(k, x, y, _), w) in &by_end {
                if k == 2 * n && x == 0 && y == 0 {
                    total.add_assign_ref(w);
                }
            }
            assert_eq!(&total, q.coeff(n));
        }
    }
}
