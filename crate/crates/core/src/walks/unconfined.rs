//! Loops in the plane and in the upper half plane, counted by horizontal
//! steps (`s`), vertical steps (`t`) and corners (`a`).

use num_bigint::BigInt;

use super::dp::{self, MarkedCorners, Region, WalkQuery};
use crate::exactnum::{
    binomial, catalan, BiTruncatedSeries, IntPolynomial, LaurentPolynomial, RatPolynomial, Ring,
    TruncatedSeries, Var,
};
use crate::Error;

type Laurent = LaurentPolynomial<IntPolynomial>;

/// `W00j(a, s) = [x^0] (1 + s x (a-1))^j (1 + s/x (a-1))^j / (1 - s(x + 1/x))^(2j+1)`
/// as a series in `s` to order `s_order`.
pub fn w00j(j: usize, s_order: usize) -> TruncatedSeries<IntPolynomial> {
    let am1 = IntPolynomial::from_i64s(&[-1, 1]);
    let c = |l: Laurent| TruncatedSeries::new(Var::S, s_order, vec![Laurent::one(), l]);
    let base = c(Laurent::x_plus_xbar().neg_ref());
    let f1 = c(Laurent::monomial(am1.clone(), 1));
    let f2 = c(Laurent::monomial(am1, -1));
    let inv = base.inverse().expect("constant term is one");
    let whole = &inv.pow(2 * j + 1) * &(&f1 * &f2).pow(j);
    whole.map(|l| l.constant_term())
}

fn loop_sum(
    ns: usize,
    nt: usize,
    weight: impl Fn(u64) -> BigInt,
) -> BiTruncatedSeries<IntPolynomial> {
    let mut out = BiTruncatedSeries::zero(ns, nt);
    for j in 0..=nt / 2 {
        let w = w00j(j, ns);
        let c = IntPolynomial::constant(weight(j as u64));
        for i in 0..=ns {
            out.set(i, 2 * j, w.coeff(i).mul_ref(&c));
        }
    }
    out
}

/// `W00(a, s, t) = sum_j binom(2j, j) t^(2j) W00j(a, s)`, unconfined loops.
pub fn unconfined_series(ns: usize, nt: usize) -> BiTruncatedSeries<IntPolynomial> {
    loop_sum(ns, nt, |j| binomial(2 * j, j))
}

/// `H00(a, s, t) = sum_j C_j t^(2j) W00j(a, s)`, loops in `y >= 0`.
pub fn halfplane_series(ns: usize, nt: usize) -> BiTruncatedSeries<IntPolynomial> {
    loop_sum(ns, nt, catalan)
}

fn loops_by_dp(region: Region, ns: usize, nt: usize) -> BiTruncatedSeries<IntPolynomial> {
    let layers = dp::run(
        &MarkedCorners::horizontal(),
        &WalkQuery {
            region,
            length: ns + nt,
            target: (0, 0),
            kill_origin: false,
        },
    );
    let mut out = BiTruncatedSeries::zero(ns, nt);
    for (k, by_h) in layers.into_iter().enumerate() {
        for (h, p) in by_h.into_iter().enumerate() {
            if h <= ns && k - h <= nt {
                out.set(h, k - h, p);
            }
        }
    }
    out
}

/// Unconfined loops counted step by step.
pub fn unconfined_series_by_dp(ns: usize, nt: usize) -> BiTruncatedSeries<IntPolynomial> {
    loops_by_dp(Region::Plane, ns, nt)
}

/// Upper half plane loops counted step by step.
pub fn halfplane_series_by_dp(ns: usize, nt: usize) -> BiTruncatedSeries<IntPolynomial> {
    loops_by_dp(Region::UpperHalf, ns, nt)
}

/// The algebraic series `T(a, s, t)` and `A(a, s, t) = sum_j t^(2j) W00j(a, s)`.
///
/// `T` is the series with `T(a, 0, t) = 0` and
/// `T = s^2 (1 + 4T - t^2 (a-1)^2 T) / (1 - t^2 - t^2 (a+1)^2 T)`, found by
/// fixed-point iteration; each round fixes two more powers of `s`.
pub fn t_series_and_a(
    ns: usize,
    nt: usize,
) -> Result<(BiTruncatedSeries<RatPolynomial>, BiTruncatedSeries<RatPolynomial>), Error> {
    let poly = |c: &[i64]| RatPolynomial::from_i64s(c);
    let mono = |c: RatPolynomial, i, j| BiTruncatedSeries::monomial(ns, nt, c, i, j);
    let one = BiTruncatedSeries::<RatPolynomial>::one(ns, nt);
    let am1_sq = poly(&[1, -2, 1]);
    let ap1_sq = poly(&[1, 2, 1]);
    // t^2 (a-1)^2, t^2 (a+1)^2, t^2 (a^2 - 1)
    let t2_am1_sq = mono(am1_sq, 0, 2);
    let t2_ap1_sq = mono(ap1_sq, 0, 2);
    let t2_a2m1 = mono(poly(&[-1, 0, 1]), 0, 2);
    let t2 = mono(RatPolynomial::one(), 0, 2);
    let s2 = mono(RatPolynomial::one(), 2, 0);
    let four = RatPolynomial::from_i64(4);

    let mut t = BiTruncatedSeries::zero(ns, nt);
    let mut stable = false;
    for _ in 0..=ns / 2 + 1 {
        let num = &(&one + &t.scale(&four)) - &(&t2_am1_sq * &t);
        let den = &(&one - &t2) - &(&t2_ap1_sq * &t);
        let next = &(&s2 * &num) * &den.inverse()?;
        if next == t {
            stable = true;
            break;
        }
        t = next;
    }
    if !stable {
        return Err(Error::Contract("T iteration did not stabilise".into()));
    }

    // 1 + t^2 (1 - a^2) T, which is also the base of the first square
    let d1 = &one - &(&t2_a2m1 * &t);
    let d2 = &one + &t.scale(&RatPolynomial::from_i64s(&[2, 2]));
    let den = &(&d1 * &d1) - &(&t2 * &(&d2 * &d2));
    let r_num = &(&one + &t.scale(&four)) - &(&t2_am1_sq * &t);
    let r_den = &one - &(&t2_am1_sq * &t);
    let root = (&r_num * &r_den.inverse()?).sqrt()?;
    let a = &(&d1 * &den.inverse()?) * &root;
    Ok((t, a))
}

/// Both sides of the constant-term identity
/// `[x^0] R(s, u; x) = (1 - sqrt(1 - 4u^2 s^2 / (1 - u^2))) / (us)`, with
/// `R = (4su - x - 1/x)(1 - su(x + 1/x)) / ((1 - su(x + 1/x))^2 - u^2 (1 - 2su/x)(1 - 2sux))`,
/// as series in `u` to order `n` with polynomial coefficients in `s`.
pub fn constant_term_lemma_sides(
    n: usize,
) -> Result<(TruncatedSeries<IntPolynomial>, TruncatedSeries<IntPolynomial>), Error> {
    let s = IntPolynomial::monomial(BigInt::from(1), 1);
    let series = |c: Vec<Laurent>| TruncatedSeries::new(Var::U, n, c);
    let l = |c: IntPolynomial, k: i64| Laurent::monomial(c, k);
    let xx = Laurent::x_plus_xbar();
    let s_xx = xx.scale(&s);
    // 1 - su(x + 1/x)
    let g = series(vec![Laurent::one(), s_xx.neg_ref()]);
    let num = &series(vec![xx.neg_ref(), Laurent::constant(s.scale(&BigInt::from(4)))]) * &g;
    let two_s = s.scale(&BigInt::from(-2));
    let h1 = series(vec![Laurent::one(), l(two_s.clone(), -1)]);
    let h2 = series(vec![Laurent::one(), l(two_s, 1)]);
    let den = &(&g * &g) - &(&h1 * &h2).shift(2);
    let lhs = (&num * &den.inverse()?).map(|c| c.constant_term());

    // closed form at one order higher, before dividing by us
    let m = n + 1;
    let s2 = s.mul_ref(&s);
    let z = TruncatedSeries::from_fn(Var::U, m, |k| {
        if k >= 2 && k % 2 == 0 {
            s2.scale(&BigInt::from(-4))
        } else {
            IntPolynomial::zero()
        }
    });
    let one = TruncatedSeries::<IntPolynomial>::one(Var::U, m);
    let f = &one - &(&one + &z).sqrt()?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 1..=m {
        let c = f.coeff(k);
        if !c.coeff(0).is_zero() {
            return Err(Error::Contract(format!("u^{k} coefficient not divisible by s")));
        }
        coeffs.push(IntPolynomial::new(c.coeffs().iter().skip(1).cloned().collect()));
    }
    if !f.coeff(0).is_zero() {
        return Err(Error::Contract("closed form has a constant term".into()));
    }
    Ok((lhs, TruncatedSeries::new(Var::U, n, coeffs)))
}

/// True when both sides of [`constant_term_lemma_sides`] agree to order `n`.
pub fn constant_term_lemma_check(n: usize) -> Result<bool, Error> {
    let (l, r) = constant_term_lemma_sides(n)?;
    Ok(l == r)
}
