//! Positivity checks, radius and growth estimates, and the property and
//! counterexample suite for corner polynomials.
//!
//! Sign decisions use exact rationals; floats appear only in reported
//! values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{binomial, IntPolynomial, Polynomial, TruncatedSeries};
use crate::machine::Step;
use crate::walks::{self, brute, Confinement, Region};
use crate::Error;

fn big_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

// ---------------------------------------------------------------------------
// (a+1)-positivity

/// Series whose coefficients are checked for `(a+1)`-positivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesId {
    /// `Q(a, u)`
    Q,
    /// `Q(a, s, u)`
    QRefined,
    /// `Q•(a, s, u)`, primitive loops with `E` steps marked
    QPrimitive,
    /// `W00(a, s, t)`
    W00,
    /// `H00(a, s, t)`
    H00,
    /// Quarter plane loops projecting vertically on a Dyck word.
    FixedProjection(Vec<Step>),
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::Q => f.write_str("q"),
            SeriesId::QRefined => f.write_str("q-refined"),
            SeriesId::QPrimitive => f.write_str("q-primitive"),
            SeriesId::W00 => f.write_str("w00"),
            SeriesId::H00 => f.write_str("h00"),
            SeriesId::FixedProjection(v) => {
                f.write_str("fixed:")?;
                v.iter().try_for_each(|s| write!(f, "{}", s.letter()))
            }
        }
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "q" => SeriesId::Q,
            "q-refined" => SeriesId::QRefined,
            "q-primitive" => SeriesId::QPrimitive,
            "w00" => SeriesId::W00,
            "h00" => SeriesId::H00,
            _ => {
                let v = s
                    .strip_prefix("fixed:")
                    .ok_or_else(|| Error::InvalidInput(format!("unknown series {s:?}")))?;
                let steps = v
                    .chars()
                    .map(|c| {
                        Step::from_letter(c)
                            .ok_or_else(|| Error::InvalidInput(format!("bad letter {c:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                SeriesId::FixedProjection(steps)
            }
        })
    }
}

/// Minimum coefficient, per order, after rewriting every coefficient
/// polynomial in powers of `a + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub series: String,
    pub orders_checked: usize,
    /// Entry `k` is the smallest `(a+1)`-coefficient found at order `k`.
    #[serde(serialize_with = "big_strings")]
    pub min_coeffs: Vec<BigInt>,
    pub first_failure: Option<usize>,
}

impl PositivityReport {
    fn from_minima(series: String, min_coeffs: Vec<BigInt>) -> Self {
        let first_failure = min_coeffs.iter().position(|m| m.is_negative());
        PositivityReport {
            series,
            orders_checked: min_coeffs.len().saturating_sub(1),
            min_coeffs,
            first_failure,
        }
    }

    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Smallest coefficient of `p` in the basis `(a+1)^k`; zero for the zero
/// polynomial.
pub fn min_shifted_coeff(p: &IntPolynomial) -> BigInt {
    walks::to_a_plus_one(p).min_coeff()
}

fn min_over(ps: impl IntoIterator<Item = IntPolynomial>) -> BigInt {
    ps.into_iter()
        .map(|p| min_shifted_coeff(&p))
        .min()
        .unwrap_or_else(BigInt::zero)
}

fn refined_minima(series: &TruncatedSeries<Polynomial<IntPolynomial>>) -> Vec<BigInt> {
    series
        .coeffs()
        .par_iter()
        .map(|p| min_over(p.coeffs().iter().cloned()))
        .collect()
}

/// Checks `(a+1)`-positivity of the named series through order `n`.
///
/// For `W00` and `H00` the order is the bidegree: all `s^i t^j` with
/// `i, j <= n` are checked and grouped by `i + j`. For fixed projections
/// the order is the half-length.
pub fn positivity_check(id: &SeriesId, n: usize) -> Result<PositivityReport, Error> {
    let minima = match id {
        SeriesId::Q => walks::quarter_loop_series(n)
            .coeffs()
            .par_iter()
            .map(|p| min_over([p.clone()]))
            .collect(),
        SeriesId::QRefined => refined_minima(&walks::quarter_loop_series_refined(n)),
        SeriesId::QPrimitive => refined_minima(&walks::primitive_quarter_loop_series_refined_by_dp(n)),
        SeriesId::W00 | SeriesId::H00 => {
            let f = if *id == SeriesId::W00 {
                walks::unconfined_series(n, n)
            } else {
                walks::halfplane_series(n, n)
            };
            (0..=2 * n)
                .map(|d| {
                    let lo = d.saturating_sub(n);
                    min_over((lo..=d.min(n)).map(|i| f.coeff(i, d - i).clone()))
                })
                .collect()
        }
        SeriesId::FixedProjection(v) => {
            let f = walks::fixed_projection_series(v, Confinement::Quadrant, 2 * n)?;
            f.coeffs().iter().step_by(2).map(|p| min_over([p.clone()])).collect()
        }
    };
    Ok(PositivityReport::from_minima(id.to_string(), minima))
}

// ---------------------------------------------------------------------------
// Radius of Q(a, .)

/// The conjectured radius of convergence of `Q(a, .)`:
/// `1 / (2 + sqrt(2 + 2a))^2` for `a >= -1/2` and `-a / (2 (a-1)^2)` for
/// `-1 <= a <= -1/2`.
pub fn conjectured_radius(a: f64) -> Result<f64, Error> {
    if a.is_nan() || a < -1.0 {
        return Err(Error::InvalidInput(format!("radius needs a >= -1, got {a}")));
    }
    Ok(if a >= -0.5 {
        let d = 2.0 + (2.0 + 2.0 * a).sqrt();
        1.0 / (d * d)
    } else {
        -a / (2.0 * (a - 1.0) * (a - 1.0))
    })
}

/// Orders at which [`radius_scan`] reports by default.
pub const RADIUS_ORDERS: [usize; 4] = [40, 60, 80, 100];

/// `a = -1, -3/4, ..., 2`.
pub fn default_radius_grid() -> Vec<BigRational> {
    (-4..=8).map(|k| BigRational::new(int(k), int(4))).collect()
}

/// Ratio and exponent estimates for `Q(a, .)` at one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEstimate {
    pub a: f64,
    pub n: usize,
    /// `q_(n-1)(a) / q_n(a)`
    pub ratio: f64,
    /// `n^2 (1 - q_(n-1) q_(n+1) / q_n^2)`
    pub exponent_proxy: f64,
    pub conjectured_radius: f64,
}

/// Estimates at each `n` in `orders` for each `a` in `grid`, in grid
/// order then `n` order. Coefficients are exact at each rational `a`.
pub fn radius_scan(grid: &[BigRational], orders: &[usize]) -> Result<Vec<RadiusEstimate>, Error> {
    let top = orders.iter().copied().max().unwrap_or(1);
    if orders.contains(&0) {
        return Err(Error::InvalidInput("orders must be positive".into()));
    }
    let rows: Vec<Result<Vec<RadiusEstimate>, Error>> = grid
        .par_iter()
        .map(|a| {
            let af = ratio_f64(a);
            let rho = conjectured_radius(af)?;
            let q = walks::quarter_loop_values_at(top + 1, a);
            Ok(orders
                .iter()
                .map(|&n| {
                    let (qm, q0, qp) = (q.coeff(n - 1), q.coeff(n), q.coeff(n + 1));
                    let ratio = if q0.is_zero() { f64::NAN } else { ratio_f64(&(qm / q0)) };
                    let proxy = if q0.is_zero() {
                        f64::NAN
                    } else {
                        let x = BigRational::one() - (qm * qp) / (q0 * q0);
                        (n * n) as f64 * ratio_f64(&x)
                    };
                    RadiusEstimate {
                        a: af,
                        n,
                        ratio,
                        exponent_proxy: proxy,
                        conjectured_radius: rho,
                    }
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// t_c bracket

/// Assumed exponent of `q_n(a) rho^n ~ n^gamma` near the critical `a`,
/// used only to size the tail of the truncated sum.
pub const TAIL_EXPONENT: f64 = -1.5;

const SQRT_BITS: u32 = 256;

/// Rational bounds `lo <= sqrt(r) <= hi` for a nonnegative rational.
fn sqrt_bounds(r: &BigRational) -> (BigRational, BigRational) {
    let scale = BigInt::one() << SQRT_BITS;
    let m = r.numer() * r.denom() * &scale * &scale;
    let root = m.sqrt();
    let den = r.denom() * &scale;
    (
        BigRational::new(root.clone(), den.clone()),
        BigRational::new(root + 1, den),
    )
}

fn round_dyadic(r: &BigRational, up: bool) -> BigRational {
    let scaled = r * BigRational::from_integer(BigInt::from(1u64) << SQRT_BITS);
    let k = if up { scaled.ceil() } else { scaled.floor() };
    BigRational::new(k.to_integer(), BigInt::from(1u64) << SQRT_BITS)
}

/// `1 / (2 + sqrt(2 + 2a))^2`, enclosed by dyadic rationals.
fn rho_bounds(a: &BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(int(2));
    let (slo, shi) = sqrt_bounds(&(&two + &two * a));
    let d_hi = &two + shi;
    let d_lo = &two + slo;
    (
        round_dyadic(&(&d_hi * &d_hi).recip(), false),
        round_dyadic(&(&d_lo * &d_lo).recip(), true),
    )
}

/// `sum q_k x^k` by homogeneous Horner over the integers.
fn eval_series(q: &TruncatedSeries<BigRational>, x: &BigRational) -> BigRational {
    let l = q
        .coeffs()
        .iter()
        .fold(BigInt::from(1u64), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let (p, d) = (x.numer(), x.denom());
    let lr = BigRational::from_integer(l.clone());
    let mut ints: Vec<BigInt> = q.coeffs().iter().map(|c| (c * &lr).to_integer()).collect();
    let mut acc = ints.pop().unwrap_or_default();
    let mut dpow = d.clone();
    for c in ints.iter().rev() {
        acc = acc * p + c * &dpow;
        dpow *= d;
    }
    // dpow now holds d^(n+1)
    BigRational::new(acc * d, l * dpow)
}

/// `Q_n(a, rho) - (1-a)/(1+a) + tail`, evaluated at the two ends of the
/// enclosure of `rho`. `tail_factor` multiplies `q_n rho^n`.
fn g_bounds(n: usize, a: &BigRational, tail_factor: &BigRational) -> (BigRational, BigRational) {
    let q = walks::quarter_loop_values_at(n, a);
    let one = BigRational::one();
    let rhs = (&one - a) / (&one + a);
    let (rlo, rhi) = rho_bounds(a);
    let at = |r: &BigRational| {
        let tail = q.coeff(n) * num_traits::pow(r.clone(), n) * tail_factor;
        eval_series(&q, r) - &rhs + tail
    };
    (at(&rlo), at(&rhi))
}

/// Sign of `g` at `a`; both ends of the enclosure must agree.
fn g_sign(n: usize, a: &BigRational, tail_factor: &BigRational) -> Result<i8, Error> {
    let (lo, hi) = g_bounds(n, a, tail_factor);
    if lo.is_positive() && hi.is_positive() {
        Ok(1)
    } else if lo.is_negative() && hi.is_negative() {
        Ok(-1)
    } else {
        Err(Error::Contract(format!("sign of g undecided at a = {a}")))
    }
}

/// `g(a) = Q_n(a, rho(a)) - (1-a)/(1+a)` as a float.
pub fn tc_equation_value(n: usize, a: &BigRational) -> f64 {
    let (lo, hi) = g_bounds(n, a, &BigRational::zero());
    (ratio_f64(&lo) + ratio_f64(&hi)) / 2.0
}

fn g_f64(n: usize, a: f64, tail_factor: f64) -> f64 {
    let q = walks::quarter_loop_values_f64(n, a);
    let rho = conjectured_radius(a).unwrap_or(f64::NAN);
    let sum = q.iter().rev().fold(0.0, |acc, c| acc * rho + c);
    sum - (1.0 - a) / (1.0 + a) + tail_factor * q[n] * rho.powi(n as i32)
}

/// Float estimate of the root of `g + tail` on `[-1/2, 0]`.
fn float_root(n: usize, tail_factor: f64) -> Result<f64, Error> {
    let (mut lo, mut hi) = (-0.5, 0.0);
    if !(g_f64(n, lo, tail_factor) < 0.0 && g_f64(n, hi, tail_factor) > 0.0) {
        return Err(Error::Contract(format!(
            "no sign change of the t_c equation on [-1/2, 0] at order {n}"
        )));
    }
    for _ in 0..40 {
        let mid = (lo + hi) / 2.0;
        if g_f64(n, mid, tail_factor) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

fn dyadic(k: i64, bits: u32) -> BigRational {
    BigRational::new(int(k), BigInt::from(1u64) << bits)
}

/// Rounds the float root outward to the dyadic grid of step `2^-bits` and
/// certifies the sign of `g + tail` there with exact arithmetic, stepping
/// further out until the certificate holds.
fn certified_end(
    n: usize,
    root: f64,
    tail_factor: &BigRational,
    bits: u32,
    upper: bool,
) -> Result<BigRational, Error> {
    let scaled = root * (1u64 << bits) as f64;
    let mut k = if upper { scaled.ceil() } else { scaled.floor() } as i64;
    let want = if upper { 1 } else { -1 };
    for _ in 0..8 {
        let a = dyadic(k, bits);
        if g_sign(n, &a, tail_factor).ok() == Some(want) {
            return Ok(a);
        }
        k += want as i64;
    }
    Err(Error::Contract(format!("could not certify the t_c bracket at order {n}")))
}
/// `t_c = (1 - sqrt(2 + 2a)/2)^2`.
pub fn tc_from_a(a: f64) -> f64 {
    let x = 1.0 - (2.0 + 2.0 * a).sqrt() / 2.0;
    x * x
}

/// Bracket for the critical value `a = -S•(t_c)` and for `1/t_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcBracket {
    pub n: usize,
    pub a_low: f64,
    pub a_high: f64,
    /// Exact dyadic endpoints.
    pub a_low_exact: String,
    pub a_high_exact: String,
    pub inv_tc_low: f64,
    pub inv_tc_high: f64,
}

impl TcBracket {
    pub fn contains_a(&self, lo: f64, hi: f64) -> bool {
        self.a_low <= lo && hi <= self.a_high
    }

    pub fn a_within(&self, lo: f64, hi: f64) -> bool {
        lo <= self.a_low && self.a_high <= hi
    }

    pub fn inv_tc_within(&self, lo: f64, hi: f64) -> bool {
        lo <= self.inv_tc_low && self.inv_tc_high <= hi
    }
}

/// Brackets the root of `Q(a, rho(a)) = (1-a)/(1+a)` using `q_0..q_n`.
///
/// All `q_k(a)` are positive on `[-1/2, 0]`, so the truncated sum is
/// below the full one and its root is an upper end for `a`. The lower end
/// adds the tail estimate `q_n rho^n n / (|gamma| - 1)` with
/// `gamma = TAIL_EXPONENT`. Roots are located in floating point; each
/// reported end is a dyadic rational whose sign is checked exactly.
pub fn tc_bracket(n: usize, tol: f64) -> Result<TcBracket, Error> {
    if n < 2 {
        return Err(Error::InvalidInput("t_c bracket needs order >= 2".into()));
    }
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::InvalidInput(format!("tolerance must lie in (0, 1/2), got {tol}")));
    }
    let bits = (-tol.log2()).ceil() as u32;
    let tail_f = n as f64 / (TAIL_EXPONENT.abs() - 1.0);
    let tail = BigRational::from_float(tail_f)
        .ok_or_else(|| Error::Contract("tail factor".into()))?;
    let (upper, lower) = rayon::join(
        || certified_end(n, float_root(n, 0.0)?, &BigRational::zero(), bits, true),
        || certified_end(n, float_root(n, tail_f)?, &tail, bits, false),
    );
    let (a_high, a_low) = (upper?, lower?);
    let (lo, hi) = (ratio_f64(&a_low), ratio_f64(&a_high));
    Ok(TcBracket {
        n,
        a_low: lo,
        a_high: hi,
        a_low_exact: a_low.to_string(),
        a_high_exact: a_high.to_string(),
        inv_tc_low: 1.0 / tc_from_a(lo),
        inv_tc_high: 1.0 / tc_from_a(hi),
    })
}

// ---------------------------------------------------------------------------
// Growth bounds

/// `(2 + sqrt 2)^2`, the conjectured growth of eager operation sequences.
pub fn eager_growth_constant() -> f64 {
    let d = 2.0 + 2f64.sqrt();
    d * d
}

/// `1/t~_c = 4 (Q_c + 1)^2 / Q_c^2` with `Q_c = 8 - 64/(3 pi)`, the growth
/// of standard operation sequences.
pub fn standard_growth_constant() -> f64 {
    let qc = 8.0 - 64.0 / (3.0 * std::f64::consts::PI);
    4.0 * (qc + 1.0) * (qc + 1.0) / (qc * qc)
}

/// Truncates a positive value to `digits` significant figures.
pub fn truncate_significant(x: f64, digits: i32) -> f64 {
    let e = x.abs().log10().floor() as i32 - digits + 1;
    let p = 10f64.powi(e);
    (x / p).trunc() * p
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub n: usize,
    /// `s_k^(1/k)` for `k = 1..=n`.
    pub nth_roots: Vec<f64>,
    pub nth_roots_increasing: bool,
    /// `1/r`, where `r` is the smallest positive root of `S•_n(t) = 1` for
    /// the degree-`n` truncation `S•_n`.
    pub truncation_bound: f64,
    pub eager_constant: f64,
    pub standard_constant: f64,
}

fn bigint_ln(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        v.to_f64().unwrap_or(f64::NAN).ln()
    } else {
        let shift = bits - 900;
        ((v >> shift).to_f64().unwrap_or(f64::NAN)).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Smallest positive root of `p(t) = 1` for a polynomial with nonnegative
/// coefficients and no constant term, by exact bisection to `2^-bits`.
fn unit_crossing(coeffs: &[BigInt], bits: u32) -> Result<BigRational, Error> {
    let eval = |t: &BigRational| {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        acc
    };
    let one = BigRational::one();
    let mut lo = BigRational::zero();
    let mut hi = one.clone();
    if eval(&hi) < one {
        return Err(Error::Contract("truncated series stays below 1 on [0, 1]".into()));
    }
    let half = BigRational::new(int(1), int(2));
    for _ in 0..bits {
        let mid = (&lo + &hi) * &half;
        if eval(&mid) >= one {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Lower bounds on the growth constant of achievable permutations, and
/// the two reference constants, from `S` and `S•` through order `n`.
pub fn growth_bounds(
    s: &TruncatedSeries<BigInt>,
    sprim: &TruncatedSeries<BigInt>,
    n: usize,
) -> Result<GrowthReport, Error> {
    if s.order() < n || sprim.order() < n || n == 0 {
        return Err(Error::InvalidInput(format!("growth bounds need order {n} series")));
    }
    let nth_roots: Vec<f64> = (1..=n)
        .map(|k| (bigint_ln(s.coeff(k)) / k as f64).exp())
        .collect();
    let nth_roots_increasing = nth_roots.windows(2).all(|w| w[0] <= w[1]);
    let r = unit_crossing(&sprim.coeffs()[..=n], 64)?;
    Ok(GrowthReport {
        n,
        nth_roots,
        nth_roots_increasing,
        truncation_bound: 1.0 / ratio_f64(&r),
        eager_constant: eager_growth_constant(),
        standard_constant: standard_growth_constant(),
    })
}

// ---------------------------------------------------------------------------
// Properties and counterexamples

fn bilateral_words(half: usize, up: Step, down: Step) -> Vec<Vec<Step>> {
    let len = 2 * half;
    (0u64..1 << len)
        .filter(|m| m.count_ones() as usize == half)
        .map(|m| (0..len).map(|b| if m >> b & 1 == 1 { up } else { down }).collect())
        .collect()
}

fn is_dyck(v: &[Step], up: Step) -> bool {
    let mut h = 0i64;
    v.iter().all(|&s| {
        h += if s == up { 1 } else { -1 };
        h >= 0
    })
}

/// Dyck words of half-length `half` on `{up, down}`.
pub fn dyck_words(half: usize, up: Step, down: Step) -> Vec<Vec<Step>> {
    bilateral_words(half, up, down)
        .into_iter()
        .filter(|v| is_dyck(v, up))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P1Report {
    pub i_max: usize,
    pub j_max: usize,
    pub classes_checked: usize,
    /// Horizontal and vertical words whose value at `a = -1` is not
    /// `binom(i+j, i)`.
    pub failures: Vec<(String, String)>,
}

fn letters(w: &[Step]) -> String {
    w.iter().map(|s| s.letter()).collect()
}

/// For every bilateral `E/W` path of half-length `i <= i_max` and `N/S`
/// path of half-length `j <= j_max`, evaluates the corner polynomial of
/// their shuffle class at `a = -1` and compares with `binom(i+j, i)`.
pub fn p1_check(i_max: usize, j_max: usize) -> Result<P1Report, Error> {
    let mut jobs = Vec::new();
    for i in 0..=i_max {
        for j in 0..=j_max {
            for w in bilateral_words(i, Step::E, Step::W) {
                for v in bilateral_words(j, Step::N, Step::S) {
                    jobs.push((i, j, w.clone(), v));
                }
            }
        }
    }
    let results: Vec<Result<Option<(String, String)>, Error>> = jobs
        .par_iter()
        .map(|(i, j, w, v)| {
            let p = walks::shuffle_class_polynomial(w, v)?;
            let ok = p.eval(&int(-1)) == binomial((i + j) as u64, *i as u64);
            Ok((!ok).then(|| (letters(w), letters(v))))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(P1Report {
        i_max,
        j_max,
        classes_checked: jobs.len(),
        failures,
    })
}

/// `(a+1)`-positivity of quarter plane loops with each given vertical
/// projection, through half-length `n`.
pub fn p2_check(vs: &[Vec<Step>], n: usize) -> Result<Vec<PositivityReport>, Error> {
    vs.iter()
        .map(|v| positivity_check(&SeriesId::FixedProjection(v.clone()), n))
        .collect()
}

/// Every Dyck word on `{N, S}` with half-length `1..=j_max`.
pub fn p2_default_words(j_max: usize) -> Vec<Vec<Step>> {
    (1..=j_max).flat_map(|j| dyck_words(j, Step::N, Step::S)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub name: &'static str,
    pub description: &'static str,
    /// Coefficients in ascending powers of `a` (or of `u`, then `a`).
    pub computed: String,
    pub expected: String,
    pub matches: bool,
    /// Whether the rebased polynomial has a negative coefficient.
    pub not_a_plus_one_positive: bool,
}

fn poly_text(p: &IntPolynomial) -> String {
    p.display_in("a")
}

fn interleavings(h: &[Step], v: &[Step], f: &mut impl FnMut(&[Step])) {
    fn go(h: &[Step], v: &[Step], buf: &mut Vec<Step>, f: &mut impl FnMut(&[Step])) {
        if h.is_empty() && v.is_empty() {
            f(buf);
            return;
        }
        if let Some((&x, rest)) = h.split_first() {
            buf.push(x);
            go(rest, v, buf, f);
            buf.pop();
        }
        if let Some((&x, rest)) = v.split_first() {
            buf.push(x);
            go(h, rest, buf, f);
            buf.pop();
        }
    }
    go(h, v, &mut Vec::new(), f);
}

fn tally(counts: &mut Vec<i64>, k: usize) {
    if counts.len() <= k {
        counts.resize(k + 1, 0);
    }
    counts[k] += 1;
}

fn steps(s: &str) -> Vec<Step> {
    s.chars().filter_map(Step::from_letter).collect()
}

/// The four polynomials showing that `(a+1)`-positivity fails for walks
/// with a fixed endpoint, inside a shuffle class, and for right half
/// plane loops with a fixed bilateral projection. Each is computed by
/// exhaustive enumeration and compared with its expected value.
pub fn counterexample_suite() -> Vec<Counterexample> {
    let mut out = Vec::new();
    let mut push = |name, description, p: IntPolynomial, expected: IntPolynomial| {
        out.push(Counterexample {
            name,
            description,
            computed: poly_text(&p),
            expected: poly_text(&expected),
            matches: p == expected,
            not_a_plus_one_positive: walks::to_a_plus_one(&p).min_coeff().is_negative(),
        });
    };
    push(
        "endpoint-plane",
        "unconfined walks of length 3 ending at (-1, 2)",
        brute::brute_walk_polynomial(Region::Plane, 3, (-1, 2)),
        IntPolynomial::from_i64s(&[1, 2]),
    );
    push(
        "endpoint-quadrant",
        "quarter plane walks of length 7 ending at (5, 0)",
        brute::brute_walk_polynomial(Region::Quadrant, 7, (5, 0)),
        IntPolynomial::from_i64s(&[12, 15]),
    );
    let mut counts = Vec::new();
    interleavings(&steps("EWEWEW"), &steps("NNNSSS"), &mut |w| {
        tally(&mut counts, brute::corners(w))
    });
    push(
        "shuffle-class",
        "shuffle class of (EWEWEW, NNNSSS)",
        IntPolynomial::from_i64s(&counts),
        IntPolynomial::from_i64s(&[180, 390, 292, 62]),
    );
    // loops in x >= 0 with vertical projection SSNN, lengths 4 and 6
    let v = steps("SSNN");
    let mut u4 = Vec::new();
    let mut u6 = Vec::new();
    for (len, counts) in [(4, &mut u4), (6, &mut u6)] {
        brute::for_each_walk(Region::RightHalf, len, (0, 0), |w| {
            let proj: Vec<Step> = w.iter().copied().filter(|s| matches!(s, Step::N | Step::S)).collect();
            if proj == v {
                tally(counts, brute::corners(w));
            }
        });
    }
    let p4 = IntPolynomial::from_i64s(&u4);
    let p6 = IntPolynomial::from_i64s(&u6);
    let ok4 = p4 == <IntPolynomial as crate::exactnum::Ring>::one();
    let expected6 = IntPolynomial::from_i64s(&[5, 6, 4]);
    out.push(Counterexample {
        name: "projection-right-half",
        description: "loops in x >= 0 projecting vertically on SSNN",
        computed: format!("({}) u^4 + ({}) u^6", poly_text(&p4), poly_text(&p6)),
        expected: format!("(1) u^4 + ({}) u^6", poly_text(&expected6)),
        matches: ok4 && p6 == expected6,
        not_a_plus_one_positive: walks::to_a_plus_one(&p6).min_coeff().is_negative(),
    });
    out
}

// ---------------------------------------------------------------------------
// Asymptotics at a = 1 and a = -1

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop4Report {
    pub n: usize,
    /// `q_k(1) 16^-k k^3` for `k = 1..=n`.
    pub normalized_at_1: Vec<f64>,
    /// `q_k(-1) 8^-(k+1) k^3` for `k = 1..=n`.
    pub normalized_at_minus1: Vec<f64>,
    pub limit_at_1: f64,
    pub limit_at_minus1: f64,
    pub rel_error_at_1: f64,
    pub rel_error_at_minus1: f64,
}

impl Prop4Report {
    pub fn within(&self, tol: f64) -> bool {
        self.rel_error_at_1 <= tol && self.rel_error_at_minus1 <= tol
    }
}

/// Normalized loop counts at `a = 1` and `a = -1`, compared with
/// `q_n(1) ~ (4/pi) 16^n n^-3` and `q_n(-1) ~ (1/pi) 8^(n+1) n^-3`.
pub fn prop4_asymptotics_check(n: usize) -> Result<Prop4Report, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let (q1, qm1) = rayon::join(
        || walks::quarter_loop_values_at(n, &BigRational::one()),
        || walks::quarter_loop_values_at(n, &-BigRational::one()),
    );
    let norm = |q: &TruncatedSeries<BigRational>, base: i64, extra: usize| -> Vec<f64> {
        (1..=n)
            .map(|k| {
                let k3 = BigRational::from_integer(int((k * k * k) as i64));
                let b = BigRational::from_integer(num_traits::pow(int(base), k + extra));
                ratio_f64(&(q.coeff(k) * k3 / b))
            })
            .collect()
    };
    let a1 = norm(&q1, 16, 0);
    let am1 = norm(&qm1, 8, 1);
    let l1 = 4.0 / std::f64::consts::PI;
    let lm1 = 1.0 / std::f64::consts::PI;
    Ok(Prop4Report {
        n,
        rel_error_at_1: (a1[n - 1] - l1).abs() / l1,
        rel_error_at_minus1: (am1[n - 1] - lm1).abs() / lm1,
        normalized_at_1: a1,
        normalized_at_minus1: am1,
        limit_at_1: l1,
        limit_at_minus1: lm1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{closed_form, ClosedForm};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(int(p), int(q))
    }

    #[test]
    fn q2_rebased() {
        let p = IntPolynomial::from_i64s(&[8, 2]);
        assert_eq!(walks::to_a_plus_one(&p), IntPolynomial::from_i64s(&[6, 2]));
        let n2 = IntPolynomial::from_i64s(&[180, 390, 292, 62]);
        assert!(walks::to_a_plus_one(&n2).min_coeff().is_negative());
    }

    #[test]
    fn positivity_small_orders() {
        for id in [SeriesId::Q, SeriesId::QRefined, SeriesId::QPrimitive, SeriesId::W00, SeriesId::H00] {
            let r = positivity_check(&id, 8).unwrap();
            assert!(r.passes(), "{id}");
        }
        let r = positivity_check(&"fixed:NNSS".parse().unwrap(), 6).unwrap();
        assert!(r.passes());
        assert_eq!(r.min_coeffs.len(), 7);
        assert!("bogus".parse::<SeriesId>().is_err());
        assert_eq!("fixed:NSNS".parse::<SeriesId>().unwrap().to_string(), "fixed:NSNS");
    }

    #[test]
    fn radius_formula() {
        assert!((conjectured_radius(1.0).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert!((conjectured_radius(-1.0).unwrap() - 1.0 / 8.0).abs() < 1e-15);
        assert!((conjectured_radius(-0.5).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!(conjectured_radius(-1.5).is_err());
    }

    #[test]
    fn scan_rows_and_monotonicity() {
        let grid: Vec<BigRational> = (0..=4).map(|k| rat(k, 2)).collect();
        let rows = radius_scan(&grid, &[20, 30]).unwrap();
        assert_eq!(rows.len(), 10);
        let at30: Vec<f64> = rows.iter().filter(|r| r.n == 30).map(|r| r.ratio).collect();
        assert!(at30.windows(2).all(|w| w[0] >= w[1]));
        for r in &rows {
            assert!(r.ratio > 0.0);
        }
    }

    #[test]
    fn sqrt_enclosure() {
        let (lo, hi) = sqrt_bounds(&rat(2, 1));
        assert!(&lo * &lo <= rat(2, 1) && rat(2, 1) <= &hi * &hi);
        let (rlo, rhi) = rho_bounds(&BigRational::zero());
        let exact = conjectured_radius(0.0).unwrap();
        assert!(ratio_f64(&rlo) <= exact + 1e-15 && exact - 1e-15 <= ratio_f64(&rhi));
    }

    #[test]
    fn integer_horner_matches_rational() {
        let q = walks::quarter_loop_values_at(12, &rat(-3, 8));
        let x = rat(5, 77);
        let naive = q
            .coeffs()
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, c)| acc + c * num_traits::pow(x.clone(), k));
        assert_eq!(eval_series(&q, &x), naive);
    }

    #[test]
    fn g_is_positive_at_zero() {
        assert!(tc_equation_value(30, &BigRational::zero()) > 0.0);
        assert!(tc_equation_value(30, &rat(-1, 2)) < 0.0);
    }

    #[test]
    fn small_order_bracket_is_wide_and_sane() {
        let b = tc_bracket(20, 1e-4).unwrap();
        assert!(b.a_low < b.a_high);
        assert!(b.a_high > -0.148);
        assert!(b.inv_tc_low < b.inv_tc_high);
    }

    #[test]
    fn bracket_at_forty() {
        let b = tc_bracket(40, 1e-5).unwrap();
        assert_eq!(b.a_high_exact, "-19317/131072");
        assert_eq!(b.a_low_exact, "-2467/16384");
        assert!(b.contains_a(-0.15, -0.148));
        assert!(tc_bracket(40, 0.0).is_err());
    }

    #[test]
    fn constants() {
        assert!((truncate_significant(eager_growth_constant(), 3) - 11.6).abs() < 1e-9);
        assert!((truncate_significant(standard_growth_constant(), 3) - 13.3).abs() < 1e-9);
        assert!((eager_growth_constant() - 11.657).abs() < 1e-3);
    }

    #[test]
    fn unit_crossing_of_simple_polynomial() {
        // t + t^2 = 1 at t = (sqrt 5 - 1)/2
        let r = unit_crossing(&[int(0), int(1), int(1)], 60).unwrap();
        assert!((ratio_f64(&r) - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn p1_small() {
        let r = p1_check(2, 2).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.classes_checked, (1 + 2 + 6) * (1 + 2 + 6));
        let one = walks::shuffle_class_polynomial(&steps("EW"), &steps("NS")).unwrap();
        assert_eq!(one.eval(&int(1)), int(6));
        assert_eq!(one.eval(&int(-1)), int(2));
    }

    #[test]
    fn dyck_word_counts() {
        assert_eq!(dyck_words(3, Step::N, Step::S).len(), 5);
        assert_eq!(p2_default_words(3).len(), 1 + 2 + 5);
    }

    #[test]
    fn counterexamples_reproduce() {
        let suite = counterexample_suite();
        assert_eq!(suite.len(), 4);
        for c in &suite {
            assert!(c.matches, "{}: {} vs {}", c.name, c.computed, c.expected);
        }
        // 2a + 1 and 15a + 12 are (a+1)-positive only through sign changes
        assert!(suite.iter().all(|c| c.not_a_plus_one_positive));
    }

    #[test]
    fn closed_form_matches_dp_values() {
        let q1 = walks::quarter_loop_values_at(25, &BigRational::one());
        let qm1 = walks::quarter_loop_values_at(25, &-BigRational::one());
        let c1 = closed_form(ClosedForm::QAt1, 25);
        let cm1 = closed_form(ClosedForm::QAtMinus1, 25);
        for k in 0..=25 {
            assert_eq!(q1.coeff(k), &BigRational::from_integer(c1.coeff(0, k).clone()));
            let total: BigInt = (0..=k).map(|i| cm1.coeff(i, k).clone()).sum();
            assert_eq!(qm1.coeff(k), &BigRational::from_integer(total));
        }
    }
}
