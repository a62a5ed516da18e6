use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Polynomial, Ring, Var};
use crate::Error;

/// Power series in one variable, truncated after degree `order`.
///
/// The coefficient table always has exactly `order + 1` entries. Binary
/// operations require both operands to share variable and order; the
/// `try_*` methods report a mismatch, the operator impls panic on one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries<R> {
    var: Var,
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds a series from leading coefficients, padding with zeros or
    /// dropping terms above `order`.
    pub fn new(var: Var, order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { var, order, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, order, R::one())
    }

    pub fn constant(var: Var, order: usize, c: R) -> Self {
        Self::new(var, order, vec![c])
    }

    /// The series consisting of the variable itself.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::monomial(var, order, R::one(), 1)
    }

    /// `c * var^k`, zero when `k > order`.
    pub fn monomial(var: Var, order: usize, c: R, k: usize) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncatedSeries {
            var,
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `var^k`.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order; reading past it is never meaningful.
    pub fn coeff(&self, k: usize) -> &R {
        assert!(k <= self.order, "coefficient {k} beyond order {}", self.order);
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: R) {
        assert!(k <= self.order, "coefficient {k} beyond order {}", self.order);
        self.coeffs[k] = c;
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops all terms above `order`. Refuses to raise the order.
    pub fn truncate(&self, order: usize) -> Result<Self, Error> {
        if order > self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: order,
            });
        }
        Ok(TruncatedSeries {
            var: self.var,
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Same coefficients under another variable name.
    pub fn rename(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.var != other.var {
            return Err(Error::VarMismatch {
                left: self.var,
                right: other.var,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign_ref(b);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = vec![R::zero(); n + 1];
        let lo_a = self.valuation().unwrap_or(n + 1);
        let lo_b = other.valuation().unwrap_or(n + 1);
        for i in lo_a..=n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lo_b..=(n - i) {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out[i + j].mul_add_assign(a, b);
                }
            }
        }
        TruncatedSeries {
            var: self.var,
            order: n,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Multiply by `var^k`, discarding what falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k.min(self.order + 1)];
        coeffs.extend(self.coeffs.iter().take((self.order + 1).saturating_sub(k)).cloned());
        TruncatedSeries {
            var: self.var,
            order: self.order,
            coeffs,
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.var, self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, Error> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("{:?}", self.coeffs[0])))?;
        let n = self.order;
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.mul_add_assign(&self.coeffs[k], &g[m - k]);
                }
            }
            g.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(TruncatedSeries {
            var: self.var,
            order: n,
            coeffs: g,
        })
    }

    /// Square root with constant term one.
    ///
    /// Term recurrence `2 g_m = f_m - sum_{0<k<m} g_k g_{m-k}`; fails if a
    /// halving leaves the coefficient ring.
    pub fn sqrt(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotSquareRootable(format!(
                "constant term {:?} is not 1",
                self.coeffs[0]
            )));
        }
        let n = self.order;
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(R::one());
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                let p = g[k].mul_ref(&g[m - k]);
                acc.sub_assign_ref(&p);
            }
            let gm = acc.try_div_int(2).ok_or_else(|| {
                Error::NonIntegral(format!("square root coefficient {m} is not integral"))
            })?;
            g.push(gm);
        }
        Ok(TruncatedSeries {
            var: self.var,
            order: n,
            coeffs: g,
        })
    }

    /// `self(inner)`; the inner series must have no constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        self.check(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidInput(
                "inner series of a composition must have zero constant term".into(),
            ));
        }
        let mut acc = Self::zero(self.var, self.order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0].add_assign_ref(c);
        }
        Ok(acc)
    }
}

/// Evaluates `f(x, w) = sum_n f_n(x) w^n`, where each `f_n` is a polynomial
/// in a second variable with coefficients in `C`.
///
/// `x` is an arbitrary series and `w` must have zero constant term; both
/// must share variable and order, which the result inherits. The order of
/// `f` must be at least that order. Powers of `x` are computed once and
/// `w` is handled by Horner's rule.
pub fn compose_bivariate<C, R>(
    f: &TruncatedSeries<Polynomial<C>>,
    x: &TruncatedSeries<R>,
    w: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>, Error>
where
    C: Ring,
    R: Ring + From<C>,
{
    x.check(w)?;
    let n = x.order;
    if f.order < n {
        return Err(Error::OrderMismatch {
            left: f.order,
            right: n,
        });
    }
    if !w.coeffs[0].is_zero() {
        return Err(Error::InvalidInput(
            "second argument of a composition must have zero constant term".into(),
        ));
    }
    let max_deg = f.coeffs[..=n]
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let mut powers = Vec::with_capacity(max_deg + 1);
    powers.push(TruncatedSeries::one(x.var, n));
    for k in 1..=max_deg {
        let next = powers[k - 1].mul_unchecked(x);
        powers.push(next);
    }
    let eval_at_x = |p: &Polynomial<C>| {
        let mut out: TruncatedSeries<R> = TruncatedSeries::zero(x.var, n);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = R::from(c.clone());
            for (o, xp) in out.coeffs.iter_mut().zip(&powers[k].coeffs) {
                if !xp.is_zero() {
                    o.mul_add_assign(&c, xp);
                }
            }
        }
        out
    };
    // Horner in w: the m-th step only needs order n - m of f_m(x), but the
    // bookkeeping is not worth it at the sizes used here.
    let mut acc = TruncatedSeries::zero(x.var, n);
    for m in (0..=n).rev() {
        acc = acc.mul_unchecked(w);
        let fm = eval_at_x(&f.coeffs[m]);
        for (a, b) in acc.coeffs.iter_mut().zip(&fm.coeffs) {
            a.add_assign_ref(b);
        }
    }
    Ok(acc)
}

impl<R: Ring + fmt::Display> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

impl<R: fmt::Debug> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.var, self.order)?;
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<'a, R: Ring> Add<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn add(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        self.try_add(rhs).expect("series addition")
    }
}

impl<'a, R: Ring> Sub<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn sub(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl<'a, R: Ring> Mul<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn mul(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl<R: Ring> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        self.map(Ring::neg_ref)
    }
}
