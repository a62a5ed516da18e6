use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::Ring;
use crate::Error;

/// Power series in two variables `s` and `t`, truncated to the rectangle
/// `deg_s <= order_s`, `deg_t <= order_t`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiTruncatedSeries<R> {
    order_s: usize,
    order_t: usize,
    // row-major: index i * (order_t + 1) + j holds [s^i t^j]
    coeffs: Vec<R>,
}

impl<R: Ring> BiTruncatedSeries<R> {
    pub fn zero(order_s: usize, order_t: usize) -> Self {
        BiTruncatedSeries {
            order_s,
            order_t,
            coeffs: vec![R::zero(); (order_s + 1) * (order_t + 1)],
        }
    }

    pub fn one(order_s: usize, order_t: usize) -> Self {
        Self::monomial(order_s, order_t, R::one(), 0, 0)
    }

    /// `c * s^i * t^j`, zero outside the rectangle.
    pub fn monomial(order_s: usize, order_t: usize, c: R, i: usize, j: usize) -> Self {
        let mut out = Self::zero(order_s, order_t);
        if i <= order_s && j <= order_t {
            out.set(i, j, c);
        }
        out
    }

    pub fn from_fn(order_s: usize, order_t: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut coeffs = Vec::with_capacity((order_s + 1) * (order_t + 1));
        for i in 0..=order_s {
            for j in 0..=order_t {
                coeffs.push(f(i, j));
            }
        }
        BiTruncatedSeries {
            order_s,
            order_t,
            coeffs,
        }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.order_s, self.order_t)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(
            i <= self.order_s && j <= self.order_t,
            "coefficient ({i}, {j}) outside ({}, {})",
            self.order_s,
            self.order_t
        );
        i * (self.order_t + 1) + j
    }

    /// Coefficient of `s^i t^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &R {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: R) {
        let k = self.idx(i, j);
        self.coeffs[k] = c;
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> BiTruncatedSeries<S> {
        BiTruncatedSeries {
            order_s: self.order_s,
            order_t: self.order_t,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.order_s != other.order_s {
            return Err(Error::OrderMismatch {
                left: self.order_s,
                right: other.order_s,
            });
        }
        if self.order_t != other.order_t {
            return Err(Error::OrderMismatch {
                left: self.order_t,
                right: other.order_t,
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
        let (ns, nt) = (self.order_s, self.order_t);
        let mut out = Self::zero(ns, nt);
        for i1 in 0..=ns {
            for j1 in 0..=nt {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(ns - i1) {
                    for j2 in 0..=(nt - j1) {
                        let b = other.coeff(i2, j2);
                        if !b.is_zero() {
                            let k = out.idx(i1 + i2, j1 + j2);
                            out.coeffs[k].mul_add_assign(a, b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiply by `s^di t^dj`, dropping what leaves the rectangle.
    pub fn shift(&self, di: usize, dj: usize) -> Self {
        let mut out = Self::zero(self.order_s, self.order_t);
        for i in 0..=self.order_s.saturating_sub(di) {
            for j in 0..=self.order_t.saturating_sub(dj) {
                if i + di <= self.order_s && j + dj <= self.order_t {
                    out.set(i + di, j + dj, self.coeff(i, j).clone());
                }
            }
        }
        out
    }

    /// Multiplicative inverse, by the recurrence on total position in
    /// lexicographic order; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0 = self.coeff(0, 0);
        let inv0 = c0
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("{c0:?}")))?;
        let (ns, nt) = (self.order_s, self.order_t);
        let mut g = Self::zero(ns, nt);
        for i in 0..=ns {
            for j in 0..=nt {
                if i == 0 && j == 0 {
                    g.set(0, 0, inv0.clone());
                    continue;
                }
                let mut acc = R::zero();
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 == 0 && j1 == 0 {
                            continue;
                        }
                        let f = self.coeff(i1, j1);
                        if !f.is_zero() {
                            acc.mul_add_assign(f, g.coeff(i - i1, j - j1));
                        }
                    }
                }
                g.set(i, j, acc.mul_ref(&inv0).neg_ref());
            }
        }
        Ok(g)
    }

    /// Square root with constant term one.
    pub fn sqrt(&self) -> Result<Self, Error> {
        if !self.coeff(0, 0).is_one() {
            return Err(Error::NotSquareRootable(format!(
                "constant term {:?} is not 1",
                self.coeff(0, 0)
            )));
        }
        let (ns, nt) = (self.order_s, self.order_t);
        let mut g = Self::zero(ns, nt);
        g.set(0, 0, R::one());
        for i in 0..=ns {
            for j in 0..=nt {
                if i == 0 && j == 0 {
                    continue;
                }
                // 2 g_{ij} = f_{ij} - sum over splits that avoid the corners
                let mut acc = self.coeff(i, j).clone();
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if (i1 == 0 && j1 == 0) || (i1 == i && j1 == j) {
                            continue;
                        }
                        let p = g.coeff(i1, j1).mul_ref(g.coeff(i - i1, j - j1));
                        acc.sub_assign_ref(&p);
                    }
                }
                let v = acc.try_div_int(2).ok_or_else(|| {
                    Error::NonIntegral(format!("square root coefficient ({i}, {j}) is not integral"))
                })?;
                g.set(i, j, v);
            }
        }
        Ok(g)
    }
}

impl<R: fmt::Debug> fmt::Debug for BiTruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s^{} t^{}", self.order_s, self.order_t)?;
        for row in self.coeffs.chunks(self.order_t + 1) {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

impl<'a, R: Ring> Add<&'a BiTruncatedSeries<R>> for &'a BiTruncatedSeries<R> {
    type Output = BiTruncatedSeries<R>;
    fn add(self, rhs: &'a BiTruncatedSeries<R>) -> BiTruncatedSeries<R> {
        self.try_add(rhs).expect("bivariate series addition")
    }
}

impl<'a, R: Ring> Sub<&'a BiTruncatedSeries<R>> for &'a BiTruncatedSeries<R> {
    type Output = BiTruncatedSeries<R>;
    fn sub(self, rhs: &'a BiTruncatedSeries<R>) -> BiTruncatedSeries<R> {
        self.try_sub(rhs).expect("bivariate series subtraction")
    }
}

impl<'a, R: Ring> Mul<&'a BiTruncatedSeries<R>> for &'a BiTruncatedSeries<R> {
    type Output = BiTruncatedSeries<R>;
    fn mul(self, rhs: &'a BiTruncatedSeries<R>) -> BiTruncatedSeries<R> {
        self.try_mul(rhs).expect("bivariate series multiplication")
    }
}
