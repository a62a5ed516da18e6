use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Ring;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector. Nesting (`Polynomial<Polynomial<BigInt>>`) gives
/// bivariate polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x);
            acc.add_assign_ref(c);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// `self += other * x^k`, growing as needed.
    pub fn add_shifted(&mut self, other: &Self, k: usize) {
        if other.coeffs.is_empty() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() + k {
            self.coeffs.resize(other.coeffs.len() + k, R::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + k].add_assign_ref(c);
        }
        self.trim();
    }

    /// Taylor shift: the coefficients of `p(y - shift)` in `y`, i.e. `p`
    /// written in the basis `(x + shift)^k`.
    pub fn rebase_shifted(&self, shift: i64) -> Self {
        // Horner in the new variable: p(y - h) = (...(c_d (y - h) + c_{d-1})(y - h) ...)
        let minus_h = R::from_i64(-shift);
        let step = Polynomial::new(vec![minus_h, R::one()]);
        let mut acc = Polynomial::new(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = &acc * &step;
            acc = &acc + &Polynomial::constant(c.clone());
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn display_in(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("{c}"),
                1 if c.is_one() => var.to_string(),
                1 => format!("{c}*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("{c}*{var}^{k}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl IntPolynomial {
    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Smallest coefficient (zero for the zero polynomial).
    pub fn min_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(<BigInt as Ring>::zero)
    }
}

impl RatPolynomial {
    /// Converts back to integer coefficients, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(super::to_integer(c)?);
        }
        Some(Polynomial::new(out))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("a"))
    }
}

impl<R: fmt::Debug> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: Ring> From<R> for Polynomial<R> {
    fn from(c: R) -> Self {
        Polynomial::constant(c)
    }
}

impl<'a, R: Ring> Add<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a, R: Ring> Sub<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<'a, R: Ring> Mul<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        self.mul_ref(rhs)
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        self.neg_ref()
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Polynomial::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        Polynomial::constant(R::from_i64(v))
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.add_shifted(rhs, 0);
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i].sub_assign_ref(c);
        }
        self.trim();
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].mul_add_assign(a, b);
            }
        }
        Polynomial::new(out)
    }
    fn neg_ref(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].try_inverse().map(Polynomial::constant)
        } else {
            None
        }
    }
    fn try_div_int(&self, d: i64) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.try_div_int(d)?);
        }
        Some(Polynomial::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!((&p(&[1, 1]) - &p(&[1, 1])).is_zero());
    }

    #[test]
    fn rebase_examples() {
        // 8 + 2a = 6 + 2(a+1)
        assert_eq!(p(&[8, 2]).rebase_shifted(1), p(&[6, 2]));
        // 44 + 24a + 2a^2 = 22 + 20(a+1) + 2(a+1)^2
        assert_eq!(p(&[44, 24, 2]).rebase_shifted(1), p(&[22, 20, 2]));
        assert_eq!(p(&[7]).rebase_shifted(1), p(&[7]));
        assert_eq!(p(&[]).rebase_shifted(3), p(&[]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[180, 390, 292, 62]).display_in("a"), "180 + 390*a + 292*a^2 + 62*a^3");
        assert_eq!(p(&[0, 1]).display_in("b"), "b");
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn rebase_is_an_involution(q in small_poly(), h in -3i64..4) {
            prop_assert_eq!(q.rebase_shifted(h).rebase_shifted(-h), q);
        }

        #[test]
        fn rebase_preserves_values(q in small_poly(), h in -3i64..4, x in -5i64..5) {
            // q(x) == rebased(x + h)
            let r = q.rebase_shifted(h);
            prop_assert_eq!(q.eval(&BigInt::from(x)), r.eval(&BigInt::from(x + h)));
        }

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
