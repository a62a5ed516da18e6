//! Exact arithmetic: big integers and rationals, dense polynomials, and
//! truncated power series whose coefficients live in any of those rings.
//!
//! Everything here is immutable-by-value; operations build new values.

mod biseries;
mod json;
mod laurent;
mod poly;
mod series;

pub use biseries::BiTruncatedSeries;
pub use json::{parse_rational, JsonCoeff};
pub use laurent::LaurentPolynomial;
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};
pub use series::{compose_bivariate, TruncatedSeries};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Name of a formal variable. Only used to catch mixing series in
/// different variables and to label output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    A,
    B,
    S,
    T,
    U,
    V,
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Var::A => "a",
            Var::B => "b",
            Var::S => "s",
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::X => "x",
            Var::Y => "y",
        };
        f.write_str(c)
    }
}

/// A commutative ring with exact arithmetic.
///
/// Operations take references so that big coefficients are not cloned on
/// every step of a convolution.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    /// Exact division by a small integer; `None` if the quotient leaves the ring.
    fn try_div_int(&self, d: i64) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        if One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }
    fn try_div_int(&self, d: i64) -> Option<Self> {
        let d = BigInt::from(d);
        let (q, r) = self.div_rem(&d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn try_div_int(&self, d: i64) -> Option<Self> {
        (d != 0).then(|| self / BigRational::from_integer(BigInt::from(d)))
    }
}

/// Converts an integer-coefficient value to its rational counterpart.
pub fn to_rational(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Returns the integer value of `r` if it has denominator one.
pub fn to_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Binomial coefficient as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return <BigInt as Zero>::zero();
    }
    let k = k.min(n - k);
    let mut acc = <BigInt as One>::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The n-th Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let got: Vec<BigInt> = (0..8).map(catalan).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132, 429]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn integer_division_is_exact_or_refused() {
        assert_eq!(BigInt::from(14).try_div_int(2), Some(BigInt::from(7)));
        assert_eq!(BigInt::from(-3).try_div_int(2), None);
        assert_eq!(BigInt::from(-1).try_inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).try_inverse(), None);
    }
}
