use std::fmt;

use super::Ring;

/// Laurent polynomial in `x`, stored densely on a symmetric exponent range
/// `-half..=half`.
///
/// `half` is always the largest absolute exponent with a nonzero
/// coefficient (zero for constants), so equal values compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<R> {
    half: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> LaurentPolynomial<R> {
    pub fn constant(c: R) -> Self {
        LaurentPolynomial {
            half: 0,
            coeffs: vec![c],
        }
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: R, k: i64) -> Self {
        let half = k.unsigned_abs() as usize;
        let mut coeffs = vec![R::zero(); 2 * half + 1];
        coeffs[(k + half as i64) as usize] = c;
        Self::normalized(half, coeffs)
    }

    /// `x + 1/x`.
    pub fn x_plus_xbar() -> Self {
        Self::normalized(1, vec![R::one(), R::zero(), R::one()])
    }

    fn normalized(mut half: usize, mut coeffs: Vec<R>) -> Self {
        while half > 0 && coeffs[0].is_zero() && coeffs[2 * half].is_zero() {
            coeffs.pop();
            coeffs.remove(0);
            half -= 1;
        }
        LaurentPolynomial { half, coeffs }
    }

    /// Largest absolute exponent present.
    pub fn half_span(&self) -> usize {
        self.half
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: i64) -> R {
        if k.unsigned_abs() as usize > self.half {
            return R::zero();
        }
        self.coeffs[(k + self.half as i64) as usize].clone()
    }

    /// The coefficient of `x^0`.
    pub fn constant_term(&self) -> R {
        self.coeffs[self.half].clone()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::normalized(self.half, self.coeffs.iter().map(|v| v.mul_ref(c)).collect())
    }

    fn widened(&self, half: usize) -> Vec<R> {
        let pad = half - self.half;
        let mut out = vec![R::zero(); pad];
        out.extend(self.coeffs.iter().cloned());
        out.resize(2 * half + 1, R::zero());
        out
    }

    /// `x -> 1/x`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolynomial {
            half: self.half,
            coeffs,
        }
    }
}

impl<R: Ring> Ring for LaurentPolynomial<R> {
    fn zero() -> Self {
        Self::constant(R::zero())
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.half == 0 && self.coeffs[0].is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(R::from_i64(v))
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        let half = self.half.max(rhs.half);
        let mut coeffs = self.widened(half);
        let off = half - rhs.half;
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[off + i].add_assign_ref(c);
        }
        *self = Self::normalized(half, coeffs);
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.add_assign_ref(&rhs.neg_ref());
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let half = self.half + rhs.half;
        let mut coeffs = vec![R::zero(); 2 * half + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].mul_add_assign(a, b);
                }
            }
        }
        Self::normalized(half, coeffs)
    }
    fn neg_ref(&self) -> Self {
        LaurentPolynomial {
            half: self.half,
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.half == 0 {
            self.coeffs[0].try_inverse().map(Self::constant)
        } else {
            None
        }
    }
    fn try_div_int(&self, d: i64) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.try_div_int(d)?);
        }
        Some(Self::normalized(self.half, out))
    }
}

impl<R: fmt::Debug> fmt::Debug for LaurentPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^-{}", self.half)?;
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = LaurentPolynomial<BigInt>;

    #[test]
    fn powers_of_x_plus_xbar_have_central_binomial_constant_terms() {
        let base = L::x_plus_xbar();
        let mut acc = L::one();
        for n in 0..8u64 {
            let want = if n % 2 == 0 {
                crate::exactnum::binomial(n, n / 2)
            } else {
                BigInt::from(0)
            };
            assert_eq!(acc.constant_term(), want);
            acc = acc.mul_ref(&base);
        }
    }

    #[test]
    fn cancellation_shrinks_storage() {
        let mut p = L::monomial(BigInt::from(3), -2);
        p.add_assign_ref(&L::monomial(BigInt::from(1), 1));
        assert_eq!(p.half_span(), 2);
        p.sub_assign_ref(&L::monomial(BigInt::from(3), -2));
        assert_eq!(p, L::monomial(BigInt::from(1), 1));
        assert_eq!(p.reflect().coeff(-1), BigInt::from(1));
    }
}
