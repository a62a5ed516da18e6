//! Binomial sums for loop series at `a = 1` and `a = -1`, used as
//! cross-checks for the engines.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::{binomial, catalan, BiTruncatedSeries};
use crate::Error;

/// A named closed form.
///
/// `Q*` forms are indexed by (`s`-degree, `u`-degree); `W00*` and `H00*`
/// by (`s`-degree, `t`-degree). `QAt1` keeps only the `u` index, stored
/// at `s`-degree 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `sum_n C_n C_(n+1) u^n`
    QAt1,
    /// `sum binom(2i+2j, 2i) C_i C_j s^i u^(i+j)`
    QRefinedAt1,
    /// `sum binom(i+j, i) C_i C_j s^i u^(i+j)`
    QAtMinus1,
    /// `sum binom(2i+2j, 2i) binom(2i, i) binom(2j, j) s^(2i) t^(2j)`
    W00At1,
    /// `sum binom(i+j, i) binom(2i, i) binom(2j, j) s^(2i) t^(2j)`
    W00AtMinus1,
    /// `W00At1` with an extra factor `1/(j+1)`
    H00At1,
    /// `W00AtMinus1` with an extra factor `1/(j+1)`
    H00AtMinus1,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::QAt1,
        ClosedForm::QRefinedAt1,
        ClosedForm::QAtMinus1,
        ClosedForm::W00At1,
        ClosedForm::W00AtMinus1,
        ClosedForm::H00At1,
        ClosedForm::H00AtMinus1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::QAt1 => "Q_at_1",
            ClosedForm::QRefinedAt1 => "Q_refined_at_1",
            ClosedForm::QAtMinus1 => "Q_at_minus1",
            ClosedForm::W00At1 => "W00_at_1",
            ClosedForm::W00AtMinus1 => "W00_at_minus1",
            ClosedForm::H00At1 => "H00_at_1",
            ClosedForm::H00AtMinus1 => "H00_at_minus1",
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown closed form {s:?}")))
    }
}

/// Expands the named form with both indices up to `n`.
pub fn closed_form(which: ClosedForm, n: usize) -> BiTruncatedSeries<BigInt> {
    let b = |a: usize, k: usize| binomial(a as u64, k as u64);
    let c = |k: usize| catalan(k as u64);
    let mut out = BiTruncatedSeries::zero(n, n);
    match which {
        ClosedForm::QAt1 => {
            for k in 0..=n {
                out.set(0, k, c(k) * c(k + 1));
            }
        }
        ClosedForm::QRefinedAt1 | ClosedForm::QAtMinus1 => {
            for i in 0..=n {
                for j in 0..=n - i {
                    let mix = if which == ClosedForm::QRefinedAt1 {
                        b(2 * i + 2 * j, 2 * i)
                    } else {
                        b(i + j, i)
                    };
                    out.set(i, i + j, mix * c(i) * c(j));
                }
            }
        }
        _ => {
            let at1 = matches!(which, ClosedForm::W00At1 | ClosedForm::H00At1);
            let half = matches!(which, ClosedForm::H00At1 | ClosedForm::H00AtMinus1);
            for i in 0..=n / 2 {
                for j in 0..=n / 2 {
                    let mix = if at1 { b(2 * i + 2 * j, 2 * i) } else { b(i + j, i) };
                    let mut v = mix * b(2 * i, i) * b(2 * j, j);
                    if half {
                        let (q, r) = num_integer::Integer::div_rem(&v, &BigInt::from(j + 1));
                        debug_assert!(r.is_zero());
                        v = q;
                    }
                    out.set(2 * i, 2 * j, v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::quarter_loop_series_refined;

    #[test]
    fn named_coefficients() {
        assert_eq!(closed_form(ClosedForm::QAtMinus1, 3).coeff(1, 2), &BigInt::from(2));
        assert_eq!(closed_form(ClosedForm::QAt1, 5).coeff(0, 5), &BigInt::from(5544));
        for which in ClosedForm::ALL {
            assert_eq!(closed_form(which, 0).coeff(0, 0), &BigInt::from(1));
            assert_eq!(which.name().parse::<ClosedForm>().unwrap(), which);
        }
        assert!("Q_at_2".parse::<ClosedForm>().is_err());
    }

    #[test]
    fn refined_quarter_series_at_plus_minus_one() {
        let n = 15;
        let q = quarter_loop_series_refined(n);
        let f1 = closed_form(ClosedForm::QRefinedAt1, n);
        let fm1 = closed_form(ClosedForm::QAtMinus1, n);
        for k in 0..=n {
            for i in 0..=n {
                let c = q.coeff(k).coeff(i);
                assert_eq!(&c.eval(&BigInt::from(1)), f1.coeff(i, k), "s^{i} u^{k}");
                assert_eq!(&c.eval(&BigInt::from(-1)), fm1.coeff(i, k), "s^{i} u^{k}");
            }
        }
    }
}
