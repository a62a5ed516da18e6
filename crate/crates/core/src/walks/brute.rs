//! Exhaustive walk enumeration, used as an oracle for the DP engines.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::dp::Region;
use crate::exactnum::{IntPolynomial, Polynomial};
use crate::machine::Step;
use crate::Error;

/// Default half-length limit for exhaustive loop enumeration.
pub const DEFAULT_LOOP_BOUND: usize = 8;

/// Number of `NW` plus `ES` factors.
pub fn corners(steps: &[Step]) -> usize {
    steps
        .windows(2)
        .filter(|w| matches!((w[0], w[1]), (Step::N, Step::W) | (Step::E, Step::S)))
        .count()
}

/// Calls `f` on every walk of the given length from the origin to `target`
/// inside `region`, one at a time. Branches that can no longer reach the
/// target are cut, so only complete walks are visited.
pub fn for_each_walk(region: Region, length: usize, target: (i64, i64), mut f: impl FnMut(&[Step])) {
    fn go(
        region: Region,
        length: usize,
        target: (i64, i64),
        pos: (i64, i64),
        buf: &mut Vec<Step>,
        f: &mut dyn FnMut(&[Step]),
    ) {
        let rem = (length - buf.len()) as i64;
        if (pos.0 - target.0).abs() + (pos.1 - target.1).abs() > rem {
            return;
        }
        if rem == 0 {
            f(buf);
            return;
        }
        for s in Step::ALL {
            let (dx, dy) = s.delta();
            let next = (pos.0 + dx, pos.1 + dy);
            if !region.contains(next.0, next.1) {
                continue;
            }
            buf.push(s);
            go(region, length, target, next, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(length);
    go(region, length, target, (0, 0), &mut buf, &mut f);
}

fn poly_from_counts(counts: BTreeMap<usize, u64>) -> IntPolynomial {
    let deg = counts.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); deg + 1];
    for (k, c) in counts {
        coeffs[k] = BigInt::from(c);
    }
    IntPolynomial::new(coeffs)
}

/// Corner polynomial of all walks of a given length and endpoint.
pub fn brute_walk_polynomial(region: Region, length: usize, target: (i64, i64)) -> IntPolynomial {
    let mut counts = BTreeMap::new();
    for_each_walk(region, length, target, |w| *counts.entry(corners(w)).or_default() += 1);
    poly_from_counts(counts)
}

/// Corner polynomial of quarter-plane loops of half-length `n`.
pub fn brute_quarter_loops(n: usize, bound: usize) -> Result<IntPolynomial, Error> {
    if n > bound {
        return Err(Error::OverBound { n, bound });
    }
    Ok(brute_walk_polynomial(Region::Quadrant, 2 * n, (0, 0)))
}

/// Quarter-plane loops of half-length `n` as a polynomial in `s` (E
/// steps) with coefficients in `a`.
pub fn brute_quarter_loops_refined(n: usize, bound: usize) -> Result<Polynomial<IntPolynomial>, Error> {
    if n > bound {
        return Err(Error::OverBound { n, bound });
    }
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for_each_walk(Region::Quadrant, 2 * n, (0, 0), |w| {
        let east = w.iter().filter(|&&s| s == Step::E).count();
        *counts.entry((east, corners(w))).or_default() += 1;
    });
    let mut by_s: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n + 1];
    for ((e, c), k) in counts {
        by_s[e].insert(c, k);
    }
    Ok(Polynomial::new(by_s.into_iter().map(poly_from_counts).collect()))
}

/// Quarter-plane loops of half-length `n >= 1` that touch the origin only
/// at their ends.
pub fn brute_primitive_quarter_loops(n: usize, bound: usize) -> Result<IntPolynomial, Error> {
    if n > bound {
        return Err(Error::OverBound { n, bound });
    }
    let mut counts = BTreeMap::new();
    for_each_walk(Region::Quadrant, 2 * n, (0, 0), |w| {
        let mut pos = (0i64, 0i64);
        for s in &w[..w.len().saturating_sub(1)] {
            let (dx, dy) = s.delta();
            pos = (pos.0 + dx, pos.1 + dy);
            if pos == (0, 0) {
                return;
            }
        }
        *counts.entry(corners(w)).or_default() += 1;
    });
    Ok(poly_from_counts(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_loop_polynomials() {
        assert_eq!(brute_quarter_loops(0, 8).unwrap(), IntPolynomial::from_i64s(&[1]));
        assert_eq!(brute_quarter_loops(1, 8).unwrap(), IntPolynomial::from_i64s(&[2]));
        assert_eq!(brute_quarter_loops(2, 8).unwrap(), IntPolynomial::from_i64s(&[8, 2]));
        let q3 = brute_quarter_loops(3, 8).unwrap();
        assert_eq!(q3.eval(&BigInt::from(1)), BigInt::from(70));
        assert!(brute_quarter_loops(9, 8).is_err());
    }

    #[test]
    fn primitive_loops() {
        assert_eq!(brute_primitive_quarter_loops(1, 8).unwrap(), IntPolynomial::from_i64s(&[2]));
        assert_eq!(brute_primitive_quarter_loops(2, 8).unwrap(), IntPolynomial::from_i64s(&[4, 2]));
    }
}
