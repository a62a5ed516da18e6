//! Layered dynamic programming over square-lattice walks with corner
//! weights.
//!
//! A corner is an `NW` or `ES` factor. The state of a partial walk is its
//! position and whether its last step was `E`, `N`, or something else,
//! which is all that is needed to know whether the next step closes a
//! corner. Layer `k` holds walks of length `k`; cells that cannot reach the
//! target in the remaining steps are never filled.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactnum::{IntPolynomial, Polynomial, Ring};
use crate::machine::Step;

/// How a partial walk's weight changes when a step is appended.
pub trait Weighting: Sync {
    type W: Clone + Send + Sync + std::fmt::Debug;

    fn zero(&self) -> Self::W;
    fn one(&self) -> Self::W;
    fn is_zero(&self, w: &Self::W) -> bool;
    fn add(&self, acc: &mut Self::W, w: &Self::W);
    /// `acc += w * weight(step)`, where `corner` says whether the step
    /// completes an `NW` or `ES` factor.
    fn add_step(&self, acc: &mut Self::W, w: &Self::W, step: Step, corner: bool);
}

/// Exact polynomial in the corner variable `a`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Corners;

impl Weighting for Corners {
    type W = IntPolynomial;

    fn zero(&self) -> IntPolynomial {
        IntPolynomial::zero()
    }
    fn one(&self) -> IntPolynomial {
        IntPolynomial::one()
    }
    fn is_zero(&self, w: &IntPolynomial) -> bool {
        w.is_zero()
    }
    fn add(&self, acc: &mut IntPolynomial, w: &IntPolynomial) {
        acc.add_assign_ref(w);
    }
    fn add_step(&self, acc: &mut IntPolynomial, w: &IntPolynomial, _step: Step, corner: bool) {
        acc.add_shifted(w, usize::from(corner));
    }
}

/// Polynomial in a marker variable (outer index) whose coefficients are
/// polynomials in `a`. Steps for which `marked` holds carry the marker.
#[derive(Debug, Clone, Copy)]
pub struct MarkedCorners {
    pub marked: fn(Step) -> bool,
}

impl MarkedCorners {
    /// Marks `E` steps.
    pub fn east() -> Self {
        MarkedCorners {
            marked: |s| s == Step::E,
        }
    }

    /// Marks horizontal steps.
    pub fn horizontal() -> Self {
        MarkedCorners {
            marked: |s| matches!(s, Step::E | Step::W),
        }
    }
}

impl Weighting for MarkedCorners {
    type W = Vec<IntPolynomial>;

    fn zero(&self) -> Self::W {
        Vec::new()
    }
    fn one(&self) -> Self::W {
        vec![IntPolynomial::one()]
    }
    fn is_zero(&self, w: &Self::W) -> bool {
        w.iter().all(|p| p.is_zero())
    }
    fn add(&self, acc: &mut Self::W, w: &Self::W) {
        if acc.len() < w.len() {
            acc.resize(w.len(), IntPolynomial::zero());
        }
        for (a, p) in acc.iter_mut().zip(w) {
            a.add_assign_ref(p);
        }
    }
    fn add_step(&self, acc: &mut Self::W, w: &Self::W, step: Step, corner: bool) {
        let off = usize::from((self.marked)(step));
        if acc.len() < w.len() + off {
            acc.resize(w.len() + off, IntPolynomial::zero());
        }
        for (i, p) in w.iter().enumerate() {
            acc[i + off].add_shifted(p, usize::from(corner));
        }
    }
}

/// Converts a [`MarkedCorners`] weight to a polynomial in the marker.
pub fn marked_to_poly(w: Vec<IntPolynomial>) -> Polynomial<IntPolynomial> {
    Polynomial::new(w)
}

/// Corner variable fixed to the rational `p / d` (`d > 0`). A walk of
/// length `k` carries `weight * d^k`, which is an integer.
#[derive(Debug, Clone)]
pub struct ScaledRational {
    pub p: BigInt,
    pub d: BigInt,
}

impl Weighting for ScaledRational {
    type W = BigInt;

    fn zero(&self) -> BigInt {
        <BigInt as Zero>::zero()
    }
    fn one(&self) -> BigInt {
        <BigInt as One>::one()
    }
    fn is_zero(&self, w: &BigInt) -> bool {
        Ring::is_zero(w)
    }
    fn add(&self, acc: &mut BigInt, w: &BigInt) {
        *acc += w;
    }
    fn add_step(&self, acc: &mut BigInt, w: &BigInt, _step: Step, corner: bool) {
        if Ring::is_zero(w) {
            return;
        }
        *acc += w * if corner { &self.p } else { &self.d };
    }
}

/// Corner variable fixed to a float; for quick scans and plotting only.
#[derive(Debug, Clone, Copy)]
pub struct FloatCorners(pub f64);

impl Weighting for FloatCorners {
    type W = f64;

    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn is_zero(&self, w: &f64) -> bool {
        *w == 0.0
    }
    fn add(&self, acc: &mut f64, w: &f64) {
        *acc += w;
    }
    fn add_step(&self, acc: &mut f64, w: &f64, _step: Step, corner: bool) {
        *acc += if corner { w * self.0 } else { *w };
    }
}

/// Where walks may go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `x >= 0` and `y >= 0`.
    Quadrant,
    /// `y >= 0`.
    UpperHalf,
    /// `x >= 0`.
    RightHalf,
    Plane,
}

impl Region {
    pub fn contains(self, x: i64, y: i64) -> bool {
        match self {
            Region::Quadrant => x >= 0 && y >= 0,
            Region::UpperHalf => y >= 0,
            Region::RightHalf => x >= 0,
            Region::Plane => true,
        }
    }
}

/// Walks from the origin of a fixed length, weighted at a fixed endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkQuery {
    pub region: Region,
    pub length: usize,
    pub target: (i64, i64),
    /// Discard walks that revisit the origin strictly inside the walk.
    pub kill_origin: bool,
}

const LAST_E: usize = 0;
const LAST_N: usize = 1;
const LAST_OTHER: usize = 2;

/// Total weight of the walks of each length `k <= length` that end at the
/// target; entry `k` of the result.
pub fn run<Wt: Weighting>(wt: &Wt, q: &WalkQuery) -> Vec<Wt::W> {
    let len = q.length as i64;
    let (tx, ty) = q.target;
    let rx = (len + tx.abs()) / 2 + 1;
    let ry = (len + ty.abs()) / 2 + 1;
    let (x0, x1) = match q.region {
        Region::Quadrant | Region::RightHalf => (0, rx),
        _ => (-rx, rx),
    };
    let (y0, y1) = match q.region {
        Region::Quadrant | Region::UpperHalf => (0, ry),
        _ => (-ry, ry),
    };
    let width = (y1 - y0 + 1) as usize;
    let rows = (x1 - x0 + 1) as usize;
    let zero_cell = || [wt.zero(), wt.zero(), wt.zero()];
    let mut old: Vec<[Wt::W; 3]> = (0..rows * width).map(|_| zero_cell()).collect();
    let mut new: Vec<[Wt::W; 3]> = (0..rows * width).map(|_| zero_cell()).collect();
    let at = |x: i64, y: i64| -> Option<usize> {
        (x >= x0 && x <= x1 && y >= y0 && y <= y1)
            .then(|| (x - x0) as usize * width + (y - y0) as usize)
    };
    let origin = at(0, 0).expect("origin inside the grid");
    old[origin][LAST_OTHER] = wt.one();

    let read = |cell: &[Wt::W; 3]| -> Wt::W {
        let mut s = cell[0].clone();
        wt.add(&mut s, &cell[1]);
        wt.add(&mut s, &cell[2]);
        s
    };

    let mut out = Vec::with_capacity(q.length + 1);
    out.push(at(tx, ty).map_or_else(|| wt.zero(), |i| read(&old[i])));

    for k in 1..=len {
        let rem = len - k;
        new.par_chunks_mut(width).enumerate().for_each(|(r, row)| {
            let x = x0 + r as i64;
            for (c, cell) in row.iter_mut().enumerate() {
                let y = y0 + c as i64;
                let live = q.region.contains(x, y)
                    && x.abs() + y.abs() <= k
                    && (x - tx).abs() + (y - ty).abs() <= rem
                    && (x + y + k).rem_euclid(2) == 0;
                *cell = zero_cell();
                if !live {
                    continue;
                }
                if let Some(i) = at(x - 1, y) {
                    for l in 0..3 {
                        wt.add_step(&mut cell[LAST_E], &old[i][l], Step::E, false);
                    }
                }
                if let Some(i) = at(x, y - 1) {
                    for l in 0..3 {
                        wt.add_step(&mut cell[LAST_N], &old[i][l], Step::N, false);
                    }
                }
                if let Some(i) = at(x + 1, y) {
                    for l in 0..3 {
                        wt.add_step(&mut cell[LAST_OTHER], &old[i][l], Step::W, l == LAST_N);
                    }
                }
                if let Some(i) = at(x, y + 1) {
                    for l in 0..3 {
                        wt.add_step(&mut cell[LAST_OTHER], &old[i][l], Step::S, l == LAST_E);
                    }
                }
            }
        });
        std::mem::swap(&mut old, &mut new);
        out.push(at(tx, ty).map_or_else(|| wt.zero(), |i| read(&old[i])));
        if q.kill_origin && k < len {
            old[origin] = zero_cell();
        }
    }
    out
}
