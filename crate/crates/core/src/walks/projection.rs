//! Walks with a prescribed vertical projection, shuffle classes, and
//! walks with a prescribed endpoint.

use std::collections::HashMap;

use super::dp::{self, Corners, Region, WalkQuery};
use crate::exactnum::{IntPolynomial, Ring, TruncatedSeries, Var};
use crate::machine::Step;
use crate::Error;

/// Horizontal confinement for [`fixed_projection_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confinement {
    /// `x >= 0` and `y >= 0`; the vertical word must be a Dyck path.
    Quadrant,
    /// `x >= 0`.
    RightHalf,
    Unconfined,
}

const LAST_E: usize = 0;
const LAST_N: usize = 1;
const LAST_OTHER: usize = 2;

fn kind(step: Step) -> usize {
    match step {
        Step::E => LAST_E,
        Step::N => LAST_N,
        _ => LAST_OTHER,
    }
}

fn corner(last: usize, step: Step) -> bool {
    (last == LAST_N && step == Step::W) || (last == LAST_E && step == Step::S)
}

/// Loops whose projection on `{N, S}` is `v`, counted by corners, with `u`
/// marking the total length, to order `order`.
pub fn fixed_projection_series(
    v: &[Step],
    confinement: Confinement,
    order: usize,
) -> Result<TruncatedSeries<IntPolynomial>, Error> {
    let mut h = 0i64;
    let mut dyck = true;
    for &s in v {
        match s {
            Step::N => h += 1,
            Step::S => h -= 1,
            _ => return Err(Error::InvalidInput("vertical word must use N and S only".into())),
        }
        dyck &= h >= 0;
    }
    if h != 0 {
        return Err(Error::InvalidInput("vertical word is not balanced".into()));
    }
    if confinement == Confinement::Quadrant && !dyck {
        return Err(Error::InvalidInput("vertical word leaves the quarter plane".into()));
    }
    let allow_negative = confinement == Confinement::Unconfined;

    // state: (x, index into v, last kind) -> weight
    let mut layer: HashMap<(i64, usize, usize), IntPolynomial> = HashMap::new();
    layer.insert((0, 0, LAST_OTHER), IntPolynomial::one());
    let mut coeffs = Vec::with_capacity(order + 1);
    for len in 0..=order {
        let mut total = IntPolynomial::zero();
        for (&(x, i, _), w) in &layer {
            if x == 0 && i == v.len() {
                total.add_assign_ref(w);
            }
        }
        coeffs.push(total);
        if len == order {
            break;
        }
        let rem = (order - len - 1) as i64;
        let mut next: HashMap<(i64, usize, usize), IntPolynomial> = HashMap::new();
        for (&(x, i, last), w) in &layer {
            let mut moves = vec![(Step::E, x + 1, i), (Step::W, x - 1, i)];
            if i < v.len() {
                moves.push((v[i], x, i + 1));
            }
            for (step, nx, ni) in moves {
                if !allow_negative && nx < 0 {
                    continue;
                }
                if nx.abs() + (v.len() - ni) as i64 > rem {
                    continue;
                }
                next.entry((nx, ni, kind(step)))
                    .or_insert_with(IntPolynomial::zero)
                    .add_shifted(w, usize::from(corner(last, step)));
            }
        }
        layer = next;
    }
    Ok(TruncatedSeries::new(Var::U, order, coeffs))
}

/// Corner polynomial of the shuffle class of a horizontal word and a
/// vertical word: all interleavings, counted by `NW` and `ES` factors.
pub fn shuffle_class_polynomial(horizontal: &[Step], vertical: &[Step]) -> Result<IntPolynomial, Error> {
    if horizontal.iter().any(|s| !matches!(s, Step::E | Step::W)) {
        return Err(Error::InvalidInput("horizontal word must use E and W only".into()));
    }
    if vertical.iter().any(|s| !matches!(s, Step::N | Step::S)) {
        return Err(Error::InvalidInput("vertical word must use N and S only".into()));
    }
    let (p, q) = (horizontal.len(), vertical.len());
    // table[i][j][last]: interleavings of the first i and j letters
    let mut table = vec![vec![[IntPolynomial::zero(), IntPolynomial::zero(), IntPolynomial::zero()]; q + 1]; p + 1];
    table[0][0][LAST_OTHER] = IntPolynomial::one();
    for i in 0..=p {
        for j in 0..=q {
            let cell = table[i][j].clone();
            for (last, w) in cell.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                if i < p {
                    let s = horizontal[i];
                    table[i + 1][j][kind(s)].add_shifted(w, usize::from(corner(last, s)));
                }
                if j < q {
                    let s = vertical[j];
                    table[i][j + 1][kind(s)].add_shifted(w, usize::from(corner(last, s)));
                }
            }
        }
    }
    let mut out = IntPolynomial::zero();
    for w in &table[p][q] {
        out.add_assign_ref(w);
    }
    Ok(out)
}

/// Corner polynomial of walks of a given length and endpoint in a region.
pub fn endpoint_polynomial(region: Region, length: usize, target: (i64, i64)) -> IntPolynomial {
    let mut layers = dp::run(
        &Corners,
        &WalkQuery {
            region,
            length,
            target,
            kill_origin: false,
        },
    );
    layers.pop().expect("at least one layer")
}
