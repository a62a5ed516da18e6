//! Arch systems: the two-coloured matchings behind operation words.
//!
//! Position `p` of a word of length `2n` is an endpoint of one arch; arch
//! `k` (0-based here) joins the `k`-th input to the output of the same
//! item. Red arches come from stack 1 and blue ones from stack 2. Arches of
//! one colour never interleave; two arches of opposite colours that do
//! interleave are said to cross.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactnum::IntPolynomial;
pub use crate::machine::Colour;
use crate::machine::{for_each_valid_word, OpWord, Step};
use crate::Error;

/// One arch, with 1-based endpoint positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize, Colour)", into = "(usize, usize, Colour)")]
pub struct Arch {
    pub open: usize,
    pub close: usize,
    pub colour: Colour,
}

impl From<(usize, usize, Colour)> for Arch {
    fn from((open, close, colour): (usize, usize, Colour)) -> Self {
        Arch {
            open,
            close,
            colour,
        }
    }
}

impl From<Arch> for (usize, usize, Colour) {
    fn from(a: Arch) -> Self {
        (a.open, a.close, a.colour)
    }
}

impl Arch {
    /// Opposite colours and interleaved intervals.
    pub fn crosses(&self, other: &Arch) -> bool {
        self.colour != other.colour && interleave(self, other)
    }
}

fn interleave(a: &Arch, b: &Arch) -> bool {
    (a.open < b.open && b.open < a.close && a.close < b.close)
        || (b.open < a.open && a.open < b.close && b.close < a.close)
}

/// A bicoloured arch system, arches sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Arch>", into = "Vec<Arch>")]
pub struct ArchSystem {
    arches: Vec<Arch>,
}

impl TryFrom<Vec<Arch>> for ArchSystem {
    type Error = Error;
    fn try_from(v: Vec<Arch>) -> Result<Self, Error> {
        ArchSystem::new(v)
    }
}

impl From<ArchSystem> for Vec<Arch> {
    fn from(a: ArchSystem) -> Self {
        a.arches
    }
}

impl ArchSystem {
    /// Validates and sorts by left endpoint.
    pub fn new(mut arches: Vec<Arch>) -> Result<Self, Error> {
        let m = 2 * arches.len();
        let mut used = vec![false; m + 1];
        for a in &arches {
            if a.open == 0 || a.close > m || a.open >= a.close {
                return Err(Error::InvalidInput(format!("bad arch {a:?}")));
            }
            for p in [a.open, a.close] {
                if used[p] {
                    return Err(Error::InvalidInput(format!("position {p} used twice")));
                }
                used[p] = true;
            }
        }
        arches.sort_by_key(|a| a.open);
        for (i, a) in arches.iter().enumerate() {
            for b in &arches[i + 1..] {
                if a.colour == b.colour && interleave(a, b) {
                    return Err(Error::InvalidInput(format!(
                        "arches {a:?} and {b:?} of one colour cross"
                    )));
                }
            }
        }
        Ok(ArchSystem { arches })
    }

    pub fn arches(&self) -> &[Arch] {
        &self.arches
    }

    pub fn len(&self) -> usize {
        self.arches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arches.is_empty()
    }

    /// Arch system of a valid word.
    pub fn from_opword(w: &OpWord) -> Result<Self, Error> {
        w.validate()?;
        let mut arches = Vec::with_capacity(w.size());
        let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for (i, &s) in w.steps().iter().enumerate() {
            let k = (s.stack() - 1) as usize;
            if s.is_input() {
                stacks[k].push(arches.len());
                arches.push(Arch {
                    open: i + 1,
                    close: 0,
                    colour: Colour::of_stack(s.stack()),
                });
            } else {
                let a = stacks[k].pop().expect("validated word");
                arches[a].close = i + 1;
            }
        }
        Ok(ArchSystem { arches })
    }

    pub fn to_opword(&self) -> OpWord {
        let mut steps = vec![Step::E; 2 * self.arches.len()];
        for a in &self.arches {
            steps[a.open - 1] = Step::push_on(a.colour.stack());
            steps[a.close - 1] = Step::pop_from(a.colour.stack());
        }
        OpWord::new(steps)
    }

    pub fn crossing_graph(&self) -> CrossingGraph {
        let n = self.arches.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if self.arches[i].crosses(&self.arches[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        CrossingGraph { adj }
    }

    /// Components of the crossing graph, each sorted, listed by least arch.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.crossing_graph().components()
    }

    /// Positions where a left endpoint is followed by a right endpoint of
    /// the other colour.
    pub fn left_right_pairs(&self) -> usize {
        let w = self.to_opword();
        w.count_factor(Step::E, Step::S) + w.count_factor(Step::N, Step::W)
    }

    /// Every component starts with a red arch.
    pub fn is_standard(&self) -> bool {
        self.components()
            .iter()
            .all(|c| self.arches[c[0]].colour == Colour::Red)
    }

    /// Standard and free of left-right pairs.
    pub fn is_canonical(&self) -> bool {
        self.left_right_pairs() == 0 && self.is_standard()
    }

    /// Swaps the colour of every arch in the given components.
    pub fn reflect(&self, arches: impl IntoIterator<Item = usize>) -> ArchSystem {
        let mut out = self.clone();
        for a in arches {
            out.arches[a].colour = out.arches[a].colour.flip();
        }
        out
    }
}

impl fmt::Display for ArchSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arches
            .iter()
            .map(|a| {
                let c = if a.colour == Colour::Red { 'r' } else { 'b' };
                format!("({},{}){}", a.open, a.close, c)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Crossing graph on arches, as neighbour lists by 0-based arch index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGraph {
    pub adj: Vec<Vec<usize>>,
}

impl CrossingGraph {
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// A walk on the square lattice from the origin, in letters E, N, W, S.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeWalk(pub Vec<Step>);

impl LatticeWalk {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn endpoint(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        })
    }

    pub fn is_loop(&self) -> bool {
        self.endpoint() == (0, 0)
    }

    /// Never leaves `x >= 0, y >= 0`.
    pub fn stays_in_quadrant(&self) -> bool {
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.0 {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
            if x < 0 || y < 0 {
                return false;
            }
        }
        true
    }

    pub fn count_factor(&self, a: Step, b: Step) -> usize {
        self.0.windows(2).filter(|w| w[0] == a && w[1] == b).count()
    }

    /// Projections on the vertical and horizontal letters; equal pairs
    /// mean the two walks lie in one shuffle class.
    pub fn projections(&self) -> (Vec<Step>, Vec<Step>) {
        let vertical = self.0.iter().copied().filter(|s| matches!(s, Step::N | Step::S)).collect();
        let horizontal = self.0.iter().copied().filter(|s| matches!(s, Step::E | Step::W)).collect();
        (vertical, horizontal)
    }
}

impl fmt::Display for LatticeWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", OpWord::new(self.0.clone()))
    }
}

impl std::str::FromStr for LatticeWalk {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        s.parse::<OpWord>().map(|w| LatticeWalk(w.0))
    }
}

impl From<OpWord> for LatticeWalk {
    fn from(w: OpWord) -> Self {
        LatticeWalk(w.0)
    }
}

impl From<LatticeWalk> for OpWord {
    fn from(w: LatticeWalk) -> Self {
        OpWord::new(w.0)
    }
}

/// Moves outputs ahead of inputs on the other stack until no `ES` or `NW`
/// factor remains, in one left-to-right pass.
///
/// The output keeps a trailing run of inputs on one stack. An output on the
/// other stack slides in front of that run; anything else ends the run.
pub fn eager_rewrite(w: &OpWord) -> OpWord {
    let mut done: Vec<Step> = Vec::with_capacity(w.len());
    let mut run: Vec<Step> = Vec::new();
    for &s in w.steps() {
        let run_stack = run.first().map(|r| r.stack());
        if s.is_input() {
            if run_stack.is_some_and(|k| k != s.stack()) {
                done.append(&mut run);
            }
            run.push(s);
        } else if run_stack.is_some_and(|k| k != s.stack()) {
            done.push(s);
        } else {
            done.append(&mut run);
            done.push(s);
        }
    }
    done.append(&mut run);
    OpWord::new(done)
}

/// The canonical word producing the same permutation as `w`.
pub fn canonicalize(w: &OpWord) -> Result<OpWord, Error> {
    w.validate()?;
    let eager = ArchSystem::from_opword(&eager_rewrite(w))?;
    let blue_first: Vec<usize> = eager
        .components()
        .into_iter()
        .filter(|c| eager.arches[c[0]].colour == Colour::Blue)
        .flatten()
        .collect();
    Ok(eager.reflect(blue_first).to_opword())
}

/// Splits a valid word where the walk returns to the origin.
pub fn primitive_factorization(w: &OpWord) -> Result<Vec<OpWord>, Error> {
    w.validate()?;
    let mut out = Vec::new();
    let mut start = 0;
    let mut h = [0i64; 2];
    for (i, &s) in w.steps().iter().enumerate() {
        let k = (s.stack() - 1) as usize;
        h[k] += if s.is_input() { 1 } else { -1 };
        if h == [0, 0] {
            out.push(OpWord::new(w.steps()[start..=i].to_vec()));
            start = i + 1;
        }
    }
    Ok(out)
}

/// Reverses every maximal block of N and W letters. This swaps the counts
/// of NW and WN factors and keeps the shuffle class.
pub fn corner_involution(w: &LatticeWalk) -> LatticeWalk {
    let mut out = w.0.clone();
    let mut i = 0;
    while i < out.len() {
        if matches!(out[i], Step::N | Step::W) {
            let mut j = i;
            while j < out.len() && matches!(out[j], Step::N | Step::W) {
                j += 1;
            }
            out[i..j].reverse();
            i = j;
        } else {
            i += 1;
        }
    }
    LatticeWalk(out)
}

/// Brute-force `[v^n] C(b, v)`: connected standard arch systems with `n`
/// arches, `b` marking left-right pairs.
pub fn connected_standard_polynomial(n: usize) -> IntPolynomial {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for_each_valid_word(n, |steps| {
        let x = ArchSystem::from_opword(&OpWord::new(steps.to_vec())).expect("valid word");
        let comps = x.components();
        if comps.len() == 1 && x.arches[0].colour == Colour::Red {
            *counts.entry(x.left_right_pairs()).or_default() += 1;
        }
    });
    let deg = counts.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); deg + 1];
    for (k, c) in counts {
        coeffs[k] = BigInt::from(c);
    }
    IntPolynomial::new(coeffs)
}

/// Number of standard words of length `2n`.
pub fn count_standard_words(n: usize) -> u64 {
    let mut count = 0;
    for_each_valid_word(n, |steps| {
        if ArchSystem::from_opword(&OpWord::new(steps.to_vec()))
            .expect("valid word")
            .is_standard()
        {
            count += 1;
        }
    });
    count
}

/// Number of canonical words of length `2n`.
pub fn count_canonical_words(n: usize) -> u64 {
    let mut count = 0;
    for_each_valid_word(n, |steps| {
        let w = OpWord::new(steps.to_vec());
        if w.outputs_eagerly() && ArchSystem::from_opword(&w).expect("valid word").is_standard() {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{canonical_sequence, execute, valid_words};
    use proptest::prelude::*;

    const FIG5: &str = "ENEEWWWESWNENSSW";

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    fn arch(open: usize, close: usize, colour: Colour) -> Arch {
        Arch {
            open,
            close,
            colour,
        }
    }

    /// Repeated adjacent swaps ES -> SE and NW -> WN until none apply.
    fn eager_by_swaps(w: &OpWord) -> OpWord {
        let mut v = w.steps().to_vec();
        loop {
            let hit = v.windows(2).position(|p| {
                matches!((p[0], p[1]), (Step::E, Step::S) | (Step::N, Step::W))
            });
            match hit {
                Some(i) => v.swap(i, i + 1),
                None => return OpWord::new(v),
            }
        }
    }

    #[test]
    fn single_arch() {
        let x = ArchSystem::from_opword(&w("EW")).unwrap();
        assert_eq!(x.arches(), &[arch(1, 2, Colour::Red)]);
        assert!(x.is_canonical());
        let blue = ArchSystem::from_opword(&w("NS")).unwrap();
        assert!(!blue.is_standard());
    }

    #[test]
    fn figure_word() {
        let x = ArchSystem::from_opword(&w(FIG5)).unwrap();
        assert_eq!(x.len(), 8);
        assert_eq!(x.components().len(), 5);
        assert_eq!(x.left_right_pairs(), 1);
        assert!(!x.is_canonical());
        let c = canonicalize(&w(FIG5)).unwrap();
        let cx = ArchSystem::from_opword(&c).unwrap();
        assert!(cx.is_canonical());
        assert_eq!(execute(&c).unwrap().compact(), "43125867");
    }

    #[test]
    fn small_component_cases() {
        let nested = ArchSystem::new(vec![arch(1, 4, Colour::Red), arch(2, 3, Colour::Red)]).unwrap();
        assert_eq!(nested.components().len(), 2);
        let crossing = ArchSystem::new(vec![arch(1, 3, Colour::Red), arch(2, 4, Colour::Blue)]).unwrap();
        assert_eq!(crossing.components().len(), 1);
        assert!(ArchSystem::new(vec![arch(1, 3, Colour::Red), arch(2, 4, Colour::Red)]).is_err());
    }

    #[test]
    fn left_right_pair_scan() {
        let count = |s: &str| ArchSystem::from_opword(&w(s)).unwrap().left_right_pairs();
        assert_eq!(count("ENSW"), 0);
        assert_eq!(count("ENWS"), 1);
    }

    #[test]
    fn json_triples() {
        let x = ArchSystem::from_opword(&w("ENWS")).unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!([[1, 3, "red"], [2, 4, "blue"]]));
        assert_eq!(serde_json::from_value::<ArchSystem>(v).unwrap(), x);
    }

    #[test]
    fn factorization() {
        assert_eq!(primitive_factorization(&w("EWEW")).unwrap(), vec![w("EW"), w("EW")]);
        assert_eq!(primitive_factorization(&w("ENWS")).unwrap(), vec![w("ENWS")]);
        assert!(primitive_factorization(&w("")).unwrap().is_empty());
    }

    #[test]
    fn involution_example() {
        let walk: LatticeWalk = "ENWWSSNWES".parse().unwrap();
        assert_eq!(corner_involution(&walk).to_string(), "EWWNSSWNES");
        let plain: LatticeWalk = "EESSE".parse().unwrap();
        assert_eq!(corner_involution(&plain), plain);
    }

    #[test]
    fn canonical_words_are_fixed_points() {
        for word in valid_words(4) {
            let x = ArchSystem::from_opword(&word).unwrap();
            if x.is_canonical() {
                assert_eq!(canonicalize(&word).unwrap(), word);
            }
        }
    }

    #[test]
    fn exhaustive_agreement_up_to_length_ten() {
        for n in 0..=5 {
            for word in valid_words(n) {
                let c = canonicalize(&word).unwrap();
                let p = execute(&word).unwrap();
                assert_eq!(c, canonical_sequence(&p).unwrap(), "word {word}");
                assert_eq!(eager_rewrite(&word), eager_by_swaps(&word), "word {word}");
            }
        }
    }

    #[test]
    fn crossing_graphs_are_properly_coloured_and_connected_means_primitive() {
        for n in 0..=6 {
            for word in valid_words(n) {
                let x = ArchSystem::from_opword(&word).unwrap();
                let g = x.crossing_graph();
                for (i, nb) in g.adj.iter().enumerate() {
                    for &j in nb {
                        assert_ne!(x.arches()[i].colour, x.arches()[j].colour);
                    }
                }
                if n > 0 && x.components().len() == 1 {
                    assert_eq!(primitive_factorization(&word).unwrap().len(), 1);
                }
            }
        }
    }

    #[test]
    fn connected_standard_small_counts() {
        assert_eq!(connected_standard_polynomial(1), IntPolynomial::from_i64s(&[1]));
        assert_eq!(connected_standard_polynomial(2), IntPolynomial::from_i64s(&[0, 1]));
        assert_eq!(connected_standard_polynomial(3), IntPolynomial::from_i64s(&[0, 2, 1]));
    }

    fn random_valid_word() -> impl Strategy<Value = OpWord> {
        // Build a word from a shuffle of two Dyck words of random sizes.
        (0usize..=10, any::<u64>()).prop_map(|(n, seed)| {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let mut steps = Vec::new();
            let (mut ins, mut open) = (0, [0usize; 2]);
            while steps.len() < 2 * n {
                let candidates: Vec<Step> = Step::ALL
                    .into_iter()
                    .filter(|s| {
                        let k = (s.stack() - 1) as usize;
                        if s.is_input() {
                            ins < n
                        } else {
                            open[k] > 0
                        }
                    })
                    .collect();
                let s = candidates[(next() % candidates.len() as u64) as usize];
                let k = (s.stack() - 1) as usize;
                if s.is_input() {
                    ins += 1;
                    open[k] += 1;
                } else {
                    open[k] -= 1;
                }
                steps.push(s);
            }
            OpWord::new(steps)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn arch_round_trip(word in random_valid_word()) {
            let x = ArchSystem::from_opword(&word).unwrap();
            prop_assert_eq!(x.to_opword(), word);
        }

        #[test]
        fn canonicalize_preserves_output(word in random_valid_word()) {
            let c = canonicalize(&word).unwrap();
            prop_assert!(ArchSystem::from_opword(&c).unwrap().is_canonical());
            prop_assert_eq!(execute(&c).unwrap(), execute(&word).unwrap());
            prop_assert_eq!(eager_rewrite(&word), eager_by_swaps(&word));
        }

        #[test]
        fn involution_properties(letters in prop::collection::vec(0usize..4, 0..20)) {
            let walk = LatticeWalk(letters.iter().map(|&k| Step::ALL[k]).collect());
            let image = corner_involution(&walk);
            prop_assert_eq!(corner_involution(&image), walk.clone());
            prop_assert_eq!(image.projections(), walk.projections());
            prop_assert_eq!(image.count_factor(Step::N, Step::W), walk.count_factor(Step::W, Step::N));
            prop_assert_eq!(image.count_factor(Step::W, Step::N), walk.count_factor(Step::N, Step::W));
            prop_assert_eq!(image.count_factor(Step::E, Step::S), walk.count_factor(Step::E, Step::S));
            prop_assert_eq!(image.count_factor(Step::S, Step::E), walk.count_factor(Step::S, Step::E));
        }
    }
}
