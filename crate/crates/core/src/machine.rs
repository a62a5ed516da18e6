//! The two-parallel-stacks machine.
//!
//! Items `1..=n` arrive in order. Each may be pushed on either stack and
//! popped to the output later. An operation word is written in the walk
//! alphabet: `E` pushes on stack 1, `N` on stack 2, `W` pops stack 1 and `S`
//! pops stack 2. A word is valid exactly when its stack-1 letters and its
//! stack-2 letters each form a Dyck word.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Default size limit for exhaustive scans over permutations.
pub const DEFAULT_BRUTE_BOUND: usize = 10;

/// One operation, named by its walk letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    E,
    N,
    W,
    S,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::E, Step::N, Step::W, Step::S];

    /// 1 for E/W, 2 for N/S.
    pub fn stack(self) -> u8 {
        match self {
            Step::E | Step::W => 1,
            Step::N | Step::S => 2,
        }
    }

    pub fn is_input(self) -> bool {
        matches!(self, Step::E | Step::N)
    }

    pub fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
            Step::W => 'W',
            Step::S => 'S',
        }
    }

    /// Stack-operation name: `I1`, `I2`, `O1` or `O2`.
    pub fn op_name(self) -> &'static str {
        match self {
            Step::E => "I1",
            Step::N => "I2",
            Step::W => "O1",
            Step::S => "O2",
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            'W' => Some(Step::W),
            'S' => Some(Step::S),
            _ => None,
        }
    }

    /// Lattice displacement.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::E => (1, 0),
            Step::N => (0, 1),
            Step::W => (-1, 0),
            Step::S => (0, -1),
        }
    }

    /// The same operation on the other stack.
    pub fn swap_stack(self) -> Step {
        match self {
            Step::E => Step::N,
            Step::N => Step::E,
            Step::W => Step::S,
            Step::S => Step::W,
        }
    }

    pub fn push_on(stack: u8) -> Step {
        if stack == 1 {
            Step::E
        } else {
            Step::N
        }
    }

    pub fn pop_from(stack: u8) -> Step {
        if stack == 1 {
            Step::W
        } else {
            Step::S
        }
    }
}

/// A word of stack operations. Construction does not validate; see
/// [`OpWord::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OpWord(pub Vec<Step>);

impl OpWord {
    pub fn new(steps: Vec<Step>) -> Self {
        OpWord(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of items moved, half the length.
    pub fn size(&self) -> usize {
        self.0.len() / 2
    }

    /// Checks the Dyck-shuffle condition, reporting the first bad position
    /// (0-based; the word length if a stack is left nonempty).
    pub fn validate(&self) -> Result<(), Error> {
        let mut h = [0usize; 2];
        for (pos, &s) in self.0.iter().enumerate() {
            let k = (s.stack() - 1) as usize;
            if s.is_input() {
                h[k] += 1;
            } else if h[k] == 0 {
                return Err(Error::InvalidWord {
                    position: pos,
                    reason: format!("{} pops empty stack {}", s.letter(), k + 1),
                });
            } else {
                h[k] -= 1;
            }
        }
        if h != [0, 0] {
            return Err(Error::InvalidWord {
                position: self.0.len(),
                reason: format!("stacks hold {} and {} items at the end", h[0], h[1]),
            });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Counts occurrences of the two-letter factor `ab`.
    pub fn count_factor(&self, a: Step, b: Step) -> usize {
        self.0.windows(2).filter(|w| w[0] == a && w[1] == b).count()
    }

    /// `true` if no output is delayed behind an input on the other stack,
    /// i.e. there is no `ES` or `NW` factor.
    pub fn outputs_eagerly(&self) -> bool {
        self.count_factor(Step::E, Step::S) == 0 && self.count_factor(Step::N, Step::W) == 0
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for OpWord {
    type Err = Error;

    /// Accepts walk letters (`"ENWS"`, whitespace ignored) or operation
    /// names separated by whitespace (`"I1 I2 O1 O2"`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.contains('I') || s.contains('O') {
            return s
                .split_whitespace()
                .map(|tok| match tok {
                    "I1" => Ok(Step::E),
                    "I2" => Ok(Step::N),
                    "O1" => Ok(Step::W),
                    "O2" => Ok(Step::S),
                    _ => Err(Error::Parse(format!("unknown operation {tok:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(OpWord);
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Step::from_letter(c).ok_or_else(|| Error::Parse(format!("unknown step {c:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(OpWord)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self, Error> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{entries:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The pattern formed by the entries at the given increasing positions.
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        let vals: Vec<usize> = positions.iter().map(|&p| self.0[p]).collect();
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        Permutation(
            vals.iter()
                .map(|v| sorted.binary_search(v).unwrap_or(0) + 1)
                .collect(),
        )
    }

    /// Digits run together, e.g. `43125867`; only meaningful for `n <= 9`.
    pub fn compact(&self) -> String {
        self.0.iter().map(|v| v.to_string()).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space-separated integers, or a bare digit string when `n <= 9`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let entries: Result<Vec<usize>, _> = if s.contains(char::is_whitespace) || s.contains(',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("{c:?} is not a digit")))
                })
                .collect()
        };
        Permutation::new(entries?)
    }
}

/// Stack colour of an item or arch. Red is stack 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn stack(self) -> u8 {
        match self {
            Colour::Red => 1,
            Colour::Blue => 2,
        }
    }

    pub fn of_stack(stack: u8) -> Colour {
        if stack == 1 {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    pub fn flip(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

/// Runs the machine on `w` with inputs `1..=n`.
pub fn execute(w: &OpWord) -> Result<Permutation, Error> {
    let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut next = 1;
    let mut out = Vec::with_capacity(w.size());
    for (pos, &s) in w.steps().iter().enumerate() {
        let k = (s.stack() - 1) as usize;
        if s.is_input() {
            stacks[k].push(next);
            next += 1;
        } else {
            let v = stacks[k].pop().ok_or_else(|| Error::InvalidWord {
                position: pos,
                reason: format!("{} pops empty stack {}", s.letter(), k + 1),
            })?;
            out.push(v);
        }
    }
    if !stacks[0].is_empty() || !stacks[1].is_empty() {
        return Err(Error::InvalidWord {
            position: w.len(),
            reason: "items left on the stacks".into(),
        });
    }
    Permutation::new(out)
}

/// Conflict graph on the items of a permutation: `{i, j}` with `i < j` is
/// an edge when some `k > j` precedes `i`, which precedes `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenItaiGraph {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl EvenItaiGraph {
    /// Neighbour lists indexed by item (index 0 unused).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }
}

/// Builds the graph in `O(n^2)` from prefix maxima: a pair at positions
/// `p < q` with `π_p < π_q` is an edge iff something before `p` exceeds `π_q`.
pub fn even_itai_graph(p: &Permutation) -> EvenItaiGraph {
    let e = p.entries();
    let mut edges = BTreeSet::new();
    let mut prefix_max = 0;
    for pi in 0..e.len() {
        for &vj in &e[pi + 1..] {
            if e[pi] < vj && prefix_max > vj {
                edges.insert((e[pi], vj));
            }
        }
        prefix_max = prefix_max.max(e[pi]);
    }
    EvenItaiGraph { n: e.len(), edges }
}

/// Two-colours the graph of `p` if possible, colouring the smallest item
/// of each component red. Entry `v - 1` is the colour of item `v`.
pub fn even_itai_colouring(p: &Permutation) -> Option<Vec<Colour>> {
    let g = even_itai_graph(p);
    let adj = g.adjacency();
    let mut colour: Vec<Option<Colour>> = vec![None; g.n + 1];
    let mut queue = VecDeque::new();
    for root in 1..=g.n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(Colour::Red);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let c = colour[v]?;
            for &w in &adj[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(c.flip());
                        queue.push_back(w);
                    }
                    Some(d) if d == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    colour.into_iter().skip(1).collect()
}

pub fn is_achievable(p: &Permutation) -> bool {
    even_itai_colouring(p).is_some()
}

/// The unique canonical word producing `p`: outputs happen as soon as the
/// wanted item is on top of a stack, and each input goes to the stack of
/// its colour.
pub fn canonical_sequence(p: &Permutation) -> Result<OpWord, Error> {
    let colour = even_itai_colouring(p).ok_or(Error::NotAchievable)?;
    let n = p.len();
    let target = p.entries();
    let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut steps = Vec::with_capacity(2 * n);
    let mut next = 1;
    let mut done = 0;
    while done < n {
        let want = target[done];
        if let Some(k) = (0..2).find(|&k| stacks[k].last() == Some(&want)) {
            stacks[k].pop();
            steps.push(Step::pop_from(k as u8 + 1));
            done += 1;
        } else if next <= n {
            let stack = colour[next - 1].stack();
            stacks[(stack - 1) as usize].push(next);
            steps.push(Step::push_on(stack));
            next += 1;
        } else {
            return Err(Error::Contract(format!(
                "item {want} is buried; the colouring does not produce {p}"
            )));
        }
    }
    Ok(OpWord(steps))
}

/// Heap-free lexicographic successor; `false` once `v` is the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap_or(i);
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` whose first entry is `first`.
fn for_each_with_first(n: usize, first: usize, mut f: impl FnMut(&Permutation)) {
    let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
    loop {
        let mut entries = Vec::with_capacity(n);
        entries.push(first);
        entries.extend_from_slice(&rest);
        f(&Permutation(entries));
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// Counts achievable permutations of size `n` by testing all `n!`.
/// The scan is split by first entry across the rayon pool.
pub fn enumerate_achievable(n: usize, bound: usize) -> Result<u64, Error> {
    if n > bound {
        return Err(Error::OverBound { n, bound });
    }
    if n == 0 {
        return Ok(1);
    }
    Ok((1..=n)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_with_first(n, first, |p| {
                if is_achievable(p) {
                    count += 1;
                }
            });
            count
        })
        .sum())
}

/// Lists achievable permutations of size `n` in lexicographic order.
pub fn achievable_permutations(n: usize, bound: usize) -> Result<Vec<Permutation>, Error> {
    if n > bound {
        return Err(Error::OverBound { n, bound });
    }
    if n == 0 {
        return Ok(vec![Permutation(Vec::new())]);
    }
    let chunks: Vec<Vec<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            for_each_with_first(n, first, |p| {
                if is_achievable(p) {
                    found.push(p.clone());
                }
            });
            found
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Calls `f` on every valid operation word of length `2n`, in
/// lexicographic order of the letters E < N < W < S.
pub fn for_each_valid_word(n: usize, mut f: impl FnMut(&[Step])) {
    fn go(
        buf: &mut Vec<Step>,
        n: usize,
        ins: usize,
        open: [usize; 2],
        f: &mut dyn FnMut(&[Step]),
    ) {
        if buf.len() == 2 * n {
            f(buf);
            return;
        }
        for s in Step::ALL {
            let k = (s.stack() - 1) as usize;
            let ok = if s.is_input() { ins < n } else { open[k] > 0 };
            if !ok {
                continue;
            }
            let mut open2 = open;
            if s.is_input() {
                open2[k] += 1;
            } else {
                open2[k] -= 1;
            }
            buf.push(s);
            go(buf, n, ins + usize::from(s.is_input()), open2, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(2 * n);
    go(&mut buf, n, 0, [0, 0], &mut f);
}

/// All valid words of length `2n`; there are `C_n C_{n+1}` of them.
pub fn valid_words(n: usize) -> Vec<OpWord> {
    let mut out = Vec::new();
    for_each_valid_word(n, |w| out.push(OpWord(w.to_vec())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Direct cubic scan over triples.
    fn even_itai_naive(p: &Permutation) -> BTreeSet<(usize, usize)> {
        let e = p.entries();
        let n = e.len();
        let mut edges = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (k, i, j) = (e[a], e[b], e[c]);
                    if i < j && j < k {
                        edges.insert((i, j));
                    }
                }
            }
        }
        edges
    }

    #[test]
    fn execute_examples() {
        assert_eq!(execute(&w("EW")).unwrap(), p("1"));
        assert_eq!(execute(&w("ENEEWWWESWNENSSW")).unwrap(), p("43125867"));
        assert_eq!(execute(&w("ENEWWS")).unwrap(), p("312"));
        assert_eq!(execute(&w("I1 I2 O2 O1")).unwrap(), p("21"));
    }

    #[test]
    fn execute_reports_position() {
        assert_eq!(
            execute(&w("EWS")).unwrap_err(),
            Error::InvalidWord {
                position: 2,
                reason: "S pops empty stack 2".into()
            }
        );
        assert!(matches!(
            execute(&w("EN")),
            Err(Error::InvalidWord { position: 2, .. })
        ));
    }

    #[test]
    fn permutation_parsing() {
        assert_eq!(p("3 1 2"), p("312"));
        assert_eq!(p("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
    }

    #[test]
    fn even_itai_examples() {
        let g = even_itai_graph(&p("312"));
        assert_eq!(g.edges, BTreeSet::from([(1, 2)]));
        assert!(even_itai_graph(&Permutation::identity(6)).edges.is_empty());
        let q = p("2413");
        assert_eq!(even_itai_graph(&q).edges, even_itai_naive(&q));
    }

    #[test]
    fn achievability_at_small_sizes() {
        assert!(is_achievable(&p("312")));
        assert_eq!(enumerate_achievable(0, 10).unwrap(), 1);
        assert_eq!(enumerate_achievable(1, 10).unwrap(), 1);
        assert_eq!(enumerate_achievable(3, 10).unwrap(), 6);
        let bad: Vec<Permutation> = (1..=4)
            .flat_map(|f| {
                let mut v = Vec::new();
                for_each_with_first(4, f, |q| v.push(q.clone()));
                v
            })
            .filter(|q| !is_achievable(q))
            .collect();
        assert_eq!(bad, vec![p("4123")]);
        assert!(matches!(enumerate_achievable(11, 10), Err(Error::OverBound { .. })));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_sequence(&p("12")).unwrap(), w("EWEW"));
        assert_eq!(canonical_sequence(&p("312")).unwrap(), w("ENEWWS"));
        let c = canonical_sequence(&p("43125867")).unwrap();
        assert_eq!(execute(&c).unwrap(), p("43125867"));
        assert!(c.outputs_eagerly());
        assert_eq!(canonical_sequence(&p("4123")), Err(Error::NotAchievable));
    }

    #[test]
    fn valid_word_counts_are_catalan_products() {
        let counts: Vec<usize> = (0..6).map(|n| valid_words(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 10, 70, 588, 5544]);
    }

    #[test]
    fn supermultiplicative_counts() {
        let s: Vec<u64> = (0..=8).map(|n| enumerate_achievable(n, 10).unwrap()).collect();
        for m in 0..=8 {
            for n in 0..=8 - m {
                assert!(s[m + n] >= s[m] * s[n], "s_{} < s_{} s_{}", m + n, m, n);
            }
        }
    }

    fn any_permutation(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(Permutation)
    }

    proptest! {
        #[test]
        fn fast_graph_matches_cubic_scan(q in any_permutation(12)) {
            prop_assert_eq!(even_itai_graph(&q).edges, even_itai_naive(&q));
        }

        #[test]
        fn canonical_words_reproduce_their_permutation(q in any_permutation(12)) {
            if let Ok(c) = canonical_sequence(&q) {
                prop_assert!(c.is_valid());
                prop_assert!(c.outputs_eagerly());
                prop_assert_eq!(execute(&c).unwrap(), q);
            } else {
                prop_assert!(!is_achievable(&q));
            }
        }

        #[test]
        fn patterns_of_achievable_permutations_are_achievable(
            q in any_permutation(8),
            mask in prop::collection::vec(any::<bool>(), 8),
        ) {
            prop_assume!(is_achievable(&q));
            let positions: Vec<usize> = (0..q.len()).filter(|&i| mask[i]).collect();
            prop_assert!(is_achievable(&q.pattern_at(&positions)));
        }

        #[test]
        fn execute_yields_a_permutation_of_the_right_size(
            ops in prop::collection::vec(0u8..4, 0..24)
        ) {
            let word = OpWord(ops.iter().map(|&k| Step::ALL[k as usize]).collect());
            if word.is_valid() {
                prop_assert_eq!(execute(&word).unwrap().len() * 2, word.len());
            } else {
                prop_assert!(execute(&word).is_err());
            }
        }
    }
}
