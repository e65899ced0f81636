use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Letter, PrefixStream, Word, WordError};

const NONE: u32 = u32::MAX;

/// Suffix automaton (DAWG) of a finite word.
///
/// Every path from the root spells a distinct factor, so membership is
/// `O(|v|)` and distinct-factor counts come from the state lengths.
#[derive(Debug, Clone)]
pub struct SuffixAutomaton {
    alphabet_size: usize,
    len: Vec<u32>,
    link: Vec<u32>,
    next: Vec<u32>,
    text_len: usize,
}

impl SuffixAutomaton {
    pub fn new(word: &[Letter], alphabet_size: usize) -> Self {
        let cap = 2 * word.len().max(1);
        let mut sa = SuffixAutomaton {
            alphabet_size,
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap * alphabet_size),
            text_len: word.len(),
        };
        sa.add_state(0, NONE);
        let mut last = 0u32;
        for &c in word {
            last = sa.push(last, c as usize);
        }
        sa
    }

    fn add_state(&mut self, len: u32, link: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.next
            .extend(core::iter::repeat_n(NONE, self.alphabet_size));
        (self.len.len() - 1) as u32
    }

    fn edge(&self, state: u32, c: usize) -> u32 {
        self.next[state as usize * self.alphabet_size + c]
    }

    fn set_edge(&mut self, state: u32, c: usize, to: u32) {
        self.next[state as usize * self.alphabet_size + c] = to;
    }

    fn push(&mut self, last: u32, c: usize) -> u32 {
        let cur = self.add_state(self.len[last as usize] + 1, NONE);
        let mut p = last;
        while p != NONE && self.edge(p, c) == NONE {
            self.set_edge(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
            return cur;
        }
        let q = self.edge(p, c);
        if self.len[p as usize] + 1 == self.len[q as usize] {
            self.link[cur as usize] = q;
            return cur;
        }
        let clone = self.add_state(self.len[p as usize] + 1, self.link[q as usize]);
        let a = self.alphabet_size;
        let (src, dst) = (q as usize * a, clone as usize * a);
        self.next.copy_within(src..src + a, dst);
        while p != NONE && self.edge(p, c) == q {
            self.set_edge(p, c, clone);
            p = self.link[p as usize];
        }
        self.link[q as usize] = clone;
        self.link[cur as usize] = clone;
        cur
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Length of the indexed word.
    pub fn text_len(&self) -> usize {
        self.text_len
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    pub fn root(&self) -> u32 {
        0
    }

    /// Follows one letter; `None` if the extension is not a factor.
    pub fn step(&self, state: u32, letter: Letter) -> Option<u32> {
        if letter as usize >= self.alphabet_size {
            return None;
        }
        match self.edge(state, letter as usize) {
            NONE => None,
            s => Some(s),
        }
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        word.iter()
            .try_fold(self.root(), |s, &l| self.step(s, l))
            .is_some()
    }

    /// Number of distinct factors of length exactly `n`.
    pub fn count_of_length(&self, n: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        let n = n as u32;
        (1..self.len.len())
            .filter(|&v| self.len[self.link[v] as usize] < n && n <= self.len[v])
            .count() as u64
    }

    /// Number of distinct factors of length at most `n` (ε included).
    pub fn count_up_to(&self, n: usize) -> u64 {
        let n = n as u32;
        1 + (1..self.len.len())
            .map(|v| {
                let lo = self.len[self.link[v] as usize];
                let hi = self.len[v].min(n);
                hi.saturating_sub(lo) as u64
            })
            .sum::<u64>()
    }

    /// Every distinct factor of length `1..=max_len`, in DFS order.
    pub fn factors_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut path = Word::new();
        self.collect(self.root(), max_len, &mut path, &mut out);
        out
    }

    fn collect(&self, state: u32, budget: usize, path: &mut Word, out: &mut Vec<Word>) {
        if budget == 0 {
            return;
        }
        for c in 0..self.alphabet_size {
            let to = self.edge(state, c);
            if to != NONE {
                path.push(c as Letter);
                out.push(path.clone());
                self.collect(to, budget - 1, path, out);
                path.pop();
            }
        }
    }
}

/// Distinct factors of length `≤ max_len` seen in a prefix of a stream.
///
/// Absence from the set means "not seen within `horizon` letters", nothing
/// stronger. `stabilized` records whether doubling the horizon added nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub max_len: usize,
    pub horizon: usize,
    pub factors: BTreeSet<Word>,
    pub stabilized: bool,
}

impl FactorSet {
    pub fn contains(&self, word: &[Letter]) -> bool {
        self.factors.contains(word)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn count_of_length(&self, n: usize) -> usize {
        self.factors.iter().filter(|f| f.len() == n).count()
    }
}

fn factor_set_of(prefix: &[Letter], alphabet_size: usize, max_len: usize) -> BTreeSet<Word> {
    let sa = SuffixAutomaton::new(prefix, alphabet_size);
    let mut set: BTreeSet<Word> = sa.factors_up_to(max_len).into_iter().collect();
    set.insert(Word::new());
    set
}

/// All factors of length `≤ max_len` in the first `horizon` letters,
/// with the stabilization flag computed against `2 * horizon`.
pub fn factors(
    stream: &mut PrefixStream,
    max_len: usize,
    horizon: usize,
) -> Result<FactorSet, WordError> {
    let d = stream.alphabet().len();
    let doubled = factor_set_of(stream.prefix(2 * horizon)?, d, max_len);
    let factors = factor_set_of(stream.prefix(horizon)?, d, max_len);
    Ok(FactorSet {
        max_len,
        horizon,
        stabilized: doubled == factors,
        factors,
    })
}

/// Number of distinct length-`n` factors in the first `horizon` letters.
pub fn subword_complexity(
    stream: &mut PrefixStream,
    n: usize,
    horizon: usize,
) -> Result<u64, WordError> {
    let d = stream.alphabet().len();
    Ok(SuffixAutomaton::new(stream.prefix(horizon)?, d).count_of_length(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Morphism};
    use alloc::vec;

    fn naive(word: &[Letter], max_len: usize) -> BTreeSet<Word> {
        let mut set = BTreeSet::new();
        for i in 0..=word.len() {
            for l in 0..=max_len.min(word.len() - i) {
                set.insert(word[i..i + l].to_vec());
            }
        }
        set
    }

    fn tm() -> PrefixStream {
        PrefixStream::morphic(Morphism::from_strs("xy", &["xy", "yx"]).unwrap(), 1).unwrap()
    }

    #[test]
    fn automaton_matches_naive_scan() {
        let mut state = 12345u64;
        for len in 0..60 {
            let word: Word = (0..len)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 3) as Letter
                })
                .collect();
            let expected = naive(&word, 7);
            assert_eq!(factor_set_of(&word, 3, 7), expected);
            let sa = SuffixAutomaton::new(&word, 3);
            for n in 0..=8 {
                let count = naive(&word, n).iter().filter(|f| f.len() == n).count() as u64;
                assert_eq!(sa.count_of_length(n), count);
                assert_eq!(sa.count_up_to(n), naive(&word, n).len() as u64);
            }
        }
    }

    #[test]
    fn thue_morse_small_factors() {
        let mut s = tm();
        let f = factors(&mut s, 1, 16).unwrap();
        assert_eq!(f.count_of_length(1), 2);
        assert!(f.contains(&[]));
        let f = factors(&mut s, 3, 10_000).unwrap();
        assert!(!f.contains(&[0, 0, 0]) && !f.contains(&[1, 1, 1]));
        assert!(f.stabilized);
    }

    #[test]
    fn periodic_factors() {
        let xy = Alphabet::from_chars("xy").unwrap();
        let mut s = PrefixStream::periodic(xy, alloc::vec![0, 1]).unwrap();
        let f = factors(&mut s, 2, 50).unwrap();
        let two: Vec<&Word> = f.factors.iter().filter(|w| w.len() == 2).collect();
        assert_eq!(two, [&vec![0, 1], &vec![1, 0]]);
        assert_eq!(subword_complexity(&mut s, 5, 100).unwrap(), 2);
    }

    #[test]
    fn thue_morse_complexity() {
        let mut s = tm();
        assert_eq!(subword_complexity(&mut s, 0, 10_000).unwrap(), 1);
        assert_eq!(subword_complexity(&mut s, 1, 10_000).unwrap(), 2);
        assert_eq!(subword_complexity(&mut s, 2, 10_000).unwrap(), 4);
        // known values of the Thue-Morse complexity function
        let known = [1u64, 2, 4, 6, 10, 12, 16, 20, 22, 24, 28, 32];
        for (n, &p) in known.iter().enumerate() {
            assert_eq!(subword_complexity(&mut s, n, 10_000).unwrap(), p, "n = {n}");
        }
    }
}
