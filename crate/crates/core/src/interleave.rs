//! The universal difference sequence, primed copies, and the interleaved
//! word `w̃ = w[1,n₁] w'[n₁+1,n₂] w[n₂+1,n₃] …` built from them.
//!
//! Word positions in this module's public functions follow the 1-based
//! slicing convention `v[i, j] = a_i ⋯ a_j`; storage is 0-based.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::grading::{self, Certificate, CertifyOptions, GradingError, ScanReport, WeightVector};
use crate::monalg::{self, AlgebraView, FreenessReport, MonalgError, NcPolynomial};
use crate::words::{Alphabet, Letter, Morphism, PrefixStream, Word, WordError};

/// How the differences `n_{i+1} - n_i` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceOrder {
    /// Concatenation of all finite positive-integer sequences, sorted by
    /// (sum, length, lexicographic).
    Canonical,
    /// Every difference equal to the given value. Exploratory only; it does
    /// not contain every finite sequence.
    Constant(u64),
}

impl DifferenceOrder {
    pub fn tag(&self) -> String {
        match self {
            DifferenceOrder::Canonical => String::from("canonical(sum,length,lex)"),
            DifferenceOrder::Constant(k) => format!("constant({k})"),
        }
    }
}

/// Increasing sequence `0 = n₀ < n₁ < …`, materialized on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSequence {
    order: DifferenceOrder,
    differences: Vec<u64>,
    positions: Vec<u64>,
    next_sum: u64,
}

impl UniversalSequence {
    pub fn new(order: DifferenceOrder) -> Self {
        if let DifferenceOrder::Constant(k) = order {
            assert!(k >= 1, "differences must be positive");
        }
        UniversalSequence {
            order,
            differences: Vec::new(),
            positions: alloc::vec![0],
            next_sum: 1,
        }
    }

    pub fn order(&self) -> DifferenceOrder {
        self.order
    }

    /// `n₀, n₁, …` materialized so far.
    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    /// `n₁ - n₀, n₂ - n₁, …` materialized so far.
    pub fn differences(&self) -> &[u64] {
        &self.differences
    }

    /// Makes at least `count` differences available.
    pub fn ensure_differences(&mut self, count: usize) {
        while self.differences.len() < count {
            match self.order {
                DifferenceOrder::Canonical => {
                    for block in compositions(self.next_sum) {
                        self.push_all(&block);
                    }
                    self.next_sum += 1;
                }
                DifferenceOrder::Constant(k) => self.push_all(&[k]),
            }
        }
    }

    /// Materializes until the last position is at least `value`.
    pub fn ensure_position(&mut self, value: u64) {
        while *self.positions.last().unwrap() < value {
            let more = self.differences.len() + 1;
            self.ensure_differences(more);
        }
    }

    /// `n_k`, extending as needed.
    pub fn position(&mut self, k: usize) -> u64 {
        self.ensure_differences(k);
        self.positions[k]
    }

    fn push_all(&mut self, block: &[u64]) {
        for &d in block {
            self.differences.push(d);
            let last = *self.positions.last().unwrap();
            self.positions.push(last + d);
        }
    }
}

/// All compositions of `sum` ordered by length, then lexicographically.
pub fn compositions(sum: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, parts: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(current.clone());
            }
            return;
        }
        // leave at least one for each remaining part
        for first in 1..=rest.saturating_sub(parts - 1) {
            current.push(first);
            rec(rest - first, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for parts in 1..=sum {
        rec(sum, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Canonical universal sequence with at least `count` differences
/// materialized (whole enumeration blocks are emitted at a time).
pub fn universal_difference_sequence(count: usize) -> UniversalSequence {
    let mut seq = UniversalSequence::new(DifferenceOrder::Canonical);
    seq.ensure_differences(count);
    seq
}

/// Largest number of differences materialized while searching.
pub const LOCATE_CAP: usize = 1 << 24;

/// Smallest `m` with `a_t = n_{m+t} - n_{m+t-1}` for every `t`, optionally
/// restricted to `m ≡ parity (mod 2)`.
///
/// For the canonical order an unrestricted search always succeeds, since
/// `a` is itself one of the enumerated blocks.
pub fn locate_pattern_with_parity(
    seq: &mut UniversalSequence,
    pattern: &[u64],
    parity: Option<usize>,
) -> Option<usize> {
    if pattern.contains(&0) {
        return None;
    }
    if let DifferenceOrder::Constant(k) = seq.order {
        let uniform = pattern.iter().all(|&a| a == k);
        return match (uniform, parity) {
            (false, _) => None,
            (true, None) => Some(0),
            (true, Some(p)) => Some(p % 2),
        };
    }
    let s = pattern.len();
    let mut m = 0usize;
    loop {
        if m + s > LOCATE_CAP {
            return None;
        }
        seq.ensure_differences(m + s);
        let fits = parity.is_none_or(|p| m % 2 == p % 2);
        if fits && seq.differences[m..m + s] == *pattern {
            return Some(m);
        }
        m += 1;
    }
}

pub fn locate_pattern(seq: &mut UniversalSequence, pattern: &[u64]) -> Option<usize> {
    locate_pattern_with_parity(seq, pattern, None)
}

/// Letter-wise `x ↦ x'`: letter `i` of the base alphabet becomes `i + base_size`.
pub fn prime_copy(word: &[Letter], base_size: usize) -> Word {
    word.iter().map(|&l| l + base_size as Letter).collect()
}

/// Projection `x, x' ↦ x`.
pub fn unprime(word: &[Letter], base_size: usize) -> Word {
    word.iter().map(|&l| l % base_size as Letter).collect()
}

/// Base letters followed by their primed copies, e.g. `x y x' y'`.
pub fn primed_alphabet(base: &Alphabet) -> Alphabet {
    let mut symbols: Vec<String> = base.symbols().to_vec();
    symbols.extend(base.symbols().iter().map(|s| format!("{s}'")));
    Alphabet::new(symbols).expect("primed symbols are distinct")
}

/// Inputs of the interleaved word: the base word and the segment boundaries.
#[derive(Debug, Clone)]
pub struct InterleaveSpec {
    pub base: PrefixStream,
    pub sequence: UniversalSequence,
}

impl InterleaveSpec {
    pub fn new(base: PrefixStream, order: DifferenceOrder) -> Self {
        InterleaveSpec {
            base,
            sequence: UniversalSequence::new(order),
        }
    }

    pub fn into_stream(self) -> PrefixStream {
        let alphabet = primed_alphabet(self.base.alphabet());
        PrefixStream::interleaved(
            alphabet,
            Interleaver {
                base: self.base,
                sequence: self.sequence,
                segment: 0,
            },
        )
    }
}

/// Generator state behind an interleaved [`PrefixStream`].
#[derive(Debug, Clone)]
pub struct Interleaver {
    base: PrefixStream,
    sequence: UniversalSequence,
    /// Segment `k` covers 1-based positions `n_k + 1 ..= n_{k+1}`.
    segment: usize,
}

impl Interleaver {
    pub(crate) fn extend(&mut self, out: &mut Word, n: usize) -> Result<(), WordError> {
        let base_size = self.base.alphabet().len() as Letter;
        let start = out.len();
        let base = self.base.prefix(n)?;
        self.sequence.ensure_position(n as u64);
        let positions = self.sequence.positions();
        for (i, &letter) in base.iter().enumerate().take(n).skip(start) {
            let one_based = i as u64 + 1;
            while positions[self.segment + 1] < one_based {
                self.segment += 1;
            }
            out.push(if self.segment % 2 == 1 {
                letter + base_size
            } else {
                letter
            });
        }
        Ok(())
    }

    pub fn sequence(&self) -> &UniversalSequence {
        &self.sequence
    }
}

/// First `n` letters of `w̃`.
pub fn interleaved_prefix(spec: &InterleaveSpec, n: usize) -> Result<Word, WordError> {
    spec.clone().into_stream().take(n)
}

/// The word `xyyyx…` and its morphism `x ↦ xy, y ↦ yyx`.
pub fn graded_nilpotent_base() -> (Morphism, Letter) {
    (
        Morphism::from_strs("xy", &["xy", "yyx"]).expect("valid morphism"),
        0,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub horizon: usize,
    pub max_pattern_len: usize,
    pub max_difference: u64,
    pub order: DifferenceOrder,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            horizon: 1_000_000,
            max_pattern_len: 5,
            max_difference: 6,
            order: DifferenceOrder::Canonical,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub certificate: Certificate,
    /// Scan of `w̃` with `deg x = deg x' = 1`, `deg y = deg y' = 2`.
    pub interleaved_scan: ScanReport,
    /// Scan of the unprimed projection, which is the base word.
    pub projected_scan: ScanReport,
    pub projection_is_base: bool,
    pub weight_sums_equal: bool,
    pub freeness: FreenessReport,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_certified()
            && self.projection_is_base
            && self.weight_sums_equal
            && !self.interleaved_scan.any_flagged()
            && self.freeness.independent()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PipelineError {
    Word(WordError),
    Grading(GradingError),
    Monalg(MonalgError),
}

impl core::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PipelineError::Word(e) => e.fmt(f),
            PipelineError::Grading(e) => e.fmt(f),
            PipelineError::Monalg(e) => e.fmt(f),
        }
    }
}

impl From<WordError> for PipelineError {
    fn from(e: WordError) -> Self {
        PipelineError::Word(e)
    }
}

impl From<GradingError> for PipelineError {
    fn from(e: GradingError) -> Self {
        PipelineError::Grading(e)
    }
}

impl From<MonalgError> for PipelineError {
    fn from(e: MonalgError) -> Self {
        PipelineError::Monalg(e)
    }
}

/// Certifies the base word, builds `w̃`, compares AP scans of `w̃` and its
/// projection, and checks that `x + y` and `x' + y'` are free up to the
/// configured pattern length.
pub fn interleave_pipeline(config: &PipelineConfig) -> Result<PipelineReport, PipelineError> {
    let (morphism, start) = graded_nilpotent_base();
    let base_weights = WeightVector::new(alloc::vec![1, 2])?;
    let certificate =
        grading::certify(&morphism, start, &base_weights, &CertifyOptions::default())?;

    let base = PrefixStream::morphic(morphism, start)?;
    let mut tilde = InterleaveSpec::new(base.clone(), config.order).into_stream();
    let horizon = config.horizon;
    let tilde_prefix = tilde.take(horizon)?;
    let mut base_stream = base;
    let projected = unprime(&tilde_prefix, 2);
    let projection_is_base = projected == base_stream.prefix(horizon)?;

    let tilde_weights = WeightVector::new(alloc::vec![1, 2, 1, 2])?;
    let horizons = [horizon / 2, horizon];
    let interleaved_scan = grading::graded_nilpotence_scan(
        &mut tilde,
        &tilde_weights,
        config.max_difference,
        &horizons,
    )?;
    let projected_scan = grading::graded_nilpotence_scan(
        &mut base_stream,
        &base_weights,
        config.max_difference,
        &horizons,
    )?;
    let weight_sums_equal = grading::weight_sums(&tilde_prefix, tilde_weights.as_slice())
        == grading::weight_sums(&projected, base_weights.as_slice());

    let view = AlgebraView::factors_of(&mut tilde, horizon)?;
    let gens = [
        NcPolynomial::from_words(&[&[0], &[1]]),
        NcPolynomial::from_words(&[&[2], &[3]]),
    ];
    let freeness = monalg::freeness_check(&view, &gens, config.max_pattern_len)?;

    Ok(PipelineReport {
        config: config.clone(),
        certificate,
        interleaved_scan,
        projected_scan,
        projection_is_base,
        weight_sums_equal,
        freeness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn canonical_enumeration_head() {
        let seq = universal_difference_sequence(11);
        assert_eq!(seq.differences(), &[1, 2, 1, 1, 3, 1, 2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn partial_sums() {
        let mut seq = UniversalSequence::new(DifferenceOrder::Canonical);
        let n: Vec<u64> = (0..12).map(|k| seq.position(k)).collect();
        assert_eq!(n, vec![0, 1, 3, 4, 5, 8, 9, 11, 13, 14, 15, 16]);
    }

    #[test]
    fn compositions_are_ordered() {
        assert_eq!(compositions(1), vec![vec![1]]);
        assert_eq!(
            compositions(3),
            vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]
        );
        for s in 1..=10 {
            assert_eq!(compositions(s).len(), 1 << (s - 1));
        }
    }

    #[test]
    fn locate_examples() {
        let mut seq = UniversalSequence::new(DifferenceOrder::Canonical);
        assert_eq!(locate_pattern(&mut seq, &[2, 1]), Some(1));
        assert_eq!(locate_pattern(&mut seq, &[1]), Some(0));
        assert_eq!(locate_pattern(&mut seq, &[1, 1, 1]), Some(8));
        assert_eq!(locate_pattern(&mut seq, &[0]), None);
    }

    #[test]
    fn constant_order_cannot_locate_mixed_patterns() {
        let mut seq = UniversalSequence::new(DifferenceOrder::Constant(1));
        assert_eq!(locate_pattern(&mut seq, &[1, 1]), Some(0));
        assert_eq!(locate_pattern(&mut seq, &[1, 2]), None);
    }

    #[test]
    fn primes_and_projection() {
        let xy = Alphabet::from_chars("xy").unwrap();
        let w = xy.parse_word("xyy").unwrap();
        let primed = primed_alphabet(&xy);
        assert_eq!(primed.render(&prime_copy(&w, 2)), "x'y'y'");
        assert!(prime_copy(&[], 2).is_empty());
        assert_eq!(unprime(&prime_copy(&w, 2), 2), w);
        assert_eq!(
            unprime(&primed.parse_word("xy'y'y").unwrap(), 2),
            xy.parse_word("xyyy").unwrap()
        );
    }

    #[test]
    fn interleaved_head() {
        let (m, b) = graded_nilpotent_base();
        let spec = InterleaveSpec::new(
            PrefixStream::morphic(m, b).unwrap(),
            DifferenceOrder::Canonical,
        );
        let alphabet = primed_alphabet(&Alphabet::from_chars("xy").unwrap());
        // n = 0, 1, 3, 4, 5: x | y'y' | y | x'
        assert_eq!(
            alphabet.render(&interleaved_prefix(&spec, 5).unwrap()),
            "xy'y'yx'"
        );
        assert!(interleaved_prefix(&spec, 0).unwrap().is_empty());
    }

    #[test]
    fn projection_recovers_base() {
        let (m, b) = graded_nilpotent_base();
        let mut base = PrefixStream::morphic(m, b).unwrap();
        let spec = InterleaveSpec::new(base.clone(), DifferenceOrder::Canonical);
        let tilde = interleaved_prefix(&spec, 10_000).unwrap();
        assert_eq!(unprime(&tilde, 2), base.take(10_000).unwrap());
    }
}
