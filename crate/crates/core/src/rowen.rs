//! Thue-Morse bits, the shift operators `a = Σ mᵢ e_{i,i+1}` and
//! `b = Σ (1 - mᵢ) e_{i,i+1}` truncated to `N × N`, and the checks relating
//! products of `a`, `b` to factors of the Thue-Morse word.
//!
//! Words here are over `{a, b}` (letters 0 and 1). On the word side `a`
//! corresponds to `y` and `b` to `x`, with the Thue-Morse word written
//! `yxxyxyyx…` over the alphabet `xy`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_traits::ToPrimitive;

use crate::monalg::NcPolynomial;
use crate::words::{Alphabet, Letter, Morphism, PrefixStream, SuffixAutomaton, Word, WordError};

pub const DEFAULT_MARGIN: usize = 64;

pub const A: Letter = 0;
pub const B: Letter = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowenError {
    Word(WordError),
    /// `N` must exceed the probed length plus the margin.
    MarginTooSmall {
        n: usize,
        length: usize,
        margin: usize,
    },
    NotFoundWithinBound {
        u: usize,
        start: usize,
        cap: usize,
    },
    IndexExceedsTruncation {
        n: usize,
        checked: usize,
    },
    NotHomogeneous,
    ZeroElement,
    NonIntegerCoefficient,
    Overflow,
    DimensionMismatch,
    ZeroStep,
}

impl fmt::Display for RowenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowenError::Word(e) => e.fmt(f),
            RowenError::MarginTooSmall { n, length, margin } => {
                write!(
                    f,
                    "truncation N={n} too small for length {length} with margin {margin}"
                )
            }
            RowenError::NotFoundWithinBound { u, start, cap } => {
                write!(f, "no witness for u={u} at i={start} within n ≤ {cap}")
            }
            RowenError::IndexExceedsTruncation { n, checked } => {
                write!(f, "no zero power up to k={checked} at N={n}; inconclusive")
            }
            RowenError::NotHomogeneous => write!(f, "element is not homogeneous"),
            RowenError::ZeroElement => write!(f, "element is zero"),
            RowenError::NonIntegerCoefficient => write!(f, "coefficients must be integers"),
            RowenError::Overflow => write!(f, "integer overflow in operator product"),
            RowenError::DimensionMismatch => write!(f, "operator dimensions differ"),
            RowenError::ZeroStep => write!(f, "step u must be positive"),
        }
    }
}

impl From<WordError> for RowenError {
    fn from(e: WordError) -> Self {
        RowenError::Word(e)
    }
}

/// A 0/1 sequence `m₁, m₂, …` indexed from 1.
pub trait BitOracle {
    fn bit(&self, i: usize) -> u8;
}

/// `mᵢ = 1` iff `i - 1` has an even number of ones in binary.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThueMorse;

impl BitOracle for ThueMorse {
    fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1, "Thue-Morse bits are indexed from 1");
        (i - 1).count_ones().is_multiple_of(2) as u8
    }
}

pub fn thue_morse_bit(i: usize) -> u8 {
    ThueMorse.bit(i)
}

/// The Thue-Morse word `yxxyxyyx…` as the fixed point of `x → xy, y → yx`
/// starting at `y`. Letter `y` (index 1) corresponds to bit 1.
pub fn thue_morse_stream() -> PrefixStream {
    let m = Morphism::from_strs("xy", &["xy", "yx"]).expect("valid morphism");
    PrefixStream::morphic(m, 1).expect("prolongable on y")
}

pub fn generator_alphabet() -> Alphabet {
    Alphabet::from_chars("ab").expect("valid alphabet")
}

/// `a ↦ y`, `b ↦ x`.
pub fn to_thue_morse_word(v: &[Letter]) -> Word {
    v.iter().map(|&l| if l == A { 1 } else { 0 }).collect()
}

/// Sparse upper-triangular `N × N` integer matrix stored by superdiagonal.
/// Band `k` holds the entries `(i, i + k)`, `i = 1..=N-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedOperator {
    dim: usize,
    bands: BTreeMap<usize, Vec<i64>>,
}

impl TruncatedOperator {
    pub fn zero(dim: usize) -> Self {
        TruncatedOperator {
            dim,
            bands: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_band(dim, 0, vec![1; dim])
    }

    fn from_band(dim: usize, offset: usize, entries: Vec<i64>) -> Self {
        let mut op = Self::zero(dim);
        op.insert_band(offset, entries);
        op
    }

    fn insert_band(&mut self, offset: usize, entries: Vec<i64>) {
        if offset < self.dim && entries.iter().any(|&e| e != 0) {
            self.bands.insert(offset, entries);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    /// Offsets of the nonzero superdiagonals.
    pub fn band_offsets(&self) -> Vec<usize> {
        self.bands.keys().copied().collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.bands
            .values()
            .map(|b| b.iter().filter(|&&e| e != 0).count())
            .sum()
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == 0 || j < i || j > self.dim {
            return 0;
        }
        self.bands.get(&(j - i)).map_or(0, |b| b[i - 1])
    }

    /// Smallest row `t` with a nonzero entry in band `offset`.
    pub fn first_nonzero_row(&self, offset: usize) -> Option<usize> {
        self.bands
            .get(&offset)?
            .iter()
            .position(|&e| e != 0)
            .map(|i| i + 1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RowenError> {
        if self.dim != other.dim {
            return Err(RowenError::DimensionMismatch);
        }
        let mut out = self.clone();
        for (&k, band) in &other.bands {
            let sum = match out.bands.remove(&k) {
                Some(mine) => mine
                    .iter()
                    .zip(band)
                    .map(|(x, y)| x.checked_add(*y).ok_or(RowenError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?,
                None => band.clone(),
            };
            out.insert_band(k, sum);
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self, RowenError> {
        let mut out = Self::zero(self.dim);
        for (&k, band) in &self.bands {
            let scaled = band
                .iter()
                .map(|x| x.checked_mul(c).ok_or(RowenError::Overflow))
                .collect::<Result<Vec<_>, _>>()?;
            out.insert_band(k, scaled);
        }
        Ok(out)
    }

    /// Product of the truncations, which equals the truncation of the
    /// product because both factors are upper triangular.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, RowenError> {
        if self.dim != other.dim {
            return Err(RowenError::DimensionMismatch);
        }
        let n = self.dim;
        let mut acc: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for (&k1, x) in &self.bands {
            for (&k2, y) in &other.bands {
                let k = k1 + k2;
                if k >= n {
                    continue;
                }
                let band = acc.entry(k).or_insert_with(|| vec![0; n - k]);
                for (i, slot) in band.iter_mut().enumerate() {
                    let term = x[i].checked_mul(y[i + k1]).ok_or(RowenError::Overflow)?;
                    *slot = slot.checked_add(term).ok_or(RowenError::Overflow)?;
                }
            }
        }
        let mut out = Self::zero(n);
        for (k, band) in acc {
            out.insert_band(k, band);
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: usize) -> Result<Self, RowenError> {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }
}

/// The truncated generators `(a, b)`.
pub fn build_generators(n: usize) -> (TruncatedOperator, TruncatedOperator) {
    assert!(n >= 2, "truncation must be at least 2");
    let bits: Vec<i64> = (1..n).map(|i| thue_morse_bit(i) as i64).collect();
    let a = TruncatedOperator::from_band(n, 1, bits.clone());
    let b = TruncatedOperator::from_band(n, 1, bits.iter().map(|m| 1 - m).collect());
    (a, b)
}

fn check_margin(n: usize, length: usize, margin: usize) -> Result<(), RowenError> {
    if n <= length + margin {
        return Err(RowenError::MarginTooSmall { n, length, margin });
    }
    Ok(())
}

/// The product of generators spelled by `v` (`a` = 0, `b` = 1).
pub fn evaluate_word(
    v: &[Letter],
    n: usize,
    margin: usize,
) -> Result<TruncatedOperator, RowenError> {
    generator_alphabet().check(v)?;
    check_margin(n, v.len(), margin)?;
    let (a, b) = build_generators(n);
    let mut out = TruncatedOperator::identity(n);
    for &l in v {
        out = out.checked_mul(if l == A { &a } else { &b })?;
    }
    Ok(out)
}

/// `c_t`: the `(t, t + |v|)` entry of the product spelled by `v`.
pub fn coefficient(v: &[Letter], t: usize) -> u8 {
    coefficient_with(&ThueMorse, v, t)
}

pub fn coefficient_with<O: BitOracle>(oracle: &O, v: &[Letter], t: usize) -> u8 {
    assert!(t >= 1, "rows are indexed from 1");
    v.iter()
        .enumerate()
        .map(|(j, &l)| {
            let m = oracle.bit(t + j);
            if l == A {
                m
            } else {
                1 - m
            }
        })
        .product()
}

/// Suffix automaton of the first `horizon` Thue-Morse letters over `xy`.
pub fn thue_morse_factor_index(horizon: usize) -> SuffixAutomaton {
    let mut s = thue_morse_stream();
    SuffixAutomaton::new(s.prefix(horizon).expect("infinite word"), 2)
}

/// Whether `v` evaluating to zero agrees with its word-side image being
/// absent from the factor index.
pub fn vanishing_matches_factor(
    v: &[Letter],
    n: usize,
    margin: usize,
    factors: &SuffixAutomaton,
) -> Result<bool, RowenError> {
    let zero = evaluate_word(v, n, margin)?.is_zero();
    Ok(zero != factors.contains(&to_thue_morse_word(v)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub max_len: usize,
    pub n: usize,
    pub horizon: usize,
    pub words_checked: usize,
    pub agreements: usize,
    pub mismatches: Vec<Word>,
}

/// Runs [`vanishing_matches_factor`] over every nonempty `v` with
/// `|v| ≤ max_len`.
pub fn correspondence_scan(
    max_len: usize,
    n: usize,
    margin: usize,
    horizon: usize,
) -> Result<CorrespondenceReport, RowenError> {
    check_margin(n, max_len, margin)?;
    let factors = thue_morse_factor_index(horizon);
    let (a, b) = build_generators(n);
    let mut report = CorrespondenceReport {
        max_len,
        n,
        horizon,
        words_checked: 0,
        agreements: 0,
        mismatches: Vec::new(),
    };
    let mut path = Word::new();
    let root = TruncatedOperator::identity(n);
    walk(&root, &a, &b, &factors, max_len, &mut path, &mut report)?;
    Ok(report)
}

/// Depth-first over words, reusing the prefix product.
fn walk(
    prefix: &TruncatedOperator,
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    factors: &SuffixAutomaton,
    max_len: usize,
    path: &mut Word,
    report: &mut CorrespondenceReport,
) -> Result<(), RowenError> {
    if path.len() == max_len {
        return Ok(());
    }
    for (l, g) in [(A, a), (B, b)] {
        path.push(l);
        let product = prefix.checked_mul(g)?;
        report.words_checked += 1;
        if product.is_zero() != factors.contains(&to_thue_morse_word(path)) {
            report.agreements += 1;
        } else {
            report.mismatches.push(path.clone());
        }
        walk(&product, a, b, factors, max_len, path, report)?;
        path.pop();
    }
    Ok(())
}

/// Least `n` such that, for every `i` in the range, the bits
/// `mᵢ, m_{i+u}, …, m_{i+n·u}` include both values.
pub fn n_u_witness<O: BitOracle>(
    oracle: &O,
    u: usize,
    range: RangeInclusive<usize>,
    cap: usize,
) -> Result<usize, RowenError> {
    if u == 0 {
        return Err(RowenError::ZeroStep);
    }
    let mut worst = 0;
    for i in range {
        let first = oracle.bit(i);
        let n = (1..=cap)
            .find(|&n| oracle.bit(i + n * u) != first)
            .ok_or(RowenError::NotFoundWithinBound { u, start: i, cap })?;
        worst = worst.max(n);
    }
    Ok(worst)
}

/// Homogeneous polynomial in `a`, `b` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    poly: NcPolynomial,
    degree: usize,
}

impl GradedElement {
    pub fn new(poly: NcPolynomial) -> Result<Self, RowenError> {
        let degree = poly.degree().ok_or(RowenError::ZeroElement)?;
        if !poly.is_homogeneous() {
            return Err(RowenError::NotHomogeneous);
        }
        if poly.terms().any(|(_, c)| !c.is_integer()) {
            return Err(RowenError::NonIntegerCoefficient);
        }
        generator_alphabet().check(&poly.support().flatten().copied().collect::<Word>())?;
        Ok(GradedElement { poly, degree })
    }

    pub fn one() -> Self {
        GradedElement {
            poly: NcPolynomial::one(),
            degree: 0,
        }
    }

    pub fn poly(&self) -> &NcPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `g · c` for a generator letter `c`.
    pub fn times(&self, c: Letter) -> Self {
        let mut poly = NcPolynomial::zero();
        for (m, coeff) in self.poly.terms() {
            let mut w = m.to_vec();
            w.push(c);
            poly.add_term(&w, coeff.clone());
        }
        GradedElement {
            poly,
            degree: self.degree + 1,
        }
    }

    pub fn evaluate(&self, n: usize) -> Result<TruncatedOperator, RowenError> {
        let (a, b) = build_generators(n);
        let mut out = TruncatedOperator::zero(n);
        for (m, c) in self.poly.terms() {
            let c = c.to_integer().to_i64().ok_or(RowenError::Overflow)?;
            let mut term = TruncatedOperator::identity(n);
            for &l in m {
                term = term.checked_mul(if l == A { &a } else { &b })?;
            }
            out = out.checked_add(&term.checked_scale(c)?)?;
        }
        Ok(out)
    }
}

/// All homogeneous elements of degree `d` with 0/1 coefficients.
pub fn zero_one_elements(d: usize) -> Vec<GradedElement> {
    let monomials: Vec<Word> = (0..1usize << d)
        .map(|bits| {
            (0..d)
                .map(|j| ((bits >> (d - 1 - j)) & 1) as Letter)
                .collect()
        })
        .collect();
    (1..1usize << monomials.len())
        .map(|mask| {
            let chosen: Vec<&[Letter]> = monomials
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w.as_slice())
                .collect();
            GradedElement::new(NcPolynomial::from_words(&chosen)).expect("homogeneous")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyIndex {
    pub n: usize,
    pub index: usize,
    /// Index recomputed at `2N`.
    pub index_at_2n: usize,
}

impl NilpotencyIndex {
    pub fn stable(&self) -> bool {
        self.index == self.index_at_2n
    }
}

fn index_at(h: &GradedElement, n: usize, margin: usize) -> Result<usize, RowenError> {
    let op = h.evaluate(n)?;
    let mut power = op.clone();
    let mut k = 1;
    loop {
        if power.is_zero() {
            return Ok(k);
        }
        if (k + 1) * h.degree() + margin >= n {
            return Err(RowenError::IndexExceedsTruncation { n, checked: k });
        }
        power = power.checked_mul(&op)?;
        k += 1;
    }
}

/// Smallest `k` with `(g·c)ᵏ = 0`, computed at `N` and again at `2N`.
pub fn nilpotency_index(
    g: &GradedElement,
    c: Letter,
    n: usize,
    margin: usize,
) -> Result<NilpotencyIndex, RowenError> {
    generator_alphabet().check(&[c])?;
    let h = g.times(c);
    check_margin(n, h.degree(), margin)?;
    Ok(NilpotencyIndex {
        n,
        index: index_at(&h, n, margin)?,
        index_at_2n: index_at(&h, 2 * n, margin)?,
    })
}

/// Cumulative factor counts `Σ_{k ≤ n} p(k)` and quadratic fit.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProfile {
    pub ns: Vec<usize>,
    pub counts: Vec<u64>,
    pub horizon: usize,
    /// `min count/n²` and `max count/n²` over the sample.
    pub c0: f64,
    pub c1: f64,
    /// `count(2n) / count(n)` for each `n` with `2n` also sampled.
    pub ratios: Vec<(usize, f64)>,
}

impl GrowthProfile {
    /// Every doubling ratio is at least 3.5.
    pub fn lower_bound_holds(&self) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|&(_, r)| r >= 3.5)
    }

    /// Every doubling ratio is at most 4.5.
    pub fn upper_bound_holds(&self) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|&(_, r)| r <= 4.5)
    }

    pub fn quadratic(&self) -> bool {
        self.lower_bound_holds() && self.upper_bound_holds()
    }
}

pub fn growth_profile(
    stream: &mut PrefixStream,
    ns: &[usize],
    horizon: usize,
) -> Result<GrowthProfile, RowenError> {
    let d = stream.alphabet().len();
    let sa = SuffixAutomaton::new(stream.prefix(horizon)?, d);
    let counts: Vec<u64> = ns.iter().map(|&n| sa.count_up_to(n)).collect();
    let normalized = ns
        .iter()
        .zip(&counts)
        .filter(|(&n, _)| n > 0)
        .map(|(&n, &c)| c as f64 / (n * n) as f64);
    let (c0, c1) = normalized.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    let ratios = ns
        .iter()
        .zip(&counts)
        .filter_map(|(&n, &c)| {
            let j = ns.iter().position(|&m| m == 2 * n)?;
            Some((n, counts[j] as f64 / c as f64))
        })
        .collect();
    Ok(GrowthProfile {
        ns: ns.to_vec(),
        counts,
        horizon,
        c0,
        c1,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant(u8);

    impl BitOracle for Constant {
        fn bit(&self, _: usize) -> u8 {
            self.0
        }
    }

    fn word(s: &str) -> Word {
        generator_alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn bits() {
        let first: Vec<u8> = (1..=8).map(thue_morse_bit).collect();
        assert_eq!(first, vec![1, 0, 0, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn generators_at_four() {
        let (a, b) = build_generators(4);
        assert_eq!(
            (1..4).map(|i| a.entry(i, i + 1)).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
        assert_eq!(
            (1..4).map(|i| b.entry(i, i + 1)).collect::<Vec<_>>(),
            vec![0, 1, 1]
        );
        let shift = a.checked_add(&b).unwrap();
        assert!(!shift.checked_pow(3).unwrap().is_zero());
        assert!(shift.checked_pow(4).unwrap().is_zero());
    }

    #[test]
    fn evaluate_examples() {
        assert!(evaluate_word(&word("aaa"), 256, 64).unwrap().is_zero());
        assert!(!evaluate_word(&word("ab"), 256, 64).unwrap().is_zero());
        assert_eq!(
            evaluate_word(&[], 256, 64).unwrap(),
            TruncatedOperator::identity(256)
        );
        assert_eq!(
            evaluate_word(&word("ab"), 66, 64),
            Err(RowenError::MarginTooSmall {
                n: 66,
                length: 2,
                margin: 64
            })
        );
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient(&word("a"), 1), 1);
        assert_eq!(coefficient(&word("aa"), 2), 0);
        assert_eq!(coefficient(&word("ab"), 1), 1);
    }

    #[test]
    fn correspondence_small() {
        let f = thue_morse_factor_index(10_000);
        for v in ["abb", "aaa", "a", "bab", "abab", "ababa"] {
            assert!(
                vanishing_matches_factor(&word(v), 512, 64, &f).unwrap(),
                "{v}"
            );
        }
        let r = correspondence_scan(6, 512, 64, 10_000).unwrap();
        assert_eq!((r.words_checked, r.agreements), (126, 126));
    }

    #[test]
    fn witness_examples() {
        assert_eq!(n_u_witness(&ThueMorse, 1, 1..=10_000, 64), Ok(2));
        assert!(n_u_witness(&ThueMorse, 2, 1..=10_000, 64).is_ok());
        assert_eq!(
            n_u_witness(&Constant(0), 1, 1..=5, 10),
            Err(RowenError::NotFoundWithinBound {
                u: 1,
                start: 1,
                cap: 10
            })
        );
    }

    #[test]
    fn nilpotency_of_generators() {
        let one = GradedElement::one();
        for c in [A, B] {
            let r = nilpotency_index(&one, c, 256, 64).unwrap();
            assert_eq!((r.index, r.index_at_2n), (3, 3));
        }
    }

    #[test]
    fn graded_element_checks() {
        let mixed = NcPolynomial::from_words(&[&[0], &[0, 1]]);
        assert_eq!(GradedElement::new(mixed), Err(RowenError::NotHomogeneous));
        assert_eq!(
            GradedElement::new(NcPolynomial::zero()),
            Err(RowenError::ZeroElement)
        );
        assert_eq!(zero_one_elements(2).len(), 15);
    }

    #[test]
    fn growth_controls() {
        let tm = growth_profile(&mut thue_morse_stream(), &[16, 32, 64], 20_000).unwrap();
        assert!(tm.quadratic());
        let xy = Alphabet::from_chars("xy").unwrap();
        let mut periodic = PrefixStream::periodic(xy, vec![0, 1]).unwrap();
        let p = growth_profile(&mut periodic, &[16, 32, 64], 20_000).unwrap();
        assert!(!p.lower_bound_holds());
    }
}
