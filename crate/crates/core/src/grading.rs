//! Weight-sum sets, arithmetic progressions in them, and a certifier for
//! graded nilpotence of iterative algebras `A_w`.
//!
//! A product of `L` monomials of degree `D` is a nonzero monomial of `A_w`
//! exactly when the weight-sum set `S = {0, deg a₁, deg a₁a₂, …}` contains
//! an arithmetic progression `t, t + D, …, t + L·D`. Bounded progression
//! lengths for every `D` is therefore the combinatorial face of graded
//! nilpotence, and is what [`graded_nilpotence_scan`] measures.
//!
//! The certifier checks the sufficient criterion: primitive and prolongable
//! morphism, weights not all equal, unimodular incidence matrix, and a
//! decomposition `w = u·b·w'` whose weight sequence `p·Mʲ·θ(u)` has gcd 1.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::words::{
    analyze_morphism, parikh, IntMatrix, Letter, Morphism, PrefixStream, Word, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingError {
    Word(WordError),
    WeightCount {
        expected: usize,
        found: usize,
    },
    ZeroWeight,
    EmptyDecomposition,
    /// The user-supplied `u` is not followed by the start letter in either
    /// reading of the word.
    InvalidDecomposition(String),
    DecompositionNotFound {
        horizon: usize,
    },
    HorizonsNotIncreasing,
    ZeroDifference,
}

impl fmt::Display for GradingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingError::Word(e) => e.fmt(f),
            GradingError::WeightCount { expected, found } => {
                write!(f, "expected {expected} weights, found {found}")
            }
            GradingError::ZeroWeight => write!(f, "weights must be positive"),
            GradingError::EmptyDecomposition => write!(f, "decomposition word u must be nonempty"),
            GradingError::InvalidDecomposition(u) => {
                write!(
                    f,
                    "`{u}` followed by the start letter is not a prefix of the word"
                )
            }
            GradingError::DecompositionNotFound { horizon } => {
                write!(f, "start letter does not reoccur within {horizon} letters")
            }
            GradingError::HorizonsNotIncreasing => {
                write!(f, "horizons must be strictly increasing")
            }
            GradingError::ZeroDifference => write!(f, "progression difference must be positive"),
        }
    }
}

impl From<WordError> for GradingError {
    fn from(e: WordError) -> Self {
        GradingError::Word(e)
    }
}

/// Positive letter degrees `[p₁, …, p_d]` in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Result<Self, GradingError> {
        if weights.contains(&0) {
            return Err(GradingError::ZeroWeight);
        }
        Ok(WeightVector(weights))
    }

    pub fn ones(d: usize) -> Self {
        WeightVector(vec![1; d])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_equal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    fn check_alphabet(&self, d: usize) -> Result<(), GradingError> {
        if self.0.len() != d {
            return Err(GradingError::WeightCount {
                expected: d,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Partial weight sums `s₀ = 0, sᵢ = sᵢ₋₁ + deg(aᵢ)` along a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSumSet {
    sums: Vec<u64>,
}

impl WeightSumSet {
    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    /// Number of letters covered.
    pub fn letters(&self) -> usize {
        self.sums.len() - 1
    }

    /// Prefix covering the first `n` letters.
    pub fn truncated(&self, n: usize) -> &[u64] {
        &self.sums[..=n.min(self.letters())]
    }

    pub fn contains(&self, value: u64) -> bool {
        self.sums.binary_search(&value).is_ok()
    }

    pub fn longest_ap(&self, difference: u64) -> usize {
        longest_ap(&self.sums, difference)
    }
}

pub fn weight_sums(word: &[Letter], weights: &[u64]) -> WeightSumSet {
    let mut sums = Vec::with_capacity(word.len() + 1);
    let mut acc = 0u64;
    sums.push(0);
    for &l in word {
        acc += weights[l as usize];
        sums.push(acc);
    }
    WeightSumSet { sums }
}

pub fn weight_sum_prefix(
    stream: &mut PrefixStream,
    weights: &WeightVector,
    n: usize,
) -> Result<WeightSumSet, GradingError> {
    weights.check_alphabet(stream.alphabet().len())?;
    Ok(weight_sums(stream.prefix(n)?, weights.as_slice()))
}

/// For each element `s` of a strictly increasing set, the length of the
/// longest progression with difference `d` ending at `s`.
fn progression_runs(set: &[u64], d: u64) -> Vec<u32> {
    let mut runs = vec![0u32; set.len()];
    let mut j = 0usize;
    for i in 0..set.len() {
        let s = set[i];
        runs[i] = 1;
        if s >= d {
            let target = s - d;
            while j < i && set[j] < target {
                j += 1;
            }
            if j < i && set[j] == target {
                runs[i] = runs[j] + 1;
            }
        }
    }
    runs
}

/// Largest `L` with `t, t + d, …, t + (L - 1)·d` all in the strictly
/// increasing set. Zero for the empty set.
pub fn longest_ap(set: &[u64], d: u64) -> usize {
    assert!(d >= 1, "difference must be positive");
    progression_runs(set, d).into_iter().max().unwrap_or(0) as usize
}

/// Residues mod `D` whose class holds a progression of length at least
/// `threshold`, and the cyclic gap tuple `(i₂ - i₁, …, i₁ + D - i_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueProfile {
    pub difference: u64,
    pub threshold: usize,
    pub residues: Vec<u64>,
    pub gaps: Vec<u64>,
    pub horizon: usize,
}

pub fn residue_profile(
    set: &WeightSumSet,
    difference: u64,
    threshold: usize,
) -> Result<ResidueProfile, GradingError> {
    if difference == 0 {
        return Err(GradingError::ZeroDifference);
    }
    let runs = progression_runs(&set.sums, difference);
    let mut best = vec![0u32; difference as usize];
    for (s, run) in set.sums.iter().zip(runs) {
        let r = (s % difference) as usize;
        best[r] = best[r].max(run);
    }
    let residues: Vec<u64> = (0..difference)
        .filter(|&r| best[r as usize] as usize >= threshold)
        .collect();
    let gaps = cyclic_gaps(&residues, difference);
    Ok(ResidueProfile {
        difference,
        threshold,
        residues,
        gaps,
        horizon: set.letters(),
    })
}

fn cyclic_gaps(residues: &[u64], difference: u64) -> Vec<u64> {
    let q = residues.len();
    (0..q)
        .map(|j| {
            if j + 1 < q {
                residues[j + 1] - residues[j]
            } else {
                residues[0] + difference - residues[q - 1]
            }
        })
        .collect()
}

/// True iff no rotation by `1..q` maps the tuple to itself.
pub fn is_rotation_primitive(tuple: &[u64]) -> bool {
    let q = tuple.len();
    (1..q).all(|m| (0..q).any(|i| tuple[i] != tuple[(i + m) % q]))
}

/// `g_j = p · Mʲ · θ(u)` for `j = 0..=J`, with running gcds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdSequence {
    pub values: Vec<BigInt>,
    pub running_gcd: Vec<BigInt>,
}

impl GcdSequence {
    /// First index at which the running gcd is 1.
    pub fn unit_index(&self) -> Option<usize> {
        self.running_gcd.iter().position(One::is_one)
    }
}

pub fn gcd_sequence(
    m: &Morphism,
    weights: &WeightVector,
    u: &[Letter],
    j_max: usize,
) -> Result<GcdSequence, GradingError> {
    let d = m.alphabet().len();
    weights.check_alphabet(d)?;
    m.alphabet().check(u)?;
    if u.is_empty() {
        return Err(GradingError::EmptyDecomposition);
    }
    let incidence = analyze_morphism(m).incidence;
    let p: Vec<BigInt> = weights
        .as_slice()
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    let mut v: Vec<BigInt> = parikh(u, d).into_iter().map(BigInt::from).collect();
    let mut values = Vec::with_capacity(j_max + 1);
    let mut running_gcd = Vec::with_capacity(j_max + 1);
    let mut g = BigInt::zero();
    for j in 0..=j_max {
        if j > 0 {
            v = mat_vec(&incidence, &v);
        }
        let value: BigInt = p.iter().zip(&v).map(|(a, b)| a * b).sum();
        g = g.gcd(&value);
        values.push(value);
        running_gcd.push(g.clone());
    }
    Ok(GcdSequence {
        values,
        running_gcd,
    })
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| m[(i, j)] != 0)
                .map(|j| BigInt::from(m[(i, j)]) * &v[j])
                .sum()
        })
        .collect()
}

/// Which reading of the word a decomposition `w = u·b·w'` was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionSource {
    /// Shortest `u` found automatically in the fixed point.
    Automatic,
    /// User-supplied `u`, valid in the fixed point `b·t·φ(t)·φ²(t)⋯`.
    FixedPoint,
    /// User-supplied `u`, valid only in the word `b·φ(t)·φ²(t)⋯` obtained by
    /// dropping the first tail block.
    ShiftedTail,
}

impl DecompositionSource {
    pub fn tag(&self) -> &'static str {
        match self {
            DecompositionSource::Automatic => "auto",
            DecompositionSource::FixedPoint => "fixed-point",
            DecompositionSource::ShiftedTail => "shifted-tail",
        }
    }
}

/// First `n` letters of `b·φ(t)·φ²(t)⋯` where `φ(b) = b·t`.
pub fn shifted_tail_prefix(m: &Morphism, b: Letter, n: usize) -> Result<Word, WordError> {
    let tail = m.tail(b)?;
    let mut out = vec![b];
    let mut block = m.apply(tail);
    while out.len() < n {
        if block.is_empty() {
            return Err(WordError::FiniteWord { length: out.len() });
        }
        out.extend_from_slice(&block);
        block = m.apply(&block);
    }
    out.truncate(n);
    Ok(out)
}

/// First failing condition of the criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    NotPrimitive,
    EqualWeights,
    Determinant(i128),
    /// The running gcd had not reached 1 by `j_max`. This is
    /// non-certification, not a proof that the condition fails.
    GcdUndecided {
        j_max: usize,
        gcd: BigInt,
    },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::NotPrimitive => write!(f, "not-primitive"),
            Reason::EqualWeights => write!(f, "equal-weights"),
            Reason::Determinant(d) => write!(f, "det={d}"),
            Reason::GcdUndecided { j_max, gcd } => {
                write!(f, "gcd-undecided(j_max={j_max},gcd={gcd})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    NotApplicable(Reason),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::NotApplicable(_) => "NOT_APPLICABLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub j_max: usize,
    /// Overrides the automatically chosen decomposition word `u`.
    pub decomposition: Option<Word>,
    /// Letters searched for the automatic decomposition.
    pub horizon: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            j_max: 32,
            decomposition: None,
            horizon: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub morphism: Morphism,
    pub start: Letter,
    pub weights: WeightVector,
    pub u: Word,
    pub u_source: DecompositionSource,
    /// Values up to the first index with running gcd 1 (or `j_max`).
    pub gcd: GcdSequence,
    pub determinant: i128,
    pub primitive: bool,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn reason(&self) -> Option<&Reason> {
        match &self.verdict {
            Verdict::Certified => None,
            Verdict::NotApplicable(r) => Some(r),
        }
    }
}

fn find_decomposition(w: &[Letter], b: Letter) -> Option<Word> {
    w.iter()
        .skip(1)
        .position(|&l| l == b)
        .map(|i| w[..=i].to_vec())
}

fn is_decomposition(word: &[Letter], u: &[Letter], b: Letter) -> bool {
    word.len() > u.len() && word.starts_with(u) && word[u.len()] == b
}

pub fn certify(
    m: &Morphism,
    b: Letter,
    weights: &WeightVector,
    options: &CertifyOptions,
) -> Result<Certificate, GradingError> {
    weights.check_alphabet(m.alphabet().len())?;
    m.alphabet().check(&[b])?;
    let mut stream = PrefixStream::morphic(m.clone(), b)?;
    let report = analyze_morphism(m);

    let (u, u_source) = match &options.decomposition {
        Some(u) => {
            if u.is_empty() {
                return Err(GradingError::EmptyDecomposition);
            }
            m.alphabet().check(u)?;
            let n = u.len() + 1;
            if is_decomposition(stream.prefix(n)?, u, b) {
                (u.clone(), DecompositionSource::FixedPoint)
            } else if is_decomposition(&shifted_tail_prefix(m, b, n)?, u, b) {
                (u.clone(), DecompositionSource::ShiftedTail)
            } else {
                return Err(GradingError::InvalidDecomposition(m.alphabet().render(u)));
            }
        }
        None => {
            let prefix = stream.prefix(options.horizon)?;
            let u = find_decomposition(prefix, b).ok_or(GradingError::DecompositionNotFound {
                horizon: options.horizon,
            })?;
            (u, DecompositionSource::Automatic)
        }
    };

    let full = gcd_sequence(m, weights, &u, options.j_max)?;
    let cut = full.unit_index().unwrap_or(options.j_max) + 1;
    let gcd = GcdSequence {
        values: full.values[..cut].to_vec(),
        running_gcd: full.running_gcd[..cut].to_vec(),
    };

    let verdict = if !report.primitive {
        Verdict::NotApplicable(Reason::NotPrimitive)
    } else if weights.all_equal() {
        Verdict::NotApplicable(Reason::EqualWeights)
    } else if report.determinant.abs() != 1 {
        Verdict::NotApplicable(Reason::Determinant(report.determinant))
    } else if full.unit_index().is_none() {
        Verdict::NotApplicable(Reason::GcdUndecided {
            j_max: options.j_max,
            gcd: full.running_gcd.last().cloned().unwrap_or_default(),
        })
    } else {
        Verdict::Certified
    };

    Ok(Certificate {
        morphism: m.clone(),
        start: b,
        weights: weights.clone(),
        u,
        u_source,
        gcd,
        determinant: report.determinant,
        primitive: report.primitive,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub difference: u64,
    /// Longest progression per horizon, aligned with [`ScanReport::horizons`].
    pub lengths: Vec<usize>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub weights: Vec<u64>,
    pub horizons: Vec<usize>,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn flagged(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.flagged)
            .map(|r| r.difference)
            .collect()
    }

    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(|r| r.flagged)
    }

    pub fn row(&self, difference: u64) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.difference == difference)
    }
}

/// Growth flag: the last length exceeds 1.5× the first and exceeds 20.
pub fn grows(lengths: &[usize]) -> bool {
    match (lengths.first(), lengths.last()) {
        (Some(&first), Some(&last)) => 2 * last > 3 * first && last > 20,
        _ => false,
    }
}

/// Longest difference-`D` progressions in the weight-sum set, for each
/// `D` in `1..=max_difference` and each horizon.
pub fn graded_nilpotence_scan(
    stream: &mut PrefixStream,
    weights: &WeightVector,
    max_difference: u64,
    horizons: &[usize],
) -> Result<ScanReport, GradingError> {
    if horizons.windows(2).any(|h| h[0] >= h[1]) {
        return Err(GradingError::HorizonsNotIncreasing);
    }
    let largest = horizons.last().copied().unwrap_or(0);
    let all = weight_sum_prefix(stream, weights, largest)?;
    let rows = (1..=max_difference)
        .map(|d| {
            let lengths: Vec<usize> = horizons
                .iter()
                .map(|&h| longest_ap(all.truncated(h), d))
                .collect();
            ScanRow {
                difference: d,
                flagged: grows(&lengths),
                lengths,
            }
        })
        .collect();
    Ok(ScanReport {
        weights: weights.as_slice().to_vec(),
        horizons: horizons.to_vec(),
        rows,
    })
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict.tag())?;
        if let Some(r) = self.reason() {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
