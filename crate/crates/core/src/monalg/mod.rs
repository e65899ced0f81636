//! Monomial quotient algebras `k⟨Σ⟩/I` with `I` spanned by a set of zero
//! monomials, and exact polynomial arithmetic in them.

mod linalg;
mod poly;

pub use linalg::{linear_independence, Independence};
pub use poly::{int, Monomial, NcPolynomial};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::grading::WeightVector;
use crate::words::{find_cube, Alphabet, Letter, PrefixStream, SuffixAutomaton, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonalgError {
    Word(WordError),
    /// Pattern symbol with no assigned polynomial.
    UnassignedSymbol {
        symbol: usize,
        assigned: usize,
    },
    ZeroGenerator(usize),
    EmptyMonomial,
    UnsupportedRule(&'static str),
    WeightCount {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for MonalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonalgError::Word(e) => e.fmt(f),
            MonalgError::UnassignedSymbol { symbol, assigned } => {
                write!(
                    f,
                    "pattern symbol {symbol} has no assignment ({assigned} given)"
                )
            }
            MonalgError::ZeroGenerator(i) => write!(f, "generator {i} is zero in this view"),
            MonalgError::EmptyMonomial => write!(f, "monomial must be nonempty"),
            MonalgError::UnsupportedRule(rule) => {
                write!(f, "operation not available for the {rule} rule")
            }
            MonalgError::WeightCount { expected, found } => {
                write!(f, "expected {expected} weights, found {found}")
            }
        }
    }
}

impl From<WordError> for MonalgError {
    fn from(e: WordError) -> Self {
        MonalgError::Word(e)
    }
}

/// Which monomials are zero.
#[derive(Debug, Clone)]
pub enum ZeroRule {
    /// Nonzero iff the monomial is a factor of the first `horizon` letters
    /// of a word.
    Factors {
        automaton: SuffixAutomaton,
        horizon: usize,
    },
    /// Zero iff the monomial contains a cube `uuu`, `u` nonempty.
    Cubes,
    /// Zero iff the monomial contains one of the listed words.
    Forbidden(Vec<Word>),
    Free,
}

impl ZeroRule {
    pub fn tag(&self) -> &'static str {
        match self {
            ZeroRule::Factors { .. } => "factors",
            ZeroRule::Cubes => "cubes",
            ZeroRule::Forbidden(_) => "forbidden",
            ZeroRule::Free => "free",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialStatus {
    Nonzero,
    Zero,
    /// Not seen within the horizon; treated as zero.
    Unseen,
}

impl MonomialStatus {
    pub fn is_nonzero(self) -> bool {
        self == MonomialStatus::Nonzero
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraView {
    alphabet: Alphabet,
    rule: ZeroRule,
}

impl AlgebraView {
    /// The iterative algebra of a word, as seen through a finite prefix.
    pub fn factors_of(stream: &mut PrefixStream, horizon: usize) -> Result<Self, MonalgError> {
        let alphabet = stream.alphabet().clone();
        let automaton = SuffixAutomaton::new(stream.prefix(horizon)?, alphabet.len());
        Ok(AlgebraView {
            alphabet,
            rule: ZeroRule::Factors { automaton, horizon },
        })
    }

    pub fn cube_free(alphabet: Alphabet) -> Self {
        AlgebraView {
            alphabet,
            rule: ZeroRule::Cubes,
        }
    }

    pub fn forbidding(alphabet: Alphabet, patterns: Vec<Word>) -> Result<Self, MonalgError> {
        for p in &patterns {
            alphabet.check(p)?;
        }
        Ok(AlgebraView {
            alphabet,
            rule: ZeroRule::Forbidden(patterns),
        })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        AlgebraView {
            alphabet,
            rule: ZeroRule::Free,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rule(&self) -> &ZeroRule {
        &self.rule
    }

    pub fn status(&self, m: &[Letter]) -> MonomialStatus {
        let zero = match &self.rule {
            ZeroRule::Factors { automaton, .. } => {
                return if automaton.contains(m) {
                    MonomialStatus::Nonzero
                } else {
                    MonomialStatus::Unseen
                };
            }
            ZeroRule::Cubes => find_cube(m).is_some(),
            ZeroRule::Forbidden(ps) => ps.iter().any(|p| contains_factor(m, p)),
            ZeroRule::Free => false,
        };
        if zero {
            MonomialStatus::Zero
        } else {
            MonomialStatus::Nonzero
        }
    }

    pub fn is_zero_monomial(&self, m: &[Letter]) -> bool {
        !self.status(m).is_nonzero()
    }

    /// Drops zero monomials. Dropping an unseen monomial marks the result
    /// as horizon-qualified.
    pub fn reduce(&self, p: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial {
            terms: BTreeMap::new(),
            horizon_qualified: p.horizon_qualified,
        };
        for (m, c) in &p.terms {
            match self.status(&m.0) {
                MonomialStatus::Nonzero => {
                    out.terms.insert(m.clone(), c.clone());
                }
                MonomialStatus::Unseen => out.horizon_qualified = true,
                MonomialStatus::Zero => {}
            }
        }
        out
    }

    pub fn multiply(&self, p: &NcPolynomial, q: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        out.horizon_qualified = p.horizon_qualified || q.horizon_qualified;
        let mut buf = Word::new();
        for (a, ca) in &p.terms {
            for (b, cb) in &q.terms {
                buf.clear();
                buf.extend_from_slice(&a.0);
                buf.extend_from_slice(&b.0);
                match self.status(&buf) {
                    MonomialStatus::Nonzero => out.add_term(&buf, ca * cb),
                    MonomialStatus::Unseen => out.horizon_qualified = true,
                    MonomialStatus::Zero => {}
                }
            }
        }
        out
    }

    /// Image of a word over abstract symbols `0..assignment.len()` under
    /// the assignment, reduced after every factor.
    pub fn substitute(
        &self,
        pattern: &[usize],
        assignment: &[NcPolynomial],
    ) -> Result<NcPolynomial, MonalgError> {
        let mut out = self.reduce(&NcPolynomial::one());
        for &s in pattern {
            let p = assignment.get(s).ok_or(MonalgError::UnassignedSymbol {
                symbol: s,
                assigned: assignment.len(),
            })?;
            out = self.multiply(&out, p);
        }
        Ok(out)
    }

    pub fn linear_independence(&self, ps: &[NcPolynomial]) -> Independence {
        let reduced: Vec<NcPolynomial> = ps.iter().map(|p| self.reduce(p)).collect();
        linear_independence(&reduced)
    }
}

fn contains_factor(word: &[Letter], pattern: &[Letter]) -> bool {
    pattern.is_empty() || word.windows(pattern.len()).any(|w| w == pattern)
}

/// All words over `0..symbols` of length `≤ max_len`, by length then lex.
pub fn patterns(symbols: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * symbols);
        for p in &layer {
            for s in 0..symbols {
                let mut q = p.clone();
                q.push(s);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependency {
    pub patterns: Vec<Vec<usize>>,
    pub coefficients: Vec<BigRational>,
}

impl Dependency {
    /// Terms `(pattern, coefficient)` with nonzero coefficient.
    pub fn relation(&self) -> impl Iterator<Item = (&[usize], &BigRational)> {
        self.patterns
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p.as_slice(), c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub generators: Vec<NcPolynomial>,
    pub max_len: usize,
    pub patterns_tested: usize,
    pub rank: usize,
    pub dependency: Option<Dependency>,
    /// Some monomial was dropped only for being unseen within the horizon.
    pub horizon_qualified: bool,
}

impl FreenessReport {
    pub fn independent(&self) -> bool {
        self.dependency.is_none()
    }
}

/// Tests whether the images of all patterns of length `≤ max_len` over the
/// generators are linearly independent.
///
/// Treating unseen monomials as zero projects onto a subset of the basis,
/// which can hide independence but never invent it.
pub fn freeness_check(
    view: &AlgebraView,
    generators: &[NcPolynomial],
    max_len: usize,
) -> Result<FreenessReport, MonalgError> {
    let gens: Vec<NcPolynomial> = generators.iter().map(|g| view.reduce(g)).collect();
    if let Some(i) = gens.iter().position(NcPolynomial::is_zero) {
        return Err(MonalgError::ZeroGenerator(i));
    }
    let pats = patterns(gens.len(), max_len);
    let images = pats
        .iter()
        .map(|p| view.substitute(p, &gens))
        .collect::<Result<Vec<_>, _>>()?;
    let horizon_qualified = images.iter().any(NcPolynomial::horizon_qualified);
    let result = linear_independence(&images);
    let patterns_tested = pats.len();
    let dependency = result.dependency.map(|coefficients| Dependency {
        patterns: pats,
        coefficients,
    });
    Ok(FreenessReport {
        generators: gens,
        max_len,
        patterns_tested,
        rank: result.rank,
        dependency,
        horizon_qualified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotenceAnswer {
    /// Smallest `k ≤ k_max` with `mᵏ = 0`.
    pub index: Option<usize>,
    pub horizon_qualified: bool,
}

pub fn is_nilpotent_monomial(
    view: &AlgebraView,
    m: &[Letter],
    k_max: usize,
) -> Result<NilpotenceAnswer, MonalgError> {
    if m.is_empty() {
        return Err(MonalgError::EmptyMonomial);
    }
    view.alphabet.check(m)?;
    let mut power = Word::new();
    for k in 1..=k_max {
        power.extend_from_slice(m);
        match view.status(&power) {
            MonomialStatus::Nonzero => {}
            s => {
                return Ok(NilpotenceAnswer {
                    index: Some(k),
                    horizon_qualified: s == MonomialStatus::Unseen,
                })
            }
        }
    }
    Ok(NilpotenceAnswer {
        index: None,
        horizon_qualified: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertValue {
    pub degree: u64,
    pub dimension: u64,
    pub horizon_qualified: bool,
}

/// Number of nonzero monomials of weight exactly `n`.
pub fn hilbert_function(
    view: &AlgebraView,
    weights: &WeightVector,
    n: u64,
) -> Result<HilbertValue, MonalgError> {
    let d = view.alphabet.len();
    if weights.len() != d {
        return Err(MonalgError::WeightCount {
            expected: d,
            found: weights.len(),
        });
    }
    let p = weights.as_slice();
    let (dimension, horizon_qualified) = match &view.rule {
        ZeroRule::Factors { automaton, .. } => {
            (count_in_automaton(automaton, automaton.root(), p, n), true)
        }
        ZeroRule::Cubes | ZeroRule::Forbidden(_) => {
            let mut word = Word::new();
            (count_avoiding(view, &mut word, p, n), false)
        }
        ZeroRule::Free => return Err(MonalgError::UnsupportedRule("free")),
    };
    Ok(HilbertValue {
        degree: n,
        dimension,
        horizon_qualified,
    })
}

/// `Σ_{k ≤ n}` of the Hilbert function.
pub fn cumulative_hilbert(
    view: &AlgebraView,
    weights: &WeightVector,
    n: u64,
) -> Result<u64, MonalgError> {
    (0..=n)
        .map(|k| hilbert_function(view, weights, k).map(|h| h.dimension))
        .sum()
}

fn count_in_automaton(sa: &SuffixAutomaton, state: u32, p: &[u64], remaining: u64) -> u64 {
    if remaining == 0 {
        return 1;
    }
    (0..p.len())
        .filter(|&c| p[c] <= remaining)
        .filter_map(|c| sa.step(state, c as Letter).map(|s| (s, p[c])))
        .map(|(s, w)| count_in_automaton(sa, s, p, remaining - w))
        .sum()
}

fn count_avoiding(view: &AlgebraView, word: &mut Word, p: &[u64], remaining: u64) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for c in 0..p.len() {
        if p[c] > remaining {
            continue;
        }
        word.push(c as Letter);
        // only the new suffix can create a forbidden factor
        if !zero_suffix(view, word) {
            total += count_avoiding(view, word, p, remaining - p[c]);
        }
        word.pop();
    }
    total
}

fn zero_suffix(view: &AlgebraView, word: &[Letter]) -> bool {
    match &view.rule {
        ZeroRule::Cubes => (1..=word.len() / 3).any(|q| {
            let n = word.len();
            word[n - 3 * q..n - 2 * q] == word[n - 2 * q..n - q]
                && word[n - 2 * q..n - q] == word[n - q..]
        }),
        ZeroRule::Forbidden(ps) => ps.iter().any(|f| word.ends_with(f)),
        _ => view.is_zero_monomial(word),
    }
}
