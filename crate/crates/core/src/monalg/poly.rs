use alloc::collections::BTreeMap;
use alloc::string::String;

use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::words::{Alphabet, Letter, Word};

/// A word used as a basis element, ordered by length and then
/// lexicographically in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Word);

impl Monomial {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&[Letter]> for Monomial {
    fn from(w: &[Letter]) -> Self {
        Monomial(w.to_vec())
    }
}

/// Noncommutative polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. `horizon_qualified` is set when a
/// reduction dropped a monomial only because it was not seen within a
/// finite horizon.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    pub(crate) terms: BTreeMap<Monomial, BigRational>,
    pub(crate) horizon_qualified: bool,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(&[], BigRational::one())
    }

    pub fn monomial(word: &[Letter], coefficient: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coefficient);
        p
    }

    /// Sum of the given words with unit coefficients.
    pub fn from_words(words: &[&[Letter]]) -> Self {
        let mut p = Self::zero();
        for w in words {
            p.add_term(w, BigRational::one());
        }
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, C)>,
        C: Into<BigRational>,
    {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(&w, c.into());
        }
        p
    }

    pub fn add_term(&mut self, word: &[Letter], coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let key = Monomial(word.to_vec());
        let sum = match self.terms.remove(&key) {
            Some(c) => c + coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn horizon_qualified(&self) -> bool {
        self.horizon_qualified
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.letters(), c))
    }

    pub fn support(&self) -> impl Iterator<Item = &[Letter]> {
        self.terms.keys().map(Monomial::letters)
    }

    pub fn coefficient(&self, word: &[Letter]) -> BigRational {
        self.terms
            .get(&Monomial(word.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Length of the longest monomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::len)
    }

    /// All monomials have the same length.
    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Monomial::len);
        match lens.next() {
            Some(first) => lens.all(|l| l == first),
            None => true,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(&m.0, c.clone());
        }
        out.horizon_qualified |= other.horizon_qualified;
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return NcPolynomial {
                terms: BTreeMap::new(),
                horizon_qualified: self.horizon_qualified,
            };
        }
        NcPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
            horizon_qualified: self.horizon_qualified,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Writes `3*xy + -1*yx + 1*`; the zero polynomial is `0`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}*{}", render_rational(c), alphabet.render(&m.0));
        }
        out
    }
}

pub(crate) fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        alloc::format!("{}", c.numer())
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

/// Integer coefficient helper.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
