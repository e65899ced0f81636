use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Alphabet, IntMatrix, Letter, PrefixStream, Word, WordError};

/// Monoid endomorphism of a free monoid, given by the image of each letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != alphabet.len() {
            return Err(WordError::ImageCount {
                expected: alphabet.len(),
                found: images.len(),
            });
        }
        for image in &images {
            alphabet.check(image)?;
        }
        Ok(Morphism { alphabet, images })
    }

    /// Builds a morphism on single-character letters, e.g.
    /// `Morphism::from_strs("xy", &["xy", "yyx"])`. `_` is the empty image.
    pub fn from_strs(letters: &str, images: &[&str]) -> Result<Self, WordError> {
        let alphabet = Alphabet::from_chars(letters)?;
        let images = images
            .iter()
            .map(|s| alphabet.parse_word(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        word.iter()
            .flat_map(|&l| self.image(l).iter().copied())
            .collect()
    }

    pub fn iterate(&self, word: &[Letter], times: usize) -> Word {
        let mut w = word.to_vec();
        for _ in 0..times {
            w = self.apply(&w);
        }
        w
    }

    /// Letters `a` with `φ^j(a) = ε` for some `j`.
    pub fn mortal_letters(&self) -> Vec<Letter> {
        let d = self.alphabet.len();
        let mut mortal = alloc::vec![false; d];
        loop {
            let mut changed = false;
            for a in 0..d {
                if !mortal[a] && self.images[a].iter().all(|&l| mortal[l as usize]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..d).filter(|&a| mortal[a]).map(|a| a as Letter).collect()
    }

    /// `φ(b) = b·t` with `t` containing at least one immortal letter.
    pub fn is_prolongable_on(&self, b: Letter) -> bool {
        let image = self.image(b);
        if image.first() != Some(&b) {
            return false;
        }
        let mortal = self.mortal_letters();
        image[1..].iter().any(|l| !mortal.contains(l))
    }

    /// The tail `t` of `φ(b) = b·t`, if the morphism is prolongable on `b`.
    pub fn tail(&self, b: Letter) -> Result<&[Letter], WordError> {
        if self.is_prolongable_on(b) {
            Ok(&self.image(b)[1..])
        } else {
            Err(WordError::NotProlongable {
                letter: self.alphabet.symbol(b).to_string(),
            })
        }
    }

    /// Writes the morphism as `x -> xy; y -> yyx`.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            out.push_str(self.alphabet.symbol(i as Letter));
            out.push_str(" -> ");
            if image.is_empty() {
                out.push('_');
            } else {
                out.push_str(&self.alphabet.render(image));
            }
        }
        out
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Entry `(i, j)` counts occurrences of letter `i` in `φ(letter j)`.
pub fn incidence_matrix(m: &Morphism) -> IntMatrix {
    let d = m.alphabet().len();
    let mut out = IntMatrix::zeros(d, d);
    for j in 0..d {
        for &l in m.image(j as Letter) {
            out[(l as usize, j)] += 1;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub mortal: Vec<Letter>,
    pub prolongable: Vec<Letter>,
    pub primitive: bool,
    pub incidence: IntMatrix,
    pub determinant: i128,
}

pub fn analyze_morphism(m: &Morphism) -> MorphismReport {
    let incidence = incidence_matrix(m);
    let d = m.alphabet().len();
    // b occurs in φ^n(a) for some n ≥ 1 iff there is a path a -> b of length
    // n in the incidence graph; simple paths and cycles have length ≤ d.
    let reach = incidence.reachability(d);
    let primitive = reach.iter().all(|row| row.iter().all(|&r| r));
    MorphismReport {
        mortal: m.mortal_letters(),
        prolongable: m
            .alphabet()
            .letters()
            .filter(|&b| m.is_prolongable_on(b))
            .collect(),
        primitive,
        determinant: incidence.determinant(),
        incidence,
    }
}

/// First `n` letters of the fixed point `lim φ^k(b)`.
pub fn fixed_point_prefix(m: &Morphism, b: Letter, n: usize) -> Result<Word, WordError> {
    let mut stream = PrefixStream::morphic(m.clone(), b)?;
    Ok(stream.prefix(n)?.to_vec())
}
