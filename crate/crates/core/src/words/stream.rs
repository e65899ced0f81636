use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{Alphabet, Letter, Morphism, Word, WordError};
use crate::interleave::Interleaver;

/// Where the letters of a right-infinite word come from.
#[derive(Debug, Clone)]
pub enum StreamSource {
    /// Fixed point `lim φ^n(b)` of a morphism prolongable on `b`.
    Morphic {
        morphism: Morphism,
        start: Letter,
        cursor: usize,
    },
    /// `period^∞`.
    Periodic(Word),
    /// Alternating unprimed/primed segments of a base stream.
    Interleaved(Box<Interleaver>),
}

/// Lazily generated prefix of a right-infinite word.
///
/// The prefix of length `n` is the same on every call; extension only ever
/// appends. Extending needs `&mut self`, so a shared `&PrefixStream` always
/// sees a consistent prefix; clone the stream to hand it to another owner.
#[derive(Debug, Clone)]
pub struct PrefixStream {
    alphabet: Alphabet,
    source: StreamSource,
    cache: Word,
}

impl PrefixStream {
    pub fn morphic(morphism: Morphism, start: Letter) -> Result<Self, WordError> {
        morphism.alphabet().check(&[start])?;
        morphism.tail(start)?;
        let cache = morphism.image(start).to_vec();
        Ok(PrefixStream {
            alphabet: morphism.alphabet().clone(),
            source: StreamSource::Morphic {
                morphism,
                start,
                cursor: 1,
            },
            cache,
        })
    }

    pub fn periodic(alphabet: Alphabet, period: Word) -> Result<Self, WordError> {
        alphabet.check(&period)?;
        if period.is_empty() {
            return Err(WordError::FiniteWord { length: 0 });
        }
        Ok(PrefixStream {
            alphabet,
            source: StreamSource::Periodic(period),
            cache: Word::new(),
        })
    }

    pub(crate) fn interleaved(alphabet: Alphabet, source: Interleaver) -> Self {
        PrefixStream {
            alphabet,
            source: StreamSource::Interleaved(Box::new(source)),
            cache: Word::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn source(&self) -> &StreamSource {
        &self.source
    }

    /// Letters generated so far.
    pub fn generated(&self) -> &[Letter] {
        &self.cache
    }

    /// The first `n` letters.
    pub fn prefix(&mut self, n: usize) -> Result<&[Letter], WordError> {
        self.extend_to(n)?;
        Ok(&self.cache[..n])
    }

    /// Owned copy of the first `n` letters.
    pub fn take(&mut self, n: usize) -> Result<Vec<Letter>, WordError> {
        Ok(self.prefix(n)?.to_vec())
    }

    /// The `i`-th letter, 0-based.
    pub fn letter(&mut self, i: usize) -> Result<Letter, WordError> {
        self.extend_to(i + 1)?;
        Ok(self.cache[i])
    }

    fn extend_to(&mut self, n: usize) -> Result<(), WordError> {
        if self.cache.len() >= n {
            return Ok(());
        }
        match &mut self.source {
            StreamSource::Morphic {
                morphism, cursor, ..
            } => {
                // w = φ(w): letter i of w contributes φ(w[i]) to the prefix.
                while self.cache.len() < n {
                    if *cursor >= self.cache.len() {
                        return Err(WordError::FiniteWord {
                            length: self.cache.len(),
                        });
                    }
                    let letter = self.cache[*cursor];
                    self.cache.extend_from_slice(morphism.image(letter));
                    *cursor += 1;
                }
            }
            StreamSource::Periodic(period) => {
                while self.cache.len() < n {
                    let i = self.cache.len() % period.len();
                    self.cache.push(period[i]);
                }
            }
            StreamSource::Interleaved(source) => source.extend(&mut self.cache, n)?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn prefixes_are_stable() {
        let m = Morphism::from_strs("xy", &["xy", "yyx"]).unwrap();
        let mut s = PrefixStream::morphic(m.clone(), 0).unwrap();
        let long = s.take(500).unwrap();
        let mut fresh = PrefixStream::morphic(m, 0).unwrap();
        for n in [0, 1, 2, 3, 17, 499] {
            assert_eq!(fresh.prefix(n).unwrap(), &long[..n]);
        }
    }

    #[test]
    fn periodic_stream() {
        let xy = Alphabet::from_chars("xy").unwrap();
        let mut s = PrefixStream::periodic(xy, vec![0, 1]).unwrap();
        assert_eq!(s.take(5).unwrap(), vec![0, 1, 0, 1, 0]);
        assert_eq!(s.letter(7).unwrap(), 1);
    }

    #[test]
    fn mortal_letters_in_fixed_point() {
        // x -> xzy, y -> ε, z -> xz: z is immortal, y is mortal
        let m = Morphism::from_strs("xyz", &["xzy", "_", "xz"]).unwrap();
        let mut s = PrefixStream::morphic(m.clone(), 0).unwrap();
        let w = s.take(200).unwrap();
        let image = m.apply(&w[..50]);
        assert_eq!(&image[..], &w[..image.len()]);
    }
}
