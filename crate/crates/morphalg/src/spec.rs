//! Morphism spec files.
//!
//! ```text
//! x y
//! x -> xy
//! y -> yyx
//! weights: 1 2
//! ```
//!
//! Line 1 lists the letters. Each letter then gets one `a -> image` line,
//! where `_` is the empty image. `weights:` is optional. Blank lines and
//! lines starting with `#` are skipped.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use morphalg_core::words::{Alphabet, Morphism, Word};
use morphalg_core::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    pub morphism: Morphism,
    pub weights: Option<WeightVector>,
}

pub fn read_spec(path: &Path) -> Result<MorphismSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_spec(text: &str) -> Result<MorphismSpec> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| anyhow!("empty spec"))?;
    let alphabet = Alphabet::new(header.split_whitespace()).map_err(|e| anyhow!("{e}"))?;
    let mut images: Vec<Option<Word>> = vec![None; alphabet.len()];
    let mut weights = None;

    for (no, line) in lines {
        let line_no = no + 1;
        if let Some(rest) = line.strip_prefix("weights:") {
            let values = parse_weights(rest.split_whitespace())
                .with_context(|| format!("line {line_no}"))?;
            weights = Some(values);
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| anyhow!("line {line_no}: expected `letter -> image`"))?;
        let letter = alphabet
            .letter(lhs.trim())
            .ok_or_else(|| anyhow!("line {line_no}: unknown letter `{}`", lhs.trim()))?;
        let slot = &mut images[letter as usize];
        if slot.is_some() {
            bail!("line {line_no}: second rule for `{}`", lhs.trim());
        }
        *slot = Some(
            alphabet
                .parse_word(rhs)
                .map_err(|e| anyhow!("line {line_no}: {e}"))?,
        );
    }

    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| anyhow!("no rule for `{}`", alphabet.symbol(i as u8))))
        .collect::<Result<Vec<_>>>()?;
    let morphism = Morphism::new(alphabet, images).map_err(|e| anyhow!("{e}"))?;
    if let Some(w) = &weights {
        if w.len() != morphism.alphabet().len() {
            bail!(
                "{} weights for {} letters",
                w.len(),
                morphism.alphabet().len()
            );
        }
    }
    Ok(MorphismSpec { morphism, weights })
}

/// Parses positive integers separated by commas or whitespace.
pub fn parse_weights<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<WeightVector> {
    let values = items
        .into_iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .with_context(|| format!("bad weight `{s}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(values).map_err(|e| anyhow!("{e}"))
}
