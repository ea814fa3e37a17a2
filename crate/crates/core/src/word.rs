//! Freely reduced words over named generators. A word is a sequence of
//! syllables (generator, nonzero exponent); adjacent syllables always carry
//! distinct generators.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(String, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn generator(label: impl Into<String>) -> Self {
        Word { syllables: vec![(label.into(), 1)] }
    }

    /// Builds a word from raw syllables, freely reducing as it goes.
    /// Exponent arithmetic is checked; overflow is reported as an error.
    pub fn from_syllables<I, S>(syllables: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut w = Word::identity();
        for (gen, exp) in syllables {
            w.push(gen.into(), exp)?;
        }
        Ok(w)
    }

    /// Appends `gen^exp`, merging with the trailing syllable if it has the
    /// same generator.
    pub fn push(&mut self, gen: String, exp: i64) -> Result<()> {
        if exp == 0 {
            return Ok(());
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == gen {
                let merged = last.1.checked_add(exp).ok_or(Error::ExponentOverflow)?;
                if merged == 0 {
                    self.syllables.pop();
                } else {
                    last.1 = merged;
                }
                return Ok(());
            }
        }
        self.syllables.push((gen, exp));
        Ok(())
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|(g, e)| (g.clone(), -e))
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut out = self.clone();
        for (g, e) in &other.syllables {
            out.push(g.clone(), *e)?;
        }
        Ok(out)
    }

    /// `self` raised to an integer power (negative powers invert).
    pub fn pow(&self, exp: i64) -> Result<Word> {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.concat(&base)?;
        }
        Ok(out)
    }

    /// The commutator `[u, v] = u^-1 v^-1 u v` of two generators.
    pub fn commutator(u: &str, v: &str) -> Word {
        Word::from_syllables([(u, -1), (v, -1), (u, 1), (v, 1)])
            .expect("commutator of two generators cannot overflow")
    }

    /// Conjugate `base^by = by^-1 · base · by`.
    pub fn conjugation(base: &Word, by: &Word) -> Result<Word> {
        by.inverse().concat(base)?.concat(by)
    }

    /// Total exponent of `gen` across the word (the abelianized image).
    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.syllables
            .iter()
            .filter(|(g, _)| g == gen)
            .map(|(_, e)| e)
            .sum()
    }

    /// Single-letter expansion: `x^-2 y` yields `(x,-1), (x,-1), (y,1)`.
    pub fn letters(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.syllables.iter().flat_map(|(g, e)| {
            let sign = if *e < 0 { -1 } else { 1 };
            std::iter::repeat_n((g.as_str(), sign), e.unsigned_abs() as usize)
        })
    }

    /// Substitutes a word for every occurrence of one generator.
    pub fn substitute(&self, gen: &str, replacement: &Word) -> Result<Word> {
        let mut out = Word::identity();
        for (g, e) in &self.syllables {
            if g == gen {
                out = out.concat(&replacement.pow(*e)?)?;
            } else {
                out.push(g.clone(), *e)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_merges_and_cancels() {
        let w = Word::from_syllables([("a", 2), ("a", -1), ("b", 1), ("b", -1), ("a", 1)]).unwrap();
        assert_eq!(w.syllables(), [("a".to_string(), 2)]);
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let w = Word::from_syllables([("a", 2), ("b", -1)]).unwrap();
        assert_eq!(
            w.inverse().syllables(),
            [("b".to_string(), 1), ("a".to_string(), -2)]
        );
        assert!(w.concat(&w.inverse()).unwrap().is_identity());
    }

    #[test]
    fn commutator_has_zero_exponent_sums() {
        let c = Word::commutator("u", "v");
        assert_eq!(c.exponent_sum("u"), 0);
        assert_eq!(c.exponent_sum("v"), 0);
        assert_eq!(c.letter_len(), 4);
    }

    #[test]
    fn letters_expand_exponents() {
        let w = Word::from_syllables([("x", -2), ("y", 1)]).unwrap();
        let letters: Vec<(String, i64)> =
            w.letters().map(|(g, s)| (g.to_string(), s)).collect();
        assert_eq!(
            letters,
            [("x".into(), -1), ("x".into(), -1), ("y".into(), 1)]
        );
    }

    #[test]
    fn substitution_reduces() {
        let w = Word::from_syllables([("x", 1), ("y", 1)]).unwrap();
        let r = Word::from_syllables([("y", -1)]).unwrap();
        assert!(w.substitute("x", &r).unwrap().is_identity());
    }

    #[test]
    fn overflow_is_reported() {
        let mut w = Word::from_syllables([("a", i64::MAX)]).unwrap();
        assert_eq!(w.push("a".into(), 1), Err(Error::ExponentOverflow));
    }

    #[test]
    fn display_is_compact() {
        let w = Word::from_syllables([("x", -1), ("y", 2), ("z", 1)]).unwrap();
        assert_eq!(w.to_string(), "x^-1 y^2 z");
        assert_eq!(Word::identity().to_string(), "1");
    }
}
