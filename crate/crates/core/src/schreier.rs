//! Reidemeister-Schreier rewriting for the kernel of a surjective mod-p
//! character: a presentation of the index-p subgroup on Schreier generators
//! over the transversal g^0, ..., g^(p-1) of the first generator g with a
//! nonzero residue.
//!
//! The output is the raw rewriting: p*n - (p-1) generators (the freely
//! trivial Schreier generators are dropped) and each original relator
//! rewritten once per coset. Combine with [`crate::presentation::tietze_reduce`]
//! for a cleaned-up presentation.

use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, ModPCharacter};
use crate::word::Word;

/// Transversal sizes are fenced: rewriting materializes p*n generators.
const MAX_TRANSVERSAL: u64 = 4096;

fn mod_inverse(x: u64, p: u64) -> u64 {
    // p prime, x a unit: x^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = x % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

struct Rewriter<'a> {
    pres: &'a GroupPresentation,
    chi: &'a ModPCharacter,
    p: u64,
    base: usize,
    inv_base_residue: u64,
}

impl<'a> Rewriter<'a> {
    /// Transversal index reached from index `i` by multiplying with
    /// `gen^sign`.
    fn step(&self, i: u64, gen: &str, sign: i64) -> u64 {
        let delta = self.chi.residue(gen).expect("character is total") % self.p;
        let shift = (delta as u128 * self.inv_base_residue as u128 % self.p as u128) as u64;
        if sign >= 0 {
            (i + shift) % self.p
        } else {
            (i + self.p - shift) % self.p
        }
    }

    /// The Schreier generator g^i * gen * (g^i')^-1 is freely trivial
    /// exactly when `gen` is the base generator and no wrap-around occurs.
    fn is_trivial(&self, gen_idx: usize, i: u64) -> bool {
        gen_idx == self.base && i < self.p - 1
    }

    fn name(&self, gen_idx: usize, i: u64) -> String {
        format!("{}_{}", self.pres.generators()[gen_idx], i)
    }

    fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for gen_idx in 0..self.pres.generator_count() {
            for i in 0..self.p {
                if !self.is_trivial(gen_idx, i) {
                    names.push(self.name(gen_idx, i));
                }
            }
        }
        names
    }

    /// Rewrites one relator starting from transversal index `start`.
    fn rewrite(&self, relator: &Word, start: u64) -> Result<Word> {
        let mut out = Word::identity();
        let mut cur = start;
        for (gen, sign) in relator.letters() {
            let gen_idx = self
                .pres
                .generators()
                .iter()
                .position(|g| g == gen)
                .expect("relators use declared generators");
            if sign >= 0 {
                if !self.is_trivial(gen_idx, cur) {
                    out.push(self.name(gen_idx, cur), 1)?;
                }
                cur = self.step(cur, gen, 1);
            } else {
                let source = self.step(cur, gen, -1);
                if !self.is_trivial(gen_idx, source) {
                    out.push(self.name(gen_idx, source), -1)?;
                }
                cur = source;
            }
        }
        debug_assert_eq!(cur, start, "a relator must return to its starting coset");
        Ok(out)
    }
}

fn make_rewriter<'a>(
    pres: &'a GroupPresentation,
    chi: &'a ModPCharacter,
) -> Result<Rewriter<'a>> {
    chi.validate_on(pres)?;
    if !chi.is_surjective() {
        return Err(Error::NonSurjectiveCharacter);
    }
    if chi.p > MAX_TRANSVERSAL {
        return Err(Error::InvalidCharacter(format!(
            "prime {} exceeds the rewriting fence of {MAX_TRANSVERSAL}",
            chi.p
        )));
    }
    let base = pres
        .generators()
        .iter()
        .position(|g| chi.residue(g).is_some_and(|r| r % chi.p != 0))
        .expect("surjective character has a generator with nonzero residue");
    Ok(Rewriter {
        pres,
        chi,
        p: chi.p,
        base,
        inv_base_residue: mod_inverse(chi.residue(&pres.generators()[base]).unwrap(), chi.p),
    })
}

/// Presentation of ker(chi) on Schreier generators. The character must be
/// valid on `pres` and surjective.
pub fn reidemeister_schreier(
    pres: &GroupPresentation,
    chi: &ModPCharacter,
) -> Result<GroupPresentation> {
    let rewriter = make_rewriter(pres, chi)?;
    let names = rewriter.generator_names();
    let mut relators = Vec::new();
    for relator in pres.relators() {
        for start in 0..chi.p {
            let rewritten = rewriter.rewrite(relator, start)?;
            if !rewritten.is_identity() {
                relators.push(rewritten);
            }
        }
    }
    GroupPresentation::new(names, relators)
}

/// The Schreier generators as words in the ambient group: each kernel
/// generator named `x_i` is the element g^i x g^-i' for the base generator
/// g and the follower transversal index i'.
pub fn schreier_generator_words(
    pres: &GroupPresentation,
    chi: &ModPCharacter,
) -> Result<Vec<(String, Word)>> {
    let rewriter = make_rewriter(pres, chi)?;
    let base_label = pres.generators()[rewriter.base].clone();
    let mut out = Vec::new();
    for (gen_idx, gen) in pres.generators().iter().enumerate() {
        for i in 0..chi.p {
            if rewriter.is_trivial(gen_idx, i) {
                continue;
            }
            let follower = rewriter.step(i, gen, 1);
            let word = Word::from_syllables([
                (base_label.clone(), i as i64),
                (gen.clone(), 1),
                (base_label.clone(), -(follower as i64)),
            ])?;
            out.push((rewriter.name(gen_idx, i), word));
        }
    }
    Ok(out)
}
