//! Finitely presented (pro-p) groups: presentations, mod-p characters,
//! abelianization over the integers, and Tietze simplification.
//!
//! Abelianization strategy: linearize relators to an integer exponent
//! matrix, diagonalize exactly with the Smith normal form, then read the
//! pro-p invariants off the p-adic valuations of the invariant factors. A
//! factor that is a unit in Z_p (valuation 0) contributes nothing; each
//! factor of valuation k contributes a Z/p^k summand; the cokernel's free
//! part survives completion unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::snf::{smith_normal_form, IntMatrix};
use crate::word::Word;

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A group presentation: ordered generators and freely reduced relator
/// words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new<G>(generators: G, relators: Vec<Word>) -> Result<Self>
    where
        G: IntoIterator,
        G::Item: Into<String>,
    {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(Error::InvalidPresentation(format!("duplicate generator {g}")));
            }
        }
        for r in &relators {
            for (g, _) in r.syllables() {
                if !seen.contains(g) {
                    return Err(Error::UndeclaredGenerator(g.clone()));
                }
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Parses the presentation JSON format. Relators are either a syllable
    /// array `[["a",1],["b",-2]]` or the commutator shorthand `"[a,b]"`
    /// (expanded as `a^-1 b^-1 a b`). An exponent may also be a symbolic
    /// multiple of the prime, like `"p"`, `"-p"` or `"2p"`; those require
    /// `prime` to be supplied and are instantiated on the spot.
    pub fn parse_json(text: &str, prime: Option<u64>) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidPresentation("expected a JSON object".into()))?;
        let generators: Vec<String> = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidPresentation("missing \"generators\" array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidPresentation("generator is not a string".into()))
            })
            .collect::<Result<_>>()?;
        let relators_json = obj
            .get("relators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidPresentation("missing \"relators\" array".into()))?;
        let mut relators = Vec::with_capacity(relators_json.len());
        for rel in relators_json {
            relators.push(parse_relator(rel, prime)?);
        }
        GroupPresentation::new(generators, relators)
    }

    /// Byte-stable JSON rendering with fully expanded syllable lists.
    pub fn to_json_string(&self) -> String {
        let doc = PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|w| w.syllables().iter().map(|(g, e)| (g.clone(), *e)).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("presentation serialization cannot fail")
    }
}

#[derive(Serialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

pub(crate) fn parse_exponent(v: &Value, prime: Option<u64>) -> Result<i64> {
    if let Some(n) = v.as_i64() {
        return Ok(n);
    }
    if let Some(s) = v.as_str() {
        let body = s.strip_suffix('p').ok_or_else(|| {
            Error::InvalidPresentation(format!("bad exponent {s:?}: expected an integer or '<k>p'"))
        })?;
        let coefficient: i64 = match body {
            "" => 1,
            "-" => -1,
            other => other
                .parse()
                .map_err(|_| Error::InvalidPresentation(format!("bad exponent {s:?}")))?,
        };
        let p = prime.ok_or_else(|| {
            Error::InvalidPresentation(format!(
                "exponent {s:?} is symbolic in p but no prime was supplied"
            ))
        })?;
        return coefficient
            .checked_mul(p as i64)
            .ok_or(Error::ExponentOverflow);
    }
    Err(Error::InvalidPresentation(format!("bad exponent {v}")))
}

fn parse_relator(v: &Value, prime: Option<u64>) -> Result<Word> {
    if let Some(s) = v.as_str() {
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidPresentation(format!("bad relator shorthand {s:?}"))
            })?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidPresentation(format!(
                "bad commutator shorthand {s:?}: expected \"[a,b]\""
            )));
        }
        return Ok(Word::commutator(parts[0], parts[1]));
    }
    let syllables = v
        .as_array()
        .ok_or_else(|| Error::InvalidPresentation(format!("bad relator {v}")))?;
    let mut word = Word::identity();
    for syl in syllables {
        let pair = syl
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidPresentation(format!("bad syllable {syl}")))?;
        let gen = pair[0]
            .as_str()
            .ok_or_else(|| Error::InvalidPresentation(format!("bad syllable {syl}")))?;
        let exp = parse_exponent(&pair[1], prime)?;
        word.push(gen.to_string(), exp)?;
    }
    Ok(word)
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// The right-angled Artin pro-p presentation of a graph: one generator per
/// vertex, one commutator per edge with endpoints in the global vertex
/// order.
pub fn raag_presentation(g: &SimplicialGraph) -> GroupPresentation {
    let relators = g
        .edges_idx()
        .map(|(u, v)| Word::commutator(g.label(u), g.label(v)))
        .collect();
    GroupPresentation::new(g.labels().to_vec(), relators)
        .expect("graph vertices are distinct and edges use declared vertices")
}

/// A homomorphism to Z/p given by generator residues. Validity (p prime,
/// totality, relators mapping to zero) is checked against a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPCharacter {
    pub p: u64,
    pub assignments: BTreeMap<String, u64>,
}

impl ModPCharacter {
    pub fn new<I, S>(p: u64, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let assignments = assignments
            .into_iter()
            .map(|(g, r)| (g.into(), r.rem_euclid(p as i64) as u64))
            .collect();
        Ok(ModPCharacter { p, assignments })
    }

    /// Parses `{"p":3,"assignments":{"x":1,...}}`; residues are reduced
    /// mod p.
    pub fn parse_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidCharacter("expected a JSON object".into()))?;
        let p = obj
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidCharacter("missing prime \"p\"".into()))?;
        let raw = obj
            .get("assignments")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidCharacter("missing \"assignments\" object".into()))?;
        let mut assignments = Vec::new();
        for (g, v) in raw {
            let r = v
                .as_i64()
                .ok_or_else(|| Error::InvalidCharacter(format!("residue of {g} is not an integer")))?;
            assignments.push((g.clone(), r));
        }
        ModPCharacter::new(p, assignments)
    }

    pub fn residue(&self, gen: &str) -> Option<u64> {
        self.assignments.get(gen).copied()
    }

    /// Image of a word, reduced mod p. Errors on generators without an
    /// assigned residue.
    pub fn evaluate(&self, word: &Word) -> Result<u64> {
        let p = self.p as i64;
        let mut acc: i64 = 0;
        for (g, e) in word.syllables() {
            let r = self
                .residue(g)
                .ok_or_else(|| Error::InvalidCharacter(format!("no residue for generator {g}")))?;
            acc = (acc + (e.rem_euclid(p)) * (r as i64)).rem_euclid(p);
        }
        Ok(acc as u64)
    }

    /// Checks the character against a presentation: every generator carries
    /// a residue, no stray assignments, every relator maps to 0 mod p.
    pub fn validate_on(&self, pres: &GroupPresentation) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        for g in pres.generators() {
            if self.residue(g).is_none() {
                return Err(Error::InvalidCharacter(format!("generator {g} has no residue")));
            }
        }
        for g in self.assignments.keys() {
            if !pres.generators().contains(g) {
                return Err(Error::InvalidCharacter(format!("residue for unknown generator {g}")));
            }
        }
        for r in pres.relators() {
            if self.evaluate(r)? != 0 {
                return Err(Error::InvalidCharacter(format!(
                    "relator {r} does not map to 0 mod {}",
                    self.p
                )));
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        self.assignments.values().any(|&r| r != 0)
    }
}

/// The exponent-sum character: every vertex generator maps to 1 mod p. It is
/// valid on any right-angled Artin presentation because commutators have
/// exponent sum zero.
pub fn exponent_character(g: &SimplicialGraph, p: u64) -> Result<ModPCharacter> {
    ModPCharacter::new(p, g.labels().iter().map(|l| (l.clone(), 1i64)))
}

/// Abelianized relator matrix: rows are relators, columns generators, entry
/// (i, j) the total exponent of generator j in relator i.
pub fn abelianization_matrix(pres: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zero(pres.relator_count(), pres.generator_count());
    for (i, rel) in pres.relators().iter().enumerate() {
        for (j, gen) in pres.generators().iter().enumerate() {
            let e = rel.exponent_sum(gen);
            if e != 0 {
                m.set(i, j, BigInt::from(e));
            }
        }
    }
    m
}

/// Abelianization tensored with Z_p: a free part and p-power torsion
/// exponents (sorted ascending, one entry k per Z/p^k summand).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    #[serde(skip)]
    pub p: u64,
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Zp^{}", self.free_rank));
        }
        for k in &self.torsion {
            parts.push(format!("Z/p^{k}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn p_adic_valuation(d: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut d = d.clone();
    let mut v = 0;
    while (&d % &p).is_zero() {
        d /= &p;
        v += 1;
    }
    v
}

/// Computes the abelianization of the presented group over the integers,
/// then reads off the pro-p invariants at the prime p.
pub fn pro_p_abelian_invariants(pres: &GroupPresentation, p: u64) -> Result<AbelianInvariants> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let matrix = abelianization_matrix(pres);
    let snf = smith_normal_form(&matrix);
    let free_rank = pres.generator_count() - snf.factors.len();
    let mut torsion: Vec<u32> = snf
        .factors
        .iter()
        .map(|d| p_adic_valuation(d, p))
        .filter(|&v| v > 0)
        .collect();
    torsion.sort_unstable();
    Ok(AbelianInvariants { p, free_rank, torsion })
}

/// Tietze cleanup: drops trivial and duplicate relators, and eliminates
/// generators that a relator of letter length at most 2 pins down directly
/// (`a = 1` or `a = b^(+-1)`), substituting them away everywhere.
///
/// Deliberately conservative: longer relators are never used for
/// elimination, so rewritten subgroup presentations keep their structural
/// generators instead of collapsing into few generators with long relators.
/// Deterministic: the shortest eligible relator (then lowest index) is used
/// first.
pub fn tietze_reduce(pres: &GroupPresentation) -> Result<GroupPresentation> {
    let mut generators = pres.generators().to_vec();
    let mut relators: Vec<Word> = pres.relators().to_vec();
    loop {
        relators.retain(|r| !r.is_identity());
        let mut seen = BTreeSet::new();
        relators.retain(|r| seen.insert(r.clone()));

        let mut candidate: Option<(usize, usize)> = None;
        let mut best_len = u64::MAX;
        for (ri, rel) in relators.iter().enumerate() {
            let len = rel.letter_len();
            if len > 2 || len >= best_len {
                continue;
            }
            for (si, (gen, exp)) in rel.syllables().iter().enumerate() {
                let occurrences =
                    rel.syllables().iter().filter(|(g, _)| g == gen).count();
                if exp.abs() == 1 && occurrences == 1 {
                    candidate = Some((ri, si));
                    best_len = len;
                    break;
                }
            }
        }
        let Some((ri, si)) = candidate else {
            return GroupPresentation::new(generators, relators);
        };
        let rel = relators.remove(ri);
        let (gen, exp) = rel.syllables()[si].clone();
        let prefix = Word::from_syllables(rel.syllables()[..si].to_vec())?;
        let suffix = Word::from_syllables(rel.syllables()[si + 1..].to_vec())?;
        // prefix * gen^(+-1) * suffix = 1, so gen = (prefix^-1 suffix^-1)^(+-1)
        let solved = prefix.inverse().concat(&suffix.inverse())?;
        let replacement = if exp == 1 { solved } else { solved.inverse() };
        for r in &mut relators {
            *r = r.substitute(&gen, &replacement)?;
        }
        generators.retain(|g| g != &gen);
    }
}
