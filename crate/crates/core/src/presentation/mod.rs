//! Finitely presented groups: words, presentations, abelian invariants,
//! homomorphism counts and the fingerprint used to compare groups.

mod abelian;
mod fingerprint;
mod homs;
mod snf;
mod tietze;
mod word;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use abelian::{abelianization, AbelianInvariants};
pub use fingerprint::{fingerprint, Fingerprint, PanelEntry};
pub use homs::{count_homs, HomCaps};
pub use snf::smith_normal_form;
pub use tietze::{tietze_simplify, tietze_simplify_with_report, SimplifyReport};
pub use word::{Letter, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} uses generator {gen} but only {count} generators exist")]
    UnknownGenerator { relator: usize, gen: usize, count: usize },
    #[error("unknown generator name {0:?}")]
    UnknownName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("malformed relator {index}: {reason}")]
    MalformedRelator { index: usize, reason: String },
    #[error("{constrained} constrained generators exceed the hom-count cap of {cap}")]
    TooManyGenerators { constrained: usize, cap: usize },
    #[error("target group of order {order} exceeds the cap of {cap}")]
    TargetTooLarge { order: usize, cap: usize },
    #[error("homomorphism count overflowed")]
    CountOverflow,
}

/// A finite presentation `<names | relators>`.
///
/// Relators are stored freely and cyclically reduced in canonical rotation.
/// Empty relators are kept (they carry provenance in ghost results); use
/// [`tietze_simplify`] to drop them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let count = names.len();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(PresentationError::DuplicateName(name.clone()));
            }
        }
        for (relator, w) in relators.iter().enumerate() {
            if let Some(gen) = w.max_gen().filter(|&g| g >= count) {
                return Err(PresentationError::UnknownGenerator { relator, gen, count });
            }
        }
        Ok(Self {
            names,
            relators: relators.iter().map(Word::canonical_relator).collect(),
        })
    }

    /// Generators named `a, b, c, ...` (then `x26, x27, ...`).
    pub fn with_generators(count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new(default_names(count), relators)
    }

    pub fn trivial() -> Self {
        Self { names: Vec::new(), relators: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { names: default_names(rank), relators: Vec::new() }
    }

    /// `<a | a^n>`.
    pub fn cyclic(n: u32) -> Self {
        Self::with_generators(1, vec![Word::power(0, i64::from(n))]).expect("valid")
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Same generators with `extra` relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        Self::new(self.names.clone(), relators)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.names[l.gen]);
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp != 1 {
                out.push_str(&format!("^{exp}"));
            }
            i += run;
        }
        out
    }

    /// `["a", 1, "b", -1]` form of a word.
    pub fn word_to_json(&self, w: &Word) -> Value {
        Value::Array(
            w.letters()
                .iter()
                .flat_map(|l| [Value::from(self.names[l.gen].clone()), Value::from(l.exponent())])
                .collect(),
        )
    }

    /// Parses the `["a", 1, "b", -1]` form. Exponents may be any nonzero
    /// integer and are expanded.
    pub fn word_from_json(&self, value: &Value, index: usize) -> Result<Word, PresentationError> {
        word_from_json(&self.names, value, index)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(PresentationJson {
            generators: self.names.clone(),
            relators: self.relators.iter().map(|w| self.word_to_json(w)).collect(),
        })
        .expect("presentation serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self, PresentationError> {
        let dto: PresentationJson = serde_json::from_value(value.clone()).map_err(|e| {
            PresentationError::MalformedRelator { index: 0, reason: e.to_string() }
        })?;
        let relators = dto
            .relators
            .iter()
            .enumerate()
            .map(|(i, r)| word_from_json(&dto.generators, r, i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dto.generators, relators)
    }
}

fn word_from_json(names: &[String], value: &Value, index: usize) -> Result<Word, PresentationError> {
    let malformed = |reason: &str| PresentationError::MalformedRelator { index, reason: reason.to_string() };
    let items = value.as_array().ok_or_else(|| malformed("expected an array"))?;
    if items.len() % 2 != 0 {
        return Err(malformed("expected alternating name/exponent entries"));
    }
    let mut w = Word::empty();
    for pair in items.chunks(2) {
        let name = pair[0].as_str().ok_or_else(|| malformed("generator name must be a string"))?;
        let exp = pair[1].as_i64().ok_or_else(|| malformed("exponent must be an integer"))?;
        if exp == 0 {
            return Err(malformed("zero exponent"));
        }
        let gen = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PresentationError::UnknownName(name.to_string()))?;
        w = &w * &Word::power(gen, exp);
    }
    Ok(w)
}

/// Serialized presentation: `{"generators":["a"], "relators":[["a",2]]}`.
#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<Value>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Presentation::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.names.join(", "))?;
        write!(f, " | ")?;
        let rels: Vec<String> = self.relators.iter().map(|w| self.format_word(w)).collect();
        write!(f, "{}>", rels.join(", "))
    }
}

pub(crate) fn default_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_expands_exponents() {
        let v: Value = serde_json::json!({"generators":["a","b"], "relators":[["a",2], ["a",1,"b",-1]]});
        let p = Presentation::from_json(&v).unwrap();
        assert_eq!(p.relators()[0], Word::power(0, 2));
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn rejects_unknown_generators() {
        let err = Presentation::with_generators(1, vec![Word::gen(3)]).unwrap_err();
        assert!(matches!(err, PresentationError::UnknownGenerator { gen: 3, .. }));
        let v: Value = serde_json::json!({"generators":["a"], "relators":[["b",1]]});
        assert!(matches!(Presentation::from_json(&v), Err(PresentationError::UnknownName(_))));
    }

    #[test]
    fn display_groups_powers() {
        let p = Presentation::with_generators(2, vec![Word::from_pairs(&[(0, 1), (0, 1), (1, -1)])]).unwrap();
        assert_eq!(p.to_string(), "<a, b | a^2 b^-1>");
    }
}
