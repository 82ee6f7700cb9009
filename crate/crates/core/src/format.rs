//! JSON description files: one document per object with a top-level
//! `"kind"` field. Symbols are strings and words are lists of symbols.
//!
//! Printing is canonical (two-space pretty JSON, trailing newline), so
//! `print(parse(file)) == file` for every file this module produced.

use serde::{Deserialize, Serialize};

use crate::automata::Nfa;
use crate::counter::CounterMachine;
use crate::error::{Error, Result};
use crate::etol::{EtolSystem, Production};
use crate::foundation::{LanguageSpec, Symbol, Word};
use crate::matrix::{Matrix, MatrixGrammar};
use crate::semilinear::{BoundedSpec, SemilinearSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Object {
    Semilinear(SemilinearSet),
    Bounded(BoundedSpec),
    Machine(CounterMachine),
    Etol(EtolSystem),
    Matrix(MatrixFile),
    Automaton(Nfa),
    Finite { words: Vec<Word> },
}

/// Wire form of a matrix grammar: each matrix is a list of productions;
/// names are only written when they differ from `m1, m2, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub nonterminals: Vec<Symbol>,
    pub terminals: Vec<Symbol>,
    pub start: Symbol,
    pub matrices: Vec<Vec<Production>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<&MatrixGrammar> for MatrixFile {
    fn from(g: &MatrixGrammar) -> MatrixFile {
        let default = g.matrices.iter().enumerate().all(|(i, m)| m.name == format!("m{}", i + 1));
        MatrixFile {
            nonterminals: g.nonterminals.clone(),
            terminals: g.terminals.clone(),
            start: g.start,
            matrices: g.matrices.iter().map(|m| m.productions.clone()).collect(),
            names: (!default).then(|| g.matrices.iter().map(|m| m.name.clone()).collect()),
        }
    }
}

impl TryFrom<&MatrixFile> for MatrixGrammar {
    type Error = Error;

    fn try_from(f: &MatrixFile) -> Result<MatrixGrammar> {
        if let Some(n) = &f.names {
            if n.len() != f.matrices.len() {
                return Err(Error::Parse("`names` and `matrices` differ in length".into()));
            }
        }
        let matrices = f
            .matrices
            .iter()
            .enumerate()
            .map(|(i, ps)| Matrix {
                name: f.names.as_ref().map_or_else(|| format!("m{}", i + 1), |n| n[i].clone()),
                productions: ps.clone(),
            })
            .collect();
        MatrixGrammar::new(f.nonterminals.clone(), f.terminals.clone(), f.start, matrices)
    }
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Semilinear(_) => "semilinear",
            Object::Bounded(_) => "bounded",
            Object::Machine(_) => "machine",
            Object::Etol(_) => "etol",
            Object::Matrix(_) => "matrix",
            Object::Automaton(_) => "automaton",
            Object::Finite { .. } => "finite",
        }
    }

    /// Runs the module validator of the contained object.
    pub fn validate(&self) -> Result<()> {
        match self {
            Object::Semilinear(_) | Object::Finite { .. } | Object::Automaton(_) => Ok(()),
            Object::Bounded(b) => BoundedSpec::new(
                b.words.clone(),
                b.kind,
                Some(b.alphabet.clone()),
                b.q1.clone(),
                b.q2.clone(),
            )
            .map(|_| ()),
            Object::Machine(m) => m.validate(),
            Object::Etol(g) => g.validate(),
            Object::Matrix(f) => MatrixGrammar::try_from(f).map(|_| ()),
        }
    }

    /// The language described, when the object describes one.
    pub fn language(&self) -> Result<LanguageSpec> {
        Ok(match self {
            Object::Semilinear(_) => {
                return Err(Error::Unsupported(
                    "a semilinear set is not a language; pair it with letters first".into(),
                ))
            }
            Object::Bounded(b) => LanguageSpec::Bounded(b.clone()),
            Object::Machine(m) => LanguageSpec::Machine(m.clone()),
            Object::Etol(g) => LanguageSpec::Etol(g.clone()),
            Object::Matrix(f) => LanguageSpec::Matrix(MatrixGrammar::try_from(f)?),
            Object::Automaton(a) => LanguageSpec::Automaton(a.clone()),
            Object::Finite { words } => LanguageSpec::Finite(words.clone()),
        })
    }

    pub fn matrix(g: &MatrixGrammar) -> Object {
        Object::Matrix(MatrixFile::from(g))
    }
}

pub fn parse(text: &str) -> Result<Object> {
    let obj: Object = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    obj.validate()?;
    Ok(obj)
}

pub fn print(obj: &Object) -> String {
    let mut s = serde_json::to_string_pretty(obj).expect("objects serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::Alphabet;
    use crate::semilinear::fixtures;

    fn round_trip(obj: Object) {
        let text = print(&obj);
        let back = parse(&text).unwrap();
        assert_eq!(back, obj);
        assert_eq!(print(&back), text);
    }

    #[test]
    fn every_kind_round_trips() {
        round_trip(Object::Semilinear(fixtures::diagonal()));
        round_trip(Object::Bounded(fixtures::l3()));
        let ab = Alphabet::from_chars("ab").unwrap();
        round_trip(Object::Machine(crate::counter::from_semilinear(&fixtures::diagonal(), &ab).unwrap()));
        round_trip(Object::Etol(crate::etol::fixtures::normal_terminals()));
        round_trip(Object::matrix(&crate::matrix::fixtures::xsharpx()));
        round_trip(Object::Automaton(Nfa::from_regex("a(b|c)*").unwrap()));
        round_trip(Object::Finite { words: vec![Word::parse("ab"), Word::empty()] });
    }

    #[test]
    fn semilinear_schema() {
        let text = r#"{"kind": "semilinear", "components": [{"constant": [0, 0], "periods": [[1, 1]]}]}"#;
        assert_eq!(parse(text).unwrap(), Object::Semilinear(fixtures::diagonal()));
        let bad = r#"{"kind": "semilinear", "components": [{"constant": [0], "periods": [[1, 1]]}]}"#;
        assert!(parse(bad).is_err());
    }

    #[test]
    fn matrix_schema_uses_production_lists() {
        let text = print(&Object::matrix(&crate::matrix::fixtures::xsharpx()));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "matrix");
        assert_eq!(v["matrices"][1][0]["lhs"], "A");
        assert_eq!(v["matrices"][1][0]["rhs"], serde_json::json!(["a", "A"]));
        assert!(v.get("names").is_none());
    }

    #[test]
    fn rejects_unknown_kind_and_invalid_objects() {
        assert!(matches!(parse(r#"{"kind": "pda"}"#), Err(Error::Parse(_))));
        let bad_matrix = r#"{"kind": "matrix", "nonterminals": ["S"], "terminals": ["a"], "start": "T", "matrices": []}"#;
        assert!(parse(bad_matrix).is_err());
    }
}
