//! Words over interned symbols, Parikh images, commutative equivalence,
//! bounded-word decomposition, and the brute-force enumeration oracle.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{LazyLock, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::automata::Nfa;
use crate::counter::CounterMachine;
use crate::error::{Error, Result};
use crate::etol::EtolSystem;
use crate::matrix::MatrixGrammar;
use crate::semilinear::{BoundedSpec, SemilinearSet};

static INTERNER: LazyLock<Mutex<HashSet<&'static str>>> =
    LazyLock::new(|| Mutex::new(HashSet::new()));

/// An interned symbol name. Names may be longer than one character
/// (constructed nonterminals such as `X_1_2` or `[AB,1]`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(&'static str);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut set = INTERNER.lock().expect("interner poisoned");
        if let Some(s) = set.get(name) {
            return Symbol(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Symbol(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Symbol::new(&s))
    }
}

pub fn sym(name: &str) -> Symbol {
    Symbol::new(name)
}

/// A finite sequence of symbols; the empty word is `λ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    /// Parses a word. Whitespace-separated input is read as a list of symbol
    /// names; otherwise every character is its own symbol. `λ` and the empty
    /// string denote the empty word.
    pub fn parse(text: &str) -> Word {
        let text = text.trim();
        if text.is_empty() || text == "λ" {
            return Word::empty();
        }
        if text.contains(char::is_whitespace) {
            Word(text.split_whitespace().map(Symbol::new).collect())
        } else {
            let mut buf = [0u8; 4];
            Word(text.chars().map(|c| Symbol::new(c.encode_utf8(&mut buf))).collect())
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn count(&self, s: Symbol) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Length-then-lexicographic order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Word {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        if self.0.iter().all(|s| s.0.chars().count() == 1) {
            for s in &self.0 {
                f.write_str(s.0)?;
            }
            Ok(())
        } else {
            let names: Vec<&str> = self.0.iter().map(|s| s.0).collect();
            f.write_str(&names.join(" "))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Word(Vec::<Symbol>::deserialize(d)?))
    }
}

pub fn sort_shortlex(words: &mut [Word]) {
    words.sort_by(|a, b| a.shortlex_cmp(b));
}

/// Ordered list of distinct symbols; the order fixes Parikh coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<Symbol>);

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Alphabet> {
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must be nonempty".into()));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(*s) {
                return Err(Error::Invalid(format!("duplicate symbol `{s}` in alphabet")));
            }
        }
        Ok(Alphabet(symbols))
    }

    /// Builds an alphabet of single-character symbols, e.g. `"ab#"`.
    pub fn from_chars(chars: &str) -> Result<Alphabet> {
        Alphabet::new(Word::parse(chars).into_symbols())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        self.0.iter().position(|&x| x == s)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.contains(&s)
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Symbol>::deserialize(d)?;
        Alphabet::new(v).map_err(serde::de::Error::custom)
    }
}

pub type ParikhVector = Vec<u64>;

/// Parikh image of `w` in the coordinate order of `alphabet`.
pub fn parikh(w: &Word, alphabet: &Alphabet) -> Result<ParikhVector> {
    let mut v = vec![0u64; alphabet.len()];
    for &s in w {
        let i = alphabet
            .index_of(s)
            .ok_or_else(|| Error::SymbolNotInAlphabet(s.to_string()))?;
        v[i] += 1;
    }
    Ok(v)
}

/// True iff one word is a rearrangement of the other.
pub fn comm_equivalent(u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let mut a = u.symbols().to_vec();
    let mut b = v.symbols().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Sorted multiset of letters; two words are commutatively equivalent iff
/// their keys coincide.
pub fn comm_key(w: &Word) -> Vec<Symbol> {
    let mut v = w.symbols().to_vec();
    v.sort_unstable();
    v
}

/// All exponent tuples `(i₁,…,i_k)` with `w = w₁^{i₁}⋯w_k^{i_k}`.
pub fn decompositions(w: &Word, words: &[Word]) -> BTreeSet<Vec<usize>> {
    if words.iter().any(|x| x.is_empty()) {
        return BTreeSet::new();
    }
    let mut memo: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    decompose_from(w.symbols(), words, 0, 0, &mut memo)
        .into_iter()
        .collect()
}

fn decompose_from(
    w: &[Symbol],
    words: &[Word],
    pos: usize,
    block: usize,
    memo: &mut HashMap<(usize, usize), Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(r) = memo.get(&(pos, block)) {
        return r.clone();
    }
    let mut out = Vec::new();
    if block == words.len() {
        if pos == w.len() {
            out.push(Vec::new());
        }
    } else {
        let piece = words[block].symbols();
        let mut at = pos;
        let mut exp = 0;
        loop {
            for tail in decompose_from(w, words, at, block + 1, memo) {
                let mut t = Vec::with_capacity(words.len() - block);
                t.push(exp);
                t.extend(tail);
                out.push(t);
            }
            if w.len() - at >= piece.len() && &w[at..at + piece.len()] == piece {
                at += piece.len();
                exp += 1;
            } else {
                break;
            }
        }
    }
    memo.insert((pos, block), out.clone());
    out
}

/// Every word over `alphabet` of length at most `max_len`, in shortlex order.
pub fn all_words(alphabet: &[Symbol], max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
    let mut total: usize = 0;
    let mut layer = 1usize;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(alphabet.len().max(1));
    }
    if total > budget.max_words {
        return Err(Error::BudgetExhausted(format!(
            "{total} candidate words exceed the word budget {}",
            budget.max_words
        )));
    }
    let mut sorted = alphabet.to_vec();
    sorted.sort_unstable();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * sorted.len());
        for w in &frontier {
            for &s in &sorted {
                let mut x = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Search limits for every bounded exploration in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of distinct configurations / sentential forms explored.
    pub max_states: usize,
    /// Maximum number of candidate words in brute-force enumeration.
    pub max_words: usize,
    /// Cap on sentential-form length; `None` derives `2·max_len + 8`.
    pub max_sentential: Option<usize>,
    /// Counter simulations allow `step_factor·(|w|+1) + step_offset` moves.
    pub step_factor: usize,
    pub step_offset: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 100_000,
            max_words: 2_000_000,
            max_sentential: None,
            step_factor: 4,
            step_offset: 32,
        }
    }
}

impl Budget {
    pub fn sentential_cap(&self, max_len: usize) -> usize {
        self.max_sentential.unwrap_or(2 * max_len + 8)
    }

    pub fn with_states(mut self, n: usize) -> Self {
        self.max_states = n;
        self
    }
}

/// Any language-defining object of the workbench.
#[derive(Clone, Debug)]
pub enum LanguageSpec {
    Finite(Vec<Word>),
    Bounded(BoundedSpec),
    /// `{w ∈ alphabet* : ψ(w) ∈ set}`.
    ParikhSet {
        alphabet: Alphabet,
        set: SemilinearSet,
    },
    Machine(CounterMachine),
    Etol(EtolSystem),
    Matrix(MatrixGrammar),
    Automaton(Nfa),
}

impl LanguageSpec {
    /// Terminal symbols that can occur in words of the language.
    pub fn terminals(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = match self {
            LanguageSpec::Finite(ws) => ws.iter().flat_map(|w| w.iter().copied()).collect(),
            LanguageSpec::Bounded(b) => b.words.iter().flat_map(|w| w.iter().copied()).collect(),
            LanguageSpec::ParikhSet { alphabet, .. } => alphabet.symbols().to_vec(),
            LanguageSpec::Machine(m) => m.alphabet.symbols().to_vec(),
            LanguageSpec::Etol(g) => g.terminals.iter().copied().collect(),
            LanguageSpec::Matrix(g) => g.terminals.clone(),
            LanguageSpec::Automaton(a) => a.alphabet(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `L(spec) ∩ Σ^{≤max_len}` in shortlex order. Fails with
/// [`Error::BudgetExhausted`] when the search could not be completed, so an
/// empty result always means "empty up to this length".
pub fn enumerate(spec: &LanguageSpec, max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
    let mut out: Vec<Word> = match spec {
        LanguageSpec::Finite(ws) => {
            let set: BTreeSet<Word> = ws.iter().filter(|w| w.len() <= max_len).cloned().collect();
            set.into_iter().collect()
        }
        LanguageSpec::Bounded(b) => crate::semilinear::enumerate_bounded(b, max_len)?,
        LanguageSpec::ParikhSet { alphabet, set } => {
            let mut v = Vec::new();
            for w in all_words(alphabet.symbols(), max_len, budget)? {
                if set.member(&parikh(&w, alphabet)?)? {
                    v.push(w);
                }
            }
            v
        }
        LanguageSpec::Machine(m) => {
            let mut v = Vec::new();
            for w in all_words(m.alphabet.symbols(), max_len, budget)? {
                if m.accepts(&w, budget)? {
                    v.push(w);
                }
            }
            v
        }
        LanguageSpec::Etol(g) => g.language(max_len, budget)?,
        LanguageSpec::Matrix(g) => g.language(max_len, budget)?,
        LanguageSpec::Automaton(a) => a.words_up_to(max_len, budget)?,
    };
    sort_shortlex(&mut out);
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn parikh_examples() {
        let ab = Alphabet::from_chars("ab").unwrap();
        assert_eq!(parikh(&w("abb"), &ab).unwrap(), vec![1, 2]);
        assert_eq!(parikh(&Word::empty(), &ab).unwrap(), vec![0, 0]);
        let long = "abbbabbababbabbabb";
        let tally = vec![
            long.chars().filter(|&c| c == 'a').count() as u64,
            long.chars().filter(|&c| c == 'b').count() as u64,
        ];
        assert_eq!(parikh(&w(long), &ab).unwrap(), tally);
        assert_eq!(
            parikh(&w("abc"), &ab),
            Err(Error::SymbolNotInAlphabet("c".into()))
        );
    }

    #[test]
    fn comm_equivalence_examples() {
        assert!(comm_equivalent(&w("ab"), &w("ba")));
        assert!(!comm_equivalent(&w("ab"), &w("abb")));
        assert!(comm_equivalent(&w("abbbab"), &w("bbabab")));
    }

    #[test]
    fn decomposition_examples() {
        let set = |v: &[&[usize]]| v.iter().map(|x| x.to_vec()).collect::<BTreeSet<_>>();
        assert_eq!(decompositions(&w("aabb"), &[w("a"), w("b")]), set(&[&[2, 2]]));
        assert_eq!(
            decompositions(&w("aa"), &[w("a"), w("a")]),
            set(&[&[0, 2], &[1, 1], &[2, 0]])
        );
        assert!(decompositions(&w("ab"), &[w("b"), w("a")]).is_empty());
        assert_eq!(decompositions(&Word::empty(), &[w("a")]), set(&[&[0]]));
    }

    #[test]
    fn multichar_symbols_round_trip_display() {
        let x = Word::parse("X_1 a [AB,1]");
        assert_eq!(x.len(), 3);
        assert_eq!(Word::parse(&x.to_string()), x);
        assert_eq!(Word::empty().to_string(), "λ");
        assert_eq!(Word::parse("λ"), Word::empty());
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::from_chars("aba").is_err());
        assert!(Alphabet::new(vec![]).is_err());
    }

    #[test]
    fn all_words_is_shortlex_and_complete() {
        let ws = all_words(&[sym("b"), sym("a")], 2, &Budget::default()).unwrap();
        let shown: Vec<String> = ws.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["λ", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn enumerate_finite_list() {
        let spec = LanguageSpec::Finite(vec![w("ab"), w("b")]);
        assert_eq!(enumerate(&spec, 1, &Budget::default()).unwrap(), vec![w("b")]);
    }

    #[test]
    fn word_budget_is_reported() {
        let b = Budget { max_words: 10, ..Budget::default() };
        assert!(all_words(&[sym("a"), sym("b")], 5, &b).unwrap_err().is_budget());
    }
}
