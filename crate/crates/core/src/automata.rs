//! Finite automata over interned symbols, with a small regular-expression
//! front end. Used for regular witnesses, Szilard languages, and as a
//! language source for the oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundation::{Budget, Symbol, Word};

/// Nondeterministic automaton with λ-edges (`label = None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nfa {
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
    pub edges: Vec<(usize, Option<Symbol>, usize)>,
}

/// Deterministic, possibly partial automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub initial: usize,
    pub accepting: Vec<bool>,
    pub delta: Vec<BTreeMap<Symbol, usize>>,
}

impl Nfa {
    pub fn alphabet(&self) -> Vec<Symbol> {
        let set: BTreeSet<Symbol> = self.edges.iter().filter_map(|e| e.1).collect();
        set.into_iter().collect()
    }

    /// Accepts exactly the given words (a trie).
    pub fn from_words(words: &[Word]) -> Nfa {
        let mut edges = Vec::new();
        let mut accepting = Vec::new();
        let mut states = 1;
        let mut children: HashMap<(usize, Symbol), usize> = HashMap::new();
        for w in words {
            let mut cur = 0;
            for &s in w {
                cur = *children.entry((cur, s)).or_insert_with(|| {
                    edges.push((cur, Some(s), states));
                    states += 1;
                    states - 1
                });
            }
            if !accepting.contains(&cur) {
                accepting.push(cur);
            }
        }
        Nfa { states, initial: vec![0], accepting, edges }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(from, label, to) in &self.edges {
                if from == q && label.is_none() && set.insert(to) {
                    stack.push(to);
                }
            }
        }
    }

    pub fn determinize(&self) -> Dfa {
        let alphabet = self.alphabet();
        let mut start: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.closure(&mut start);
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut delta: Vec<BTreeMap<Symbol, usize>> = vec![BTreeMap::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for &a in &alphabet {
                let mut next: BTreeSet<usize> = self
                    .edges
                    .iter()
                    .filter(|e| e.1 == Some(a) && sets[q].contains(&e.0))
                    .map(|e| e.2)
                    .collect();
                if next.is_empty() {
                    continue;
                }
                self.closure(&mut next);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    delta.push(BTreeMap::new());
                    queue.push_back(sets.len() - 1);
                    sets.len() - 1
                });
                delta[q].insert(a, id);
            }
        }
        let accepting = sets.iter().map(|s| self.accepting.iter().any(|a| s.contains(a))).collect();
        Dfa { initial: 0, accepting, delta }
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.determinize().accepts(w)
    }

    pub fn words_up_to(&self, max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
        self.determinize().words_up_to(max_len, budget)
    }

    /// Parses a regular expression. Operators: `|`, juxtaposition, `*`, `+`,
    /// `?`, parentheses; `λ` is the empty word; `<name>` is a multi-character
    /// symbol; whitespace is ignored; any other character is a symbol.
    pub fn from_regex(text: &str) -> Result<Nfa> {
        let tokens = tokenize(text)?;
        let mut p = RegexParser { tokens, pos: 0, nfa: Nfa { states: 0, initial: vec![], accepting: vec![], edges: vec![] } };
        let (s, t) = p.alternation()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected token at position {}", p.pos)));
        }
        let mut nfa = p.nfa;
        nfa.initial = vec![s];
        nfa.accepting = vec![t];
        Ok(nfa)
    }

    /// Tab-separated edge list: `from  label  to`, then a line naming the
    /// initial and accepting states.
    pub fn dump(&self) -> String {
        let mut s = String::from("from\tlabel\tto\n");
        for (f, l, t) in &self.edges {
            let label = l.map_or("λ".to_string(), |x| x.to_string());
            let _ = writeln!(s, "{f}\t{label}\t{t}");
        }
        let _ = writeln!(s, "initial\t{:?}\naccepting\t{:?}", self.initial, self.accepting);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Sym(Symbol),
    Empty,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '|' | '*' | '+' | '?' | '(' | ')' => out.push(Token::Op(c)),
            'λ' => out.push(Token::Empty),
            '<' => {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some('>') => break,
                        Some(x) => name.push(x),
                        None => return Err(Error::Parse("unterminated `<`".into())),
                    }
                }
                out.push(Token::Sym(Symbol::new(&name)));
            }
            c => out.push(Token::Sym(Symbol::new(c.encode_utf8(&mut [0; 4])))),
        }
    }
    Ok(out)
}

struct RegexParser {
    tokens: Vec<Token>,
    pos: usize,
    nfa: Nfa,
}

impl RegexParser {
    fn fresh(&mut self) -> usize {
        self.nfa.states += 1;
        self.nfa.states - 1
    }

    fn eps(&mut self, a: usize, b: usize) {
        self.nfa.edges.push((a, None, b));
    }

    fn alternation(&mut self) -> Result<(usize, usize)> {
        let mut branches = vec![self.concatenation()?];
        while self.tokens.get(self.pos) == Some(&Token::Op('|')) {
            self.pos += 1;
            branches.push(self.concatenation()?);
        }
        if branches.len() == 1 {
            return Ok(branches[0]);
        }
        let (s, t) = (self.fresh(), self.fresh());
        for (a, b) in branches {
            self.eps(s, a);
            self.eps(b, t);
        }
        Ok((s, t))
    }

    fn concatenation(&mut self) -> Result<(usize, usize)> {
        let s = self.fresh();
        let mut end = s;
        while let Some(tok) = self.tokens.get(self.pos) {
            if matches!(tok, Token::Op('|') | Token::Op(')')) {
                break;
            }
            let (a, b) = self.postfix()?;
            self.eps(end, a);
            end = b;
        }
        Ok((s, end))
    }

    fn postfix(&mut self) -> Result<(usize, usize)> {
        let (mut a, mut b) = self.atom()?;
        while let Some(Token::Op(op @ ('*' | '+' | '?'))) = self.tokens.get(self.pos) {
            let op = *op;
            self.pos += 1;
            let (s, t) = (self.fresh(), self.fresh());
            self.eps(s, a);
            self.eps(b, t);
            if op != '?' {
                self.eps(b, a);
            }
            if op != '+' {
                self.eps(s, t);
            }
            a = s;
            b = t;
        }
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<(usize, usize)> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Sym(x) => {
                let (s, t) = (self.fresh(), self.fresh());
                self.nfa.edges.push((s, Some(x), t));
                Ok((s, t))
            }
            Token::Empty => {
                let s = self.fresh();
                Ok((s, s))
            }
            Token::Op('(') => {
                let r = self.alternation()?;
                if self.tokens.get(self.pos) != Some(&Token::Op(')')) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut q = self.initial;
        for s in w {
            match self.delta[q].get(s) {
                Some(&n) => q = n,
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn words_up_to(&self, max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        let mut frontier = vec![(self.initial, Word::empty())];
        for len in 0..=max_len {
            for (q, w) in &frontier {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (q, w) in &frontier {
                for (&a, &n) in &self.delta[*q] {
                    let mut x = w.clone();
                    x.push(a);
                    next.push((n, x));
                }
            }
            if next.len() > budget.max_words {
                return Err(Error::BudgetExhausted("automaton enumeration".into()));
            }
            frontier = next;
        }
        Ok(out)
    }

    /// Language equivalence by exploring the synchronized product (a missing
    /// transition is a shared rejecting sink).
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.distinguishing_word(other).is_none()
    }

    pub fn distinguishing_word(&self, other: &Dfa) -> Option<Word> {
        let mut letters: BTreeSet<Symbol> = BTreeSet::new();
        for row in self.delta.iter().chain(&other.delta) {
            letters.extend(row.keys().copied());
        }
        let acc = |d: &Dfa, q: Option<usize>| q.is_some_and(|q| d.accepting[q]);
        let start = (Some(self.initial), Some(other.initial));
        let mut seen = HashMap::from([(start, None::<((Option<usize>, Option<usize>), Symbol)>)]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            if acc(self, p.0) != acc(other, p.1) {
                let mut w = Vec::new();
                let mut cur = p;
                while let Some(Some((prev, a))) = seen.get(&cur) {
                    w.push(*a);
                    cur = *prev;
                }
                w.reverse();
                return Some(Word::from_symbols(w));
            }
            for &a in &letters {
                let n = (
                    p.0.and_then(|q| self.delta[q].get(&a).copied()),
                    p.1.and_then(|q| other.delta[q].get(&a).copied()),
                );
                if n == (None, None) {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(n) {
                    e.insert(Some((p, a)));
                    queue.push_back(n);
                }
            }
        }
        None
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut edges = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            for (&a, &n) in row {
                edges.push((q, Some(a), n));
            }
        }
        Nfa {
            states: self.num_states(),
            initial: vec![self.initial],
            accepting: (0..self.num_states()).filter(|&q| self.accepting[q]).collect(),
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn regex_basics() {
        let n = Nfa::from_regex("a(b|c)*d?").unwrap();
        assert!(n.accepts(&w("a")));
        assert!(n.accepts(&w("abcbd")));
        assert!(!n.accepts(&w("ad d")));
        assert!(!n.accepts(&w("ba")));
        let e = Nfa::from_regex("λ").unwrap();
        assert!(e.accepts(&Word::empty()));
        let m = Nfa::from_regex("<m1>(<m2>|<m3>)*").unwrap();
        assert!(m.accepts(&Word::parse("m1 m3 m2")));
        assert!(Nfa::from_regex("(a").is_err());
    }

    #[test]
    fn enumeration_is_complete() {
        let n = Nfa::from_regex("(ab)+").unwrap();
        let ws = n.words_up_to(6, &Budget::default()).unwrap();
        assert_eq!(ws, vec![w("ab"), w("abab"), w("ababab")]);
    }

    #[test]
    fn equivalence() {
        let a = Nfa::from_regex("(a|b)*").unwrap().determinize();
        let b = Nfa::from_regex("(a*b*)*").unwrap().determinize();
        assert!(a.equivalent(&b));
        let c = Nfa::from_regex("a*b*").unwrap().determinize();
        assert_eq!(a.distinguishing_word(&c), Some(w("ba")));
    }

    #[test]
    fn trie() {
        let n = Nfa::from_words(&[w("ab"), w("a"), Word::empty()]);
        let ws = n.words_up_to(3, &Budget::default()).unwrap();
        assert_eq!(ws, vec![Word::empty(), w("a"), w("ab")]);
    }
}
