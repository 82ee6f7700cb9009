//! Commutative regularization: prefix-code construction, code checks, and
//! the matrix, ETOL and EDOL regularizers, with a Parikh-multiset verifier.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::etol::{to_reduced, EtolSystem, TreeCount};
use crate::foundation::{comm_equivalent, comm_key, enumerate, Budget, LanguageSpec, Symbol, Word};
use crate::matrix::{
    etol_profile_steps, normal_form, reduced_etol_to_matrix, szilard_dfa, MatrixGrammar,
};

/// A finite automaton together with a note on how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct RegularWitness {
    pub nfa: Nfa,
    pub construction: String,
}

/// Image words assigned to the matrices of a grammar, in matrix order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeAssignment {
    pub words: Vec<Word>,
    /// Whether the image is meant to be a prefix code (checked exactly);
    /// otherwise unique decipherability is checked.
    pub prefix: bool,
}

/// Per nonterminal, right-hand sides paired with their code words.
pub type EtolCodes = BTreeMap<Symbol, Vec<(Word, Word)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommVerdict {
    pub holds: bool,
    /// A Parikh vector (over `alphabet`) with different multiplicities.
    pub witness: Option<Vec<u64>>,
    pub alphabet: Vec<Symbol>,
    pub max_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor2Verdict {
    /// Every θ-image has length at least the number of matrices.
    pub long_images: bool,
    /// No two θ-images lie in the same `a*`.
    pub distinct_powers: bool,
}

impl Cor2Verdict {
    pub fn holds(&self) -> bool {
        self.long_images && self.distinct_powers
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EdolVerdict {
    /// `γ_i ~ γ_j` with `i > j`: the language is finite and listed in full.
    /// `identical` records the stronger `γ_i = γ_j` (ambiguity).
    Finite { j: usize, i: usize, identical: bool, language: Vec<Word> },
    NoEquivalence { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdolReport {
    /// Lengths of `γ₀, γ₁, …` as far as computed.
    pub lengths: Vec<usize>,
    /// Terminal words among the `γ_i` of length at most 64.
    pub fragment: Vec<Word>,
    pub verdict: EdolVerdict,
}

fn letter_power(w: &Word) -> Option<Symbol> {
    let first = *w.symbols().first()?;
    w.iter().all(|&s| s == first).then_some(first)
}

/// Prefix code `(w₁,…,w_m)` with `wᵢ ~ vᵢ`. Requires `|vᵢ| ≥ m` and at most
/// one `vᵢ` in `a⁺` per letter `a`. The longest word is placed last; if it
/// is a letter power it is kept, otherwise its leftmost length-`m` factor
/// with two distinct letters is replaced by the lexicographically smallest
/// rearrangement that is not a length-`m` prefix of the earlier words, and
/// the rest of the word follows.
pub fn build_prefix_code(vs: &[Word]) -> Result<Vec<Word>> {
    let m = vs.len();
    if let Some(v) = vs.iter().find(|v| v.len() < m) {
        return Err(Error::Precondition(format!(
            "|{v}| = {} < {m} = number of words",
            v.len()
        )));
    }
    let mut powers: HashMap<Symbol, usize> = HashMap::new();
    for v in vs {
        if let Some(a) = letter_power(v) {
            *powers.entry(a).or_insert(0) += 1;
        }
    }
    if let Some((a, _)) = powers.iter().find(|(_, &c)| c > 1) {
        return Err(Error::Precondition(format!("more than one word in {a}⁺")));
    }
    let mut out = vec![Word::empty(); m];
    build(vs, (0..m).collect(), &mut out);
    Ok(out)
}

fn build(vs: &[Word], mut idx: Vec<usize>, out: &mut [Word]) {
    let Some(&longest) = idx.iter().max_by_key(|&&i| vs[i].len()) else { return };
    idx.retain(|&i| i != longest);
    build(vs, idx.clone(), out);
    let v = &vs[longest];
    let m = idx.len() + 1;
    if m == 1 || letter_power(v).is_some() {
        out[longest] = v.clone();
        return;
    }
    let syms = v.symbols();
    let start = (0..=syms.len() - m)
        .find(|&s| syms[s..s + m].iter().any(|&x| x != syms[s]))
        .expect("a word that is not a letter power has a two-letter factor of every length ≥ 2");
    let prefixes: HashSet<&[Symbol]> = idx.iter().map(|&i| &out[i].symbols()[..m]).collect();
    let mut factor = syms[start..start + m].to_vec();
    factor.sort();
    let choice = loop {
        if !prefixes.contains(factor.as_slice()) {
            break factor.clone();
        }
        if !next_permutation(&mut factor) {
            unreachable!("a two-letter factor of length m has at least m rearrangements");
        }
    };
    let mut w = choice;
    w.extend_from_slice(&syms[..start]);
    w.extend_from_slice(&syms[start + m..]);
    out[longest] = Word::from_symbols(w);
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// No word is a proper prefix of another (duplicates disqualify).
pub fn is_prefix_code(ws: &[Word]) -> bool {
    let set: BTreeSet<&Word> = ws.iter().collect();
    if set.len() != ws.len() || ws.iter().any(|w| w.is_empty()) {
        return false;
    }
    ws.iter().all(|u| ws.iter().all(|v| u == v || !v.starts_with(u)))
}

/// Unique decipherability by the Sardinas–Patterson test.
pub fn is_code(ws: &[Word]) -> bool {
    let set: BTreeSet<&Word> = ws.iter().collect();
    if set.len() != ws.len() || ws.iter().any(|w| w.is_empty()) {
        return false;
    }
    let quotient = |us: &BTreeSet<Word>, vs: &BTreeSet<Word>| -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for u in us {
            for v in vs {
                if v.starts_with(u) {
                    out.insert(Word::from_symbols(v.symbols()[u.len()..].to_vec()));
                }
            }
        }
        out
    };
    let code: BTreeSet<Word> = ws.iter().cloned().collect();
    let mut current: BTreeSet<Word> =
        quotient(&code, &code).into_iter().filter(|w| !w.is_empty()).collect();
    let mut seen: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
    while !current.is_empty() {
        if current.iter().any(|w| w.is_empty() || code.contains(w)) {
            return false;
        }
        if !seen.insert(current.clone()) {
            return true;
        }
        let mut next = quotient(&code, &current);
        next.extend(quotient(&current, &code));
        current = next;
    }
    true
}

pub fn check_cor2_conditions(g: &MatrixGrammar) -> Cor2Verdict {
    let theta = g.theta();
    let n = g.matrices.len();
    let long_images = theta.iter().all(|t| t.len() >= n);
    let mut letters: HashMap<Option<Symbol>, usize> = HashMap::new();
    let mut distinct_powers = true;
    for t in &theta {
        if t.is_empty() {
            // λ lies in every a*.
            distinct_powers &= theta.len() == 1;
            continue;
        }
        if let Some(a) = letter_power(t) {
            let c = letters.entry(Some(a)).or_insert(0);
            *c += 1;
            distinct_powers &= *c == 1;
        }
    }
    Cor2Verdict { long_images, distinct_powers }
}

/// Prefix-code assignment from the θ-images when both conditions hold.
pub fn cor2_codes(g: &MatrixGrammar) -> Result<CodeAssignment> {
    let v = check_cor2_conditions(g);
    if !v.holds() {
        return Err(Error::Precondition(format!(
            "code conditions fail (long images: {}, distinct letter powers: {})",
            v.long_images, v.distinct_powers
        )));
    }
    Ok(CodeAssignment { words: build_prefix_code(&g.theta())?, prefix: true })
}

fn audit_unambiguous(counts: impl Iterator<Item = (Word, TreeCount)>, what: &str) -> Result<()> {
    for (w, c) in counts {
        if c != TreeCount::Exact(1) {
            return Err(Error::AuditFailed(format!("{what}: `{w}` has {c} derivations")));
        }
    }
    Ok(())
}

fn add_path(nfa: &mut Nfa, from: usize, label: &Word, to: usize) {
    if label.is_empty() {
        nfa.edges.push((from, None, to));
        return;
    }
    let mut cur = from;
    for (i, &s) in label.iter().enumerate() {
        let next = if i + 1 == label.len() {
            to
        } else {
            nfa.states += 1;
            nfa.states - 1
        };
        nfa.edges.push((cur, Some(s), next));
        cur = next;
    }
}

/// Relabels the Szilard automaton of an unambiguous normal-form grammar by
/// a code `f` with `f(m) ~ θ(m)`.
pub fn regularize_matrix(
    g: &MatrixGrammar,
    k: usize,
    f: &CodeAssignment,
    audit_len: usize,
    budget: &Budget,
) -> Result<RegularWitness> {
    if f.words.len() != g.matrices.len() {
        return Err(Error::Invalid(format!(
            "{} code words for {} matrices",
            f.words.len(),
            g.matrices.len()
        )));
    }
    let theta = g.theta();
    for (i, (fw, t)) in f.words.iter().zip(&theta).enumerate() {
        if !comm_equivalent(fw, t) {
            return Err(Error::NotCommutativelyMatching(format!(
                "f({}) = {fw} is not a rearrangement of {t}",
                g.matrices[i].name
            )));
        }
    }
    let ok = if f.prefix { is_prefix_code(&f.words) } else { is_code(&f.words) };
    if !ok {
        return Err(Error::CodeCheckFailed(format!(
            "{:?} is not a {}",
            f.words,
            if f.prefix { "prefix code" } else { "code" }
        )));
    }
    let words = g.language(audit_len, budget)?;
    audit_unambiguous(
        words.into_iter().map(|w| {
            let c = g.count_derivations(&w, budget);
            (w, c)
        }),
        "unambiguity audit",
    )?;
    let sz = szilard_dfa(g, k)?;
    let n = sz.dfa.num_states();
    let mut nfa = Nfa {
        states: n,
        initial: vec![sz.dfa.initial],
        accepting: (0..n).filter(|&i| sz.dfa.accepting[i]).collect(),
        edges: Vec::new(),
    };
    for (i, row) in sz.dfa.delta.iter().enumerate() {
        for (m, &j) in row {
            let mi = g.matrix_index(m.name()).expect("Szilard labels are matrix names");
            add_path(&mut nfa, i, &f.words[mi], j);
        }
    }
    Ok(RegularWitness {
        nfa,
        construction: format!(
            "Szilard automaton relabelled by a {}; unambiguity audited to length {audit_len}",
            if f.prefix { "prefix code" } else { "code" }
        ),
    })
}

/// `R_X` in order of first appearance.
pub fn right_hand_sides(g: &EtolSystem) -> BTreeMap<Symbol, Vec<Word>> {
    let mut out: BTreeMap<Symbol, Vec<Word>> = BTreeMap::new();
    for p in g.tables.iter().flat_map(|t| &t.productions) {
        let e = out.entry(p.lhs).or_default();
        if !e.contains(&p.rhs) {
            e.push(p.rhs.clone());
        }
    }
    out
}

/// Automatic per-nonterminal prefix codes, available when every production
/// `X → α` has `|α|_Σ ≥ |R_X|` and at most one `X → aⁿ` exists per letter.
pub fn auto_etol_codes(g: &EtolSystem) -> Result<EtolCodes> {
    let mut out = EtolCodes::new();
    let proj = |w: &Word| -> Word { w.iter().copied().filter(|&s| g.is_terminal(s)).collect() };
    for (x, rs) in right_hand_sides(g) {
        let images: Vec<Word> = rs.iter().map(proj).collect();
        if let Some(a) = rs.iter().zip(&images).find(|(_, t)| t.len() < rs.len()) {
            return Err(Error::Precondition(format!(
                "{x} → {} has fewer than {} terminals",
                a.0,
                rs.len()
            )));
        }
        let powers: Vec<&Word> = rs.iter().filter(|r| r.iter().all(|&s| g.is_terminal(s))).filter(|r| letter_power(r).is_some() || r.is_empty()).collect();
        let mut by_letter: HashMap<Option<Symbol>, usize> = HashMap::new();
        for p in &powers {
            *by_letter.entry(letter_power(p)).or_insert(0) += 1;
        }
        if by_letter.values().any(|&c| c > 1) {
            return Err(Error::Precondition(format!("{x} has two productions into the same a*")));
        }
        let codes = build_prefix_code(&images)?;
        out.insert(x, rs.into_iter().zip(codes).collect());
    }
    Ok(out)
}

/// Right-linear witness for an unambiguous reduced system whose right-hand
/// sides carry prefix codes: one state per nonterminal profile and, for each
/// step `x ⇒ y`, an edge reading `f_{A₁}(α₁)⋯f_{A_n}(α_n)` to `π_V(y)`.
pub fn regularize_etol(
    g: &EtolSystem,
    k: usize,
    codes: &EtolCodes,
    audit_len: usize,
    budget: &Budget,
) -> Result<RegularWitness> {
    if !g.reduced {
        return Err(Error::Precondition("expected a reduced ETOL system".into()));
    }
    let rhs = right_hand_sides(g);
    let mut lookup: HashMap<(Symbol, &Word), &Word> = HashMap::new();
    for (x, rs) in &rhs {
        let assigned = codes.get(x).ok_or_else(|| Error::Invalid(format!("no codes for {x}")))?;
        let domain: BTreeSet<&Word> = assigned.iter().map(|p| &p.0).collect();
        if domain != rs.iter().collect::<BTreeSet<_>>() || domain.len() != assigned.len() {
            return Err(Error::Invalid(format!("codes for {x} do not match its right-hand sides")));
        }
        for (alpha, code) in assigned {
            let t: Word = alpha.iter().copied().filter(|&s| g.is_terminal(s)).collect();
            if !comm_equivalent(code, &t) {
                return Err(Error::NotCommutativelyMatching(format!(
                    "f_{x}({alpha}) = {code} is not a rearrangement of {t}"
                )));
            }
            lookup.insert((*x, alpha), code);
        }
        let ys: Vec<Word> = assigned.iter().map(|p| p.1.clone()).collect();
        if ys.len() > 1 && !is_prefix_code(&ys) {
            return Err(Error::CodeCheckFailed(format!("codes for {x} are not a prefix code")));
        }
    }
    let words = g.language(audit_len, budget)?;
    audit_unambiguous(
        words.into_iter().map(|w| {
            let c = g.count_trees(&w, budget);
            (w, c)
        }),
        "unambiguity audit",
    )?;
    let (profiles, steps) = etol_profile_steps(g, k)?;
    let mut nfa = Nfa {
        states: profiles.len(),
        initial: vec![0],
        accepting: (0..profiles.len()).filter(|&i| profiles[i].is_empty()).collect(),
        edges: Vec::new(),
    };
    let mut seen = HashSet::new();
    for (i, out) in steps.iter().enumerate() {
        for st in out {
            let mut u = Word::empty();
            for (&a, alpha) in profiles[i].iter().zip(&st.choice) {
                u.extend_from(lookup[&(a, alpha)]);
            }
            if seen.insert((i, u.clone(), st.target)) {
                add_path(&mut nfa, i, &u, st.target);
            }
        }
    }
    Ok(RegularWitness {
        nfa,
        construction: format!(
            "right-linear grammar over nonterminal profiles (index {k}); unambiguity audited to length {audit_len}"
        ),
    })
}

/// Runs the unique derivation `γ₀ ⇒ γ₁ ⇒ ⋯` of a single-table deterministic
/// system for `bound` steps, looking for commutatively equivalent pairs.
pub fn edol_analyze(g: &EtolSystem, bound: usize) -> Result<EdolReport> {
    if !g.classify().ed0l {
        return Err(Error::Precondition("expected a single deterministic table".into()));
    }
    let table: HashMap<Symbol, &Word> =
        g.tables[0].productions.iter().map(|p| (p.lhs, &p.rhs)).collect();
    let step = |w: &Word| -> Word {
        w.iter()
            .flat_map(|s| match table.get(s) {
                Some(r) => r.symbols().to_vec(),
                None => vec![*s],
            })
            .collect()
    };
    let terminal = |w: &Word| w.iter().all(|&s| g.is_terminal(s));
    let mut seq = vec![Word::from_symbols(vec![g.axiom])];
    let mut classes: HashMap<Vec<(Symbol, usize)>, usize> = HashMap::new();
    let class = |w: &Word| -> Vec<(Symbol, usize)> {
        let mut m: BTreeMap<Symbol, usize> = BTreeMap::new();
        for &s in w {
            *m.entry(s).or_insert(0) += 1;
        }
        m.into_iter().collect()
    };
    classes.insert(class(&seq[0]), 0);
    let mut found = None;
    for i in 1..=bound {
        let next = step(&seq[i - 1]);
        let c = class(&next);
        seq.push(next);
        if let Some(&j) = classes.get(&c) {
            found = Some((j, i));
            break;
        }
        classes.insert(c, i);
    }
    let fragment: Vec<Word> = seq.iter().filter(|w| terminal(w) && w.len() <= 64).cloned().collect();
    let lengths = seq.iter().map(|w| w.len()).collect();
    let verdict = match found {
        None => EdolVerdict::NoEquivalence { bound },
        Some((j, i)) => {
            let identical = seq[i] == seq[j];
            // Finitely many words share the finitely many classes on the
            // cycle, so an exact repeat follows; collect words until then.
            let mut seen: HashSet<Word> = seq.iter().cloned().collect();
            let mut cur = seq[i].clone();
            let mut language: BTreeSet<Word> = seq.iter().filter(|w| terminal(w)).cloned().collect();
            loop {
                cur = step(&cur);
                if !seen.insert(cur.clone()) {
                    break;
                }
                if terminal(&cur) {
                    language.insert(cur.clone());
                }
            }
            let mut language: Vec<Word> = language.into_iter().collect();
            crate::foundation::sort_shortlex(&mut language);
            EdolVerdict::Finite { j, i, identical, language }
        }
    };
    Ok(EdolReport { lengths, fragment, verdict })
}

/// Finite-index EDOL regularization: reduce, convert to a matrix grammar in
/// normal form, and take the θ-image of its Szilard automaton. Finite
/// languages are returned as a trie.
pub fn edol_regularize(
    g: &EtolSystem,
    k: usize,
    analyze_steps: usize,
    audit_len: usize,
    budget: &Budget,
) -> Result<RegularWitness> {
    let report = edol_analyze(g, analyze_steps)?;
    if let EdolVerdict::Finite { language, .. } = report.verdict {
        return Ok(RegularWitness {
            nfa: Nfa::from_words(&language),
            construction: "finite EDOL language listed explicitly".into(),
        });
    }
    let reduced = to_reduced(g);
    let audit = reduced.index_audit(audit_len, budget);
    if audit.max_index > k {
        return Err(Error::IndexExceeded {
            observed: audit.max_index,
            bound: k,
            witness: audit.witness,
        });
    }
    let m = reduced_etol_to_matrix(&reduced, k)?;
    let (nf, _) = normal_form(&m, k)?;
    let sz = szilard_dfa(&nf, k)?;
    let theta = nf.theta();
    let n = sz.dfa.num_states();
    let mut nfa = Nfa {
        states: n,
        initial: vec![sz.dfa.initial],
        accepting: (0..n).filter(|&i| sz.dfa.accepting[i]).collect(),
        edges: Vec::new(),
    };
    for (i, row) in sz.dfa.delta.iter().enumerate() {
        for (mname, &j) in row {
            let mi = nf.matrix_index(mname.name()).expect("Szilard labels are matrix names");
            add_path(&mut nfa, i, &theta[mi], j);
        }
    }
    Ok(RegularWitness {
        nfa,
        construction: format!(
            "θ-image of the Szilard automaton after reduction and matrix conversion (index {k}, audited to length {audit_len})"
        ),
    })
}

/// Compares the Parikh multisets of two languages up to `max_len`.
pub fn verify_comm_equivalence(
    s1: &LanguageSpec,
    s2: &LanguageSpec,
    max_len: usize,
    budget: &Budget,
) -> Result<CommVerdict> {
    let count = |s: &LanguageSpec| -> Result<BTreeMap<Vec<Symbol>, usize>> {
        let mut m = BTreeMap::new();
        for w in enumerate(s, max_len, budget)? {
            *m.entry(comm_key(&w)).or_insert(0) += 1;
        }
        Ok(m)
    };
    let (a, b) = (count(s1)?, count(s2)?);
    let mut alphabet: Vec<Symbol> = s1.terminals();
    alphabet.extend(s2.terminals());
    alphabet.sort();
    alphabet.dedup();
    let keys: BTreeSet<&Vec<Symbol>> = a.keys().chain(b.keys()).collect();
    let bad = keys.into_iter().find(|k| a.get(*k) != b.get(*k));
    let witness = bad.map(|k| {
        alphabet.iter().map(|&x| k.iter().filter(|&&s| s == x).count() as u64).collect()
    });
    Ok(CommVerdict { holds: witness.is_none(), witness, alphabet, max_len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etol::fixtures as etol_fx;
    use crate::matrix::fixtures as mx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    fn ws(v: &[&str]) -> Vec<Word> {
        v.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn prefix_code_examples() {
        assert_eq!(build_prefix_code(&ws(&["ab", "ab"])).unwrap(), ws(&["ab", "ba"]));
        assert_eq!(build_prefix_code(&ws(&["aa", "ab"])).unwrap(), ws(&["aa", "ab"]));
        assert!(matches!(build_prefix_code(&ws(&["ba", "ab", "aab"])), Err(Error::Precondition(_))));
        assert!(matches!(build_prefix_code(&ws(&["aa", "aaa"])), Err(Error::Precondition(_))));
    }

    #[test]
    fn prefix_and_code_checks() {
        assert!(is_prefix_code(&ws(&["aa", "ab"])));
        assert!(!is_prefix_code(&ws(&["a", "ab"])));
        assert!(is_prefix_code(&ws(&["ab", "ba", "bb"])));
        assert!(is_code(&ws(&["a", "ab"])));
        assert!(!is_code(&ws(&["a", "ab", "ba"])));
        assert!(!is_code(&ws(&["ab", "ab"])));
        assert!(is_code(&ws(&["ab", "abb", "bab"])) == brute_unique(&ws(&["ab", "abb", "bab"]), 12));
    }

    /// Unique factorization of every concatenation up to `len` symbols.
    fn brute_unique(code: &[Word], len: usize) -> bool {
        let mut counts: HashMap<Word, usize> = HashMap::from([(Word::empty(), 1)]);
        let mut frontier = vec![Word::empty()];
        while let Some(x) = frontier.pop() {
            for c in code {
                let y = x.concat(c);
                if y.len() <= len {
                    let e = counts.entry(y.clone()).or_insert(0);
                    *e += 1;
                    if *e > 1 {
                        return false;
                    }
                    frontier.push(y);
                }
            }
        }
        true
    }

    #[test]
    fn prefix_code_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let letters = ["a", "b", "c"];
        let mut done = 0;
        while done < 100 {
            let m = rng.gen_range(1..=5);
            let v: Vec<Word> = (0..m)
                .map(|_| {
                    let len = rng.gen_range(m..=8);
                    (0..len).map(|_| crate::sym(letters[rng.gen_range(0..3)])).collect()
                })
                .collect();
            let Ok(code) = build_prefix_code(&v) else { continue };
            assert!(is_prefix_code(&code), "{v:?} -> {code:?}");
            assert!(v.iter().zip(&code).all(|(a, b)| comm_equivalent(a, b)));
            done += 1;
        }
    }

    #[test]
    fn cor2_checks() {
        assert!(!check_cor2_conditions(&mx::xsharpx()).long_images);
        assert!(check_cor2_conditions(&mx::padded()).holds());
        let powers = MatrixGrammar::from_matrices(
            "S",
            vec![
                crate::matrix::Matrix::new("m1", &[("S", "aaA")]),
                crate::matrix::Matrix::new("m2", &[("A", "aa")]),
            ],
        )
        .unwrap();
        assert!(!check_cor2_conditions(&powers).distinct_powers);
    }

    #[test]
    fn matrix_regularization() {
        let g = mx::padded();
        let f = cor2_codes(&g).unwrap();
        let wit = regularize_matrix(&g, 2, &f, 12, &Budget::default()).unwrap();
        let v = verify_comm_equivalence(
            &LanguageSpec::Matrix(g),
            &LanguageSpec::Automaton(wit.nfa),
            14,
            &Budget::default(),
        )
        .unwrap();
        assert!(v.holds);

        let single = MatrixGrammar::from_matrices("S", vec![crate::matrix::Matrix::new("m1", &[("S", "ab")])]).unwrap();
        let f = CodeAssignment { words: ws(&["ba"]), prefix: true };
        let wit = regularize_matrix(&single, 1, &f, 4, &Budget::default()).unwrap();
        assert!(wit.nfa.accepts(&w("ba")) && !wit.nfa.accepts(&w("ab")));

        let x = mx::xsharpx();
        let bad = CodeAssignment { words: ws(&["#", "aa", "bb", "aa", "bb"]), prefix: false };
        assert!(matches!(regularize_matrix(&x, 2, &bad, 5, &Budget::default()), Err(Error::CodeCheckFailed(_))));
        let wrong = CodeAssignment { words: ws(&["#", "ab", "bb", "a", "b"]), prefix: false };
        assert!(matches!(
            regularize_matrix(&x, 2, &wrong, 5, &Budget::default()),
            Err(Error::NotCommutativelyMatching(_))
        ));
    }

    #[test]
    fn etol_regularization() {
        let g = etol_fx::anbn();
        let codes = auto_etol_codes(&g).unwrap();
        assert_eq!(codes[&crate::sym("S")].iter().map(|p| p.1.clone()).collect::<Vec<_>>(), ws(&["ab", "ba"]));
        let wit = regularize_etol(&g, 1, &codes, 10, &Budget::default()).unwrap();
        let v = verify_comm_equivalence(
            &LanguageSpec::Etol(g),
            &LanguageSpec::Automaton(wit.nfa.clone()),
            14,
            &Budget::default(),
        )
        .unwrap();
        assert!(v.holds);
        let lang = wit.nfa.words_up_to(14, &Budget::default()).unwrap();
        assert!(is_prefix_code(&lang));
    }

    #[test]
    fn edol_examples() {
        let r = edol_analyze(&etol_fx::single_a(), 10).unwrap();
        assert_eq!(
            r.verdict,
            EdolVerdict::Finite { j: 1, i: 2, identical: true, language: ws(&["a"]) }
        );
        let r = edol_analyze(&etol_fx::powers_of_two(), 20).unwrap();
        assert_eq!(r.verdict, EdolVerdict::NoEquivalence { bound: 20 });
        assert_eq!(r.lengths[20], 1 << 20);
        let r = edol_analyze(&etol_fx::ab_n(), 20).unwrap();
        assert_eq!(r.verdict, EdolVerdict::NoEquivalence { bound: 20 });
        assert_eq!(r.fragment[3], w("abbb"));

        let b = Budget::default();
        let wit = edol_regularize(&etol_fx::ab_n(), 2, 20, 15, &b).unwrap();
        let v = verify_comm_equivalence(
            &LanguageSpec::Etol(etol_fx::ab_n()),
            &LanguageSpec::Automaton(wit.nfa),
            15,
            &b,
        )
        .unwrap();
        assert!(v.holds);
        let fin = edol_regularize(&etol_fx::single_a(), 2, 20, 15, &b).unwrap();
        assert_eq!(fin.nfa.words_up_to(5, &b).unwrap(), ws(&["a"]));
        assert!(matches!(
            edol_regularize(&etol_fx::powers_of_two(), 2, 20, 15, &b),
            Err(Error::IndexExceeded { .. })
        ));
    }

    #[test]
    fn comm_equivalence_examples() {
        let b = Budget::default();
        let f = |v: &[&str]| LanguageSpec::Finite(ws(v));
        assert!(verify_comm_equivalence(&f(&["ab"]), &f(&["ba"]), 4, &b).unwrap().holds);
        let v = verify_comm_equivalence(&f(&["ab"]), &f(&["ab", "ba"]), 4, &b).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(vec![1, 1]));
        let x = LanguageSpec::Matrix(mx::xsharpx());
        assert!(verify_comm_equivalence(&x, &x, 7, &b).unwrap().holds);
    }
}
