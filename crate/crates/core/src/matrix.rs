//! Context-free matrix grammars, their normal form and Szilard automaton,
//! and the derivation-preserving conversions to and from reduced ETOL
//! systems.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::etol::{EtolSystem, FormGraph, IndexAudit, Production, Table, TreeCount};
use crate::foundation::{sym, Budget, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub name: String,
    pub productions: Vec<Production>,
}

impl Matrix {
    pub fn new(name: &str, productions: &[(&str, &str)]) -> Matrix {
        Matrix {
            name: name.to_string(),
            productions: productions.iter().map(|(l, r)| Production::new(l, r)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGrammar {
    pub nonterminals: Vec<Symbol>,
    pub terminals: Vec<Symbol>,
    pub start: Symbol,
    pub matrices: Vec<Matrix>,
}

/// Evidence that a grammar is in normal form over the explored profiles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormCert {
    pub k: usize,
    /// Reachable nonterminal profiles, all with pairwise-distinct letters.
    pub profiles: Vec<Word>,
    /// Whether the register construction was needed.
    pub transformed: bool,
}

/// Szilard automaton: states are nonterminal profiles, edges are matrices.
#[derive(Clone, Debug)]
pub struct SzilardDfa {
    pub profiles: Vec<Word>,
    pub dfa: Dfa,
}

/// A symbol tagged with the index of the original occurrence it descends
/// from and whether the current matrix application introduced it.
type Tagged = (Symbol, usize, bool);

impl MatrixGrammar {
    pub fn new(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        start: Symbol,
        matrices: Vec<Matrix>,
    ) -> Result<MatrixGrammar> {
        let g = MatrixGrammar { nonterminals, terminals, start, matrices };
        g.validate()?;
        Ok(g)
    }

    /// Nonterminals are the left-hand sides and the start symbol; every
    /// other right-hand-side symbol is a terminal.
    pub fn from_matrices(start: &str, matrices: Vec<Matrix>) -> Result<MatrixGrammar> {
        let start = sym(start);
        let mut nts = vec![start];
        for p in matrices.iter().flat_map(|m| &m.productions) {
            if !nts.contains(&p.lhs) {
                nts.push(p.lhs);
            }
        }
        let mut ts = Vec::new();
        for p in matrices.iter().flat_map(|m| &m.productions) {
            for &s in &p.rhs {
                if !nts.contains(&s) && !ts.contains(&s) {
                    ts.push(s);
                }
            }
        }
        MatrixGrammar::new(nts, ts, start, matrices)
    }

    pub fn validate(&self) -> Result<()> {
        let nts: HashSet<Symbol> = self.nonterminals.iter().copied().collect();
        let ts: HashSet<Symbol> = self.terminals.iter().copied().collect();
        if nts.len() != self.nonterminals.len() || ts.len() != self.terminals.len() {
            return Err(Error::Invalid("duplicate symbols".into()));
        }
        if !nts.is_disjoint(&ts) {
            return Err(Error::Invalid("terminals and nonterminals overlap".into()));
        }
        if !nts.contains(&self.start) {
            return Err(Error::Invalid("start symbol is not a nonterminal".into()));
        }
        let mut names = HashSet::new();
        for m in &self.matrices {
            if !names.insert(&m.name) {
                return Err(Error::Invalid(format!("duplicate matrix name `{}`", m.name)));
            }
            if m.productions.is_empty() {
                return Err(Error::Invalid(format!("matrix `{}` is empty", m.name)));
            }
            for p in &m.productions {
                if !nts.contains(&p.lhs) {
                    return Err(Error::Invalid(format!("lhs `{}` is not a nonterminal", p.lhs)));
                }
                if let Some(s) = p.rhs.iter().find(|s| !nts.contains(s) && !ts.contains(s)) {
                    return Err(Error::Invalid(format!("unknown symbol `{s}`")));
                }
            }
        }
        Ok(())
    }

    pub fn is_nonterminal(&self, s: Symbol) -> bool {
        self.nonterminals.contains(&s)
    }

    pub fn matrix_index(&self, name: &str) -> Option<usize> {
        self.matrices.iter().position(|m| m.name == name)
    }

    /// `π_N(x)`.
    pub fn profile(&self, x: &Word) -> Word {
        x.iter().copied().filter(|&s| self.is_nonterminal(s)).collect()
    }

    /// All tagged results of applying matrix `m` to `form`, one per distinct
    /// split of the result among the original occurrences.
    fn apply_tagged(&self, form: &Word, m: usize) -> BTreeSet<Vec<Tagged>> {
        let start: Vec<Tagged> = form.iter().enumerate().map(|(i, &s)| (s, i, false)).collect();
        let mut current: BTreeSet<Vec<Tagged>> = BTreeSet::from([start]);
        for p in &self.matrices[m].productions {
            let mut next = BTreeSet::new();
            for f in &current {
                for (pos, &(s, origin, _)) in f.iter().enumerate() {
                    if s != p.lhs {
                        continue;
                    }
                    let mut v = f[..pos].to_vec();
                    v.extend(p.rhs.iter().map(|&r| (r, origin, true)));
                    v.extend_from_slice(&f[pos + 1..]);
                    next.insert(v);
                }
            }
            current = next;
            if current.is_empty() {
                break;
            }
        }
        // Identify results by their split; the fresh flags only matter for
        // the normal-form check.
        let mut seen = HashSet::new();
        current
            .into_iter()
            .filter(|v| seen.insert(v.iter().map(|&(s, o, _)| (s, o)).collect::<Vec<_>>()))
            .collect()
    }

    /// `{y : x ⇒_m y}` over all occurrence choices; empty if `m` is blocked.
    pub fn apply_matrix(&self, x: &Word, m: usize) -> BTreeSet<Word> {
        self.apply_tagged(x, m)
            .into_iter()
            .map(|v| v.into_iter().map(|(s, _, _)| s).collect())
            .collect()
    }

    /// Successors of `x` under `m` with the number of distinct splits
    /// yielding each.
    fn successors(&self, x: &Word, m: usize) -> BTreeMap<Word, u64> {
        let mut out = BTreeMap::new();
        for v in self.apply_tagged(x, m) {
            let w: Word = v.into_iter().map(|(s, _, _)| s).collect();
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    /// Forms reachable by the matrix sequence `alpha` from the start symbol.
    pub fn replay(&self, alpha: &[usize]) -> BTreeSet<Word> {
        let mut cur = BTreeSet::from([Word::from_symbols(vec![self.start])]);
        for &m in alpha {
            cur = cur.iter().flat_map(|x| self.apply_matrix(x, m)).collect();
        }
        cur
    }

    /// `θ(m)`: terminal projection of the right-hand sides in order.
    pub fn theta(&self) -> Vec<Word> {
        self.matrices
            .iter()
            .map(|m| {
                m.productions
                    .iter()
                    .flat_map(|p| p.rhs.iter().copied())
                    .filter(|&s| !self.is_nonterminal(s))
                    .collect()
            })
            .collect()
    }

    fn min_yields(&self) -> HashMap<Symbol, Option<usize>> {
        let mut l: HashMap<Symbol, Option<usize>> = HashMap::new();
        for &s in &self.terminals {
            l.insert(s, Some(1));
        }
        for &s in &self.nonterminals {
            l.insert(s, None);
        }
        loop {
            let mut changed = false;
            for p in self.matrices.iter().flat_map(|m| &m.productions) {
                let v = p.rhs.iter().try_fold(0usize, |acc, s| l[s].map(|x| acc + x));
                if let Some(v) = v {
                    if l[&p.lhs].is_none_or(|b| v < b) {
                        l.insert(p.lhs, Some(v));
                        changed = true;
                    }
                }
            }
            if !changed {
                return l;
            }
        }
    }

    fn graph(&self, bound: usize, budget: &Budget) -> FormGraph {
        let l = self.min_yields();
        let cap = budget.sentential_cap(bound);
        let lb = |w: &Word| w.iter().try_fold(0usize, |acc, s| l[s].map(|x| acc + x));
        let root = Word::from_symbols(vec![self.start]);
        if lb(&root).is_none_or(|x| x > bound) {
            return FormGraph::default();
        }
        FormGraph::build(root, budget.max_states, |x, truncated| {
            let mut out = Vec::new();
            for m in 0..self.matrices.len() {
                for (y, mult) in self.successors(x, m) {
                    if lb(&y).is_none_or(|v| v > bound) {
                        continue;
                    }
                    if y.len() > cap {
                        *truncated = true;
                        continue;
                    }
                    out.push((m, y, mult));
                }
            }
            out
        })
    }

    /// `L(G) ∩ Σ^{≤max_len}` in shortlex order.
    pub fn language(&self, max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
        let g = self.graph(max_len, budget);
        if g.truncated {
            return Err(Error::BudgetExhausted(format!(
                "matrix exploration cut at {} forms",
                g.forms.len()
            )));
        }
        let mut out: Vec<Word> = g
            .forms
            .into_iter()
            .filter(|w| w.len() <= max_len && w.iter().all(|&s| !self.is_nonterminal(s)))
            .collect();
        crate::foundation::sort_shortlex(&mut out);
        Ok(out)
    }

    /// Number of derivations of `w`, identifying two steps when they use the
    /// same matrix and split the result the same way among occurrences.
    pub fn count_derivations(&self, w: &Word, budget: &Budget) -> TreeCount {
        let g = self.graph(w.len(), budget);
        match g.index.get(w) {
            Some(&t) => g.count_paths(0, t),
            None if g.truncated => TreeCount::AtLeast(0),
            None => TreeCount::Exact(0),
        }
    }

    /// Minimal number of nonterminals needed along a derivation of each word.
    pub fn index_audit(&self, max_len: usize, budget: &Budget) -> IndexAudit {
        let g = self.graph(max_len, budget);
        let weight: Vec<usize> = g
            .forms
            .iter()
            .map(|f| f.iter().filter(|&&s| self.is_nonterminal(s)).count())
            .collect();
        let best = if g.forms.is_empty() { Vec::new() } else { g.bottleneck(&weight) };
        let mut words: Vec<(usize, &Word)> = g
            .forms
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() <= max_len && weight[g.index[*w]] == 0)
            .collect();
        words.sort_by(|a, b| a.1.shortlex_cmp(b.1));
        let mut audit = IndexAudit {
            per_word: BTreeMap::new(),
            max_index: 0,
            witness: None,
            max_len,
            complete: !g.truncated,
        };
        for (i, w) in words {
            audit.per_word.insert(w.to_string(), best[i]);
            if audit.witness.is_none() || best[i] > audit.max_index {
                audit.max_index = best[i];
                audit.witness = Some(w.clone());
            }
        }
        audit
    }

    /// Reachable nonterminal profiles. Matrix application only depends on
    /// the nonterminals of a form, so this is a finite exploration whenever
    /// every reachable profile has length at most `k`.
    fn profile_steps(&self, k: usize) -> Result<ProfileGraph> {
        let root = Word::from_symbols(vec![self.start]);
        let mut pg = ProfileGraph { profiles: vec![root.clone()], steps: Vec::new() };
        let mut index = HashMap::from([(root, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let x = pg.profiles[i].clone();
            let mut steps = Vec::new();
            for m in 0..self.matrices.len() {
                for tagged in self.apply_tagged(&x, m) {
                    let y: Word = tagged
                        .iter()
                        .map(|t| t.0)
                        .filter(|&s| self.is_nonterminal(s))
                        .collect();
                    if y.len() > k {
                        return Err(Error::IndexExceeded {
                            observed: y.len(),
                            bound: k,
                            witness: Some(y),
                        });
                    }
                    let j = *index.entry(y.clone()).or_insert_with(|| {
                        pg.profiles.push(y.clone());
                        queue.push_back(pg.profiles.len() - 1);
                        pg.profiles.len() - 1
                    });
                    steps.push(ProfileStep { matrix: m, target: j, tagged });
                }
            }
            pg.steps.push(steps);
        }
        Ok(pg)
    }

    /// Checks both normal-form conditions over all reachable profiles.
    pub fn check_normal_form(&self, k: usize) -> Result<NormalFormCert> {
        let pg = self.profile_steps(k)?;
        for (x, steps) in pg.profiles.iter().zip(&pg.steps) {
            if x.iter().collect::<HashSet<_>>().len() != x.len() {
                return Err(Error::NormalFormViolation(format!(
                    "profile `{x}` repeats a nonterminal"
                )));
            }
            for st in steps {
                let name = &self.matrices[st.matrix].name;
                if !self.rewrites_only_originals(x, st.matrix) {
                    return Err(Error::NormalFormViolation(format!(
                        "matrix `{name}` rewrites a symbol it introduced, from profile `{x}`"
                    )));
                }
                let _ = st.tagged.len();
            }
        }
        Ok(NormalFormCert { k, profiles: pg.profiles, transformed: false })
    }

    /// Condition 2: every production of `m` rewrites an occurrence present
    /// before the matrix started, along every application path.
    fn rewrites_only_originals(&self, x: &Word, m: usize) -> bool {
        let start: Vec<Tagged> = x.iter().enumerate().map(|(i, &s)| (s, i, false)).collect();
        let mut current = vec![start];
        for p in &self.matrices[m].productions {
            let mut next = Vec::new();
            for f in &current {
                for (pos, &(s, origin, fresh)) in f.iter().enumerate() {
                    if s != p.lhs {
                        continue;
                    }
                    if fresh {
                        return false;
                    }
                    let mut v = f[..pos].to_vec();
                    v.extend(p.rhs.iter().map(|&r| (r, origin, true)));
                    v.extend_from_slice(&f[pos + 1..]);
                    next.push(v);
                }
            }
            current = next;
        }
        true
    }
}

struct ProfileStep {
    matrix: usize,
    target: usize,
    tagged: Vec<Tagged>,
}

struct ProfileGraph {
    profiles: Vec<Word>,
    steps: Vec<Vec<ProfileStep>>,
}

/// `w₁⋯w_n` of a split: the parts descending from each original position.
fn split_parts(tagged: &[Tagged], n: usize) -> Vec<Vec<Symbol>> {
    let mut parts = vec![Vec::new(); n];
    for &(s, o, _) in tagged {
        parts[o].push(s);
    }
    parts
}

fn profile_name(x: &Word) -> String {
    if x.is_empty() {
        "λ".into()
    } else if x.iter().all(|s| s.name().chars().count() == 1) {
        x.to_string()
    } else {
        x.iter().map(|s| s.name()).collect::<Vec<_>>().join("·")
    }
}

/// Renames the nonterminals of one part: the `j`-th nonterminal becomes
/// `rename(symbol, t + j)` where `t` counts nonterminals in earlier parts.
fn relabel(
    part: &[Symbol],
    t: &mut usize,
    is_nt: impl Fn(Symbol) -> bool,
    mut rename: impl FnMut(Symbol, usize) -> Symbol,
) -> Word {
    part.iter()
        .map(|&s| {
            if is_nt(s) {
                *t += 1;
                rename(s, *t)
            } else {
                s
            }
        })
        .collect()
}

/// Normal form of index `k`. A grammar that already satisfies both
/// conditions is returned unchanged; otherwise nonterminals become
/// `(A, position, profile length, parity)` and every matrix is refined per
/// (profile, split) into one that rewrites every occurrence of the profile,
/// so forms carry distinct nonterminals and derivations map one-to-one.
pub fn normal_form(g: &MatrixGrammar, k: usize) -> Result<(MatrixGrammar, NormalFormCert)> {
    match g.check_normal_form(k) {
        Ok(cert) => return Ok((g.clone(), cert)),
        Err(e @ Error::IndexExceeded { .. }) => return Err(e),
        Err(_) => {}
    }
    let pg = g.profile_steps(k)?;
    let reg = |a: Symbol, i: usize, n: usize, parity: usize| sym(&format!("({a},{i},{n},{parity})"));
    let mut matrices = Vec::new();
    let mut nonterminals: BTreeSet<Symbol> = BTreeSet::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((pi, parity)) = queue.pop_front() {
        let x = &pg.profiles[pi];
        let n = x.len();
        for (si, st) in pg.steps[pi].iter().enumerate() {
            let n2 = pg.profiles[st.target].len();
            let parts = split_parts(&st.tagged, n);
            let mut t = 0;
            let mut prods = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let lhs = reg(x.symbols()[i], i + 1, n, parity);
                nonterminals.insert(lhs);
                let rhs = relabel(part, &mut t, |s| g.is_nonterminal(s), |s, j| {
                    reg(s, j, n2, 1 - parity)
                });
                nonterminals.extend(rhs.iter().copied().filter(|s| !g.terminals.contains(s)));
                prods.push(Production { lhs, rhs });
            }
            matrices.push(Matrix {
                name: format!("{}.{}.{}.{}", g.matrices[st.matrix].name, pi, si, parity),
                productions: prods,
            });
            if seen.insert((st.target, 1 - parity)) {
                queue.push_back((st.target, 1 - parity));
            }
        }
    }
    let start = reg(g.start, 1, 1, 0);
    nonterminals.insert(start);
    let out = MatrixGrammar::new(nonterminals.into_iter().collect(), g.terminals.clone(), start, matrices)?;
    let mut cert = out.check_normal_form(k)?;
    cert.transformed = true;
    Ok((out, cert))
}

/// Szilard automaton of a normal-form grammar, trimmed to profiles that can
/// still reach the terminal profile `λ`. Edge labels are matrix names.
pub fn szilard_dfa(g: &MatrixGrammar, k: usize) -> Result<SzilardDfa> {
    g.check_normal_form(k)?;
    let pg = g.profile_steps(k)?;
    let n = pg.profiles.len();
    let mut next: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for (i, steps) in pg.steps.iter().enumerate() {
        for st in steps {
            if let Some(&old) = next[i].get(&st.matrix) {
                if old != st.target {
                    return Err(Error::NormalFormViolation(format!(
                        "matrix `{}` leads from `{}` to two profiles",
                        g.matrices[st.matrix].name, pg.profiles[i]
                    )));
                }
            }
            next[i].insert(st.matrix, st.target);
        }
    }
    let mut live = vec![false; n];
    for (i, p) in pg.profiles.iter().enumerate() {
        live[i] = p.is_empty();
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            if !live[i] && next[i].values().any(|&j| live[j]) {
                live[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Keep the start state even when the language is empty.
    live[0] = true;
    let keep: Vec<usize> = (0..n).filter(|&i| live[i]).collect();
    let renum: HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let delta = keep
        .iter()
        .map(|&i| {
            next[i]
                .iter()
                .filter(|(_, j)| live[**j])
                .map(|(&m, j)| (sym(&g.matrices[m].name), renum[j]))
                .collect()
        })
        .collect();
    let accepting = keep.iter().map(|&i| pg.profiles[i].is_empty()).collect();
    Ok(SzilardDfa {
        profiles: keep.iter().map(|&i| pg.profiles[i].clone()).collect(),
        dfa: Dfa { initial: 0, accepting, delta },
    })
}

/// Reduced ETOL system with one table per (profile, matrix, split); the
/// nonterminal `[x,i]` stands for the `i`-th nonterminal of a form whose
/// profile is `x`.
pub fn matrix_to_reduced_etol(g: &MatrixGrammar, k: usize) -> Result<EtolSystem> {
    let pg = g.profile_steps(k)?;
    let name = |x: &Word, i: usize| sym(&format!("[{},{}]", profile_name(x), i));
    let dead = fresh_dead(g.nonterminals.iter().chain(&g.terminals).copied());
    let mut v: Vec<Symbol> = Vec::new();
    for x in &pg.profiles {
        for i in 1..=x.len() {
            v.push(name(x, i));
        }
    }
    v.push(dead);
    let mut tables = Vec::new();
    for (pi, steps) in pg.steps.iter().enumerate() {
        let x = &pg.profiles[pi];
        for (si, st) in steps.iter().enumerate() {
            let y = &pg.profiles[st.target];
            let parts = split_parts(&st.tagged, x.len());
            let mut t = 0;
            let mut prods = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let rhs = relabel(part, &mut t, |s| g.is_nonterminal(s), |_, j| name(y, j));
                prods.push(Production { lhs: name(x, i + 1), rhs });
            }
            let defined: HashSet<Symbol> = prods.iter().map(|p| p.lhs).collect();
            for &s in &v {
                if !defined.contains(&s) {
                    prods.push(Production { lhs: s, rhs: Word::from_symbols(vec![dead]) });
                }
            }
            tables.push(Table {
                name: format!("T[{},{},{}]", profile_name(x), g.matrices[st.matrix].name, si),
                productions: prods,
            });
        }
    }
    if tables.is_empty() {
        tables.push(Table {
            name: "T".into(),
            productions: vec![Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) }],
        });
    }
    EtolSystem::new(v, g.terminals.clone(), name(&pg.profiles[0], 1), tables, true)
}

fn fresh_dead(used: impl Iterator<Item = Symbol>) -> Symbol {
    let used: HashSet<Symbol> = used.collect();
    let mut s = "F".to_string();
    while used.contains(&sym(&s)) {
        s.push('\'');
    }
    sym(&s)
}

/// One step of a reduced ETOL system on a nonterminal profile: a table and
/// one right-hand side per position.
pub(crate) struct EtolStep {
    pub(crate) table: usize,
    pub(crate) choice: Vec<Word>,
    pub(crate) target: usize,
}

pub(crate) fn etol_profile_steps(g: &EtolSystem, k: usize) -> Result<(Vec<Word>, Vec<Vec<EtolStep>>)> {
    if !g.reduced {
        return Err(Error::Precondition("expected a reduced ETOL system".into()));
    }
    let nt = |s: &Symbol| g.nonterminals.contains(s);
    let root = Word::from_symbols(vec![g.axiom]);
    let mut profiles = vec![root.clone()];
    let mut index = HashMap::from([(root, 0usize)]);
    let mut steps: Vec<Vec<EtolStep>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let x = profiles[i].clone();
        let mut out = Vec::new();
        if !x.is_empty() {
            for (ti, table) in g.tables.iter().enumerate() {
                let options: Vec<Vec<&Word>> = x
                    .iter()
                    .map(|&s| table.productions.iter().filter(|p| p.lhs == s).map(|p| &p.rhs).collect())
                    .collect();
                if options.iter().any(|o| o.is_empty()) {
                    continue;
                }
                let mut choices: Vec<Vec<Word>> = vec![Vec::new()];
                for opts in &options {
                    choices = choices
                        .into_iter()
                        .flat_map(|c| {
                            opts.iter().map(move |o| {
                                let mut c = c.clone();
                                c.push((*o).clone());
                                c
                            })
                        })
                        .collect();
                }
                for choice in choices {
                    let y: Word = choice.iter().flat_map(|w| w.iter().copied()).filter(nt).collect();
                    if y.len() > k {
                        return Err(Error::IndexExceeded {
                            observed: y.len(),
                            bound: k,
                            witness: Some(y),
                        });
                    }
                    let j = *index.entry(y.clone()).or_insert_with(|| {
                        profiles.push(y.clone());
                        queue.push_back(profiles.len() - 1);
                        profiles.len() - 1
                    });
                    out.push(EtolStep { table: ti, choice, target: j });
                }
            }
        }
        steps.push(out);
    }
    Ok((profiles, steps))
}

/// Deterministic reduced system: nonterminals `(A,i,n)` carry their position
/// among the `n` nonterminals of the form, and each (profile, table, choice
/// vector) becomes its own table.
pub fn reduced_etol_to_edtol(g: &EtolSystem, k: usize) -> Result<EtolSystem> {
    let (profiles, steps) = etol_profile_steps(g, k)?;
    let nt = |s: Symbol| g.nonterminals.contains(&s);
    let name = |a: Symbol, i: usize, n: usize| sym(&format!("({a},{i},{n})"));
    let dead = fresh_dead(g.nonterminals.iter().chain(&g.terminals).copied());
    let mut v: Vec<Symbol> = Vec::new();
    for x in &profiles {
        for (i, &a) in x.iter().enumerate() {
            let s = name(a, i + 1, x.len());
            if !v.contains(&s) {
                v.push(s);
            }
        }
    }
    v.push(dead);
    let mut tables = Vec::new();
    for (pi, out) in steps.iter().enumerate() {
        let x = &profiles[pi];
        for (si, st) in out.iter().enumerate() {
            let n2 = profiles[st.target].len();
            let mut t = 0;
            let mut prods: Vec<Production> = x
                .iter()
                .zip(&st.choice)
                .enumerate()
                .map(|(i, (&a, alpha))| Production {
                    lhs: name(a, i + 1, x.len()),
                    rhs: relabel(alpha.symbols(), &mut t, nt, |s, j| name(s, j, n2)),
                })
                .collect();
            let defined: HashSet<Symbol> = prods.iter().map(|p| p.lhs).collect();
            for &s in &v {
                if !defined.contains(&s) {
                    prods.push(Production { lhs: s, rhs: Word::from_symbols(vec![dead]) });
                }
            }
            tables.push(Table {
                name: format!("{}[{},{}]", g.tables[st.table].name, profile_name(x), si),
                productions: prods,
            });
        }
    }
    if tables.is_empty() {
        tables.push(Table {
            name: "T".into(),
            productions: vec![Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) }],
        });
    }
    EtolSystem::new(v, g.terminals.clone(), name(g.axiom, 1, 1), tables, true)
}

/// Matrix grammar with nonterminals `(A,i,n,g)`; each (profile, table,
/// choice vector, parity) becomes a matrix rewriting every nonterminal of
/// the profile, and the parity bit keeps freshly produced nonterminals from
/// being rewritten again within the same matrix.
pub fn reduced_etol_to_matrix(g: &EtolSystem, k: usize) -> Result<MatrixGrammar> {
    let (profiles, steps) = etol_profile_steps(g, k)?;
    let nt = |s: Symbol| g.nonterminals.contains(&s);
    let name = |a: Symbol, i: usize, n: usize, p: usize| sym(&format!("({a},{i},{n},{p})"));
    let mut nonterminals: BTreeSet<Symbol> = BTreeSet::new();
    let start = name(g.axiom, 1, 1, 0);
    nonterminals.insert(start);
    let mut matrices = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((pi, parity)) = queue.pop_front() {
        let x = &profiles[pi];
        for (si, st) in steps[pi].iter().enumerate() {
            let n2 = profiles[st.target].len();
            let mut t = 0;
            let prods: Vec<Production> = x
                .iter()
                .zip(&st.choice)
                .enumerate()
                .map(|(i, (&a, alpha))| Production {
                    lhs: name(a, i + 1, x.len(), parity),
                    rhs: relabel(alpha.symbols(), &mut t, nt, |s, j| name(s, j, n2, 1 - parity)),
                })
                .collect();
            for p in &prods {
                nonterminals.insert(p.lhs);
                nonterminals.extend(p.rhs.iter().copied().filter(|s| !g.terminals.contains(s)));
            }
            matrices.push(Matrix {
                name: format!("{}.{}.{}.{}", g.tables[st.table].name, pi, si, parity),
                productions: prods,
            });
            if seen.insert((st.target, 1 - parity)) {
                queue.push_back((st.target, 1 - parity));
            }
        }
    }
    MatrixGrammar::new(nonterminals.into_iter().collect(), g.terminals.clone(), start, matrices)
}

/// Grammars used by tests, examples and the acceptance suite.
pub mod fixtures {
    use super::*;

    /// `{x#x : x ∈ {a,b}⁺}`: `m₁ [S→A#B]`, `m₂ [A→aA, B→aB]`,
    /// `m₃ [A→bA, B→bB]`, `m₄ [A→a, B→a]`, `m₅ [A→b, B→b]`.
    pub fn xsharpx() -> MatrixGrammar {
        MatrixGrammar::from_matrices(
            "S",
            vec![
                Matrix::new("m1", &[("S", "A#B")]),
                Matrix::new("m2", &[("A", "aA"), ("B", "aB")]),
                Matrix::new("m3", &[("A", "bA"), ("B", "bB")]),
                Matrix::new("m4", &[("A", "a"), ("B", "a")]),
                Matrix::new("m5", &[("A", "b"), ("B", "b")]),
            ],
        )
        .unwrap()
    }

    /// Normal-form grammar whose θ-images are long enough and not letter
    /// powers: `{a(ab)ⁿaab#b(ba)ⁿb}`.
    pub fn padded() -> MatrixGrammar {
        MatrixGrammar::from_matrices(
            "S",
            vec![
                Matrix::new("m1", &[("S", "aA#bB")]),
                Matrix::new("m2", &[("A", "abA"), ("B", "baB")]),
                Matrix::new("m3", &[("A", "aab"), ("B", "b")]),
            ],
        )
        .unwrap()
    }

    /// Two identical matrices `S → a`: the word `a` has two derivations.
    pub fn two_ways() -> MatrixGrammar {
        MatrixGrammar::from_matrices(
            "S",
            vec![Matrix::new("m1", &[("S", "a")]), Matrix::new("m2", &[("S", "a")])],
        )
        .unwrap()
    }

    /// `S → AA`, then `A → aA` or `A → b` one occurrence at a time.
    pub fn repeated_nonterminal() -> MatrixGrammar {
        MatrixGrammar::from_matrices(
            "S",
            vec![
                Matrix::new("m1", &[("S", "AA")]),
                Matrix::new("m2", &[("A", "aA")]),
                Matrix::new("m3", &[("A", "b")]),
            ],
        )
        .unwrap()
    }

    /// `S → λ` as a single matrix.
    pub fn lambda() -> MatrixGrammar {
        MatrixGrammar::from_matrices("S", vec![Matrix::new("m1", &[("S", "")])]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::automata::Nfa;
    use crate::foundation::comm_equivalent;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn apply_matrix_examples() {
        let g = xsharpx();
        assert_eq!(g.apply_matrix(&w("A#B"), 1), BTreeSet::from([w("aA#aB")]));
        assert!(g.apply_matrix(&w("a#a"), 1).is_empty());
        let r = repeated_nonterminal();
        assert_eq!(r.apply_matrix(&w("AA"), 1), BTreeSet::from([w("aAA"), w("AaA")]));
    }

    #[test]
    fn language_and_counts_of_xsharpx() {
        let g = xsharpx();
        let lang = g.language(5, &b()).unwrap();
        let shown: Vec<String> = lang.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["a#a", "b#b", "aa#aa", "ab#ab", "ba#ba", "bb#bb"]);
        for x in &lang {
            assert_eq!(g.count_derivations(x, &b()), TreeCount::Exact(1));
        }
        assert_eq!(two_ways().count_derivations(&w("a"), &b()), TreeCount::Exact(2));
        assert_eq!(g.index_audit(7, &b()).max_index, 2);
    }

    #[test]
    fn theta_examples() {
        let th = xsharpx().theta();
        assert_eq!(th[0], w("#"));
        assert_eq!(th[1], w("aa"));
        assert_eq!(repeated_nonterminal().theta()[0], Word::empty());
    }

    #[test]
    fn normal_form_identity_and_registers() {
        let g = xsharpx();
        let (nf, cert) = normal_form(&g, 2).unwrap();
        assert_eq!(nf, g);
        assert!(!cert.transformed);
        assert_eq!(cert.profiles.len(), 3);

        let r = repeated_nonterminal();
        assert!(matches!(r.check_normal_form(2), Err(Error::NormalFormViolation(_))));
        let (nf, cert) = normal_form(&r, 2).unwrap();
        assert!(cert.transformed);
        let names: Vec<&str> = nf.nonterminals.iter().map(|s| s.name()).collect();
        assert!(names.contains(&"(A,1,2,1)") && names.contains(&"(A,2,2,1)"));
        assert_eq!(nf.language(6, &b()).unwrap(), r.language(6, &b()).unwrap());
        for x in r.language(6, &b()).unwrap() {
            assert_eq!(nf.count_derivations(&x, &b()), r.count_derivations(&x, &b()), "{x}");
        }
        assert!(matches!(normal_form(&r, 1), Err(Error::IndexExceeded { .. })));
    }

    #[test]
    fn szilard_of_xsharpx_matches_hand_built() {
        let sz = szilard_dfa(&xsharpx(), 2).unwrap();
        let profiles: BTreeSet<String> = sz.profiles.iter().map(|p| p.to_string()).collect();
        assert_eq!(profiles, BTreeSet::from(["S".into(), "AB".into(), "λ".into()]));
        let hand = Nfa::from_regex("<m1>(<m2>|<m3>)*(<m4>|<m5>)").unwrap().determinize();
        assert!(sz.dfa.equivalent(&hand));
        let lam = szilard_dfa(&lambda(), 1).unwrap();
        assert_eq!(lam.dfa.num_states(), 2);
    }

    #[test]
    fn szilard_acceptance_matches_replay() {
        let g = xsharpx();
        let sz = szilard_dfa(&g, 2).unwrap();
        let th = g.theta();
        let names: Vec<Symbol> = g.matrices.iter().map(|m| sym(&m.name)).collect();
        let mut alphas: Vec<Vec<usize>> = vec![Vec::new()];
        for len in 0..=6 {
            for alpha in alphas.iter().filter(|a| a.len() == len) {
                let word: Word = alpha.iter().map(|&m| names[m]).collect();
                let forms = g.replay(alpha);
                assert!(forms.len() <= 1);
                let terminal = forms.iter().find(|f| f.iter().all(|&s| !g.is_nonterminal(s)));
                assert_eq!(sz.dfa.accepts(&word), terminal.is_some(), "{word}");
                if let Some(v) = terminal {
                    let image: Word = alpha.iter().flat_map(|&m| th[m].iter().copied()).collect();
                    assert!(comm_equivalent(v, &image));
                }
            }
            let longer: Vec<Vec<usize>> = alphas
                .iter()
                .filter(|a| a.len() == len)
                .flat_map(|a| (0..5).map(move |m| [a.clone(), vec![m]].concat()))
                .collect();
            alphas.extend(longer);
        }
    }

    #[test]
    fn conversion_chain_preserves_counts() {
        let g = xsharpx();
        let et = matrix_to_reduced_etol(&g, 2).unwrap();
        let lang = g.language(7, &b()).unwrap();
        assert_eq!(et.language(7, &b()).unwrap(), lang);
        let ed = reduced_etol_to_edtol(&et, 2).unwrap();
        assert!(ed.classify().edtol);
        assert_eq!(ed.language(7, &b()).unwrap(), lang);
        let back = reduced_etol_to_matrix(&ed, 2).unwrap();
        assert_eq!(back.language(7, &b()).unwrap(), lang);
        for x in &lang {
            assert_eq!(et.count_trees(x, &b()), TreeCount::Exact(1));
            assert_eq!(ed.count_trees(x, &b()), TreeCount::Exact(1));
            assert_eq!(back.count_derivations(x, &b()), TreeCount::Exact(1));
        }
        let amb = matrix_to_reduced_etol(&two_ways(), 1).unwrap();
        assert_eq!(amb.count_trees(&w("a"), &b()), TreeCount::Exact(2));
        let amb_ed = reduced_etol_to_edtol(&amb, 1).unwrap();
        assert_eq!(amb_ed.count_trees(&w("a"), &b()), TreeCount::Exact(2));
        assert_eq!(
            reduced_etol_to_matrix(&amb_ed, 1).unwrap().count_derivations(&w("a"), &b()),
            TreeCount::Exact(2)
        );
    }

    #[test]
    fn single_matrix_conversion() {
        let g = MatrixGrammar::from_matrices("S", vec![Matrix::new("m1", &[("S", "ab")])]).unwrap();
        let et = matrix_to_reduced_etol(&g, 1).unwrap();
        assert_eq!(et.tables.len(), 1);
        assert_eq!(et.language(4, &b()).unwrap(), vec![w("ab")]);
    }

    #[test]
    fn etol_to_edtol_on_wsharpw() {
        let g = crate::etol::fixtures::normal_terminals();
        let ed = reduced_etol_to_edtol(&g, 2).unwrap();
        assert!(ed.classify().edtol);
        assert_eq!(ed.language(7, &b()).unwrap(), g.language(7, &b()).unwrap());
        let m = reduced_etol_to_matrix(&g, 2).unwrap();
        assert_eq!(m.language(7, &b()).unwrap(), g.language(7, &b()).unwrap());
        assert!(m.check_normal_form(2).is_ok());
    }
}
