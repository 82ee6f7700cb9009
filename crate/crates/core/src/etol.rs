//! ETOL systems: parallel rewriting with tables, in plain and reduced mode.
//!
//! In plain mode every symbol is rewritten at every step and each table must
//! give every symbol at least one production. In reduced mode terminals are
//! copied verbatim, only nonterminals are rewritten, and a nonterminal without
//! a production in a table blocks that table.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundation::{sym, Budget, Symbol, Word};
use crate::semilinear::{phi, validate_semi_simple, SemilinearSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Production {
    pub lhs: Symbol,
    pub rhs: Word,
}

impl Production {
    pub fn new(lhs: &str, rhs: &str) -> Production {
        Production { lhs: sym(lhs), rhs: Word::parse(rhs) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub productions: Vec<Production>,
}

impl Table {
    pub fn new(name: &str, productions: Vec<Production>) -> Table {
        Table { name: name.to_string(), productions }
    }

    fn images(&self, s: Symbol) -> impl Iterator<Item = &Word> {
        self.productions.iter().filter(move |p| p.lhs == s).map(|p| &p.rhs)
    }
}

/// `G = (V, 𝒫, S, Σ)`. For plain systems `V = nonterminals ∪ terminals`;
/// for reduced systems `V = nonterminals` and `Σ` is disjoint from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtolSystem {
    pub nonterminals: Vec<Symbol>,
    pub terminals: Vec<Symbol>,
    pub axiom: Symbol,
    pub tables: Vec<Table>,
    pub reduced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub edtol: bool,
    pub e0l: bool,
    pub ed0l: bool,
}

/// Number of derivation trees of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeCount {
    Exact(u64),
    /// Some cycle of sentential forms can be traversed arbitrarily often on
    /// the way to the word.
    Infinite,
    /// The search was cut by the budget after finding this many trees.
    AtLeast(u64),
}

impl TreeCount {
    pub fn exact(self) -> Option<u64> {
        match self {
            TreeCount::Exact(n) => Some(n),
            _ => None,
        }
    }
}

impl std::fmt::Display for TreeCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeCount::Exact(n) => write!(f, "{n}"),
            TreeCount::Infinite => write!(f, "≥ budget (infinitely many)"),
            TreeCount::AtLeast(n) => write!(f, "≥ {n} (budget exhausted)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexAudit {
    /// Minimal derivation index found for each generated word.
    pub per_word: BTreeMap<String, usize>,
    pub max_index: usize,
    /// Witness attaining `max_index`.
    pub witness: Option<Word>,
    pub max_len: usize,
    /// False when the budget cut the exploration.
    pub complete: bool,
}

impl EtolSystem {
    pub fn new(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        axiom: Symbol,
        tables: Vec<Table>,
        reduced: bool,
    ) -> Result<EtolSystem> {
        let g = EtolSystem { nonterminals, terminals, axiom, tables, reduced };
        g.validate()?;
        Ok(g)
    }

    /// Infers the nonterminals (left-hand sides and axiom) and terminals (the
    /// remaining right-hand-side symbols) of a reduced system.
    pub fn reduced_from_tables(axiom: &str, tables: Vec<Table>) -> Result<EtolSystem> {
        let axiom = sym(axiom);
        let mut nts: Vec<Symbol> = vec![axiom];
        for t in &tables {
            for p in &t.productions {
                if !nts.contains(&p.lhs) {
                    nts.push(p.lhs);
                }
            }
        }
        let mut ts: Vec<Symbol> = Vec::new();
        for t in &tables {
            for p in &t.productions {
                for &s in &p.rhs {
                    if !nts.contains(&s) && !ts.contains(&s) {
                        ts.push(s);
                    }
                }
            }
        }
        EtolSystem::new(nts, ts, axiom, tables, true)
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
        if self.tables.is_empty() {
            return Err(Error::Invalid("no tables".into()));
        }
        let known = |s: &Symbol| nts.contains(s) || ts.contains(s);
        if !known(&self.axiom) {
            return Err(Error::Invalid(format!("axiom `{}` is not a symbol", self.axiom)));
        }
        for t in &self.tables {
            for p in &t.productions {
                if !known(&p.lhs) {
                    return Err(Error::Invalid(format!("unknown symbol `{}`", p.lhs)));
                }
                if self.reduced && ts.contains(&p.lhs) {
                    return Err(Error::Invalid(format!(
                        "reduced system rewrites terminal `{}`",
                        p.lhs
                    )));
                }
                if let Some(s) = p.rhs.iter().find(|s| !known(s)) {
                    return Err(Error::Invalid(format!("unknown symbol `{s}`")));
                }
            }
            if !self.reduced {
                for s in self.nonterminals.iter().chain(&self.terminals) {
                    if t.images(*s).next().is_none() {
                        return Err(Error::Invalid(format!(
                            "table `{}` has no production for `{s}`",
                            t.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_terminal(&self, s: Symbol) -> bool {
        self.terminals.contains(&s)
    }

    fn rewrites(&self, s: Symbol) -> bool {
        !self.reduced || !self.is_terminal(s)
    }

    pub fn classify(&self) -> Classification {
        let edtol = self.tables.iter().all(|t| {
            let mut seen = HashMap::new();
            t.productions.iter().all(|p| *seen.entry(p.lhs).or_insert(&p.rhs) == &p.rhs)
        });
        let e0l = self.tables.len() == 1;
        Classification { edtol, e0l, ed0l: edtol && e0l }
    }

    /// Symbols `X` with some production `X → α`, `α ≠ X`.
    pub fn active_symbols(&self) -> BTreeSet<Symbol> {
        self.tables
            .iter()
            .flat_map(|t| &t.productions)
            .filter(|p| p.rhs.symbols() != [p.lhs])
            .map(|p| p.lhs)
            .collect()
    }

    /// Symbols counted by the index: nonterminals in reduced mode, active
    /// symbols otherwise.
    fn counted(&self) -> HashSet<Symbol> {
        if self.reduced {
            self.nonterminals.iter().copied().collect()
        } else {
            self.active_symbols().into_iter().collect()
        }
    }

    /// All successors of `form` under table `t`. A form with no rewritable
    /// symbol in reduced mode is its own unique successor.
    pub fn step(&self, form: &Word, t: usize) -> Result<BTreeSet<Word>> {
        let table = self
            .tables
            .get(t)
            .ok_or_else(|| Error::Invalid(format!("table index {t} out of range")))?;
        let mut acc: BTreeSet<Vec<Symbol>> = BTreeSet::from([Vec::new()]);
        for &s in form {
            if !self.rewrites(s) {
                acc = acc.into_iter().map(|mut v| { v.push(s); v }).collect();
                continue;
            }
            let images: Vec<&Word> = table.images(s).collect();
            if images.is_empty() {
                if self.reduced {
                    return Ok(BTreeSet::new());
                }
                return Err(Error::Invalid(format!("table `{}` has no production for `{s}`", table.name)));
            }
            let mut next = BTreeSet::new();
            for prefix in &acc {
                for img in &images {
                    let mut v = prefix.clone();
                    v.extend(img.iter().copied());
                    next.insert(v);
                }
            }
            acc = next;
        }
        Ok(acc.into_iter().map(Word::from_symbols).collect())
    }

    /// `L(G) ∩ Σ^{≤max_len}` in shortlex order.
    pub fn language(&self, max_len: usize, budget: &Budget) -> Result<Vec<Word>> {
        let graph = FormGraph::explore(self, max_len, budget)?;
        if graph.truncated {
            return Err(Error::BudgetExhausted(format!(
                "ETOL exploration cut at {} forms / sentential length {}",
                graph.forms.len(),
                budget.sentential_cap(max_len)
            )));
        }
        let mut out: Vec<Word> = graph.terminal_words(self, max_len).map(|(_, w)| w.clone()).collect();
        crate::foundation::sort_shortlex(&mut out);
        Ok(out)
    }

    /// Number of derivation trees of `w`. A derivation tree fixes, level by
    /// level, the table used and the production applied at every node, so a
    /// tree is the same thing as a sequence of (table, production choices).
    pub fn count_trees(&self, w: &Word, budget: &Budget) -> TreeCount {
        let graph = match FormGraph::explore(self, w.len(), budget) {
            Ok(g) => g,
            Err(_) => return TreeCount::AtLeast(0),
        };
        let Some(&target) = graph.index.get(w) else {
            return if graph.truncated { TreeCount::AtLeast(0) } else { TreeCount::Exact(0) };
        };
        graph.count_paths(0, target)
    }

    /// Minimal derivation index of every generated word up to `max_len`.
    pub fn index_audit(&self, max_len: usize, budget: &Budget) -> IndexAudit {
        let counted = self.counted();
        let (graph, complete) = match FormGraph::explore(self, max_len, budget) {
            Ok(g) => {
                let c = !g.truncated;
                (g, c)
            }
            Err(_) => {
                return IndexAudit {
                    per_word: BTreeMap::new(),
                    max_index: 0,
                    witness: None,
                    max_len,
                    complete: false,
                }
            }
        };
        let weight: Vec<usize> = graph
            .forms
            .iter()
            .map(|f| f.iter().filter(|s| counted.contains(s)).count())
            .collect();
        let best = graph.bottleneck(&weight);
        let mut per_word = BTreeMap::new();
        let mut max_index = 0;
        let mut witness = None;
        let mut words: Vec<(usize, &Word)> = graph.terminal_words(self, max_len).collect();
        words.sort_by(|a, b| a.1.shortlex_cmp(b.1));
        for (i, w) in words {
            let idx = best[i];
            per_word.insert(w.to_string(), idx);
            if idx > max_index || witness.is_none() {
                if idx >= max_index {
                    max_index = idx;
                    witness = Some(w.clone());
                }
            }
        }
        IndexAudit { per_word, max_index, witness, max_len, complete }
    }

    /// Maximum tree count over generated words of length ≤ `max_len`.
    pub fn ambiguity_audit(&self, max_len: usize, budget: &Budget) -> Result<BTreeMap<Word, TreeCount>> {
        let mut out = BTreeMap::new();
        for w in self.language(max_len, budget)? {
            let c = self.count_trees(&w, budget);
            out.insert(w, c);
        }
        Ok(out)
    }

    fn fresh(&self, base: &str) -> Symbol {
        let used: HashSet<Symbol> =
            self.nonterminals.iter().chain(&self.terminals).copied().collect();
        let mut name = base.to_string();
        while used.contains(&sym(&name)) {
            name.push('\'');
        }
        sym(&name)
    }
}

/// Lower bound on the length of any terminal word a symbol can still yield
/// (`None` = no terminal word at all).
fn min_yields(g: &EtolSystem) -> HashMap<Symbol, Option<usize>> {
    let mut l: HashMap<Symbol, Option<usize>> = HashMap::new();
    for &s in g.nonterminals.iter().chain(&g.terminals) {
        l.insert(s, if g.is_terminal(s) { Some(1) } else { None });
    }
    let sum = |l: &HashMap<Symbol, Option<usize>>, w: &Word| -> Option<usize> {
        w.iter().try_fold(0usize, |acc, s| l[s].map(|x| acc + x))
    };
    loop {
        let mut changed = false;
        for s in g.nonterminals.iter().chain(&g.terminals).copied() {
            if g.reduced && g.is_terminal(s) {
                continue;
            }
            let mut best = l[&s];
            for t in &g.tables {
                for img in t.images(s) {
                    if let Some(v) = sum(&l, img) {
                        if best.is_none_or(|b| v < b) {
                            best = Some(v);
                        }
                    }
                }
            }
            if best != l[&s] {
                l.insert(s, best);
                changed = true;
            }
        }
        if !changed {
            return l;
        }
    }
}

/// The graph of sentential forms reachable from the axiom whose lower yield
/// bound does not exceed a length bound.
#[derive(Default)]
pub(crate) struct FormGraph {
    pub(crate) forms: Vec<Word>,
    pub(crate) index: HashMap<Word, usize>,
    /// `(label, target, multiplicity)`.
    pub(crate) edges: Vec<Vec<(usize, usize, u64)>>,
    pub(crate) truncated: bool,
}

impl FormGraph {
    fn explore(g: &EtolSystem, bound: usize, budget: &Budget) -> Result<FormGraph> {
        let l = min_yields(g);
        let cap = budget.sentential_cap(bound);
        let lb = |w: &[Symbol]| w.iter().try_fold(0usize, |acc, s| l[s].map(|x| acc + x));
        let axiom = Word::from_symbols(vec![g.axiom]);
        if lb(axiom.symbols()).is_none_or(|x| x > bound) {
            return Ok(FormGraph::default());
        }
        Ok(FormGraph::build(axiom, budget.max_states, |form, truncated| {
            let mut out = Vec::new();
            if g.reduced && form.iter().all(|&s| g.is_terminal(s)) {
                return out;
            }
            for (ti, table) in g.tables.iter().enumerate() {
                if let Some(succ) = successors(g, table, form, &l, bound, cap, truncated) {
                    let mut succ: Vec<(Word, u64)> = succ.into_iter().collect();
                    succ.sort();
                    out.extend(succ.into_iter().map(|(w, m)| (ti, w, m)));
                }
            }
            out
        }))
    }

    /// Breadth-first closure of `root` under `expand`, which lists labelled
    /// successors with multiplicities and may flag truncation.
    pub(crate) fn build(
        root: Word,
        max_states: usize,
        mut expand: impl FnMut(&Word, &mut bool) -> Vec<(usize, Word, u64)>,
    ) -> FormGraph {
        let mut graph = FormGraph::default();
        graph.index.insert(root.clone(), 0);
        graph.forms.push(root);
        graph.edges.push(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let form = graph.forms[i].clone();
            for (label, w, mult) in expand(&form, &mut graph.truncated) {
                let j = match graph.index.get(&w) {
                    Some(&j) => j,
                    None => {
                        if graph.forms.len() >= max_states {
                            graph.truncated = true;
                            continue;
                        }
                        let j = graph.forms.len();
                        graph.index.insert(w.clone(), j);
                        graph.forms.push(w);
                        graph.edges.push(Vec::new());
                        queue.push_back(j);
                        j
                    }
                };
                graph.edges[i].push((label, j, mult));
            }
        }
        graph
    }

    fn terminal_words<'a>(
        &'a self,
        g: &'a EtolSystem,
        max_len: usize,
    ) -> impl Iterator<Item = (usize, &'a Word)> + 'a {
        self.forms
            .iter()
            .enumerate()
            .filter(move |(_, w)| w.len() <= max_len && w.iter().all(|&s| g.is_terminal(s)))
    }

    /// Minimum over paths from node 0 of the maximum weight along the path.
    pub(crate) fn bottleneck(&self, weight: &[usize]) -> Vec<usize> {
        let mut best = vec![usize::MAX; self.forms.len()];
        if self.forms.is_empty() {
            return best;
        }
        best[0] = weight[0];
        let mut heap = BinaryHeap::from([Reverse((weight[0], 0usize))]);
        while let Some(Reverse((c, i))) = heap.pop() {
            if c > best[i] {
                continue;
            }
            for &(_, j, _) in &self.edges[i] {
                let nc = c.max(weight[j]);
                if nc < best[j] {
                    best[j] = nc;
                    heap.push(Reverse((nc, j)));
                }
            }
        }
        best
    }

    pub(crate) fn count_paths(&self, from: usize, target: usize) -> TreeCount {
        let n = self.forms.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, es) in self.edges.iter().enumerate() {
            for &(_, j, _) in es {
                rev[j].push(i);
            }
        }
        let mut co = vec![false; n];
        co[target] = true;
        let mut stack = vec![target];
        while let Some(j) = stack.pop() {
            for &i in &rev[j] {
                if !co[i] {
                    co[i] = true;
                    stack.push(i);
                }
            }
        }
        if !co[from] {
            return if self.truncated { TreeCount::AtLeast(0) } else { TreeCount::Exact(0) };
        }
        // Iterative DFS: detect cycles within co-reachable nodes and count.
        let mut state = vec![0u8; n];
        let mut count: Vec<u64> = vec![0; n];
        let mut stack: Vec<(usize, usize)> = vec![(from, 0)];
        state[from] = 1;
        while let Some(&mut (i, ref mut k)) = stack.last_mut() {
            if *k < self.edges[i].len() {
                let (_, j, _) = self.edges[i][*k];
                *k += 1;
                if !co[j] {
                    continue;
                }
                match state[j] {
                    0 => {
                        state[j] = 1;
                        stack.push((j, 0));
                    }
                    1 => return TreeCount::Infinite,
                    _ => {}
                }
            } else {
                let mut c: u64 = (i == target) as u64;
                for &(_, j, m) in &self.edges[i] {
                    if co[j] {
                        c = c.saturating_add(m.saturating_mul(count[j]));
                    }
                }
                count[i] = c;
                state[i] = 2;
                stack.pop();
            }
        }
        if self.truncated {
            TreeCount::AtLeast(count[from])
        } else {
            TreeCount::Exact(count[from])
        }
    }
}

/// Successors of `form` under one table, with the number of production
/// choice vectors producing each. `None` when the table is blocked.
fn successors(
    g: &EtolSystem,
    table: &Table,
    form: &Word,
    l: &HashMap<Symbol, Option<usize>>,
    bound: usize,
    cap: usize,
    truncated: &mut bool,
) -> Option<HashMap<Word, u64>> {
    let syms = form.symbols();
    // suffix[i] = lower bound contributed by syms[i..].
    let mut suffix = vec![0usize; syms.len() + 1];
    for i in (0..syms.len()).rev() {
        suffix[i] = suffix[i + 1] + l[&syms[i]].unwrap_or(usize::MAX / 4);
    }
    let lb_of = |v: &[Symbol]| v.iter().map(|s| l[s].unwrap_or(usize::MAX / 4)).sum::<usize>();
    let mut acc: HashMap<Vec<Symbol>, (usize, u64)> = HashMap::from([(Vec::new(), (0, 1))]);
    for (i, &s) in syms.iter().enumerate() {
        let mut next: HashMap<Vec<Symbol>, (usize, u64)> = HashMap::new();
        if !g.rewrites(s) {
            for (mut v, (lb, m)) in acc {
                v.push(s);
                next.insert(v, (lb + 1, m));
            }
        } else {
            let images: Vec<&Word> = table.images(s).collect();
            if images.is_empty() {
                return None;
            }
            for (v, (lb, m)) in &acc {
                for img in &images {
                    let add = lb_of(img.symbols());
                    let nlb = lb + add;
                    if nlb + suffix[i + 1] > bound {
                        continue;
                    }
                    let mut nv = v.clone();
                    nv.extend(img.iter().copied());
                    if nv.len() > cap {
                        *truncated = true;
                        continue;
                    }
                    let e = next.entry(nv).or_insert((nlb, 0));
                    e.1 = e.1.saturating_add(*m);
                }
            }
        }
        acc = next;
    }
    Some(acc.into_iter().map(|(v, (_, m))| (Word::from_symbols(v), m)).collect())
}

/// Makes every nonterminal active and every terminal inactive: active
/// terminals get primed nonterminal stand-ins, a finishing table turns
/// primed symbols into terminals and everything else into a dead symbol.
pub fn active_normal_form(g: &EtolSystem) -> EtolSystem {
    let active = g.active_symbols();
    let nts: BTreeSet<Symbol> = g.nonterminals.iter().copied().collect();
    if g.reduced
        || (active.iter().all(|s| nts.contains(s)) && nts.iter().all(|s| active.contains(s)))
    {
        return g.clone();
    }
    let dead = g.fresh("F");
    let primed: HashMap<Symbol, Symbol> = g
        .terminals
        .iter()
        .filter(|a| active.contains(a))
        .map(|&a| (a, g.fresh(&format!("{a}'"))))
        .collect();
    let pr = |s: Symbol| primed.get(&s).copied().unwrap_or(s);
    let mut tables = Vec::new();
    for t in &g.tables {
        let mut prods: Vec<Production> = t
            .productions
            .iter()
            .map(|p| Production { lhs: pr(p.lhs), rhs: p.rhs.iter().map(|&s| pr(s)).collect() })
            .collect();
        for &a in primed.keys() {
            prods.push(Production { lhs: a, rhs: Word::from_symbols(vec![a]) });
        }
        prods.push(Production { lhs: dead, rhs: Word::from_symbols(vec![dead, dead]) });
        tables.push(Table { name: t.name.clone(), productions: prods });
    }
    let mut fin = Vec::new();
    for (&a, &ap) in &primed {
        fin.push(Production { lhs: ap, rhs: Word::from_symbols(vec![a]) });
    }
    for &a in &g.terminals {
        fin.push(Production { lhs: a, rhs: Word::from_symbols(vec![a]) });
    }
    for &x in &g.nonterminals {
        fin.push(Production { lhs: x, rhs: Word::from_symbols(vec![dead]) });
    }
    fin.push(Production { lhs: dead, rhs: Word::from_symbols(vec![dead, dead]) });
    tables.push(Table { name: "$".into(), productions: fin });
    let mut nonterminals = g.nonterminals.clone();
    let mut ps: Vec<Symbol> = primed.values().copied().collect();
    ps.sort();
    nonterminals.extend(ps);
    nonterminals.push(dead);
    EtolSystem {
        nonterminals,
        terminals: g.terminals.clone(),
        axiom: pr(g.axiom),
        tables,
        reduced: false,
    }
}

/// Reduced system with the same language, index, and no more derivation
/// trees per word: active terminals become primed nonterminals, inactive
/// terminals stop being rewritten, and a finishing table `$` maps primed
/// symbols to terminals and every other nonterminal to a dead symbol.
pub fn to_reduced(g: &EtolSystem) -> EtolSystem {
    if g.reduced {
        return g.clone();
    }
    let active = g.active_symbols();
    let dead = g.fresh("F");
    let primed: BTreeMap<Symbol, Symbol> = g
        .terminals
        .iter()
        .filter(|a| active.contains(a))
        .map(|&a| (a, g.fresh(&format!("{a}'"))))
        .collect();
    let pr = |s: Symbol| primed.get(&s).copied().unwrap_or(s);
    let mut tables = Vec::new();
    for t in &g.tables {
        let mut prods: Vec<Production> = t
            .productions
            .iter()
            .filter(|p| !(g.is_terminal(p.lhs) && !active.contains(&p.lhs)))
            .map(|p| Production { lhs: pr(p.lhs), rhs: p.rhs.iter().map(|&s| pr(s)).collect() })
            .collect();
        prods.push(Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) });
        tables.push(Table { name: t.name.clone(), productions: prods });
    }
    let mut fin = Vec::new();
    for (&a, &ap) in &primed {
        fin.push(Production { lhs: ap, rhs: Word::from_symbols(vec![a]) });
    }
    for &x in &g.nonterminals {
        fin.push(Production { lhs: x, rhs: Word::from_symbols(vec![dead]) });
    }
    fin.push(Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) });
    tables.push(Table { name: "$".into(), productions: fin });
    let mut nonterminals = g.nonterminals.clone();
    nonterminals.extend(primed.values().copied());
    nonterminals.push(dead);
    EtolSystem {
        nonterminals,
        terminals: g.terminals.clone(),
        axiom: pr(g.axiom),
        tables,
        reduced: true,
    }
}

/// Plain system simulating a reduced one with the same derivation-tree
/// counts. Barred symbols mark guessed maximal-height paths; subscript-1
/// terminals must age to subscript 2 before the finishing table `$` turns
/// them (and barred terminals) into real terminals.
pub fn from_reduced(g: &EtolSystem) -> Result<EtolSystem> {
    if !g.reduced {
        return Err(Error::Precondition("from_reduced needs a reduced system".into()));
    }
    let used: HashSet<Symbol> = g.nonterminals.iter().chain(&g.terminals).copied().collect();
    let fresh = |base: String| {
        let mut name = base;
        while used.contains(&sym(&name)) {
            name.push('\'');
        }
        sym(&name)
    };
    let lam = "λ".to_string();
    let bar: HashMap<Option<Symbol>, Symbol> = g
        .nonterminals
        .iter()
        .chain(&g.terminals)
        .map(|&s| (Some(s), fresh(format!("{s}¯"))))
        .chain([(None, fresh(format!("{lam}¯")))])
        .collect();
    let sub1: HashMap<Option<Symbol>, Symbol> = g
        .terminals
        .iter()
        .map(|&a| (Some(a), fresh(format!("{a}₁"))))
        .chain([(None, fresh(format!("{lam}₁")))])
        .collect();
    let sub2: HashMap<Option<Symbol>, Symbol> = g
        .terminals
        .iter()
        .map(|&a| (Some(a), fresh(format!("{a}₂"))))
        .chain([(None, fresh(format!("{lam}₂")))])
        .collect();
    let dead = fresh("F".into());
    let is_nt = |s: &Symbol| g.nonterminals.contains(s);
    let h1 = |alpha: &Word| -> Vec<Symbol> {
        if alpha.is_empty() {
            return vec![sub1[&None]];
        }
        alpha.iter().map(|s| if is_nt(s) { *s } else { sub1[&Some(*s)] }).collect()
    };
    let one = |s: Symbol| Word::from_symbols(vec![s]);
    let mut all: Vec<Symbol> = g.nonterminals.clone();
    all.extend(g.terminals.iter().copied());
    let mut barred: Vec<Symbol> = bar.values().copied().collect();
    barred.sort();
    all.extend(barred);
    let mut subs: Vec<Symbol> = sub1.values().chain(sub2.values()).copied().collect();
    subs.sort();
    all.extend(subs);
    all.push(dead);

    let mut tables = Vec::new();
    for t in &g.tables {
        let mut prods: Vec<Production> = Vec::new();
        for p in &t.productions {
            let base = h1(&p.rhs);
            prods.push(Production { lhs: p.lhs, rhs: Word::from_symbols(base.clone()) });
            let positions: Vec<usize> =
                (0..base.len()).filter(|&i| is_nt(&base[i]) && !p.rhs.is_empty()).collect();
            if positions.is_empty() {
                let rhs: Vec<Symbol> = if p.rhs.is_empty() {
                    vec![bar[&None]]
                } else {
                    p.rhs.iter().map(|s| bar[&Some(*s)]).collect()
                };
                prods.push(Production { lhs: bar[&Some(p.lhs)], rhs: Word::from_symbols(rhs) });
            } else {
                for mask in 1u64..(1 << positions.len()) {
                    let mut rhs = base.clone();
                    for (bit, &pos) in positions.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            rhs[pos] = bar[&Some(rhs[pos])];
                        }
                    }
                    prods.push(Production { lhs: bar[&Some(p.lhs)], rhs: Word::from_symbols(rhs) });
                }
            }
        }
        for key in sub1.keys() {
            prods.push(Production { lhs: sub1[key], rhs: one(sub2[key]) });
            prods.push(Production { lhs: sub2[key], rhs: one(sub2[key]) });
        }
        for &a in &g.terminals {
            prods.push(Production { lhs: a, rhs: one(dead) });
        }
        prods.push(Production { lhs: dead, rhs: one(dead) });
        complete_with(&mut prods, &all, dead);
        tables.push(Table { name: format!("{}¯", t.name), productions: prods });
    }
    let mut fin: Vec<Production> = vec![Production { lhs: dead, rhs: one(dead) }];
    for (key, &b) in &bar {
        let rhs = match key {
            Some(s) if !is_nt(s) => one(*s),
            None => Word::empty(),
            Some(_) => one(dead),
        };
        fin.push(Production { lhs: b, rhs });
    }
    for key in sub1.keys() {
        fin.push(Production { lhs: sub1[key], rhs: one(dead) });
        let rhs = key.map_or(Word::empty(), one);
        fin.push(Production { lhs: sub2[key], rhs });
    }
    for &a in &g.terminals {
        fin.push(Production { lhs: a, rhs: one(dead) });
    }
    for &x in &g.nonterminals {
        fin.push(Production { lhs: x, rhs: one(dead) });
    }
    fin.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    tables.push(Table { name: "$".into(), productions: fin });
    let nonterminals: Vec<Symbol> = all.iter().copied().filter(|s| !g.terminals.contains(s)).collect();
    EtolSystem::new(nonterminals, g.terminals.clone(), bar[&Some(g.axiom)], tables, false)
}

fn complete_with(prods: &mut Vec<Production>, all: &[Symbol], dead: Symbol) {
    let have: HashSet<Symbol> = prods.iter().map(|p| p.lhs).collect();
    for &s in all {
        if !have.contains(&s) {
            prods.push(Production { lhs: s, rhs: Word::from_symbols(vec![dead]) });
        }
    }
}

/// Two-table plain system of index `k` for `{a₁^{l₁}⋯a_k^{l_k} : l ∈ Q}`.
/// `P₁` seeds each component and advances through its periods; `P₀` pumps
/// the current period. Components share the tables and a fresh axiom.
pub fn semilinear_to_etol(q: &SemilinearSet, letters: &[Symbol]) -> Result<EtolSystem> {
    let k = letters.len();
    if q.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: q.dim() });
    }
    if letters.iter().collect::<HashSet<_>>().len() != k {
        return Err(Error::NotDistinctLetters);
    }
    let name = |base: &str| {
        let mut s = base.to_string();
        while letters.contains(&sym(&s)) {
            s.push('\'');
        }
        sym(&s)
    };
    let axiom = name("S");
    let dead = name("Z");
    let mut p0 = vec![
        Production { lhs: axiom, rhs: Word::from_symbols(vec![dead]) },
        Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) },
    ];
    let mut p1 = vec![Production { lhs: dead, rhs: Word::from_symbols(vec![dead]) }];
    for &a in letters {
        p0.push(Production { lhs: a, rhs: Word::from_symbols(vec![a]) });
        p1.push(Production { lhs: a, rhs: Word::from_symbols(vec![a]) });
    }
    let mut nonterminals = vec![axiom, dead];
    let multi = q.components.len() > 1;
    for (c, comp) in q.components.iter().enumerate() {
        let r = comp.periods.len();
        let power = |i: usize, n: u64| Word::from_symbols(vec![letters[i]; n as usize]);
        if r == 0 {
            p1.push(Production { lhs: axiom, rhs: phi(&letters.iter().map(|&a| Word::from_symbols(vec![a])).collect::<Vec<_>>(), &comp.constant)? });
            continue;
        }
        let x = |i: usize, j: usize| {
            if multi {
                name(&format!("X{}_{}_{}", c + 1, i + 1, j + 1))
            } else {
                name(&format!("X{}_{}", i + 1, j + 1))
            }
        };
        let mut seed = Word::empty();
        for i in 0..k {
            seed.extend_from(&power(i, comp.constant[i]));
            seed.push(x(i, 0));
        }
        p1.push(Production { lhs: axiom, rhs: seed });
        for i in 0..k {
            for j in 0..r {
                nonterminals.push(x(i, j));
                let mut pumped = power(i, comp.periods[j][i]);
                pumped.push(x(i, j));
                p0.push(Production { lhs: x(i, j), rhs: pumped });
                let adv = if j + 1 < r { Word::from_symbols(vec![x(i, j + 1)]) } else { Word::empty() };
                p1.push(Production { lhs: x(i, j), rhs: adv });
            }
        }
    }
    EtolSystem::new(
        nonterminals,
        letters.to_vec(),
        axiom,
        vec![Table::new("P0", p0), Table::new("P1", p1)],
        false,
    )
}

/// Unambiguous reduced system for `φ(Q)` where `Q` is semi-simple and `φ` is
/// injective on `Q`. A seed table guesses the linear component and opens `k`
/// branches; for each period in turn a pump table adds `w_s^{v_j(s)}` to
/// every branch `s` and an advance table moves to the next period (erasing
/// the branch markers after the last one).
pub fn unambiguous_bounded_etol(
    words: &[Word],
    q: &SemilinearSet,
    box_bound: u64,
    check_len: usize,
) -> Result<EtolSystem> {
    let k = words.len();
    if q.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: q.dim() });
    }
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::Invalid("empty word in tuple".into()));
    }
    let report = validate_semi_simple(q, box_bound);
    if !report.validated {
        let why = if let Some(i) = report.independent.iter().position(|b| !b) {
            format!("component {i} has linearly dependent periods")
        } else {
            let (i, j, v) = &report.collisions[0];
            format!("components {i} and {j} share {v:?}")
        };
        return Err(Error::SemiSimpleFailed(why));
    }
    check_injective_on(words, q, check_len)?;

    let mut letters: HashSet<Symbol> = HashSet::new();
    for w in words {
        letters.extend(w.iter().copied());
    }
    let name = |base: String| {
        let mut s = base;
        while letters.contains(&sym(&s)) {
            s.push('\'');
        }
        sym(&s)
    };
    let axiom = name("S".into());
    let mut seed = Vec::new();
    let mut tables = Vec::new();
    for (c, comp) in q.components.iter().enumerate() {
        let r = comp.periods.len();
        if r == 0 {
            seed.push(Production { lhs: axiom, rhs: phi(words, &comp.constant)? });
            continue;
        }
        let b = |s: usize, j: usize| name(format!("B{}_{}_{}", c + 1, s + 1, j + 1));
        let mut rhs = Word::empty();
        for s in 0..k {
            rhs.extend_from(&words[s].repeat(comp.constant[s] as usize));
            rhs.push(b(s, 0));
        }
        seed.push(Production { lhs: axiom, rhs });
        for j in 0..r {
            let pump = (0..k)
                .map(|s| {
                    let mut rhs = words[s].repeat(comp.periods[j][s] as usize);
                    rhs.push(b(s, j));
                    Production { lhs: b(s, j), rhs }
                })
                .collect();
            let advance = (0..k)
                .map(|s| Production {
                    lhs: b(s, j),
                    rhs: if j + 1 < r { Word::from_symbols(vec![b(s, j + 1)]) } else { Word::empty() },
                })
                .collect();
            tables.push(Table { name: format!("pump{}_{}", c + 1, j + 1), productions: pump });
            tables.push(Table { name: format!("next{}_{}", c + 1, j + 1), productions: advance });
        }
    }
    tables.insert(0, Table { name: "seed".into(), productions: seed });
    EtolSystem::reduced_from_tables(axiom.name(), tables)
}

/// Fails if some word of length ≤ `max_len` is `φ(t)` for two tuples of `Q`.
pub fn check_injective_on(words: &[Word], q: &SemilinearSet, max_len: usize) -> Result<()> {
    let spec = crate::semilinear::BoundedSpec::ginsburg(words.to_vec(), q.clone())?;
    let mut ws = crate::semilinear::enumerate_bounded(&spec, max_len)?;
    crate::foundation::sort_shortlex(&mut ws);
    for w in ws {
        let count = crate::foundation::decompositions(&w, words)
            .into_iter()
            .filter(|t| q.member(&t.iter().map(|&x| x as u64).collect::<Vec<_>>()).unwrap_or(false))
            .count();
        if count > 1 {
            return Err(Error::InjectivityFailed { word: w, count });
        }
    }
    Ok(())
}

/// Systems used by tests, examples and the acceptance suite.
pub mod fixtures {
    use super::*;

    /// Reduced, tables `P_S {S→X#X}`, `P_a {X→aX}`, `P_b {X→bX}`, `P_f {X→λ}`;
    /// generates `{w#w : w ∈ {a,b}*}` unambiguously.
    pub fn normal_terminals() -> EtolSystem {
        EtolSystem::reduced_from_tables(
            "S",
            vec![
                Table::new("P_S", vec![Production::new("S", "X#X")]),
                Table::new("P_a", vec![Production::new("X", "aX")]),
                Table::new("P_b", vec![Production::new("X", "bX")]),
                Table::new("P_f", vec![Production::new("X", "")]),
            ],
        )
        .unwrap()
    }

    /// Plain version of [`normal_terminals`] in which `a` is active (it may
    /// also be rewritten to a dead symbol `D`).
    pub fn wsharpw_plain() -> EtolSystem {
        let keep = |t: &[&str]| -> Vec<Production> { t.iter().map(|s| Production::new(s, s)).collect() };
        let mk = |name: &str, special: Vec<Production>, idle: &[&str]| {
            let mut p = special;
            p.extend(keep(idle));
            p.extend(keep(&["a", "b", "#", "D"]));
            Table::new(name, p)
        };
        let ps = {
            let mut t = mk("P_S", vec![Production::new("S", "X#X")], &["X"]);
            t.productions.push(Production::new("a", "D"));
            t
        };
        EtolSystem::new(
            vec![sym("S"), sym("X"), sym("D")],
            vec![sym("a"), sym("b"), sym("#")],
            sym("S"),
            vec![
                ps,
                mk("P_a", vec![Production::new("X", "aX")], &["S"]),
                mk("P_b", vec![Production::new("X", "bX")], &["S"]),
                mk("P_f", vec![Production::new("X", "")], &["S"]),
            ],
            false,
        )
        .unwrap()
    }

    /// Reduced, `S → a` in two tables: `a` has two derivation trees.
    pub fn two_tables_same_rule() -> EtolSystem {
        EtolSystem::reduced_from_tables(
            "S",
            vec![
                Table::new("T1", vec![Production::new("S", "a")]),
                Table::new("T2", vec![Production::new("S", "a")]),
            ],
        )
        .unwrap()
    }

    /// Reduced `{aⁿbⁿ : n ≥ 1}`: `P {S→aXb, X→aXb}`, `Q {S→ab, X→ab}`.
    pub fn anbn() -> EtolSystem {
        EtolSystem::reduced_from_tables(
            "S",
            vec![
                Table::new("P", vec![Production::new("S", "aXb"), Production::new("X", "aXb")]),
                Table::new("Q", vec![Production::new("S", "ab"), Production::new("X", "ab")]),
            ],
        )
        .unwrap()
    }

    /// Plain single-table deterministic system from `axiom` with productions
    /// `lhs → rhs` for every listed pair; the terminals are `terminals`.
    pub fn edol(axiom: &str, rules: &[(&str, &str)], terminals: &str) -> EtolSystem {
        let ts: Vec<Symbol> = Word::parse(terminals).into_symbols();
        let mut nts: Vec<Symbol> = Vec::new();
        for (l, _) in rules {
            let s = sym(l);
            if !ts.contains(&s) && !nts.contains(&s) {
                nts.push(s);
            }
        }
        let prods = rules.iter().map(|(l, r)| Production::new(l, r)).collect();
        EtolSystem::new(nts, ts, sym(axiom), vec![Table::new("P", prods)], false).unwrap()
    }

    /// `{abⁿ : n ≥ 0}` from `a` with `a → ab`, `b → b`.
    pub fn ab_n() -> EtolSystem {
        edol("a", &[("a", "ab"), ("b", "b")], "ab")
    }

    /// `{a^{2ⁿ}}` from `a` with `a → aa`.
    pub fn powers_of_two() -> EtolSystem {
        edol("a", &[("a", "aa")], "a")
    }

    /// `S → a`, `a → a`: the finite language `{a}`.
    pub fn single_a() -> EtolSystem {
        edol("S", &[("S", "a"), ("a", "a")], "a")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::semilinear::{fixtures as sets, LinearSet};

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn step_examples() {
        let g = normal_terminals();
        assert_eq!(g.step(&w("X#X"), 1).unwrap(), BTreeSet::from([w("aX#aX")]));
        assert_eq!(g.step(&w("a#a"), 2).unwrap(), BTreeSet::from([w("a#a")]));
        let d = ab_n();
        assert_eq!(d.step(&w("ab"), 0).unwrap(), BTreeSet::from([w("abb")]));
        // P_a has no production for S: blocked.
        assert!(g.step(&w("S"), 1).unwrap().is_empty());
    }

    #[test]
    fn language_of_normal_terminals() {
        let lang = normal_terminals().language(5, &b()).unwrap();
        let shown: Vec<String> = lang.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["#", "a#a", "b#b", "aa#aa", "ab#ab", "ba#ba", "bb#bb"]);
    }

    #[test]
    fn tree_count_examples() {
        assert_eq!(normal_terminals().count_trees(&w("ab#ab"), &b()), TreeCount::Exact(1));
        assert_eq!(two_tables_same_rule().count_trees(&w("a"), &b()), TreeCount::Exact(2));
        let plain = wsharpw_plain();
        assert_eq!(plain.count_trees(&w("a#a"), &b()), TreeCount::Infinite);
        assert_eq!(normal_terminals().count_trees(&w("ab#ba"), &b()), TreeCount::Exact(0));
    }

    #[test]
    fn classification() {
        let c = normal_terminals().classify();
        assert!(c.edtol && !c.e0l);
        let four = wsharpw_plain().classify();
        assert!(!four.edtol && !four.e0l && !four.ed0l);
        assert!(ab_n().classify().ed0l);
        let seq: Vec<String> = (0..4)
            .scan(w("a"), |cur, _| {
                let out = cur.to_string();
                *cur = ab_n().step(cur, 0).unwrap().into_iter().next().unwrap();
                Some(out)
            })
            .collect();
        assert_eq!(seq, ["a", "ab", "abb", "abbb"]);
    }

    #[test]
    fn index_audits() {
        let g = semilinear_to_etol(&sets::diagonal(), &[sym("a"), sym("b")]).unwrap();
        let a = g.index_audit(10, &b());
        assert!(a.complete);
        assert!(a.max_index <= 2);
        let lin = anbn().index_audit(10, &b());
        assert_eq!(lin.max_index, 1);
        let p = powers_of_two().index_audit(16, &b());
        assert_eq!(p.max_index, 16);
        assert_eq!(p.witness, Some(w("a").repeat(16)));
    }

    #[test]
    fn lem1_examples() {
        let ab = [sym("a"), sym("b")];
        let g = semilinear_to_etol(&sets::diagonal(), &ab).unwrap();
        let expect: Vec<Word> = (0..=6).map(|n| w("a").repeat(n).concat(&w("b").repeat(n))).collect();
        assert_eq!(g.language(12, &b()).unwrap(), expect);

        let point = SemilinearSet::linear(vec![1, 2, 3], vec![]).unwrap();
        let g = semilinear_to_etol(&point, &[sym("a"), sym("b"), sym("c")]).unwrap();
        assert_eq!(g.language(8, &b()).unwrap(), vec![w("abbccc")]);

        let g = semilinear_to_etol(&sets::increasing_triples(), &[sym("a"), sym("b"), sym("c")])
            .unwrap();
        assert!(g.index_audit(12, &b()).max_index <= 3);
        assert_eq!(
            semilinear_to_etol(&sets::diagonal(), &[sym("a"), sym("a")]),
            Err(Error::NotDistinctLetters)
        );
    }

    #[test]
    fn reduced_round_trip_preserves_language() {
        let plain = wsharpw_plain();
        let red = to_reduced(&plain);
        assert!(red.reduced);
        let lp = plain.language(8, &b()).unwrap();
        assert_eq!(red.language(8, &b()).unwrap(), lp);
        let back = from_reduced(&red).unwrap();
        assert_eq!(back.language(7, &b()).unwrap(), plain.language(7, &b()).unwrap());
        assert_eq!(to_reduced(&red), red);
        assert_eq!(
            red.index_audit(8, &b()).max_index,
            plain.index_audit(8, &b()).max_index
        );
    }

    #[test]
    fn from_reduced_preserves_tree_counts() {
        let g = normal_terminals();
        let bar = from_reduced(&g).unwrap();
        assert!(!bar.reduced);
        let lang = g.language(7, &b()).unwrap();
        assert_eq!(bar.language(7, &b()).unwrap(), lang);
        for x in &lang {
            assert_eq!(bar.count_trees(x, &b()), g.count_trees(x, &b()), "{x}");
        }
        let amb = two_tables_same_rule();
        assert_eq!(from_reduced(&amb).unwrap().count_trees(&w("a"), &b()), TreeCount::Exact(2));
    }

    #[test]
    fn from_reduced_of_empty_language() {
        let g = EtolSystem::reduced_from_tables(
            "S",
            vec![Table::new("T", vec![Production::new("S", "S")])],
        )
        .unwrap();
        assert!(g.language(6, &b()).unwrap().is_empty());
        assert!(from_reduced(&g).unwrap().language(6, &b()).unwrap().is_empty());
    }

    #[test]
    fn to_reduced_does_not_increase_trees() {
        // Plain aⁿbⁿ: terminals idle in every table, so each word has
        // infinitely many trees; after reduction every word has exactly one.
        let copy = |name: &str, rules: [(&str, &str); 2]| {
            let mut p: Vec<Production> = rules.iter().map(|(l, r)| Production::new(l, r)).collect();
            p.extend([Production::new("a", "a"), Production::new("b", "b")]);
            Table::new(name, p)
        };
        let plain = EtolSystem::new(
            vec![sym("S"), sym("X")],
            vec![sym("a"), sym("b")],
            sym("S"),
            vec![copy("P", [("S", "aXb"), ("X", "aXb")]), copy("Q", [("S", "ab"), ("X", "ab")])],
            false,
        )
        .unwrap();
        let red = to_reduced(&plain);
        assert_eq!(red.language(8, &b()).unwrap(), plain.language(8, &b()).unwrap());
        for x in red.language(8, &b()).unwrap() {
            let before = plain.count_trees(&x, &b());
            let after = red.count_trees(&x, &b());
            assert_eq!(before, TreeCount::Infinite);
            assert_eq!(after, TreeCount::Exact(1));
        }
    }

    #[test]
    fn active_normal_form_examples() {
        let plain = wsharpw_plain();
        let anf = active_normal_form(&plain);
        assert!(anf.nonterminals.contains(&sym("a'")));
        let act = anf.active_symbols();
        assert!(anf.nonterminals.iter().all(|s| act.contains(s)));
        assert!(anf.terminals.iter().all(|s| !act.contains(s)));
        assert_eq!(anf.language(8, &b()).unwrap(), plain.language(8, &b()).unwrap());
        assert_eq!(active_normal_form(&anf), anf);
        let single = edol("S", &[("S", "aa"), ("a", "a")], "a");
        assert_eq!(active_normal_form(&single), single);
    }

    #[test]
    fn unambiguous_bounded_examples() {
        let words = vec![w("ab"), w("b")];
        let q = SemilinearSet::linear(vec![1, 1], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let g = unambiguous_bounded_etol(&words, &q, 8, 12).unwrap();
        let lang = g.language(10, &b()).unwrap();
        assert!(lang.contains(&w("abb")) && lang.contains(&w("ababbb")));
        for x in &lang {
            assert_eq!(g.count_trees(x, &b()), TreeCount::Exact(1), "{x}");
        }
        let g = unambiguous_bounded_etol(&[w("a"), w("b")], &sets::diagonal_positive(), 8, 12).unwrap();
        let expect: Vec<Word> = (1..=5).map(|n| w("a").repeat(n).concat(&w("b").repeat(n))).collect();
        assert_eq!(g.language(10, &b()).unwrap(), expect);
        let dep = SemilinearSet::new(vec![LinearSet::new(vec![0, 0], vec![vec![1, 1], vec![2, 2]]).unwrap()]).unwrap();
        assert!(matches!(
            unambiguous_bounded_etol(&[w("a"), w("b")], &dep, 5, 8),
            Err(Error::SemiSimpleFailed(_))
        ));
        let free = SemilinearSet::linear(vec![0, 0], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            unambiguous_bounded_etol(&[w("a"), w("aa")], &free, 5, 8),
            Err(Error::InjectivityFailed { .. })
        ));
    }
}
