//! One-way reversal-bounded multicounter machines.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundation::{decompositions, Alphabet, Budget, Symbol, Word};
use crate::semilinear::{enumerate_bounded, phi, BoundedKind, BoundedSpec, SemilinearSet};
use crate::vecautomata::{compare, Relation};

/// What a transition reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Input {
    #[serde(rename = "sym")]
    Symbol(Symbol),
    #[serde(rename = "end")]
    End,
    #[serde(rename = "lambda")]
    Lambda,
}

/// Per-counter condition of a transition. `Any` abbreviates the two
/// transitions that differ only in this counter's zero bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Test {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "*")]
    Any,
}

impl Test {
    fn admits(self, value: u64) -> bool {
        match self {
            Test::Zero => value == 0,
            Test::Positive => value > 0,
            Test::Any => true,
        }
    }

    fn overlaps(self, other: Test) -> bool {
        !matches!((self, other), (Test::Zero, Test::Positive) | (Test::Positive, Test::Zero))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub from: usize,
    pub input: Input,
    pub tests: Vec<Test>,
    pub to: usize,
    pub moves: Vec<i8>,
}

/// `M = (k, Q, Σ, ◁, δ, q₀, F)` with reversal bound `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterMachine {
    pub counters: usize,
    pub states: usize,
    pub alphabet: Alphabet,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<Transition>,
    pub reversal_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Phase {
    Idle,
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Config {
    state: usize,
    /// Symbols consumed; `len + 1` once the end-marker is read.
    pos: usize,
    counters: Vec<u64>,
    phases: Vec<Phase>,
    reversals: Vec<usize>,
}

impl CounterMachine {
    pub fn new(
        counters: usize,
        states: usize,
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<usize>,
        transitions: Vec<Transition>,
        reversal_bound: usize,
    ) -> Result<CounterMachine> {
        let m = CounterMachine {
            counters,
            states,
            alphabet,
            initial,
            accepting,
            transitions,
            reversal_bound,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.states || self.accepting.iter().any(|&q| q >= self.states) {
            return Err(Error::Invalid("state index out of range".into()));
        }
        for t in &self.transitions {
            if t.from >= self.states || t.to >= self.states {
                return Err(Error::Invalid("transition state out of range".into()));
            }
            if t.tests.len() != self.counters || t.moves.len() != self.counters {
                return Err(Error::DimensionMismatch {
                    expected: self.counters,
                    got: t.tests.len().min(t.moves.len()),
                });
            }
            if let Input::Symbol(s) = t.input {
                if !self.alphabet.contains(s) {
                    return Err(Error::SymbolNotInAlphabet(s.to_string()));
                }
            }
            for (test, &d) in t.tests.iter().zip(&t.moves) {
                if !(-1..=1).contains(&d) {
                    return Err(Error::Invalid(format!("counter move {d} outside -1..=1")));
                }
                if d < 0 && *test != Test::Positive {
                    return Err(Error::Invalid(
                        "a decrement must require a positive counter".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// At most one applicable move for every state, input and zero pattern,
    /// counting λ-moves against every input.
    pub fn is_deterministic(&self) -> bool {
        let mut distinct: Vec<&Transition> = Vec::new();
        for t in &self.transitions {
            if !distinct.contains(&t) {
                distinct.push(t);
            }
        }
        for (i, a) in distinct.iter().enumerate() {
            for b in &distinct[i + 1..] {
                if a.from != b.from {
                    continue;
                }
                let inputs_clash =
                    a.input == b.input || a.input == Input::Lambda || b.input == Input::Lambda;
                let patterns_clash = a.tests.iter().zip(&b.tests).all(|(x, y)| x.overlaps(*y));
                if inputs_clash && patterns_clash {
                    return false;
                }
            }
        }
        true
    }

    fn step_limit(&self, w: &Word, budget: &Budget) -> usize {
        budget.step_factor * (w.len() + 1) + budget.step_offset
    }

    /// Breadth-first search over configurations. Runs that would exceed the
    /// reversal bound are discarded; if no accepting run is found but the
    /// step or state budget cut the search, the answer is `BudgetExhausted`.
    pub fn accepts(&self, w: &Word, budget: &Budget) -> Result<bool> {
        let n = w.len();
        if w.iter().any(|&s| !self.alphabet.contains(s)) {
            return Ok(false);
        }
        let limit = self.step_limit(w, budget);
        let start = Config {
            state: self.initial,
            pos: 0,
            counters: vec![0; self.counters],
            phases: vec![Phase::Idle; self.counters],
            reversals: vec![0; self.counters],
        };
        let mut seen: HashSet<Config> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        let mut truncated = false;
        while let Some((c, depth)) = queue.pop_front() {
            if c.pos == n + 1 && self.accepting.contains(&c.state) {
                return Ok(true);
            }
            for t in self.transitions.iter().filter(|t| t.from == c.state) {
                let next_pos = match t.input {
                    Input::Lambda => c.pos,
                    Input::Symbol(s) if c.pos < n && w.symbols()[c.pos] == s => c.pos + 1,
                    Input::End if c.pos == n => n + 1,
                    _ => continue,
                };
                if !t.tests.iter().zip(&c.counters).all(|(test, &v)| test.admits(v)) {
                    continue;
                }
                let mut next = c.clone();
                next.state = t.to;
                next.pos = next_pos;
                let mut legal = true;
                for i in 0..self.counters {
                    let d = t.moves[i];
                    if d == 0 {
                        continue;
                    }
                    let dir = if d > 0 { Phase::Up } else { Phase::Down };
                    if next.phases[i] != Phase::Idle && next.phases[i] != dir {
                        next.reversals[i] += 1;
                        if next.reversals[i] > self.reversal_bound {
                            legal = false;
                            break;
                        }
                    }
                    next.phases[i] = dir;
                    next.counters[i] = (next.counters[i] as i64 + d as i64) as u64;
                }
                if !legal {
                    continue;
                }
                if depth + 1 > limit || seen.len() >= budget.max_states {
                    truncated = true;
                    continue;
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
        if truncated {
            Err(Error::BudgetExhausted(format!(
                "counter simulation of `{w}` cut at {limit} steps / {} configurations",
                budget.max_states
            )))
        } else {
            Ok(false)
        }
    }
}

/// Incremental builder that hands out state numbers.
struct Builder {
    counters: usize,
    states: usize,
    transitions: Vec<Transition>,
}

impl Builder {
    fn state(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn any(&self) -> Vec<Test> {
        vec![Test::Any; self.counters]
    }

    fn add(&mut self, from: usize, input: Input, tests: Vec<Test>, to: usize, moves: Vec<i8>) {
        self.transitions.push(Transition { from, input, tests, to, moves });
    }

    /// Chain of λ-moves from `from` subtracting `amounts[i]` from counter
    /// `offset + i`, one unit per move. Returns the final state. When
    /// `fail` is given, a zero counter where a unit is due moves there.
    fn subtract_chain(
        &mut self,
        from: usize,
        offset: usize,
        amounts: &[u64],
        fail: Option<usize>,
    ) -> usize {
        let mut cur = from;
        for (i, &a) in amounts.iter().enumerate() {
            for _ in 0..a {
                let next = self.state();
                let mut tests = self.any();
                tests[offset + i] = Test::Positive;
                let mut moves = vec![0; self.counters];
                moves[offset + i] = -1;
                self.add(cur, Input::Lambda, tests, next, moves);
                if let Some(f) = fail {
                    let mut zero = self.any();
                    zero[offset + i] = Test::Zero;
                    self.add(cur, Input::Lambda, zero, f, vec![0; self.counters]);
                }
                cur = next;
            }
        }
        cur
    }
}

/// Machine accepting `{w ∈ Σ* : ψ(w) ∈ Q}`: count letters, then on λ-moves
/// subtract the constant and guessed multiples of each period, and accept
/// when every counter is zero. Components are joined by an initial guess.
pub fn from_semilinear(q: &SemilinearSet, alphabet: &Alphabet) -> Result<CounterMachine> {
    let n = alphabet.len();
    if q.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: q.dim() });
    }
    let mut b = Builder { counters: n, states: 0, transitions: Vec::new() };
    let init = b.state();
    let accept = b.state();
    for comp in &q.components {
        let read = b.state();
        b.add(init, Input::Lambda, b.any(), read, vec![0; n]);
        for (i, &s) in alphabet.symbols().iter().enumerate() {
            let mut moves = vec![0; n];
            moves[i] = 1;
            b.add(read, Input::Symbol(s), b.any(), read, moves);
        }
        let after_end = b.state();
        b.add(read, Input::End, b.any(), after_end, vec![0; n]);
        let mut hub = b.subtract_chain(after_end, 0, &comp.constant, None);
        for p in &comp.periods {
            let end = b.subtract_chain(hub, 0, p, None);
            // Close the loop back to the hub.
            let last = b.transitions.len() - 1;
            b.transitions[last].to = hub;
            b.states -= 1;
            debug_assert_eq!(end, b.states);
            let next_hub = b.state();
            b.add(hub, Input::Lambda, b.any(), next_hub, vec![0; n]);
            hub = next_hub;
        }
        b.add(hub, Input::Lambda, vec![Test::Zero; n], accept, vec![0; n]);
    }
    CounterMachine::new(n, b.states, alphabet.clone(), init, vec![accept], b.transitions, 1)
}

/// Per component: periods in echelon order, each with its pivot coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EchelonCert {
    pub components: Vec<Vec<(usize, usize)>>,
}

impl EchelonCert {
    /// Orders each component's periods so that each has a pivot coordinate
    /// where it is positive and every later period is zero. Fails with the
    /// index of the first component admitting no such order.
    pub fn find(q: &SemilinearSet) -> Result<EchelonCert> {
        let mut comps = Vec::new();
        for (ci, c) in q.components.iter().enumerate() {
            let mut remaining: Vec<usize> = (0..c.periods.len()).collect();
            let mut order = Vec::new();
            while !remaining.is_empty() {
                let pick = remaining.iter().enumerate().find_map(|(ri, &j)| {
                    (0..c.dim())
                        .find(|&x| {
                            c.periods[j][x] > 0
                                && remaining.iter().all(|&o| o == j || c.periods[o][x] == 0)
                        })
                        .map(|x| (ri, j, x))
                });
                let (ri, j, x) = pick.ok_or(Error::NoEchelonCertificate(ci))?;
                order.push((j, x));
                remaining.remove(ri);
            }
            comps.push(order);
        }
        Ok(EchelonCert { components: comps })
    }

    pub fn check(&self, q: &SemilinearSet) -> Result<()> {
        if self.components.len() != q.components.len() {
            return Err(Error::NoEchelonCertificate(self.components.len().min(q.components.len())));
        }
        for (ci, (order, c)) in self.components.iter().zip(&q.components).enumerate() {
            let mut js: Vec<usize> = order.iter().map(|&(j, _)| j).collect();
            js.sort_unstable();
            if js != (0..c.periods.len()).collect::<Vec<_>>() {
                return Err(Error::NoEchelonCertificate(ci));
            }
            for (pos, &(j, x)) in order.iter().enumerate() {
                let ok = x < c.dim()
                    && c.periods[j][x] > 0
                    && order[pos + 1..].iter().all(|&(o, _)| c.periods[o][x] == 0);
                if !ok {
                    return Err(Error::NoEchelonCertificate(ci));
                }
            }
        }
        Ok(())
    }
}

/// Deterministic machine for a distinct-letter Ginsburg spec whose set has
/// an echelon certificate. Block counts are loaded into one counter group per
/// component while the finite control checks the `a₁*⋯a_k*` shape; the
/// components are then verified in turn by subtracting the constant and each
/// period in pivot order.
pub fn dcm_for_bounded(spec: &BoundedSpec, cert: Option<&EchelonCert>) -> Result<CounterMachine> {
    if spec.kind != BoundedKind::Ginsburg {
        return Err(Error::Precondition("deterministic construction needs a Ginsburg spec".into()));
    }
    let letters = spec.letters()?;
    let q = spec.q1.as_ref().expect("validated");
    let cert = match cert {
        Some(c) => {
            c.check(q)?;
            c.clone()
        }
        None => EchelonCert::find(q)?,
    };
    let k = letters.len();
    let groups = q.components.len();
    let total = k * groups;
    let mut b = Builder { counters: total, states: 0, transitions: Vec::new() };
    let blocks: Vec<usize> = (0..k).map(|_| b.state()).collect();
    let verify_starts: Vec<usize> = (0..groups).map(|_| b.state()).collect();
    let accept = b.state();
    for (i, &from) in blocks.iter().enumerate() {
        for (j, &s) in letters.iter().enumerate().skip(i) {
            let mut moves = vec![0; total];
            for g in 0..groups {
                moves[g * k + j] = 1;
            }
            b.add(from, Input::Symbol(s), b.any(), blocks[j], moves);
        }
        b.add(from, Input::End, b.any(), verify_starts[0], vec![0; total]);
    }
    for (g, comp) in q.components.iter().enumerate() {
        let offset = g * k;
        let fail = if g + 1 < groups {
            let f = b.state();
            b.add(f, Input::Lambda, b.any(), verify_starts[g + 1], vec![0; total]);
            Some(f)
        } else {
            // No further component: a dead state with no moves.
            Some(b.state())
        };
        let mut cur = b.subtract_chain(verify_starts[g], offset, &comp.constant, fail);
        for &(j, pivot) in &cert.components[g] {
            let loop_head = cur;
            let body = b.state();
            let done = b.state();
            let mut pos = b.any();
            pos[offset + pivot] = Test::Positive;
            b.add(loop_head, Input::Lambda, pos, body, vec![0; total]);
            let mut zero = b.any();
            zero[offset + pivot] = Test::Zero;
            b.add(loop_head, Input::Lambda, zero, done, vec![0; total]);
            let end = b.subtract_chain(body, offset, &comp.periods[j], fail);
            b.add(end, Input::Lambda, b.any(), loop_head, vec![0; total]);
            cur = done;
        }
        let mut all_zero = b.any();
        for t in all_zero.iter_mut().skip(offset).take(k) {
            *t = Test::Zero;
        }
        b.add(cur, Input::Lambda, all_zero.clone(), accept, vec![0; total]);
        if let Some(f) = fail {
            for x in 0..k {
                let mut pos = b.any();
                for y in 0..x {
                    pos[offset + y] = Test::Zero;
                }
                pos[offset + x] = Test::Positive;
                b.add(cur, Input::Lambda, pos, f, vec![0; total]);
            }
        }
    }
    let alphabet = Alphabet::new(letters)?;
    CounterMachine::new(total, b.states, alphabet, blocks[0], vec![accept], b.transitions, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Word>,
}

/// Decides `rel` between two bounded Ginsburg languages over the same word
/// tuple. Distinct single letters make φ injective; otherwise the caller must
/// assert injectivity and the assertion is checked on every word of length at
/// most `injective_check`.
pub fn decide_bounded(
    s1: &BoundedSpec,
    s2: &BoundedSpec,
    rel: Relation,
    injective_check: Option<usize>,
) -> Result<Verdict> {
    if s1.kind != BoundedKind::Ginsburg || s2.kind != BoundedKind::Ginsburg {
        return Err(Error::Precondition("decision needs Ginsburg specs".into()));
    }
    if s1.words != s2.words {
        return Err(Error::Precondition("specs are bounded over different word tuples".into()));
    }
    if !s1.distinct_letters() {
        let Some(len) = injective_check else {
            return Err(Error::Precondition(
                "words are not distinct letters and no injectivity assertion was given".into(),
            ));
        };
        check_injective(&s1.words, len)?;
    }
    let q1 = s1.q1.as_ref().expect("validated");
    let q2 = s2.q1.as_ref().expect("validated");
    let c = compare(q1, q2, rel)?;
    let witness = match c.witness {
        Some(t) => Some(phi(&s1.words, &t)?),
        None => None,
    };
    Ok(Verdict { holds: c.holds, witness })
}

/// Fails with the shortest word of length ≤ `max_len` having more than one
/// factorization over `words`.
pub fn check_injective(words: &[Word], max_len: usize) -> Result<()> {
    let k = words.len();
    let all = SemilinearSet::linear(
        vec![0; k],
        (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect(),
    )?;
    let spec = BoundedSpec::ginsburg(words.to_vec(), all)?;
    let mut ws = enumerate_bounded(&spec, max_len)?;
    crate::foundation::sort_shortlex(&mut ws);
    for w in ws {
        let count = decompositions(&w, words).len();
        if count > 1 {
            return Err(Error::InjectivityFailed { word: w, count });
        }
    }
    Ok(())
}
