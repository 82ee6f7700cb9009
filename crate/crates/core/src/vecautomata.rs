//! Synchronous multi-track binary automata over ℕ^k.
//!
//! A vector `(x₁,…,x_k)` is read least-significant digit first, one letter
//! per bit position; letter `m` carries bit `i` of `xᵢ` in bit `i` of `m`.
//! Every automaton built here is padding-closed: appending all-zero letters
//! never changes acceptance, so a vector has a single meaning regardless of
//! how many leading zeros its encoding carries.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::semilinear::{LinearSet, SemilinearSet};

/// Complete deterministic automaton over the alphabet `{0,1}^tracks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorDfa {
    tracks: usize,
    /// `delta[q][m]` for every letter `m < 2^tracks`.
    delta: Vec<Vec<usize>>,
    accepting: Vec<bool>,
    initial: usize,
}

/// `A·y = b` over nonnegative integer unknowns `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub coefficients: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl EquationSystem {
    pub fn new(coefficients: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<EquationSystem> {
        if coefficients.len() != rhs.len() {
            return Err(Error::DimensionMismatch { expected: coefficients.len(), got: rhs.len() });
        }
        let n = coefficients.first().map_or(0, |r| r.len());
        if let Some(r) = coefficients.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        Ok(EquationSystem { coefficients, rhs })
    }

    pub fn variables(&self) -> usize {
        self.coefficients.first().map_or(0, |r| r.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    Subset,
    Disjoint,
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "equal" => Ok(Relation::Equal),
            "subset" => Ok(Relation::Subset),
            "disjoint" => Ok(Relation::Disjoint),
            other => Err(Error::Parse(format!("unknown relation `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    /// A vector violating the relation, when it does not hold.
    pub witness: Option<Vec<u64>>,
}

fn bit_len(x: u64) -> usize {
    (u64::BITS - x.leading_zeros()) as usize
}

impl VectorDfa {
    fn letters(&self) -> usize {
        1 << self.tracks
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// Automaton accepting nothing.
    pub fn empty(tracks: usize) -> VectorDfa {
        VectorDfa { tracks, delta: vec![vec![0; 1 << tracks]], accepting: vec![false], initial: 0 }
    }

    /// Automaton accepting all of ℕ^tracks.
    pub fn universal(tracks: usize) -> VectorDfa {
        VectorDfa { tracks, delta: vec![vec![0; 1 << tracks]], accepting: vec![true], initial: 0 }
    }

    /// Accepts exactly the nonnegative solutions of `A·y = b`.
    ///
    /// States are carry vectors: starting from `−b`, reading digit tuple `d`
    /// moves carry `c` to `(c + A·d)/2` when every row is even; odd rows go
    /// to a sink. Carry zero is the only accepting carry and is absorbing
    /// under zero letters, so the result is padding-closed as built.
    pub fn from_equations(eq: &EquationSystem) -> VectorDfa {
        let tracks = eq.variables();
        let letters = 1usize << tracks;
        let start: Vec<i64> = eq.rhs.iter().map(|b| -b).collect();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut carries: Vec<Vec<i64>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        // State 0 is the sink.
        carries.push(Vec::new());
        delta.push(vec![0; letters]);
        index.insert(start.clone(), 1);
        carries.push(start);
        delta.push(Vec::new());
        let mut queue = VecDeque::from([1usize]);
        while let Some(q) = queue.pop_front() {
            let c = carries[q].clone();
            let mut row = Vec::with_capacity(letters);
            for m in 0..letters {
                let mut next = Vec::with_capacity(c.len());
                let mut ok = true;
                for (ci, coeffs) in c.iter().zip(&eq.coefficients) {
                    let s: i64 = ci
                        + coeffs
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| m >> j & 1 == 1)
                            .map(|(_, a)| a)
                            .sum::<i64>();
                    if s % 2 != 0 {
                        ok = false;
                        break;
                    }
                    next.push(s / 2);
                }
                if !ok {
                    row.push(0);
                    continue;
                }
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    carries.push(next);
                    delta.push(Vec::new());
                    queue.push_back(carries.len() - 1);
                    carries.len() - 1
                });
                row.push(id);
            }
            delta[q] = row;
        }
        let accepting =
            carries.iter().enumerate().map(|(i, c)| i != 0 && c.iter().all(|&x| x == 0)).collect();
        VectorDfa { tracks, delta, accepting, initial: 1 }.minimize()
    }

    /// Existentially projects away the tracks in `drop`; remaining tracks
    /// keep their relative order.
    pub fn project(&self, drop: &[usize]) -> Result<VectorDfa> {
        if let Some(&t) = drop.iter().find(|&&t| t >= self.tracks) {
            return Err(Error::Invalid(format!("track {t} out of range")));
        }
        let keep: Vec<usize> = (0..self.tracks).filter(|t| !drop.contains(t)).collect();
        let dropped: Vec<usize> = (0..self.tracks).filter(|t| drop.contains(t)).collect();
        let new_tracks = keep.len();
        let expand = |m: usize, extra: usize| -> usize {
            let mut full = 0;
            for (i, &t) in keep.iter().enumerate() {
                full |= (m >> i & 1) << t;
            }
            for (i, &t) in dropped.iter().enumerate() {
                full |= (extra >> i & 1) << t;
            }
            full
        };
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let init: BTreeSet<usize> = [self.initial].into();
        index.insert(init.clone(), 0);
        sets.push(init);
        delta.push(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            let set = sets[q].clone();
            let mut row = Vec::new();
            for m in 0..1usize << new_tracks {
                let mut next = BTreeSet::new();
                for &s in &set {
                    for extra in 0..1usize << dropped.len() {
                        next.insert(self.delta[s][expand(m, extra)]);
                    }
                }
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    delta.push(Vec::new());
                    queue.push_back(sets.len() - 1);
                    sets.len() - 1
                });
                row.push(id);
            }
            delta[q] = row;
        }
        // Padding repair: a subset accepts if an accepting subset is reachable
        // by reading zeros on the kept tracks.
        let mut accepting: Vec<bool> =
            sets.iter().map(|s| s.iter().any(|&x| self.accepting[x])).collect();
        loop {
            let mut changed = false;
            for q in 0..sets.len() {
                if !accepting[q] && accepting[delta[q][0]] {
                    accepting[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(VectorDfa { tracks: new_tracks, delta, accepting, initial: 0 }.minimize())
    }

    pub fn from_linear(l: &LinearSet) -> VectorDfa {
        let k = l.dim();
        let r = l.periods.len();
        let coefficients: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut row = vec![0i64; k + r];
                row[i] = 1;
                for (j, p) in l.periods.iter().enumerate() {
                    row[k + j] = -(p[i] as i64);
                }
                row
            })
            .collect();
        let rhs = l.constant.iter().map(|&c| c as i64).collect();
        let eq = EquationSystem { coefficients, rhs };
        let full = VectorDfa::from_equations(&eq);
        let drop: Vec<usize> = (k..k + r).collect();
        full.project(&drop).expect("tracks in range")
    }

    pub fn from_semilinear(q: &SemilinearSet) -> VectorDfa {
        let mut acc = VectorDfa::empty(q.dim());
        for c in &q.components {
            acc = acc
                .combine(&VectorDfa::from_linear(c), BoolOp::Union)
                .expect("uniform dimension");
        }
        acc
    }

    pub fn combine(&self, other: &VectorDfa, op: BoolOp) -> Result<VectorDfa> {
        if self.tracks != other.tracks {
            return Err(Error::TrackMismatch(self.tracks, other.tracks));
        }
        let letters = self.letters();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            let (a, b) = pairs[q];
            let mut row = Vec::with_capacity(letters);
            for m in 0..letters {
                let p = (self.delta[a][m], other.delta[b][m]);
                let id = *index.entry(p).or_insert_with(|| {
                    pairs.push(p);
                    delta.push(Vec::new());
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta[q] = row;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.accepting[a], other.accepting[b]);
                match op {
                    BoolOp::Union => x || y,
                    BoolOp::Intersection => x && y,
                    BoolOp::Difference => x && !y,
                }
            })
            .collect();
        Ok(VectorDfa { tracks: self.tracks, delta, accepting, initial: 0 }.minimize())
    }

    pub fn complement(&self) -> VectorDfa {
        VectorDfa::universal(self.tracks)
            .combine(self, BoolOp::Difference)
            .expect("same tracks")
    }

    pub fn accepts(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.tracks {
            return Err(Error::DimensionMismatch { expected: self.tracks, got: v.len() });
        }
        let len = v.iter().map(|&x| bit_len(x)).max().unwrap_or(0);
        let mut q = self.initial;
        for t in 0..len {
            let mut m = 0;
            for (i, &x) in v.iter().enumerate() {
                m |= ((x >> t & 1) as usize) << i;
            }
            q = self.delta[q][m];
        }
        Ok(self.accepting[q])
    }

    /// The vector with the shortest accepted encoding, ties broken by
    /// smallest letters first.
    pub fn shortest_witness(&self) -> Option<Vec<u64>> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, m)) = parent[cur] {
                    letters.push(m);
                    cur = p;
                }
                letters.reverse();
                let mut v = vec![0u64; self.tracks];
                for (t, m) in letters.iter().enumerate() {
                    for (i, x) in v.iter_mut().enumerate() {
                        *x |= ((m >> i & 1) as u64) << t;
                    }
                }
                return Some(v);
            }
            for m in 0..self.letters() {
                let n = self.delta[q][m];
                if !seen[n] {
                    seen[n] = true;
                    parent[n] = Some((q, m));
                    queue.push_back(n);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_witness().is_none()
    }

    pub fn equivalent(&self, other: &VectorDfa) -> Result<bool> {
        Ok(self.combine(other, BoolOp::Difference)?.is_empty()
            && other.combine(self, BoolOp::Difference)?.is_empty())
    }

    /// Removes unreachable states, merges equivalent ones (Moore refinement),
    /// and renumbers states in breadth-first order so that equal languages
    /// give identical structures.
    pub fn minimize(&self) -> VectorDfa {
        let letters = self.letters();
        // Reachable states in BFS order.
        let mut order = vec![self.initial];
        let mut pos = HashMap::from([(self.initial, 0usize)]);
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for m in 0..letters {
                let n = self.delta[q][m];
                if !pos.contains_key(&n) {
                    pos.insert(n, order.len());
                    order.push(n);
                }
            }
            i += 1;
        }
        let n = order.len();
        let delta: Vec<Vec<usize>> =
            order.iter().map(|&q| self.delta[q].iter().map(|x| pos[x]).collect()).collect();
        let accepting: Vec<bool> = order.iter().map(|&q| self.accepting[q]).collect();
        let mut class: Vec<usize> = accepting.iter().map(|&a| a as usize).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let sig = (class[q], delta[q].iter().map(|&x| class[x]).collect::<Vec<_>>());
                let len = sig_index.len();
                next[q] = *sig_index.entry(sig).or_insert(len);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Canonical BFS numbering over classes.
        let mut canon: HashMap<usize, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        canon.insert(class[0], 0);
        reps.push(0);
        let mut i = 0;
        while i < reps.len() {
            let q = reps[i];
            for m in 0..letters {
                let c = class[delta[q][m]];
                if !canon.contains_key(&c) {
                    canon.insert(c, reps.len());
                    reps.push(delta[q][m]);
                }
            }
            i += 1;
        }
        VectorDfa {
            tracks: self.tracks,
            delta: reps
                .iter()
                .map(|&q| delta[q].iter().map(|&x| canon[&class[x]]).collect())
                .collect(),
            accepting: reps.iter().map(|&q| accepting[q]).collect(),
            initial: 0,
        }
    }

    /// Tab-separated transition table: a header row naming each letter by its
    /// track digits, then one row per state (`*` marks accepting, `>` the
    /// initial state).
    pub fn dump(&self) -> String {
        let mut s = String::from("state");
        for m in 0..self.letters() {
            let label: String =
                (0..self.tracks).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect();
            let _ = write!(s, "\t{}", if label.is_empty() { "()".into() } else { label });
        }
        s.push('\n');
        for (q, row) in self.delta.iter().enumerate() {
            let mark = match (q == self.initial, self.accepting[q]) {
                (true, true) => ">*",
                (true, false) => ">",
                (false, true) => "*",
                _ => "",
            };
            let _ = write!(s, "{mark}{q}");
            for n in row {
                let _ = write!(s, "\t{n}");
            }
            s.push('\n');
        }
        s
    }
}

/// Decides `rel` between two semilinear sets of equal dimension.
pub fn compare(q1: &SemilinearSet, q2: &SemilinearSet, rel: Relation) -> Result<Comparison> {
    if q1.dim() != q2.dim() {
        return Err(Error::DimensionMismatch { expected: q1.dim(), got: q2.dim() });
    }
    let a = VectorDfa::from_semilinear(q1);
    let b = VectorDfa::from_semilinear(q2);
    let discrepancy = match rel {
        Relation::Subset => a.combine(&b, BoolOp::Difference)?,
        Relation::Disjoint => a.combine(&b, BoolOp::Intersection)?,
        Relation::Equal => a
            .combine(&b, BoolOp::Difference)?
            .combine(&b.combine(&a, BoolOp::Difference)?, BoolOp::Union)?,
    };
    let witness = discrepancy.shortest_witness();
    Ok(Comparison { holds: witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::fixtures;

    fn eq(rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> VectorDfa {
        VectorDfa::from_equations(&EquationSystem::new(rows, rhs).unwrap())
    }

    #[test]
    fn equation_examples() {
        let d = eq(vec![vec![1, -1]], vec![0]);
        assert!(d.accepts(&[5, 5]).unwrap());
        assert!(!d.accepts(&[5, 4]).unwrap());
        let z = eq(vec![vec![1]], vec![0]);
        assert!(z.accepts(&[0]).unwrap());
        assert!((1..20).all(|x| !z.accepts(&[x]).unwrap()));
        let h = eq(vec![vec![1, -2]], vec![0]);
        assert!(h.accepts(&[6, 3]).unwrap());
        assert!(!h.accepts(&[6, 4]).unwrap());
    }

    #[test]
    fn projection_examples() {
        let d = eq(vec![vec![1, -1]], vec![0]).project(&[1]).unwrap();
        assert!((0..40).all(|x| d.accepts(&[x]).unwrap()));
        let h = eq(vec![vec![1, -2]], vec![0]).project(&[1]).unwrap();
        assert!((0..40).all(|x| h.accepts(&[x]).unwrap() == (x % 2 == 0)));
        let none = eq(vec![vec![1, -2]], vec![0]).project(&[0, 1]).unwrap();
        assert_eq!(none.tracks(), 0);
        assert!(none.accepts(&[]).unwrap());
        let unsat = eq(vec![vec![2]], vec![1]).project(&[0]).unwrap();
        assert!(!unsat.accepts(&[]).unwrap());
    }

    #[test]
    fn projection_needs_padding_repair() {
        // x₁ = 4·x₂ + 0 with x₁ small but x₂'s encoding is never longer; use
        // x₂ = x₁ + 8 instead: x₂ needs more digits than x₁.
        let m = eq(vec![vec![-1, 1]], vec![8]).project(&[1]).unwrap();
        assert!((0..40).all(|x| m.accepts(&[x]).unwrap()));
    }

    #[test]
    fn linear_examples() {
        let d = VectorDfa::from_linear(&fixtures::diagonal().components[0]);
        assert!(d.accepts(&[3, 3]).unwrap());
        assert!(!d.accepts(&[3, 2]).unwrap());
        let t = VectorDfa::from_semilinear(&fixtures::increasing_triples());
        assert!(t.accepts(&[1, 2, 3]).unwrap());
        assert!(t.accepts(&[2, 3, 4]).unwrap());
        assert!(!t.accepts(&[2, 2, 3]).unwrap());
        let p = VectorDfa::from_linear(&LinearSet::point(vec![0]).unwrap());
        assert!(p.accepts(&[0]).unwrap() && !p.accepts(&[1]).unwrap());
    }

    #[test]
    fn combine_examples() {
        let d = VectorDfa::from_semilinear(&fixtures::diagonal());
        let dbl =
            VectorDfa::from_semilinear(&SemilinearSet::linear(vec![0, 0], vec![vec![1, 2]]).unwrap());
        let both = d.combine(&dbl, BoolOp::Intersection).unwrap();
        assert_eq!(both.shortest_witness(), Some(vec![0, 0]));
        assert!(!both.accepts(&[1, 1]).unwrap());
        assert_eq!(d.combine(&VectorDfa::empty(2), BoolOp::Union).unwrap(), d);
        assert!(d.combine(&d, BoolOp::Difference).unwrap().is_empty());
        assert_eq!(d.combine(&VectorDfa::empty(3), BoolOp::Union), Err(Error::TrackMismatch(2, 3)));
    }

    #[test]
    fn compare_examples() {
        let below =
            SemilinearSet::linear(vec![0, 0], vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert!(compare(&fixtures::diagonal_positive(), &below, Relation::Subset).unwrap().holds);
        let split = SemilinearSet::new(vec![
            LinearSet::new(vec![0, 0], vec![vec![2, 2]]).unwrap(),
            LinearSet::new(vec![1, 1], vec![vec![2, 2]]).unwrap(),
        ])
        .unwrap();
        assert!(compare(&fixtures::diagonal(), &split, Relation::Equal).unwrap().holds);
        let shifted = SemilinearSet::linear(vec![0, 1], vec![vec![1, 1]]).unwrap();
        assert!(compare(&fixtures::diagonal_positive(), &shifted, Relation::Disjoint).unwrap().holds);
        let c = compare(&below, &fixtures::diagonal(), Relation::Subset).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(vec![0, 1]));
    }

    #[test]
    fn minimization_is_canonical() {
        let split = SemilinearSet::new(vec![
            LinearSet::new(vec![0, 0], vec![vec![2, 2]]).unwrap(),
            LinearSet::new(vec![1, 1], vec![vec![2, 2]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            VectorDfa::from_semilinear(&split),
            VectorDfa::from_semilinear(&fixtures::diagonal())
        );
    }

    #[test]
    fn dump_format() {
        let d = VectorDfa::from_semilinear(&fixtures::diagonal());
        let text = d.dump();
        assert!(text.starts_with("state\t00\t10\t01\t11\n>*0\t"));
        assert_eq!(text.lines().count(), d.num_states() + 1);
    }
}
