//! Linear and semilinear subsets of ℕ^k, the map φ, and bounded languages.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundation::{decompositions, parikh, Alphabet, Symbol, Word};

/// `{v₀ + Σ λⱼ vⱼ : λ ∈ ℕ^r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLinear")]
pub struct LinearSet {
    pub constant: Vec<u64>,
    pub periods: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawLinear {
    constant: Vec<u64>,
    #[serde(default)]
    periods: Vec<Vec<u64>>,
}

impl TryFrom<RawLinear> for LinearSet {
    type Error = Error;
    fn try_from(r: RawLinear) -> Result<Self> {
        LinearSet::new(r.constant, r.periods)
    }
}

impl LinearSet {
    pub fn new(constant: Vec<u64>, periods: Vec<Vec<u64>>) -> Result<LinearSet> {
        if constant.is_empty() {
            return Err(Error::Invalid("linear set of dimension 0".into()));
        }
        for p in &periods {
            if p.len() != constant.len() {
                return Err(Error::DimensionMismatch { expected: constant.len(), got: p.len() });
            }
            if p.iter().all(|&x| x == 0) {
                return Err(Error::Invalid("zero period".into()));
            }
        }
        Ok(LinearSet { constant, periods })
    }

    pub fn point(constant: Vec<u64>) -> Result<LinearSet> {
        LinearSet::new(constant, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.constant.len()
    }

    pub fn member(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        let mut rest = Vec::with_capacity(v.len());
        for (x, c) in v.iter().zip(&self.constant) {
            if x < c {
                return Ok(false);
            }
            rest.push(x - c);
        }
        Ok(solve_periods(&self.periods, &mut rest))
    }

    /// Finds one multiplier vector λ with `v = v₀ + Σ λⱼ vⱼ`.
    pub fn coefficients(&self, v: &[u64]) -> Option<Vec<u64>> {
        if v.len() != self.dim() || v.iter().zip(&self.constant).any(|(x, c)| x < c) {
            return None;
        }
        let mut rest: Vec<u64> = v.iter().zip(&self.constant).map(|(x, c)| x - c).collect();
        let mut lambdas = vec![0; self.periods.len()];
        if find_lambdas(&self.periods, 0, &mut rest, &mut lambdas) {
            Some(lambdas)
        } else {
            None
        }
    }
}

fn solve_periods(periods: &[Vec<u64>], rest: &mut [u64]) -> bool {
    let mut scratch = vec![0; periods.len()];
    find_lambdas(periods, 0, rest, &mut scratch)
}

fn find_lambdas(periods: &[Vec<u64>], j: usize, rest: &mut [u64], out: &mut [u64]) -> bool {
    if j == periods.len() {
        return rest.iter().all(|&x| x == 0);
    }
    let p = &periods[j];
    // λⱼ cannot exceed rest[i] / p[i] on any coordinate where p is positive.
    let bound = p
        .iter()
        .zip(rest.iter())
        .filter(|(&pi, _)| pi > 0)
        .map(|(&pi, &ri)| ri / pi)
        .min()
        .unwrap_or(0);
    for lam in (0..=bound).rev() {
        for (r, &pi) in rest.iter_mut().zip(p) {
            *r -= lam * pi;
        }
        out[j] = lam;
        let ok = find_lambdas(periods, j + 1, rest, out);
        for (r, &pi) in rest.iter_mut().zip(p) {
            *r += lam * pi;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Finite union of linear sets of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSemilinear")]
pub struct SemilinearSet {
    pub components: Vec<LinearSet>,
}

#[derive(Deserialize)]
struct RawSemilinear {
    components: Vec<LinearSet>,
}

impl TryFrom<RawSemilinear> for SemilinearSet {
    type Error = Error;
    fn try_from(r: RawSemilinear) -> Result<Self> {
        SemilinearSet::new(r.components)
    }
}

impl SemilinearSet {
    pub fn new(components: Vec<LinearSet>) -> Result<SemilinearSet> {
        let first = components
            .first()
            .ok_or_else(|| Error::Invalid("semilinear set needs at least one component".into()))?;
        let k = first.dim();
        if let Some(bad) = components.iter().find(|c| c.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, got: bad.dim() });
        }
        Ok(SemilinearSet { components })
    }

    pub fn linear(constant: Vec<u64>, periods: Vec<Vec<u64>>) -> Result<SemilinearSet> {
        SemilinearSet::new(vec![LinearSet::new(constant, periods)?])
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn member(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        for c in &self.components {
            if c.member(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        SemilinearSet::new(comps)
    }
}

/// `w₁^{t₁}⋯w_k^{t_k}`.
pub fn phi(words: &[Word], t: &[u64]) -> Result<Word> {
    if words.len() != t.len() {
        return Err(Error::DimensionMismatch { expected: words.len(), got: t.len() });
    }
    let mut out = Word::empty();
    for (w, &n) in words.iter().zip(t) {
        for _ in 0..n {
            out.extend_from(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundedKind {
    Ginsburg,
    Parikh,
    GinsburgParikh,
}

/// A bounded language over the word tuple `(w₁,…,w_k)`, selected by a
/// semilinear set of exponent tuples (`q1`), of Parikh vectors (`q2`), or both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedSpec {
    pub words: Vec<Word>,
    /// Written as `"class"` in description files, where `"kind"` names the object type.
    #[serde(rename = "class")]
    pub kind: BoundedKind,
    /// Coordinate order for `q2`.
    pub alphabet: Alphabet,
    pub q1: Option<SemilinearSet>,
    pub q2: Option<SemilinearSet>,
}

fn letters_of(words: &[Word]) -> Vec<Symbol> {
    let mut v = Vec::new();
    for w in words {
        for &s in w {
            if !v.contains(&s) {
                v.push(s);
            }
        }
    }
    v
}

impl BoundedSpec {
    pub fn new(
        words: Vec<Word>,
        kind: BoundedKind,
        alphabet: Option<Alphabet>,
        q1: Option<SemilinearSet>,
        q2: Option<SemilinearSet>,
    ) -> Result<BoundedSpec> {
        if words.is_empty() || words.iter().any(|w| w.is_empty()) {
            return Err(Error::Invalid("bounded spec needs nonempty words".into()));
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => Alphabet::new(letters_of(&words))?,
        };
        for s in letters_of(&words) {
            if !alphabet.contains(s) {
                return Err(Error::SymbolNotInAlphabet(s.to_string()));
            }
        }
        let need1 = matches!(kind, BoundedKind::Ginsburg | BoundedKind::GinsburgParikh);
        let need2 = matches!(kind, BoundedKind::Parikh | BoundedKind::GinsburgParikh);
        if need1 != q1.is_some() || need2 != q2.is_some() {
            return Err(Error::Invalid(format!("{kind:?} spec has the wrong set of Q components")));
        }
        if let Some(q) = &q1 {
            if q.dim() != words.len() {
                return Err(Error::DimensionMismatch { expected: words.len(), got: q.dim() });
            }
        }
        if let Some(q) = &q2 {
            if q.dim() != alphabet.len() {
                return Err(Error::DimensionMismatch { expected: alphabet.len(), got: q.dim() });
            }
        }
        Ok(BoundedSpec { words, kind, alphabet, q1, q2 })
    }

    pub fn ginsburg(words: Vec<Word>, q1: SemilinearSet) -> Result<BoundedSpec> {
        BoundedSpec::new(words, BoundedKind::Ginsburg, None, Some(q1), None)
    }

    pub fn parikh(words: Vec<Word>, q2: SemilinearSet) -> Result<BoundedSpec> {
        BoundedSpec::new(words, BoundedKind::Parikh, None, None, Some(q2))
    }

    /// True when every word is a single letter and the letters are distinct.
    pub fn distinct_letters(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.words.iter().all(|w| w.len() == 1 && seen.insert(w.symbols()[0]))
    }

    pub fn letters(&self) -> Result<Vec<Symbol>> {
        if !self.distinct_letters() {
            return Err(Error::NotDistinctLetters);
        }
        Ok(self.words.iter().map(|w| w.symbols()[0]).collect())
    }

    fn tuple_ok(&self, t: &[u64], w: &Word) -> Result<bool> {
        if let Some(q) = &self.q1 {
            if !q.member(t)? {
                return Ok(false);
            }
        }
        if let Some(q) = &self.q2 {
            if !q.member(&parikh(w, &self.alphabet)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Membership in the language named by `spec`.
pub fn induced_member(spec: &BoundedSpec, w: &Word) -> Result<bool> {
    for &s in w {
        if !spec.alphabet.contains(s) {
            return Err(Error::SymbolNotInAlphabet(s.to_string()));
        }
    }
    let decs = decompositions(w, &spec.words);
    match spec.kind {
        BoundedKind::Parikh => {
            if decs.is_empty() {
                return Ok(false);
            }
            let q2 = spec.q2.as_ref().expect("validated");
            q2.member(&parikh(w, &spec.alphabet)?)
        }
        _ => {
            for t in decs {
                let t: Vec<u64> = t.into_iter().map(|x| x as u64).collect();
                if spec.tuple_ok(&t, w)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Words of the spec's language of length at most `max_len` in shortlex
/// order, generated by enumerating exponent tuples.
pub fn enumerate_bounded(spec: &BoundedSpec, max_len: usize) -> Result<Vec<Word>> {
    let mut out = BTreeSet::new();
    let mut t = vec![0u64; spec.words.len()];
    tuples_rec(spec, 0, max_len, &mut t, &mut out)?;
    let mut words: Vec<Word> = out.into_iter().collect();
    crate::foundation::sort_shortlex(&mut words);
    Ok(words)
}

fn tuples_rec(
    spec: &BoundedSpec,
    i: usize,
    room: usize,
    t: &mut Vec<u64>,
    out: &mut BTreeSet<Word>,
) -> Result<()> {
    if i == spec.words.len() {
        let w = phi(&spec.words, t)?;
        if spec.tuple_ok(t, &w)? {
            out.insert(w);
        }
        return Ok(());
    }
    let len = spec.words[i].len();
    for n in 0..=room / len {
        t[i] = n as u64;
        tuples_rec(spec, i + 1, room - n * len, t, out)?;
    }
    t[i] = 0;
    Ok(())
}

/// Exact rank of a list of integer vectors over ℚ.
pub fn rational_rank(vectors: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        let pivot_row: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Periods linearly independent over ℚ.
pub fn is_simple(l: &LinearSet) -> bool {
    rational_rank(&l.periods) == l.periods.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiSimpleReport {
    pub independent: Vec<bool>,
    /// `(i, j, v)`: components `i < j` both contain `v`.
    pub collisions: Vec<(usize, usize, Vec<u64>)>,
    pub box_bound: u64,
    pub validated: bool,
}

/// Checks every component is simple and, on `[0,box]^k`, that components are
/// pairwise disjoint. A positive verdict only covers the box.
pub fn validate_semi_simple(q: &SemilinearSet, box_bound: u64) -> SemiSimpleReport {
    let independent: Vec<bool> = q.components.iter().map(is_simple).collect();
    let mut collisions = Vec::new();
    let k = q.dim();
    let mut v = vec![0u64; k];
    let mut seen_pairs = BTreeSet::new();
    loop {
        let owners: Vec<usize> = (0..q.components.len())
            .filter(|&i| q.components[i].member(&v).unwrap_or(false))
            .collect();
        for a in 0..owners.len() {
            for b in a + 1..owners.len() {
                if seen_pairs.insert((owners[a], owners[b])) {
                    collisions.push((owners[a], owners[b], v.clone()));
                }
            }
        }
        let mut i = 0;
        while i < k {
            if v[i] < box_bound {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    let validated = independent.iter().all(|&b| b) && collisions.is_empty();
    SemiSimpleReport { independent, collisions, box_bound, validated }
}

/// Image of a distinct-letter Ginsburg spec under a λ-free letter morphism.
pub fn morphic_lift(spec: &BoundedSpec, h: &HashMap<Symbol, Word>) -> Result<BoundedSpec> {
    if spec.kind != BoundedKind::Ginsburg {
        return Err(Error::Precondition("morphic lift needs a Ginsburg spec".into()));
    }
    let letters = spec.letters()?;
    let mut words = Vec::with_capacity(letters.len());
    for b in letters {
        let img = h
            .get(&b)
            .ok_or_else(|| Error::Precondition(format!("morphism undefined on `{b}`")))?;
        if img.is_empty() {
            return Err(Error::Precondition(format!("morphism erases `{b}`")));
        }
        words.push(img.clone());
    }
    BoundedSpec::ginsburg(words, spec.q1.clone().expect("validated"))
}

/// Fixture sets used throughout the tests, CLI examples and the acceptance
/// suite.
pub mod fixtures {
    use super::*;

    /// `{(i,i) : i ≥ 0}`.
    pub fn diagonal() -> SemilinearSet {
        SemilinearSet::linear(vec![0, 0], vec![vec![1, 1]]).unwrap()
    }

    /// `{(i,i) : i > 0}`.
    pub fn diagonal_positive() -> SemilinearSet {
        SemilinearSet::linear(vec![1, 1], vec![vec![1, 1]]).unwrap()
    }

    /// `{(i,j,k) : 0 < i < j < k}`.
    pub fn increasing_triples() -> SemilinearSet {
        SemilinearSet::linear(vec![1, 2, 3], vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]])
            .unwrap()
    }

    /// `{(r,s) : 0 < r < s}`.
    pub fn strictly_below() -> SemilinearSet {
        SemilinearSet::linear(vec![1, 2], vec![vec![1, 1], vec![0, 1]]).unwrap()
    }

    /// `{(r,s) : 0 < s < r}`.
    pub fn strictly_above() -> SemilinearSet {
        SemilinearSet::linear(vec![2, 1], vec![vec![1, 1], vec![1, 0]]).unwrap()
    }

    /// The Ginsburg-Parikh language `{(abbb)^r (aab)^s : 0<r<s, |w|_b < |w|_a}`.
    pub fn l3() -> BoundedSpec {
        BoundedSpec::new(
            vec![Word::parse("abbb"), Word::parse("aab")],
            BoundedKind::GinsburgParikh,
            Some(Alphabet::from_chars("ab").unwrap()),
            Some(strictly_below()),
            Some(strictly_above()),
        )
        .unwrap()
    }

    /// Five small sets over two or three coordinates.
    pub fn corpus() -> Vec<(&'static str, SemilinearSet)> {
        vec![
            ("diagonal", diagonal()),
            ("increasing-triples", increasing_triples()),
            (
                "one-plus-a",
                SemilinearSet::linear(vec![1, 1], vec![vec![1, 0]]).unwrap(),
            ),
            (
                "even-or-lopsided",
                SemilinearSet::new(vec![
                    LinearSet::new(vec![0, 0], vec![vec![2, 0], vec![0, 2]]).unwrap(),
                    LinearSet::new(vec![3, 0], vec![vec![1, 2]]).unwrap(),
                ])
                .unwrap(),
            ),
            (
                "mixed-3",
                SemilinearSet::new(vec![
                    LinearSet::new(vec![0, 1, 0], vec![vec![1, 0, 1]]).unwrap(),
                    LinearSet::point(vec![2, 0, 0]).unwrap(),
                ])
                .unwrap(),
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    /// Independent oracle: every λ-tuple with Σλ ≤ 40.
    fn brute_member(q: &SemilinearSet, v: &[u64]) -> bool {
        fn rec(l: &LinearSet, j: usize, left: u64, acc: &mut Vec<u64>, v: &[u64]) -> bool {
            if acc.iter().zip(v).any(|(a, b)| a > b) {
                return false;
            }
            if j == l.periods.len() {
                return acc.as_slice() == v;
            }
            for n in 0..=left {
                let cand: Vec<u64> =
                    acc.iter().zip(&l.periods[j]).map(|(a, p)| a + n * p).collect();
                let mut c2 = cand;
                if rec(l, j + 1, left - n, &mut c2, v) {
                    return true;
                }
            }
            false
        }
        q.components.iter().any(|l| {
            let mut acc = l.constant.clone();
            rec(l, 0, 40, &mut acc, v)
        })
    }

    #[test]
    fn member_examples() {
        let q = increasing_triples();
        assert!(q.member(&[1, 2, 3]).unwrap());
        assert!(!q.member(&[2, 2, 3]).unwrap());
        assert!(!diagonal().member(&[4, 5]).unwrap());
        assert_eq!(
            q.member(&[1, 2]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn member_matches_exhaustive_lambda_search() {
        for (_, q) in corpus() {
            let k = q.dim();
            let side: u64 = if k == 2 { 16 } else { 10 };
            let total = side.pow(k as u32);
            for code in 0..total {
                let mut c = code;
                let v: Vec<u64> = (0..k)
                    .map(|_| {
                        let x = c % side;
                        c /= side;
                        x
                    })
                    .collect();
                assert_eq!(q.member(&v).unwrap(), brute_member(&q, &v), "{v:?}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let ws = [w("abb"), w("bab"), w("abb")];
        assert_eq!(phi(&ws, &[1, 2, 3]).unwrap(), w("abbbabbababbabbabb"));
        assert_eq!(phi(&[w("a"), w("b")], &[0, 0]).unwrap(), Word::empty());
        assert_eq!(phi(&[w("ab"), w("b")], &[2, 1]).unwrap(), w("ababb"));
    }

    #[test]
    fn l3_verdicts() {
        let spec = l3();
        let x = w("abbb").repeat(2);
        assert!(!induced_member(&spec, &x.concat(&w("aab").repeat(3))).unwrap());
        assert!(induced_member(&spec, &x.concat(&w("aab").repeat(5))).unwrap());
    }

    #[test]
    fn parikh_kind_member() {
        let q2 = SemilinearSet::linear(vec![1, 1], vec![vec![1, 1]]).unwrap();
        let spec = BoundedSpec::parikh(vec![w("abb"), w("aba")], q2).unwrap();
        assert!(induced_member(&spec, &w("abbaba")).unwrap());
        assert!(!induced_member(&spec, &w("abb")).unwrap());
    }

    #[test]
    fn simple_examples() {
        let l = |ps: Vec<Vec<u64>>| LinearSet::new(vec![0, 0], ps).unwrap();
        assert!(is_simple(&l(vec![vec![1, 0], vec![0, 1]])));
        assert!(!is_simple(&l(vec![vec![1, 1], vec![2, 2]])));
        assert!(is_simple(&l(vec![vec![1, 2], vec![2, 1]])));
    }

    #[test]
    fn semi_simple_examples() {
        let one = SemilinearSet::linear(vec![1, 1], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(validate_semi_simple(&one, 10).validated);

        let two = SemilinearSet::new(vec![
            LinearSet::new(vec![0, 0], vec![vec![1, 0]]).unwrap(),
            LinearSet::new(vec![0, 0], vec![vec![0, 1]]).unwrap(),
        ])
        .unwrap();
        let r = validate_semi_simple(&two, 5);
        assert!(!r.validated);
        assert_eq!(r.collisions[0], (0, 1, vec![0, 0]));

        let parity = SemilinearSet::new(vec![
            LinearSet::new(vec![0, 0], vec![vec![2, 0]]).unwrap(),
            LinearSet::new(vec![1, 0], vec![vec![2, 0]]).unwrap(),
        ])
        .unwrap();
        assert!(validate_semi_simple(&parity, 20).validated);
    }

    #[test]
    fn zero_period_rejected() {
        assert!(LinearSet::new(vec![0], vec![vec![0]]).is_err());
    }

    #[test]
    fn bounded_relationship_witness_pair() {
        let g = BoundedSpec::ginsburg(
            vec![w("a"), w("b"), w("a")],
            SemilinearSet::linear(vec![1, 1, 1], vec![vec![1, 1, 1]]).unwrap(),
        )
        .unwrap();
        let p = BoundedSpec::parikh(
            vec![w("a"), w("b"), w("a")],
            SemilinearSet::linear(vec![2, 1], vec![vec![2, 1]]).unwrap(),
        )
        .unwrap();
        let lg = enumerate_bounded(&g, 4).unwrap();
        let lp = enumerate_bounded(&p, 4).unwrap();
        assert!(lg.is_empty() || lg.iter().all(|x| x.len() == 3));
        assert!(lp.contains(&w("aab")) && !lg.contains(&w("aab")));
    }

    #[test]
    fn parikh_spec_is_ginsburg_spec_of_pulled_back_set() {
        // Q1 = {t : ψ(φ(t)) ∈ Q2} as tuples; compare languages by enumeration.
        let words = vec![w("ab"), w("b"), w("a")];
        let q2 = SemilinearSet::linear(vec![1, 2], vec![vec![1, 1], vec![0, 2]]).unwrap();
        let p = BoundedSpec::parikh(words.clone(), q2.clone()).unwrap();
        let alph = Alphabet::from_chars("ab").unwrap();
        let mut via_tuples = BTreeSet::new();
        for t0 in 0..=5u64 {
            for t1 in 0..=10u64 {
                for t2 in 0..=10u64 {
                    let x = phi(&words, &[t0, t1, t2]).unwrap();
                    if x.len() <= 10 && q2.member(&parikh(&x, &alph).unwrap()).unwrap() {
                        via_tuples.insert(x);
                    }
                }
            }
        }
        let lp: BTreeSet<Word> = enumerate_bounded(&p, 10).unwrap().into_iter().collect();
        assert_eq!(lp, via_tuples);
    }

    #[test]
    fn tuple_generation_matches_word_filtering() {
        let spec = l3();
        let mut gen = enumerate_bounded(&spec, 20).unwrap();
        crate::foundation::sort_shortlex(&mut gen);
        let words = crate::foundation::all_words(
            spec.alphabet.symbols(),
            10,
            &crate::foundation::Budget::default(),
        )
        .unwrap();
        let filtered: Vec<Word> =
            words.into_iter().filter(|x| induced_member(&spec, x).unwrap()).collect();
        let gen10: Vec<Word> = gen.into_iter().filter(|x| x.len() <= 10).collect();
        assert_eq!(gen10, filtered);
    }

    #[test]
    fn morphic_lift_examples() {
        let spec = BoundedSpec::ginsburg(vec![w("c"), w("d")], diagonal()).unwrap();
        let h: HashMap<Symbol, Word> =
            [(crate::sym("c"), w("ab")), (crate::sym("d"), w("ba"))].into_iter().collect();
        let lifted = morphic_lift(&spec, &h).unwrap();
        assert_eq!(lifted.words, vec![w("ab"), w("ba")]);
        let mut image: Vec<Word> = enumerate_bounded(&spec, 4)
            .unwrap()
            .into_iter()
            .map(|x| x.iter().flat_map(|s| h[s].iter().copied()).collect())
            .filter(|x: &Word| x.len() <= 8)
            .collect();
        crate::foundation::sort_shortlex(&mut image);
        assert_eq!(enumerate_bounded(&lifted, 8).unwrap(), image);

        let bad: HashMap<Symbol, Word> =
            [(crate::sym("c"), Word::empty()), (crate::sym("d"), w("a"))].into_iter().collect();
        assert!(morphic_lift(&spec, &bad).is_err());
    }

    proptest! {
        #[test]
        fn parikh_is_additive(a in "[ab]{0,12}", b in "[ab]{0,12}") {
            let alph = Alphabet::from_chars("ab").unwrap();
            let (u, v) = (w(&a), w(&b));
            let s: Vec<u64> = parikh(&u, &alph).unwrap().iter()
                .zip(parikh(&v, &alph).unwrap()).map(|(x, y)| x + y).collect();
            prop_assert_eq!(parikh(&u.concat(&v), &alph).unwrap(), s);
        }

        #[test]
        fn comm_equivalence_is_an_equivalence(a in "[abc]{0,6}", b in "[abc]{0,6}", c in "[abc]{0,6}") {
            let (x, y, z) = (w(&a), w(&b), w(&c));
            prop_assert!(crate::comm_equivalent(&x, &x));
            prop_assert_eq!(crate::comm_equivalent(&x, &y), crate::comm_equivalent(&y, &x));
            if crate::comm_equivalent(&x, &y) && crate::comm_equivalent(&y, &z) {
                prop_assert!(crate::comm_equivalent(&x, &z));
            }
        }
    }
}
