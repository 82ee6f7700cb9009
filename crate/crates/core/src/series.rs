//! Counting and characteristic series: coefficients from the θ-weighted
//! Szilard automaton, brute-force counts from the oracle, and exact linear
//! recurrence fitting.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foundation::{enumerate, Budget, LanguageSpec, ParikhVector, Symbol};
use crate::matrix::{szilard_dfa, MatrixGrammar};
use crate::semilinear::SemilinearSet;

/// A series coefficient in `ℕ ∪ {+∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Finite(BigUint),
    Infinite,
}

impl Coefficient {
    pub fn finite(n: u64) -> Coefficient {
        Coefficient::Finite(BigUint::from(n))
    }

    fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Finite(a), Coefficient::Finite(b)) => Coefficient::Finite(a + b),
            _ => Coefficient::Infinite,
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Finite(n) if n.is_zero())
    }
}

impl std::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::Finite(n) => write!(f, "{n}"),
            Coefficient::Infinite => write!(f, "∞"),
        }
    }
}

/// `a_n = Σ cᵢ a_{n−i}` for `n ≥ order`, verified on `validated` terms past
/// the ones used to solve for the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub order: usize,
    pub coefficients: Vec<BigRational>,
    pub validated: usize,
}

/// Accepted-path counts of the Szilard automaton, bucketed by the Parikh
/// vector of the θ-image (over `letters`). Only vectors of total size at
/// most `bound` are kept.
fn weighted_counts(
    g: &MatrixGrammar,
    k: usize,
    letters: &[Symbol],
    bound: usize,
) -> Result<BTreeMap<ParikhVector, Coefficient>> {
    let sz = szilard_dfa(g, k)?;
    let theta = g.theta();
    let weight = |name: Symbol| -> ParikhVector {
        let m = g.matrix_index(name.name()).expect("szilard label names a matrix");
        letters
            .iter()
            .map(|&a| theta[m].iter().filter(|&&s| s == a).count() as u64)
            .collect()
    };
    let n = sz.dfa.num_states();
    let edges: Vec<Vec<(ParikhVector, usize)>> = sz
        .dfa
        .delta
        .iter()
        .map(|row| row.iter().map(|(&m, &j)| (weight(m), j)).collect())
        .collect();
    let zero = vec![0u64; letters.len()];
    // States lying on a cycle of zero-weight edges.
    let zero_succ = |i: usize| edges[i].iter().filter(|(w, _)| *w == zero).map(|e| e.1);
    let reach_zero = |from: usize| -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack: Vec<usize> = zero_succ(from).collect();
        while let Some(j) = stack.pop() {
            if seen.insert(j) {
                stack.extend(zero_succ(j));
            }
        }
        seen
    };
    let zreach: Vec<HashSet<usize>> = (0..n).map(reach_zero).collect();
    let cyclic: Vec<bool> = (0..n).map(|i| zreach[i].contains(&i)).collect();
    // Topological order of the zero-weight graph restricted to acyclic states.
    let mut order: Vec<usize> = Vec::new();
    let mut mark = vec![false; n];
    fn visit(i: usize, edges: &[Vec<(ParikhVector, usize)>], zero: &[u64], cyclic: &[bool], mark: &mut [bool], order: &mut Vec<usize>) {
        if mark[i] {
            return;
        }
        mark[i] = true;
        for (w, j) in &edges[i] {
            if w.as_slice() == zero && !cyclic[*j] {
                visit(*j, edges, zero, cyclic, mark, order);
            }
        }
        order.push(i);
    }
    for i in 0..n {
        if !cyclic[i] {
            visit(i, &edges, &zero, &cyclic, &mut mark, &mut order);
        }
    }
    order.reverse();

    let norm = |v: &ParikhVector| v.iter().sum::<u64>() as usize;
    // mass[v][state] before zero-closure.
    let mut pending: BTreeMap<(usize, ParikhVector), Vec<Coefficient>> = BTreeMap::new();
    let empty = vec![Coefficient::finite(0); n];
    pending.entry((0, zero.clone())).or_insert_with(|| empty.clone())[sz.dfa.initial] =
        Coefficient::finite(1);
    let mut out = BTreeMap::new();
    while let Some(((_, v), mut mass)) = pending.pop_first() {
        // Zero-weight closure at this vector.
        for i in 0..n {
            if cyclic[i] && !mass[i].is_zero() {
                for &j in zreach[i].iter() {
                    mass[j] = Coefficient::Infinite;
                }
            }
        }
        for i in 0..n {
            if !mass[i].is_zero() && !cyclic[i] {
                for &j in &zreach[i] {
                    if cyclic[j] {
                        for &l in zreach[j].iter() {
                            mass[l] = Coefficient::Infinite;
                        }
                    }
                }
            }
        }
        for &i in &order {
            if mass[i].is_zero() {
                continue;
            }
            let m = mass[i].clone();
            for (w, j) in &edges[i] {
                if *w == zero && !cyclic[*j] {
                    mass[*j] = mass[*j].add(&m);
                }
            }
        }
        let accepted = (0..n)
            .filter(|&i| sz.dfa.accepting[i])
            .fold(Coefficient::finite(0), |acc, i| acc.add(&mass[i]));
        if !accepted.is_zero() {
            out.insert(v.clone(), accepted);
        }
        for i in 0..n {
            if mass[i].is_zero() {
                continue;
            }
            for (w, j) in &edges[i] {
                if *w == zero {
                    continue;
                }
                let nv: ParikhVector = v.iter().zip(w).map(|(a, b)| a + b).collect();
                if norm(&nv) > bound {
                    continue;
                }
                let slot = pending.entry((norm(&nv), nv)).or_insert_with(|| empty.clone());
                slot[*j] = slot[*j].add(&mass[i]);
            }
        }
    }
    Ok(out)
}

/// `c_n` = number of accepted matrix strings `α` with `|θ(α)| = n`, for
/// `n ≤ max_n`. Equals `f_{L(G)}(n)` when `G` is unambiguous.
pub fn counting_coefficients(g: &MatrixGrammar, k: usize, max_n: usize) -> Result<Vec<Coefficient>> {
    let mut out = vec![Coefficient::finite(0); max_n + 1];
    let letters = g.terminals.clone();
    for (v, c) in weighted_counts(g, k, &letters, max_n)? {
        let n = v.iter().sum::<u64>() as usize;
        out[n] = out[n].add(&c);
    }
    Ok(out)
}

/// Per Parikh vector (over `g.terminals`) of size at most `norm_bound`, the
/// number of accepted `α` with `ψ(θ(α)) = v`. Absent vectors have count 0.
pub fn parikh_multiplicities(
    g: &MatrixGrammar,
    k: usize,
    norm_bound: usize,
) -> Result<BTreeMap<ParikhVector, Coefficient>> {
    weighted_counts(g, k, &g.terminals, norm_bound)
}

/// `|L ∩ Σⁿ|` for `n ≤ max_n` from the enumeration oracle.
pub fn brute_counting(spec: &LanguageSpec, max_n: usize, budget: &Budget) -> Result<Vec<u64>> {
    let mut out = vec![0u64; max_n + 1];
    for w in enumerate(spec, max_n, budget)? {
        out[w.len()] += 1;
    }
    Ok(out)
}

/// `|{w ∈ Σⁿ : ψ(w) ∈ Q}|` for `n ≤ max_n`, summing multinomial
/// coefficients over the Parikh vectors of each length instead of listing
/// words. Exact for lengths far beyond word enumeration.
pub fn parikh_set_counts(set: &SemilinearSet, max_n: usize) -> Result<Vec<BigUint>> {
    let dim = set.dim();
    let mut fact = vec![BigUint::one()];
    for i in 1..=max_n {
        let next = &fact[i - 1] * BigUint::from(i);
        fact.push(next);
    }
    let mut out = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut total = BigUint::zero();
        let mut v = vec![0u64; dim];
        compositions(n as u64, 0, &mut v, &mut |v| {
            if set.member(v)? {
                let denom: BigUint = v.iter().map(|&x| fact[x as usize].clone()).product();
                total += &fact[n] / denom;
            }
            Ok(())
        })?;
        out.push(total);
    }
    Ok(out)
}

fn compositions(
    left: u64,
    at: usize,
    v: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    if at + 1 >= v.len() {
        if let Some(last) = v.last_mut() {
            *last = left;
        } else if left > 0 {
            return Ok(());
        }
        return f(v);
    }
    for x in 0..=left {
        v[at] = x;
        compositions(left - x, at + 1, v, f)?;
    }
    Ok(())
}

/// Smallest order `d ≤ max_order` whose recurrence, solved exactly from the
/// first `2d` terms, holds on every remaining term (at least one).
pub fn fit_recurrence(seq: &[BigInt], max_order: usize) -> Result<Option<RecurrenceFit>> {
    let needed = 2 * max_order + 1;
    if seq.len() < needed || max_order == 0 {
        return Err(Error::InsufficientTerms { needed: needed.max(3), got: seq.len() });
    }
    let q: Vec<BigRational> = seq.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    for d in 1..=max_order {
        // Rows n = d..2d-1: a_n = Σ_{i=1..d} c_i a_{n-i}.
        let rows: Vec<(Vec<BigRational>, BigRational)> = (d..2 * d)
            .map(|n| ((1..=d).map(|i| q[n - i].clone()).collect(), q[n].clone()))
            .collect();
        let Some(c) = solve(rows) else { continue };
        let holds = (2 * d..q.len()).all(|n| {
            let pred: BigRational = (1..=d).map(|i| &c[i - 1] * &q[n - i]).sum();
            pred == q[n]
        });
        if holds {
            return Ok(Some(RecurrenceFit { order: d, coefficients: c, validated: q.len() - 2 * d }));
        }
    }
    Ok(None)
}

/// Gaussian elimination; free variables are set to zero. `None` when the
/// system is inconsistent.
fn solve(rows: Vec<(Vec<BigRational>, BigRational)>) -> Option<Vec<BigRational>> {
    let d = rows.first().map_or(0, |r| r.0.len());
    let mut m: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|(mut a, b)| {
            a.push(b);
            a
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..d {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=d {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[d].is_zero()) {
        return None;
    }
    let mut c = vec![BigRational::zero(); d];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = m[i][d].clone();
    }
    Some(c)
}

/// `𝓛₂ = {w ∈ {a₁,a₂}* : |w|_{a₁} = |w|_{a₂}}`: word counts at lengths
/// `0, 2, 4, …` (`terms` of them), by a DP on the letter-count difference.
pub fn balanced_counts(terms: usize) -> Vec<BigInt> {
    let len = 2 * terms;
    // ways[d + len] = words of the current length with difference d.
    let mut ways = vec![BigInt::zero(); 2 * len + 1];
    ways[len] = BigInt::one();
    let mut out = vec![BigInt::one()];
    for step in 1..len.max(1) + 1 {
        let mut next = vec![BigInt::zero(); 2 * len + 1];
        for (i, x) in ways.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            next[i - 1] += x;
            next[i + 1] += x;
        }
        ways = next;
        if step % 2 == 0 && out.len() < terms {
            out.push(ways[len].clone());
        }
        if out.len() == terms {
            break;
        }
    }
    out.truncate(terms);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{sym, Alphabet};
    use crate::matrix::fixtures::*;
    use crate::semilinear::LinearSet;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn xsharpx_counts_are_powers_of_two() {
        let c = counting_coefficients(&xsharpx(), 2, 17).unwrap();
        for n in 0..=8usize {
            let expect = if n == 0 { 0 } else { 1u64 << n };
            assert_eq!(c[2 * n + 1], Coefficient::finite(expect), "n = {n}");
            assert_eq!(c[2 * n], Coefficient::finite(0));
        }
        let brute = brute_counting(&LanguageSpec::Matrix(xsharpx()), 11, &Budget::default()).unwrap();
        for (n, x) in brute.iter().enumerate() {
            assert_eq!(c[n], Coefficient::finite(*x), "n = {n}");
        }
    }

    #[test]
    fn lambda_and_ambiguous_counts() {
        let c = counting_coefficients(&lambda(), 1, 3).unwrap();
        assert_eq!(c[0], Coefficient::finite(1));
        assert!(c[1..].iter().all(|x| x.is_zero()));
        let c = counting_coefficients(&two_ways(), 1, 2).unwrap();
        assert_eq!(c[1], Coefficient::finite(2));
        let brute = brute_counting(&LanguageSpec::Matrix(two_ways()), 2, &Budget::default()).unwrap();
        assert_eq!(brute[1], 1);
    }

    #[test]
    fn zero_weight_cycle_is_infinite() {
        use crate::matrix::Matrix;
        let g = MatrixGrammar::from_matrices(
            "S",
            vec![
                Matrix::new("m1", &[("S", "A")]),
                Matrix::new("m2", &[("A", "A")]),
                Matrix::new("m3", &[("A", "a")]),
            ],
        )
        .unwrap();
        let c = counting_coefficients(&g, 1, 2).unwrap();
        assert_eq!(c[1], Coefficient::Infinite);
        assert!(c[0].is_zero());
    }

    #[test]
    fn parikh_multiplicities_examples() {
        let g = xsharpx();
        let idx = |s: &str| g.terminals.iter().position(|&t| t == sym(s)).unwrap();
        let vec_of = |a: u64, b_: u64, h: u64| {
            let mut v = vec![0u64; 3];
            v[idx("a")] = a;
            v[idx("b")] = b_;
            v[idx("#")] = h;
            v
        };
        let pm = parikh_multiplicities(&g, 2, 9).unwrap();
        assert_eq!(pm.get(&vec_of(2, 0, 1)), Some(&Coefficient::finite(1)));
        assert_eq!(pm.get(&vec_of(1, 1, 1)), None);
        assert_eq!(pm.get(&vec_of(2, 2, 1)), Some(&Coefficient::finite(2)));
        assert_eq!(pm.get(&vec![0, 0, 0]), None);
        let lengths = counting_coefficients(&g, 2, 9).unwrap();
        for (n, c) in lengths.iter().enumerate() {
            let total = pm
                .iter()
                .filter(|(v, _)| v.iter().sum::<u64>() as usize == n)
                .fold(Coefficient::finite(0), |acc, (_, x)| acc.add(x));
            assert_eq!(&total, c);
        }
    }

    #[test]
    fn brute_counting_examples() {
        let b = Budget::default();
        let anbn = LanguageSpec::Bounded(
            crate::semilinear::BoundedSpec::ginsburg(
                vec!["a".into(), "b".into()],
                SemilinearSet::linear(vec![0, 0], vec![vec![1, 1]]).unwrap(),
            )
            .unwrap(),
        );
        assert_eq!(brute_counting(&anbn, 6, &b).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
        let l2 = LanguageSpec::ParikhSet {
            alphabet: Alphabet::new(vec![sym("a₁"), sym("a₂")]).unwrap(),
            set: SemilinearSet::new(vec![LinearSet::new(vec![0, 0], vec![vec![1, 1]]).unwrap()]).unwrap(),
        };
        assert_eq!(brute_counting(&l2, 6, &b).unwrap(), vec![1, 0, 2, 0, 6, 0, 20]);
        let abn = LanguageSpec::Etol(crate::etol::fixtures::ab_n());
        assert_eq!(brute_counting(&abn, 5, &b).unwrap(), vec![0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn parikh_set_counts_match_enumeration() {
        let q = SemilinearSet::new(vec![
            LinearSet::new(vec![1, 0], vec![vec![1, 2]]).unwrap(),
            LinearSet::point(vec![0, 3]).unwrap(),
        ])
        .unwrap();
        let spec = LanguageSpec::ParikhSet { alphabet: Alphabet::from_chars("ab").unwrap(), set: q.clone() };
        let brute = brute_counting(&spec, 10, &Budget::default()).unwrap();
        let fast = parikh_set_counts(&q, 10).unwrap();
        assert_eq!(fast, brute.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>());
        let diag = parikh_set_counts(&SemilinearSet::linear(vec![0, 0], vec![vec![1, 1]]).unwrap(), 20).unwrap();
        let evens: Vec<BigInt> = diag.iter().step_by(2).map(|x| BigInt::from(x.clone())).collect();
        assert_eq!(evens, balanced_counts(11));
    }

    #[test]
    fn balanced_counts_match_brute_force() {
        let l2 = LanguageSpec::ParikhSet {
            alphabet: Alphabet::new(vec![sym("a₁"), sym("a₂")]).unwrap(),
            set: SemilinearSet::linear(vec![0, 0], vec![vec![1, 1]]).unwrap(),
        };
        let brute = brute_counting(&l2, 16, &Budget::default()).unwrap();
        let dp = balanced_counts(9);
        for n in 0..=8 {
            assert_eq!(dp[n], BigInt::from(brute[2 * n]));
        }
        assert_eq!(&balanced_counts(6), &ints(&[1, 2, 6, 20, 70, 252]));
    }

    #[test]
    fn fit_examples() {
        let fit = fit_recurrence(&ints(&[1, 2, 4, 8, 16, 32, 64, 128]), 3).unwrap().unwrap();
        assert_eq!(fit.order, 1);
        assert_eq!(fit.coefficients, vec![BigRational::from_integer(2.into())]);
        let zeros = fit_recurrence(&ints(&[0; 8]), 3).unwrap().unwrap();
        assert_eq!(zeros.order, 1);
        assert!(zeros.coefficients[0].is_zero());
        let fib = fit_recurrence(&ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34]), 3).unwrap().unwrap();
        assert_eq!(fib.order, 2);
        assert_eq!(fit_recurrence(&balanced_counts(40), 8).unwrap(), None);
        assert!(matches!(
            fit_recurrence(&ints(&[1, 2, 3]), 4),
            Err(Error::InsufficientTerms { .. })
        ));
    }
}
