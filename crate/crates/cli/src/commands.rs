use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use workbench_core::commutative::{
    auto_etol_codes, check_cor2_conditions, cor2_codes, edol_regularize, regularize_etol,
    regularize_matrix, verify_comm_equivalence, RegularWitness,
};
use workbench_core::counter::{dcm_for_bounded, decide_bounded, from_semilinear};
use workbench_core::etol::{
    from_reduced, semilinear_to_etol, to_reduced, unambiguous_bounded_etol, EtolSystem, TreeCount,
};
use workbench_core::format::{self, Object};
use workbench_core::matrix::{
    matrix_to_reduced_etol, normal_form, reduced_etol_to_edtol, reduced_etol_to_matrix,
    szilard_dfa, MatrixGrammar,
};
use workbench_core::semilinear::{validate_semi_simple, BoundedKind, BoundedSpec, SemilinearSet};
use workbench_core::series::{
    brute_counting, counting_coefficients, fit_recurrence, parikh_multiplicities, parikh_set_counts,
    Coefficient,
};
use workbench_core::{enumerate as oracle, parikh, Alphabet, Budget, Error, LanguageSpec, Result, Symbol, Word};

use crate::{AuditKind, CmdResult, Config, SeriesMode, Target, Verdict};

impl Config {
    fn budget(&self) -> Budget {
        Budget::default().with_states(self.steps)
    }

    fn audit_len(&self) -> usize {
        self.audit_len.unwrap_or(self.max_len)
    }

    fn letters(&self, dim: usize) -> Result<Vec<Symbol>> {
        let Some(text) = &self.letters else {
            return Err(Error::Precondition("a semilinear set needs --letters to describe a language".into()));
        };
        let letters: Vec<Symbol> = Word::parse(text).into_symbols();
        if letters.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: letters.len() });
        }
        Ok(letters)
    }

    fn header(&self) {
        println!(
            "config: max-len={} steps={} audit-len={} k={}",
            self.max_len,
            self.steps,
            self.audit_len(),
            self.k
        );
    }

    /// Writes the artifact to `--out`, or to stdout when no path was given.
    fn emit(&self, obj: &Object) -> Result<()> {
        let text = format::print(obj);
        match &self.out {
            Some(path) => {
                fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                println!("wrote {} to {}", obj.kind(), path.display());
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn load(path: &Path) -> Result<Object> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    format::parse(&text)
}

fn matrix_of(obj: &Object) -> Result<MatrixGrammar> {
    match obj {
        Object::Matrix(f) => MatrixGrammar::try_from(f),
        other => Err(Error::Unsupported(format!("expected a matrix grammar, got {}", other.kind()))),
    }
}

/// `{a₁^{t₁}⋯a_k^{t_k} : t ∈ Q}` over the configured letters.
fn letter_bounded(q: &SemilinearSet, letters: &[Symbol]) -> Result<BoundedSpec> {
    let words = letters.iter().map(|&s| Word::from_symbols(vec![s])).collect();
    BoundedSpec::ginsburg(words, q.clone())
}

fn language_of(cfg: &Config, obj: &Object, parikh_reading: bool) -> Result<LanguageSpec> {
    match obj {
        Object::Semilinear(q) => {
            let letters = cfg.letters(q.dim())?;
            if parikh_reading {
                Ok(LanguageSpec::ParikhSet { alphabet: Alphabet::new(letters)?, set: q.clone() })
            } else {
                Ok(LanguageSpec::Bounded(letter_bounded(q, &letters)?))
            }
        }
        other => other.language(),
    }
}

fn count_of(spec: &LanguageSpec, w: &Word, budget: &Budget) -> Option<TreeCount> {
    match spec {
        LanguageSpec::Etol(g) => Some(g.count_trees(w, budget)),
        LanguageSpec::Matrix(g) => Some(g.count_derivations(w, budget)),
        _ => None,
    }
}

/// Compares the two languages up to `--max-len` and, when both sides are
/// grammars, the per-word derivation counts. Returns whether all agree.
fn cross_check(cfg: &Config, source: &LanguageSpec, target: &LanguageSpec, counts: bool) -> Result<bool> {
    let budget = cfg.budget();
    let a = oracle(source, cfg.max_len, &budget)?;
    let b = oracle(target, cfg.max_len, &budget)?;
    if a != b {
        let sa: BTreeSet<&Word> = a.iter().collect();
        let sb: BTreeSet<&Word> = b.iter().collect();
        let diff = sa.symmetric_difference(&sb).next().expect("languages differ");
        println!("oracle-equal ≤ {}: FAIL (first difference {diff})", cfg.max_len);
        return Ok(false);
    }
    println!("oracle-equal ≤ {}: PASS ({} words)", cfg.max_len, a.len());
    if counts {
        for w in &a {
            let (x, y) = (count_of(source, w, &budget), count_of(target, w, &budget));
            if x != y {
                println!("derivation counts: FAIL ({w}: {} vs {})", show(x), show(y));
                return Ok(false);
            }
        }
        println!("derivation counts preserved: PASS");
    }
    Ok(true)
}

fn show(c: Option<TreeCount>) -> String {
    c.map_or("-".into(), |c| c.to_string())
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::True
    } else {
        Verdict::False
    }
}

pub fn convert(cfg: &Config, input: &Path, to: Target) -> CmdResult {
    let obj = load(input)?;
    cfg.header();
    println!("convert {} → {to:?}", obj.kind());
    let budget = cfg.budget();
    let (out, ok) = match (&obj, to) {
        (Object::Semilinear(q), Target::Ncm) => {
            let letters = cfg.letters(q.dim())?;
            let alphabet = Alphabet::new(letters.clone())?;
            let m = from_semilinear(q, &alphabet)?;
            // ψ-membership over every word, not only the letter-bounded ones.
            let mut ok = true;
            let mut checked = 0;
            for w in workbench_core::foundation::all_words(&letters, cfg.max_len, &budget)? {
                let expect = q.member(&parikh(&w, &alphabet)?)?;
                if m.accepts(&w, &budget)? != expect {
                    println!("oracle-equal ≤ {}: FAIL (machine disagrees on {w})", cfg.max_len);
                    ok = false;
                    break;
                }
                checked += 1;
            }
            if ok {
                println!("oracle-equal ≤ {}: PASS ({checked} words)", cfg.max_len);
            }
            (Object::Machine(m), ok)
        }
        (Object::Semilinear(q), Target::Etol) => {
            let letters = cfg.letters(q.dim())?;
            let g = semilinear_to_etol(q, &letters)?;
            let ok = cross_check(cfg, &LanguageSpec::Bounded(letter_bounded(q, &letters)?), &LanguageSpec::Etol(g.clone()), false)?;
            let audit = g.index_audit(cfg.audit_len(), &budget);
            println!("index ≤ {} over words ≤ {} (bound k = {})", audit.max_index, audit.max_len, q.dim());
            (Object::Etol(g), ok && audit.max_index <= q.dim())
        }
        (Object::Bounded(s), Target::Dcm) => {
            let m = dcm_for_bounded(s, None)?;
            println!("deterministic: {}", m.is_deterministic());
            let ok = cross_check(cfg, &LanguageSpec::Bounded(s.clone()), &LanguageSpec::Machine(m.clone()), false)?;
            (Object::Machine(m), ok)
        }
        (Object::Bounded(s), Target::Etol) => {
            if s.kind != BoundedKind::Ginsburg {
                return Err(Error::Precondition("unambiguous generation needs a Ginsburg spec".into()));
            }
            let q = s.q1.as_ref().expect("validated");
            let g = unambiguous_bounded_etol(&s.words, q, 8, cfg.max_len)?;
            let ok = cross_check(cfg, &LanguageSpec::Bounded(s.clone()), &LanguageSpec::Etol(g.clone()), false)?;
            let worst = ambiguity(&LanguageSpec::Etol(g.clone()), cfg)?;
            println!("max derivation-tree count ≤ {}: {worst}", cfg.max_len);
            (Object::Etol(g), ok && worst == TreeCount::Exact(1))
        }
        (Object::Matrix(_), Target::ReducedEtol | Target::NormalForm | Target::Szilard) => {
            let g = matrix_of(&obj)?;
            match to {
                Target::ReducedEtol => {
                    let e = matrix_to_reduced_etol(&g, cfg.k)?;
                    let ok = cross_check(cfg, &LanguageSpec::Matrix(g), &LanguageSpec::Etol(e.clone()), true)?;
                    (Object::Etol(e), ok)
                }
                Target::NormalForm => {
                    let (nf, cert) = normal_form(&g, cfg.k)?;
                    println!(
                        "{} reachable profiles; register construction {}",
                        cert.profiles.len(),
                        if cert.transformed { "applied" } else { "not needed" }
                    );
                    let ok = cross_check(cfg, &LanguageSpec::Matrix(g), &LanguageSpec::Matrix(nf.clone()), true)?;
                    (Object::matrix(&nf), ok)
                }
                _ => {
                    let sz = szilard_dfa(&g, cfg.k)?;
                    println!("Szilard automaton: {} states over profiles {:?}", sz.dfa.num_states(), sz.profiles);
                    (Object::Automaton(sz.dfa.to_nfa()), true)
                }
            }
        }
        (Object::Etol(g), Target::Edtol | Target::Matrix | Target::Reduced | Target::Plain) => {
            let src = LanguageSpec::Etol(g.clone());
            match to {
                Target::Edtol => {
                    let e = reduced_etol_to_edtol(g, cfg.k)?;
                    let ok = cross_check(cfg, &src, &LanguageSpec::Etol(e.clone()), true)?;
                    (Object::Etol(e), ok)
                }
                Target::Matrix => {
                    let m = reduced_etol_to_matrix(g, cfg.k)?;
                    let ok = cross_check(cfg, &src, &LanguageSpec::Matrix(m.clone()), true)?;
                    (Object::matrix(&m), ok)
                }
                Target::Reduced => {
                    let r = to_reduced(g);
                    let ok = cross_check(cfg, &src, &LanguageSpec::Etol(r.clone()), false)?;
                    (Object::Etol(r), ok)
                }
                _ => {
                    let p = from_reduced(g)?;
                    let ok = cross_check(cfg, &src, &LanguageSpec::Etol(p.clone()), true)?;
                    (Object::Etol(p), ok)
                }
            }
        }
        (other, to) => {
            return Err(Error::Unsupported(format!("no conversion from {} to {to:?}", other.kind())))
        }
    };
    cfg.emit(&out)?;
    Ok(verdict(ok))
}

pub fn decide(cfg: &Config, first: &Path, second: &Path, relation: &str, injective: Option<usize>) -> CmdResult {
    let spec = |p: &Path| -> Result<BoundedSpec> {
        match load(p)? {
            Object::Bounded(s) => Ok(s),
            Object::Semilinear(q) => letter_bounded(&q, &cfg.letters(q.dim())?),
            other => Err(Error::Unsupported(format!("decide needs bounded specs, got {}", other.kind()))),
        }
    };
    let (s1, s2) = (spec(first)?, spec(second)?);
    let rel = relation.parse()?;
    let v = decide_bounded(&s1, &s2, rel, injective)?;
    println!("{relation}: {}", v.holds);
    if let Some(w) = v.witness {
        println!("witness: {w}");
    }
    Ok(verdict(v.holds))
}

pub fn enumerate(cfg: &Config, input: &Path, parikh_reading: bool) -> CmdResult {
    let obj = load(input)?;
    let spec = language_of(cfg, &obj, parikh_reading)?;
    let words = oracle(&spec, cfg.max_len, &cfg.budget())?;
    for w in &words {
        println!("{w}");
    }
    eprintln!("{} words of length ≤ {}", words.len(), cfg.max_len);
    Ok(Verdict::True)
}

/// Normal form is required by the Szilard-based constructions; applied
/// automatically when the grammar lacks it.
fn ensure_normal(g: MatrixGrammar, k: usize) -> Result<MatrixGrammar> {
    match g.check_normal_form(k) {
        Ok(_) => Ok(g),
        Err(Error::NormalFormViolation(why)) => {
            println!("normal form missing ({why}); applying the register construction");
            Ok(normal_form(&g, k)?.0)
        }
        Err(e) => Err(e),
    }
}

fn parse_subsequence(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("--subsequence expects start:step, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let start = a.trim().parse().map_err(|_| bad())?;
    let step: usize = b.trim().parse().map_err(|_| bad())?;
    if step == 0 {
        return Err(bad());
    }
    Ok((start, step))
}

pub fn series(
    cfg: &Config,
    input: &Path,
    n: usize,
    mode: SeriesMode,
    max_order: usize,
    subsequence: Option<&str>,
) -> CmdResult {
    let obj = load(input)?;
    cfg.header();
    if mode == SeriesMode::Parikh {
        let g = ensure_normal(matrix_of(&obj)?, cfg.k)?;
        println!("parikh vector over {:?}\tcoefficient", g.terminals.iter().map(|s| s.name()).collect::<Vec<_>>());
        for (v, c) in parikh_multiplicities(&g, cfg.k, n)? {
            if c != Coefficient::finite(0) {
                println!("{v:?}\t{c}");
            }
        }
        return Ok(Verdict::True);
    }
    let coeffs: Vec<Coefficient> = match &obj {
        Object::Matrix(_) => counting_coefficients(&ensure_normal(matrix_of(&obj)?, cfg.k)?, cfg.k, n)?,
        Object::Semilinear(q) => {
            cfg.letters(q.dim())?;
            println!("source: words whose Parikh vector lies in the set (multinomial count)");
            parikh_set_counts(q, n)?.into_iter().map(Coefficient::Finite).collect()
        }
        other => {
            println!("source: brute-force enumeration");
            brute_counting(&other.language()?, n, &cfg.budget())?.into_iter().map(Coefficient::finite).collect()
        }
    };
    println!("n\tf(n)");
    for (i, c) in coeffs.iter().enumerate() {
        println!("{i}\t{c}");
    }
    let mut seq = Vec::new();
    for c in &coeffs {
        match c {
            Coefficient::Finite(x) => seq.push(BigInt::from(x.clone())),
            Coefficient::Infinite => {
                println!("fit: skipped (infinite coefficient)");
                return Ok(Verdict::True);
            }
        }
    }
    let (start, step) = match subsequence {
        Some(t) => parse_subsequence(t)?,
        None => (0, 1),
    };
    let seq: Vec<BigInt> = seq.into_iter().skip(start).step_by(step).collect();
    // Fitting order d needs 2d+1 terms; shorter tables get a smaller cap.
    let cap = max_order.min(seq.len().saturating_sub(1) / 2);
    if cap == 0 {
        println!("fit: skipped ({} terms are too few)", seq.len());
        return Ok(Verdict::True);
    }
    if cap < max_order {
        println!("fit: order capped at {cap} by the {} available terms", seq.len());
    }
    let max_order = cap;
    match fit_recurrence(&seq, max_order)? {
        Some(fit) => {
            let terms: Vec<String> =
                fit.coefficients.iter().enumerate().map(|(i, c)| format!("({c})·a[n-{}]", i + 1)).collect();
            println!(
                "recurrence of order {} on terms {start}:{step}: a[n] = {} (validated on {} further terms)",
                fit.order,
                terms.join(" + "),
                fit.validated
            );
        }
        None => println!("no recurrence of order ≤ {max_order} on terms {start}:{step}"),
    }
    Ok(Verdict::True)
}

/// Largest derivation count over the words up to the audit length.
fn ambiguity(spec: &LanguageSpec, cfg: &Config) -> Result<TreeCount> {
    let budget = cfg.budget();
    let mut worst = TreeCount::Exact(0);
    for w in oracle(spec, cfg.audit_len(), &budget)? {
        let c = count_of(spec, &w, &budget).expect("grammar");
        worst = match (worst, c) {
            (TreeCount::Infinite, _) | (_, TreeCount::Infinite) => TreeCount::Infinite,
            (TreeCount::Exact(a), TreeCount::Exact(b)) => TreeCount::Exact(a.max(b)),
            (TreeCount::AtLeast(a) | TreeCount::Exact(a), TreeCount::AtLeast(b) | TreeCount::Exact(b)) => {
                TreeCount::AtLeast(a.max(b))
            }
        };
    }
    Ok(worst)
}

pub fn audit(cfg: &Config, input: &Path, kind: AuditKind, box_bound: u64) -> CmdResult {
    let obj = load(input)?;
    cfg.header();
    let budget = cfg.budget();
    match (kind, &obj) {
        (AuditKind::Index, Object::Etol(_) | Object::Matrix(_)) => {
            let a = match &obj {
                Object::Etol(g) => g.index_audit(cfg.audit_len(), &budget),
                _ => matrix_of(&obj)?.index_audit(cfg.audit_len(), &budget),
            };
            let region = if a.complete { "complete" } else { "truncated by the budget" };
            println!(
                "max index {} over words ≤ {} (exploration {region}){}",
                a.max_index,
                a.max_len,
                a.witness.map(|w| format!("; witness {w}")).unwrap_or_default()
            );
            let ok = a.max_index <= cfg.k;
            println!("index ≤ k = {} over explored region: {ok}", cfg.k);
            Ok(verdict(ok))
        }
        (AuditKind::Ambiguity, Object::Etol(_) | Object::Matrix(_)) => {
            let worst = ambiguity(&obj.language()?, cfg)?;
            println!("max derivation count over words ≤ {}: {worst}", cfg.audit_len());
            Ok(verdict(worst == TreeCount::Exact(1) || worst == TreeCount::Exact(0)))
        }
        (AuditKind::NormalForm, Object::Matrix(_)) => match matrix_of(&obj)?.check_normal_form(cfg.k) {
            Ok(cert) => {
                let profiles: Vec<String> = cert.profiles.iter().map(|p| p.to_string()).collect();
                println!("normal form holds; reachable profiles: {}", profiles.join(", "));
                Ok(Verdict::True)
            }
            Err(Error::NormalFormViolation(why)) => {
                println!("violation: {why}");
                Ok(Verdict::False)
            }
            Err(e) => Err(e),
        },
        (AuditKind::SemiSimple, Object::Semilinear(q)) => {
            let r = validate_semi_simple(q, box_bound);
            for (i, ok) in r.independent.iter().enumerate() {
                println!("component {i}: periods {}", if *ok { "independent" } else { "dependent" });
            }
            for (i, j, v) in &r.collisions {
                println!("components {i} and {j} share {v:?}");
            }
            println!("semi-simple up to box {}: {}", r.box_bound, r.validated);
            Ok(verdict(r.validated))
        }
        (kind, other) => Err(Error::Unsupported(format!("{kind:?} audit of a {}", other.kind()))),
    }
}

fn is_edol(g: &EtolSystem) -> bool {
    !g.reduced && g.tables.len() == 1 && g.classify().ed0l
}

pub fn regularize(cfg: &Config, input: &Path, dump: bool, analyze_steps: usize) -> CmdResult {
    let obj = load(input)?;
    cfg.header();
    let budget = cfg.budget();
    let (spec, witness): (LanguageSpec, RegularWitness) = match &obj {
        Object::Matrix(_) => {
            let g = ensure_normal(matrix_of(&obj)?, cfg.k)?;
            let c = check_cor2_conditions(&g);
            println!(
                "long images: {}; distinct letter powers: {}",
                c.long_images, c.distinct_powers
            );
            let f = cor2_codes(&g)?;
            let w = regularize_matrix(&g, cfg.k, &f, cfg.audit_len(), &budget)?;
            (LanguageSpec::Matrix(g), w)
        }
        Object::Etol(g) if is_edol(g) => {
            (LanguageSpec::Etol(g.clone()), edol_regularize(g, cfg.k, analyze_steps, cfg.audit_len(), &budget)?)
        }
        Object::Etol(g) if g.reduced => {
            let codes = auto_etol_codes(g)?;
            (LanguageSpec::Etol(g.clone()), regularize_etol(g, cfg.k, &codes, cfg.audit_len(), &budget)?)
        }
        Object::Etol(_) => {
            return Err(Error::Precondition(
                "regularization needs a reduced system or a single deterministic table".into(),
            ))
        }
        other => return Err(Error::Unsupported(format!("cannot regularize a {}", other.kind()))),
    };
    println!("construction: {}", witness.construction);
    let v = verify_comm_equivalence(&spec, &LanguageSpec::Automaton(witness.nfa.clone()), cfg.max_len, &budget)?;
    match &v.witness {
        None => println!("Parikh multisets agree ≤ {}: PASS", cfg.max_len),
        Some(p) => println!("Parikh multisets agree ≤ {}: FAIL at {p:?}", cfg.max_len),
    }
    if dump {
        print!("{}", witness.nfa.dump());
    }
    cfg.emit(&Object::Automaton(witness.nfa))?;
    Ok(verdict(v.holds))
}
