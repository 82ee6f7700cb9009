//! Regenerates the canonical description files under `data/`.
//!
//! `cargo run -p workbench-core --example write_fixtures -- data`

use std::path::PathBuf;

use workbench_core::automata::Nfa;
use workbench_core::counter::from_semilinear;
use workbench_core::etol::fixtures as etol;
use workbench_core::format::{print, Object};
use workbench_core::matrix::fixtures as matrix;
use workbench_core::semilinear::{fixtures, BoundedSpec, SemilinearSet};
use workbench_core::{Alphabet, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    let ab = Alphabet::from_chars("ab")?;
    let letters = |s: &str| s.chars().map(|c| Word::parse(&c.to_string())).collect::<Vec<_>>();
    let files: Vec<(&str, Object)> = vec![
        ("diagonal.json", Object::Semilinear(fixtures::diagonal())),
        ("diagonal-positive.json", Object::Semilinear(fixtures::diagonal_positive())),
        ("increasing-triples.json", Object::Semilinear(fixtures::increasing_triples())),
        ("dependent-periods.json", Object::Semilinear(SemilinearSet::linear(vec![0, 0], vec![vec![1, 1], vec![2, 2]])?)),
        ("l3.json", Object::Bounded(fixtures::l3())),
        ("anbn-spec.json", Object::Bounded(BoundedSpec::ginsburg(letters("ab"), fixtures::diagonal())?)),
        ("anbn-positive-spec.json", Object::Bounded(BoundedSpec::ginsburg(letters("ab"), fixtures::diagonal_positive())?)),
        ("shifted-diagonal-spec.json", Object::Bounded(BoundedSpec::ginsburg(letters("ab"), SemilinearSet::linear(vec![1, 0], vec![vec![1, 1]])?)?)),
        ("ab-star-spec.json", Object::Bounded(BoundedSpec::ginsburg(letters("ab"), SemilinearSet::linear(vec![0, 0], vec![vec![1, 0], vec![0, 1]])?)?)),
        ("diagonal-machine.json", Object::Machine(from_semilinear(&fixtures::diagonal(), &ab)?)),
        ("wsharpw.json", Object::Etol(etol::normal_terminals())),
        ("anbn-etol.json", Object::Etol(etol::anbn())),
        ("abn-edol.json", Object::Etol(etol::ab_n())),
        ("powers-of-two.json", Object::Etol(etol::powers_of_two())),
        ("xsharpx.json", Object::matrix(&matrix::xsharpx())),
        ("padded.json", Object::matrix(&matrix::padded())),
        ("repeated-nonterminal.json", Object::matrix(&matrix::repeated_nonterminal())),
        ("lambda.json", Object::matrix(&matrix::lambda())),
        ("a-bc-star.json", Object::Automaton(Nfa::from_regex("a(b|c)*")?)),
        ("finite.json", Object::Finite { words: vec![Word::parse("ab"), Word::parse("ba")] }),
    ];
    for (name, obj) in files {
        std::fs::write(dir.join(name), print(&obj))?;
    }
    Ok(())
}
