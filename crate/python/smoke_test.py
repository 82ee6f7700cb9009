"""Smoke test for the `workbench` extension module.

Build and run (from the repository root):

    cargo build -p workbench-py --features extension-module --release
    cp target/release/libworkbench.so python/workbench.so
    python3 python/smoke_test.py

`maturin develop -m crates/py/Cargo.toml --features extension-module` also works.
"""

import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import workbench  # noqa: E402

DATA = HERE.parent / "data"


def load(name):
    return workbench.load((DATA / name).read_text())


def main():
    diag = workbench.SemilinearSet([([0, 0], [[1, 1]])])
    assert diag.member([4, 4]) and not diag.member([4, 5])
    assert workbench.phi(["abb", "bab", "abb"], [1, 2, 3]) == "abbbabbababbabbabb"
    assert workbench.parikh("abbbabbababbabbabb", "ab") == [6, 12]

    spec = workbench.BoundedSpec.ginsburg(["a", "b"], diag)
    assert spec.enumerate(4) == ["", "ab", "aabb"]
    star = workbench.BoundedSpec.ginsburg(["a", "b"], workbench.SemilinearSet([([0, 0], [[1, 0], [0, 1]])]))
    assert workbench.decide(spec, star, "subset") == (True, None)
    holds, witness = workbench.decide(star, spec, "subset")
    assert not holds and witness == "a"

    g = load("xsharpx.json")
    assert g.is_normal(2)
    words = g.language(7)
    assert len(words) == 14 and all(g.count_derivations(w) == 1 for w in words)
    assert g.counting_coefficients(2, 9)[3::2] == [2, 4, 8, 16]
    et = g.to_reduced_etol(2)
    assert et.language(7) == words
    assert et.to_edtol(2).language(7) == words
    assert g.szilard_words(2, 2) == ["m1 m4", "m1 m5"]

    assert load("repeated-nonterminal.json").is_normal(2) is False
    assert load("abn-edol.json").to_reduced().index_audit(8) == (1, "a")

    assert workbench.build_prefix_code(["ab", "ab"]) == ["ab", "ba"]
    assert workbench.is_code(["a", "ab"]) and not workbench.is_code(["a", "ab", "ba"])
    order, coeffs = workbench.fit_recurrence([1, 1, 2, 3, 5, 8, 13, 21, 34], 3)
    assert order == 2 and coeffs == ["1", "1"]
    central = [1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756, 705432, 2704156, 10400600, 40116600,
               155117520, 601080390]
    assert workbench.fit_recurrence(central, 8) is None

    try:
        workbench.load('{"kind": "pda"}')
    except ValueError:
        pass
    else:
        raise AssertionError("unknown kind accepted")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
