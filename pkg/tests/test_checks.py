import random

import pytest

from palg.checks import SUITES, random_graph, run_suite, suite_graphs, three_element_p_algebras
from palg.errors import CapExceeded


@pytest.mark.parametrize("name", ["axioms", "duality", "lemma1", "lemma2", "si", "congruences-N"])
def test_fast_suites_pass_and_are_stable(name):
    first = run_suite(name).render()
    assert first == run_suite(name).render()
    assert first.splitlines()[-1].startswith(f"PASS {name}:")


def test_axioms_item_count():
    assert len(run_suite("axioms").items) == 16


def test_three_element_candidates_are_the_six_labeled_chains():
    found = three_element_p_algebras()
    assert len(found) == 6
    assert all(a.star_list[a.zero] == a.one for a in found)


def test_random_graphs_follow_the_seed(monkeypatch):
    a = [random_graph(random.Random(3)) for _ in range(3)]
    b = [random_graph(random.Random(3)) for _ in range(3)]
    assert a == b
    monkeypatch.setenv("PALG_SEED", "11")
    r1 = suite_graphs(max_vertices=3, samples=2).render()
    r2 = suite_graphs(max_vertices=3, samples=2, seed=11).render()
    assert r1 == r2


def test_caps_and_unknown_suite():
    with pytest.raises(CapExceeded):
        run_suite("lemma1", max_index=6)
    with pytest.raises(ValueError):
        run_suite("nope")
    assert "all" not in SUITES
