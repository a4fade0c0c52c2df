"""Acceptance gate: one test per criterion, each with its time limit.

Every test prints a line ``ACCEPTANCE <n> PASS|FAIL ...``; the lines are
repeated in the terminal summary. Each asserts both correctness and time.
"""
import time

from conftest import ACCEPTANCE_LINES

from palg.algebra import make_bnalg, powerset_algebra, verify_p_algebra
from palg.checks import (
    GRAPH_BATTERY,
    GRAPH_CHECKS,
    boolean_boundary,
    graph_report,
    isomorphism_classes,
    representation_catalog,
    suite_congruences_n,
    three_element_p_algebras,
)
from palg.congruence import is_subdirectly_irreducible
from palg.duality import duality_roundtrip, join_irreducibles, upset_algebra
from palg.encodings import (
    ONE_EDGE_GRAPH,
    check_n_representation,
    enumerate_boolean_pairs,
    enumerate_graphs,
    graph_encode,
    verify_definability,
)
from palg.logic import Evaluator, parse_formula
from palg.poset import enumerate_posets, poset_isomorphism
from palg.search import is_isomorphic


def gate(number, title, limit, body):
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    line = (f"ACCEPTANCE {number} {'PASS' if passed else 'FAIL'} {title} "
            f"[exact; {elapsed:.2f}s, limit {limit}s]" + (f" {detail}" if detail else ""))
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, detail
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


def test_1_upset_algebras_and_duality_on_88_posets():
    def body():
        posets = [p for n in range(6) for p in enumerate_posets(n)]
        if len(posets) != 88:
            return False, f"{len(posets)} posets"
        for p in posets:
            a = upset_algebra(p)
            rep = verify_p_algebra(a)
            if not rep:
                return False, f"covers {p.covers()}: {rep}"
            if poset_isomorphism(join_irreducibles(a).poset, p) is None:
                return False, f"J(Up(P)) differs for covers {p.covers()}"
        return True, "88 posets"
    gate(1, "Up(P) is a p-algebra and J(Up(P)) = P for all posets on <= 5 elements", 10, body)


def test_2_representation_catalog():
    def body():
        for name, a in representation_catalog():
            h = duality_roundtrip(a)
            if not (h.check() and h.is_injective and h.is_surjective):
                return False, name
        return True, ""
    gate(2, "Up(J(A)) = A on the catalog", 5, body)


def test_3_boolean_pairs():
    def body():
        pairs = [bp for n in (1, 2, 3) for bp in enumerate_boolean_pairs(n)]
        if len(pairs) != 16:
            return False, f"{len(pairs)} pairs"
        for bp in pairs:
            rep = verify_definability(bp)
            if not rep.ok:
                return False, rep.render()
        return True, "16 pairs"
    gate(3, "Boolean pairs over <= 3 indices are definable in their subuniverses", 30, body)


def test_4_algebra_n():
    def body():
        rep = check_n_representation()
        return rep.ok and len(rep.items) == 3, "" if rep.ok else rep.render()
    gate(4, "B1 embeds in N; N is the listed subuniverse of B1^3, generated by two tuples", 1, body)


def test_5_graph_encodings():
    def body():
        enc = graph_encode(ONE_EDGE_GRAPH)
        n_ji = len(join_irreducibles(enc.algebra).elements)
        if (enc.algebra.size, n_ji) != (11, 5):
            return False, f"three-vertex one-edge graph: {enc.algebra.size} elements, {n_ji} join-irreducibles"
        graphs = [g for n in range(1, 6) for g in enumerate_graphs(n)]
        if len(graphs) != 52:
            return False, f"{len(graphs)} graphs"
        for g in graphs:
            for (check_id, ok, detail), expected in zip(graph_report(g, battery=GRAPH_BATTERY), GRAPH_CHECKS):
                assert check_id == expected
                if not ok:
                    return False, f"{g}: {check_id}: {detail}"
        return True, "52 graphs"
    gate(5, "graph encodings: pp-morphism, embedding, recovery, sentence transfer", 60, body)


def test_6_subdirect_irreducibility():
    def body():
        stacked = [make_bnalg(i) for i in range(4)]
        count = 0
        for n in range(5):
            for p in enumerate_posets(n):
                a = upset_algebra(p)
                si = bool(is_subdirectly_irreducible(a))
                is_stacked = any(is_isomorphic(a, b) is not None for b in stacked)
                if si != is_stacked:
                    return False, f"covers {p.covers()}: SI={si}, stacked={is_stacked}"
                count += si
        return True, f"{count} SI among 25 posets"
    gate(6, "Up(P) is SI iff it is a stacked Boolean algebra, |P| <= 4", 30, body)


def test_7_unique_three_element_algebra():
    def body():
        found = three_element_p_algebras()
        classes = isomorphism_classes(found)
        ok = len(classes) == 1 and is_isomorphic(classes[0][0], make_bnalg(1)) is not None
        return ok, f"{len(found)} labeled algebras, {len(classes)} class(es)"
    gate(7, "exactly one three-element p-algebra up to isomorphism, B1", 1, body)


def test_8_congruences_of_n():
    def body():
        rep = suite_congruences_n()
        return rep.ok, "" if rep.ok else rep.render()
    gate(8, "congruences of N", 1, body)


def test_9_boolean_boundary():
    def body():
        phi = parse_formula("A x. x | x* = 1")
        results = boolean_boundary()
        bad = [name for name, ok, _ in results if not ok]
        b1 = make_bnalg(1)
        w = Evaluator(b1).witness(phi)
        ok = not bad and w == {"x": b1.index("e")} and Evaluator(powerset_algebra(4)).holds(phi)
        return ok, f"failing: {bad}" if bad else "witness x=e on B1"
    gate(9, "Boolean law holds on B0 and powersets, fails on B_i (i >= 1) at e", 1, body)
