"""Verification suites run by ``palg check``.

Each suite returns a CheckReport whose items are fixed in number and order,
so reports are byte-for-byte reproducible.
"""
from __future__ import annotations

import os
import random
from itertools import product as iproduct

import numpy as np

from .algebra import (
    MAX_SIZE,
    FinitePAlgebra,
    heyting_implication,
    make_bnalg,
    powerset_algebra,
    product,
    verify_p_algebra,
)
from .congruence import (
    MAX_CONGRUENCE_SIZE,
    all_congruences,
    is_subdirectly_irreducible,
    principal_congruence,
)
from .duality import (
    check_pp_morphism,
    duality_roundtrip,
    join_irreducibles,
    upset_algebra,
)
from .encodings import (
    ONE_EDGE_GRAPH,
    MAX_INDEX,
    Graph,
    enumerate_boolean_pairs,
    enumerate_graphs,
    graph_encode,
    graph_isomorphism,
    make_N,
    check_n_representation,
    recover_graph,
    verify_definability,
)
from .errors import CapExceeded
from .logic import (
    GRAPH_SENTENCES,
    Evaluator,
    fo_recover_graph,
    holds_in_graph,
    parse_formula,
    translate_graph_sentence,
)
from .poset import MAX_ENUM_POSET, POSET_COUNTS, check_partial_order, enumerate_posets, poset_isomorphism
from .report import CheckReport
from .search import is_isomorphic

SUITES = ("axioms", "duality", "lemma1", "lemma2", "lemma3", "si", "congruences-N")

BOOLEAN_LAW = "A x. x | x* = 1"
# the sentences compared between each graph and its encoding
GRAPH_BATTERY = ("edge exists", "edges are symmetric", "isolated vertex")
MAX_GRAPH_VERTICES = 5
GRAPH_CHECKS = (
    "f is a surjective pp-morphism",
    "embedding into the power of B1 is injective",
    "both recoveries agree",
    "recovered graph is isomorphic to the input",
    "sentences transfer",
)


def _check_cap(name, value, cap):
    if value > cap:
        raise CapExceeded(f"{name} {value} exceeds the supported maximum {cap}")


# -- axioms ------------------------------------------------------------------------

def three_element_p_algebras() -> list[FinitePAlgebra]:
    """Every p-algebra on {0, 1, 2}: all orders, then all star tables."""
    found = []
    off_diag = [(i, j) for i in range(3) for j in range(3) if i != j]
    for bits in iproduct((False, True), repeat=len(off_diag)):
        leq = np.eye(3, dtype=bool)
        for (i, j), b in zip(off_diag, bits):
            leq[i, j] = b
        if check_partial_order(leq) is not None:
            continue
        least = [x for x in range(3) if leq[x].all()]
        greatest = [x for x in range(3) if leq[:, x].all()]
        if not least or not greatest:
            continue
        for star in iproduct(range(3), repeat=3):
            a = FinitePAlgebra(leq, star, least[0], greatest[0])
            if verify_p_algebra(a):
                found.append(a)
    return found


def isomorphism_classes(algebras) -> list[list[FinitePAlgebra]]:
    classes: list[list[FinitePAlgebra]] = []
    for a in algebras:
        for cls in classes:
            if is_isomorphic(cls[0], a) is not None:
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def boolean_boundary(max_atoms: int = 4) -> list[tuple[str, bool, str]]:
    """(algebra name, ok, detail) for the Boolean law on B0, powersets and B_i."""
    phi = parse_formula(BOOLEAN_LAW)
    out = []
    for n in range(max_atoms + 1):
        a = powerset_algebra(n)
        value = Evaluator(a).holds(phi)
        out.append((f"P({n})", value, "" if value else "law fails"))
    out.append(("B0", Evaluator(make_bnalg(0)).holds(phi), "law fails"))
    for i in range(1, max_atoms):
        a = make_bnalg(i)
        ev = Evaluator(a)
        value = ev.holds(phi)
        w = ev.witness(phi)
        e = a.index("e")
        e_fails = not ev.holds(phi.body, {"x": e})
        ok = not value and w is not None and not ev.holds(phi.body, w) and e_fails
        if i == 1:
            ok = ok and w == {"x": e}
        detail = "" if ok else f"value={value} witness={w}"
        out.append((f"B{i}", ok, detail))
    return out


def suite_axioms(max_poset: int = 5, max_size: int = MAX_SIZE) -> CheckReport:
    _check_cap("max-poset", max_poset, MAX_ENUM_POSET)
    rep = CheckReport("axioms")
    for n in range(max_poset + 1):
        posets = enumerate_posets(n)
        bad = ""
        for p in posets:
            r = verify_p_algebra(upset_algebra(p, max_size))
            if not r:
                bad = f"Up of poset with covers {p.covers()}: {r}"
                break
        rep.add(f"up-sets of {len(posets)} posets on {n} elements are p-algebras", not bad, bad)
    classes = isomorphism_classes(three_element_p_algebras())
    ok = len(classes) == 1 and is_isomorphic(classes[0][0], make_bnalg(1)) is not None
    rep.add("three-element p-algebras form one class, that of B1", ok, f"{len(classes)} classes")
    for name, ok, detail in boolean_boundary():
        rep.add(f"boolean law on {name}", ok, detail)
    return rep


# -- duality -----------------------------------------------------------------------

def representation_catalog() -> list[tuple[str, FinitePAlgebra]]:
    b1 = make_bnalg(1)
    return [
        ("B0", make_bnalg(0)),
        ("B1", b1),
        ("B2", make_bnalg(2)),
        ("B3", make_bnalg(3)),
        ("N", make_N()),
        ("B1xB1", product([b1, b1])),
        ("Up(P_G) of the three-vertex one-edge graph", graph_encode(ONE_EDGE_GRAPH).algebra),
    ]


def suite_duality(max_poset: int = 5, max_size: int = MAX_SIZE) -> CheckReport:
    _check_cap("max-poset", max_poset, MAX_ENUM_POSET)
    rep = CheckReport("duality")
    for n in range(max_poset + 1):
        posets = enumerate_posets(n)
        counted = len(posets) == POSET_COUNTS[n]
        bad = "" if counted else f"found {len(posets)} posets, expected {POSET_COUNTS[n]}"
        for p in posets if counted else ():
            if poset_isomorphism(join_irreducibles(upset_algebra(p, max_size)).poset, p) is None:
                bad = f"J(Up(P)) differs from P with covers {p.covers()}"
                break
        rep.add(f"J(Up(P)) = P for all {POSET_COUNTS[n]} posets on {n} elements", not bad, bad)
    for name, a in representation_catalog():
        try:
            h = duality_roundtrip(a, max_size)
            ok, detail = h.check().ok and h.is_injective and h.is_surjective, ""
        except Exception as exc:  # noqa: BLE001 - reported as a failure
            ok, detail = False, str(exc)
        rep.add(f"Up(J(A)) = A for A = {name}", ok, detail)
    return rep


# -- Boolean pairs -----------------------------------------------------------------

def suite_boolean_pairs(max_index: int = 3) -> CheckReport:
    _check_cap("max-index", max_index, MAX_INDEX)
    rep = CheckReport("lemma1")
    for n in range(1, max_index + 1):
        pairs = enumerate_boolean_pairs(n)
        failures = []
        for bp in pairs:
            sub = verify_definability(bp)
            failures += [f"{sorted(map(sorted, bp.big))}/{sorted(map(sorted, bp.small))}: {i.check_id}"
                         for i in sub.failures()]
        rep.add(f"all {len(pairs)} Boolean pairs over {n} indices", not failures,
                failures[0] if failures else "")
    return rep


def suite_algebra_n() -> CheckReport:
    return check_n_representation()


# -- graphs -------------------------------------------------------------------------

def graph_report(g: Graph, max_size: int = MAX_SIZE, battery=GRAPH_BATTERY) -> list[tuple[str, bool, str]]:
    """Per-graph checks: the pp-morphism, the embedding, recovery, and the
    sentence battery."""
    enc = graph_encode(g, max_size)
    out = []
    rep = check_pp_morphism(enc.f)
    out.append(("f is a surjective pp-morphism", bool(rep) and enc.f.is_surjective, str(rep)))
    if enc.homomorphism is not None:
        hrep = enc.homomorphism.check()
        ok = bool(hrep) and enc.homomorphism.is_injective
        detail = str(hrep)
    else:
        hrep = enc.embedding_check()
        ok, detail = bool(hrep), str(hrep)
    out.append(("embedding into the power of B1 is injective", ok, detail))
    plain = recover_graph(enc.algebra)
    fo = fo_recover_graph(enc.algebra)
    out.append(("both recoveries agree", plain == fo, f"{plain} vs {fo}"))
    out.append(("recovered graph is isomorphic to the input", graph_isomorphism(plain, g) is not None,
                str(plain)))
    ev = Evaluator(enc.algebra)
    wrong = []
    for name in battery:
        phi = parse_formula(GRAPH_SENTENCES[name])
        if holds_in_graph(g, phi) != ev.holds(translate_graph_sentence(phi)):
            wrong.append(name)
    out.append(("sentences transfer", not wrong, ", ".join(wrong)))
    return out


def random_graph(rng: random.Random, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    n = rng.randint(1, max_vertices)
    names = rng.sample([f"n{k}" for k in range(100)], n)
    edges = [(u, v) for i, u in enumerate(names) for v in names[i + 1:] if rng.random() < 0.5]
    return Graph.make(names, edges)


def default_seed() -> int:
    return int(os.environ.get("PALG_SEED", "0"))


def suite_graphs(max_vertices: int = MAX_GRAPH_VERTICES, samples: int = 5, seed: int | None = None,
                 max_size: int = MAX_SIZE) -> CheckReport:
    _check_cap("graph size", max_vertices, MAX_GRAPH_VERTICES)
    rep = CheckReport("lemma3")
    enc = graph_encode(ONE_EDGE_GRAPH, max_size)
    n_ji = len(join_irreducibles(enc.algebra).elements)
    rep.add("three-vertex one-edge graph: 11 elements, 5 join-irreducibles",
            enc.algebra.size == 11 and n_ji == 5, f"{enc.algebra.size} elements, {n_ji} join-irreducibles")
    for n in range(1, max_vertices + 1):
        graphs = enumerate_graphs(n)
        failures: dict[str, str] = {}
        for g in graphs:
            for check_id, ok, detail in graph_report(g, max_size):
                if not ok:
                    failures.setdefault(check_id, f"{g}: {detail}")
        for check_id in GRAPH_CHECKS:
            rep.add(f"{len(graphs)} graphs on {n} vertices: {check_id}", check_id not in failures,
                    failures.get(check_id, ""))
    rng = random.Random(default_seed() if seed is None else seed)
    for k in range(samples):
        g = random_graph(rng, max_vertices)
        bad = [f"{cid}: {detail}" for cid, ok, detail in graph_report(g, max_size) if not ok]
        rep.add(f"random sample {k} ({len(g.vertices)} vertices, {len(g.edges)} edges)", not bad,
                f"{g}: {bad[0]}" if bad else "")
    return rep


# -- congruences -----------------------------------------------------------------

def suite_si(max_poset: int = 4, max_atoms: int = 3) -> CheckReport:
    _check_cap("max-poset", max_poset, 4)
    rep = CheckReport("si")
    stacked = [make_bnalg(i) for i in range(max_atoms + 1)]
    for n in range(max_poset + 1):
        bad = ""
        count = 0
        for p in enumerate_posets(n):
            a = upset_algebra(p)
            si = bool(is_subdirectly_irreducible(a, MAX_CONGRUENCE_SIZE))
            is_stacked = any(b.size == a.size and is_isomorphic(a, b) is not None for b in stacked)
            count += si
            if si != is_stacked:
                bad = f"poset with covers {p.covers()}: SI={si}, stacked Boolean={is_stacked}"
                break
        rep.add(f"posets on {n} elements: SI iff stacked Boolean ({count} SI)", not bad, bad)
    return rep


def suite_congruences_n() -> CheckReport:
    rep = CheckReport("congruences-N")
    n_alg = make_N()
    ix = n_alg.index
    theta_b1 = principal_congruence(n_alg, ix("b"), ix("1"))
    theta_c1 = principal_congruence(n_alg, ix("c"), ix("1"))
    theta_ae = principal_congruence(n_alg, ix("a"), ix("e"))
    lattice = all_congruences(n_alg)
    mmi = lattice.minimal_meet_irreducible()
    expected = {theta_b1, theta_c1, theta_ae}
    rep.add("minimal meet-irreducible congruences are theta(b,1), theta(c,1), theta(a,e)",
            len(mmi) == 3 and set(mmi) == expected, "; ".join(c.label() for c in mmi))
    si = is_subdirectly_irreducible(n_alg)
    rep.add("N is not subdirectly irreducible", not si,
            "monolith " + si.witness[0].label() if si else "")
    imp = heyting_implication(n_alg)
    ok_ae, w_ae = theta_ae.is_compatible(imp)
    rep.add("theta(a,e) is not compatible with implication", not ok_ae, "compatible")
    ok_b, w_b = theta_b1.is_compatible(imp)
    ok_c, w_c = theta_c1.is_compatible(imp)
    rep.add("theta(b,1) and theta(c,1) are compatible with implication", ok_b and ok_c,
            f"theta(b,1): {w_b} theta(c,1): {w_c}")
    return rep


def run_suite(name: str, max_size: int = MAX_SIZE, max_index: int = 3, max_poset: int | None = None,
              samples: int = 5, seed: int | None = None) -> CheckReport:
    if name == "axioms":
        return suite_axioms(5 if max_poset is None else max_poset, max_size)
    if name == "duality":
        return suite_duality(5 if max_poset is None else max_poset, max_size)
    if name == "lemma1":
        return suite_boolean_pairs(max_index)
    if name == "lemma2":
        return suite_algebra_n()
    if name == "lemma3":
        return suite_graphs(samples=samples, seed=seed, max_size=max_size)
    if name == "si":
        return suite_si(4 if max_poset is None else max_poset)
    if name == "congruences-N":
        return suite_congruences_n()
    if name == "all":
        rep = CheckReport("all")
        for sub in SUITES:
            rep.extend(run_suite(sub, max_size, max_index, max_poset if sub != "si" else None,
                                 samples, seed), prefix=sub)
        return rep
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
