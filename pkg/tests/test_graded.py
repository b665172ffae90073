from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohom32.graded import (
    D8_TEXT, K_TEXT, RESULT_TEXT, PresentationError, RingPresentation, find_assignment, hilbert,
    is_nilpotent_up_to, match_presentation,
)
from cohom32.catalog import NamedClassCatalog
from cohom32.groups import builtin
from cohom32.resolution import extend_resolution, ring_tables, transfer_from_bar


def test_polynomial_ring_hilbert():
    P = RingPresentation.parse("gens: a:1 b:1 c:1; rels:")
    assert hilbert(P, 6) == [comb(d + 2, 2) for d in range(7)]


def test_known_hilbert_functions():
    assert hilbert(RingPresentation.parse(D8_TEXT), 10) == [d + 1 for d in range(11)]
    assert hilbert(RingPresentation.parse(K_TEXT), 10) == [d + 1 for d in range(11)]
    assert hilbert(RingPresentation.parse(RESULT_TEXT), 12) == [1, 2, 2, 2, 3, 4, 4, 4, 5, 6, 6, 6, 7]


def _standard_monomials(degs, rels, d):
    def divides(m, n):
        return all(a <= b for a, b in zip(m, n))

    P = RingPresentation(tuple((f"g{i}", e) for i, e in enumerate(degs)), ())
    return sum(1 for m in P.monomials(d) if not any(divides(r, m) for r in rels))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).flatmap(
    lambda degs: st.tuples(st.just(degs), st.lists(st.tuples(*[st.integers(0, 2)] * len(degs)), max_size=3))))
def test_monomial_ideal_hilbert_oracle(data):
    degs, rels = data
    rels = [r for r in rels if any(r)]
    names = [f"g{i}" for i in range(len(degs))]
    rel_text = ", ".join("*".join(f"{n}^{e}" for n, e in zip(names, r) if e) for r in rels)
    P = RingPresentation.parse(f"gens: {' '.join(f'{n}:{d}' for n, d in zip(names, degs))}; rels: {rel_text}")
    for d in range(7):
        assert hilbert(P, d)[d] == _standard_monomials(degs, rels, d)


def test_normal_forms_and_nilpotence():
    P = RingPresentation.parse(RESULT_TEXT)
    y, W, u, v = P.gen("y"), P.gen("W"), P.gen("u"), P.gen("v")
    assert (y * y + W ** 3).is_zero()
    assert (v * v) == (u * v)
    assert is_nilpotent_up_to(u, 24)
    assert not is_nilpotent_up_to(y, 24)
    K = RingPresentation.parse(K_TEXT)
    assert not is_nilpotent_up_to(K.gen("xi"), 24)
    assert (K.gen("phi") ** 2).is_zero()


def test_parse_errors():
    with pytest.raises(PresentationError):
        RingPresentation.parse("gens: a:1; rels: a^2 + b")
    with pytest.raises(PresentationError):
        RingPresentation.parse("gens: a:1 b:2; rels: a + b")


def test_text_roundtrip():
    P = RingPresentation.parse(RESULT_TEXT)
    assert RingPresentation.parse(P.to_text()).hilbert(10) == P.hilbert(10)


@pytest.fixture(scope="module")
def g32_tables():
    G = builtin("32G3f")
    R = extend_resolution(G, 8, cache=False)
    return R, ring_tables(R, 8)


def test_swapped_generators_report_failing_relations(g32_tables):
    R, T = g32_tables
    cat = NamedClassCatalog()
    a = {s: transfer_from_bar(R, cat("32G3f", s)) for s in ("u", "v", "W", "y")}
    P = RingPresentation.parse(RESULT_TEXT)
    swapped = {**a, "u": a["v"], "v": a["u"], "z": T.mul(a["W"], a["W"])}
    rep = match_presentation(T, P, swapped, 8)
    assert not rep.isomorphic and rep.stage == "relation"
    assert "u^2" in rep.witness["failed_relations"]


def test_find_assignment_completes_result(g32_tables):
    R, T = g32_tables
    cat = NamedClassCatalog()
    fixed = {s: transfer_from_bar(R, cat("32G3f", s)) for s in ("u", "v", "W", "y")}
    assign, rep = find_assignment(T, RingPresentation.parse(RESULT_TEXT), 8, fixed=fixed)
    assert assign is not None and rep.isomorphic
    assert rep.witness["hilbert"] == rep.witness["betti"]
