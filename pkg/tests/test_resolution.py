import json

import numpy as np
import pytest

from cohom32.bar import Cochain, coboundary, cup
from cohom32.catalog import NamedClassCatalog
from cohom32.groups import builtin
from cohom32.resolution import (
    MinClass, MinimalResolution, basis_class, betti_numbers, extend_resolution, product, ring_tables,
    transfer_from_bar, truncate,
)

KNOWN = {
    "C2": [1] * 8,
    "D8": [1, 2, 3, 4, 5, 6, 7, 8],
    "C4xC2": [1, 2, 3, 4, 5, 6, 7, 8],
    "16G2c2": [1, 2, 3, 4, 5, 6, 7, 8],
    "C8xC2": [1, 2, 3, 4, 5, 6, 7, 8],
    "32G3f": [1, 2, 2, 2, 3, 4, 4, 4],
}


@pytest.mark.parametrize("name", KNOWN)
def test_betti_numbers(name):
    assert betti_numbers(builtin(name), 7, cache=False) == KNOWN[name]


@pytest.mark.parametrize("name", ["D8", "32G3f", "Phi4"])
def test_resolution_is_exact_and_minimal(name):
    extend_resolution(builtin(name), 6, cache=False).check()


def test_cache_roundtrip(tmp_path):
    G = builtin("16G2c2")
    R = extend_resolution(G, 5, cache=tmp_path)
    assert list(tmp_path.glob("*.json"))
    R2 = extend_resolution(G, 4, cache=tmp_path)
    assert R2.betti == R.betti[:5]
    for n in range(1, 5):
        assert np.array_equal(R2.boundary[n], R.boundary[n])
    doc = json.loads(json.dumps(R.to_json()))
    R3 = MinimalResolution.from_json(doc, G)
    assert R3.betti == R.betti
    assert truncate(R, 3).betti == R.betti[:4]


@pytest.mark.parametrize("group, pairs", [
    ("D8", [("u", "v"), ("u", "w"), ("v", "w"), ("w", "w")]),
    ("16G2c2", [("u", "x"), ("x", "x"), ("v", "w")]),
    ("32G3f", [("u", "v"), ("v", "W"), ("u", "y"), ("v", "y")]),
])
def test_transfer_is_multiplicative(group, pairs):
    cat = NamedClassCatalog()
    G = builtin(group)
    R = extend_resolution(G, 5, cache=False)
    for a, b in pairs:
        ca, cb = cat(group, a), cat(group, b)
        lhs = transfer_from_bar(R, cup(ca, cb))
        rhs = product(R, transfer_from_bar(R, ca), transfer_from_bar(R, cb))
        assert lhs == rhs, (a, b)


def test_coboundaries_transfer_to_zero():
    G = builtin("D8")
    R = extend_resolution(G, 3, cache=False)
    c = Cochain.random(G, 1, np.random.default_rng(2), normalized=True)
    assert transfer_from_bar(R, coboundary(c)).is_zero()


def test_ring_tables_commutative_with_unit():
    R = extend_resolution(builtin("32G3f"), 6, cache=False)
    T = ring_tables(R, 6)
    assert T.is_commutative()
    one = MinClass.of(0, [1])
    for n in range(1, 4):
        for j in range(R.betti[n]):
            e = basis_class(R, n, j)
            assert T.mul(one, e) == e


def test_32G3f_product_facts():
    cat = NamedClassCatalog()
    R = extend_resolution(builtin("32G3f"), 6, cache=False)
    u, v, W, y = (transfer_from_bar(R, cat("32G3f", s)) for s in ("u", "v", "W", "y"))
    T = ring_tables(R, 6)
    assert T.mul(u, u).is_zero()
    assert T.mul(u, W).is_zero() and T.mul(u, y).is_zero()
    assert T.mul(v, v) == T.mul(u, v)
    y2 = T.mul(y, y)
    assert not y2.is_zero()
    assert y2 == T.mul(T.mul(W, W), W)
