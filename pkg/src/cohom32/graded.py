"""Finitely presented commutative graded F_2-algebras.

Everything is done degree by degree: the degree-d part of the quotient is the
span of degree-d monomials modulo the span of all ``m * rel`` of degree d.
Normal forms are remainders against the reduced echelon form of that span.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .f2 import BitMatrix, rref, unpack_rows

MONOMIAL_CAP = 200_000


class PresentationError(ValueError):
    pass


# polynomials are frozensets of exponent tuples (coefficients are 0/1)


def _poly_mul(a: frozenset, b: frozenset) -> frozenset:
    out: set = set()
    for m in a:
        for n in b:
            t = tuple(x + y for x, y in zip(m, n))
            out ^= {t}
    return frozenset(out)


_TERM = re.compile(r"^([A-Za-z_][A-Za-z_0-9']*)(?:\^(\d+))?$")


@dataclass(frozen=True)
class RingPresentation:
    gens: tuple  # ((name, degree), ...)
    relations: tuple  # frozensets of exponent tuples
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = [g for g, _ in self.gens]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        for g, d in self.gens:
            if int(d) < 1:
                raise PresentationError(f"generator {g} must have positive degree")
        for r in self.relations:
            if len({self.monomial_degree(m) for m in r}) > 1:
                raise PresentationError(f"relation {self.format_poly(r)} is not homogeneous")

    # -- text format ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "RingPresentation":
        """Parse ``gens: u:1 v:1 W:2; rels: v^2+u*v, u^2``."""
        parts = {}
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            if ":" not in chunk:
                raise PresentationError(f"expected 'gens:' or 'rels:' in {chunk.strip()!r}")
            key, _, body = chunk.partition(":")
            parts[key.strip().lower()] = body
        if "gens" not in parts:
            raise PresentationError("missing 'gens:' section")
        gens = []
        for tok in parts["gens"].split():
            name, _, deg = tok.partition(":")
            if not deg.isdigit():
                raise PresentationError(f"bad generator token {tok!r}")
            gens.append((name, int(deg)))
        P = cls(tuple(gens), ())
        rels = []
        body = parts.get("rels", "")
        for r in body.split(","):
            if r.strip():
                poly = P.parse_poly(r)
                if poly:
                    rels.append(poly)
        return cls(tuple(gens), tuple(rels))

    def parse_poly(self, text: str) -> frozenset:
        names = [g for g, _ in self.gens]
        out: set = set()
        for term in re.sub(r"\s+", "", text).split("+"):
            if not term:
                raise PresentationError(f"empty term in {text!r}")
            exps = [0] * len(names)
            if term != "1":
                for factor in term.split("*"):
                    m = _TERM.match(factor)
                    if not m or m.group(1) not in names:
                        raise PresentationError(f"unknown factor {factor!r} in {text!r}")
                    exps[names.index(m.group(1))] += int(m.group(2) or 1)
            out ^= {tuple(exps)}
        return frozenset(out)

    def format_poly(self, poly) -> str:
        if not poly:
            return "0"
        terms = []
        for m in sorted(poly, reverse=True):
            fs = [g if e == 1 else f"{g}^{e}" for (g, _), e in zip(self.gens, m) if e]
            terms.append("*".join(fs) or "1")
        return " + ".join(terms)

    def to_text(self) -> str:
        gens = " ".join(f"{g}:{d}" for g, d in self.gens)
        rels = ", ".join(self.format_poly(r).replace(" ", "") for r in self.relations)
        return f"gens: {gens}; rels: {rels}"

    def with_relations(self, relations) -> "RingPresentation":
        rels = tuple(self.parse_poly(r) if isinstance(r, str) else r for r in relations)
        return RingPresentation(self.gens, rels)

    # -- degreewise structure ------------------------------------------------

    @property
    def names(self) -> list:
        return [g for g, _ in self.gens]

    def monomial_degree(self, m) -> int:
        return sum(e * d for e, (_, d) in zip(m, self.gens))

    def relation_degree(self, r) -> int:
        return self.monomial_degree(next(iter(r)))

    def monomials(self, d: int) -> list:
        key = ("mono", d)
        if key not in self._cache:
            self._cache[key] = _monomials(tuple(g for _, g in self.gens), d)
        return self._cache[key]

    def _degree(self, d: int):
        """(monomials, index, reduced relation rows, pivots, standard monomials)."""
        key = ("deg", d)
        if key in self._cache:
            return self._cache[key]
        monos = self.monomials(d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for r in self.relations:
            rd = self.relation_degree(r)
            if rd > d:
                continue
            for m in self.monomials(d - rd):
                v = np.zeros(len(monos), dtype=np.uint8)
                for t in _poly_mul(frozenset([m]), r):
                    v[index[t]] ^= 1
                rows.append(v)
        if rows and monos:
            red = rref(BitMatrix.from_dense(np.array(rows)))
            R = unpack_rows(red.reduced[: red.rank], len(monos))
            piv = list(red.pivots)
        else:
            R = np.zeros((0, len(monos)), dtype=np.uint8)
            piv = []
        pset = set(piv)
        standard = [i for i in range(len(monos)) if i not in pset]
        data = (monos, index, R, piv, standard)
        self._cache[key] = data
        return data

    def hilbert(self, N: int) -> list:
        return hilbert(self, N)

    # -- elements ------------------------------------------------------------

    def gen(self, name: str) -> "RingElement":
        i = self.names.index(name)
        m = tuple(int(j == i) for j in range(len(self.gens)))
        return self.element_of(frozenset([m]))

    def one(self) -> "RingElement":
        return self.element_of(frozenset([(0,) * len(self.gens)]))

    def zero(self, d: int) -> "RingElement":
        monos = self.monomials(d)
        return RingElement(self, d, np.zeros(len(monos), dtype=np.uint8))

    def element(self, text: str) -> "RingElement":
        return self.element_of(self.parse_poly(text))

    def element_of(self, poly) -> "RingElement":
        if not poly:
            raise PresentationError("use zero(d) for the zero element")
        degs = {self.monomial_degree(m) for m in poly}
        if len(degs) != 1:
            raise PresentationError("element is not homogeneous")
        d = degs.pop()
        monos, index, *_ = self._degree(d)
        v = np.zeros(len(monos), dtype=np.uint8)
        for m in poly:
            v[index[m]] ^= 1
        return RingElement(self, d, v).normal_form()


@lru_cache(maxsize=None)
def _monomials(degs: tuple, d: int) -> list:
    out = []

    def rec(i, left, acc):
        if i == len(degs):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degs[i], -1, -1):
            acc.append(e)
            rec(i + 1, left - e * degs[i], acc)
            acc.pop()
            if len(out) > MONOMIAL_CAP:
                raise PresentationError(f"more than {MONOMIAL_CAP} monomials in degree {d}")

    rec(0, d, [])
    return out


def hilbert(P: RingPresentation, N: int) -> list:
    """Dimensions of the degree 0..N parts."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return [len(P._degree(d)[4]) for d in range(N + 1)]


class RingElement:
    __slots__ = ("ring", "degree", "vec")

    def __init__(self, ring: RingPresentation, degree: int, vec):
        self.ring = ring
        self.degree = degree
        self.vec = np.asarray(vec, dtype=np.uint8)

    def normal_form(self) -> "RingElement":
        _, _, R, piv, _ = self.ring._degree(self.degree)
        v = self.vec.copy()
        if piv:
            hit = v[piv].astype(bool)
            if hit.any():
                v ^= (R[hit].sum(axis=0) & 1).astype(np.uint8)
        return RingElement(self.ring, self.degree, v)

    def _check(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise PresentationError("elements of different rings")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        if other.degree != self.degree:
            raise PresentationError("sum of elements of different degree")
        return RingElement(self.ring, self.degree, self.vec ^ other.vec)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        d = self.degree + other.degree
        monos_a = self.ring.monomials(self.degree)
        monos_b = self.ring.monomials(other.degree)
        _, index, *_ = self.ring._degree(d)
        v = np.zeros(len(self.ring.monomials(d)), dtype=np.uint8)
        for i in np.flatnonzero(self.vec):
            for j in np.flatnonzero(other.vec):
                m = tuple(x + y for x, y in zip(monos_a[i], monos_b[j]))
                v[index[m]] ^= 1
        return RingElement(self.ring, d, v).normal_form()

    def __pow__(self, k: int) -> "RingElement":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.vec, other.vec)

    def is_zero(self) -> bool:
        return not self.vec.any()

    def __repr__(self):
        monos = self.ring.monomials(self.degree)
        poly = frozenset(monos[i] for i in np.flatnonzero(self.vec))
        return f"<{self.ring.format_poly(poly)} in degree {self.degree}>"


def is_nilpotent_up_to(e: RingElement, N: int) -> bool:
    """True iff e^k = 0 for some k with k * deg(e) <= N."""
    if e.is_zero():
        return True
    if e.degree == 0:
        return False
    p = e
    k = 1
    while (k + 1) * e.degree <= N:
        p = p * e
        k += 1
        if p.is_zero():
            return True
    return False


# -- comparison with a computed ring ----------------------------------------------


@dataclass
class MatchReport:
    isomorphic: bool
    degree: int
    stage: str  # "ok", "relation", "span", "hilbert"
    witness: dict

    @property
    def verdict(self) -> str:
        if self.isomorphic:
            return f"isomorphic through degree {self.degree}"
        return f"not isomorphic: {self.stage} check fails ({self.witness})"


def evaluate_monomials(tables, P: RingPresentation, assignment: dict, N: int) -> dict:
    """Map exponent tuple -> computed class for every monomial of degree <= N."""
    from .resolution import MinClass

    names = P.names
    values = {(0,) * len(names): MinClass.of(0, [1])}
    for d in range(1, N + 1):
        for m in P.monomials(d):
            i = next(j for j, e in enumerate(m) if e)
            rest = tuple(e - (j == i) for j, e in enumerate(m))
            values[m] = tables.mul(values[rest], assignment[names[i]])
    return values


def evaluate(values: dict, P: RingPresentation, poly, betti) -> np.ndarray:
    d = P.relation_degree(poly)
    out = np.zeros(betti[d], dtype=np.uint8)
    for m in poly:
        out ^= values[m].vector
    return out


def match_presentation(tables, P: RingPresentation, assignment: dict, N: int) -> MatchReport:
    """Decide whether the computed ring agrees with ``P`` through degree N.

    (a) every relation of degree <= N maps to zero, (b) monomials in the
    assigned classes span every H^d, (c) hilbert(P) equals the Betti numbers.
    """
    if N > tables.maxdeg:
        raise ValueError(f"tables only reach degree {tables.maxdeg}")
    for g, d in P.gens:
        if g not in assignment:
            raise PresentationError(f"no class assigned to {g}")
        if assignment[g].degree != d:
            raise PresentationError(f"{g} has degree {d} but its class has degree {assignment[g].degree}")
    betti = tables.betti
    values = evaluate_monomials(tables, P, assignment, N)
    failed = []
    for r in P.relations:
        d = P.relation_degree(r)
        if d <= N and evaluate(values, P, r, betti).any():
            failed.append(P.format_poly(r))
    if failed:
        return MatchReport(False, N, "relation", {"relation": failed[0], "failed_relations": failed})
    for d in range(N + 1):
        vecs = [values[m].vector for m in P.monomials(d)]
        rank = rref(BitMatrix.from_dense(np.array(vecs))).rank if vecs and betti[d] else 0
        if rank != betti[d]:
            return MatchReport(False, N, "span", {"degree": d, "rank": rank, "betti": betti[d]})
    h = hilbert(P, N)
    for d in range(N + 1):
        if h[d] != betti[d]:
            return MatchReport(False, N, "hilbert", {"degree": d, "hilbert": h[d], "betti": betti[d]})
    return MatchReport(True, N, "ok", {"hilbert": h, "betti": list(betti[: N + 1])})


def _candidates(dim: int, avoid: list) -> list:
    """Nonzero vectors of F_2^dim outside span(avoid), in a fixed order."""
    span = {0}
    for v in avoid:
        x = int("".join(map(str, v)), 2) if dim else 0
        span |= {s ^ x for s in span}
    out = []
    for x in range(1, 1 << dim):
        if x not in span:
            out.append(np.array([(x >> (dim - 1 - i)) & 1 for i in range(dim)], dtype=np.uint8))
    # echelon completions (unit vectors) first
    out.sort(key=lambda v: (int(v.sum()) != 1, -int("".join(map(str, v)), 2)))
    return out


def find_assignment(tables, P: RingPresentation, N: int, fixed: dict | None = None,
                    avoid: dict | None = None):
    """Search for classes of the free generators of ``P`` making it match.

    ``fixed`` pins some generators; ``avoid[name]`` lists classes whose span the
    candidate for ``name`` must leave.  Relations are checked as soon as all
    their generators are assigned.  Returns ``(assignment, report)`` with the
    first matching assignment, or ``(None, last_report)``.
    """
    from .resolution import MinClass

    fixed = dict(fixed or {})
    avoid = avoid or {}
    names = P.names
    free = [g for g, _ in sorted(P.gens, key=lambda t: t[1]) if g not in fixed]
    last = [None]

    def rel_ok(assign):
        sub_names = set(assign)
        for r in P.relations:
            d = P.relation_degree(r)
            if d > N:
                continue
            used = {names[i] for m in r for i, e in enumerate(m) if e}
            if not used <= sub_names:
                continue
            out = np.zeros(tables.betti[d], dtype=np.uint8)
            for m in r:
                val = MinClass.of(0, [1])
                for i, e in enumerate(m):
                    for _ in range(e):
                        val = tables.mul(val, assign[names[i]])
                out ^= val.vector
            if out.any():
                return False
        return True

    degree = dict(P.gens)

    def rec(i, assign):
        if i == len(free):
            rep = match_presentation(tables, P, assign, N)
            last[0] = rep
            return dict(assign) if rep.isomorphic else None
        g = free[i]
        for v in _candidates(tables.betti[degree[g]], [c.vector for c in avoid.get(g, [])]):
            assign[g] = MinClass.of(degree[g], v)
            if rel_ok(assign):
                res = rec(i + 1, assign)
                if res is not None:
                    return res
            del assign[g]
        return None

    if any(degree[g] > tables.maxdeg for g in names):
        raise ValueError("tables do not reach the degree of every generator")
    if not rel_ok(fixed):
        zeros = {g: MinClass.of(degree[g], np.zeros(tables.betti[degree[g]], np.uint8)) for g in free}
        return None, match_presentation(tables, P, {**fixed, **zeros}, N)
    return rec(0, dict(fixed)), last[0]


RESULT_TEXT = "gens: u:1 v:1 W:2 y:3 z:4; rels: v^2+u*v, u^2, u*W, y^2+W^3, u*y"
D8_TEXT = "gens: u:1 v:1 w:2; rels: v^2+u*v"
K_TEXT = "gens: xi:1 phi:1 chi:2; rels: phi^2"
C4XC2_TEXT = "gens: p:1 q:1 r:2; rels: q^2"
C2_TEXT = "gens: t:1; rels:"
