"""Normalized bar cochains with F_2 coefficients.

A degree-n cochain over G is stored as a 0/1 array of shape ``(|G|,)*n``
indexed by element indices.  The coboundary is the inhomogeneous bar
differential

    (dc)(g1..g_{n+1}) = c(g2..) + sum_i c(..g_i g_{i+1}..) + c(g1..g_n).

Cup-i products use Steenrod's interval formula on the simplex with vertices
1, g1, g1g2, ..., g1...gn.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

import numpy as np

from .config import check_size
from .f2 import BitMatrix, WORD, pack_rows, rref
from .pcgroups import (
    EMBEDDING,
    QUOTIENT,
    Element,
    GroupMap,
    PcGroup,
    canonical_section,
    generating_set,
    quotient_by_central,
)


class CochainError(ValueError):
    pass


class NotACocycle(CochainError):
    pass


# -- coordinate expressions ------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z])(\d+)")


@dataclass(frozen=True)
class CoordExpr:
    """F_2 polynomial in coordinate bits ``<symbol><slot>``.

    Each monomial is a frozenset of ``(symbol, slot)`` pairs; since the
    variables are bits, ``x*x == x``.  The empty monomial is the constant 1.
    """

    monomials: frozenset = frozenset()

    @classmethod
    def var(cls, symbol: str, slot: int) -> "CoordExpr":
        return cls(frozenset([frozenset([(symbol, slot)])]))

    @classmethod
    def one(cls) -> "CoordExpr":
        return cls(frozenset([frozenset()]))

    @classmethod
    def parse(cls, text: str) -> "CoordExpr":
        """Parse ``b1*a2*c2 + c1*a2``; ``*`` and whitespace between factors are optional."""
        out = cls()
        text = text.strip()
        if not text or text == "0":
            return out
        for term in text.split("+"):
            term = term.replace("*", " ").strip()
            if not term:
                raise CochainError(f"empty monomial in {text!r}")
            if term == "1":
                out = out + cls.one()
                continue
            squashed = term.replace(" ", "")
            pos, factors = 0, []
            for m in _TOKEN.finditer(squashed):
                if m.start() != pos:
                    raise CochainError(f"cannot parse {term!r}")
                factors.append((m.group(1), int(m.group(2))))
                pos = m.end()
            if pos != len(squashed) or not factors:
                raise CochainError(f"cannot parse {term!r}")
            out = out + cls(frozenset([frozenset(factors)]))
        return out

    def __add__(self, other: "CoordExpr") -> "CoordExpr":
        return CoordExpr(self.monomials ^ other.monomials)

    def __mul__(self, other: "CoordExpr") -> "CoordExpr":
        acc: set = set()
        for m in self.monomials:
            for n in other.monomials:
                acc ^= {m | n}
        return CoordExpr(frozenset(acc))

    def max_slot(self) -> int:
        return max((s for m in self.monomials for _, s in m), default=0)

    def symbols(self) -> set:
        return {sym for m in self.monomials for sym, _ in m}

    def __str__(self):
        if not self.monomials:
            return "0"
        terms = []
        for m in sorted(self.monomials, key=lambda m: (len(m), sorted(m, key=lambda f: (f[1], f[0])))):
            fs = sorted(m, key=lambda f: (f[1], f[0]))
            terms.append("*".join(f"{s}{i}" for s, i in fs) or "1")
        return " + ".join(terms)


def coords(*names: str, slots: int = 3) -> dict:
    """Convenience: ``coords('a','b')['a'][1]`` is the expression ``a1``."""
    return {n: {i: CoordExpr.var(n, i) for i in range(1, slots + 1)} for n in names}


# -- cochains ----------------------------------------------------------------


class Cochain:
    __slots__ = ("group", "degree", "values")

    def __init__(self, group: PcGroup, degree: int, values):
        v = np.array(values, dtype=np.uint8)
        v &= 1
        if v.shape != (group.order,) * degree:
            raise CochainError(f"values shape {v.shape} does not fit degree {degree} over {group.name}")
        v.flags.writeable = False
        self.group = group
        self.degree = degree
        self.values = v

    @classmethod
    def zero(cls, G: PcGroup, degree: int) -> "Cochain":
        return cls(G, degree, np.zeros((G.order,) * degree, dtype=np.uint8))

    @classmethod
    def one(cls, G: PcGroup) -> "Cochain":
        return cls(G, 0, np.ones((), dtype=np.uint8))

    @classmethod
    def random(cls, G: PcGroup, degree: int, rng: np.random.Generator, normalized=False) -> "Cochain":
        v = rng.integers(0, 2, size=(G.order,) * degree, dtype=np.uint8)
        if normalized:
            v = v * _normalized_mask(G.order, degree)
        return cls(G, degree, v)

    def _check(self, other: "Cochain"):
        if other.group != self.group:
            raise CochainError(f"cochains over different groups ({self.group.name}, {other.group.name})")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if other.degree != self.degree:
            raise CochainError("cannot add cochains of different degree")
        return Cochain(self.group, self.degree, self.values ^ other.values)

    __sub__ = __add__

    def __mul__(self, other: "Cochain") -> "Cochain":
        return cup(self, other)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.group == other.group and self.degree == other.degree and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.degree, self.values.tobytes()))

    def __repr__(self):
        return f"Cochain({self.group.name}, deg={self.degree}, support={int(self.values.sum())})"

    def is_zero(self) -> bool:
        return not self.values.any()

    @property
    def normalized(self) -> bool:
        return is_normalized(self)

    def __call__(self, *args) -> int:
        idx = tuple(a.index if isinstance(a, Element) else int(a) for a in args)
        return int(self.values[idx])

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "degree": self.degree,
            "values": np.packbits(self.values.ravel()).tobytes().hex(),
        }

    @classmethod
    def from_json(cls, doc: dict, group: PcGroup) -> "Cochain":
        n = int(doc["degree"])
        size = group.order**n
        bits = np.unpackbits(np.frombuffer(bytes.fromhex(doc["values"]), dtype=np.uint8))[:size]
        return cls(group, n, bits.reshape((group.order,) * n))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _normalized_mask(n_elems: int, degree: int) -> np.ndarray:
    m = np.ones((n_elems,) * degree, dtype=np.uint8)
    for ax in range(degree):
        idx = [slice(None)] * degree
        idx[ax] = 0
        m[tuple(idx)] = 0
    return m


def is_normalized(c: Cochain) -> bool:
    v = c.values
    for ax in range(c.degree):
        if np.take(v, 0, axis=ax).any():
            return False
    return True


def _grid(G: PcGroup, degree: int) -> list[np.ndarray]:
    return [
        np.arange(G.order).reshape((1,) * i + (G.order,) + (1,) * (degree - i - 1))
        for i in range(degree)
    ]


def _coord_bits(G: PcGroup) -> dict:
    ex = np.array([G.exponents(x) for x in range(G.order)], dtype=np.uint8).reshape(G.order, G.k)
    return {sym: ex[:, i] for i, sym in enumerate(G.coords)}


def from_expr(G: PcGroup, degree: int, expr: CoordExpr | str) -> Cochain:
    if isinstance(expr, str):
        expr = CoordExpr.parse(expr)
    bad = expr.symbols() - set(G.coords)
    if bad:
        raise CochainError(f"symbols {sorted(bad)} are not coordinates of {G.name} ({''.join(G.coords)})")
    if expr.max_slot() > degree or any(s < 1 for m in expr.monomials for _, s in m):
        raise CochainError(f"subscripts must lie in 1..{degree}")
    check_size(G.order**degree, f"degree-{degree} cochain over {G.name}")
    bits = _coord_bits(G)
    shape = (G.order,) * degree
    out = np.zeros(shape, dtype=np.uint8)
    for mono in expr.monomials:
        term = np.ones((1,) * degree, dtype=np.uint8)
        for sym, slot in mono:
            b = bits[sym].reshape((1,) * (slot - 1) + (G.order,) + (1,) * (degree - slot))
            term = term & b
        out ^= np.broadcast_to(term, shape)
    return Cochain(G, degree, out)


# -- differential and products ----------------------------------------------


def coboundary(c: Cochain) -> Cochain:
    G, n = c.group, c.degree
    check_size(G.order ** (n + 1), f"degree-{n + 1} cochain over {G.name}")
    v = c.values
    shape = (G.order,) * (n + 1)
    out = np.zeros(shape, dtype=np.uint8)
    out ^= np.broadcast_to(v.reshape((1,) + v.shape), shape)
    for i in range(n):
        out ^= np.take(v, G.table, axis=i)
    out ^= np.broadcast_to(v.reshape(v.shape + (1,)), shape)
    return Cochain(G, n + 1, out)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def integral_coboundary_mod4(c: Cochain) -> np.ndarray:
    """Signed bar coboundary of the 0/1 lift of ``c``, reduced mod 4."""
    G, n = c.group, c.degree
    v = c.values.astype(np.int64)
    shape = (G.order,) * (n + 1)
    out = np.zeros(shape, dtype=np.int64)
    out += np.broadcast_to(v.reshape((1,) + v.shape), shape)
    for i in range(n):
        sign = -1 if i % 2 == 0 else 1
        out += sign * np.take(v, G.table, axis=i)
    out += (-1) ** (n + 1) * np.broadcast_to(v.reshape(v.shape + (1,)), shape)
    return out % 4


def bockstein(c: Cochain) -> Cochain:
    """Bockstein of 0 -> Z/2 -> Z/4 -> Z/2 -> 0: half the mod-4 coboundary of a lift."""
    d4 = integral_coboundary_mod4(c)
    if (d4 & 1).any():
        raise NotACocycle("Bockstein needs a cocycle")
    return Cochain(c.group, c.degree + 1, (d4 >> 1) & 1)


def cup(a: Cochain, b: Cochain) -> Cochain:
    a._check(b)
    G = a.group
    check_size(G.order ** (a.degree + b.degree), "cup product")
    return Cochain(G, a.degree + b.degree, np.multiply.outer(a.values, b.values))


class _Simplex:
    """Segment products g_{s+1}...g_t for all tuples of a given degree."""

    def __init__(self, G: PcGroup, degree: int):
        self.G = G
        grid = _grid(G, degree)
        shape = (G.order,) * degree
        prefix = [np.zeros(shape, dtype=np.int64)]
        for g in grid:
            prefix.append(G.table[prefix[-1], np.broadcast_to(g, shape)])
        self.prefix = prefix
        self._segs = {}

    def seg(self, s: int, t: int) -> np.ndarray:
        key = (s, t)
        if key not in self._segs:
            self._segs[key] = self.G.table[self.G.inverse[self.prefix[s]], self.prefix[t]]
        return self._segs[key]

    def evaluate(self, c: Cochain, vertices) -> np.ndarray:
        args = tuple(self.seg(s, t) for s, t in zip(vertices, vertices[1:]))
        if not args:
            return np.broadcast_to(c.values, self.prefix[0].shape)
        return c.values[args]


def _intervals(n: int, cuts) -> tuple[list, list]:
    ends = (0,) + tuple(cuts) + (n,)
    even, odd = [], []
    for j in range(len(ends) - 1):
        (even if j % 2 == 0 else odd).append(range(ends[j], ends[j + 1] + 1))
    return sorted({v for r in even for v in r}), sorted({v for r in odd for v in r})


def cup_i(a: Cochain, b: Cochain, i: int) -> Cochain:
    """Steenrod's cup-i product; ``cup_i(a, b, 0)`` is the ordinary cup product.

    On the simplex [0..n], n = p+q-i, sum over cut points u_0 < ... < u_i of
    a(even intervals) * b(odd intervals), keeping the terms whose vertex
    counts are p+1 and q+1.
    """
    a._check(b)
    p, q = a.degree, b.degree
    if i < 0 or i > min(p, q):
        raise CochainError(f"cup_{i} needs 0 <= i <= min({p}, {q})")
    G = a.group
    n = p + q - i
    check_size(G.order**n * 8 * (n + 2), f"cup_{i} on degree {n}")
    simplex = _Simplex(G, n)
    out = np.zeros((G.order,) * n, dtype=np.uint8)
    for cuts in combinations(range(n + 1), i + 1):
        va, vb = _intervals(n, cuts)
        if len(va) != p + 1 or len(vb) != q + 1:
            continue
        out ^= simplex.evaluate(a, va) & simplex.evaluate(b, vb)
    return Cochain(G, n, out)


def sq(k: int, c: Cochain, check: bool = True) -> Cochain:
    """Cochain representative ``c cup_{n-k} c`` of Sq^k[c]."""
    n = c.degree
    if not 0 <= k <= n:
        raise CochainError(f"Sq^{k} of a degree-{n} class is not defined here")
    if check and not is_cocycle(c):
        raise NotACocycle("Sq needs a cocycle")
    return cup_i(c, c, n - k)


# -- maps --------------------------------------------------------------------


def pullback(c: Cochain, f: GroupMap) -> Cochain:
    if f.codomain != c.group:
        raise CochainError(f"map lands in {f.codomain.name}, cochain lives on {c.group.name}")
    n = c.degree
    check_size(f.domain.order**n, "pulled back cochain")
    idx = tuple(f.images.reshape((1,) * i + (-1,) + (1,) * (n - i - 1)) for i in range(n))
    return Cochain(f.domain, n, c.values[idx] if n else c.values)


def restrict(c: Cochain, f: GroupMap) -> Cochain:
    if f.kind not in (EMBEDDING, "isomorphism"):
        raise CochainError("restriction needs an embedding")
    return pullback(c, f)


def inflate(c: Cochain, q: GroupMap) -> Cochain:
    if q.kind != QUOTIENT:
        raise CochainError("inflation needs a quotient map")
    return pullback(c, q)


def extension_cocycle(G: PcGroup, z: Element, section_shift: int = 0) -> Cochain:
    """Factor set of the central extension <z> -> G -> G/<z>.

    Value at (g1, g2) is the z-exponent of s(g1) s(g2) s(g1 g2)^-1 for the
    canonical section s.  ``section_shift`` multiplies every section value by
    z (only useful to exercise the check).
    """
    Q, q = quotient_by_central(G, z)
    sec = canonical_section(q).images
    if section_shift:
        sec = G.table[sec, z.index]
    t = G.table
    n = Q.order
    s1 = sec[:, None]
    s2 = sec[None, :]
    s12 = sec[Q.table]
    val = t[t[s1, s2], G.inverse[s12]]
    if np.any(q.images[val] != 0):
        raise CochainError("section product left the kernel")
    return Cochain(Q, 2, (val & 1).astype(np.uint8).reshape(n, n))


def carry_cocycle(G: PcGroup, positions) -> Cochain:
    """Carry bit of adding the cyclic coordinate read off ``positions`` (low bit first).

    For a cyclic factor C_{2^m} with generator g and pc sequence g, g^2, ...
    this is the factor set of C_{2^{m+1}} -> C_{2^m}, i.e. the degree-2
    polynomial generator of its cohomology, pulled back along the coordinate map.
    """
    ex = np.array([G.exponents(x) for x in range(G.order)], dtype=np.int64).reshape(G.order, G.k)
    val = np.zeros(G.order, dtype=np.int64)
    for j, pos in enumerate(positions):
        val += ex[:, pos] << j
    m = len(positions)
    tot = val[:, None] + val[None, :]
    return Cochain(G, 2, (tot >> m) & 1)


# -- cohomology decisions ----------------------------------------------------


def coboundary_size_estimate(G: PcGroup, n: int) -> int:
    """Bytes needed to row-reduce the matrix of d: C^{n-1} -> C^n with a witness.

    Counts the packed matrix, its reduced copy and the row transform, using
    the full (unnormalized) dimensions |G|^{n-1} x |G|^n.
    """
    rows = G.order ** max(n - 1, 0)
    cols = G.order**n
    words = (cols + WORD - 1) // WORD
    twords = (rows + WORD - 1) // WORD
    return 2 * rows * words * 8 + rows * twords * 8


_BASES: dict = {}


def _basis_tuples(N: int, n: int, normalized: bool) -> np.ndarray:
    lo = 1 if normalized else 0
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = [np.arange(lo, N)] * n
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)


def coboundary_matrix(G: PcGroup, n: int, normalized: bool = True) -> BitMatrix:
    """Matrix of d: C^{n-1} -> C^n; rows are basis (n-1)-cochains, columns n-tuples.

    In the normalized complex both bases consist of tuples without identity
    entries (lexicographic order).
    """
    if n < 1:
        raise CochainError("coboundary matrix needs n >= 1")
    N = G.order
    lo = 1 if normalized else 0
    M = N - lo
    rows = M ** (n - 1)
    cols = M**n
    check_size(coboundary_size_estimate(G, n), f"coboundary matrix C^{n - 1} -> C^{n} over {G.name}")
    if rows == 0 or cols == 0:
        return BitMatrix.zeros(rows, cols)
    tuples =_basis_tuples(N, n, normalized)  # cols x n

    def row_index(t):
        # index of an (n-1)-tuple in the row basis, -1 if it contains the identity
        if t.shape[1] == 0:
            return np.zeros(t.shape[0], dtype=np.int64)
        idx = np.zeros(t.shape[0], dtype=np.int64)
        ok = np.ones(t.shape[0], dtype=bool)
        for j in range(t.shape[1]):
            ok &= t[:, j] >= lo
            idx = idx * M + (t[:, j] - lo)
        return np.where(ok, idx, -1)

    faces = [tuples[:, 1:]]
    for i in range(n - 1):
        merged = G.table[tuples[:, i], tuples[:, i + 1]]
        faces.append(np.concatenate([tuples[:, :i], merged[:, None], tuples[:, i + 2 :]], axis=1))
    faces.append(tuples[:, :-1])
    nbytes = (cols + WORD - 1) // WORD * 8
    buf = np.zeros((rows, nbytes), dtype=np.uint8)
    col_ids = np.arange(cols, dtype=np.int64)
    for f in faces:
        r = row_index(f)
        keep = r >= 0
        np.bitwise_xor.at(buf, (r[keep], col_ids[keep] >> 3), (1 << (col_ids[keep] & 7)).astype(np.uint8))
    data = buf.view("<u8").astype(np.uint64, copy=False).reshape(rows, -1)
    return BitMatrix(rows, cols, np.ascontiguousarray(data))


def _reduced_coboundaries(G: PcGroup, n: int, normalized: bool):
    key = (G.digest(), n, normalized)
    red = _BASES.get(key)
    if red is None:
        red = rref(coboundary_matrix(G, n, normalized), track=True)
        _BASES[key] = red
    return red


def clear_cache() -> None:
    _BASES.clear()


def _flat_values(c: Cochain, normalized: bool) -> np.ndarray:
    v = c.values
    if normalized and c.degree:
        v = v[(slice(1, None),) * c.degree]
    return v.ravel()


def coboundary_witness(c: Cochain) -> Cochain | None:
    """An (n-1)-cochain b with d(b) = c, or ``None`` if [c] != 0."""
    if not is_cocycle(c):
        raise NotACocycle(f"degree-{c.degree} cochain over {c.group.name} is not a cocycle")
    G, n = c.group, c.degree
    if n == 0:
        return None if c.values.any() else Cochain.zero(G, 0)
    check_size(coboundary_size_estimate(G, n), f"class decision in degree {n} over {G.name}")
    normalized = is_normalized(c)
    red = _reduced_coboundaries(G, n, normalized)
    ok, wit = red.in_span(_flat_values(c, normalized))
    if not ok:
        return None
    N = G.order
    b = np.zeros((N,) * (n - 1), dtype=np.uint8)
    if normalized:
        b[(slice(1, None),) * (n - 1)] = wit.reshape((N - 1,) * (n - 1))
    else:
        b[...] = wit.reshape((N,) * (n - 1))
    return Cochain(G, n - 1, b)


def class_is_zero(c: Cochain) -> bool:
    return coboundary_witness(c) is not None


def class_equal(a: Cochain, b: Cochain) -> bool:
    return class_is_zero(a + b)


def coboundary_rank(G: PcGroup, n: int) -> int:
    """Rank of d: C^{n-1} -> C^n in the normalized complex (0 for n = 0)."""
    if n <= 0:
        return 0
    return _reduced_coboundaries(G, n, True).rank


def _tuple_index(t: np.ndarray, N: int) -> np.ndarray:
    # index among tuples of non-identity elements, -1 if an entry is the identity
    idx = np.zeros(t.shape[0], dtype=np.int64)
    ok = np.ones(t.shape[0], dtype=bool)
    for j in range(t.shape[1]):
        ok &= t[:, j] > 0
        idx = idx * (N - 1) + (t[:, j] - 1)
    return np.where(ok, idx, -1)


def _set_bits(buf: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> None:
    keep = cols >= 0
    rows, cols = rows[keep], cols[keep]
    np.bitwise_xor.at(buf, (rows, cols >> 6), np.left_shift(np.uint64(1), (cols & 63).astype(np.uint64)))


def cocycle_system(G: PcGroup, n: int) -> BitMatrix:
    """Linear conditions on generator slices that cut out normalized n-cocycles.

    A normalized cocycle is determined by its values c(h, g2..gn) for h in a
    generating set: the cocycle equation at (h, g, g2, .., gn) expresses
    c(hg, ...) through c(g, ...) and the h-slice.  Propagating from the
    identity along left multiplication writes every value as a linear form in
    these parameters.  Because dc is again a cocycle, dc vanishes as soon as it
    vanishes on tuples starting with a generator, so only those equations are
    returned (one row per tuple, one column per parameter).  The nullity is
    dim Z^n.
    """
    if n < 1:
        raise CochainError("cocycle system needs n >= 1")
    N = G.order
    gens = generating_set(G)
    T = (N - 1) ** (n - 1)
    P = len(gens) * T
    W = max(1, (P + WORD - 1) // WORD)
    rows = len(gens) * (N - 1) * T
    check_size(N * T * W * 8 + 2 * rows * W * 8, f"degree-{n} cocycle system over {G.name}")
    rest = _basis_tuples(N, n - 1, True)  # T x (n-1)
    rid = np.arange(T, dtype=np.int64)
    tab = G.table

    def h_terms(h_pos: int, g: np.ndarray, r: np.ndarray):
        # parameter columns of c(h, merge_i(g, r)) for i = 1..n-1 and c(h, g, r[:-1])
        full = np.concatenate([g[:, None], r], axis=1)
        out = []
        for i in range(n - 1):
            merged = tab[full[:, i], full[:, i + 1]]
            s = np.concatenate([full[:, :i], merged[:, None], full[:, i + 2 :]], axis=1)
            out.append(_tuple_index(s, N))
        out.append(_tuple_index(full[:, :-1], N))
        return [np.where(c >= 0, c + h_pos * T, -1) for c in out]

    phi = np.zeros((N, T, W), dtype=np.uint64)
    done = np.zeros(N, dtype=bool)
    done[0] = True
    for pos, h in enumerate(gens):
        _set_bits(phi[h], rid, rid + pos * T)
        done[h] = True
    queue = [0, *gens]
    while queue:
        g = queue.pop(0)
        for pos, h in enumerate(gens):
            x = int(tab[h, g])
            if done[x]:
                continue
            # c(hg, r) = c(g, r) + sum_i c(h, merge_i(g, r)) + c(h, g, r[:-1])
            phi[x] = phi[g]
            gg = np.full(T, g, dtype=np.int64)
            for cols in h_terms(pos, gg, rest):
                _set_bits(phi[x], rid, cols)
            done[x] = True
            queue.append(x)
    eqs = np.zeros((rows, W), dtype=np.uint64)
    r0 = 0
    g1 = np.repeat(np.arange(1, N, dtype=np.int64), T)
    rr = np.tile(rest, (N - 1, 1))
    ri = np.tile(rid, N - 1)
    for pos, h in enumerate(gens):
        block = eqs[r0 : r0 + (N - 1) * T]
        block ^= phi[g1, ri]
        block ^= phi[tab[h, g1], ri]
        local = np.arange(block.shape[0], dtype=np.int64)
        for cols in h_terms(pos, g1, rr):
            _set_bits(block, local, cols)
        r0 += (N - 1) * T
    if P % WORD:
        eqs[:, -1] &= np.uint64((1 << (P % WORD)) - 1)
    return BitMatrix(rows, P, eqs)


def cocycle_dimension(G: PcGroup, n: int) -> int:
    """dim Z^n of the normalized bar complex."""
    if n == 0:
        return 1
    if G.order == 1:
        return 0
    system = cocycle_system(G, n)
    return system.cols - rref(system).rank


def bar_betti(G: PcGroup, n: int, method: str = "slices") -> int:
    """dim Z^n - dim B^n in the normalized bar complex.

    ``method="direct"`` takes dim Z^n from the rank of d: C^n -> C^{n+1};
    ``"slices"`` uses :func:`cocycle_system`, which stays small enough for
    order 32 in degree 3.
    """
    if method == "direct":
        z = (G.order - 1) ** n - coboundary_rank(G, n + 1)
    elif method == "slices":
        z = cocycle_dimension(G, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return z - coboundary_rank(G, n)


def identify(c: Cochain, named: dict) -> dict | None:
    """Express [c] as a sum of classes of the ``named`` cochains (same degree).

    Returns ``{name: 0/1}`` or ``None`` when [c] is outside their span.
    Names are tried in order; a name whose class is already spanned by
    earlier ones never appears with coefficient 1.
    """
    if not is_cocycle(c):
        raise NotACocycle("can only identify cocycles")
    G, n = c.group, c.degree
    for k, v in named.items():
        if v.degree != n or v.group != G:
            raise CochainError(f"{k} has the wrong degree or group")
    if n == 0:
        vecs = [int(x.values) for x in [c, *named.values()]]
    else:
        check_size(coboundary_size_estimate(G, n), f"class decision in degree {n} over {G.name}")
        red = _reduced_coboundaries(G, n, False)
        vecs = [_as_int(red.reduce(pack_rows(x.values.reshape(1, -1))[0])[0]) for x in [c, *named.values()]]
    names = list(named)
    # greedy echelon basis of the named classes modulo coboundaries
    basis: dict[int, tuple[int, int]] = {}  # leading bit -> (vector, combination)
    for j, v in enumerate(vecs[1:]):
        comb = 1 << j
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = (v, comb)
                break
            bv, bc = basis[lead]
            v ^= bv
            comb ^= bc
    v, comb = vecs[0], 0
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return None
        bv, bc = basis[lead]
        v ^= bv
        comb ^= bc
    return {name: (comb >> j) & 1 for j, name in enumerate(names)}


def _as_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words).astype("<u8").tobytes(), "little")


def format_combination(comb: dict | None) -> str:
    if comb is None:
        return "<outside span>"
    terms = [k for k, v in comb.items() if v]
    return " + ".join(terms) if terms else "0"


def product_cochain(factors: list[Cochain], G: PcGroup) -> Cochain:
    return reduce(cup, factors, Cochain.one(G))
