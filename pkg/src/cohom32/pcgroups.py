"""Finite 2-groups given by polycyclic presentations with all relative orders 2.

Elements are exponent tuples ``(a_1, ..., a_k)`` over F_2 standing for the
normal form ``g_1^a_1 ... g_k^a_k``.  The element *index* reads the tuple as a
binary number with ``g_1`` as the most significant bit; every cochain and
group-algebra vector downstream is indexed this way.

Conjugation follows the usual right action ``x^y = y^-1 x y``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

DEFAULT_COORDS = "abcdefghmnopqrstuvwxyz"


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PcGroup:
    """Polycyclic presentation on generators ``g_1..g_k`` of relative order 2.

    ``power[i]`` is the exponent tuple of ``g_i^2`` and ``conj[(j, i)]`` (for
    ``j < i``, 0-based) the exponent tuple of ``g_i^{g_j}``; missing conjugates
    mean the generators commute.
    """

    name: str
    k: int
    power: tuple
    conj: dict = field(default_factory=dict)
    coords: tuple = ()
    _table: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.power) != self.k:
            raise GroupError("need one power relation per generator")
        power = tuple(tuple(int(b) & 1 for b in p) for p in self.power)
        conj = {}
        for (j, i), img in dict(self.conj).items():
            img = tuple(int(b) & 1 for b in img)
            if not 0 <= j < i < self.k or len(img) != self.k:
                raise GroupError(f"bad conjugate relation {(j, i)}")
            if img != _unit(self.k, i):
                conj[(j, i)] = img
        for i, p in enumerate(power):
            if len(p) != self.k or any(p[: i + 1]):
                raise GroupError(f"power relation of g{i + 1} must involve later generators only")
        for (j, i), img in conj.items():
            if any(img[:i]) or img[i] != 1:
                raise GroupError(f"conjugate g{i + 1}^g{j + 1} must be g{i + 1} times later generators")
        coords = tuple(self.coords) or tuple(DEFAULT_COORDS[: self.k])
        if len(coords) != self.k or len(set(coords)) != self.k:
            raise GroupError("need one distinct coordinate symbol per generator")
        object.__setattr__(self, "power", power)
        object.__setattr__(self, "conj", conj)
        object.__setattr__(self, "coords", coords)

    # identity of a presentation is its relations; the name is a label
    def _key(self):
        return (self.k, self.power, tuple(sorted(self.conj.items())))

    def __eq__(self, other):
        if not isinstance(other, PcGroup):
            return NotImplemented
        if self._table is not None or other._table is not None:
            return self is other
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def order(self) -> int:
        return 1 << self.k

    def __len__(self):
        return self.order

    # -- elements ---------------------------------------------------------
    def index(self, exps) -> int:
        idx = 0
        for b in exps:
            idx = (idx << 1) | (int(b) & 1)
        return idx

    def exponents(self, idx: int) -> tuple:
        return tuple((idx >> (self.k - 1 - i)) & 1 for i in range(self.k))

    def element(self, exps) -> "Element":
        exps = tuple(int(b) & 1 for b in exps)
        if len(exps) != self.k:
            raise GroupError(f"{self.name} elements have {self.k} exponents, got {len(exps)}")
        return Element(self, exps)

    def __call__(self, *exps) -> "Element":
        return self.element(exps)

    def at(self, idx: int) -> "Element":
        return Element(self, self.exponents(idx))

    @property
    def identity(self) -> "Element":
        return Element(self, (0,) * self.k)

    def gen(self, i: int) -> "Element":
        """The generator ``g_i`` (1-based, matching the f_1..f_k notation)."""
        return Element(self, _unit(self.k, i - 1))

    def elements(self) -> list["Element"]:
        return [self.at(i) for i in range(self.order)]

    # -- arithmetic -------------------------------------------------------
    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table on element indices."""
        if self._table is not None:
            return self._table
        n = self.order
        by_gen = np.empty((n, self.k), dtype=np.int64)
        for x in range(n):
            ex = self.exponents(x)
            for i in range(self.k):
                by_gen[x, i] = self.index(self._mul_gen(ex, i))
        tab = np.empty((n, n), dtype=np.int64)
        for y in range(n):
            col = np.arange(n)
            for i, bit in enumerate(self.exponents(y)):
                if bit:
                    col = by_gen[col, i]
            tab[:, y] = col
        tab.flags.writeable = False
        return tab

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # identity has index 0
        if not np.all(self.table[np.arange(self.order), inv] == 0):
            raise GroupError(f"{self.name}: multiplication has no two-sided identity")
        inv.flags.writeable = False
        return inv

    def _mul_gen(self, x: tuple, i: int) -> tuple:
        return _collect_gen(self.k, self.power, tuple(sorted(self.conj.items())), x, i)

    def collect(self, x: tuple, y: tuple) -> tuple:
        """Collected normal form of ``x*y`` computed from the relations alone."""
        r = tuple(x)
        for i, bit in enumerate(y):
            if bit:
                r = self._mul_gen(r, i)
        return r

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "k": self.k,
            "power_relations": [list(p) for p in self.power],
            "conjugate_relations": {f"{j + 1},{i + 1}": list(v) for (j, i), v in sorted(self.conj.items())},
        }

    @classmethod
    def from_json(cls, doc: dict, coords=()) -> "PcGroup":
        conj = {}
        for key, v in doc.get("conjugate_relations", {}).items():
            j, i = (int(s) - 1 for s in key.split(","))
            conj[(j, i)] = tuple(v)
        return cls(doc["name"], int(doc["k"]), tuple(tuple(p) for p in doc["power_relations"]), conj, tuple(coords))

    def digest(self) -> str:
        doc = self.to_json()
        doc.pop("name")
        if self._table is not None:
            doc["table"] = self._table.tolist()
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()

    def with_table(self, table: np.ndarray, name: str | None = None) -> "PcGroup":
        """Copy carrying an explicit multiplication table (used for fault injection)."""
        t = np.array(table, dtype=np.int64)
        t.flags.writeable = False
        return PcGroup(name or self.name, self.k, self.power, self.conj, self.coords, t)

    def renamed(self, name: str, coords=None) -> "PcGroup":
        return PcGroup(name, self.k, self.power, self.conj, tuple(coords or self.coords), self._table)

    def describe(self) -> str:
        f = [f"f{i + 1}" for i in range(self.k)]

        def word(ex):
            w = "".join(f[i] for i, b in enumerate(ex) if b)
            return w or "1"

        lines = [f"{self.name}: order {self.order}, generators {' '.join(f)}"]
        lines += [f"  {f[i]}^2 = {word(p)}" for i, p in enumerate(self.power)]
        lines += [f"  {f[i]}^{f[j]} = {word(v)}" for (j, i), v in sorted(self.conj.items())]
        return "\n".join(lines)


def _unit(k: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(k))


@lru_cache(maxsize=None)
def _collect_gen(k, power, conj_items, x, i):
    # x * g_i = head * g_i * tail^{g_i}; everything right of position i lives
    # in the normal subgroup <g_{i+1}, ..., g_k>.
    conj = dict(conj_items)
    if x[i]:
        head = x[:i] + (0,)
        rest = power[i]
    else:
        head = x[:i] + (1,)
        rest = (0,) * k
    for j in range(i + 1, k):
        if x[j]:
            rest = _collect_mul(k, power, conj_items, rest, conj.get((i, j), _unit(k, j)))
    return head + tuple(rest[i + 1 :])


def _collect_mul(k, power, conj_items, x, y):
    r = x
    for j, bit in enumerate(y):
        if bit:
            r = _collect_gen(k, power, conj_items, r, j)
    return r


@dataclass(frozen=True)
class Element:
    group: PcGroup
    exps: tuple

    @property
    def index(self) -> int:
        return self.group.index(self.exps)

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self.group, self, other)

    def __pow__(self, n: int) -> "Element":
        r = self.group.identity
        for _ in range(n):
            r = r * self
        return r

    def inv(self) -> "Element":
        return self.group.at(int(self.group.inverse[self.index]))

    def conj(self, by: "Element") -> "Element":
        """``self^by = by^-1 * self * by``."""
        return by.inv() * self * by

    def is_identity(self) -> bool:
        return not any(self.exps)

    def word(self) -> str:
        w = "".join(f"f{i + 1}" for i, b in enumerate(self.exps) if b)
        return w or "1"

    def __repr__(self):
        return f"<{self.group.name} {self.word()}>"


def multiply(G: PcGroup, x: Element, y: Element) -> Element:
    if x.group != G or y.group != G:
        raise GroupError("elements belong to a different group")
    return G.at(G.mul(x.index, y.index))


def element_order(G: PcGroup, g: Element) -> int:
    if g.group != G:
        raise GroupError("element belongs to a different group")
    n, x = 1, g.index
    while x != 0:
        x = G.mul(x, g.index)
        n += 1
    return n


def is_central(G: PcGroup, z: Element) -> bool:
    t = G.table
    return bool(np.array_equal(t[z.index, :], t[:, z.index]))


def center(G: PcGroup) -> list[Element]:
    t = G.table
    return [G.at(i) for i in range(G.order) if np.array_equal(t[i, :], t[:, i])]


def check_associative(G: PcGroup, triples: np.ndarray | None = None) -> tuple | None:
    """First triple violating associativity, or ``None``.

    Without ``triples`` the check is exhaustive.
    """
    t = G.table
    if triples is None:
        n = G.order
        xy = t[:, :, None]
        lhs = t[xy, np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        bad = np.argwhere(lhs != rhs)
    else:
        x, y, z = triples.T
        bad_rows = np.flatnonzero(t[t[x, y], z] != t[x, t[y, z]])
        bad = triples[bad_rows]
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


# -- maps --------------------------------------------------------------------

EMBEDDING, QUOTIENT, SECTION, ISOMORPHISM = "embedding", "quotient", "section", "isomorphism"


@dataclass(frozen=True, eq=False)
class GroupMap:
    domain: PcGroup
    codomain: PcGroup
    images: np.ndarray  # element index -> element index
    kind: str

    def __post_init__(self):
        self.images.flags.writeable = False

    @classmethod
    def from_generators(cls, domain: PcGroup, codomain: PcGroup, gen_images, kind: str) -> "GroupMap":
        """Extend generator images multiplicatively over normal forms."""
        gi = [g.index if isinstance(g, Element) else int(g) for g in gen_images]
        if len(gi) != domain.k:
            raise GroupError("need one image per domain generator")
        imgs = np.zeros(domain.order, dtype=np.int64)
        for x in range(domain.order):
            r = 0
            for i, b in enumerate(domain.exponents(x)):
                if b:
                    r = codomain.mul(r, gi[i])
            imgs[x] = r
        return cls(domain, codomain, imgs, kind)

    @property
    def generator_images(self) -> list[Element]:
        return [self.codomain.at(int(self.images[self.domain.gen(i + 1).index])) for i in range(self.domain.k)]

    def __call__(self, g: Element) -> Element:
        if g.group != self.domain:
            raise GroupError("element not in the domain")
        return self.codomain.at(int(self.images[g.index]))

    def homomorphism_defect(self) -> tuple | None:
        """First pair ``(x, y)`` with ``f(xy) != f(x)f(y)``, or ``None``."""
        a, b = self.domain.table, self.codomain.table
        lhs = self.images[a]
        rhs = b[self.images[:, None], self.images[None, :]]
        bad = np.argwhere(lhs != rhs)
        return tuple(int(v) for v in bad[0]) if len(bad) else None

    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.domain.order

    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.codomain.order

    def compose(self, inner: "GroupMap") -> "GroupMap":
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise GroupError("maps do not compose")
        kind = self.kind if self.kind == inner.kind else SECTION
        return GroupMap(inner.domain, self.codomain, self.images[inner.images], kind)


def identity_map(G: PcGroup) -> GroupMap:
    return GroupMap(G, G, np.arange(G.order, dtype=np.int64), ISOMORPHISM)


def quotient_by_central(G: PcGroup, z: Element, name: str | None = None):
    """Quotient of ``G`` by ``<z>`` where ``z`` is the last pc generator and central."""
    if z.group != G:
        raise GroupError("element not in the group")
    if G.k == 0 or z.exps != _unit(G.k, G.k - 1):
        raise GroupError("z must be the last pc generator")
    if element_order(G, z) != 2:
        raise GroupError("z must have order 2")
    if not is_central(G, z):
        raise GroupError(f"{z.word()} is not central in {G.name}")
    k = G.k - 1
    power = tuple(p[:k] for p in G.power[:k])
    conj = {(j, i): v[:k] for (j, i), v in G.conj.items() if i < k}
    Q = PcGroup(name or f"{G.name}/<{z.word()}>", k, power, conj, G.coords[:k])
    q = GroupMap.from_generators(G, Q, [Q.gen(i + 1) for i in range(k)] + [Q.identity], QUOTIENT)
    if q.homomorphism_defect() is not None:
        raise GroupError("quotient map is not a homomorphism")
    return Q, q


def canonical_section(q: GroupMap) -> GroupMap:
    """Set-level section of a central quotient: append a zero exponent."""
    G, Q = q.domain, q.codomain
    if q.kind != QUOTIENT or G.k != Q.k + 1:
        raise GroupError("canonical section needs a central quotient map")
    imgs = np.array([G.index(Q.exponents(x) + (0,)) for x in range(Q.order)], dtype=np.int64)
    sec = GroupMap(Q, G, imgs, SECTION)
    if not np.array_equal(q.images[sec.images], np.arange(Q.order)):
        raise GroupError("q is not a central quotient by the last generator")
    return sec


def _closure(G: PcGroup, gens: list[int]) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generating_set(G: PcGroup) -> list[int]:
    """Pc generators kept greedily while they enlarge the generated subgroup."""
    gens: list[int] = []
    span = {0}
    for i in range(1, G.k + 1):
        g = G.gen(i).index
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return gens


def _power_chain_sequence(G: PcGroup, words: list[int]) -> list[int]:
    seq: list[int] = []
    for w in words:
        base = _closure(G, seq)
        x = w
        while x not in base:
            seq.append(x)
            x = G.mul(x, x)
    return seq


def _induced_sequence(G: PcGroup, elems: set[int]) -> list[int]:
    # one element per leading depth, echelonised against the others
    by_depth: dict[int, int] = {}
    for x in sorted(elems):
        if x == 0:
            continue
        ex = G.exponents(x)
        d = next(i for i, b in enumerate(ex) if b)
        if d not in by_depth:
            by_depth[d] = x
    return [by_depth[d] for d in sorted(by_depth)]


def _normal_forms(G: PcGroup, seq: list[int]) -> dict[int, tuple] | None:
    """Map element -> exponent tuple over ``seq`` if ``seq`` is a pc sequence."""
    m = len(seq)
    forms = {}
    for ex in product((0, 1), repeat=m):
        x = 0
        for s, b in zip(seq, ex):
            if b:
                x = G.mul(x, s)
        if x in forms:
            return None
        forms[x] = ex
    # every tail <s_i..s_m> must be a subgroup normalised by s_{i-1}
    for i in range(m):
        tail = {x for x, ex in forms.items() if not any(ex[:i])}
        s = seq[i]
        si = int(G.inverse[s])
        for t in tail:
            if G.mul(G.mul(si, t), s) not in tail:
                return None
        sub = {x for x in tail if not forms[x][i]}
        if G.mul(s, s) not in sub:
            return None
        for t in sub:
            for u in sub:
                if G.mul(t, u) not in sub:
                    return None
    return forms


def subgroup_embedding(G: PcGroup, words: list[Element], name: str | None = None, coords=()):
    """Subgroup generated by ``words`` with a pc presentation and its embedding.

    The pc sequence is built from the words in order, each followed by its
    successive squares, skipping anything already generated.  If that sequence
    is not polycyclic the induced sequence by leading depth is used instead.
    """
    if not words:
        raise GroupError("need at least one generator word")
    for w in words:
        if w.group != G:
            raise GroupError("word not in the group")
    idx = [w.index for w in words]
    elems = _closure(G, idx)
    seq = _power_chain_sequence(G, idx)
    forms = _normal_forms(G, seq) if len(seq) and (1 << len(seq)) == len(elems) else None
    if forms is None:
        seq = _induced_sequence(G, elems)
        forms = _normal_forms(G, seq)
        if forms is None:
            raise GroupError("could not find a polycyclic sequence")
    m = len(seq)
    power = tuple(forms[G.mul(s, s)] for s in seq)
    conj = {}
    for j in range(m):
        sj, sji = seq[j], int(G.inverse[seq[j]])
        for i in range(j + 1, m):
            conj[(j, i)] = forms[G.mul(G.mul(sji, seq[i]), sj)]
    H = PcGroup(name or f"<{','.join(w.word() for w in words)}>", m, power, conj, tuple(coords))
    emb = GroupMap.from_generators(H, G, seq, EMBEDDING)
    return H, emb


def cyclic_structure(G: PcGroup) -> tuple:
    """Sorted element-order statistics ``((order, count), ...)``."""
    counts: dict[int, int] = {}
    for g in G.elements():
        o = element_order(G, g)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def exponent(G: PcGroup) -> int:
    return max(o for o, _ in cyclic_structure(G))


def is_abelian(G: PcGroup) -> bool:
    return bool(np.array_equal(G.table, G.table.T))
