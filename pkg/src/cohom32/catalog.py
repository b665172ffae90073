"""Named cocycle representatives for the groups in this package."""

from __future__ import annotations

from functools import lru_cache

from .bar import Cochain, CoordExpr, carry_cocycle, cup, from_expr, inflate
from .graded import C2_TEXT, C4XC2_TEXT, D8_TEXT, K_TEXT, RingPresentation
from .groups import builtin, canonical_name, named_subgroup
from .pcgroups import GroupError, quotient_by_central

# 2-cocycle for w on D8 (coordinates a, b, c)
XI = "c1c2 + b1a2c2 + b1c1a2 + b1b2c2 + b1c1b2 + c1a2 + b1a2b2"
# 2-cocycle for x on 16G2c2 (coordinates a, b, c, d)
X_REP = "d1d2 + a1a2d2 + a1d1a2"
# f5-exponent of the product in 32G3f: the factor set of 32G3f -> 16G2c2
E_TILDE = X_REP + " + c1c2 + b1b2c2 + b1c1b2 + b1a2c2 + b1c1a2 + c1a2 + b1a2b2"


Y_EXTRA = "b1c1a2 + b1c1a2c2 + b1d2 + c1a2c2 + e1a2 + e1e2"


def y_expr(x12: str = X_REP, w12: str = XI, extra: str | None = None) -> CoordExpr:
    """Degree-3 representative of y on 32G3f, assembled from x12 and w12."""
    P = CoordExpr.parse
    x, w = P(x12), P(w12)
    if extra is None:
        extra = Y_EXTRA
    inner = x * w + P("e1 + e2") * (x + w) + P(extra)
    return inner * P("a3") + x * P("d3")


# group key -> (builtin group, subgroup name or None)
_GROUP_KEYS = {
    "D8": ("D8", None), "C2": ("C2", None), "16G2c2": ("16G2c2", None), "32G3f": ("32G3f", None),
    "K": ("C8xC2", "K"), "C8xC2": ("C8xC2", "K"),
    "S1": ("C4xC2", "S1"), "S2": ("C4xC2", "S2"), "C4xC2": ("C4xC2", "S1"),
}

# catalog group -> (presentation text, catalog names of its generators)
_PRESENTATIONS = {
    "D8": (D8_TEXT, ("u", "v", "w")),
    "C2": (C2_TEXT, ("t",)),
    "K": (K_TEXT, ("xi", "phi", "chi")),
    "S1": (C4XC2_TEXT, ("p", "q", "r")),
    "S2": (C4XC2_TEXT, ("p'", "q'", "r'")),
}

_SYMBOL_ALIASES = {"ξ": "xi", "φ": "phi", "χ": "chi", "p′": "p'", "q′": "q'", "r′": "r'"}


@lru_cache(maxsize=None)
def quotient_maps():
    """(32G3f -> 16G2c2, 16G2c2 -> D8) quotient maps."""
    G32, G16 = builtin("32G3f"), builtin("16G2c2")
    _, q32 = quotient_by_central(G32, G32.gen(5))
    _, q16 = quotient_by_central(G16, G16.gen(4))
    return q32, q16


def _d8(sym):
    return {"u": "a1", "v": "b1", "w": XI}[sym]


class NamedClassCatalog:
    """Lookup of cocycle representatives by (group, symbol).

    ``overrides`` maps ``(group, symbol)`` to a coordinate expression or to a
    callable taking the catalog and returning a cochain; it is how the fault
    injection tests swap in wrong representatives.
    """

    ENTRIES = {
        "D8": ("u", "v", "w"),
        "C2": ("t",),
        "16G2c2": ("u", "v", "w", "x"),
        "32G3f": ("u", "v", "W", "y"),
        "K": ("xi", "phi", "chi"),
        "S1": ("p", "q", "r"),
        "S2": ("p'", "q'", "r'"),
    }

    def __init__(self, overrides: dict | None = None):
        self.overrides = dict(overrides or {})
        self._memo: dict = {}

    @staticmethod
    def key(group: str, symbol: str) -> tuple:
        g = _norm_group(group)
        s = _SYMBOL_ALIASES.get(symbol, symbol)
        if s not in NamedClassCatalog.ENTRIES[g]:
            raise KeyError(f"unknown symbol {symbol!r} for {group}; known: {', '.join(NamedClassCatalog.ENTRIES[g])}")
        return g, s

    @staticmethod
    def group_of(group: str):
        return builtin(_GROUP_KEYS[_norm_group(group)][0])

    def __call__(self, group: str, symbol: str) -> Cochain:
        return self.get(group, symbol)

    def get(self, group: str, symbol: str) -> Cochain:
        key = self.key(group, symbol)
        if key not in self._memo:
            self._memo[key] = self._build(*key)
        return self._memo[key]

    def _build(self, g: str, s: str) -> Cochain:
        G = builtin(_GROUP_KEYS[g][0])
        ov = self.overrides.get((g, s))
        if ov is not None:
            return ov(self) if callable(ov) else from_expr(G, _degree(g, s), ov)
        q32, q16 = quotient_maps()
        if g == "D8":
            return from_expr(G, _degree(g, s), _d8(s))
        if g == "C2":
            return from_expr(G, 1, "a1")
        if g == "16G2c2":
            if s == "x":
                return from_expr(G, 2, X_REP)
            return inflate(self.get("D8", s), q16)
        if g == "32G3f":
            if s in ("u", "v"):
                return inflate(self.get("16G2c2", s), q32)
            if s == "W":
                return inflate(self.get("16G2c2", "x"), q32)
            return from_expr(G, 3, y_expr())
        if g == "K":
            return {"xi": lambda: from_expr(G, 1, "l1"), "phi": lambda: from_expr(G, 1, "i1"),
                    "chi": lambda: carry_cocycle(G, (0, 1, 2))}[s]()
        base = s.rstrip("'")
        if base == "q":
            return from_expr(G, 1, "a1")
        if base == "p":
            return from_expr(G, 1, "c1")
        return carry_cocycle(G, (0, 1))

    def items(self):
        for g, syms in self.ENTRIES.items():
            for s in syms:
                yield (g, s), self.get(g, s)

    def product(self, group: str, word: str) -> Cochain:
        """Cup product of catalog symbols written like ``u*w*w`` (``1`` for the unit)."""
        out = Cochain.one(self.group_of(group))
        for factor in word.replace(" ", "").split("*"):
            if factor in ("", "1"):
                continue
            name, _, power = factor.partition("^")
            for _ in range(int(power or 1)):
                out = cup(out, self.get(group, name))
        return out

    def monomial_basis(self, group: str, degree: int) -> dict:
        """Monomials of the given degree in the catalog generators, keyed by name.

        They span the degree-``degree`` cohomology for D8, the C4xC2
        subgroups and K, which have presentations in :mod:`graded`.
        """
        g = _norm_group(group)
        if g not in _PRESENTATIONS:
            raise GroupError(f"no presentation on record for {group}")
        text, names = _PRESENTATIONS[g]
        P = RingPresentation.parse(text)
        rename = dict(zip(P.names, names))
        out = {}
        for m in P.monomials(degree):
            word = "*".join(rename[n] + (f"^{e}" if e > 1 else "") for n, e in zip(P.names, m) if e)
            out[word or "1"] = self.product(g, word)
        return out

    def sum(self, group: str, text: str) -> Cochain:
        """Sum of catalog products, e.g. ``p^2 + p*q``; ``0:<deg>`` for zero."""
        terms = [t for t in text.replace(" ", "").split("+") if t]
        if len(terms) == 1 and terms[0].startswith("0:"):
            return Cochain.zero(self.group_of(group), int(terms[0][2:]))
        parts = [self.product(group, t) for t in terms]
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out


def _norm_group(group: str) -> str:
    g = group if group in _GROUP_KEYS else canonical_name(group)
    if g not in _GROUP_KEYS:
        raise GroupError(f"no catalog entries for {group}")
    return {"C8xC2": "K", "C4xC2": "S1"}.get(g, g)


def _degree(g: str, s: str) -> int:
    if s in ("W", "w", "x", "chi", "r", "r'"):
        return 2
    if s == "y":
        return 3
    return 1


def subgroup_map(name: str):
    return named_subgroup(name)[1]


_default = None


def catalog(group: str, symbol: str) -> Cochain:
    """Representative of a named class from the default catalog."""
    global _default
    if _default is None:
        _default = NamedClassCatalog()
    return _default.get(group, symbol)
