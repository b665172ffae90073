"""Built-in groups: 32G3f, its quotients, the relevant subgroups, and Phi_n."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .pcgroups import GroupError, GroupMap, PcGroup, quotient_by_central, subgroup_embedding

ALIASES = {
    "32G3f": "32G3f", "32Γ₃f": "32G3f", "32Gamma3f": "32G3f",
    "16G2c2": "16G2c2", "16Γ₂c₂": "16G2c2", "16Gamma2c2": "16G2c2",
    "D8": "D8", "D₈": "D8",
    "C2": "C2", "C₂": "C2",
    "C4xC2": "C4xC2", "C₄×C₂": "C4xC2",
    "C8xC2": "C8xC2", "C₈×C₂": "C8xC2",
    "Phi4": "Phi4", "Φ₄": "Phi4",
    "Phi3": "Phi3", "Φ₃": "Phi3",
    "trivial": "trivial", "1": "trivial",
}

BUILTIN_NAMES = ("32G3f", "16G2c2", "D8", "C2", "C4xC2", "C8xC2", "Phi4")


def canonical_name(name: str) -> str:
    try:
        return ALIASES[name]
    except KeyError:
        raise GroupError(f"unknown group {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None


def _g32():
    # f1^2=f4, f2^2=f3, f3^2=f4^2=f5, f5^2=1, f2^f1=f2f3, f3^f1=f3f5
    power = (
        (0, 0, 0, 1, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 0, 1),
        (0, 0, 0, 0, 1),
        (0, 0, 0, 0, 0),
    )
    conj = {(0, 1): (0, 1, 1, 0, 0), (0, 2): (0, 0, 1, 0, 1)}
    return PcGroup("32G3f", 5, power, conj, tuple("abcde"))


def _phi4():
    # x, y, y^2, y^4, x^2, y^8 with y^x = y^15 (x^2 and y^8 central)
    power = (
        (0, 0, 0, 0, 1, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 0, 0),
    )
    conj = {
        (0, 1): (0, 1, 1, 1, 0, 1),
        (0, 2): (0, 0, 1, 1, 0, 1),
        (0, 3): (0, 0, 0, 1, 0, 1),
    }
    # the alternative form y^x = y^7 is isomorphic; see phi_presentation(4, form=2)
    return PcGroup("Phi4", 6, power, conj, tuple("abcdef"))


def _cyclic_times_c2(name, m, coords):
    # C_{2^m} x C2 on g, g^2, ..., g^{2^{m-1}}, h
    k = m + 1
    power = []
    for i in range(m):
        p = [0] * k
        if i + 1 < m:
            p[i + 1] = 1
        power.append(tuple(p))
    power.append((0,) * k)
    return PcGroup(name, k, tuple(power), {}, coords)


@lru_cache(maxsize=None)
def builtin(name: str) -> PcGroup:
    name = canonical_name(name)
    if name == "32G3f":
        return _g32()
    if name == "16G2c2":
        G = builtin("32G3f")
        return quotient_by_central(G, G.gen(5), "16G2c2")[0]
    if name == "D8":
        G = builtin("16G2c2")
        return quotient_by_central(G, G.gen(4), "D8")[0]
    if name == "C2":
        return PcGroup("C2", 1, ((0,),), {}, ("a",))
    if name == "trivial":
        return PcGroup("trivial", 0, (), {}, ())
    if name == "C4xC2":
        return _cyclic_times_c2("C4xC2", 2, ("a", "b", "c"))
    if name == "C8xC2":
        return _cyclic_times_c2("C8xC2", 3, ("i", "j", "k", "l"))
    if name == "Phi4":
        return _phi4()
    if name == "Phi3":
        return phi_presentation(3, form=1)
    raise GroupError(f"no construction for {name}")


def phi_presentation(n: int, form: int = 1) -> PcGroup:
    """Pc presentation of <x, y | y^(2^n), x^4 = y^(2^(n-1)), y^x = y^s>.

    ``form=1`` uses ``s = 2^n - 1``, ``form=2`` uses ``s = 2^(n-1) - 1``.  The
    presentation is derived from the concrete normal form ``x^a y^b``
    (``0 <= a < 4``) on the pc sequence x, y, y^2, ..., y^(2^(n-2)), x^2, y^(2^(n-1)).
    """
    if n < 3:
        raise GroupError("Phi_n needs n >= 3")
    mod = 1 << n
    half = mod >> 1
    s = mod - 1 if form == 1 else half - 1

    def mul(g, h):
        a1, b1 = g
        a2, b2 = h
        a = a1 + a2
        b = b1 * pow(s, a2, mod) + b2
        if a >= 4:
            a -= 4
            b += half
        return a, b % mod

    def inv(g):
        return next(h for h in elements if mul(g, h) == (0, 0))

    seq = [(1, 0)] + [(0, 1 << t) for t in range(n - 1)] + [(2, 0), (0, half)]
    k = len(seq)
    forms = {}
    for ex in product((0, 1), repeat=k):
        x = (0, 0)
        for g, bit in zip(seq, ex):
            if bit:
                x = mul(x, g)
        forms[x] = ex
    elements = list(forms)
    if len(forms) != 4 * mod:
        raise GroupError("pc sequence does not give unique normal forms")
    power = tuple(forms[mul(g, g)] for g in seq)
    conj = {}
    for j in range(k):
        gj, gji = seq[j], inv(seq[j])
        for i in range(j + 1, k):
            conj[(j, i)] = forms[mul(mul(gji, seq[i]), gj)]
    label = f"Phi{n}" if form == 1 else f"Phi{n}'"
    return PcGroup(label, k, power, conj)


# subgroup name -> (parent, generator words as tuples of 1-based pc generators,
#                   builtin the subgroup presentation must coincide with)
SUBGROUPS = {
    "S1": ("16G2c2", ((1,), (3,), (4,)), "C4xC2"),
    "S2": ("16G2c2", ((2,), (3,), (4,)), "C4xC2"),
    "K": ("32G3f", ((2,), (3, 4)), "C8xC2"),
}


@lru_cache(maxsize=None)
def named_subgroup(name: str):
    """``(H, embedding)`` for one of the named subgroups S1, S2, K.

    S1 = <f1, f3, f4> and S2 = <f2, f3, f4> in 16G2c2 (both C4 x C2), and
    K = <f2, f3 f4> = <f2, f3, f4, f5> in 32G3f (C8 x C2).
    """
    try:
        parent, words, model = SUBGROUPS[name]
    except KeyError:
        raise GroupError(f"unknown subgroup {name!r}; known: {', '.join(SUBGROUPS)}") from None
    G = builtin(parent)
    elems = []
    for w in words:
        e = G.identity
        for i in w:
            e = e * G.gen(i)
        elems.append(e)
    H, emb = subgroup_embedding(G, elems)
    M = builtin(model)
    if H != M:
        raise GroupError(f"{name} does not have the {model} presentation")
    H = M
    return H, GroupMap(H, G, emb.images.copy(), emb.kind)
