import pytest

from cohom32.bar import class_is_zero, from_expr, inflate, is_cocycle
from cohom32.catalog import XI, NamedClassCatalog, catalog, quotient_maps
from cohom32.groups import builtin
from cohom32.pcgroups import GroupError

CAT = NamedClassCatalog()
ENTRIES = [(g, s) for g, syms in NamedClassCatalog.ENTRIES.items() for s in syms]


@pytest.mark.parametrize("group, symbol", ENTRIES)
def test_entries_are_nonzero_cocycles(group, symbol):
    c = CAT(group, symbol)
    assert is_cocycle(c)
    assert not class_is_zero(c)


def test_named_representatives():
    assert catalog("D8", "w") == from_expr(builtin("D8"), 2, XI)
    q32, q16 = quotient_maps()
    assert catalog("32G3f", "u") == inflate(inflate(from_expr(builtin("D8"), 1, "a1"), q16), q32)
    assert catalog("K", "ξ") == from_expr(builtin("C8xC2"), 1, "l1")
    assert catalog("C8xC2", "phi") == from_expr(builtin("C8xC2"), 1, "i1")


def test_unknown_entries():
    with pytest.raises(KeyError):
        catalog("D8", "x")
    with pytest.raises(GroupError):
        catalog("Phi4", "u")


def test_overrides_and_products():
    cat = NamedClassCatalog({("D8", "u"): "b1"})
    assert cat("D8", "u") == cat("D8", "v")
    assert cat.product("D8", "u^2*w") == cat("D8", "u") * cat("D8", "u") * cat("D8", "w")
    assert cat.sum("D8", "0:3").is_zero()
