import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powell_calc import dihedral as dh
from powell_calc.words import SymbolError, parse

P = dh.dih_parse
elements = st.sampled_from(dh.ALL_ELEMENTS)


def on_graph(x):
    """Oracle: x as a permutation of the five vertices of K(2,3).

    Vertices 'N', 'S' are the two poles, 0, 1, 2 the others; the sign swaps
    the poles.  Composition is then plain function composition."""
    m = {i: x.perm[i] for i in range(3)}
    m["N"], m["S"] = ("S", "N") if x.neg else ("N", "S")
    return m


def test_group_laws():
    assert len(dh.ALL_ELEMENTS) == 12
    for x, y in itertools.product(dh.ALL_ELEMENTS, repeat=2):
        gx, gy, gxy = on_graph(x), on_graph(y), on_graph(x @ y)
        assert all(gxy[v] == gx[gy[v]] for v in gx)
    for x in dh.ALL_ELEMENTS:
        assert x @ x.inverse() == dh.IDENTITY
        assert x.order() in (1, 2, 3, 6)


@given(elements, elements, elements)
def test_associative(x, y, z):
    assert (x @ y) @ z == x @ (y @ z)


@given(elements, elements)
def test_sign_is_homomorphism(x, y):
    assert (x @ y).sign == x.sign * y.sign


@given(elements)
def test_format_roundtrip(x):
    assert P(str(x)) == x


def test_stated_relations():
    assert len(dh.dih_closure([P("-(12)"), P("+(02)")])) == 12
    assert dh.dih_compose(P("+(02)"), P("-(12)"), P("+(02)")) == P("-(01)")
    assert dh.dih_compose(P("-(12)"), P("+(02)"), P("-(12)")) == P("+(01)")
    assert dh.eval_dih(parse("re r0")) == P("-(12)")


@pytest.mark.parametrize(
    "gens, size",
    [(["+(012)"], 3), (["-()", "+(12)"], 4), ([], 1), (["+()"], 1), (["-(12)", "+(02)"], 12), (["-(012)"], 6)],
)
def test_closure_sizes(gens, size):
    assert len(dh.dih_closure(P(g) for g in gens)) == size


def test_rho():
    assert dh.dih_of_rho("e") == P("-()")
    assert dh.dih_of_rho("0") == P("+(12)")
    assert dh.dih_of_rho("0") @ dh.dih_of_rho("2") == P("+(021)")
    for a in "e012":
        assert dh.dih_of_rho(a).order() == 2


def test_parse_forms():
    assert P("−(0 2 1)") == P("-(021)") == P("-(0,2,1)")
    assert P("+(120)") == P("+(012)")
    assert str(P("+()")) == "+()"
    assert str(P("-(210)")) == "-(021)"


@pytest.mark.parametrize("bad", ["(01)", "*(01)", "+(03)", "+(011)", "+01", ""])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_eval_rejects_other_symbols():
    with pytest.raises(SymbolError):
        dh.eval_dih(parse("re w"))


def test_incidence():
    assert dh.INCIDENCE == ((False, True, True), (True, False, True), (True, True, False))
    assert len(dh.orthogonal_pairs()) == 6
