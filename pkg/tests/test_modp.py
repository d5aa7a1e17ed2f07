import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powell_calc import modp
from powell_calc import symplectic as sp
from powell_calc.bruteforce import Closure


def test_reduce_examples():
    m = modp.reduce_mod_p(sp.transvection(sp.HomologyClass.a(1, 1)), 3)
    assert m.tolist() == [[1, 2], [0, 1]]
    assert modp.reduce_mod_p(sp.flip_matrix(1, 1), 2).is_identity()


@pytest.mark.parametrize("g,p,order", [(1, 2, 6), (1, 3, 24), (1, 5, 120), (2, 2, 720), (2, 3, 51840), (3, 2, 1451520)])
def test_full_orders(g, p, order):
    assert modp.sp_order(g, p) == order
    assert modp.full_group(g, p).order() == order


@pytest.mark.parametrize("g,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_powell_order_is_gl(g, p):
    # observed: the mod-p Powell image is the Lagrangian-pair stabilizer, GL(g, p)
    gl = 1
    for i in range(g):
        gl *= p**g - p**i
    assert modp.powell_subgroup(g, p).order() == gl


def test_empty_chain():
    c = modp.StabilizerChain.build([], 2, 3)
    assert c.order() == 1
    assert c.contains(modp.ModPMatrix(2, 3, np.eye(4, dtype=np.int64)))
    assert not c.contains(modp.word_mod_p(2, "x1", 3))


def test_deterministic():
    a, b = modp.powell_subgroup(3, 3), modp.powell_subgroup(3, 3)
    assert a.base_points == b.base_points and a.orbit_sizes() == b.orbit_sizes()
    assert [m.tolist() for m in a.strong_generators()] == [m.tolist() for m in b.strong_generators()]


@pytest.mark.parametrize("g,p", [(2, 3), (3, 2), (3, 3)])
def test_strong_generators_sift(g, p):
    c = modp.powell_subgroup(g, p)
    for s in c.strong_generators():
        assert c.contains(s)


def test_exchange_non_adjacent_member():
    assert modp.powell_subgroup(3, 2).contains(modp.reduce_mod_p(sp.exchange_matrix(3, 1, 3), 2))
    assert modp.powell_subgroup(4, 3).contains(modp.word_mod_p(4, "e", 3))


def test_non_member_has_residue():
    c = modp.powell_subgroup(2, 3)
    m = modp.reduce_mod_p(sp.transvection(sp.HomologyClass.a(2, 1)), 3)
    residue, depth = c.sift(m)
    assert not c.contains(m) and not residue.is_identity()


def test_lagrange():
    full = modp.full_group(2, 3).order()
    for name in ("powell",):
        assert full % modp.subgroup_chain(name, 2, 3).order() == 0


def test_errors():
    with pytest.raises(ValueError):
        modp.check_prime(4)
    with pytest.raises(modp.DimensionMismatch):
        modp.powell_subgroup(2, 3).contains(modp.word_mod_p(3, "x1", 3))
    with pytest.raises(ValueError):
        modp.subgroup_chain("other", 2, 3)


def _gens(g, p, seed, k):
    rng = random.Random(seed)
    pool = modp.full_generators(g, p)
    out = []
    for _ in range(k):
        m = modp.ModPMatrix(g, p, np.eye(2 * g, dtype=np.int64))
        for _ in range(rng.randint(1, 4)):
            m = m @ rng.choice(pool)
        out.append(m)
    return out


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(1, 2), (1, 3), (1, 5), (1, 7), (2, 2), (2, 3)]), st.integers(0, 2**32), st.integers(1, 3))
def test_random_subgroups_match_closure(gp, seed, k):
    g, p = gp
    gens = _gens(g, p, seed, k)
    chain = modp.StabilizerChain.build(gens, g, p)
    oracle = Closure([m.entries for m in gens], p)
    assert chain.order() == oracle.order
    for q in _gens(g, p, seed + 1, 10):
        assert chain.contains(q) == oracle.contains(q.entries)


def test_closure_sp2_by_enumeration():
    # oracle of the oracle: SL(2, p) by listing all 2x2 matrices
    for p in (2, 3, 5):
        sl2 = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
        c = Closure([m.entries for m in modp.full_generators(1, p)], p)
        assert c.order == len(sl2)
        assert all(c.contains(np.array(m).reshape(2, 2)) for m in sl2)
