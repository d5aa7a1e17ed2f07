import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powell_calc import symplectic as sp
from powell_calc.scenarios import random_orthogonal_triple, random_powell_word, random_spec
from powell_calc.words import SymbolError, parse

H = sp.HomologyClass


# --- dense list-of-lists oracle -------------------------------------------


def pair(x, y):
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


def o_transvection(c, k=1):
    n = len(c)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        cols.append([e[i] + k * pair(e, c) * c[i] for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def o_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def o_eyeglass(a, b, d=1):
    ab = [x + y for x, y in zip(a, b)]
    return o_mul(o_mul(o_transvection(ab, d), o_transvection(a, -d)), o_transvection(b, -d))


classes = st.integers(1, 4).flatmap(lambda g: st.lists(st.integers(-3, 3), min_size=2 * g, max_size=2 * g))


@given(classes, st.integers(-3, 3))
def test_transvection_matches_oracle(c, k):
    g = len(c) // 2
    m = sp.transvection(H(g, tuple(c)), k)
    assert m.tolist() == o_transvection(c, k)
    assert m.is_symplectic()


def test_transvection_examples():
    # T_a1 sends b1 to b1 - a1 since <b1, a1> = -1
    m = sp.transvection(H.a(1, 1))
    assert m.tolist() == [[1, -1], [0, 1]]
    assert m.apply(H.b(1, 1)) == H(1, (-1, 1))
    assert sp.transvection(H.b(1, 1)).tolist() == [[1, 0], [1, 1]]


def test_eyeglass_standard():
    d = sp.standard_eyeglass(2)
    a1, b1, a2, b2 = H.a(2, 1), H.b(2, 1), H.a(2, 2), H.b(2, 2)
    assert d.apply(a2) == a2 + a1
    assert d.apply(b1) == b1 - b2
    assert d.apply(a1) == a1 and d.apply(b2) == b2
    assert d == sp.eval_sp(2, "t")


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(0, 2**32), st.sampled_from([1, -1]))
def test_eyeglass_matches_oracle_and_formula(g, seed, d):
    spec = random_spec(random.Random(seed), g)
    a, b = spec.lens_a, spec.lens_b
    m = sp.eyeglass(a, b, d)
    assert m.tolist() == o_eyeglass(list(a.coeffs), list(b.coeffs), d)
    # closed form x -> x + d(<x,b> a + <x,a> b), lenses fixed, symmetric in the lenses
    x = H(g, tuple(random.Random(seed + 1).randint(-3, 3) for _ in range(2 * g)))
    assert m.apply(x) == x + (d * x.pair(b)) * a + (d * x.pair(a)) * b
    assert m.apply(a) == a and m.apply(b) == b
    assert m == sp.eyeglass(b, a, d)
    assert sp.eyeglass(a, b, -d) == m.inverse()


def test_eyeglass_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        sp.eyeglass(H.a(1, 1), H.b(1, 1))


def test_block_generators():
    f = sp.flip_matrix(3, 2)
    assert f.apply(H.a(3, 2)) == -H.a(3, 2) and f.apply(H.b(3, 1)) == H.b(3, 1)
    x = sp.exchange_matrix(3, 1, 3)
    assert x.apply(H.a(3, 1)) == H.a(3, 3) and x.apply(H.b(3, 3)) == H.b(3, 1)
    r = sp.rotation_matrix(4)
    assert r.apply(H.a(4, 4)) == H.a(4, 1) and r.apply(H.b(4, 2)) == H.b(4, 3)
    assert (r**4).is_identity()
    for m in (f, x, r):
        assert m.is_symplectic() and m.det() == 1


@pytest.mark.parametrize("g", range(2, 7))
def test_eval_homomorphism(g):
    rng = random.Random(g)
    for _ in range(100):
        u, v = random_powell_word(rng, g, rng.randint(0, 10)), random_powell_word(rng, g, rng.randint(0, 10))
        U, V = sp.eval_sp(g, u), sp.eval_sp(g, v)
        assert sp.eval_sp(g, u + v) == U @ V
        assert (U @ U.inverse()).is_identity()
        assert U.is_symplectic()


@pytest.mark.parametrize("g", range(2, 11))
def test_rotation_identity(g):
    assert sp.eval_sp(g, "e") == sp.eval_sp(g, "w w " + " ".join(f"x{i}" for i in range(1, g)))


def test_inverse_and_power():
    m = sp.eval_sp(3, "t x1 w2 t(a1+a2,b3)")
    assert (m @ m.inverse()).is_identity()
    assert m ** -2 == (m.inverse() @ m.inverse())
    assert (m ** 0).is_identity()


def test_not_symplectic():
    with pytest.raises(sp.NotSymplectic):
        sp.SymplecticMatrix(1, [[2, 0], [0, 1]], check=True)


def test_matrix_text_roundtrip():
    m = sp.eval_sp(2, "t x1")
    assert sp.read_matrix(m.to_text()) == m
    assert m.to_text().splitlines()[0] == "g=2"
    with pytest.raises(ValueError):
        sp.read_matrix("g=2\n1 0\n0 1\n")


def test_stabilize():
    m = sp.eval_sp(2, "t x1")
    s = sp.stabilize(m)
    assert s.g == 3 and s.apply(H.a(3, 3)) == H.a(3, 3)
    assert s == sp.eval_sp(3, "t x1")


def test_genus_mismatch():
    with pytest.raises(sp.GenusMismatch):
        H.a(2, 1) + H.a(3, 1)
    with pytest.raises(SymbolError):
        sp.eval_sp(2, "r1")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32))
def test_composition_check(g, seed):
    assert sp.eyeglass_composition_check(*random_orthogonal_triple(random.Random(seed), g)).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32))
def test_covariance_check(g, seed):
    rng = random.Random(seed)
    M = sp.eval_sp(g, random_powell_word(rng, g, 12))
    assert sp.conjugation_covariance_check(random_spec(rng, g), M).passed


def test_sl2():
    r = sp.local_sl2_check()
    assert r.passed
    assert r.details["product"] == [[1, 2], [-1, -1]]
    assert r.details["psl_order"] == 2


def test_powell_generators_preserve_lagrangians():
    # block structure: a-classes go to a-classes and b to b
    for g in (2, 3):
        for m in sp.powell_generators(g):
            a = np.array(m.tolist())
            assert not a[1::2, 0::2].any() and not a[0::2, 1::2].any()
