from powell_calc import realization as rz
from powell_calc import symplectic as sp


def test_search_finds_frozen_convention():
    res = rz.search()
    assert res.n_candidates == 128
    assert res.found and res.convention == rz.FROZEN_CONVENTION
    assert res.corrected == rz.TARGET
    assert res.squares_to_identity()


def test_frozen_product_is_exchange():
    p = rz.frozen_product()
    assert rz.match_exchange(p) == ("none", rz.TARGET)
    assert (p @ p).is_identity()


def test_bubble_move_trivial_on_homology():
    for conv in rz.candidates():
        assert conv.moves()[-1][1].is_identity()


def test_compose_order():
    t = sp.eval_sp(2, "t")
    x = sp.exchange_matrix(2, 1, 2)
    assert rz.compose_moves([("a", t), ("b", x)]) == x @ t


def test_lens_pairs_orthogonal():
    assert len(rz.LENS_PAIRS) == 4
    for u, v in rz.LENS_PAIRS:
        assert rz.CLASSES[u].pair(rz.CLASSES[v]) == 0
