from itertools import product

import pytest

from shapwa.builders import build_point_hmm
from shapwa.engine import glo_b_shap, glo_i_shap, loc_b_shap, loc_i_shap
from shapwa.hmm import uniform_hmm
from shapwa.linalg import SpMat
from shapwa.oracle import shap_oracle_global, shap_oracle_local
from shapwa.randgen import rand_hmm, rand_wa, rand_word, rng_for
from shapwa.rational import Rat, ZERO, ONE
from shapwa.wa import NAlphabetWA, eval_wa

B = ("0", "1")


def and_wa():
    """f(w) = 1 iff every symbol is '1'."""
    trans = {("1",): SpMat.from_dense([[ONE]])}
    return NAlphabetWA([B], [ONE], trans, [ONE])


def constant_wa(c):
    trans = {(s,): SpMat.from_dense([[ONE]]) for s in B}
    return NAlphabetWA([B], [Rat(c)], trans, [ONE])


def words(n):
    return ("".join(t) for t in product(B, repeat=n))


def test_constant_model_is_null():
    f = constant_wa(Rat(5, 3))
    D = uniform_hmm(B)
    for i in (1, 2):
        assert loc_i_shap(f, "01", i, D) == 0
        assert loc_b_shap(f, "01", i, "10") == 0
        assert glo_i_shap(f, i, 2, D) == 0
        assert glo_b_shap(f, i, 2, "10", D) == 0


def test_and_local_values():
    f = and_wa()
    D = uniform_hmm(B)
    assert loc_i_shap(f, "11", 1, D) == Rat(3, 8)
    assert loc_i_shap(f, "11", 2, D) == Rat(3, 8)  # symmetry
    assert loc_b_shap(f, "11", 1, "00") == Rat(1, 2)
    assert loc_b_shap(f, "11", 2, "00") == Rat(1, 2)


def test_and_global_is_zero():
    # local interventional values over the four inputs are
    # {3/8, 1/8, -3/8, -1/8}; their uniform average vanishes
    f = and_wa()
    D = uniform_hmm(B)
    assert glo_i_shap(f, 1, 2, D) == 0
    vals = sorted(shap_oracle_local("i", f, x, 1, D) for x in words(2))
    assert vals == [Rat(-3, 8), Rat(-1, 8), Rat(1, 8), Rat(3, 8)]


def test_identical_input_and_reference():
    f = rand_wa(rng_for(30), 3, B)
    for i in (1, 2, 3):
        assert loc_b_shap(f, "010", i, "010") == 0


def test_baseline_as_interventional_point():
    f = rand_wa(rng_for(31), 3, B)
    w, w_ref = "011", "101"
    for i in (1, 2, 3):
        assert loc_i_shap(f, w, i, build_point_hmm(w_ref, B)) == \
            loc_b_shap(f, w, i, w_ref)


def test_global_baseline_at_point_is_local():
    f = rand_wa(rng_for(32), 2, B)
    x0, w_ref = "10", "01"
    for i in (1, 2):
        assert glo_b_shap(f, i, 2, w_ref, build_point_hmm(x0, B)) == \
            loc_b_shap(f, x0, i, w_ref)


def test_engine_matches_oracle_random():
    rng = rng_for(33)
    for _ in range(10):
        f = rand_wa(rng, rng.randint(2, 4), B)
        D = rand_hmm(rng, rng.randint(1, 3), B)
        n = rng.randint(2, 4)
        w = rand_word(rng, B, n)
        w_ref = rand_word(rng, B, n)
        i = rng.randint(1, n)
        assert loc_i_shap(f, w, i, D) == shap_oracle_local("i", f, w, i, D)
        assert loc_b_shap(f, w, i, w_ref) == \
            shap_oracle_local("b", f, w, i, w_ref)
        assert glo_i_shap(f, i, n, D) == \
            shap_oracle_global("i", f, i, n, D, D)
        assert glo_b_shap(f, i, n, w_ref, D) == \
            shap_oracle_global("b", f, i, n, w_ref, D)


def test_errors():
    f = and_wa()
    D = uniform_hmm(("a", "b"))
    with pytest.raises(ValueError):
        loc_i_shap(f, "11", 1, D)  # alphabet mismatch
    with pytest.raises(IndexError):
        loc_i_shap(f, "11", 3, uniform_hmm(B))
    with pytest.raises(ValueError):
        loc_b_shap(f, "11", 1, "000")  # length mismatch
    with pytest.raises(ValueError):
        glo_b_shap(f, 1, 3, "11", uniform_hmm(B))  # |w_ref| != n
    with pytest.raises(IndexError):
        glo_i_shap(f, 4, 3, uniform_hmm(B))
