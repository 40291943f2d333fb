import pytest

from mingenus.catalog import cp2x2, enk, get_model, k3, s2xs2, xn
from mingenus.errors import DimensionError, NotFound
from mingenus.lattice import reflect
from mingenus.profile import Profile, candidate_vectors, is_allowed, lex_min, profile_search


def test_k3():
    prof = profile_search(k3(), 2)
    assert prof.entries == (2, 2, 2)
    assert is_allowed(k3(), prof.witness)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_enk_n2(m):
    # S + 2F has square 2 and adjunction forces m + 2, matched by tubing
    assert profile_search(enk(2, m), 2).entries == (2, 2, m + 2)


def test_small_models():
    assert profile_search(s2xs2(), 2).entries == (0,)
    assert profile_search(xn(3), 2).entries == (4,)


def test_e2p_interval():
    prof = profile_search(get_model("e2p", p=5), 2)
    assert prof.lower == (2, 2, 4)
    assert prof.upper[-1] is None
    assert str(prof) == "(2, 2, [4,?])"


def test_lex_min():
    assert lex_min([(2, 3), (2, 2), (3, 0)]) == (2, 2)
    with pytest.raises(ValueError):
        lex_min([])
    with pytest.raises(ValueError):
        lex_min([(1,), (1, 2)])


def test_is_allowed():
    m = s2xs2()
    assert is_allowed(m, [(1, 1)])
    assert not is_allowed(m, [(1, 0)])        # square zero
    with pytest.raises(DimensionError):
        is_allowed(m, [(1, 1), (1, -1)])
    m = k3()
    v = [0] * 22
    v[2], v[3] = 1, 1
    w = [0] * 22
    w[4], w[5] = 1, 1
    assert is_allowed(m, [v, w, w]) is False  # not orthogonal


def test_not_found():
    with pytest.raises(NotFound):
        profile_search(cp2x2(), 0)
    with pytest.raises(NotFound):
        profile_search(k3(), 1)               # S + 2F lies outside radius 1


def test_candidates_sign_reps():
    cands = candidate_vectors(s2xs2(), 2)
    for v in cands:
        assert tuple(-x for x in v) not in cands


def test_reflection_invariance():
    m = cp2x2()
    prof = profile_search(m, 3, general=True)
    s = (1, 1, 1)
    moved = [reflect(m.form, s, v) for v in prof.witness]
    assert is_allowed(m, moved)


def test_round_trip():
    prof = profile_search(k3(), 2)
    assert Profile.from_dict(prof.to_dict()) == prof


def test_general_rank_limit():
    with pytest.raises(ValueError):
        candidate_vectors(k3(), 1, general=True)
