import pytest

from mingenus.catalog import cp2x2, cp2x3
from mingenus.errors import DimensionError, NonTermination, WrongRoutine
from mingenus.lattice import is_characteristic, square
from mingenus.reduction import (Move, ReductionTrace, cp2k_form, normalize, orbit_bfs, reduce,
                                reduce_negative_rank3, reduce_negative_rank4, reduce_nonnegative)

from oracles import REDUCE_NEGATIVE, REDUCE_NONNEGATIVE


def test_normalize():
    assert normalize((-3, 1, -2))[0] == (3, 2, 1)
    assert normalize((0, 0, 0))[0] == (0, 0, 0)
    assert normalize((1, -1, 0))[0] == (1, 1, 0)
    end, trace = normalize((-3, 1, -2))
    assert trace.replay() == end and trace.is_valid()


@pytest.mark.parametrize("start,end", sorted(REDUCE_NONNEGATIVE.items()))
def test_reduce_nonnegative_oracle(start, end):
    got, trace = reduce_nonnegative(start)
    assert got == end
    assert trace.is_valid()
    model = cp2x2() if len(start) == 3 else cp2x3()
    assert end in orbit_bfs(model, start, max(map(abs, start)) or 1)


def test_reduce_nonnegative_rejects_negative():
    with pytest.raises(WrongRoutine):
        reduce_nonnegative((0, 1, 0))


def test_trace_shape_543():
    _, trace = reduce_nonnegative((5, 4, 3))
    assert [m.kind for m in trace.steps] == ["reflect", "flip", "sort"]
    assert trace.states()[1] == (1, 0, -1)


def test_identity_trace():
    _, trace = reduce_nonnegative((3, 1, 1))
    assert trace.steps == []


@pytest.mark.parametrize("start,end", sorted(REDUCE_NEGATIVE.items()))
def test_reduce_negative_oracle(start, end):
    got, trace = reduce_negative_rank3(start)
    assert got == end
    assert trace.is_valid()
    assert 2 * got[0] >= got[1] + got[2]
    assert square(cp2k_form(3), got) == square(cp2k_form(3), start)


def test_reduce_negative_cap():
    with pytest.raises(NonTermination) as info:
        reduce_negative_rank3((0, 7, 0), cap=0)
    assert info.value.trace is not None


def test_negative_rank3_terminates_on_box():
    form = cp2k_form(3)
    for a in range(0, 16):
        for b1 in range(0, 16):
            for b2 in range(0, b1 + 1):
                x = (a, b1, b2)
                if square(form, x) < 0:
                    end, trace = reduce_negative_rank3(x)
                    assert 2 * end[0] >= end[1] + end[2]
                    assert trace.is_valid()


def test_negative_rank4_descent():
    for x in [(0, 1, 0, 0), (1, 2, 1, 1), (3, 3, 3, 3), (2, 5, 1, 0)]:
        end, trace = reduce_negative_rank4(x)
        assert trace.is_valid()
        assert square(cp2k_form(4), end) == square(cp2k_form(4), x)
        assert end[0] <= abs(x[0])


def test_dispatch_and_dimension():
    assert reduce((5, 4, 3))[0] == (1, 1, 0)
    assert reduce((1, 3, 1))[0] == (5, 5, 3)
    with pytest.raises(DimensionError):
        reduce((1, 2))


def test_trace_text_round_trip():
    _, trace = reduce_nonnegative((7, 5, 4))
    text = trace.to_text()
    again = ReductionTrace.from_text(text)
    assert again.steps == trace.steps and again.end == trace.end
    assert again.to_text() == text


def test_trace_text_rejects_bad_replay():
    with pytest.raises(ValueError):
        ReductionTrace.from_text("start 5 4 3\nreflect 1 1 1\nend 5 4 3\n")


def test_invalid_moves_detected():
    bad = ReductionTrace((1, 0, 0), [Move("reflect", (1, 1, 0))], (1, 0, 0))
    assert not bad.is_valid()
    swap_a = ReductionTrace((1, 2, 0), [Move("sort", (1, 0, 2))], (2, 1, 0))
    assert not swap_a.is_valid()


def test_orbit_examples():
    assert (1, 1, 0) in orbit_bfs(cp2x2(), (5, 4, 3), 5)
    assert orbit_bfs(cp2x2(), (0, 0, 0), 3) == ((0, 0, 0),)
    assert (-1, -1, -1) in orbit_bfs(cp2x2(), (1, 1, 1), 1)
    with pytest.raises(ValueError):
        orbit_bfs(cp2x2(), (5, 4, 3), 4)


def test_orbit_preserves_invariants():
    form = cp2k_form(3)
    for start in [(5, 4, 3), (1, 3, 1), (3, 1, 1), (2, 2, 1)]:
        orbit = orbit_bfs(cp2x2(), start, 8)
        assert orbit == tuple(sorted(orbit))
        sq = square(form, start)
        ch = is_characteristic(form, start)
        assert all(square(form, x) == sq and is_characteristic(form, x) == ch for x in orbit)
