from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consim.biquiver import (
    DASHED,
    FULL,
    Arrow,
    Biquiver,
    Representation,
    arrow_relations,
    base_change,
    equiv_check,
    random_base_change,
    random_biquiver,
    random_rep,
    six_arrow_biquiver,
)
from consim.errors import ShapeError, SingularMatrixError
from consim.exactmat import CMatrix, is_nonsingular
from tests.helpers import m

seeds = st.integers(0, 10**6)


def loop_rep(kind, R):
    bq = Biquiver(1, (Arrow("g", 1, 1, kind),))
    return Representation(bq, (R.rows,), {"g": R})


def test_biquiver_validation():
    with pytest.raises(ShapeError):
        Biquiver(0)
    with pytest.raises(ShapeError):
        Biquiver(2, (Arrow("a", 1, 3),))
    with pytest.raises(ShapeError):
        Biquiver(2, (Arrow("a", 1, 2), Arrow("a", 2, 1)))
    with pytest.raises(ShapeError):
        Biquiver(1, (Arrow("a", 1, 1, "dotted"),))


def test_incidence_counts_loops_twice():
    bq = six_arrow_biquiver()
    assert [bq.incidence(v) for v in (1, 2, 3)] == [2, 5, 5]
    assert bq.arrow("E").dashed and not bq.arrow("D").dashed


def test_representation_shapes():
    bq = Biquiver(2, (Arrow("a", 1, 2, FULL),))
    Representation(bq, (3, 2), {"a": CMatrix.zeros(2, 3)})
    with pytest.raises(ShapeError):
        Representation(bq, (3, 2), {"a": CMatrix.zeros(3, 2)})
    with pytest.raises(ShapeError):
        Representation(bq, (3, 2), {})
    with pytest.raises(ShapeError):
        Representation(bq, (0, 2), {"a": CMatrix.zeros(2, 0)})


def test_dashed_loop_by_hand():
    rep = loop_rep(DASHED, m([[1]]))
    assert base_change(rep, [m([[1j]])]).mats["g"] == m([[-1]])
    # the same base change fixes a full loop
    assert base_change(loop_rep(FULL, m([[1]])), [m([[1j]])]).mats["g"] == m([[1]])


def test_identity_base_change_and_equiv_examples():
    bq = six_arrow_biquiver()
    rep = random_rep(bq, (1, 2, 2), 4)
    ident = [CMatrix.identity(d) for d in rep.dims]
    assert base_change(rep, ident) == rep
    assert equiv_check(rep, rep, ident)
    S = random_base_change(rep.dims, 9)
    rep2 = base_change(rep, S)
    assert equiv_check(rep, rep2, S)
    mats = dict(rep2.mats)
    mats["F"] = mats["F"] + CMatrix.identity(2)
    assert not equiv_check(rep, Representation(bq, rep.dims, mats), S)


def test_base_change_errors():
    rep = loop_rep(FULL, m([[1]]))
    with pytest.raises(SingularMatrixError):
        base_change(rep, [m([[0]])])
    with pytest.raises(ShapeError):
        base_change(rep, [CMatrix.identity(2)])
    with pytest.raises(ShapeError):
        base_change(rep, [])


def test_random_generators_are_deterministic():
    bq = six_arrow_biquiver()
    assert random_rep(bq, (1, 2, 1), 3) == random_rep(bq, (1, 2, 1), 3)
    assert random_base_change((2, 3), 5) == random_base_change((2, 3), 5)
    assert all(is_nonsingular(S) for S in random_base_change((2, 3, 1), 5))
    assert random_biquiver(8) == random_biquiver(8)


def test_json_round_trip():
    bq = six_arrow_biquiver()
    rep = random_rep(bq, (2, 1, 2), 1)
    bq2 = Biquiver.from_json(bq.to_json())
    assert bq2 == bq
    assert Representation.from_json(bq2, rep.to_json()) == rep


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_base_change_is_an_action(seed):
    rng = random.Random(seed)
    bq = six_arrow_biquiver()
    dims = tuple(rng.randint(1, 2) for _ in range(3))
    rep = random_rep(bq, dims, rng.random())
    S, T = random_base_change(dims, rng.random()), random_base_change(dims, rng.random())
    once = base_change(rep, [Si @ Ti for Si, Ti in zip(S, T)])
    assert base_change(base_change(rep, S), T) == once


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_arrow_relations_hold_exactly_for_base_changes(seed):
    rng = random.Random(seed)
    bq = random_biquiver(rng.random())
    dims = tuple(rng.randint(1, 2) for _ in range(bq.vertex_count))
    rep = random_rep(bq, dims, rng.random())
    S = random_base_change(dims, rng.random())
    rep2 = base_change(rep, S)
    assert all(arrow_relations(rep, rep2, S).values())
    assert equiv_check(rep, rep, [CMatrix.identity(d) for d in dims])
