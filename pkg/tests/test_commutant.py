from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consim.commutant import (
    CommutantParams,
    check_semicommute,
    commutant_basis,
    commutant_dim,
    commutant_oracle,
    extract_params,
    is_nonsingular_structured,
    sample_commutant,
    synthesize_S,
    template_positions,
    weyr_triangularity_check,
)
from consim.errors import PreconditionError, ShapeError
from consim.exactmat import CMatrix, det, is_nonsingular
from consim.nilstruct import Partition, build_J, to_weyr
from tests.helpers import displayed_example, m
from tests.test_nilstruct import partitions


def test_zero_J_leaves_S_free():
    C = m([[1, 2j], [3, 4]])
    part = Partition([(1, 2)])
    assert synthesize_S(part, CommutantParams({(1, 1): (C,)})) == C


def test_two_by_two_by_hand():
    # conj(S) J = J S with J = J_2(0_1) forces S = [[c, c'], [0, conj(c)]]
    c, c2 = 1 + 2j, 3 - 1j
    S = synthesize_S(Partition([(2, 1)]), CommutantParams({(1, 1): (m([[c]]), m([[c2]]))}))
    assert S == m([[c, c2], [0, c.conjugate()]])


def test_displayed_example_pattern(rng):
    part = Partition([(4, 2), (2, 1)])
    params, S_drawn, _ = displayed_example(rng)
    assert synthesize_S(part, params) == S_drawn


@pytest.mark.parametrize(
    "J, S, expected",
    [
        (m([[0, 1], [0, 0]]), m([[1, 0], [0, -1]]), False),
        (m([[0, 1], [0, 0]]), m([[1j, 0], [0, -1j]]), True),
        (m([[0, 1], [0, 0]]), CMatrix.identity(2), True),
        (CMatrix.zeros(2), m([[1j, 5], [2, 3j]]), True),
    ],
)
def test_check_semicommute(J, S, expected):
    assert check_semicommute(J, S) is expected


def test_check_semicommute_shape_error():
    with pytest.raises(ShapeError):
        check_semicommute(CMatrix.zeros(2), CMatrix.zeros(3))


@pytest.mark.parametrize(
    "parts, complex_dim",
    [([(1, 3)], 9), ([(4, 1), (2, 1)], 10), ([(3, 2), (2, 1)], 22)],
)
def test_commutant_dim_examples(parts, complex_dim):
    part = Partition(parts)
    assert commutant_dim(part) == (complex_dim, 2 * complex_dim)
    assert commutant_oracle(part).real_dim == 2 * complex_dim


def test_structured_nonsingularity_examples():
    part = Partition([(2, 1)])
    p = CommutantParams({(1, 1): (m([[2]]), m([[999]]))})
    assert is_nonsingular_structured(part, p) and is_nonsingular(synthesize_S(part, p))
    part = Partition([(3, 1), (1, 2)])
    p = sample_commutant(part, 7)
    blocks = dict(p.blocks)
    blocks[(1, 1)] = (CMatrix.identity(1),) + blocks[(1, 1)][1:]
    blocks[(2, 2)] = (m([[1, 2], [2, 4]]),)
    p = CommutantParams(blocks)
    assert not is_nonsingular_structured(part, p)
    assert not det(synthesize_S(part, p))


def test_triangularity_needs_descending_partition():
    part = Partition([(2, 1), (3, 1)])
    with pytest.raises(PreconditionError):
        weyr_triangularity_check(part, sample_commutant(part, 0))
    assert weyr_triangularity_check(Partition([(1, 3)]), sample_commutant(Partition([(1, 3)]), 0))
    part = Partition([(5, 1), (3, 2), (2, 1)])
    assert all(weyr_triangularity_check(part, sample_commutant(part, s)) for s in range(5))


def test_sampling_is_deterministic():
    part = Partition([(3, 2), (1, 1)])
    assert sample_commutant(part, "x") == sample_commutant(part, "x")
    assert sample_commutant(part, 1) != sample_commutant(part, 2)
    assert is_nonsingular_structured(part, sample_commutant(part, 3, nonsingular=True))


def test_params_validation():
    part = Partition([(2, 1)])
    with pytest.raises(ShapeError):
        synthesize_S(part, CommutantParams({(1, 1): (m([[1]]),)}))
    with pytest.raises(ShapeError):
        synthesize_S(part, CommutantParams({(1, 1): (m([[1, 2]]), m([[1]]))}))


def test_diagonal_template_alternates_conjugates():
    pos = list(template_positions(Partition([(4, 1), (3, 1)]), 1, 1, 0))
    assert [(r.substrip, c.substrip) for r, c, _ in pos] == [(1, 1), (2, 2), (3, 3), (4, 4)]
    assert [flip for *_, flip in pos] == [False, True, False, True]
    # a taller strip i against a shorter j is top-aligned, a shorter one right-aligned
    assert [(r.substrip, c.substrip) for r, c, _ in template_positions(Partition([(4, 1), (3, 1)]), 1, 2, 0)] == [(1, 1), (2, 2), (3, 3)]
    assert [(r.substrip, c.substrip) for r, c, _ in template_positions(Partition([(4, 1), (3, 1)]), 2, 1, 1)] == [(1, 3), (2, 4)]


@settings(max_examples=25, deadline=None)
@given(partitions(), st.integers(0, 10**6))
def test_synthesized_S_semicommutes_and_round_trips(part, seed):
    params = sample_commutant(part, seed)
    S = synthesize_S(part, params)
    assert check_semicommute(build_J(part), S)
    assert extract_params(part, S) == params


@settings(max_examples=25, deadline=None)
@given(partitions(), st.integers(0, 10**6))
def test_nonzero_subblocks_sit_on_or_above_substrip_diagonal(part, seed):
    S = synthesize_S(part, sample_commutant(part, seed))
    for row in part.substrips():
        for col in part.substrips():
            pi, pj = part.parts[row.strip - 1][0], part.parts[col.strip - 1][0]
            shift = max(pj - pi, 0)
            if col.substrip - shift < row.substrip:
                assert part.subblock(S, row, col).is_zero()


@settings(max_examples=25, deadline=None)
@given(partitions(), st.integers(0, 10**6), st.booleans())
def test_structured_nonsingularity_matches_determinant(part, seed, force):
    params = sample_commutant(part, seed, nonsingular=force)
    assert is_nonsingular_structured(part, params) == bool(det(synthesize_S(part, params)))


@settings(max_examples=25, deadline=None)
@given(partitions(), st.integers(0, 10**6))
def test_weyr_triangularity(part, seed):
    part = part.canonical()
    assert weyr_triangularity_check(part, sample_commutant(part, seed))


def test_basis_elements_are_members():
    part = Partition([(3, 1), (1, 2)])
    basis = commutant_basis(part)
    assert len(basis) == commutant_dim(part)[1]
    J = build_J(part)
    assert all(check_semicommute(J, S) for _, S in basis)
    label, _ = basis[1]
    assert label == {"strips": [1, 1], "k": 0, "entry": [0, 0], "unit": "i"}


def test_weyr_of_displayed_S(rng):
    part = Partition([(4, 2), (2, 1)])
    params, _, S_weyr = displayed_example(rng)
    assert to_weyr(synthesize_S(part, params), part) == S_weyr


def test_random_seed_sources_do_not_share_state():
    part = Partition([(2, 2)])
    random.seed(0)
    a = sample_commutant(part, 5)
    random.seed(1)
    assert sample_commutant(part, 5) == a
