"""Solutions of ``conj(S) J = J S`` for a nilpotent block-Jordan ``J``.

Block ``S_ij`` (``p_i q_i x p_j q_j``) is free only along ``min(p_i, p_j)``
generalized diagonals of ``q_i x q_j`` subblocks.  Diagonal ``k`` starts in
the first subblock row at subblock column ``max(p_j - p_i, 0) + 1 + k``
(right-aligned when ``p_i <= p_j``, top-aligned otherwise) and carries
``C, conj(C), C, ...`` going down.  Everything else is zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from .errors import PreconditionError, ShapeError
from .exactmat import (
    CMatrix,
    GaussianRational,
    LinearEquation,
    RealSolution,
    Term,
    is_nonsingular,
    place_blocks,
    solve_real_linear,
)
from .nilstruct import Partition, SubstripIndex, build_J, substrip_upper_triangular, to_weyr, weyr_order


@dataclass(frozen=True)
class CommutantParams:
    """Free subblocks ``C_ij^(k)``; ``blocks[(i, j)][k]`` is ``q_i x q_j`` (1-based strips)."""

    blocks: Mapping[tuple[int, int], tuple[CMatrix, ...]]

    def __getitem__(self, key: tuple[int, int]) -> tuple[CMatrix, ...]:
        return self.blocks[key]

    def validate(self, part: Partition) -> None:
        for i, (pi, qi) in enumerate(part.parts, 1):
            for j, (pj, qj) in enumerate(part.parts, 1):
                blocks = self.blocks.get((i, j))
                if blocks is None:
                    raise ShapeError(f"missing parameters for strip pair ({i}, {j})")
                if len(blocks) != min(pi, pj):
                    raise ShapeError(f"strip pair ({i}, {j}) needs {min(pi, pj)} subblocks, got {len(blocks)}")
                for C in blocks:
                    if C.shape != (qi, qj):
                        raise ShapeError(f"C_{i}{j} must be {qi}x{qj}, got {C.shape}")
        extra = set(self.blocks) - {(i, j) for i in range(1, part.t + 1) for j in range(1, part.t + 1)}
        if extra:
            raise ShapeError(f"parameters for unknown strip pairs {sorted(extra)}")

    def diagonal(self) -> list[CMatrix]:
        """The leading diagonal parameters ``C_11, ..., C_tt``."""
        t = max(i for i, _ in self.blocks)
        return [self.blocks[(i, i)][0] for i in range(1, t + 1)]


def template_positions(part: Partition, i: int, j: int, k: int) -> Iterator[tuple[SubstripIndex, SubstripIndex, bool]]:
    """Where ``C_ij^(k)`` is copied: ``(row substrip, col substrip, conjugated)``."""
    pi, pj = part.parts[i - 1][0], part.parts[j - 1][0]
    start = max(pj - pi, 0) + 1 + k
    for s in range(min(pi, pj) - k):
        yield SubstripIndex(i, 1 + s), SubstripIndex(j, start + s), bool(s % 2)


def synthesize_S(part: Partition, params: CommutantParams) -> CMatrix:
    params.validate(part)
    placed = []
    for i in range(1, part.t + 1):
        for j in range(1, part.t + 1):
            for k, C in enumerate(params[(i, j)]):
                Cbar = C.conj()
                for row, col, flip in template_positions(part, i, j, k):
                    placed.append((part.offset(row), part.offset(col), Cbar if flip else C))
    return place_blocks(part.size, part.size, placed)


def extract_params(part: Partition, S: CMatrix) -> CommutantParams:
    """Read each ``C_ij^(k)`` from the first row of its template diagonal.

    No membership check is made; round-trip through :func:`synthesize_S` to
    confirm ``S`` has the template form.
    """
    part.check_square(S)
    blocks = {}
    for i in range(1, part.t + 1):
        for j in range(1, part.t + 1):
            pi, pj = part.parts[i - 1][0], part.parts[j - 1][0]
            out = []
            for k in range(min(pi, pj)):
                row, col, _ = next(template_positions(part, i, j, k))
                out.append(part.subblock(S, row, col))
            blocks[(i, j)] = tuple(out)
    return CommutantParams(blocks)


def check_semicommute(J: CMatrix, S: CMatrix) -> bool:
    """``conj(S) J == J S``."""
    if not (J.is_square and S.shape == J.shape):
        raise ShapeError(f"need equal square shapes, got {J.shape} and {S.shape}")
    return S.conj() @ J == J @ S


def commutant_dim(part: Partition) -> tuple[int, int]:
    """``(complex_dim, real_dim)`` of the solution space, counted from the template."""
    c = sum(min(pi, pj) * qi * qj for pi, qi in part.parts for pj, qj in part.parts)
    return c, 2 * c


def commutant_oracle(part: Partition) -> RealSolution:
    """Solve ``conj(S) J - J S = 0`` directly in realified coordinates."""
    J = build_J(part)
    n = part.size
    return solve_real_linear(n, n, [LinearEquation((Term(None, J, conj=True), Term(-J, None)))])


def is_nonsingular_structured(part: Partition, params: CommutantParams) -> bool:
    """Nonsingularity read off the diagonal parameters ``C_ii`` alone."""
    params.validate(part)
    return all(is_nonsingular(C) for C in params.diagonal())


def weyr_triangularity_check(part: Partition, params: CommutantParams) -> bool:
    """Whether ``S#`` is upper triangular at substrip level; needs ``p_1 > ... > p_t``."""
    if not part.descending:
        raise PreconditionError(f"partition {part} is not in descending order; use part.canonical()")
    S = synthesize_S(part, params)
    return substrip_upper_triangular(to_weyr(S, part), part, weyr_order(part))


def _random_scalar(rng: random.Random, bound: int = 3) -> GaussianRational:
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
    return GaussianRational(re, im)


def random_matrix(rng: random.Random, rows: int, cols: Optional[int] = None, bound: int = 3) -> CMatrix:
    cols = rows if cols is None else cols
    return CMatrix._from_scalars(rows, cols, [_random_scalar(rng, bound) for _ in range(rows * cols)])


def random_nonsingular(rng: random.Random, n: int, bound: int = 3) -> CMatrix:
    while True:
        A = random_matrix(rng, n, n, bound)
        if is_nonsingular(A):
            return A


def sample_commutant(part: Partition, seed, nonsingular: bool = False) -> CommutantParams:
    """Deterministic random parameters for a given seed.

    With ``nonsingular=True`` every ``C_ii`` is redrawn until nonsingular.
    """
    rng = random.Random(seed)
    blocks = {}
    for i, (pi, qi) in enumerate(part.parts, 1):
        for j, (pj, qj) in enumerate(part.parts, 1):
            out = []
            for k in range(min(pi, pj)):
                if nonsingular and i == j and k == 0:
                    out.append(random_nonsingular(rng, qi))
                else:
                    out.append(random_matrix(rng, qi, qj))
            blocks[(i, j)] = tuple(out)
    return CommutantParams(blocks)


def zero_params(part: Partition) -> dict:
    return {
        (i, j): [CMatrix.zeros(qi, qj) for _ in range(min(pi, pj))]
        for i, (pi, qi) in enumerate(part.parts, 1)
        for j, (pj, qj) in enumerate(part.parts, 1)
    }


def commutant_basis(part: Partition) -> list[tuple[dict, CMatrix]]:
    """A real basis: one parameter entry set to ``1`` or ``i``, the rest zero.

    Each item is ``(label, S)`` with ``label`` naming strip pair, diagonal
    ``k``, entry ``(r, c)`` (0-based inside the subblock) and unit.
    """
    out = []
    units = (("1", GaussianRational(1)), ("i", GaussianRational(0, 1)))
    for i, (pi, qi) in enumerate(part.parts, 1):
        for j, (pj, qj) in enumerate(part.parts, 1):
            for k in range(min(pi, pj)):
                for r in range(qi):
                    for c in range(qj):
                        for uname, u in units:
                            blocks = zero_params(part)
                            blocks[(i, j)][k] = place_blocks(qi, qj, [(r, c, CMatrix.scalar(u))])
                            params = CommutantParams({key: tuple(v) for key, v in blocks.items()})
                            label = {"strips": [i, j], "k": k, "entry": [r, c], "unit": uname}
                            out.append((label, synthesize_S(part, params)))
    return out
