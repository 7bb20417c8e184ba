"""Semilinear maps in coordinates, and consimilarity of matrix pairs.

The matrix ``A`` of a semilinear map in fixed bases acts on coordinates by
``[Au] = conj(A [u])``.  Composing two semilinear maps gives the linear map
with matrix ``conj(A) B``, and a change of bases acts as
``conj(S_cod)^-1 A S_dom``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import ShapeError, SingularMatrixError
from .exactmat import CMatrix, GaussianRational, charpoly, inverse, rank, scalar_to_json


@dataclass(frozen=True)
class SemilinearMatrix:
    mat: CMatrix

    @property
    def domain_dim(self) -> int:
        return self.mat.cols

    @property
    def codomain_dim(self) -> int:
        return self.mat.rows


@dataclass(frozen=True)
class MatrixPair:
    first: CMatrix
    second: CMatrix

    def __post_init__(self):
        if not (self.first.is_square and self.first.shape == self.second.shape):
            raise ShapeError(f"pair needs two square matrices of one size, got {self.first.shape}, {self.second.shape}")

    @property
    def n(self) -> int:
        return self.first.rows


def _as_matrix(A) -> CMatrix:
    return A.mat if isinstance(A, SemilinearMatrix) else A


def _column(u: Sequence) -> CMatrix:
    return CMatrix.from_rows([[z] for z in u], cols=1)


def apply(A, u: Sequence) -> list[GaussianRational]:
    """Coordinates of the image of ``u``: ``conj(A u)``."""
    A = _as_matrix(A)
    if len(u) != A.cols:
        raise ShapeError(f"vector of length {len(u)} for a map with domain dimension {A.cols}")
    v = (A @ _column(u)).conj()
    return [v[i, 0] for i in range(v.rows)]


def apply_linear(A: CMatrix, u: Sequence) -> list[GaussianRational]:
    if len(u) != A.cols:
        raise ShapeError(f"vector of length {len(u)} for a map with domain dimension {A.cols}")
    v = A @ _column(u)
    return [v[i, 0] for i in range(v.rows)]


def compose(A, B) -> CMatrix:
    """Matrix of the linear map ``A o B`` for semilinear ``A`` and ``B``."""
    A, B = _as_matrix(A), _as_matrix(B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot compose {A.shape} after {B.shape}")
    return A.conj() @ B


def change_of_basis(A, S_dom: CMatrix, S_cod: CMatrix) -> SemilinearMatrix:
    """Matrix in new bases: ``conj(S_cod)^-1 A S_dom``."""
    A = _as_matrix(A)
    if S_dom.shape != (A.cols, A.cols) or S_cod.shape != (A.rows, A.rows):
        raise ShapeError(f"transition matrices {S_dom.shape}, {S_cod.shape} do not fit {A.shape}")
    return SemilinearMatrix(inverse(S_cod.conj()) @ A @ S_dom)


def consim_transform(P: MatrixPair, S: CMatrix) -> MatrixPair:
    """``conj(S)^-1 (A_1, A_2) S``."""
    if S.shape != (P.n, P.n):
        raise ShapeError(f"S is {S.shape}, pair is {P.n}x{P.n}")
    try:
        Sbar_inv = inverse(S.conj())
    except SingularMatrixError:
        raise SingularMatrixError("consimilarity transform needs a nonsingular S") from None
    return MatrixPair(Sbar_inv @ P.first @ S, Sbar_inv @ P.second @ S)


def _words(depth: int):
    letters = list(product((1, 2), (1, 2)))
    for length in range(1, depth + 1):
        yield from product(letters, repeat=length)


def word_name(word) -> str:
    return "".join(f"conj(A{a})A{b}" for a, b in word)


def consim_invariants(P: MatrixPair, depth: int = 2) -> dict:
    """Profile of similarity invariants of the alternating words ``conj(A_a) A_b ...``.

    Under ``A -> conj(S)^-1 A S`` each factor ``conj(A_a) A_b`` becomes
    ``S^-1 conj(A_a) A_b S``, so characteristic polynomials and the ranks of
    powers of every word are unchanged.  Equal profiles are necessary, not
    sufficient, for consimilarity.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    mats = {1: P.first, 2: P.second}
    factors = {(a, b): mats[a].conj() @ mats[b] for a in (1, 2) for b in (1, 2)}
    n = P.n
    words = {}
    for word in _words(depth):
        W = CMatrix.identity(n)
        for letter in word:
            W = W @ factors[letter]
        ranks = []
        Wk = W
        for _ in range(n):
            ranks.append(rank(Wk))
            Wk = Wk @ W
        words[word_name(word)] = {"charpoly": [scalar_to_json(c) for c in charpoly(W)], "ranks": ranks}
    return {"depth": depth, "rank_first": rank(P.first), "rank_second": rank(P.second), "words": words}
