"""Nilpotent block-Jordan matrices, substrip bookkeeping and Weyr rearrangement.

A :class:`Partition` ``((p_1, q_1), ..., (p_t, q_t))`` describes

    J = J_{p_1}(0_{q_1}) (+) ... (+) J_{p_t}(0_{q_t}),

where ``J_p(0_q)`` is a ``p x p`` grid of ``q x q`` subblocks with identities
on the block superdiagonal.  Strip ``i`` (1-based) is the ``i``-th block
row/column of size ``p_i*q_i``; it is cut into ``p_i`` substrips of size
``q_i``.  Substrip ``alpha`` of strip ``i`` is written ``alpha,i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError, ShapeError
from .exactmat import CMatrix, block_diag, place_blocks


@dataclass(frozen=True, order=True)
class SubstripIndex:
    strip: int
    substrip: int

    def __str__(self) -> str:
        return f"{self.substrip},{self.strip}"

    def to_json(self) -> list[int]:
        return [self.strip, self.substrip]

    @classmethod
    def from_json(cls, obj) -> "SubstripIndex":
        strip, substrip = obj
        return cls(int(strip), int(substrip))


@dataclass(frozen=True)
class Partition:
    parts: tuple[tuple[int, int], ...]

    def __init__(self, parts: Iterable[Sequence[int]]):
        parts = tuple((int(p), int(q)) for p, q in parts)
        if not parts:
            raise PreconditionError("partition needs at least one part")
        for p, q in parts:
            if p < 1 or q < 1:
                raise PreconditionError(f"part ({p}, {q}) must have p, q >= 1")
        ps = [p for p, _ in parts]
        if len(set(ps)) != len(ps):
            raise PreconditionError(f"block sizes p_i must be pairwise distinct, got {ps}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the CLI syntax ``p1:q1,p2:q2,...``."""
        try:
            parts = [tuple(int(x) for x in item.split(":")) for item in text.split(",") if item.strip()]
        except ValueError:
            raise PreconditionError(f"bad partition syntax {text!r}; expected p1:q1,p2:q2,...") from None
        if any(len(pq) != 2 for pq in parts):
            raise PreconditionError(f"bad partition syntax {text!r}; expected p1:q1,p2:q2,...")
        return cls(parts)

    def to_json(self) -> dict:
        return {"parts": [[p, q] for p, q in self.parts]}

    @classmethod
    def from_json(cls, obj) -> "Partition":
        return cls(obj["parts"])

    def __str__(self) -> str:
        return ",".join(f"{p}:{q}" for p, q in self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.parts)

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(q for _, q in self.parts)

    @property
    def size(self) -> int:
        return sum(p * q for p, q in self.parts)

    @property
    def descending(self) -> bool:
        ps = self.p
        return all(a > b for a, b in zip(ps, ps[1:]))

    def canonical(self) -> "Partition":
        """Same blocks reordered so that ``p_1 > p_2 > ... > p_t``."""
        return Partition(sorted(self.parts, key=lambda pq: -pq[0]))

    def strip_offset(self, i: int) -> int:
        """0-based scalar offset of strip ``i`` (1-based)."""
        return sum(p * q for p, q in self.parts[: i - 1])

    def offset(self, idx: SubstripIndex) -> int:
        """0-based scalar offset of a substrip."""
        p, q = self.parts[idx.strip - 1]
        if not 1 <= idx.substrip <= p:
            raise ShapeError(f"substrip {idx} outside strip of {p} substrips")
        return self.strip_offset(idx.strip) + (idx.substrip - 1) * q

    def width(self, idx: SubstripIndex) -> int:
        return self.parts[idx.strip - 1][1]

    def substrips(self) -> list[SubstripIndex]:
        """All substrips in their natural (strip-major) order."""
        return [SubstripIndex(i, a) for i, (p, _) in enumerate(self.parts, 1) for a in range(1, p + 1)]

    def subblock(self, M: CMatrix, row: SubstripIndex, col: SubstripIndex) -> CMatrix:
        r, c = self.offset(row), self.offset(col)
        return M.submatrix(r, r + self.width(row), c, c + self.width(col))

    def check_square(self, M: CMatrix, what: str = "matrix") -> None:
        if M.shape != (self.size, self.size):
            raise ShapeError(f"{what} is {M.shape}, partition {self} needs {self.size}x{self.size}")


def build_block(p: int, q: int) -> CMatrix:
    """``J_p(0_q)``: identities ``I_q`` on the block superdiagonal of a ``p x p`` grid."""
    if p < 1 or q < 1:
        raise PreconditionError("build_block needs p, q >= 1")
    eye = CMatrix.identity(q)
    return place_blocks(p * q, p * q, [(k * q, (k + 1) * q, eye) for k in range(p - 1)])


def build_J(part: Partition) -> CMatrix:
    return block_diag(*(build_block(p, q) for p, q in part.parts))


def weyr_order(part: Partition) -> list[SubstripIndex]:
    """Substrips sorted lexicographically by ``(substrip, strip)``."""
    return sorted(part.substrips(), key=lambda s: (s.substrip, s.strip))


def _scalar_index(part: Partition, order: Sequence[SubstripIndex]) -> list[int]:
    idx = []
    for s in order:
        off = part.offset(s)
        idx.extend(range(off, off + part.width(s)))
    return idx


def weyr_permutation(part: Partition) -> tuple[list[SubstripIndex], CMatrix]:
    """The ``#`` rearrangement as a substrip order and as a 0/1 matrix ``P``.

    ``P`` satisfies ``M# = P^-1 M P``; column ``k`` of ``P`` is the unit vector
    of the scalar index that lands in position ``k``.
    """
    order = weyr_order(part)
    idx = _scalar_index(part, order)
    n = part.size
    re = [0] * (n * n)
    for k, src in enumerate(idx):
        re[src * n + k] = 1
    return order, CMatrix(n, n, re, [0] * (n * n))


def to_weyr(M: CMatrix, part: Partition) -> CMatrix:
    part.check_square(M)
    idx = _scalar_index(part, weyr_order(part))
    return M.take(idx, idx)


def from_weyr(Mw: CMatrix, part: Partition) -> CMatrix:
    """Inverse of :func:`to_weyr`."""
    part.check_square(Mw)
    idx = _scalar_index(part, weyr_order(part))
    inv = [0] * len(idx)
    for k, src in enumerate(idx):
        inv[src] = k
    return Mw.take(inv, inv)


def weyr_block_sizes(part: Partition) -> list[int]:
    """Sizes ``w_alpha = sum(q_i for p_i >= alpha)`` of the Weyr blocks of ``J#``."""
    return [sum(q for p, q in part.parts if p >= a) for a in range(1, max(part.p) + 1)]


def is_nilpotent_weyr(Jw: CMatrix, part: Partition) -> bool:
    """Structural check that ``Jw`` is the nilpotent Weyr matrix of ``part``.

    Requires weakly decreasing Weyr block sizes and, in the Weyr block grid,
    ``[I; 0]`` on the block superdiagonal and zeros elsewhere.
    """
    w = weyr_block_sizes(part)
    if any(a < b for a, b in zip(w, w[1:])):
        return False
    part.check_square(Jw)
    blocks = []
    r = 0
    for k, wk in enumerate(w):
        if k + 1 < len(w):
            nxt = w[k + 1]
            blocks.append((r, r + wk, CMatrix.identity(nxt)))
        r += wk
    expected = place_blocks(Jw.rows, Jw.cols, [(r0, c0, B) for r0, c0, B in blocks])
    return Jw == expected


def is_nilpotent(M: CMatrix, index: int) -> bool:
    """``M**index == 0`` and ``M**(index-1) != 0``."""
    if index < 1:
        return False
    return (M**index).is_zero() and not (M ** (index - 1)).is_zero()


def substrip_upper_triangular(M: CMatrix, part: Partition, order: Sequence[SubstripIndex]) -> bool:
    """Whether ``M`` (already permuted into ``order``) has zero subblocks below the diagonal."""
    offs = []
    r = 0
    for s in order:
        offs.append((r, part.width(s)))
        r += part.width(s)
    for a, (ra, wa) in enumerate(offs):
        for b in range(a):
            rb, wb = offs[b]
            if not M.submatrix(ra, ra + wa, rb, rb + wb).is_zero():
                return False
    return True
