"""Biquivers (full and dashed arrows) and their representations.

A full arrow ``i -> j`` carries a linear map and a dashed arrow ``i --> j`` a
semilinear one.  Matrices are stored ``dims[j] x dims[i]`` (codomain rows).
Changing bases by ``S_1, ..., S_t`` acts as ``S_j^-1 R S_i`` on full arrows
and ``conj(S_j)^-1 R S_i`` on dashed arrows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .commutant import random_matrix, random_nonsingular
from .errors import ShapeError, SingularMatrixError
from .exactmat import CMatrix, inverse, matrix_from_json, matrix_to_json

FULL = "full"
DASHED = "dashed"


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int
    kind: str = FULL

    @property
    def dashed(self) -> bool:
        return self.kind == DASHED

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Biquiver:
    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.vertex_count < 1:
            raise ShapeError("a biquiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if a.id in seen:
                raise ShapeError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            if a.kind not in (FULL, DASHED):
                raise ShapeError(f"arrow {a.id!r} has unknown kind {a.kind!r}")
            for v in (a.source, a.target):
                if not 1 <= v <= self.vertex_count:
                    raise ShapeError(f"arrow {a.id!r} touches vertex {v} outside 1..{self.vertex_count}")

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def incidence(self, vertex: int) -> int:
        """Arrows leaving or entering ``vertex``, loops counted twice."""
        return sum((a.source == vertex) + (a.target == vertex) for a in self.arrows)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "arrows": [{"id": a.id, "source": a.source, "target": a.target, "kind": a.kind} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, obj) -> "Biquiver":
        arrows = [Arrow(str(a["id"]), int(a["source"]), int(a["target"]), a.get("kind", FULL)) for a in obj["arrows"]]
        return cls(int(obj["vertices"]), tuple(arrows))


@dataclass(frozen=True)
class Representation:
    quiver: Biquiver
    dims: tuple[int, ...]
    mats: Mapping[str, CMatrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "mats", dict(self.mats))
        if len(self.dims) != self.quiver.vertex_count:
            raise ShapeError(f"{len(self.dims)} dimensions for {self.quiver.vertex_count} vertices")
        if any(d < 1 for d in self.dims):
            raise ShapeError(f"vertex dimensions must be positive, got {self.dims}")
        ids = {a.id for a in self.quiver.arrows}
        if set(self.mats) != ids:
            raise ShapeError(f"matrices given for {sorted(self.mats)}, arrows are {sorted(ids)}")
        for a in self.quiver.arrows:
            want = (self.dims[a.target - 1], self.dims[a.source - 1])
            if self.mats[a.id].shape != want:
                raise ShapeError(f"arrow {a.id!r}: matrix {self.mats[a.id].shape}, expected {want}")

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims and self.mats == other.mats

    def __hash__(self):
        return hash((self.quiver, self.dims, tuple(sorted(self.mats.items()))))

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "mats": {a.id: matrix_to_json(self.mats[a.id]) for a in self.quiver.arrows}}

    @classmethod
    def from_json(cls, quiver: Biquiver, obj) -> "Representation":
        return cls(quiver, tuple(obj["dims"]), {k: matrix_from_json(v) for k, v in obj["mats"].items()})


def _check_witnesses(rep: Representation, S: Sequence[CMatrix]) -> None:
    if len(S) != len(rep.dims):
        raise ShapeError(f"{len(S)} base-change matrices for {len(rep.dims)} vertices")
    for i, (Si, d) in enumerate(zip(S, rep.dims), 1):
        if Si.shape != (d, d):
            raise ShapeError(f"S_{i} is {Si.shape}, vertex {i} has dimension {d}")


def base_change(rep: Representation, S: Sequence[CMatrix]) -> Representation:
    _check_witnesses(rep, S)
    inv, inv_bar = {}, {}
    for i, Si in enumerate(S, 1):
        try:
            inv[i] = inverse(Si)
        except SingularMatrixError:
            raise SingularMatrixError(f"base-change matrix S_{i} is singular") from None
        inv_bar[i] = inv[i].conj()
    mats = {}
    for a in rep.quiver.arrows:
        left = inv_bar[a.target] if a.dashed else inv[a.target]
        mats[a.id] = left @ rep.mats[a.id] @ S[a.source - 1]
    return Representation(rep.quiver, rep.dims, mats)


def equiv_check(rep: Representation, rep2: Representation, S: Sequence[CMatrix]) -> bool:
    """Whether ``S`` carries ``rep`` onto ``rep2``."""
    return base_change(rep, S) == rep2


def arrow_relations(rep: Representation, rep2: Representation, S: Sequence[CMatrix]) -> dict[str, bool]:
    """Per arrow, the inverse-free form ``R S_i == S_j R'`` (``conj(S_j)`` if dashed)."""
    _check_witnesses(rep, S)
    out = {}
    for a in rep.quiver.arrows:
        Sj = S[a.target - 1]
        out[a.id] = rep.mats[a.id] @ S[a.source - 1] == (Sj.conj() if a.dashed else Sj) @ rep2.mats[a.id]
    return out


def random_rep(bq: Biquiver, dims: Sequence[int], seed) -> Representation:
    rng = random.Random(seed)
    mats = {a.id: random_matrix(rng, dims[a.target - 1], dims[a.source - 1]) for a in bq.arrows}
    return Representation(bq, tuple(dims), mats)


def random_base_change(dims: Sequence[int], seed) -> list[CMatrix]:
    rng = random.Random(seed)
    return [random_nonsingular(rng, d) for d in dims]


def six_arrow_biquiver() -> Biquiver:
    """Three vertices; dashed A: 2->1, full B: 3->1, dashed loop C at 2,
    full D: 2->3, dashed E: 2->3, full loop F at 3."""
    return Biquiver(
        3,
        (
            Arrow("A", 2, 1, DASHED),
            Arrow("B", 3, 1, FULL),
            Arrow("C", 2, 2, DASHED),
            Arrow("D", 2, 3, FULL),
            Arrow("E", 2, 3, DASHED),
            Arrow("F", 3, 3, FULL),
        ),
    )


def random_biquiver(seed, max_vertices: int = 3, max_arrows: int = 5) -> Biquiver:
    """Random biquiver with loops and parallel arrows allowed."""
    rng = random.Random(seed)
    t = rng.randint(1, max_vertices)
    arrows = []
    for k in range(rng.randint(0, max_arrows)):
        kind = DASHED if rng.random() < 0.5 else FULL
        arrows.append(Arrow(f"a{k}", rng.randint(1, t), rng.randint(1, t), kind))
    return Biquiver(t, tuple(arrows))
