"""Encodings of classification problems into matrix pairs ``(J, M)`` up to consimilarity.

Three encoders are provided, each with a witness builder (forward
direction), a witness extractor (backward direction) and a decoder:

* ``commuting-pair``: a pair ``(X, Y)`` becomes ``J = J_4(0_n) (+) J_1(0_n)``
  and an ``M`` with ``conj(M) J = J M``;
* ``tuple``: linear ``X_1..X_p`` and semilinear ``Y_1..Y_q`` become a single
  ``J_m(0_n)`` and ``M_{X,Y}``;
* ``biquiver``: a representation becomes ``(J, M)`` with every arrow matrix
  placed at its own substrip crossing.

Both pairs of a comparison always share ``J``; a consimilarity ``S`` between
them must satisfy ``conj(S) J = J S`` and ``M S = conj(S) M'``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .biquiver import Biquiver, Representation
from .commutant import check_semicommute
from .errors import CapacityError, ContractError, ShapeError, SingularMatrixError
from .exactmat import (
    CMatrix,
    LinearEquation,
    RealSolution,
    Term,
    block_diag,
    inverse,
    is_nonsingular,
    matrix_from_json,
    matrix_to_json,
    place_blocks,
    solve_real_linear,
)
from .nilstruct import Partition, SubstripIndex, build_J

PAIR = "commuting-pair"
TUPLE = "tuple"
BIQUIVER = "biquiver"

Placement = Mapping[str, tuple[SubstripIndex, SubstripIndex]]


@dataclass(frozen=True)
class Encoding:
    kind: str
    part: Partition
    J: CMatrix
    M: CMatrix
    placement: Placement
    meta: dict = field(default_factory=dict)

    def block(self, name: str, M: Optional[CMatrix] = None) -> CMatrix:
        row, col = self.placement[name]
        return self.part.subblock(self.M if M is None else M, row, col)

    def with_M(self, M: CMatrix) -> "Encoding":
        return Encoding(self.kind, self.part, self.J, M, self.placement, self.meta)

    def to_json(self) -> dict:
        meta = dict(self.meta)
        if "biquiver" in meta:
            meta["biquiver"] = meta["biquiver"].to_json()
        return {
            "kind": self.kind,
            "partition": self.part.to_json(),
            "J": matrix_to_json(self.J),
            "M": matrix_to_json(self.M),
            "placement": {k: {"row": r.to_json(), "col": c.to_json()} for k, (r, c) in self.placement.items()},
            "meta": meta,
        }

    @classmethod
    def from_json(cls, obj) -> "Encoding":
        meta = dict(obj.get("meta", {}))
        if "biquiver" in meta:
            meta["biquiver"] = Biquiver.from_json(meta["biquiver"])
        placement = {
            k: (SubstripIndex.from_json(v["row"]), SubstripIndex.from_json(v["col"]))
            for k, v in obj["placement"].items()
        }
        enc = cls(
            obj["kind"],
            Partition.from_json(obj["partition"]),
            matrix_from_json(obj["J"]),
            matrix_from_json(obj["M"]),
            placement,
            meta,
        )
        if enc.J != build_J(enc.part):
            raise ContractError("encoding J does not match its partition")
        enc.part.check_square(enc.M, "M")
        return enc


def _assemble(part: Partition, blocks: Mapping[str, CMatrix], placement: Placement) -> CMatrix:
    return place_blocks(
        part.size,
        part.size,
        [(part.offset(placement[k][0]), part.offset(placement[k][1]), B) for k, B in blocks.items()],
    )


# ---------------------------------------------------------------------------
# commuting pairs


def _pair_layout(n: int) -> tuple[Partition, dict]:
    part = Partition([(4, n), (1, n)])
    s = SubstripIndex
    placement = {
        "X": (s(1, 1), s(1, 3)),
        "Xbar": (s(1, 2), s(1, 4)),
        "Y": (s(1, 1), s(2, 1)),
        "I": (s(2, 1), s(1, 4)),
    }
    return part, placement


def encode_commuting_pair(X: CMatrix, Y: CMatrix) -> Encoding:
    """``J = J_4(0_n) (+) J_1(0_n)``; ``M`` has ``X`` at block (1,3), ``Y`` at (1,5),
    ``conj(X)`` at (2,4) and ``I`` at (5,4) of the 5 x 5 block grid."""
    if not (X.is_square and Y.shape == X.shape):
        raise ShapeError(f"X and Y must be square of one size, got {X.shape} and {Y.shape}")
    n = X.rows
    part, placement = _pair_layout(n)
    blocks = {"X": X, "Xbar": X.conj(), "Y": Y, "I": CMatrix.identity(n)}
    return Encoding(PAIR, part, build_J(part), _assemble(part, blocks, placement), placement, {"n": n})


def decode_commuting_pair(enc: Encoding) -> tuple[CMatrix, CMatrix]:
    _expect(enc, PAIR)
    X, Y = enc.block("X"), enc.block("Y")
    if encode_commuting_pair(X, Y).M != enc.M:
        raise ContractError("M is not a commuting-pair encoding")
    return X, Y


def witness_commuting_pair(C: CMatrix) -> CMatrix:
    """``diag(C, conj(C), C, conj(C), C)``."""
    if not is_nonsingular(C):
        raise SingularMatrixError("witness needs a nonsingular C")
    Cb = C.conj()
    return block_diag(C, Cb, C, Cb, C)


def extract_commuting_witness(S: CMatrix, n: int) -> CMatrix:
    """Leading ``n x n`` diagonal subblock of a consimilarity ``S`` between encodings."""
    part, _ = _pair_layout(n)
    J = build_J(part)
    if S.shape != J.shape or not check_semicommute(J, S):
        raise ContractError("S does not satisfy conj(S) J = J S")
    C = S.submatrix(0, n, 0, n)
    if not is_nonsingular(C):
        raise SingularMatrixError("leading subblock C is singular, so S is singular")
    return C


def pair_relation(C: CMatrix, X: CMatrix, Y: CMatrix, X2: CMatrix, Y2: CMatrix) -> bool:
    """``(X, Y) C == conj(C) (X', Y')``."""
    Cb = C.conj()
    return X @ C == Cb @ X2 and Y @ C == Cb @ Y2


# ---------------------------------------------------------------------------
# tuples of linear and semilinear operators


@dataclass(frozen=True)
class TupleInstance:
    n: int
    Xs: tuple[CMatrix, ...] = ()
    Ys: tuple[CMatrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "Xs", tuple(self.Xs))
        object.__setattr__(self, "Ys", tuple(self.Ys))
        for A in self.Xs + self.Ys:
            if A.shape != (self.n, self.n):
                raise ShapeError(f"tuple entries must be {self.n}x{self.n}, got {A.shape}")

    @property
    def p(self) -> int:
        return len(self.Xs)

    @property
    def q(self) -> int:
        return len(self.Ys)


def _tuple_layout(p: int, q: int) -> tuple[int, int]:
    """Total block count and 0-based block index of ``Y_1``.

    The ``X`` part always spans ``p + 1`` blocks; an extra zero block is
    inserted when ``p`` is even so that ``Y_1`` lands on an odd block.
    """
    y0 = p + 1 + (1 if p % 2 == 0 else 0)
    return y0 + q, y0


def encode_tuple(inst: TupleInstance) -> Encoding:
    n, p, q = inst.n, inst.p, inst.q
    m, y0 = _tuple_layout(p, q)
    part = Partition([(m, n)])
    s = SubstripIndex
    placement, blocks = {}, {}
    for k, X in enumerate(inst.Xs, 1):
        placement[f"X{k}"] = (s(1, k), s(1, k + 1))
        blocks[f"X{k}"] = X
    for k, Y in enumerate(inst.Ys, 1):
        placement[f"Y{k}"] = (s(1, y0 + k), s(1, y0 + k))
        blocks[f"Y{k}"] = Y
    M = _assemble(part, blocks, placement)
    return Encoding(TUPLE, part, build_J(part), M, placement, {"n": n, "p": p, "q": q})


def decode_tuple(enc: Encoding) -> TupleInstance:
    _expect(enc, TUPLE)
    p, q, n = enc.meta["p"], enc.meta["q"], enc.meta["n"]
    inst = TupleInstance(n, [enc.block(f"X{k}") for k in range(1, p + 1)], [enc.block(f"Y{k}") for k in range(1, q + 1)])
    if encode_tuple(inst).M != enc.M:
        raise ContractError("M is not a tuple encoding")
    return inst


def transport_tuple(inst: TupleInstance, C: CMatrix) -> TupleInstance:
    """The tuple that ``C`` relates ``inst`` to under the four alternating rules."""
    Ci = inverse(C)
    Cb, Cbi = C.conj(), Ci.conj()
    Xs = [(Cbi @ X @ Cb) if k % 2 else (Ci @ X @ C) for k, X in enumerate(inst.Xs, 1)]
    Ys = [(Cbi @ Y @ C) if k % 2 else (Ci @ Y @ Cb) for k, Y in enumerate(inst.Ys, 1)]
    return TupleInstance(inst.n, Xs, Ys)


def verify_tuple_conditions(C: CMatrix, inst: TupleInstance, inst2: TupleInstance) -> bool:
    """Odd ``X_k`` similar via ``conj(C)``, even via ``C``; odd ``Y_k`` consimilar
    via ``C``, even via ``conj(C)``."""
    if (inst.n, inst.p, inst.q) != (inst2.n, inst2.p, inst2.q) or C.shape != (inst.n, inst.n):
        raise ShapeError("tuples and C do not match in size")
    try:
        return transport_tuple(inst, C) == inst2
    except SingularMatrixError:
        return False


def witness_tuple(C: CMatrix, block_count: int) -> CMatrix:
    """``C (+) conj(C) (+) C (+) ...`` with ``block_count`` summands."""
    if not is_nonsingular(C):
        raise SingularMatrixError("witness needs a nonsingular C")
    Cb = C.conj()
    return block_diag(*(C if k % 2 == 0 else Cb for k in range(block_count)))


def extract_tuple_witness(S: CMatrix, enc: Encoding) -> CMatrix:
    _expect(enc, TUPLE)
    if S.shape != enc.J.shape or not check_semicommute(enc.J, S):
        raise ContractError("S does not satisfy conj(S) J = J S")
    n = enc.meta["n"]
    C = S.submatrix(0, n, 0, n)
    if not is_nonsingular(C):
        raise SingularMatrixError("leading subblock C is singular, so S is singular")
    return C


# ---------------------------------------------------------------------------
# biquiver representations


def default_partition(bq: Biquiver, dims: Sequence[int]) -> Partition:
    """``p_i = max(2 n(i), 1)``, bumped by one until all are distinct.

    Vertices are settled in order of increasing incidence, so busier vertices
    end up with the larger blocks.
    """
    p = {}
    used = set()
    for v in sorted(range(1, bq.vertex_count + 1), key=lambda v: (bq.incidence(v), v)):
        size = max(2 * bq.incidence(v), 1)
        while size in used:
            size += 1
        used.add(size)
        p[v] = size
    return Partition([(p[v], dims[v - 1]) for v in range(1, bq.vertex_count + 1)])


def _check_capacity(bq: Biquiver, part: Partition) -> None:
    for v, (p, _) in enumerate(part.parts, 1):
        odd, even = (p + 1) // 2, p // 2
        dashed_in = sum(1 for a in bq.arrows if a.target == v and a.dashed)
        full_in = sum(1 for a in bq.arrows if a.target == v and not a.dashed)
        out = sum(1 for a in bq.arrows if a.source == v)
        if dashed_in > odd:
            raise CapacityError(f"strip {v}: {dashed_in} dashed arrows need odd row substrips, only {odd} exist (p={p})")
        if full_in > even:
            raise CapacityError(f"strip {v}: {full_in} full arrows need even row substrips, only {even} exist (p={p})")
        if out > odd:
            raise CapacityError(f"strip {v}: {out} arrows need odd column substrips, only {odd} exist (p={p})")


def place_arrows(bq: Biquiver, part: Partition) -> dict[str, tuple[SubstripIndex, SubstripIndex]]:
    """Greedy placement of each arrow ``i -> j`` at (row substrip of strip ``j``,
    column substrip of strip ``i``).

    Rows: per target strip, odd substrips for dashed and even for full
    arrows, ascending in arrow order.  Columns: per source strip, odd
    substrips ascending, handed out in the order of the rows already chosen.
    """
    _check_capacity(bq, part)
    rows = {}
    next_row = {}
    for a in bq.arrows:
        start = 1 if a.dashed else 2
        k = next_row.get((a.target, a.dashed), start)
        rows[a.id] = SubstripIndex(a.target, k)
        next_row[(a.target, a.dashed)] = k + 2
    placement = {}
    next_col = {}
    for a in sorted(bq.arrows, key=lambda a: part.offset(rows[a.id])):
        l = next_col.get(a.source, 1)
        next_col[a.source] = l + 2
        placement[a.id] = (rows[a.id], SubstripIndex(a.source, l))
    return {a.id: placement[a.id] for a in bq.arrows}


def check_placement(bq: Biquiver, part: Partition, placement: Placement) -> None:
    """Parity, strip and uniqueness rules for a biquiver placement."""
    if set(placement) != {a.id for a in bq.arrows}:
        raise ContractError("placement must cover exactly the arrows of the biquiver")
    used_rows, used_cols = set(), set()
    for a in bq.arrows:
        row, col = placement[a.id]
        if row.strip != a.target or col.strip != a.source:
            raise ContractError(f"arrow {a.id!r} must sit in row strip {a.target} and column strip {a.source}")
        for s in (row, col):
            if not 1 <= s.substrip <= part.parts[s.strip - 1][0]:
                raise ContractError(f"arrow {a.id!r}: substrip {s} does not exist")
        if (row.substrip % 2 == 1) != a.dashed:
            raise ContractError(f"arrow {a.id!r}: row substrip must be {'odd' if a.dashed else 'even'}")
        if col.substrip % 2 == 0:
            raise ContractError(f"arrow {a.id!r}: column substrip must be odd")
        if row in used_rows or col in used_cols:
            raise ContractError(f"arrow {a.id!r} reuses a substrip")
        used_rows.add(row)
        used_cols.add(col)


def encode_biquiver(
    rep: Representation,
    partition: Optional[Partition] = None,
    placement: Optional[Placement] = None,
) -> Encoding:
    bq = rep.quiver
    if partition is None:
        part = default_partition(bq, rep.dims)
    else:
        part = partition
        if part.t != bq.vertex_count:
            raise ShapeError(f"partition has {part.t} strips for {bq.vertex_count} vertices")
        if part.q != rep.dims:
            raise ShapeError(f"partition q's {part.q} must equal the vertex dimensions {rep.dims}")
    if placement is None:
        placement = place_arrows(bq, part)
    else:
        _check_capacity(bq, part)
        placement = dict(placement)
    check_placement(bq, part, placement)
    M = _assemble(part, rep.mats, placement)
    return Encoding(BIQUIVER, part, build_J(part), M, placement, {"biquiver": bq})


def decode_biquiver(enc: Encoding) -> Representation:
    _expect(enc, BIQUIVER)
    bq = enc.meta["biquiver"]
    rep = Representation(bq, enc.part.q, {a.id: enc.block(a.id) for a in bq.arrows})
    if encode_biquiver(rep, enc.part, enc.placement).M != enc.M:
        raise ContractError("M has nonzero subblocks outside the arrow placement")
    return rep


def substrip_occupancy_ok(part: Partition, M: CMatrix) -> bool:
    """Every horizontal and every vertical substrip holds at most one nonzero subblock."""
    subs = part.substrips()
    nonzero = [[not part.subblock(M, r, c).is_zero() for c in subs] for r in subs]
    rows_ok = all(sum(row) <= 1 for row in nonzero)
    cols_ok = all(sum(col) <= 1 for col in zip(*nonzero))
    return rows_ok and cols_ok


def witness_biquiver(enc: Encoding, S_list: Sequence[CMatrix]) -> CMatrix:
    """Strip ``i`` carries ``S_i`` on odd and ``conj(S_i)`` on even diagonal substrips."""
    _expect(enc, BIQUIVER)
    if len(S_list) != enc.part.t:
        raise ShapeError(f"{len(S_list)} witnesses for {enc.part.t} strips")
    diag = []
    for (p, q), Si in zip(enc.part.parts, S_list):
        if Si.shape != (q, q):
            raise ShapeError(f"witness {Si.shape} for a strip of substrip size {q}")
        if not is_nonsingular(Si):
            raise SingularMatrixError("witness matrices must be nonsingular")
        Sb = Si.conj()
        diag.extend(Si if a % 2 else Sb for a in range(1, p + 1))
    return block_diag(*diag)


def extract_biquiver_witness(enc: Encoding, S: CMatrix) -> list[CMatrix]:
    """Per-vertex ``S_i``: the first diagonal subblock of strip ``i``.

    The remaining diagonal subblocks are forced to alternate ``S_i``,
    ``conj(S_i)``; this is checked rather than assumed.
    """
    _expect(enc, BIQUIVER)
    part = enc.part
    if S.shape != enc.J.shape or not check_semicommute(enc.J, S):
        raise ContractError("S does not satisfy conj(S) J = J S")
    out = []
    for i, (p, _) in enumerate(part.parts, 1):
        Si = part.subblock(S, SubstripIndex(i, 1), SubstripIndex(i, 1))
        Sb = Si.conj()
        for a in range(2, p + 1):
            idx = SubstripIndex(i, a)
            if part.subblock(S, idx, idx) != (Si if a % 2 else Sb):
                raise ContractError(f"diagonal subblock {idx} breaks the alternation")
        if not is_nonsingular(Si):
            raise SingularMatrixError(f"witness S_{i} is singular, so S is singular")
        out.append(Si)
    return out


# ---------------------------------------------------------------------------
# joint systems and witness checks


def joint_system(J: CMatrix, M: CMatrix, M2: CMatrix) -> RealSolution:
    """All ``S`` (singular or not) with ``conj(S) J = J S`` and ``M S = conj(S) M'``."""
    n = J.rows
    eqs = [
        LinearEquation((Term(None, J, conj=True), Term(-J, None))),
        LinearEquation((Term(M, None), Term(None, -M2, conj=True))),
    ]
    return solve_real_linear(n, n, eqs)


def nonsingular_element(sol: RealSolution, seed=0, tries: int = 64) -> Optional[CMatrix]:
    """A nonsingular member of a homogeneous solution space, by random real combination."""
    if not sol.consistent or not sol.basis:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        S = None
        for B in sol.basis:
            c = rng.randint(-3, 3)
            if c:
                S = B.scale(c) if S is None else S + B.scale(c)
        if S is not None and is_nonsingular(S):
            return S
    return None


def verify_witness(enc: Encoding, enc2: Encoding, S: CMatrix) -> dict[str, bool]:
    """``commutant_ok``: shared ``J`` and ``conj(S) J = J S``.
    ``transport_ok``: ``S`` nonsingular and ``M S = conj(S) M'``."""
    if enc.J != enc2.J:
        return {"commutant_ok": False, "transport_ok": False}
    if S.shape != enc.J.shape:
        raise ShapeError(f"S is {S.shape}, encodings are {enc.J.shape}")
    commutant_ok = check_semicommute(enc.J, S)
    transport_ok = is_nonsingular(S) and enc.M @ S == S.conj() @ enc2.M
    return {"commutant_ok": commutant_ok, "transport_ok": transport_ok}


def _expect(enc: Encoding, kind: str) -> None:
    if enc.kind != kind:
        raise ContractError(f"expected a {kind} encoding, got {enc.kind}")
