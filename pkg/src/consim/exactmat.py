"""Exact arithmetic over the Gaussian rationals Q(i).

Scalars are :class:`GaussianRational` (a pair of :class:`fractions.Fraction`).
Matrices are :class:`CMatrix`, stored as integer numerators of the real and
imaginary parts over one positive common denominator, kept in lowest terms
after every operation.  Rank and inverse go through the real ``2n x 2n``
realification ``[[P, -Q], [Q, P]]`` and the sparse elimination kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence

from . import _kernel
from .errors import ShapeError, SingularMatrixError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to a rational")


class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _frac(im)
        elif isinstance(re, complex):
            re, im = Fraction(re.real), Fraction(re.imag) + _frac(im)
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else cls(x)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)


def _normalize(re: list, im: list, den: int):
    if den < 0:
        re = [-v for v in re]
        im = [-v for v in im]
        den = -den
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    g = gcd(den, *re, *im)
    if g > 1:
        re = [v // g for v in re]
        im = [v // g for v in im]
        den //= g
    return re, im, den


class CMatrix:
    """Dense immutable matrix over Q(i).

    Entries are ``(re[k] + i*im[k]) / den`` in row-major order.  Build one
    with :meth:`from_rows`, :meth:`zeros`, :meth:`identity` or
    :func:`block_diag`; the raw constructor expects normalized numerators.
    """

    __slots__ = ("rows", "cols", "_re", "_im", "_den")

    def __init__(self, rows: int, cols: int, re: Sequence[int], im: Sequence[int], den: int = 1):
        if rows < 0 or cols < 0 or len(re) != rows * cols or len(im) != rows * cols:
            raise ShapeError(f"bad storage for a {rows}x{cols} matrix")
        re, im, den = _normalize(list(re), list(im), den)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CMatrix is immutable")

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "CMatrix":
        """Build from nested sequences of anything :class:`GaussianRational` accepts."""
        data = [[GaussianRational.coerce(x) for x in r] for r in rows]
        m = len(data)
        n = len(data[0]) if m else (cols or 0)
        if any(len(r) != n for r in data):
            raise ShapeError("ragged rows")
        flat = [z for r in data for z in r]
        return cls._from_scalars(m, n, flat)

    @classmethod
    def _from_scalars(cls, m: int, n: int, flat: Sequence[GaussianRational]) -> "CMatrix":
        den = 1
        for z in flat:
            den = lcm(den, z.re.denominator, z.im.denominator)
        re = [z.re.numerator * (den // z.re.denominator) for z in flat]
        im = [z.im.numerator * (den // z.im.denominator) for z in flat]
        return cls(m, n, re, im, den)

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "CMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols), [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        re = [0] * (n * n)
        for i in range(n):
            re[i * n + i] = 1
        return cls(n, n, re, [0] * (n * n))

    @classmethod
    def scalar(cls, z) -> "CMatrix":
        return cls._from_scalars(1, 1, [GaussianRational.coerce(z)])

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx) -> GaussianRational:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        k = i * self.cols + j
        return GaussianRational(Fraction(self._re[k], self._den), Fraction(self._im[k], self._den))

    def to_rows(self) -> list[list[GaussianRational]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self._re) and not any(self._im)

    def is_real(self) -> bool:
        return not any(self._im)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "CMatrix":
        """Rows ``r0:r1`` and columns ``c0:c1`` (half-open, 0-based)."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ShapeError(f"slice [{r0}:{r1}, {c0}:{c1}] outside {self.shape}")
        re, im = [], []
        for i in range(r0, r1):
            base = i * self.cols
            re.extend(self._re[base + c0 : base + c1])
            im.extend(self._im[base + c0 : base + c1])
        return CMatrix(r1 - r0, c1 - c0, re, im, self._den)

    def take(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "CMatrix":
        """Gather rows and columns by index lists (used for permutations)."""
        n = self.cols
        re = [self._re[i * n + j] for i in row_idx for j in col_idx]
        im = [self._im[i * n + j] for i in row_idx for j in col_idx]
        return CMatrix(len(row_idx), len(col_idx), re, im, self._den)

    # arithmetic -------------------------------------------------------

    def conj(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, self._re, [-v for v in self._im], self._den)

    @property
    def T(self) -> "CMatrix":
        m, n = self.rows, self.cols
        re = [self._re[i * n + j] for j in range(n) for i in range(m)]
        im = [self._im[i * n + j] for j in range(n) for i in range(m)]
        return CMatrix(n, m, re, im, self._den)

    def _combine(self, other: "CMatrix", sign: int) -> "CMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        den = lcm(self._den, other._den)
        a, b = den // self._den, sign * (den // other._den)
        re = [a * x + b * y for x, y in zip(self._re, other._re)]
        im = [a * x + b * y for x, y in zip(self._im, other._im)]
        return CMatrix(self.rows, self.cols, re, im, den)

    def __add__(self, other: "CMatrix") -> "CMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [-v for v in self._re], [-v for v in self._im], self._den)

    def scale(self, z) -> "CMatrix":
        z = GaussianRational.coerce(z)
        zr, zi = z.re, z.im
        den = lcm(zr.denominator, zi.denominator)
        a = zr.numerator * (den // zr.denominator)
        b = zi.numerator * (den // zi.denominator)
        re = [a * x - b * y for x, y in zip(self._re, self._im)]
        im = [a * y + b * x for x, y in zip(self._re, self._im)]
        return CMatrix(self.rows, self.cols, re, im, self._den * den)

    def __mul__(self, z) -> "CMatrix":
        if isinstance(z, CMatrix):
            return self @ z
        return self.scale(z)

    def __rmul__(self, z) -> "CMatrix":
        return self.scale(z)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        re, im = _kernel.cmatmul(
            self._re, self._im, other._re, other._im, self.rows, self.cols, other.cols
        )
        return CMatrix(self.rows, other.cols, re, im, self._den * other._den)

    def __pow__(self, k: int) -> "CMatrix":
        if not self.is_square:
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = CMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def trace(self) -> GaussianRational:
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        n = self.cols
        return GaussianRational(
            Fraction(sum(self._re[i * n + i] for i in range(n)), self._den),
            Fraction(sum(self._im[i * n + i] for i in range(n)), self._den),
        )

    # comparison -------------------------------------------------------

    def _key(self):
        return (self.rows, self.cols, self._den, tuple(self._re), tuple(self._im))

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = "; ".join(", ".join(str(z) for z in row) for row in self.to_rows())
        return f"CMatrix({self.rows}x{self.cols}: [{body}])"


# ---------------------------------------------------------------------------
# free-function API


def conj(A: CMatrix) -> CMatrix:
    return A.conj()


def mul(A: CMatrix, B: CMatrix) -> CMatrix:
    return A @ B


def add(A: CMatrix, B: CMatrix) -> CMatrix:
    return A + B


def sub(A: CMatrix, B: CMatrix) -> CMatrix:
    return A - B


def scalar_mul(z, A: CMatrix) -> CMatrix:
    return A.scale(z)


def block_diag(*blocks: CMatrix) -> CMatrix:
    """Direct sum ``A_1 (+) A_2 (+) ...``."""
    m = sum(b.rows for b in blocks)
    n = sum(b.cols for b in blocks)
    return place_blocks(m, n, _diag_positions(blocks))


def _diag_positions(blocks):
    r = c = 0
    for b in blocks:
        yield r, c, b
        r += b.rows
        c += b.cols


def place_blocks(rows: int, cols: int, blocks: Iterable[tuple[int, int, CMatrix]]) -> CMatrix:
    """Zero ``rows x cols`` matrix with each ``(r, c, B)`` copied in at offset ``(r, c)``.

    Overlapping placements are an error.
    """
    blocks = list(blocks)
    den = 1
    for _, _, b in blocks:
        den = lcm(den, b._den)
    re = [0] * (rows * cols)
    im = [0] * (rows * cols)
    seen = bytearray(rows * cols)
    for r, c, b in blocks:
        if r < 0 or c < 0 or r + b.rows > rows or c + b.cols > cols:
            raise ShapeError(f"block {b.shape} at ({r}, {c}) leaves {rows}x{cols}")
        f = den // b._den
        for i in range(b.rows):
            for j in range(b.cols):
                k = (r + i) * cols + c + j
                if seen[k]:
                    raise ShapeError(f"overlapping blocks at ({r + i}, {c + j})")
                seen[k] = 1
                s = i * b.cols + j
                re[k] = b._re[s] * f
                im[k] = b._im[s] * f
    return CMatrix(rows, cols, re, im, den)


def _realified_rows(A: CMatrix) -> list[dict[int, int]]:
    m, n = A.shape
    rows = []
    for part in (0, 1):
        for i in range(m):
            row = {}
            for j in range(n):
                p = A._re[i * n + j]
                q = A._im[i * n + j]
                if part == 0:
                    if p:
                        row[j] = p
                    if q:
                        row[n + j] = -q
                else:
                    if q:
                        row[j] = q
                    if p:
                        row[n + j] = p
            rows.append(row)
    return rows


def rank(A: CMatrix) -> int:
    """Exact rank over Q(i)."""
    _, pivots = _kernel.rref(_realified_rows(A))
    return len(pivots) // 2


def inverse(A: CMatrix) -> CMatrix:
    if not A.is_square:
        raise SingularMatrixError(f"non-square matrix {A.shape} has no inverse")
    n = A.rows
    rows = _realified_rows(A)
    for k, row in enumerate(rows):
        row[2 * n + k] = 1
    basis, pivots = _kernel.rref(rows)
    if pivots[: 2 * n] != list(range(2 * n)):
        raise SingularMatrixError("matrix is singular")
    # first n columns of the realified inverse hold [X; Y] with A^-1 = d (X + iY)
    flat = []
    for i in range(n):
        re_row, im_row = basis[i], basis[n + i]
        for j in range(n):
            flat.append(
                GaussianRational(
                    Fraction(re_row.get(2 * n + j, 0) * A._den, re_row[i]),
                    Fraction(im_row.get(2 * n + j, 0) * A._den, im_row[n + i]),
                )
            )
    return CMatrix._from_scalars(n, n, flat)


def is_nonsingular(A: CMatrix) -> bool:
    return A.is_square and rank(A) == A.rows


def _gi_div(a, b):
    # exact quotient in Z[i]; Bareiss guarantees divisibility
    (ar, ai), (br, bi) = a, b
    n = br * br + bi * bi
    qr, rr = divmod(ar * br + ai * bi, n)
    qi, ri = divmod(ai * br - ar * bi, n)
    assert rr == 0 and ri == 0, "inexact Gaussian-integer division"
    return qr, qi


def det(A: CMatrix) -> GaussianRational:
    """Determinant by Bareiss elimination over the Gaussian integers."""
    if not A.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return GaussianRational(1)
    M = [[(A._re[i * n + j], A._im[i * n + j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if M[k][k] == (0, 0):
            for r in range(k + 1, n):
                if M[r][k] != (0, 0):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return GaussianRational(0)
        pr, pi = M[k][k]
        for i in range(k + 1, n):
            ar, ai = M[i][k]
            for j in range(k + 1, n):
                br, bi = M[i][j]
                cr, ci = M[k][j]
                num = (pr * br - pi * bi - (ar * cr - ai * ci), pr * bi + pi * br - (ar * ci + ai * cr))
                M[i][j] = _gi_div(num, prev)
            M[i][k] = (0, 0)
        prev = (pr, pi)
    dr, di = M[n - 1][n - 1]
    scale = Fraction(sign, A._den**n)
    return GaussianRational(dr * scale, di * scale)


def charpoly(A: CMatrix) -> list[GaussianRational]:
    """Coefficients of ``det(xI - A)``, leading first (Faddeev-LeVerrier)."""
    if not A.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = A.rows
    coeffs = [GaussianRational(1)]
    Mk = CMatrix.zeros(n)
    Id = CMatrix.identity(n)
    c = GaussianRational(1)
    for k in range(1, n + 1):
        Mk = A @ Mk + Id.scale(c)
        c = -(A @ Mk).trace() / k
        coeffs.append(c)
    return coeffs


# ---------------------------------------------------------------------------
# realified linear systems


@dataclass(frozen=True)
class Term:
    """The R-linear map ``X -> left @ op(X) @ right`` with ``op`` = conj if ``conj``.

    ``None`` for ``left`` or ``right`` means the identity of matching size.
    """

    left: Optional[CMatrix]
    right: Optional[CMatrix]
    conj: bool = False


@dataclass(frozen=True)
class LinearEquation:
    """``sum(term(X) for term in terms) == rhs`` (``rhs=None`` means zero)."""

    terms: tuple
    rhs: Optional[CMatrix] = None


@dataclass
class RealSolution:
    consistent: bool
    real_dim: int
    particular: Optional[CMatrix]
    basis: list = field(default_factory=list)


def _nonzeros_by_col(L: CMatrix):
    out = {}
    n = L.cols
    for k, (a, b) in enumerate(zip(L._re, L._im)):
        if a or b:
            out.setdefault(k % n, []).append((k // n, a, b))
    return out


def _nonzeros_by_row(R: CMatrix):
    out = {}
    n = R.cols
    for k, (a, b) in enumerate(zip(R._re, R._im)):
        if a or b:
            out.setdefault(k // n, []).append((k % n, a, b))
    return out


def equation_rows(rows: int, cols: int, eq: LinearEquation, tag=0) -> dict:
    """Integer rows of one matrix equation under the fixed realification.

    The unknown entry ``X[a, b] = x + iy`` owns columns ``2*(a*cols+b)``
    (``x``) and ``2*(a*cols+b)+1`` (``y``); the constant sits in column
    ``2*rows*cols``.  Each residual entry ``(r, c)`` yields a real row then an
    imaginary row, keyed ``(tag, r, c, part)``.
    """
    const = 2 * rows * cols
    terms = []
    out_shape = None
    for t in eq.terms:
        L = t.left if t.left is not None else CMatrix.identity(rows)
        R = t.right if t.right is not None else CMatrix.identity(cols)
        if L.cols != rows or R.rows != cols:
            raise ShapeError(f"term {L.shape} * X{(rows, cols)} * {R.shape} does not compose")
        shape = (L.rows, R.cols)
        if out_shape is None:
            out_shape = shape
        elif shape != out_shape:
            raise ShapeError("terms of one equation disagree in shape")
        terms.append((L, R, t.conj))
    if eq.rhs is not None and out_shape is not None and eq.rhs.shape != out_shape:
        raise ShapeError("right-hand side shape mismatch")
    D = 1
    for L, R, _ in terms:
        D = lcm(D, L._den * R._den)
    if eq.rhs is not None:
        D = lcm(D, eq.rhs._den)
    table: dict = {}

    def bump(key, col, val):
        row = table.setdefault(key, {})
        nv = row.get(col, 0) + val
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)

    for L, R, is_conj in terms:
        f = D // (L._den * R._den)
        lcols = _nonzeros_by_col(L)
        rrows = _nonzeros_by_row(R)
        for a, lentries in lcols.items():
            for b, rentries in rrows.items():
                u = 2 * (a * cols + b)
                for r, lr, li in lentries:
                    for c, rr, ri in rentries:
                        al = (lr * rr - li * ri) * f
                        be = (lr * ri + li * rr) * f
                        re_key = (tag, r, c, 0)
                        im_key = (tag, r, c, 1)
                        if is_conj:
                            bump(re_key, u, al)
                            bump(re_key, u + 1, be)
                            bump(im_key, u, be)
                            bump(im_key, u + 1, -al)
                        else:
                            bump(re_key, u, al)
                            bump(re_key, u + 1, -be)
                            bump(im_key, u, be)
                            bump(im_key, u + 1, al)
    if eq.rhs is not None:
        g = D // eq.rhs._den
        n = eq.rhs.cols
        for k, (a, b) in enumerate(zip(eq.rhs._re, eq.rhs._im)):
            r, c = divmod(k, n)
            if a:
                bump((tag, r, c, 0), const, a * g)
            if b:
                bump((tag, r, c, 1), const, b * g)
    return table


def _sparse_to_matrix(rows: int, cols: int, entries: Mapping[int, Fraction]) -> CMatrix:
    """Matrix from realified coordinates ``{variable: value}``; absent ones are zero."""
    den = 1
    for x in entries.values():
        den = lcm(den, x.denominator)
    re, im = [0] * (rows * cols), [0] * (rows * cols)
    for var, x in entries.items():
        u, imag = divmod(var, 2)
        (im if imag else re)[u] = x.numerator * (den // x.denominator)
    return CMatrix(rows, cols, re, im, den)


def solve_real_linear(rows: int, cols: int, equations: Sequence[LinearEquation]) -> RealSolution:
    """Solve a system of R-affine matrix equations in an unknown ``rows x cols`` matrix.

    Equations such as ``conj(S) J = J S`` are linear over R but not over C, so
    the unknown is split into real and imaginary parts and the system is
    solved exactly over Q.  Returns the real dimension of the solution set,
    one particular solution (free variables set to zero) and a real basis
    of the homogeneous solutions.
    """
    nvar = 2 * rows * cols
    table: dict = {}
    for tag, eq in enumerate(equations):
        table.update(equation_rows(rows, cols, eq, tag))
    basis_rows, pivots = _kernel.rref(table.values())
    if nvar in pivots:
        return RealSolution(False, 0, None, [])
    pivset = set(pivots)
    # for each free variable, the pivot rows that mention it
    uses: dict[int, list] = {}
    part = {}
    for row, p in zip(basis_rows, pivots):
        lead = row[p]
        for c, v in row.items():
            if c == nvar:
                part[p] = Fraction(v, lead)
            elif c != p:
                uses.setdefault(c, []).append((p, v, lead))
    basis = []
    for f in range(nvar):
        if f in pivset:
            continue
        vec = {f: Fraction(1)}
        for p, v, lead in uses.get(f, ()):
            vec[p] = Fraction(-v, lead)
        basis.append(_sparse_to_matrix(rows, cols, vec))
    return RealSolution(True, len(basis), _sparse_to_matrix(rows, cols, part), basis)


# ---------------------------------------------------------------------------
# JSON serialization


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(z) -> list[str]:
    z = GaussianRational.coerce(z)
    return [_frac_str(z.re), _frac_str(z.im)]


def scalar_from_json(obj) -> GaussianRational:
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"scalar must be [re, im], got {obj!r}")
        return GaussianRational(_frac(obj[0]), _frac(obj[1]))
    if isinstance(obj, (int, str)):
        return GaussianRational(_frac(obj))
    raise ValueError(f"cannot parse scalar {obj!r}")


def matrix_to_json(A: CMatrix) -> dict:
    return {
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[scalar_to_json(z) for z in row] for row in A.to_rows()],
    }


def matrix_from_json(obj) -> CMatrix:
    try:
        m, n = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix object needs rows/cols/entries: {exc}") from None
    if len(entries) != m or any(len(r) != n for r in entries):
        raise ValueError(f"entries do not match declared shape {m}x{n}")
    flat = [scalar_from_json(z) for r in entries for z in r]
    return CMatrix._from_scalars(m, n, flat)
