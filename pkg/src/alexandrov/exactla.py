"""Exact dense linear algebra over a prime field or the rationals.

Matrices wrap numpy arrays.  Over ``F_p`` with ``p < 2**31`` entries are
``int64`` residues in ``[0, p)``; larger primes and the rationals use object
arrays of Python ``int`` / :class:`fractions.Fraction`.  No floating point
is involved anywhere.

Row reduction is Gauss-Jordan.  Over ``Q`` it runs fraction-free on
integer rows (content-normalised after every pivot) and only divides by the
pivots at the very end, which keeps the intermediate numbers small.
Reduced row echelon form is the canonical form for subspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegreeOutOfRange, NotAComplex, NotContained, ShapeMismatch

_INT64_SAFE = 2**63 - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    k = 5
    while k * k <= n:
        if n % k == 0 or n % (k + 2) == 0:
            return False
        k += 6
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``Field("prime", p)`` or ``Field("rational")``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"{self.p!r} is not a prime")
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field takes no characteristic")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("prime", p)

    @classmethod
    def rational(cls) -> "Field":
        return cls("rational")

    @classmethod
    def parse(cls, spec: str) -> "Field":
        """Parse ``q`` or ``fp:P``."""
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rational"):
            return cls.rational()
        if spec.startswith("fp:"):
            try:
                return cls.prime(int(spec[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {spec!r}: {exc}") from None
        raise ValueError(f"bad field spec {spec!r}")

    def __str__(self) -> str:
        return "q" if self.kind == "rational" else f"fp:{self.p}"

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def dtype(self):
        if self.is_prime and self.p < 2**31:
            return np.int64
        return object

    def scalar(self, x):
        """Canonical representative of ``x`` (int, Fraction or ``"a/b"`` text)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (np.integer,)):
            x = int(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, int):
                return x % self.p
            raise TypeError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def format(self, x) -> str:
        return str(x)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is object:
            zero = 0 if self.is_prime else Fraction(0)
            out = np.empty((rows, cols), dtype=object)
            out.fill(zero)
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def array(self, data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype != object and self.dtype is not object:
            arr = np.asarray(data, dtype=np.int64) % self.p
        else:
            raw = np.asarray(data, dtype=object)
            if raw.size == 0:
                r = rows if rows is not None else (raw.shape[0] if raw.ndim >= 1 else 0)
                c = cols if cols is not None else (raw.shape[1] if raw.ndim == 2 else 0)
                return self.zeros(r, c)
            if raw.ndim != 2:
                raise ShapeMismatch(f"matrix data must be 2-dimensional, got shape {raw.shape}")
            arr = self.zeros(*raw.shape)
            for idx, x in np.ndenumerate(raw):
                arr[idx] = self.scalar(x)
        if rows is not None and arr.shape[0] != rows or cols is not None and arr.shape[1] != cols:
            raise ShapeMismatch(f"expected {rows}x{cols}, got {arr.shape[0]}x{arr.shape[1]}")
        return arr


QQ = Field.rational()


def GF(p: int) -> Field:
    return Field.prime(p)


class Matrix:
    """An immutable matrix over a :class:`Field`."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, data, rows: int | None = None, cols: int | None = None):
        self.field = field
        self._a = field.array(data, rows, cols)
        self._a.flags.writeable = False

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        m._a = arr
        arr.flags.writeable = False
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        a = field.zeros(n, n)
        one = 1 if field.is_prime else Fraction(1)
        for k in range(n):
            a[k, k] = one
        return cls._wrap(field, a)

    @classmethod
    def parse(cls, text: str, field: Field, rows: int | None = None, cols: int | None = None) -> "Matrix":
        """Parse a literal: rows separated by ``;``, entries by whitespace, ``a/b`` rationals."""
        text = text.strip()
        if text in ("", "-", "[]"):
            if rows and cols:
                raise ShapeMismatch(f"empty literal for a {rows}x{cols} matrix")
            return cls.zeros(field, rows or 0, cols or 0)
        body = [row.split() for row in text.split(";")]
        width = {len(r) for r in body}
        if len(width) != 1:
            raise ShapeMismatch(f"ragged matrix literal {text!r}")
        try:
            entries = [[field.scalar(x) for x in r] for r in body]
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeMismatch(f"bad matrix entry in {text!r}: {exc}") from None
        return cls(field, entries, rows, cols)

    # shape and entries
    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple:
        """Row-major canonical scalars (Python ``int`` or ``Fraction``)."""
        if self._a.dtype == object:
            return tuple(self._a.ravel().tolist())
        return tuple(int(x) for x in self._a.ravel())

    def tolist(self) -> list[list]:
        return [list(self.entries[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)]

    def __getitem__(self, key):
        out = self._a[key]
        if isinstance(out, np.ndarray):
            if out.ndim == 2:
                return Matrix._wrap(self.field, out.copy())
            return out
        return int(out) if self.field.is_prime else out

    def row_block(self, start: int, stop: int) -> "Matrix":
        return Matrix._wrap(self.field, self._a[start:stop].copy())

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self.field, self._a[list(idx)].copy() if len(idx) else self.field.zeros(0, self.cols))

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self.field, self._a[:, list(idx)].copy() if len(idx) else self.field.zeros(self.rows, 0))

    # algebra
    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("matrix operand expected")
        if other.field != self.field:
            raise ShapeMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return Matrix._wrap(self.field, _matmul(self.field, self._a, other._a))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch("addition of differently shaped matrices")
        return Matrix._wrap(self.field, _reduce(self.field, self._a + other._a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch("subtraction of differently shaped matrices")
        return Matrix._wrap(self.field, _reduce(self.field, self._a - other._a))

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, _reduce(self.field, -self._a))

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix._wrap(self.field, _reduce(self.field, self._a * c))

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self._a.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.rows}x{self.cols}, [{self.to_literal()}])"

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    # elimination-based queries
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        R, piv = _rref(self.field, self._a)
        return Matrix._wrap(self.field, R), tuple(piv)

    def rank(self) -> int:
        return _rank(self.field, self._a)

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if not self.is_invertible():
            raise ShapeMismatch("matrix is not invertible")
        return solve(self, Matrix.identity(self.field, self.rows))

    # text forms
    def to_literal(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return ""
        vals = self.entries
        return "; ".join(
            " ".join(str(v) for v in vals[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)
        )

    def to_json(self) -> list[list]:
        """Nested lists; rationals become ``"a/b"`` strings, integers stay ints."""
        out = []
        for row in self.tolist():
            out.append([
                v if isinstance(v, int) else (v.numerator if v.denominator == 1 else str(v)) for v in row
            ])
        return out


def _reduce(field: Field, a: np.ndarray) -> np.ndarray:
    return a % field.p if field.is_prime else a


def _matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return field.zeros(a.shape[0], b.shape[1])
    if not field.is_prime:
        return _matmul_rational(a, b)
    if a.dtype == object or b.dtype == object:
        return _reduce(field, np.matmul(a.astype(object), b.astype(object)))
    p = field.p
    if inner * (p - 1) ** 2 <= _INT64_SAFE:
        return np.matmul(a, b) % p
    return (np.matmul(a.astype(object), b.astype(object)) % p).astype(np.int64)


def _rref(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    if field.is_prime:
        return _rref_prime(a, field.p)
    return _rref_rational(a)


def _rref_prime(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R = a.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        colv = R[:, c].copy()
        colv[r] = 0
        rows = np.flatnonzero(colv)
        if rows.size:
            R[rows] = (R[rows] - np.outer(colv[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def _scaled_integers(a: np.ndarray) -> tuple[list[int], int]:
    """Entries times their common denominator, and that denominator."""
    flat = a.ravel().tolist()
    den = 1
    for x in flat:
        if x.denominator != 1:
            den = math.lcm(den, x.denominator)
    if den == 1:
        return [x.numerator for x in flat], 1
    return [x.numerator * (den // x.denominator) for x in flat], den


def _int_array(values: list[int], shape: tuple[int, int]) -> tuple[np.ndarray, int]:
    big = max((abs(v) for v in values), default=0)
    arr = np.array(values, dtype=np.int64 if big < 2**62 else object)
    return arr.reshape(shape), big


def _matmul_rational(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # multiply integer numerators and divide once per output entry
    na, da = _scaled_integers(a)
    nb, db = _scaled_integers(b)
    A, ba = _int_array(na, a.shape)
    B, bb = _int_array(nb, b.shape)
    if A.dtype != object and B.dtype != object and a.shape[1] * ba * bb < _INT64_SAFE:
        C = np.matmul(A, B)
    else:
        C = np.matmul(A.astype(object), B.astype(object))
    den = da * db
    out = np.empty(C.shape, dtype=object)
    out.ravel()[:] = [Fraction(int(v), den) for v in C.ravel().tolist()]
    return out


def _integer_rows(a: np.ndarray) -> np.ndarray:
    m, n = a.shape
    R = np.empty((m, n), dtype=object)
    for i in range(m):
        row = a[i]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        R[i] = [x.numerator * (den // x.denominator) for x in row]
    return R


def _normalise_content(R: np.ndarray, rows: np.ndarray) -> None:
    g = np.gcd.reduce(R[rows], axis=1) if R.shape[1] > 1 else np.abs(R[rows, 0])
    for r, gr in zip(rows, g):
        if gr > 1:
            R[r] = R[r] // gr


def _rref_rational(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = a.shape
    R = _integer_rows(a)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        piv = R[r, c]
        colv = R[:, c].copy()
        colv[r] = 0
        rows = np.flatnonzero(colv)
        if rows.size:
            R[rows] = R[rows] * piv - np.outer(colv[rows], R[r])
            _normalise_content(R, rows)
        pivots.append(c)
        r += 1
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        if i < len(pivots):
            piv = R[i, pivots[i]]
            out[i] = [Fraction(x, piv) for x in R[i]]
        else:
            out[i] = [Fraction(0)] * n
    return out, pivots


def _rank(field: Field, a: np.ndarray) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    # rank only needs forward elimination on the smaller orientation
    if a.shape[0] > a.shape[1]:
        a = a.T
    if field.is_prime:
        return _forward_rank_prime(a.copy(), field.p)
    return _forward_rank_rational(_integer_rows(a))


def _forward_rank_prime(R: np.ndarray, p: int) -> int:
    m, n = R.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        below = R[r + 1:, c]
        rows = np.flatnonzero(below) + r + 1
        if rows.size:
            factors = (R[rows, c] * inv) % p
            R[rows] = (R[rows] - np.outer(factors, R[r]) % p) % p
        r += 1
    return r


def _forward_rank_rational(R: np.ndarray) -> int:
    m, n = R.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        piv = R[r, c]
        rows = np.flatnonzero(R[r + 1:, c]) + r + 1
        if rows.size:
            R[rows] = R[rows] * piv - np.outer(R[rows, c], R[r])
            _normalise_content(R, rows)
        r += 1
    return r


# stacking helpers

def hstack(blocks: Sequence[Matrix], field: Field | None = None, rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, rows or 0, 0)
    f = blocks[0].field
    return Matrix._wrap(f, np.hstack([b._a for b in blocks]).astype(f.dtype, copy=False))


def vstack(blocks: Sequence[Matrix], field: Field | None = None, cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, 0, cols or 0)
    f = blocks[0].field
    return Matrix._wrap(f, np.vstack([b._a for b in blocks]).astype(f.dtype, copy=False))


def block_diag(blocks: Sequence[Matrix], field: Field) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = field.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.rows, j:j + b.cols] = b._a
        i += b.rows
        j += b.cols
    return Matrix._wrap(field, out)


def kron(a: Matrix, b: Matrix) -> Matrix:
    f = a.field
    out = f.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a._a[i, j]
            if x != 0:
                out[i * b.rows:(i + 1) * b.rows, j * b.cols:(j + 1) * b.cols] = _reduce(f, b._a * x)
    return Matrix._wrap(f, out)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``field**ambient_dim``; ``basis`` rows are in reduced echelon form."""

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Matrix) -> "Subspace":
        """Span of the rows of ``vectors``."""
        R, piv = vectors.rref()
        return cls(vectors.cols, R.row_block(0, len(piv)), piv)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zeros(field, 0, ambient_dim), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(field, ambient_dim), tuple(range(ambient_dim)))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def columns(self) -> Matrix:
        """The basis as an ``ambient_dim x dim`` inclusion matrix."""
        return self.basis.T

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coefficients ``C`` with ``C @ basis == vectors`` (one row per vector).

        Raises:
            NotContained: some row of ``vectors`` is outside the subspace.
        """
        if vectors.cols != self.ambient_dim:
            raise ShapeMismatch("vector length differs from ambient dimension")
        C = vectors.take_cols(self.pivots)
        if C @ self.basis != vectors:
            raise NotContained("vector not in subspace")
        return C

    def contains(self, vectors: Matrix | Sequence) -> bool:
        if not isinstance(vectors, Matrix):
            vectors = Matrix(self.field, [list(vectors)], cols=self.ambient_dim)
        C = vectors.take_cols(self.pivots)
        return C @ self.basis == vectors

    def contains_subspace(self, other: "Subspace") -> bool:
        return other.dim == 0 or self.contains(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(vstack([self.basis, other.basis]))


def kernel_basis(M: Matrix) -> Subspace:
    """Canonical echelon basis of ``{x : M x = 0}``."""
    R, piv = M.rref()
    n = M.cols
    free = [c for c in range(n) if c not in set(piv)]
    f = M.field
    K = f.zeros(len(free), n)
    one = 1 if f.is_prime else Fraction(1)
    for t, c in enumerate(free):
        K[t, c] = one
        for r, pc in enumerate(piv):
            K[t, pc] = -R._a[r, c]
    return Subspace.span(Matrix._wrap(f, _reduce(f, K)))


def image_basis(M: Matrix) -> Subspace:
    """Canonical echelon basis of the column space of ``M``."""
    return Subspace.span(M.T)


def quotient_dim(Z: Subspace, B: Subspace) -> int:
    """``dim Z - dim B`` after checking ``B`` lies in ``Z``."""
    if Z.ambient_dim != B.ambient_dim:
        raise ShapeMismatch("subspaces live in different ambient spaces")
    if not Z.contains_subspace(B):
        raise NotContained("B is not contained in Z")
    return Z.dim - B.dim


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``A @ X == B``, or ``None`` if the system is inconsistent."""
    if A.rows != B.rows:
        raise ShapeMismatch("A and B need the same number of rows")
    f = A.field
    aug = Matrix._wrap(f, np.hstack([A._a, B._a]).astype(f.dtype, copy=False))
    R, piv = aug.rref()
    if any(c >= A.cols for c in piv):
        return None
    X = f.zeros(A.cols, B.cols)
    for r, c in enumerate(piv):
        X[c] = R._a[r, A.cols:]
    return Matrix._wrap(f, X)


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """``C^0 -> C^1 -> ... -> C^N`` with ``d[n]: C^n -> C^{n+1}``."""

    field: Field
    dims: tuple[int, ...]
    d: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "d", tuple(self.d))
        if len(self.d) != max(len(self.dims) - 1, 0):
            raise ShapeMismatch("need one differential between consecutive degrees")
        for n, dn in enumerate(self.d):
            if dn.field != self.field:
                raise ShapeMismatch(f"d^{n} is over {dn.field}, complex over {self.field}")
            if dn.shape != (self.dims[n + 1], self.dims[n]):
                raise ShapeMismatch(f"d^{n} has shape {dn.shape}, expected {(self.dims[n + 1], self.dims[n])}")
        for n in range(len(self.d) - 1):
            if not (self.d[n + 1] @ self.d[n]).is_zero():
                raise NotAComplex(f"d^{n + 1} o d^{n} != 0")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, n: int) -> Matrix:
        """``d^n``, with zero maps outside the stored range."""
        if 0 <= n < len(self.d):
            return self.d[n]
        src = self.dims[n] if 0 <= n <= self.top else 0
        tgt = self.dims[n + 1] if 0 <= n + 1 <= self.top else 0
        return Matrix.zeros(self.field, tgt, src)

    def cocycles(self, n: int) -> Subspace:
        return kernel_basis(self.differential(n))

    def coboundaries(self, n: int) -> Subspace:
        return image_basis(self.differential(n - 1))

    def cohomology_dims(self) -> list[int]:
        ranks = [dn.rank() for dn in self.d]
        out = []
        for n, dim in enumerate(self.dims):
            out.append(dim - (ranks[n] if n < len(ranks) else 0) - (ranks[n - 1] if n >= 1 else 0))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * dim for n, dim in enumerate(self.dims))


def complex_cohomology(C: CochainComplex, n: int, representatives: bool = False):
    """``dim H^n(C) = dim ker d^n - rank d^{n-1}``.

    With ``representatives=True`` returns ``(dim, reps)`` where the rows
    of ``reps`` are cocycles whose classes form a basis of ``H^n``.

    Raises:
        DegreeOutOfRange: ``n`` outside ``0..N``.
    """
    if not 0 <= n <= C.top:
        raise DegreeOutOfRange(f"degree {n} outside 0..{C.top}")
    if not representatives:
        rk_out = C.differential(n).rank()
        rk_in = C.differential(n - 1).rank() if n >= 1 else 0
        return C.dims[n] - rk_out - rk_in
    Z = C.cocycles(n)
    B = C.coboundaries(n)
    reps = complement_basis(Z, B)
    return reps.rows, reps


def complement_basis(Z: Subspace, B: Subspace) -> Matrix:
    """Rows of ``Z.basis``-combinations completing a basis of ``B`` to one of ``Z``."""
    quotient_dim(Z, B)
    chosen = B.basis
    picked = []
    rank = chosen.rows
    for k in range(Z.dim):
        cand = vstack([chosen, Z.basis.row_block(k, k + 1)])
        if cand.rank() > rank:
            chosen = cand
            rank += 1
            picked.append(k)
    return Z.basis.take_rows(picked)
