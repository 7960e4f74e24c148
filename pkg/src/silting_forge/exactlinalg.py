"""Exact scalar arithmetic and dense linear algebra over F_p and the rationals.

Everything above this module reduces to these kernels.  Two design rules hold
throughout: arithmetic is always exact (prime-field residues as Python ints,
rationals as ``fractions.Fraction``), and every elimination uses the same
deterministic pivoting (leftmost pivot column, first nonzero row) so that all
downstream bases and certificates are byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class ExactError(Exception):
    """Base error for the engine; carries optional structured diagnostics."""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers p <= 2^31)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Exact ground field: ``prime`` (F_p, p prime <= 2^31) or ``rational``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not (2 <= self.p <= 2**31) or not _is_prime(self.p):
                raise ExactError(f"field parameter p={self.p!r} is not a prime <= 2^31")
        elif self.kind == "rational":
            if self.p is not None:
                raise ExactError("rational field takes no parameter p")
        else:
            raise ExactError(f"unknown field kind {self.kind!r}")

    # -- scalar arithmetic ------------------------------------------------
    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def coerce(self, x):
        """Accept int / Fraction / scalar string and return a field scalar."""
        if isinstance(x, str):
            return self.from_str(x)
        if self.kind == "prime":
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ExactError(f"denominator of {x} vanishes mod {self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a):
        if self.is_zero(a):
            raise ExactError("division by zero")
        return pow(a, -1, self.p) if self.kind == "prime" else 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str):
        s = s.strip()
        if self.kind == "prime":
            if "/" in s:
                num, den = s.split("/")
                return self.coerce(Fraction(int(num), int(den)))
            return int(s) % self.p
        return Fraction(s)

    def elements(self) -> Iterator:
        """Iterate all field elements (prime fields only)."""
        if self.kind != "prime":
            raise ExactError("cannot enumerate the rationals")
        return iter(range(self.p))

    def size(self) -> int | None:
        return self.p if self.kind == "prime" else None

    def random(self, rng):
        if self.kind == "prime":
            return rng.randrange(self.p)
        return Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))


class Matrix:
    """Dense row-major exact matrix over a FieldSpec."""

    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field: FieldSpec, data: Sequence[Sequence], nrows: int | None = None, ncols: int | None = None):
        self.field = field
        rows = [list(r) for r in data]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ExactError(f"ragged matrix data for shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self.data = rows

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        return cls(field, [[field.coerce(x) for x in r] for r in rows])

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def column(cls, field: FieldSpec, entries: Sequence) -> "Matrix":
        return cls(field, [[field.coerce(x)] for x in entries], len(entries), 1)

    def copy(self) -> "Matrix":
        return Matrix(self.field, [row[:] for row in self.data], self.nrows, self.ncols)

    # -- basic ops ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.kind}{self.field.p or ''})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other, same=True)
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other, same=True)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(a) for a in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def _check_shape(self, other: "Matrix", same: bool = False):
        if self.field != other.field:
            raise ExactError("field mismatch")
        if same and (self.nrows != other.nrows or self.ncols != other.ncols):
            raise ExactError(f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def mul(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        if self.ncols != other.nrows:
            raise ExactError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        f = self.field
        ot = [[other.data[k][j] for k in range(other.nrows)] for j in range(other.ncols)]
        if f.kind == "prime":
            p = f.p
            out = [[sum(a * b for a, b in zip(row, col)) % p for col in ot] for row in self.data]
            return Matrix(f, out, self.nrows, other.ncols)
        zero = f.zero()
        out = [[sum((a * b for a, b in zip(row, col)), zero) for col in ot] for row in self.data]
        return Matrix(f, out, self.nrows, other.ncols)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.data], self.nrows, self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.data)] if self.data and self.ncols else [[] for _ in range(self.ncols)] if self.ncols else [], self.ncols, self.nrows)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.data)

    def power(self, n: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ExactError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base)
            n >>= 1
        return result

    # -- stacking -----------------------------------------------------------
    @staticmethod
    def hstack(mats: Sequence["Matrix"]) -> "Matrix":
        mats = list(mats)
        if not mats:
            raise ExactError("hstack of nothing")
        nrows = mats[0].nrows
        if any(m.nrows != nrows for m in mats):
            raise ExactError("hstack row mismatch")
        data = [[x for m in mats for x in m.data[i]] for i in range(nrows)]
        return Matrix(mats[0].field, data, nrows, sum(m.ncols for m in mats))

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        mats = list(mats)
        if not mats:
            raise ExactError("vstack of nothing")
        ncols = mats[0].ncols
        if any(m.ncols != ncols for m in mats):
            raise ExactError("vstack column mismatch")
        data = [row[:] for m in mats for row in m.data]
        return Matrix(mats[0].field, data, sum(m.nrows for m in mats), ncols)

    @staticmethod
    def block_diag(field: FieldSpec, mats: Sequence["Matrix"]) -> "Matrix":
        nrows = sum(m.nrows for m in mats)
        ncols = sum(m.ncols for m in mats)
        out = Matrix.zeros(field, nrows, ncols)
        r = c = 0
        for m in mats:
            for i in range(m.nrows):
                out.data[r + i][c : c + m.ncols] = m.data[i][:]
            r += m.nrows
            c += m.ncols
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) is self[i][j] * other."""
        self._check_shape(other)
        f = self.field
        out = Matrix.zeros(f, self.nrows * other.nrows, self.ncols * other.ncols)
        for i in range(self.nrows):
            for j in range(self.ncols):
                a = self.data[i][j]
                if a == 0:
                    continue
                for k in range(other.nrows):
                    orow = other.data[k]
                    trow = out.data[i * other.nrows + k]
                    base = j * other.ncols
                    for l in range(other.ncols):
                        b = orow[l]
                        if b != 0:
                            trow[base + l] = f.mul(a, b)
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def column_vector(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.nrows)]

    # -- serialization --------------------------------------------------------
    def to_lists(self) -> list[list[str]]:
        return [[self.field.to_str(x) for x in row] for row in self.data]

    @classmethod
    def from_lists(cls, field: FieldSpec, rows: Sequence[Sequence[str]], nrows: int | None = None, ncols: int | None = None) -> "Matrix":
        m = cls(field, [[field.from_str(str(x)) for x in r] for r in rows])
        if nrows is not None and (m.nrows, m.ncols) != (nrows, ncols):
            raise ExactError(f"matrix shape {m.nrows}x{m.ncols} does not match declared {nrows}x{ncols}")
        return m


def rref(m: Matrix) -> tuple[Matrix, int, Matrix]:
    """Reduced row echelon form.

    Returns ``(reduced, rank, rowops)`` with ``rowops @ m == reduced`` and
    ``rowops`` invertible.  Pivoting is deterministic: leftmost pivot column,
    first row with a nonzero entry.
    """
    f = m.field
    a = [row[:] for row in m.data]
    ops = Matrix.identity(f, m.nrows).data
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        pivot_row = None
        for i in range(r, m.nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        ops[r], ops[pivot_row] = ops[pivot_row], ops[r]
        inv = f.inv(a[r][c])
        if inv != f.one():
            a[r] = [f.mul(inv, x) for x in a[r]]
            ops[r] = [f.mul(inv, x) for x in ops[r]]
        for i in range(m.nrows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[r])]
                ops[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(ops[i], ops[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    reduced = Matrix(f, a, m.nrows, m.ncols)
    return reduced, r, Matrix(f, ops, m.nrows, m.nrows)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def pivot_columns(m: Matrix) -> list[int]:
    reduced, r, _ = rref(m)
    pivots = []
    for i in range(r):
        for j in range(m.ncols):
            if reduced.data[i][j] != 0:
                pivots.append(j)
                break
    return pivots


def solve(a: Matrix, b: Matrix) -> tuple[Matrix | None, list[Matrix]]:
    """Solve a·x = b for a column (or multi-column) right-hand side.

    Returns ``(particular, nullbasis)`` where ``particular`` is None when the
    system is inconsistent and ``nullbasis`` is a deterministic basis of
    ker(a) as column vectors (free variable set to one, others zero).
    """
    if a.nrows != b.nrows:
        raise ExactError(f"solve dimension mismatch: {a.nrows} rows vs {b.nrows}")
    f = a.field
    aug = Matrix.hstack([a, b])
    reduced, _, _ = rref(aug)
    pivots: list[tuple[int, int]] = []
    for i in range(reduced.nrows):
        for j in range(aug.ncols):
            if reduced.data[i][j] != 0:
                pivots.append((i, j))
                break
    if any(j >= a.ncols for _, j in pivots):
        particular = None
    else:
        particular = Matrix.zeros(f, a.ncols, b.ncols)
        for i, j in pivots:
            for k in range(b.ncols):
                particular.data[j][k] = reduced.data[i][a.ncols + k]
    pivot_cols = {j for _, j in pivots if j < a.ncols}
    row_of_pivot = {j: i for i, j in pivots if j < a.ncols}
    nullbasis: list[Matrix] = []
    for free in range(a.ncols):
        if free in pivot_cols:
            continue
        vec = Matrix.zeros(f, a.ncols, 1)
        vec.data[free][0] = f.one()
        for j, i in row_of_pivot.items():
            vec.data[j][0] = f.neg(reduced.data[i][free])
        nullbasis.append(vec)
    return particular, nullbasis


def nullspace(a: Matrix) -> list[Matrix]:
    return solve(a, Matrix.zeros(a.field, a.nrows, 1))[1]


def invert(m: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or None when singular."""
    if m.nrows != m.ncols:
        raise ExactError("inverse of a non-square matrix")
    reduced, r, ops = rref(m)
    if r != m.nrows:
        return None
    return ops


# ---------------------------------------------------------------------------
# Subspace utilities.  A subspace of k^n is represented by its canonical
# basis: the nonzero rows of the rref of any spanning set (row convention).
# ---------------------------------------------------------------------------


def row_space_basis(vectors: Iterable[Sequence], field: FieldSpec, width: int) -> Matrix:
    """Canonical (rref) basis of the span of the given row vectors."""
    rows = [list(v) for v in vectors]
    if not rows:
        return Matrix.zeros(field, 0, width)
    m = Matrix(field, rows, len(rows), width)
    reduced, r, _ = rref(m)
    return Matrix(field, reduced.data[:r], r, width)


def in_row_space(vector: Sequence, basis: Matrix) -> bool:
    """Membership test against a canonical (rref) row basis."""
    f = basis.field
    v = list(vector)
    for row in basis.data:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is not None and v[lead] != 0:
            c = v[lead]
            v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def reduce_mod_row_space(vector: Sequence, basis: Matrix) -> list:
    """Canonical representative of ``vector`` modulo a canonical row basis."""
    f = basis.field
    v = list(vector)
    for row in basis.data:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is not None and v[lead] != 0:
            c = v[lead]
            v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
    return v


def quotient_map(basis: Matrix, width: int) -> tuple[Matrix, list[int]]:
    """Linear projection k^width -> k^(width - rank) killing exactly the span.

    Returns ``(proj, coordinate_labels)`` where the retained coordinates are
    the non-pivot positions of the canonical basis, in increasing order.
    """
    f = basis.field
    pivots = []
    for row in basis.data:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is not None:
            pivots.append(lead)
    keep = [j for j in range(width) if j not in pivots]
    # Reduction mod a canonical basis is linear: reduce(x) = x - sum over
    # basis rows of x[lead] * row.  Restricting to the kept coordinates gives
    # the projection matrix directly.
    proj = Matrix.zeros(f, len(keep), width)
    for i, j in enumerate(keep):
        proj.data[i][j] = f.one()
    for row in basis.data:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            continue
        for i, j in enumerate(keep):
            proj.data[i][lead] = f.neg(row[j])
    return proj, keep
