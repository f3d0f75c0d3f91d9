"""Exact scalars and dense rational linear algebra.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator,
arbitrary precision).  Dual scalars model the ring Q[t]/(t^2) that carries
first-order deformation data.  Matrices are immutable row-major tables of
Fractions; elimination pivots on the first nonzero entry of each column so
every reduced form, kernel basis, and quotient representative is
reproducible across runs.  No floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ImageNotContained, ParseError

Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rat(text):
    """Parse a scalar written as ``p`` or ``p/q`` into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Q(text)
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            d = int(den)
            if d == 0:
                raise ZeroDivisionError
            return Q(int(num), d)
        return Q(int(s))
    except (ValueError, ZeroDivisionError):
        raise ParseError("not a rational scalar: %r" % (text,))


def rat_str(q):
    """Render a Fraction as ``p`` or ``p/q``."""
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class DualScalar:
    """Element a + b*t of Q[t]/(t^2); t*t = 0 exactly."""

    __slots__ = ("value", "infinitesimal")

    def __init__(self, value=0, infinitesimal=0):
        self.value = Q(value)
        self.infinitesimal = Q(infinitesimal)

    @staticmethod
    def coerce(x):
        if isinstance(x, DualScalar):
            return x
        return DualScalar(x)

    def __add__(self, other):
        o = DualScalar.coerce(other)
        return DualScalar(self.value + o.value, self.infinitesimal + o.infinitesimal)

    __radd__ = __add__

    def __sub__(self, other):
        o = DualScalar.coerce(other)
        return DualScalar(self.value - o.value, self.infinitesimal - o.infinitesimal)

    def __rsub__(self, other):
        return DualScalar.coerce(other) - self

    def __mul__(self, other):
        o = DualScalar.coerce(other)
        return DualScalar(
            self.value * o.value,
            self.value * o.infinitesimal + self.infinitesimal * o.value,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return DualScalar(-self.value, -self.infinitesimal)

    def __eq__(self, other):
        o = DualScalar.coerce(other)
        return self.value == o.value and self.infinitesimal == o.infinitesimal

    def __hash__(self):
        return hash((self.value, self.infinitesimal))

    def __bool__(self):
        return bool(self.value) or bool(self.infinitesimal)

    def __repr__(self):
        return "DualScalar(%s, %s)" % (rat_str(self.value), rat_str(self.infinitesimal))


def dual(value=0, infinitesimal=0):
    return DualScalar(value, infinitesimal)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = tuple(tuple(Q(x) for x in row) for row in entries)
        self.rows = len(entries)
        if entries:
            self.cols = len(entries[0])
            if any(len(row) != self.cols for row in entries):
                raise ValueError("ragged matrix")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.cols = cols
        self.entries = entries

    @classmethod
    def zero(cls, rows, cols):
        return cls(tuple((ZERO,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n):
        return cls(
            tuple(
                tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
            ),
            cols=n,
        )

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if columns:
            rows = len(columns[0])
        elif rows is None:
            raise ValueError("empty column list needs an explicit row count")
        return cls(
            tuple(tuple(col[i] for col in columns) for i in range(rows)),
            cols=len(columns),
        )

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def apply(self, vec):
        """Matrix-vector product; works over Fraction or DualScalar entries."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((row[j] * vec[j] for j in range(self.cols)), 0)
            for row in self.entries
        )

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return Matrix(
            tuple(
                tuple(
                    sum(
                        (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                        ZERO,
                    )
                    for j in range(other.cols)
                )
                for i in range(self.rows)
            ),
            cols=other.cols,
        )

    def add(self, other):
        return Matrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
            cols=self.cols,
        )

    def sub(self, other):
        return Matrix(
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
            cols=self.cols,
        )

    def scale(self, c):
        c = Q(c)
        return Matrix(
            tuple(tuple(c * a for a in row) for row in self.entries), cols=self.cols
        )

    def transpose(self):
        return Matrix(
            tuple(self.column(i) for i in range(self.cols)), cols=self.rows
        )

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(rat_str(x) for x in row) for row in self.entries
        )
        return "Matrix[%s]" % body


def rref(m):
    """Reduced row-echelon form with deterministic first-nonzero pivoting.

    Returns (reduced matrix, tuple of pivot column indices).
    """
    work = [list(row) for row in m.entries]
    pivots = []
    piv_row = 0
    for col in range(m.cols):
        found = None
        for r in range(piv_row, m.rows):
            if work[r][col] != 0:
                found = r
                break
        if found is None:
            continue
        work[piv_row], work[found] = work[found], work[piv_row]
        pv = work[piv_row][col]
        work[piv_row] = [x / pv for x in work[piv_row]]
        for r in range(m.rows):
            if r != piv_row and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[piv_row])]
        pivots.append(col)
        piv_row += 1
        if piv_row == m.rows:
            break
    return Matrix(work, cols=m.cols), tuple(pivots)


def rank(m):
    return len(rref(m)[1])


class SubspaceBasis:
    """Linearly independent spanning vectors of a subspace of Q^ambient_dim."""

    __slots__ = ("ambient_dim", "vectors")

    def __init__(self, ambient_dim, vectors, check=True):
        self.ambient_dim = ambient_dim
        self.vectors = tuple(tuple(Q(x) for x in v) for v in vectors)
        for v in self.vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if check and self.vectors:
            if rank(Matrix(self.vectors, cols=ambient_dim)) != len(self.vectors):
                raise ValueError("vectors are linearly dependent")

    @property
    def dim(self):
        return len(self.vectors)

    def contains(self, vec):
        if not self.vectors:
            return all(x == 0 for x in vec)
        stacked = Matrix(self.vectors + (tuple(vec),), cols=self.ambient_dim)
        return rank(stacked) == self.dim

    def __repr__(self):
        return "SubspaceBasis(dim %d in Q^%d)" % (self.dim, self.ambient_dim)


def kernel_basis(m):
    """Basis of ker(m), one vector per free column, in column order."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.entries[r][fc]
        vectors.append(tuple(v))
    return SubspaceBasis(m.cols, vectors, check=False)


def image_basis(m):
    """Basis of the column space: the pivot columns of m, in order."""
    _, pivots = rref(m)
    return SubspaceBasis(m.rows, [m.column(c) for c in pivots], check=False)


def solve(m, b):
    """One exact solution of m x = b, or None when inconsistent."""
    aug = Matrix(
        tuple(row + (bv,) for row, bv in zip(m.entries, b)), cols=m.cols + 1
    )
    reduced, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced.entries[r][m.cols]
    return tuple(x)


def quotient_dim(kernel, image):
    """dim(kernel / image); raises ImageNotContained when image is not inside."""
    if kernel.ambient_dim != image.ambient_dim:
        raise ValueError("ambient dimensions differ")
    for v in image.vectors:
        if not kernel.contains(v):
            raise ImageNotContained(
                "image vector %s lies outside the kernel; the coboundary upstream "
                "does not square to zero" % (v,)
            )
    return kernel.dim - image.dim


def extend_basis(sub, full):
    """Complete ``sub`` to a basis of ``full`` and return the added vectors.

    Vectors of ``full`` are scanned in order and kept whenever they enlarge
    the span, so the completion is canonical for a fixed basis ordering.
    These completions are the quotient representatives used everywhere.
    """
    if sub.ambient_dim != full.ambient_dim:
        raise ValueError("ambient dimensions differ")
    kept = list(sub.vectors)
    added = []
    current_rank = sub.dim
    for v in full.vectors:
        candidate = Matrix(tuple(kept) + (v,), cols=full.ambient_dim)
        r = rank(candidate)
        if r > current_rank:
            kept.append(v)
            added.append(v)
            current_rank = r
    return added


class QuotientSpace:
    """kernel / image with canonical representatives and exact coordinates."""

    def __init__(self, kernel, image):
        self.kernel = kernel
        self.image = image
        self.dim = quotient_dim(kernel, image)
        self.representatives = extend_basis(image, kernel)
        cols = list(image.vectors) + list(self.representatives)
        self._solver = (
            Matrix.from_columns(cols, rows=kernel.ambient_dim) if cols else None
        )

    def coordinates(self, vec):
        """Class coordinates of ``vec`` relative to the representatives."""
        if self._solver is None:
            if any(x != 0 for x in vec):
                raise ValueError("vector lies outside the kernel")
            return ()
        x = solve(self._solver, vec)
        if x is None:
            raise ValueError("vector lies outside the kernel")
        return tuple(x[self.image.dim :])

    def is_trivial_class(self, vec):
        return all(c == 0 for c in self.coordinates(vec))
