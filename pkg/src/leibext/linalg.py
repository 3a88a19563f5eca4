"""Exact linear algebra: row reduction, nullspaces, affine solves, subspaces.

Over QQ rows are cleared of denominators and reduced with fraction-free
(Bareiss) Gauss-Jordan elimination on Python integers; only the final pivot
normalisation introduces fractions.  Over a prime field plain Gauss-Jordan
is used.  Either way the output is the reduced row echelon form, so two
bases of the same subspace always produce identical :class:`Subspace`
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .fields import QQ, to_field, zeros

__all__ = [
    "rref",
    "rref_gauss",
    "nullspace",
    "solve_affine",
    "rank",
    "Subspace",
]


def _as_rows(A, field, ncols=None):
    arr = np.asarray(A, dtype=object)
    if arr.size == 0:
        if ncols is None:
            ncols = arr.shape[1] if arr.ndim == 2 else 0
        return [], ncols
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    rows = [[field(x) for x in row] for row in arr]
    return rows, arr.shape[1]


def _bareiss_rref(rows, ncols):
    """Fraction-free Gauss-Jordan on rational rows; returns (rref, pivots)."""
    M = []
    for row in rows:
        if not any(row):
            continue
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        M.append([Fraction(x).numerator * (den // Fraction(x).denominator) for x in row])
    nrows = len(M)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        prow = M[r]
        for i in range(nrows):
            if i == r:
                continue
            row = M[i]
            f = row[c]
            new = []
            for j in range(ncols):
                q, rem = divmod(piv * row[j] - f * prow[j], prev)
                if rem:
                    raise ArithmeticError("Bareiss division was not exact")
                new.append(q)
            M[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    out = []
    for i, c in enumerate(pivots):
        piv = M[i][c]
        out.append(tuple(Fraction(x, piv) for x in M[i]))
    return out, pivots


def rref_gauss(rows, ncols, field):
    """Textbook Gauss-Jordan over any field; also serves as the QQ cross-check."""
    M = [list(row) for row in rows]
    nrows = len(M)
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return [tuple(M[i]) for i in range(r)], pivots


def rref(A, field=QQ, ncols=None):
    """Nonzero rows of the reduced row echelon form of ``A`` and pivot columns."""
    rows, ncols = _as_rows(A, field, ncols)
    if not rows:
        return [], []
    if field is QQ or field == QQ:
        return _bareiss_rref(rows, ncols)
    return rref_gauss(rows, ncols, field)


def rank(A, field=QQ) -> int:
    return len(rref(A, field)[1])


def nullspace(A, field=QQ, ncols=None) -> "Subspace":
    """Canonical basis of ``{v : A v = 0}``.

    ``ncols`` is only needed when ``A`` has no rows (then the kernel is the
    whole space).
    """
    R, pivots = rref(A, field, ncols)
    if ncols is None:
        ncols = np.asarray(A, dtype=object).shape[-1]
    free = [c for c in range(ncols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, ncols, field)


def solve_affine(A, b, field=QQ):
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is inconsistent, otherwise
    ``(particular, kernel)`` with ``particular`` a 1-d object array (free
    variables set to zero) and ``kernel`` the nullspace of ``A``.
    """
    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: A has {A.shape[0]} rows, b has {b.shape[0]}")
    ncols = A.shape[1]
    kernel = nullspace(A, field, ncols=ncols)
    if A.shape[0] == 0:
        return zeros(ncols, field), kernel
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(aug, field)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols, field)
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x, kernel


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient_dim`` held by its RREF basis.

    Equal subspaces have equal ``rows``, so ``==`` is subspace equality.
    """

    ambient_dim: int
    rows: tuple
    field: object = QQ

    @classmethod
    def span(cls, vectors, ambient_dim: int, field=QQ) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vectors:
            return cls(ambient_dim, (), field)
        R, _ = rref(vectors, field, ncols=ambient_dim)
        return cls(ambient_dim, tuple(R), field)

    @classmethod
    def full(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls.span(np.eye(ambient_dim, dtype=int).astype(object), ambient_dim, field)

    @classmethod
    def zero(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls(ambient_dim, (), field)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.rows]

    @property
    def basis(self) -> np.ndarray:
        """Basis vectors as the rows of a ``dim x ambient_dim`` object array."""
        if not self.rows:
            return np.empty((0, self.ambient_dim), dtype=object)
        return np.array(self.rows, dtype=object)

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, v) -> np.ndarray:
        """Residual of ``v`` after clearing its pivot entries; zero iff ``v`` is a member."""
        v = to_field(v, self.field).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise ValueError("vector does not live in the ambient space")
        for row, pc in zip(self.rows, self.pivots):
            if v[pc] != 0:
                v = v - v[pc] * np.array(row, dtype=object)
        return v

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    __contains__ = contains

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of ``v`` in the RREF basis; ``ValueError`` if not a member."""
        v = to_field(v, self.field).reshape(-1)
        coords = np.array([v[pc] for pc in self.pivots], dtype=object)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return coords

    def residual_matrix(self) -> np.ndarray:
        """Matrix ``M`` with ``M v = v - sum_i v[pivot_i] row_i``.

        ``M v = 0`` exactly when ``v`` lies in the subspace, which turns a
        membership constraint into linear equations.
        """
        n = self.ambient_dim
        M = zeros((n, n), self.field)
        for i in range(n):
            M[i, i] = self.field.one
        for row, pc in zip(self.rows, self.pivots):
            for i in range(n):
                M[i, pc] = M[i, pc] - row[i]
        return M

    def annihilator(self) -> "Subspace":
        return nullspace(self.basis, self.field, ncols=self.ambient_dim)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.rows)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        constraints = np.concatenate(
            [self.annihilator().basis, other.annihilator().basis], axis=0
        )
        return nullspace(constraints, self.field, ncols=self.ambient_dim)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient_dim, self.field)

    __and__ = intersection
    __add__ = sum

    def __repr__(self):
        from .fields import format_scalar

        vecs = ", ".join("(" + ", ".join(format_scalar(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, [{vecs}])"
