"""Finite-dimensional (left) Leibniz algebras given by structure constants.

Convention: ``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
Linear maps are matrices acting on column vectors, so ``D[a, b]`` is the
``e_a``-coefficient of ``D e_b``.  Matrix spaces (derivations, Pi, Xi) are
flattened row-major; a derivation pair ``(DL, DR)`` becomes the vector
``concat(DL.ravel(), DR.ravel())`` of length ``2 n^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .fields import einsum, einsum_sum, QQ, identity, is_zero, to_field, zeros
from .linalg import Subspace, nullspace

__all__ = [
    "LeibnizAlgebra",
    "LeibnizReport",
    "ClosureError",
    "bracket_eval",
    "check_leibniz",
    "left_center",
    "right_center",
    "delta_subspace",
    "derivations",
    "ad_maps",
    "semidirect_bracket",
    "bracket_failures",
    "der_pairs",
    "semidirect_der_algebra",
    "pi_subspace",
    "xi_subspace",
    "check_representation",
    "pair_matrices",
    "pair_vector",
    "abelian",
    "direct_sum",
]


class ClosureError(ArithmeticError):
    """A computed bracket left a span that theory says it cannot leave."""


@dataclass(eq=False)
class LeibnizAlgebra:
    name: str
    basis: tuple
    c: np.ndarray
    field: object = QQ

    def __post_init__(self):
        self.basis = tuple(self.basis)
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise ValueError(f"duplicate basis labels in {self.basis}")
        self.c = to_field(self.c, self.field)
        if n == 0:
            self.c = self.c.reshape(0, 0, 0)
        if self.c.shape != (n, n, n):
            raise ValueError(f"structure constants have shape {self.c.shape}, expected {(n, n, n)}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_brackets(cls, name, basis, brackets: dict, field=QQ) -> "LeibnizAlgebra":
        """Build from ``{(left, right): {label: coeff}}``; omitted brackets are zero."""
        basis = tuple(basis)
        index = {b: i for i, b in enumerate(basis)}
        c = zeros((len(basis),) * 3, field)
        for (a, b), value in brackets.items():
            for label, coeff in value.items():
                c[index[a], index[b], index[label]] += field(coeff)
        return cls(name, basis, c, field)

    def vector(self, coeffs: dict | None = None) -> np.ndarray:
        """Vector from ``{label: coeff}``."""
        v = zeros(self.dim, self.field)
        for label, x in (coeffs or {}).items():
            v[self.basis.index(label)] = self.field(x)
        return v

    def unit(self, i: int) -> np.ndarray:
        v = zeros(self.dim, self.field)
        v[i] = self.field.one
        return v

    def bracket(self, x, y) -> np.ndarray:
        return bracket_eval(self, x, y)

    def nonzero_brackets(self):
        """``(i, j, vector)`` for every nonzero ``[e_i, e_j]`` in index order."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                if not is_zero(self.c[i, j]):
                    out.append((i, j, self.c[i, j]))
        return out

    def is_antisymmetric(self) -> bool:
        return is_zero(self.c + self.c.transpose(1, 0, 2)) and all(
            is_zero(self.c[i, i]) for i in range(self.dim)
        )

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.field == other.field
            and self.c.shape == other.c.shape
            and bool(np.all(self.c == other.c))
        )

    def __repr__(self):
        return f"LeibnizAlgebra({self.name!r}, dim={self.dim})"


def abelian(n: int, name: str | None = None, field=QQ, prefix: str = "e") -> LeibnizAlgebra:
    basis = [f"{prefix}{i + 1}" for i in range(n)]
    return LeibnizAlgebra(name or f"abelian{n}", basis, zeros((n, n, n), field), field)


def sum_labels(left, right) -> tuple:
    """Basis labels for ``left + right``; clashing labels get ``_1``/``_2`` suffixes."""
    left, right = tuple(left), tuple(right)
    if not set(left) & set(right):
        return left + right
    return tuple(f"{b}_1" for b in left) + tuple(f"{b}_2" for b in right)


def direct_sum(g: LeibnizAlgebra, h: LeibnizAlgebra, name: str | None = None) -> LeibnizAlgebra:
    """Direct sum with g-basis first; cross brackets vanish."""
    n, m = g.dim, h.dim
    c = zeros((n + m,) * 3, g.field)
    c[:n, :n, :n] = g.c
    c[n:, n:, n:] = h.c
    return LeibnizAlgebra(name or f"{g.name}+{h.name}", sum_labels(g.basis, h.basis), c, g.field)


def bracket_eval(A: LeibnizAlgebra, x, y) -> np.ndarray:
    x = to_field(x, A.field).reshape(-1)
    y = to_field(y, A.field).reshape(-1)
    if x.shape[0] != A.dim or y.shape[0] != A.dim:
        raise ValueError(f"vectors of length {x.shape[0]}, {y.shape[0]} in a {A.dim}-dim algebra")
    return einsum("i,j,ijk->k", x, y, A.c)


class LeibnizReport(NamedTuple):
    ok: bool
    violations: list  # (i, j, k, residual) with 0-based indices


def leibniz_residual(c: np.ndarray) -> np.ndarray:
    """``R[i,j,k] = [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]``."""
    return einsum_sum([
        (1, "jkm,imn->ijkn", (c, c)),
        (-1, "ijm,mkn->ijkn", (c, c)),
        (-1, "ikm,jmn->ijkn", (c, c)),
    ])


def check_leibniz(A: LeibnizAlgebra) -> LeibnizReport:
    """Check the left Leibniz identity on every basis triple; report all failures."""
    n = A.dim
    if n == 0:
        return LeibnizReport(True, [])
    R = leibniz_residual(A.c)
    violations = [
        (i, j, k, R[i, j, k])
        for i in range(n)
        for j in range(n)
        for k in range(n)
        if not is_zero(R[i, j, k])
    ]
    return LeibnizReport(not violations, violations)


def left_center(A: LeibnizAlgebra) -> Subspace:
    """``{x : [x, y] = 0 for all y}``."""
    n = A.dim
    system = A.c.transpose(1, 2, 0).reshape(n * n, n)
    return nullspace(system, A.field, ncols=n)


def right_center(A: LeibnizAlgebra) -> Subspace:
    """``{a : [y, a] = 0 for all y}``."""
    n = A.dim
    system = A.c.transpose(0, 2, 1).reshape(n * n, n)
    return nullspace(system, A.field, ncols=n)


def delta_subspace(A: LeibnizAlgebra) -> Subspace:
    """Span of all squares ``[a, a]``.

    Generated by ``[e_i, e_i]`` and ``[e_i, e_j] + [e_j, e_i]``; polarisation
    needs characteristic other than 2.
    """
    if A.field.characteristic == 2:
        raise ValueError("polarisation of squares fails in characteristic 2")
    n = A.dim
    gens = [A.c[i, i] for i in range(n)]
    gens += [A.c[i, j] + A.c[j, i] for i in range(n) for j in range(i + 1, n)]
    return Subspace.span(gens, n, A.field)


def _derivation_system(c: np.ndarray, side: str, field) -> np.ndarray:
    """Rows ``(i, j, out)``, columns ``(a, b)`` for the unknown matrix ``D[a, b]``."""
    n = c.shape[0]
    eye = identity(n, field)
    # D[e_i, e_j] component out: sum_b c[i,j,b] D[out,b]
    lhs = einsum("ijb,oa->ijoab", c, eye)
    if side == "left":
        # [D e_i, e_j] + [e_i, D e_j]
        t1 = einsum("ajo,bi->ijoab", c, eye)
        t2 = einsum("iao,bj->ijoab", c, eye)
        system = lhs - t1 - t2
    elif side == "right":
        # [e_i, D e_j] - [e_j, D e_i]
        t1 = einsum("iao,bj->ijoab", c, eye)
        t2 = einsum("jao,bi->ijoab", c, eye)
        system = lhs - t1 + t2
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return system.reshape(n**3, n**2)


def derivations(A: LeibnizAlgebra, side: str = "left") -> Subspace:
    """Left or right derivations as a subspace of flattened ``n x n`` matrices.

    left:  ``D[x,y] = [Dx,y] + [x,Dy]``
    right: ``D[x,y] = [x,Dy] - [y,Dx]``
    """
    n = A.dim
    if n == 0:
        return Subspace.zero(0, A.field)
    return nullspace(_derivation_system(A.c, side, A.field), A.field, ncols=n * n)


def is_derivation(A: LeibnizAlgebra, D, side: str) -> bool:
    D = to_field(D, A.field)
    system = _derivation_system(A.c, side, A.field)
    return is_zero(system.dot(D.reshape(-1)))


def ad_maps(A: LeibnizAlgebra, x) -> tuple:
    """Matrices of ``y -> [x, y]`` and ``y -> [y, x]``."""
    x = to_field(x, A.field).reshape(-1)
    adL = einsum("i,ijk->kj", x, A.c)
    adR = einsum("j,ijk->ki", x, A.c)
    return adL, adR


def pair_vector(DL, DR) -> np.ndarray:
    return np.concatenate([np.asarray(DL, dtype=object).reshape(-1),
                           np.asarray(DR, dtype=object).reshape(-1)])


def pair_matrices(v, n: int) -> tuple:
    v = np.asarray(v, dtype=object).reshape(-1)
    return v[: n * n].reshape(n, n), v[n * n:].reshape(n, n)


def semidirect_bracket(p1, p2) -> tuple:
    """``[(L1, R1), (L2, R2)]_s = ([L1, L2], [L1, R2])``."""
    L1, _ = p1
    L2, R2 = p2
    return L1.dot(L2) - L2.dot(L1), L1.dot(R2) - R2.dot(L1)


def der_pairs(A: LeibnizAlgebra) -> Subspace:
    """``Der^L(A) + Der^R(A)`` inside the ``2 n^2`` pair space."""
    n = A.dim
    N = n * n
    dl = derivations(A, "left")
    dr = derivations(A, "right")
    vecs = [list(r) + [A.field.zero] * N for r in dl.rows]
    vecs += [[A.field.zero] * N + list(r) for r in dr.rows]
    return Subspace.span(vecs, 2 * N, A.field)


def _bracket_table(space: Subspace, n: int, field) -> np.ndarray:
    """Structure constants of ``[.,.]_s`` restricted to ``space`` (in RREF coordinates)."""
    pairs = [pair_matrices(r, n) for r in space.rows]
    d = space.dim
    c = zeros((d, d, d), field)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            v = pair_vector(*semidirect_bracket(p, q))
            try:
                c[i, j] = space.coordinates(v)
            except ValueError as exc:
                raise ClosureError(f"bracket of basis pairs {i}, {j} left the subspace") from exc
    return c


def bracket_failures(left: Subspace, right: Subspace, target: Subspace, n: int) -> list:
    """Index pairs ``(i, j)`` of basis pairs with ``[left_i, right_j]_s`` outside ``target``.

    An empty list means ``[left, right]_s`` lies in ``target``: closure when
    all three coincide, an ideal property when only ``right`` and ``target`` do.
    """
    P = [pair_matrices(r, n) for r in left.rows]
    Q = [pair_matrices(r, n) for r in right.rows]
    return [
        (i, j)
        for i, p in enumerate(P)
        for j, q in enumerate(Q)
        if not target.contains(pair_vector(*semidirect_bracket(p, q)))
    ]


def semidirect_der_algebra(A: LeibnizAlgebra) -> LeibnizAlgebra:
    """``Der^L(A) + Der^R(A)`` with the semidirect bracket, as a Leibniz algebra.

    The basis is the RREF basis of ``Der^L`` (labels ``L1, ...``) followed by
    that of ``Der^R`` (``R1, ...``).
    """
    space = der_pairs(A)
    dim_l = derivations(A, "left").dim
    labels = [f"L{i + 1}" for i in range(dim_l)]
    labels += [f"R{i + 1}" for i in range(space.dim - dim_l)]
    c = _bracket_table(space, A.dim, A.field)
    return LeibnizAlgebra(f"Der({A.name})", labels, c, A.field)


def _pair_system(A: LeibnizAlgebra, target: Subspace, kill: Subspace | None) -> np.ndarray:
    """Linear system cutting out pairs with ``(DL + DR) e_i`` in ``target``."""
    n = A.dim
    N = n * n
    f = A.field
    blocks = []
    zl = zeros((n**3, N), f)
    left = _derivation_system(A.c, "left", f)
    right = _derivation_system(A.c, "right", f)
    blocks.append(np.concatenate([left, zl], axis=1))
    blocks.append(np.concatenate([zl, right], axis=1))
    # membership: M (DL + DR) e_i = 0; rows (i, k), cols (a, b)
    M = target.residual_matrix()
    eye = identity(n, f)
    mem = einsum("ka,bi->ikab", M, eye).reshape(n * n, N)
    blocks.append(np.concatenate([mem, mem], axis=1))
    if kill is not None and kill.dim:
        # DR z = 0 for each basis z; rows (z, a), cols (a', b)
        Z = kill.basis
        kr = einsum("zb,ac->zacb", Z, eye).reshape(kill.dim * n, N)
        blocks.append(np.concatenate([zeros((kill.dim * n, N), f), kr], axis=1))
    return np.concatenate(blocks, axis=0)


def pi_subspace(A: LeibnizAlgebra) -> Subspace:
    """Pairs ``(DL, DR)`` of derivations with ``DL a + DR a`` in the span of squares."""
    n = A.dim
    return nullspace(_pair_system(A, delta_subspace(A), None), A.field, ncols=2 * n * n)


def xi_subspace(A: LeibnizAlgebra) -> Subspace:
    """Pairs with ``DL a + DR a`` in the left center and ``DR`` killing the left center."""
    n = A.dim
    Z = left_center(A)
    return nullspace(_pair_system(A, Z, Z), A.field, ncols=2 * n * n)


def check_representation(A: LeibnizAlgebra, l: Sequence, r: Sequence) -> bool:
    """Check ``l_[x,y] = [l_x, l_y]``, ``r_[x,y] = [l_x, r_y]``, ``r_y l_x = -r_y r_x``."""
    n = A.dim
    l = to_field(l, A.field)
    r = to_field(r, A.field)
    if l.shape[0] != n or r.shape[0] != n or l.shape[1:] != r.shape[1:]:
        raise ValueError("representation maps do not match the algebra")
    for i in range(n):
        for j in range(n):
            lij = np.tensordot(A.c[i, j], l, axes=1)
            rij = np.tensordot(A.c[i, j], r, axes=1)
            if not is_zero(lij - (l[i].dot(l[j]) - l[j].dot(l[i]))):
                return False
            if not is_zero(rij - (l[i].dot(r[j]) - r[j].dot(l[i]))):
                return False
            if not is_zero(r[j].dot(l[i]) + r[j].dot(r[i])):
                return False
    return True
