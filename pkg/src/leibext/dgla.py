"""The graded cochain complex of a Leibniz algebra and Maurer-Cartan elements.

A degree-``k`` cochain takes ``k + 1`` arguments: its tensor has shape
``(N,) * (k + 1) + (M,)`` with the output index last.  So the bracket of an
algebra is a degree-1 cochain and a linear map is degree 0.

Shuffle convention: ``sh(k, q)`` are the permutations of ``k + q`` slots
that increase on the first ``k`` and on the last ``q`` slots, signed by
permutation parity.

``L`` is the sub-complex of cochains on ``g + h`` with values in ``h`` that
vanish when every argument lies in ``h``.  Its degree-1 elements are exactly
the triples ``(l, r, omega)`` and its MC elements are the cocycles.
"""

from __future__ import annotations

from itertools import combinations
from string import ascii_lowercase

import numpy as np

from .algebra import LeibnizAlgebra, check_leibniz, direct_sum
from .extensions import NonAbelianCocycle, cocycles_equivalent
from .fields import einsum_sum, half, is_zero, to_field, zeros

__all__ = [
    "Cochain",
    "LElement",
    "NotLeibniz",
    "NotInL",
    "NotMC",
    "MAX_DEGREE",
    "shuffles",
    "circle_product",
    "graded_bracket",
    "structure_cochain",
    "coboundary_explicit",
    "coboundary",
    "dbar",
    "restrict_check",
    "pack_cocycle",
    "unpack_cocycle",
    "phi_element",
    "mc_defect",
    "is_mc",
    "gauge_transform",
    "mc_equivalent",
]

MAX_DEGREE = 3

_ARGS = ascii_lowercase[:8]
_SUM = "y"
_OUT = "z"


class NotLeibniz(ValueError):
    pass


class NotInL(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"cochain is nonzero on the all-h argument tuple {witness}")


class NotMC(ValueError):
    pass


class Cochain:
    """Dense multilinear map ``V^(k+1) -> W`` with exact entries."""

    __slots__ = ("degree", "t", "field")

    def __init__(self, degree: int, t, field):
        if degree < 0 or degree > MAX_DEGREE:
            raise ValueError(f"degree must lie in 0..{MAX_DEGREE}, got {degree}")
        t = to_field(t, field)
        if t.ndim != degree + 2:
            raise ValueError(f"degree-{degree} cochain needs a rank-{degree + 2} tensor, got rank {t.ndim}")
        if len(set(t.shape[:-1])) > 1:
            raise ValueError(f"argument slots disagree in dimension: {t.shape}")
        self.degree = degree
        self.t = t
        self.field = field

    @classmethod
    def zero(cls, degree, domain_dim, codomain_dim, field):
        return cls(degree, zeros((domain_dim,) * (degree + 1) + (codomain_dim,), field), field)

    @property
    def domain_dim(self) -> int:
        return self.t.shape[0]

    @property
    def codomain_dim(self) -> int:
        return self.t.shape[-1]

    def _same(self, other):
        if not isinstance(other, Cochain) or other.t.shape != self.t.shape:
            raise ValueError("cochains differ in degree or shape")

    def __add__(self, other):
        self._same(other)
        return Cochain(self.degree, self.t + other.t, self.field)

    def __sub__(self, other):
        self._same(other)
        return Cochain(self.degree, self.t - other.t, self.field)

    def __neg__(self):
        return Cochain(self.degree, -self.t, self.field)

    def scale(self, s):
        return Cochain(self.degree, self.t * self.field(s), self.field)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.degree == other.degree and self.t.shape == other.t.shape and bool(np.all(self.t == other.t))

    __hash__ = None

    def is_zero(self) -> bool:
        return is_zero(self.t)

    def __call__(self, *vectors) -> np.ndarray:
        """Evaluate on ``degree + 1`` coordinate vectors."""
        if len(vectors) != self.degree + 1:
            raise ValueError(f"degree-{self.degree} cochain takes {self.degree + 1} arguments")
        out = self.t
        for v in vectors:
            out = np.tensordot(to_field(v, self.field), out, axes=(0, 0))
        return out

    def __repr__(self):
        return f"Cochain(degree={self.degree}, {self.domain_dim} -> {self.codomain_dim})"


def shuffles(k: int, q: int):
    """Yield ``(sigma, sign)`` for each ``(k, q)``-shuffle; ``sigma`` is 0-based."""
    for first in combinations(range(k + q), k):
        rest = [i for i in range(k + q) if i not in first]
        sigma = tuple(first) + tuple(rest)
        inversions = sum(1 for a in first for b in rest if a > b)
        yield sigma, (-1) ** inversions


def _circle_terms(P: Cochain, Q: Cochain, outer: int) -> list:
    """Signed einsum terms of ``outer * (P o Q)``."""
    p, q = P.degree, Q.degree
    if p + q > MAX_DEGREE:
        raise ValueError(f"degree {p + q} exceeds the supported maximum {MAX_DEGREE}")
    N = P.domain_dim
    if Q.domain_dim != N or Q.codomain_dim != N:
        raise ValueError("Q must map the carrying space of P to itself")
    args = _ARGS[: p + q + 1]
    out_sub = args + _OUT
    terms = []
    for k in range(p + 1):
        koszul = (-1) ** (k * q)
        tail = args[k + q + 1 :]
        for sigma, sign in shuffles(k, q):
            head = "".join(args[s] for s in sigma[:k])
            inner = "".join(args[s] for s in sigma[k:]) + args[k + q]
            expr = f"{head}{_SUM}{tail}{_OUT},{inner}{_SUM}->{out_sub}"
            terms.append((outer * koszul * sign, expr, (P.t, Q.t)))
    return terms


def circle_product(P: Cochain, Q: Cochain) -> Cochain:
    """``P o Q``: insert ``Q`` into ``P`` summed over shuffles with the Koszul sign ``(-1)^(kq)``."""
    return Cochain(P.degree + Q.degree, einsum_sum(_circle_terms(P, Q, 1)), P.field)


def graded_bracket(P: Cochain, Q: Cochain) -> Cochain:
    """``[P, Q] = P o Q + (-1)^(pq+1) Q o P``."""
    sign = (-1) ** (P.degree * Q.degree + 1)
    terms = _circle_terms(P, Q, 1) + _circle_terms(Q, P, sign)
    return Cochain(P.degree + Q.degree, einsum_sum(terms), P.field)


def structure_cochain(A: LeibnizAlgebra) -> Cochain:
    return Cochain(1, A.c, A.field)


def coboundary_explicit(A: LeibnizAlgebra, P: Cochain) -> Cochain:
    """Coboundary with coefficients in the adjoint representation, term by term.

    For ``P`` of degree ``k - 1`` and arguments ``x_1 .. x_{k+1}``::

        sum_i (-1)^(i+1) [x_i, P(.. ^x_i ..)]
        + (-1)^(k+1) [P(x_1 .. x_k), x_{k+1}]
        + sum_{i<j} (-1)^i P(.. ^x_i .. [x_i, x_j] ..)
    """
    p = P.degree
    if P.domain_dim != A.dim or P.codomain_dim != A.dim:
        raise ValueError("cochain does not live on the algebra")
    if p + 1 > MAX_DEGREE:
        raise ValueError(f"degree {p + 1} exceeds the supported maximum {MAX_DEGREE}")
    k = p + 1
    args = _ARGS[: k + 1]
    out_sub = args + _OUT
    mu = A.c
    terms = []

    def add(sign, expr, *ops):
        terms.append((sign, expr, ops))

    for i in range(k):
        rest = args[:i] + args[i + 1 :]
        add((-1) ** i, f"{args[i]}{_SUM}{_OUT},{rest}{_SUM}->{out_sub}", mu, P.t)
    add((-1) ** (k + 1), f"{_SUM}{args[k]}{_OUT},{args[:k]}{_SUM}->{out_sub}", mu, P.t)
    for i in range(k):
        for j in range(i + 1, k + 1):
            slots = [a for a in args if a not in (args[i],)]
            slots[j - 1] = _SUM
            add((-1) ** (i + 1), f"{''.join(slots)}{_OUT},{args[i]}{args[j]}{_SUM}->{out_sub}", P.t, mu)
    return Cochain(k, einsum_sum(terms), A.field)


def _require_leibniz(A: LeibnizAlgebra):
    mu = structure_cochain(A)
    if not graded_bracket(mu, mu).is_zero():
        report = check_leibniz(A)
        raise NotLeibniz(f"{A.name} violates the Leibniz identity at {report.violations[:3]}")
    return mu


def coboundary(A: LeibnizAlgebra, P: Cochain) -> Cochain:
    """``dP`` in the adjoint representation, cross-checked against ``(-1)^p [mu, P]``."""
    mu = _require_leibniz(A)
    explicit = coboundary_explicit(A, P)
    via_bracket = graded_bracket(mu, P)
    if P.degree % 2:
        via_bracket = -via_bracket
    if explicit != via_bracket:
        raise AssertionError("coboundary formulas disagree")
    return explicit


def dbar(A: LeibnizAlgebra, P: Cochain) -> Cochain:
    """``(-1)^p dP``, which equals ``[mu, P]``."""
    d = coboundary(A, P)
    return -d if P.degree % 2 else d


class LElement:
    """Cochain on ``g + h`` with values in ``h``, vanishing on all-``h`` arguments.

    The tensor keeps the full ``g + h`` output index (with zero ``g`` part)
    so that elements can be fed into the circle product.
    """

    __slots__ = ("cochain", "g", "h", "carrier")

    def __init__(self, cochain: Cochain, g: LeibnizAlgebra, h: LeibnizAlgebra, carrier=None):
        n, m = g.dim, h.dim
        if cochain.domain_dim != n + m or cochain.codomain_dim != n + m:
            raise ValueError(f"expected a cochain on a space of dimension {n + m}")
        self.cochain = cochain
        self.g = g
        self.h = h
        self.carrier = carrier if carrier is not None else direct_sum(g, h)
        t = cochain.t
        if not is_zero(t[..., :n]):
            hit = tuple(int(i) for i in np.argwhere(t[..., :n] != 0)[0])
            raise ValueError(f"cochain has a g-component at {hit}")
        block = t[(slice(n, None),) * (cochain.degree + 1)]
        if not is_zero(block):
            hit = np.argwhere(block != 0)[0]
            raise NotInL(tuple(int(i) + n for i in hit[:-1]))

    @property
    def degree(self) -> int:
        return self.cochain.degree

    @property
    def field(self):
        return self.cochain.field

    def _wrap(self, cochain):
        return LElement(cochain, self.g, self.h, self.carrier)

    def _same_space(self, other):
        if not isinstance(other, LElement) or other.g != self.g or other.h != self.h:
            raise ValueError("elements live over different algebras")

    def __add__(self, other):
        self._same_space(other)
        return self._wrap(self.cochain + other.cochain)

    def __sub__(self, other):
        self._same_space(other)
        return self._wrap(self.cochain - other.cochain)

    def __neg__(self):
        return self._wrap(-self.cochain)

    def scale(self, s):
        return self._wrap(self.cochain.scale(s))

    def bracket(self, other: "LElement") -> "LElement":
        self._same_space(other)
        return self._wrap(graded_bracket(self.cochain, other.cochain))

    def dbar(self) -> "LElement":
        return self._wrap(dbar(self.carrier, self.cochain))

    def is_zero(self) -> bool:
        return self.cochain.is_zero()

    def h_part(self) -> np.ndarray:
        return self.cochain.t[..., self.g.dim :]

    def __eq__(self, other):
        if not isinstance(other, LElement):
            return NotImplemented
        return self.g == other.g and self.h == other.h and self.cochain == other.cochain

    __hash__ = None

    def __repr__(self):
        return f"LElement(degree={self.degree}, g={self.g.name}, h={self.h.name})"


def restrict_check(P: Cochain, g: LeibnizAlgebra, h: LeibnizAlgebra) -> LElement:
    """Wrap ``P`` as an element of ``L``; raises :class:`NotInL` with an all-``h`` witness."""
    return LElement(P, g, h)


def pack_cocycle(c: NonAbelianCocycle) -> LElement:
    """``l(x, a) = l_x a``, ``r(a, x) = r_x a`` and ``omega`` as one degree-1 element."""
    n, m = c.g.dim, c.h.dim
    N = n + m
    t = zeros((N, N, N), c.field)
    t[:n, n:, n:] = c.l.transpose(0, 2, 1)
    t[n:, :n, n:] = c.r.transpose(2, 0, 1)
    t[:n, :n, n:] = c.omega
    return LElement(Cochain(1, t, c.field), c.g, c.h)


def unpack_cocycle(e: LElement) -> NonAbelianCocycle:
    if e.degree != 1:
        raise ValueError("only degree-1 elements correspond to triples")
    n = e.g.dim
    t = e.cochain.t
    l = t[:n, n:, n:].transpose(0, 2, 1).copy()
    r = t[n:, :n, n:].transpose(1, 2, 0).copy()
    omega = t[:n, :n, n:].copy()
    return NonAbelianCocycle(e.g, e.h, l, r, omega)


def phi_element(g: LeibnizAlgebra, h: LeibnizAlgebra, phi) -> LElement:
    """Degree-0 element from an ``m x n`` matrix ``phi: g -> h``."""
    n, m = g.dim, h.dim
    phi = to_field(phi, h.field).reshape(m, n)
    t = zeros((n + m, n + m), h.field)
    t[:n, n:] = phi.T
    return LElement(Cochain(0, t, h.field), g, h)


def mc_defect(e: LElement) -> LElement:
    """``dbar e + 1/2 [e, e]``."""
    if e.degree != 1:
        raise ValueError("Maurer-Cartan defect is defined on degree-1 elements")
    return e.dbar() + e.bracket(e).scale(half(e.field))


def is_mc(e: LElement) -> bool:
    return mc_defect(e).is_zero()


def gauge_transform(e: LElement, phi: LElement) -> LElement:
    """``e + [e, phi] + dbar phi + 1/2 [dbar phi, phi]``."""
    if e.degree != 1 or phi.degree != 0:
        raise ValueError("gauge action needs a degree-1 element and a degree-0 element")
    d_phi = phi.dbar()
    return e + e.bracket(phi) + d_phi + d_phi.bracket(phi).scale(half(e.field))


def mc_equivalent(e1: LElement, e2: LElement):
    """Degree-0 ``phi`` with ``gauge_transform(e1, phi) == e2``, or ``None``."""
    for name, e in (("first", e1), ("second", e2)):
        if not is_mc(e):
            raise NotMC(f"{name} element is not Maurer-Cartan")
    phi = cocycles_equivalent(unpack_cocycle(e2), unpack_cocycle(e1))
    if phi is None:
        return None
    witness = phi_element(e1.g, e1.h, phi)
    if gauge_transform(e1, witness) != e2:
        raise AssertionError("gauge witness failed to re-verify")
    return witness
