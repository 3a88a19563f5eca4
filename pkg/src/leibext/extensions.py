"""Non-abelian 2-cocycles, the extensions they define, and their equivalence.

A cocycle ``(l, r, omega)`` of ``g`` (dim n) with values in ``h`` (dim m) is
stored as arrays ``l[i]`` and ``r[i]`` (the ``m x m`` matrices of ``l_{x_i}``
and ``r_{x_i}``) and ``omega[i, j]`` (the h-vector ``omega(x_i, x_j)``).
The extension bracket on ``g + h`` is::

    [x + a, y + b] = [x, y]_g + omega(x, y) + l_x b + r_y a + [a, b]_h
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    LeibnizAlgebra,
    sum_labels,
    ad_maps,
    is_derivation,
    left_center,
)
from .fields import einsum, identity, is_zero, to_field, zeros
from .linalg import Subspace, rank, solve_affine

__all__ = [
    "NonAbelianCocycle",
    "ExtensionAlgebra",
    "CocycleReport",
    "CocycleViolation",
    "InvalidSplitting",
    "WitnessInvalid",
    "COCYCLE_CONDITIONS",
    "build_extension",
    "is_cocycle",
    "extract_cocycle",
    "transform_cocycle",
    "is_equivalence_witness",
    "cocycles_equivalent",
    "isomorphism_from_witness",
    "check_extension_morphism",
    "zero_cocycle",
    "center_condition",
    "extension_bracket",
]

# Names of the seven defining identities, in the order they are checked.
COCYCLE_CONDITIONS = (
    "l_derivation",      # l_x [a,b] = [l_x a, b] + [a, l_x b]
    "r_derivation",      # r_x [a,b] = [a, r_x b] - [b, r_x a]
    "sum_in_center",     # [l_x a + r_x a, b] = 0
    "l_bracket",         # [l_x, l_y] - l_[x,y] = adL_omega(x,y)
    "lr_bracket",        # [l_x, r_y] - r_[x,y] = adR_omega(x,y)
    "r_kills_sum",       # r_y (r_x a + l_x a) = 0
    "omega_cocycle",     # l_x w(y,z) - l_y w(x,z) - r_z w(x,y) = w([x,y],z) - w(x,[y,z]) + w(y,[x,z])
)


class CocycleViolation(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("not a non-abelian 2-cocycle; failed: " + ", ".join(report.violated))


class InvalidSplitting(ValueError):
    pass


class WitnessInvalid(ValueError):
    pass


@dataclass(eq=False)
class NonAbelianCocycle:
    g: LeibnizAlgebra
    h: LeibnizAlgebra
    l: np.ndarray
    r: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        n, m = self.g.dim, self.h.dim
        f = self.h.field
        self.l = to_field(self.l, f).reshape(n, m, m)
        self.r = to_field(self.r, f).reshape(n, m, m)
        self.omega = to_field(self.omega, f).reshape(n, n, m)

    @property
    def field(self):
        return self.h.field

    def __eq__(self, other):
        if not isinstance(other, NonAbelianCocycle):
            return NotImplemented
        return (
            self.g == other.g
            and self.h == other.h
            and bool(np.all(self.l == other.l))
            and bool(np.all(self.r == other.r))
            and bool(np.all(self.omega == other.omega))
        )

    def __repr__(self):
        return f"NonAbelianCocycle(g={self.g.name!r}, h={self.h.name!r})"


def zero_cocycle(g: LeibnizAlgebra, h: LeibnizAlgebra) -> NonAbelianCocycle:
    n, m = g.dim, h.dim
    f = h.field
    return NonAbelianCocycle(g, h, zeros((n, m, m), f), zeros((n, m, m), f), zeros((n, n, m), f))


@dataclass(eq=False)
class ExtensionAlgebra:
    """``0 -> h --i--> total --p--> g -> 0`` with a splitting ``sigma``.

    ``i`` is ``(n+m) x m``, ``p`` is ``n x (n+m)``, ``sigma`` is ``(n+m) x n``.
    """

    total: LeibnizAlgebra
    g: LeibnizAlgebra
    h: LeibnizAlgebra
    i: np.ndarray
    p: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        f = self.total.field
        self.i = to_field(self.i, f)
        self.p = to_field(self.p, f)
        self.sigma = to_field(self.sigma, f)

    def to_h(self, v) -> np.ndarray:
        """h-coordinates of a vector of ``total`` lying in the image of ``i``."""
        sol = solve_affine(self.i, v, self.total.field)
        if sol is None:
            raise ValueError("vector is not in the image of h")
        return sol[0]


def extension_bracket(c: NonAbelianCocycle) -> np.ndarray:
    """Structure constants of ``g + h`` with the cocycle bracket (no checks)."""
    g, h = c.g, c.h
    n, m = g.dim, h.dim
    t = zeros((n + m,) * 3, h.field)
    t[:n, :n, :n] = g.c
    t[:n, :n, n:] = c.omega
    # [x_i, e_b] = l_i e_b ; [e_a, x_j] = r_j e_a
    t[:n, n:, n:] = c.l.transpose(0, 2, 1)
    t[n:, :n, n:] = c.r.transpose(2, 0, 1)
    t[n:, n:, n:] = h.c
    return t


def _canonical_maps(n, m, f):
    i = zeros((n + m, m), f)
    i[n:, :] = identity(m, f)
    p = zeros((n, n + m), f)
    p[:, :n] = identity(n, f)
    sigma = zeros((n + m, n), f)
    sigma[:n, :] = identity(n, f)
    return i, p, sigma


def build_extension(c: NonAbelianCocycle, verify: bool = True, name: str | None = None) -> ExtensionAlgebra:
    """The Leibniz algebra on ``g + h`` defined by the cocycle.

    Raises :class:`CocycleViolation` when ``verify`` is set and ``c`` fails
    any defining identity.
    """
    if verify:
        report = is_cocycle(c)
        if not report.ok:
            raise CocycleViolation(report)
    g, h = c.g, c.h
    total = LeibnizAlgebra(
        name or f"ext({g.name}, {h.name})", sum_labels(g.basis, h.basis), extension_bracket(c), h.field
    )
    i, p, sigma = _canonical_maps(g.dim, h.dim, h.field)
    return ExtensionAlgebra(total, g, h, i, p, sigma)


class CocycleReport(NamedTuple):
    ok: bool
    violated: tuple
    witnesses: dict  # condition name -> first failing index tuple


def _commutator(A, B):
    return A.dot(B) - B.dot(A)


def is_cocycle(c: NonAbelianCocycle) -> CocycleReport:
    """Evaluate the seven defining identities on all basis tuples."""
    g, h = c.g, c.h
    n = g.dim
    l, r, w = c.l, c.r, c.omega
    hc, gc = h.c, g.c
    witnesses = {}

    def fail(name, idx):
        witnesses.setdefault(name, idx)

    for i in range(n):
        if not is_derivation(h, l[i], "left"):
            fail("l_derivation", (i,))
        if not is_derivation(h, r[i], "right"):
            fail("r_derivation", (i,))
        s = l[i] + r[i]
        # [s e_a, e_b] = sum_k s[k,a] c[k,b,:]
        sc = einsum("ka,kbo->abo", s, hc)
        if not is_zero(sc):
            a, b = np.argwhere(sc != 0)[0][:2]
            fail("sum_in_center", (i, int(a), int(b)))

    for i in range(n):
        for j in range(n):
            adL_w, adR_w = ad_maps(h, w[i, j])
            l_ij = np.tensordot(gc[i, j], l, axes=1)
            r_ij = np.tensordot(gc[i, j], r, axes=1)
            if not is_zero(_commutator(l[i], l[j]) - l_ij - adL_w):
                fail("l_bracket", (i, j))
            if not is_zero(_commutator(l[i], r[j]) - r_ij - adR_w):
                fail("lr_bracket", (i, j))
            if not is_zero(r[j].dot(r[i] + l[i])):
                fail("r_kills_sum", (i, j))

    # omega(x, [y, z]) etc. via contraction with g's structure constants
    w_br_first = einsum("ijk,kzo->ijzo", gc, w)     # w([x_i, x_j], x_z)
    w_br_second = einsum("jzk,iko->ijzo", gc, w)    # w(x_i, [x_j, x_z])
    w_br_third = einsum("izk,jko->ijzo", gc, w)     # w(x_j, [x_i, x_z])
    lhs = (
        einsum("iab,jzb->ijza", l, w)      # l_i w(j, z)
        - einsum("jab,izb->ijza", l, w)    # l_j w(i, z)
        - einsum("zab,ijb->ijza", r, w)    # r_z w(i, j)
    )
    rhs = w_br_first - w_br_second + w_br_third
    diff = lhs - rhs
    if diff.size and not is_zero(diff):
        idx = tuple(int(t) for t in np.argwhere(diff != 0)[0][:3])
        fail("omega_cocycle", idx)

    violated = tuple(name for name in COCYCLE_CONDITIONS if name in witnesses)
    return CocycleReport(not violated, violated, witnesses)


def extract_cocycle(E: ExtensionAlgebra, sigma=None) -> NonAbelianCocycle:
    """Cocycle of an extension relative to a splitting (defaults to ``E.sigma``).

    ``omega(x,y) = [s x, s y] - s[x,y]``, ``l_x b = [s x, b]``, ``r_y a = [a, s y]``.
    """
    T = E.total
    f = T.field
    sigma = E.sigma if sigma is None else to_field(sigma, f)
    n, m = E.g.dim, E.h.dim
    if not is_zero(E.p.dot(sigma) - identity(n, f)):
        raise InvalidSplitting("p o sigma is not the identity on g")
    S = [sigma[:, j] for j in range(n)]
    H = [E.i[:, b] for b in range(m)]
    l = zeros((n, m, m), f)
    r = zeros((n, m, m), f)
    omega = zeros((n, n, m), f)
    for x in range(n):
        for b in range(m):
            l[x][:, b] = E.to_h(T.bracket(S[x], H[b]))
            r[x][:, b] = E.to_h(T.bracket(H[b], S[x]))
        for y in range(n):
            v = T.bracket(S[x], S[y]) - sigma.dot(E.g.c[x, y])
            omega[x, y] = E.to_h(v)
    return NonAbelianCocycle(E.g, E.h, l, r, omega)


def _phi_linear_terms(c: NonAbelianCocycle, phi: np.ndarray) -> np.ndarray:
    """``l_x phi(y) + r_y phi(x) - phi([x, y])`` as an ``n x n x m`` array."""
    l, r = c.l, c.r
    t = einsum("xab,by->xya", l, phi) + einsum("yab,bx->xya", r, phi)
    t = t - einsum("xyk,ak->xya", c.g.c, phi)
    return t


def _phi_quadratic_term(h: LeibnizAlgebra, phi: np.ndarray) -> np.ndarray:
    """``[phi(x), phi(y)]_h`` as an ``n x n x m`` array."""
    return einsum("ax,by,abo->xyo", phi, phi, h.c)


def transform_cocycle(c: NonAbelianCocycle, phi) -> NonAbelianCocycle:
    """The cocycle related to ``c`` by ``phi: g -> h`` (an ``m x n`` matrix).

    Returns ``c1`` with ``l1_x = l_x + adL_phi(x)``, ``r1_x = r_x + adR_phi(x)``
    and ``omega1 = omega + l_x phi(y) + r_y phi(x) + [phi(x), phi(y)] - phi([x, y])``.
    """
    h = c.h
    phi = to_field(phi, h.field).reshape(h.dim, c.g.dim)
    l1 = c.l.copy()
    r1 = c.r.copy()
    for x in range(c.g.dim):
        adL, adR = ad_maps(h, phi[:, x])
        l1[x] = l1[x] + adL
        r1[x] = r1[x] + adR
    w1 = c.omega + _phi_linear_terms(c, phi) + _phi_quadratic_term(h, phi)
    return NonAbelianCocycle(c.g, h, l1, r1, w1)


def is_equivalence_witness(c1: NonAbelianCocycle, c2: NonAbelianCocycle, phi) -> bool:
    """Whether ``phi`` carries ``c2`` to ``c1``."""
    return transform_cocycle(c2, phi) == c1


def _ad_system(h: LeibnizAlgebra, n: int, side: str) -> np.ndarray:
    """Matrix sending vec(phi) (index ``a*n + x``) to the stacked ``ad_{phi(x)}`` entries."""
    m = h.dim
    eye = identity(n, h.field)
    if side == "left":
        # adL_a[k, j] = sum_i a_i c[i, j, k]
        t = einsum("ajk,xy->ykjax", h.c, eye)
    else:
        # adR_a[k, i] = sum_j a_j c[i, j, k]
        t = einsum("iak,xy->ykiax", h.c, eye)
    return t.reshape(n * m * m, m * n)


def cocycles_equivalent(c1: NonAbelianCocycle, c2: NonAbelianCocycle):
    """Decide whether some ``phi: g -> h`` carries ``c2`` to ``c1``.

    Returns the ``m x n`` witness matrix, or ``None``.

    The ``l`` and ``r`` conditions are linear in ``phi``; their solutions form
    ``phi0 + K`` with ``K = Hom(g, Z_L(h) & Z_R(h))``, because ``psi`` is in
    the homogeneous kernel exactly when both ``adL_psi(x)`` and
    ``adR_psi(x)`` vanish.  For ``psi`` in ``K``::

        [phi0 x + psi x, phi0 y + psi y] = [phi0 x, phi0 y]

    since ``psi x`` kills everything from the left and ``psi y`` from the
    right.  So the quadratic part of the ``omega`` condition is constant on
    ``phi0 + K`` and what remains is linear in ``psi``; one more affine solve
    over the coordinates of ``K`` decides the question completely.
    """
    if c1.g is not c2.g and c1.g != c2.g:
        raise ValueError("cocycles live on different algebras g")
    if c1.h is not c2.h and c1.h != c2.h:
        raise ValueError("cocycles take values in different algebras h")
    g, h = c2.g, c2.h
    n, m = g.dim, h.dim
    f = h.field
    A = np.concatenate([_ad_system(h, n, "left"), _ad_system(h, n, "right")], axis=0)
    b = np.concatenate([(c1.l - c2.l).reshape(-1), (c1.r - c2.r).reshape(-1)])
    sol = solve_affine(A, b, f)
    if sol is None:
        return None
    phi0_vec, kernel = sol
    phi0 = phi0_vec.reshape(m, n)
    target = c1.omega - c2.omega - _phi_linear_terms(c2, phi0) - _phi_quadratic_term(h, phi0)
    if kernel.dim == 0:
        phi = phi0
        if not is_zero(target):
            return None
    else:
        cols = [
            _phi_linear_terms(c2, np.array(k, dtype=object).reshape(m, n)).reshape(-1)
            for k in kernel.rows
        ]
        B = np.array(cols, dtype=object).T
        sol2 = solve_affine(B, target.reshape(-1), f)
        if sol2 is None:
            return None
        t, _ = sol2
        psi = np.tensordot(t, kernel.basis, axes=1).reshape(m, n)
        phi = phi0 + psi
    if not is_equivalence_witness(c1, c2, phi):
        raise AssertionError("linear decision produced a witness that does not verify")
    return phi


def isomorphism_from_witness(c1: NonAbelianCocycle, c2: NonAbelianCocycle, phi) -> np.ndarray:
    """The map ``x + a -> x - phi(x) + a`` from ``ext(c2)`` to ``ext(c1)``.

    Always verified; raises :class:`WitnessInvalid` if it is not an
    isomorphism of extensions.
    """
    n, m = c2.g.dim, c2.h.dim
    f = c2.field
    phi = to_field(phi, f).reshape(m, n)
    theta = identity(n + m, f)
    theta[n:, :n] = -phi
    try:
        E1, E2 = build_extension(c1), build_extension(c2)
    except CocycleViolation as exc:
        raise WitnessInvalid(str(exc)) from exc
    if not check_extension_morphism(theta, E2, E1):
        raise WitnessInvalid("theta is not an isomorphism of extensions")
    return theta


def check_extension_morphism(theta, E2: ExtensionAlgebra, E1: ExtensionAlgebra) -> bool:
    """Bracket-preserving, commuting with ``i`` and ``p``, and bijective."""
    f = E1.total.field
    theta = to_field(theta, f)
    N = E2.total.dim
    if theta.shape != (E1.total.dim, N):
        return False
    if not is_zero(theta.dot(E2.i) - E1.i):
        return False
    if not is_zero(E1.p.dot(theta) - E2.p):
        return False
    if rank(theta, f) != N or E1.total.dim != N:
        return False
    # theta [u, v]_2 = [theta u, theta v]_1 on basis pairs
    lhs = einsum("ijk,ak->ija", E2.total.c, theta)
    rhs = einsum("pi,qj,pqa->ija", theta, theta, E1.total.c)
    return is_zero(lhs - rhs)


def center_condition(c: NonAbelianCocycle) -> tuple:
    """``(Z(h), Z(ext) & h)`` as subspaces of h; equal iff the center condition holds."""
    E = build_extension(c, verify=False)
    n, m = c.g.dim, c.h.dim
    z_total = left_center(E.total)
    image_h = Subspace.span([E.i[:, b] for b in range(m)], n + m, c.field)
    both = z_total.intersection(image_h)
    pulled = Subspace.span([E.to_h(v) for v in both.rows], m, c.field)
    return left_center(c.h), pulled
