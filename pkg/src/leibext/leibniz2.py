"""Leibniz 2-algebras, their morphisms, and the derivation 2-algebras of ``h``.

A 2-algebra ``V1 --d--> V0`` is stored as tensors over fixed bases:

* ``d[k, a]``: ``d m_a = sum_k d[k, a] x_k``
* ``l2_00[i, j, k]``: ``l2(x_i, x_j)``, valued in V0
* ``l2_01[i, a, b]``: ``l2(x_i, m_a)``, valued in V1
* ``l2_10[a, i, b]``: ``l2(m_a, x_i)``, valued in V1
* ``l3[i, j, k, a]``: ``l3(x_i, x_j, x_k)``, valued in V1

The strict 2-algebras built from ``h`` use ``V1 = h`` and ``V0`` the RREF
basis of Pi(h) or Xi(h) inside the derivation-pair space; the pairs are
kept in ``pairs`` so that coordinates can be turned back into matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    ClosureError,
    LeibnizAlgebra,
    ad_maps,
    derivations,
    pair_matrices,
    pair_vector,
    pi_subspace,
    semidirect_bracket,
    xi_subspace,
)
from .extensions import (
    NonAbelianCocycle,
    build_extension,
    center_condition,
    cocycles_equivalent,
    is_cocycle,
    CocycleViolation,
)
from .fields import einsum, QQ, identity, is_zero, to_field, zeros
from .linalg import Subspace

__all__ = [
    "Leibniz2Algebra",
    "Leibniz2Morphism",
    "AxiomReport",
    "MorphismReport",
    "NotLie",
    "InternalClosureError",
    "CenterConditionFailed",
    "NotInXi",
    "MorphismInvalid",
    "check_axioms",
    "lemma_rep_defect",
    "strict_two_algebra",
    "lie_derivation_two_algebra",
    "lie_comparison_morphism",
    "as_two_algebra",
    "identity_morphism",
    "check_two_morphism",
    "cocycle_to_morphism",
    "morphism_to_cocycle",
    "morphism_to_extension",
    "morphisms_equivalent",
]

InternalClosureError = ClosureError

AXIOMS = ("a", "b", "c", "d", "e1", "e2", "e3", "f")


class NotLie(ValueError):
    pass


class CenterConditionFailed(ValueError):
    """``Z(h) != Z(ext) & h``; carries both subspaces of h."""

    def __init__(self, center_h, center_ext_h, not_in_xi=()):
        self.center_h = center_h
        self.center_ext_h = center_ext_h
        self.not_in_xi = tuple(not_in_xi)
        msg = f"center condition fails: Z(h) = {center_h!r}, Z(ext) & h = {center_ext_h!r}"
        if self.not_in_xi:
            msg += f"; (l_x, r_x) outside Xi(h) for g-basis indices {list(self.not_in_xi)}"
        super().__init__(msg)


class NotInXi(ValueError):
    pass


class MorphismInvalid(ValueError):
    pass


@dataclass(eq=False)
class Leibniz2Algebra:
    d: np.ndarray
    l2_00: np.ndarray
    l2_01: np.ndarray
    l2_10: np.ndarray
    l3: np.ndarray
    field: object = QQ
    name: str = ""
    pairs: np.ndarray | None = None   # (dim V0, 2, m, m) for the strict constructions
    base: LeibnizAlgebra | None = None

    def __post_init__(self):
        f = self.field
        self.d = to_field(self.d, f)
        v0, v1 = self.d.shape
        self.l2_00 = to_field(self.l2_00, f).reshape(v0, v0, v0)
        self.l2_01 = to_field(self.l2_01, f).reshape(v0, v1, v1)
        self.l2_10 = to_field(self.l2_10, f).reshape(v1, v0, v1)
        self.l3 = to_field(self.l3, f).reshape(v0, v0, v0, v1)

    @property
    def V0_dim(self) -> int:
        return self.d.shape[0]

    @property
    def V1_dim(self) -> int:
        return self.d.shape[1]

    @property
    def is_strict(self) -> bool:
        return is_zero(self.l3)


@dataclass(eq=False)
class Leibniz2Morphism:
    f0: np.ndarray   # V0' x V0
    f1: np.ndarray   # V1' x V1
    f2: np.ndarray   # (V0, V0, V1')
    field: object = QQ

    def __post_init__(self):
        self.f0 = to_field(self.f0, self.field)
        self.f1 = to_field(self.f1, self.field)
        v0 = self.f0.shape[1]
        self.f2 = to_field(self.f2, self.field).reshape(v0, v0, self.f1.shape[0])


class AxiomReport(NamedTuple):
    ok: bool
    failed: tuple
    witnesses: dict


def _first_nonzero(arr):
    hits = np.argwhere(arr != 0) if arr.size else []
    return tuple(int(t) for t in hits[0]) if len(hits) else None


def check_axioms(L: Leibniz2Algebra) -> AxiomReport:
    """Check axioms (a) to (f) on all basis tuples."""
    d, A, B, C, T = L.d, L.l2_00, L.l2_01, L.l2_10, L.l3
    e = einsum
    residuals = {
        # d l2(x, m) = l2(x, d m)
        "a": e("iab,kb->iak", B, d) - e("ja,ijk->iak", d, A),
        # d l2(m, x) = l2(d m, x)
        "b": e("aib,kb->aik", C, d) - e("ja,jik->aik", d, A),
        # l2(d m, n) = l2(m, d n)
        "c": e("ja,jbc->abc", d, B) - e("jb,ajc->abc", d, C),
        # d l3(x,y,z) = l2(x,l2(y,z)) - l2(l2(x,y),z) - l2(y,l2(x,z))
        "d": e("ijka,la->ijkl", T, d)
        - (e("jkm,iml->ijkl", A, A) - e("ijm,mkl->ijkl", A, A) - e("ikm,jml->ijkl", A, A)),
        # l3(x,y,dm) = l2(x,l2(y,m)) - l2(l2(x,y),m) - l2(y,l2(x,m))
        "e1": e("ka,ijkb->ijab", d, T)
        - (e("jac,icb->ijab", B, B) - e("ijk,kab->ijab", A, B) - e("iac,jcb->ijab", B, B)),
        # l3(x,dm,y) = l2(x,l2(m,y)) - l2(l2(x,m),y) - l2(m,l2(x,y))
        "e2": e("ka,ikjb->iajb", d, T)
        - (e("ajc,icb->iajb", C, B) - e("iac,cjb->iajb", B, C) - e("ijk,akb->iajb", A, C)),
        # l3(dm,x,y) = l2(m,l2(x,y)) - l2(l2(m,x),y) - l2(x,l2(m,y))
        "e3": e("ka,kijb->aijb", d, T)
        - (e("ijk,akb->aijb", A, C) - e("aic,cjb->aijb", C, C) - e("ajc,icb->aijb", C, B)),
        # Jacobiator identity, arguments (w, x, y, z) = (p, q, s, t)
        "f": e("qstc,pcb->pqstb", T, B)
        - e("pstc,qcb->pqstb", T, B)
        + e("pqtc,scb->pqstb", T, B)
        + e("pqsc,ctb->pqstb", T, C)
        - e("pqk,kstb->pqstb", A, T)
        - e("psk,qktb->pqstb", A, T)
        - e("ptk,qskb->pqstb", A, T)
        + e("qsk,pktb->pqstb", A, T)
        + e("qtk,pskb->pqstb", A, T)
        - e("stk,pqkb->pqstb", A, T),
    }
    witnesses = {}
    for name in AXIOMS:
        hit = _first_nonzero(residuals[name])
        if hit is not None:
            witnesses[name] = hit
    failed = tuple(name for name in AXIOMS if name in witnesses)
    return AxiomReport(not failed, failed, witnesses)


def lemma_rep_defect(L: Leibniz2Algebra) -> np.ndarray:
    """``l2(l2(x, m), y) + l2(l2(m, x), y)`` on basis ``(x, m, y)``; zero for every 2-algebra."""
    B, C = L.l2_01, L.l2_10
    return einsum("iac,cjb->iajb", B, C) + einsum("aic,cjb->iajb", C, C)


def as_two_algebra(g: LeibnizAlgebra) -> Leibniz2Algebra:
    """``g`` as the 2-term complex ``0 -> g``."""
    n = g.dim
    f = g.field
    return Leibniz2Algebra(
        d=zeros((n, 0), f),
        l2_00=g.c,
        l2_01=zeros((n, 0, 0), f),
        l2_10=zeros((0, n, 0), f),
        l3=zeros((n, n, n, 0), f),
        field=f,
        name=g.name,
    )


def _strict_from_pairs(h: LeibnizAlgebra, space: Subspace, name: str) -> Leibniz2Algebra:
    m = h.dim
    f = h.field
    pairs = [pair_matrices(r, m) for r in space.rows]
    p = len(pairs)

    def coords(v, what):
        try:
            return space.coordinates(v)
        except ValueError as exc:
            raise ClosureError(f"{what} left the computed span in {name}") from exc

    d = zeros((p, m), f)
    for a in range(m):
        adL, adR = ad_maps(h, h.unit(a))
        d[:, a] = coords(pair_vector(adL, adR), f"d(e{a + 1})")
    A = zeros((p, p, p), f)
    for i, P in enumerate(pairs):
        for j, Q in enumerate(pairs):
            A[i, j] = coords(pair_vector(*semidirect_bracket(P, Q)), f"bracket of pairs {i}, {j}")
    B = zeros((p, m, m), f)
    C = zeros((m, p, m), f)
    for i, (DL, DR) in enumerate(pairs):
        # l2((DL, DR), a) = DL a ; l2(a, (DL, DR)) = DR a
        B[i] = DL.T
        C[:, i, :] = DR.T
    stacked = np.empty((p, 2, m, m), dtype=object)
    for i, (DL, DR) in enumerate(pairs):
        stacked[i, 0] = DL
        stacked[i, 1] = DR
    return Leibniz2Algebra(d, A, B, C, zeros((p, p, p, m), f), f, name, stacked, h)


def strict_two_algebra(kind: str, h: LeibnizAlgebra) -> Leibniz2Algebra:
    """The strict 2-algebra ``h --(adL, adR)--> Pi(h)`` or ``... --> Xi(h)``."""
    kind = kind.lower()
    if kind == "pi":
        space = pi_subspace(h)
    elif kind == "xi":
        space = xi_subspace(h)
    else:
        raise ValueError(f"kind must be 'pi' or 'xi', not {kind!r}")
    return _strict_from_pairs(h, space, f"{kind}({h.name})")


def lie_derivation_two_algebra(h: LeibnizAlgebra) -> Leibniz2Algebra:
    """``h --ad--> Der(h)`` for a Lie algebra, with ``l2(D, a) = -l2(a, D) = D a``."""
    if not h.is_antisymmetric():
        raise NotLie(f"{h.name} is not a Lie algebra (bracket is not antisymmetric)")
    m = h.dim
    f = h.field
    der = derivations(h, "left")
    mats = [np.array(r, dtype=object).reshape(m, m) for r in der.rows]
    q = len(mats)
    d = zeros((q, m), f)
    for a in range(m):
        d[:, a] = der.coordinates(ad_maps(h, h.unit(a))[0].reshape(-1))
    A = zeros((q, q, q), f)
    for i, D1 in enumerate(mats):
        for j, D2 in enumerate(mats):
            A[i, j] = der.coordinates((D1.dot(D2) - D2.dot(D1)).reshape(-1))
    B = zeros((q, m, m), f)
    C = zeros((m, q, m), f)
    for i, D in enumerate(mats):
        B[i] = D.T
        C[:, i, :] = -D.T
    L = Leibniz2Algebra(d, A, B, C, zeros((q, q, q, m), f), f, f"Der({h.name})", None, h)
    L.derivation_basis = mats
    return L


def lie_comparison_morphism(h: LeibnizAlgebra) -> tuple:
    """``(source, target, morphism)`` with ``f0: D -> (D, -D)``, ``f1 = id``, ``f2 = 0``."""
    source = lie_derivation_two_algebra(h)
    target = strict_two_algebra("pi", h)
    space = Subspace.span(
        [pair_vector(target.pairs[i, 0], target.pairs[i, 1]) for i in range(target.V0_dim)],
        2 * h.dim**2,
        h.field,
    )
    f = h.field
    f0 = zeros((target.V0_dim, source.V0_dim), f)
    for j, D in enumerate(source.derivation_basis):
        f0[:, j] = space.coordinates(pair_vector(D, -D))
    m = h.dim
    mor = Leibniz2Morphism(f0, identity(m, f), zeros((source.V0_dim, source.V0_dim, m), f), f)
    return source, target, mor


def identity_morphism(L: Leibniz2Algebra) -> Leibniz2Morphism:
    f = L.field
    return Leibniz2Morphism(
        identity(L.V0_dim, f), identity(L.V1_dim, f), zeros((L.V0_dim, L.V0_dim, L.V1_dim), f), f
    )


class MorphismReport(NamedTuple):
    ok: bool
    failed: tuple
    witnesses: dict


MORPHISM_CONDITIONS = ("differential", "bracket_00", "bracket_01", "bracket_10", "coherence")


def check_two_morphism(F: Leibniz2Morphism, L: Leibniz2Algebra, Lp: Leibniz2Algebra) -> MorphismReport:
    """Check ``f0 d = d' f1``, the three ``l2`` compatibilities and the ``f2``/``l3`` coherence."""
    f0, f1, f2 = F.f0, F.f1, F.f2
    if f0.shape != (Lp.V0_dim, L.V0_dim) or f1.shape != (Lp.V1_dim, L.V1_dim):
        raise ValueError("morphism shapes do not match the 2-algebras")
    e = einsum
    A, B, C, T, d = L.l2_00, L.l2_01, L.l2_10, L.l3, L.d
    Ap, Bp, Cp, Tp, dp = Lp.l2_00, Lp.l2_01, Lp.l2_10, Lp.l3, Lp.d
    residuals = {
        "differential": f0.dot(d) - dp.dot(f1),
        # l2'(f0 x, f0 y) - f0 l2(x, y) = d' f2(x, y)
        "bracket_00": e("pi,qj,pqk->ijk", f0, f0, Ap)
        - e("ijk,lk->ijl", A, f0)
        - e("ijc,lc->ijl", f2, dp),
        # l2'(f0 x, f1 m) - f1 l2(x, m) = f2(x, d m)
        "bracket_01": e("pi,ca,pcb->iab", f0, f1, Bp)
        - e("iac,bc->iab", B, f1)
        - e("ka,ikb->iab", d, f2),
        # l2'(f1 m, f0 x) - f1 l2(m, x) = f2(d m, x)
        "bracket_10": e("ca,pi,cpb->aib", f1, f0, Cp)
        - e("aic,bc->aib", C, f1)
        - e("ka,kib->aib", d, f2),
        # f1 l3(x,y,z) + l2'(f0 x, f2(y,z)) - l2'(f0 y, f2(x,z)) - l2'(f2(x,y), f0 z)
        # - f2(l2(x,y),z) + f2(x,l2(y,z)) - f2(y,l2(x,z)) - l3'(f0 x, f0 y, f0 z) = 0
        "coherence": e("ijka,ba->ijkb", T, f1)
        + e("pi,jkc,pcb->ijkb", f0, f2, Bp)
        - e("pj,ikc,pcb->ijkb", f0, f2, Bp)
        - e("ijc,pk,cpb->ijkb", f2, f0, Cp)
        - e("ijl,lkb->ijkb", A, f2)
        + e("jkl,ilb->ijkb", A, f2)
        - e("ikl,jlb->ijkb", A, f2)
        - e("pi,qj,sk,pqsb->ijkb", f0, f0, f0, Tp),
    }
    witnesses = {}
    for name in MORPHISM_CONDITIONS:
        hit = _first_nonzero(residuals[name])
        if hit is not None:
            witnesses[name] = hit
    failed = tuple(n for n in MORPHISM_CONDITIONS if n in witnesses)
    return MorphismReport(not failed, failed, witnesses)


def _xi_space(target: Leibniz2Algebra) -> Subspace:
    m = target.base.dim
    return Subspace.span(
        [pair_vector(target.pairs[i, 0], target.pairs[i, 1]) for i in range(target.V0_dim)],
        2 * m * m,
        target.field,
    )


def cocycle_to_morphism(c: NonAbelianCocycle, target: Leibniz2Algebra | None = None) -> tuple:
    """Morphism ``g -> (h --> Xi(h))`` with ``f0(x) = (l_x, r_x)``, ``f1 = 0``, ``f2 = omega``.

    Returns ``(source, target, morphism)``.  Requires a cocycle whose
    extension satisfies ``Z(h) = Z(ext) & h``; otherwise raises
    :class:`CenterConditionFailed`.
    """
    report = is_cocycle(c)
    if not report.ok:
        raise CocycleViolation(report)
    g, h = c.g, c.h
    target = target or strict_two_algebra("xi", h)
    space = _xi_space(target)
    outside = [x for x in range(g.dim) if not space.contains(pair_vector(c.l[x], c.r[x]))]
    z_h, z_ext_h = center_condition(c)
    if z_h != z_ext_h:
        raise CenterConditionFailed(z_h, z_ext_h, outside)
    if outside:
        raise NotInXi(f"(l_x, r_x) outside Xi(h) for g-basis indices {outside}")
    f = c.field
    f0 = zeros((target.V0_dim, g.dim), f)
    for x in range(g.dim):
        f0[:, x] = space.coordinates(pair_vector(c.l[x], c.r[x]))
    mor = Leibniz2Morphism(f0, zeros((h.dim, 0), f), c.omega, f)
    source = as_two_algebra(g)
    check = check_two_morphism(mor, source, target)
    if not check.ok:
        raise MorphismInvalid(f"constructed morphism fails {check.failed}")
    return source, target, mor


def morphism_to_cocycle(F: Leibniz2Morphism, g: LeibnizAlgebra, target: Leibniz2Algebra) -> NonAbelianCocycle:
    """``l_x = Pr_L f0(x)``, ``r_x = Pr_R f0(x)``, ``omega = f2``."""
    h = target.base
    pairs = target.pairs
    l = einsum("px,pab->xab", F.f0, pairs[:, 0].copy()) if pairs.size else zeros((g.dim, h.dim, h.dim), h.field)
    r = einsum("px,pab->xab", F.f0, pairs[:, 1].copy()) if pairs.size else zeros((g.dim, h.dim, h.dim), h.field)
    return NonAbelianCocycle(g, h, l, r, F.f2)


def morphism_to_extension(F: Leibniz2Morphism, g: LeibnizAlgebra, target: Leibniz2Algebra):
    """Extension of ``g`` by ``h`` read off a morphism into the Xi 2-algebra.

    Raises :class:`MorphismInvalid` if ``F`` is not a morphism; the center
    condition of the result is verified.
    """
    source = as_two_algebra(g)
    check = check_two_morphism(F, source, target)
    if not check.ok:
        raise MorphismInvalid(f"not a 2-algebra morphism: {check.failed}")
    c = morphism_to_cocycle(F, g, target)
    try:
        E = build_extension(c)
    except CocycleViolation as exc:
        raise MorphismInvalid(str(exc)) from exc
    z_h, z_ext_h = center_condition(c)
    if z_h != z_ext_h:
        raise AssertionError("extension from a morphism violates the center condition")
    return E


def morphisms_equivalent(F1: Leibniz2Morphism, F2: Leibniz2Morphism, g: LeibnizAlgebra, target: Leibniz2Algebra):
    """Equivalence of morphisms through their cocycles; returns a witness ``phi`` or ``None``."""
    return cocycles_equivalent(morphism_to_cocycle(F1, g, target), morphism_to_cocycle(F2, g, target))
