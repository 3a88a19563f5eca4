"""Built-in algebras and cocycles.

The ``ex310*``, ``ex311*`` and ``ex312*`` entries are the three worked
extensions of a one-dimensional trivial algebra ``g = <x>`` by a
three-dimensional Leibniz algebra ``h``.  Extension algebras list the basis
as ``(x, e1, e2, e3)``.  The remaining entries are small algebras used as a
test bed.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import LeibnizAlgebra, abelian
from .extensions import NonAbelianCocycle
from .fields import QQ, zeros

__all__ = ["ALGEBRAS", "COCYCLES", "algebra", "cocycle", "test_algebras", "lie_algebras"]

E3 = ("e1", "e2", "e3")


def trivial_g(field=QQ) -> LeibnizAlgebra:
    return LeibnizAlgebra("g", ("x",), zeros((1, 1, 1), field), field)


def ex310_h(field=QQ):
    return LeibnizAlgebra.from_brackets("ex310_h", E3, {("e1", "e2"): {"e3": 1}}, field)


def ex311_h(field=QQ):
    return LeibnizAlgebra.from_brackets("ex311_h", E3, {("e1", "e1"): {"e3": 1}}, field)


def ex312_h(field=QQ):
    return LeibnizAlgebra.from_brackets("ex312_h", E3, {("e1", "e1"): {"e3": 1}}, field)


def ex310_ghat(gamma=Fraction(1), field=QQ):
    gamma = field(gamma)
    return LeibnizAlgebra.from_brackets(
        "ex310_ghat",
        ("x",) + E3,
        {
            ("e1", "e2"): {"e3": 1},
            ("x", "e1"): {"e1": 1},
            ("x", "e2"): {"e2": gamma},
            ("x", "e3"): {"e3": 1 + gamma},
            ("e1", "x"): {"e1": -1},
        },
        field,
    )


def ex311_ghat(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "ex311_ghat",
        ("x",) + E3,
        {("e1", "e1"): {"e3": 1}, ("x", "e2"): {"e2": 1}, ("e2", "x"): {"e2": -1}},
        field,
    )


def ex312_ghat1(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "ex312_ghat1",
        ("x",) + E3,
        {
            ("e1", "e1"): {"e3": 1},
            ("x", "e1"): {"e1": 1, "e2": 1},
            ("x", "e2"): {"e2": 1},
            ("x", "e3"): {"e3": 2},
            ("e1", "x"): {"e1": -1, "e2": -1},
            ("e2", "x"): {"e2": -1},
        },
        field,
    )


def ex312_ghat2(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "ex312_ghat2",
        ("x",) + E3,
        {("e1", "e1"): {"e3": 1}, ("x", "e2"): {"e2": 1}},
        field,
    )


def _one_dim_cocycle(h, l_x, r_x, field=QQ):
    """Cocycle of the trivial ``g = <x>`` with ``omega = 0``."""
    g = trivial_g(field)
    m = h.dim
    l = zeros((1, m, m), field)
    r = zeros((1, m, m), field)
    for (a, b), v in l_x.items():
        l[0, a, b] = field(v)
    for (a, b), v in r_x.items():
        r[0, a, b] = field(v)
    return NonAbelianCocycle(g, h, l, r, zeros((1, 1, m), field))


# matrix entries are (row, col) = (output index, input index)
def ex310(gamma=Fraction(1), field=QQ) -> NonAbelianCocycle:
    gamma = field(gamma)
    return _one_dim_cocycle(
        ex310_h(field), {(0, 0): 1, (1, 1): gamma, (2, 2): 1 + gamma}, {(0, 0): -1}, field
    )


def ex311(field=QQ) -> NonAbelianCocycle:
    return _one_dim_cocycle(ex311_h(field), {(1, 1): 1}, {(1, 1): -1}, field)


def ex312_g1(field=QQ) -> NonAbelianCocycle:
    return _one_dim_cocycle(
        ex312_h(field),
        {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 2): 2},
        {(0, 0): -1, (1, 0): -1, (1, 1): -1},
        field,
    )


def ex312_g2(field=QQ) -> NonAbelianCocycle:
    return _one_dim_cocycle(ex312_h(field), {(1, 1): 1}, {}, field)


def lie2_affine(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "lie2_affine", ("e1", "e2"), {("e1", "e2"): {"e2": 1}, ("e2", "e1"): {"e2": -1}}, field
    )


def heisenberg3(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "heisenberg3", E3, {("e1", "e2"): {"e3": 1}, ("e2", "e1"): {"e3": -1}}, field
    )


def sl2(field=QQ):
    return LeibnizAlgebra.from_brackets(
        "sl2",
        ("h", "e", "f"),
        {
            ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
            ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
            ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
        },
        field,
    )


def leib2_nil(field=QQ):
    """The nilpotent non-Lie algebra ``[e1, e1] = e2``."""
    return LeibnizAlgebra.from_brackets("leib2_nil", ("e1", "e2"), {("e1", "e1"): {"e2": 1}}, field)


def leib2_left(field=QQ):
    """``[e1, e2] = e2`` only: a left but not right Leibniz algebra."""
    return LeibnizAlgebra.from_brackets("leib2_left", ("e1", "e2"), {("e1", "e2"): {"e2": 1}}, field)


def leib2_mixed(field=QQ):
    """``[e1, e1] = [e1, e2] = e2``."""
    return LeibnizAlgebra.from_brackets(
        "leib2_mixed", ("e1", "e2"), {("e1", "e2"): {"e2": 1}, ("e1", "e1"): {"e2": 1}}, field
    )


ALGEBRAS = {
    "g": trivial_g,
    "abelian1": lambda field=QQ: abelian(1, field=field),
    "abelian2": lambda field=QQ: abelian(2, field=field),
    "abelian3": lambda field=QQ: abelian(3, field=field),
    "ex310_h": ex310_h,
    "ex310_ghat": ex310_ghat,
    "ex311_h": ex311_h,
    "ex311_ghat": ex311_ghat,
    "ex312_h": ex312_h,
    "ex312_ghat1": ex312_ghat1,
    "ex312_ghat2": ex312_ghat2,
    "lie2_affine": lie2_affine,
    "heisenberg3": heisenberg3,
    "sl2": sl2,
    "leib2_nil": leib2_nil,
    "leib2_left": leib2_left,
    "leib2_mixed": leib2_mixed,
}

COCYCLES = {
    "ex310": ex310,
    "ex311": ex311,
    "ex312_g1": ex312_g1,
    "ex312_g2": ex312_g2,
}

_TAKES_GAMMA = {"ex310", "ex310_ghat"}


def algebra(name: str, gamma=Fraction(1), field=QQ) -> LeibnizAlgebra:
    try:
        ctor = ALGEBRAS[name]
    except KeyError:
        raise KeyError(f"unknown registry algebra {name!r}") from None
    if name in _TAKES_GAMMA:
        return ctor(gamma, field=field)
    return ctor(field=field)


def cocycle(name: str, gamma=Fraction(1), field=QQ) -> NonAbelianCocycle:
    try:
        ctor = COCYCLES[name]
    except KeyError:
        raise KeyError(f"unknown registry cocycle {name!r}") from None
    if name in _TAKES_GAMMA:
        return ctor(gamma, field=field)
    return ctor(field=field)


def test_algebras(field=QQ) -> list:
    """Every registry algebra (``ex310_ghat`` at ``gamma = 1``)."""
    return [algebra(name, field=field) for name in ALGEBRAS]


def lie_algebras(field=QQ) -> list:
    return [A for A in test_algebras(field) if A.is_antisymmetric()]
