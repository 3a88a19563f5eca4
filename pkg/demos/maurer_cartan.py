"""Cocycles as Maurer-Cartan elements and equivalences as gauge moves.

Run with ``python3 demos/maurer_cartan.py``.
"""

from fractions import Fraction

from leibext import registry
from leibext.dgla import gauge_transform, is_mc, mc_equivalent, pack_cocycle, phi_element
from leibext.extensions import is_cocycle, transform_cocycle
from leibext.fields import to_field


def main():
    c = registry.cocycle("ex310")
    e = pack_cocycle(c)
    print("ex310 packed: Maurer-Cartan =", is_mc(e), "| cocycle =", is_cocycle(c).ok)

    # a single wrong entry breaks both descriptions at once
    bad = c.omega.copy()
    bad[0, 0, 0] += 1
    broken = type(c)(c.g, c.h, c.l, c.r, bad)
    print("omega perturbed: Maurer-Cartan =", is_mc(pack_cocycle(broken)), "| cocycle =", is_cocycle(broken).ok)

    phi = to_field([[Fraction(2)], [Fraction(-1, 3)], [Fraction(1)]])
    moved = gauge_transform(e, phi_element(c.g, c.h, phi))
    print("gauge move agrees with the cocycle transform:", moved == pack_cocycle(transform_cocycle(c, phi)))

    found = mc_equivalent(e, moved)
    print("recovered gauge parameter:", [str(v) for v in found.cochain.t[: c.g.dim, c.g.dim:].ravel()])

    g1, g2 = (pack_cocycle(registry.cocycle(n)) for n in ("ex312_g1", "ex312_g2"))
    print("ex312 pair gauge equivalent:", mc_equivalent(g1, g2) is not None)


if __name__ == "__main__":
    main()
