"""Walk through the built-in extension examples: centers, cocycle checks,
equivalence decisions and the 2-algebra morphism picture.

Run with ``python3 demos/worked_examples.py``.
"""

from fractions import Fraction

from leibext import registry, left_center
from leibext.extensions import build_extension, cocycles_equivalent, is_cocycle, transform_cocycle
from leibext.fields import to_field
from leibext.leibniz2 import CenterConditionFailed, cocycle_to_morphism, morphism_to_cocycle


def span(sub, labels):
    """Render a subspace as spans of basis labels (rows are in RREF)."""
    vecs = []
    for row in sub.rows:
        terms = [f"{v}*{lab}" if v != 1 else lab for v, lab in zip(row, labels) if v != 0]
        vecs.append(" + ".join(terms))
    return "{" + ", ".join(vecs) + "}"


def centers():
    print("== centers of the extension algebras")
    for gamma in (Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 3)):
        ghat = registry.algebra("ex310_ghat", gamma=gamma)
        print(f"ex310, gamma={gamma}: Z = {span(left_center(ghat), ghat.basis)}")
    for name in ("ex311_h", "ex311_ghat", "ex312_ghat1", "ex312_ghat2"):
        A = registry.algebra(name)
        print(f"{name}: Z = {span(left_center(A), A.basis)}")


def cocycles():
    print("\n== cocycle conditions and the assembled bracket")
    for name in registry.COCYCLES:
        c = registry.cocycle(name)
        E = build_extension(c)
        print(f"{name}: cocycle ok={is_cocycle(c).ok}, extension {E.total.name} of dim {E.total.dim}")


def equivalence():
    print("\n== equivalence")
    c1, c2 = registry.cocycle("ex312_g1"), registry.cocycle("ex312_g2")
    print("ex312_g1 vs ex312_g2:", "equivalent" if cocycles_equivalent(c1, c2) is not None else "not equivalent")
    c = registry.cocycle("ex310")
    phi = to_field([[Fraction(1, 2)], [Fraction(-3)], [Fraction(2)]])
    moved = transform_cocycle(c, phi)
    witness = cocycles_equivalent(moved, c)
    print("ex310 vs its transform by phi = (1/2, -3, 2): witness", [str(v) for v in witness.ravel()])


def morphisms():
    print("\n== cocycles as 2-algebra morphisms")
    c = registry.cocycle("ex310")
    source, target, F = cocycle_to_morphism(c)
    back = morphism_to_cocycle(F, c.g, target)
    same = all((back.l == c.l).flat) and all((back.r == c.r).flat) and all((back.omega == c.omega).flat)
    print(f"ex310 -> morphism into {target.name} -> cocycle: round trip exact = {same}")
    try:
        cocycle_to_morphism(registry.cocycle("ex311"))
    except CenterConditionFailed as exc:
        print("ex311 rejected:", exc)


if __name__ == "__main__":
    centers()
    cocycles()
    equivalence()
    morphisms()
