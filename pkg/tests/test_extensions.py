import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from leibext import registry
from leibext.algebra import check_leibniz, left_center
from leibext.extensions import (
    COCYCLE_CONDITIONS,
    CocycleViolation,
    InvalidSplitting,
    WitnessInvalid,
    build_extension,
    center_condition,
    check_extension_morphism,
    cocycles_equivalent,
    extract_cocycle,
    is_cocycle,
    is_equivalence_witness,
    isomorphism_from_witness,
    transform_cocycle,
    zero_cocycle,
)
from leibext.fields import GF, identity, to_field, zeros

from corpus import (
    algebra_pairs,
    extension_is_leibniz,
    perturb,
    random_phi,
    random_triple,
    random_valid_cocycle,
)
from strategies import tensors

COCYCLE_NAMES = tuple(registry.COCYCLES)
GHAT = {"ex310": "ex310_ghat", "ex311": "ex311_ghat", "ex312_g1": "ex312_ghat1", "ex312_g2": "ex312_ghat2"}
GAMMAS = (Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 3))


@pytest.mark.parametrize("name", COCYCLE_NAMES)
def test_registry_cocycles_are_cocycles(name):
    c = registry.cocycle(name)
    assert is_cocycle(c).ok
    assert extension_is_leibniz(c)


@pytest.mark.parametrize("name", COCYCLE_NAMES)
def test_extension_matches_registry_table(name):
    E = build_extension(registry.cocycle(name))
    assert E.total == registry.algebra(GHAT[name])
    assert check_leibniz(E.total).ok


@pytest.mark.parametrize("gamma", GAMMAS)
def test_ex310_family(gamma):
    c = registry.cocycle("ex310", gamma=gamma)
    E = build_extension(c)
    assert E.total == registry.algebra("ex310_ghat", gamma=gamma)
    x, e3 = E.total.vector({"x": 1}), E.total.vector({"e3": 1})
    assert np.all(E.total.bracket(x, e3) == (1 + gamma) * e3)


@pytest.mark.parametrize("name", COCYCLE_NAMES)
def test_extension_maps(name):
    E = build_extension(registry.cocycle(name))
    n, m = E.g.dim, E.h.dim
    assert np.all(E.p.dot(E.i) == 0)
    assert np.all(E.p.dot(E.sigma) == identity(n))
    # i and p are bracket morphisms
    for a, b in product(range(m), repeat=2):
        lhs = E.total.bracket(E.i[:, a], E.i[:, b])
        assert np.all(lhs == E.i.dot(E.h.c[a, b]))
    for x, y in product(range(n + m), repeat=2):
        u, v = E.total.unit(x), E.total.unit(y)
        assert np.all(E.p.dot(E.total.bracket(u, v)) == E.g.bracket(E.p.dot(u), E.p.dot(v)))


@pytest.mark.parametrize("name", COCYCLE_NAMES)
def test_extract_inverts_build(name):
    c = registry.cocycle(name)
    assert extract_cocycle(build_extension(c)) == c


@given(st.randoms(use_true_random=False))
def test_cocycle_conditions_match_leibniz_oracle(rnd):
    g, h = rnd.choice(list(algebra_pairs()))
    roll = rnd.random()
    if roll < 0.4:
        c = random_valid_cocycle(g, h, rnd) or zero_cocycle(g, h)
    elif roll < 0.7:
        c = perturb(random_valid_cocycle(g, h, rnd) or zero_cocycle(g, h), rnd)
    else:
        c = random_triple(g, h, rnd)
    report = is_cocycle(c)
    assert report.ok == extension_is_leibniz(c)
    assert set(report.violated) <= set(COCYCLE_CONDITIONS)
    assert set(report.witnesses) == set(report.violated)


def test_perturbation_is_reported():
    c = registry.cocycle("ex310")
    c.omega[0, 0, 0] += 1
    report = is_cocycle(c)
    # e1 is not central, so the bracket condition on l sees the change too
    assert not report.ok and report.violated == ("l_bracket", "omega_cocycle")
    with pytest.raises(CocycleViolation):
        build_extension(c)


def test_zero_cocycle_and_semidirect_like_cases():
    for g, h in list(algebra_pairs())[:6]:
        assert is_cocycle(zero_cocycle(g, h)).ok


@given(st.randoms(use_true_random=False), st.data())
def test_equivalence_laws_at_witness_level(rnd, data):
    name = rnd.choice(COCYCLE_NAMES)
    c = registry.cocycle(name)
    phi = data.draw(tensors((c.h.dim, c.g.dim)))
    psi = data.draw(tensors((c.h.dim, c.g.dim)))
    zero = zeros((c.h.dim, c.g.dim))
    assert transform_cocycle(c, zero) == c
    c1 = transform_cocycle(c, phi)
    assert is_cocycle(c1).ok
    assert is_equivalence_witness(c1, c, phi)
    assert transform_cocycle(c1, -phi) == c
    assert transform_cocycle(c1, psi) == transform_cocycle(c, phi + psi)


@given(st.randoms(use_true_random=False), st.data())
def test_decision_finds_witness_for_transforms(rnd, data):
    g, h = rnd.choice(list(algebra_pairs()))
    c = random_valid_cocycle(g, h, rnd)
    if c is None:
        return
    phi = data.draw(tensors((h.dim, g.dim)))
    c1 = transform_cocycle(c, phi)
    w = cocycles_equivalent(c1, c)
    assert w is not None and is_equivalence_witness(c1, c, w)
    theta = isomorphism_from_witness(c1, c, w)
    assert check_extension_morphism(theta, build_extension(c), build_extension(c1))


@given(st.randoms(use_true_random=False), st.data())
def test_splitting_independence(rnd, data):
    name = rnd.choice(COCYCLE_NAMES)
    E = build_extension(registry.cocycle(name))
    n, m = E.g.dim, E.h.dim
    psi = data.draw(tensors((m, n)))
    sigma2 = E.sigma + E.i.dot(psi)
    c1, c2 = extract_cocycle(E), extract_cocycle(E, sigma2)
    assert is_cocycle(c2).ok
    # sigma2 - sigma1 = i psi carries c1 to c2
    assert is_equivalence_witness(c2, c1, psi)
    assert cocycles_equivalent(c2, c1) is not None


def test_invalid_splitting():
    E = build_extension(registry.cocycle("ex310"))
    with pytest.raises(InvalidSplitting):
        extract_cocycle(E, 2 * E.sigma)


def test_ex312_pair_not_equivalent():
    c1, c2 = registry.cocycle("ex312_g1"), registry.cocycle("ex312_g2")
    assert cocycles_equivalent(c1, c2) is None
    assert cocycles_equivalent(c2, c1) is None
    with pytest.raises(WitnessInvalid):
        isomorphism_from_witness(c1, c2, zeros((3, 1)))


def test_ex312_no_isomorphism_over_gf3():
    F = GF(3)
    c1, c2 = registry.cocycle("ex312_g1", field=F), registry.cocycle("ex312_g2", field=F)
    E1, E2 = build_extension(c1), build_extension(c2)
    for vals in product(range(3), repeat=3):
        theta = identity(4, F)
        theta[1:, 0] = to_field([-v for v in vals], F)
        assert not check_extension_morphism(theta, E2, E1)
    assert cocycles_equivalent(c1, c2) is None


def _gf3_instances(count, seed):
    F = GF(3)
    rng = random.Random(seed)
    pairs = list(algebra_pairs(F, dims=((1, 2),)))
    out = []
    while len(out) < count:
        g, h = rng.choice(pairs)
        c = random_valid_cocycle(g, h, rng)
        if c is None:
            continue
        if rng.random() < 0.5:
            other = transform_cocycle(c, random_phi(rng, h, g, F))
        else:
            other = random_valid_cocycle(g, h, rng)
            if other is None:
                continue
        out.append((c, other))
    return out


def test_decision_matches_exhaustive_search_gf3():
    F = GF(3)
    seen = set()
    for c, other in _gf3_instances(30, 11):
        m, n = c.h.dim, c.g.dim
        exhaustive = any(
            transform_cocycle(other, to_field(np.array(v).reshape(m, n), F)) == c
            for v in product(range(3), repeat=m * n)
        )
        decided = cocycles_equivalent(c, other) is not None
        assert decided == exhaustive
        seen.add(decided)
    assert seen == {True, False}


@pytest.mark.parametrize("name, holds", [("ex310", True), ("ex311", False), ("ex312_g1", False), ("ex312_g2", True)])
def test_center_condition(name, holds):
    c = registry.cocycle(name)
    z_h, z_ext = center_condition(c)
    assert (z_h == z_ext) == holds
    assert z_h == left_center(c.h)
    assert z_h.contains_subspace(z_ext)
