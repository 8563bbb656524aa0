import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from og10 import discriminant, lattice, moduli
from og10.errors import Inconsistent, NotOG10Vector, NotPositive
from og10.lattice import make_lattice
from og10.moduli import MukaiVector, curve_class, dual_wall_divisor, moduli_picard
from og10.walls import WallType, ambient_class, wall_type

H2 = make_lattice([[2]], "H^2=2")
EF = make_lattice([[0, 1], [1, 0]], "<e,f>")


def mukai_pair(pic, a, b):
    # independent formula: c.c' - r s' - r' s
    ca, cb = a[1:-1], b[1:-1]
    return pic.pair(ca, cb) - a[0] * b[-1] - b[0] * a[-1]


def test_mukai_square_is_eight():
    for pic, v in [(H2, MukaiVector(0, (2,), -4)), (H2, MukaiVector(0, (2,), 2)),
                   (H2, MukaiVector(2, (0,), -2)), (EF, MukaiVector(2, (0, 0), -2))]:
        assert v.square(pic) == 8
        assert mukai_pair(pic, v.coords, v.coords) == 8


def test_not_og10_vector():
    with pytest.raises(NotOG10Vector):
        moduli_picard(H2, MukaiVector(0, (1,), 0))
    with pytest.raises(NotOG10Vector):
        moduli_picard(H2, MukaiVector(0, (3,), 0))


def test_example_sigma_and_section():
    # v = (2, 0, -2) on a degree-two K3: B = pullback of H, Sigma the exceptional class
    picM = moduli_picard(H2, MukaiVector(2, (0,), -2))
    b = picM.from_frame((0, F(1, 2), F(-1, 2)))
    sigma = picM.sigma
    assert b.square == -2
    assert sigma.square == -6
    assert b.pair(sigma) == 3
    assert picM.to_frame(2 * b + sigma) == (0, 1, 0)
    assert picM.frame_of_mukai((-1, 0, -1)) == (0, 1, 0)
    assert ambient_class(picM, sigma).divisibility == 3
    assert discriminant.is_og10_genus(picM.og10_embedding.target)
    assert picM.og10_embedding.primitive


def test_example_fixture_values():
    from og10.presets import PRESETS
    for name in ("zero-section", "p3-bundle", "nonreduced", "prop63-split", "prop53-exclusion"):
        assert PRESETS[name]()["match"], name


def test_curve_class_inconsistent():
    picM = moduli_picard(H2, MukaiVector(0, (2,), -4), [(-1, 1, 0), (0, 0, 1)])
    a = picM.frame_unit(0)
    with pytest.raises(Inconsistent):
        curve_class(picM, [(a, 1), (a, 2)])


def test_embedding_preserves_form():
    picM = moduli_picard(H2, MukaiVector(0, (2,), 2), [(2, 1, 0), (0, 0, 1)])
    emb = picM.og10_embedding
    n = picM.lattice.rank
    for i in range(n):
        for j in range(n):
            assert emb.image(picM.lattice.basis_vector(i)).pair(emb.image(picM.lattice.basis_vector(j))) \
                == picM.lattice.gram[i][j]


# --- contraction classifier ---------------------------------------------------------

def brute_mz(pic, v, h0, box):
    hv = (0,) + tuple(h0) + (0,)
    out = set()
    for s in itertools.product(range(-box, box + 1), repeat=pic.rank + 2):
        if not any(s[1:-1]):
            continue
        if mukai_pair(pic, s, s) != -2 or mukai_pair(pic, s, hv) != 0:
            continue
        if 0 <= mukai_pair(pic, s, v) <= 4:
            out.add(s)
    return out


def test_mz_elliptic_witness():
    v = MukaiVector(2, (0, 0), -2)
    verdict = moduli.mz_contraction_type(EF, v, (1, 2), 10)
    assert verdict.kind == "SmallContraction"
    s = verdict.witness
    assert s.square(EF) == -2
    assert EF.pair(s.c, (1, 2)) == 0
    assert s.pair(EF, v) == 4
    oracle = brute_mz(EF, v.coords, (1, 2), 4)
    assert (1, 1, -2, -1) in oracle
    assert mukai_pair(EF, (1, 1, -2, -1), v.coords) == 4
    found = {w for w, _ in verdict.witnesses}
    assert {w for w in found if max(map(abs, w)) <= 4} == oracle
    assert verdict.search_complete


def test_mz_other_kinds():
    assert moduli.mz_contraction_type(H2, MukaiVector(2, (0,), -2), (1,), 10).kind == "NoWallFound"
    d = moduli.mz_contraction_type(EF, MukaiVector(2, (0, 0), -2), (1, 1), 10)
    assert d.kind == "Divisorial"
    with pytest.raises(NotPositive):
        moduli.mz_contraction_type(EF, MukaiVector(2, (0, 0), -2), (1, 0), 10)


def test_ellipsoid_against_box():
    a = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    pts = set(moduli.ellipsoid_points(a, (F(1, 2), 0, F(-1, 3)), 5))
    box = set()
    for n in itertools.product(range(-6, 7), repeat=3):
        x = [n[0] - F(1, 2), n[1], n[2] + F(1, 3)]
        if sum(a[i][j] * x[i] * x[j] for i in range(3) for j in range(3)) <= 5:
            box.add(n)
    assert pts == box


@given(st.integers(1, 6), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 8))
def test_ellipsoid_matches_brute_force(d, c0, c1, r):
    a = [[2 * d, 1], [1, 2]]
    pts = set(moduli.ellipsoid_points(a, (F(c0, 2), F(c1, 3)), r))
    # scaled by 36 to stay in integers: X0 = 2 n0 - c0, X1 = 3 n1 - c1
    box = set()
    for n in itertools.product(range(-8, 9), repeat=2):
        x0, x1 = 2 * n[0] - c0, 3 * n[1] - c1
        if 18 * d * x0 * x0 + 12 * x0 * x1 + 8 * x1 * x1 <= 36 * r:
            box.add(n)
    assert pts == box
