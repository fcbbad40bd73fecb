import itertools

import numpy as np
import pytest

from dwsurf.cocycles import (CocycleError, RootOfUnity, TwoCocycle, c_regular_count,
                             coboundary, heisenberg_cocycle, read_cocycle_file,
                             sign_cocycles_catalog, trivial_cocycle, twist, verify_cocycle,
                             write_cocycle_file)
from dwsurf.groups import build_group, conjugacy_classes


def random_b(G, order, rng):
    """Random mapping G -> order-th roots of unity with b(1) = 1."""
    return [RootOfUnity(0, 1)] + [RootOfUnity(int(rng.integers(order)), order)
                                  for _ in range(G.order - 1)]


# ---------------------------------------------------------------------------
# roots of unity

def test_root_reduction_and_range():
    assert RootOfUnity(2, 4) == RootOfUnity(1, 2)
    assert RootOfUnity(-1, 4) == RootOfUnity(3, 4)
    assert RootOfUnity(6, 3) == RootOfUnity.one()


def test_root_multiplication_lifts_orders():
    z = RootOfUnity(1, 2) * RootOfUnity(1, 3)
    assert z == RootOfUnity(5, 6)
    assert z * z.inverse() == RootOfUnity.one()
    assert abs(RootOfUnity(1, 8).value - np.exp(2j * np.pi / 8)) < 1e-15


def test_root_power():
    assert RootOfUnity(1, 6) ** 4 == RootOfUnity(2, 3)


# ---------------------------------------------------------------------------
# verification

def test_trivial_cocycle_verifies_everywhere():
    for spec in ["cyclic:4", "symmetric:3", "quaternion:8"]:
        assert verify_cocycle(trivial_cocycle(build_group(spec))).ok


def test_heisenberg_two_verifies():
    assert verify_cocycle(heisenberg_cocycle(2)).ok


def test_normalization_violation_is_located():
    G = build_group("cyclic:3")
    exps = np.zeros((3, 3), dtype=np.int64)
    exps[1, 0] = 1
    check = verify_cocycle(TwoCocycle(G, 2, exps))
    assert not check.ok
    assert check.kind == "normalization"
    assert check.witness == (1,)


def test_cocycle_violation_reports_first_triple():
    G = build_group("cyclic:3")
    exps = np.zeros((3, 3), dtype=np.int64)
    exps[1, 1] = 1  # breaks the identity but not normalization
    check = verify_cocycle(TwoCocycle(G, 2, exps))
    assert not check.ok
    assert check.kind == "cocycle"
    assert len(check.witness) == 3


def test_exponent_range_is_enforced():
    G = build_group("cyclic:2")
    with pytest.raises(CocycleError):
        TwoCocycle(G, 2, np.full((2, 2), 2, dtype=np.int64))


# ---------------------------------------------------------------------------
# coboundaries and twisting

def test_constant_b_gives_trivial_coboundary():
    G = build_group("symmetric:3")
    db = coboundary(G, [RootOfUnity.one()] * 6)
    assert np.all(db.exps == 0)


def test_sign_b_on_z2_has_trivial_coboundary():
    G = build_group("cyclic:2")
    db = coboundary(G, [RootOfUnity.one(), RootOfUnity(1, 2)])
    # (db)(x,x) = b(x)^2 / b(1) = 1
    assert np.all(db.exps == 0)


def test_random_coboundaries_verify():
    G = build_group("symmetric:3")
    rng = np.random.default_rng(7)
    for _ in range(100):
        assert verify_cocycle(coboundary(G, random_b(G, 6, rng))).ok


def test_coboundary_rejects_bad_basepoint():
    G = build_group("cyclic:2")
    with pytest.raises(CocycleError):
        coboundary(G, [RootOfUnity(1, 2), RootOfUnity.one()])


def test_twist_by_one_is_identity():
    c = heisenberg_cocycle(2)
    t = twist(c, [RootOfUnity.one()] * 4)
    assert t.order == c.order and np.array_equal(t.exps, c.exps)


def test_twist_of_trivial_is_the_coboundary():
    G = build_group("cyclic:4")
    rng = np.random.default_rng(1)
    b = random_b(G, 4, rng)
    assert np.array_equal(twist(trivial_cocycle(G), b).exps, coboundary(G, b).exps)


def test_twist_lifts_to_lcm_order():
    c = heisenberg_cocycle(2)
    rng = np.random.default_rng(2)
    t = twist(c, random_b(c.group, 3, rng))
    assert t.order == 6
    assert verify_cocycle(t).ok


# ---------------------------------------------------------------------------
# the heisenberg family

def test_heisenberg_two_values():
    c = heisenberg_cocycle(2)
    # elements (a1,a2) at index 2*a1+a2
    assert c.value(1, 2) == RootOfUnity(1, 2)   # c((0,1),(1,0)) = -1
    assert c.value(2, 1) == RootOfUnity.one()   # c((1,0),(0,1)) = +1


def test_heisenberg_rejects_small_n():
    with pytest.raises(CocycleError):
        heisenberg_cocycle(1)


@pytest.mark.parametrize("n", [2, 3])
def test_heisenberg_only_identity_is_regular(n):
    c = heisenberg_cocycle(n)
    assert c_regular_count(c.group, c) == 1


# ---------------------------------------------------------------------------
# the sign-valued catalog

def test_catalog_members_verify_and_include_trivial():
    for spec in ["cyclic:2", "cyclic:4", "product(cyclic:2,cyclic:2)",
                 "dihedral:8", "quaternion:8"]:
        G = build_group(spec)
        cat = sign_cocycles_catalog(G)
        assert cat[0].name == "trivial"
        assert len(cat) >= 2
        for c in cat:
            assert verify_cocycle(c).ok
            assert c.is_sign_valued


def test_catalog_on_klein_four_contains_heisenberg():
    G = build_group("product(cyclic:2,cyclic:2)")
    h = heisenberg_cocycle(2)
    assert any(c.order == 2 and np.array_equal(c.exps, h.exps)
               for c in sign_cocycles_catalog(G))


def test_catalog_on_z2_lists_both_classes():
    cat = sign_cocycles_catalog(build_group("cyclic:2"))
    assert [c.name for c in cat] == ["trivial", "z2:sign"]
    assert cat[1].value(1, 1) == RootOfUnity(1, 2)


def test_catalog_warns_on_unsupported_group():
    with pytest.warns(UserWarning):
        assert sign_cocycles_catalog(build_group("cyclic:5")) == []


def test_inverse_symmetry_on_catalog():
    for spec in ["cyclic:4", "dihedral:8", "quaternion:8"]:
        G = build_group(spec)
        for c in sign_cocycles_catalog(G):
            for g in range(G.order):
                assert c.value(g, G.inv(g)) == c.value(G.inv(g), g)


def test_five_term_identity_on_catalog():
    for spec in ["cyclic:4", "product(cyclic:2,cyclic:2)", "dihedral:8", "quaternion:8"]:
        G = build_group(spec)
        for c in sign_cocycles_catalog(G):
            for a, b in itertools.product(range(G.order), repeat=2):
                ab = G.mul(a, b)
                lhs = c.value(ab, G.inv(ab))
                rhs = (c.value(a, G.inv(a)) * c.value(b, G.inv(b))
                       * c.value(a, b) * c.value(G.inv(b), G.inv(a)))
                assert lhs == rhs


# ---------------------------------------------------------------------------
# c-regularity

def test_trivial_cocycle_regular_count_is_class_count():
    for spec in ["symmetric:3", "quaternion:8", "dihedral:8"]:
        G = build_group(spec)
        assert c_regular_count(G, trivial_cocycle(G)) == conjugacy_classes(G).count


def test_regular_count_is_twist_invariant():
    c = heisenberg_cocycle(2)
    rng = np.random.default_rng(3)
    for _ in range(20):
        assert c_regular_count(c.group, twist(c, random_b(c.group, 4, rng))) == 1


def test_d8_lift_has_two_regular_classes():
    G = build_group("dihedral:8")
    c = [x for x in sign_cocycles_catalog(G) if x.name == "d8:lift"][0]
    assert c_regular_count(G, c) == 2


def test_regularity_scan_rejects_tables_breaking_class_invariance():
    # a fake table (not a cocycle) that makes one element of a class regular
    # and another not: the scan must refuse rather than return a count
    G = build_group("quaternion:8")
    exps = np.zeros((8, 8), dtype=np.int64)
    exps[2, 1] = 1   # asymmetric on the commuting pair (i, -1); -i stays regular
    with pytest.raises(CocycleError):
        c_regular_count(G, TwoCocycle(G, 2, exps))


# ---------------------------------------------------------------------------
# file format

def test_cocycle_file_roundtrip(tmp_path):
    c = heisenberg_cocycle(3)
    path = tmp_path / "heis3.cocycle"
    write_cocycle_file(c, path)
    back = read_cocycle_file(path, c.group)
    assert back.order == c.order
    assert np.array_equal(back.exps, c.exps)


def test_cocycle_file_rejects_invalid_tables(tmp_path):
    G = build_group("cyclic:2")
    path = tmp_path / "bad.cocycle"
    path.write_text("order 2\n0 0 0\n0 1 0\n1 0 1\n1 1 0\n")  # breaks normalization
    with pytest.raises(CocycleError):
        read_cocycle_file(path, G)


def test_cocycle_file_requires_full_table(tmp_path):
    G = build_group("cyclic:2")
    path = tmp_path / "partial.cocycle"
    path.write_text("order 2\n0 0 0\n")
    with pytest.raises(CocycleError):
        read_cocycle_file(path, G)
