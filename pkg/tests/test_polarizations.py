import pytest

from orbit_resolve.fiber_count import springer_degree
from orbit_resolve.liealg_oracle import build_algebra
from orbit_resolve.partitions import FlagType, LieTypeRank, OrbitLabel, Partition, enumerate_orbits
from orbit_resolve.polarizations import (
    FAIL,
    NO_RESOLUTION,
    PASS,
    LeviClass,
    PolarizationClass,
    admissible_q,
    flag_types_A,
    is_d_alias,
    isotropic_flag_types,
    levi_class_of,
    levi_classes,
    levi_to_pai,
    pai_membership,
    parity_filter,
    polarization_classes,
    resolution_polarizations,
    richardson_of,
    spaltenstein_injectivity_check,
    split_in_D,
    verify_theorem,
)


def T(text):
    return LieTypeRank.parse(text)


def orbit(t, d, tag=None):
    return OrbitLabel(T(t), Partition.parse(d), tag)


def F(text):
    return FlagType.parse(text, isotropic=True)


def test_flag_types_A_are_permutations_of_dual():
    assert [str(f) for f in flag_types_A(Partition.parse("[2,1,1]"))] == ["(3,1)", "(1,3)"]
    assert len(flag_types_A(Partition.parse("[3,2,1]"))) == 6
    assert len(polarization_classes(T("A3"))) == 8


def test_isotropic_flag_types():
    assert [str(f) for f in isotropic_flag_types(T("C2"))] == ["(4)", "(2,2)", "(1,2,1)", "(1,1,1,1)"]
    b2 = [str(f) for f in isotropic_flag_types(T("B2"))]
    assert "(2,1,2)" in b2 and "(2,2)" not in b2
    assert all(f.blocks == f.blocks[::-1] for f in isotropic_flag_types(T("D4")))


@pytest.mark.parametrize("t", ["D2", "D3", "D4"])
def test_split_rule_matches_definition(t):
    for ft in isotropic_flag_types(T(t)):
        k, b = ft.k, ft.blocks
        expected = k % 2 == 0 and b[k // 2 - 1] >= 2
        assert split_in_D(ft) is expected


def test_d_aliases_are_dropped_and_split_types_doubled():
    pcs = polarization_classes(T("D4"))
    assert is_d_alias(F("(3,1,1,3)")) and not is_d_alias(F("(3,2,3)"))
    labels = [str(pc) for pc in pcs]
    assert "(4,4)#I" in labels and "(4,4)#II" in labels
    assert not any(is_d_alias(pc.flag_type) for pc in pcs)
    with pytest.raises(ValueError):
        PolarizationClass(T("D4"), F("(4,4)"))
    with pytest.raises(ValueError):
        PolarizationClass(T("C2"), F("(2,2)"), "I")


def test_levi_classes():
    assert levi_class_of(T("C2"), F("(1,2,1)")) == LeviClass((1,), 1)
    assert levi_class_of(T("C3"), F("(2,1,1,2)")) == LeviClass((2, 1), 0)
    assert levi_class_of(T("C3"), F("(2,2,2)")) == LeviClass((2,), 1)
    assert levi_class_of(T("D4"), F("(3,2,3)")) == LeviClass((3,), 1)
    assert levi_class_of(T("D4"), F("(2,1,1,2)")) == LeviClass((2,), 1)
    assert len(levi_classes(T("C2"))) == 4


@pytest.mark.parametrize(
    "t, lc, pai",
    [
        ("C2", LeviClass((1,), 1), (3, 1)),
        ("C2", LeviClass((2,), 0), (4,)),
        ("C3", LeviClass((3,), 0), (6,)),
        ("C3", LeviClass((1,), 2), (3, 1, 1, 1)),
        ("B2", LeviClass((2,), 0), (5,)),
    ],
)
def test_levi_to_pai(t, lc, pai):
    assert tuple(levi_to_pai(T(t), lc)) == pai


def test_pai_membership():
    assert pai_membership(4, 2, (3, 1))
    assert not pai_membership(4, 0, (3, 1))
    assert not pai_membership(6, 2, (2, 3, 1))
    with pytest.raises(ValueError):
        pai_membership(6, 0, (4,))


def test_admissible_q_in_D_allows_two_extra_odd_parts():
    assert admissible_q(T("D4"), LeviClass((4,), 0)) == (0, 2)
    assert admissible_q(T("C3"), LeviClass((1,), 2)) == (4,)


def _degree_table(t, p):
    tr = T(t)
    alg = build_algebra(tr)
    return {str(ft): springer_degree(alg, ft, p) for ft in isotropic_flag_types(tr) if not (tr.family == "D" and is_d_alias(ft))}


SPRINGER = [
    ("C2", 5, {"(1,2,1)"}),
    ("B2", 7, {"(2,1,2)"}),
    ("D2", 5, set()),
    ("D3", 7, set()),
    ("C3", 7, {"(1,4,1)", "(1,1,2,1,1)"}),
    ("B3", 11, {"(1,2,1,2,1)", "(2,1,1,1,2)"}),
    pytest.param("D4", 11, {"(3,2,3)", "(1,3,3,1)"}, marks=pytest.mark.slow),
]


@pytest.mark.parametrize("t, p, degree_two", SPRINGER)
def test_parity_filter_agrees_with_fiber_counts(t, p, degree_two):
    tr = T(t)
    degrees = _degree_table(t, p)
    assert {ft for ft, deg in degrees.items() if deg == 2} == degree_two
    assert set(degrees.values()) <= {1, 2}
    for ft, deg in degrees.items():
        f = F(ft)
        d = richardson_of(tr, f)
        assert parity_filter(tr, levi_class_of(tr, f), d) is (deg == 1), ft


@pytest.mark.parametrize(
    "o, expected",
    [
        (("C2", "[2,2]"), ["(2,2)"]),
        (("C2", "[4]"), ["(1,1,1,1)"]),
        (("C2", "[2,1,1]"), []),
        (("C3", "[4,2]"), ["(2,1,1,2)", "(1,2,2,1)"]),
        (("B2", "[3,1,1]"), ["(1,3,1)"]),
        (("D4", "[2,2,2,2]", "I"), ["(4,4)#I"]),
        (("D4", "[2,2,2,2]", "II"), ["(4,4)#II"]),
        (("D4", "[3,3,1,1]"), ["(2,4,2)"]),
        (("D4", "[5,3]"), ["(2,1,2,1,2)", "(1,2,2,2,1)", "(1,1,2,2,1,1)#I", "(1,1,2,2,1,1)#II"]),
    ],
)
def test_resolution_polarizations(o, expected):
    assert [str(pc) for pc in resolution_polarizations(orbit(*o))] == expected


def test_verdicts():
    assert verify_theorem(orbit("C2", "[2,2]")).verdict == PASS
    assert verify_theorem(orbit("C2", "[2,1,1]")).verdict == NO_RESOLUTION
    r = verify_theorem(orbit("D4", "[5,3]"))
    assert r.verdict == PASS and len(r.levi_classes) == 1 and len(r.d_iso_pairs) == 1
    assert verify_theorem(orbit("C2", "[2,2]"), q_slack=2).verdict == FAIL


@pytest.mark.parametrize("t", ["A3", "B2", "B3", "C2", "C3", "D2", "D3", "D4"])
def test_sweep_never_fails(t):
    for o in enumerate_orbits(T(t)):
        assert verify_theorem(o).verdict in (PASS, NO_RESOLUTION)


@pytest.mark.parametrize("t, qs", [("C2", range(0, 5, 2)), ("C3", range(0, 7, 2)), ("B3", range(1, 8, 2))])
def test_spaltenstein_injectivity(t, qs):
    assert all(spaltenstein_injectivity_check(T(t), q) for q in qs)


def test_report_serializes():
    d = verify_theorem(orbit("C3", "[4,2]")).to_dict()
    assert d["verdict"] == PASS and d["levi_classes"][0]["levi"]["label"] == "gl2xgl1|r0"
