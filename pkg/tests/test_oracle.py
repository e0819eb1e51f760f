import itertools

import pytest

from orbit_resolve.exact import ExactMatrix, bracket
from orbit_resolve.liealg_oracle import (
    build_algebra,
    centralizer_dimension,
    check_membership,
    element_of_type,
    is_nilpotent,
    jordan_type,
    outer_swap,
    parabolic_from_flag,
    richardson_partition,
    standard_form,
    very_even_class,
)
from orbit_resolve.partitions import FlagType, LieTypeRank, Partition, enumerate_orbits, orbit_dimension
from orbit_resolve.polarizations import polarization_classes

RANKS = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D2", "D3", "D4"]


def T(text):
    return LieTypeRank.parse(text)


@pytest.mark.parametrize("t", RANKS)
def test_basis_has_algebra_dimension(t):
    alg = build_algebra(T(t))
    assert alg.dim == T(t).algebra_dim
    assert all(check_membership(alg, x) for x in alg.basis)


@pytest.mark.parametrize("t", ["A2", "B2", "C2", "D3"])
def test_basis_closed_under_bracket(t):
    alg = build_algebra(T(t))
    assert all(check_membership(alg, bracket(x, y)) for x, y in itertools.combinations(alg.basis, 2))


def test_symplectic_form_is_antisymmetric():
    j = standard_form(T("C3"))
    assert (j + j.T).is_zero()
    assert standard_form(T("A3")) is None


def test_outer_swap_preserves_form():
    alg = build_algebra(T("D4"))
    g = outer_swap(alg)
    assert g.T @ alg.form @ g == alg.form


@pytest.mark.parametrize("t", RANKS)
def test_parabolic_dimensions(t):
    tr = T(t)
    alg = build_algebra(tr)
    for pc in polarization_classes(tr):
        pd = parabolic_from_flag(alg, pc.flag_type, pc.split_tag)
        assert len(pd.p_basis) == len(pd.l_basis) + len(pd.pu_basis)
        assert 2 * len(pd.pu_basis) + len(pd.l_basis) == alg.dim
        for x, y in itertools.product(pd.p_basis[:6], pd.pu_basis[:6]):
            assert check_membership(alg, bracket(x, y))


@pytest.mark.parametrize("t", RANKS)
def test_elements_realize_their_orbits(t):
    tr = T(t)
    alg = build_algebra(tr)
    for o in enumerate_orbits(tr):
        e = element_of_type(alg, o.partition, o.very_even_tag)
        assert check_membership(alg, e) and is_nilpotent(e)
        assert jordan_type(e) == o.partition
        assert alg.dim - centralizer_dimension(alg, e) == orbit_dimension(tr, o.partition)
        if o.very_even_tag:
            assert very_even_class(alg, e) == o.very_even_tag


def test_outer_swap_exchanges_very_even_classes():
    alg = build_algebra(T("D4"))
    g = outer_swap(alg)
    for d in ("[4,4]", "[2,2,2,2]"):
        e = element_of_type(alg, Partition.parse(d), "I")
        assert very_even_class(alg, g @ e @ g) == "II"


RICHARDSON = {
    "C2": {"(2,2)": "[2,2]", "(1,2,1)": "[2,2]", "(1,1,1,1)": "[4]"},
    "B2": {"(2,1,2)": "[3,1,1]", "(1,3,1)": "[3,1,1]"},
    "C3": {"(3,3)": "[2,2,2]", "(2,2,2)": "[3,3]", "(1,4,1)": "[2,2,1,1]", "(1,2,2,1)": "[4,2]"},
    "B3": {"(3,1,3)": "[3,2,2]", "(2,3,2)": "[3,3,1]", "(1,5,1)": "[3,1,1,1,1]"},
    "D4": {"(4,4)": "[2,2,2,2]", "(1,6,1)": "[3,1,1,1,1,1]", "(2,1,2,1,2)": "[5,3]", "(1,1,4,1,1)": "[5,1,1,1]"},
    "A3": {"(2,2)": "[2,2]", "(1,3)": "[2,1,1]", "(1,2,1)": "[3,1]"},
}


@pytest.mark.parametrize("t", sorted(RICHARDSON))
def test_richardson_table(t):
    tr = T(t)
    alg = build_algebra(tr)
    for ft, d in RICHARDSON[t].items():
        pd = parabolic_from_flag(alg, FlagType.parse(ft, isotropic=tr.family != "A"))
        assert str(richardson_partition(alg, pd, seed=3)) == d


@pytest.mark.parametrize("t", RANKS)
def test_richardson_dimension_identity(t):
    tr = T(t)
    alg = build_algebra(tr)
    for pc in polarization_classes(tr):
        pd = parabolic_from_flag(alg, pc.flag_type, pc.split_tag)
        assert orbit_dimension(tr, richardson_partition(alg, pd)) == 2 * len(pd.pu_basis)


def test_richardson_of_whole_group_is_zero_orbit():
    alg = build_algebra(T("C2"))
    pd = parabolic_from_flag(alg, FlagType((4,), isotropic=True))
    assert richardson_partition(alg, pd) == Partition((1, 1, 1, 1))


def test_flag_must_fit_ambient_space():
    alg = build_algebra(T("C2"))
    with pytest.raises(ValueError):
        parabolic_from_flag(alg, FlagType((1, 1, 1), isotropic=True))


def test_nilpotency_detection():
    n = ExactMatrix(((0, 1), (0, 0)))
    assert is_nilpotent(n) and not is_nilpotent(ExactMatrix.identity(2))
