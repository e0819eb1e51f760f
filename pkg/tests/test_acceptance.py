"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import subprocess
import sys
import time

import pytest

from orbit_resolve.deformation import DEFAULT_T_VALUES, central_element, certify_fiber, common_levi_match
from orbit_resolve.liealg_oracle import build_algebra, centralizer_dimension, element_of_type, parabolic_from_flag, richardson_partition
from orbit_resolve.partitions import LieTypeRank, dominates, dual_partition, enumerate_orbits, orbit_dimension, partitions_of
from orbit_resolve.polarizations import (
    FAIL,
    NO_RESOLUTION,
    PASS,
    flag_types_A,
    isotropic_flag_types,
    polarization_classes,
    richardson_of,
    spaltenstein_injectivity_check,
    split_in_D,
    verify_theorem,
)
from orbit_resolve.report import deformation_classes

CERT_RANKS = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D2", "D3", "D4"]


def T(text):
    return LieTypeRank.parse(text)


@pytest.fixture
def criterion(capsys):
    lines = []

    def report(number, ok, detail):
        lines.append(f"acceptance {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        with capsys.disabled():
            print("\n" + lines[-1])
        return ok

    return report


def test_criterion_1_partition_kernel(criterion):
    bad, count = [], 0
    for n in range(1, 13):
        ps = partitions_of(n)
        count = len(ps)
        for d in ps:
            if dual_partition(dual_partition(d)) != d or dual_partition(d).total != n:
                bad.append(str(d))
        for d in ps:
            for e in ps:
                if dominates(d, e) != dominates(dual_partition(e), dual_partition(d)):
                    bad.append(f"{d} vs {e}")
    ok = not bad and count >= 77
    assert criterion(1, ok, f"n <= 12, {count} partitions at n = 12, {len(bad)} violations")


def test_criterion_2_type_A(criterion):
    start = time.perf_counter()
    problems = []
    for n in range(1, 6):
        t = T(f"A{n}")
        for o in enumerate_orbits(t):
            for ft in flag_types_A(o.partition):
                if richardson_of(t, ft) != o.partition:
                    problems.append(f"{o}: {ft}")
            r = verify_theorem(o)
            if r.verdict != PASS or len(r.levi_classes) != 1:
                problems.append(f"{o}: {r.verdict}")
            if sorted(str(pc.flag_type) for pc in r.resolution_polarizations) != sorted(map(str, flag_types_A(o.partition))):
                problems.append(f"{o}: oracle polarizations differ from permutations of the dual")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed <= 60
    assert criterion(2, ok, f"A1..A5 in {elapsed:.1f}s, problems: {problems[:3]}")


def _sweep(ranks):
    verdicts = {}
    for t in ranks:
        for o in enumerate_orbits(T(t)):
            verdicts[str(o)] = verify_theorem(o).verdict
    return verdicts


def test_criterion_3_type_C(criterion):
    injective = all(spaltenstein_injectivity_check(T(t), q) for t in ("C2", "C3") for q in range(0, 2 * T(t).rank + 1, 2))
    verdicts = _sweep(["C2", "C3"])
    ok = injective and all(v in (PASS, NO_RESOLUTION) for v in verdicts.values())
    assert criterion(3, ok, f"injectivity {injective}, {sum(v == PASS for v in verdicts.values())} PASS of {len(verdicts)} orbits")


def test_criterion_4_types_B_D(criterion):
    verdicts = _sweep(["B2", "B3", "D2", "D3", "D4"])
    sweep_ok = all(v in (PASS, NO_RESOLUTION) for v in verdicts.values())
    split_ok = True
    pairs = 0
    for t in ("D2", "D3", "D4"):
        alg = build_algebra(T(t))
        for ft in isotropic_flag_types(T(t)):
            k, b = ft.k, ft.blocks
            split_ok &= split_in_D(ft) == (k % 2 == 0 and b[k // 2 - 1] >= 2)
            if split_in_D(ft):
                one = central_element(alg, parabolic_from_flag(alg, ft, "I"), "I")
                two = central_element(alg, parabolic_from_flag(alg, ft, "II"), "II")
                split_ok &= common_levi_match(one, two)
                pairs += 1
    ok = sweep_ok and split_ok
    assert criterion(4, ok, f"{len(verdicts)} orbits without FAIL: {sweep_ok}, split rule and {pairs} split pairs: {split_ok}")


def test_criterion_5_key_lemma(criterion):
    start = time.perf_counter()
    failures, total = [], 0
    for t in CERT_RANKS:
        alg = build_algebra(T(t))
        for pc in deformation_classes(T(t)):
            ce = central_element(alg, parabolic_from_flag(alg, pc.flag_type, pc.split_tag), pc.split_tag)
            for tv in DEFAULT_T_VALUES:
                cert = certify_fiber(alg, ce, tv, samples=20)
                total += 1
                ok_cert = cert.bracket_stable and cert.charpoly_constant and cert.dimension_balanced
                ok_cert &= cert.tangent_full is None if tv == 0 else cert.tangent_full
                if not ok_cert:
                    failures.append(f"{t} {pc} t={tv}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 300
    assert criterion(5, ok, f"{total} certificates in {elapsed:.1f}s, failures: {failures[:3]}")


def test_criterion_6_oracle_consistency(criterion):
    problems = []
    for t in CERT_RANKS:
        tr = T(t)
        alg = build_algebra(tr)
        for o in enumerate_orbits(tr):
            e = element_of_type(alg, o.partition, o.very_even_tag)
            if alg.dim - centralizer_dimension(alg, e) != orbit_dimension(tr, o.partition):
                problems.append(str(o))
        for pc in polarization_classes(tr):
            pd = parabolic_from_flag(alg, pc.flag_type, pc.split_tag)
            if 2 * len(pd.pu_basis) != orbit_dimension(tr, richardson_partition(alg, pd)):
                problems.append(f"{t} {pc}")
    assert criterion(6, not problems, f"ranks {CERT_RANKS[0]}..{CERT_RANKS[-1]}, problems: {problems[:3]}")


def test_criterion_7_determinism(criterion, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    codes = [
        subprocess.run([sys.executable, "-m", "orbit_resolve", "verify", "C3", "--seed", "42", "--out", str(p)]).returncode
        for p in (first, second)
    ]
    ok = codes == [0, 0] and first.read_bytes() == second.read_bytes()
    assert criterion(7, ok, f"two runs of verify C3 --seed 42, {len(first.read_bytes())} bytes each, identical: {ok}")


def test_criterion_8_negative_control(criterion):
    flipped = []
    for o in enumerate_orbits(T("C2")):
        honest = verify_theorem(o).verdict
        perturbed = verify_theorem(o, q_slack=2).verdict
        if honest == PASS and perturbed == FAIL:
            flipped.append(str(o))
    assert criterion(8, bool(flipped), f"q filter widened by one parity step flips {flipped}")
