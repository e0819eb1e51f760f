"""Certificates for the family tz + p_u degenerating G/L to T*(G/P).

Every group-level statement is checked infinitesimally with exact ranks:
the fiber over t is stable under l and p_u, the P-orbit of tz has the full
tangent space p_u, every fiber element has the characteristic polynomial of
tz, and the dimensions of G/L and T*(G/P) agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .exact import ExactMatrix, bracket, charpoly, rank, span_rank
from .liealg_oracle import (
    ExactMatrixAlgebra,
    ParabolicData,
    centralizer_dimension,
    check_membership,
    combination,
    jordan_type,
    outer_swap,
)
from .partitions import LieTypeRank, dominates
from .polarizations import levi_class_of

DEFAULT_T_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))
SAMPLE_RANGE = 12


class CertificationError(RuntimeError):
    """A constructed central element failed its own invariants (a flag or basis bug)."""


@dataclass(frozen=True)
class CentralElement:
    z: ExactMatrix
    parabolic: ParabolicData
    type: LieTypeRank
    split_tag: Optional[str] = None


@dataclass(frozen=True)
class FiberCertificate:
    t: Fraction
    bracket_stable: bool
    tangent_full: Optional[bool]
    charpoly_constant: bool
    dimension_balanced: bool

    @property
    def passed(self) -> bool:
        return self.bracket_stable and self.charpoly_constant and self.dimension_balanced and (
            self.tangent_full is not False
        )

    def to_dict(self) -> dict:
        return {
            "t": str(self.t),
            "bracket_stable": self.bracket_stable,
            "tangent_full": self.tangent_full,
            "charpoly_constant": self.charpoly_constant,
            "dimension_balanced": self.dimension_balanced,
            "passed": self.passed,
        }


def block_scalars(t: LieTypeRank, blocks: Sequence[int]) -> list[int]:
    """Pairwise distinct integer scalars, one per flag block, making z lie in g."""
    k = len(blocks)
    if t.family == "A":
        n = sum(blocks)
        s = sum(p * i for i, p in enumerate(blocks))
        lam = [s - n * i for i in range(k)]
        g = 0
        for x in lam:
            g = gcd(g, x)
        return [x // g for x in lam] if g else lam
    h = k // 2
    left = list(range(h, 0, -1))
    return left + ([0] if k % 2 else []) + [-x for x in reversed(left)]


def central_element(alg: ExactMatrixAlgebra, pd: ParabolicData, split_tag: Optional[str] = None) -> CentralElement:
    """Block-scalar z in the centre of l whose centralizer in g is exactly l."""
    lam = block_scalars(alg.type, pd.flag_type.blocks)
    z = ExactMatrix.diag([lam[b] for b in pd.flag_type.block_index()])
    if split_tag == "II":
        h = outer_swap(alg)
        z = h @ z @ h
    if not check_membership(alg, z):
        raise CertificationError(f"z = diag{lam} is not in {alg.type}")
    if any(not bracket(z, y).is_zero() for y in pd.l_basis):
        raise CertificationError(f"z is not central in the Levi of {pd.flag_type}")
    if centralizer_dimension(alg, z) != len(pd.l_basis):
        raise CertificationError(f"centralizer of z is larger than the Levi of {pd.flag_type}")
    return CentralElement(z, pd, alg.type, split_tag)


def _in_span(x: ExactMatrix, basis: Sequence[ExactMatrix], basis_rank: int) -> bool:
    return x.is_zero() or span_rank(list(basis) + [x]) == basis_rank


def bracket_stability_check(ce: CentralElement, t: Fraction) -> bool:
    """[l, tz + u] and [p_u, tz + u] stay in p_u for basis elements u."""
    pd = ce.parabolic
    tz = ce.z.scale(t)
    pu = pd.pu_basis
    r = span_rank(pu)
    for y in pd.l_basis:
        if not bracket(y, tz).is_zero():
            return False
        if any(not _in_span(bracket(y, u), pu, r) for u in pu):
            return False
    for u in pu:
        if not _in_span(bracket(u, tz), pu, r):
            return False
        if any(not _in_span(bracket(u, v), pu, r) for v in pu):
            return False
    return True


def tangent_space_check(ce: CentralElement, t: Fraction) -> bool:
    """[p, tz] spans exactly p_u, so Ad(P) tz is open in tz + p_u."""
    if t == 0:
        raise ValueError("the tangent certificate needs t != 0")
    pd = ce.parabolic
    tz = ce.z.scale(t)
    images = [bracket(y, tz) for y in pd.p_basis]
    dim_pu = len(pd.pu_basis)
    if span_rank(images) != dim_pu:
        return False
    return span_rank(list(pd.pu_basis) + images) == dim_pu


def charpoly_constancy_check(ce: CentralElement, t: Fraction, samples: int = 20, seed: int = 0) -> bool:
    """charpoly(tz + u) == charpoly(tz) for random integral u in p_u."""
    pd = ce.parabolic
    tz = ce.z.scale(t)
    want = charpoly(tz)
    rng = random.Random(seed)
    m = tz.size
    for _ in range(samples):
        u = combination(pd.pu_basis, [rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE) for _ in pd.pu_basis], m)
        if charpoly(tz + u) != want:
            return False
    return True


def dimension_balance_check(alg: ExactMatrixAlgebra, pd: ParabolicData) -> bool:
    """dim G/L = dim T*(G/P), with each dimension recomputed by exact rank."""
    g, p, l, pu = alg.dim, span_rank(pd.p_basis), span_rank(pd.l_basis), span_rank(pd.pu_basis)
    return g - l == 2 * (g - p) and pu == g - p and p == l + pu


def common_levi_match(ce1: CentralElement, ce2: CentralElement) -> bool:
    if ce1.type != ce2.type:
        raise ValueError("central elements come from different algebras")
    return levi_class_of(ce1.type, ce1.parabolic.flag_type) == levi_class_of(ce2.type, ce2.parabolic.flag_type)


def squarefree_minimal_polynomial(z: ExactMatrix) -> bool:
    """z is diagonalizable: the product of (z - c) over its distinct eigenvalues vanishes."""
    values = {z[i, i] for i in range(z.size)}
    if any(z[i, j] for i in range(z.size) for j in range(z.size) if i != j):
        raise ValueError("expected a diagonal element")
    prod = ExactMatrix.identity(z.size)
    for c in values:
        prod = prod @ (z - ExactMatrix.identity(z.size).scale(c))
    return prod.is_zero()


def central_fiber_dominated(ce: CentralElement, richardson, samples: int = 10, seed: int = 0) -> bool:
    """At t = 0 every sampled element is nilpotent with type dominated by the Richardson partition."""
    pd = ce.parabolic
    rng = random.Random(seed)
    m = ce.z.size
    for _ in range(samples):
        u = combination(pd.pu_basis, [rng.randint(-3, 3) for _ in pd.pu_basis], m)
        if not dominates(richardson, jordan_type(u)):
            return False
    return True


def certify_fiber(
    alg: ExactMatrixAlgebra, ce: CentralElement, t: Fraction, samples: int = 20, seed: int = 0
) -> FiberCertificate:
    t = Fraction(t)
    return FiberCertificate(
        t=t,
        bracket_stable=bracket_stability_check(ce, t),
        tangent_full=tangent_space_check(ce, t) if t != 0 else None,
        charpoly_constant=charpoly_constancy_check(ce, t, samples, seed),
        dimension_balanced=dimension_balance_check(alg, ce.parabolic),
    )
