"""Brute-force matrix realizations of the classical Lie algebras.

The bilinear forms are anti-diagonal, so the coordinate flag with steps
``p_1, p_1 + p_2, ...`` is isotropic whenever the step sizes are palindromic
and its stabilizer is literally block upper triangular.  Parabolic, Levi and
nilradical bases are then read off positionally.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .exact import ExactMatrix, bracket, image, intersect, kernel, matrix_rank, row_basis, span_rank
from .partitions import FlagType, LieTypeRank, Partition, dominates, is_valid_nilpotent_partition, partitions_of

ROUNDS = 3
BASE_RANGE = 8


class GenericityError(RuntimeError):
    """Random sampling did not settle on a dominant Jordan type; retry with more trials."""

    def __init__(self, message: str, spectrum: dict):
        super().__init__(message)
        self.spectrum = spectrum


@dataclass(frozen=True)
class ExactMatrixAlgebra:
    type: LieTypeRank
    ambient_dim: int
    form: Optional[ExactMatrix]
    basis: tuple[ExactMatrix, ...]
    # support pairs of each basis element, kept for positional slicing
    supports: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ParabolicData:
    flag_type: FlagType
    p_basis: tuple[ExactMatrix, ...]
    l_basis: tuple[ExactMatrix, ...]
    pu_basis: tuple[ExactMatrix, ...]


def standard_form(t: LieTypeRank) -> Optional[ExactMatrix]:
    m = t.ambient_dim
    if t.family == "A":
        return None
    if t.family == "C":
        h = m // 2
        signs = [1] * h + [-1] * h
    else:
        signs = [1] * m
    return ExactMatrix(tuple(tuple(signs[i] if j == m - 1 - i else 0 for j in range(m)) for i in range(m)))


@lru_cache(maxsize=None)
def build_algebra(t: LieTypeRank) -> ExactMatrixAlgebra:
    m = t.ambient_dim
    form = standard_form(t)
    basis: list[ExactMatrix] = []
    supports: list[tuple[tuple[int, int], ...]] = []
    if form is None:
        for i in range(m):
            for j in range(m):
                if i != j:
                    basis.append(ExactMatrix.unit(m, i, j))
                    supports.append(((i, j),))
        for i in range(m - 1):
            basis.append(ExactMatrix.unit(m, i, i) - ExactMatrix.unit(m, i + 1, i + 1))
            supports.append(((i, i), (i + 1, i + 1)))
    else:
        eps = [form[i, m - 1 - i] for i in range(m)]
        seen = set()
        for i in range(m):
            for j in range(m):
                # E_ij minus its image under x -> J^T x^T J
                mi, mj = m - 1 - j, m - 1 - i
                key = min((i, j), (mi, mj))
                if key in seen:
                    continue
                seen.add(key)
                x = ExactMatrix.unit(m, i, j) - ExactMatrix.unit(m, mi, mj, eps[i] * eps[j])
                if x.is_zero():
                    continue
                basis.append(x)
                supports.append(tuple(sorted({(i, j), (mi, mj)})))
    alg = ExactMatrixAlgebra(t, m, form, tuple(basis), tuple(supports))
    if alg.dim != t.algebra_dim:
        raise AssertionError(f"{t}: built {alg.dim} basis elements, expected {t.algebra_dim}")
    return alg


def check_membership(alg: ExactMatrixAlgebra, x: ExactMatrix) -> bool:
    if x.size != alg.ambient_dim:
        raise ValueError(f"matrix of size {x.size} in algebra of ambient dimension {alg.ambient_dim}")
    if alg.form is None:
        return x.trace() == 0
    j = alg.form
    return (x.T @ j + j @ x).is_zero()


def flag_fits(alg: ExactMatrixAlgebra, ft: FlagType) -> bool:
    if ft.total != alg.ambient_dim:
        return False
    return alg.form is None or ft.blocks == ft.blocks[::-1]


def outer_swap(alg: ExactMatrixAlgebra) -> ExactMatrix:
    """Form-preserving reflection of determinant -1 (types B and D).

    Swaps the two middle coordinates in type D, which exchanges the two
    families of maximal isotropic subspaces.
    """
    m = alg.ambient_dim
    if alg.type.family != "D":
        raise ValueError("the outer swap is only used in type D")
    h = m // 2
    perm = list(range(m))
    perm[h - 1], perm[h] = perm[h], perm[h - 1]
    return ExactMatrix(tuple(tuple(int(perm[i] == j) for j in range(m)) for i in range(m)))


@lru_cache(maxsize=None)
def parabolic_from_flag(alg: ExactMatrixAlgebra, ft: FlagType, split_tag: Optional[str] = None) -> ParabolicData:
    """Stabilizer of the standard coordinate flag of type ft.

    ``split_tag="II"`` (type D only) conjugates everything by the outer swap,
    giving the other G-conjugacy class of a split flag type.
    """
    if ft.total != alg.ambient_dim:
        raise ValueError(f"flag type {ft} does not partition dimension {alg.ambient_dim}")
    if alg.form is not None and ft.blocks != ft.blocks[::-1]:
        raise ValueError(f"flag type {ft} is not isotropic; {alg.type} needs palindromic blocks")
    if split_tag == "II":
        base = parabolic_from_flag(alg, ft)
        h = outer_swap(alg)
        conj = lambda xs: tuple(h @ x @ h for x in xs)  # noqa: E731  (h is an involution)
        return ParabolicData(ft, conj(base.p_basis), conj(base.l_basis), conj(base.pu_basis))
    if split_tag not in (None, "I"):
        raise ValueError(f"bad split tag {split_tag!r}")
    blk = ft.block_index()
    p, l, pu = [], [], []
    for x, supp in zip(alg.basis, alg.supports):
        rel = {(blk[j] > blk[i]) - (blk[j] < blk[i]) for i, j in supp}
        if rel == {0}:
            l.append(x)
            p.append(x)
        elif rel == {1}:
            pu.append(x)
            p.append(x)
    return ParabolicData(ft, tuple(p), tuple(l), tuple(pu))


def is_nilpotent(x: ExactMatrix) -> bool:
    return x.power(x.size).is_zero()


def jordan_type(x: ExactMatrix) -> Partition:
    n = x.size
    if not is_nilpotent(x):
        raise ValueError(f"jordan_type needs a nilpotent matrix; x^{n} != 0")
    ranks = [n]
    power = x
    while ranks[-1]:
        ranks.append(matrix_rank(power))
        power = power @ x
    ranks.append(0)
    parts = []
    for i in range(1, len(ranks) - 1):
        parts.extend([i] * (ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]))
    return Partition.of(parts)


def centralizer_dimension(alg: ExactMatrixAlgebra, x: ExactMatrix) -> int:
    if not check_membership(alg, x):
        raise ValueError("centralizer_dimension: element is not in the algebra")
    return alg.dim - span_rank(bracket(x, b) for b in alg.basis)


def combination(basis: Sequence[ExactMatrix], coeffs: Sequence[int], size: int) -> ExactMatrix:
    out = [[0] * size for _ in range(size)]
    for c, b in zip(coeffs, basis):
        if not c:
            continue
        for i, row in enumerate(b.entries):
            for j, v in enumerate(row):
                if v:
                    out[i][j] += c * v
    return ExactMatrix(tuple(tuple(r) for r in out))


def _dominant(found: Sequence[Partition]) -> Optional[Partition]:
    for cand in found:
        if all(dominates(cand, other) for other in found):
            return cand
    return None


def richardson_partition(
    alg: ExactMatrixAlgebra, pd: ParabolicData, seed: int = 0, trials: int = 5
) -> Partition:
    """Jordan type of a generic nilradical element, by seeded random sampling.

    Coefficient ranges double every round; the answer is the dominance maximum
    and it must recur in at least half of the final round's samples.
    """
    if trials < 3:
        raise ValueError("richardson_partition needs trials >= 3")
    m = alg.ambient_dim
    if not pd.pu_basis:
        return Partition((1,) * m)
    rng = random.Random(seed)
    seen: Counter = Counter()
    last: Counter = Counter()
    for r in range(ROUNDS):
        bound = BASE_RANGE << r
        last = Counter()
        for _ in range(trials):
            coeffs = [rng.randint(-bound, bound) for _ in pd.pu_basis]
            last[jordan_type(combination(pd.pu_basis, coeffs, m))] += 1
        seen.update(last)
    spectrum = {str(k): v for k, v in sorted(seen.items(), reverse=True)}
    top = _dominant(list(seen))
    if top is None:
        raise GenericityError("sampled Jordan types have no dominance maximum", spectrum)
    if last[top] < math.ceil(trials / 2):
        raise GenericityError(f"maximum {top} seen only {last[top]}/{trials} times in the final round", spectrum)
    return top


def element_of_type(alg: ExactMatrixAlgebra, d: Partition, very_even_tag: Optional[str] = None) -> ExactMatrix:
    """A concrete nilpotent element of the algebra with Jordan type d.

    Type A uses plain Jordan blocks.  Otherwise search sums of positive root
    vectors (Borel nilradical basis elements), smallest subsets first.  A very
    even tag is honoured by conjugating with the outer swap when needed.
    """
    m = alg.ambient_dim
    if d.total != m:
        raise ValueError("partition total does not match the ambient dimension")
    if alg.form is None:
        x = [[0] * m for _ in range(m)]
        pos = 0
        for part in d.parts:
            for i in range(part - 1):
                x[pos + i][pos + i + 1] = 1
            pos += part
        return ExactMatrix(tuple(map(tuple, x)))
    found = _root_sum_representatives(alg)
    if d not in found:
        raise ValueError(f"no root-vector sum of Jordan type {d} in {alg.type}")
    x = found[d]
    if very_even_tag is not None and very_even_class(alg, x) != very_even_tag:
        h = outer_swap(alg)
        x = h @ x @ h
    return x


@lru_cache(maxsize=None)
def _root_sum_representatives(alg: ExactMatrixAlgebra) -> dict:
    borel = parabolic_from_flag(alg, FlagType((1,) * alg.ambient_dim, alg.form is not None))
    roots = borel.pu_basis
    wanted = {d for d in partitions_of(alg.ambient_dim) if is_valid_nilpotent_partition(alg.type, d)}
    found: dict[Partition, ExactMatrix] = {}
    for size in range(len(roots) + 1):
        for subset in itertools.combinations(roots, size):
            x = ExactMatrix.zeros(alg.ambient_dim)
            for r in subset:
                x = x + r
            found.setdefault(jordan_type(x), x)
            if len(found) == len(wanted):
                return found
    return found


def canonical_isotropic_subspace(x: ExactMatrix) -> list:
    """Sum over k of ker(x^k) ∩ im(x^k): the lower half of every Jordan chain."""
    n = x.size
    acc: list = []
    power = ExactMatrix.identity(n)
    for _ in range(n):
        power = power @ x
        if power.is_zero():
            break
        acc = row_basis(acc + intersect(kernel(power), image(power), n))
    return acc


def very_even_class(alg: ExactMatrixAlgebra, x: ExactMatrix) -> str:
    """Tag of a very even nilpotent in type D.

    "I" when its canonical maximal isotropic subspace lies in the family of
    span(e_1, ..., e_n), "II" otherwise; the families are told apart by the
    parity of the intersection dimension.
    """
    if alg.type.family != "D":
        raise ValueError("very even classes only exist in type D")
    n = alg.ambient_dim // 2
    u = canonical_isotropic_subspace(x)
    if len(u) != n:
        raise ValueError("element is not very even: canonical subspace is not maximal")
    form = alg.form
    for a in u:
        af = [sum(a[i] * form[i, j] for i in range(2 * n)) for j in range(2 * n)]
        if any(sum(p * q for p, q in zip(af, b)) for b in u):
            raise AssertionError("canonical subspace is not isotropic")
    standard = [[int(i == j) for j in range(2 * n)] for i in range(n)]
    common = len(intersect(u, standard, 2 * n))
    return "I" if (n - common) % 2 == 0 else "II"
