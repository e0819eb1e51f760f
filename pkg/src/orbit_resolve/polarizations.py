"""Polarizations: flag types, Levi classes, and the resolution filter.

A polarization of a nilpotent orbit O is a parabolic P whose nilradical meets
O densely; T*(G/P) -> closure(O) is then generically finite, and it is a
symplectic resolution exactly when it is birational.  Parabolic classes are
labelled by flag types, with a split tag in type D.

Levi classes are encoded as Pai partitions pi = 2*lambda + [1^r], where
lambda lists the GL block sizes and r is the dimension of the residual
classical factor; pi has its r odd members first.  The resolution filter
compares r with the number of odd parts of the orbit.
"""

from __future__ import annotations

import itertools
import zlib
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .liealg_oracle import (
    GenericityError,
    build_algebra,
    combination,
    parabolic_from_flag,
    richardson_partition,
    very_even_class,
)
from .partitions import (
    SPLIT_TAGS,
    FlagType,
    LieTypeRank,
    OrbitLabel,
    Partition,
    dual_partition,
    is_very_even,
    partitions_of,
    q_parity_count,
)

PASS, FAIL, NO_RESOLUTION, INCONCLUSIVE = "PASS", "FAIL", "NO_RESOLUTION", "INCONCLUSIVE"


@dataclass(frozen=True, order=True)
class LeviClass:
    gl_blocks: tuple[int, ...]
    residual_rank: int = 0

    def __str__(self) -> str:
        gl = "x".join(f"gl{b}" for b in self.gl_blocks) or "-"
        return f"{gl}|r{self.residual_rank}"


@dataclass(frozen=True, order=True)
class PolarizationClass:
    type: LieTypeRank = field(compare=False)
    flag_type: FlagType
    split_tag: Optional[str] = None

    def __post_init__(self):
        wants_tag = self.type.family == "D" and split_in_D(self.flag_type)
        if wants_tag != (self.split_tag is not None):
            raise ValueError(f"split tag mismatch for {self.flag_type} in {self.type}")
        if self.split_tag is not None and self.split_tag not in SPLIT_TAGS:
            raise ValueError(f"bad split tag {self.split_tag!r}")

    def __str__(self) -> str:
        return f"{self.flag_type}#{self.split_tag}" if self.split_tag else str(self.flag_type)


@dataclass
class TheoremReport:
    orbit: OrbitLabel
    resolution_polarizations: list[PolarizationClass]
    levi_classes: dict[LeviClass, list[PolarizationClass]]
    d_iso_pairs: list[tuple[PolarizationClass, PolarizationClass]]
    verdict: str
    # Richardson matches before the parity filter, with their oracle data
    richardson_polarizations: list[PolarizationClass] = field(default_factory=list)
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "orbit": {
                "type": str(self.orbit.type),
                "partition": str(self.orbit.partition),
                "very_even_tag": self.orbit.very_even_tag,
            },
            "verdict": self.verdict,
            "resolution_polarizations": [str(p) for p in self.resolution_polarizations],
            "richardson_polarizations": [str(p) for p in self.richardson_polarizations],
            "levi_classes": [
                {"levi": {"gl_blocks": list(lc.gl_blocks), "residual_rank": lc.residual_rank, "label": str(lc)},
                 "polarizations": [str(p) for p in members]}
                for lc, members in self.levi_classes.items()
            ],
            "d_iso_pairs": [[str(a), str(b)] for a, b in self.d_iso_pairs],
            "evidence": self.evidence,
        }


# -- flag types -----------------------------------------------------------


def flag_types_A(d: Partition) -> list[FlagType]:
    s = dual_partition(d).parts
    return [FlagType(p) for p in sorted(set(itertools.permutations(s)), reverse=True)]


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for head in range(1, n + 1):
        for tail in _compositions(n - head):
            yield (head,) + tail


def isotropic_flag_types(t: LieTypeRank) -> list[FlagType]:
    """Palindromic compositions of the ambient dimension.

    A middle block (odd k) must have the parity of the ambient dimension.
    """
    if t.family == "A":
        raise ValueError("isotropic flags need a bilinear form (types B, C, D)")
    m = t.ambient_dim
    out = []
    for half in range(m // 2, -1, -1):
        mid = m - 2 * half
        for c in _compositions(half):
            blocks = c + ((mid,) if mid else ()) + c[::-1]
            out.append(FlagType(blocks, isotropic=True))
    return sorted(out, key=lambda f: (len(f.blocks), tuple(-b for b in f.blocks)))


def split_in_D(ft: FlagType) -> bool:
    k = ft.k
    return k % 2 == 0 and ft.blocks[k // 2 - 1] >= 2


def is_d_alias(ft: FlagType) -> bool:
    """Type D flag types (..., 1, 1, ...) around the centre.

    Their stabilizer equals that of the flag with the two middle 1s merged
    into a middle block 2, so they name an already-listed parabolic.
    """
    k = ft.k
    return k % 2 == 0 and ft.blocks[k // 2 - 1] == 1


def polarization_classes(t: LieTypeRank) -> list[PolarizationClass]:
    """Every parabolic class once: split D types twice, D aliases dropped."""
    if t.family == "A":
        fts = [FlagType(c) for c in _compositions(t.ambient_dim)]
        return [PolarizationClass(t, ft) for ft in fts]
    out = []
    for ft in isotropic_flag_types(t):
        if t.family == "D":
            if is_d_alias(ft):
                continue
            if split_in_D(ft):
                out.extend(PolarizationClass(t, ft, tag) for tag in SPLIT_TAGS)
                continue
        out.append(PolarizationClass(t, ft))
    return out


# -- Levi classes ---------------------------------------------------------


def levi_class_of(t: LieTypeRank, ft: FlagType) -> LeviClass:
    """GL blocks up to the middle plus the residual classical factor.

    In type D, GL(1) x SO(0) and SO(2) are the same torus; a lone GL(1) with
    no residual factor is recorded as residual rank 1 so both spellings of one
    parabolic get one class.
    """
    if t.family == "A":
        return LeviClass(tuple(sorted(ft.blocks, reverse=True)), 0)
    k = ft.k
    gl = list(ft.blocks[: k // 2])
    residual_dim = ft.blocks[k // 2] if k % 2 else 0
    rank = residual_dim // 2
    if t.family == "D" and rank == 0 and 1 in gl:
        gl.remove(1)
        rank = 1
    return LeviClass(tuple(sorted(gl, reverse=True)), rank)


def residual_dimension(t: LieTypeRank, lc: LeviClass) -> int:
    return 2 * lc.residual_rank + (1 if t.family == "B" else 0)


def canonical_flag_type(t: LieTypeRank, lc: LeviClass) -> FlagType:
    """A flag type realizing a Levi class (GL blocks in decreasing order)."""
    if t.family == "A":
        return FlagType(lc.gl_blocks)
    r = residual_dimension(t, lc)
    blocks = lc.gl_blocks + ((r,) if r else ()) + lc.gl_blocks[::-1]
    return FlagType(blocks, isotropic=True)


def levi_classes(t: LieTypeRank) -> list[LeviClass]:
    if t.family == "A":
        raise ValueError("type A Levi classes are plain partitions; use partitions_of")
    n = t.rank
    out = set()
    for m in range(n + 1):
        for lam in partitions_of(n - m) if n > m else [Partition(())]:
            if t.family == "D" and m == 0 and 1 in lam.parts:
                continue  # spelled with residual rank 1, see levi_class_of
            out.add(LeviClass(lam.parts, m))
    return sorted(out, key=lambda c: (c.residual_rank, tuple(-b for b in c.gl_blocks)))


def pai_membership(two_n: int, q: int, pi: Sequence[int]) -> bool:
    """Is pi in Pai(two_n, q): its first q members odd, all later ones even?"""
    if sum(pi) != two_n:
        raise ValueError(f"members of {list(pi)} sum to {sum(pi)}, not {two_n}")
    return all((x % 2 == 1) == (j < q) for j, x in enumerate(pi))


def levi_to_pai(t: LieTypeRank, lc: LeviClass) -> tuple[int, ...]:
    """pi_j = 2*lambda_j + [j <= r]: GL blocks doubled, plus one to the first r."""
    if t.family == "A":
        raise ValueError("Pai encoding applies to types B, C, D")
    r = residual_dimension(t, lc)
    lam = lc.gl_blocks
    length = max(len(lam), r)
    return tuple(2 * (lam[j] if j < len(lam) else 0) + (1 if j < r else 0) for j in range(length))


def pai_odd_count(pi: Sequence[int]) -> int:
    return sum(1 for x in pi if x % 2)


def admissible_q(t: LieTypeRank, lc: LeviClass) -> tuple[int, ...]:
    """Odd-part counts of orbits whose Springer map from this Levi is birational.

    In B and C this is the Pai odd count alone.  In D with no residual factor
    the first collapse of [2^p] to [2^(p-1),1,1] costs nothing (the centralizer
    component group stays trivial), so two odd parts are allowed as well.
    """
    q = pai_odd_count(levi_to_pai(t, lc))
    if t.family == "D" and lc.residual_rank == 0:
        return (q, q + 2)
    return (q,)


def parity_filter(t: LieTypeRank, lc: LeviClass, d: Partition, q_slack: int = 0) -> bool:
    """q(d) matches the Levi's admissible counts (within q_slack; 0 in production)."""
    q = q_parity_count(d)
    return any(abs(q - a) <= q_slack for a in admissible_q(t, lc))


# -- oracle-backed classification -----------------------------------------


def flag_seed(seed: int, pc: PolarizationClass) -> int:
    return (seed * 1_000_003 + zlib.crc32(f"{pc.type}{pc.flag_type}".encode())) & 0x7FFFFFFF


@lru_cache(maxsize=None)
def richardson_of(t: LieTypeRank, ft: FlagType, seed: int = 0, trials: int = 5) -> Partition:
    """Richardson partition of a flag type, retrying with more samples on genericity failures."""
    alg = build_algebra(t)
    pd = parabolic_from_flag(alg, ft)
    last: Optional[GenericityError] = None
    for attempt in range(3):
        try:
            return richardson_partition(alg, pd, seed=seed + attempt, trials=trials << attempt)
        except GenericityError as exc:
            last = exc
    assert last is not None
    raise last


@lru_cache(maxsize=None)
def _richardson_very_even_tag(t: LieTypeRank, ft: FlagType, seed: int) -> str:
    """Tag of the Richardson orbit of the class-I parabolic of a split flag type."""
    import random

    alg = build_algebra(t)
    pd = parabolic_from_flag(alg, ft)
    target = richardson_of(t, ft, seed)
    rng = random.Random(seed)
    from .liealg_oracle import jordan_type

    for _ in range(50):
        e = combination(pd.pu_basis, [rng.randint(-16, 16) for _ in pd.pu_basis], alg.ambient_dim)
        if jordan_type(e) == target:
            return very_even_class(alg, e)
    raise GenericityError(f"no generic element found for {ft}", {})


def richardson_orbit_tag(pc: PolarizationClass, seed: int = 0) -> Optional[str]:
    """Very even tag of the Richardson orbit of a split D class (None if not very even)."""
    d = richardson_of(pc.type, pc.flag_type, flag_seed(seed, pc))
    if not is_very_even(pc.type, d):
        return None
    tag = _richardson_very_even_tag(pc.type, pc.flag_type, flag_seed(seed, pc))
    if pc.split_tag == "II":
        tag = "II" if tag == "I" else "I"
    return tag


def is_polarization(orbit: OrbitLabel, pc: PolarizationClass, seed: int = 0, trials: int = 5) -> bool:
    d = richardson_of(pc.type, pc.flag_type, flag_seed(seed, pc), trials)
    if d != orbit.partition:
        return False
    if orbit.very_even_tag is not None:
        return richardson_orbit_tag(pc, seed) == orbit.very_even_tag
    return True


def resolution_polarizations(
    orbit: OrbitLabel, seed: int = 0, trials: int = 5, q_slack: int = 0
) -> list[PolarizationClass]:
    return _classify(orbit, seed, trials, q_slack)[1]


def _classify(orbit: OrbitLabel, seed: int, trials: int, q_slack: int):
    t = orbit.type
    matches = [pc for pc in polarization_classes(t) if is_polarization(orbit, pc, seed, trials)]
    if t.family == "A":
        return matches, matches
    kept = [pc for pc in matches if parity_filter(t, levi_class_of(t, pc.flag_type), orbit.partition, q_slack)]
    return matches, kept


def verify_theorem(orbit: OrbitLabel, seed: int = 0, trials: int = 5, q_slack: int = 0) -> TheoremReport:
    """Check that all resolution-giving polarizations share a Levi class.

    Split D pairs (same flag type, tags I and II) are additionally recorded as
    H-conjugate, so G/P_1 and G/P_2 are isomorphic outright.
    """
    t = orbit.type
    try:
        matches, kept = _classify(orbit, seed, trials, q_slack)
    except GenericityError as exc:
        return TheoremReport(orbit, [], {}, [], INCONCLUSIVE, evidence={"genericity": exc.spectrum, "error": str(exc)})
    groups: dict[LeviClass, list[PolarizationClass]] = defaultdict(list)
    for pc in kept:
        groups[levi_class_of(t, pc.flag_type)].append(pc)
    pairs = []
    by_flag = defaultdict(list)
    for pc in kept:
        if pc.split_tag:
            by_flag[pc.flag_type].append(pc)
    for ft, members in by_flag.items():
        if len(members) == 2:
            pairs.append((members[0], members[1]))
    if not kept:
        verdict = NO_RESOLUTION
    elif len(groups) == 1:
        verdict = PASS
    else:
        # everything outside the largest Levi group must be H-conjugate to a member inside it
        main = max(groups, key=lambda lc: len(groups[lc]))
        paired = {pc: other for a, b in pairs for pc, other in ((a, b), (b, a))}
        outside = [pc for lc, ms in groups.items() if lc != main for pc in ms]
        ok = all(pc in paired and paired[pc] in groups[main] for pc in outside)
        verdict = PASS if ok else FAIL
    evidence = {
        "q": q_parity_count(orbit.partition),
        "q_slack": q_slack,
        "flags": [
            {
                "polarization": str(pc),
                "levi": str(levi_class_of(t, pc.flag_type)),
                **({} if t.family == "A" else {
                    "pai": "[" + ",".join(map(str, levi_to_pai(t, levi_class_of(t, pc.flag_type)))) + "]",
                    "admissible_q": list(admissible_q(t, levi_class_of(t, pc.flag_type))),
                }),
                "kept": pc in kept,
            }
            for pc in matches
        ],
    }
    return TheoremReport(orbit, kept, dict(groups), pairs, verdict, matches, evidence)


def spaltenstein_injectivity_check(t: LieTypeRank, q: int, seed: int = 0, trials: int = 5) -> bool:
    return injectivity_table(t, q, seed, trials)[0]


def injectivity_table(t: LieTypeRank, q: int, seed: int = 0, trials: int = 5):
    """Richardson partitions of all Levi classes with Pai odd count q; injective?"""
    if t.family not in ("B", "C"):
        raise ValueError("the Spaltenstein injectivity check covers types B and C")
    table = {}
    for lc in levi_classes(t):
        if pai_odd_count(levi_to_pai(t, lc)) != q:
            continue
        ft = canonical_flag_type(t, lc)
        table[lc] = richardson_of(t, ft, flag_seed(seed, PolarizationClass(t, ft)), trials)
    values = list(table.values())
    return len(set(values)) == len(values), table
