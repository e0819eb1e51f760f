"""Partition arithmetic for nilpotent orbits of the classical Lie algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

FAMILIES = ("A", "B", "C", "D")
VERY_EVEN_TAGS = ("I", "II")


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[int]) -> "Partition":
        """Build from an arbitrary sequence, sorting and dropping zeros."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"partition must look like [3,2,1]: {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            raise ValueError("empty partition")
        return cls(tuple(int(tok) for tok in inner.split(",")))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def multiplicity(self, value: int) -> int:
        return self.parts.count(value)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class LieTypeRank:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        minimum = 2 if self.family == "D" else 1
        if self.rank < minimum:
            raise ValueError(f"{self.family}{self.rank} is not a simple Lie algebra")

    @classmethod
    def parse(cls, text: str) -> "LieTypeRank":
        m = re.fullmatch(r"\s*([ABCDabcd])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"type must look like C3: {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def ambient_dim(self) -> int:
        n = self.rank
        return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[self.family]

    @property
    def algebra_dim(self) -> int:
        m = self.ambient_dim
        if self.family == "A":
            return m * m - 1
        if self.family == "C":
            return m * (m + 1) // 2
        return m * (m - 1) // 2

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class OrbitLabel:
    type: LieTypeRank
    partition: Partition
    very_even_tag: Optional[str] = None

    def __post_init__(self):
        if not is_valid_nilpotent_partition(self.type, self.partition):
            raise ValueError(f"{self.partition} is not a nilpotent orbit of {self.type}")
        if self.very_even_tag is not None:
            if self.very_even_tag not in VERY_EVEN_TAGS:
                raise ValueError(f"bad very even tag {self.very_even_tag!r}")
            if not is_very_even(self.type, self.partition):
                raise ValueError("very even tag only applies to very even D partitions")

    def __str__(self) -> str:
        tag = f"#{self.very_even_tag}" if self.very_even_tag else ""
        return f"{self.type}:{self.partition}{tag}"


@dataclass(frozen=True)
class FlagType:
    blocks: tuple[int, ...]
    isotropic: bool = False

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b <= 0 for b in blocks):
            raise ValueError(f"flag blocks must be positive: {blocks}")
        if self.isotropic and blocks != blocks[::-1]:
            raise ValueError(f"isotropic flag type must be palindromic: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str, isotropic: bool = False) -> "FlagType":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"flag type must look like (1,2,1): {text!r}")
        return cls(tuple(int(t) for t in body[1:-1].split(",")), isotropic)

    @property
    def total(self) -> int:
        return sum(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_index(self) -> list[int]:
        """Block number of every coordinate."""
        return [i for i, b in enumerate(self.blocks) for _ in range(b)]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.blocks)) + ")"


SPLIT_TAGS = ("I", "II")



def dual_partition(d: Partition) -> Partition:
    if not d.parts:
        return d
    return Partition(tuple(sum(1 for p in d.parts if p >= i) for i in range(1, d.parts[0] + 1)))


def dominates(d: Partition, e: Partition) -> bool:
    """True if d >= e in the dominance order (equal totals assumed)."""
    if d.total != e.total:
        raise ValueError("dominance compares partitions of the same total")
    a = b = 0
    for i in range(max(len(d), len(e))):
        a += d.parts[i] if i < len(d) else 0
        b += e.parts[i] if i < len(e) else 0
        if a < b:
            return False
    return True


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for head in range(min(n, largest), 0, -1):
        out.extend((head,) + tail for tail in _partitions(n - head, head))
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order."""
    return [Partition(p) for p in _partitions(n, n)]


def is_valid_nilpotent_partition(t: LieTypeRank, d: Partition) -> bool:
    if d.total != t.ambient_dim:
        raise ValueError(f"{d} has total {d.total}, {t} needs {t.ambient_dim}")
    if t.family == "A":
        return True
    # C: odd parts paired; B/D: even parts paired
    bad_parity = 1 if t.family == "C" else 0
    return all(d.multiplicity(v) % 2 == 0 for v in set(d.parts) if v % 2 == bad_parity)


def is_very_even(t: LieTypeRank, d: Partition) -> bool:
    return (
        t.family == "D"
        and all(p % 2 == 0 for p in d.parts)
        and all(d.multiplicity(v) % 2 == 0 for v in set(d.parts))
    )


def enumerate_orbits(t: LieTypeRank) -> list[OrbitLabel]:
    out = []
    for d in partitions_of(t.ambient_dim):
        if not is_valid_nilpotent_partition(t, d):
            continue
        if is_very_even(t, d):
            out.extend(OrbitLabel(t, d, tag) for tag in VERY_EVEN_TAGS)
        else:
            out.append(OrbitLabel(t, d))
    return out


def q_parity_count(d: Partition) -> int:
    """Number of odd parts."""
    return sum(1 for p in d.parts if p % 2)


def orbit_dimension(t: LieTypeRank, d: Partition) -> int:
    if not is_valid_nilpotent_partition(t, d):
        raise ValueError(f"{d} is not a nilpotent orbit of {t}")
    sq = sum(s * s for s in dual_partition(d).parts)
    if t.family == "A":
        return t.ambient_dim ** 2 - sq
    odd = q_parity_count(d)
    # half of (centralizer in gl) corrected by the odd-part count, sign by form parity
    if t.family == "C":
        return t.algebra_dim - (sq + odd) // 2
    return t.algebra_dim - (sq - odd) // 2
