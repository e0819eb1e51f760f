"""Degree of the generalized Springer map G x_P p_u -> g, by point counting.

Over a finite field F_p the fiber over a generic rational element e of p_u is
the set of flags F of the given type with e F_j contained in F_{j-1}.  Every
component of the centralizer of e is defined over F_p (the component group
of a classical nilpotent is a product of determinant signs), so all fiber
points are rational and the count equals the degree.  This is an oracle for
birationality that shares no code path with the parity filter.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional, Sequence

from .exact import ExactMatrix
from .liealg_oracle import ExactMatrixAlgebra, FlagType, combination, parabolic_from_flag, richardson_partition
from .partitions import Partition

Vec = tuple[int, ...]


def _rref(vectors: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in v] for v in vectors]
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    out: list[list[int]] = []
    if not rows:
        return out, pivots
    n = len(rows[0])
    for c in range(n):
        piv = next((i for i, r in enumerate(rows) if r[c]), None)
        if piv is None:
            continue
        r = rows.pop(piv)
        inv = pow(r[c], p - 2, p)
        r = [(x * inv) % p for x in r]
        for lst in (rows, out):
            for i, s in enumerate(lst):
                if s[c]:
                    f = s[c]
                    lst[i] = [(a - f * b) % p for a, b in zip(s, r)]
        rows = [s for s in rows if any(s)]
        out.append(r)
        pivots.append(c)
        if not rows:
            break
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [out[i] for i in order], sorted(pivots)


def _reduce(v: Sequence[int], basis: list[list[int]], pivots: list[int], p: int) -> list[int]:
    v = [x % p for x in v]
    for b, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            v = [(a - f * x) % p for a, x in zip(v, b)]
    return v


def _nullspace(rows: Sequence[Sequence[int]], n: int, p: int) -> list[list[int]]:
    basis, pivots = _rref(rows, p)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for b, c in zip(basis, pivots):
            v[c] = (-b[f]) % p
        out.append(v)
    return out


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in m]


def _subspaces(dim: int, r: int, p: int) -> Iterator[list[list[int]]]:
    """All r-dimensional subspaces of F_p^dim as RREF row bases."""
    for pivots in itertools.combinations(range(dim), r):
        free_slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [[0] * dim for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), x in zip(free_slots, values):
                rows[i][c] = x
            yield rows


class _Geometry:
    def __init__(self, e: ExactMatrix, form: Optional[ExactMatrix], p: int):
        self.p = p
        self.n = e.size
        self.e = [[int(x) % p for x in row] for row in e.entries]
        self.form = None if form is None else [[int(x) % p for x in row] for row in form.entries]

    def perp(self, basis: list[list[int]]) -> list[list[int]]:
        rows = [[sum(u[i] * self.form[i][j] for i in range(self.n)) % self.p for j in range(self.n)] for u in basis]
        return _rref(_nullspace(rows, self.n, self.p), self.p)[0]

    def preimage(self, basis: list[list[int]]) -> list[list[int]]:
        """{v : e v in span(basis)}."""
        b, piv = _rref(basis, self.p)
        cols = [_reduce(_matvec(self.e, [int(i == j) for i in range(self.n)], self.p), b, piv, self.p) for j in range(self.n)]
        rows = [list(r) for r in zip(*cols)]
        return _rref(_nullspace(rows, self.n, self.p), self.p)[0]

    def intersect(self, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
        # v in a∩b  <=>  v = sum x_i a_i with v in b
        bb, piv = _rref(b, self.p)
        images = [_reduce(v, bb, piv, self.p) for v in a]
        rows = [list(r) for r in zip(*images)] if images else []
        coeffs = _nullspace(rows, len(a), self.p) if a else []
        vecs = [[sum(c * v[k] for c, v in zip(co, a)) % self.p for k in range(self.n)] for co in coeffs]
        return _rref(vecs, self.p)[0]

    def isotropic(self, basis: list[list[int]]) -> bool:
        f = self.form
        for u in basis:
            uf = [sum(u[i] * f[i][j] for i in range(self.n)) % self.p for j in range(self.n)]
            if any(sum(a * b for a, b in zip(uf, v)) % self.p for v in basis):
                return False
        return True

    def maps_into(self, src: list[list[int]], dst: list[list[int]]) -> bool:
        b, piv = _rref(dst, self.p)
        return all(not any(_reduce(_matvec(self.e, v, self.p), b, piv, self.p)) for v in src)


def _extensions(geo: _Geometry, lower: list[list[int]], ambient: list[list[int]], r: int):
    """Subspaces F with lower ⊂ F ⊂ ambient and dim F = dim lower + r."""
    lb, lp = _rref(lower, geo.p)
    comp = []
    span_b, span_p = lb, lp
    for v in ambient:
        red = _reduce(v, span_b, span_p, geo.p)
        if any(red):
            comp.append(red)
            span_b, span_p = _rref(span_b + [red], geo.p)
    for sub in _subspaces(len(comp), r, geo.p):
        lifted = [[sum(c * w[k] for c, w in zip(row, comp)) % geo.p for k in range(geo.n)] for row in sub]
        yield _rref(lb + lifted, geo.p)[0]


def count_fiber(alg: ExactMatrixAlgebra, ft: FlagType, e: ExactMatrix, p: int) -> int:
    """Number of F_p-rational flags of type ft (in the G-orbit of the standard one) whose nilradical holds e."""
    geo = _Geometry(e, alg.form, p)
    n = alg.ambient_dim
    steps = list(itertools.accumulate(ft.blocks))
    whole = [[int(i == j) for j in range(n)] for i in range(n)]
    if alg.form is None:
        half = len(steps)
    else:
        half = ft.k // 2
    family_check = alg.type.family == "D" and ft.k % 2 == 0
    base_max = [[int(i == j) for j in range(n)] for i in range(n // 2)]
    total = 0

    def search(level: int, chain: list[list[list[int]]]):
        nonlocal total
        prev = chain[-1]
        if level == half:
            if alg.form is not None and ft.k % 2 == 1:
                mid = geo.perp(prev) if prev else whole
                if not geo.maps_into(mid, prev):
                    return
            if family_check:
                inter = geo.intersect(prev, base_max)
                if (len(inter) - n // 2) % 2:
                    return
            total += 1
            return
        amb = geo.preimage(prev) if prev else _nullspace(geo.e, n, p)
        if alg.form is not None and prev:
            amb = geo.intersect(amb, geo.perp(prev))
        r = ft.blocks[level]
        if len(amb) - len(prev) < r:
            return
        for cand in _extensions(geo, prev, amb, r):
            if alg.form is not None and not geo.isotropic(cand):
                continue
            search(level + 1, chain + [cand])

    search(0, [[]])
    return total


def jordan_type_mod_p(e: ExactMatrix, p: int) -> Partition:
    n = e.size
    m = [[int(x) % p for x in row] for row in e.entries]
    ranks = [n]
    power = m
    while ranks[-1]:
        ranks.append(len(_rref(power, p)[0]))
        power = [[sum(power[i][k] * m[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
    ranks.append(0)
    parts = []
    for i in range(1, len(ranks) - 1):
        parts.extend([i] * (ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]))
    return Partition.of(parts)


def springer_degree(alg: ExactMatrixAlgebra, ft: FlagType, p: int, seed: int = 0, attempts: int = 20) -> int:
    """Degree of T*(G/P) -> closure of the Richardson orbit, via a fiber count over F_p."""
    pd = parabolic_from_flag(alg, ft)
    target = richardson_partition(alg, pd, seed=seed)
    rng = random.Random(seed)
    for _ in range(attempts):
        e = combination(pd.pu_basis, [rng.randrange(p) for _ in pd.pu_basis], alg.ambient_dim)
        if jordan_type_mod_p(e, p) == target:
            return count_fiber(alg, ft, e, p)
    raise RuntimeError(f"no generic F_{p} point found in the nilradical of {ft}")
