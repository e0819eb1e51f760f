"""Exact rational matrix kernel: products, ranks, characteristic polynomials.

Everything here works over ``int`` and ``fractions.Fraction`` only.  Rank
decisions feed Jordan types, so no floating point is allowed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _norm(x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"inexact entry {x!r} ({type(x).__name__})")


@dataclass(frozen=True)
class ExactMatrix:
    """Square matrix with exact rational entries (ints where possible)."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_norm(x) for x in row) for row in self.entries)
        if rows and any(len(r) != len(rows) for r in rows):
            raise ValueError("ExactMatrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int, value: Scalar = 1) -> "ExactMatrix":
        return cls(tuple(tuple(value if (r, c) == (i, j) else 0 for c in range(n)) for r in range(n)))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "ExactMatrix":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c: Scalar) -> "ExactMatrix":
        c = _norm(c)
        return ExactMatrix(tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        cols = list(zip(*other.entries))
        return ExactMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col) if a and b) for col in cols) for row in self.entries)
        )

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)))

    def trace(self) -> Scalar:
        return _norm(sum(self.entries[i][i] for i in range(self.size)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flat(self) -> tuple[Scalar, ...]:
        return tuple(x for r in self.entries for x in r)

    def power(self, k: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.size)
        for _ in range(k):
            out = out @ self
        return out

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))


def bracket(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    return x @ y - y @ x


def _integer_rows(rows: Iterable[Sequence[Scalar]]) -> list[list[int]]:
    out = []
    for row in rows:
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        m = lcm(*dens) if dens else 1
        out.append([int(x * m) for x in row])
    return out


def rank(rows: Iterable[Sequence[Scalar]]) -> int:
    """Exact rank of a list of row vectors (fraction-free Bareiss elimination)."""
    a = [r for r in _integer_rows(rows) if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            a[i] = [(p * ai[j] - f * ar[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(a):
            break
    return r


def matrix_rank(x: ExactMatrix) -> int:
    return rank(x.entries)


def span_rank(mats: Iterable[ExactMatrix]) -> int:
    """Dimension of the linear span of a family of matrices."""
    return rank(m.flat() for m in mats)


def independent_subset(mats: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """Greedy maximal linearly independent subfamily, order preserved."""
    chosen: list[ExactMatrix] = []
    for m in mats:
        if m.is_zero():
            continue
        if span_rank(chosen + [m]) > len(chosen):
            chosen.append(m)
    return chosen


def charpoly(x: ExactMatrix) -> tuple[Scalar, ...]:
    """Coefficients of det(lambda*I - x), leading coefficient first.

    Berkowitz's algorithm: division free, so integer matrices stay integral.
    """
    a = x.entries
    n = x.size
    if n == 0:
        return (1,)
    # vect holds the charpoly of the leading principal r x r block
    vect: list[Scalar] = [1, -a[0][0]]
    for r in range(1, n):
        col = [a[i][r] for i in range(r)]  # C: column above the diagonal
        row = a[r][:r]  # R: row left of the diagonal
        top = [[a[i][j] for j in range(r)] for i in range(r)]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
        t: list[Scalar] = [1, -a[r][r]]
        v = col
        for _ in range(r):
            t.append(-sum(p * q for p, q in zip(row, v)))
            v = [sum(top[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(t[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(t)))
        vect = new
    return tuple(_norm(c) for c in vect)


def _fraction_rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in r] for r in rows]
    a = [r for r in a if any(r)]
    pivots: list[int] = []
    if not a:
        return [], pivots
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def row_basis(rows: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    """Reduced row echelon basis of the row span."""
    return _fraction_rref(rows)[0]


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : row . v = 0 for every row}."""
    basis, pivots = _fraction_rref(rows)
    out = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(basis, pivots):
            v[c] = -row[f]
        out.append(v)
    return out


def intersect(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Fraction]]:
    """Basis of span(a) ∩ span(b), via annihilators."""
    ann = nullspace(a, ncols) + nullspace(b, ncols)
    return nullspace(ann, ncols)


def kernel(x: ExactMatrix) -> list[list[Fraction]]:
    return nullspace(x.entries, x.size)


def image(x: ExactMatrix) -> list[list[Fraction]]:
    return row_basis(x.T.entries)
