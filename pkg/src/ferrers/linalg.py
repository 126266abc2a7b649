"""Exact dense linear algebra over Fraction, plus the structured matrices used here.

Determinants clear denominators row by row and then run fraction-free Bareiss
elimination on integers, so no floating point enters any certified value.
The projection builders are cached: the matrices are immutable and the same
subset shows up over and over during exhaustive sweeps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .errors import DimensionError, DisconnectedGraph, IdentityViolation, IsolatedVertex
from .graphs import BipartiteGraph, bit_indices, degrees, is_connected

# Exactness carrier.  Fraction already keeps gcd(p, q) = 1 and q > 0.
Rational = Fraction

_ZERO = Fraction(0)


def rat_str(x: Rational | int) -> str:
    """Serialized form p/q with q > 0 and gcd(p, q) = 1, also for whole numbers."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination.

    Mutates its argument.  Every interior division is exact, so the result
    is the exact determinant; row swaps flip the sign.
    """
    d = len(rows)
    if d == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(d - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, d):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = rows[k]
        pivot = rk[k]
        for i in range(k + 1, d):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, d):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[d - 1][d - 1]


class RationalMatrix:
    """Immutable square matrix with Fraction entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence[Rational | int]]):
        frozen = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if len(frozen) == 0:
            raise DimensionError("a matrix needs at least one row")
        if any(len(r) != len(frozen) for r in frozen):
            raise DimensionError("matrix must be square")
        self.rows = frozen
        self.dim = len(frozen)

    @classmethod
    def zeros(cls, dim: int) -> "RationalMatrix":
        return cls.constant(dim, 0)

    @classmethod
    def identity(cls, dim: int) -> "RationalMatrix":
        return cls([[1 if i == k else 0 for k in range(dim)] for i in range(dim)])

    @classmethod
    def constant(cls, dim: int, value: Rational | int) -> "RationalMatrix":
        if dim < 1:
            raise DimensionError("a matrix needs at least one row")
        v = Fraction(value)
        return cls([[v] * dim for _ in range(dim)])

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        i, k = key
        return self.rows[i][k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in row] for row in self.rows]})"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return RationalMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.dim != other.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
            cols = list(zip(*other.rows))
            return RationalMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
            )
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: Rational | int) -> "RationalMatrix":
        f = Fraction(factor)
        return RationalMatrix([[f * x for x in row] for row in self.rows])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][k] == self.rows[k][i]
            for i in range(self.dim)
            for k in range(i + 1, self.dim)
        )

    def trace(self) -> Rational:
        return sum((self.rows[i][i] for i in range(self.dim)), _ZERO)

    def mul_vec(self, vec: Sequence[Rational | int]) -> tuple[Rational, ...]:
        if len(vec) != self.dim:
            raise DimensionError(f"vector length {len(vec)} does not match dim {self.dim}")
        v = [Fraction(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(row, v)), _ZERO) for row in self.rows)

    def delete_row_col(self, i: int) -> "RationalMatrix":
        """Principal submatrix with row i and column i removed."""
        if self.dim < 2:
            raise DimensionError("cannot delete from a 1x1 matrix")
        if not 0 <= i < self.dim:
            raise IndexError(f"index {i} out of range 0..{self.dim - 1}")
        return self._minor(i, i)

    def _minor(self, r: int, c: int) -> "RationalMatrix":
        return RationalMatrix(
            [
                [x for k, x in enumerate(row) if k != c]
                for j, row in enumerate(self.rows)
                if j != r
            ]
        )

    def det_exact(self) -> Rational:
        """Exact determinant: clear each row's denominators, then integer Bareiss."""
        scale = 1
        int_rows = []
        for row in self.rows:
            mult = lcm(*(x.denominator for x in row))
            scale *= mult
            int_rows.append([int(x * mult) for x in row])
        return Fraction(bareiss_det(int_rows), scale)

    def adjugate(self) -> "RationalMatrix":
        """Transposed cofactor matrix, from minors.  A test aid, not a hot path.

        Satisfies M * adj(M) = det(M) * I, also when M is singular.
        """
        if self.dim < 2:
            raise DimensionError("adjugate needs dim >= 2")
        d = self.dim
        return RationalMatrix(
            [
                [(-1) ** (i + j) * self._minor(j, i).det_exact() for j in range(d)]
                for i in range(d)
            ]
        )

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.rows]

    def dump(self) -> str:
        """Debug form: one line per row, entries as p/q separated by tabs."""
        return "\n".join(
            "\t".join(f"{x.numerator}/{x.denominator}" for x in row) for row in self.rows
        )


def laplacian(g: BipartiteGraph) -> RationalMatrix:
    """Combinatorial Laplacian on X then Y: degrees on the diagonal, -1 per edge."""
    dd = degrees(g)
    d = g.m + g.n
    rows = [[0] * d for _ in range(d)]
    for i in range(g.m):
        rows[i][i] = dd.a[i]
    for j in range(g.n):
        rows[g.m + j][g.m + j] = dd.b[j]
        for i in bit_indices(g.nbrs[j]):
            rows[i][g.m + j] = -1
            rows[g.m + j][i] = -1
    return RationalMatrix(rows)


@lru_cache(maxsize=None)
def projection_P(T: int, m: int) -> RationalMatrix:
    """Orthogonal projection onto zero-sum vectors supported on T.

    Entry (i, k) is delta_ik - 1/|T| when both indices lie in T and zero
    otherwise; equivalently the Laplacian of the complete graph on T divided
    by |T|, padded with zeros.
    """
    if T == 0:
        raise ValueError("the subset must be nonempty")
    if T < 0 or T >> m:
        raise ValueError(f"subset uses indices outside 0..{m - 1}")
    size = T.bit_count()
    inv = Fraction(1, size)
    rows = []
    for i in range(m):
        if (T >> i) & 1:
            rows.append([(1 - inv if i == k else -inv) if (T >> k) & 1 else _ZERO for k in range(m)])
        else:
            rows.append([_ZERO] * m)
    return RationalMatrix(rows)


@lru_cache(maxsize=None)
def projection_Q(T: int, m: int) -> RationalMatrix:
    """Rank-|T| projection onto the span of the T-supported zero-sum space and all-ones."""
    return projection_P(T, m) + RationalMatrix.constant(m, Fraction(1, m))


def schur_LX(g: BipartiteGraph) -> RationalMatrix:
    """Schur complement A - B C^(-1) B^T of the Laplacian onto the X block.

    Computed twice, once from the block formula and once as the sum of the
    neighborhood projections, and the two must agree entry for entry.
    """
    dd = degrees(g)
    if 0 in dd.b:
        raise IsolatedVertex("a y-vertex has degree zero, so the C block is singular")
    m = g.m
    # Block route: accumulate B C^(-1) B^T over the common denominator lcm(b).
    den = lcm(*dd.b)
    weights = [den // bj for bj in dd.b]
    numer = [[0] * m for _ in range(m)]
    for t, w in zip(g.nbrs, weights):
        members = list(bit_indices(t))
        for i in members:
            row = numer[i]
            for k in members:
                row[k] += w
    block = RationalMatrix(
        [
            [
                (dd.a[i] if i == k else 0) - Fraction(numer[i][k], den)
                for k in range(m)
            ]
            for i in range(m)
        ]
    )
    proj_sum = RationalMatrix.zeros(m)
    for t in g.nbrs:
        proj_sum = proj_sum + projection_P(t, m)
    if block != proj_sum:
        raise IdentityViolation(
            "Schur complement disagrees with the projection sum:\n"
            f"{block.dump()}\nvs\n{proj_sum.dump()}"
        )
    return block


def matrix_M(g: BipartiteGraph) -> RationalMatrix:
    """Shifted Schur complement L_X + (n/m) J, the positive definite reduction target.

    Also computed as the sum of the rank-|T_j| projections Q over the
    neighborhoods; the two routes must agree exactly.
    """
    if not is_connected(g):
        raise DisconnectedGraph("M is only defined for connected graphs")
    lx = schur_LX(g)
    shifted = lx + RationalMatrix.constant(g.m, Fraction(g.n, g.m))
    q_sum = RationalMatrix.zeros(g.m)
    for t in g.nbrs:
        q_sum = q_sum + projection_Q(t, g.m)
    if shifted != q_sum:
        raise IdentityViolation(
            "projection sum disagrees with L_X + (n/m)J:\n"
            f"{shifted.dump()}\nvs\n{q_sum.dump()}"
        )
    return shifted
