"""Dense matrices and vectors over the Gaussian rationals.

Values are immutable; every operation returns a fresh object, so instances
can be shared freely across threads.

File format: first line "m n", then m lines of n whitespace-separated
entries in the scalar grammar.  Parsing is exact and round-trips.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from ..errors import DimensionMismatchError, ParseError
from .scalar import GQ_ONE, GQ_ZERO, GaussRational, format_entry, gq, parse_entry

EntryLike = int | Fraction | GaussRational


class QMatrix:
    """An m-by-n matrix of GaussRational entries, stored row-major.

    Zero-width shapes (m or n equal to 0) are allowed so that rank
    factorizations of the zero matrix have genuine empty factors; the file
    format itself only admits m, n >= 1.
    """

    __slots__ = ("m", "n", "_e")

    def __init__(self, m: int, n: int, entries: Iterable[EntryLike]):
        if m < 0 or n < 0:
            raise DimensionMismatchError("matrix dimensions must be non-negative")
        e = tuple(gq(v) for v in entries)
        if len(e) != m * n:
            raise DimensionMismatchError(
                f"expected {m * n} entries for a {m}x{n} matrix, got {len(e)}"
            )
        self.m = m
        self.n = n
        self._e = e

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[EntryLike]]) -> "QMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        for r in rows:
            if len(r) != n:
                raise DimensionMismatchError("ragged rows")
        return cls(m, n, (v for r in rows for v in r))

    @classmethod
    def zeros(cls, m: int, n: int) -> "QMatrix":
        return cls(m, n, (GQ_ZERO,) * (m * n))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (GQ_ONE if i == j else GQ_ZERO for i in range(n) for j in range(n)))

    # -- access ------------------------------------------------------------

    def at(self, i: int, j: int) -> GaussRational:
        return self._e[i * self.n + j]

    def row(self, i: int) -> tuple[GaussRational, ...]:
        return self._e[i * self.n : (i + 1) * self.n]

    def rows(self) -> Iterator[tuple[GaussRational, ...]]:
        for i in range(self.m):
            yield self.row(i)

    def entries(self) -> tuple[GaussRational, ...]:
        return self._e

    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.m, self.n, (a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.m, self.n, (a - b for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.m, self.n, (-a for a in self._e))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.n != other.m:
            raise DimensionMismatchError(
                f"cannot multiply {self.m}x{self.n} by {other.m}x{other.n}"
            )
        out: list[GaussRational] = []
        for i in range(self.m):
            ri = self.row(i)
            for j in range(other.n):
                acc = GQ_ZERO
                for k in range(self.n):
                    acc = acc + ri[k] * other.at(k, j)
                out.append(acc)
        return QMatrix(self.m, other.n, out)

    def scale(self, c: EntryLike) -> "QMatrix":
        z = gq(c)
        return QMatrix(self.m, self.n, (a * z for a in self._e))

    def hermitian(self) -> "QMatrix":
        """Conjugate transpose."""
        return QMatrix(self.n, self.m, (self.at(i, j).conj() for j in range(self.n) for i in range(self.m)))

    def transpose(self) -> "QMatrix":
        return QMatrix(self.n, self.m, (self.at(i, j) for j in range(self.n) for i in range(self.m)))

    def frob_norm_sq(self) -> Fraction:
        acc = Fraction(0)
        for a in self._e:
            acc += a.abs_sq()
        return acc

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self._e)

    def apply(self, v: "QVector") -> "QVector":
        if self.n != v.m:
            raise DimensionMismatchError(f"cannot apply {self.m}x{self.n} to vector of length {v.m}")
        return QVector(
            self.m,
            (
                sum((self.at(i, k) * v.at(k) for k in range(self.n)), GQ_ZERO)
                for i in range(self.m)
            ),
        )

    def column(self, j: int) -> "QVector":
        return QVector(self.m, (self.at(i, j) for i in range(self.m)))

    # -- equality ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.m == other.m
            and self.n == other.n
            and self._e == other._e
        )

    def __hash__(self) -> int:
        return hash((self.m, self.n, self._e))

    def __repr__(self) -> str:
        return f"QMatrix({self.m}x{self.n})"

    def _same_shape(self, other: "QMatrix") -> None:
        if self.m != other.m or self.n != other.n:
            raise DimensionMismatchError(
                f"shape mismatch: {self.m}x{self.n} vs {other.m}x{other.n}"
            )

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.m} {self.n}"]
        for i in range(self.m):
            lines.append(" ".join(format_entry(v) for v in self.row(i)))
        return "\n".join(lines) + "\n"


class QVector:
    """A length-m column vector of GaussRational entries."""

    __slots__ = ("m", "_e")

    def __init__(self, m: int, entries: Iterable[EntryLike]):
        e = tuple(gq(v) for v in entries)
        if len(e) != m:
            raise DimensionMismatchError(f"expected {m} entries, got {len(e)}")
        self.m = m
        self._e = e

    @classmethod
    def of(cls, *values: EntryLike) -> "QVector":
        return cls(len(values), values)

    def at(self, i: int) -> GaussRational:
        return self._e[i]

    def entries(self) -> tuple[GaussRational, ...]:
        return self._e

    def __add__(self, other: "QVector") -> "QVector":
        if self.m != other.m:
            raise DimensionMismatchError("vector length mismatch")
        return QVector(self.m, (a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "QVector") -> "QVector":
        if self.m != other.m:
            raise DimensionMismatchError("vector length mismatch")
        return QVector(self.m, (a - b for a, b in zip(self._e, other._e)))

    def scale(self, c: EntryLike) -> "QVector":
        z = gq(c)
        return QVector(self.m, (a * z for a in self._e))

    def norm_sq(self) -> Fraction:
        acc = Fraction(0)
        for a in self._e:
            acc += a.abs_sq()
        return acc

    def as_column(self) -> QMatrix:
        return QMatrix(self.m, 1, self._e)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QVector) and self.m == other.m and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.m, self._e))

    def __repr__(self) -> str:
        return f"QVector({', '.join(str(v) for v in self._e)})"

    def to_text(self) -> str:
        return self.as_column().to_text()


def parse_matrix(text: str) -> QMatrix:
    """Parse the exact matrix file format; requires m, n >= 1."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"bad header line {lines[0]!r}: expected 'm n'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"bad header line {lines[0]!r}") from exc
    if m < 1 or n < 1:
        raise ParseError("matrix files require m, n >= 1")
    if len(lines) != m + 1:
        raise ParseError(f"expected {m} entry rows, got {len(lines) - 1}")
    entries: list[GaussRational] = []
    for i in range(m):
        parts = lines[i + 1].split()
        if len(parts) != n:
            raise ParseError(f"row {i} has {len(parts)} entries, expected {n}")
        entries.extend(parse_entry(p) for p in parts)
    return QMatrix(m, n, entries)


def parse_vector(text: str) -> QVector:
    """Parse a vector stored as an m-by-1 matrix file."""
    mat = parse_matrix(text)
    if mat.n != 1:
        raise ParseError(f"vector files must be m x 1, got {mat.m}x{mat.n}")
    return mat.column(0)
