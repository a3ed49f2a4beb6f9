"""Binary matrices and GF(2) polynomials for client-to-group assignment.

An assignment matrix is an m x n binary matrix whose entry (i, j) says
whether client j participates in test group i.  Used as a parity-check
matrix of a binary linear code it also determines how much any linear
combination of group aggregates can reveal about individual clients, so
this module carries both the matrix plumbing (construction, syndromes,
file I/O) and the privacy-level computation over the GF(2) row span.

Bit conventions used throughout the package:

* a length-k binary vector is a tuple of 0/1 ints, index 0 first;
* the packed form of a vector is the int with bit i = element i, so the
  decimal label of a syndrome (s_1, ..., s_m) is sum(s_i * 2**(i-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegenerateCodeError,
    DimensionMismatchError,
    EmptyColumnError,
    EmptyRowError,
    NotADivisorError,
    RaggedInputError,
    RowSpanTooLargeError,
)

Bits = tuple[int, ...]

# Exhaustive row-span enumeration is 2^m - 1 combinations.
PRIVACY_MAX_ROWS = 24


def pack_bits(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int (element i -> bit i)."""
    mask = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"entries must be 0 or 1, got {b!r}")
        mask |= b << i
    return mask


def unpack_bits(mask: int, length: int) -> Bits:
    """Inverse of pack_bits for a vector of known length."""
    return tuple((mask >> i) & 1 for i in range(length))


def weight(bits: Iterable[int]) -> int:
    """Hamming weight of a 0/1 sequence."""
    return sum(1 for b in bits if b)


# ---------------------------------------------------------------------------
# GF(2) polynomials, stored as int bit masks (bit i = coefficient of x^i).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2) backed by an int bit mask.

    The zero polynomial has ``degree == -1`` (distinguished sentinel);
    any nonzero polynomial is automatically monic over GF(2).
    """

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("polynomial mask must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "Gf2Poly":
        """Build from coefficients in ascending order (x^0 first)."""
        return cls(pack_bits(coeffs))

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "Gf2Poly":
        """Build from the set of exponents with coefficient 1."""
        mask = 0
        for d in degrees:
            mask ^= 1 << d
        return cls(mask)

    @classmethod
    def x_n_plus_1(cls, n: int) -> "Gf2Poly":
        return cls((1 << n) | 1)

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coeffs(self) -> Bits:
        """Coefficients in ascending order; () for the zero polynomial."""
        if self.bits == 0:
            return ()
        return unpack_bits(self.bits, self.degree + 1)

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        a, b, out = self.bits, other.bits, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return Gf2Poly(out)

    def divmod(self, divisor: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        if divisor.bits == 0:
            raise ZeroDivisionError("GF(2) polynomial division by zero")
        rem = self.bits
        quo = 0
        dd = divisor.degree
        while rem and rem.bit_length() - 1 >= dd:
            shift = rem.bit_length() - 1 - dd
            quo |= 1 << shift
            rem ^= divisor.bits << shift
        return Gf2Poly(quo), Gf2Poly(rem)

    def divides(self, other: "Gf2Poly") -> bool:
        return other.divmod(self)[1].bits == 0

    def __str__(self):
        if self.bits == 0:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            if (self.bits >> d) & 1:
                terms.append("1" if d == 0 else ("x" if d == 1 else f"x^{d}"))
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Assignment matrices.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssignmentMatrix:
    """m x n binary client-to-group assignment, rows bit-packed.

    ``row_masks[i]`` has bit j set iff client j is in group i, so OR-ing
    column masks into an m-bit accumulator is O(1) per client.  Instances
    are immutable and safe to share across worker threads.
    """

    m: int
    n: int
    row_masks: tuple[int, ...]

    @cached_property
    def col_masks(self) -> tuple[int, ...]:
        """Per-client m-bit masks: bit i set iff client j is in group i."""
        cols = [0] * self.n
        for i, row in enumerate(self.row_masks):
            while row:
                low = row & -row
                cols[low.bit_length() - 1] |= 1 << i
                row ^= low
        return tuple(cols)

    def rows(self) -> tuple[Bits, ...]:
        return tuple(unpack_bits(r, self.n) for r in self.row_masks)

    def group_members(self, i: int) -> tuple[int, ...]:
        """Indices of the clients in test group i."""
        return tuple(j for j in range(self.n) if (self.row_masks[i] >> j) & 1)

    def group_sizes(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.row_masks)

    def __str__(self):
        lines = [f"{self.m} {self.n}"]
        for bits in self.rows():
            lines.append(" ".join(str(b) for b in bits))
        return "\n".join(lines)


def from_dense(rows: Sequence[Sequence[int]]) -> AssignmentMatrix:
    """Validate and pack a dense 0/1 matrix.

    Rejects ragged input, all-zero rows (a group that tests nothing) and
    all-zero columns (a client that is never tested, whose posterior would
    degenerate to the prior).
    """
    if not rows:
        raise EmptyRowError("matrix needs at least one row")
    n = len(rows[0])
    if n == 0:
        raise RaggedInputError("rows must have at least one column")
    masks = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RaggedInputError(f"row {i} has length {len(row)}, expected {n}")
        mask = pack_bits(row)
        if mask == 0:
            raise EmptyRowError(f"row {i} is all-zero (empty test group)")
        masks.append(mask)
    covered = 0
    for mask in masks:
        covered |= mask
    if covered != (1 << n) - 1:
        j = next(j for j in range(n) if not (covered >> j) & 1)
        raise EmptyColumnError(f"column {j} is all-zero (client never tested)")
    return AssignmentMatrix(m=len(masks), n=n, row_masks=tuple(masks))


def identity(n: int) -> AssignmentMatrix:
    """n x n identity: one singleton group per client (vanilla FL)."""
    if n < 1:
        raise EmptyRowError("identity needs n >= 1")
    return AssignmentMatrix(m=n, n=n, row_masks=tuple(1 << j for j in range(n)))


def all_ones(n: int) -> AssignmentMatrix:
    """1 x n all-ones: a single group of everyone (full secure aggregation)."""
    if n < 1:
        raise EmptyRowError("all_ones needs n >= 1")
    return AssignmentMatrix(m=1, n=n, row_masks=((1 << n) - 1,))


def cyclic_parity_check(n: int, generator: Gf2Poly) -> AssignmentMatrix:
    """Parity-check matrix of the length-n cyclic code generated by ``generator``.

    Computes the check polynomial h(x) = (x^n + 1) / g(x) and stacks the
    cyclic shifts of its reversed coefficient sequence, giving n - k rows
    of constant weight equal to weight(h): every group has the same size.

    Raises NotADivisorError if g does not divide x^n + 1, and
    DegenerateCodeError for k = 0 or k = n.
    """
    if n < 2:
        raise DegenerateCodeError("cyclic codes need n >= 2")
    modulus = Gf2Poly.x_n_plus_1(n)
    quo, rem = modulus.divmod(generator)
    if rem.bits != 0:
        raise NotADivisorError(f"{generator} does not divide x^{n} + 1")
    h = quo
    k = h.degree
    if k <= 0 or k >= n:
        raise DegenerateCodeError(f"code dimension k={k} must satisfy 1 <= k < n")
    m = n - k
    # reversed coefficient sequence h_k, h_{k-1}, ..., h_0
    rev = tuple((h.bits >> (k - u)) & 1 for u in range(k + 1))
    rows = []
    for i in range(m):
        row = [0] * n
        for u, c in enumerate(rev):
            row[(i + u) % n] ^= c
        rows.append(row)
    mat = from_dense(rows)
    assert mat.group_sizes() == (h.weight,) * m
    return mat


def generator_matrix(n: int, generator: Gf2Poly) -> tuple[Bits, ...]:
    """k x n generator matrix of the cyclic code: shifts of g's coefficients."""
    k = n - generator.degree
    rows = []
    for i in range(k):
        row = [0] * n
        for u, c in enumerate(generator.coeffs()):
            row[(i + u) % n] ^= c
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Syndromes and privacy.
# ---------------------------------------------------------------------------

def syndrome(d: Sequence[int], a: AssignmentMatrix) -> Bits:
    """Group-test outcome under perfect tests: s_i = OR of d_j over group i."""
    if len(d) != a.n:
        raise DimensionMismatchError(f"defective vector length {len(d)} != n={a.n}")
    acc = 0
    for j, bit in enumerate(d):
        if bit:
            acc |= a.col_masks[j]
    return unpack_bits(acc, a.m)


def syndrome_mask(d_mask: int, a: AssignmentMatrix) -> int:
    """Packed-int variant of syndrome() for hot loops."""
    acc = 0
    rest = d_mask
    while rest:
        low = rest & -rest
        acc |= a.col_masks[low.bit_length() - 1]
        rest ^= low
    return acc


def privacy_level(a: AssignmentMatrix) -> int:
    """Smallest nonzero Hamming weight in the GF(2) row span of ``a``.

    No linear combination of the group aggregates exposes a sum of fewer
    than this many client models.  Enumerates all 2^m - 1 nonzero row
    combinations, which is exact but exponential in m.
    """
    if a.m > PRIVACY_MAX_ROWS:
        raise RowSpanTooLargeError(
            f"m={a.m} rows exceed the exhaustive bound {PRIVACY_MAX_ROWS}")
    best = a.n + 1
    # Gray-code walk: one row XOR per step.
    span = 0
    prev_code = 0
    for c in range(1, 1 << a.m):
        code = c ^ (c >> 1)
        flipped = code ^ prev_code
        span ^= a.row_masks[flipped.bit_length() - 1]
        prev_code = code
        w = span.bit_count()
        if 0 < w < best:
            best = w
            if best == 1:
                break
    return best


# ---------------------------------------------------------------------------
# Matrix text format and named presets.
# ---------------------------------------------------------------------------

def dumps(a: AssignmentMatrix) -> str:
    """First line "m n", then m rows of n space-separated 0/1 digits."""
    return str(a) + "\n"


def loads(text: str) -> AssignmentMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise RaggedInputError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise RaggedInputError('matrix file must start with "m n"')
    m, n = int(header[0]), int(header[1])
    if len(lines) != m + 1:
        raise RaggedInputError(f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise RaggedInputError(f"expected {n} entries per row")
        rows.append(row)
    return from_dense(rows)


def load_matrix(path) -> AssignmentMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return loads(fh.read())


def save_matrix(a: AssignmentMatrix, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(a))


# Generator polynomials for the shipped groupings.  x^15 + 1 factors into
# (x+1)(x^2+x+1)(x^4+x+1)(x^4+x^3+1)(x^4+x^3+x^2+x+1); the products below
# were chosen so the check polynomial weight (= group size) matches the
# published grouping, and are pinned by tests on group sizes and privacy.
GENERATORS = {
    # (x^4+x+1)(x^4+x^3+x^2+x+1): 8 groups of 4, privacy 4
    "bch15_7": (15, Gf2Poly(0b111010001)),
    # (x^4+x+1)(x^2+x+1): 6 groups of 6, privacy 6
    "cyclic15_9": (15, Gf2Poly(0b1111001)),
    # x^4+x+1: 4 groups of 8, privacy 8
    "cyclic15_11": (15, Gf2Poly(0b10011)),
    # (x^5+x^2+1)(x^5+x^4+x^3+x^2+1): 10 groups of 12, privacy 12
    "bch31_21": (31, Gf2Poly(0b11101101001)),
}


def preset(name: str) -> AssignmentMatrix:
    """Named matrices: the four code-based groupings plus identity:n / allones:n."""
    if name in GENERATORS:
        n, g = GENERATORS[name]
        return cyclic_parity_check(n, g)
    if ":" in name:
        kind, _, arg = name.partition(":")
        n = int(arg)
        if kind == "identity":
            return identity(n)
        if kind == "allones":
            return all_ones(n)
    raise KeyError(f"unknown matrix preset {name!r}")


PRESET_NAMES = tuple(GENERATORS) + ("identity:<n>", "allones:<n>")
