"""Bitstring arithmetic, the promised input set, and the target functions.

Inputs are fixed-length binary words indexed 1..n (position 1 first, matching
the usual x_1 ... x_n notation). A promise triple is three equal-length words
whose columns x_i y_i z_i each XOR to 1, i.e. every column is one of
001, 010, 100, 111.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

MAX_LENGTH = 32
MAX_ENUM_LENGTH = 16

# The four column patterns (x_i, y_i, z_i) allowed by the promise, in
# lexicographic order; enumeration order is defined by these codes.
LEGAL_COLUMNS = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))


class PromiseViolation(ValueError):
    """An (x, y, z) triple breaks the bitwise column promise."""


@dataclass(frozen=True)
class BitString:
    """Fixed-length binary word; bit i (1-indexed) is stored at 1 << (i-1)."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(f"length must be in 1..{MAX_LENGTH}, got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError(f"bits 0x{self.bits:x} has set bits above length {self.length}")

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        """Parse "011"-style text, position 1 first."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    @classmethod
    def from_index(cls, value: int, length: int) -> "BitString":
        """Build from the integer whose binary digits read position 1 first."""
        return cls.from_str(format(value, f"0{length}b"))

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"bit index {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def __iter__(self) -> Iterator[int]:
        return (self.bit(i) for i in range(1, self.length + 1))

    def __str__(self) -> str:
        return "".join(str(b) for b in self)

    @property
    def index(self) -> int:
        """Integer whose binary digits are position 1 first (inverse of from_index)."""
        return int(str(self), 2)

    def parity(self) -> int:
        return self.bits.bit_count() & 1

    def count_ones(self) -> int:
        return self.bits.bit_count()

    def count_zeros(self) -> int:
        return self.length - self.bits.bit_count()


@dataclass(frozen=True)
class PromiseTriple:
    """Three equal-length words with every column in {001, 010, 100, 111}."""

    x: BitString
    y: BitString
    z: BitString

    def __post_init__(self) -> None:
        n = self.x.length
        if self.y.length != n or self.z.length != n:
            raise PromiseViolation(
                f"lengths differ: {self.x.length}, {self.y.length}, {self.z.length}"
            )
        # Column promise: x_i + y_i + z_i odd for every i, i.e. the XOR of the
        # three words is all-ones.
        all_ones = (1 << n) - 1
        bad = (self.x.bits ^ self.y.bits ^ self.z.bits) ^ all_ones
        if bad:
            i = bad.bit_length()  # highest offending column, 1-indexed
            raise PromiseViolation(
                f"column {i} is {self.x.bit(i)}{self.y.bit(i)}{self.z.bit(i)}, "
                "not one of 001/010/100/111"
            )

    @classmethod
    def from_strs(cls, x: str, y: str, z: str) -> "PromiseTriple":
        return cls(BitString.from_str(x), BitString.from_str(y), BitString.from_str(z))

    @property
    def length(self) -> int:
        return self.x.length

    def column(self, i: int) -> tuple[int, int, int]:
        return (self.x.bit(i), self.y.bit(i), self.z.bit(i))

    def columns(self) -> Iterator[tuple[int, int, int]]:
        return (self.column(i) for i in range(1, self.length + 1))

    def __str__(self) -> str:
        return f"(x={self.x}, y={self.y}, z={self.z})"


@dataclass(frozen=True)
class FunctionTable:
    """Total boolean function over an explicit finite domain of input tuples."""

    arity: int
    length: int
    values: Mapping[tuple[BitString, ...], int]

    def __post_init__(self) -> None:
        for key, value in self.values.items():
            if len(key) != self.arity:
                raise ValueError(f"key {key} does not have arity {self.arity}")
            if any(b.length != self.length for b in key):
                raise ValueError(f"key {key} has a word of the wrong length")
            if value not in (0, 1):
                raise ValueError(f"non-bit value {value!r} for {key}")

    @classmethod
    def tabulate(
        cls,
        fn: Callable[..., int],
        domain: Iterable[tuple[BitString, ...]],
        arity: int,
        length: int,
    ) -> "FunctionTable":
        return cls(arity, length, {args: fn(*args) for args in domain})

    def value(self, *args: BitString) -> int:
        try:
            return self.values[args]
        except KeyError:
            raise KeyError(f"{args} outside the table's domain") from None

    @property
    def domain(self) -> set[tuple[BitString, ...]]:
        return set(self.values)

    def __len__(self) -> int:
        return len(self.values)


def _check_equal_lengths(x: BitString, y: BitString) -> None:
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} vs {y.length}")


def f_parity(x: BitString, y: BitString) -> int:
    """XOR of all bits of both words."""
    _check_equal_lengths(x, y)
    return (x.bits ^ y.bits).bit_count() & 1


def f_inner_product(x: BitString, y: BitString) -> int:
    """XOR over i of x_i AND y_i."""
    _check_equal_lengths(x, y)
    return (x.bits & y.bits).bit_count() & 1


def f_ghz(t: PromiseTriple) -> int:
    """XOR over i of x_i AND y_i AND z_i (the promise-game target)."""
    return (t.x.bits & t.y.bits & t.z.bits).bit_count() & 1


def enumerate_promise(n: int) -> Iterator[PromiseTriple]:
    """All 4^n promise triples of length n, lexicographic by column codes.

    Column codes index LEGAL_COLUMNS; column 1 varies slowest.
    """
    if not 1 <= n <= MAX_ENUM_LENGTH:
        raise ValueError(f"n must be in 1..{MAX_ENUM_LENGTH}, got {n}")
    total = 4**n
    for combo in range(total):
        xb = yb = zb = 0
        rest = combo
        for i in range(n):
            # Column i+1 is the most significant base-4 digit first.
            code = (rest >> (2 * (n - 1 - i))) & 3
            cx, cy, cz = LEGAL_COLUMNS[code]
            xb |= cx << i
            yb |= cy << i
            zb |= cz << i
        yield PromiseTriple(BitString(n, xb), BitString(n, yb), BitString(n, zb))


def random_promise_triple(n: int, rng) -> PromiseTriple:
    """Uniform random promise triple: each column drawn from LEGAL_COLUMNS."""
    if not 1 <= n <= MAX_LENGTH:
        raise ValueError(f"n must be in 1..{MAX_LENGTH}, got {n}")
    xb = yb = zb = 0
    for i in range(n):
        cx, cy, cz = LEGAL_COLUMNS[rng.randrange(4)]
        xb |= cx << i
        yb |= cy << i
        zb |= cz << i
    return PromiseTriple(BitString(n, xb), BitString(n, yb), BitString(n, zb))


def reduce_to_inner_product(t: PromiseTriple) -> tuple[BitString, BitString]:
    """Drop z from a length-3 promise triple; the game value becomes x.y.

    On the promise, z_i = 1 + x_i + y_i, so each AND column collapses to
    x_i AND y_i and the target equals the two-party inner product of (x, y).
    """
    if t.length != 3:
        raise ValueError(f"reduction is defined for length 3, got {t.length}")
    return t.x, t.y


def parity_table(n: int) -> FunctionTable:
    """f_parity tabulated over all pairs of length-n words."""
    domain = [
        (BitString.from_index(a, n), BitString.from_index(b, n))
        for a in range(1 << n)
        for b in range(1 << n)
    ]
    return FunctionTable.tabulate(f_parity, domain, arity=2, length=n)


def inner_product_table(n: int) -> FunctionTable:
    """f_inner_product tabulated over all pairs of length-n words."""
    domain = [
        (BitString.from_index(a, n), BitString.from_index(b, n))
        for a in range(1 << n)
        for b in range(1 << n)
    ]
    return FunctionTable.tabulate(f_inner_product, domain, arity=2, length=n)


def ghz_table(n: int) -> FunctionTable:
    """f_ghz tabulated over exactly the promise set of length n."""
    values = {(t.x, t.y, t.z): f_ghz(t) for t in enumerate_promise(n)}
    return FunctionTable(arity=3, length=n, values=values)
