"""Integer partitions: the substrate type, constrained generation and counting,
conjugation, part statistics, and modular diagram rows."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple


class MalformedPart(ValueError):
    """A part violates the congruence or minimum required by a modular diagram."""


class Partition:
    """A weakly decreasing tuple of positive integers; empty is allowed.

    Instances are canonical (sorted at construction) and immutable, so
    equality and hashing are structural.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if ps and ps[-1] <= 0:
            raise ValueError(f"parts must be positive, got {ps}")
        object.__setattr__(self, "parts", ps)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def largest_even(self) -> int:
        # 0 when there is no even part, matching the empty conventions
        for p in self.parts:
            if p % 2 == 0:
                return p
        return 0

    @property
    def smallest(self) -> int:
        return self.parts[-1] if self.parts else 0

    @property
    def diversity(self) -> int:
        return len(set(self.parts))

    def multiplicities(self) -> dict[int, int]:
        mult: dict[int, int] = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult

    @property
    def odd_multiplicity_sizes(self) -> frozenset[int]:
        return frozenset(p for p, k in self.multiplicities().items() if k % 2 == 1)

    def stats(self) -> "PartitionStats":
        return PartitionStats(
            largest=self.largest,
            largest_even=self.largest_even,
            smallest=self.smallest,
            odd_multiplicity_sizes=self.odd_multiplicity_sizes,
            diversity=self.diversity,
        )

    def conjugate(self) -> "Partition":
        """Column counts of the Young diagram."""
        if not self.parts:
            return Partition()
        cols = []
        for j in range(1, self.parts[0] + 1):
            count = sum(1 for p in self.parts if p >= j)
            cols.append(count)
        return Partition(cols)

    def with_part(self, value: int) -> "Partition":
        return Partition(self.parts + (value,))

    def without_part(self, value: int) -> "Partition":
        ps = list(self.parts)
        ps.remove(value)
        return Partition(ps)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other: "Partition"):
        return self.parts < other.parts

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


class PartitionStats(NamedTuple):
    largest: int
    largest_even: int
    smallest: int
    odd_multiplicity_sizes: frozenset[int]
    diversity: int


def _first_admissible(residue: int, modulus: int, min_part: int) -> int:
    """Smallest value >= max(min_part, 1) congruent to residue mod modulus."""
    r = residue % modulus
    lo = max(min_part, 1)
    shortfall = (r - lo) % modulus
    return lo + shortfall


def generate_partitions(
    n: int,
    residue: int,
    modulus: int,
    min_part: int = 1,
    exact_parts: int | None = None,
) -> list[Partition]:
    """All partitions of n into parts congruent to residue mod modulus, each
    at least min_part, optionally with a prescribed number of parts.

    Output is deterministic: sorted lexicographically by part tuple.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if modulus < 1 or min_part < 1:
        raise ValueError("modulus and min_part must be positive")
    base = _first_admissible(residue, modulus, min_part)
    results: list[Partition] = []

    def descend(remaining: int, cap: int, parts_left: int | None, acc: list[int]):
        if remaining == 0:
            if parts_left in (None, 0):
                results.append(Partition(acc))
            return
        if parts_left == 0:
            return
        if parts_left is not None and remaining < parts_left * base:
            return
        v = base + ((min(cap, remaining) - base) // modulus) * modulus
        while v >= base:
            if parts_left is None or remaining <= parts_left * v:
                acc.append(v)
                descend(remaining - v, v, None if parts_left is None else parts_left - 1, acc)
                acc.pop()
            v -= modulus
        return

    if n == 0:
        if exact_parts in (None, 0):
            return [Partition()]
        return []
    descend(n, n, exact_parts, [])
    results.sort(key=lambda p: p.parts)
    return results


@lru_cache(maxsize=None)
def _partitions_at_most(n: int, k: int) -> int:
    """Number of partitions of n into at most k parts."""
    if n == 0:
        return 1
    if k == 0 or n < 0:
        return 0
    return _partitions_at_most(n, k - 1) + _partitions_at_most(n - k, k)


def count_partitions(
    n: int,
    residue: int,
    modulus: int,
    min_part: int = 1,
    exact_parts: int | None = None,
) -> int:
    """Count of generate_partitions(...) without materializing anything.

    Parts are base + modulus*t with t >= 0, so exactly-k-part counts reduce
    to partitions of (n - k*base)/modulus into at most k parts.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    base = _first_admissible(residue, modulus, min_part)

    def exact(k: int) -> int:
        rest = n - k * base
        if rest < 0 or rest % modulus:
            return 0
        return _partitions_at_most(rest // modulus, k)

    if exact_parts is not None:
        return exact(exact_parts)
    total = 0
    k = 0
    while k * base <= n:
        total += exact(k)
        k += 1
    return total


def modular_rows(p: Partition, modulus: int, residue: int) -> list[list[int]]:
    """Rows of the m-modular diagram, one per part, residue cell leftmost.

    A part residue + k*modulus is rendered as [residue, modulus, ..., modulus]
    with k modulus cells.  The residue may exceed the modulus.
    """
    if modulus < 1 or residue < 1:
        raise MalformedPart("modulus and residue must be positive")
    rows = []
    for part in p:
        if part < residue or (part - residue) % modulus:
            raise MalformedPart(
                f"part {part} is not congruent to {residue} mod {modulus} at size >= {residue}"
            )
        rows.append([residue] + [modulus] * ((part - residue) // modulus))
    return rows


def transpose_rows(rows: list[list[int]]) -> list[list[int]]:
    """Ragged transpose; used to conjugate a modular diagram."""
    if not rows:
        return []
    width = max(len(r) for r in rows)
    return [[r[j] for r in rows if len(r) > j] for j in range(width)]


def render_rows(rows: list[list[int]]) -> str:
    return "\n".join(" ".join(str(c) for c in row) for row in rows)


def render_modular(p: Partition, modulus: int, residue: int) -> str:
    """Text form of the m-modular diagram of a single partition."""
    return render_rows(modular_rows(p, modulus, residue))
