"""Copartitions: a ground partition (parts ≡ a mod m, each ≥ a), a sky
partition (parts ≡ b mod m, each ≥ b), and an implicit rectangle joining them
with ν(sky) rows of width m·ν(ground).

The rectangle is never stored; it is fully determined by the ground and sky
shapes and is reconstructed on demand for display and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .partitions import (
    Partition,
    count_partitions,
    generate_partitions,
    modular_rows,
    render_rows,
    transpose_rows,
)


class BadParams(ValueError):
    """Operation requires different (a, b, m) parameters."""


class NotACopartition(ValueError):
    """Ground or sky violates the congruence/minimum constraints."""


@dataclass(frozen=True)
class CopParams:
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.m < 1:
            raise BadParams(f"parameters must be positive, got {self}")

    def conjugate(self) -> "CopParams":
        return CopParams(self.b, self.a, self.m)

    def astuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.m)


def _params(params) -> CopParams:
    if isinstance(params, CopParams):
        return params
    return CopParams(*params)


class Copartition:
    __slots__ = ("params", "ground", "sky")

    def __init__(self, params, ground: Iterable[int] | Partition, sky: Iterable[int] | Partition):
        params = _params(params)
        ground = ground if isinstance(ground, Partition) else Partition(ground)
        sky = sky if isinstance(sky, Partition) else Partition(sky)
        for part in ground:
            if part < params.a or (part - params.a) % params.m:
                raise NotACopartition(
                    f"ground part {part} is not >= {params.a} and congruent to it mod {params.m}"
                )
        for part in sky:
            if part < params.b or (part - params.b) % params.m:
                raise NotACopartition(
                    f"sky part {part} is not >= {params.b} and congruent to it mod {params.m}"
                )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "sky", sky)

    def __setattr__(self, name, value):
        raise AttributeError("Copartition is immutable")

    @property
    def num_ground(self) -> int:
        return self.ground.num_parts

    @property
    def num_sky(self) -> int:
        return self.sky.num_parts

    @property
    def size(self) -> int:
        return self.ground.size + self.sky.size + self.params.m * self.num_ground * self.num_sky

    @property
    def has_even_ground(self) -> bool:
        return self.num_ground % 2 == 0

    @property
    def diversity(self) -> int:
        return self.ground.diversity + self.sky.diversity

    def rho(self) -> Partition:
        """The joining rectangle: ν(sky) parts of size m·ν(ground).

        Degenerate when either count is zero; no cells means empty partition.
        """
        width = self.params.m * self.num_ground
        if width == 0 or self.num_sky == 0:
            return Partition()
        return Partition([width] * self.num_sky)

    def enlarged_sky(self) -> Partition:
        """Sky parts each raised by the rectangle width m·ν(ground)."""
        width = self.params.m * self.num_ground
        return Partition([p + width for p in self.sky])

    def conjugate(self) -> "Copartition":
        """Reflect the diagram: swap ground and sky under (b, a, m)."""
        return Copartition(self.params.conjugate(), self.sky, self.ground)

    def to_eo_star(self) -> Partition:
        """The partition with all even parts below all odd parts obtained by
        duplicating each enlarged-sky part and doubling each conjugate-ground part.

        Defined for (1, 1, 2) parameters only; the output size is twice ours.
        """
        if self.params.astuple() != (1, 1, 2):
            raise BadParams(f"correspondence needs parameters (1, 1, 2), got {self.params}")
        parts = []
        for p in self.enlarged_sky():
            parts.extend((p, p))
        parts.extend(2 * p for p in self.ground.conjugate())
        return Partition(parts)

    def diagram_rows(self) -> list[list[int]]:
        """Cell labels of the graphical form: each sky row prefixed by its
        rectangle cells, then the conjugated ground diagram below."""
        a, b, m = self.params.astuple()
        width = self.num_ground
        rows = []
        for sky_row in modular_rows(self.sky, m, b):
            rows.append([m] * width + sky_row)
        rows.extend(transpose_rows(modular_rows(self.ground, m, a)))
        return rows

    def render(self) -> str:
        return render_rows(self.diagram_rows())

    def to_json(self) -> dict:
        return {
            "a": self.params.a,
            "b": self.params.b,
            "m": self.params.m,
            "ground": list(self.ground.parts),
            "sky": list(self.sky.parts),
            "rho": {"parts": self.num_sky, "size": self.params.m * self.num_ground},
        }

    @classmethod
    def from_json(cls, data) -> "Copartition":
        return cls(CopParams(data["a"], data["b"], data["m"]), data["ground"], data["sky"])

    def _key(self):
        return (self.params.astuple(), self.ground.parts, self.sky.parts)

    def __eq__(self, other):
        if not isinstance(other, Copartition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other: "Copartition"):
        return self._key() < other._key()

    def __repr__(self):
        return f"Copartition({self.params.astuple()}, ground={list(self.ground.parts)}, sky={list(self.sky.parts)})"


def _count_shapes(params: CopParams, n: int):
    """Yield (w, s, leftover) with m*w*s + ground + sky sizes able to reach n."""
    a, b, m = params.astuple()
    w = 0
    while a * w <= n:
        s = 0
        while a * w + b * s + m * w * s <= n:
            yield w, s, n - m * w * s
            s += 1
        w += 1


@lru_cache(maxsize=None)
def _enumerate_cached(params: CopParams, n: int) -> tuple[Copartition, ...]:
    a, b, m = params.astuple()
    found = []
    for w, s, leftover in _count_shapes(params, n):
        for ground_size in range(a * w, leftover - b * s + 1):
            grounds = generate_partitions(ground_size, a % m, m, a, exact_parts=w)
            if not grounds:
                continue
            skies = generate_partitions(leftover - ground_size, b % m, m, b, exact_parts=s)
            for ground in grounds:
                for sky in skies:
                    found.append(Copartition(params, ground, sky))
    return tuple(found)


def enumerate_copartitions(params, n: int) -> tuple[Copartition, ...]:
    """All copartitions of size n, in a fixed deterministic order
    (ascending ground count, then sky count, then lexicographic shapes)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _enumerate_cached(_params(params), n)


@lru_cache(maxsize=None)
def _count_refined_cached(params: CopParams, n: int) -> tuple[tuple[tuple[int, int], int], ...]:
    a, b, m = params.astuple()
    table = []
    for w, s, leftover in _count_shapes(params, n):
        total = 0
        for ground_size in range(a * w, leftover - b * s + 1):
            gcount = count_partitions(ground_size, a % m, m, a, exact_parts=w)
            if not gcount:
                continue
            total += gcount * count_partitions(leftover - ground_size, b % m, m, b, exact_parts=s)
        if total:
            table.append(((w, s), total))
    return tuple(table)


def count_refined(params, n: int) -> dict[tuple[int, int], int]:
    """Copartition counts of size n refined by (ground parts, sky parts)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return dict(_count_refined_cached(_params(params), n))


def cp_count(params, n: int) -> int:
    return sum(count_refined(params, n).values())


def cp_by_parity(params, n: int) -> tuple[int, int]:
    """(even, odd) copartition counts split by the parity of the ground count."""
    even = odd = 0
    for (w, _s), c in count_refined(params, n).items():
        if w % 2 == 0:
            even += c
        else:
            odd += c
    return even, odd


def is_eo_star(p: Partition) -> bool:
    """True when every even part is below every odd part and the largest even
    part is the unique odd-multiplicity part size (all multiplicities even when
    there is no even part)."""
    evens = [x for x in p if x % 2 == 0]
    odds = [x for x in p if x % 2 == 1]
    if evens and odds and max(evens) > min(odds):
        return False
    odd_sizes = p.odd_multiplicity_sizes
    if not evens:
        return not odd_sizes
    return odd_sizes == frozenset({max(evens)})
