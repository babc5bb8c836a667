"""The pair space behind the ground-parity injection for (1, 1, 2)-copartitions.

A valid pair (gamma, sigma) has: all sigma parts odd; the smallest sigma part
exceeding largest(gamma) + largest_even(gamma); and at most one part size of
gamma with odd multiplicity, which must be the largest part or the largest
even part.  Two inverse moves act on pairs:

* the forward move removes the largest part and the largest even part of
  gamma (only the largest when there is no even part) and adds their sum to
  sigma as a new part;
* the backward move removes the smallest part of sigma and splits it into the
  unique odd-multiplicity part size of gamma (0 when none) and the remainder,
  dropping zero-size pieces.

Iterating the forward move until the largest remaining gamma part is even (or
gamma empties) is a size- and diversity-preserving injection from odd-ground
copartitions into even-ground ones; iterating the backward move classifies
which even-ground copartitions it misses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .copartition import BadParams, Copartition, NotACopartition
from .partitions import Partition, generate_partitions


class InvalidPair(ValueError):
    """The pair violates the sky/ground invariants of the pair space."""


class FNotDefined(ValueError):
    """Forward move needs a nonempty gamma whose largest part is odd."""


class GNotDefined(ValueError):
    """Backward move needs a nonempty sigma."""


class ParityClass(enum.Enum):
    """Which side of the pair-space split a pair sits on.

    ODD: the largest gamma part is odd and occurs an odd number of times.
    EVEN: the only odd-multiplicity size, if any, is the largest even part
    (this includes every gamma whose multiplicities are all even, and the
    empty gamma).
    """

    ODD = "odd"
    EVEN = "even"


class SkyGroundPair:
    __slots__ = ("gamma", "sigma")

    def __init__(self, gamma: Iterable[int] | Partition, sigma: Iterable[int] | Partition):
        gamma = gamma if isinstance(gamma, Partition) else Partition(gamma)
        sigma = sigma if isinstance(sigma, Partition) else Partition(sigma)
        if any(p % 2 == 0 for p in sigma):
            raise InvalidPair(f"sigma {sigma} has an even part")
        bound = gamma.largest + gamma.largest_even
        if sigma and sigma.smallest <= bound:
            raise InvalidPair(
                f"smallest sigma part {sigma.smallest} must exceed {bound} for gamma {gamma}"
            )
        odd_sizes = gamma.odd_multiplicity_sizes
        if len(odd_sizes) > 1 or not odd_sizes <= {gamma.largest, gamma.largest_even}:
            raise InvalidPair(
                f"odd-multiplicity sizes {set(odd_sizes)} of gamma {gamma} are not limited "
                "to the largest or largest even part"
            )
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "sigma", sigma)

    def __setattr__(self, name, value):
        raise AttributeError("SkyGroundPair is immutable")

    @property
    def size(self) -> int:
        return self.gamma.size + self.sigma.size

    @property
    def parity_class(self) -> ParityClass:
        odd_sizes = self.gamma.odd_multiplicity_sizes
        if odd_sizes and next(iter(odd_sizes)) % 2 == 1:
            return ParityClass.ODD
        return ParityClass.EVEN

    @property
    def odd_size(self) -> int:
        """The unique part size of gamma with odd multiplicity, or 0."""
        odd_sizes = self.gamma.odd_multiplicity_sizes
        return next(iter(odd_sizes)) if odd_sizes else 0

    def is_copartition_shape(self) -> bool:
        """True when every sigma part clears twice the largest gamma part, so
        the pair splits back into a ground, a rectangle, and a sky."""
        return not self.sigma or self.sigma.smallest > 2 * self.gamma.largest

    def __eq__(self, other):
        if not isinstance(other, SkyGroundPair):
            return NotImplemented
        return self.gamma == other.gamma and self.sigma == other.sigma

    def __hash__(self):
        return hash((self.gamma, self.sigma))

    def __lt__(self, other: "SkyGroundPair"):
        return (self.gamma.parts, self.sigma.parts) < (other.gamma.parts, other.sigma.parts)

    def __repr__(self):
        return f"SkyGroundPair(gamma={list(self.gamma.parts)}, sigma={list(self.sigma.parts)})"

    def __str__(self):
        return f"{self.gamma} | {self.sigma}"

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma.parts), "sigma": list(self.sigma.parts)}


def from_copartition(cop: Copartition) -> SkyGroundPair:
    """Recast a (1, 1, 2)-copartition as (conjugate ground, enlarged sky)."""
    if cop.params.astuple() != (1, 1, 2):
        raise BadParams(f"pair space needs parameters (1, 1, 2), got {cop.params}")
    return SkyGroundPair(cop.ground.conjugate(), cop.enlarged_sky())


def to_copartition(pair: SkyGroundPair) -> Copartition:
    """Inverse of from_copartition: peel the rectangle off sigma and
    conjugate gamma back into the ground.

    Raises NotACopartition when some sigma part does not exceed the rectangle
    width 2*largest(gamma), or when the conjugated gamma is not all odd.
    """
    width = 2 * pair.gamma.largest
    sky = []
    for p in pair.sigma:
        if p <= width:
            raise NotACopartition(f"sigma part {p} does not clear the rectangle width {width}")
        sky.append(p - width)
    return Copartition((1, 1, 2), pair.gamma.conjugate(), sky)


def f_step(pair: SkyGroundPair) -> SkyGroundPair:
    """Forward move: gamma loses its largest and largest even parts (one part
    when there is no even part) and sigma gains their sum.

    Size-preserving and class-flipping; undefined when gamma is empty or its
    largest part is even.
    """
    gamma, sigma = pair.gamma, pair.sigma
    largest, largest_even = gamma.largest, gamma.largest_even
    if not gamma or largest == largest_even:
        raise FNotDefined(f"forward move undefined on {pair}")
    new_gamma = gamma.without_part(largest)
    if largest_even:
        new_gamma = new_gamma.without_part(largest_even)
    return SkyGroundPair(new_gamma, sigma.with_part(largest + largest_even))


def g_step(pair: SkyGroundPair) -> SkyGroundPair:
    """Backward move: sigma loses its smallest part s, gamma gains the unique
    odd-multiplicity size o (skipped when 0) and the difference s - o.

    Size-preserving; inverse of the forward move wherever both are defined.
    """
    if not pair.sigma:
        raise GNotDefined(f"backward move undefined on {pair}")
    smallest = pair.sigma.smallest
    odd = pair.odd_size
    new_gamma = pair.gamma
    for piece in (odd, smallest - odd):
        if piece > 0:
            new_gamma = new_gamma.with_part(piece)
    return SkyGroundPair(new_gamma, pair.sigma.without_part(smallest))


@dataclass(frozen=True)
class WalkResult:
    """Endpoint of an iterated move, with the number of steps taken and the
    full chain of visited pairs (chain[0] is the input)."""

    pair: SkyGroundPair
    steps: int
    chain: tuple[SkyGroundPair, ...]
    kind: str = "pair"

    @property
    def is_terminal(self) -> bool:
        return self.kind == "terminal"


def phi(pair: SkyGroundPair) -> WalkResult:
    """Iterate the forward move until gamma's largest part is even or gamma
    is empty.

    The input must be in the ODD class and be copartition-shaped; the result
    is an EVEN-class pair whose largest part equals its largest even part,
    with size and diversity both preserved.
    """
    if pair.parity_class is not ParityClass.ODD:
        raise ValueError(f"{pair} is not in the odd class")
    if not pair.is_copartition_shape():
        raise ValueError(f"{pair} does not correspond to a copartition")
    chain = [pair]
    while pair.gamma and pair.gamma.largest % 2 == 1:
        pair = f_step(pair)
        chain.append(pair)
    return WalkResult(pair=pair, steps=len(chain) - 1, chain=tuple(chain))


def psi(pair: SkyGroundPair) -> WalkResult:
    """Iterate the backward move from an EVEN-class pair with largest part
    equal to largest even part, stopping at the first copartition-shaped
    ODD-class pair (kind "pair") or when sigma empties first (kind "terminal").

    Inverts phi on its image; for odd total size the walk always ends on a
    copartition-shaped pair.
    """
    if pair.parity_class is not ParityClass.EVEN:
        raise ValueError(f"{pair} is not in the even class")
    if pair.gamma.largest != pair.gamma.largest_even:
        raise ValueError(f"largest part of {pair.gamma} is odd; not a phi endpoint")
    chain = [pair]
    while True:
        if pair.parity_class is ParityClass.ODD and pair.is_copartition_shape():
            return WalkResult(pair=pair, steps=len(chain) - 1, chain=tuple(chain), kind="pair")
        if not pair.sigma:
            return WalkResult(pair=pair, steps=len(chain) - 1, chain=tuple(chain), kind="terminal")
        pair = g_step(pair)
        chain.append(pair)


def phi_on_copartition(cop: Copartition) -> tuple[Copartition, WalkResult]:
    """Apply phi through the copartition recasting, returning the image
    copartition (which has an even ground count) and the walk."""
    walk = phi(from_copartition(cop))
    return to_copartition(walk.pair), walk


def psi_on_copartition(cop: Copartition) -> tuple[Copartition | None, WalkResult]:
    """Apply psi through the recasting; the copartition is None when the walk
    ends at a terminal pair (an even-ground copartition outside phi's image)."""
    walk = psi(from_copartition(cop))
    if walk.is_terminal:
        return None, walk
    return to_copartition(walk.pair), walk


@lru_cache(maxsize=None)
def _enumerate_pairs_cached(n: int) -> tuple[SkyGroundPair, ...]:
    pairs = []
    for gamma_size in range(n + 1):
        for gamma in generate_partitions(gamma_size, 0, 1):
            odd_sizes = gamma.odd_multiplicity_sizes
            if len(odd_sizes) > 1:
                continue
            if not odd_sizes <= {gamma.largest, gamma.largest_even}:
                continue
            bound = gamma.largest + gamma.largest_even
            for sigma in generate_partitions(n - gamma_size, 1, 2, min_part=bound + 1):
                pairs.append(SkyGroundPair(gamma, sigma))
    return tuple(pairs)


def enumerate_pairs(n: int) -> tuple[SkyGroundPair, ...]:
    """Every valid pair of total size n, deterministically ordered."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _enumerate_pairs_cached(n)


def complement_partitions(n: int) -> list[Partition]:
    """Partitions of n whose part sizes all have even multiplicity except
    possibly the largest even part.

    All-even-multiplicity partitions (the empty one included) qualify; this
    set is equinumerous with the even-ground copartitions of n missed by phi.
    """
    found = []
    for p in generate_partitions(n, 0, 1):
        odd_sizes = p.odd_multiplicity_sizes
        if not odd_sizes:
            found.append(p)
        elif len(odd_sizes) == 1:
            (x,) = odd_sizes
            if x == p.largest_even:
                found.append(p)
    return found
