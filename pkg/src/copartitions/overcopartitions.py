"""Overcopartitions: copartitions whose ground and sky may overline the first
occurrence of each part size.

Counting never needs the overlined objects themselves: a base copartition with
diversity d contributes (1+z)**d, with z tracking the number of overlines.
Direct materialization is kept as an oracle for small sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .bijection import SkyGroundPair, from_copartition, phi, to_copartition
from .copartition import Copartition, enumerate_copartitions, _params
from .partitions import Partition, generate_partitions
from .reports import IdentityReport
from .series import Poly, TruncatedSeries, pochhammer, poly_ring

Z_RING = poly_ring("z")
Z = Z_RING.var("z")


class Overcopartition:
    """A base copartition plus overline flags on distinct part sizes."""

    __slots__ = ("base", "over_ground", "over_sky")

    def __init__(self, base: Copartition, over_ground: Iterable[int] = (), over_sky: Iterable[int] = ()):
        over_ground = frozenset(over_ground)
        over_sky = frozenset(over_sky)
        if not over_ground <= set(base.ground.parts):
            raise ValueError(f"overlined ground sizes {set(over_ground)} not among {base.ground}")
        if not over_sky <= set(base.sky.parts):
            raise ValueError(f"overlined sky sizes {set(over_sky)} not among {base.sky}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "over_ground", over_ground)
        object.__setattr__(self, "over_sky", over_sky)

    def __setattr__(self, name, value):
        raise AttributeError("Overcopartition is immutable")

    @property
    def overline_count(self) -> int:
        return len(self.over_ground) + len(self.over_sky)

    @property
    def size(self) -> int:
        return self.base.size

    def _key(self):
        return (self.base._key(), tuple(sorted(self.over_ground)), tuple(sorted(self.over_sky)))

    def __eq__(self, other):
        if not isinstance(other, Overcopartition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"Overcopartition({self.base!r}, over_ground={sorted(self.over_ground)}, "
            f"over_sky={sorted(self.over_sky)})"
        )


def enumerate_overcopartitions(params, n: int) -> list[Overcopartition]:
    """Materialize every overline choice over every base of size n (oracle)."""
    found = []
    for base in enumerate_copartitions(params, n):
        ground_sizes = sorted(set(base.ground.parts))
        sky_sizes = sorted(set(base.sky.parts))
        for gk in range(len(ground_sizes) + 1):
            for gchoice in itertools.combinations(ground_sizes, gk):
                for sk in range(len(sky_sizes) + 1):
                    for schoice in itertools.combinations(sky_sizes, sk):
                        found.append(Overcopartition(base, gchoice, schoice))
    return found


def count_over(params, n: int) -> int:
    """Number of overcopartitions of size n: sum of 2**diversity over bases."""
    return sum(2 ** cop.diversity for cop in enumerate_copartitions(params, n))


def overline_poly(params, n: int, parity: str | None = None, signed: bool = False) -> Poly:
    """Sum of (1+z)**diversity over the bases of size n, optionally restricted
    to even/odd ground-part count or signed by it."""
    counts: dict[int, int] = {}
    for cop in enumerate_copartitions(params, n):
        w = cop.num_ground
        if parity == "even" and w % 2 == 1:
            continue
        if parity == "odd" and w % 2 == 0:
            continue
        sign = -1 if signed and w % 2 == 1 else 1
        d = cop.diversity
        for r in range(d + 1):
            counts[r] = counts.get(r, 0) + sign * comb(d, r)
    return Poly(("z",), {(r,): c for r, c in counts.items()})


def count_over_by_r(params, n: int) -> dict[int, int]:
    """Overcopartition counts of size n refined by the number of overlines."""
    return {exps[0]: c for exps, c in overline_poly(params, n).terms.items()}


def count_over_by_parity(params, n: int) -> tuple[int, int]:
    """(even, odd) overcopartition counts split by ground-count parity."""
    even = odd = 0
    for cop in enumerate_copartitions(params, n):
        if cop.num_ground % 2 == 0:
            even += 2 ** cop.diversity
        else:
            odd += 2 ** cop.diversity
    return even, odd


# ---------------------------------------------------------------------------
# generating functions in q and the overline marker z


def _neg_z_pochhammer(count: int, step: int, order: int) -> TruncatedSeries:
    """(1 + z)(1 + z*q^step)...(1 + z*q^((count-1)*step)) truncated at order."""
    if count == 0:
        return TruncatedSeries.one(Z_RING, order)
    return pochhammer(Z_RING, Z, step, step, count - 1, order).scaled(1 + Z)


def _q_pochhammer(first_exp: int, step: int, count: int | None, order: int) -> TruncatedSeries:
    return pochhammer(Z_RING, -1, first_exp, step, count, order)


def overline_enumeration_series(params, order: int) -> TruncatedSeries:
    """The overcopartition generating function computed straight from the
    bases: coefficient of z^r q^n counts size-n overcopartitions with r
    overlines."""
    params = _params(params)
    return TruncatedSeries(
        Z_RING, [overline_poly(params, n) for n in range(order + 1)], order
    )


def overline_double_sum_series(params, order: int) -> TruncatedSeries:
    """Sum over ground/sky part counts (w, s) of

        q^(m*s*w + a*w + b*s) * (-z; q^m)_w (-z; q^m)_s
            / ((q^m; q^m)_w (q^m; q^m)_s)

    truncated at the given order.  Each (w, s) cell is the generating function
    for a ground with exactly w parts and a sky with exactly s parts, with z
    marking overlined part sizes, shifted by the rectangle."""
    a, b, m = _params(params).astuple()
    total = TruncatedSeries.constant(Z_RING, 0, order)
    kmax = max(order // a, order // b)
    cell = {}
    for k in range(kmax + 1):
        cell[k] = _neg_z_pochhammer(k, m, order) * _q_pochhammer(m, m, k, order).invert()
    w = 0
    while a * w <= order:
        s = 0
        while a * w + b * s + m * w * s <= order:
            shift = m * s * w + a * w + b * s
            total = total + (cell[w] * cell[s]).shifted(shift)
            s += 1
        w += 1
    return total


def overline_closed_form_series(params, order: int) -> TruncatedSeries:
    """The closed hypergeometric form of the overcopartition generating
    function:

        (-z*q^b; q^m)_inf / (q^b; q^m)_inf
            * sum_k [ (-z; q^m)_k (q^b; q^m)_k q^(a*k)
                      / ((q^m; q^m)_k (-z*q^b; q^m)_k) ]

    The q^(a*k) factor truncates the sum at k <= order/a.

    Note: this corrects the z-offsets sometimes quoted for this identity
    ((-z*q^m; q^m)_k numerators with a (-z*q^(b+m); q^m) base); those count a
    variant in which a minimal-size part cannot be overlined and disagree
    with the 2**diversity convention from size 2 onward.
    """
    a, b, m = _params(params).astuple()
    prefactor = pochhammer(Z_RING, Z, b, m, None, order) * _q_pochhammer(b, m, None, order).invert()
    total = TruncatedSeries.constant(Z_RING, 0, order)
    for k in range(order // a + 1):
        numerator = _neg_z_pochhammer(k, m, order) * _q_pochhammer(b, m, k, order)
        denominator = _q_pochhammer(m, m, k, order) * pochhammer(Z_RING, Z, b, m, k, order)
        total = total + (numerator * denominator.invert()).shifted(a * k)
    return prefactor * total


def _first_poly_mismatch(p: Poly, q: Poly) -> int:
    exps = sorted(set(p.terms) | set(q.terms))
    for e in exps:
        if p.terms.get(e, 0) != q.terms.get(e, 0):
            return e[0]
    return -1


def _compare_z_series(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries, order: int, note: str = "") -> IdentityReport:
    for n in range(order + 1):
        left, right = lhs.coefficient(n), rhs.coefficient(n)
        if left != right:
            r = _first_poly_mismatch(left, right)
            return IdentityReport(name, order, {"n": n, "r": r}, note=note)
    return IdentityReport(name, order, note=note)


def check_over_gf_identity(params, order: int) -> IdentityReport:
    """Three-way check: base enumeration, the (w, s) double sum, and the
    closed hypergeometric form must agree coefficient-by-coefficient in both
    z and q through the given order."""
    params = _params(params)
    name = f"overcopartition-gf{params.astuple()}"
    enum_series = overline_enumeration_series(params, order)
    double_sum = overline_double_sum_series(params, order)
    closed = overline_closed_form_series(params, order)
    for other, tag in ((double_sum, "double-sum"), (closed, "closed-form")):
        report = _compare_z_series(name, enum_series, other, order, note=f"enumeration vs {tag}")
        if not report.ok:
            return report
    return IdentityReport(name, order, note="enumeration = double sum = closed form")


def check_weighted_over_difference(a: int, order: int) -> IdentityReport:
    """For parameters (a, a, 2a): the even-minus-odd ground-count difference of
    the z-refined overcopartition counts equals

        (-q^(2a); q^(2a))_inf * (-z*q^(2a); q^(4a))_inf^2 / (q^(2a); q^(4a))_inf
    """
    params = (a, a, 2 * a)
    name = f"weighted-over-difference(a={a})"
    lhs = TruncatedSeries(
        Z_RING, [overline_poly(params, n, signed=True) for n in range(order + 1)], order
    )
    zfactor = pochhammer(Z_RING, Z, 2 * a, 4 * a, None, order)
    rhs = (
        pochhammer(Z_RING, 1, 2 * a, 2 * a, None, order)
        * zfactor
        * zfactor
        * _q_pochhammer(2 * a, 4 * a, None, order).invert()
    )
    return _compare_z_series(name, lhs, rhs, order)


# ---------------------------------------------------------------------------
# the doubled-size overpartition counts split by largest even part mod 4


@dataclass(frozen=True)
class EoBarCounts:
    residue0: int
    residue2: int


def eo_bar_counts(n: int) -> EoBarCounts:
    """Overpartition counts of n (weighted 2**diversity over base partitions)
    with all even parts below all odd parts and the largest even part the only
    odd-multiplicity size, split by that part's residue mod 4.

    A base with no even part has largest even part 0 and lands in residue
    class 0; this matches the size-doubling correspondence in which the
    residue tracks the parity of the copartition ground count.
    """
    from .copartition import is_eo_star

    residue0 = residue2 = 0
    for p in generate_partitions(n, 0, 1):
        if not is_eo_star(p):
            continue
        weight = 2 ** p.diversity
        if p.largest_even % 4 == 0:
            residue0 += weight
        else:
            residue2 += weight
    return EoBarCounts(residue0, residue2)


# ---------------------------------------------------------------------------
# lifting the ground-parity injection to overlined objects


def phi_with_overlines(
    pair: SkyGroundPair, gamma_flags: Iterable[int], sigma_flags: Iterable[int]
) -> tuple[SkyGroundPair, frozenset[int], frozenset[int]]:
    """Run the forward-move walk while transporting overline flags.

    Each maximal run of equal new sky sizes exhausts exactly one part size of
    gamma; the new size inherits that size's flag.  Surviving gamma sizes and
    all previous sigma sizes keep their flags, so the number of flags (and the
    diversity) is preserved.
    """
    gamma_flags = frozenset(gamma_flags)
    sigma_flags = frozenset(sigma_flags)
    if not gamma_flags <= set(pair.gamma.parts):
        raise ValueError(f"flags {set(gamma_flags)} not among gamma sizes of {pair}")
    if not sigma_flags <= set(pair.sigma.parts):
        raise ValueError(f"flags {set(sigma_flags)} not among sigma sizes of {pair}")
    walk = phi(pair)
    chain = walk.chain
    new_sizes = [
        chain[t].gamma.largest + chain[t].gamma.largest_even for t in range(walk.steps)
    ]
    out_sigma_flags = set(sigma_flags)
    start = 0
    while start < len(new_sizes):
        end = start
        while end + 1 < len(new_sizes) and new_sizes[end + 1] == new_sizes[start]:
            end += 1
        before = set(chain[start].gamma.parts)
        after = set(chain[end + 1].gamma.parts)
        vanished = before - after
        if len(vanished) != 1:
            raise AssertionError(f"run creating {new_sizes[start]} exhausted {vanished}")
        (gone,) = vanished
        if gone in gamma_flags:
            out_sigma_flags.add(new_sizes[start])
        start = end + 1
    out_gamma_flags = gamma_flags & set(walk.pair.gamma.parts)
    return walk.pair, frozenset(out_gamma_flags), frozenset(out_sigma_flags)


def _conjugate_size_map(p: Partition) -> dict[int, int]:
    """Canonical pairing of distinct part sizes with those of the conjugate:
    i-th largest maps to i-th smallest (both sides have equal diversity)."""
    own = sorted(set(p.parts), reverse=True)
    other = sorted(set(p.conjugate().parts))
    return dict(zip(own, other))


def overcopartition_phi(oc: Overcopartition) -> Overcopartition:
    """The injection on overcopartitions induced by the ground-parity walk:
    the base maps through the pair space with flags transported along."""
    base = oc.base
    width = base.params.m * base.num_ground
    pair = from_copartition(base)
    gamma_flags = {_conjugate_size_map(base.ground)[x] for x in oc.over_ground}
    sigma_flags = {x + width for x in oc.over_sky}
    out_pair, out_gamma_flags, out_sigma_flags = phi_with_overlines(pair, gamma_flags, sigma_flags)
    out_base = to_copartition(out_pair)
    back = _conjugate_size_map(out_pair.gamma)
    out_width = 2 * out_pair.gamma.largest
    return Overcopartition(
        out_base,
        {back[x] for x in out_gamma_flags},
        {x - out_width for x in out_sigma_flags},
    )
