"""Positivity scanners and identity checks for the weighted copartition
products: the infinite-product family, its a = b specialization, the finite
truncations, and their Pascal-style recursion.

Scans never abort on a negative coefficient: a counterexample is a result,
reported in the scan output, not an error.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .copartition import cp_by_parity
from .reports import IdentityReport
from .series import ZZ, TruncatedSeries, pochhammer


@dataclass(frozen=True)
class ScanResult:
    """One scanned series: parameters, truncation order, and the first
    negative coefficient if any (None means all scanned coefficients >= 0)."""

    a: int
    b: int
    m: int
    order: int
    first_negative: tuple[int, int] | None
    N: int | None = None
    M: int | None = None
    in_scope: bool = True

    @property
    def nonnegative(self) -> bool:
        return self.first_negative is None

    def to_json(self) -> dict:
        data = {
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "order": self.order,
            "firstNegative": None
            if self.first_negative is None
            else {"n": self.first_negative[0], "value": str(self.first_negative[1])},
        }
        if self.N is not None:
            data["N"] = self.N
            data["M"] = self.M
            data["inScope"] = self.in_scope
        return data


def scan_results_to_csv(results: list[ScanResult], include_scope: bool = False) -> str:
    out = io.StringIO()
    fields = ["a", "b", "m", "N", "M", "order", "first_negative_n", "first_negative_value"]
    if include_scope:
        fields.append("in_scope")
    writer = csv.writer(out)
    writer.writerow(fields)
    for r in results:
        row = [
            r.a,
            r.b,
            r.m,
            "" if r.N is None else r.N,
            "" if r.M is None else r.M,
            r.order,
            "" if r.first_negative is None else r.first_negative[0],
            "" if r.first_negative is None else r.first_negative[1],
        ]
        if include_scope:
            row.append("yes" if r.in_scope else "no")
        writer.writerow(row)
    return out.getvalue()


def infinite_product_series(a: int, b: int, m: int, order: int) -> TruncatedSeries:
    """(-q^(a+b); q^m)_inf / ((-q^a; q^m)_inf (q^b; q^m)_inf), exactly.

    Its coefficients are the even-minus-odd ground-count differences of the
    copartition counts for (a, b, m).
    """
    numerator = pochhammer(ZZ, 1, a + b, m, None, order)
    return (
        numerator
        * pochhammer(ZZ, 1, a, m, None, order).invert()
        * pochhammer(ZZ, -1, b, m, None, order).invert()
    )


def scan_positivity(a: int, b: int, m: int, order: int) -> ScanResult:
    series = infinite_product_series(a, b, m, order)
    return ScanResult(a, b, m, order, series.first_negative())


def _scan_infinite_tuple(args) -> ScanResult:
    return scan_positivity(*args)


def scan_infinite_grid(
    max_a: int,
    max_b: int,
    max_m: int,
    order: int,
    divisibility_filter: bool = False,
    jobs: int = 1,
) -> list[ScanResult]:
    """Scan the infinite-product family over a parameter box, optionally
    restricted to the conjectured b | a region."""
    grid = [
        (a, b, m, order)
        for a in range(1, max_a + 1)
        for b in range(1, max_b + 1)
        for m in range(1, max_m + 1)
        if not divisibility_filter or a % b == 0
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_infinite_tuple, grid))
    return [_scan_infinite_tuple(t) for t in grid]


def check_equal_ab_identity(a: int, m: int, order: int, enum_limit: int | None = None) -> IdentityReport:
    """For b = a the weighted product collapses:

        (-q^(2a); q^m)_inf / ((-q^a; q^m)_inf (q^a; q^m)_inf)
            = (-q^(2a); q^m)_inf / (q^(2a); q^(2m))_inf

    which makes non-negativity evident.  Checks the identity, the sign of
    every coefficient, and (through enum_limit) the even-minus-odd counts.
    """
    name = f"equal-ab(a={a}, m={m})"
    lhs = infinite_product_series(a, a, m, order)
    rhs = pochhammer(ZZ, 1, 2 * a, m, None, order) * pochhammer(ZZ, -1, 2 * a, 2 * m, None, order).invert()
    n = lhs.first_difference(rhs)
    if n is not None:
        return IdentityReport(name, order, {"n": n}, note="simplified form differs")
    negative = lhs.first_negative()
    if negative is not None:
        return IdentityReport(name, order, {"n": negative[0]}, note="negative coefficient")
    if enum_limit:
        for n in range(enum_limit + 1):
            even, odd = cp_by_parity((a, a, m), n)
            if even - odd != lhs.coefficient(n):
                return IdentityReport(name, order, {"n": n}, note="enumeration differs")
    return IdentityReport(name, order)


def finite_product_series(a: int, b: int, m: int, N: int, M: int, order: int) -> TruncatedSeries:
    """(-q^m; q^m)_(N+M-1) / ((-q^a; q^m)_N (q^b; q^m)_M), exactly.

    N or M may be 0 under the empty-product convention, but not both (the
    top symbol would need a negative length).
    """
    if N < 0 or M < 0 or N + M < 1:
        raise ValueError(f"need N, M >= 0 with N + M >= 1, got N={N}, M={M}")
    return (
        pochhammer(ZZ, 1, m, m, N + M - 1, order)
        * pochhammer(ZZ, 1, a, m, N, order).invert()
        * pochhammer(ZZ, -1, b, m, M, order).invert()
    )


def check_finite_recursion(a: int, b: int, m: int, N: int, M: int, order: int) -> IdentityReport:
    """Verify g(N, M) = g(N, M-1) + q^(m*M - a) * g(N-1, M) as exact series.

    The recursion balances only when a + b = m; for other parameters the
    report records the first differing coefficient.
    """
    if N < 1 or M < 1:
        raise ValueError("recursion needs N, M >= 1")
    name = f"finite-recursion(a={a}, b={b}, m={m}, N={N}, M={M})"
    lhs = finite_product_series(a, b, m, N, M, order)
    rhs = finite_product_series(a, b, m, N, M - 1, order) + finite_product_series(
        a, b, m, N - 1, M, order
    ).shifted(m * M - a)
    n = lhs.first_difference(rhs)
    if n is not None:
        return IdentityReport(name, order, {"n": n})
    return IdentityReport(name, order)


def _scan_finite_tuple(args) -> ScanResult:
    a, b, m, N, M, order = args
    series = finite_product_series(a, b, m, N, M, order)
    return ScanResult(a, b, m, order, series.first_negative(), N=N, M=M, in_scope=N <= M)


def scan_finite_grid(
    a: int,
    b: int,
    m: int,
    max_N: int,
    max_M: int,
    order: int | None = None,
    include_out_of_scope: bool = False,
    allow_any_params: bool = False,
    jobs: int = 1,
) -> list[ScanResult]:
    """Scan the finite products over 1 <= N <= max_N, 1 <= M <= max_M.

    The conjectured region needs b | a and a + b = m, and claims
    non-negativity only for N <= M; other (N, M) cells are scanned just when
    asked and marked out of scope.  Defaults the order to m*(N + M) per cell
    so the interesting low-degree window is always covered.
    """
    if not allow_any_params and (a % b or a + b != m):
        raise ValueError(
            f"(a={a}, b={b}, m={m}) is outside the b | a, a + b = m family; "
            "pass allow_any_params=True to scan it anyway"
        )
    grid = [
        (a, b, m, N, M, order if order is not None else m * (N + M))
        for N in range(1, max_N + 1)
        for M in range(1, max_M + 1)
        if include_out_of_scope or N <= M
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_finite_tuple, grid))
    return [_scan_finite_tuple(t) for t in grid]
