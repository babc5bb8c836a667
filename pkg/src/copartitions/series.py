"""Exact truncated power series in q over pluggable coefficient rings.

Coefficients are arbitrary-precision integers or sparse marker polynomials
(one variable ``z`` or two variables ``x, y``) with integer coefficients.
Every series carries an explicit truncation order; arithmetic never claims
precision beyond what was computed.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union


class NonUnitConstantTerm(ArithmeticError):
    """Inversion was requested for a series whose constant term is not a unit."""


class IndexBeyondTruncation(IndexError):
    """A coefficient past the truncation order was requested."""


# ---------------------------------------------------------------------------
# sparse marker polynomials


class Poly:
    """Immutable sparse polynomial over the integers in a fixed variable tuple.

    Terms map exponent tuples to nonzero integer coefficients.  Mixed
    arithmetic with plain ints coerces them to constant polynomials.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, int]):
        object.__setattr__(self, "variables", tuple(variables))
        nvars = len(self.variables)
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} does not match variables {self.variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, variables: Sequence[str], value: int) -> "Poly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): int(value)})

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError(f"mixing variables {self.variables} and {other.variables}")
            return other
        if isinstance(other, int):
            return Poly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.variables, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.variables, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exponents: Sequence[int]) -> int:
        """Integer coefficient of the monomial with the given exponent tuple."""
        return self.terms.get(tuple(exponents), 0)

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> int:
        zero_exp = (0,) * len(self.variables)
        return self.terms.get(zero_exp, 0)

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Fully substitute integer values for every variable."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise ValueError(f"no value supplied for {missing}")
        total = 0
        for exps, c in self.terms.items():
            term = c
            for var, e in zip(self.variables, exps):
                term *= values[var] ** e
            total += term
        return total

    def monomial_key(self, exps: tuple) -> str:
        pieces = []
        for var, e in zip(self.variables, exps):
            if e == 1:
                pieces.append(var)
            elif e > 1:
                pieces.append(f"{var}^{e}")
        return "*".join(pieces) if pieces else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            key = self.monomial_key(exps)
            if key == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(key)
            elif c == -1:
                parts.append(f"-{key}")
            else:
                parts.append(f"{c}*{key}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Poly({self})"


Element = Union[int, Poly]


# ---------------------------------------------------------------------------
# coefficient rings


class IntegerRing:
    """Arbitrary-precision integers; the default coefficient ring."""

    zero = 0
    one = 1

    def coerce(self, value) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"not an integer: {value!r}")
        return value

    def unit_inverse(self, value: int) -> int:
        if value in (1, -1):
            return value
        raise NonUnitConstantTerm(f"constant term {value} is not a unit of the integers")

    def element_to_json(self, value: int):
        return str(value)

    def element_from_json(self, data) -> int:
        return int(data)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(IntegerRing)

    def __repr__(self):
        return "IntegerRing()"


class PolynomialRing:
    """Sparse polynomials in the given marker variables, over the integers."""

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)
        if not self.variables:
            raise ValueError("need at least one variable")

    @property
    def zero(self) -> Poly:
        return Poly(self.variables, {})

    @property
    def one(self) -> Poly:
        return Poly.constant(self.variables, 1)

    def var(self, name: str) -> Poly:
        i = self.variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return Poly(self.variables, {exps: 1})

    def coerce(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.variables != self.variables:
                raise TypeError(f"polynomial in {value.variables}, ring over {self.variables}")
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Poly.constant(self.variables, value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def unit_inverse(self, value: Poly) -> Poly:
        if value.is_constant and value.constant_value() in (1, -1):
            return value
        raise NonUnitConstantTerm(f"constant term {value} is not a unit polynomial")

    def element_to_json(self, value: Poly):
        return {value.monomial_key(exps): str(c) for exps, c in sorted(value.terms.items())}

    def element_from_json(self, data) -> Poly:
        terms = {}
        for key, c in data.items():
            exps = [0] * len(self.variables)
            if key != "1":
                for piece in key.split("*"):
                    var, _, power = piece.partition("^")
                    exps[self.variables.index(var)] = int(power) if power else 1
            terms[tuple(exps)] = int(c)
        return Poly(self.variables, terms)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.variables == self.variables

    def __hash__(self):
        return hash((PolynomialRing, self.variables))

    def __repr__(self):
        return f"PolynomialRing({self.variables})"


ZZ = IntegerRing()


def poly_ring(*variables: str) -> PolynomialRing:
    return PolynomialRing(variables)


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """A formal power series in q known exactly through q**order.

    Binary operations require both operands to share a coefficient ring and
    truncate the result to the smaller operand order.
    """

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs: Iterable[Element], order: int | None = None):
        coeffs = [ring.coerce(c) for c in coeffs]
        if order is None:
            if not coeffs:
                raise ValueError("empty coefficient list with no explicit order")
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(coeffs) < order + 1:
            coeffs.extend([ring.zero] * (order + 1 - len(coeffs)))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs[: order + 1]))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def constant(cls, ring, value, order: int) -> "TruncatedSeries":
        return cls(ring, [ring.coerce(value)], order)

    @classmethod
    def one(cls, ring, order: int) -> "TruncatedSeries":
        return cls.constant(ring, ring.one, order)

    @classmethod
    def from_terms(cls, ring, terms: Mapping[int, Element], order: int) -> "TruncatedSeries":
        coeffs = [ring.zero] * (order + 1)
        for n, c in terms.items():
            if 0 <= n <= order:
                coeffs[n] = ring.coerce(c)
        return cls(ring, coeffs, order)

    def coefficient(self, n: int) -> Element:
        if n < 0 or n > self.order:
            raise IndexBeyondTruncation(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def _check_ring(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise TypeError(f"incompatible coefficient rings {self.ring!r} and {other.ring!r}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], order
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        order = min(self.order, other.order)
        zero = self.ring.zero
        out = [zero] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == zero:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b != zero:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, out, order)

    def scaled(self, factor: Element) -> "TruncatedSeries":
        factor = self.ring.coerce(factor)
        return TruncatedSeries(self.ring, [factor * c for c in self.coeffs], self.order)

    def shifted(self, k: int) -> "TruncatedSeries":
        """Multiply by q**k; the shifted series is exact through order + k."""
        if k < 0:
            raise ValueError("negative shift")
        return TruncatedSeries(
            self.ring, [self.ring.zero] * k + list(self.coeffs), self.order + k
        )

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse via the standard triangular recurrence."""
        c0_inv = self.ring.unit_inverse(self.coeffs[0])
        zero = self.ring.zero
        out = [zero] * (self.order + 1)
        out[0] = c0_inv
        for n in range(1, self.order + 1):
            acc = zero
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if ck != zero:
                    acc = acc + ck * out[n - k]
            out[n] = -(c0_inv * acc)
        return TruncatedSeries(self.ring, out, self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.order, self.coeffs))

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        """Smallest n (through the common order) where coefficients differ."""
        self._check_ring(other)
        for n in range(min(self.order, other.order) + 1):
            if self.coeffs[n] != other.coeffs[n]:
                return n
        return None

    def first_negative(self) -> tuple[int, int] | None:
        """First (n, value) with a negative integer coefficient, if any."""
        if self.ring != ZZ:
            raise TypeError("sign scan needs integer coefficients")
        for n, c in enumerate(self.coeffs):
            if c < 0:
                return n, c
        return None

    def evaluated(self, values: Mapping[str, int]) -> "TruncatedSeries":
        """Substitute integers for every marker variable, landing in ZZ."""
        if not isinstance(self.ring, PolynomialRing):
            raise TypeError("evaluation needs polynomial coefficients")
        return TruncatedSeries(ZZ, [c.evaluate(values) for c in self.coeffs], self.order)

    def marker_component(self, exponents: Sequence[int]) -> "TruncatedSeries":
        """Extract one monomial's integer coefficient from every q-coefficient."""
        if not isinstance(self.ring, PolynomialRing):
            raise TypeError("marker extraction needs polynomial coefficients")
        return TruncatedSeries(ZZ, [c.coefficient(exponents) for c in self.coeffs], self.order)

    def to_json(self) -> dict:
        data = {"order": self.order, "coeffs": [self.ring.element_to_json(c) for c in self.coeffs]}
        if isinstance(self.ring, PolynomialRing):
            data["variables"] = list(self.ring.variables)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        ring = PolynomialRing(data["variables"]) if "variables" in data else ZZ
        coeffs = [ring.element_from_json(c) for c in data["coeffs"]]
        return cls(ring, coeffs, data["order"])

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            q = "1" if n == 0 else ("q" if n == 1 else f"q^{n}")
            if isinstance(c, Poly):
                text = str(c)
                if not c.is_constant or text.startswith("-"):
                    text = f"({text})"
                parts.append(q if text == "1" and n else (text if n == 0 else f"{text}*{q}"))
            elif n == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(q)
            elif c == -1:
                parts.append(f"-{q}")
            else:
                parts.append(f"{c}*{q}")
        if not parts:
            return f"O(q^{self.order + 1})"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out + f" + O(q^{self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


def pochhammer(ring, u: Element, first_exp: int, step: int, count: int | None, order: int) -> TruncatedSeries:
    """Product of (1 + u*q**(first_exp + j*step)) for j = 0 .. count-1, through q**order.

    ``count=None`` means the infinite product: factors whose exponent exceeds
    the truncation order are identically 1 there and are skipped.  Sign
    conventions for the classical symbols: (q^c; q^m)_k needs u = -1 and
    (-q^c; q^m)_k needs u = +1.
    """
    if first_exp < 1 or step < 1:
        raise ValueError("exponents must start at 1 or higher and step by at least 1")
    if order < 0:
        raise ValueError("order must be non-negative")
    if count is not None and count < 0:
        raise ValueError("count must be non-negative")
    u = ring.coerce(u)
    zero = ring.zero
    coeffs = [ring.one] + [zero] * order
    j = 0
    exp = first_exp
    while (count is None or j < count) and exp <= order:
        # multiply in place by (1 + u*q^exp); descending keeps lower terms unread
        for i in range(order, exp - 1, -1):
            low = coeffs[i - exp]
            if low != zero:
                coeffs[i] = coeffs[i] + u * low
        j += 1
        exp += step
    return TruncatedSeries(ring, coeffs, order)
