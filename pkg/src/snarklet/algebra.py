"""Exact arithmetic substrate: dual-mode scalars and dense polynomials.

A Scalar is either an element of a prime field GF(p) or an exact rational.
Rational mode exists so small worked examples can be carried out with the
same code paths and printed as decimals; field mode is what the proving
pipeline runs on.  The two modes never mix inside one computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

# Curve1174's prime 2^251 - 9.  Large, standard, and p % 3 == 2, so cubing
# is a permutation of the field (the ledger's hash relies on that).
DEFAULT_MODULUS = 2**251 - 9


class Scalar:
    """An exact number: an element of GF(p) (modulus=p) or a rational (modulus=None).

    Field mode stores an int in [0, p); rational mode stores a reduced
    Fraction with positive denominator.  Instances are immutable.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int | Fraction, modulus: int | None = None):
        if modulus is None:
            object.__setattr__(self, "value", value if isinstance(value, Fraction) else Fraction(value))
        else:
            object.__setattr__(self, "value", value % modulus)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, val):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def field(cls, value: int, modulus: int = DEFAULT_MODULUS) -> "Scalar":
        return cls(value, modulus)

    @classmethod
    def rational(cls, numerator: int | Fraction, denominator: int = 1) -> "Scalar":
        return cls(Fraction(numerator, denominator), None)

    @property
    def zero(self) -> "Scalar":
        return Scalar(0, self.modulus)

    @property
    def one(self) -> "Scalar":
        return Scalar(1, self.modulus)

    def _coerce(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError(f"scalar mode mismatch: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        return Scalar(self.value + other.value, self.modulus)

    def __sub__(self, other) -> "Scalar":
        other = self._coerce(other)
        return Scalar(self.value - other.value, self.modulus)

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        return Scalar(self.value * other.value, self.modulus)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.value, self.modulus)

    def inverse(self) -> "Scalar":
        if not self.value:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return Scalar(Fraction(1) / self.value, None)
        return Scalar(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other) -> "Scalar":
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.modulus is None:
            return Scalar(self.value**exponent, None)
        return Scalar(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scalar)
            and self.modulus == other.modulus
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __repr__(self):
        if self.modulus is None:
            return f"Scalar({self.value!s}, rational)"
        return f"Scalar({self.value}, mod {self.modulus})"

    def to_str(self) -> str:
        """Serialized form: decimal for field mode, "num/den" for rational."""
        if self.modulus is None:
            return f"{self.value.numerator}/{self.value.denominator}"
        return str(self.value)

    @classmethod
    def from_str(cls, text: str, modulus: int | None) -> "Scalar":
        if modulus is None:
            num, _, den = text.partition("/")
            return cls(Fraction(int(num), int(den) if den else 1), None)
        return cls(int(text), modulus)

    def as_float(self) -> float:
        """Decimal rendering for worked-example tables (rational mode only)."""
        if self.modulus is not None:
            raise ValueError("decimal rendering is a rational-mode concern")
        return float(self.value)


def _strip(values: list) -> list:
    while values and not values[-1]:
        values.pop()
    return values


class Poly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of x^i.

    Canonical form never has a trailing zero coefficient; the zero
    polynomial has no coefficients at all and degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = list(coeffs)
        while cs and not cs[-1].value:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, val):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def from_ints(cls, values: Iterable[int], modulus: int | None = DEFAULT_MODULUS) -> "Poly":
        return cls(Scalar(v, modulus) for v in values)

    @property
    def modulus(self) -> int | None:
        if not self.coeffs:
            raise ValueError("zero polynomial has no fixed mode")
        return self.coeffs[0].modulus

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_mode(self, other: "Poly"):
        if self.coeffs and other.coeffs and self.coeffs[0].modulus != other.coeffs[0].modulus:
            raise ValueError("polynomial mode mismatch")

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        self._check_mode(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_mode(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        p = self.coeffs[0].modulus
        a = [c.value for c in self.coeffs]
        b = [c.value for c in other.coeffs]
        # accumulate raw values, reduce once at the end
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Poly(Scalar(v, p) for v in out)

    def scale(self, factor: Scalar) -> "Poly":
        if self.coeffs:
            self.coeffs[0]._coerce(factor)
        if not factor.value:
            return Poly.zero()
        return Poly(c * factor for c in self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact long division: self = q * other + r with deg r < deg other."""
        self._check_mode(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if len(self.coeffs) < len(other.coeffs):
            return Poly.zero(), self
        p = other.coeffs[0].modulus
        rem = [c.value for c in self.coeffs]
        den = [c.value for c in other.coeffs]
        if p is None:
            inv_lead = Fraction(1) / den[-1]
        else:
            inv_lead = pow(den[-1], -1, p)
        quot = [0] * (len(rem) - len(den) + 1)
        for shift in range(len(quot) - 1, -1, -1):
            factor = rem[shift + len(den) - 1] * inv_lead
            if p is not None:
                factor %= p
            quot[shift] = factor
            if factor:
                for i, dc in enumerate(den):
                    if dc:
                        rem[shift + i] -= factor * dc
                        if p is not None:
                            rem[shift + i] %= p
        return (
            Poly(Scalar(v, p) for v in quot),
            Poly(Scalar(v, p) for v in rem[: len(den) - 1]),
        )

    def __call__(self, x: Scalar) -> Scalar:
        """Horner evaluation at x."""
        if not self.coeffs:
            return x.zero
        x.zero._coerce(self.coeffs[0])
        p = x.modulus
        acc = 0
        xv = x.value
        for c in reversed(self.coeffs):
            acc = acc * xv + c.value
            if p is not None:
                acc %= p
        return Scalar(acc, p)

    def to_list(self) -> list[str]:
        return [c.to_str() for c in self.coeffs]

    @classmethod
    def from_list(cls, items: Sequence[str], modulus: int | None) -> "Poly":
        return cls(Scalar.from_str(s, modulus) for s in items)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        body = ", ".join(c.to_str() for c in self.coeffs)
        return f"Poly([{body}])"


def vanishing_poly(nodes: Sequence[Scalar]) -> Poly:
    """Monic product of (x - node) over distinct nodes."""
    if not nodes:
        raise ValueError("need at least one node")
    if len({n.value for n in nodes}) != len(nodes):
        raise ValueError("duplicate nodes")
    p = nodes[0].modulus
    acc = [1]
    for n in nodes:
        n._coerce(nodes[0])
        r = n.value
        nxt = [0] * (len(acc) + 1)
        for d, c in enumerate(acc):
            nxt[d] -= c * r
            nxt[d + 1] += c
        if p is not None:
            nxt = [v % p for v in nxt]
        acc = nxt
    return Poly(Scalar(v, p) for v in acc)


class LagrangeBasis:
    """Normalised Lagrange basis polynomials over a fixed node set.

    basis[i] evaluates to 1 at nodes[i] and 0 at every other node, so a
    polynomial through points (nodes[i], y_i) is just sum(y_i * basis[i]).
    Precomputing the basis once makes interpolating many columns over the
    same nodes cheap.
    """

    def __init__(self, nodes: Sequence[Scalar]):
        if not nodes:
            raise ValueError("need at least one node")
        if len({n.value for n in nodes}) != len(nodes):
            raise ValueError("duplicate interpolation nodes")
        for n in nodes[1:]:
            nodes[0]._coerce(n)
        self.nodes = list(nodes)
        self.modulus = nodes[0].modulus
        p = self.modulus
        full = [c.value for c in vanishing_poly(nodes).coeffs]
        self._basis: list[list] = []
        for ni in nodes:
            r = ni.value
            # synthetic division of the monic product by (x - r)
            n = len(full) - 1
            q = [0] * n
            q[n - 1] = full[n]
            for k in range(n - 2, -1, -1):
                q[k] = full[k + 1] + r * q[k + 1]
                if p is not None:
                    q[k] %= p
            # normalise so the basis evaluates to one at its own node
            acc = 0
            for c in reversed(q):
                acc = acc * r + c
                if p is not None:
                    acc %= p
            inv = (Fraction(1) / acc) if p is None else pow(acc, -1, p)
            if p is None:
                self._basis.append([c * inv for c in q])
            else:
                self._basis.append([c * inv % p for c in q])

    def combine(self, ys: Mapping[int, Scalar] | Sequence[Scalar]) -> Poly:
        """Interpolating polynomial for y-values keyed by node position.

        Sequences give a y per node; mappings may omit zero positions.
        """
        if not isinstance(ys, Mapping):
            ys = dict(enumerate(ys))
        p = self.modulus
        out = [0] * len(self.nodes)
        for i, y in ys.items():
            y._coerce(self.nodes[0])
            yv = y.value
            if not yv:
                continue
            row = self._basis[i]
            for d, c in enumerate(row):
                if c:
                    out[d] += yv * c
        return Poly(Scalar(v, p) for v in out)


def lagrange_interpolate(points: Sequence[tuple[Scalar, Scalar]]) -> Poly:
    """Unique polynomial of degree < n through n points with distinct x."""
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    return LagrangeBasis(xs).combine(ys)
