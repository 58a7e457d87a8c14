"""R1CS to quadratic-arithmetic-program transform and the divisibility check.

Each wire's column across the constraint rows is interpolated over gate
nodes 1..n into one polynomial; a witness then collapses the whole system
into V(x) * W(x) - K(x), which is divisible by the vanishing polynomial of
the nodes exactly when every row is satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import LagrangeBasis, Poly, Scalar, vanishing_poly
from .r1cs import ConstraintSystem, WitnessVector


class NotDivisible(Exception):
    """T % Z is nonzero: the witness does not satisfy the constraints."""

    def __init__(self, remainder: Poly):
        super().__init__(f"target polynomial is not divisible (remainder degree {remainder.degree})")
        self.remainder = remainder


@dataclass
class Qap:
    v_polys: list[Poly]
    w_polys: list[Poly]
    k_polys: list[Poly]
    z: Poly
    num_gates: int
    public: tuple[int, ...]
    modulus: int | None
    digest: str
    wire_names: list[str] | None = field(default=None)

    @property
    def num_wires(self) -> int:
        return len(self.v_polys)

    def to_json(self) -> dict:
        return {
            "num_gates": self.num_gates,
            "public": list(self.public),
            "modulus": None if self.modulus is None else str(self.modulus),
            "digest": self.digest,
            "wires": self.wire_names,
            "v_polys": [p.to_list() for p in self.v_polys],
            "w_polys": [p.to_list() for p in self.w_polys],
            "k_polys": [p.to_list() for p in self.k_polys],
            "z": self.z.to_list(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Qap":
        modulus = None if data["modulus"] is None else int(data["modulus"])

        def polys(key):
            return [Poly.from_list(items, modulus) for items in data[key]]

        return cls(
            polys("v_polys"),
            polys("w_polys"),
            polys("k_polys"),
            Poly.from_list(data["z"], modulus),
            data["num_gates"],
            tuple(data["public"]),
            modulus,
            data["digest"],
            data.get("wires"),
        )


def r1cs_to_qap(cs: ConstraintSystem) -> Qap:
    """Interpolate every wire column over nodes 1..num_gates.

    The result depends only on the constraint system, never on a witness,
    so it can be computed once per circuit and reused.
    """
    if not cs.rows:
        raise ValueError("constraint system has no rows")
    n = len(cs.rows)
    nodes = [Scalar(i, cs.modulus) for i in range(1, n + 1)]
    basis = LagrangeBasis(nodes)

    def column_polys(pick) -> list[Poly]:
        out = []
        for j in range(cs.num_wires):
            col = {}
            for i, row in enumerate(cs.rows):
                c = pick(row)[j]
                if c.value:
                    col[i] = c
            out.append(basis.combine(col))
        return out

    return Qap(
        column_polys(lambda r: r.v),
        column_polys(lambda r: r.w),
        column_polys(lambda r: r.k),
        vanishing_poly(nodes),
        n,
        cs.public,
        cs.modulus,
        cs.digest(),
        cs.wire_names,
    )


def _weighted_sum(polys: list[Poly], t: WitnessVector, length: int, modulus: int | None) -> Poly:
    acc = [0] * length
    for tj, poly in zip(t.values, polys):
        tv = tj.value
        if not tv or not poly.coeffs:
            continue
        for d, c in enumerate(poly.coeffs):
            if c.value:
                acc[d] += tv * c.value
    return Poly(Scalar(v, modulus) for v in acc)


def combine_with_witness(q: Qap, t: WitnessVector) -> tuple[Poly, Poly, Poly]:
    """V = sum t[j] * v_j, likewise W and K."""
    if len(t) != q.num_wires:
        raise ValueError(f"witness length {len(t)} != {q.num_wires} wires")
    return (
        _weighted_sum(q.v_polys, t, q.num_gates, q.modulus),
        _weighted_sum(q.w_polys, t, q.num_gates, q.modulus),
        _weighted_sum(q.k_polys, t, q.num_gates, q.modulus),
    )


def target_poly(v: Poly, w: Poly, k: Poly) -> Poly:
    return v * w - k


def compute_h(t: Poly, z: Poly) -> Poly:
    """Quotient T / Z, raising NotDivisible when a remainder survives."""
    quotient, remainder = divmod(t, z)
    if not remainder.is_zero():
        raise NotDivisible(remainder)
    return quotient
