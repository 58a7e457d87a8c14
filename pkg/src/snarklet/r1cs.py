"""Rank-1 constraint systems: gate compilation, witnesses, satisfaction.

Each gate becomes one row of vectors (v, w, k); an assignment t satisfies a
row when (t.v)(t.w) - (t.k) = 0.  Vectors are stored dense (desk scale) but
zero entries share one Scalar object, so sparse circuits stay cheap.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .algebra import Scalar
from .frontend import FlatProgram


class Row(NamedTuple):
    v: list[Scalar]
    w: list[Scalar]
    k: list[Scalar]


@dataclass
class ConstraintSystem:
    num_wires: int
    rows: list[Row]
    public: tuple[int, ...]
    modulus: int | None
    wire_names: list[str] | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "num_wires": self.num_wires,
            "public": list(self.public),
            "modulus": None if self.modulus is None else str(self.modulus),
            "wires": self.wire_names,
            "rows": [
                {
                    "v": [c.to_str() for c in r.v],
                    "w": [c.to_str() for c in r.w],
                    "k": [c.to_str() for c in r.k],
                }
                for r in self.rows
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstraintSystem":
        modulus = None if data["modulus"] is None else int(data["modulus"])

        def vec(items):
            return [Scalar.from_str(s, modulus) for s in items]

        rows = [Row(vec(r["v"]), vec(r["w"]), vec(r["k"])) for r in data["rows"]]
        return cls(data["num_wires"], rows, tuple(data["public"]), modulus, data.get("wires"))

    def digest(self) -> str:
        """Canonical fingerprint of the constraint math (sparse form)."""
        payload = {
            "modulus": None if self.modulus is None else str(self.modulus),
            "num_wires": self.num_wires,
            "public": sorted(self.public),
            "rows": [
                [
                    {str(i): c.to_str() for i, c in enumerate(vec) if c.value}
                    for vec in (r.v, r.w, r.k)
                ]
                for r in self.rows
            ],
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class WitnessVector:
    values: list[Scalar]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i) -> Scalar:
        return self.values[i]

    def replaced(self, index: int, value: Scalar) -> "WitnessVector":
        out = list(self.values)
        out[index] = value
        return WitnessVector(out)

    def to_json(self) -> dict:
        return {"t": [c.to_str() for c in self.values]}

    @classmethod
    def from_json(cls, data: dict, modulus: int | None) -> "WitnessVector":
        return cls([Scalar.from_str(s, modulus) for s in data["t"]])


def compile_to_r1cs(fp: FlatProgram) -> ConstraintSystem:
    """One row per gate, in gate order.

    Mul gate L*R = out: v = L's coefficients, w = R's, k = unit at out.
    Add gates arrive from the frontend with right = the one wire, so the
    same mapping covers both kinds.
    """
    zero = Scalar(0, fp.modulus)
    one = Scalar(1, fp.modulus)
    n = fp.num_wires

    def dense(lc: dict[int, Scalar]) -> list[Scalar]:
        vec = [zero] * n
        for w, c in lc.items():
            vec[w] = c
        return vec

    rows = [Row(dense(g.left), dense(g.right), dense({g.out: one})) for g in fp.gates]
    return ConstraintSystem(n, rows, fp.public, fp.modulus, list(fp.wires))


def generate_witness(fp: FlatProgram, input_value: Scalar) -> WitnessVector:
    """Forward-evaluate the gates to fill every wire; t[0] = 1."""
    if input_value.modulus != fp.modulus:
        raise ValueError("input scalar mode does not match the circuit")
    zero = Scalar(0, fp.modulus)
    t: list[Scalar] = [zero] * fp.num_wires
    t[0] = Scalar(1, fp.modulus)
    t[FlatProgram.INPUT_WIRE] = input_value

    def eval_lc(lc: dict[int, Scalar]) -> Scalar:
        acc = zero
        for w, c in lc.items():
            acc = acc + c * t[w]
        return acc

    for g in fp.gates:
        t[g.out] = eval_lc(g.left) * eval_lc(g.right)
    return WitnessVector(t)


def _dot(vec: Sequence[Scalar], t: Sequence[Scalar], modulus: int | None):
    acc = 0
    for c, tv in zip(vec, t):
        if c.value:
            acc += c.value * tv.value
    return acc % modulus if modulus is not None else acc


def is_satisfied(cs: ConstraintSystem, t: WitnessVector) -> bool:
    """True iff every row satisfies (t.v)(t.w) - (t.k) = 0 exactly."""
    if len(t) != cs.num_wires:
        raise ValueError(f"witness length {len(t)} != {cs.num_wires} wires")
    p = cs.modulus
    for row in cs.rows:
        tv = _dot(row.v, t.values, p)
        tw = _dot(row.w, t.values, p)
        tk = _dot(row.k, t.values, p)
        lhs = tv * tw - tk
        if (lhs % p if p is not None else lhs) != 0:
            return False
    return True
