"""Hand-built R1CS for the pour statement.

Public wires, in order: [one, rt, sn_old_1, sn_old_2, cm_new_1, cm_new_2].
For each old coin the circuit re-derives the owner key from the secret key,
recomputes the nested commitment, walks a Merkle authentication path with
multiplexers driven by boolean direction wires up to the public root, and
recomputes the serial number.  New coins get commitment constraints, and a
single addition row enforces value conservation (no fees, no public value).

Built directly with a gate builder rather than the source language: hash
rounds are two multiplication rows each, and several rows write straight
into public wires, neither of which the language frontend can express.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra import Scalar
from ..qap import Qap, r1cs_to_qap
from ..r1cs import ConstraintSystem, Row, WitnessVector
from .mimc import MimcParams

Lc = dict[int, int]  # wire index -> raw integer coefficient

# public wire positions, fixed by construction order
ONE_WIRE = 0
RT_WIRE = 1
SN_WIRES = (2, 3)
CM_NEW_WIRES = (4, 5)


class CircuitBuilder:
    """Accumulates sparse (v, w, k) rows plus a recipe for every wire's
    value, so a witness can be generated from named inputs."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.names: list[str] = ["one"]
        self.public: list[int] = [ONE_WIRE]
        self.rows: list[tuple[Lc, Lc, Lc]] = []
        # per wire: ("one",), ("input", name), or ("mul", left_lc, right_lc)
        self._recipe: list[tuple] = [("one",)]

    def input_wire(self, name: str, public: bool = False) -> int:
        idx = len(self.names)
        self.names.append(name)
        self._recipe.append(("input", name))
        if public:
            self.public.append(idx)
        return idx

    def constrain(self, v: Lc, w: Lc, k: Lc):
        self.rows.append((dict(v), dict(w), dict(k)))

    def mul(self, left: Lc, right: Lc, out: int | None = None) -> int:
        """Row eval(left) * eval(right) = wire[out]; allocates the output
        wire unless an existing one (e.g. a public input) is targeted."""
        if out is None:
            out = len(self.names)
            self.names.append(f"g{len(self.rows)}")
            self._recipe.append(("mul", dict(left), dict(right)))
        self.constrain(left, right, {out: 1})
        return out

    @property
    def num_wires(self) -> int:
        return len(self.names)

    def build(self, public_names: dict[int, str] | None = None) -> ConstraintSystem:
        p = self.modulus
        zero = Scalar(0, p)

        def dense(lc: Lc) -> list[Scalar]:
            vec = [zero] * self.num_wires
            for w, c in lc.items():
                vec[w] = Scalar(c, p)
            return vec

        rows = [Row(dense(v), dense(w), dense(k)) for v, w, k in self.rows]
        return ConstraintSystem(self.num_wires, rows, tuple(self.public), p, list(self.names))

    def witness(self, env: dict[str, int]) -> WitnessVector:
        p = self.modulus
        vals: list[int] = []

        def eval_lc(lc: Lc) -> int:
            return sum(c * vals[w] for w, c in lc.items()) % p

        for recipe in self._recipe:
            if recipe[0] == "one":
                vals.append(1)
            elif recipe[0] == "input":
                name = recipe[1]
                if name not in env:
                    raise ValueError(f"missing witness input {name!r}")
                vals.append(env[name] % p)
            else:
                _, left, right = recipe
                vals.append(eval_lc(left) * eval_lc(right) % p)
        return WitnessVector([Scalar(v, p) for v in vals])


# ---------------------------------------------------------------------------
# Gadgets


def _lc_add(a: Lc, b: Lc, sign: int = 1) -> Lc:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + sign * c
        if not out[w]:
            del out[w]
    return out


def _hash_rounds(cb: CircuitBuilder, params: MimcParams, state: Lc, out: int | None) -> Lc:
    """One permutation call: rounds of x -> (x + c)^3, two rows per round.
    The final cube row may write straight into an existing wire."""
    x = state
    last = len(params.round_constants) - 1
    for i, c in enumerate(params.round_constants):
        u = _lc_add(x, {ONE_WIRE: c})
        sq = cb.mul(u, u)
        cube = cb.mul({sq: 1}, u, out=out if i == last else None)
        x = {cube: 1}
    return x


def _sponge(cb: CircuitBuilder, params: MimcParams, inputs: list[Lc], out: int | None = None) -> Lc:
    state: Lc = {}
    for i, m in enumerate(inputs):
        is_last = i == len(inputs) - 1
        state = _hash_rounds(cb, params, _lc_add(state, m), out if is_last else None)
    return state


@dataclass
class OldCoinWires:
    v: int
    rho: int
    r: int
    a_sk: int
    siblings: list[int]
    bits: list[int]


@dataclass
class NewCoinWires:
    v: int
    rho: int
    r: int
    a_pk: int


@dataclass
class PourLayout:
    """Wire map for the pour circuit plus the witness recipe."""

    depth: int
    old: list[OldCoinWires]
    new: list[NewCoinWires]
    builder: CircuitBuilder

    @property
    def num_wires(self) -> int:
        return self.builder.num_wires

    def witness(self, env: dict[str, int]) -> WitnessVector:
        return self.builder.witness(env)


def old_input_names(i: int, depth: int) -> dict[str, str | list[str]]:
    base = f"old{i}"
    return {
        "v": f"{base}_v",
        "rho": f"{base}_rho",
        "r": f"{base}_r",
        "a_sk": f"{base}_a_sk",
        "siblings": [f"{base}_sib{l}" for l in range(depth)],
        "bits": [f"{base}_bit{l}" for l in range(depth)],
    }


def new_input_names(j: int) -> dict[str, str]:
    base = f"new{j}"
    return {"v": f"{base}_v", "rho": f"{base}_rho", "r": f"{base}_r", "a_pk": f"{base}_a_pk"}


def build_pour_circuit(depth: int, params: MimcParams) -> tuple[ConstraintSystem, PourLayout]:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    cb = CircuitBuilder(params.modulus)
    cb.input_wire("rt", public=True)
    sn_wires = [cb.input_wire(f"sn_old_{i}", public=True) for i in (1, 2)]
    cm_new_wires = [cb.input_wire(f"cm_new_{j}", public=True) for j in (1, 2)]
    assert (cb.public, sn_wires, cm_new_wires) == ([0, 1, 2, 3, 4, 5], list(SN_WIRES), list(CM_NEW_WIRES))

    old_wires = []
    for i in (1, 2):
        names = old_input_names(i, depth)
        wires = OldCoinWires(
            cb.input_wire(names["v"]),
            cb.input_wire(names["rho"]),
            cb.input_wire(names["r"]),
            cb.input_wire(names["a_sk"]),
            [cb.input_wire(n) for n in names["siblings"]],
            [cb.input_wire(n) for n in names["bits"]],
        )
        old_wires.append(wires)

    new_wires = []
    for j in (1, 2):
        names = new_input_names(j)
        new_wires.append(
            NewCoinWires(
                cb.input_wire(names["v"]),
                cb.input_wire(names["rho"]),
                cb.input_wire(names["r"]),
                cb.input_wire(names["a_pk"]),
            )
        )

    for idx, wires in enumerate(old_wires):
        a_sk = {wires.a_sk: 1}
        # owner key re-derivation: a_pk = prf(a_sk, 0)
        a_pk = _sponge(cb, params, [a_sk, {}])
        # nested commitment of the old coin (stays private: it is the leaf)
        k_inner = _sponge(cb, params, [a_pk, {wires.rho: 1}, {wires.r: 1}])
        cm = _sponge(cb, params, [k_inner, {wires.v: 1}])
        # Merkle walk: boolean direction selects the ordered pair per level
        cur = cm
        for level in range(depth):
            b = wires.bits[level]
            sib = {wires.siblings[level]: 1}
            cb.constrain({b: 1}, {b: 1}, {b: 1})  # b * (1 - b) = 0
            m = cb.mul({b: 1}, _lc_add(sib, cur, sign=-1))  # m = b * (sib - cur)
            left = _lc_add(cur, {m: 1})
            right = _lc_add(sib, {m: 1}, sign=-1)
            is_top = level == depth - 1
            cur = _sponge(cb, params, [left, right], out=RT_WIRE if is_top else None)
        # serial number lands on its public wire
        _sponge(cb, params, [a_sk, {wires.rho: 1}], out=SN_WIRES[idx])

    for idx, wires in enumerate(new_wires):
        k_inner = _sponge(cb, params, [{wires.a_pk: 1}, {wires.rho: 1}, {wires.r: 1}])
        _sponge(cb, params, [k_inner, {wires.v: 1}], out=CM_NEW_WIRES[idx])

    # value conservation: v_old_1 + v_old_2 = v_new_1 + v_new_2
    cb.constrain(
        {old_wires[0].v: 1, old_wires[1].v: 1},
        {ONE_WIRE: 1},
        {new_wires[0].v: 1, new_wires[1].v: 1},
    )

    layout = PourLayout(depth, old_wires, new_wires, cb)
    return cb.build(), layout


@dataclass
class PourContext:
    """Everything pour/prove needs for one circuit shape, built once."""

    depth: int
    params: MimcParams
    cs: ConstraintSystem
    layout: PourLayout
    qap: Qap


def build_pour_context(depth: int, params: MimcParams) -> PourContext:
    cs, layout = build_pour_circuit(depth, params)
    return PourContext(depth, params, cs, layout, r1cs_to_qap(cs))
