"""Setup / Prove / Verify over a pedagogical homomorphic-hiding group.

INSECURE BY CONSTRUCTION.  Group elements here store their exponent and
merely hide it behind the API, so discrete log is trivial; the point is to
make every homomorphic identity exactly testable and the bilinear pairing
a one-line product in the exponent.  The artifact demonstrates protocol
structure (encrypted powers, witness-weighted combinations, the division
check moved into the exponent), not cryptographic strength.

The proof is a fixed 4-element tuple (pi_v, pi_w, pi_k, pi_h).  There are
no knowledge-of-exponent shifts and no zero-knowledge randomizers: proofs
are complete and reject the tamperings exercised in the tests, but they
are neither hiding nor knowledge-sound against algebraic adversaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import Scalar
from .qap import NotDivisible, Qap, combine_with_witness, compute_h, target_poly
from .r1cs import WitnessVector

INSECURE_HEADER = "insecure-demo"


class UnsatisfiedWitness(Exception):
    """The witness does not satisfy the circuit; no proof exists for it."""


class HHGroup:
    """Prime-order group with additive exponents: encode(x) plays g^x.

    combine multiplies elements (adds exponents), scale exponentiates,
    pair maps into a target group where exponents multiply.  op_count
    tallies group operations so tests can assert cost shapes.
    """

    def __init__(self, order: int):
        self.order = order
        self.op_count = 0

    def _exponent(self, x) -> int:
        if isinstance(x, Scalar):
            if x.modulus is None:
                raise ValueError("encoding requires a finite-field scalar")
            if x.modulus != self.order:
                raise ValueError("scalar modulus does not match group order")
            return x.value
        return x % self.order

    def encode(self, x) -> "HHElement":
        return HHElement(self, self._exponent(x))

    def encode_target(self, x) -> "HHTargetElement":
        return HHTargetElement(self, self._exponent(x))

    @property
    def identity(self) -> "HHElement":
        return HHElement(self, 0)

    @property
    def generator(self) -> "HHElement":
        return HHElement(self, 1)

    def element_from_str(self, text: str) -> "HHElement":
        return HHElement(self, int(text) % self.order)

    def _compatible(self, other: "HHGroup"):
        if other.order != self.order:
            raise ValueError("group context mismatch")


class HHElement:
    __slots__ = ("group", "_exp")

    def __init__(self, group: HHGroup, exp: int):
        self.group = group
        self._exp = exp

    def combine(self, other: "HHElement") -> "HHElement":
        self.group._compatible(other.group)
        self.group.op_count += 1
        return HHElement(self.group, (self._exp + other._exp) % self.group.order)

    def scale(self, factor) -> "HHElement":
        self.group.op_count += 1
        return HHElement(self.group, self._exp * self.group._exponent(factor) % self.group.order)

    def pair(self, other: "HHElement") -> "HHTargetElement":
        self.group._compatible(other.group)
        self.group.op_count += 1
        return HHTargetElement(self.group, self._exp * other._exp % self.group.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HHElement)
            and self.group.order == other.group.order
            and self._exp == other._exp
        )

    def __hash__(self):
        return hash((self._exp, self.group.order))

    def serialize(self) -> str:
        return str(self._exp)

    def __repr__(self):
        return f"HHElement(<hidden>, order {self.group.order.bit_length()} bits)"


class HHTargetElement:
    __slots__ = ("group", "_exp")

    def __init__(self, group: HHGroup, exp: int):
        self.group = group
        self._exp = exp

    def combine(self, other: "HHTargetElement") -> "HHTargetElement":
        self.group._compatible(other.group)
        self.group.op_count += 1
        return HHTargetElement(self.group, (self._exp + other._exp) % self.group.order)

    def scale(self, factor) -> "HHTargetElement":
        self.group.op_count += 1
        return HHTargetElement(self.group, self._exp * self.group._exponent(factor) % self.group.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HHTargetElement)
            and self.group.order == other.group.order
            and self._exp == other._exp
        )

    def __hash__(self):
        return hash(("T", self._exp, self.group.order))

    def serialize(self) -> str:
        return str(self._exp)


# ---------------------------------------------------------------------------
# Keys and proofs


@dataclass
class SnarkParams:
    lam: int = 128  # informational at desk scale
    seed: int = 0


@dataclass
class ProvingKey:
    group: HHGroup
    powers: list[HHElement]  # encode(s^0) .. encode(s^d)
    v_enc: dict[int, HHElement]  # private wires only
    w_enc: dict[int, HHElement]
    k_enc: dict[int, HHElement]
    digest: str
    num_wires: int
    public: tuple[int, ...]

    def to_json(self) -> dict:
        def enc(d):
            return {str(i): e.serialize() for i, e in sorted(d.items())}

        return {
            "header": INSECURE_HEADER,
            "digest": self.digest,
            "modulus": str(self.group.order),
            "num_wires": self.num_wires,
            "public": list(self.public),
            "powers": [e.serialize() for e in self.powers],
            "v_enc": enc(self.v_enc),
            "w_enc": enc(self.w_enc),
            "k_enc": enc(self.k_enc),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProvingKey":
        group = HHGroup(int(data["modulus"]))

        def dec(d):
            return {int(i): group.element_from_str(s) for i, s in d.items()}

        return cls(
            group,
            [group.element_from_str(s) for s in data["powers"]],
            dec(data["v_enc"]),
            dec(data["w_enc"]),
            dec(data["k_enc"]),
            data["digest"],
            data["num_wires"],
            tuple(data["public"]),
        )


@dataclass
class VerifyingKey:
    group: HHGroup
    z_enc: HHElement
    one_enc: HHElement
    v_enc: dict[int, HHElement]  # public wires only
    w_enc: dict[int, HHElement]
    k_enc: dict[int, HHElement]
    digest: str
    public: tuple[int, ...]
    public_names: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(d):
            return {str(i): e.serialize() for i, e in sorted(d.items())}

        return {
            "header": INSECURE_HEADER,
            "digest": self.digest,
            "modulus": str(self.group.order),
            "public": list(self.public),
            "names": {str(i): n for i, n in sorted(self.public_names.items())},
            "z_enc": self.z_enc.serialize(),
            "one_enc": self.one_enc.serialize(),
            "v_enc": enc(self.v_enc),
            "w_enc": enc(self.w_enc),
            "k_enc": enc(self.k_enc),
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerifyingKey":
        group = HHGroup(int(data["modulus"]))

        def dec(d):
            return {int(i): group.element_from_str(s) for i, s in d.items()}

        return cls(
            group,
            group.element_from_str(data["z_enc"]),
            group.element_from_str(data["one_enc"]),
            dec(data["v_enc"]),
            dec(data["w_enc"]),
            dec(data["k_enc"]),
            data["digest"],
            tuple(data["public"]),
            {int(i): n for i, n in data["names"].items()},
        )


@dataclass
class Proof:
    pi_v: HHElement
    pi_w: HHElement
    pi_k: HHElement
    pi_h: HHElement
    digest: str

    def elements(self) -> tuple[HHElement, HHElement, HHElement, HHElement]:
        return (self.pi_v, self.pi_w, self.pi_k, self.pi_h)

    def to_json(self) -> dict:
        return {
            "header": INSECURE_HEADER,
            "digest": self.digest,
            "modulus": str(self.pi_v.group.order),
            "pi_v": self.pi_v.serialize(),
            "pi_w": self.pi_w.serialize(),
            "pi_k": self.pi_k.serialize(),
            "pi_h": self.pi_h.serialize(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Proof":
        group = HHGroup(int(data["modulus"]))
        e = group.element_from_str
        return cls(e(data["pi_v"]), e(data["pi_w"]), e(data["pi_k"]), e(data["pi_h"]), data["digest"])


# ---------------------------------------------------------------------------
# KeyGen / Prove / Verify


def setup(q: Qap, params: SnarkParams) -> tuple[ProvingKey, VerifyingKey]:
    """Sample the secret evaluation point from the seed, emit both keys,
    and drop the point.  Power count covers deg(V*W) and deg(Z)."""
    if q.modulus is None:
        raise ValueError("setup requires a field-mode QAP")
    p = q.modulus
    group = HHGroup(p)
    rng = random.Random(params.seed)
    s = rng.randrange(1, p)

    degree = q.num_gates + max(q.num_gates - 2, 0)
    powers = []
    acc = 1
    for _ in range(degree + 1):
        powers.append(group.encode(acc))
        acc = acc * s % p

    s_scalar = Scalar(s, p)
    public = set(q.public)

    def wire_encodings(polys, wanted):
        return {j: group.encode(polys[j](s_scalar)) for j in range(q.num_wires) if (j in public) == wanted}

    pk = ProvingKey(
        group,
        powers,
        wire_encodings(q.v_polys, False),
        wire_encodings(q.w_polys, False),
        wire_encodings(q.k_polys, False),
        q.digest,
        q.num_wires,
        q.public,
    )
    names = {}
    if q.wire_names:
        names = {j: q.wire_names[j] for j in q.public}
    vk = VerifyingKey(
        group,
        group.encode(q.z(s_scalar)),
        group.encode(1),
        wire_encodings(q.v_polys, True),
        wire_encodings(q.w_polys, True),
        wire_encodings(q.k_polys, True),
        q.digest,
        q.public,
        names,
    )
    return pk, vk


def prove(pk: ProvingKey, q: Qap, t: WitnessVector) -> Proof:
    """Witness-weighted private-wire combinations plus the encoded quotient.

    H(s), like V(s), W(s) and K(s), is a linear combination of the
    encrypted powers, so everything is built from combine/scale alone.
    """
    if q.digest != pk.digest:
        raise ValueError("circuit digest mismatch between proving key and QAP")
    v_poly, w_poly, k_poly = combine_with_witness(q, t)
    try:
        h = compute_h(target_poly(v_poly, w_poly, k_poly), q.z)
    except NotDivisible as exc:
        raise UnsatisfiedWitness("witness does not satisfy the circuit") from exc

    group = pk.group
    pi_h = group.identity
    for i, c in enumerate(h.coeffs):
        if c.value:
            pi_h = pi_h.combine(pk.powers[i].scale(c))

    def weighted(enc: dict[int, HHElement]) -> HHElement:
        acc = group.identity
        for j, e in enc.items():
            tj = t[j]
            if tj.value:
                acc = acc.combine(e.scale(tj))
        return acc

    return Proof(weighted(pk.v_enc), weighted(pk.w_enc), weighted(pk.k_enc), pi_h, pk.digest)


def verify(vk: VerifyingKey, public_inputs: dict[int, Scalar], proof: Proof) -> bool:
    """Accept iff pair(V, W) = pair(H, Z) + pair(K, 1) in the target group,
    with the public-wire contributions folded in by the verifier."""
    if proof.digest != vk.digest:
        raise ValueError("circuit digest mismatch between proof and verifying key")
    if set(public_inputs) != set(vk.public):
        raise ValueError("public inputs must cover exactly the public wires")
    one_value = public_inputs[0]
    if one_value.modulus != vk.group.order or one_value.value != 1:
        raise ValueError("the `one` wire must map to 1")

    def fold(base: HHElement, enc: dict[int, HHElement]) -> HHElement:
        acc = base
        for j in sorted(enc):
            acc = acc.combine(enc[j].scale(public_inputs[j]))
        return acc

    v_full = fold(proof.pi_v, vk.v_enc)
    w_full = fold(proof.pi_w, vk.w_enc)
    k_full = fold(proof.pi_k, vk.k_enc)

    lhs = v_full.pair(w_full)
    rhs = proof.pi_h.pair(vk.z_enc).combine(k_full.pair(vk.one_enc))
    return lhs == rhs
