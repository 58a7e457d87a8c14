"""Hybrid coin encryption and signatures over the pedagogical group.

encrypt_coin is ECIES-shaped: an ephemeral Diffie-Hellman share derives a
key, the message scalars are masked by a hash stream, and a hash tag
authenticates the result (decryption returns None on any mismatch, which
ledger scanning relies on).  sign is Schnorr-shaped with a derived nonce.
Both inherit the group's toy security: demo only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..algebra import Scalar
from ..snark import HHElement, HHGroup
from .mimc import MimcParams, mimc_hash


def element_to_scalar(params: MimcParams, element: HHElement) -> Scalar:
    """Map a group element's serialized form into the hash field."""
    return Scalar(int(element.serialize()), params.modulus)


@dataclass(frozen=True)
class Ciphertext:
    ephemeral: HHElement
    words: tuple[Scalar, ...]
    tag: Scalar

    def to_json(self) -> dict:
        return {
            "ephemeral": self.ephemeral.serialize(),
            "words": [w.to_str() for w in self.words],
            "tag": self.tag.to_str(),
        }

    @classmethod
    def from_json(cls, data: dict, group: HHGroup) -> "Ciphertext":
        return cls(
            group.element_from_str(data["ephemeral"]),
            tuple(Scalar(int(w), group.order) for w in data["words"]),
            Scalar(int(data["tag"]), group.order),
        )


def _stream_key(params: MimcParams, shared: HHElement) -> Scalar:
    return mimc_hash(params, [element_to_scalar(params, shared)])


def _tag(params: MimcParams, key: Scalar, words: Sequence[Scalar]) -> Scalar:
    return mimc_hash(params, [key, *words])


def encrypt_coin(
    params: MimcParams,
    group: HHGroup,
    enc_pk: HHElement,
    plain: Sequence[Scalar],
    ephemeral_scalar: Scalar,
) -> Ciphertext:
    shared = enc_pk.scale(ephemeral_scalar)
    key = _stream_key(params, shared)
    words = tuple(
        m + mimc_hash(params, [key, Scalar(i, params.modulus)])
        for i, m in enumerate(plain, start=1)
    )
    return Ciphertext(group.encode(ephemeral_scalar), words, _tag(params, key, words))


def try_decrypt(params: MimcParams, enc_sk: Scalar, ct: Ciphertext) -> tuple[Scalar, ...] | None:
    shared = ct.ephemeral.scale(enc_sk)
    key = _stream_key(params, shared)
    if _tag(params, key, ct.words) != ct.tag:
        return None
    return tuple(
        w - mimc_hash(params, [key, Scalar(i, params.modulus)])
        for i, w in enumerate(ct.words, start=1)
    )


@dataclass(frozen=True)
class Signature:
    commitment: HHElement  # R = g^nonce
    response: Scalar  # s = nonce + e * sk

    def to_json(self) -> dict:
        return {"R": self.commitment.serialize(), "s": self.response.to_str()}

    @classmethod
    def from_json(cls, data: dict, group: HHGroup) -> "Signature":
        return cls(group.element_from_str(data["R"]), Scalar(int(data["s"]), group.order))


def sign(params: MimcParams, group: HHGroup, sig_sk: Scalar, message: Sequence[Scalar]) -> Signature:
    # derived nonce keeps signing deterministic for a fixed key and message
    nonce = mimc_hash(params, [sig_sk, mimc_hash(params, list(message))])
    commitment = group.encode(nonce)
    e = mimc_hash(params, [element_to_scalar(params, commitment), *message])
    return Signature(commitment, nonce + e * sig_sk)


def check_sig(
    params: MimcParams,
    group: HHGroup,
    sig_pk: HHElement,
    message: Sequence[Scalar],
    sig: Signature,
) -> bool:
    e = mimc_hash(params, [element_to_scalar(params, sig.commitment), *message])
    return group.encode(sig.response) == sig.commitment.combine(sig_pk.scale(e))
