"""Arithmetic-friendly sponge hash, PRF, and coin commitment.

An 11-round cube permutation (x -> (x + c_i)^3, constants c_i = i) absorbed
rate-1: each round costs just two multiplication rows in a circuit, which
keeps the pour statement small.  NOT collision-resistant at real-world
strength; every use here is pedagogical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from ..algebra import DEFAULT_MODULUS, Scalar

DEFAULT_ROUNDS = 11
DEFAULT_EXPONENT = 3
DEFAULT_V_MAX = 2**32


@dataclass(frozen=True)
class MimcParams:
    modulus: int = DEFAULT_MODULUS
    rounds: int = DEFAULT_ROUNDS
    exponent: int = DEFAULT_EXPONENT

    def __post_init__(self):
        # the round function must be a permutation of the field
        if gcd(self.exponent, self.modulus - 1) != 1:
            raise ValueError(f"x^{self.exponent} is not a permutation mod {self.modulus}")

    @property
    def round_constants(self) -> list[int]:
        return list(range(1, self.rounds + 1))


def permute(params: MimcParams, x: int) -> int:
    p = params.modulus
    for c in params.round_constants:
        x = pow(x + c, params.exponent, p)
    return x


def _check_scalar(params: MimcParams, s: Scalar) -> int:
    if s.modulus != params.modulus:
        raise ValueError("scalar does not live in the hash field")
    return s.value


def mimc_hash(params: MimcParams, inputs: Sequence[Scalar]) -> Scalar:
    """Sponge: state starts at 0 and absorbs one field element per call of
    the permutation, so input length changes the output."""
    if not inputs:
        raise ValueError("mimc_hash needs at least one input")
    state = 0
    for m in inputs:
        state = permute(params, (state + _check_scalar(params, m)) % params.modulus)
    return Scalar(state, params.modulus)


def prf(params: MimcParams, key: Scalar, x: Scalar) -> Scalar:
    """Deterministic keyed function: hash of (key, x)."""
    return mimc_hash(params, [key, x])


def comm(
    params: MimcParams,
    a_pk: Scalar,
    value: Scalar,
    rho: Scalar,
    r: Scalar,
    v_max: int = DEFAULT_V_MAX,
) -> tuple[Scalar, Scalar]:
    """Nested coin commitment: k = H(a_pk, rho, r), cm = H(k, value).

    The nesting lets a mint transaction reveal (k, value) so anyone can
    check the claimed value without learning the owner.
    Returns (cm, k).
    """
    if _check_scalar(params, value) > v_max:
        raise ValueError(f"coin value exceeds v_max = {v_max}")
    k_inner = mimc_hash(params, [a_pk, rho, r])
    cm = mimc_hash(params, [k_inner, value])
    return cm, k_inner
