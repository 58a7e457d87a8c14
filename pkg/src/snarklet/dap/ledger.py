"""Toy anonymous-payment ledger: addresses, mint, pour, verify, receive.

LedgerState is the single source of truth: an append-only commitment tree,
the set of revealed serial numbers, the accepted transaction list, and the
history of tree roots.  verify_tx is the only writer; mint and pour build
transactions without touching state, so anyone can check them later.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..algebra import DEFAULT_MODULUS, Scalar
from ..snark import HHElement, HHGroup, Proof, ProvingKey, VerifyingKey, prove as snark_prove, verify as snark_verify
from .circuit import (
    CM_NEW_WIRES,
    RT_WIRE,
    SN_WIRES,
    PourContext,
    build_pour_context,
    new_input_names,
    old_input_names,
)
from .crypto import Ciphertext, Signature, check_sig, encrypt_coin, sign, try_decrypt
from .merkle import MerkleTree
from .mimc import DEFAULT_V_MAX, MimcParams, comm, mimc_hash, prf

DEFAULT_DEPTH = 4

SECRET_HEADER = "SECRET-DEMO-ONLY"


def _sample(rng: random.Random, modulus: int) -> Scalar:
    return Scalar(rng.randrange(modulus), modulus)


@dataclass(frozen=True)
class Address:
    """Payment address: spending, decryption, and signing keys.

    All three secrets derive from one seed through the PRF under distinct
    domain tags, so an address is reproducible from its seed.
    """

    a_pk: Scalar
    enc_pk: HHElement
    sig_pk: HHElement
    a_sk: Scalar | None = None
    enc_sk: Scalar | None = None
    sig_sk: Scalar | None = None

    def require_secrets(self) -> "Address":
        if self.a_sk is None or self.enc_sk is None or self.sig_sk is None:
            raise ValueError("this operation needs the address secrets")
        return self

    def public_part(self) -> "Address":
        return Address(self.a_pk, self.enc_pk, self.sig_pk)

    def to_json(self, include_secrets: bool = True) -> dict:
        out = {
            "a_pk": self.a_pk.to_str(),
            "enc_pk": self.enc_pk.serialize(),
            "sig_pk": self.sig_pk.serialize(),
            "modulus": str(self.a_pk.modulus),
        }
        if include_secrets:
            self.require_secrets()
            out["header"] = SECRET_HEADER
            out["a_sk"] = self.a_sk.to_str()
            out["enc_sk"] = self.enc_sk.to_str()
            out["sig_sk"] = self.sig_sk.to_str()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Address":
        modulus = int(data["modulus"])
        group = HHGroup(modulus)

        def sec(key):
            return Scalar(int(data[key]), modulus) if key in data else None

        return cls(
            Scalar(int(data["a_pk"]), modulus),
            group.element_from_str(data["enc_pk"]),
            group.element_from_str(data["sig_pk"]),
            sec("a_sk"),
            sec("enc_sk"),
            sec("sig_sk"),
        )


def create_address(seed: int, params: MimcParams | None = None) -> Address:
    """Deterministic address from a seed via PRF domain tags 1, 2, 3."""
    params = params or MimcParams()
    p = params.modulus
    group = HHGroup(p)
    seed_scalar = Scalar(seed, p)
    a_sk = prf(params, seed_scalar, Scalar(1, p))
    enc_sk = prf(params, seed_scalar, Scalar(2, p))
    sig_sk = prf(params, seed_scalar, Scalar(3, p))
    return Address(
        a_pk=prf(params, a_sk, Scalar(0, p)),
        enc_pk=group.encode(enc_sk),
        sig_pk=group.encode(sig_sk),
        a_sk=a_sk,
        enc_sk=enc_sk,
        sig_sk=sig_sk,
    )


@dataclass(frozen=True)
class Coin:
    value: Scalar
    rho: Scalar  # serial seed
    r: Scalar  # commitment trapdoor
    a_pk: Scalar  # owner
    cm: Scalar

    def to_json(self) -> dict:
        return {
            "value": self.value.to_str(),
            "rho": self.rho.to_str(),
            "r": self.r.to_str(),
            "a_pk": self.a_pk.to_str(),
            "cm": self.cm.to_str(),
            "modulus": str(self.value.modulus),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Coin":
        p = int(data["modulus"])
        s = lambda key: Scalar(int(data[key]), p)
        return cls(s("value"), s("rho"), s("r"), s("a_pk"), s("cm"))


@dataclass(frozen=True)
class MintTx:
    cm: Scalar
    value: Scalar
    k_inner: Scalar  # inner commitment, lets anyone check the value claim
    sig_pk: HHElement
    sig: Signature

    def body(self) -> list[Scalar]:
        return [self.cm, self.value, self.k_inner]

    def to_json(self) -> dict:
        return {
            "type": "mint",
            "cm": self.cm.to_str(),
            "value": self.value.to_str(),
            "k_inner": self.k_inner.to_str(),
            "sig_pk": self.sig_pk.serialize(),
            "sig": self.sig.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, modulus: int) -> "MintTx":
        group = HHGroup(modulus)
        s = lambda key: Scalar(int(data[key]), modulus)
        return cls(
            s("cm"),
            s("value"),
            s("k_inner"),
            group.element_from_str(data["sig_pk"]),
            Signature.from_json(data["sig"], group),
        )


def _pour_body(rt, sn_old, cm_new, proof, ciphertexts) -> list[Scalar]:
    p = rt.modulus
    out = [rt, *sn_old, *cm_new]
    for ct in ciphertexts:
        out.append(Scalar(int(ct.ephemeral.serialize()), p))
        out.extend(ct.words)
        out.append(ct.tag)
    for element in proof.elements():
        out.append(Scalar(int(element.serialize()), p))
    return out


@dataclass(frozen=True)
class PourTx:
    rt: Scalar
    sn_old: tuple[Scalar, Scalar]
    cm_new: tuple[Scalar, Scalar]
    proof: Proof
    ciphertexts: tuple[Ciphertext, Ciphertext]
    sig_pk: HHElement  # one-time key, fresh per pour
    sig: Signature

    def body(self) -> list[Scalar]:
        return _pour_body(self.rt, self.sn_old, self.cm_new, self.proof, self.ciphertexts)

    def to_json(self) -> dict:
        return {
            "type": "pour",
            "rt": self.rt.to_str(),
            "sn_old": [s.to_str() for s in self.sn_old],
            "cm_new": [s.to_str() for s in self.cm_new],
            "proof": self.proof.to_json(),
            "ciphertexts": [ct.to_json() for ct in self.ciphertexts],
            "sig_pk": self.sig_pk.serialize(),
            "sig": self.sig.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, modulus: int) -> "PourTx":
        group = HHGroup(modulus)
        s = lambda text: Scalar(int(text), modulus)
        return cls(
            s(data["rt"]),
            tuple(s(x) for x in data["sn_old"]),
            tuple(s(x) for x in data["cm_new"]),
            Proof.from_json(data["proof"]),
            tuple(Ciphertext.from_json(ct, group) for ct in data["ciphertexts"]),
            group.element_from_str(data["sig_pk"]),
            Signature.from_json(data["sig"], group),
        )


def tx_from_json(data: dict, modulus: int):
    if data["type"] == "mint":
        return MintTx.from_json(data, modulus)
    if data["type"] == "pour":
        return PourTx.from_json(data, modulus)
    raise ValueError(f"unknown transaction type {data['type']!r}")


class LedgerState:
    """Commitment tree + serials + accepted transactions.  Single-writer:
    verify_tx mutates, everything else only reads."""

    def __init__(
        self,
        depth: int = DEFAULT_DEPTH,
        modulus: int = DEFAULT_MODULUS,
        v_max: int = DEFAULT_V_MAX,
    ):
        self.depth = depth
        self.modulus = modulus
        self.v_max = v_max
        self.params = MimcParams(modulus)
        self.group = HHGroup(modulus)
        self.merkle = MerkleTree(depth, self.params)
        self.serial_set: set[Scalar] = set()
        self.txs: list[MintTx | PourTx] = []
        self.roots: list[Scalar] = [self.merkle.root()]
        self._pour_ctx: PourContext | None = None

    @property
    def root_history(self) -> set[Scalar]:
        return set(self.roots)

    def append_commitment(self, cm: Scalar) -> int:
        index = self.merkle.append(cm)
        self.roots.append(self.merkle.root())
        return index

    def pour_context(self) -> PourContext:
        if self._pour_ctx is None:
            self._pour_ctx = build_pour_context(self.depth, self.params)
        return self._pour_ctx

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "modulus": str(self.modulus),
            "v_max": str(self.v_max),
            "leaves": [leaf.to_str() for leaf in self.merkle.leaves],
            "serials": sorted(s.to_str() for s in self.serial_set),
            "roots": [r.to_str() for r in self.roots],
            "txs": [tx.to_json() for tx in self.txs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LedgerState":
        ledger = cls(data["depth"], int(data["modulus"]), int(data["v_max"]))
        p = ledger.modulus
        for leaf in data["leaves"]:
            ledger.merkle.append(Scalar(int(leaf), p))
        ledger.serial_set = {Scalar(int(s), p) for s in data["serials"]}
        ledger.roots = [Scalar(int(r), p) for r in data["roots"]]
        ledger.txs = [tx_from_json(tx, p) for tx in data["txs"]]
        return ledger


# ---------------------------------------------------------------------------
# The transaction phases


def mint(ledger: LedgerState, addr: Address, value: Scalar, seed: int) -> tuple[Coin, MintTx]:
    """Build a coin and its signed mint transaction.  State changes happen
    only when the transaction passes verify_tx."""
    addr.require_secrets()
    if value.modulus != ledger.modulus:
        raise ValueError("value scalar mode does not match the ledger")
    if value.value > ledger.v_max:
        raise ValueError(f"coin value exceeds v_max = {ledger.v_max}")
    if len(ledger.merkle.leaves) >= ledger.merkle.capacity:
        raise ValueError("commitment tree is full")
    rng = random.Random(seed)
    rho = _sample(rng, ledger.modulus)
    r = _sample(rng, ledger.modulus)
    cm, k_inner = comm(ledger.params, addr.a_pk, value, rho, r, ledger.v_max)
    coin = Coin(value, rho, r, addr.a_pk, cm)
    sig = sign(ledger.params, ledger.group, addr.sig_sk, [cm, value, k_inner])
    return coin, MintTx(cm, value, k_inner, addr.sig_pk, sig)


def _auth_path_env(names: dict, path) -> dict[str, int]:
    env = {}
    for level, (sibling, direction) in enumerate(path):
        env[names["siblings"][level]] = sibling.value
        env[names["bits"][level]] = direction
    return env


def pour(
    ledger: LedgerState,
    old: Sequence[tuple[Coin, Address]],
    new_outputs: Sequence[tuple[Scalar, HHElement, Scalar]],
    pk: ProvingKey,
    seed: int,
    ctx: PourContext | None = None,
) -> PourTx:
    """Consume two old coins into two new ones under a proof.

    new_outputs are (recipient a_pk, recipient enc_pk, value) triples.  The
    returned transaction is not applied here; verify_tx does that.
    """
    if len(old) != 2 or len(new_outputs) != 2:
        raise ValueError("pour takes exactly 2 old coins and 2 new outputs")
    ctx = ctx or ledger.pour_context()
    params, p = ledger.params, ledger.modulus

    serials = []
    paths = []
    for coin, addr in old:
        addr.require_secrets()
        if coin.a_pk != addr.a_pk:
            raise ValueError("address does not own this coin")
        index = ledger.merkle.index_of(coin.cm)
        if index is None:
            raise ValueError("old coin commitment is not in the tree")
        sn = prf(params, addr.a_sk, coin.rho)
        if sn in ledger.serial_set:
            raise ValueError("old coin is already spent")
        serials.append(sn)
        paths.append(ledger.merkle.path(index))
    if serials[0] == serials[1]:
        raise ValueError("cannot pour the same coin twice")
    rt = ledger.merkle.root()

    rng = random.Random(seed)
    new_coins = []
    for a_pk, _, value in new_outputs:
        rho = _sample(rng, p)
        r = _sample(rng, p)
        cm, _ = comm(params, a_pk, value, rho, r, ledger.v_max)
        new_coins.append(Coin(value, rho, r, a_pk, cm))

    env = {
        "rt": rt.value,
        "sn_old_1": serials[0].value,
        "sn_old_2": serials[1].value,
        "cm_new_1": new_coins[0].cm.value,
        "cm_new_2": new_coins[1].cm.value,
    }
    for i, ((coin, addr), path) in enumerate(zip(old, paths), start=1):
        names = old_input_names(i, ledger.depth)
        env[names["v"]] = coin.value.value
        env[names["rho"]] = coin.rho.value
        env[names["r"]] = coin.r.value
        env[names["a_sk"]] = addr.a_sk.value
        env.update(_auth_path_env(names, path))
    for j, coin in enumerate(new_coins, start=1):
        names = new_input_names(j)
        env[names["v"]] = coin.value.value
        env[names["rho"]] = coin.rho.value
        env[names["r"]] = coin.r.value
        env[names["a_pk"]] = coin.a_pk.value

    witness = ctx.layout.witness(env)
    proof = snark_prove(pk, ctx.qap, witness)

    ciphertexts = tuple(
        encrypt_coin(
            params,
            ledger.group,
            enc_pk,
            [coin.value, coin.rho, coin.r],
            _sample(rng, p),
        )
        for (_, enc_pk, _), coin in zip(new_outputs, new_coins)
    )

    # fresh one-time signing key so the transaction names no address
    ots_sk = _sample(rng, p)
    ots_pk = ledger.group.encode(ots_sk)
    tx = PourTx(
        rt,
        (serials[0], serials[1]),
        (new_coins[0].cm, new_coins[1].cm),
        proof,
        ciphertexts,
        ots_pk,
        Signature(ledger.group.identity, Scalar(0, p)),  # placeholder, replaced below
    )
    sig = sign(params, ledger.group, ots_sk, tx.body())
    return PourTx(tx.rt, tx.sn_old, tx.cm_new, tx.proof, tx.ciphertexts, ots_pk, sig)


def verify_tx(ledger: LedgerState, tx: MintTx | PourTx, vk: VerifyingKey | None = None) -> bool:
    """Publicly checkable validation; applies the state transition on True.
    All failures return False rather than raising."""
    try:
        if isinstance(tx, MintTx):
            return _verify_mint(ledger, tx)
        if isinstance(tx, PourTx):
            if vk is None:
                return False
            return _verify_pour(ledger, tx, vk)
        return False
    except Exception:
        return False


def _verify_mint(ledger: LedgerState, tx: MintTx) -> bool:
    if tx.value.value > ledger.v_max:
        return False
    if mimc_hash(ledger.params, [tx.k_inner, tx.value]) != tx.cm:
        return False
    if not check_sig(ledger.params, ledger.group, tx.sig_pk, tx.body(), tx.sig):
        return False
    if len(ledger.merkle.leaves) >= ledger.merkle.capacity:
        return False
    ledger.append_commitment(tx.cm)
    ledger.txs.append(tx)
    return True


def _verify_pour(ledger: LedgerState, tx: PourTx, vk: VerifyingKey) -> bool:
    sn1, sn2 = tx.sn_old
    if sn1 == sn2:
        return False
    if sn1 in ledger.serial_set or sn2 in ledger.serial_set:
        return False
    if tx.rt not in ledger.root_history:
        return False
    if len(ledger.merkle.leaves) + 2 > ledger.merkle.capacity:
        return False
    if not check_sig(ledger.params, ledger.group, tx.sig_pk, tx.body(), tx.sig):
        return False
    p = ledger.modulus
    public_inputs = {
        0: Scalar(1, p),
        RT_WIRE: tx.rt,
        SN_WIRES[0]: sn1,
        SN_WIRES[1]: sn2,
        CM_NEW_WIRES[0]: tx.cm_new[0],
        CM_NEW_WIRES[1]: tx.cm_new[1],
    }
    if not snark_verify(vk, public_inputs, tx.proof):
        return False
    ledger.append_commitment(tx.cm_new[0])
    ledger.append_commitment(tx.cm_new[1])
    ledger.serial_set.update((sn1, sn2))
    ledger.txs.append(tx)
    return True


def receive(ledger: LedgerState, addr: Address) -> list[Coin]:
    """Scan pour ciphertexts for coins addressed to us that are in the tree
    and not yet spent."""
    addr.require_secrets()
    params = ledger.params
    found: list[Coin] = []
    for tx in ledger.txs:
        if not isinstance(tx, PourTx):
            continue
        for ct in tx.ciphertexts:
            plain = try_decrypt(params, addr.enc_sk, ct)
            if plain is None:
                continue
            value, rho, r = plain
            if value.value > ledger.v_max:
                continue
            cm, _ = comm(params, addr.a_pk, value, rho, r, ledger.v_max)
            if ledger.merkle.index_of(cm) is None:
                continue
            sn = prf(params, addr.a_sk, rho)
            if sn in ledger.serial_set:
                continue
            found.append(Coin(value, rho, r, addr.a_pk, cm))
    return found
