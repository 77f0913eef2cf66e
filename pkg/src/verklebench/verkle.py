"""Fixed-depth verkle tree over KZG vector commitments.

Keys split into a stem (one byte per internal level) and a final leaf index,
so a tree with stem width s has s internal commitment layers plus the leaf
layer and capacity 256^(s+1). Each node commits to a 256-slot vector: leaves
hold scalars directly, internal nodes hold hash-to-scalar reductions of their
children's commitments. Absent slots are scalar 0, which is why inserting a
literal 0 is rejected: membership semantics need nonzero markers.

Depth is fixed at creation. There is no rebalancing, no extension nodes, no
deletion, and no non-membership proof; proofs attest one (key, value) pair.
"""

from dataclasses import dataclass
import hashlib

from . import bn254 as bn
from . import kzg
from .bn254 import R
from .errors import ConfigError, DecodeError, MalformedProofError

_WIDTH = 256  # slots per node; one key byte per level

COMPACT_MAGIC = 0x56
COMPACT_VERSION = 0x01


@dataclass(frozen=True)
class TreeConfig:
    branching_factor: int = 256
    stem_width: int = 1

    def __post_init__(self):
        if self.branching_factor != _WIDTH:
            raise ConfigError("only branching factor 256 is supported")
        if not 1 <= self.stem_width <= 31:
            # stem plus leaf-index byte must fit in one 256-bit key digest
            raise ConfigError("stem_width must be in [1, 31]")

    @property
    def levels(self) -> int:
        return self.stem_width + 1

    @property
    def capacity(self) -> int:
        return _WIDTH ** (self.stem_width + 1)


@dataclass(frozen=True)
class VerkleKey:
    stem: bytes
    leaf_index: int


def derive_key(raw: bytes, config: TreeConfig) -> VerkleKey:
    """Hash raw bytes into a key: digest prefix is the stem, next byte the
    leaf index."""
    if not raw:
        raise ValueError("cannot derive a key from empty bytes")
    digest = hashlib.sha256(raw).digest()
    return VerkleKey(digest[:config.stem_width], digest[config.stem_width])


@dataclass(frozen=True)
class VerkleProof:
    stem: bytes
    leaf_index: int
    indices: tuple            # one per internal level, == stem bytes
    internal_proofs: tuple    # opening witnesses, one per internal level
    internal_child_commitments: tuple
    leaf_proof: tuple         # witness for the leaf-vector opening


_UNSET = object()  # cache sentinel; None is a real commitment (identity)


class _InternalNode:
    __slots__ = ("children", "commitment", "scalar")

    def __init__(self):
        self.children = {}
        self.commitment = _UNSET
        self.scalar = _UNSET


class _LeafNode:
    __slots__ = ("values", "commitment", "scalar")

    def __init__(self):
        self.values = {}
        self.commitment = _UNSET
        self.scalar = _UNSET


class VerkleTree:
    """Mutable tree; commit() is idempotent between mutations."""

    def __init__(self, config: TreeConfig, setup: kzg.TrustedSetup):
        if setup.max_degree < config.branching_factor - 1:
            raise ConfigError(
                "setup degree too small for 256-slot node vectors")
        self.config = config
        self.setup = setup
        self.root = _InternalNode()

    def _check_key(self, key: VerkleKey) -> None:
        if len(key.stem) != self.config.stem_width:
            raise ValueError(
                f"stem must be {self.config.stem_width} bytes, "
                f"got {len(key.stem)}")
        if not 0 <= key.leaf_index < _WIDTH:
            raise ValueError("leaf_index out of range")

    def insert(self, key: VerkleKey, value: int) -> None:
        self._check_key(key)
        value %= R
        if value == 0:
            raise ValueError("value 0 is reserved for absent slots")
        node = self.root
        last = self.config.stem_width - 1
        for depth, byte in enumerate(key.stem):
            node.commitment = _UNSET
            node.scalar = _UNSET
            child = node.children.get(byte)
            if child is None:
                child = _LeafNode() if depth == last else _InternalNode()
                node.children[byte] = child
            node = child
        node.values[key.leaf_index] = value
        node.commitment = _UNSET
        node.scalar = _UNSET

    def get(self, key: VerkleKey):
        """Stored scalar, or None when absent."""
        self._check_key(key)
        node = self.root
        for byte in key.stem:
            node = node.children.get(byte)
            if node is None:
                return None
        return node.values.get(key.leaf_index)

    def commit(self):
        """Root commitment, computing and caching every node bottom-up."""
        return self._commit_node(self.root)

    def _commit_node(self, node):
        if node.commitment is not _UNSET:
            return node.commitment
        if isinstance(node, _LeafNode):
            vector = node.values
        else:
            vector = {idx: self._child_scalar(child)
                      for idx, child in node.children.items()}
        node.commitment = kzg.commit_values(self.setup, vector, _WIDTH)
        return node.commitment

    def _child_scalar(self, child) -> int:
        self._commit_node(child)
        if child.scalar is _UNSET:
            child.scalar = kzg.commitment_to_scalar(child.commitment)
        return child.scalar

    def generate_proof(self, key: VerkleKey) -> VerkleProof:
        """Openings along the key's path; requires the key to be present."""
        self._check_key(key)
        if self.get(key) is None:
            raise KeyError(f"key {key.stem.hex()}:{key.leaf_index} not in tree")
        self.commit()
        node = self.root
        proofs = []
        child_comms = []
        for byte in key.stem:
            vector = {idx: child.scalar
                      for idx, child in node.children.items()}
            _, witness = kzg.open_values_at(self.setup, vector, _WIDTH, byte)
            child = node.children[byte]
            proofs.append(witness)
            child_comms.append(child.commitment)
            node = child
        _, leaf_witness = kzg.open_values_at(
            self.setup, node.values, _WIDTH, key.leaf_index)
        return VerkleProof(
            stem=key.stem,
            leaf_index=key.leaf_index,
            indices=tuple(key.stem),
            internal_proofs=tuple(proofs),
            internal_child_commitments=tuple(child_comms),
            leaf_proof=leaf_witness,
        )


def verify_proof(setup: kzg.TrustedSetup, root, key: VerkleKey, value: int,
                 proof: VerkleProof) -> bool:
    """Stateless recursive verification against a root commitment.

    Returns False when the proof simply does not prove (key, value) under
    root; raises MalformedProofError when the proof object is structurally
    inconsistent (mismatched list lengths, out-of-range indices, or an
    indices/stem disagreement; honest encoders always keep them equal).
    """
    if proof.stem != key.stem or proof.leaf_index != key.leaf_index:
        return False
    width = len(proof.stem)
    if width == 0:
        raise MalformedProofError("empty stem")
    if not (len(proof.indices) == len(proof.internal_proofs)
            == len(proof.internal_child_commitments) == width):
        raise MalformedProofError("proof component counts disagree with stem")
    if not 0 <= proof.leaf_index < _WIDTH:
        raise MalformedProofError("leaf index out of range")
    for i, idx in enumerate(proof.indices):
        if not 0 <= idx < _WIDTH:
            raise MalformedProofError("path index out of range")
        if idx != proof.stem[i]:
            raise MalformedProofError("path indices disagree with stem")
    parent = root
    for i in range(width):
        child = proof.internal_child_commitments[i]
        ok = kzg.verify_opening(setup, parent, proof.indices[i],
                                kzg.commitment_to_scalar(child),
                                proof.internal_proofs[i])
        if not ok:
            return False
        parent = child
    return kzg.verify_opening(setup, parent, proof.leaf_index, value % R,
                              proof.leaf_proof)


# ---------------------------------------------------------------------------
# Wire encodings


def encode_proof_compact(proof: VerkleProof) -> bytes:
    """Magic, version, stem length, stem, leaf index, then per level
    index byte + child commitment + witness, then the leaf witness."""
    width = len(proof.stem)
    if not 1 <= width <= 255:
        raise ValueError("stem length must fit in one byte")
    out = bytearray([COMPACT_MAGIC, COMPACT_VERSION, width])
    out += proof.stem
    out.append(proof.leaf_index)
    for i in range(width):
        out.append(proof.indices[i])
        out += bn.g1_to_bytes(proof.internal_child_commitments[i])
        out += bn.g1_to_bytes(proof.internal_proofs[i])
    out += bn.g1_to_bytes(proof.leaf_proof)
    return bytes(out)


def decode_proof_compact(data: bytes) -> VerkleProof:
    if len(data) < 3:
        raise DecodeError("compact proof too short for its header")
    if data[0] != COMPACT_MAGIC:
        raise DecodeError("bad compact proof magic")
    if data[1] != COMPACT_VERSION:
        raise DecodeError(f"unsupported compact proof version {data[1]}")
    width = data[2]
    if width == 0:
        raise DecodeError("compact proof declares an empty stem")
    expected = 3 + width + 1 + width * (1 + 64 + 64) + 64
    if len(data) != expected:
        raise DecodeError(
            f"compact proof is {len(data)} bytes, expected {expected}")
    stem = data[3:3 + width]
    leaf_index = data[3 + width]
    off = 4 + width
    indices = []
    comms = []
    proofs = []
    for _ in range(width):
        indices.append(data[off])
        comms.append(bn.g1_from_bytes(data[off + 1:off + 65]))
        proofs.append(bn.g1_from_bytes(data[off + 65:off + 129]))
        off += 129
    leaf_proof = bn.g1_from_bytes(data[off:off + 64])
    return VerkleProof(stem, leaf_index, tuple(indices), tuple(proofs),
                       tuple(comms), leaf_proof)


def encode_proof_word(proof: VerkleProof) -> bytes:
    """Calldata-shaped layout: every index right-aligned in a 32-byte word,
    points as 64 raw bytes. 128 bytes plus exactly 160 per internal level."""
    width = len(proof.stem)
    if not 1 <= width <= 32:
        raise ValueError("stem does not fit in a 32-byte word")
    out = bytearray()
    out += proof.stem.rjust(32, b"\x00")
    out += proof.leaf_index.to_bytes(32, "big")
    for i in range(width):
        out += proof.indices[i].to_bytes(32, "big")
        out += bn.g1_to_bytes(proof.internal_child_commitments[i])
        out += bn.g1_to_bytes(proof.internal_proofs[i])
    out += bn.g1_to_bytes(proof.leaf_proof)
    return bytes(out)


def decode_proof_word(data: bytes) -> VerkleProof:
    if len(data) < 288 or (len(data) - 128) % 160:
        raise DecodeError(
            f"word-aligned proof length {len(data)} is not 128 + 160*levels")
    width = (len(data) - 128) // 160
    if width > 32:
        raise DecodeError("stem exceeds a 32-byte word")
    stem_word = data[:32]
    if any(stem_word[:32 - width]):
        raise DecodeError("stem word has nonzero padding")
    stem = stem_word[32 - width:]
    leaf_index = int.from_bytes(data[32:64], "big")
    if leaf_index >= _WIDTH:
        raise DecodeError("leaf index word out of range")
    off = 64
    indices = []
    comms = []
    proofs = []
    for _ in range(width):
        idx = int.from_bytes(data[off:off + 32], "big")
        if idx >= _WIDTH:
            raise DecodeError("path index word out of range")
        indices.append(idx)
        comms.append(bn.g1_from_bytes(data[off + 32:off + 96]))
        proofs.append(bn.g1_from_bytes(data[off + 96:off + 160]))
        off += 160
    leaf_proof = bn.g1_from_bytes(data[off:off + 64])
    return VerkleProof(stem, leaf_index, tuple(indices), tuple(proofs),
                       tuple(comms), leaf_proof)
