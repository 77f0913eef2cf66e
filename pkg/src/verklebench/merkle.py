"""Binary Merkle tree with sorted-pair hashing and double-hashed leaves.

Semantics match the common EVM-ecosystem baseline: leaves are H(H(raw)) to
block second-preimage splices, siblings hash as H(min||max) so proofs carry
no direction bits, and an unpaired node at an odd level is promoted
unchanged. Keccak-256 by default; SHA-256 selectable by name.
"""

from .errors import DecodeError
from .hashes import HASHES

DIGEST_LEN = 32


def _hash(name: str):
    try:
        return HASHES[name]
    except KeyError:
        raise ValueError(f"unknown hash {name!r}; pick from {sorted(HASHES)}")


def hash_leaf(raw: bytes, hash_name: str = "keccak256") -> bytes:
    if not raw:
        raise ValueError("cannot hash an empty leaf")
    h = _hash(hash_name)
    return h(h(raw))


def hash_pair(a: bytes, b: bytes, hash_name: str = "keccak256") -> bytes:
    h = _hash(hash_name)
    return h(a + b) if a <= b else h(b + a)


class MerkleTree:
    """Immutable after construction; levels[0] = leaf digests, top = root."""

    __slots__ = ("leaf_count", "levels", "hash_name", "pair_hash_count")

    def __init__(self, leaves, hash_name: str = "keccak256"):
        if not leaves:
            raise ValueError("a tree needs at least one leaf")
        _hash(hash_name)
        self.hash_name = hash_name
        self.leaf_count = len(leaves)
        self.pair_hash_count = 0
        level = [hash_leaf(leaf, hash_name) for leaf in leaves]
        self.levels = [level]
        while len(level) > 1:
            nxt = []
            for i in range(0, len(level) - 1, 2):
                nxt.append(hash_pair(level[i], level[i + 1], hash_name))
                self.pair_hash_count += 1
            if len(level) & 1:
                nxt.append(level[-1])
            level = nxt
            self.levels.append(level)

    @property
    def root(self) -> bytes:
        return self.levels[-1][0]


def build_tree(leaves, hash_name: str = "keccak256") -> MerkleTree:
    return MerkleTree(leaves, hash_name)


def get_proof(tree: MerkleTree, leaf_index: int):
    """Sibling digests from leaf level upward; promoted nodes add none."""
    if not 0 <= leaf_index < tree.leaf_count:
        raise ValueError(f"leaf index {leaf_index} out of range")
    siblings = []
    idx = leaf_index
    for level in tree.levels[:-1]:
        sib = idx ^ 1
        if sib < len(level):
            siblings.append(level[sib])
        idx //= 2
    return siblings


def verify_proof(root: bytes, leaf: bytes, siblings,
                 hash_name: str = "keccak256") -> bool:
    acc = hash_leaf(leaf, hash_name)
    for sib in siblings:
        acc = hash_pair(acc, sib, hash_name)
    return acc == root


def encode_proof(siblings) -> bytes:
    for sib in siblings:
        if len(sib) != DIGEST_LEN:
            raise ValueError("siblings must be 32-byte digests")
    return b"".join(siblings)


def decode_proof(data: bytes):
    if len(data) % DIGEST_LEN:
        raise DecodeError(
            f"proof length {len(data)} is not a multiple of {DIGEST_LEN}")
    return [data[i:i + DIGEST_LEN] for i in range(0, len(data), DIGEST_LEN)]
