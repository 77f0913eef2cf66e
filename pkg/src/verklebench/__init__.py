"""KZG-backed verkle trees and a binary merkle baseline for membership
proofs, with byte-exact proof encodings and an on-chain gas cost model.

The package has five layers: `bn254` (pairing curve arithmetic), `kzg`
(polynomial commitments over a trusted setup), `verkle` / `merkle` (the two
authenticated structures), `gas` (the cost model), and `bench`/`cli` (the
measurement harness).
"""

from .errors import (CapacityError, ConfigError, DecodeError,
                     MalformedProofError)
from .gas import GasParams, crossover_series, merkle_total_gas, verkle_total_gas
from .kzg import TrustedSetup, generate_setup, load_setup, save_setup
from .merkle import MerkleTree, build_tree
from .verkle import TreeConfig, VerkleKey, VerkleProof, VerkleTree, derive_key

__version__ = "0.1.0"
