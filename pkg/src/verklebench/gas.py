"""Closed-form EVM gas estimators for verkle and merkle membership proofs.

Two families of numbers live here. The per-level linear models
(verkle_total_gas, merkle_total_gas) carry slopes and intercepts fitted from
on-chain measurements of deployed verifier contracts at branching factor 256;
applying the verkle model at other k is uncalibrated extrapolation and is
flagged as such rather than forbidden. The byte-level calldata rules
(calldata_gas, the estimate_* helpers) are exact EVM intrinsic-gas
arithmetic: 16 gas per nonzero byte, 4 per zero byte, 21,000 base.

Level counts are computed with exact integer arithmetic (smallest L with
base^L >= capacity); floating-point logs misclassify exact powers.
"""

from dataclasses import dataclass, fields
import json

from .errors import ConfigError


@dataclass(frozen=True)
class GasParams:
    nonzero_byte_cost: int = 16
    zero_byte_cost: int = 4
    base_tx_cost: int = 21000
    verkle_slope: int = 147560
    verkle_intercept: int = 200900
    merkle_slope: int = 1342
    merkle_intercept: int = 24300
    verkle_calldata_overhead: int = 20090
    merkle_calldata_overhead: int = 1280

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 0:
                raise ConfigError(f"{f.name} must be a nonnegative integer")


DEFAULT_PARAMS = GasParams()


def load_gas_params(path: str) -> GasParams:
    """Flat key=value text file; '#' starts a comment; keys match GasParams."""
    known = {f.name for f in fields(GasParams)}
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip()
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown gas param {key!r}")
            try:
                overrides[key] = int(raw.strip())
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer")
    return GasParams(**overrides)


@dataclass(frozen=True)
class GasEstimate:
    levels: int
    calldata_gas: int
    total_gas: int
    model_source: str  # "closed-form" or "byte-level"


@dataclass(frozen=True)
class ComparisonRow:
    capacity: int
    merkle_total_gas: int
    verkle_total_gas: int
    ratio: float


def ceil_log(base: int, n: int) -> int:
    """Smallest L >= 0 with base^L >= n, in exact integer arithmetic."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if n < 1:
        raise ValueError("capacity must be >= 1")
    level = 0
    power = 1
    while power < n:
        power *= base
        level += 1
    return level


def verkle_total_gas(capacity: int, k: int = 256,
                     params: GasParams = DEFAULT_PARAMS) -> int:
    """Modeled total verification gas for one verkle membership proof.

    Slope and intercept were fitted at k=256; other k values are accepted
    for exploration but are uncalibrated extrapolations.
    """
    if k < 2:
        raise ValueError("branching factor must be >= 2")
    return ceil_log(k, capacity) * params.verkle_slope + params.verkle_intercept


def merkle_total_gas(capacity: int,
                     params: GasParams = DEFAULT_PARAMS) -> int:
    return ceil_log(2, capacity) * params.merkle_slope + params.merkle_intercept


def calldata_gas(payload: bytes, include_base: bool = False,
                 params: GasParams = DEFAULT_PARAMS) -> int:
    """Exact EVM intrinsic gas for a calldata payload."""
    nonzero = sum(1 for b in payload if b)
    zero = len(payload) - nonzero
    gas = nonzero * params.nonzero_byte_cost + zero * params.zero_byte_cost
    if include_base:
        gas += params.base_tx_cost
    return gas


def estimate_verkle_calldata(levels: int,
                             params: GasParams = DEFAULT_PARAMS) -> int:
    """Overhead plus 160 nonzero bytes (one word-aligned level) per level."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    return params.verkle_calldata_overhead + 160 * params.nonzero_byte_cost * levels


def estimate_merkle_calldata(levels: int,
                             params: GasParams = DEFAULT_PARAMS) -> int:
    """Overhead plus one 32-byte digest (all-nonzero pricing) per level."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    return params.merkle_calldata_overhead + 32 * params.nonzero_byte_cost * levels


def proof_size_bytes(kind: str, capacity: int, k: int = 2) -> int:
    """Proof payload size in bytes for a capacity-C tree of the given kind."""
    if capacity < 2:
        raise ValueError("capacity must be >= 2")
    if k < 2:
        raise ValueError("k must be >= 2")
    if kind == "merkle-binary":
        return 32 * ceil_log(2, capacity)
    if kind == "merkle-kary":
        return 32 * (k - 1) * ceil_log(k, capacity)
    if kind == "verkle":
        levels = ceil_log(k, capacity)
        return 160 * (levels - 1) + 128  # word-aligned verkle encoding
    raise ValueError(f"unknown proof kind {kind!r}")


def crossover_series(cap_min: int, cap_max: int, k: int = 256,
                     params: GasParams = DEFAULT_PARAMS):
    """One ComparisonRow per power-of-two capacity within [cap_min, cap_max].

    The verkle side is floored at two levels: the smallest realizable tree
    has a root layer and a leaf layer even when the capacity fits a single
    level of indexing arithmetically.
    """
    if not 2 <= cap_min <= cap_max:
        raise ValueError("need 2 <= cap_min <= cap_max")
    if k < 2:
        raise ValueError("branching factor must be >= 2")
    rows = []
    c = 1
    while c < cap_min:
        c *= 2
    while c <= cap_max:
        m = merkle_total_gas(c, params)
        levels = max(2, ceil_log(k, c))
        v = levels * params.verkle_slope + params.verkle_intercept
        rows.append(ComparisonRow(c, m, v, v / m))
        c *= 2
    return rows


COMPARISON_FIELDS = ("capacity", "merkle_total_gas", "verkle_total_gas", "ratio")


def comparison_to_csv(rows) -> str:
    lines = [",".join(COMPARISON_FIELDS)]
    for r in rows:
        lines.append(f"{r.capacity},{r.merkle_total_gas},"
                     f"{r.verkle_total_gas},{r.ratio!r}")
    return "\n".join(lines) + "\n"


def comparison_to_json(rows) -> str:
    payload = [{"capacity": r.capacity,
                "merkle_total_gas": r.merkle_total_gas,
                "verkle_total_gas": r.verkle_total_gas,
                "ratio": r.ratio} for r in rows]
    return json.dumps(payload, indent=2) + "\n"
