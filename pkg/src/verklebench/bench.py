"""Desk-scale benchmark harness comparing the two authenticated structures.

For each configured capacity the harness builds a verkle tree and a binary
merkle tree over the same generated address set, times construction and
proof generation/verification over a random member sample, records encoded
proof sizes, and attaches the modeled gas costs.  Reports export to CSV or
JSON with a fixed column order so repeated runs diff cleanly.

Timings are wall-clock milliseconds and naturally vary between runs; every
other report column is a pure function of (config, seed).
"""

import json
import random
import time
from dataclasses import dataclass, fields

from . import kzg
from . import merkle
from .errors import ConfigError
from .gas import (DEFAULT_PARAMS, ceil_log, estimate_merkle_calldata,
                  estimate_verkle_calldata, merkle_total_gas, verkle_total_gas)
from .verkle import (TreeConfig, VerkleTree, derive_key, encode_proof_compact,
                     encode_proof_word, verify_proof)

DEFAULT_CAPACITIES = (2 ** 3, 2 ** 7, 2 ** 10, 2 ** 15)
HEAVY_CAPACITY = 2 ** 20
ADDRESS_LEN = 20

REPORT_FIELDS = ("structure", "capacity", "levels", "build_ms",
                 "prove_ms_mean", "verify_ms_mean", "proof_bytes_compact",
                 "proof_bytes_word", "calldata_gas", "total_gas")


class BenchmarkError(RuntimeError):
    """A sampled proof failed local verification; the report is not written."""


def stem_width_for(capacity: int) -> int:
    """Smallest stem width whose tree capacity covers `capacity` keys."""
    width = 1
    while 256 ** (width + 1) < capacity:
        width += 1
    return width


@dataclass(frozen=True)
class BenchConfig:
    capacities: tuple = DEFAULT_CAPACITIES
    include_heavy: bool = False
    stem_widths: dict = None        # per-capacity override of the computed width
    seed: int = 0
    samples_per_capacity: int = 20
    output_path: str = None
    output_format: str = "csv"

    def __post_init__(self):
        caps = tuple(self.capacities)
        if not caps:
            raise ConfigError("capacities must be non-empty")
        for c in caps:
            if not isinstance(c, int) or c < 2:
                raise ConfigError(f"capacity must be an integer >= 2: {c!r}")
        if list(caps) != sorted(set(caps)):
            raise ConfigError("capacities must be strictly ascending")
        object.__setattr__(self, "capacities", caps)
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not isinstance(self.samples_per_capacity, int) \
                or self.samples_per_capacity < 1:
            raise ConfigError("samples_per_capacity must be >= 1")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.stem_widths is not None:
            for cap, width in self.stem_widths.items():
                if not isinstance(cap, int) or not isinstance(width, int) \
                        or not 1 <= width <= 31:
                    raise ConfigError(
                        f"bad stem width override {cap!r}: {width!r}")

    def resolved_capacities(self) -> tuple:
        caps = self.capacities
        if self.include_heavy and HEAVY_CAPACITY not in caps:
            caps = tuple(sorted(caps + (HEAVY_CAPACITY,)))
        return caps

    def stem_width(self, capacity: int) -> int:
        if self.stem_widths and capacity in self.stem_widths:
            return self.stem_widths[capacity]
        return stem_width_for(capacity)

    @classmethod
    def from_file(cls, path: str) -> "BenchConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"bad benchmark config: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("benchmark config must be a JSON object")
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in raw.items():
            if key not in known:
                raise ConfigError(f"unknown benchmark config key {key!r}")
            if key == "capacities":
                if not isinstance(value, list):
                    raise ConfigError("capacities must be a JSON array")
                value = tuple(value)
            elif key == "stem_widths":
                if not isinstance(value, dict):
                    raise ConfigError("stem_widths must be a JSON object")
                try:
                    value = {int(k): v for k, v in value.items()}
                except ValueError as exc:
                    raise ConfigError(
                        "stem_widths keys must be capacities") from exc
            kwargs[key] = value
        return cls(**kwargs)


@dataclass(frozen=True)
class BenchRow:
    structure: str
    capacity: int
    levels: int
    build_ms: float
    prove_ms_mean: float
    verify_ms_mean: float
    proof_bytes_compact: int
    proof_bytes_word: int
    calldata_gas: int
    total_gas: int
    proof_components: int           # openings (verkle) / siblings (merkle)


@dataclass(frozen=True)
class BenchReport:
    config: BenchConfig
    rows: tuple


def generate_dataset(n: int, seed: int) -> list:
    """n distinct pseudo-random 20-byte addresses, deterministic per (n, seed)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < n:
        addr = rng.getrandbits(ADDRESS_LEN * 8).to_bytes(ADDRESS_LEN, "big")
        if addr not in seen:
            seen.add(addr)
            out.append(addr)
    return out


def _member_value(raw: bytes) -> int:
    # zero marks absent slots, so clamp the (astronomically unlikely) zero hash
    return kzg.hash_to_scalar(raw) or 1


def _ms(seconds: float) -> float:
    return round(seconds * 1e3, 3)


def _merkle_cell(config: BenchConfig, capacity: int, dataset: list,
                 rng: random.Random, params) -> BenchRow:
    start = time.perf_counter()
    tree = merkle.build_tree(dataset)
    build = time.perf_counter() - start
    root = tree.root
    prove = verify = 0.0
    proof_bytes = 0
    for i in range(config.samples_per_capacity):
        idx = rng.randrange(capacity)
        start = time.perf_counter()
        siblings = merkle.get_proof(tree, idx)
        prove += time.perf_counter() - start
        proof_bytes = max(proof_bytes, len(merkle.encode_proof(siblings)))
        start = time.perf_counter()
        ok = merkle.verify_proof(root, dataset[idx], siblings)
        verify += time.perf_counter() - start
        if not ok:
            raise BenchmarkError(
                f"proof failed local verification: structure=merkle "
                f"capacity={capacity} sample={i}")
    levels = ceil_log(2, capacity)
    return BenchRow(
        structure="merkle", capacity=capacity, levels=levels,
        build_ms=_ms(build),
        prove_ms_mean=_ms(prove / config.samples_per_capacity),
        verify_ms_mean=_ms(verify / config.samples_per_capacity),
        proof_bytes_compact=proof_bytes, proof_bytes_word=proof_bytes,
        calldata_gas=estimate_merkle_calldata(levels, params),
        total_gas=merkle_total_gas(capacity, params),
        proof_components=proof_bytes // merkle.DIGEST_LEN)


def _verkle_cell(config: BenchConfig, capacity: int, dataset: list,
                 rng: random.Random, setup: kzg.TrustedSetup,
                 params) -> BenchRow:
    tree_config = TreeConfig(stem_width=config.stem_width(capacity))
    tree = VerkleTree(tree_config, setup)
    start = time.perf_counter()
    for addr in dataset:
        tree.insert(derive_key(addr, tree_config), _member_value(addr))
    root = tree.commit()
    build = time.perf_counter() - start
    prove = verify = 0.0
    compact_bytes = word_bytes = components = None
    for i in range(config.samples_per_capacity):
        addr = dataset[rng.randrange(capacity)]
        key = derive_key(addr, tree_config)
        # colliding keys overwrite, so attest whatever the tree now holds
        expected = tree.get(key)
        start = time.perf_counter()
        proof = tree.generate_proof(key)
        prove += time.perf_counter() - start
        sizes = (len(encode_proof_compact(proof)), len(encode_proof_word(proof)))
        if compact_bytes is None:
            compact_bytes, word_bytes = sizes
            components = len(proof.internal_proofs) + 1
        elif sizes != (compact_bytes, word_bytes):
            raise BenchmarkError(
                f"encoded proof size varied across samples: structure=verkle "
                f"capacity={capacity} sample={i}")
        start = time.perf_counter()
        ok = verify_proof(setup, root, key, expected, proof)
        verify += time.perf_counter() - start
        if not ok:
            raise BenchmarkError(
                f"proof failed local verification: structure=verkle "
                f"capacity={capacity} sample={i}")
    levels = tree_config.levels
    return BenchRow(
        structure="verkle", capacity=capacity, levels=levels,
        build_ms=_ms(build),
        prove_ms_mean=_ms(prove / config.samples_per_capacity),
        verify_ms_mean=_ms(verify / config.samples_per_capacity),
        proof_bytes_compact=compact_bytes, proof_bytes_word=word_bytes,
        calldata_gas=estimate_verkle_calldata(levels, params),
        total_gas=verkle_total_gas(tree_config.capacity, 256, params),
        proof_components=components)


def run_benchmark(config: BenchConfig, setup: kzg.TrustedSetup = None,
                  params=DEFAULT_PARAMS) -> BenchReport:
    """Build, prove, verify, and measure both structures per capacity.

    Every sampled proof must verify locally; a failure aborts the run with
    a diagnostic instead of producing a report.
    """
    if setup is None:
        setup = kzg.generate_setup(config.seed.to_bytes(8, "big"), 255)
    rng = random.Random(config.seed)
    rows = []
    for capacity in config.resolved_capacities():
        dataset = generate_dataset(capacity, config.seed)
        rows.append(_merkle_cell(config, capacity, dataset, rng, params))
        rows.append(_verkle_cell(config, capacity, dataset, rng, setup, params))
    return BenchReport(config=config, rows=tuple(rows))


def report_to_csv(report: BenchReport) -> str:
    lines = [",".join(REPORT_FIELDS)]
    for r in report.rows:
        lines.append(f"{r.structure},{r.capacity},{r.levels},"
                     f"{r.build_ms!r},{r.prove_ms_mean!r},"
                     f"{r.verify_ms_mean!r},{r.proof_bytes_compact},"
                     f"{r.proof_bytes_word},{r.calldata_gas},{r.total_gas}")
    return "\n".join(lines) + "\n"


def report_to_json(report: BenchReport) -> str:
    payload = [{name: getattr(r, name) for name in REPORT_FIELDS}
               for r in report.rows]
    return json.dumps(payload, indent=2) + "\n"


def export_report(report: BenchReport, path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        text = report_to_csv(report)
    elif fmt == "json":
        text = report_to_json(report)
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
