"""Command-line front end.

Commands
  setup      generate a deterministic trusted setup file
  build      build a verkle or merkle tree over members and save it as JSON
  prove      regenerate a tree from its file and emit one membership proof
  verify     check an encoded proof against a root (stateless)
  bench      run the comparative benchmark and export the report
  crossover  export the modeled gas comparison series

Exit codes: 0 success / proof verified, 1 proof not verified (or a
benchmark sample failed), 2 malformed input or usage error, 3 I/O failure.

Tree files are JSON documents recording the member list plus enough
provenance (setup seed or path, stem width, hash name) to rebuild the tree
bit-for-bit; `prove` recomputes the root and refuses to run if it no longer
matches the recorded one.  Verkle leaf values are derived from the member
bytes by hashing, so `prove` prints the attested value as hex for use with
`verify --value`.
"""

import argparse
import json
import os
import sys

from . import bn254
from . import gas
from . import kzg
from . import merkle
from .bench import (BenchConfig, BenchmarkError, export_report,
                    generate_dataset, report_to_csv, report_to_json,
                    run_benchmark, stem_width_for, _member_value)
from .errors import ConfigError, DecodeError, MalformedProofError
from .verkle import (TreeConfig, VerkleTree, decode_proof_compact,
                     decode_proof_word, derive_key, encode_proof_compact,
                     encode_proof_word, verify_proof)

DEFAULT_MAX_DEGREE = 255


def _hex_bytes(text: str, what: str) -> bytes:
    try:
        data = bytes.fromhex(text)
    except ValueError:
        raise ValueError(f"{what} is not valid hex: {text!r}")
    if not data:
        raise ValueError(f"{what} must be non-empty")
    return data


def _seed_bytes(seed: int) -> bytes:
    if not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must be a 64-bit unsigned integer")
    return seed.to_bytes(8, "big")


def _load_params(args) -> gas.GasParams:
    if args.params is None:
        return gas.DEFAULT_PARAMS
    return gas.load_gas_params(args.params)


def _read_members(source: str, seed: int) -> list:
    """`generated:n` or a path to a file of hex lines (# comments allowed)."""
    if source.startswith("generated:"):
        try:
            n = int(source.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad generated member count in {source!r}")
        if n < 1:
            raise ConfigError("generated member count must be >= 1")
        return generate_dataset(n, seed)
    members = []
    with open(source, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                members.append(_hex_bytes(line, "member"))
    if not members:
        raise ConfigError(f"no members found in {source!r}")
    return members


def _setup_for(args, record: dict = None) -> kzg.TrustedSetup:
    """Pick the setup named by flags or a tree file's provenance record."""
    if record is not None:
        if "path" in record:
            return kzg.load_setup(record["path"])
        return kzg.generate_setup(_seed_bytes(int(record["seed"])),
                                  int(record["max_degree"]))
    if getattr(args, "setup", None):
        return kzg.load_setup(args.setup)
    return kzg.generate_setup(_seed_bytes(args.seed), DEFAULT_MAX_DEGREE)


def _setup_record(args) -> dict:
    if getattr(args, "setup", None):
        return {"path": os.path.abspath(args.setup)}
    return {"seed": args.seed, "max_degree": DEFAULT_MAX_DEGREE}


def _load_tree_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DecodeError(f"bad tree file: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("kind") not in ("verkle", "merkle"):
        raise DecodeError("tree file must record kind 'verkle' or 'merkle'")
    return doc


def _rebuild_verkle(doc: dict):
    setup = _setup_for(None, record=doc["setup"])
    config = TreeConfig(stem_width=int(doc["stem_width"]))
    tree = VerkleTree(config, setup)
    members = [_hex_bytes(m, "member") for m in doc["members"]]
    for raw in members:
        tree.insert(derive_key(raw, config), _member_value(raw))
    root = tree.commit()
    if bn254.g1_to_bytes(root).hex() != doc["root"]:
        raise ConfigError("tree file root mismatch: stale or edited file")
    return setup, config, tree, members, root


def _rebuild_merkle(doc: dict):
    members = [_hex_bytes(m, "member") for m in doc["members"]]
    tree = merkle.build_tree(members, doc.get("hash", "keccak256"))
    if tree.root.hex() != doc["root"]:
        raise ConfigError("tree file root mismatch: stale or edited file")
    return tree, members


def _cmd_setup(args) -> int:
    seed = args.seed if args.setup_seed is None else args.setup_seed
    setup = kzg.generate_setup(_seed_bytes(seed), args.max_degree)
    kzg.save_setup(setup, args.out)
    print(f"setup written to {args.out} (max degree {args.max_degree})")
    return 0


def _cmd_build(args) -> int:
    members = _read_members(args.input, args.seed)
    if args.kind == "verkle":
        width = args.stem_width or stem_width_for(len(members))
        config = TreeConfig(stem_width=width)
        setup = _setup_for(args)
        tree = VerkleTree(config, setup)
        for raw in members:
            tree.insert(derive_key(raw, config), _member_value(raw))
        root_hex = bn254.g1_to_bytes(tree.commit()).hex()
        doc = {"kind": "verkle", "stem_width": width,
               "setup": _setup_record(args),
               "members": [m.hex() for m in members], "root": root_hex}
    else:
        tree = merkle.build_tree(members, args.hash)
        root_hex = tree.root.hex()
        doc = {"kind": "merkle", "hash": args.hash,
               "members": [m.hex() for m in members], "root": root_hex}
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(root_hex)
    return 0


def _cmd_prove(args) -> int:
    doc = _load_tree_file(args.tree)
    raw = _hex_bytes(args.key, "key")
    if doc["kind"] == "verkle":
        setup, config, tree, members, _root = _rebuild_verkle(doc)
        key = derive_key(raw, config)
        try:
            proof = tree.generate_proof(key)
        except KeyError:
            raise ConfigError(f"key {args.key} is not a member of the tree")
        encode = (encode_proof_compact if args.encoding == "compact"
                  else encode_proof_word)
        payload = encode(proof)
        value = tree.get(key)
        print(kzg.scalar_to_bytes(value).hex())
    else:
        tree, members = _rebuild_merkle(doc)
        try:
            idx = members.index(raw)
        except ValueError:
            raise ConfigError(f"key {args.key} is not a member of the tree")
        payload = merkle.encode_proof(merkle.get_proof(tree, idx))
    with open(args.out, "wb") as fh:
        fh.write(payload)
    return 0


def _decode_verkle_proof(data: bytes):
    # compact leads with its magic byte; word proofs lead with the
    # zero padding of the stem word, so the first byte disambiguates
    if data[:1] == b"\x56":
        return decode_proof_compact(data)
    return decode_proof_word(data)


def _cmd_verify(args) -> int:
    with open(args.proof, "rb") as fh:
        payload = fh.read()
    root_bytes = _hex_bytes(args.root, "root")
    raw = _hex_bytes(args.key, "key")
    if args.kind == "verkle":
        if args.value is None:
            raise ConfigError("verkle verification requires --value")
        root = bn254.g1_from_bytes(root_bytes)
        value = kzg.scalar_from_bytes(_hex_bytes(args.value, "value"))
        proof = _decode_verkle_proof(payload)
        config = TreeConfig(stem_width=len(proof.stem))
        key = derive_key(raw, config)
        setup = _setup_for(args)
        ok = verify_proof(setup, root, key, value, proof)
    else:
        if len(root_bytes) != merkle.DIGEST_LEN:
            raise DecodeError("merkle root must be 32 bytes")
        siblings = merkle.decode_proof(payload)
        ok = merkle.verify_proof(root_bytes, raw, siblings, args.hash)
    print("verified" if ok else "not verified")
    return 0 if ok else 1


def _cmd_bench(args) -> int:
    if args.config:
        config = BenchConfig.from_file(args.config)
    else:
        config = BenchConfig(seed=args.seed)
    report = run_benchmark(config, params=_load_params(args))
    if config.output_path:
        export_report(report, config.output_path, config.output_format)
        print(f"report written to {config.output_path}")
    else:
        text = (report_to_csv(report) if config.output_format == "csv"
                else report_to_json(report))
        sys.stdout.write(text)
    return 0


def _cmd_crossover(args) -> int:
    rows = gas.crossover_series(args.min, args.max, params=_load_params(args))
    text = (gas.comparison_to_csv(rows) if args.format == "csv"
            else gas.comparison_to_json(rows))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"series written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verklebench",
        description="verkle/merkle membership proof benchmark harness")
    parser.add_argument("--seed", type=int, default=0,
                        help="global 64-bit seed for generated data and setups")
    parser.add_argument("--params", metavar="FILE",
                        help="gas parameter overrides (key=value lines)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="write a trusted setup file")
    p.add_argument("--seed", dest="setup_seed", type=int, default=None,
                   help="override the global seed for this setup")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_setup)

    p = sub.add_parser("build", help="build a tree file from members")
    p.add_argument("--kind", choices=("verkle", "merkle"), required=True)
    p.add_argument("--input", required=True,
                   help="member file (hex lines) or generated:<n>")
    p.add_argument("--stem-width", type=int, default=None)
    p.add_argument("--setup", metavar="FILE",
                   help="setup file (default: derived from --seed)")
    p.add_argument("--hash", choices=("keccak256", "sha256"),
                   default="keccak256")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("prove", help="emit one membership proof")
    p.add_argument("--tree", required=True)
    p.add_argument("--key", required=True, help="member bytes as hex")
    p.add_argument("--encoding", choices=("compact", "word"),
                   default="compact")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("verify", help="verify an encoded proof")
    p.add_argument("--kind", choices=("verkle", "merkle"), default="verkle")
    p.add_argument("--root", required=True, help="root commitment as hex")
    p.add_argument("--key", required=True, help="member bytes as hex")
    p.add_argument("--value", default=None,
                   help="attested 32-byte scalar as hex (verkle)")
    p.add_argument("--proof", required=True, help="encoded proof file")
    p.add_argument("--setup", metavar="FILE",
                   help="setup file (default: derived from --seed)")
    p.add_argument("--hash", choices=("keccak256", "sha256"),
                   default="keccak256")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="run the comparative benchmark")
    p.add_argument("--config", metavar="FILE",
                   help="benchmark config JSON (default: built-in config)")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("crossover", help="export the modeled gas series")
    p.add_argument("--min", type=int, default=2 ** 3)
    p.add_argument("--max", type=int, default=2 ** 20)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_crossover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BenchmarkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DecodeError, MalformedProofError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
