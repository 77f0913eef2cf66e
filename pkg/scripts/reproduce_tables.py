#!/usr/bin/env python3
"""Print the closed-form gas models next to the measured on-chain figures.

Three blocks: verkle verification cost by tree level, merkle verification
cost by proof depth, and the modeled crossover series over power-of-two
capacities. Drift columns show how far each model lands from the frozen
measurements.
"""

import argparse

from verklebench import gas

VERKLE_MEASURED_TOTAL = {2: 491527, 3: 637287, 4: 782284, 5: 927878, 6: 1080888}
VERKLE_MEASURED_CALLDATA = {2: 25210, 3: 27770, 4: 30330, 5: 32890, 6: 35450}
MERKLE_MEASURED_TOTAL = {3: 28426, 7: 33451, 10: 37793, 15: 44550, 20: 51270}
MERKLE_MEASURED_CALLDATA = {3: 2816, 7: 4736, 10: 6386, 15: 8948, 20: 11500}


def drift(model: int, measured: int) -> str:
    return f"{(model - measured) / measured:+.2%}"


def verkle_block() -> None:
    print("verkle verification cost by level (capacity 256^L)")
    print(f"{'L':>3} {'total model':>12} {'total meas':>11} {'drift':>7} "
          f"{'calldata model':>14} {'calldata meas':>13} {'drift':>7}")
    for level in sorted(VERKLE_MEASURED_TOTAL):
        total = gas.verkle_total_gas(256 ** level, 256)
        calldata = gas.estimate_verkle_calldata(level)
        print(f"{level:>3} {total:>12,} {VERKLE_MEASURED_TOTAL[level]:>11,} "
              f"{drift(total, VERKLE_MEASURED_TOTAL[level]):>7} "
              f"{calldata:>14,} {VERKLE_MEASURED_CALLDATA[level]:>13,} "
              f"{drift(calldata, VERKLE_MEASURED_CALLDATA[level]):>7}")


def merkle_block() -> None:
    print("merkle verification cost by proof depth (capacity 2^d)")
    print(f"{'d':>3} {'total model':>12} {'total meas':>11} {'drift':>7} "
          f"{'calldata model':>14} {'calldata meas':>13} {'drift':>7}")
    for depth in sorted(MERKLE_MEASURED_TOTAL):
        total = gas.merkle_total_gas(2 ** depth)
        calldata = gas.estimate_merkle_calldata(depth)
        print(f"{depth:>3} {total:>12,} {MERKLE_MEASURED_TOTAL[depth]:>11,} "
              f"{drift(total, MERKLE_MEASURED_TOTAL[depth]):>7} "
              f"{calldata:>14,} {MERKLE_MEASURED_CALLDATA[depth]:>13,} "
              f"{drift(calldata, MERKLE_MEASURED_CALLDATA[depth]):>7}")


def crossover_block(cap_min: int, cap_max: int) -> None:
    print(f"modeled crossover series, capacities [{cap_min}, {cap_max}]")
    print(gas.comparison_to_csv(gas.crossover_series(cap_min, cap_max)),
          end="")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cap-min", type=int, default=2 ** 3)
    parser.add_argument("--cap-max", type=int, default=2 ** 20)
    args = parser.parse_args()
    verkle_block()
    print()
    merkle_block()
    print()
    crossover_block(args.cap_min, args.cap_max)


if __name__ == "__main__":
    main()
