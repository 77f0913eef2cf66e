import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verklebench import gas
from verklebench.errors import ConfigError

# frozen measured totals the closed forms must track within 1.5%
VERKLE_MEASURED_TOTAL = {2: 491527, 3: 637287, 4: 782284, 5: 927878, 6: 1080888}
MERKLE_MEASURED_TOTAL = {3: 28426, 7: 33451, 10: 37793, 15: 44550, 20: 51270}
VERKLE_MEASURED_CALLDATA = {2: 25210, 3: 27770, 4: 30330, 5: 32890, 6: 35450}
MERKLE_MEASURED_CALLDATA = {3: 2816, 7: 4736, 10: 6386, 15: 8948, 20: 11500}


def test_ceil_log_boundaries():
    assert gas.ceil_log(2, 1) == 0
    assert gas.ceil_log(2, 2) == 1
    assert gas.ceil_log(2, 3) == 2
    for level in range(1, 21):
        assert gas.ceil_log(2, 2 ** level) == level
        assert gas.ceil_log(2, 2 ** level + 1) == level + 1
    for level in range(1, 7):
        assert gas.ceil_log(256, 256 ** level) == level
        assert gas.ceil_log(256, 256 ** level + 1) == level + 1
    with pytest.raises(ValueError):
        gas.ceil_log(1, 5)
    with pytest.raises(ValueError):
        gas.ceil_log(2, 0)


def test_verkle_total_examples():
    assert gas.verkle_total_gas(256 ** 2, 256) == 496020
    assert gas.verkle_total_gas(256 ** 6, 256) == 1086260
    assert gas.verkle_total_gas(1, 256) == 200900
    for level, measured in VERKLE_MEASURED_TOTAL.items():
        model = gas.verkle_total_gas(256 ** level, 256)
        assert abs(model - measured) / measured < 0.015


def test_merkle_total_examples():
    assert gas.merkle_total_gas(2 ** 3) == 28326
    assert gas.merkle_total_gas(2 ** 20) == 51140
    assert gas.merkle_total_gas(1) == 24300
    for level, measured in MERKLE_MEASURED_TOTAL.items():
        model = gas.merkle_total_gas(2 ** level)
        assert abs(model - measured) / measured < 0.015


def test_calldata_gas_rule():
    assert gas.calldata_gas(b"\xff" * 160) == 2560
    assert gas.calldata_gas(b"", include_base=True) == 21000
    assert gas.calldata_gas(b"\x00" * 32) == 128
    assert gas.calldata_gas(b"\x00\x01", include_base=True) == 21020


def test_calldata_estimates_match_measurements():
    assert gas.estimate_verkle_calldata(2) == 25210
    assert gas.estimate_verkle_calldata(6) == 35450
    for level, measured in VERKLE_MEASURED_CALLDATA.items():
        assert gas.estimate_verkle_calldata(level) == measured
    assert gas.estimate_merkle_calldata(15) == 8960
    assert gas.estimate_merkle_calldata(3) == 2816
    for level, measured in MERKLE_MEASURED_CALLDATA.items():
        model = gas.estimate_merkle_calldata(level)
        assert abs(model - measured) / measured < 0.10


def test_word_encoding_delta_prices_at_2560_gas():
    # one proof level is 160 nonzero bytes on the wire
    assert gas.calldata_gas(b"\x11" * 288) - gas.calldata_gas(b"\x11" * 128) \
        == 2560
    deltas = {gas.estimate_verkle_calldata(lv + 1) -
              gas.estimate_verkle_calldata(lv) for lv in range(2, 6)}
    assert deltas == {2560}


def test_proof_size_bytes():
    assert gas.proof_size_bytes("merkle-binary", 2 ** 30) == 960
    assert gas.proof_size_bytes("merkle-binary", 2 ** 20) == 640
    for c in (4, 100, 2 ** 20):
        assert gas.proof_size_bytes("merkle-kary", c, 2) == \
            gas.proof_size_bytes("merkle-binary", c)
    assert gas.proof_size_bytes("merkle-kary", 256 ** 2, 16) == 32 * 15 * 4
    small = gas.proof_size_bytes("verkle", 256 ** 2, 256)
    large = gas.proof_size_bytes("verkle", 256 ** 6, 256)
    assert small == 288
    assert large - small == 4 * 160
    with pytest.raises(ValueError):
        gas.proof_size_bytes("trie", 8, 2)


def test_crossover_series():
    rows = gas.crossover_series(2 ** 3, 2 ** 20)
    assert len(rows) == 18
    assert all(r.merkle_total_gas < r.verkle_total_gas for r in rows)
    assert rows[0].capacity == 8
    assert abs(rows[0].ratio - 496020 / 28326) < 1e-9
    single = gas.crossover_series(64, 64)
    assert len(single) == 1 and single[0].capacity == 64
    with pytest.raises(ValueError):
        gas.crossover_series(1, 8)


def test_per_bit_slope_dominance():
    params = gas.DEFAULT_PARAMS
    assert params.verkle_slope / 8 > params.merkle_slope
    # between level boundaries the verkle total is flat, so the gap is
    # only guaranteed to grow when sampled at the boundaries themselves
    gaps = [gas.verkle_total_gas(256 ** level, 256) -
            gas.merkle_total_gas(256 ** level)
            for level in range(1, 7)]
    assert all(b > a for a, b in zip(gaps, gaps[1:]))


def test_step_structure():
    slope = gas.DEFAULT_PARAMS.verkle_slope
    for level in (1, 2, 3):
        flat_hi = gas.verkle_total_gas(256 ** level, 256)
        flat_lo = gas.verkle_total_gas(256 ** (level - 1) + 1, 256)
        assert flat_lo == flat_hi
        assert gas.verkle_total_gas(256 ** level + 1, 256) == flat_hi + slope
    mslope = gas.DEFAULT_PARAMS.merkle_slope
    for level in (1, 5, 12):
        flat = gas.merkle_total_gas(2 ** level)
        assert gas.merkle_total_gas(2 ** level + 1) == flat + mslope


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=2 ** 24),
       st.integers(min_value=0, max_value=2 ** 10))
def test_totals_are_monotone(cap, bump):
    assert gas.merkle_total_gas(cap) <= gas.merkle_total_gas(cap + bump)
    assert gas.verkle_total_gas(cap, 256) <= \
        gas.verkle_total_gas(cap + bump, 256)


def test_gas_params_validation():
    defaults = gas.GasParams()
    assert defaults == gas.DEFAULT_PARAMS
    assert defaults.verkle_slope == 147560
    assert defaults.merkle_slope == 1342
    assert defaults.verkle_intercept == 200900
    assert defaults.merkle_intercept == 24300
    with pytest.raises(ConfigError):
        gas.GasParams(verkle_slope=-1)
    with pytest.raises(ConfigError):
        gas.GasParams(base_tx_cost=1.5)


def test_load_gas_params(tmp_path):
    path = tmp_path / "params.txt"
    path.write_text("# comment\nmerkle_slope = 1500\n\nbase_tx_cost=0\n")
    params = gas.load_gas_params(str(path))
    assert params.merkle_slope == 1500
    assert params.base_tx_cost == 0
    assert params.verkle_slope == 147560
    bad = tmp_path / "bad.txt"
    bad.write_text("merkle_slope = fast\n")
    with pytest.raises(ConfigError):
        gas.load_gas_params(str(bad))
    bad.write_text("warp_cost = 3\n")
    with pytest.raises(ConfigError):
        gas.load_gas_params(str(bad))
    bad.write_text("no equals sign\n")
    with pytest.raises(ConfigError):
        gas.load_gas_params(str(bad))


def test_comparison_export_formats_agree():
    rows = gas.crossover_series(2 ** 3, 2 ** 12)
    text = gas.comparison_to_csv(rows)
    assert text.splitlines()[0] == \
        "capacity,merkle_total_gas,verkle_total_gas,ratio"
    assert text.endswith("\n")
    parsed_csv = list(csv.DictReader(io.StringIO(text)))
    parsed_json = json.loads(gas.comparison_to_json(rows))
    assert len(parsed_csv) == len(parsed_json) == len(rows)
    for c, j in zip(parsed_csv, parsed_json):
        assert int(c["capacity"]) == j["capacity"]
        assert int(c["merkle_total_gas"]) == j["merkle_total_gas"]
        assert int(c["verkle_total_gas"]) == j["verkle_total_gas"]
        assert float(c["ratio"]) == j["ratio"]
