import hashlib
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verklebench import bn254 as bn
from verklebench import kzg
from verklebench.errors import CapacityError, DecodeError

R = kzg.SCALAR_MODULUS


def lagrange_eval(values, z):
    """Direct Lagrange-basis evaluation over domain 0..len(values)-1."""
    total = 0
    n = len(values)
    for i, v in enumerate(values):
        num = den = 1
        for j in range(n):
            if j != i:
                num = num * (z - j) % R
                den = den * (i - j) % R
        total = (total + v * num * pow(den, R - 2, R)) % R
    return total % R


def test_setup_is_deterministic(tmp_path):
    a = kzg.generate_setup(b"same-seed", 6)
    b = kzg.generate_setup(b"same-seed", 6)
    assert a.g1_powers == b.g1_powers
    assert a.g2_tau == b.g2_tau
    pa, pb = tmp_path / "a.bin", tmp_path / "b.bin"
    kzg.save_setup(a, str(pa))
    kzg.save_setup(b, str(pb))
    assert pa.read_bytes() == pb.read_bytes()
    assert kzg.generate_setup(b"other-seed", 6).g1_powers != a.g1_powers


def test_setup_powers_match_independent_tau_recomputation():
    seed = b"oracle-check"
    setup = kzg.generate_setup(seed, 300)
    # recompute tau from the published derivation rule
    digest = hashlib.sha256(seed).digest()
    tau = int.from_bytes(digest, "big") % R
    while tau == 0:
        digest = hashlib.sha256(digest).digest()
        tau = int.from_bytes(digest, "big") % R
    for k in (0, 1, 2):
        assert setup.g1_powers[k] == bn.g1_mul(bn.G1_GEN, pow(tau, k, R))
    assert setup.g2_tau == bn.g2_mul(bn.G2_GEN, tau)


def test_setup_pairing_consistency(setup255):
    assert bn.pairing(setup255.g1_powers[1], setup255.g2_generator) == \
        bn.pairing(setup255.g1_powers[0], setup255.g2_tau)


def test_setup_size_limits():
    with pytest.raises(ValueError):
        kzg.generate_setup(b"s", 0)
    with pytest.raises(CapacityError):
        kzg.generate_setup(b"s", kzg.SETUP_DEGREE_LIMIT + 1)


def test_setup_file_roundtrip(tmp_path, setup255):
    small = kzg.generate_setup(b"file-rt", 9)
    path = tmp_path / "setup.bin"
    kzg.save_setup(small, str(path))
    loaded = kzg.load_setup(str(path))
    assert loaded.max_degree == 9
    assert loaded.g1_powers == small.g1_powers
    assert loaded.g2_generator == small.g2_generator
    assert loaded.g2_tau == small.g2_tau
    raw = bytearray(path.read_bytes())
    raw[0] ^= 0xFF
    bad = tmp_path / "bad.bin"
    bad.write_bytes(bytes(raw))
    with pytest.raises(DecodeError):
        kzg.load_setup(str(bad))
    trunc = tmp_path / "trunc.bin"
    trunc.write_bytes(path.read_bytes()[:-5])
    with pytest.raises(DecodeError):
        kzg.load_setup(str(trunc))


def test_scalar_bytes_roundtrip():
    assert kzg.scalar_to_bytes(5) == b"\x00" * 31 + b"\x05"
    assert kzg.scalar_from_bytes(kzg.scalar_to_bytes(R - 1)) == R - 1
    with pytest.raises(ValueError):
        kzg.scalar_from_bytes(b"\x01" * 31)
    with pytest.raises(ValueError):
        kzg.scalar_from_bytes(R.to_bytes(32, "big"))


def test_interpolate_basics():
    assert kzg.interpolate_vector([7, 7, 7]) == [7]
    assert kzg.interpolate_vector([0, 1]) == [0, 1]
    with pytest.raises(ValueError):
        kzg.interpolate_vector([])


def test_interpolate_matches_lagrange_oracle():
    rng = random.Random(1)
    values = [rng.randrange(R) for _ in range(8)]
    poly = kzg.interpolate_vector(values)
    assert kzg.poly_degree(poly) < 8
    for i, v in enumerate(values):
        assert kzg.evaluate_poly(poly, i) == v
    for z in (8, 1000, rng.randrange(R)):
        assert kzg.evaluate_poly(poly, z) == lagrange_eval(values, z)


def test_evaluate_poly():
    assert kzg.evaluate_poly([5], 123456) == 5
    assert kzg.evaluate_poly([0, 1], 7) == 7
    assert kzg.evaluate_poly([], 3) == 0
    assert kzg.evaluate_poly([1, 2, 3], 10) == 321


def test_commit_edges(setup255):
    assert kzg.commit(setup255, []) is None
    assert kzg.commit(setup255, [0, 0]) is None
    c = kzg.commit(setup255, [9])
    assert c == bn.g1_mul_gen(9)
    small = kzg.generate_setup(b"tiny", 2)
    with pytest.raises(CapacityError):
        kzg.commit(small, [1, 2, 3, 4])


def test_commit_homomorphism(setup255):
    rng = random.Random(2)
    for _ in range(10):
        f = [rng.randrange(R) for _ in range(6)]
        g = [rng.randrange(R) for _ in range(9)]
        s = [(a + b) % R for a, b in
             zip(f + [0] * 3, g)]
        lhs = bn.g1_add(kzg.commit(setup255, f), kzg.commit(setup255, g))
        assert lhs == kzg.commit(setup255, s)


def test_commit_values_matches_interpolated_commit(setup255):
    rng = random.Random(3)
    sparse = {rng.randrange(256): rng.randrange(1, R) for _ in range(12)}
    dense = [sparse.get(i, 0) for i in range(256)]
    via_dict = kzg.commit_values(setup255, sparse, 256)
    via_list = kzg.commit_values(setup255, dense)
    via_coeffs = kzg.commit(setup255, kzg.interpolate_vector(dense))
    assert via_dict == via_list == via_coeffs


def test_open_and_verify_completeness(setup255):
    rng = random.Random(4)
    for _ in range(20):
        deg = rng.randrange(1, 17)
        poly = [rng.randrange(R) for _ in range(deg + 1)]
        z = rng.randrange(deg + 1)
        y = kzg.evaluate_poly(poly, z)
        witness = kzg.open_at(setup255, poly, z)
        assert kzg.verify_opening(setup255, kzg.commit(setup255, poly),
                                  z, y, witness)


def test_open_special_cases(setup255):
    # constant polynomial: zero quotient, identity witness
    assert kzg.open_at(setup255, [42], 5) is None
    assert kzg.verify_opening(setup255, kzg.commit(setup255, [42]), 5, 42,
                              None)
    # f(x) = x at z = 0: quotient is the constant 1
    w = kzg.open_at(setup255, [0, 1], 0)
    assert w == setup255.g1_powers[0]
    assert kzg.verify_opening(setup255, kzg.commit(setup255, [0, 1]), 0, 0, w)


def test_verify_rejects_wrong_claims(setup255):
    rng = random.Random(6)
    poly = [rng.randrange(R) for _ in range(8)]
    c = kzg.commit(setup255, poly)
    z = 3
    y = kzg.evaluate_poly(poly, z)
    w = kzg.open_at(setup255, poly, z)
    assert kzg.verify_opening(setup255, c, z, y, w)
    assert not kzg.verify_opening(setup255, c, z, (y + 1) % R, w)
    assert not kzg.verify_opening(setup255, c, z + 1, y, w)
    assert not kzg.verify_opening(setup255, c, z, y, bn.g1_mul_gen(123))


def test_witness_byte_tampers_never_verify(setup255):
    rng = random.Random(7)
    rejected = 0
    for _ in range(25):
        poly = [rng.randrange(R) for _ in range(5)]
        z = rng.randrange(5)
        y = kzg.evaluate_poly(poly, z)
        c = kzg.commit(setup255, poly)
        raw = bytearray(bn.g1_to_bytes(kzg.open_at(setup255, poly, z)))
        raw[rng.randrange(64)] ^= 1 << rng.randrange(8)
        try:
            mangled = bn.g1_from_bytes(bytes(raw))
        except DecodeError:
            rejected += 1
            continue
        assert not kzg.verify_opening(setup255, c, z, y, mangled)
        rejected += 1
    assert rejected == 25


def test_evaluation_form_opening_matches_coefficient_path(setup255):
    rng = random.Random(8)
    sparse = {rng.randrange(256): rng.randrange(1, R) for _ in range(20)}
    dense = [sparse.get(i, 0) for i in range(256)]
    poly = kzg.interpolate_vector(dense)
    for z in (0, 17, 255):
        y_eval, w_eval = kzg.open_values_at(setup255, sparse, 256, z)
        assert y_eval == kzg.evaluate_poly(poly, z)
        assert w_eval == kzg.open_at(setup255, poly, z)


def test_evaluation_form_without_lagrange_cache(tmp_path, setup255):
    # file-loaded setups drop the cache and fall back to coefficient form
    path = tmp_path / "s.bin"
    kzg.save_setup(setup255, str(path))
    loaded = kzg.load_setup(str(path))
    assert loaded.lagrange_g1 is None
    values = {3: 11, 200: 22}
    assert kzg.open_values_at(loaded, values, 256, 3) == \
        kzg.open_values_at(setup255, values, 256, 3)
    assert kzg.commit_values(loaded, values, 256) == \
        kzg.commit_values(setup255, values, 256)


def test_commitment_to_scalar(setup255):
    expect = int.from_bytes(hashlib.sha256(b"\x00" * 64).digest(), "big") % R
    assert kzg.commitment_to_scalar(None) == expect
    a = kzg.commit(setup255, [1, 2])
    b = kzg.commit(setup255, [2, 1])
    assert kzg.commitment_to_scalar(a) == kzg.commitment_to_scalar(a)
    assert kzg.commitment_to_scalar(a) != kzg.commitment_to_scalar(b)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=R - 1),
                min_size=1, max_size=12),
       st.integers(min_value=0, max_value=R - 1))
def test_interpolation_evaluation_roundtrip(values, z):
    poly = kzg.interpolate_vector(values)
    for i, v in enumerate(values):
        assert kzg.evaluate_poly(poly, i) == v
    assert kzg.evaluate_poly(poly, z) == lagrange_eval(values, z)
