"""KZG polynomial commitments: interpolate, commit, open at a point, verify.

Polynomials are lists of ints (scalars mod R), lowest degree first. Vectors
commit through the evaluation domain {0, 1, ..., n-1}: interpolateVector
returns the unique polynomial with f(i) = values[i].

Two commit/open paths exist and agree bit-for-bit:
  - coefficient form: interpolate, then MSM over the monomial powers
    [tau^k]G1 from the setup;
  - evaluation form: MSM over cached Lagrange-basis points [L_i(tau)]G1,
    with the opening quotient computed directly on values. This is the fast
    path for sparse vectors (the quotient never needs dense interpolation).
The Lagrange cache is built during generate_setup while tau is still in
scope; setups loaded from disk lack it and fall back to coefficient form.

Hash-to-scalar is a SHA-256 digest reduced mod R. The ~2^-128 modulo bias is
irrelevant for binding and accepted for simplicity.
"""

from dataclasses import dataclass, field
import hashlib

from . import bn254 as bn
from .bn254 import R
from .errors import CapacityError, DecodeError

SCALAR_MODULUS = R

# Ceiling on setup size: 2^14 powers is ~1 MB serialized and a few seconds of
# generation; anything larger is a config mistake at desk scale.
SETUP_DEGREE_LIMIT = 1 << 14

SETUP_MAGIC = b"KZGS"
SETUP_VERSION = 1


# ---------------------------------------------------------------------------
# Scalars


def scalar_to_bytes(v: int) -> bytes:
    return (v % R).to_bytes(32, "big")


def scalar_from_bytes(data: bytes) -> int:
    if len(data) != 32:
        raise DecodeError(f"scalar must be 32 bytes, got {len(data)}")
    v = int.from_bytes(data, "big")
    if v >= R:
        raise DecodeError("scalar exceeds the field order")
    return v


def hash_to_scalar(data: bytes) -> int:
    return int.from_bytes(hashlib.sha256(data).digest(), "big") % R


# ---------------------------------------------------------------------------
# Polynomials (coefficient lists, lowest degree first)


def poly_degree(coeffs) -> int:
    """Degree ignoring trailing zeros; -1 for the zero polynomial."""
    for k in range(len(coeffs) - 1, -1, -1):
        if coeffs[k] % R:
            return k
    return -1


def evaluate_poly(coeffs, z: int) -> int:
    z %= R
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * z + c) % R
    return acc


def interpolate_vector(values) -> list:
    """Coefficients of the unique f with f(i) = values[i], i = 0..n-1."""
    n = len(values)
    if n == 0:
        raise ValueError("cannot interpolate an empty vector")
    if n == 1:
        return [values[0] % R]
    # master polynomial A(X) = prod (X - i), then per-point synthetic division
    master = [1]
    for i in range(n):
        master = [(-i * master[0]) % R] + [
            (master[k - 1] - i * master[k]) % R for k in range(1, len(master))
        ] + [1]
    coeffs = [0] * n
    for i, v in enumerate(values):
        v %= R
        if v == 0:
            continue
        qi = _synthetic_div(master, i)
        denom = evaluate_poly(qi, i)  # A'(i), since A = qi * (X - i)
        scale = v * pow(denom, R - 2, R) % R
        for k in range(n):
            coeffs[k] = (coeffs[k] + qi[k] * scale) % R
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _synthetic_div(coeffs, z: int):
    """Quotient of coeffs by (X - z); the caller owns the remainder check."""
    n = len(coeffs) - 1
    q = [0] * n
    q[n - 1] = coeffs[n] % R
    for k in range(n - 1, 0, -1):
        q[k - 1] = (coeffs[k] + z * q[k]) % R
    return q


# ---------------------------------------------------------------------------
# Trusted setup


@dataclass(eq=False)
class TrustedSetup:
    """Powers of a discarded secret scalar in both pairing groups."""

    g1_powers: tuple
    g2_generator: tuple
    g2_tau: tuple
    max_degree: int
    # [L_i(tau)]G1 for the evaluation domain; present only on generated
    # setups (building it from a file would need tau). Not serialized.
    lagrange_g1: tuple = field(default=None, repr=False)
    _prep_gen: tuple = field(default=None, repr=False)
    _prep_shift: dict = field(default_factory=dict, repr=False)

    @property
    def domain_width(self) -> int:
        return min(self.max_degree + 1, 256)

    def prepared_generator(self):
        if self._prep_gen is None:
            self._prep_gen = bn.prepare_g2(self.g2_generator)
        return self._prep_gen

    def prepared_shift(self, z: int):
        """Lines for g2Tau - z*G2, memoized (verifiers reuse small z)."""
        z %= R
        prep = self._prep_shift.get(z)
        if prep is None:
            shifted = bn.g2_add(self.g2_tau, bn.g2_neg(bn.g2_mul(self.g2_generator, z)))
            prep = bn.prepare_g2(shifted)
            self._prep_shift[z] = prep
        return prep


def _tau_from_seed(seed: bytes) -> int:
    digest = hashlib.sha256(seed).digest()
    tau = int.from_bytes(digest, "big") % R
    while tau == 0:  # probability ~2^-254, but stay total
        digest = hashlib.sha256(digest).digest()
        tau = int.from_bytes(digest, "big") % R
    return tau


def generate_setup(seed: bytes, max_degree: int) -> TrustedSetup:
    """Deterministic test-grade setup: tau = sha256(seed) mod R, discarded."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if max_degree > SETUP_DEGREE_LIMIT:
        raise CapacityError(
            f"max_degree {max_degree} exceeds the limit {SETUP_DEGREE_LIMIT}")
    tau = _tau_from_seed(seed)
    powers = []
    acc = 1
    for _ in range(max_degree + 1):
        powers.append(bn.g1_mul_gen(acc))
        acc = acc * tau % R
    g2_tau = bn.g2_mul(bn.G2_GEN, tau)
    width = min(max_degree + 1, 256)
    lag = tuple(bn.g1_mul_gen(v) for v in _lagrange_at(tau, width))
    setup = TrustedSetup(tuple(powers), bn.G2_GEN, g2_tau, max_degree,
                         lagrange_g1=lag)
    _check_setup(setup)
    return setup


def _lagrange_at(tau: int, width: int):
    """[L_0(tau), ..., L_{width-1}(tau)] for the domain {0..width-1}."""
    for i in range(width):
        if (tau - i) % R == 0:  # tau landed in the domain: L_i are indicators
            return [1 if j == i else 0 for j in range(width)]
    dom = _domain_tables(width)
    a_tau = 1
    for j in range(width):
        a_tau = a_tau * (tau - j) % R
    diffs = [(tau - i) % R for i in range(width)]
    inv_diffs = _batch_inverse(diffs)
    return [a_tau * dom["aprime_inv"][i] % R * inv_diffs[i] % R
            for i in range(width)]


def _check_setup(setup: TrustedSetup) -> None:
    if len(setup.g1_powers) != setup.max_degree + 1:
        raise DecodeError("setup power count does not match max_degree")
    lhs = bn.pairing(setup.g1_powers[1], setup.g2_generator)
    rhs = bn.pairing(setup.g1_powers[0], setup.g2_tau)
    if lhs != rhs:
        raise DecodeError("setup fails the pairing consistency check")


def save_setup(setup: TrustedSetup, path: str) -> None:
    blob = bytearray()
    blob += SETUP_MAGIC
    blob.append(SETUP_VERSION)
    blob += setup.max_degree.to_bytes(4, "big")
    for pt in setup.g1_powers:
        blob += bn.g1_to_bytes(pt)
    blob += bn.g2_to_bytes(setup.g2_generator)
    blob += bn.g2_to_bytes(setup.g2_tau)
    with open(path, "wb") as fh:
        fh.write(bytes(blob))


def load_setup(path: str) -> TrustedSetup:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 9 or data[:4] != SETUP_MAGIC:
        raise DecodeError("not a setup file (bad magic)")
    if data[4] != SETUP_VERSION:
        raise DecodeError(f"unsupported setup version {data[4]}")
    max_degree = int.from_bytes(data[5:9], "big")
    expect = 9 + 64 * (max_degree + 1) + 128 + 128
    if len(data) != expect:
        raise DecodeError(f"setup file is {len(data)} bytes, expected {expect}")
    off = 9
    powers = []
    for _ in range(max_degree + 1):
        powers.append(bn.g1_from_bytes(data[off:off + 64]))
        off += 64
    g2_gen = bn.g2_from_bytes(data[off:off + 128])
    g2_tau = bn.g2_from_bytes(data[off + 128:off + 256])
    setup = TrustedSetup(tuple(powers), g2_gen, g2_tau, max_degree)
    _check_setup(setup)
    return setup


# ---------------------------------------------------------------------------
# Commit / open / verify


def commit(setup: TrustedSetup, coeffs) -> tuple:
    """MSM of coefficients over the G1 powers; identity for the zero poly."""
    deg = poly_degree(coeffs)
    if deg > setup.max_degree:
        raise CapacityError(
            f"degree {deg} exceeds setup max_degree {setup.max_degree}")
    if deg < 0:
        return None
    return bn.g1_msm(setup.g1_powers[:deg + 1], [c % R for c in coeffs[:deg + 1]])


def commit_values(setup: TrustedSetup, values, width: int = None) -> tuple:
    """Commit to the interpolation of a value vector.

    values is a list (dense) or an index->scalar dict (sparse). Uses the
    Lagrange-point cache when available; otherwise interpolates and commits
    in coefficient form. Both paths yield the same group element.
    """
    if isinstance(values, dict):
        if width is None:
            raise ValueError("sparse vectors need an explicit width")
        items = [(i, v % R) for i, v in values.items() if v % R]
    else:
        width = len(values) if width is None else width
        items = [(i, v % R) for i, v in enumerate(values) if v % R]
    if width < 1 or width - 1 > setup.max_degree:
        raise CapacityError(f"vector width {width} out of range for setup")
    for i, _ in items:
        if not 0 <= i < width:
            raise ValueError(f"vector index {i} outside width {width}")
    if not items:
        return None
    if setup.lagrange_g1 is not None and width == setup.domain_width:
        pts = [setup.lagrange_g1[i] for i, _ in items]
        return bn.g1_msm(pts, [v for _, v in items])
    dense = [0] * width
    for i, v in items:
        dense[i] = v
    return commit(setup, interpolate_vector(dense))


def open_at(setup: TrustedSetup, coeffs, z: int):
    """Witness [q(tau)]G1 for q = (f - f(z)) / (X - z), by synthetic division."""
    deg = poly_degree(coeffs)
    if deg > setup.max_degree:
        raise CapacityError(
            f"degree {deg} exceeds setup max_degree {setup.max_degree}")
    z %= R
    if deg < 1:
        return None  # constant or zero polynomial: zero quotient
    trimmed = [c % R for c in coeffs[:deg + 1]]
    q = _synthetic_div(trimmed, z)
    rem = (trimmed[0] + z * q[0]) % R
    assert rem == evaluate_poly(trimmed, z), "nonzero division remainder"
    return bn.g1_msm(setup.g1_powers[:deg], q)


def open_values_at(setup: TrustedSetup, values, width: int, z: int):
    """(y, witness) opening a value vector at an in-domain point z.

    Evaluation-form quotient: q(i) = (v_i - v_z)/(i - z) off the point and
    the barycentric derivative sum at i = z, committed with the Lagrange
    cache. Bit-identical to open_at over the interpolated polynomial.
    """
    if not 0 <= z < width:
        raise ValueError("z must be a domain point for evaluation-form opening")
    if isinstance(values, dict):
        dense = [0] * width
        for i, v in values.items():
            dense[i] = v % R
    else:
        if len(values) != width:
            raise ValueError("dense vector length must equal width")
        dense = [v % R for v in values]
    if setup.lagrange_g1 is None or width != setup.domain_width:
        coeffs = interpolate_vector(dense)
        return dense[z], open_at(setup, coeffs, z)
    dom = _domain_tables(width)
    inv_diff = dom["inv_diff"]
    aprime = dom["aprime"]
    aprime_inv = dom["aprime_inv"]
    vz = dense[z]
    q = [0] * width
    qz = vz * dom["deriv_sum"][z] % R
    apz = aprime[z]
    for i in range(width):
        if i == z:
            continue
        vi = dense[i]
        if vi or vz:
            q[i] = (vi - vz) * inv_diff[i - z] % R
        if vi:
            qz += vi * apz % R * aprime_inv[i] % R * inv_diff[z - i] % R
    q[z] = qz % R
    witness = bn.g1_msm(setup.lagrange_g1, q)
    return vz, witness


def verify_opening(setup: TrustedSetup, commitment, z: int, y: int, witness) -> bool:
    """Pairing check e(C - y*G1, G2) == e(W, [tau]G2 - z*G2)."""
    a = bn.g1_add(commitment, bn.g1_neg(bn.g1_mul_gen(y % R)))
    return bn.pairing_check([
        (a, setup.prepared_generator()),
        (bn.g1_neg(witness), setup.prepared_shift(z)),
    ])


def commitment_to_scalar(commitment) -> int:
    """Binding reduction of a commitment to a parent-vector entry."""
    return hash_to_scalar(bn.g1_to_bytes(commitment))


# ---------------------------------------------------------------------------
# Domain tables for the evaluation form (per width, built once)


_DOMAIN_CACHE = {}


def _batch_inverse(vals):
    n = len(vals)
    prefix = [1] * (n + 1)
    for i, v in enumerate(vals):
        prefix[i + 1] = prefix[i] * v % R
    inv = pow(prefix[n], R - 2, R)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * inv % R
        inv = inv * vals[i] % R
    return out


def _domain_tables(width: int):
    tables = _DOMAIN_CACHE.get(width)
    if tables is not None:
        return tables
    # A'(i) = prod_{j != i} (i - j) = (-1)^(width-1-i) * i! * (width-1-i)!
    fact = [1] * width
    for i in range(1, width):
        fact[i] = fact[i - 1] * i % R
    aprime = []
    for i in range(width):
        v = fact[i] * fact[width - 1 - i] % R
        if (width - 1 - i) & 1:
            v = R - v
        aprime.append(v)
    aprime_inv = _batch_inverse(aprime)
    small_inv = _batch_inverse(list(range(1, width)))
    # inv_diff[d] = 1/d mod R for d in -(width-1)..width-1, d != 0
    inv_diff = {}
    for d in range(1, width):
        inv_diff[d] = small_inv[d - 1]
        inv_diff[-d] = R - small_inv[d - 1]
    # deriv_sum[m] = sum_{j != m} 1/(m - j), via prefix sums of 1/d
    prefix = [0] * width
    for d in range(1, width):
        prefix[d] = (prefix[d - 1] + small_inv[d - 1]) % R
    deriv_sum = [(prefix[m] - prefix[width - 1 - m]) % R for m in range(width)]
    tables = {"aprime": aprime, "aprime_inv": aprime_inv,
              "inv_diff": inv_diff, "deriv_sum": deriv_sum}
    _DOMAIN_CACHE[width] = tables
    return tables
