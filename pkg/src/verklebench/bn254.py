"""BN254 (alt_bn128) arithmetic: G1/G2 group ops, MSM, optimal ate pairing.

This is the curve behind the EVM's ecAdd/ecMul/ecPairing precompiles, chosen
so commitments serialize to the 64-byte uncompressed points that the
word-aligned proof layout assumes. Everything is plain ints and tuples; class
wrappers cost too much in the MSM and Miller-loop hot paths.

Representation conventions:
  Fp    : int in [0, P)
  Fp2   : (a, b) meaning a*i + b with i^2 = -1        (imaginary part first)
  Fp6   : (x, y, z) meaning x*tau^2 + y*tau + z, tau^3 = xi = 9 + i
  Fp12  : (x, y) meaning x*w + y with w^2 = tau
  G1    : affine (x, y) ints, infinity = None; Jacobian (X, Y, Z)
  G2    : affine (x, y) Fp2 pairs on the twist y^2 = x^3 + 3/xi, infinity None

Formula sources: Jacobian group laws from the EFD (dbl-2009-l, add-2007-bl and
its mixed-add variant); tower arithmetic and final exponentiation from
Beuchat et al., eprint 2010/354 (algorithms 13, 16, 17, 31); line functions
in the shape used by dclxvi and its descendants. The loop parameter is
t = 4965661367192848881, with 6t+2 driven in NAF form.
"""

from .errors import DecodeError

P = 21888242871839275222246405745257275088696311157297823662689037894645226208583
R = 21888242871839275222246405745257275088548364400416034343698204186575808495617
T_PARAM = 4965661367192848881

B1 = 3  # G1 curve constant: y^2 = x^3 + 3

G1_GEN = (1, 2)

# G2 generator coordinates (c0 = real, c1 = imaginary part).
_G2X_C0 = 10857046999023057135944570762232829481370756359578518086990519993285655852781
_G2X_C1 = 11559732032986387107991004021392285783925812861821192530917403151452391805634
_G2Y_C0 = 8495653923123431417604973247489272438418190587263600148770280649306958101930
_G2Y_C1 = 4082367875863433681332203403145435568316851327593401208105741076214120093531
G2_GEN = ((_G2X_C1, _G2X_C0), (_G2Y_C1, _G2Y_C0))


def _to_naf(x):
    out = []
    while x > 0:
        if x & 1:
            d = 2 - (x % 4)
            x -= d
        else:
            d = 0
        out.append(d)
        x >>= 1
    return out


# MSB-first digits of 6t+2, top digit dropped (the loop starts from T = Q).
NAF_6T2 = list(reversed(_to_naf(6 * T_PARAM + 2)))[1:]


# ---------------------------------------------------------------------------
# Fp2


FP2_ZERO = (0, 0)
FP2_ONE = (0, 1)


def fp2_add(a, b):
    return ((a[0] + b[0]) % P, (a[1] + b[1]) % P)


def fp2_sub(a, b):
    return ((a[0] - b[0]) % P, (a[1] - b[1]) % P)


def fp2_neg(a):
    return (-a[0] % P, -a[1] % P)


def fp2_conj(a):
    return (-a[0] % P, a[1])


def fp2_dbl(a):
    return (a[0] * 2 % P, a[1] * 2 % P)


def fp2_mul(a, b):
    ax, ay = a
    bx, by = b
    vx = ax * bx
    vy = ay * by
    return ((ax + ay) * (bx + by) - vy - vx) % P, (vy - vx) % P


def fp2_sqr(a):
    ax, ay = a
    return 2 * ax * ay % P, (ay - ax) * (ay + ax) % P


def fp2_mul_scalar(a, k):
    return (a[0] * k % P, a[1] * k % P)


def fp2_mul_xi(a):
    # times xi = 9 + i: (x i + y)(9 + i) = (9x + y) i + (9y - x)
    ax, ay = a
    return (9 * ax + ay) % P, (9 * ay - ax) % P


def fp2_inv(a):
    ax, ay = a
    t = pow(ax * ax + ay * ay, P - 2, P)
    return (-ax * t % P, ay * t % P)


def fp2_exp(a, k):
    r = FP2_ONE
    for bit in bin(k)[2:]:
        r = fp2_sqr(r)
        if bit == "1":
            r = fp2_mul(r, a)
    return r


XI = (1, 9)
TWIST_B = fp2_mul(fp2_inv(XI), (0, B1))

# Frobenius twists: XI1[k-1] = xi^(k(p-1)/6), XI2 their norms (real elements).
_E6 = (P - 1) // 6
XI1 = [fp2_exp(XI, k * _E6) for k in range(1, 6)]
XI2 = [fp2_mul(x, fp2_conj(x)) for x in XI1]


# ---------------------------------------------------------------------------
# Fp6 = Fp2[tau]/(tau^3 - xi), element (x, y, z) = x tau^2 + y tau + z


FP6_ZERO = (FP2_ZERO, FP2_ZERO, FP2_ZERO)
FP6_ONE = (FP2_ZERO, FP2_ZERO, FP2_ONE)


def fp6_add(a, b):
    return (fp2_add(a[0], b[0]), fp2_add(a[1], b[1]), fp2_add(a[2], b[2]))


def fp6_sub(a, b):
    return (fp2_sub(a[0], b[0]), fp2_sub(a[1], b[1]), fp2_sub(a[2], b[2]))


def fp6_neg(a):
    return (fp2_neg(a[0]), fp2_neg(a[1]), fp2_neg(a[2]))


def fp6_dbl(a):
    return (fp2_dbl(a[0]), fp2_dbl(a[1]), fp2_dbl(a[2]))


def fp6_mul(a, b):
    ax, ay, az = a
    bx, by, bz = b
    t0 = fp2_mul(az, bz)
    t1 = fp2_mul(ay, by)
    t2 = fp2_mul(ax, bx)
    tz = fp2_mul(fp2_add(ax, ay), fp2_add(bx, by))
    tz = fp2_sub(fp2_sub(tz, t1), t2)
    tz = fp2_add(fp2_mul_xi(tz), t0)
    ty = fp2_mul(fp2_add(ay, az), fp2_add(by, bz))
    ty = fp2_sub(fp2_sub(ty, t0), t1)
    ty = fp2_add(ty, fp2_mul_xi(t2))
    tx = fp2_mul(fp2_add(ax, az), fp2_add(bx, bz))
    tx = fp2_sub(fp2_add(tx, t1), fp2_add(t0, t2))
    return (tx, ty, tz)


def fp6_mul_sp(d, s1, s0):
    # d * (s1 tau + s0) with sparse second operand
    dx, dy, dz = d
    t0 = fp2_mul(dz, s0)
    t1 = fp2_mul(dy, s1)
    tz = fp2_mul(fp2_add(dx, dy), s1)
    tz = fp2_add(fp2_mul_xi(fp2_sub(tz, t1)), t0)
    ty = fp2_mul(fp2_add(dy, dz), fp2_add(s1, s0))
    ty = fp2_sub(fp2_sub(ty, t0), t1)
    tx = fp2_add(fp2_mul(dx, s0), t1)
    return (tx, ty, tz)


def fp6_mul_scalar(a, k2):
    return (fp2_mul(a[0], k2), fp2_mul(a[1], k2), fp2_mul(a[2], k2))


def fp6_mul_tau(a):
    return (a[1], a[2], fp2_mul_xi(a[0]))


def fp6_sqr(a):
    ax, ay, az = a
    ay2 = fp2_dbl(ay)
    c4 = fp2_mul(az, ay2)
    c5 = fp2_sqr(ax)
    c1 = fp2_add(fp2_mul_xi(c5), c4)
    c2 = fp2_sub(c4, c5)
    c3 = fp2_sqr(az)
    c4 = fp2_sub(fp2_add(ax, az), ay)
    c5 = fp2_mul(ay2, ax)
    c4 = fp2_sqr(c4)
    c0 = fp2_add(fp2_mul_xi(c5), c3)
    c2 = fp2_sub(fp2_add(fp2_add(c2, c4), c5), c3)
    return (c2, c1, c0)


def fp6_inv(a):
    ax, ay, az = a
    xx = fp2_sqr(ax)
    yy = fp2_sqr(ay)
    zz = fp2_sqr(az)
    xy = fp2_mul(ax, ay)
    xz = fp2_mul(ax, az)
    yz = fp2_mul(ay, az)
    ta = fp2_sub(zz, fp2_mul_xi(xy))
    tb = fp2_sub(fp2_mul_xi(xx), yz)
    tc = fp2_sub(yy, xz)
    f = fp2_add(fp2_mul_xi(fp2_mul(tc, ay)), fp2_mul(ta, az))
    f = fp2_add(f, fp2_mul_xi(fp2_mul(tb, ax)))
    f = fp2_inv(f)
    return (fp2_mul(tc, f), fp2_mul(tb, f), fp2_mul(ta, f))


# ---------------------------------------------------------------------------
# Fp12 = Fp6[w]/(w^2 - tau), element (x, y) = x w + y


FP12_ONE = (FP6_ZERO, FP6_ONE)


def fp12_conj(a):
    return (fp6_neg(a[0]), a[1])


def fp12_mul(a, b):
    axbx = fp6_mul(a[0], b[0])
    axby = fp6_mul(a[0], b[1])
    aybx = fp6_mul(a[1], b[0])
    ayby = fp6_mul(a[1], b[1])
    return (fp6_add(axby, aybx), fp6_add(ayby, fp6_mul_tau(axbx)))


def fp12_sqr(a):
    ax, ay = a
    v0 = fp6_mul(ax, ay)
    t = fp6_add(fp6_mul_tau(ax), ay)
    ty = fp6_mul(fp6_add(ax, ay), t)
    ty = fp6_sub(fp6_sub(ty, v0), fp6_mul_tau(v0))
    return (fp6_dbl(v0), ty)


def fp12_inv(a):
    t1 = fp6_sqr(a[0])
    t2 = fp6_sqr(a[1])
    t1 = fp6_sub(t2, fp6_mul_tau(t1))
    t2 = fp6_inv(t1)
    return (fp6_mul(fp6_neg(a[0]), t2), fp6_mul(a[1], t2))


def fp12_exp(a, k):
    r = FP12_ONE
    for bit in bin(k)[2:]:
        r = fp12_sqr(r)
        if bit == "1":
            r = fp12_mul(r, a)
    return r


def fp12_frobenius(a):
    (axx, axy, axz), (ayx, ayy, ayz) = a
    e1 = (fp2_mul(fp2_conj(axx), XI1[4]),
          fp2_mul(fp2_conj(axy), XI1[2]),
          fp2_mul(fp2_conj(axz), XI1[0]))
    e2 = (fp2_mul(fp2_conj(ayx), XI1[3]),
          fp2_mul(fp2_conj(ayy), XI1[1]),
          fp2_conj(ayz))
    return (e1, e2)


def fp12_frobenius_p2(a):
    (axx, axy, axz), (ayx, ayy, ayz) = a
    e1 = (fp2_mul(axx, XI2[4]), fp2_mul(axy, XI2[2]), fp2_mul(axz, XI2[0]))
    e2 = (fp2_mul(ayx, XI2[3]), fp2_mul(ayy, XI2[1]), ayz)
    return (e1, e2)


# ---------------------------------------------------------------------------
# G1: short Weierstrass y^2 = x^3 + 3 over Fp, cofactor 1


def g1_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    return (y * y - (x * x * x + B1)) % P == 0


def g1_neg(pt):
    if pt is None:
        return None
    return (pt[0], -pt[1] % P)


def _g1_dbl_jac(pt):
    # EFD dbl-2009-l
    X1, Y1, Z1 = pt
    A = X1 * X1 % P
    B = Y1 * Y1 % P
    C = B * B % P
    D = 2 * ((X1 + B) * (X1 + B) - A - C) % P
    E = 3 * A % P
    F = E * E % P
    X3 = (F - 2 * D) % P
    Y3 = (E * (D - X3) - 8 * C) % P
    Z3 = 2 * Y1 * Z1 % P
    return (X3, Y3, Z3)


def _g1_add_jac(p1, p2):
    # EFD add-2007-bl
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    X1, Y1, Z1 = p1
    X2, Y2, Z2 = p2
    Z1Z1 = Z1 * Z1 % P
    Z2Z2 = Z2 * Z2 % P
    U1 = X1 * Z2Z2 % P
    U2 = X2 * Z1Z1 % P
    S1 = Y1 * Z2 * Z2Z2 % P
    S2 = Y2 * Z1 * Z1Z1 % P
    H = (U2 - U1) % P
    rr = 2 * (S2 - S1) % P
    if H == 0:
        if rr == 0:
            return _g1_dbl_jac(p1)
        return None
    I = 4 * H * H % P
    J = H * I % P
    V = U1 * I % P
    X3 = (rr * rr - J - 2 * V) % P
    Y3 = (rr * (V - X3) - 2 * S1 * J) % P
    Z3 = ((Z1 + Z2) * (Z1 + Z2) - Z1Z1 - Z2Z2) * H % P
    return (X3, Y3, Z3)


def _g1_madd_jac(p1, a2):
    # EFD madd-2007-bl: p1 Jacobian, a2 affine
    if a2 is None:
        return p1
    x2, y2 = a2
    if p1 is None:
        return (x2, y2, 1)
    X1, Y1, Z1 = p1
    Z1Z1 = Z1 * Z1 % P
    U2 = x2 * Z1Z1 % P
    S2 = y2 * Z1 * Z1Z1 % P
    H = (U2 - X1) % P
    rr = 2 * (S2 - Y1) % P
    if H == 0:
        if rr == 0:
            return _g1_dbl_jac(p1)
        return None
    HH = H * H % P
    I = 4 * HH % P
    J = H * I % P
    V = X1 * I % P
    X3 = (rr * rr - J - 2 * V) % P
    Y3 = (rr * (V - X3) - 2 * Y1 * J) % P
    Z3 = ((Z1 + H) * (Z1 + H) - Z1Z1 - HH) % P
    return (X3, Y3, Z3)


def _g1_to_affine(pt):
    if pt is None:
        return None
    X, Y, Z = pt
    if Z == 0:
        return None
    zi = pow(Z, P - 2, P)
    zi2 = zi * zi % P
    return (X * zi2 % P, Y * zi2 * zi % P)


def _batch_affine(jacs):
    # Montgomery batch inversion: one pow, three muls per point
    zs = [pt[2] for pt in jacs]
    n = len(zs)
    prefix = [1] * (n + 1)
    for i, z in enumerate(zs):
        prefix[i + 1] = prefix[i] * z % P
    inv = pow(prefix[n], P - 2, P)
    out = [None] * n
    for i in range(n - 1, -1, -1):
        zi = prefix[i] * inv % P
        inv = inv * zs[i] % P
        zi2 = zi * zi % P
        X, Y, _ = jacs[i]
        out[i] = (X * zi2 % P, Y * zi2 * zi % P)
    return out


def g1_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return _g1_to_affine(_g1_madd_jac((a[0], a[1], 1), b))


def g1_mul(pt, k):
    k %= R
    if pt is None or k == 0:
        return None
    acc = None
    for bit in bin(k)[2:]:
        if acc is not None:
            acc = _g1_dbl_jac(acc)
        if bit == "1":
            acc = _g1_madd_jac(acc, pt)
    return _g1_to_affine(acc)


_GEN_TABLE = None


def _gen_table():
    # 32 windows x 255 odd multiples for 8-bit fixed-base windows on G1_GEN
    global _GEN_TABLE
    if _GEN_TABLE is None:
        windows = []
        base = (G1_GEN[0], G1_GEN[1], 1)
        flat = []
        for _ in range(32):
            row = [base]
            acc = base
            baf = _g1_to_affine(base)
            for _ in range(254):
                acc = _g1_madd_jac(acc, baf)
                row.append(acc)
            flat.extend(row)
            base = row[255 // 2]  # 128 * base
            base = _g1_dbl_jac(base)
        aff = _batch_affine(flat)
        _GEN_TABLE = [aff[i * 255:(i + 1) * 255] for i in range(32)]
    return _GEN_TABLE


def g1_mul_gen(k):
    k %= R
    if k == 0:
        return None
    table = _gen_table()
    acc = None
    for j in range(32):
        d = (k >> (8 * j)) & 0xFF
        if d:
            acc = _g1_madd_jac(acc, table[j][d - 1])
    return _g1_to_affine(acc)


def g1_msm(points, scalars):
    """Multi-scalar multiplication over affine G1 points (Pippenger)."""
    pairs = []
    for pt, s in zip(points, scalars):
        s %= R
        if pt is not None and s:
            pairs.append((pt, s))
    n = len(pairs)
    if n == 0:
        return None
    if n <= 4:
        acc = None
        for pt, s in pairs:
            q = g1_mul(pt, s)
            if q is not None:
                acc = _g1_madd_jac(acc, q) if acc is not None else (q[0], q[1], 1)
        return _g1_to_affine(acc)
    c = 4 if n < 32 else 6 if n < 128 else 8 if n < 2048 else 11
    nwin = -(-254 // c)
    mask = (1 << c) - 1
    res = None
    for w in range(nwin - 1, -1, -1):
        if res is not None:
            for _ in range(c):
                res = _g1_dbl_jac(res)
        shift = w * c
        buckets = [None] * mask
        for pt, s in pairs:
            d = (s >> shift) & mask
            if d:
                buckets[d - 1] = _g1_madd_jac(buckets[d - 1], pt)
        acc = None
        total = None
        for i in range(mask - 1, -1, -1):
            if buckets[i] is not None:
                acc = _g1_add_jac(acc, buckets[i])
            if acc is not None:
                total = _g1_add_jac(total, acc)
        res = _g1_add_jac(res, total)
    return _g1_to_affine(res)


# ---------------------------------------------------------------------------
# G2: twist y^2 = x^3 + 3/xi over Fp2


def g2_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    rhs = fp2_add(fp2_mul(fp2_sqr(x), x), TWIST_B)
    return fp2_sqr(y) == rhs


def g2_neg(pt):
    if pt is None:
        return None
    return (pt[0], fp2_neg(pt[1]))


def _g2_dbl_jac(pt):
    X1, Y1, Z1 = pt
    A = fp2_sqr(X1)
    B = fp2_sqr(Y1)
    C = fp2_sqr(B)
    D = fp2_sub(fp2_sub(fp2_sqr(fp2_add(X1, B)), A), C)
    D = fp2_dbl(D)
    E = fp2_add(fp2_dbl(A), A)
    F = fp2_sqr(E)
    X3 = fp2_sub(F, fp2_dbl(D))
    C8 = fp2_dbl(fp2_dbl(fp2_dbl(C)))
    Y3 = fp2_sub(fp2_mul(E, fp2_sub(D, X3)), C8)
    Z3 = fp2_dbl(fp2_mul(Y1, Z1))
    return (X3, Y3, Z3)


def _g2_madd_jac(p1, a2):
    if a2 is None:
        return p1
    x2, y2 = a2
    if p1 is None:
        return (x2, y2, FP2_ONE)
    X1, Y1, Z1 = p1
    Z1Z1 = fp2_sqr(Z1)
    U2 = fp2_mul(x2, Z1Z1)
    S2 = fp2_mul(fp2_mul(y2, Z1), Z1Z1)
    H = fp2_sub(U2, X1)
    rr = fp2_dbl(fp2_sub(S2, Y1))
    if H == FP2_ZERO:
        if rr == FP2_ZERO:
            return _g2_dbl_jac(p1)
        return None
    HH = fp2_sqr(H)
    I = fp2_dbl(fp2_dbl(HH))
    J = fp2_mul(H, I)
    V = fp2_mul(X1, I)
    X3 = fp2_sub(fp2_sub(fp2_sqr(rr), J), fp2_dbl(V))
    Y3 = fp2_sub(fp2_mul(rr, fp2_sub(V, X3)), fp2_dbl(fp2_mul(Y1, J)))
    Z3 = fp2_sub(fp2_sub(fp2_sqr(fp2_add(Z1, H)), Z1Z1), HH)
    return (X3, Y3, Z3)


def _g2_to_affine(pt):
    if pt is None:
        return None
    X, Y, Z = pt
    if Z == FP2_ZERO:
        return None
    zi = fp2_inv(Z)
    zi2 = fp2_sqr(zi)
    return (fp2_mul(X, zi2), fp2_mul(Y, fp2_mul(zi2, zi)))


def g2_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return _g2_to_affine(_g2_madd_jac((a[0], a[1], FP2_ONE), b))


def g2_mul(pt, k):
    k %= R
    if pt is None or k == 0:
        return None
    acc = None
    for bit in bin(k)[2:]:
        if acc is not None:
            acc = _g2_dbl_jac(acc)
        if bit == "1":
            acc = _g2_madd_jac(acc, pt)
    return _g2_to_affine(acc)


def g2_in_subgroup(pt):
    return g2_on_curve(pt) and g2_mul(pt, R) is None


# ---------------------------------------------------------------------------
# Optimal ate pairing


def _line_dbl(r):
    # Doubling step: returns (a, b_pre, c_pre, 2r); b_pre scales by xP,
    # c_pre by yP at evaluation time.
    rx, ry, rz = r
    r_t = fp2_sqr(rz)
    A = fp2_sqr(rx)
    B = fp2_sqr(ry)
    C = fp2_sqr(B)
    D = fp2_sub(fp2_sub(fp2_sqr(fp2_add(rx, B)), A), C)
    D = fp2_dbl(D)
    E = fp2_add(fp2_dbl(A), A)
    F = fp2_sqr(E)
    C8 = fp2_dbl(fp2_dbl(fp2_dbl(C)))
    nx = fp2_sub(F, fp2_dbl(D))
    ny = fp2_sub(fp2_mul(E, fp2_sub(D, nx)), C8)
    nz = fp2_sub(fp2_sub(fp2_sqr(fp2_add(ry, rz)), B), r_t)
    a = fp2_sqr(fp2_add(rx, E))
    a = fp2_sub(a, fp2_add(fp2_add(A, F), fp2_dbl(fp2_dbl(B))))
    b_pre = fp2_neg(fp2_dbl(fp2_mul(E, r_t)))
    c_pre = fp2_dbl(fp2_mul(nz, r_t))
    return a, b_pre, c_pre, (nx, ny, nz)


def _line_add(r, q, r2):
    # Addition step with affine q = (qx, qy), r2 = qy^2 cached by the caller.
    rx, ry, rz = r
    qx, qy = q
    r_t = fp2_sqr(rz)
    B = fp2_mul(qx, r_t)
    D = fp2_sub(fp2_sub(fp2_sqr(fp2_add(qy, rz)), r2), r_t)
    D = fp2_mul(D, r_t)
    H = fp2_sub(B, rx)
    I = fp2_sqr(H)
    E = fp2_dbl(fp2_dbl(I))
    J = fp2_mul(H, E)
    L1 = fp2_sub(fp2_sub(D, ry), ry)
    V = fp2_mul(rx, E)
    nx = fp2_sub(fp2_sub(fp2_sqr(L1), J), fp2_dbl(V))
    nz = fp2_sub(fp2_sub(fp2_sqr(fp2_add(rz, H)), r_t), I)
    t = fp2_mul(fp2_sub(V, nx), L1)
    t2 = fp2_dbl(fp2_mul(ry, J))
    ny = fp2_sub(t, t2)
    t = fp2_sub(fp2_sub(fp2_sqr(fp2_add(qy, nz)), r2), fp2_sqr(nz))
    a = fp2_sub(fp2_dbl(fp2_mul(L1, qx)), t)
    c_pre = fp2_dbl(nz)
    b_pre = fp2_neg(fp2_dbl(L1))
    return a, b_pre, c_pre, (nx, ny, nz)


def prepare_g2(q):
    """Precompute the Miller-loop line coefficients for a fixed G2 point."""
    if q is None:
        return None
    qx, qy = q
    coeffs = []
    T = (qx, qy, FP2_ONE)
    mq = (qx, fp2_neg(qy))
    r2 = fp2_sqr(qy)
    for digit in NAF_6T2:
        a, b, c, T = _line_dbl(T)
        coeffs.append((a, b, c))
        if digit == 1:
            a, b, c, T = _line_add(T, q, r2)
            coeffs.append((a, b, c))
        elif digit == -1:
            a, b, c, T = _line_add(T, mq, r2)
            coeffs.append((a, b, c))
    q1 = (fp2_mul(fp2_conj(qx), XI1[1]), fp2_mul(fp2_conj(qy), XI1[2]))
    # -pi^2(Q): the y sign flip of xi^((p^2-1)/2) = -1 is folded in
    q2 = (fp2_mul_scalar(qx, XI2[1][1]), qy)
    a, b, c, T = _line_add(T, q1, fp2_sqr(q1[1]))
    coeffs.append((a, b, c))
    a, b, c, T = _line_add(T, q2, fp2_sqr(q2[1]))
    coeffs.append((a, b, c))
    return tuple(coeffs)


def _mul_line(f, a, b, c):
    # f *= (a tau + b) w-sparse element; dclxvi fp12e_mul_line layout
    fx, fy = f
    t1 = fp6_mul_sp(fx, a, b)
    t3 = fp6_mul_scalar(fy, c)
    t2 = fp6_mul_sp(fp6_add(fx, fy), a, fp2_add(b, c))
    nx = fp6_sub(fp6_sub(t2, t1), t3)
    ny = fp6_add(t3, fp6_mul_tau(t1))
    return (nx, ny)


def miller_loop(prepared, p):
    """Miller loop of e(p, Q) given Q's prepared line coefficients."""
    px, py = p
    f = FP12_ONE
    idx = 0
    for digit in NAF_6T2:
        f = fp12_sqr(f)
        a, b, c = prepared[idx]
        idx += 1
        f = _mul_line(f, a, fp2_mul_scalar(b, px), fp2_mul_scalar(c, py))
        if digit:
            a, b, c = prepared[idx]
            idx += 1
            f = _mul_line(f, a, fp2_mul_scalar(b, px), fp2_mul_scalar(c, py))
    for a, b, c in prepared[idx:]:
        f = _mul_line(f, a, fp2_mul_scalar(b, px), fp2_mul_scalar(c, py))
    return f


def final_exp(f):
    # eprint 2010/354 algorithm 31
    t1 = fp12_conj(f)
    t1 = fp12_mul(t1, fp12_inv(f))
    t1 = fp12_mul(t1, fp12_frobenius_p2(t1))  # f^((p^6-1)(p^2+1))
    fp1 = fp12_frobenius(t1)
    fp2_ = fp12_frobenius_p2(t1)
    fp3 = fp12_frobenius(fp2_)
    fu1 = fp12_exp(t1, T_PARAM)
    fu2 = fp12_exp(fu1, T_PARAM)
    fu3 = fp12_exp(fu2, T_PARAM)
    y3 = fp12_conj(fp12_frobenius(fu1))
    fu2p = fp12_frobenius(fu2)
    fu3p = fp12_frobenius(fu3)
    y2 = fp12_frobenius_p2(fu2)
    y0 = fp12_mul(fp12_mul(fp1, fp2_), fp3)
    y1 = fp12_conj(t1)
    y5 = fp12_conj(fu2)
    y4 = fp12_conj(fp12_mul(fu1, fu2p))
    y6 = fp12_conj(fp12_mul(fu3, fu3p))
    t0 = fp12_mul(fp12_mul(fp12_sqr(y6), y4), y5)
    t1b = fp12_mul(fp12_mul(y3, y5), t0)
    t0 = fp12_mul(t0, y2)
    t1b = fp12_mul(fp12_sqr(t1b), t0)
    t1b = fp12_sqr(t1b)
    t0 = fp12_mul(t1b, y1)
    t1b = fp12_mul(t1b, y0)
    t0 = fp12_sqr(t0)
    return fp12_mul(t0, t1b)


def pairing(p, q):
    """Full optimal ate pairing e(p, q) with p in G1, q in G2."""
    if p is None or q is None:
        return FP12_ONE
    return final_exp(miller_loop(prepare_g2(q), p))


def pairing_check(pairs):
    """True iff the product of pairings over (G1, prepared-G2) pairs is one.

    Entries with an infinity on either side contribute the identity and are
    skipped. A single final exponentiation covers the whole product.
    """
    f = None
    for p, prepared in pairs:
        if p is None or prepared is None:
            continue
        m = miller_loop(prepared, p)
        f = m if f is None else fp12_mul(f, m)
    if f is None:
        return True
    return final_exp(f) == FP12_ONE


# ---------------------------------------------------------------------------
# Serialization: fixed-width big-endian, infinity encodes as all zeros


def g1_to_bytes(pt):
    if pt is None:
        return bytes(64)
    return pt[0].to_bytes(32, "big") + pt[1].to_bytes(32, "big")


def g1_from_bytes(data):
    if len(data) != 64:
        raise DecodeError(f"G1 point must be 64 bytes, got {len(data)}")
    x = int.from_bytes(data[:32], "big")
    y = int.from_bytes(data[32:], "big")
    if x == 0 and y == 0:
        return None
    if x >= P or y >= P:
        raise DecodeError("G1 coordinate exceeds the field modulus")
    pt = (x, y)
    if not g1_on_curve(pt):
        raise DecodeError("G1 point is not on the curve")
    return pt


def g2_to_bytes(pt):
    if pt is None:
        return bytes(128)
    (xi_, xr), (yi, yr) = pt
    return b"".join(v.to_bytes(32, "big") for v in (xi_, xr, yi, yr))


def g2_from_bytes(data):
    if len(data) != 128:
        raise DecodeError(f"G2 point must be 128 bytes, got {len(data)}")
    vals = [int.from_bytes(data[32 * i:32 * i + 32], "big") for i in range(4)]
    if all(v == 0 for v in vals):
        return None
    if any(v >= P for v in vals):
        raise DecodeError("G2 coordinate exceeds the field modulus")
    pt = ((vals[0], vals[1]), (vals[2], vals[3]))
    if not g2_on_curve(pt):
        raise DecodeError("G2 point is not on the twist curve")
    if g2_mul(pt, R) is not None:
        raise DecodeError("G2 point is not in the r-torsion subgroup")
    return pt
