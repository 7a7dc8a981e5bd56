"""Reference values for the integration tests, computed with mpmath.

Run from the crate root:  python3 tests/oracles/generate.py > tests/common/oracle.rs
"""
import mpmath as mp

mp.mp.dps = 40


def site(q, p, b, z):
    u = z * q * q
    shc = mp.sinh(u) / u if u != 0 else mp.mpf(1)
    jp = shc * p * p + (b / (q * q * shc) if b != 0 else 0)
    return (q * q, jp, shc * q * p)


def coproduct(a, c, z):
    return (a[0] + c[0], a[1] * mp.exp(z * c[0]) + mp.exp(-z * a[0]) * c[1],
            a[2] * mp.exp(z * c[0]) + mp.exp(-z * a[0]) * c[2])


def casimir(j, z):
    return mp.sinh(z * j[0]) / z * j[1] - j[2] ** 2


def generators(q, p, b, z):
    s = [site(q[i], p[i], b[i], z) for i in range(3)]
    j12 = coproduct(s[0], s[1], z)
    j123 = coproduct(j12, s[2], z)
    j23 = coproduct(s[1], s[2], z)
    return j123, casimir(j12, z), casimir(j23, z), casimir(j123, z)


def cart_metric(q, z, c):
    """Inverse of the p-Hessian of ½J₊f(zJ₋), f = e^{cx}, b = 0."""
    def ham(p1, p2, p3):
        j = generators(q, [p1, p2, p3], [0, 0, 0], z)[0]
        return j[1] * mp.exp(c * z * j[0]) / 2
    inv = mp.matrix(3, 3)
    for i in range(3):
        for k in range(3):
            order = [0, 0, 0]
            order[i] += 1
            order[k] += 1
            inv[i, k] = mp.diff(ham, (0.3, -0.2, 0.5), tuple(order))
    return inv ** -1


def scalar_curvature(metric, x):
    """Scalar curvature of `metric` (callable returning mp.matrix) at x."""
    n = 3
    h = mp.mpf(10) ** -12

    def g(y):
        return metric(y)

    def dg(y, c):
        yp = list(y); ym = list(y)
        yp[c] += h; ym[c] -= h
        return (g(yp) - g(ym)) / (2 * h)

    def christ(y):
        gi = g(y) ** -1
        d = [dg(y, c) for c in range(n)]
        gam = [[[mp.mpf(0)] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    s = 0
                    for e in range(n):
                        s += gi[a, e] * (d[b][e, c] + d[c][e, b] - d[e][b, c])
                    gam[a][b][c] = s / 2
        return gam

    gam = christ(x)
    dgam = []
    for c in range(n):
        yp = list(x); ym = list(x)
        yp[c] += h; ym[c] -= h
        gp, gm = christ(yp), christ(ym)
        dgam.append([[[(gp[a][b][e] - gm[a][b][e]) / (2 * h) for e in range(n)] for b in range(n)] for a in range(n)])
    ric = mp.matrix(n, n)
    for b in range(n):
        for d in range(n):
            s = 0
            for a in range(n):
                s += dgam[a][a][b][d] - dgam[d][a][b][a]
                for e in range(n):
                    s += gam[a][a][e] * gam[e][b][d] - gam[a][d][e] * gam[e][b][a]
            ric[b, d] = s
    gi = g(x) ** -1
    return sum(gi[i, k] * ric[i, k] for i in range(n) for k in range(n))


def kcos(k, x):
    return mp.cos(mp.sqrt(k) * x) if k > 0 else (mp.cosh(mp.sqrt(-k) * x) if k < 0 else mp.mpf(1))


def ksin(k, x):
    if k > 0:
        return mp.sin(mp.sqrt(k) * x) / mp.sqrt(k)
    if k < 0:
        return mp.sinh(mp.sqrt(-k) * x) / mp.sqrt(-k)
    return x


def sph_metric(z, k2, c):
    def m(y):
        r, th = y[0], y[1]
        cr = kcos(z, r)
        hh = mp.exp(-c * mp.log(cr)) * cr
        sr = ksin(z, r)
        st = ksin(k2, th)
        return mp.diag([1 / hh, k2 * sr ** 2 / hh, k2 * sr ** 2 * st ** 2 / hh])
    return m


def green(r, z, c):
    """u(r) = −1/T_z(r) + ∫₀ʳ (√h − 1)/S_z² ds, h = f(−ln C) C, f = e^{cx}."""
    def integrand(s):
        cs = kcos(z, s)
        sq = mp.exp((1 - c) * mp.log(cs) / 2)
        return (sq - 1) / ksin(z, s) ** 2
    return mp.quad(integrand, [0, r]) - kcos(z, r) / ksin(z, r)


def fmt(x):
    return mp.nstr(mp.mpf(x), 20)


out = ["// Generated by tests/oracles/generate.py; do not edit.", "#![allow(dead_code, clippy::excessive_precision)]", ""]


def const(name, val):
    out.append(f"pub const {name}: f64 = {fmt(val)};")


def arr(name, vals):
    out.append(f"pub const {name}: [f64; {len(vals)}] = [{', '.join(fmt(v) for v in vals)}];")


q = [mp.mpf('0.5'), mp.mpf('-0.7'), mp.mpf('0.9')]
p = [mp.mpf('0.3'), mp.mpf('0.8'), mp.mpf('-0.2')]
b = [mp.mpf('0.1'), mp.mpf('0.2'), mp.mpf('0.4')]
z = mp.mpf('0.3')
j, c2, c2l, c3 = generators(q, p, b, z)
out.append("/// z = 0.3, b = (0.1, 0.2, 0.4), q = (0.5, −0.7, 0.9), p = (0.3, 0.8, −0.2).")
arr("GENERATORS", j)
arr("CASIMIRS", [c2, c2l, c3])
const("FREE_HAMILTONIAN_EXP", j[1] * mp.exp(z * j[0]) / 2)

g = cart_metric([mp.mpf('0.6'), mp.mpf('0.3'), mp.mpf('0.9')], mp.mpf('0.5'), 1)
out.append("/// f = eˣ, z = 0.5, q = (0.6, 0.3, 0.9); row-major.")
arr("METRIC_EXP", [g[i, k] for i in range(3) for k in range(3)])

qc = [mp.mpf('0.3'), mp.mpf('-0.5'), mp.mpf('0.4')]
zc = mp.mpf('0.4')
line = lambda y: 2 * cart_metric(y, zc, -3)
out.append("/// Scalar curvature of the line element, f = e^{−3x}, z = 0.4, q = (0.3, −0.5, 0.4).")
const("SCALAR_CART_COSCUBED", scalar_curvature(line, qc))
line1 = lambda y: 2 * cart_metric(y, mp.mpf('-0.7'), 0)
out.append("/// Scalar curvature of the line element, f ≡ 1, z = −0.7, q = (0.3, −0.5, 0.4).")
const("SCALAR_CART_IDENTITY", scalar_curvature(line1, qc))

out.append("/// Spherical scalar curvature, f = e^{−1.8x}, z = −0.6, κ₂ = 1.3 at (r, θ) = (0.7, 0.5).")
const("SCALAR_SPH_POWERCOS", scalar_curvature(sph_metric(mp.mpf('-0.6'), mp.mpf('1.3'), mp.mpf('-1.8')), [mp.mpf('0.7'), mp.mpf('0.5'), mp.mpf('0.2')]))
out.append("/// Spherical scalar curvature, f = e^{−3x}, z = 0.8, κ₂ = 1 at (r, θ) = (0.9, 0.6).")
const("SCALAR_SPH_COSCUBED", scalar_curvature(sph_metric(mp.mpf('0.8'), mp.mpf(1), -3), [mp.mpf('0.9'), mp.mpf('0.6'), mp.mpf('0.2')]))

radii = [mp.mpf('0.2'), mp.mpf('0.7'), mp.mpf('1.3')]
out.append("/// u(r) at r = 0.2, 0.7, 1.3 for (exponent, z).")
for name, c, zz in [("GREEN_IDENTITY_POS", 0, '0.5'), ("GREEN_IDENTITY_NEG", 0, '-0.5'),
                    ("GREEN_CONSTANT_POS", 1, '0.5'), ("GREEN_POWERCOS_POS", mp.mpf('-1.8'), '0.5'),
                    ("GREEN_POWERCOS_NEG", mp.mpf('-1.8'), '-0.5'), ("GREEN_COSCUBED_POS", -3, '0.5'),
                    ("GREEN_COSCUBED_NEG", -3, '-0.5')]:
    arr(name, [green(r, mp.mpf(zz), c) for r in radii])

const("ELLIPTIC_E_03_2", mp.ellipe(mp.mpf('0.3'), 2))
const("ELLIPTIC_E_07_03", mp.ellipe(mp.mpf('0.7'), mp.mpf('0.3')))
const("HYP2F1_A", mp.hyp2f1(mp.mpf('-0.5'), mp.mpf('-0.2'), mp.mpf('0.5'), mp.mpf('0.7')))
const("HYP2F1_B", mp.hyp2f1(mp.mpf('-0.5'), mp.mpf('1.3'), mp.mpf('0.5'), mp.mpf('-2.5')))
const("HYP2F1_C", mp.hyp2f1(mp.mpf('0.3'), mp.mpf('0.4'), mp.mpf('1.2'), mp.mpf('0.95')))
const("INC_BETA_LOW", mp.betainc(mp.mpf('0.8'), mp.mpf('1.7'), 0, mp.mpf('0.4')))
a_, b_, x_ = mp.mpf('0.3'), mp.mpf('1.2'), mp.mpf('1.6')
const("INC_BETA_HIGH", mp.quad(lambda t: t ** (a_ - 1) * (t - 1) ** (b_ - 1), [1, x_]) + mp.cos(mp.pi * (b_ - 1)) * mp.beta(a_, b_))

# curved Kepler turning points: z = 1, α = 1, C⁽³⁾ = 0.3, E = −0.5
veff = lambda r: -1 / mp.tan(r) + mp.mpf('0.15') / mp.sin(r) ** 2 + mp.mpf('0.5')
rmin = mp.findroot(lambda r: mp.diff(veff, r), 0.3)
out.append("/// Turning points of −cot r + 0.15/sin²r = −0.5.")


def bisect(fn, a, c):
    for _ in range(200):
        m = (a + c) / 2
        if (fn(m) > 0) == (fn(a) > 0):
            a = m
        else:
            c = m
    return (a + c) / 2


assert veff(rmin) < 0
arr("KEPLER_CURVED_TURNING", [bisect(veff, mp.mpf('0.01'), rmin), bisect(veff, rmin, mp.mpf('1.5'))])

print("\n".join(out))
