"""Independent high-precision reference values for the unit tests.

Run once; the printed numbers are frozen into the C++ tests. Everything is
recomputed from the defining formulas with mpmath/numpy, sharing no code
with the library.
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 30

rm, rg, nxi = mp.mpf("1.56"), mp.mpf("1.85"), mp.mpf(50)
nu = (-1 + mp.sqrt(1 + 4 * rg * rm)) / 2
alpha = mp.sqrt(2 * rg * rm)
print("nu_ref", nu)
print("alpha_ref", alpha)
print("rg(4/5)", mp.mpf(4) / 5 * (mp.mpf(4) / 5 + 1) / rm)
print("rg(9/7)", mp.mpf(9) / 7 * (mp.mpf(9) / 7 + 1) / rm)
w0 = (2 * nu - 1) / (2 * rm)
w1 = abs(2 * nu - 3) / (2 * rm)
print("omega0", w0, "omega1", w1)

# physical reduction: 87Rb, n0 = 50 / 0.7um, xi fixed at 0.7um by g11
hbar = mp.mpf("1.054571817e-34")
m1 = mp.mpf("1.443160648e-25")
n0 = mp.mpf(50) / mp.mpf("0.7e-6")
xi = mp.mpf("0.7e-6")
g11 = hbar**2 / (m1 * n0 * xi**2)
print("g11_phys", g11, "cs", mp.sqrt(n0 * g11 / m1), "mu", g11 * n0)

sech = lambda x: 1 / mp.cosh(x)
quad = lambda f: mp.quad(f, [-mp.inf, -5, 0, 5, mp.inf])
I0 = quad(lambda x: sech(x) ** (2 * alpha))
A0 = 1 / mp.sqrt(I0)
I1 = quad(lambda x: mp.tanh(x) ** 2 * sech(x) ** (2 * alpha))
A1 = 1 / (2 * A0 * mp.sqrt(I1))
I2 = quad(lambda x: (1 - (1 + 3 * alpha) * mp.tanh(x) ** 2) ** 2 * sech(x) ** (2 * alpha))
A2 = 1 / (mp.sqrt(2) * A0 * mp.sqrt(I2))
print("A_quad", A0, A1, A2)
print("A0_gamma", (mp.sqrt(mp.pi) * mp.gamma(alpha) / mp.gamma(alpha + mp.mpf(1) / 2)) ** -0.5)
phi0 = lambda x: A0 * sech(x) ** alpha
phi1 = lambda x: 2 * A1 * mp.tanh(x) * phi0(x)
raw2 = lambda x: mp.sqrt(2) * A2 * (1 - (1 + 3 * alpha) * mp.tanh(x) ** 2) * phi0(x)
c02 = quad(lambda x: phi0(x) * raw2(x))
print("raw_overlap_02", c02)
phi2 = lambda x: (raw2(x) - c02 * phi0(x)) / mp.sqrt(1 - c02**2)
print("hyp2f1(a,2(1+a),1+a,-1)", mp.hyp2f1(alpha, 2 * (1 + alpha), 1 + alpha, -1))
print("hyp2f1(1.5,0.5,2.5,0.3)", mp.hyp2f1(1.5, 0.5, 2.5, 0.3))
print("gamma(3.7)", mp.gamma(3.7))

eps = lambda k: k * mp.sqrt(k * k + 2)
kres = lambda w: mp.findroot(lambda k: eps(k) - w, (mp.mpf("1e-6"), 5), solver="bisect")
k0, k1 = kres(w0), kres(w1)
print("k_res0", k0, "k_res1", k1)

g12 = rg / nxi


def g0c(k):
    e = eps(k)
    return g12 * k**2 / (80 * e) * mp.sqrt(nxi * mp.pi / 6) * (2 + 8 * k**2 + 15 * e) * (-4 + k**2) / mp.sinh(k * mp.pi / 2)


def g1c(k):
    e = eps(k)
    br = 28 * (2 * k**4 - 35 * k**2 + 68) * e + (29 * k**6 - 504 * k**4 + 896 * k**2 + 64)
    return g12 * k**2 / (896 * e) * mp.sqrt(nxi * mp.pi / 15) * br / mp.sinh(k * mp.pi / 2)


print("Im g0_closed(0.9)", g0c(mp.mpf("0.9")), "Im g1_closed(0.7)", g1c(mp.mpf("0.7")))
print("|g0(k_res0)|", abs(g0c(k0)), "|g1(k_res1)|", abs(g1c(k1)))


def upv(k, x):
    e = eps(k)
    pre = 1 / (mp.sqrt(4 * mp.pi) * e)
    u = pre * ((k * k + 2 * e) * (k / 2 + 1j * mp.tanh(x)) + k / mp.cosh(x) ** 2)
    v = pre * ((k * k - 2 * e) * (k / 2 + 1j * mp.tanh(x)) + k / mp.cosh(x) ** 2)
    return mp.exp(1j * k * x) * (u + v), u, v


print("u(0.9, 0.3)", upv(mp.mpf("0.9"), mp.mpf("0.3"))[1], "v", upv(mp.mpf("0.9"), mp.mpf("0.3"))[2])
phis = [phi0, phi1, phi2]


def gq(l, lp, k):
    f = lambda x: phis[l](x) * phis[lp](x) * mp.sqrt(nxi) * mp.tanh(x) * upv(k, x)[0]
    re = quad(lambda x: mp.re(f(x)))
    im = quad(lambda x: mp.im(f(x)))
    return g12 * mp.mpc(re, im)


print("g01_quad(0.9)", gq(0, 1, mp.mpf("0.9")))
print("g12_quad(0.7)", gq(1, 2, mp.mpf("0.7")))
print("g00_quad(0.9)", gq(0, 0, mp.mpf("0.9")))


def gamma_int(g, w):
    eta = mp.sqrt(1 + w * w)
    return mp.sqrt(1 + eta) / (mp.sqrt(2) * eta) * abs(g) ** 2


G0, G1 = gamma_int(g0c(k0), w0), gamma_int(g1c(k1), w1)
print("gamma0", G0, "gamma1", G1)

# Susceptibility at resonance and the group velocity of the dressed probe.
Ns = mp.mpf("0.2")


def chi(d, oc):
    # g0 is purely imaginary, so g0^2 = -|g0|^2.
    arm = G1 - 2j * d
    return 1j * Ns * abs(g0c(k0)) ** 2 * arm / (w0 * ((G0 - 2j * d) * arm + oc * oc))


oc = 2 * G0
print("chi(0, 2g0)", chi(0, oc), "chi(0, 0.2g0)", chi(0, 0.2 * G0))
dre = mp.diff(lambda d: mp.re(chi(d, oc)), 0)
print("vg(0)", 1 / (1 + mp.re(chi(0, oc)) / 2 + w0 / 2 * dre))

# Lindblad steady state, built independently with numpy (basis g, e1, e2).
g0f, g1f = float(G0), float(G1)
dp, Oc = 0.3 * g0f, 2 * g0f
Op = 0.01 * Oc
H = np.zeros((3, 3), complex)
H[1, 1], H[2, 2] = -dp, -dp
H[1, 0] = H[0, 1] = -Op / 2
H[2, 1] = H[1, 2] = Oc / 2
L = []
E01 = np.zeros((3, 3)); E01[0, 1] = 1
E12 = np.zeros((3, 3)); E12[1, 2] = 1
I = np.eye(3)


def superop(Hm, ops):
    S = -1j * (np.kron(Hm, I) - np.kron(I, Hm.T))
    for r, c in ops:
        cd = c.conj().T
        S += r * (np.kron(c, c.conj()) - 0.5 * np.kron(cd @ c, I) - 0.5 * np.kron(I, (cd @ c).T))
    return S


S = superop(H, [(g0f, E01), (g1f, E12)])
w, V = np.linalg.eig(S)
v = V[:, np.argmin(abs(w))].reshape(3, 3)
v = v / np.trace(v)
print("lindblad rho21 %.12g %.12g rho31 %.12g %.12g" % (v[1, 0].real, v[1, 0].imag, v[2, 0].real, v[2, 0].imag))
print("pt well E0 -(nu)^2/(2rm)", -nu**2 / (2 * rm))
print("dip half density x", mp.atanh(1 / mp.sqrt(2)))
