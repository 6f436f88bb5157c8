"""Layered (5-layer) flux ribbon vs control-sandwich semantics."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
def dec(g): return divmod(g, 2)
def pack(a, b): return 2 * (a % 3) + (b % 2)

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def two_site(f):
    def g(idx):
        g1, g2 = divmod(idx, 6)
        return f(g1, g2)
    return perm_mat(36, g)

# L1: xor qubit of first site into qubit of second
CNOT_BB = two_site(lambda g1, g2: g1 * 6 + pack(dec(g2)[0],
                                                dec(g2)[1] ^ dec(g1)[1]))
# L2: a2 += (-1)^{b2} a1   (accumulate normal-form qutrit exponent)
ACC_A = two_site(lambda g1, g2: g1 * 6 + pack(
    dec(g2)[0] + (1 if dec(g2)[1] == 0 else -1) * dec(g1)[0], dec(g2)[1]))
ACC_A_INV = two_site(lambda g1, g2: g1 * 6 + pack(
    dec(g2)[0] - (1 if dec(g2)[1] == 0 else -1) * dec(g1)[0], dec(g2)[1]))

def kick_mu(p):
    # h <- h * mu^{(-1)^{B} p}; control qubit of frame edge (B), sign by own b
    def f(g1, g2):
        a, b = dec(g2)
        s = (1 if dec(g1)[1] == 0 else -1) * (1 if b == 0 else -1)
        return g1 * 6 + pack(a + s * p, b)
    return two_site(f)

KICK_SIGMA = two_site(lambda g1, g2: g1 * 6 + pack(
    dec(g2)[0] - (1 if dec(g2)[1] == 0 else -1) * dec(g1)[0],
    dec(g2)[1] ^ 1))

def layered(st, frame, crossed, g):
    n = len(frame)
    for k in range(1, n):
        apply_matrix(st, ACC_A, [frame[k - 1], frame[k]])
    for k in range(1, n):
        apply_matrix(st, CNOT_BB, [frame[k - 1], frame[k]])
    for k in range(n):
        if g == "sigma":
            apply_matrix(st, KICK_SIGMA, [frame[k], crossed[k]])
        else:
            apply_matrix(st, kick_mu(g), [frame[k], crossed[k]])
    for k in reversed(range(1, n)):
        apply_matrix(st, CNOT_BB, [frame[k - 1], frame[k]])
    for k in reversed(range(1, n)):
        apply_matrix(st, ACC_A_INV, [frame[k - 1], frame[k]])

def sandwich(st, frame, crossed, g):
    """Reference: crossing k right-multiplies by P_k g P_k^-1."""
    gel = {1: 2, 2: 4, "sigma": 1}[g]
    for k in range(len(crossed)):
        ctrls = frame[: k + 1]
        nc = len(ctrls)
        def f(idx, nc=nc):
            digs = []
            rem = idx
            for _ in range(nc + 1):
                digs.append(rem % 6)
                rem //= 6
            digs.reverse()
            P = 0
            for d in digs[:-1]:
                P = G.m(d, P)          # P = g_k ... g_1
            ghat = G.m(G.m(P, gel), G.i(P))
            h2 = G.m(digs[-1], ghat)
            out = 0
            for d in digs[:-1] + [h2]:
                out = out * 6 + d
            return out
        apply_matrix(st, perm_mat(6 ** (nc + 1), f), ctrls + [crossed[k]])

# operator equality on a bare 4-site register
from qdouble.sim import make_register, make_product_state
reg = make_register((("f1", 6), ("f2", 6), ("c1", 6), ("c2", 6)))
import itertools
rng = np.random.default_rng(7)
for g in (1, 2, "sigma"):
    # compare action on random states
    worst = 0.0
    for _ in range(3):
        amps = rng.normal(size=6**4) + 1j * rng.normal(size=6**4)
        st1 = make_product_state(reg, {s: "I" for s in reg.site_ids})
        st1.amplitudes = amps.copy()
        st2 = make_product_state(reg, {s: "I" for s in reg.site_ids})
        st2.amplitudes = amps.copy()
        layered(st1, ["f1", "f2"], ["c1", "c2"], g)
        sandwich(st2, ["f1", "f2"], ["c1", "c2"], g)
        worst = max(worst, float(np.linalg.norm(st1.amplitudes - st2.amplitudes)
                                 / np.linalg.norm(amps)))
    print("g =", g, "layered-vs-sandwich residual", worst)

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
for g in (1, 2, "sigma"):
    st = gs.copy()
    layered(st, ["E[0,0]", "E[1,0]"], ["N[1,0]", "N[2,0]"], g)
    rep = verify.stabilizer_report(st, terms)
    print("open layered g =", g, "excited:", rep.excited)
print("total", round(time.time() - t0, 1))
