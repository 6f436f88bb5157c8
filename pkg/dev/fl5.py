"""[C2] layered ribbon lifted to dim-6 edges, open 3x2 patch."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
def dec(g): return divmod(g, 2)

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

def pack(a, b): return 2 * (a % 3) + (b % 2)

CNOT_BB = two_site(lambda g1, g2: g1 * 6 + pack(dec(g2)[0], dec(g2)[1] ^ dec(g1)[1]))
CONJ_B1A2 = two_site(lambda g1, g2: g1 * 6 + pack(
    -dec(g2)[0] if dec(g1)[1] else dec(g2)[0], dec(g2)[1]))
def cx_a1a2(p=1):
    return two_site(lambda g1, g2: g1 * 6 + pack(
        dec(g2)[0] + p * dec(g1)[0], dec(g2)[1]))
CONJ_SELF = perm_mat(6, lambda g: pack(-dec(g)[0] if dec(g)[1] else dec(g)[0],
                                       dec(g)[1]))

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))

hs = ["E[0,0]", "E[1,0]"]     # horizontal edges (a_i, b_i)
vs = ["N[1,0]", "N[2,0]"]     # vertical edges (alpha_i)
n = len(hs)

def run(kick_p):
    st = gs.copy()
    # layer 1: Z2 ungauging + undo enrichment
    for i in range(n - 1):
        apply_matrix(st, CNOT_BB, [hs[i], hs[i + 1]])
    for i in range(n - 1):
        apply_matrix(st, CONJ_B1A2, [hs[i], hs[i + 1]])
    # layer 2: Z3 gauging along horizontal qutrits
    for i in range(n - 1):
        apply_matrix(st, cx_a1a2(1), [hs[i], hs[i + 1]])
    # layer 3: conjugation-dressed kick onto perpendicular qutrits
    for i in range(n):
        apply_matrix(st, CONJ_SELF, [hs[i]])
    for i in range(n):
        apply_matrix(st, cx_a1a2(kick_p), [hs[i], vs[i]])
    for i in range(n):
        apply_matrix(st, CONJ_SELF, [hs[i]])
    # layer 4: Z3 ungauging
    for i in reversed(range(n - 1)):
        apply_matrix(st, cx_a1a2(-1), [hs[i], hs[i + 1]])
    # layer 5: redo enrichment + Z2 regauge
    for i in reversed(range(n - 1)):
        apply_matrix(st, CONJ_B1A2, [hs[i], hs[i + 1]])
    for i in reversed(range(n - 1)):
        apply_matrix(st, CNOT_BB, [hs[i], hs[i + 1]])
    return verify.stabilizer_report(st, terms)

for kick_p in (1, -1):
    rep = run(kick_p)
    print("[C2] kick", kick_p, "excited:", rep.excited)
    for lbl, v in rep.values:
        if lbl in rep.excited:
            print("   ", lbl, np.round(v, 6))
print("total", round(time.time() - t0, 1))
